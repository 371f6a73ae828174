//! Win-rate aggregation. Draws count half a point; margins use the normal
//! approximation `1.96 * sqrt(p (1 - p) / n)`.

use crate::matches::{MatchRecord, MatchResult};

/// Half-width of the 95% confidence interval of a score `p` over `n` games.
pub fn confidence_margin(p: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    1.96 * (p * (1.0 - p) / n as f64).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesStats {
    pub label: String,
    pub n: u64,
    /// Counted for agent A.
    pub wins: u64,
    pub draws: u64,
    pub losses: u64,
    pub p: f64,
    pub margin: f64,
}

impl SeriesStats {
    pub fn from_counts(label: impl Into<String>, wins: u64, draws: u64, losses: u64) -> SeriesStats {
        let n = wins + draws + losses;
        let p = if n == 0 {
            0.0
        } else {
            (wins as f64 + 0.5 * draws as f64) / n as f64
        };
        SeriesStats {
            label: label.into(),
            n,
            wins,
            draws,
            losses,
            p,
            margin: confidence_margin(p, n),
        }
    }

    pub fn from_records<'a>(label: impl Into<String>, records: impl IntoIterator<Item = &'a MatchRecord>) -> SeriesStats {
        let (mut w, mut d, mut l) = (0, 0, 0);
        for r in records {
            match r.result {
                MatchResult::AWin => w += 1,
                MatchResult::Draw => d += 1,
                MatchResult::BWin => l += 1,
            }
        }
        SeriesStats::from_counts(label, w, d, l)
    }

    /// `p ± margin` in percent, e.g. `93.2±1.56`.
    pub fn percent(&self) -> String {
        format!("{:.1}±{:.2}", self.p * 100.0, self.margin * 100.0)
    }
}
