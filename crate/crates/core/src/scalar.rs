use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point type used for search statistics and selection scores.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite or infinite f64 converts to any float")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {}
