use num_traits::{Float, FromPrimitive};
use serde::{de::DeserializeOwned, Serialize};
use std::fmt::{Debug, Display};

/// Floating-point type the spectral routines are written against.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant")
    }

    fn of_usize(x: usize) -> Self {
        Self::from_usize(x).expect("representable count")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
