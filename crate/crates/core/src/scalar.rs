use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the numeric core is generic over (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; never fails for the finite constants used here.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits in a float")
    }

    #[inline]
    fn two_over_pi() -> Self {
        Self::FRAC_2_PI()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Euler–Mascheroni constant to 30 significant digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// The same constant as an exact decimal string, for high-precision callers.
pub const EULER_GAMMA_DIGITS: &str = "0.577215664901532860606512090082";
