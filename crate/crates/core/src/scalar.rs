//! Real scalar abstraction: all numerical code in this crate is generic
//! over `Real`, instantiated at `f64` (primary) or `f32`.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Nearest representable value of an `f64` constant (tolerances, phases).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    fn from_usize_exact(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable")
    }

    /// Default tolerance used across the crate when none is supplied.
    fn default_tol() -> Self {
        Self::of(1e-9)
    }
}

impl Real for f64 {}
impl Real for f32 {}

/// Complex number over a `Real` scalar.
pub type C<R> = num_complex::Complex<R>;

pub fn c_zero<R: Real>() -> C<R> {
    C::new(R::zero(), R::zero())
}

pub fn c_one<R: Real>() -> C<R> {
    C::new(R::one(), R::zero())
}

pub fn c_i<R: Real>() -> C<R> {
    C::new(R::zero(), R::one())
}

/// `exp(2 pi i t)` for a phase `t` measured in turns.
pub fn unit_phase<R: Real>(t: R) -> C<R> {
    let angle = R::TAU() * t;
    C::new(angle.cos(), angle.sin())
}
