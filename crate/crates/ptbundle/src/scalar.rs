//! Scalar abstraction for the numeric kernels.
//!
//! Combinatorics is exact (`i64`); everything numeric (angle chains, bar
//! equations, holonomies, Newton continuation) is generic over [`Real`] so the
//! same code runs at `f32` or `f64`. The crate-root aliases fix `f64`, which
//! is what the CLI and the acceptance tolerances use.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating scalar used by the numeric kernels: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + 'static
{
    /// Shorthand for a small integer constant.
    fn of(n: i64) -> Self {
        Self::from_i64(n).expect("small integer fits in scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

/// Concrete scalar used by the pipeline.
pub type R64 = f64;
/// Concrete complex type used by the pipeline.
pub type C64 = Complex<f64>;

/// The three complex dihedral angles of an ideal tetrahedron, indexed by slot:
/// slot 0 is the labelled (uppermost) angle `z`, slots 1 and 2 are `(z-1)/z`
/// and `1/(1-z)`.
pub fn slot_value<T: Real>(z: C<T>, slot: u8) -> C<T> {
    let one = C::new(T::one(), T::zero());
    match slot {
        0 => z,
        1 => (z - one) / z,
        2 => one / (one - z),
        _ => unreachable!("slot index {slot}"),
    }
}

/// Logarithmic derivative d(log slot_value)/dz.
pub fn slot_dlog<T: Real>(z: C<T>, slot: u8) -> C<T> {
    let one = C::new(T::one(), T::zero());
    match slot {
        0 => one / z,
        1 => one / (z - one) - one / z,
        2 => one / (one - z),
        _ => unreachable!("slot index {slot}"),
    }
}
