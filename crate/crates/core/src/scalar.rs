//! Scalar abstractions.
//!
//! Numerical code is generic over a real type `R` (`f32` or `f64`) and works
//! with `Complex<R>` entries. Exact code (lattice bookkeeping, the truncated
//! free algebra, parameter reflections) is generic over any [`Ring`].

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Real floating point type backing the numerical layer.
pub trait Real:
    nalgebra::RealField + Ring + FromPrimitive + ToPrimitive + Copy + Display + Debug + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("representable constant")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Commutative ring with an embedding of the integers.
pub trait Ring: Clone + Num + Debug {
    fn from_int(n: i64) -> Self;
}

impl Ring for i64 {
    fn from_int(n: i64) -> Self {
        n
    }
}

impl Ring for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

impl Ring for f32 {
    fn from_int(n: i64) -> Self {
        n as f32
    }
}

impl Ring for Rational64 {
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }
}

impl Ring for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl<T: Ring> Ring for Complex<T> {
    fn from_int(n: i64) -> Self {
        Complex::new(T::from_int(n), T::zero())
    }
}

/// Complex number from a pair of `f64` literals.
pub fn cplx<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(R::lit(re), R::lit(im))
}

/// Exact rational image of a finite double (every finite double is dyadic).
pub fn exact_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Exact Gaussian rational from a complex double.
pub fn exact_complex(z: Complex<f64>) -> Option<Complex<BigRational>> {
    Some(Complex::new(exact_rational(z.re)?, exact_rational(z.im)?))
}

/// Modulus of a complex number over any [`Real`].
pub fn cabs<R: Real>(z: Complex<R>) -> R {
    (z.re * z.re + z.im * z.im).sqrt()
}
