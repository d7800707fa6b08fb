//! Free algebra `C⟨x, y⟩` truncated at a fixed degree.
//!
//! Degree `d` is stored densely as `2^d` coefficients; a monomial is the
//! bitstring of its letters read left to right, `0` for `x` and `1` for `y`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

use crate::error::{QuiverError, Result};
use crate::group::{GenKind, GeneratorG, GroupWord};
use crate::scalar::{exact_complex, Ring};

pub type ExactC = Complex<BigRational>;

/// Hard limit on the truncation degree; storage grows as `2^cap`.
pub const MAX_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<T> {
    cap: usize,
    levels: Vec<Vec<T>>,
}

impl<T: Ring + PartialEq> Truncated<T> {
    pub fn zero(cap: usize) -> Self {
        assert!(cap <= MAX_CAP, "degree cap {cap} too large");
        Truncated { cap, levels: (0..=cap).map(|d| vec![T::zero(); 1 << d]).collect() }
    }

    pub fn one(cap: usize) -> Self {
        let mut out = Self::zero(cap);
        out.levels[0][0] = T::one();
        out
    }

    fn letter(cap: usize, bit: usize) -> Self {
        let mut out = Self::zero(cap);
        if cap >= 1 {
            out.levels[1][bit] = T::one();
        }
        out
    }

    pub fn x(cap: usize) -> Self {
        Self::letter(cap, 0)
    }

    pub fn y(cap: usize) -> Self {
        Self::letter(cap, 1)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Coefficient of a word over `{x, y}` such as `"xyy"`.
    pub fn coeff(&self, word: &str) -> T {
        let d = word.len();
        if d > self.cap {
            return T::zero();
        }
        let bits = word.bytes().fold(0usize, |acc, b| (acc << 1) | usize::from(b == b'y'));
        self.levels[d][bits].clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (lo, li) in out.levels.iter_mut().zip(&other.levels) {
            for (a, b) in lo.iter_mut().zip(li) {
                *a = a.clone() + b.clone();
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(T::zero() - T::one())))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = self.clone();
        for level in out.levels.iter_mut() {
            for a in level.iter_mut() {
                if !a.is_zero() {
                    *a = a.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Product with all terms above the cap discarded.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.cap);
        for (da, la) in self.levels.iter().enumerate() {
            for (ba, ca) in la.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for db in 0..=(self.cap - da) {
                    for (bb, cb) in other.levels[db].iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let slot = &mut out.levels[da + db][(ba << db) | bb];
                        *slot = slot.clone() + ca.clone() * cb.clone();
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.cap), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

/// Images `(σ(x), σ(y))` of a generator sequence acting left to right.
pub fn substitute<T: Ring + PartialEq>(
    gens: &[GeneratorG<T>],
    m: usize,
    cap: usize,
) -> Result<(Truncated<T>, Truncated<T>)> {
    let mut px = Truncated::x(cap);
    let mut py = Truncated::y(cap);
    for g in gens {
        let e = g.power(m)?;
        match g.kind {
            GenKind::Psi => px = px.add(&py.pow(e).scale(&g.coeff)),
            GenKind::Phi => py = py.add(&px.pow(e).scale(&g.coeff)),
        }
    }
    Ok((px, py))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeCheck {
    pub preserves_omega: bool,
    pub nontrivial: bool,
}

/// Checks `[σ(x), σ(y)] = [x, y]` exactly up to the cap.
pub fn free_algebra_check<T: Ring + PartialEq>(word: &GroupWord<T>, m: usize, cap: usize) -> Result<FreeCheck> {
    let needed = word.max_k() * m;
    if cap < needed || cap < 2 {
        return Err(QuiverError::CapTooSmall { cap, needed: needed.max(2) });
    }
    if cap > MAX_CAP {
        return Err(QuiverError::CapTooSmall { cap: MAX_CAP, needed: cap });
    }
    let (px, py) = substitute(&word.generators(), m, cap)?;
    let lhs = px.commutator(&py);
    let rhs = Truncated::x(cap).commutator(&Truncated::y(cap));
    Ok(FreeCheck { preserves_omega: lhs == rhs, nontrivial: px != Truncated::x(cap) || py != Truncated::y(cap) })
}

/// Exact image of a double-precision word (every finite double is dyadic).
pub fn exact_word(word: &GroupWord<Complex<f64>>) -> Result<GroupWord<ExactC>> {
    let gens = word
        .generators()
        .into_iter()
        .map(|g| {
            let coeff = exact_complex(g.coeff)
                .ok_or_else(|| QuiverError::Parse(format!("non-finite coefficient {}", g.coeff)))?;
            Ok(GeneratorG { kind: g.kind, k: g.k, coeff })
        })
        .collect::<Result<Vec<_>>>()?;
    crate::group::canonicalize(&gens)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::canonicalize;
    use num_rational::Rational64;

    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn multiplication_is_concatenation() {
        let x = Truncated::<Q>::x(4);
        let y = Truncated::<Q>::y(4);
        let p = x.mul(&y).mul(&y);
        assert_eq!(p.coeff("xyy"), q(1));
        assert_eq!(p.coeff("yxy"), q(0));
        let s = x.add(&y).pow(2);
        for w in ["xx", "xy", "yx", "yy"] {
            assert_eq!(s.coeff(w), q(1));
        }
        assert_eq!(x.pow(5).coeff("xxxxx"), q(0));
    }

    #[test]
    fn psi_fixes_omega_m2() {
        let w = canonicalize(&[GeneratorG::psi(1, q(3))]).unwrap();
        let r = free_algebra_check(&w, 2, 4).unwrap();
        assert!(r.preserves_omega && r.nontrivial);
    }

    #[test]
    fn phi_image_m3() {
        let nu = q(2);
        let (px, py) = substitute(&[GeneratorG::phi(1, nu)], 3, 6).unwrap();
        assert_eq!(px, Truncated::x(6));
        assert_eq!(py.coeff("y"), q(1));
        assert_eq!(py.coeff("xx"), nu);
        let w = canonicalize(&[GeneratorG::phi(1, nu)]).unwrap();
        assert!(free_algebra_check(&w, 3, 6).unwrap().preserves_omega);
    }

    #[test]
    fn non_automorphism_detected() {
        // x ↦ x + x² does not fix [x, y]
        let cap = 4;
        let px = Truncated::<Q>::x(cap).add(&Truncated::x(cap).pow(2));
        let py = Truncated::<Q>::y(cap);
        assert_ne!(px.commutator(&py), Truncated::x(cap).commutator(&py));
    }

    #[test]
    fn cap_is_checked() {
        let w = canonicalize(&[GeneratorG::psi(2, q(1))]).unwrap();
        assert!(matches!(free_algebra_check(&w, 3, 5), Err(QuiverError::CapTooSmall { .. })));
    }

    #[test]
    fn exact_conversion() {
        let w = canonicalize(&[GeneratorG::psi(1, Complex::new(0.1, -0.3))]).unwrap();
        let e = exact_word(&w).unwrap();
        let c = &e.blocks[0].coeffs[&1];
        assert_eq!(c.re, BigRational::from_float(0.1).unwrap());
    }
}
