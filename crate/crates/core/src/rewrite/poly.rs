//! Exact coefficients: polynomials in `λ_0..λ_{m-1}` and the dimension
//! symbols `n_0..n_{m-1}`, over a power of `Σλ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QuiverError, Result};
use crate::scalar::Real;

/// Exponents of `λ_0..λ_{m-1}, n_0..n_{m-1}`.
type Monomial = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    m: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(m: usize) -> Self {
        Poly { m, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, c: BigRational) -> Self {
        let mut out = Self::zero(m);
        if !c.is_zero() {
            out.terms.insert(vec![0; 2 * m], c);
        }
        out
    }

    pub fn int(m: usize, c: i64) -> Self {
        Self::constant(m, BigRational::from_integer(BigInt::from(c)))
    }

    fn var(m: usize, slot: usize) -> Self {
        let mut e = vec![0; 2 * m];
        e[slot] = 1;
        let mut out = Self::zero(m);
        out.terms.insert(e, BigRational::one());
        out
    }

    pub fn lambda(m: usize, t: usize) -> Self {
        Self::var(m, t % m)
    }

    pub fn dim(m: usize, t: usize) -> Self {
        Self::var(m, m + t % m)
    }

    pub fn sum_lambda(m: usize) -> Self {
        (0..m).fold(Self::zero(m), |acc, t| acc.add(&Self::lambda(m, t)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { m: self.m, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Poly { m: self.m, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
                *slot += ca * cb;
                if slot.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::int(self.m, 1), |acc, _| acc.mul(self))
    }

    /// `Some(c)` when `self = c · other` for a rational `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let (e, c) = other.terms.iter().next()?;
        let a = self.terms.get(e)?;
        let r = a / c;
        (other.scale(&r) == *self).then_some(r)
    }

    pub fn eval<R: Real>(&self, lambda: &[Complex<R>], dims: &[i64]) -> Complex<R> {
        let mut total = Complex::new(R::zero(), R::zero());
        for (e, c) in &self.terms {
            let mut term = Complex::new(R::lit(c.to_f64().unwrap_or(f64::NAN)), R::zero());
            for (slot, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let base = if slot < self.m {
                    lambda[slot]
                } else {
                    Complex::new(R::lit(dims[slot - self.m] as f64), R::zero())
                };
                for _ in 0..p {
                    term *= base;
                }
            }
            total += term;
        }
        total
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher degree first, then by variable index
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| {
            let da: u16 = a.iter().sum();
            let db: u16 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (pos, (e, c)) in entries.into_iter().enumerate() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(slot, &p)| {
                    let name = if slot < self.m { format!("λ{slot}") } else { format!("n{}", slot - self.m) };
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("·"))?;
            } else {
                write!(f, "{}·{}", fmt_rational(&mag), factors.join("·"))?;
            }
        }
        Ok(())
    }
}

/// `num / (Σλ)^den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: Poly,
    pub den: u32,
}

impl RatFn {
    pub fn poly(num: Poly) -> Self {
        RatFn { num, den: 0 }
    }

    pub fn zero(m: usize) -> Self {
        Self::poly(Poly::zero(m))
    }

    pub fn int(m: usize, c: i64) -> Self {
        Self::poly(Poly::int(m, c))
    }

    pub fn m(&self) -> usize {
        self.num.m
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn lift(&self, den: u32) -> Poly {
        self.num.mul(&Poly::sum_lambda(self.m()).pow(den - self.den))
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.den.max(other.den);
        RatFn { num: self.lift(den).add(&other.lift(den)), den }.tidy()
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFn { num: self.num.mul(&other.num), den: self.den + other.den }.tidy()
    }

    /// Division by `c · Σλ` or by a nonzero rational `c`.
    pub fn div(&self, by: &Poly) -> Result<Self> {
        let m = self.m();
        let one = Poly::int(m, 1);
        if let Some(c) = by.ratio_to(&one) {
            return Ok(RatFn { num: self.num.scale(&c.recip()), den: self.den });
        }
        let s = Poly::sum_lambda(m);
        match by.ratio_to(&s) {
            Some(c) => Ok(RatFn { num: self.num.scale(&c.recip()), den: self.den + 1 }.tidy()),
            None => Err(QuiverError::Denominator(format!("cannot divide by {by}"))),
        }
    }

    /// Cancels whole powers of `Σλ` from the numerator.
    fn tidy(mut self) -> Self {
        if self.num.is_zero() {
            self.den = 0;
            return self;
        }
        let s = Poly::sum_lambda(self.m());
        while self.den > 0 {
            match exact_quotient(&self.num, &s) {
                Some(q) => {
                    self.num = q;
                    self.den -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn eval<R: Real>(&self, lambda: &[Complex<R>], dims: &[i64]) -> Result<Complex<R>> {
        let num = self.num.eval(lambda, dims);
        if self.den == 0 {
            return Ok(num);
        }
        let s: Complex<R> = lambda.iter().fold(Complex::new(R::zero(), R::zero()), |a, &b| a + b);
        if crate::scalar::cabs(s) <= R::lit(1e-12) {
            return Err(QuiverError::Denominator("Σλ vanishes".into()));
        }
        let mut d = Complex::new(R::one(), R::zero());
        for _ in 0..self.den {
            d *= s;
        }
        Ok(num / d)
    }
}

/// Quotient of `p` by the linear form `s = λ_0 + … + λ_{m-1}` when exact.
///
/// Divides with respect to `λ_{m-1}`: every monomial of `s` except that one
/// involves a different variable, so the leading-term division terminates.
fn exact_quotient(p: &Poly, s: &Poly) -> Option<Poly> {
    let m = p.m;
    let lead = m - 1;
    let mut rem = p.clone();
    let mut q = Poly::zero(m);
    while let Some((e, c)) = rem
        .terms
        .iter()
        .filter(|(e, _)| e[lead] > 0)
        .max_by(|(a, _), (b, _)| a[lead].cmp(&b[lead]).then_with(|| a.cmp(b)))
        .map(|(e, c)| (e.clone(), c.clone()))
    {
        let mut qe = e.clone();
        qe[lead] -= 1;
        let mut mono = Poly::zero(m);
        mono.terms.insert(qe, c);
        q = q.add(&mono);
        rem = rem.sub(&mono.mul(s));
    }
    rem.is_zero().then_some(q)
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.num.terms.len() == 1;
        if self.den == 0 {
            return write!(f, "{}", self.num);
        }
        let s = Poly::sum_lambda(self.m());
        let den = if self.den == 1 { format!("({s})") } else { format!("({s})^{}", self.den) };
        if single {
            write!(f, "{}/{den}", self.num)
        } else {
            write!(f, "({})/{den}", self.num)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_printing() {
        let m = 2;
        let s = Poly::sum_lambda(m);
        assert_eq!(s.to_string(), "λ0 + λ1");
        let p = s.mul(&s).sub(&Poly::lambda(m, 0).mul(&Poly::lambda(m, 0)));
        assert_eq!(
            p,
            Poly::lambda(m, 1)
                .mul(&Poly::lambda(m, 1))
                .add(&Poly::lambda(m, 0).mul(&Poly::lambda(m, 1)).scale(&BigRational::from_integer(2.into())))
        );
        assert_eq!(Poly::int(m, -3).to_string(), "-3");
    }

    #[test]
    fn division_by_sum() {
        let m = 3;
        let s = Poly::sum_lambda(m);
        let r = RatFn::poly(Poly::dim(m, 0)).div(&s.scale(&BigRational::from_integer((-2).into()))).unwrap();
        assert_eq!(r.den, 1);
        let back = r.mul(&RatFn::poly(s.clone()));
        assert_eq!(back.den, 0);
        assert_eq!(back.num, Poly::dim(m, 0).scale(&BigRational::new((-1).into(), 2.into())));
        assert!(RatFn::int(m, 1).div(&Poly::lambda(m, 0)).is_err());
    }

    #[test]
    fn evaluation() {
        let lam = [Complex::new(1.0, 0.0), Complex::new(2.0, 1.0)];
        let p = Poly::lambda(2, 1).mul(&Poly::dim(2, 0));
        assert_eq!(p.eval(&lam, &[3, 1]), Complex::new(6.0, 3.0));
        let r = RatFn::poly(Poly::int(2, 1)).div(&Poly::sum_lambda(2)).unwrap();
        let v = r.eval(&lam, &[1, 1]).unwrap();
        assert!((v - Complex::new(1.0, 0.0) / Complex::new(3.0, 1.0)).norm() < 1e-15);
    }
}
