//! Polynomials in the invariant symbols `Tr(A^i C_k B^j)` and `w(A^i C_k B^j)v`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use super::poly::{Poly, RatFn};
use crate::error::{QuiverError, Result};
use crate::invariants::{Evaluator, Family, InvariantIndex};
use crate::point::QuiverPoint;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymFamily {
    Tr,
    WV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub family: SymFamily,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Sym {
    pub fn tr(i: usize, j: usize, k: usize) -> Self {
        Sym { family: SymFamily::Tr, i, j, k }
    }

    pub fn wv(i: usize, j: usize, k: usize) -> Self {
        Sym { family: SymFamily::WV, i, j, k }
    }

    /// Path length `m(i+j) + 2k`.
    pub fn length(&self, m: usize) -> usize {
        m * (self.i + self.j) + 2 * self.k
    }

    /// Symbol of the sorted word `Y^q X^p`.
    pub fn from_counts(family: SymFamily, q: usize, p: usize, m: usize) -> Self {
        let k = p % m;
        debug_assert_eq!(q % m, k, "unbalanced word Y^{q} X^{p}");
        Sym { family, i: (q - k) / m, j: (p - k) / m, k }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            SymFamily::Tr => "Tr",
            SymFamily::WV => "WV",
        };
        write!(f, "{name}({},{},{})", self.i, self.j, self.k)
    }
}

/// Sum of coefficient × (sorted product of symbols).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcExpr {
    m: usize,
    terms: BTreeMap<Vec<Sym>, RatFn>,
}

impl NcExpr {
    pub fn zero(m: usize) -> Self {
        NcExpr { m, terms: BTreeMap::new() }
    }

    pub fn constant(c: RatFn) -> Self {
        let mut out = Self::zero(c.m());
        out.push(Vec::new(), c);
        out
    }

    pub fn poly(p: Poly) -> Self {
        Self::constant(RatFn::poly(p))
    }

    pub fn symbol(m: usize, s: Sym) -> Self {
        let mut out = Self::zero(m);
        out.push(vec![s], RatFn::int(m, 1));
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Sym], &RatFn)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &[Sym]) -> RatFn {
        self.terms.get(mono).cloned().unwrap_or_else(|| RatFn::zero(self.m))
    }

    pub(crate) fn push(&mut self, mut mono: Vec<Sym>, c: RatFn) {
        if c.is_zero() {
            return;
        }
        mono.sort();
        match self.terms.get_mut(&mono) {
            Some(slot) => {
                let sum = slot.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.push(mono.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NcExpr { m: self.m, terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, a) in &self.terms {
            out.push(mono.clone(), a.mul(c));
        }
        out
    }

    pub fn scale_poly(&self, p: &Poly) -> Self {
        self.scale(&RatFn::poly(p.clone()))
    }

    pub fn div(&self, by: &Poly) -> Result<Self> {
        let mut out = Self::zero(self.m);
        for (mono, a) in &self.terms {
            out.push(mono.clone(), a.div(by)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Vec<Sym> = ma.iter().chain(mb).copied().collect();
                out.push(mono, ca.mul(cb));
            }
        }
        out
    }

    /// Replaces every symbol of the family by the given expression.
    pub fn substitute<F>(&self, family: SymFamily, mut f: F) -> Result<Self>
    where
        F: FnMut(Sym) -> Result<NcExpr>,
    {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for &s in mono {
                let factor = if s.family == family { f(s)? } else { Self::symbol(self.m, s) };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        self.terms.keys().flatten().copied()
    }

    pub fn contains_family(&self, family: SymFamily) -> bool {
        self.symbols().any(|s| s.family == family)
    }

    /// Value at a point: `Tr` symbols become `G`, `WV` symbols become `H`.
    pub fn eval<R: Real>(&self, p: &QuiverPoint<R>) -> Result<Complex<R>> {
        if p.m() != self.m {
            return Err(QuiverError::SettingMismatch(format!(
                "expression for m = {}, point has m = {}",
                self.m,
                p.m()
            )));
        }
        let lambda: Vec<Complex<R>> = (0..self.m).map(|t| p.setting.lambda(t)).collect();
        let dims = p.setting.alpha().to_vec();
        let mut ev = Evaluator::new(p);
        let mut total = Complex::new(R::zero(), R::zero());
        for (mono, c) in &self.terms {
            let mut term = c.eval(&lambda, &dims)?;
            for s in mono {
                let fam = match s.family {
                    SymFamily::Tr => Family::G,
                    SymFamily::WV => Family::H,
                };
                term *= ev.value(fam, InvariantIndex::new(s.i, s.j, s.k));
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for NcExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // ascending degree, longest symbols first within a degree
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
        for (pos, (mono, c)) in entries.into_iter().enumerate() {
            let syms: Vec<String> = mono.iter().map(Sym::to_string).collect();
            let coeff = c.to_string();
            let simple = !coeff.contains(' ');
            let term = match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff.clone(),
                (false, "1") => syms.join("·"),
                (false, "-1") => format!("-{}", syms.join("·")),
                (false, _) if simple => format!("{coeff}·{}", syms.join("·")),
                (false, _) => format!("({coeff})·{}", syms.join("·")),
            };
            match (pos, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}
