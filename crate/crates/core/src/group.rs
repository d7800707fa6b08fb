//! The group generated by `ψ_{k,μ}: x ↦ x + μ y^{km-1}` and
//! `φ_{k,ν}: y ↦ y + ν x^{km-1}`, and its action on points.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::error::{QuiverError, Result};
use crate::point::{CMat, QuiverPoint};
use crate::scalar::{Real, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Psi,
    Phi,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Psi => "psi",
            GenKind::Phi => "phi",
        })
    }
}

/// One generator; the coefficient type is complex doubles for points and
/// exact Gaussian rationals for the free algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorG<C> {
    pub kind: GenKind,
    pub k: usize,
    pub coeff: C,
}

impl<C: Ring> GeneratorG<C> {
    pub fn psi(k: usize, coeff: C) -> Self {
        GeneratorG { kind: GenKind::Psi, k, coeff }
    }

    pub fn phi(k: usize, coeff: C) -> Self {
        GeneratorG { kind: GenKind::Phi, k, coeff }
    }

    pub fn inverse(&self) -> Self {
        GeneratorG { kind: self.kind, k: self.k, coeff: C::zero() - self.coeff.clone() }
    }

    /// Exponent `km - 1` of the added monomial.
    pub fn power(&self, m: usize) -> Result<usize> {
        if self.k == 0 {
            return Err(QuiverError::GeneratorIndex(0));
        }
        Ok(self.k * m - 1)
    }
}

/// Maximal run of same-kind generators, stored as `k ↦ coefficient`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<C> {
    pub kind: GenKind,
    pub coeffs: BTreeMap<usize, C>,
}

/// Reduced word: adjacent blocks differ in kind, no block or coefficient is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupWord<C> {
    pub blocks: Vec<Block<C>>,
}

impl<C: Ring> Default for GroupWord<C> {
    fn default() -> Self {
        GroupWord { blocks: Vec::new() }
    }
}

impl<C: Ring> GroupWord<C> {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Generators in application order.
    pub fn generators(&self) -> Vec<GeneratorG<C>> {
        self.blocks
            .iter()
            .flat_map(|b| b.coeffs.iter().map(move |(&k, c)| GeneratorG { kind: b.kind, k, coeff: c.clone() }))
            .collect()
    }

    /// Reverse order with negated coefficients.
    pub fn inverse(&self) -> Self {
        let raw: Vec<_> = self.generators().iter().rev().map(|g| g.inverse()).collect();
        canonicalize(&raw).expect("indices already validated")
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut raw = self.generators();
        raw.extend(other.generators());
        canonicalize(&raw).expect("indices already validated")
    }

    pub fn max_k(&self) -> usize {
        self.blocks.iter().flat_map(|b| b.coeffs.keys().copied()).max().unwrap_or(0)
    }
}

/// Merges adjacent same-kind generators and drops zero coefficients and
/// empty blocks. Cancellation can expose new adjacent same-kind blocks, so
/// the word is reduced with a stack.
pub fn canonicalize<C: Ring>(raw: &[GeneratorG<C>]) -> Result<GroupWord<C>> {
    let mut stack: Vec<Block<C>> = Vec::new();
    for g in raw {
        if g.k == 0 {
            return Err(QuiverError::GeneratorIndex(0));
        }
        if g.coeff.is_zero() {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.kind == g.kind => {
                let entry = top.coeffs.entry(g.k).or_insert_with(C::zero);
                *entry = entry.clone() + g.coeff.clone();
                if entry.is_zero() {
                    top.coeffs.remove(&g.k);
                }
                if top.coeffs.is_empty() {
                    stack.pop();
                }
            }
            _ => {
                let mut coeffs = BTreeMap::new();
                coeffs.insert(g.k, g.coeff.clone());
                stack.push(Block { kind: g.kind, coeffs });
            }
        }
    }
    Ok(GroupWord { blocks: stack })
}

/// Action of one generator: `X_i ↦ X_i + μ Y_{i-1}⋯Y_0 A^{k-1} Y_{m-1}⋯Y_{i+1}`
/// or dually on `Y`; `v` and `w` are fixed.
pub fn apply_generator<R: Real>(g: &GeneratorG<Complex<R>>, p: &QuiverPoint<R>) -> Result<QuiverPoint<R>> {
    let m = p.m();
    let len = g.power(m)?;
    let mut out = p.clone();
    if g.coeff == Complex::new(R::zero(), R::zero()) {
        return Ok(out);
    }
    for i in 0..m {
        match g.kind {
            GenKind::Psi => {
                let add: CMat<R> = p.y_path(i + 1, len) * g.coeff;
                out.x[i] += add;
            }
            GenKind::Phi => {
                let add: CMat<R> = p.x_path(i, len) * g.coeff;
                out.y[i] += add;
            }
        }
    }
    Ok(out)
}

/// Letters act left to right: the first generator acts first.
pub fn apply_sequence<R: Real>(gens: &[GeneratorG<Complex<R>>], p: &QuiverPoint<R>) -> Result<QuiverPoint<R>> {
    gens.iter().try_fold(p.clone(), |q, g| apply_generator(g, &q))
}

pub fn apply_word<R: Real>(word: &GroupWord<Complex<R>>, p: &QuiverPoint<R>) -> Result<QuiverPoint<R>> {
    apply_sequence(&word.generators(), p)
}

/// Block-form action `X ↦ X + μ Y^{km-1}` or `Y ↦ Y + ν X^{km-1}` on the
/// `N × N` matrices.
pub fn apply_generator_block<R: Real>(
    g: &GeneratorG<Complex<R>>,
    x: &CMat<R>,
    y: &CMat<R>,
    m: usize,
) -> Result<(CMat<R>, CMat<R>)> {
    let len = g.power(m)?;
    let pow = |a: &CMat<R>| (0..len).fold(CMat::identity(a.nrows(), a.ncols()), |acc, _| a * acc);
    Ok(match g.kind {
        GenKind::Psi => (x + pow(y) * g.coeff, y.clone()),
        GenKind::Phi => (x.clone(), y + pow(x) * g.coeff),
    })
}

fn parse_f64(s: &str, text: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| QuiverError::Parse(format!("bad number `{}` in `{text}`", s.trim())))
}

/// Parses `psi(k,re,im);phi(k,re,im);…` into raw generators.
pub fn parse_generators(text: &str) -> Result<Vec<GeneratorG<Complex<f64>>>> {
    let mut out = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (head, rest) = item
            .split_once('(')
            .ok_or_else(|| QuiverError::Parse(format!("expected `name(k,re,im)`, got `{item}`")))?;
        let kind = match head.trim() {
            "psi" => GenKind::Psi,
            "phi" => GenKind::Phi,
            other => return Err(QuiverError::Parse(format!("unknown generator `{other}`"))),
        };
        let body = rest.strip_suffix(')').ok_or_else(|| QuiverError::Parse(format!("missing `)` in `{item}`")))?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 3 {
            return Err(QuiverError::Parse(format!("expected three arguments in `{item}`")));
        }
        let k: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| QuiverError::Parse(format!("bad index `{}` in `{item}`", parts[0].trim())))?;
        if k == 0 {
            return Err(QuiverError::GeneratorIndex(0));
        }
        let coeff = Complex::new(parse_f64(parts[1], item)?, parse_f64(parts[2], item)?);
        out.push(GeneratorG { kind, k, coeff });
    }
    Ok(out)
}

impl fmt::Display for GroupWord<Complex<f64>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.generators().iter().map(|g| format!("{}({},{},{})", g.kind, g.k, g.coeff.re, g.coeff.im)).collect();
        f.write_str(&parts.join(";"))
    }
}
