//! Generator functions `G^{i,j}_k = Tr(A^i C_k B^j)` and
//! `H^{i,j}_k = w A^i C_k B^j v`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

use crate::error::{QuiverError, Result};
use crate::point::{block_form, CMat, QuiverPoint};
use crate::scalar::{cabs, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G,
    H,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::G => "G",
            Family::H => "H",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl InvariantIndex {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        InvariantIndex { i, j, k }
    }

    pub fn admissible(&self, m: usize, n_total: usize) -> bool {
        self.k < m && (m * self.i + self.k).max(m * self.j + self.k) <= n_total
    }
}

/// Every `(i, j, k)` with `max(mi + k, mj + k) ≤ N`.
pub fn index_box(m: usize, n_total: usize) -> Vec<InvariantIndex> {
    let mut out = Vec::new();
    for k in 0..m.min(n_total + 1) {
        let top = (n_total - k) / m;
        for i in 0..=top {
            for j in 0..=top {
                out.push(InvariantIndex::new(i, j, k));
            }
        }
    }
    out.sort();
    out
}

/// `A = Y_{m-1}⋯Y_0`, `B = X_0⋯X_{m-1}` and `C_k = Y_{m-1}⋯Y_{m-k} X_{m-k}⋯X_{m-1}`.
#[derive(Debug, Clone)]
pub struct CycleMatrices<R: Real> {
    pub a: CMat<R>,
    pub b: CMat<R>,
    pub c: Vec<CMat<R>>,
}

pub fn cycle_matrices<R: Real>(p: &QuiverPoint<R>) -> CycleMatrices<R> {
    let m = p.m();
    let c = (0..m).map(|k| p.y_path(m - k, k) * p.x_path(0, k)).collect();
    CycleMatrices { a: p.y_path(0, m), b: p.x_path(0, m), c }
}

/// Evaluator caching powers of `A` and `B`.
pub struct Evaluator<'a, R: Real> {
    point: &'a QuiverPoint<R>,
    cyc: CycleMatrices<R>,
    a_pow: Vec<CMat<R>>,
    b_pow: Vec<CMat<R>>,
}

impl<'a, R: Real> Evaluator<'a, R> {
    pub fn new(point: &'a QuiverPoint<R>) -> Self {
        let cyc = cycle_matrices(point);
        let d = point.dim(0);
        Evaluator { point, cyc, a_pow: vec![CMat::identity(d, d)], b_pow: vec![CMat::identity(d, d)] }
    }

    fn power(cache: &mut Vec<CMat<R>>, base: &CMat<R>, e: usize) -> CMat<R> {
        while cache.len() <= e {
            let next = base * cache.last().expect("nonempty");
            cache.push(next);
        }
        cache[e].clone()
    }

    /// `A^i C_k B^j`, without any box restriction.
    pub fn word(&mut self, idx: InvariantIndex) -> CMat<R> {
        let a = Self::power(&mut self.a_pow, &self.cyc.a, idx.i);
        let b = Self::power(&mut self.b_pow, &self.cyc.b, idx.j);
        a * &self.cyc.c[idx.k] * b
    }

    pub fn value(&mut self, family: Family, idx: InvariantIndex) -> Complex<R> {
        let mat = self.word(idx);
        if mat.nrows() == 0 {
            return Complex::new(R::zero(), R::zero());
        }
        match family {
            Family::G => mat.trace(),
            Family::H => (&self.point.w * mat * &self.point.v)[(0, 0)],
        }
    }
}

/// One generator function on the admissible box.
pub fn invariant<R: Real>(p: &QuiverPoint<R>, family: Family, idx: InvariantIndex) -> Result<Complex<R>> {
    if !idx.admissible(p.m(), p.setting.total_dim()) {
        return Err(QuiverError::IndexOutOfBox { i: idx.i, j: idx.j, k: idx.k });
    }
    Ok(Evaluator::new(p).value(family, idx))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantVector<R: Real> {
    pub m: usize,
    pub alpha: Vec<i64>,
    pub entries: BTreeMap<(Family, InvariantIndex), Complex<R>>,
}

pub fn invariant_vector<R: Real>(p: &QuiverPoint<R>) -> InvariantVector<R> {
    let mut ev = Evaluator::new(p);
    let mut entries = BTreeMap::new();
    for idx in index_box(p.m(), p.setting.total_dim()) {
        for fam in [Family::G, Family::H] {
            entries.insert((fam, idx), ev.value(fam, idx));
        }
    }
    InvariantVector { m: p.m(), alpha: p.setting.alpha().to_vec(), entries }
}

/// `|a - b| / max(1, |a|, |b|)`.
pub fn rel_dev<R: Real>(a: Complex<R>, b: Complex<R>) -> f64 {
    let scale = R::one().max(cabs(a)).max(cabs(b));
    (cabs(a - b) / scale).to_f64_lossy()
}

impl<R: Real> InvariantVector<R> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest entrywise relative deviation; errors for different settings.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        if self.m != other.m || self.alpha != other.alpha {
            return Err(QuiverError::SettingMismatch(format!("alpha {:?} vs {:?}", self.alpha, other.alpha)));
        }
        Ok(self.entries.iter().map(|(key, &a)| rel_dev(a, other.entries[key])).fold(0.0, f64::max))
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_difference(&self, other: &Self) -> Result<f64> {
        self.max_deviation(other)?;
        Ok(self.entries.iter().map(|(key, &a)| cabs(a - other.entries[key]).to_f64_lossy()).fold(0.0, f64::max))
    }
}

/// Orbit equality through invariants; valid for generic `λ`.
pub fn points_equal<R: Real>(p: &QuiverPoint<R>, q: &QuiverPoint<R>, rel_tol: f64) -> Result<bool> {
    if p.setting.beta != q.setting.beta {
        return Err(QuiverError::SettingMismatch(format!("{} vs {}", p.setting.beta, q.setting.beta)));
    }
    let same_tau = p.setting.tau.lambda.iter().zip(&q.setting.tau.lambda).all(|(a, b)| rel_dev(*a, *b) <= 1e-12);
    if !same_tau {
        return Err(QuiverError::SettingMismatch("parameters differ".into()));
    }
    Ok(invariant_vector(p).max_deviation(&invariant_vector(q))? <= rel_tol)
}

/// Largest relative deviation between the per-arm invariants and their
/// block-form counterparts: `H` against `w_big Y^{mi+k} X^{mj+k} v_big`,
/// `G` against the trace of the `V_0` diagonal block of the same product.
pub fn block_consistency<R: Real>(p: &QuiverPoint<R>) -> f64 {
    let b = block_form(p);
    let m = p.m();
    let n = b.total_dim();
    let a0 = p.dim(0);
    let mut ev = Evaluator::new(p);
    let mut worst: f64 = 0.0;
    for idx in index_box(m, p.setting.total_dim()) {
        let prod = block_word(&b.x_big, &b.y_big, m * idx.i + idx.k, m * idx.j + idx.k);
        let g = if a0 == 0 { Complex::new(R::zero(), R::zero()) } else { prod.view((0, 0), (a0, a0)).trace() };
        let h = if n == 0 { Complex::new(R::zero(), R::zero()) } else { (&b.w_big * &prod * &b.v_big)[(0, 0)] };
        worst = worst.max(rel_dev(g, ev.value(Family::G, idx)));
        worst = worst.max(rel_dev(h, ev.value(Family::H, idx)));
    }
    worst
}

/// `Y_big^{ey} X_big^{ex}`.
pub fn block_word<R: Real>(x: &CMat<R>, y: &CMat<R>, ey: usize, ex: usize) -> CMat<R> {
    let n = x.nrows();
    let mut acc = CMat::identity(n, n);
    for _ in 0..ex {
        acc = x * acc;
    }
    for _ in 0..ey {
        acc = y * acc;
    }
    acc
}
