//! Root lattice of the framed cyclic quiver.
//!
//! The quiver has cyclic vertices `0..m` with arrows `a_i: i+1 -> i`
//! (indices mod `m`) and a framing vertex `∞` with one arrow `∞ -> 0`.
//! Vectors are stored as `[n_∞, n_0, …, n_{m-1}]`.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{QuiverError, Result};
use crate::scalar::{cabs, Real, Ring};

/// A vertex of the framed cyclic quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Inf,
    Cyc(usize),
}

impl Vertex {
    fn slot(self) -> usize {
        match self {
            Vertex::Inf => 0,
            Vertex::Cyc(i) => i + 1,
        }
    }

    fn from_slot(slot: usize) -> Vertex {
        if slot == 0 {
            Vertex::Inf
        } else {
            Vertex::Cyc(slot - 1)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Inf => write!(f, "inf"),
            Vertex::Cyc(i) => write!(f, "{i}"),
        }
    }
}

/// Arrows of the (undoubled) quiver as `(tail, head)` slot pairs.
fn arrows(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).map(move |i| ((i + 1) % m + 1, i + 1)).chain(std::iter::once((0, 1)))
}

/// Integer vector indexed by `{∞, 0, …, m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimVector {
    entries: Vec<i64>,
}

impl DimVector {
    pub fn new(inf: i64, alpha: &[i64]) -> Self {
        assert!(!alpha.is_empty(), "m must be positive");
        let mut entries = Vec::with_capacity(alpha.len() + 1);
        entries.push(inf);
        entries.extend_from_slice(alpha);
        DimVector { entries }
    }

    /// `(1, α)`, the shape of every dimension vector used for points.
    pub fn framed(alpha: &[i64]) -> Self {
        Self::new(1, alpha)
    }

    /// `(1, (n, …, n))`.
    pub fn calogero_moser(m: usize, n: i64) -> Self {
        Self::framed(&vec![n; m])
    }

    pub fn zero(m: usize) -> Self {
        DimVector { entries: vec![0; m + 1] }
    }

    pub fn unit(m: usize, v: Vertex) -> Self {
        let mut d = Self::zero(m);
        d.entries[v.slot()] = 1;
        d
    }

    pub fn m(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.entries[v.slot()]
    }

    pub fn inf(&self) -> i64 {
        self.entries[0]
    }

    pub fn alpha(&self) -> &[i64] {
        &self.entries[1..]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_balanced(&self) -> bool {
        self.alpha().windows(2).all(|w| w[0] == w[1])
    }

    fn check_m(&self, other: &DimVector) -> Result<()> {
        if self.entries.len() != other.entries.len() {
            return Err(QuiverError::Dimension(format!(
                "vectors of lengths {} and {}",
                self.entries.len(),
                other.entries.len()
            )));
        }
        Ok(())
    }

    fn neg(&self) -> DimVector {
        DimVector { entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha().iter().map(|a| a.to_string()).collect();
        write!(f, "({},({}))", self.inf(), alpha.join(","))
    }
}

/// Values of the Ringel form on a pair of vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingelValues {
    pub bilinear: i64,
    pub symmetric: i64,
    pub p_of_beta: i64,
}

fn ringel_raw(a: &DimVector, b: &DimVector) -> i64 {
    let diag: i64 = a.entries.iter().zip(&b.entries).map(|(x, y)| x * y).sum();
    let off: i64 = arrows(a.m()).map(|(t, h)| a.entries[t] * b.entries[h]).sum();
    diag - off
}

/// `⟨β,γ⟩`, `(β,γ)` and `p(β) = 1 - ⟨β,β⟩`.
pub fn ringel_p(beta: &DimVector, gamma: &DimVector) -> Result<RingelValues> {
    beta.check_m(gamma)?;
    let bilinear = ringel_raw(beta, gamma);
    Ok(RingelValues { bilinear, symmetric: bilinear + ringel_raw(gamma, beta), p_of_beta: 1 - ringel_raw(beta, beta) })
}

/// Symmetrised form `(β,γ)`.
pub fn symmetric_form(beta: &DimVector, gamma: &DimVector) -> i64 {
    ringel_raw(beta, gamma) + ringel_raw(gamma, beta)
}

/// `p(β)`; `2p(β)` is the dimension of the variety when it is nonempty.
pub fn p_of(beta: &DimVector) -> i64 {
    1 - ringel_raw(beta, beta)
}

/// Cartan entry `(ε_a, ε_b)`.
pub fn cartan(m: usize, a: Vertex, b: Vertex) -> i64 {
    symmetric_form(&DimVector::unit(m, a), &DimVector::unit(m, b))
}

pub fn is_loop_free(m: usize, v: Vertex) -> bool {
    match v {
        Vertex::Inf => true,
        Vertex::Cyc(_) => m >= 2,
    }
}

fn check_vertex(m: usize, v: Vertex) -> Result<()> {
    if let Vertex::Cyc(i) = v {
        if i >= m {
            return Err(QuiverError::VertexRange { index: i, m });
        }
    }
    if !is_loop_free(m, v) {
        return Err(QuiverError::LoopVertex { vertex: v.to_string(), m });
    }
    Ok(())
}

/// `s_i(β) = β - (β, ε_i) ε_i`.
pub fn simple_reflection(v: Vertex, beta: &DimVector) -> Result<DimVector> {
    let m = beta.m();
    check_vertex(m, v)?;
    let c = symmetric_form(beta, &DimVector::unit(m, v));
    let mut out = beta.clone();
    out.entries[v.slot()] -= c;
    Ok(out)
}

/// Parameter vector `τ = (λ_∞, λ_0, …, λ_{m-1})` over any ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector<T> {
    pub lambda: Vec<T>,
    pub lambda_inf: T,
}

impl<T: Ring> ParamVector<T> {
    pub fn new(lambda: Vec<T>, lambda_inf: T) -> Self {
        assert!(!lambda.is_empty(), "m must be positive");
        ParamVector { lambda, lambda_inf }
    }

    /// Parameter balanced against `(1, α)`: `λ_∞ = -λ·α`.
    pub fn balanced(lambda: Vec<T>, alpha: &[i64]) -> Self {
        let dot = lambda.iter().zip(alpha).fold(T::zero(), |acc, (l, &a)| acc + l.clone() * T::from_int(a));
        ParamVector { lambda, lambda_inf: T::zero() - dot }
    }

    pub fn m(&self) -> usize {
        self.lambda.len()
    }

    pub fn get(&self, v: Vertex) -> T {
        match v {
            Vertex::Inf => self.lambda_inf.clone(),
            Vertex::Cyc(i) => self.lambda[i].clone(),
        }
    }

    fn set(&mut self, v: Vertex, value: T) {
        match v {
            Vertex::Inf => self.lambda_inf = value,
            Vertex::Cyc(i) => self.lambda[i] = value,
        }
    }

    /// `τ·β`.
    pub fn pair(&self, beta: &DimVector) -> Result<T> {
        if beta.m() != self.m() {
            return Err(QuiverError::Dimension(format!(
                "parameter for m = {} paired with vector for m = {}",
                self.m(),
                beta.m()
            )));
        }
        Ok((0..=self.m()).fold(T::zero(), |acc, s| {
            let v = Vertex::from_slot(s);
            acc + self.get(v) * T::from_int(beta.get(v))
        }))
    }

    pub fn sum_lambda(&self) -> T {
        self.lambda.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

/// `(r_i τ)_j = τ_j - (ε_i, ε_j) τ_i`.
pub fn dual_reflection<T: Ring>(v: Vertex, tau: &ParamVector<T>) -> Result<ParamVector<T>> {
    let m = tau.m();
    check_vertex(m, v)?;
    let ti = tau.get(v);
    let mut out = tau.clone();
    for s in 0..=m {
        let j = Vertex::from_slot(s);
        let c = cartan(m, v, j);
        if c != 0 {
            out.set(j, tau.get(j) - T::from_int(c) * ti.clone());
        }
    }
    Ok(out)
}

/// Tolerance used by [`is_generic`] for the "not an integer" test.
pub const GENERIC_TOL: f64 = 1e-9;

/// Genericity of `λ` for the affine root system of type `Ã_{m-1}`.
///
/// The roots are `α̂ + kδ` and `kδ` with `α̂` a root of the finite system on
/// vertices `1..m`, so `λ` is generic iff `Σλ ≠ 0` and no ratio
/// `λ·α̂ / Σλ` is an integer.
pub fn is_generic<R: Real>(lambda: &[Complex<R>]) -> bool {
    let m = lambda.len();
    let total: Complex<f64> = lambda.iter().map(|z| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())).sum();
    if total.norm() <= GENERIC_TOL {
        return false;
    }
    if m == 1 {
        return true;
    }
    for a in 1..m {
        let mut partial = Complex::new(0.0, 0.0);
        for b in a..m {
            partial += Complex::new(lambda[b].re.to_f64_lossy(), lambda[b].im.to_f64_lossy());
            let ratio = partial / total;
            let nearest = ratio.re.round();
            if (ratio - Complex::new(nearest, 0.0)).norm() <= GENERIC_TOL {
                return false;
            }
        }
    }
    true
}

/// Sequence of simple reflections, applied first to last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<Vertex>,
}

impl WeylWord {
    pub fn new(letters: Vec<Vertex>) -> Self {
        WeylWord { letters }
    }

    pub fn cyclic(indices: &[usize]) -> Self {
        WeylWord { letters: indices.iter().map(|&i| Vertex::Cyc(i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> WeylWord {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn apply(&self, beta: &DimVector) -> Result<DimVector> {
        self.letters.iter().try_fold(beta.clone(), |b, &v| simple_reflection(v, &b))
    }

    pub fn apply_params<T: Ring>(&self, tau: &ParamVector<T>) -> Result<ParamVector<T>> {
        self.letters.iter().try_fold(tau.clone(), |t, &v| dual_reflection(v, &t))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootTag {
    Real,
    Imaginary,
    NotARoot,
}

/// Result of [`classify_root`].
///
/// `witness` reduces `sign * β` to either a simple root (real), a vector of
/// the fundamental region (imaginary) or, for non-roots, to the first vector
/// that exposed the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClass {
    pub tag: RootTag,
    pub positive: bool,
    pub witness: WeylWord,
    pub endpoint: DimVector,
}

impl RootClass {
    pub fn is_positive_root(&self) -> bool {
        self.positive && self.tag != RootTag::NotARoot
    }
}

pub const CLASSIFY_CAP: usize = 10_000;

fn support_connected(beta: &DimVector) -> bool {
    let m = beta.m();
    let support: Vec<usize> = (0..=m).filter(|&s| beta.entries[s] != 0).collect();
    if support.is_empty() {
        return false;
    }
    let mut seen = vec![false; m + 1];
    let mut stack = vec![support[0]];
    seen[support[0]] = true;
    while let Some(s) = stack.pop() {
        for (t, h) in arrows(m) {
            let next = if t == s {
                h
            } else if h == s {
                t
            } else {
                continue;
            };
            if beta.entries[next] != 0 && !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    support.iter().all(|&s| seen[s])
}

/// Kac-style descent: reflect while some loop-free vertex has `(β, ε_i) > 0`.
pub fn classify_root(beta: &DimVector) -> Result<RootClass> {
    if beta.is_zero() {
        return Err(QuiverError::ZeroVector);
    }
    let m = beta.m();
    let has_pos = beta.entries.iter().any(|&e| e > 0);
    let has_neg = beta.entries.iter().any(|&e| e < 0);
    if has_pos && has_neg {
        return Ok(RootClass {
            tag: RootTag::NotARoot,
            positive: false,
            witness: WeylWord::default(),
            endpoint: beta.clone(),
        });
    }
    let positive = has_pos;
    let mut cur = if positive { beta.clone() } else { beta.neg() };
    let mut letters = Vec::new();
    let vertices: Vec<Vertex> = (0..=m).map(Vertex::from_slot).collect();
    loop {
        if letters.len() > CLASSIFY_CAP {
            return Err(QuiverError::ClassificationCap(CLASSIFY_CAP));
        }
        let nonzero: Vec<usize> = (0..=m).filter(|&s| cur.entries[s] != 0).collect();
        if nonzero.len() == 1 && cur.entries[nonzero[0]] == 1 {
            let v = Vertex::from_slot(nonzero[0]);
            if is_loop_free(m, v) {
                return Ok(RootClass { tag: RootTag::Real, positive, witness: WeylWord::new(letters), endpoint: cur });
            }
        }
        let step =
            vertices.iter().copied().find(|&v| is_loop_free(m, v) && symmetric_form(&cur, &DimVector::unit(m, v)) > 0);
        match step {
            Some(v) => {
                cur = simple_reflection(v, &cur)?;
                letters.push(v);
                if cur.entries.iter().any(|&e| e < 0) {
                    return Ok(RootClass {
                        tag: RootTag::NotARoot,
                        positive,
                        witness: WeylWord::new(letters),
                        endpoint: cur,
                    });
                }
            }
            None => {
                let tag = if support_connected(&cur) { RootTag::Imaginary } else { RootTag::NotARoot };
                return Ok(RootClass { tag, positive, witness: WeylWord::new(letters), endpoint: cur });
            }
        }
    }
}

/// `|τ·β|` is below the rounding level of the sum that produced it.
pub(crate) fn balanced_within_rounding<R: Real>(
    tau: &ParamVector<Complex<R>>,
    beta: &DimVector,
    pairing: Complex<R>,
) -> bool {
    let size = (0..=tau.m()).fold(R::one(), |acc, s| {
        let v = Vertex::from_slot(s);
        acc + cabs(tau.get(v)) * R::lit(beta.get(v).unsigned_abs() as f64)
    });
    let unit = R::default_epsilon().max(R::lit(1e-15));
    cabs(pairing) <= R::lit(64.0) * unit * size
}

/// Membership of `β = (1, α)` in `Σ_τ` for generic `λ`.
pub fn in_sigma_tau<R: Real>(tau: &ParamVector<Complex<R>>, beta: &DimVector) -> Result<bool> {
    let pairing = tau.pair(beta)?;
    if !balanced_within_rounding(tau, beta, pairing) {
        return Err(QuiverError::Unbalanced(format!("{pairing}")));
    }
    if !is_generic(&tau.lambda) {
        return Err(QuiverError::NotGeneric(format!("{:?}", tau.lambda)));
    }
    if beta.entries.iter().any(|&e| e < 0) || beta.is_zero() {
        return Ok(false);
    }
    Ok(classify_root(beta)?.is_positive_root())
}

/// Reduction of `(1, α)` to Calogero–Moser shape `(1, (n, …, n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Reflections in application order: `word.apply(β) == (1, (n, …, n))`.
    pub word: WeylWord,
    pub n: i64,
}

impl Reduction {
    /// Rebuilds the original vector from the balanced one.
    pub fn replay(&self, m: usize) -> Result<DimVector> {
        self.word.reversed().apply(&DimVector::calogero_moser(m, self.n))
    }
}

/// Reduces `β = (1, α)` by cyclic reflections until `α` is constant.
///
/// Each step reflects at the smallest index carrying the maximal entry when
/// that strictly lowers `Σα`; otherwise at the smallest cyclic index with
/// `(β, ε_i) > 0`. Every step lowers `Σα`, so the loop terminates; the
/// iteration cap only guards malformed input.
pub fn reduce_to_cm(beta: &DimVector) -> Result<Reduction> {
    let m = beta.m();
    if beta.inf() != 1 || beta.alpha().iter().any(|&a| a < 0) {
        return Err(QuiverError::NotPositiveRoot(beta.to_string()));
    }
    let max_entry = beta.alpha().iter().copied().max().unwrap_or(0).max(0) as usize;
    let cap = 64 * (m + max_entry);
    let mut cur = beta.clone();
    let mut letters = Vec::new();
    while !cur.is_balanced() {
        if letters.len() >= cap || m == 1 {
            return Err(QuiverError::ReductionStalled { steps: letters.len(), last: cur.to_string() });
        }
        let pairing = |i: usize, b: &DimVector| symmetric_form(b, &DimVector::unit(m, Vertex::Cyc(i)));
        let mu = *cur.alpha().iter().max().expect("m >= 1");
        let k = cur.alpha().iter().position(|&a| a == mu).expect("max exists");
        let choice = if pairing(k, &cur) > 0 { Some(k) } else { (0..m).find(|&i| pairing(i, &cur) > 0) };
        let Some(i) = choice else {
            return Err(QuiverError::ReductionStalled { steps: letters.len(), last: cur.to_string() });
        };
        cur = simple_reflection(Vertex::Cyc(i), &cur)?;
        letters.push(Vertex::Cyc(i));
        if cur.alpha().iter().any(|&a| a < 0) {
            return Err(QuiverError::NotPositiveRoot(beta.to_string()));
        }
    }
    Ok(Reduction { word: WeylWord::new(letters), n: cur.alpha()[0] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wact(i: usize, b: &DimVector) -> DimVector {
        // explicit cyclic formulas
        let m = b.m();
        let a = b.alpha().to_vec();
        let mut out = a.clone();
        if i == 0 {
            out[0] = b.inf() + a[1 % m] + a[m - 1] - a[0];
        } else {
            out[i] = a[i - 1] + a[(i + 1) % m] - a[i];
        }
        DimVector::new(b.inf(), &out)
    }

    #[test]
    fn ringel_examples() {
        let b = DimVector::framed(&[1, 1, 1]);
        let r = ringel_p(&b, &b).unwrap();
        assert_eq!(r.bilinear, 0);
        assert_eq!(r.p_of_beta, 1);

        let e0 = DimVector::unit(3, Vertex::Cyc(0));
        let r = ringel_p(&e0, &e0).unwrap();
        assert_eq!((r.bilinear, r.symmetric, r.p_of_beta), (1, 2, 0));

        for m in 1..6 {
            for n in 0..5 {
                assert_eq!(2 * p_of(&DimVector::calogero_moser(m, n)), 2 * n);
            }
        }
        assert!(ringel_p(&DimVector::zero(2), &DimVector::zero(3)).is_err());
    }

    #[test]
    fn dimension_formula_matches_p() {
        // 2p(β) = 2α_0 - Σ(α_i - α_{i+1})²
        for alpha in [[2, 1, 1], [3, 0, 2], [1, 4, 2], [0, 0, 5]] {
            let b = DimVector::framed(&alpha);
            let closed = 2 * alpha[0] - (0..3).map(|i| (alpha[i] - alpha[(i + 1) % 3]).pow(2)).sum::<i64>();
            assert_eq!(2 * p_of(&b), closed);
        }
    }

    #[test]
    fn reflection_examples() {
        let b = DimVector::framed(&[2, 1, 1]);
        assert_eq!(simple_reflection(Vertex::Cyc(1), &b).unwrap(), DimVector::framed(&[2, 2, 1]));
        for m in 2..6 {
            for n in 0..4 {
                let cm = DimVector::calogero_moser(m, n);
                let mut expect = vec![n; m];
                expect[0] = n + 1;
                assert_eq!(simple_reflection(Vertex::Cyc(0), &cm).unwrap(), DimVector::framed(&expect));
            }
        }
        for m in 2..6 {
            let b = DimVector::framed(&(0..m as i64).map(|i| (3 * i + 1) % 5).collect::<Vec<_>>());
            for i in 0..m {
                assert_eq!(simple_reflection(Vertex::Cyc(i), &b).unwrap(), wact(i, &b));
            }
        }
    }

    #[test]
    fn reflection_rejects_loops_and_range() {
        let b = DimVector::framed(&[3]);
        assert!(matches!(simple_reflection(Vertex::Cyc(0), &b), Err(QuiverError::LoopVertex { .. })));
        assert!(simple_reflection(Vertex::Inf, &b).is_ok());
        let b = DimVector::framed(&[1, 1]);
        assert!(matches!(simple_reflection(Vertex::Cyc(2), &b), Err(QuiverError::VertexRange { .. })));
    }

    #[test]
    fn dual_reflection_examples() {
        let tau = ParamVector::new(vec![2i64, 3, 5], 7);
        let r = dual_reflection(Vertex::Cyc(0), &tau).unwrap();
        assert_eq!(r.lambda, vec![-2, 5, 7]);
        assert_eq!(r.lambda_inf, 9);

        let tau = ParamVector::new(vec![2i64, 3], 7);
        let r = dual_reflection(Vertex::Cyc(0), &tau).unwrap();
        assert_eq!(r.lambda, vec![-2, 3 + 4]);
        assert_eq!(r.lambda_inf, 9);
        assert_eq!(cartan(2, Vertex::Cyc(0), Vertex::Cyc(1)), -2);
        assert_eq!(cartan(1, Vertex::Cyc(0), Vertex::Cyc(0)), 0);
    }

    #[test]
    fn genericity_examples() {
        let c = |v: &[f64]| v.iter().map(|&x| Complex::new(x, 0.0)).collect::<Vec<_>>();
        assert!(is_generic(&c(&[1.0, 2.0])));
        assert!(!is_generic(&c(&[0.0])));
        assert!(is_generic(&c(&[0.5])));
        assert!(!is_generic(&c(&[1.0, -1.0])));
        assert!(!is_generic(&c(&[1.0, 0.0])));
        assert!(!is_generic(&c(&[2.0, 1.0, 0.0])));
        // λ·ε_1 / Σλ = 1/2: no affine root of Ã_1 pairs to zero
        assert!(is_generic(&c(&[1.0, 1.0])));
        // λ_1 / Σλ = 1
        assert!(!is_generic(&c(&[-1.0, 1.0, 1.0])));
        assert!(!is_generic(&c(&[2.0, -2.0, 1.0])));
    }

    /// Enumerates affine roots of bounded height and checks the pairing.
    fn brute_generic(lambda: &[f64]) -> bool {
        let m = lambda.len();
        let total: f64 = lambda.iter().sum();
        if total.abs() < 1e-12 {
            return false;
        }
        for k in -6i64..=6 {
            for a in 1..m {
                for b in a..m {
                    let fin: f64 = lambda[a..=b].iter().sum();
                    for sign in [-1.0, 1.0] {
                        if (sign * fin + k as f64 * total).abs() < 1e-12 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn genericity_matches_enumeration() {
        let samples: [&[f64]; 6] = [
            &[1.0, 2.0, 3.0],
            &[1.0, 1.0, -1.0],
            &[3.0, -1.0, 1.0],
            &[1.0, 1.0, 1.0, 1.0],
            &[2.0, -1.0, -1.0, 1.0],
            &[0.5, 0.25, 0.125],
        ];
        for s in samples {
            let c: Vec<Complex<f64>> = s.iter().map(|&x| Complex::new(x, 0.0)).collect();
            assert_eq!(is_generic(&c), brute_generic(s), "{s:?}");
        }
    }

    #[test]
    fn classify_examples() {
        let e0 = DimVector::unit(3, Vertex::Cyc(0));
        assert_eq!(classify_root(&e0).unwrap().tag, RootTag::Real);
        let delta = DimVector::new(0, &[1, 1, 1]);
        let c = classify_root(&delta).unwrap();
        assert_eq!(c.tag, RootTag::Imaginary);
        assert!(c.witness.is_empty());
        let b = DimVector::framed(&[1, 1, 1]);
        let c = classify_root(&b).unwrap();
        assert_eq!(c.tag, RootTag::Imaginary);
        assert_eq!(c.witness, WeylWord::new(vec![Vertex::Inf]));
        assert_eq!(c.witness.apply(&b).unwrap(), delta);
        assert!(classify_root(&DimVector::zero(3)).is_err());
        let mixed = DimVector::framed(&[1, -1, 0]);
        assert_eq!(classify_root(&mixed).unwrap().tag, RootTag::NotARoot);
        let neg = DimVector::new(0, &[-1, 0, 0]);
        let c = classify_root(&neg).unwrap();
        assert_eq!(c.tag, RootTag::Real);
        assert!(!c.positive);
        // m = 1: the loop vertex is imaginary, never simple
        let c = classify_root(&DimVector::new(0, &[1])).unwrap();
        assert_eq!(c.tag, RootTag::Imaginary);
    }

    #[test]
    fn sigma_tau_examples() {
        let lam = vec![Complex::new(0.7, 0.1), Complex::new(-0.3, 0.4), Complex::new(1.1, -0.2)];
        let b = DimVector::framed(&[1, 1, 1]);
        let tau = ParamVector::balanced(lam.clone(), b.alpha());
        assert!(in_sigma_tau(&tau, &b).unwrap());
        for n in 1..6 {
            let b = DimVector::calogero_moser(3, n);
            let tau = ParamVector::balanced(lam.clone(), b.alpha());
            assert!(in_sigma_tau(&tau, &b).unwrap());
        }
        let b = DimVector::framed(&[1, -1, 0]);
        let tau = ParamVector::balanced(lam.clone(), b.alpha());
        assert!(!in_sigma_tau(&tau, &b).unwrap());
        let b = DimVector::framed(&[1, 0, 0]);
        let tau = ParamVector::balanced(lam.clone(), b.alpha());
        assert!(in_sigma_tau(&tau, &b).unwrap());
        // (1,(3,0,0)): 2p = 6 - 9 - 0 - 9 < 0
        let b = DimVector::framed(&[3, 0, 0]);
        let tau = ParamVector::balanced(lam.clone(), b.alpha());
        assert!(!in_sigma_tau(&tau, &b).unwrap());
        let bad = ParamVector::new(lam.clone(), Complex::new(5.0, 0.0));
        assert!(in_sigma_tau(&bad, &DimVector::framed(&[1, 1, 1])).is_err());
        let flat = vec![Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        let tau = ParamVector::balanced(flat, &[1, 1]);
        assert!(in_sigma_tau(&tau, &DimVector::framed(&[1, 1])).is_err());
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_to_cm(&DimVector::framed(&[2, 1, 1])).unwrap();
        assert_eq!(r.word, WeylWord::cyclic(&[0]));
        assert_eq!(r.n, 1);
        let r = reduce_to_cm(&DimVector::framed(&[2, 1])).unwrap();
        assert_eq!(r.word, WeylWord::cyclic(&[0]));
        assert_eq!(r.n, 1);
        for n in 0..4 {
            let r = reduce_to_cm(&DimVector::calogero_moser(4, n)).unwrap();
            assert!(r.word.is_empty());
            assert_eq!(r.n, n);
        }
        // the max-entry rule alone stalls here: s_0 fixes (1,(1,1,0))
        let b = DimVector::framed(&[1, 1, 0]);
        let r = reduce_to_cm(&b).unwrap();
        assert_eq!(r.n, 0);
        assert_eq!(r.replay(3).unwrap(), b);
    }

    #[test]
    fn reduce_rejects_non_roots() {
        assert!(reduce_to_cm(&DimVector::framed(&[3, 0, 0])).is_err());
        // with m = 1 every vector is already balanced
        let r = reduce_to_cm(&DimVector::framed(&[2])).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.n, 2);
    }
}
