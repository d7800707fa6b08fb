//! Reflection functors at cyclic vertices and the checks built on them.
//!
//! At vertex `i` the space `V_i` is replaced by the image of the idempotent
//! `1 - μπ` on the sum of the neighbouring spaces, where `μ` collects the
//! arrows leaving `i` and `π` the arrows entering it (scaled by `1/λ_i`).

use num_complex::Complex;

use crate::error::{QuiverError, Result};
use crate::group::{apply_word, GroupWord};
use crate::invariants::{index_box, points_equal, rel_dev, Evaluator, Family, InvariantIndex};
use crate::lattice::{dual_reflection, simple_reflection, Vertex, WeylWord};
use crate::linalg;
use crate::point::{CMat, QuiverPoint, QuiverSetting};
use crate::scalar::{cabs, Real};

/// Relative singular value cut for the image of `1 - μπ`; raised to
/// `1000 ε` for types coarser than `f64`.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ReflectionScaffold<R: Real> {
    pub mu_map: CMat<R>,
    pub pi_map: CMat<R>,
    pub projector: CMat<R>,
    pub basis: CMat<R>,
    /// Sizes of the summands of the ambient space.
    pub parts: Vec<usize>,
}

impl<R: Real> ReflectionScaffold<R> {
    /// `‖πμ - 1‖`.
    pub fn section_defect(&self) -> R {
        let n = self.pi_map.nrows();
        (&self.pi_map * &self.mu_map - CMat::<R>::identity(n, n)).norm()
    }

    /// `‖(μπ)² - μπ‖`.
    pub fn idempotency_defect(&self) -> R {
        let e = &self.mu_map * &self.pi_map;
        (&e * &e - &e).norm()
    }

    fn extract(&self, part: usize) -> CMat<R> {
        let off: usize = self.parts[..part].iter().sum();
        self.basis.rows(off, self.parts[part]).into_owned()
    }
}

fn vstack<R: Real>(blocks: &[CMat<R>]) -> CMat<R> {
    let cols = blocks[0].ncols();
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, 0), (b.nrows(), cols)).copy_from(b);
        at += b.nrows();
    }
    out
}

fn hstack<R: Real>(blocks: &[CMat<R>]) -> CMat<R> {
    let rows = blocks[0].nrows();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.view_mut((0, at), (rows, b.ncols())).copy_from(b);
        at += b.ncols();
    }
    out
}

/// Orthonormal basis of the column space, with the rank fixed in advance.
fn image_basis<R: Real>(proj: &CMat<R>, expected: usize, vertex: usize) -> Result<CMat<R>> {
    let rows = proj.nrows();
    if expected == 0 || rows == 0 {
        let scale = proj.norm();
        if scale > R::lit(1e-6) && expected == 0 {
            return Err(QuiverError::Reflection {
                vertex,
                reason: format!("projector should vanish but has norm {scale}"),
            });
        }
        return Ok(CMat::zeros(rows, 0));
    }
    let sv = linalg::singular_values(proj);
    let cut = sv[0] * R::lit(RANK_TOL).max(R::default_epsilon() * R::lit(1e3));
    let rank = sv.iter().filter(|&&s| s > cut).count();
    if rank != expected {
        return Err(QuiverError::Reflection { vertex, reason: format!("image has rank {rank}, expected {expected}") });
    }
    Ok(linalg::leading_left_vectors(proj, rank))
}

fn new_setting<R: Real>(i: usize, s: &QuiverSetting<R>) -> Result<QuiverSetting<R>> {
    let tau = dual_reflection(Vertex::Cyc(i), &s.tau)?;
    let beta = simple_reflection(Vertex::Cyc(i), &s.beta)?;
    if beta.alpha()[i] < 0 {
        return Err(QuiverError::Reflection {
            vertex: i,
            reason: format!("target dimension vector {beta} has a negative entry"),
        });
    }
    QuiverSetting::from_parts(tau, beta)
}

/// Maps `μ`, `π`, the projector and a basis of its image at vertex `i`.
pub fn scaffold<R: Real>(i: usize, p: &QuiverPoint<R>) -> Result<ReflectionScaffold<R>> {
    let m = p.m();
    if m < 2 {
        return Err(QuiverError::LoopVertex { vertex: i.to_string(), m });
    }
    if i >= m {
        return Err(QuiverError::VertexRange { index: i, m });
    }
    let lam = p.setting.lambda(i);
    if cabs(lam) <= R::lit(1e-12) {
        return Err(QuiverError::Reflection { vertex: i, reason: "λ_i vanishes".into() });
    }
    let inv = Complex::new(R::one(), R::zero()) / lam;
    let prev = (i + m - 1) % m;
    let next = (i + 1) % m;
    let (mu_map, pi_map, parts) = if i == 0 {
        (
            vstack(&[p.w.clone(), p.y[0].clone(), -&p.x[m - 1]]),
            hstack(&[p.v.clone(), p.x[0].clone(), p.y[m - 1].clone()]) * inv,
            vec![1, p.dim(1), p.dim(m - 1)],
        )
    } else {
        (
            vstack(&[p.y[i].clone(), -&p.x[prev]]),
            hstack(&[p.x[i].clone(), p.y[prev].clone()]) * inv,
            vec![p.dim(next), p.dim(prev)],
        )
    };
    let total: usize = parts.iter().sum();
    let projector = CMat::<R>::identity(total, total) - &mu_map * &pi_map;
    let target = new_setting(i, &p.setting)?;
    let basis = image_basis(&projector, target.dim(i), i)?;
    Ok(ReflectionScaffold { mu_map, pi_map, projector, basis, parts })
}

/// Rescales `v ↦ cv`, `w ↦ w/c` so that `‖v‖ = ‖w‖`. This is the scalar
/// part of the gauge group; without it the framing drifts apart under
/// repeated `R_0` and the scaffold at 0 loses digits.
fn balance_framing<R: Real>(p: &QuiverPoint<R>) -> QuiverPoint<R> {
    let (nv, nw) = (p.v.norm(), p.w.norm());
    let mut out = p.clone();
    if nv > R::zero() && nw > R::zero() {
        let c = (nw / nv).sqrt();
        out.v *= Complex::new(c, R::zero());
        out.w /= Complex::new(c, R::zero());
    }
    out
}

/// Reflection functor `R_i`; the result lies in the setting `(r_i τ, s_i β)`.
pub fn reflect_vertex<R: Real>(i: usize, p: &QuiverPoint<R>) -> Result<QuiverPoint<R>> {
    Ok(reflect_with_scaffold(i, p)?.0)
}

pub fn reflect_with_scaffold<R: Real>(i: usize, p: &QuiverPoint<R>) -> Result<(QuiverPoint<R>, ReflectionScaffold<R>)> {
    let balanced;
    let p = if i == 0 {
        balanced = balance_framing(p);
        &balanced
    } else {
        p
    };
    let sc = scaffold(i, p)?;
    let setting = new_setting(i, &p.setting)?;
    let m = p.m();
    let lam = p.setting.lambda(i);
    // arms leaving the new vertex: -λ Q*(1 - μπ) on each summand
    let out_map = sc.basis.adjoint() * &sc.projector * Complex::new(-lam.re, -lam.im);
    let block = |part: usize| {
        let off: usize = sc.parts[..part].iter().sum();
        out_map.columns(off, sc.parts[part]).into_owned()
    };
    let mut out = p.clone();
    out.setting = setting;
    if i == 0 {
        out.v = block(0);
        out.x[0] = block(1);
        out.y[m - 1] = block(2);
        out.w = sc.extract(0);
        out.y[0] = sc.extract(1);
        out.x[m - 1] = -sc.extract(2);
    } else {
        let prev = (i + m - 1) % m;
        out.x[i] = block(0);
        out.y[prev] = block(1);
        out.y[i] = sc.extract(0);
        out.x[prev] = -sc.extract(1);
    }
    out.check_shapes()?;
    Ok((out, sc))
}

/// Composite `R_{i_k} ∘ ⋯ ∘ R_{i_1}`: letters are applied first to last.
pub fn reflect_word<R: Real>(word: &WeylWord, p: &QuiverPoint<R>) -> Result<QuiverPoint<R>> {
    let mut q = p.clone();
    for &v in &word.letters {
        let Vertex::Cyc(i) = v else {
            return Err(QuiverError::Reflection { vertex: usize::MAX, reason: "no functor at ∞".into() });
        };
        q = reflect_vertex(i, &q)?;
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaHReport {
    /// Deviation of the identity over the box, boundary entries excluded.
    pub max_deviation: f64,
    /// Deviation at boundary entries (`i = 0` or `j = 0` where the shifted
    /// index would be negative), under the convention that such terms vanish.
    pub boundary_deviation: f64,
    /// Deviation of the textbook form `H'_l = H_l - λ_l H^{i-1,j-1}_{l-1}`
    /// for `l ≥ 1`, kept for comparison only.
    pub literal_deviation: Option<f64>,
    pub entries: usize,
}

/// Compares `H` before and after `R_l`.
///
/// Only the index whose walk has its valley at `l` changes, namely
/// `k* = (m - l) mod m`. For `l = 0` this gives
/// `H'^{i,j}_0 = H^{i,j}_0 - λ_0 H^{i-1,j-1}_{m-1}`, and for `l ≥ 1`
/// `H'^{i,j}_{m-l} = H^{i,j}_{m-l} - λ_l H^{i,j}_{m-l-1}`; every other entry
/// is unchanged.
pub fn check_lemma_h<R: Real>(l: usize, p: &QuiverPoint<R>, index_box_n: Option<usize>) -> Result<LemmaHReport> {
    let q = reflect_vertex(l, p)?;
    let m = p.m();
    let lam = p.setting.lambda(l);
    let n_total = index_box_n.unwrap_or_else(|| p.setting.total_dim());
    let mut before = Evaluator::new(p);
    let mut after = Evaluator::new(&q);
    let kstar = (m - l) % m;
    let mut main: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    let mut literal: f64 = 0.0;
    let mut entries = 0;
    for idx in index_box(m, n_total) {
        entries += 1;
        let h_new = after.value(Family::H, idx);
        let h_old = before.value(Family::H, idx);
        if idx.k != kstar {
            main = main.max(rel_dev(h_new, h_old));
        } else if l == 0 {
            if idx.i == 0 || idx.j == 0 {
                boundary = boundary.max(rel_dev(h_new, h_old));
            } else {
                let corr = before.value(Family::H, InvariantIndex::new(idx.i - 1, idx.j - 1, m - 1));
                main = main.max(rel_dev(h_new, h_old - lam * corr));
            }
        } else {
            let corr = before.value(Family::H, InvariantIndex::new(idx.i, idx.j, kstar - 1));
            main = main.max(rel_dev(h_new, h_old - lam * corr));
        }
        if l >= 1 && idx.k == l {
            let expected = if idx.i == 0 || idx.j == 0 {
                h_old
            } else {
                h_old - lam * before.value(Family::H, InvariantIndex::new(idx.i - 1, idx.j - 1, l - 1))
            };
            literal = literal.max(rel_dev(h_new, expected));
        }
    }
    Ok(LemmaHReport {
        max_deviation: main,
        boundary_deviation: boundary,
        literal_deviation: (l >= 1).then_some(literal),
        entries,
    })
}

/// `R_s(σ(p))` against `σ(R_s(p))` through invariants.
pub fn equivariance_deviation<R: Real>(s: &WeylWord, sigma: &GroupWord<Complex<R>>, p: &QuiverPoint<R>) -> Result<f64> {
    let left = reflect_word(s, &apply_word(sigma, p)?)?;
    let right = apply_word(sigma, &reflect_word(s, p)?)?;
    crate::invariants::invariant_vector(&left).max_deviation(&crate::invariants::invariant_vector(&right))
}

pub fn check_equivariance<R: Real>(
    s: &WeylWord,
    sigma: &GroupWord<Complex<R>>,
    p: &QuiverPoint<R>,
    rel_tol: f64,
) -> Result<bool> {
    let left = reflect_word(s, &apply_word(sigma, p)?)?;
    let right = apply_word(sigma, &reflect_word(s, p)?)?;
    points_equal(&left, &right, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{canonicalize, GeneratorG};
    use crate::point::base_point_n1;
    use crate::solver::solve_point;
    use num_complex::Complex64;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn solved(lambda: &[Complex64], alpha: &[i64], seed: u64) -> QuiverPoint<f64> {
        let s = QuiverSetting::new(lambda.to_vec(), alpha).unwrap();
        solve_point(&s, seed).unwrap()
    }

    #[test]
    fn reflected_point_satisfies_relations() {
        let lam = vec![Complex64::new(0.7, 0.2), Complex64::new(1.3, -0.4), Complex64::new(-0.45, 0.9)];
        let p = solved(&lam, &[1, 1, 1], 3);
        for i in 0..3 {
            let (q, sc) = reflect_with_scaffold(i, &p).unwrap();
            assert!(sc.section_defect() < 1e-9, "πμ at {i}");
            let scale = (&sc.mu_map * &sc.pi_map).norm().powi(2).max(1.0);
            assert!(sc.idempotency_defect() < 1e-9 * scale);
            assert!(q.moment_residual() < 1e-8, "vertex {i}: {}", q.moment_residual());
        }
    }

    #[test]
    fn reflection_changes_dimension() {
        let lam = c(&[0.8, 1.1, 0.6]);
        let p = base_point_n1(&QuiverSetting::new(lam, &[1, 1, 1]).unwrap()).unwrap();
        let q = reflect_vertex(1, &p).unwrap();
        // s_1 on (1,(1,1,1)) keeps α_1 = 1 + 1 - 1
        assert_eq!(q.setting.alpha(), &[1, 1, 1]);
        assert!(q.moment_residual() < 1e-9);
        let q0 = reflect_vertex(0, &p).unwrap();
        assert_eq!(q0.setting.alpha(), &[2, 1, 1]);
        assert!(q0.moment_residual() < 1e-9);
    }

    #[test]
    fn m1_has_no_functor() {
        let p = base_point_n1(&QuiverSetting::new(c(&[1.0]), &[1]).unwrap()).unwrap();
        assert!(reflect_vertex(0, &p).is_err());
    }

    #[test]
    fn h_transforms_by_valley_rule() {
        let lam = vec![Complex64::new(0.9, 0.1), Complex64::new(0.4, -0.7), Complex64::new(1.2, 0.3)];
        let p = solved(&lam, &[2, 2, 2], 11);
        for l in 0..3 {
            let r = check_lemma_h(l, &p, None).unwrap();
            assert!(r.max_deviation < 1e-8, "l={l}: {r:?}");
        }
    }

    #[test]
    fn textbook_form_and_boundary_differ() {
        let lam = vec![Complex64::new(0.9, 0.1), Complex64::new(0.4, -0.7), Complex64::new(1.2, 0.3)];
        let p = solved(&lam, &[2, 2, 2], 11);
        let r0 = check_lemma_h(0, &p, None).unwrap();
        assert!(r0.boundary_deviation > 1e-3, "{r0:?}");
        let r1 = check_lemma_h(1, &p, None).unwrap();
        assert!(r1.literal_deviation.unwrap() > 1e-3, "{r1:?}");
        // w'v' = wv - λ_0
        let q = reflect_vertex(0, &p).unwrap();
        let shift = (&q.w * &q.v)[(0, 0)] - (&p.w * &p.v)[(0, 0)];
        assert!((shift + lam[0]).norm() < 1e-9);
    }

    #[test]
    fn equivariance_on_solved_point() {
        let lam = vec![Complex64::new(0.9, 0.1), Complex64::new(0.4, -0.7)];
        let p = solved(&lam, &[2, 2], 5);
        let sigma = canonicalize(&[
            GeneratorG::psi(1, Complex64::new(0.3, 0.1)),
            GeneratorG::phi(1, Complex64::new(-0.2, 0.4)),
        ])
        .unwrap();
        for i in 0..2 {
            let s = WeylWord::cyclic(&[i]);
            let d = equivariance_deviation(&s, &sigma, &p).unwrap();
            assert!(d < 1e-8, "vertex {i}: {d}");
        }
    }
}
