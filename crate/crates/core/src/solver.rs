//! Numerical construction of points and the tangent dimension count.
//!
//! Unknowns are the entries of `(X, Y, v, w)`; the residual stacks the
//! relation defects. The relations are quadratic and holomorphic, so the
//! Jacobian is complex linear and is assembled from exact directional
//! derivatives.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QuiverError, Result};
use crate::lattice::in_sigma_tau;
use crate::linalg;
use crate::point::{random_matrix, CMat, QuiverPoint, QuiverSetting};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-10, max_iter: 200, restarts: 5 }
    }
}

impl SolverConfig {
    /// Default settings with the tolerance relaxed to what `R` can reach.
    pub fn for_type<R: Real>() -> Self {
        let eps = R::default_epsilon().to_f64_lossy();
        SolverConfig { tol: (eps * 1e4).max(1e-10), ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Solved<R: Real> {
    pub point: QuiverPoint<R>,
    pub restarts_used: usize,
    pub iterations: usize,
    pub residual: R,
}

fn unknown_count<R: Real>(s: &QuiverSetting<R>) -> usize {
    let m = s.m();
    2 * (0..m).map(|i| s.dim(i) * s.dim(i + 1)).sum::<usize>() + 2 * s.dim(0)
}

fn pack<R: Real>(p: &QuiverPoint<R>) -> DVector<Complex<R>> {
    let mut out = Vec::with_capacity(unknown_count(&p.setting));
    for mat in p.x.iter().chain(&p.y).chain([&p.v, &p.w]) {
        out.extend(mat.iter().copied());
    }
    DVector::from_vec(out)
}

fn unpack<R: Real>(s: &QuiverSetting<R>, z: &DVector<Complex<R>>) -> QuiverPoint<R> {
    let m = s.m();
    let mut at = 0;
    let mut take = |r: usize, c: usize| {
        let mat = CMat::from_column_slice(r, c, &z.as_slice()[at..at + r * c]);
        at += r * c;
        mat
    };
    let x = (0..m).map(|i| take(s.dim(i), s.dim(i + 1))).collect();
    let y = (0..m).map(|i| take(s.dim(i + 1), s.dim(i))).collect();
    let v = take(s.dim(0), 1);
    let w = take(1, s.dim(0));
    QuiverPoint { setting: s.clone(), x, y, v, w }
}

fn residual_vector<R: Real>(p: &QuiverPoint<R>) -> DVector<Complex<R>> {
    let (blocks, inf) = p.relation_defects();
    let mut out: Vec<Complex<R>> = blocks.iter().flat_map(|b| b.iter().copied()).collect();
    out.push(inf);
    DVector::from_vec(out)
}

fn scalar_of<R: Real>(mat: &CMat<R>) -> Complex<R> {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        Complex::new(R::zero(), R::zero())
    } else {
        mat[(0, 0)]
    }
}

/// Derivative of the residual at `p` in the direction `d`.
fn directional<R: Real>(p: &QuiverPoint<R>, d: &QuiverPoint<R>) -> DVector<Complex<R>> {
    let m = p.m();
    let mut out = Vec::new();
    for i in 0..m {
        let prev = (i + m - 1) % m;
        let mut b = &d.x[i] * &p.y[i] + &p.x[i] * &d.y[i] - &d.y[prev] * &p.x[prev] - &p.y[prev] * &d.x[prev];
        if i == 0 {
            b += &d.v * &p.w + &p.v * &d.w;
        }
        out.extend(b.iter().copied());
    }
    out.push(-(scalar_of(&(&d.w * &p.v)) + scalar_of(&(&p.w * &d.v))));
    DVector::from_vec(out)
}

fn jacobian<R: Real>(p: &QuiverPoint<R>) -> DMatrix<Complex<R>> {
    let n = unknown_count(&p.setting);
    let rows = residual_vector(p).len();
    let mut jac = DMatrix::zeros(rows, n);
    let mut e = DVector::zeros(n);
    for u in 0..n {
        e[u] = Complex::new(R::one(), R::zero());
        let d = unpack(&p.setting, &e);
        jac.set_column(u, &directional(p, &d));
        e[u] = Complex::new(R::zero(), R::zero());
    }
    jac
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numeric_rank<R: Real>(mat: &DMatrix<Complex<R>>, rel_tol: f64) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let sv = linalg::singular_values(mat);
    let max = sv[0];
    if max <= R::zero() {
        return 0;
    }
    let cut = max * R::lit(rel_tol);
    sv.iter().filter(|&&s| s > cut).count()
}

fn random_point<R: Real>(s: &QuiverSetting<R>, rng: &mut ChaCha8Rng) -> QuiverPoint<R> {
    let m = s.m();
    let x = (0..m).map(|i| random_matrix(rng, s.dim(i), s.dim(i + 1))).collect();
    let y = (0..m).map(|i| random_matrix(rng, s.dim(i + 1), s.dim(i))).collect();
    let v = random_matrix(rng, s.dim(0), 1);
    let w = random_matrix(rng, 1, s.dim(0));
    QuiverPoint { setting: s.clone(), x, y, v, w }
}

/// Gauss–Newton with minimum-norm steps from seeded Gaussian starts.
pub fn solve_point_with<R: Real>(setting: &QuiverSetting<R>, seed: u64, cfg: &SolverConfig) -> Result<Solved<R>> {
    if !in_sigma_tau(&setting.tau, &setting.beta)? {
        return Err(QuiverError::NotPositiveRoot(setting.beta.to_string()));
    }
    let tol = R::lit(cfg.tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut iterations = 0;
    for attempt in 0..=cfg.restarts {
        let mut p = random_point(setting, &mut rng);
        let mut z = pack(&p);
        let mut f = residual_vector(&p);
        let mut fnorm = f.norm();
        for _ in 0..cfg.max_iter {
            let res = p.moment_residual();
            best = best.min(res.to_f64_lossy());
            if res <= tol {
                let point = polish(p, 3);
                let residual = point.moment_residual();
                return Ok(Solved { point, restarts_used: attempt, iterations, residual });
            }
            iterations += 1;
            let jac = jacobian(&p);
            let Some(step) = linalg::lstsq(&jac, &(-&f), 1e-12) else { break };
            let mut t = R::one();
            let mut accepted = false;
            while t > R::lit(1e-12) {
                let z_new = &z + &step * Complex::new(t, R::zero());
                let p_new = unpack(setting, &z_new);
                let f_new = residual_vector(&p_new);
                let n_new = f_new.norm();
                if n_new < fnorm {
                    z = z_new;
                    p = p_new;
                    f = f_new;
                    fnorm = n_new;
                    accepted = true;
                    break;
                }
                t *= R::lit(0.5);
            }
            if !accepted {
                break;
            }
        }
        let res = p.moment_residual();
        best = best.min(res.to_f64_lossy());
        if res <= tol {
            return Ok(Solved { point: p, restarts_used: attempt, iterations, residual: res });
        }
    }
    Err(QuiverError::NoConvergence { best })
}

/// Certified point of `setting`, deterministic in `seed`.
/// Up to `steps` full Gauss–Newton steps, each kept only if it lowers the
/// residual.
pub fn polish<R: Real>(mut p: QuiverPoint<R>, steps: usize) -> QuiverPoint<R> {
    for _ in 0..steps {
        let f = residual_vector(&p);
        let Some(step) = linalg::lstsq(&jacobian(&p), &(-&f), 1e-12) else { break };
        let next = unpack(&p.setting, &(pack(&p) + step));
        if next.moment_residual() >= p.moment_residual() {
            break;
        }
        p = next;
    }
    p
}

pub fn solve_point<R: Real>(setting: &QuiverSetting<R>, seed: u64) -> Result<QuiverPoint<R>> {
    solve_point_with(setting, seed, &SolverConfig::for_type::<R>()).map(|s| s.point)
}

/// Image of the infinitesimal gauge action `ξ ↦ (ξX - Xξ, ξY - Yξ, ξ_0 v, -w ξ_0)`.
fn gauge_tangent<R: Real>(p: &QuiverPoint<R>) -> DMatrix<Complex<R>> {
    let s = &p.setting;
    let m = s.m();
    let n = unknown_count(s);
    let cols: usize = (0..m).map(|i| s.dim(i) * s.dim(i)).sum();
    let mut out = DMatrix::zeros(n, cols);
    let mut col = 0;
    for vtx in 0..m {
        let d = s.dim(vtx);
        for c in 0..d {
            for r in 0..d {
                let xi: Vec<CMat<R>> = (0..m)
                    .map(|i| {
                        let mut e = CMat::zeros(s.dim(i), s.dim(i));
                        if i == vtx {
                            e[(r, c)] = Complex::new(R::one(), R::zero());
                        }
                        e
                    })
                    .collect();
                let x = (0..m).map(|i| &xi[i] * &p.x[i] - &p.x[i] * &xi[(i + 1) % m]).collect();
                let y = (0..m).map(|i| &xi[(i + 1) % m] * &p.y[i] - &p.y[i] * &xi[i]).collect();
                let dir = QuiverPoint { setting: s.clone(), x, y, v: &xi[0] * &p.v, w: -(&p.w * &xi[0]) };
                out.set_column(col, &pack(&dir));
                col += 1;
            }
        }
    }
    out
}

/// Dimension of the tangent space of the quotient at `p`: unknowns minus
/// the rank of the linearized relations minus the gauge orbit dimension.
pub fn tangent_dimension<R: Real>(p: &QuiverPoint<R>, rank_tol: f64) -> usize {
    let n = unknown_count(&p.setting);
    let rj = numeric_rank(&jacobian(p), rank_tol);
    let rg = numeric_rank(&gauge_tangent(p), rank_tol);
    n.saturating_sub(rj + rg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{p_of, DimVector};
    use crate::point::base_point_n1;

    fn lam(m: usize) -> Vec<Complex<f64>> {
        (0..m).map(|i| Complex::new(0.41 + 0.23 * i as f64, -0.17 + 0.31 * i as f64)).collect()
    }

    #[test]
    fn pack_roundtrip() {
        let s = QuiverSetting::new(lam(3), &[2, 1, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_point(&s, &mut rng);
        assert_eq!(unpack(&s, &pack(&p)), p);
        assert_eq!(pack(&p).len(), unknown_count(&s));
    }

    #[test]
    fn jacobian_matches_finite_difference() {
        let s = QuiverSetting::new(lam(2), &[2, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = random_point(&s, &mut rng);
        let d = random_point(&s, &mut rng);
        let h = 1e-6;
        let zp = pack(&p) + pack(&d) * Complex::new(h, 0.0);
        let zm = pack(&p) - pack(&d) * Complex::new(h, 0.0);
        let fd = (residual_vector(&unpack(&s, &zp)) - residual_vector(&unpack(&s, &zm))) / Complex::new(2.0 * h, 0.0);
        let exact = jacobian(&p) * pack(&d);
        assert!((fd - exact).norm() < 1e-6);
    }

    #[test]
    fn solves_small_settings() {
        for (m, alpha) in [(2, vec![1, 1]), (3, vec![2, 2, 2]), (1, vec![2])] {
            let s = QuiverSetting::new(lam(m), &alpha).unwrap();
            let p = solve_point(&s, 0).unwrap();
            assert!(p.moment_residual() <= 1e-10);
            assert_eq!(p.x[0].shape(), (alpha[0] as usize, alpha[1 % m] as usize));
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let s = QuiverSetting::new(lam(2), &[2, 2]).unwrap();
        let a = solve_point(&s, 17).unwrap();
        let b = solve_point(&s, 17).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn solver_rejects_non_roots() {
        let s = QuiverSetting::new(lam(3), &[3, 0, 0]).unwrap();
        assert!(matches!(solve_point(&s, 0), Err(QuiverError::NotPositiveRoot(_))));
        let s = QuiverSetting::new(lam(3), &[1, 0, 0]).unwrap();
        assert!(solve_point(&s, 0).is_ok());
    }

    #[test]
    fn tangent_dimension_matches_p() {
        for (m, alpha) in [(2, vec![1, 1]), (3, vec![2, 1, 1]), (1, vec![2]), (3, vec![1, 0, 0])] {
            let s = QuiverSetting::new(lam(m), &alpha).unwrap();
            let p = solve_point(&s, 3).unwrap();
            let expect = 2 * p_of(&DimVector::framed(&alpha)) as usize;
            assert_eq!(tangent_dimension(&p, 1e-7), expect, "alpha {alpha:?}");
        }
        let s = QuiverSetting::new(lam(4), &[1, 1, 1, 1]).unwrap();
        assert_eq!(tangent_dimension(&base_point_n1(&s).unwrap(), 1e-7), 2);
    }
}
