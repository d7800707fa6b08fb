//! Seeded single-trial checks shared by the test suites and the CLI.
//!
//! Each function builds everything it needs from `seed`, so trials can run
//! in any order or concurrently.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{apply_generator, apply_sequence, canonicalize, GeneratorG};
use crate::invariants::{points_equal, rel_dev};
use crate::lattice::{dual_reflection, is_generic, simple_reflection, Vertex, WeylWord};
use crate::point::{QuiverPoint, QuiverSetting};
use crate::reflection::{check_lemma_h, equivariance_deviation, reflect_with_scaffold};
use crate::rewrite::engine::path_values;
use crate::rewrite::{random_closed_path, PathWord, Poly, RewriteKernel};
use crate::solver::solve_point;
use crate::C64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generic `λ` with every entry of modulus at least `0.2`, so that all
/// reflections are defined.
pub fn random_lambda<G: Rng + ?Sized>(rng: &mut G, m: usize) -> Vec<C64> {
    loop {
        let lam: Vec<C64> = (0..m)
            .map(|_| {
                let r = rng.random_range(0.4..1.5);
                let t = rng.random_range(0.0..std::f64::consts::TAU);
                Complex::from_polar(r, t)
            })
            .collect();
        let sum: C64 = lam.iter().sum();
        if is_generic(&lam) && sum.norm() > 0.2 {
            return lam;
        }
    }
}

pub fn random_coeff<G: Rng + ?Sized>(rng: &mut G, max_abs: f64) -> C64 {
    Complex::from_polar(rng.random_range(0.05..max_abs), rng.random_range(0.0..std::f64::consts::TAU))
}

/// Raw generator sequence of length `1..=max_len` with `k ≤ max_k`.
pub fn random_generators<G: Rng + ?Sized>(
    rng: &mut G,
    max_len: usize,
    max_k: usize,
    max_abs: f64,
) -> Vec<GeneratorG<C64>> {
    let len = rng.random_range(1..=max_len);
    (0..len)
        .map(|_| {
            let k = rng.random_range(1..=max_k);
            let c = random_coeff(rng, max_abs);
            if rng.random_bool(0.5) {
                GeneratorG::psi(k, c)
            } else {
                GeneratorG::phi(k, c)
            }
        })
        .collect()
}

/// Certified point of the Calogero–Moser setting `(1, (n, …, n))`.
pub fn cm_point<G: Rng + ?Sized>(rng: &mut G, m: usize, n: i64, seed: u64) -> Result<QuiverPoint<f64>> {
    let setting = QuiverSetting::new(random_lambda(rng, m), &vec![n; m])?;
    solve_point(&setting, seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub deviation: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl TrialOutcome {
    pub fn within(deviation: f64, tol: f64) -> Self {
        TrialOutcome { deviation, pass: deviation <= tol, note: None }
    }

    pub fn failed(note: String) -> Self {
        TrialOutcome { deviation: f64::INFINITY, pass: false, note: Some(note) }
    }

    fn from_result(r: Result<TrialOutcome>) -> Self {
        r.unwrap_or_else(|e| Self::failed(e.to_string()))
    }
}

/// `R_s ∘ σ` against `σ ∘ R_s` for every vertex and every generator kind
/// with `k ≤ max_k`.
pub fn equivariance_trial(m: usize, n: i64, seed: u64, max_k: usize, tol: f64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let mut worst: f64 = 0.0;
        for i in 0..m {
            for k in 1..=max_k {
                for psi in [true, false] {
                    let c = random_coeff(&mut r, 1.0);
                    let g = if psi { GeneratorG::psi(k, c) } else { GeneratorG::phi(k, c) };
                    let sigma = canonicalize(&[g])?;
                    worst = worst.max(equivariance_deviation(&WeylWord::cyclic(&[i]), &sigma, &p)?);
                }
            }
        }
        Ok(TrialOutcome::within(worst, tol))
    })())
}

/// Composite words: `|s| ≤ 3` reflections, `|σ| ≤ 3` generators.
pub fn composite_equivariance_trial(m: usize, n: i64, seed: u64, tol: f64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let len = r.random_range(1..=3);
        let s: Vec<usize> = (0..len).map(|_| r.random_range(0..m)).collect();
        let sigma = canonicalize(&random_generators(&mut r, 3, 2, 1.0))?;
        let dev = equivariance_deviation(&WeylWord::cyclic(&s), &sigma, &p)?;
        Ok(TrialOutcome::within(dev, tol))
    })())
}

/// The transformation rule for `H` under every `R_l`; boundary entries are
/// reported in the note.
pub fn lemma_h_trial(m: usize, n: i64, seed: u64, tol: f64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let mut worst: f64 = 0.0;
        let mut boundary: f64 = 0.0;
        for l in 0..m {
            let rep = check_lemma_h(l, &p, None)?;
            worst = worst.max(rep.max_deviation);
            boundary = boundary.max(rep.boundary_deviation);
        }
        let mut out = TrialOutcome::within(worst, tol);
        out.note = Some(format!("boundary deviation {boundary:.3e}"));
        Ok(out)
    })())
}

/// Random closed paths: normal forms of `w·P·v` and `Tr P` against matrices.
pub fn rewrite_trial(m: usize, n: i64, seed: u64, paths: usize, tol: f64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let mut kernel = RewriteKernel::new(m);
        let mut worst: f64 = 0.0;
        for _ in 0..paths {
            let path = random_closed_path(&mut r, m, 10);
            let (wv, tr) = path_values(&path, &p);
            let e_wv = kernel.normalize_wv(&path)?.eval(&p)?;
            let e_tr = kernel.normalize_trace(&path)?.eval(&p)?;
            worst = worst.max((e_wv - wv).norm() / (1.0 + wv.norm()));
            worst = worst.max((e_tr - tr).norm() / (1.0 + tr.norm()));
        }
        Ok(TrialOutcome::within(worst, tol))
    })())
}

/// `w A^i v = (Σλ) Tr(A^i)` and `w B^j v = (Σλ) Tr(B^j)` for `i, j ≤ N/m`,
/// both numerically and as exact normal forms.
pub fn trantrwv_trial(m: usize, n: i64, seed: u64, tol: f64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let sum = p.setting.sum_lambda();
        let top = p.setting.total_dim() / m;
        let mut kernel = RewriteKernel::new(m);
        let s = Poly::sum_lambda(m);
        let mut worst: f64 = 0.0;
        for e in 1..=top {
            for path in [PathWord::normal(m, e, 0, 0), PathWord::normal(m, 0, e, 0)] {
                let (wv, tr) = path_values(&path, &p);
                worst = worst.max(rel_dev(wv, sum * tr));
                let normal = kernel.normalize_trace(&path)?;
                let expected = kernel.normalize_wv(&path)?.div(&s)?;
                if normal != expected {
                    return Ok(TrialOutcome::failed(format!("normal form of Tr({path}) is {normal}")));
                }
            }
        }
        Ok(TrialOutcome::within(worst, tol))
    })())
}

/// Reflection bookkeeping: target setting, exact parameters, idempotency of
/// the scaffold (relative to `‖μπ‖²`) and the relations after reflecting.
pub fn bookkeeping_trial(m: usize, n: i64, seed: u64, tol: f64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let i = r.random_range(0..m);
        let (q, sc) = reflect_with_scaffold(i, &p)?;
        let beta = simple_reflection(Vertex::Cyc(i), &p.setting.beta)?;
        let tau = dual_reflection(Vertex::Cyc(i), &p.setting.tau)?;
        if q.setting.beta != beta || q.setting.tau != tau {
            return Ok(TrialOutcome::failed(format!("R_{i} landed in {} instead of {beta}", q.setting.beta)));
        }
        for t in 0..m {
            let (a, b) = (q.dim(t), q.dim(t + 1));
            if q.x[t].shape() != (a, b) || q.y[t].shape() != (b, a) {
                return Ok(TrialOutcome::failed(format!("arm {t} has the wrong shape after R_{i}")));
            }
        }
        let scale = (&sc.mu_map * &sc.pi_map).norm().powi(2).max(1.0);
        let idem = sc.idempotency_defect() / scale;
        let mut out = TrialOutcome::within(idem, tol);
        let res = q.moment_residual();
        if res > 1e-8 {
            out.pass = false;
            out.note = Some(format!("residual {res:.3e} after R_{i}"));
        }
        Ok(out)
    })())
}

/// Largest arm norm.
pub fn arm_scale(p: &QuiverPoint<f64>) -> f64 {
    p.x.iter().chain(p.y.iter()).map(|a| a.norm()).fold(0.0, f64::max)
}

/// Above this arm norm the inverse round trip is not checked: the action
/// has degree `km − 1` and cancellation eats all digits.
pub const ROUND_TRIP_SCALE: f64 = 1e3;

/// Random group word keeps the point on the variety (residual relative to
/// `max(1, ‖q‖²)`); the inverse returns it when the word stays well
/// conditioned. The note says `"ill-conditioned"` when the round trip is
/// skipped.
pub fn group_action_trial(m: usize, n: i64, seed: u64) -> TrialOutcome {
    TrialOutcome::from_result((|| {
        let mut r = rng(seed);
        let p = cm_point(&mut r, m, n, seed)?;
        let gens = random_generators(&mut r, 6, 2, 1.0);
        let mut q = p.clone();
        let mut peak = arm_scale(&p);
        for g in &gens {
            q = apply_generator(g, &q)?;
            peak = peak.max(arm_scale(&q));
        }
        let res = q.moment_residual() / arm_scale(&q).powi(2).max(1.0);
        let mut out = TrialOutcome::within(res, 1e-6);
        if peak > ROUND_TRIP_SCALE {
            out.note = Some(format!("ill-conditioned (arm norm {peak:.1e})"));
            return Ok(out);
        }
        let inv: Vec<_> = gens.iter().rev().map(GeneratorG::inverse).collect();
        let back = apply_sequence(&inv, &q)?;
        if !points_equal(&back, &p, 1e-10)? {
            out.pass = false;
            out.note = Some("inverse word does not return the point".into());
        }
        Ok(out)
    })())
}
