//! Matrix points of `μ_β^{-1}(τ)` and the gauge action on them.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{QuiverError, Result};
use crate::lattice::{is_generic, DimVector, ParamVector};
use crate::scalar::{cabs, Real};

pub type CMat<R> = DMatrix<Complex<R>>;

/// Condition number above which a gauge element counts as singular.
pub const GAUGE_COND_MAX: f64 = 1e12;

/// Fixed data `(m, λ, τ, β)` of a quiver variety.
#[derive(Debug, Clone, PartialEq)]
pub struct QuiverSetting<R: Real> {
    pub tau: ParamVector<Complex<R>>,
    pub beta: DimVector,
}

impl<R: Real> QuiverSetting<R> {
    /// Setting for `β = (1, α)` with `λ_∞ = -λ·α`; requires generic `λ`.
    pub fn new(lambda: Vec<Complex<R>>, alpha: &[i64]) -> Result<Self> {
        if lambda.len() != alpha.len() || alpha.is_empty() {
            return Err(QuiverError::Dimension(format!("{} parameters for {} vertices", lambda.len(), alpha.len())));
        }
        if alpha.iter().any(|&a| a < 0) {
            return Err(QuiverError::Dimension(format!("negative entry in {alpha:?}")));
        }
        if !is_generic(&lambda) {
            return Err(QuiverError::NotGeneric(format!("{lambda:?}")));
        }
        Ok(QuiverSetting { tau: ParamVector::balanced(lambda, alpha), beta: DimVector::framed(alpha) })
    }

    /// Setting from an explicit `τ`; only shape and balance are checked.
    pub fn from_parts(tau: ParamVector<Complex<R>>, beta: DimVector) -> Result<Self> {
        if tau.m() != beta.m() {
            return Err(QuiverError::Dimension("parameter and dimension vector disagree on m".into()));
        }
        if beta.inf() != 1 || beta.alpha().iter().any(|&a| a < 0) {
            return Err(QuiverError::Dimension(format!("{beta} is not of the form (1, α)")));
        }
        let pairing = tau.pair(&beta)?;
        if !crate::lattice::balanced_within_rounding(&tau, &beta, pairing) {
            return Err(QuiverError::Unbalanced(format!("{pairing}")));
        }
        Ok(QuiverSetting { tau, beta })
    }

    pub fn m(&self) -> usize {
        self.beta.m()
    }

    /// `α_i` with the index taken mod `m`.
    pub fn dim(&self, i: usize) -> usize {
        self.beta.alpha()[i % self.m()] as usize
    }

    pub fn alpha(&self) -> &[i64] {
        self.beta.alpha()
    }

    pub fn lambda(&self, i: usize) -> Complex<R> {
        self.tau.lambda[i % self.m()]
    }

    pub fn lambda_inf(&self) -> Complex<R> {
        self.tau.lambda_inf
    }

    pub fn sum_lambda(&self) -> Complex<R> {
        self.tau.lambda.iter().fold(Complex::new(R::zero(), R::zero()), |a, &b| a + b)
    }

    /// `N = Σ α_i`.
    pub fn total_dim(&self) -> usize {
        self.alpha().iter().sum::<i64>() as usize
    }
}

/// Matrices `(X_i, Y_i, v, w)` with `X_i: V_{i+1} → V_i`, `Y_i: V_i → V_{i+1}`,
/// `v: ℂ → V_0` and `w: V_0 → ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuiverPoint<R: Real> {
    pub setting: QuiverSetting<R>,
    pub x: Vec<CMat<R>>,
    pub y: Vec<CMat<R>>,
    pub v: CMat<R>,
    pub w: CMat<R>,
}

fn shape_error(what: &str, got: (usize, usize), want: (usize, usize)) -> QuiverError {
    QuiverError::Dimension(format!("{what} has shape {got:?}, expected {want:?}"))
}

impl<R: Real> QuiverPoint<R> {
    pub fn new(setting: QuiverSetting<R>, x: Vec<CMat<R>>, y: Vec<CMat<R>>, v: CMat<R>, w: CMat<R>) -> Result<Self> {
        let p = QuiverPoint { setting, x, y, v, w };
        p.check_shapes()?;
        Ok(p)
    }

    pub fn m(&self) -> usize {
        self.setting.m()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.setting.dim(i)
    }

    pub fn check_shapes(&self) -> Result<()> {
        let m = self.m();
        if self.x.len() != m || self.y.len() != m {
            return Err(QuiverError::Dimension(format!(
                "expected {m} X and Y matrices, got {} and {}",
                self.x.len(),
                self.y.len()
            )));
        }
        for i in 0..m {
            let want = (self.dim(i), self.dim(i + 1));
            if self.x[i].shape() != want {
                return Err(shape_error(&format!("X_{i}"), self.x[i].shape(), want));
            }
            let want = (self.dim(i + 1), self.dim(i));
            if self.y[i].shape() != want {
                return Err(shape_error(&format!("Y_{i}"), self.y[i].shape(), want));
            }
        }
        let a0 = self.dim(0);
        if self.v.shape() != (a0, 1) {
            return Err(shape_error("v", self.v.shape(), (a0, 1)));
        }
        if self.w.shape() != (1, a0) {
            return Err(shape_error("w", self.w.shape(), (1, a0)));
        }
        Ok(())
    }

    /// `Y_{s+len-1} ⋯ Y_{s+1} Y_s : V_s → V_{s+len}`.
    pub fn y_path(&self, start: usize, len: usize) -> CMat<R> {
        let m = self.m();
        let mut acc = CMat::<R>::identity(self.dim(start), self.dim(start));
        for t in 0..len {
            acc = &self.y[(start + t) % m] * acc;
        }
        acc
    }

    /// `X_{s-len} ⋯ X_{s-2} X_{s-1} : V_s → V_{s-len}`.
    pub fn x_path(&self, start: usize, len: usize) -> CMat<R> {
        let m = self.m();
        let mut acc = CMat::<R>::identity(self.dim(start), self.dim(start));
        let mut at = start % m;
        for _ in 0..len {
            at = (at + m - 1) % m;
            acc = &self.x[at] * acc;
        }
        acc
    }

    /// Defect matrices of the relations at each cyclic vertex and the
    /// scalar defect at `∞`.
    pub fn relation_defects(&self) -> (Vec<CMat<R>>, Complex<R>) {
        let m = self.m();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let prev = (i + m - 1) % m;
            let mut d = &self.x[i] * &self.y[i] - &self.y[prev] * &self.x[prev];
            if i == 0 {
                d += &self.v * &self.w;
            }
            for r in 0..d.nrows() {
                d[(r, r)] -= self.setting.lambda(i);
            }
            out.push(d);
        }
        let wv = if self.dim(0) == 0 { Complex::new(R::zero(), R::zero()) } else { (&self.w * &self.v)[(0, 0)] };
        (out, -wv - self.setting.lambda_inf())
    }

    /// Largest Frobenius norm among the relation defects.
    pub fn moment_residual(&self) -> R {
        let (blocks, inf) = self.relation_defects();
        blocks.iter().map(|b| b.norm()).fold(cabs(inf), |a, b| if b > a { b } else { a })
    }

    /// All-zero matrices of the right shapes.
    pub fn zeros(setting: QuiverSetting<R>) -> Self {
        let m = setting.m();
        let x = (0..m).map(|i| CMat::zeros(setting.dim(i), setting.dim(i + 1))).collect();
        let y = (0..m).map(|i| CMat::zeros(setting.dim(i + 1), setting.dim(i))).collect();
        let a0 = setting.dim(0);
        QuiverPoint { x, y, v: CMat::zeros(a0, 1), w: CMat::zeros(1, a0), setting }
    }
}

/// Explicit point of `(1, (1, …, 1))`: `Y_i = 1`, `X_0 = 0`,
/// `X_i = λ_1 + … + λ_i`, `v = 1`, `w = Σλ`. For `m = 1`, `Y = 0`.
pub fn base_point_n1<R: Real>(setting: &QuiverSetting<R>) -> Result<QuiverPoint<R>> {
    if setting.alpha().iter().any(|&a| a != 1) {
        return Err(QuiverError::Dimension(format!("base point needs α = (1,…,1), got {}", setting.beta)));
    }
    let m = setting.m();
    let one = Complex::new(R::one(), R::zero());
    let zero = Complex::new(R::zero(), R::zero());
    let scalar = |z: Complex<R>| CMat::<R>::from_element(1, 1, z);
    let mut partial = zero;
    let mut x = Vec::with_capacity(m);
    for i in 0..m {
        if i > 0 {
            partial += setting.lambda(i);
        }
        x.push(scalar(partial));
    }
    let y_val = if m == 1 { zero } else { one };
    let y = (0..m).map(|_| scalar(y_val)).collect();
    QuiverPoint::new(setting.clone(), x, y, scalar(one), scalar(setting.sum_lambda()))
}

/// Ratio of extreme singular values; infinite for singular input.
pub fn condition_number<R: Real>(g: &CMat<R>) -> f64 {
    if g.nrows() == 0 {
        return 1.0;
    }
    let sv = crate::linalg::singular_values(g);
    let max = sv[0].to_f64_lossy();
    let min = sv[sv.len() - 1].to_f64_lossy();
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `(g_i X_i g_{i+1}^{-1}, g_{i+1} Y_i g_i^{-1}, g_0 v, w g_0^{-1})`.
pub fn gauge_apply<R: Real>(g: &[CMat<R>], p: &QuiverPoint<R>) -> Result<QuiverPoint<R>> {
    let m = p.m();
    if g.len() != m {
        return Err(QuiverError::Dimension(format!("{} gauge matrices for m = {m}", g.len())));
    }
    let mut inv = Vec::with_capacity(m);
    for (i, gi) in g.iter().enumerate() {
        let d = p.dim(i);
        if gi.shape() != (d, d) {
            return Err(shape_error(&format!("g_{i}"), gi.shape(), (d, d)));
        }
        let cond = condition_number(gi);
        if !(cond <= GAUGE_COND_MAX) {
            return Err(QuiverError::SingularGauge { index: i, cond });
        }
        let gi_inv = gi.clone().try_inverse().ok_or(QuiverError::SingularGauge { index: i, cond })?;
        inv.push(gi_inv);
    }
    let x = (0..m).map(|i| &g[i] * &p.x[i] * &inv[(i + 1) % m]).collect();
    let y = (0..m).map(|i| &g[(i + 1) % m] * &p.y[i] * &inv[i]).collect();
    QuiverPoint::new(p.setting.clone(), x, y, &g[0] * &p.v, &p.w * &inv[0])
}

/// Complex matrix with independent standard normal real and imaginary parts.
pub fn random_matrix<R: Real, G: Rng + ?Sized>(rng: &mut G, rows: usize, cols: usize) -> CMat<R> {
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(R::lit(re), R::lit(im))
    })
}

/// Random gauge element, shifted towards the identity to stay well conditioned.
pub fn random_gauge<R: Real, G: Rng + ?Sized>(rng: &mut G, setting: &QuiverSetting<R>) -> Vec<CMat<R>> {
    (0..setting.m())
        .map(|i| {
            let d = setting.dim(i);
            let mut g = random_matrix::<R, G>(rng, d, d);
            for r in 0..d {
                g[(r, r)] += Complex::new(R::lit(2.0), R::zero());
            }
            g
        })
        .collect()
}

/// Point written as one `N × N` system, `N = Σα_i`.
///
/// Block `(i, i+1)` of `x_big` is `X_i` and block `(i+1, i)` of `y_big` is
/// `Y_i`, so `x_big y_big - y_big x_big + v_big w_big = Λ` and
/// `w_big v_big = -λ_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPoint<R: Real> {
    pub x_big: CMat<R>,
    pub y_big: CMat<R>,
    pub v_big: CMat<R>,
    pub w_big: CMat<R>,
    pub lambda_big: CMat<R>,
    pub offsets: Vec<usize>,
    pub lambda_inf: Complex<R>,
}

pub fn block_form<R: Real>(p: &QuiverPoint<R>) -> BlockPoint<R> {
    let m = p.m();
    let mut offsets = Vec::with_capacity(m + 1);
    let mut acc = 0;
    for i in 0..m {
        offsets.push(acc);
        acc += p.dim(i);
    }
    offsets.push(acc);
    let n = acc;
    let mut x_big = CMat::zeros(n, n);
    let mut y_big = CMat::zeros(n, n);
    let mut lambda_big = CMat::zeros(n, n);
    for i in 0..m {
        let j = (i + 1) % m;
        x_big.view_mut((offsets[i], offsets[j]), (p.dim(i), p.dim(j))).copy_from(&p.x[i]);
        y_big.view_mut((offsets[j], offsets[i]), (p.dim(j), p.dim(i))).copy_from(&p.y[i]);
        for r in 0..p.dim(i) {
            lambda_big[(offsets[i] + r, offsets[i] + r)] = p.setting.lambda(i);
        }
    }
    let mut v_big = CMat::zeros(n, 1);
    let mut w_big = CMat::zeros(1, n);
    v_big.view_mut((0, 0), (p.dim(0), 1)).copy_from(&p.v);
    w_big.view_mut((0, 0), (1, p.dim(0))).copy_from(&p.w);
    BlockPoint { x_big, y_big, v_big, w_big, lambda_big, offsets, lambda_inf: p.setting.lambda_inf() }
}

impl<R: Real> BlockPoint<R> {
    pub fn total_dim(&self) -> usize {
        self.x_big.nrows()
    }

    /// Residual of the block relations, measured block by block so that it
    /// is directly comparable with [`QuiverPoint::moment_residual`].
    pub fn residual(&self) -> R {
        let d = &self.x_big * &self.y_big - &self.y_big * &self.x_big + &self.v_big * &self.w_big - &self.lambda_big;
        let m = self.offsets.len() - 1;
        let mut worst = R::zero();
        for a in 0..m {
            for b in 0..m {
                let (ra, rb) = (self.offsets[a + 1] - self.offsets[a], self.offsets[b + 1] - self.offsets[b]);
                let n = d.view((self.offsets[a], self.offsets[b]), (ra, rb)).norm();
                if n > worst {
                    worst = n;
                }
            }
        }
        let wv = if self.total_dim() == 0 {
            Complex::new(R::zero(), R::zero())
        } else {
            (&self.w_big * &self.v_big)[(0, 0)]
        };
        let inf = cabs(wv + self.lambda_inf);
        if inf > worst {
            inf
        } else {
            worst
        }
    }
}
