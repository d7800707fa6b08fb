//! Normal forms of `w(path)v` and `Tr(path)`.
//!
//! Words are sorted into `Y^q X^p` by the local moves
//!
//! - `X_t Y_t = Y_{t-1} X_{t-1} + λ_t` for `t ≠ 0`,
//! - `X_0 Y_0 = Y_{m-1} X_{m-1} + λ_0 - v w`,
//!
//! applied at the leftmost `X Y` adjacency. Every correction term is
//! shorter by two letters. A kernel caches results by word and is meant to
//! be owned by a single task.

use std::collections::{BTreeMap, HashMap};

use super::expr::{NcExpr, Sym, SymFamily};
use super::path::{sorted_word, start_of, walk, Kind, Letter, PathWord};
use super::poly::Poly;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{QuiverError, Result};
use crate::point::{CMat, QuiverPoint};
use crate::scalar::Real;

#[derive(Debug, Default)]
struct Memo {
    wv: HashMap<Vec<Letter>, NcExpr>,
    sorted_trace: HashMap<Vec<Letter>, NcExpr>,
    tr: HashMap<Sym, NcExpr>,
}

#[derive(Debug)]
pub struct RewriteKernel {
    m: usize,
    memo: Memo,
}

fn leftmost_xy(word: &[Letter]) -> Option<usize> {
    word.windows(2).position(|w| w[0].kind == Kind::X && w[1].kind == Kind::Y)
}

fn counts(word: &[Letter]) -> (usize, usize) {
    let q = word.iter().filter(|a| a.kind == Kind::Y).count();
    (q, word.len() - q)
}

fn splice(left: &[Letter], mid: &[Letter], right: &[Letter]) -> Vec<Letter> {
    left.iter().chain(mid).chain(right).copied().collect()
}

/// Smallest rotation; equal keys mean equal traces.
pub fn necklace_key(word: &[Letter]) -> Vec<Letter> {
    (0..word.len().max(1))
        .map(|r| word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl RewriteKernel {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "m must be positive");
        RewriteKernel { m, memo: Memo::default() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn lambda(&self, t: usize) -> Poly {
        Poly::lambda(self.m, t)
    }

    fn swap(&self, t: usize) -> [Letter; 2] {
        let s = (t + self.m - 1) % self.m;
        [Letter::y(s), Letter::x(s)]
    }

    /// `w(path)v` as a polynomial in `WV` symbols.
    pub fn normalize_wv(&mut self, path: &PathWord) -> Result<NcExpr> {
        self.check_m(path)?;
        Ok(self.wv_word(path.letters()))
    }

    fn check_m(&self, path: &PathWord) -> Result<()> {
        if path.m() != self.m {
            return Err(QuiverError::SettingMismatch(format!("path for m = {}, kernel for m = {}", path.m(), self.m)));
        }
        Ok(())
    }

    /// `word` must be closed at 0.
    fn wv_word(&mut self, word: &[Letter]) -> NcExpr {
        if let Some(hit) = self.memo.wv.get(word) {
            return hit.clone();
        }
        let m = self.m;
        let out = match leftmost_xy(word) {
            None => {
                let (q, p) = counts(word);
                NcExpr::symbol(m, Sym::from_counts(SymFamily::WV, q, p, m))
            }
            Some(pos) => {
                let t = word[pos].t;
                let (left, right) = (&word[..pos], &word[pos + 2..]);
                let mut acc = self.wv_word(&splice(left, &[], right)).scale_poly(&self.lambda(t));
                acc = acc.add(&self.wv_word(&splice(left, &self.swap(t), right)));
                if t == 0 {
                    let l = self.wv_word(left);
                    let r = self.wv_word(right);
                    acc = acc.sub(&l.mul(&r));
                }
                acc
            }
        };
        self.memo.wv.insert(word.to_vec(), out.clone());
        out
    }

    /// Trace of a closed word in terms of `Tr`, `WV` and dimension symbols.
    /// `base` is only consulted for the empty word.
    pub fn reduce_trace(&mut self, word: &[Letter], base: usize) -> NcExpr {
        let m = self.m;
        let Some(start) = start_of(word, m) else {
            return NcExpr::poly(Poly::dim(m, base));
        };
        let n = word.len();
        let verts = walk(word, start, m);
        let rotate = |s: usize| -> Vec<Letter> { splice(&word[n - s..], &word[..n - s], &[]) };
        if verts[..n].contains(&0) {
            let best = (0..n).filter(|&s| verts[s] == 0).map(rotate).min().expect("visits 0");
            return self.sorted_trace(&best);
        }
        // Not through 0, so the walk stays in 1..m-1 without wrapping.
        // Rotate a maximal vertex into an `X_t Y_t` at the front and lower it.
        let top = *verts[..n].iter().max().expect("nonempty");
        let s = verts.iter().position(|&v| v == top).expect("maximum is attained");
        let at_top = rotate(s);
        let shifted = splice(&at_top[n - 1..], &at_top[..n - 1], &[]);
        debug_assert!(shifted[0].kind == Kind::X && shifted[1].kind == Kind::Y);
        let t = shifted[0].t;
        let rest = &shifted[2..];
        let lowered = splice(&self.swap(t), rest, &[]);
        let mut acc = self.reduce_trace(&lowered, t);
        acc = acc.add(&self.reduce_trace(rest, t).scale_poly(&self.lambda(t)));
        acc
    }

    /// Trace of a linear word starting and ending at 0, sorted in place.
    fn sorted_trace(&mut self, word: &[Letter]) -> NcExpr {
        if let Some(hit) = self.memo.sorted_trace.get(word) {
            return hit.clone();
        }
        let m = self.m;
        let out = match leftmost_xy(word) {
            None => {
                let (q, p) = counts(word);
                NcExpr::symbol(m, Sym::from_counts(SymFamily::Tr, q, p, m))
            }
            Some(pos) => {
                let t = word[pos].t;
                let (left, right) = (&word[..pos], &word[pos + 2..]);
                let mut acc = self.reduce_trace(&splice(left, &[], right), 0).scale_poly(&self.lambda(t));
                acc = acc.add(&self.sorted_trace(&splice(left, &self.swap(t), right)));
                if t == 0 {
                    // Tr(L v w R) = w R L v
                    acc = acc.sub(&self.wv_word(&splice(right, left, &[])));
                }
                acc
            }
        };
        self.memo.sorted_trace.insert(word.to_vec(), out.clone());
        out
    }

    /// `Tr(A^i C_k B^j)` in `WV` symbols only.
    ///
    /// Inserting the moment map relation at every position of the word and
    /// summing makes the longest traces cancel; what is left is
    /// `a · Tr(N)` plus shorter terms with `a` a multiple of `Σλ`.
    pub fn tr_normal(&mut self, sym: Sym) -> Result<NcExpr> {
        debug_assert_eq!(sym.family, SymFamily::Tr);
        if let Some(hit) = self.memo.tr.get(&sym) {
            return Ok(hit.clone());
        }
        let m = self.m;
        let (q, p) = (m * sym.i + sym.k, m * sym.j + sym.k);
        let word = sorted_word(q, p, m);
        let n = word.len();
        if n == 0 {
            return Ok(NcExpr::poly(Poly::dim(m, 0)));
        }
        let verts = walk(&word, 0, m);
        let mut long: BTreeMap<Vec<Letter>, i64> = BTreeMap::new();
        let mut eq = NcExpr::zero(m);
        let mut a_self = Poly::zero(m);
        for s in 0..n {
            let v = verts[s];
            let (left, right) = (&word[..n - s], &word[n - s..]);
            let up = [Letter::x(v), Letter::y(v)];
            *long.entry(necklace_key(&splice(left, &up, right))).or_default() += 1;
            *long.entry(necklace_key(&splice(left, &self.swap(v), right))).or_default() -= 1;
            if v == 0 {
                eq = eq.add(&self.wv_word(&splice(right, left, &[])));
            }
            a_self = a_self.sub(&self.lambda(v));
        }
        for (neck, mult) in long {
            if mult != 0 {
                eq = eq.add(&self.reduce_trace(&neck, 0).scale_poly(&Poly::int(m, mult)));
            }
        }
        let top = Sym::from_counts(SymFamily::Tr, q + 1, p + 1, m);
        if !eq.coeff(&[top]).is_zero() {
            return Err(QuiverError::Denominator(format!("leading traces do not cancel for {sym}")));
        }
        let mine = eq.coeff(&[sym]);
        if mine.den != 0 {
            return Err(QuiverError::Denominator(format!("unexpected denominator in the coefficient of {sym}")));
        }
        let a = mine.num.add(&a_self);
        let mut rest = eq.clone();
        rest.push(vec![sym], mine.neg());
        for s in rest.symbols() {
            if s.family == SymFamily::Tr && s.length(m) >= n {
                return Err(QuiverError::Denominator(format!("{s} survives while solving for {sym}")));
            }
        }
        let out = if a.is_zero() {
            // Zero winding: the sum above is a relation among shorter terms.
            self.tr_by_cycles(sym, q, p)?
        } else {
            rest.substitute(SymFamily::Tr, |s| self.tr_normal(s))?.neg().div(&a)?
        };
        self.memo.tr.insert(sym, out.clone());
        Ok(out)
    }

    /// Solves for `Tr(N)` using the relation inserted into every necklace with
    /// the same letter counts.
    ///
    /// Each insertion `r` reads `P_r - V_r = λ_{v_r} Tr(M_r) - [v_r = 0] w(M_r)v`
    /// with `P_r`, `V_r` longer necklaces. Combinations in which the longer
    /// necklaces cancel are the cycles of the graph with edges `V_r → P_r`;
    /// one with total weight `-Σλ` on the `Tr(M_r) ≡ Tr(N)` terms is found
    /// from a spanning forest and its fundamental cycles.
    fn tr_by_cycles(&mut self, sym: Sym, q: usize, p: usize) -> Result<NcExpr> {
        let m = self.m;
        let n = q + p;
        let target = Sym::from_counts(SymFamily::Tr, q, p, m);
        let shapes = necklaces(q, p, m);
        struct Edge {
            shape: usize,
            s: usize,
            v: usize,
            from: usize,
            to: usize,
        }
        let mut nodes: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
        let mut edges = Vec::new();
        for (idx, word) in shapes.iter().enumerate() {
            let verts = walk(word, start_of(word, m).expect("nonempty"), m);
            for s in 0..n {
                let v = verts[s];
                let (left, right) = (&word[..n - s], &word[n - s..]);
                let mut id = |w: Vec<Letter>| {
                    let next = nodes.len();
                    *nodes.entry(necklace_key(&w)).or_insert(next)
                };
                let to = id(splice(left, &[Letter::x(v), Letter::y(v)], right));
                let from = id(splice(left, &self.swap(v), right));
                edges.push(Edge { shape: idx, s, v, from, to });
            }
        }
        // spanning forest: parent edge and orientation, potential in Z^m
        let count = nodes.len();
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); count];
        for (r, e) in edges.iter().enumerate() {
            adj[e.from].push((r, e.to, 1));
            adj[e.to].push((r, e.from, -1));
        }
        let mut parent: Vec<Option<(usize, i64, usize)>> = vec![None; count];
        let mut phi: Vec<Option<Vec<i64>>> = vec![None; count];
        let mut tree = vec![false; edges.len()];
        for root in 0..count {
            if phi[root].is_some() {
                continue;
            }
            phi[root] = Some(vec![0; m]);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(r, w, sign) in &adj[u] {
                    if phi[w].is_some() {
                        continue;
                    }
                    let mut pw = phi[u].clone().expect("visited");
                    pw[edges[r].v] += sign;
                    phi[w] = Some(pw);
                    parent[w] = Some((r, sign, u));
                    tree[r] = true;
                    queue.push_back(w);
                }
            }
        }
        let phi: Vec<Vec<i64>> = phi.into_iter().map(|x| x.expect("all visited")).collect();
        // fundamental cycle of a non-tree edge: root → from, the edge, to → root
        let cycles: Vec<usize> = (0..edges.len()).filter(|&r| !tree[r]).collect();
        let weights: Vec<Vec<i64>> = cycles
            .iter()
            .map(|&r| {
                let e = &edges[r];
                (0..m).map(|t| phi[e.from][t] + i64::from(t == e.v) - phi[e.to][t]).collect()
            })
            .collect();
        let goal = vec![BigRational::from_integer((-1).into()); m];
        let x = solve_small(&weights, &goal)
            .ok_or_else(|| QuiverError::Denominator(format!("no cancelling combination of relations for {sym}")))?;
        let mut coeff: BTreeMap<usize, BigRational> = BTreeMap::new();
        let mut add = |r: usize, c: BigRational| {
            let slot = coeff.entry(r).or_insert_with(BigRational::zero);
            *slot += c;
        };
        for (ci, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            let r = cycles[ci];
            add(r, xc.clone());
            let up = |mut node: usize, sign: i64, add: &mut dyn FnMut(usize, BigRational)| {
                while let Some((pe, ps, pu)) = parent[node] {
                    add(pe, xc * BigRational::from_integer((ps * sign).into()));
                    node = pu;
                }
            };
            up(edges[r].from, 1, &mut add);
            up(edges[r].to, -1, &mut add);
        }
        let mut total = NcExpr::zero(m);
        let mut lead = Poly::zero(m);
        for (r, c) in coeff {
            if c.is_zero() {
                continue;
            }
            let e = &edges[r];
            let word = &shapes[e.shape];
            let reduced = self.reduce_trace(word, 0);
            let own = reduced.coeff(&[target]);
            if own != super::poly::RatFn::int(m, 1) {
                return Err(QuiverError::Denominator(format!(
                    "necklace of {sym} reduces with leading coefficient {own}"
                )));
            }
            let mut low = reduced;
            low.push(vec![target], own.neg());
            let cl = Poly::constant(m, c.clone()).mul(&self.lambda(e.v));
            lead = lead.add(&cl);
            total = total.add(&low.scale_poly(&cl));
            if e.v == 0 {
                let (left, right) = (&word[..n - e.s], &word[n - e.s..]);
                let wv = self.wv_word(&splice(right, left, &[]));
                total = total.sub(&wv.scale_poly(&Poly::constant(m, c)));
            }
        }
        if lead.add(&Poly::sum_lambda(m)) != Poly::zero(m) {
            return Err(QuiverError::Denominator(format!("cycle combination for {sym} has weight {lead}")));
        }
        total.substitute(SymFamily::Tr, |s| self.tr_normal(s))?.div(&Poly::sum_lambda(m))
    }

    /// `Tr(path)` in `WV` symbols only.
    pub fn normalize_trace(&mut self, path: &PathWord) -> Result<NcExpr> {
        self.check_m(path)?;
        let mixed = self.reduce_trace(path.letters(), 0);
        mixed.substitute(SymFamily::Tr, |s| self.tr_normal(s))
    }

    /// Trace in mixed `Tr`/`WV` form, before eliminating traces.
    pub fn mixed_trace(&mut self, path: &PathWord) -> Result<NcExpr> {
        self.check_m(path)?;
        Ok(self.reduce_trace(path.letters(), 0))
    }
}

/// One representative word per necklace with `q` letters `Y` and `p` letters `X`.
fn necklaces(q: usize, p: usize, m: usize) -> Vec<Vec<Letter>> {
    let n = q + p;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for base in 0..m {
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != q {
                continue;
            }
            let mut v = base;
            let mut applied = Vec::with_capacity(n);
            for bit in 0..n {
                let kind = if mask >> bit & 1 == 1 { Kind::Y } else { Kind::X };
                let a = Letter::from_vertex(kind, v, m);
                v = a.target(m);
                applied.push(a);
            }
            applied.reverse();
            let key = necklace_key(&applied);
            if seen.insert(key.clone()) {
                out.push(key);
            }
        }
    }
    out
}

/// Some rational `x` with `Σ_c x_c w_c = goal`, by elimination on the
/// `dim × cols` system.
fn solve_small(cols: &[Vec<i64>], goal: &[BigRational]) -> Option<Vec<BigRational>> {
    let dim = goal.len();
    let width = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|t| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| BigRational::from_integer(c[t].into())).collect();
            row.push(goal[t].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        if row == dim {
            break;
        }
        let Some(pr) = (row..dim).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, pr);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..dim {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=width {
                    let d = &a[row][c] * &f;
                    a[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[width].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); width];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = a[r][width].clone();
    }
    Some(x)
}

/// The word `C_{i,k}`, a loop at vertex `(m - i) mod m`.
///
/// For `i + k < m` this is `Y_{m-i-1}⋯Y_{m-i-k} X_{m-i-k}⋯X_{m-i-1}`; otherwise
/// the `Y` run continues through 0 and `C_{i+k-m}` sits in the middle.
pub fn c_word(m: usize, i: usize, k: usize) -> Vec<Letter> {
    assert!(i < m && k < m, "C_{{i,k}} needs i, k < m");
    let base = (m - i) % m;
    let mut applied = Vec::with_capacity(2 * k);
    let mut v = base;
    for _ in 0..k {
        let a = Letter::from_vertex(Kind::X, v, m);
        v = a.target(m);
        applied.push(a);
    }
    for _ in 0..k {
        let a = Letter::from_vertex(Kind::Y, v, m);
        v = a.target(m);
        applied.push(a);
    }
    applied.reverse();
    applied
}

/// `Tr(C_{i,k}) - Tr(C_k)` in `Tr`/`WV` symbols of `C_l`, `l < k`.
pub fn c_lemma_correction(kernel: &mut RewriteKernel, i: usize, k: usize) -> Result<NcExpr> {
    let m = kernel.m();
    let word = c_word(m, i, k);
    let full = kernel.reduce_trace(&word, (m - i) % m);
    let lead = Sym::tr(0, 0, k);
    let c = full.coeff(&[lead]);
    if c != super::poly::RatFn::int(m, 1) {
        return Err(QuiverError::Denominator(format!("Tr(C_{{{i},{k}}}) has leading coefficient {c}")));
    }
    let mut rest = full;
    rest.push(vec![lead], c.neg());
    Ok(rest)
}

/// Closed form for `k = 1`: `-(λ_{m-i} n_{m-i} + … + λ_{m-1} n_{m-1})`.
pub fn c_lemma_k1(m: usize, i: usize) -> Poly {
    (m - i..m).fold(Poly::zero(m), |acc, t| acc.sub(&Poly::lambda(m, t).mul(&Poly::dim(m, t))))
}

/// Matrix of a word at a point; the identity on `V_base` for the empty word.
pub fn word_matrix<R: Real>(word: &[Letter], base: usize, p: &QuiverPoint<R>) -> CMat<R> {
    let m = p.m();
    let start = start_of(word, m).unwrap_or(base);
    let mut out = CMat::<R>::identity(p.dim(start), p.dim(start));
    for a in word.iter().rev() {
        let mat = match a.kind {
            Kind::X => &p.x[a.t],
            Kind::Y => &p.y[a.t],
        };
        out = mat * out;
    }
    out
}

/// `(w·P·v, Tr P)` for the matrix `P` of a closed path at 0.
pub fn path_values<R: Real>(path: &PathWord, p: &QuiverPoint<R>) -> (Complex<R>, Complex<R>) {
    let mat = word_matrix(path.letters(), 0, p);
    ((&p.w * &mat * &p.v)[(0, 0)], mat.trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{base_point_n1, QuiverSetting};
    use crate::rewrite::path::{parse_path, random_closed_path};
    use crate::solver::solve_point;
    use num_complex::Complex64;
    use rand::SeedableRng;

    fn lam(m: usize) -> Vec<Complex64> {
        [Complex64::new(0.83, 0.21), Complex64::new(-0.37, 0.64), Complex64::new(0.52, -0.45)][..m].to_vec()
    }

    fn point(m: usize, n: i64, seed: u64) -> QuiverPoint<f64> {
        let s = QuiverSetting::new(lam(m), &vec![n; m]).unwrap();
        solve_point(&s, seed).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn spec_example_m2() {
        let mut k = RewriteKernel::new(2);
        let p = parse_path("Y1 X1 Y1 Y0", 2).unwrap();
        let e = k.normalize_wv(&p).unwrap();
        let s = Poly::sum_lambda(2);
        let mut want = NcExpr::symbol(2, Sym::wv(1, 0, 1));
        want = want.add(&NcExpr::symbol(2, Sym::wv(1, 0, 0)).scale_poly(&s));
        want = want.sub(&NcExpr::symbol(2, Sym::wv(1, 0, 0)).mul(&NcExpr::symbol(2, Sym::wv(0, 0, 0))));
        assert_eq!(e, want, "{e}");
    }

    #[test]
    fn normal_words_are_fixed() {
        for m in 1..4 {
            let mut k = RewriteKernel::new(m);
            for (i, j, c) in [(1, 0, 0), (0, 1, 0), (0, 0, m - 1), (1, 2, m / 2)] {
                if i + j + c == 0 {
                    continue;
                }
                let e = k.normalize_wv(&PathWord::normal(m, i, j, c)).unwrap();
                assert_eq!(e, NcExpr::symbol(m, Sym::wv(i, j, c)));
            }
        }
    }

    #[test]
    fn wv_and_trace_match_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for m in 2..4 {
            for n in 1..3 {
                let pt = point(m, n, 100 + m as u64 * 10 + n as u64);
                let mut k = RewriteKernel::new(m);
                for _ in 0..20 {
                    let path = random_closed_path(&mut rng, m, 10);
                    let (wv, tr) = path_values(&path, &pt);
                    let e = k.normalize_wv(&path).unwrap();
                    assert!(close(e.eval(&pt).unwrap(), wv, 1e-7), "wv {path}: {e}");
                    let mixed = k.mixed_trace(&path).unwrap();
                    assert!(close(mixed.eval(&pt).unwrap(), tr, 1e-7), "mixed {path}: {mixed}");
                    let t = k.normalize_trace(&path).unwrap();
                    assert!(!t.contains_family(SymFamily::Tr));
                    assert!(close(t.eval(&pt).unwrap(), tr, 1e-7), "trace {path}: {t}");
                }
            }
        }
    }

    #[test]
    fn powers_of_a_and_b() {
        for m in 1..4 {
            let mut k = RewriteKernel::new(m);
            for e in 1..4 {
                let s = Poly::sum_lambda(m);
                let a = k.normalize_trace(&PathWord::normal(m, e, 0, 0)).unwrap();
                assert_eq!(a, NcExpr::symbol(m, Sym::wv(e, 0, 0)).div(&s).unwrap(), "A^{e}, m={m}: {a}");
                let b = k.normalize_trace(&PathWord::normal(m, 0, e, 0)).unwrap();
                assert_eq!(b, NcExpr::symbol(m, Sym::wv(0, e, 0)).div(&s).unwrap(), "B^{e}, m={m}: {b}");
            }
        }
    }

    #[test]
    fn c_lemma() {
        for m in 2..5 {
            let mut k = RewriteKernel::new(m);
            let s = QuiverSetting::new(
                (0..m).map(|t| Complex64::new(0.4 + 0.3 * t as f64, 0.2 - 0.1 * t as f64)).collect(),
                &vec![1; m],
            )
            .unwrap();
            let pt = base_point_n1(&s).unwrap();
            for i in 0..m {
                for c in 1..m {
                    let g = c_lemma_correction(&mut k, i, c).unwrap();
                    for sym in g.symbols() {
                        assert!(sym.i == 0 && sym.j == 0 && sym.k < c, "{sym} in g for C_{{{i},{c}}}");
                    }
                    let word = c_word(m, i, c);
                    let direct =
                        word_matrix(&word, (m - i) % m, &pt).trace() - word_matrix(&c_word(m, 0, c), 0, &pt).trace();
                    assert!(close(g.eval(&pt).unwrap(), direct, 1e-9), "C_{{{i},{c}}}: {g}");
                    if c == 1 {
                        let closed = c_lemma_k1(m, i).eval(&s.tau.lambda, s.alpha());
                        assert!(close(closed, direct, 1e-9), "closed form C_{{{i},1}}");
                    }
                }
            }
        }
    }
}
