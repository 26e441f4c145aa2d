//! Independent oracles used by the integration tests. Nothing here calls into the
//! solver, classifier or group code of the library under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use orbiklt::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// `Σ 1/x` as an exact rational.
pub fn inv_sum(values: &[u64]) -> Rational {
    values.iter().map(|&v| rat(1, v as i64)).sum()
}

// ---------------------------------------------------------------------------
// Hirzebruch-Jung

/// Evaluates `e_1 - 1/(e_2 - 1/(...))` directly with rationals.
pub fn continued_fraction_value(chain: &[u64]) -> Rational {
    let mut acc = Rational::from_integer(*chain.last().unwrap() as i64);
    for &e in chain.iter().rev().skip(1) {
        acc = Rational::from_integer(e as i64) - acc.recip().unwrap();
    }
    acc
}

pub fn mod_inverse(q: u64, n: u64) -> u64 {
    (1..n).find(|&x| (q * x) % n == 1).unwrap()
}

// ---------------------------------------------------------------------------
// Linear algebra over Z / Q

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Negative definiteness via signs of all leading principal determinants.
pub fn negative_definite_oracle(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let sub: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let det = bareiss_det(to_big(&sub));
        if k % 2 == 0 {
            det.is_positive()
        } else {
            det.is_negative()
        }
    })
}

/// Solves `m·x = d` by Cramer's rule with integer determinants.
pub fn cramer_solve(m: &[Vec<i64>], d: &[Rational]) -> Option<Vec<Rational>> {
    let det = bareiss_det(to_big(m));
    if det.is_zero() {
        return None;
    }
    let scale = d
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = d
        .iter()
        .map(|x| x.numer() * (&scale / x.denom()))
        .collect();
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut mj = to_big(m);
        for i in 0..n {
            mj[i][j] = scaled[i].clone();
        }
        let num = bareiss_det(mj);
        out.push(big_ratio(num, &det * &scale));
    }
    Some(out)
}

pub fn big_ratio(num: BigInt, den: BigInt) -> Rational {
    format!("{num}/{den}").parse().unwrap()
}

/// Rank over Q of an integer matrix.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] = &m[r][k] - &v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Adjunction degrees `d_j = e_j - 2 + Σ (1 - 1/m)·k` recomputed from raw data.
pub fn degrees_oracle(es: &[u64], branches: &[(usize, u64, u64)]) -> Vec<Rational> {
    let mut d: Vec<Rational> = es
        .iter()
        .map(|&e| Rational::from_integer(e as i64 - 2))
        .collect();
    for &(v, m, k) in branches {
        d[v] = &d[v] + &(rat(m as i64 - 1, m as i64) * Rational::from_integer(k as i64));
    }
    d
}

pub fn matrix_oracle(es: &[u64], edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let n = es.len();
    let mut m = vec![vec![0i64; n]; n];
    for (j, &e) in es.iter().enumerate() {
        m[j][j] = -(e as i64);
    }
    for &(i, j) in edges {
        m[i][j] += 1;
        m[j][i] += 1;
    }
    m
}

// ---------------------------------------------------------------------------
// Todd-Coxeter coset enumeration (Hasse-Lenz-Todd strategy, trivial subgroup)

/// Letters are `2·g` for generator `g` and `2·g + 1` for its inverse.
pub type Letter = usize;

pub fn inv(x: Letter) -> Letter {
    x ^ 1
}

struct CosetTable {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    limit: usize,
    overflow: bool,
}

impl CosetTable {
    fn new(gens: usize, limit: usize) -> Self {
        CosetTable {
            cols: 2 * gens,
            table: vec![vec![None; 2 * gens]],
            parent: vec![0],
            limit,
            overflow: false,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: Letter) {
        if self.table.len() >= self.limit {
            self.overflow = true;
            return;
        }
        let d = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][inv(x)] = Some(c);
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                if let Some(f) = self.table[e][x] {
                    self.table[f][inv(x)] = None;
                    let e1 = self.rep(e);
                    let f1 = self.rep(f);
                    if let Some(t) = self.table[e1][x] {
                        self.merge(f1, t, &mut queue);
                    } else if let Some(t) = self.table[f1][inv(x)] {
                        self.merge(e1, t, &mut queue);
                    } else {
                        self.table[e1][x] = Some(f1);
                        self.table[f1][inv(x)] = Some(e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.table[b][inv(w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.table[f][w[i]] = Some(b);
                self.table[b][inv(w[i])] = Some(f);
                return;
            }
            self.define(f, w[i]);
            if self.overflow {
                return;
            }
        }
    }
}

/// Order of `⟨gens | relators⟩`, or `None` if enumeration exceeds `limit` cosets.
pub fn todd_coxeter_order(gens: usize, relators: &[Vec<Letter>], limit: usize) -> Option<usize> {
    let mut t = CosetTable::new(gens, limit);
    let mut c = 0;
    while c < t.table.len() {
        for r in relators {
            if !t.live(c) {
                break;
            }
            t.scan_and_fill(c, r);
            if t.overflow {
                return None;
            }
        }
        if t.live(c) {
            for x in 0..t.cols {
                if t.table[c][x].is_none() {
                    t.define(c, x);
                    if t.overflow {
                        return None;
                    }
                }
            }
        }
        c += 1;
    }
    Some((0..t.table.len()).filter(|&c| t.parent[c] == c).count())
}

/// `⟨a_i, b_i, γ_j | Π[a_i,b_i] Π γ_j, γ_j^{m_j}⟩` written from scratch.
pub fn curve_relators(genus: usize, mults: &[u64]) -> (usize, Vec<Vec<Letter>>) {
    let gens = 2 * genus + mults.len();
    let mut long = Vec::new();
    for i in 0..genus {
        let (a, b) = (2 * (2 * i), 2 * (2 * i + 1));
        long.extend([a, b, inv(a), inv(b)]);
    }
    let gamma = |j: usize| 2 * (2 * genus + j);
    for j in 0..mults.len() {
        long.push(gamma(j));
    }
    let mut relators = vec![long];
    for (j, &m) in mults.iter().enumerate() {
        relators.push(vec![gamma(j); m as usize]);
    }
    (gens, relators)
}

/// Rank of the abelianization tensored with Q.
pub fn abelian_rank(gens: usize, relators: &[Vec<Letter>]) -> usize {
    let rows: Vec<Vec<i64>> = relators
        .iter()
        .map(|w| {
            let mut row = vec![0i64; gens];
            for &x in w {
                row[x / 2] += if x % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect();
    gens - rank_q(&rows)
}

// ---------------------------------------------------------------------------
// Germs: klt by explicit embedded resolution

/// Truncated power series in a local parameter `t`.
#[derive(Clone, Debug)]
pub struct Series(Vec<Rational>);

pub const PRECISION: usize = 24;

impl Series {
    pub fn monomial(coeff: i64, exp: usize) -> Series {
        let mut v = vec![Rational::zero(); PRECISION];
        if exp < PRECISION {
            v[exp] = Rational::from_integer(coeff);
        }
        Series(v)
    }

    pub fn zero() -> Series {
        Series(vec![Rational::zero(); PRECISION])
    }

    fn add(&self, other: &Series) -> Series {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn scale(&self, c: &Rational) -> Series {
        Series(self.0.iter().map(|a| a * c).collect())
    }

    fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    fn at(&self, k: usize) -> &Rational {
        &self.0[k]
    }

    /// `self / other` where `ord(self) ≥ ord(other)`; precision shrinks by `ord(other)`.
    fn div(&self, other: &Series, valid: usize) -> (Series, usize) {
        let k = other.ord().expect("nonzero divisor");
        let num: Vec<Rational> = self.0[k..].to_vec();
        let den: Vec<Rational> = other.0[k..].to_vec();
        let n = valid - k;
        let mut q = vec![Rational::zero(); PRECISION];
        let lead = den[0].clone();
        for i in 0..n {
            let mut acc = num[i].clone();
            for j in 1..=i {
                if j < den.len() {
                    acc = &acc - &(&den[j] * &q[i - j]);
                }
            }
            q[i] = &acc / &lead;
        }
        (Series(q), n)
    }
}

/// A parametrized branch `t ↦ (x(t), y(t))` through the origin with its boundary
/// coefficient. `valid` counts trustworthy series terms.
#[derive(Clone, Debug)]
pub struct ParamBranch {
    pub coeff: Rational,
    pub x: Series,
    pub y: Series,
    pub valid: usize,
}

impl ParamBranch {
    pub fn new(coeff: Rational, x: Series, y: Series) -> Self {
        ParamBranch {
            coeff,
            x,
            y,
            valid: PRECISION,
        }
    }

    fn mult(&self) -> usize {
        match (self.x.ord(), self.y.ord()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => panic!("degenerate branch"),
        }
    }

    /// Leading direction `[x_k : y_k]` at `k = mult`.
    fn direction(&self) -> (Rational, Rational) {
        let k = self.mult();
        (self.x.at(k).clone(), self.y.at(k).clone())
    }
}

fn same_direction(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    &a.0 * &b.1 == &a.1 * &b.0
}

/// Outcome of resolving a germ: the coefficients of all exceptional curves.
#[derive(Debug)]
pub struct Resolution {
    pub exceptional: Vec<Rational>,
    pub precision_exhausted: bool,
}

impl Resolution {
    pub fn is_klt(&self, boundary: &[Rational]) -> bool {
        boundary.iter().all(|c| *c < Rational::one())
            && self.exceptional.iter().all(|c| *c < Rational::one())
    }
}

/// Blows up points until the total transform has simple normal crossings,
/// recording `coeff(E) = Σ mult·coeff - 1` for each new exceptional curve.
pub fn resolve(branches: Vec<ParamBranch>) -> Resolution {
    let mut res = Resolution {
        exceptional: Vec::new(),
        precision_exhausted: false,
    };
    resolve_point(branches, &mut res, 0);
    res
}

fn resolve_point(branches: Vec<ParamBranch>, res: &mut Resolution, depth: usize) {
    if depth > 40 || branches.iter().any(|b| b.valid < 6) {
        res.precision_exhausted = true;
        return;
    }
    let snc = match branches.as_slice() {
        [] => true,
        [b] => b.mult() == 1,
        [a, b] => a.mult() == 1 && b.mult() == 1 && !same_direction(&a.direction(), &b.direction()),
        _ => false,
    };
    if snc {
        return;
    }
    let load: Rational = branches
        .iter()
        .map(|b| &b.coeff * &Rational::from_integer(b.mult() as i64))
        .sum();
    let e_coeff = load - Rational::one();
    res.exceptional.push(e_coeff.clone());

    // shear x ↦ x + λy so that no branch is tangent to the y-axis
    let lambda = (0..)
        .map(|l| Rational::from_integer(l))
        .find(|l| {
            branches.iter().all(|b| {
                let (dx, dy) = b.direction();
                !(&dx + &(l * &dy)).is_zero()
            })
        })
        .unwrap();
    let mut children: BTreeMap<String, (Rational, Vec<ParamBranch>)> = BTreeMap::new();
    for b in branches {
        let x = b.x.add(&b.y.scale(&lambda));
        let (slope, valid) = b.y.div(&x, b.valid);
        let s = slope.at(0).clone();
        let y = slope.add(&Series::monomial(1, 0).scale(&(-s.clone())));
        let moved = ParamBranch {
            coeff: b.coeff,
            x,
            y,
            valid: valid.min(b.valid),
        };
        children
            .entry(s.to_string())
            .or_insert_with(|| (s.clone(), Vec::new()))
            .1
            .push(moved);
    }
    for (_, (_, mut group)) in children {
        // the new exceptional curve x = 0 passes through every point on it
        group.push(ParamBranch {
            coeff: e_coeff.clone(),
            x: Series::zero(),
            y: Series::monomial(1, 1),
            valid: PRECISION,
        });
        resolve_point(group, res, depth + 1);
    }
}

/// Smooth branches `y = f_i(x)` with `ord(f_i - f_j) = contact[i][j]`, built from an
/// ultrametric contact table.
pub fn smooth_family(coeffs: &[Rational], contact: &dyn Fn(usize, usize) -> u64) -> Vec<ParamBranch> {
    let r = coeffs.len();
    let depth = (0..r)
        .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| contact(i, j))
        .max()
        .unwrap_or(1) as usize
        + 1;
    (0..r)
        .map(|i| {
            let mut y = Series::zero();
            for k in 1..=depth {
                let label = (0..=i).find(|&j| j == i || contact(i, j) > k as u64).unwrap();
                y = y.add(&Series::monomial(label as i64 + 1, k));
            }
            ParamBranch::new(coeffs[i].clone(), Series::monomial(1, 1), y)
        })
        .collect()
}

/// `(t^p, t^q)` and, optionally, a smooth branch meeting it with the given contact
/// (`kp < q` gives `y = x^k`, `q` gives `y = 0`).
pub fn cusp_with_smooth(
    p: u64,
    q: u64,
    cusp_coeff: Rational,
    smooth: Option<(Rational, u64)>,
) -> Vec<ParamBranch> {
    let mut out = vec![ParamBranch::new(
        cusp_coeff,
        Series::monomial(1, p as usize),
        Series::monomial(1, q as usize),
    )];
    if let Some((coeff, contact)) = smooth {
        let y = if contact == q {
            Series::zero()
        } else {
            assert_eq!(contact % p, 0);
            Series::monomial(1, (contact / p) as usize)
        };
        out.push(ParamBranch::new(coeff, Series::monomial(1, 1), y));
    }
    out
}

pub fn orbifold_coeff(m: u64) -> Rational {
    rat(m as i64 - 1, m as i64)
}
