//! Integral pairs `(ℂ², Δ)` on a smooth surface germ.
//!
//! Two independent decision routes live here:
//!
//! * [`is_klt_germ`] follows the reductions used to prove the classification: the
//!   first blow-up bound, the tangency inequality `Σ(1 - 1/m_k) < 1 + 1/t`, and
//!   orbifold étale covers that trade a boundary branch for a curve `x^a = y^b`.
//! * [`classify_germ`] matches the canonicalized configuration against the
//!   catalogue of klt germs with their stated numerical conditions.
//!
//! Contact orders are user-supplied intersection multiplicities; nothing is
//! computed from equations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::GermError;
use crate::exact::{Multiplicity, Rational};
use crate::graph::Dynkin;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BranchKind {
    Smooth,
    /// `(p, q)`-cusp `y^p = x^q`, stored with `p < q`.
    Cusp { p: u64, q: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GermBranch {
    #[serde(flatten)]
    pub kind: BranchKind,
    pub multiplicity: Multiplicity,
}

impl GermBranch {
    pub fn smooth(mult: u64) -> Result<Self, GermError> {
        Ok(GermBranch {
            kind: BranchKind::Smooth,
            multiplicity: Multiplicity::orbifold(mult).map_err(|_| GermError::Multiplicity(mult))?,
        })
    }

    /// A `(p, q)`-cusp; the exponents may be given in either order.
    pub fn cusp(p: u64, q: u64, mult: u64) -> Result<Self, GermError> {
        if p < 2 || q < 2 {
            return Err(GermError::CuspExponent { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(GermError::NonCoprime { p, q });
        }
        Ok(GermBranch {
            kind: BranchKind::Cusp {
                p: p.min(q),
                q: p.max(q),
            },
            multiplicity: Multiplicity::orbifold(mult).map_err(|_| GermError::Multiplicity(mult))?,
        })
    }

    /// Multiplicity `t` of the curve at the origin.
    pub fn origin_multiplicity(&self) -> u64 {
        match self.kind {
            BranchKind::Smooth => 1,
            BranchKind::Cusp { p, .. } => p,
        }
    }

    pub fn mult(&self) -> u64 {
        self.multiplicity.get()
    }

    fn sort_key(&self) -> (u8, u64, u64, u64) {
        match self.kind {
            BranchKind::Smooth => (0, self.mult(), 0, 0),
            BranchKind::Cusp { p, q } => (1, self.mult(), p, q),
        }
    }
}

/// Intersection multiplicities a smooth branch can have with a `(p, q)`-cusp:
/// `kp` for `kp < q`, and `q` itself.
fn cusp_smooth_contacts(p: u64, q: u64) -> Vec<u64> {
    (1..)
        .map(|k| k * p)
        .take_while(|&c| c < q)
        .chain(std::iter::once(q))
        .collect()
}

fn allowed_description(a: &GermBranch, b: &GermBranch) -> String {
    match (a.kind, b.kind) {
        (BranchKind::Smooth, BranchKind::Smooth) => ">= 1".to_string(),
        (BranchKind::Cusp { p, q }, BranchKind::Smooth)
        | (BranchKind::Smooth, BranchKind::Cusp { p, q }) => {
            let values: Vec<String> = cusp_smooth_contacts(p, q)
                .iter()
                .map(u64::to_string)
                .collect();
            format!("one of {{{}}}", values.join(", "))
        }
        _ => format!(
            ">= {}",
            a.origin_multiplicity() * b.origin_multiplicity()
        ),
    }
}

fn contact_allowed(a: &GermBranch, b: &GermBranch, value: u64) -> bool {
    match (a.kind, b.kind) {
        (BranchKind::Smooth, BranchKind::Smooth) => value >= 1,
        (BranchKind::Cusp { p, q }, BranchKind::Smooth)
        | (BranchKind::Smooth, BranchKind::Cusp { p, q }) => {
            value == q || (value < q && value % p == 0)
        }
        _ => value >= a.origin_multiplicity() * b.origin_multiplicity(),
    }
}

/// Branches plus a symmetric contact table; omitted pairs meet generically,
/// with contact `t_i·t_j` (1 for two smooth branches).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GermConfig {
    branches: Vec<GermBranch>,
    contact: BTreeMap<(usize, usize), u64>,
}

impl GermConfig {
    pub fn new(branches: Vec<GermBranch>, contacts: &[(usize, usize, u64)]) -> Result<Self, GermError> {
        let n = branches.len();
        let mut contact = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let generic = branches[i].origin_multiplicity() * branches[j].origin_multiplicity();
                contact.insert((i, j), generic);
            }
        }
        for &(i, j, value) in contacts {
            if i >= n || j >= n {
                return Err(GermError::ContactOutOfRange(i, j));
            }
            if i == j {
                return Err(GermError::ContactSelf(i));
            }
            let (a, b) = (i.min(j), i.max(j));
            if !contact_allowed(&branches[a], &branches[b], value) {
                return Err(GermError::InvalidContact {
                    i: a,
                    j: b,
                    value,
                    allowed: allowed_description(&branches[a], &branches[b]),
                });
            }
            contact.insert((a, b), value);
        }
        let config = GermConfig { branches, contact };
        config.check_ultrametric()?;
        Ok(config)
    }

    /// Convenience: smooth branches with one uniform pairwise contact order.
    pub fn tangent_family(t: u64, mults: &[u64]) -> Result<Self, GermError> {
        if t == 0 {
            return Err(GermError::ZeroTangency);
        }
        let branches = mults
            .iter()
            .map(|&m| GermBranch::smooth(m))
            .collect::<Result<Vec<_>, _>>()?;
        let n = branches.len();
        let contacts: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j, t)))
            .collect();
        GermConfig::new(branches, &contacts)
    }

    // Among three smooth branches the two smallest contact orders coincide.
    fn check_ultrametric(&self) -> Result<(), GermError> {
        let smooth: Vec<usize> = (0..self.branches.len())
            .filter(|&i| self.branches[i].kind == BranchKind::Smooth)
            .collect();
        for (x, &i) in smooth.iter().enumerate() {
            for (y, &j) in smooth.iter().enumerate().skip(x + 1) {
                for &k in smooth.iter().skip(y + 1) {
                    let mut c = [self.contact(i, j), self.contact(i, k), self.contact(j, k)];
                    c.sort_unstable();
                    if c[0] != c[1] {
                        return Err(GermError::NotUltrametric(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn branches(&self) -> &[GermBranch] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn contact(&self, i: usize, j: usize) -> u64 {
        self.contact[&(i.min(j), i.max(j))]
    }

    /// Branches sorted by (smooth before cusp, multiplicity, exponents), contacts
    /// carried along.
    pub fn canonical(&self) -> GermConfig {
        let mut order: Vec<usize> = (0..self.branches.len()).collect();
        order.sort_by_key(|&i| self.branches[i].sort_key());
        let branches: Vec<GermBranch> = order.iter().map(|&i| self.branches[i]).collect();
        let mut contact = BTreeMap::new();
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                contact.insert((a, b), self.contact(order[a], order[b]));
            }
        }
        GermConfig { branches, contact }
    }

    /// Same branches listed in another order; `perm[k]` is the old index of new branch `k`.
    pub fn permuted(&self, perm: &[usize]) -> GermConfig {
        let branches = perm.iter().map(|&i| self.branches[i]).collect();
        let mut contact = BTreeMap::new();
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                contact.insert((a, b), self.contact(perm[a], perm[b]));
            }
        }
        GermConfig { branches, contact }
    }
}

/// Coefficient `c = 1 - Σ_k t_k (1 - 1/m_k)` of the exceptional curve of the first blow-up.
pub fn blowup_discrepancy(g: &GermConfig) -> Rational {
    let load: Rational = g
        .branches
        .iter()
        .map(|b| b.multiplicity.coeff() * Rational::from_integer(b.origin_multiplicity() as i64))
        .sum();
    Rational::one() - load
}

/// `Σ_k (1 - 1/m_k) < 1 + 1/t` for smooth branches with pairwise contact order `t`.
pub fn tangent_family_klt(t: u64, mults: &[Multiplicity]) -> Result<bool, GermError> {
    if t == 0 {
        return Err(GermError::ZeroTangency);
    }
    let lhs: Rational = mults.iter().map(|m| m.coeff()).sum();
    let rhs = Rational::one() + Multiplicity::new(t).expect("t >= 1").inverse();
    Ok(lhs < rhs)
}

fn inverse_sum(values: &[u64]) -> Rational {
    values
        .iter()
        .map(|&v| Multiplicity::new(v).expect("positive").inverse())
        .sum()
}

fn mults_of(values: &[u64]) -> Vec<Multiplicity> {
    values
        .iter()
        .map(|&v| Multiplicity::new(v).expect("positive"))
        .collect()
}

/// klt test for the boundary `(1 - 1/m)·{x^a = y^b}` on a smooth germ, every
/// component carrying multiplicity `m`.
///
/// With `d = gcd(a, b)` the curve splits into `d` components of type
/// `(a/d, b/d)`: smooth ones pairwise tangent to order `max(a/d, b/d)`, or cusps.
fn power_curve_klt(a: u64, b: u64, m: u64) -> bool {
    let d = a.gcd(&b);
    let (a1, b1) = (a / d, b / d);
    if a1 == 1 || b1 == 1 {
        if d == 1 {
            return true;
        }
        let mults = mults_of(&vec![m; d as usize]);
        tangent_family_klt(a1.max(b1), &mults).expect("contact >= 1")
    } else if d == 1 {
        inverse_sum(&[a1, b1, m]) > Rational::one()
    } else {
        // several singular components already fail the first blow-up
        false
    }
}

/// klt decision by the reduction route (blow-up bound, tangency inequality, covers).
pub fn is_klt_germ(g: &GermConfig) -> bool {
    if blowup_discrepancy(g) <= Rational::from_integer(-1) {
        return false;
    }
    let smooth: Vec<usize> = (0..g.len())
        .filter(|&i| g.branches[i].kind == BranchKind::Smooth)
        .collect();
    let cusps: Vec<usize> = (0..g.len())
        .filter(|&i| g.branches[i].kind != BranchKind::Smooth)
        .collect();
    let mult = |i: usize| g.branches[i].multiplicity;
    match (cusps.as_slice(), smooth.as_slice()) {
        ([], []) | ([], [_]) => true,
        ([], &[i, j]) => tangent_family_klt(g.contact(i, j), &[mult(i), mult(j)]).expect("contact >= 1"),
        ([], &[i, j, k]) => {
            let pairs = [(g.contact(i, j), i, j, k), (g.contact(i, k), i, k, j), (g.contact(j, k), j, k, i)];
            let min = pairs.iter().map(|p| p.0).min().unwrap();
            let (max, a, b, c) = *pairs.iter().max_by_key(|p| p.0).unwrap();
            let all = [mult(i), mult(j), mult(k)];
            if max == 1 || min >= 2 {
                tangent_family_klt(min, &all).expect("contact >= 1")
            } else {
                // Cover ramified along the transversal branch multiplies the tangency.
                let t = max * mult(c).get();
                tangent_family_klt(t, &[mult(a), mult(b)]).expect("contact >= 1")
            }
        }
        ([], many) => {
            let min = (0..many.len())
                .flat_map(|x| (x + 1..many.len()).map(move |y| (x, y)))
                .map(|(x, y)| g.contact(many[x], many[y]))
                .min()
                .unwrap();
            let all: Vec<_> = many.iter().map(|&i| mult(i)).collect();
            tangent_family_klt(min, &all).expect("contact >= 1")
        }
        (&[c], []) => {
            let BranchKind::Cusp { p, q } = g.branches[c].kind else {
                unreachable!()
            };
            inverse_sum(&[p, q, mult(c).get()]) > Rational::one()
        }
        (&[c], &[s]) => {
            let BranchKind::Cusp { p, q } = g.branches[c].kind else {
                unreachable!()
            };
            if p != 2 {
                return false;
            }
            let (m1, m2) = (mult(c).get(), mult(s).get());
            match g.contact(c, s) {
                2 => power_curve_klt(2, q * m2, m1),
                t if t == q => power_curve_klt(2 * m2, q, m1),
                // y = x^k with 2 ≤ k < q/2: after one blow-up both strict transforms and
                // the exceptional curve pass through the cusp point, load ≥ 2
                _ => false,
            }
        }
        _ => false,
    }
}

/// The catalogue of klt germs with smooth ambient surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "class")]
pub enum GermClass {
    Empty,
    SingleSmooth { m: u64 },
    /// Three pairwise transversal smooth branches, `m1 ≤ m2 ≤ m3`, `Σ 1/m_i > 1`.
    TransversalTriple { m1: u64, m2: u64, m3: u64 },
    /// Two smooth branches with contact order `t`.
    TangentFamily { t: u64, mults: Vec<u64> },
    /// `(2, q)`-cusp with `1/2 + 1/q + 1/m > 1`.
    SingleCusp { p: u64, q: u64, m: u64 },
    /// `(2, q)`-cusp of multiplicity 2 and a smooth branch meeting it with contact 2.
    CuspPlusSmoothContact2 { q: u64, m2: u64 },
    /// `(2, 3)`-cusp and smooth branch with contact 3, both multiplicity 2.
    CuspPlusSmoothContact3,
    /// `(3, 4)`- or `(3, 5)`-cusp of multiplicity 2.
    HigherCusp { p: u64, q: u64 },
    /// Smooth branches of multiplicities `m ≤ n` tangent to order `p`, plus a smooth
    /// branch of multiplicity `r` transversal to both; `1/m + 1/n + 1/(rp) > 1`.
    TangentPairPlusTransversal { m: u64, n: u64, p: u64, r: u64 },
    NotKlt,
}

impl GermClass {
    pub fn name(&self) -> &'static str {
        match self {
            GermClass::Empty => "Empty",
            GermClass::SingleSmooth { .. } => "SingleSmooth",
            GermClass::TransversalTriple { .. } => "TransversalTriple",
            GermClass::TangentFamily { .. } => "TangentFamily",
            GermClass::SingleCusp { .. } => "SingleCusp",
            GermClass::CuspPlusSmoothContact2 { .. } => "CuspPlusSmoothContact2",
            GermClass::CuspPlusSmoothContact3 => "CuspPlusSmoothContact3",
            GermClass::HigherCusp { .. } => "HigherCusp",
            GermClass::TangentPairPlusTransversal { .. } => "TangentPairPlusTransversal",
            GermClass::NotKlt => "NotKlt",
        }
    }
}

impl fmt::Display for GermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermClass::Empty | GermClass::CuspPlusSmoothContact3 | GermClass::NotKlt => {
                f.write_str(self.name())
            }
            GermClass::SingleSmooth { m } => write!(f, "SingleSmooth({m})"),
            GermClass::TransversalTriple { m1, m2, m3 } => {
                write!(f, "TransversalTriple({m1},{m2},{m3})")
            }
            GermClass::TangentFamily { t, mults } => {
                let list: Vec<String> = mults.iter().map(u64::to_string).collect();
                write!(f, "TangentFamily(t={t},({}))", list.join(","))
            }
            GermClass::SingleCusp { p, q, m } => write!(f, "SingleCusp({p},{q};{m})"),
            GermClass::CuspPlusSmoothContact2 { q, m2 } => {
                write!(f, "CuspPlusSmoothContact2(q={q},m2={m2})")
            }
            GermClass::HigherCusp { p, q } => write!(f, "HigherCusp({p},{q})"),
            GermClass::TangentPairPlusTransversal { m, n, p, r } => {
                write!(f, "TangentPairPlusTransversal(m={m},n={n},p={p},r={r})")
            }
        }
    }
}

fn exceeds_one(values: &[u64]) -> bool {
    inverse_sum(values) > Rational::one()
}

/// Matches the canonical form of `g` against the catalogue; `NotKlt` if nothing fits.
pub fn classify_germ(g: &GermConfig) -> GermClass {
    let g = g.canonical();
    let b = &g.branches;
    use BranchKind::{Cusp, Smooth};
    match b.as_slice() {
        [] => GermClass::Empty,
        [x] if x.kind == Smooth => GermClass::SingleSmooth { m: x.mult() },
        [x, y] if x.kind == Smooth && y.kind == Smooth => {
            let t = g.contact(0, 1);
            if exceeds_one(&[x.mult(), y.mult(), t]) {
                GermClass::TangentFamily {
                    t,
                    mults: vec![x.mult(), y.mult()],
                }
            } else {
                GermClass::NotKlt
            }
        }
        [x, y, z] if b.iter().all(|br| br.kind == Smooth) => {
            let (cxy, cxz, cyz) = (g.contact(0, 1), g.contact(0, 2), g.contact(1, 2));
            if (cxy, cxz, cyz) == (1, 1, 1) {
                return if exceeds_one(&[x.mult(), y.mult(), z.mult()]) {
                    GermClass::TransversalTriple {
                        m1: x.mult(),
                        m2: y.mult(),
                        m3: z.mult(),
                    }
                } else {
                    GermClass::NotKlt
                };
            }
            // exactly one tangent pair, the third branch transversal to both
            let (pair, third, p) = match (cxy, cxz, cyz) {
                (t, 1, 1) if t >= 2 => ((x, y), z, t),
                (1, t, 1) if t >= 2 => ((x, z), y, t),
                (1, 1, t) if t >= 2 => ((y, z), x, t),
                _ => return GermClass::NotKlt,
            };
            let (m, n) = (pair.0.mult(), pair.1.mult());
            let r = third.mult();
            if exceeds_one(&[m, n, r * p]) {
                GermClass::TangentPairPlusTransversal {
                    m: m.min(n),
                    n: m.max(n),
                    p,
                    r,
                }
            } else {
                GermClass::NotKlt
            }
        }
        [x] => {
            let Cusp { p, q } = x.kind else { unreachable!() };
            let m = x.mult();
            match (p, q, m) {
                (2, _, _) if exceeds_one(&[m, p, q]) => GermClass::SingleCusp { p, q, m },
                (3, 4, 2) | (3, 5, 2) => GermClass::HigherCusp { p, q },
                _ => GermClass::NotKlt,
            }
        }
        [s, c] if s.kind == Smooth => {
            let Cusp { p, q } = c.kind else { return GermClass::NotKlt };
            match (p, q, c.mult(), s.mult(), g.contact(0, 1)) {
                (2, _, 2, m2, 2) => GermClass::CuspPlusSmoothContact2 { q, m2 },
                (2, 3, 2, 2, 3) => GermClass::CuspPlusSmoothContact3,
                _ => GermClass::NotKlt,
            }
        }
        _ => GermClass::NotKlt,
    }
}

/// Brieskorn–Pham cover `z^m = y^q - x^p` of a germ with a single cusp boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub p: u64,
    pub q: u64,
    pub m: u64,
    pub equation: String,
    /// ADE type of the cover when it is a Du Val singularity.
    pub du_val: Option<Dynkin>,
    pub is_klt: bool,
}

/// The degree-`m` orbifold étale cover ramified along a `(p, q)`-cusp of multiplicity `m`.
///
/// The cover has zero boundary and is Gorenstein, so it is klt exactly when it is
/// a Du Val singularity; for `x^a + y^b + z^c` that happens for the exponent
/// triples `(2, 2, c)` (type `A_{c-1}`) and `(2, 3, 3..=5)` (types `E_6, E_7, E_8`).
pub fn etale_cover_over_cusp(p: u64, q: u64, m: u64) -> Result<CoverVerdict, GermError> {
    if p < 2 || q < 2 {
        return Err(GermError::CuspExponent { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(GermError::NonCoprime { p, q });
    }
    if m < 2 {
        return Err(GermError::Multiplicity(m));
    }
    let mut exps = [p, q, m];
    exps.sort_unstable();
    let du_val = match exps {
        [2, 2, c] => Some(Dynkin::A((c - 1) as usize)),
        [2, 3, 3] => Some(Dynkin::E(6)),
        [2, 3, 4] => Some(Dynkin::E(7)),
        [2, 3, 5] => Some(Dynkin::E(8)),
        _ => None,
    };
    Ok(CoverVerdict {
        p,
        q,
        m,
        equation: format!("z^{m} = y^{q} - x^{p}"),
        is_klt: du_val.is_some(),
        du_val,
    })
}

/// Result of pulling back a smooth branch tangent to order `p` to the ramification
/// locus of a degree-`m1` cover: `v^{m1} = u^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    /// `gcd(m1, p)`, the number of irreducible components.
    pub components: u64,
    /// Each component is a cusp of type `(p/d, m1/d)`.
    pub component_type: (u64, u64),
    pub smooth: bool,
}

pub fn cover_split_tangent(p: u64, m1: u64) -> Result<SplitResult, GermError> {
    if p < 2 {
        return Err(GermError::Bound {
            name: "p",
            min: 2,
            value: p,
        });
    }
    if m1 < 2 {
        return Err(GermError::Multiplicity(m1));
    }
    let d = m1.gcd(&p);
    let smooth = (p == m1 && m1 == d) || (p == d && d != m1) || (m1 == d && d != p);
    Ok(SplitResult {
        components: d,
        component_type: (p / d, m1 / d),
        smooth,
    })
}

/// Bounds for the exhaustive germ sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBounds {
    pub max_mult: u64,
    pub max_contact: u64,
    pub max_cusp_exp: u64,
    /// Total number of branches.
    pub max_branches: usize,
    /// Number of cusp branches among them.
    pub max_cusps: usize,
}

impl EnumerationBounds {
    pub fn validate(&self) -> Result<(), GermError> {
        for (name, value, min) in [
            ("max_mult", self.max_mult, 2),
            ("max_contact", self.max_contact, 1),
            ("max_cusp_exp", self.max_cusp_exp, 2),
        ] {
            if value < min {
                return Err(GermError::Bound { name, min, value });
            }
        }
        Ok(())
    }
}

fn branch_options(bounds: &EnumerationBounds) -> Vec<GermBranch> {
    let mut options = Vec::new();
    for m in 2..=bounds.max_mult {
        options.push(GermBranch::smooth(m).expect("m >= 2"));
    }
    for p in 2..=bounds.max_cusp_exp {
        for q in p + 1..=bounds.max_cusp_exp {
            if p.gcd(&q) == 1 {
                for m in 2..=bounds.max_mult {
                    options.push(GermBranch::cusp(p, q, m).expect("valid cusp"));
                }
            }
        }
    }
    options
}

fn contact_values(a: &GermBranch, b: &GermBranch, max_contact: u64) -> Vec<u64> {
    match (a.kind, b.kind) {
        (BranchKind::Smooth, BranchKind::Smooth) => (1..=max_contact).collect(),
        (BranchKind::Cusp { p, q }, BranchKind::Smooth)
        | (BranchKind::Smooth, BranchKind::Cusp { p, q }) => cusp_smooth_contacts(p, q)
            .into_iter()
            .filter(|&c| c <= max_contact)
            .collect(),
        _ => {
            let generic = a.origin_multiplicity() * b.origin_multiplicity();
            (generic..=generic.max(max_contact)).collect()
        }
    }
}

/// Every valid configuration within `bounds`, branch multisets taken once each
/// (up to ordering of equal branch types).
pub fn germ_configurations(bounds: &EnumerationBounds) -> Result<Vec<GermConfig>, GermError> {
    bounds.validate()?;
    let options = branch_options(bounds);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    collect_multisets(&options, bounds, 0, &mut chosen, &mut out);
    Ok(out)
}

fn collect_multisets(
    options: &[GermBranch],
    bounds: &EnumerationBounds,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<GermConfig>,
) {
    let branches: Vec<GermBranch> = chosen.iter().map(|&i| options[i]).collect();
    let cusps = branches.iter().filter(|b| b.kind != BranchKind::Smooth).count();
    if cusps > bounds.max_cusps {
        return;
    }
    push_contact_assignments(&branches, bounds.max_contact, out);
    if chosen.len() == bounds.max_branches {
        return;
    }
    for i in start..options.len() {
        chosen.push(i);
        collect_multisets(options, bounds, i, chosen, out);
        chosen.pop();
    }
}

fn push_contact_assignments(branches: &[GermBranch], max_contact: u64, out: &mut Vec<GermConfig>) {
    let n = branches.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let choices: Vec<Vec<u64>> = pairs
        .iter()
        .map(|&(i, j)| contact_values(&branches[i], &branches[j], max_contact))
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; pairs.len()];
    loop {
        let contacts: Vec<(usize, usize, u64)> = pairs
            .iter()
            .zip(&idx)
            .zip(&choices)
            .map(|((&(i, j), &k), vals)| (i, j, vals[k]))
            .collect();
        if let Ok(config) = GermConfig::new(branches.to_vec(), &contacts) {
            out.push(config);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The distinct klt classes met by the sweep, in sorted order.
pub fn enumerate_klt_germs(bounds: &EnumerationBounds) -> Result<Vec<GermClass>, GermError> {
    let classes: BTreeSet<GermClass> = germ_configurations(bounds)?
        .iter()
        .filter(|g| is_klt_germ(g))
        .map(classify_germ)
        .collect();
    Ok(classes.into_iter().collect())
}

/// Nondecreasing multiplicity tuples `(m_1, ..., m_r)`, `2 ≤ m_i ≤ max_mult`, for
/// which `r` smooth branches with pairwise contact `t` form a klt germ.
pub fn enumerate_tangent_family(r: usize, t: u64, max_mult: u64) -> Result<Vec<Vec<u64>>, GermError> {
    if t == 0 {
        return Err(GermError::ZeroTangency);
    }
    if max_mult < 2 {
        return Err(GermError::Bound {
            name: "max_mult",
            min: 2,
            value: max_mult,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    tuples(r, 2, max_mult, &mut current, &mut |mults| {
        let config = GermConfig::tangent_family(t, mults).expect("uniform contact is valid");
        if is_klt_germ(&config) {
            out.push(mults.to_vec());
        }
    });
    Ok(out)
}

fn tuples(r: usize, lo: u64, hi: u64, current: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if current.len() == r {
        f(current);
        return;
    }
    for m in lo..=hi {
        current.push(m);
        tuples(r, m, hi, current, f);
        current.pop();
    }
}
