//! Orbifold curves, orbifold bases of fibrations and the abelianity verdict for
//! special 2-dimensional orbifolds.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::OrbifoldError;
use crate::exact::{Multiplicity, Rational};

/// A smooth curve of genus `g` with points marked by multiplicities `m_j ≥ 2`.
///
/// Only the multiset of multiplicities matters; it is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbifoldCurve {
    genus: u64,
    mults: Vec<u64>,
}

impl OrbifoldCurve {
    pub fn new(genus: u64, mults: &[u64]) -> Result<Self, OrbifoldError> {
        if let Some(&bad) = mults.iter().find(|&&m| m < 2) {
            return Err(OrbifoldError::Multiplicity(bad));
        }
        let mut mults = mults.to_vec();
        mults.sort_unstable();
        Ok(OrbifoldCurve { genus, mults })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    /// Genus 0 with one mark, or with two unequal marks.
    pub fn is_bad(&self) -> bool {
        self.genus == 0
            && match self.mults.as_slice() {
                [_] => true,
                [a, b] => a != b,
                _ => false,
            }
    }
}

impl fmt::Display for OrbifoldCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.mults.iter().map(u64::to_string).collect();
        write!(f, "(g={}, ({}))", self.genus, list.join(","))
    }
}

/// `deg(K_C + Δ) = 2g - 2 + Σ (1 - 1/m_j)`.
pub fn curve_degree(c: &OrbifoldCurve) -> Rational {
    let base = Rational::from_integer(2 * c.genus as i64 - 2);
    c.mults.iter().fold(base, |acc, &m| {
        acc + Multiplicity::new(m).expect("m >= 2").coeff()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Trichotomy {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trichotomy::Hyperbolic => "Hyperbolic",
            Trichotomy::Euclidean => "Euclidean",
            Trichotomy::Spherical => "Spherical",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// Generator `a_i`, `b_i` or `γ_j` of the orbifold fundamental group presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    A(usize),
    B(usize),
    Gamma(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A(i) => write!(f, "a{i}"),
            Generator::B(i) => write!(f, "b{i}"),
            Generator::Gamma(j) => write!(f, "g{j}"),
        }
    }
}

/// A letter of a relator word: generator and exponent `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|w| word_string(w)).collect()
    }
}

fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = j - i;
        let exp = if w[i].inverse { -(run as i64) } else { run as i64 };
        parts.push(if exp == 1 {
            w[i].generator.to_string()
        } else {
            format!("{}^{}", w[i].generator, exp)
        });
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(Generator::to_string).collect();
        write!(
            f,
            "< {} | {} >",
            gens.join(", "),
            self.relator_strings().join(", ")
        )
    }
}

/// `⟨a_1, b_1, …, a_g, b_g, γ_1, …, γ_r | Π[a_i, b_i] Π γ_j = 1, γ_j^{m_j} = 1⟩`.
pub fn curve_presentation(c: &OrbifoldCurve) -> Presentation {
    let letter = |generator, inverse| Letter { generator, inverse };
    let g = c.genus as usize;
    let mut generators = Vec::new();
    let mut surface = Vec::new();
    for i in 1..=g {
        generators.push(Generator::A(i));
        generators.push(Generator::B(i));
        surface.extend([
            letter(Generator::A(i), false),
            letter(Generator::B(i), false),
            letter(Generator::A(i), true),
            letter(Generator::B(i), true),
        ]);
    }
    for j in 1..=c.mults.len() {
        generators.push(Generator::Gamma(j));
        surface.push(letter(Generator::Gamma(j), false));
    }
    let mut relators = vec![surface];
    for (j, &m) in c.mults.iter().enumerate() {
        relators.push(vec![letter(Generator::Gamma(j + 1), false); m as usize]);
    }
    Presentation {
        generators,
        relators,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveGroupInfo {
    pub degree: Rational,
    pub trichotomy: Trichotomy,
    pub presentation: Presentation,
    pub order: GroupOrder,
    pub almost_abelian: bool,
    /// `None` where rank is not meaningful (hyperbolic groups).
    pub rank: Option<u32>,
    /// Genus 0 with one mark or two unequal marks: the order is that of the
    /// presentation quotient, with no uniformization claimed.
    pub bad_orbifold: bool,
}

/// Orbifold fundamental group of a curve, read off from the sign of `deg(K_C + Δ)`.
pub fn curve_group(c: &OrbifoldCurve) -> CurveGroupInfo {
    let degree = curve_degree(c);
    let trichotomy = if degree.is_positive() {
        Trichotomy::Hyperbolic
    } else if degree.is_zero() {
        Trichotomy::Euclidean
    } else {
        Trichotomy::Spherical
    };
    let order = match (trichotomy, c.genus, c.mults.as_slice()) {
        // the product relation kills a single loop
        (_, 0, []) | (_, 0, [_]) => GroupOrder::Finite(1),
        (_, 0, &[a, b]) => GroupOrder::Finite(a.gcd(&b)),
        (Trichotomy::Spherical, 0, [_, _, _]) => {
            let order = Rational::from_integer(2) / degree.abs();
            debug_assert!(order.is_integer());
            GroupOrder::Finite(
                order
                    .numer()
                    .to_u64()
                    .expect("spherical triangle groups have order at most 120 or 2m"),
            )
        }
        _ => GroupOrder::Infinite,
    };
    let rank = match (trichotomy, order) {
        (_, GroupOrder::Finite(_)) => Some(0),
        (Trichotomy::Euclidean, _) => Some(2),
        _ => None,
    };
    CurveGroupInfo {
        presentation: curve_presentation(c),
        almost_abelian: trichotomy != Trichotomy::Hyperbolic,
        bad_orbifold: c.is_bad(),
        degree,
        trichotomy,
        order,
        rank,
    }
}

/// Special curves are those with `deg(K_C + Δ) ≤ 0`.
pub fn is_special_curve(c: &OrbifoldCurve) -> bool {
    !curve_degree(c).is_positive()
}

/// One irreducible component `F_i` of a fiber `f*(y) = Σ m_i F_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiberComponent {
    /// `m_i`.
    pub fiber_mult: u64,
    /// Orbifold multiplicity of `F_i` in `Δ_X` (1 if `F_i` is not in the boundary).
    pub orb_mult: Multiplicity,
}

impl FiberComponent {
    pub fn new(fiber_mult: u64, orb_mult: u64) -> Result<Self, OrbifoldError> {
        if fiber_mult == 0 {
            return Err(OrbifoldError::ZeroFiberMultiplicity);
        }
        let orb_mult = Multiplicity::new(orb_mult).map_err(|_| OrbifoldError::Multiplicity(orb_mult))?;
        Ok(FiberComponent { fiber_mult, orb_mult })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiberData {
    components: Vec<FiberComponent>,
}

impl FiberData {
    pub fn new(components: Vec<FiberComponent>) -> Result<Self, OrbifoldError> {
        if components.is_empty() {
            return Err(OrbifoldError::EmptyFiber);
        }
        Ok(FiberData { components })
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self, OrbifoldError> {
        let components = pairs
            .iter()
            .map(|&(m, o)| FiberComponent::new(m, o))
            .collect::<Result<Vec<_>, _>>()?;
        FiberData::new(components)
    }

    pub fn components(&self) -> &[FiberComponent] {
        &self.components
    }
}

/// `m_y = gcd_i (m_i · mult_Δ(F_i))`.
pub fn fiber_multiplicity(fd: &FiberData) -> u64 {
    // gcd of products may exceed u64 range in the products only; keep it exact.
    let g = fd
        .components
        .iter()
        .map(|c| BigInt::from(c.fiber_mult) * BigInt::from(c.orb_mult.get()))
        .fold(BigInt::from(0), |acc, x| acc.gcd(&x));
    g.to_u64().expect("gcd divides each product and fits when any factor does")
}

/// A fibration onto a curve of genus `base_genus`; unlisted points have multiplicity 1.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct FibrationData {
    pub base_genus: u64,
    pub marked_fibers: BTreeMap<String, FiberData>,
}

impl FibrationData {
    pub fn new(base_genus: u64) -> Self {
        FibrationData {
            base_genus,
            marked_fibers: BTreeMap::new(),
        }
    }

    pub fn with_fiber(mut self, label: impl Into<String>, fiber: FiberData) -> Self {
        self.marked_fibers.insert(label.into(), fiber);
        self
    }
}

/// The base curve marked with `m_y` at every point where `m_y ≥ 2`.
pub fn orbifold_base(f: &FibrationData) -> OrbifoldCurve {
    let mults: Vec<u64> = f
        .marked_fibers
        .values()
        .map(fiber_multiplicity)
        .filter(|&m| m >= 2)
        .collect();
    OrbifoldCurve::new(f.base_genus, &mults).expect("filtered to m >= 2")
}

/// `2g(C) - 2 + deg Δ*(f, Δ_X) > 0`.
pub fn is_general_type_fibration(f: &FibrationData) -> bool {
    curve_degree(&orbifold_base(f)).is_positive()
}

/// Kodaira dimension `κ(X, K_X + Δ_X)` of a surface pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kappa {
    NegInfinity,
    Zero,
    One,
    Two,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kappa::NegInfinity => "-inf",
            Kappa::Zero => "0",
            Kappa::One => "1",
            Kappa::Two => "2",
        })
    }
}

/// Specialness relative to the supplied fibrations onto curves: `κ < 2` and none
/// of them is of general type. Fibrations that were not supplied are not considered.
pub fn is_special_orbisurface(kappa: Kappa, fibrations: &[FibrationData]) -> bool {
    kappa < Kappa::Two && !fibrations.iter().any(is_general_type_fibration)
}

/// Outcome of the log minimal model program for the surface pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinimalModelOutcome {
    /// `K_S + Δ_S` is nef.
    Nef,
    /// Mori fiber space onto the given orbifold curve.
    MoriFiberOverCurve(OrbifoldCurve),
    /// `ρ(S) = 1` and `-(K_S + Δ_S)` ample.
    DelPezzo,
}

/// A fibration realizing `κ = 1`, together with its general orbifold fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kappa1Fibration {
    pub fibration: FibrationData,
    pub fiber: OrbifoldCurve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    kappa: Kappa,
    outcome: MinimalModelOutcome,
    kappa1_fibration: Option<Kappa1Fibration>,
}

impl SurfaceSummary {
    /// Rejects combinations the minimal model program cannot produce: a nef
    /// canonical class with `κ = -∞`, and Mori fiber spaces or Del Pezzo models
    /// with `κ ≥ 0`.
    pub fn new(
        kappa: Kappa,
        outcome: MinimalModelOutcome,
        kappa1_fibration: Option<Kappa1Fibration>,
    ) -> Result<Self, OrbifoldError> {
        match (&outcome, kappa) {
            (MinimalModelOutcome::Nef, Kappa::NegInfinity) => {
                return Err(OrbifoldError::InconsistentSummary(
                    "kappa = -inf is incompatible with a nef canonical class".into(),
                ))
            }
            (MinimalModelOutcome::MoriFiberOverCurve(_) | MinimalModelOutcome::DelPezzo, k)
                if k != Kappa::NegInfinity =>
            {
                return Err(OrbifoldError::InconsistentSummary(format!(
                    "a Mori fiber space or Del Pezzo model has kappa = -inf, got {k}"
                )))
            }
            _ => {}
        }
        if kappa1_fibration.is_some() && kappa != Kappa::One {
            return Err(OrbifoldError::InconsistentSummary(
                "a kappa-1 fibration was supplied but kappa != 1".into(),
            ));
        }
        Ok(SurfaceSummary {
            kappa,
            outcome,
            kappa1_fibration,
        })
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    pub fn outcome(&self) -> &MinimalModelOutcome {
        &self.outcome
    }

    pub fn kappa1_fibration(&self) -> Option<&Kappa1Fibration> {
        self.kappa1_fibration.as_ref()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProofBranch {
    Kappa1Fibration,
    MoriFiber,
    Kappa0Nef,
    DelPezzo,
}

impl fmt::Display for ProofBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofBranch::Kappa1Fibration => "Kappa1Fibration",
            ProofBranch::MoriFiber => "MoriFiber",
            ProofBranch::Kappa0Nef => "Kappa0Nef",
            ProofBranch::DelPezzo => "DelPezzo",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Conclusion {
    /// Almost abelian of even rank at most `rank_bound`.
    AlmostAbelian { rank_bound: u32, even_rank: bool },
    /// Finite, hence almost abelian of rank 0.
    Finite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub branch: ProofBranch,
    pub rationale: Vec<String>,
}

const RANK_BOUND: u32 = 4;

const MINIMAL_MODEL_SURJECTION: &str = "the group of the minimal model (S, D) surjects naturally \
     onto pi1(X, Delta_X), so almost abelianity passes from (S, D) to (X, Delta_X)";

/// Abelianity verdict for a special 2-dimensional geometric orbifold, following the
/// case split on `κ` and the minimal model outcome.
pub fn abelianity_verdict(s: &SurfaceSummary, special: bool) -> Result<Verdict, OrbifoldError> {
    if s.kappa == Kappa::Two {
        return Err(OrbifoldError::NotSpecial(
            "kappa = 2 (log general type)".into(),
        ));
    }
    if !special {
        return Err(OrbifoldError::NotSpecial(
            "the pair was declared non-special".into(),
        ));
    }
    let almost_abelian = Conclusion::AlmostAbelian {
        rank_bound: RANK_BOUND,
        even_rank: true,
    };
    match (&s.outcome, s.kappa) {
        (MinimalModelOutcome::Nef, Kappa::One) => {
            let mut rationale = vec![
                "kappa = 1: X fibres onto a curve C with general orbifold fibre of degree 0 \
                 (orbifold-elliptic), whose group is almost abelian"
                    .to_string(),
                "pi1(F, Delta_F) -> pi1(X, Delta_X) -> pi1(C, Delta*) -> 1 is exact".to_string(),
                "(C, Delta*) is special since (X, Delta_X) is; extensions of almost abelian \
                 groups along such fibrations stay almost abelian"
                    .to_string(),
            ];
            if let Some(k1) = &s.kappa1_fibration {
                let fiber = curve_group(&k1.fiber);
                if fiber.trichotomy != Trichotomy::Euclidean {
                    return Err(OrbifoldError::InconsistentSummary(format!(
                        "general fibre {} has degree {}, expected 0",
                        k1.fiber, fiber.degree
                    )));
                }
                let base = orbifold_base(&k1.fibration);
                if !is_special_curve(&base) {
                    return Err(OrbifoldError::NotSpecial(format!(
                        "the supplied kappa-1 fibration has general type orbifold base {base}"
                    )));
                }
                rationale.push(format!(
                    "checked: fibre {} is Euclidean, orbifold base {} has degree {}",
                    k1.fiber,
                    base,
                    curve_degree(&base)
                ));
            }
            Ok(Verdict {
                conclusion: almost_abelian,
                branch: ProofBranch::Kappa1Fibration,
                rationale,
            })
        }
        (MinimalModelOutcome::Nef, _) => Ok(Verdict {
            conclusion: almost_abelian,
            branch: ProofBranch::Kappa0Nef,
            rationale: vec![
                "kappa = 0 and K_S + D nef: by log abundance K_S + D is semi-ample, hence torsion"
                    .to_string(),
                "c1(S, D) = 0: the group of (S, D) is almost abelian of even rank at most 2 dim = 4"
                    .to_string(),
                MINIMAL_MODEL_SURJECTION.to_string(),
            ],
        }),
        (MinimalModelOutcome::MoriFiberOverCurve(base), _) => {
            if !is_special_curve(base) {
                return Err(OrbifoldError::NotSpecial(format!(
                    "the Mori fibration has general type orbifold base {base}"
                )));
            }
            Ok(Verdict {
                conclusion: almost_abelian,
                branch: ProofBranch::MoriFiber,
                rationale: vec![
                    "Mori fiber space over a special curve: the fibres are rational, hence special"
                        .to_string(),
                    format!(
                        "base {} has degree {} <= 0, so its group is almost abelian; \
                         argue as in the kappa = 1 fibration case",
                        base,
                        curve_degree(base)
                    ),
                ],
            })
        }
        (MinimalModelOutcome::DelPezzo, _) => Ok(Verdict {
            conclusion: Conclusion::Finite,
            branch: ProofBranch::DelPezzo,
            rationale: vec![
                "log Del Pezzo: c1(S, D) > 0, so the group of (S, D) is finite".to_string(),
                MINIMAL_MODEL_SURJECTION.to_string(),
            ],
        }),
    }
}
