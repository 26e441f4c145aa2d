//! TOML input formats. Every number is a decimal integer; a float literal anywhere
//! is a parse error.

use std::path::Path;

use orbiklt::germ::{GermBranch, GermConfig};
use orbiklt::graph::{BranchAttachment, DualGraph};
use orbiklt::orbibase::{
    FiberData, FibrationData, Kappa, Kappa1Fibration, MinimalModelOutcome, OrbifoldCurve,
    SurfaceSummary,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Raw file bytes plus their SHA-256, read once.
pub struct Source {
    pub label: String,
    pub text: String,
    pub digest: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let digest = sha256_hex(&bytes);
        let text = String::from_utf8(bytes).map_err(|e| CliError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Ok(Source {
            label: path.display().to_string(),
            text,
            digest,
        })
    }

    pub fn from_str(label: &str, text: &str) -> Self {
        Source {
            label: label.to_string(),
            text: text.to_string(),
            digest: sha256_hex(text.as_bytes()),
        }
    }

    fn parse<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        toml::from_str(&self.text).map_err(|e| CliError::Parse {
            path: self.label.clone(),
            message: e.to_string().trim_end().to_string(),
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn invalid(src: &Source, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: src.label.clone(),
        message: message.into(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<u64>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    branches: Vec<GraphBranch>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphBranch {
    vertex: usize,
    mult: u64,
    #[serde(default = "one")]
    inter: u64,
}

fn one() -> u64 {
    1
}

/// `vertices = [e_1, ...]`, `edges = [[i, j], ...]`,
/// `branches = [{ vertex = i, mult = m, inter = k }, ...]` (`inter` defaults to 1).
pub fn parse_graph(src: &Source) -> Result<DualGraph, CliError> {
    let raw: GraphFile = src.parse()?;
    let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    let branches = raw
        .branches
        .iter()
        .enumerate()
        .map(|(k, b)| {
            BranchAttachment::new(b.vertex, b.mult, b.inter)
                .map_err(|e| invalid(src, format!("branches[{k}]: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DualGraph::new(&raw.vertices, &edges, branches)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GermFile {
    branches: Vec<GermFileBranch>,
    #[serde(default)]
    contact: Vec<[u64; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GermFileBranch {
    kind: String,
    p: Option<u64>,
    q: Option<u64>,
    mult: u64,
}

/// `branches = [{ kind = "smooth" | "cusp", p, q, mult }, ...]`,
/// `contact = [[i, j, t], ...]`; omitted pairs meet generically.
pub fn parse_germ(src: &Source) -> Result<GermConfig, CliError> {
    let raw: GermFile = src.parse()?;
    let mut branches = Vec::with_capacity(raw.branches.len());
    for (k, b) in raw.branches.iter().enumerate() {
        let branch = match (b.kind.as_str(), b.p, b.q) {
            ("smooth", None, None) => GermBranch::smooth(b.mult),
            ("smooth", _, _) => {
                return Err(invalid(src, format!("branches[{k}]: smooth branches take no p, q")))
            }
            ("cusp", Some(p), Some(q)) => GermBranch::cusp(p, q, b.mult),
            ("cusp", _, _) => {
                return Err(invalid(src, format!("branches[{k}]: cusp needs both p and q")))
            }
            (other, _, _) => {
                return Err(invalid(
                    src,
                    format!("branches[{k}].kind: expected \"smooth\" or \"cusp\", got {other:?}"),
                ))
            }
        }
        .map_err(|e| invalid(src, format!("branches[{k}]: {e}")))?;
        branches.push(branch);
    }
    let contacts: Vec<(usize, usize, u64)> = raw
        .contact
        .iter()
        .map(|c| (c[0] as usize, c[1] as usize, c[2]))
        .collect();
    Ok(GermConfig::new(branches, &contacts)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct FibrationFile {
    base_genus: u64,
    #[serde(default)]
    fibers: Vec<FiberEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberEntry {
    point: String,
    components: Vec<[u64; 2]>,
}

fn fibration_from(src: &Source, raw: &FibrationFile) -> Result<FibrationData, CliError> {
    let mut f = FibrationData::new(raw.base_genus);
    for entry in &raw.fibers {
        if f.marked_fibers.contains_key(&entry.point) {
            return Err(invalid(src, format!("fiber {:?} listed twice", entry.point)));
        }
        let pairs: Vec<(u64, u64)> = entry.components.iter().map(|c| (c[0], c[1])).collect();
        let fd = FiberData::from_pairs(&pairs)
            .map_err(|e| invalid(src, format!("fiber {:?}: {e}", entry.point)))?;
        f = f.with_fiber(entry.point.clone(), fd);
    }
    Ok(f)
}

/// `baseGenus = g`, `fibers = [{ point = "label", components = [[m, orbMult], ...] }, ...]`.
pub fn parse_fibration(src: &Source) -> Result<FibrationData, CliError> {
    let raw: FibrationFile = src.parse()?;
    fibration_from(src, &raw)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveEntry {
    genus: u64,
    #[serde(default)]
    mults: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct SummaryFile {
    kappa: String,
    outcome: String,
    special: bool,
    mori_base: Option<CurveEntry>,
    kappa1: Option<Kappa1Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Kappa1Entry {
    fiber: CurveEntry,
    fibration: FibrationFile,
}

pub fn parse_kappa(text: &str) -> Result<Kappa, String> {
    match text {
        "-inf" | "neg-inf" | "-infinity" => Ok(Kappa::NegInfinity),
        "0" => Ok(Kappa::Zero),
        "1" => Ok(Kappa::One),
        "2" => Ok(Kappa::Two),
        other => Err(format!("kappa must be one of -inf, 0, 1, 2; got {other:?}")),
    }
}

pub fn curve(genus: u64, mults: &[u64]) -> Result<OrbifoldCurve, CliError> {
    Ok(OrbifoldCurve::new(genus, mults)?)
}

/// `kappa = "-inf" | "0" | "1" | "2"`, `outcome = "nef" | "mori" | "del-pezzo"`,
/// `special = bool`, optional `[moriBase]` (`genus`, `mults`) and `[kappa1]` with a
/// `fiber` curve and a `fibration` table in the fibration format.
pub fn parse_summary(src: &Source) -> Result<(SurfaceSummary, bool), CliError> {
    let raw: SummaryFile = src.parse()?;
    let kappa = parse_kappa(&raw.kappa).map_err(|m| invalid(src, m))?;
    let outcome = match (raw.outcome.as_str(), &raw.mori_base) {
        ("nef", None) => MinimalModelOutcome::Nef,
        ("del-pezzo", None) => MinimalModelOutcome::DelPezzo,
        ("mori", Some(b)) => MinimalModelOutcome::MoriFiberOverCurve(curve(b.genus, &b.mults)?),
        ("mori", None) => return Err(invalid(src, "outcome \"mori\" needs a [moriBase] table")),
        ("nef" | "del-pezzo", Some(_)) => {
            return Err(invalid(src, "[moriBase] is only meaningful with outcome \"mori\""))
        }
        (other, _) => {
            return Err(invalid(
                src,
                format!("outcome must be nef, mori or del-pezzo; got {other:?}"),
            ))
        }
    };
    let kappa1 = match &raw.kappa1 {
        Some(k) => Some(Kappa1Fibration {
            fibration: fibration_from(src, &k.fibration)?,
            fiber: curve(k.fiber.genus, &k.fiber.mults)?,
        }),
        None => None,
    };
    Ok((SurfaceSummary::new(kappa, outcome, kappa1)?, raw.special))
}
