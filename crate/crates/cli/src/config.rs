//! Workspace configuration: the TOML schema and its resolution into rings,
//! bimodules and triangular rings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use trialg::{Bimodule, FiniteRing, Modulus, RingSpec, TriangularRing, DEFAULT_ENUMERATION_BOUND};

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceConfig {
    pub modulus: u64,
    #[serde(default = "default_bound")]
    pub enumeration_bound: u64,
    /// Elements used by diagnostics on rings above the bound.
    #[serde(default = "default_sample")]
    pub diagnostic_sample: usize,
    #[serde(default)]
    pub rings: Vec<RingDef>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleDef>,
    #[serde(default)]
    pub triangulars: Vec<TriangularDef>,
    #[serde(default)]
    pub tasks: Vec<TaskDef>,
}

fn default_bound() -> u64 {
    DEFAULT_ENUMERATION_BOUND
}

fn default_sample() -> usize {
    64
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "builtin", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingKind {
    Zm,
    Mat {
        n: usize,
    },
    Ut {
        n: usize,
    },
    Product {
        factors: [String; 2],
    },
    Explicit {
        rank: usize,
        /// `structure_constants[i][j][l]`: coordinate `l` of `b_i b_j`.
        structure_constants: Vec<Vec<Vec<u64>>>,
        unity: Vec<u64>,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct RingDef {
    pub name: String,
    #[serde(flatten)]
    pub kind: RingKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BimoduleKind {
    Regular {
        ring: String,
    },
    Free {
        ring: String,
        n: usize,
    },
    Zero {
        left: String,
        right: String,
    },
    Explicit {
        left: String,
        right: String,
        rank: usize,
        left_action: Vec<Vec<Vec<u64>>>,
        right_action: Vec<Vec<Vec<u64>>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct BimoduleDef {
    pub name: String,
    #[serde(flatten)]
    pub kind: BimoduleKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangularDef {
    pub name: String,
    pub r: String,
    pub m: String,
    pub s: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticsKind {
    Centralizer,
    Delta,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum TaskSpec {
    #[serde(rename = "solve")]
    Solve {
        condition: String,
        ring: String,
        expect_cardinality: Option<String>,
    },
    #[serde(rename = "verify-thm-3-1")]
    VerifyCentralizers { triangular: String },
    #[serde(rename = "verify-thm-4-1")]
    VerifyEquivalence { triangular: String },
    #[serde(rename = "verify-corollaries")]
    VerifyCorollaries { triangular: String },
    #[serde(rename = "decompose")]
    Decompose {
        triangular: String,
        tau: PathBuf,
        delta: PathBuf,
    },
    #[serde(rename = "diagnostics")]
    Diagnostics {
        triangular: String,
        map: PathBuf,
        which: DiagnosticsKind,
        /// Expect at least one failing check (for negative fixtures).
        #[serde(default)]
        expect_failure: bool,
    },
    #[serde(rename = "properties")]
    Properties {
        ring: String,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

fn default_samples() -> usize {
    1000
}

impl TaskSpec {
    pub fn type_name(&self) -> &'static str {
        match self {
            TaskSpec::Solve { .. } => "solve",
            TaskSpec::VerifyCentralizers { .. } => "verify-thm-3-1",
            TaskSpec::VerifyEquivalence { .. } => "verify-thm-4-1",
            TaskSpec::VerifyCorollaries { .. } => "verify-corollaries",
            TaskSpec::Decompose { .. } => "decompose",
            TaskSpec::Diagnostics { .. } => "diagnostics",
            TaskSpec::Properties { .. } => "properties",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct TaskDef {
    pub name: Option<String>,
    #[serde(flatten)]
    pub spec: TaskSpec,
}

/// A parsed config together with the bytes it came from.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub config: WorkspaceConfig,
    pub base_dir: PathBuf,
    pub hash: String,
}

pub fn load(path: &Path) -> Result<LoadedConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut loaded = parse(&text)?;
    loaded.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(loaded)
}

pub fn parse(text: &str) -> Result<LoadedConfig, CliError> {
    let config: WorkspaceConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(LoadedConfig {
        config,
        base_dir: PathBuf::new(),
        hash: format!("{:x}", Sha256::digest(text.as_bytes())),
    })
}

/// Every named object of a config, constructed and validated.
pub struct Workspace {
    pub modulus: Modulus,
    pub rings: BTreeMap<String, Arc<FiniteRing>>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub triangulars: BTreeMap<String, TriangularRing>,
}

impl Workspace {
    /// A ring by name; triangular rings count as rings.
    pub fn ring(&self, name: &str) -> Result<Arc<FiniteRing>, CliError> {
        if let Some(t) = self.triangulars.get(name) {
            return Ok(t.ring().clone());
        }
        self.rings.get(name).cloned().ok_or_else(|| unresolved("ring", name))
    }

    pub fn triangular(&self, name: &str) -> Result<&TriangularRing, CliError> {
        self.triangulars
            .get(name)
            .ok_or_else(|| unresolved("triangular ring", name))
    }
}

fn unresolved(what: &str, name: &str) -> CliError {
    CliError::Config(format!("unknown {what} '{name}'"))
}

fn invalid(name: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{name}: {e}"))
}

pub fn resolve(cfg: &WorkspaceConfig) -> Result<Workspace, CliError> {
    let modulus = Modulus::new(cfg.modulus).map_err(|e| CliError::Config(e.to_string()))?;
    let mut names = std::collections::BTreeSet::new();
    for name in cfg
        .rings
        .iter()
        .map(|r| &r.name)
        .chain(cfg.bimodules.iter().map(|b| &b.name))
        .chain(cfg.triangulars.iter().map(|t| &t.name))
    {
        if !names.insert(name.as_str()) {
            return Err(CliError::Config(format!("name '{name}' is defined twice")));
        }
    }

    let mut rings: BTreeMap<String, Arc<FiniteRing>> = BTreeMap::new();
    for def in &cfg.rings {
        let ring = match &def.kind {
            RingKind::Zm => FiniteRing::builtin(&RingSpec::Zm, modulus),
            RingKind::Mat { n } => FiniteRing::builtin(&RingSpec::Mat(*n), modulus),
            RingKind::Ut { n } => FiniteRing::builtin(&RingSpec::UpperTriangular(*n), modulus),
            RingKind::Product { factors } => {
                let a = rings.get(&factors[0]).ok_or_else(|| unresolved("ring", &factors[0]))?;
                let b = rings.get(&factors[1]).ok_or_else(|| unresolved("ring", &factors[1]))?;
                FiniteRing::product(a, b)
            }
            RingKind::Explicit {
                rank,
                structure_constants,
                unity,
            } => FiniteRing::new(
                modulus,
                *rank,
                structure_constants.clone(),
                unity.clone(),
                def.name.clone(),
            ),
        }
        .map_err(|e| invalid(&def.name, e))?;
        rings.insert(def.name.clone(), Arc::new(ring.with_label(def.name.clone())));
    }

    let ring = |name: &str| rings.get(name).cloned().ok_or_else(|| unresolved("ring", name));
    let mut bimodules = BTreeMap::new();
    for def in &cfg.bimodules {
        let module = match &def.kind {
            BimoduleKind::Regular { ring: r } => Bimodule::regular(ring(r)?),
            BimoduleKind::Free { ring: r, n } => Bimodule::free(ring(r)?, *n),
            BimoduleKind::Zero { left, right } => Bimodule::zero(ring(left)?, ring(right)?),
            BimoduleKind::Explicit {
                left,
                right,
                rank,
                left_action,
                right_action,
            } => Bimodule::new(
                ring(left)?,
                ring(right)?,
                *rank,
                left_action.clone(),
                right_action.clone(),
                def.name.clone(),
            )
            .map_err(|e| invalid(&def.name, e))?,
        };
        bimodules.insert(def.name.clone(), module.with_label(def.name.clone()));
    }

    let mut triangulars = BTreeMap::new();
    for def in &cfg.triangulars {
        let m = bimodules.get(&def.m).ok_or_else(|| unresolved("bimodule", &def.m))?;
        let tri = TriangularRing::new(&ring(&def.r)?, m, &ring(&def.s)?).map_err(|e| invalid(&def.name, e))?;
        triangulars.insert(def.name.clone(), tri);
    }

    Ok(Workspace {
        modulus,
        rings,
        bimodules,
        triangulars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_and_derived_objects_resolve() {
        let text = r#"
modulus = 5

[[rings]]
name = "A"
builtin = "explicit"
rank = 1
structure_constants = [[[1]]]
unity = [1]

[[rings]]
name = "AA"
builtin = "product"
factors = ["A", "A"]

[[bimodules]]
name = "F"
kind = "free"
ring = "A"
n = 2

[[bimodules]]
name = "E"
kind = "explicit"
left = "A"
right = "A"
rank = 1
left_action = [[[1]]]
right_action = [[[1]]]

[[triangulars]]
name = "T"
r = "A"
m = "F"
s = "A"
"#;
        let loaded = parse(text).unwrap();
        let ws = resolve(&loaded.config).unwrap();
        assert_eq!(ws.rings["AA"].rank(), 2);
        assert_eq!(ws.triangular("T").unwrap().ring().rank(), 4);
        assert_eq!(ws.bimodules["E"].rank(), 1);
        assert!(ws.ring("T").is_ok());
        assert!(ws.ring("F").is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            "modulus = 9\n[[rings]]\nname = \"A\"\nbuiltin = \"zm\"\n[[rings]]\nname = \"A\"\nbuiltin = \"zm\"\n",
            "modulus = 9\n[[rings]]\nname = \"A\"\nbuiltin = \"explicit\"\nrank = 1\nstructure_constants = [[[1]]]\nunity = [2]\n",
            "modulus = 9\n[[rings]]\nname = \"P\"\nbuiltin = \"product\"\nfactors = [\"A\", \"B\"]\n",
            "modulus = 9\n[[tasks]]\ntype = \"mystery\"\n",
        ];
        for text in bad {
            let err = parse(text).and_then(|l| resolve(&l.config).map(|_| ()));
            assert!(matches!(err, Err(CliError::Config(_))), "{text}");
        }
    }

    #[test]
    fn hash_tracks_bytes() {
        let a = parse("modulus = 3\n").unwrap().hash;
        let b = parse("modulus = 3\n\n").unwrap().hash;
        assert_ne!(a, b);
        assert_eq!(a, parse("modulus = 3\n").unwrap().hash);
    }
}
