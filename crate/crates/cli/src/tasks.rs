//! Task preparation and execution.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use trialg::conditions::{decode_pair, gating_pairs, solve, Gating, Unknowns};
use trialg::{
    AdditiveMap, Condition, ConditionRegistry, FiniteRing, MapRecord, RingElement, SolveOptions, TheoremError,
    Verifier, VerifyOptions,
};

use crate::config::{DiagnosticsKind, LoadedConfig, TaskSpec, Workspace};
use crate::CliError;

/// A task with every reference resolved and every map file loaded.
pub struct Prepared {
    pub index: usize,
    pub name: String,
    pub kind: &'static str,
    job: Job,
}

enum Job {
    Solve {
        cond: Arc<dyn Condition>,
        ring: Arc<FiniteRing>,
        expect: Option<String>,
    },
    Centralizers(String),
    Equivalence(String),
    Corollaries(String),
    Decompose {
        triangular: String,
        tau: AdditiveMap,
        delta: AdditiveMap,
    },
    Diagnostics {
        triangular: String,
        map: AdditiveMap,
        which: DiagnosticsKind,
        expect_failure: bool,
    },
    Properties {
        ring: Arc<FiniteRing>,
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Passed,
    Failed,
    /// The task could not finish within the enumeration bound.
    BoundExceeded,
}

pub struct Outcome {
    pub status: Status,
    pub message: Option<String>,
    pub result: Value,
}

impl Outcome {
    fn passed(result: impl Serialize) -> Self {
        Outcome {
            status: Status::Passed,
            message: None,
            result: to_value(result),
        }
    }

    fn failed(message: String, result: impl Serialize) -> Self {
        Outcome {
            status: Status::Failed,
            message: Some(message),
            result: to_value(result),
        }
    }

    fn from_theorem_error(e: TheoremError) -> Self {
        let status = if e.is_bound_exceeded() {
            Status::BoundExceeded
        } else {
            Status::Failed
        };
        let result = match &e {
            TheoremError::TheoremViolated { step, witness } => json!({ "step": step, "witness": witness }),
            _ => Value::Null,
        };
        Outcome {
            status,
            message: Some(e.to_string()),
            result,
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}

fn load_map(base: &Path, rel: &Path, ring: &Arc<FiniteRing>) -> Result<AdditiveMap, CliError> {
    let path = base.join(rel);
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let rec: MapRecord =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    AdditiveMap::from_record(ring.clone(), &rec).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn prepare(loaded: &LoadedConfig, ws: &Workspace, registry: &ConditionRegistry) -> Result<Vec<Prepared>, CliError> {
    let mut out = Vec::new();
    for (index, def) in loaded.config.tasks.iter().enumerate() {
        let tri_ring = |name: &str| ws.triangular(name).map(|t| t.ring().clone());
        let job = match &def.spec {
            TaskSpec::Solve {
                condition,
                ring,
                expect_cardinality,
            } => Job::Solve {
                cond: registry.get(condition).ok_or_else(|| {
                    let known: Vec<&str> = registry.names().collect();
                    CliError::Config(format!("unknown condition '{condition}' (known: {})", known.join(", ")))
                })?,
                ring: ws.ring(ring)?,
                expect: expect_cardinality.clone(),
            },
            TaskSpec::VerifyCentralizers { triangular } => {
                ws.triangular(triangular)?;
                Job::Centralizers(triangular.clone())
            }
            TaskSpec::VerifyEquivalence { triangular } => {
                ws.triangular(triangular)?;
                Job::Equivalence(triangular.clone())
            }
            TaskSpec::VerifyCorollaries { triangular } => {
                ws.triangular(triangular)?;
                Job::Corollaries(triangular.clone())
            }
            TaskSpec::Decompose { triangular, tau, delta } => {
                let ring = tri_ring(triangular)?;
                Job::Decompose {
                    triangular: triangular.clone(),
                    tau: load_map(&loaded.base_dir, tau, &ring)?,
                    delta: load_map(&loaded.base_dir, delta, &ring)?,
                }
            }
            TaskSpec::Diagnostics {
                triangular,
                map,
                which,
                expect_failure,
            } => {
                let ring = tri_ring(triangular)?;
                Job::Diagnostics {
                    triangular: triangular.clone(),
                    map: load_map(&loaded.base_dir, map, &ring)?,
                    which: *which,
                    expect_failure: *expect_failure,
                }
            }
            TaskSpec::Properties { ring, samples } => Job::Properties {
                ring: ws.ring(ring)?,
                samples: *samples,
            },
        };
        let kind = def.spec.type_name();
        out.push(Prepared {
            index,
            name: def.name.clone().unwrap_or_else(|| kind.to_string()),
            kind,
            job,
        });
    }
    Ok(out)
}

/// Per-run state shared by tasks: options and one cached verifier per
/// triangular ring.
pub struct Runner<'a> {
    ws: &'a Workspace,
    opts: VerifyOptions,
    seed: u64,
    verifiers: BTreeMap<String, Verifier>,
}

impl<'a> Runner<'a> {
    pub fn new(ws: &'a Workspace, opts: VerifyOptions, seed: u64) -> Self {
        Runner {
            ws,
            opts,
            seed,
            verifiers: BTreeMap::new(),
        }
    }

    fn verifier(&mut self, name: &str) -> &Verifier {
        let (ws, opts) = (self.ws, self.opts);
        self.verifiers
            .entry(name.to_string())
            .or_insert_with(|| Verifier::new(ws.triangulars[name].clone(), opts))
    }

    pub fn run(&mut self, task: &Prepared) -> Outcome {
        match &task.job {
            Job::Solve { cond, ring, expect } => run_solve(cond.as_ref(), ring, expect.as_deref(), &self.opts.solve),
            Job::Centralizers(t) => match self.verifier(t).verify_theorem_3_1() {
                Ok(r) => Outcome::passed(r),
                Err(e) => Outcome::from_theorem_error(e),
            },
            Job::Equivalence(t) => match self.verifier(t).verify_theorem_4_1() {
                Ok(r) => Outcome::passed(r),
                Err(e) => Outcome::from_theorem_error(e),
            },
            Job::Corollaries(t) => match self.verifier(t).verify_corollaries() {
                Ok(r) => Outcome::passed(r),
                Err(e) => Outcome::from_theorem_error(e),
            },
            Job::Decompose { triangular, tau, delta } => match self.verifier(triangular).decompose_tau(tau, delta) {
                Ok(d) => Outcome::passed(json!({
                    "w": d.w,
                    "delta_cap": d.delta_cap.to_record(),
                    "delta_prime": d.delta_prime.to_record(),
                    "d": d.d.to_record(),
                    "tau_one": d.tau_one,
                    "checks": d.checks,
                })),
                Err(e) => Outcome::from_theorem_error(e),
            },
            Job::Diagnostics {
                triangular,
                map,
                which,
                expect_failure,
            } => {
                let v = self.verifier(triangular);
                let exhaustive = v.ring().order_within(v.options().solve.bound).is_ok();
                let rec = match which {
                    DiagnosticsKind::Centralizer => v.peirce_diagnostics_centralizer(map),
                    DiagnosticsKind::Delta => v.peirce_diagnostics_delta(map),
                };
                let result = json!({
                    "which": which_name(*which),
                    "exhaustive": exhaustive,
                    "elements": v.diagnostic_elements().len(),
                    "checks": rec,
                });
                let failing: Vec<&str> = rec.failures().map(|c| c.name.as_str()).collect();
                match (failing.is_empty(), expect_failure) {
                    (true, false) => Outcome::passed(result),
                    (false, true) => Outcome {
                        status: Status::Passed,
                        message: Some(format!("expected failures: {}", failing.join(", "))),
                        result,
                    },
                    (true, true) => Outcome::failed("expected a failing check, none failed".into(), result),
                    (false, false) => Outcome::failed(format!("failing checks: {}", failing.join(", ")), result),
                }
            }
            Job::Properties { ring, samples } => run_properties(ring, *samples, self.seed, &self.opts.solve),
        }
    }
}

fn which_name(w: DiagnosticsKind) -> &'static str {
    match w {
        DiagnosticsKind::Centralizer => "centralizer",
        DiagnosticsKind::Delta => "delta",
    }
}

fn bound_outcome(e: impl std::fmt::Display) -> Outcome {
    Outcome {
        status: Status::BoundExceeded,
        message: Some(e.to_string()),
        result: Value::Null,
    }
}

fn run_solve(cond: &dyn Condition, ring: &Arc<FiniteRing>, expect: Option<&str>, opts: &SolveOptions) -> Outcome {
    let spec = cond.spec();
    let module = match solve(cond, ring, opts) {
        Ok(m) => m,
        Err(e) => return bound_outcome(e),
    };
    let cardinality = module.cardinality().to_string();
    let layout = match spec.unknowns {
        Unknowns::Single => "row-major k x k matrix of the map",
        Unknowns::Joint => "delta entries then tau entries, each row-major k x k",
    };
    let result = json!({
        "condition": cond.name(),
        "statement": cond.statement(),
        "ring": ring.label(),
        "rank": ring.rank(),
        "gating": spec.gating,
        "unknowns": spec.unknowns,
        "layout": layout,
        "cardinality": cardinality,
        "generators": module.generator_vecs(),
    });
    match expect {
        Some(want) if want != cardinality => {
            Outcome::failed(format!("expected cardinality {want}, found {cardinality}"), result)
        }
        _ => Outcome::passed(result),
    }
}

#[derive(Serialize)]
struct PropertyResult {
    name: String,
    checked: usize,
    violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn random_element(rng: &mut ChaCha8Rng, ring: &FiniteRing) -> RingElement {
    let m = ring.modulus().get();
    ring.element((0..ring.rank()).map(|_| rng.gen_range(0..m)).collect())
        .expect("rank matches")
}

/// Seeded spot checks: ring axioms on random triples, and every registered
/// condition's residual on random elements of its solution module.
fn run_properties(ring: &Arc<FiniteRing>, samples: usize, seed: u64, opts: &SolveOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::new();

    let mut axioms = PropertyResult {
        name: "ring-axioms".into(),
        checked: 0,
        violations: 0,
        witness: None,
    };
    let one = ring.one();
    for _ in 0..samples {
        let (a, b, c) = (
            random_element(&mut rng, ring),
            random_element(&mut rng, ring),
            random_element(&mut rng, ring),
        );
        let ok = ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c))
            && ring.mul(&a, &ring.add(&b, &c)) == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            && ring.mul(&ring.add(&a, &b), &c) == ring.add(&ring.mul(&a, &c), &ring.mul(&b, &c))
            && ring.mul(&one, &a) == a
            && ring.mul(&a, &one) == a;
        axioms.checked += 1;
        if !ok {
            axioms.violations += 1;
            axioms.witness.get_or_insert_with(|| format!("({a}, {b}, {c})"));
        }
    }
    results.push(axioms);

    let registry = ConditionRegistry::builtin();
    let m = ring.modulus().get();
    for name in registry.names() {
        let cond = registry.get(name).expect("listed");
        let spec = cond.spec();
        let module = match solve(cond.as_ref(), ring, opts) {
            Ok(module) => module,
            Err(e) => return bound_outcome(e),
        };
        // zero-product gated identities only hold on zero-product pairs
        let zp = if spec.gating == Gating::ZeroProductPairs {
            match gating_pairs(Gating::ZeroProductPairs, ring, opts.bound) {
                Ok(p) => Some(p),
                Err(e) => return bound_outcome(e),
            }
        } else {
            None
        };
        let gens = module.generator_vecs();
        let mut res = PropertyResult {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            witness: None,
        };
        for _ in 0..samples.div_ceil(10).max(1) {
            let mut v = vec![0u64; module.ambient_dim()];
            for g in &gens {
                let a = rng.gen_range(0..m);
                v.iter_mut().zip(g).for_each(|(x, y)| *x = (*x + a * y) % m);
            }
            let maps = match spec.unknowns {
                Unknowns::Single => vec![AdditiveMap::from_vec(ring.clone(), &v).expect("dimension matches")],
                Unknowns::Joint => {
                    let (d, t) = decode_pair(ring, &v);
                    vec![d, t]
                }
            };
            let (x, y) = match &zp {
                Some(pairs) => pairs
                    .choose(&mut rng)
                    .cloned()
                    .expect("(0, 0) is always a zero-product pair"),
                None => (random_element(&mut rng, ring), random_element(&mut rng, ring)),
            };
            res.checked += 1;
            if !cond.residual(&maps, &x, &y).is_zero() {
                res.violations += 1;
                res.witness
                    .get_or_insert_with(|| format!("map {v:?} at X = {x}, Y = {y}"));
            }
        }
        results.push(res);
    }

    let bad: Vec<&str> = results
        .iter()
        .filter(|r| r.violations > 0)
        .map(|r| r.name.as_str())
        .collect();
    let result = json!({ "ring": ring.label(), "seed": seed, "samples": samples, "properties": results });
    if bad.is_empty() {
        Outcome::passed(result)
    } else {
        Outcome::failed(format!("violations in: {}", bad.join(", ")), result)
    }
}
