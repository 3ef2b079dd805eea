//! Functional conditions compiled to linear systems over `Z_m`.
//!
//! Every condition is a [`Condition`] strategy: it names a gating set of
//! element pairs and a residual that is linear in the unknown map(s).
//! Compiling evaluates the residual on each unit map, which gives one
//! constraint column per unknown matrix entry. Strategies live in a
//! [`ConditionRegistry`] and are looked up by name at runtime.
//!
//! Unknown layout: a single map uses its row-major entries `[0, k^2)`. Joint
//! `(delta, tau)` systems put `delta` at `[0, k^2)` and `tau` at `[k^2, 2k^2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::RingError;
use crate::funcmap::{residual, unit_map, AdditiveMap};
use crate::ringcore::{FiniteRing, RingElement, DEFAULT_ENUMERATION_BOUND};
use crate::zmlinalg::{kernel, module_project, MatrixZm, RowAccumulator, SolutionModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionKind {
    ZpCentralizer,
    ZpSelf,
    ZpPair,
    JordanCentralizerId,
    XyxId,
    DerivationId,
    JordanDerivationId,
    GenDerivationId,
    GenJordanDerivationId,
    JgdViaId,
}

/// Which `(X, Y)` pairs a condition is imposed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gating {
    /// All pairs with `XY = YX = 0` (needs enumeration).
    ZeroProductPairs,
    /// Basis pairs; enough for identities additive in both slots.
    BasisPairs,
    /// `X` over all elements, `Y` over the basis (identity linear in `Y` only).
    ElementsByBasis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unknowns {
    Single,
    /// `(delta, tau)`.
    Joint,
}

impl Unknowns {
    pub fn arity(self) -> usize {
        match self {
            Unknowns::Single => 1,
            Unknowns::Joint => 2,
        }
    }
}

/// Symbolic descriptor of a condition. Gating and unknowns are fixed by the
/// kind:
///
/// | kind | gating | unknowns |
/// |------|--------|----------|
/// | `ZpCentralizer`, `ZpSelf` | zero-product pairs | single |
/// | `ZpPair` | zero-product pairs | joint |
/// | `XyxId` | all `X`, basis `Y` | single |
/// | `JgdViaId` | basis pairs | joint |
/// | every other identity | basis pairs | single |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionSpec {
    pub kind: ConditionKind,
    pub gating: Gating,
    pub unknowns: Unknowns,
}

impl ConditionSpec {
    pub fn of(kind: ConditionKind) -> Self {
        use ConditionKind::*;
        let (gating, unknowns) = match kind {
            ZpCentralizer | ZpSelf => (Gating::ZeroProductPairs, Unknowns::Single),
            ZpPair => (Gating::ZeroProductPairs, Unknowns::Joint),
            XyxId => (Gating::ElementsByBasis, Unknowns::Single),
            JgdViaId => (Gating::BasisPairs, Unknowns::Joint),
            JordanCentralizerId | DerivationId | JordanDerivationId | GenDerivationId | GenJordanDerivationId => {
                (Gating::BasisPairs, Unknowns::Single)
            }
        };
        ConditionSpec { kind, gating, unknowns }
    }
}

/// A functional condition on one map, or on a `(delta, tau)` pair.
pub trait Condition: Send + Sync {
    fn name(&self) -> &'static str;

    fn spec(&self) -> ConditionSpec;

    /// Human-readable statement of the condition.
    fn statement(&self) -> &'static str;

    /// Value that must vanish at `(x, y)`. Must be linear in `maps`, which
    /// holds one map for single conditions and `[delta, tau]` for joint ones.
    fn residual(&self, maps: &[AdditiveMap], x: &RingElement, y: &RingElement) -> RingElement;
}

impl fmt::Debug for dyn Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Condition").field("name", &self.name()).finish()
    }
}

macro_rules! condition {
    ($ty:ident, $kind:ident, $name:literal, $stmt:literal, |$maps:ident, $x:ident, $y:ident| $body:expr) => {
        #[derive(Clone, Copy, Debug, Default)]
        pub struct $ty;

        impl Condition for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn spec(&self) -> ConditionSpec {
                ConditionSpec::of(ConditionKind::$kind)
            }

            fn statement(&self) -> &'static str {
                $stmt
            }

            fn residual(&self, $maps: &[AdditiveMap], $x: &RingElement, $y: &RingElement) -> RingElement {
                $body
            }
        }
    };
}

condition!(
    ZpCentralizer,
    ZpCentralizer,
    "zp-centralizer",
    "XY = YX = 0 => X f(Y) + f(Y) X = 0",
    |maps, x, y| residual::zp_centralizer(&maps[0], x, y)
);
condition!(
    ZpSelf,
    ZpSelf,
    "zp-self",
    "XY = YX = 0 => X t(Y) + t(X) Y + Y t(X) + t(Y) X = 0",
    |maps, x, y| residual::pair_terms(&maps[0], &maps[0], x, y)
);
condition!(
    ZpPair,
    ZpPair,
    "zp-pair",
    "XY = YX = 0 => X t(Y) + d(X) Y + Y d(X) + t(Y) X = 0",
    |maps, x, y| residual::pair_terms(&maps[0], &maps[1], x, y)
);
condition!(
    JordanCentralizerId,
    JordanCentralizerId,
    "jordan-centralizer",
    "f(XY + YX) = X f(Y) + f(Y) X",
    |maps, x, y| residual::jordan_centralizer(&maps[0], x, y)
);
condition!(XyxId, XyxId, "xyx", "f(XYX) = X f(Y) X", |maps, x, y| residual::xyx(
    &maps[0], x, y
));
condition!(
    DerivationId,
    DerivationId,
    "derivation",
    "f(XY) = f(X) Y + X f(Y)",
    |maps, x, y| residual::derivation(&maps[0], x, y)
);
condition!(
    JordanDerivationId,
    JordanDerivationId,
    "jordan-derivation",
    "f(XY + YX) = f(X) Y + X f(Y) + f(Y) X + Y f(X)",
    |maps, x, y| residual::jordan_derivation(&maps[0], x, y)
);
condition!(
    GenDerivationId,
    GenDerivationId,
    "generalized-derivation",
    "f(XY) = f(X) Y + X f(Y) - X f(1) Y",
    |maps, x, y| residual::generalized_derivation(&maps[0], x, y)
);
condition!(
    GenJordanDerivationId,
    GenJordanDerivationId,
    "generalized-jordan-derivation",
    "f(XY + YX) = f(X) Y + X f(Y) + f(Y) X + Y f(X) - X f(1) Y - Y f(1) X",
    |maps, x, y| residual::generalized_jordan_derivation(&maps[0], x, y)
);
condition!(
    JgdViaId,
    JgdViaId,
    "jgd-via",
    "t(XY + YX) = X t(Y) + d(X) Y + t(Y) X + Y d(X)",
    |maps, x, y| residual::jgd_via(&maps[1], &maps[0], x, y)
);

/// Conditions by name.
pub struct ConditionRegistry {
    entries: BTreeMap<&'static str, Arc<dyn Condition>>,
}

impl ConditionRegistry {
    pub fn empty() -> Self {
        ConditionRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Every built-in condition.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(ZpCentralizer));
        reg.register(Arc::new(ZpSelf));
        reg.register(Arc::new(ZpPair));
        reg.register(Arc::new(JordanCentralizerId));
        reg.register(Arc::new(XyxId));
        reg.register(Arc::new(DerivationId));
        reg.register(Arc::new(JordanDerivationId));
        reg.register(Arc::new(GenDerivationId));
        reg.register(Arc::new(GenJordanDerivationId));
        reg.register(Arc::new(JgdViaId));
        reg
    }

    /// Adds a condition, replacing any previous one with the same name.
    pub fn register(&mut self, cond: Arc<dyn Condition>) {
        self.entries.insert(cond.name(), cond);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Condition>> {
        self.entries.get(name).cloned()
    }

    pub fn by_kind(&self, kind: ConditionKind) -> Option<Arc<dyn Condition>> {
        self.entries.values().find(|c| c.spec().kind == kind).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for ConditionRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// The built-in condition of a kind.
pub fn condition(kind: ConditionKind) -> Arc<dyn Condition> {
    use ConditionKind::*;
    match kind {
        ZpCentralizer => Arc::new(self::ZpCentralizer),
        ZpSelf => Arc::new(self::ZpSelf),
        ZpPair => Arc::new(self::ZpPair),
        JordanCentralizerId => Arc::new(self::JordanCentralizerId),
        XyxId => Arc::new(self::XyxId),
        DerivationId => Arc::new(self::DerivationId),
        JordanDerivationId => Arc::new(self::JordanDerivationId),
        GenDerivationId => Arc::new(self::GenDerivationId),
        GenJordanDerivationId => Arc::new(self::GenJordanDerivationId),
        JgdViaId => Arc::new(self::JgdViaId),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest ring order that may be enumerated.
    pub bound: u64,
    /// Threads used to split the gating set. Never changes the result.
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            bound: DEFAULT_ENUMERATION_BOUND,
            workers: 1,
        }
    }
}

/// The gating pairs of `gating`, in deterministic order.
pub fn gating_pairs(
    gating: Gating,
    ring: &FiniteRing,
    bound: u64,
) -> Result<Vec<(RingElement, RingElement)>, RingError> {
    match gating {
        Gating::ZeroProductPairs => ring.zero_product_pairs(bound),
        Gating::BasisPairs => {
            let basis = ring.basis_elements();
            Ok(basis
                .iter()
                .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
                .collect())
        }
        Gating::ElementsByBasis => {
            let elems = ring.elements(bound)?;
            let basis = ring.basis_elements();
            Ok(elems
                .iter()
                .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
                .collect())
        }
    }
}

/// Where a condition's map arguments sit inside the unknown vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Use the condition's own layout.
    Own,
    /// A single-map condition imposed on `delta` of a joint system.
    Delta,
    /// A single-map condition imposed on `tau` of a joint system.
    Tau,
}

struct Block<'a> {
    cond: &'a dyn Condition,
    placement: Placement,
    pairs: Vec<(RingElement, RingElement)>,
}

fn unknown_maps(
    ring: &Arc<FiniteRing>,
    cond: &dyn Condition,
    placement: Placement,
    n: usize,
) -> Vec<Option<Vec<AdditiveMap>>> {
    let k2 = ring.rank() * ring.rank();
    let zero = AdditiveMap::zero(ring.clone());
    (0..n)
        .map(|u| match (cond.spec().unknowns, placement) {
            (Unknowns::Single, Placement::Own) => Some(vec![unit_map(ring, u)]),
            (Unknowns::Joint, _) => Some(if u < k2 {
                vec![unit_map(ring, u), zero.clone()]
            } else {
                vec![zero.clone(), unit_map(ring, u - k2)]
            }),
            (Unknowns::Single, Placement::Delta) => (u < k2).then(|| vec![unit_map(ring, u)]),
            (Unknowns::Single, Placement::Tau) => (u >= k2).then(|| vec![unit_map(ring, u - k2)]),
        })
        .collect()
}

fn constraint_rows(
    ring: &Arc<FiniteRing>,
    block: &Block<'_>,
    units: &[Option<Vec<AdditiveMap>>],
    pairs: &[(RingElement, RingElement)],
    mut sink: impl FnMut(Vec<u64>),
) {
    let k = ring.rank();
    for (x, y) in pairs {
        let cols: Vec<Option<RingElement>> = units
            .iter()
            .map(|maps| maps.as_ref().map(|m| block.cond.residual(m, x, y)))
            .collect();
        for l in 0..k {
            sink(cols.iter().map(|c| c.as_ref().map_or(0, |v| v.coords()[l])).collect());
        }
    }
}

fn assemble(ring: &Arc<FiniteRing>, blocks: &[Block<'_>], n: usize, workers: usize) -> SolutionModule {
    let md = ring.modulus();
    let mut total = RowAccumulator::new(md, n);
    for block in blocks {
        let units = unknown_maps(ring, block.cond, block.placement, n);
        let workers = workers.max(1).min(block.pairs.len().max(1));
        if workers == 1 {
            constraint_rows(ring, block, &units, &block.pairs, |r| total.push(r));
            continue;
        }
        let chunk = block.pairs.len().div_ceil(workers);
        let parts: Vec<RowAccumulator> = thread::scope(|s| {
            let handles: Vec<_> = block
                .pairs
                .chunks(chunk)
                .map(|pairs| {
                    let units = &units;
                    s.spawn(move || {
                        let mut acc = RowAccumulator::new(md, n);
                        constraint_rows(ring, block, units, pairs, |r| acc.push(r));
                        acc
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        for part in parts {
            total.merge(part);
        }
    }
    total.finish()
}

fn blocks_for<'a>(
    ring: &FiniteRing,
    parts: &[(&'a dyn Condition, Placement)],
    bound: u64,
) -> Result<Vec<Block<'a>>, RingError> {
    parts
        .iter()
        .map(|&(cond, placement)| {
            Ok(Block {
                cond,
                placement,
                pairs: gating_pairs(cond.spec().gating, ring, bound)?,
            })
        })
        .collect()
}

/// Constraint matrix (Howell form of all constraint rows) whose kernel is
/// the solution set of `cond`.
pub fn compile(cond: &dyn Condition, ring: &Arc<FiniteRing>, opts: &SolveOptions) -> Result<MatrixZm, RingError> {
    let n = cond.spec().unknowns.arity() * ring.rank() * ring.rank();
    let blocks = blocks_for(ring, &[(cond, Placement::Own)], opts.bound)?;
    Ok(assemble(ring, &blocks, n, opts.workers).generators().clone())
}

/// Every constraint row, without deduplication.
pub fn compile_raw(cond: &dyn Condition, ring: &Arc<FiniteRing>, bound: u64) -> Result<MatrixZm, RingError> {
    let n = cond.spec().unknowns.arity() * ring.rank() * ring.rank();
    let blocks = blocks_for(ring, &[(cond, Placement::Own)], bound)?;
    let units = unknown_maps(ring, cond, Placement::Own, n);
    let mut rows = Vec::new();
    constraint_rows(ring, &blocks[0], &units, &blocks[0].pairs, |r| rows.push(r));
    Ok(MatrixZm::from_rows(ring.modulus(), n, &rows).expect("consistent widths"))
}

/// All maps (or `(delta, tau)` pairs) satisfying `cond`.
pub fn solve(cond: &dyn Condition, ring: &Arc<FiniteRing>, opts: &SolveOptions) -> Result<SolutionModule, RingError> {
    Ok(kernel(&compile(cond, ring, opts)?))
}

pub fn solve_kind(
    kind: ConditionKind,
    ring: &Arc<FiniteRing>,
    opts: &SolveOptions,
) -> Result<SolutionModule, RingError> {
    solve(condition(kind).as_ref(), ring, opts)
}

/// Joint `(delta, tau)` solutions of several conditions at once.
pub fn solve_joint(
    parts: &[(&dyn Condition, Placement)],
    ring: &Arc<FiniteRing>,
    opts: &SolveOptions,
) -> Result<SolutionModule, RingError> {
    let n = 2 * ring.rank() * ring.rank();
    let blocks = blocks_for(ring, parts, opts.bound)?;
    Ok(kernel(assemble(ring, &blocks, n, opts.workers).generators()))
}

pub fn tau_coords(ring: &FiniteRing) -> Vec<usize> {
    let k2 = ring.rank() * ring.rank();
    (k2..2 * k2).collect()
}

pub fn delta_coords(ring: &FiniteRing) -> Vec<usize> {
    (0..ring.rank() * ring.rank()).collect()
}

/// `(delta, tau)` with `delta` satisfying the zero-product self condition and
/// the pair satisfying the zero-product pair condition.
pub fn joint_pair_solutions(ring: &Arc<FiniteRing>, opts: &SolveOptions) -> Result<SolutionModule, RingError> {
    solve_joint(&[(&ZpSelf, Placement::Delta), (&ZpPair, Placement::Own)], ring, opts)
}

/// All `tau` for which some `delta` satisfies both zero-product conditions.
pub fn tau_solutions_of_pair_condition(
    ring: &Arc<FiniteRing>,
    opts: &SolveOptions,
) -> Result<SolutionModule, RingError> {
    let joint = joint_pair_solutions(ring, opts)?;
    Ok(module_project(&joint, &tau_coords(ring)).expect("tau coordinates are in range"))
}

/// `(delta, tau)` with `delta` a Jordan derivation and `tau` a Jordan
/// generalized derivation via `delta`.
pub fn joint_jgd_solutions(ring: &Arc<FiniteRing>, opts: &SolveOptions) -> Result<SolutionModule, RingError> {
    solve_joint(
        &[(&JordanDerivationId, Placement::Delta), (&JgdViaId, Placement::Own)],
        ring,
        opts,
    )
}

/// All Jordan generalized derivations (existential over `delta`).
pub fn tau_solutions_of_jgd(ring: &Arc<FiniteRing>, opts: &SolveOptions) -> Result<SolutionModule, RingError> {
    let joint = joint_jgd_solutions(ring, opts)?;
    Ok(module_project(&joint, &tau_coords(ring)).expect("tau coordinates are in range"))
}

/// Decodes a single-map solution vector.
pub fn decode_map(ring: &Arc<FiniteRing>, v: &[u64]) -> AdditiveMap {
    AdditiveMap::from_vec(ring.clone(), v).expect("vector has k^2 entries")
}

/// Decodes a joint solution vector into `(delta, tau)`.
pub fn decode_pair(ring: &Arc<FiniteRing>, v: &[u64]) -> (AdditiveMap, AdditiveMap) {
    let k2 = ring.rank() * ring.rank();
    (decode_map(ring, &v[..k2]), decode_map(ring, &v[k2..]))
}

/// Encodes `(delta, tau)` in the joint layout.
pub fn encode_pair(delta: &AdditiveMap, tau: &AdditiveMap) -> Vec<u64> {
    let mut v = delta.to_vec();
    v.extend(tau.to_vec());
    v
}

/// The module of maps `{left_mult(c) : c in Z(R)}`.
pub fn centralizer_module(ring: &Arc<FiniteRing>) -> SolutionModule {
    maps_from_center(ring, |c| AdditiveMap::left_mult(ring.clone(), c))
}

/// The module of maps `{right_mult(c) : c in Z(R)}`.
pub fn central_right_mult_module(ring: &Arc<FiniteRing>) -> SolutionModule {
    maps_from_center(ring, |c| AdditiveMap::right_mult(ring.clone(), c))
}

fn maps_from_center(ring: &Arc<FiniteRing>, f: impl Fn(&RingElement) -> AdditiveMap) -> SolutionModule {
    let gens: Vec<Vec<u64>> = ring
        .center()
        .generator_vecs()
        .into_iter()
        .map(|c| f(&ring.element(c).expect("rank matches")).to_vec())
        .collect();
    let k = ring.rank();
    SolutionModule::span_of(ring.modulus(), k * k, &gens).expect("consistent widths")
}

/// First gated pair where `maps` violate `cond`, if any.
pub fn first_violation(
    cond: &dyn Condition,
    maps: &[AdditiveMap],
    ring: &FiniteRing,
    bound: u64,
) -> Result<Option<(RingElement, RingElement)>, RingError> {
    let pairs = gating_pairs(cond.spec().gating, ring, bound)?;
    Ok(pairs.into_iter().find(|(x, y)| !cond.residual(maps, x, y).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::RingSpec;
    use crate::zmlinalg::Modulus;

    fn ring(spec: RingSpec, m: u64) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::builtin(&spec, Modulus::new(m).unwrap()).unwrap())
    }

    #[test]
    fn registry_lookup() {
        let reg = ConditionRegistry::builtin();
        assert_eq!(reg.names().count(), 10);
        for name in reg.names() {
            let c = reg.get(name).unwrap();
            assert_eq!(c.name(), name);
            assert_eq!(reg.by_kind(c.spec().kind).unwrap().name(), name);
            assert_eq!(condition(c.spec().kind).name(), name);
        }
        assert!(reg.get("nope").is_none());
        assert_eq!(ZpSelf.spec().unknowns, Unknowns::Single);
        assert_eq!(ZpPair.spec().unknowns, Unknowns::Joint);
    }

    #[test]
    fn zp_centralizer_on_z3() {
        let z3 = ring(RingSpec::Zm, 3);
        let s = solve(&ZpCentralizer, &z3, &SolveOptions::default()).unwrap();
        assert_eq!(s.cardinality_u64(), Some(3));
        assert_eq!(s, centralizer_module(&z3));
    }

    #[test]
    fn derivations_of_z3_vanish() {
        let z3 = ring(RingSpec::Zm, 3);
        assert!(solve(&DerivationId, &z3, &SolveOptions::default()).unwrap().is_zero());
    }

    #[test]
    fn derivations_inside_jordan_derivations() {
        let t = ring(RingSpec::UpperTriangular(2), 3);
        let o = SolveOptions::default();
        let d = solve(&DerivationId, &t, &o).unwrap();
        let j = solve(&JordanDerivationId, &t, &o).unwrap();
        assert!(d.is_subset_of(&j).unwrap());
    }

    #[test]
    fn dedup_and_workers_do_not_change_kernel() {
        let t = ring(RingSpec::UpperTriangular(2), 3);
        for cond in [&ZpCentralizer as &dyn Condition, &ZpSelf, &XyxId, &JordanDerivationId] {
            let raw = kernel(&compile_raw(cond, &t, 1000).unwrap());
            let one = solve(cond, &t, &SolveOptions::default()).unwrap();
            let four = solve(
                cond,
                &t,
                &SolveOptions {
                    bound: 1000,
                    workers: 4,
                },
            )
            .unwrap();
            assert_eq!(raw, one, "{}", cond.name());
            assert_eq!(one, four, "{}", cond.name());
        }
    }

    #[test]
    fn pair_condition_contains_derivations_and_central_multiples() {
        let t = ring(RingSpec::UpperTriangular(2), 3);
        let o = SolveOptions::default();
        let taus = tau_solutions_of_pair_condition(&t, &o).unwrap();
        for d in solve(&DerivationId, &t, &o).unwrap().generator_vecs() {
            assert!(taus.contains(&d).unwrap());
        }
        let c = AdditiveMap::right_mult(t.clone(), &t.scale(2, &t.one()));
        assert!(taus.contains(&c.to_vec()).unwrap());
    }

    #[test]
    fn generators_pass_pointwise_recheck() {
        let t = ring(RingSpec::UpperTriangular(2), 3);
        let o = SolveOptions::default();
        for cond in ConditionRegistry::builtin().entries.values() {
            let s = solve(cond.as_ref(), &t, &o).unwrap();
            for g in s.generator_vecs() {
                let maps = match cond.spec().unknowns {
                    Unknowns::Single => vec![decode_map(&t, &g)],
                    Unknowns::Joint => {
                        let (d, tau) = decode_pair(&t, &g);
                        vec![d, tau]
                    }
                };
                assert_eq!(
                    first_violation(cond.as_ref(), &maps, &t, 1000).unwrap(),
                    None,
                    "{}",
                    cond.name()
                );
            }
        }
    }

    #[test]
    fn bound_is_propagated() {
        let t = ring(RingSpec::UpperTriangular(2), 3);
        let err = solve(&ZpCentralizer, &t, &SolveOptions { bound: 10, workers: 1 }).unwrap_err();
        assert!(matches!(err, RingError::EnumerationBoundExceeded { .. }));
        // identity kinds gated on basis pairs need no enumeration
        assert!(solve(&DerivationId, &t, &SolveOptions { bound: 10, workers: 1 }).is_ok());
    }
}
