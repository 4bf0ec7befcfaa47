//! Kernel operators and o-projected pattern structures.
//!
//! A kernel operator is a monotone, contractive, idempotent self-map of a
//! description space. Projecting a pattern structure through a kernel
//! keeps the objects, restricts the descriptions to the kernel's fixed
//! point, and replaces the meet by `x meet_k y := k(x meet y)`. The fixed
//! point with that meet is again a semilattice, but not in general a
//! subsemilattice of the base space: the projected meet of two fixed
//! points can differ from their base meet.
//!
//! On an explicit finite lattice, kernels are in bijection with the
//! subsets that contain the bottom and are closed under joins:
//! `kernel_from_fixed_point` realises one direction, `fixed_point` the
//! other. That bijection also induces the projection order (fixed-point
//! inclusion) and the projection meet (fixed-point intersection).

use serde::Deserialize;
use thiserror::Error;

use crate::descriptions::{
    aggregated_size, DescriptionSpace, ExplicitSpace, IntervalSpace, IntervalVector,
};
use crate::order::{Elt, FiniteLattice, LatticeError};
use crate::pattern::{PatternStructure, PsError};

#[derive(Debug, Error)]
pub enum ProjError {
    #[error("fixed-point set does not contain the lattice bottom")]
    MissingBottom,
    #[error("fixed-point set is not join-closed: join({0}, {1}) = {2} is outside it")]
    NotJoinClosed(String, String, String),
    #[error(
        "projections are not comparable: fixed point of the first is not included in the second's"
    )]
    NotComparable,
    #[error("kernel axioms violated: {0:?}")]
    InvalidKernel(Vec<KernelViolation>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Pattern(#[from] PsError),
}

/// A kernel (interior) operator on a description space: monotone,
/// contractive, idempotent. Kernels are pure functions; implementations
/// must be total on the space.
pub trait KernelOperator<S: DescriptionSpace>: Clone {
    fn apply(&self, space: &S, d: &S::D) -> S::D;
}

/// The identity kernel on any space.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityKernel;

impl<S: DescriptionSpace> KernelOperator<S> for IdentityKernel {
    fn apply(&self, _space: &S, d: &S::D) -> S::D {
        d.clone()
    }
}

/// An extensional kernel on an explicit lattice, stored as a total map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableKernel {
    map: Vec<Elt>,
}

impl TableKernel {
    pub fn new(map: Vec<Elt>) -> Self {
        TableKernel { map }
    }

    /// Builds a kernel from explicit `(element, image)` name pairs.
    pub fn from_pairs(lat: &FiniteLattice, pairs: &[(&str, &str)]) -> Result<Self, LatticeError> {
        let mut map: Vec<Option<Elt>> = vec![None; lat.len()];
        for (from, to) in pairs {
            map[lat.elt(from)?.0] = Some(lat.elt(to)?);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.unwrap_or(Elt(i)))
            .collect();
        Ok(TableKernel { map })
    }

    pub fn identity(lat: &FiniteLattice) -> Self {
        TableKernel {
            map: lat.elements().collect(),
        }
    }

    pub fn constant_bottom(lat: &FiniteLattice) -> Self {
        TableKernel {
            map: vec![lat.bottom(); lat.len()],
        }
    }

    pub fn map(&self, e: Elt) -> Elt {
        self.map[e.0]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl KernelOperator<ExplicitSpace> for TableKernel {
    fn apply(&self, _space: &ExplicitSpace, d: &Elt) -> Elt {
        self.map[d.0]
    }
}

/// The interval-space kernel that keeps a pattern when its aggregated
/// size is below the threshold and collapses it to the bottom otherwise.
/// The adjoined top has size zero, so it is always kept.
#[derive(Clone, Copy, Debug)]
pub struct AggregatedLengthKernel {
    threshold: f64,
}

/// Builds the aggregated-length kernel; the threshold must be positive.
pub fn aggregated_length_kernel(threshold: f64) -> AggregatedLengthKernel {
    assert!(threshold > 0.0, "threshold must be positive");
    AggregatedLengthKernel { threshold }
}

impl AggregatedLengthKernel {
    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

impl KernelOperator<IntervalSpace> for AggregatedLengthKernel {
    fn apply(&self, space: &IntervalSpace, d: &IntervalVector) -> IntervalVector {
        if aggregated_size(d) < self.threshold {
            d.clone()
        } else {
            space.bottom().expect("interval spaces have a bottom")
        }
    }
}

// ---------------------------------------------------------------------------
// Projected spaces
// ---------------------------------------------------------------------------

/// The fixed point of a kernel with the projected meet
/// `x meet_k y = k(x meet y)`. The natural order on the carrier is the
/// base order; the top is the image of the base top.
#[derive(Clone, Debug)]
pub struct ProjectedSpace<S: DescriptionSpace, K: KernelOperator<S>> {
    base: S,
    kernel: K,
}

impl<S: DescriptionSpace, K: KernelOperator<S>> ProjectedSpace<S, K> {
    pub fn new(base: S, kernel: K) -> Self {
        ProjectedSpace { base, kernel }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn kernel(&self) -> &K {
        &self.kernel
    }

    pub fn project(&self, d: &S::D) -> S::D {
        self.kernel.apply(&self.base, d)
    }

    /// Whether `d` lies in the carrier, i.e. is fixed by the kernel.
    pub fn is_fixed(&self, d: &S::D) -> bool {
        self.base.equal(&self.project(d), d)
    }
}

impl<S: DescriptionSpace, K: KernelOperator<S>> DescriptionSpace for ProjectedSpace<S, K> {
    type D = S::D;

    fn meet(&self, a: &Self::D, b: &Self::D) -> Self::D {
        self.kernel.apply(&self.base, &self.base.meet(a, b))
    }

    fn leq(&self, a: &Self::D, b: &Self::D) -> bool {
        // on the carrier the natural order of the projected meet agrees
        // with the base order
        self.base.leq(a, b)
    }

    fn top(&self) -> Option<Self::D> {
        self.base.top().map(|t| self.kernel.apply(&self.base, &t))
    }

    fn bottom(&self) -> Option<Self::D> {
        // the bottom is always fixed by contractivity
        self.base.bottom()
    }

    fn contains(&self, d: &Self::D) -> bool {
        self.base.contains(d) && self.is_fixed(d)
    }

    fn render(&self, d: &Self::D) -> String {
        self.base.render(d)
    }
}

/// `x meet_k y = k(x meet y)` for two carrier elements.
pub fn projected_meet<S: DescriptionSpace, K: KernelOperator<S>>(
    space: &ProjectedSpace<S, K>,
    x: &S::D,
    y: &S::D,
) -> S::D {
    space.meet(x, y)
}

/// The o-projected pattern structure: same objects, carrier space, and
/// `delta` composed with the kernel.
pub fn o_project<S: DescriptionSpace, K: KernelOperator<S>>(
    ps: &PatternStructure<S>,
    kernel: K,
) -> PatternStructure<ProjectedSpace<S, K>> {
    let space = ProjectedSpace::new(ps.space().clone(), kernel);
    let delta = ps.deltas().iter().map(|d| space.project(d)).collect();
    PatternStructure::new(ps.objects().to_vec(), space, delta)
        .expect("projected descriptions are fixed points of the kernel")
}

// ---------------------------------------------------------------------------
// Kernel validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelViolation {
    NotMonotone { x: String, y: String },
    NotContractive { x: String },
    NotIdempotent { x: String },
}

/// Outcome of checking the kernel axioms over a set of descriptions.
#[derive(Debug, Clone)]
pub struct KernelReport {
    pub violations: Vec<KernelViolation>,
    pub checked_pairs: usize,
}

impl KernelReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively validates a table kernel on an explicit lattice.
pub fn validate_kernel(lat: &FiniteLattice, kernel: &TableKernel) -> KernelReport {
    assert_eq!(kernel.len(), lat.len(), "kernel map must be total");
    let mut violations = Vec::new();
    let mut checked = 0;
    for x in lat.elements() {
        let kx = kernel.map(x);
        if !lat.leq(kx, x) {
            violations.push(KernelViolation::NotContractive {
                x: lat.name(x).to_string(),
            });
        }
        if kernel.map(kx) != kx {
            violations.push(KernelViolation::NotIdempotent {
                x: lat.name(x).to_string(),
            });
        }
        for y in lat.elements() {
            checked += 1;
            if lat.leq(x, y) && !lat.leq(kx, kernel.map(y)) {
                violations.push(KernelViolation::NotMonotone {
                    x: lat.name(x).to_string(),
                    y: lat.name(y).to_string(),
                });
            }
        }
    }
    KernelReport {
        violations,
        checked_pairs: checked,
    }
}

/// Validates the kernel axioms over a sample of descriptions. Spaces that
/// cannot be enumerated are only ever sample-verified; the theorem-level
/// suites use explicit lattices.
pub fn validate_kernel_sampled<S: DescriptionSpace, K: KernelOperator<S>>(
    space: &S,
    kernel: &K,
    samples: &[S::D],
) -> KernelReport {
    let mut violations = Vec::new();
    let mut checked = 0;
    for x in samples {
        let kx = kernel.apply(space, x);
        if !space.leq(&kx, x) {
            violations.push(KernelViolation::NotContractive { x: space.render(x) });
        }
        if !space.equal(&kernel.apply(space, &kx), &kx) {
            violations.push(KernelViolation::NotIdempotent { x: space.render(x) });
        }
        for y in samples {
            checked += 1;
            if space.leq(x, y) && !space.leq(&kx, &kernel.apply(space, y)) {
                violations.push(KernelViolation::NotMonotone {
                    x: space.render(x),
                    y: space.render(y),
                });
            }
        }
    }
    KernelReport {
        violations,
        checked_pairs: checked,
    }
}

// ---------------------------------------------------------------------------
// Fixed points and the projection order
// ---------------------------------------------------------------------------

/// The set of elements fixed by the kernel.
pub fn fixed_point(kernel: &TableKernel, lat: &FiniteLattice) -> Vec<Elt> {
    lat.elements().filter(|&e| kernel.map(e) == e).collect()
}

/// Builds the unique kernel with the given fixed point: elements of the
/// set stay put, anything else maps to the join of the strictly smaller
/// fixed elements. Requires the bottom and pairwise join-closure, which
/// in a finite lattice implies closure under all joins.
pub fn kernel_from_fixed_point(
    lat: &FiniteLattice,
    fixed: &[Elt],
) -> Result<TableKernel, ProjError> {
    let mut in_fixed = vec![false; lat.len()];
    for &e in fixed {
        if e.0 >= lat.len() {
            return Err(LatticeError::IndexOutOfRange(e.0).into());
        }
        in_fixed[e.0] = true;
    }
    if !in_fixed[lat.bottom().0] {
        return Err(ProjError::MissingBottom);
    }
    for &a in fixed {
        for &b in fixed {
            let j = lat.join(a, b)?;
            if !in_fixed[j.0] {
                return Err(ProjError::NotJoinClosed(
                    lat.name(a).to_string(),
                    lat.name(b).to_string(),
                    lat.name(j).to_string(),
                ));
            }
        }
    }
    let mut map = Vec::with_capacity(lat.len());
    for d in lat.elements() {
        if in_fixed[d.0] {
            map.push(d);
        } else {
            let below = fixed.iter().copied().filter(|&x| lat.lt(x, d));
            map.push(lat.join_all(below)?);
        }
    }
    Ok(TableKernel { map })
}

/// The projection order: fixed-point inclusion.
pub fn proj_leq(k1: &TableKernel, k2: &TableKernel, lat: &FiniteLattice) -> bool {
    let f2 = fixed_point(k2, lat);
    fixed_point(k1, lat).iter().all(|e| f2.contains(e))
}

/// The meet of two projections: the kernel whose fixed point is the
/// intersection of the two fixed points (always bottom-containing and
/// join-closed).
pub fn proj_meet(
    k1: &TableKernel,
    k2: &TableKernel,
    lat: &FiniteLattice,
) -> Result<TableKernel, ProjError> {
    let f2 = fixed_point(k2, lat);
    let common: Vec<Elt> = fixed_point(k1, lat)
        .into_iter()
        .filter(|e| f2.contains(e))
        .collect();
    kernel_from_fixed_point(lat, &common)
}

/// Materialises the carrier of a table kernel as a lattice of its own:
/// elements are the fixed points (keeping their names) and the meet is
/// the projected meet. Returns the new lattice and the carrier elements
/// in the order used for its indices.
pub fn project_lattice(
    lat: &FiniteLattice,
    kernel: &TableKernel,
) -> Result<(FiniteLattice, Vec<Elt>), ProjError> {
    let carrier = fixed_point(kernel, lat);
    let names: Vec<String> = carrier.iter().map(|&e| lat.name(e).to_string()).collect();
    let pos = |e: Elt| carrier.iter().position(|&c| c == e).unwrap();
    let lattice = FiniteLattice::from_meet_fn(names, |a, b| {
        pos(kernel.map(lat.meet(carrier[a], carrier[b])))
    })?;
    Ok((lattice, carrier))
}

/// When `k1 <= k2`, factors `k1` through `k2`: returns the carrier of
/// `k2` as a lattice plus the restriction of `k1` to it, and verifies the
/// factorisation pointwise on the whole base lattice.
pub fn factor_projection(
    k1: &TableKernel,
    k2: &TableKernel,
    lat: &FiniteLattice,
) -> Result<(FiniteLattice, TableKernel), ProjError> {
    if !proj_leq(k1, k2, lat) {
        return Err(ProjError::NotComparable);
    }
    let (sub, carrier) = project_lattice(lat, k2)?;
    let pos = |e: Elt| Elt(carrier.iter().position(|&c| c == e).unwrap());
    let restricted = TableKernel {
        map: carrier.iter().map(|&e| pos(k1.map(e))).collect(),
    };
    for d in lat.elements() {
        let via_factor = carrier[restricted.map(pos(k2.map(d))).0];
        if via_factor != k1.map(d) {
            // cannot happen for kernels that passed proj_leq
            return Err(ProjError::NotComparable);
        }
    }
    Ok((sub, restricted))
}

/// The condition restoring meet-preservation for a kernel: whenever
/// `x < y` and `y` is fixed, `x` must be fixed too (a downward-closed
/// fixed point). General kernels need not satisfy it.
pub fn fixed_point_downward_closed(kernel: &TableKernel, lat: &FiniteLattice) -> bool {
    for y in lat.elements() {
        if kernel.map(y) != y {
            continue;
        }
        for x in lat.elements() {
            if lat.lt(x, y) && kernel.map(x) != x {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Set-space kernels
// ---------------------------------------------------------------------------

/// An extensional kernel over a powerset description space, stored as the
/// family of fixed sets. Joins in a powerset are unions, so the image of
/// a non-fixed set is the union of its fixed strict subsets.
#[derive(Clone, Debug)]
pub struct SetKernel {
    fixed: Vec<crate::bitset::BitSet>,
}

impl SetKernel {
    /// Checks the empty set and pairwise union-closure, mirroring
    /// `kernel_from_fixed_point` on an explicit powerset lattice.
    pub fn from_fixed_sets(
        universe: usize,
        fixed: Vec<crate::bitset::BitSet>,
    ) -> Result<Self, ProjError> {
        if !fixed.iter().any(|s| s.is_empty()) {
            return Err(ProjError::MissingBottom);
        }
        for a in &fixed {
            for b in &fixed {
                let u = a.union(b);
                if !fixed.contains(&u) {
                    return Err(ProjError::NotJoinClosed(
                        format!("{a:?}"),
                        format!("{b:?}"),
                        format!("{u:?}"),
                    ));
                }
            }
        }
        let _ = universe;
        Ok(SetKernel { fixed })
    }

    /// The kernel fixing every subset except the listed ones.
    pub fn dropping(universe: usize, dropped: &[crate::bitset::BitSet]) -> Result<Self, ProjError> {
        assert!(universe <= 16, "powerset kernels limited to 16 attributes");
        let mut fixed = Vec::new();
        for mask in 0usize..1 << universe {
            let s = crate::bitset::BitSet::from_indices(
                universe,
                (0..universe).filter(|i| mask & (1 << i) != 0),
            );
            if !dropped.contains(&s) {
                fixed.push(s);
            }
        }
        SetKernel::from_fixed_sets(universe, fixed)
    }
}

impl KernelOperator<crate::descriptions::SetSpace> for SetKernel {
    fn apply(
        &self,
        _space: &crate::descriptions::SetSpace,
        d: &crate::bitset::BitSet,
    ) -> crate::bitset::BitSet {
        if self.fixed.contains(d) {
            return d.clone();
        }
        let mut acc = crate::bitset::BitSet::new(d.capacity());
        for s in &self.fixed {
            if s.is_subset(d) && s != d {
                acc = acc.union(s);
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Kernel files
// ---------------------------------------------------------------------------

/// Parsed form of the JSON kernel file: either a builtin intensional
/// kernel or an extensional fixed-point set over a lattice file.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelFile {
    AggregatedLength {
        threshold: f64,
    },
    Identity,
    FixedPoint {
        lattice: String,
        fixed_point: Vec<String>,
    },
}

pub fn parse_kernel_json(text: &str) -> Result<KernelFile, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::{demo_intervals, diamond, kite, triangle_sets};

    fn ivp(pairs: &[(f64, f64)]) -> IntervalVector {
        IntervalVector::from_pairs(pairs).unwrap()
    }

    fn kite_kernel(lat: &FiniteLattice) -> TableKernel {
        TableKernel::from_pairs(lat, &[("z", "bot")]).unwrap()
    }

    #[test]
    fn kite_kernel_is_valid_but_not_meet_preserving() {
        let lat = kite();
        let k = kite_kernel(&lat);
        assert!(validate_kernel(&lat, &k).is_valid());

        let (x, y, z) = (
            lat.elt("x").unwrap(),
            lat.elt("y").unwrap(),
            lat.elt("z").unwrap(),
        );
        // k(x meet y) = bottom, but k(x) meet k(y) = z under the base meet
        assert_eq!(k.map(lat.meet(x, y)), lat.bottom());
        assert_eq!(lat.meet(k.map(x), k.map(y)), z);
        assert!(!fixed_point_downward_closed(&k, &lat));
    }

    #[test]
    fn identity_is_valid_and_downward_closed() {
        let lat = kite();
        let k = TableKernel::identity(&lat);
        assert!(validate_kernel(&lat, &k).is_valid());
        assert!(fixed_point_downward_closed(&k, &lat));
        assert_eq!(fixed_point(&k, &lat).len(), lat.len());
    }

    #[test]
    fn monotonicity_violation_is_witnessed() {
        let lat = diamond();
        // fix the atom x but send the top to the bottom
        let k = TableKernel::from_pairs(&lat, &[("top", "bot"), ("y", "bot")]).unwrap();
        let report = validate_kernel(&lat, &k);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, KernelViolation::NotMonotone { x, y } if x == "x" && y == "top")));
        assert!(report
            .violations
            .iter()
            .all(|v| !matches!(v, KernelViolation::NotContractive { .. })));
    }

    #[test]
    fn projected_meet_examples() {
        let lat = kite();
        let space = ExplicitSpace::new(lat.clone());
        let k = kite_kernel(&lat);
        let proj = ProjectedSpace::new(space, k);
        let (x, y) = (lat.elt("x").unwrap(), lat.elt("y").unwrap());
        assert_eq!(projected_meet(&proj, &x, &y), lat.bottom());
        assert_eq!(projected_meet(&proj, &x, &x), x);
    }

    #[test]
    fn aggregated_length_kernel_examples() {
        let space = IntervalSpace::with_arity(2);
        let k = aggregated_length_kernel(2.0);
        let point = ivp(&[(1.0, 1.0), (1.0, 1.0)]);
        assert_eq!(k.apply(&space, &point), point);
        let unit = ivp(&[(1.0, 2.0), (1.0, 2.0)]);
        assert_eq!(k.apply(&space, &unit), space.bottom().unwrap());
        let bottom = space.bottom().unwrap();
        assert_eq!(k.apply(&space, &bottom), bottom);
        assert_eq!(k.apply(&space, &IntervalVector::Top), IntervalVector::Top);

        // projected meet of the two point descriptions collapses to bottom
        let proj = ProjectedSpace::new(space.clone(), k);
        let g1 = ivp(&[(1.0, 1.0), (1.0, 1.0)]);
        let g2 = ivp(&[(2.0, 2.0), (2.0, 2.0)]);
        assert_eq!(projected_meet(&proj, &g1, &g2), space.bottom().unwrap());
    }

    #[test]
    fn aggregated_length_kernel_is_sample_valid() {
        // at least 10^4 pairs over a value grid including infinities
        let space = IntervalSpace::with_arity(2);
        let k = aggregated_length_kernel(2.0);
        let grid = [f64::NEG_INFINITY, 0.0, 0.5, 1.0, 2.0, 3.0, f64::INFINITY];
        let mut samples = vec![IntervalVector::Top, space.bottom().unwrap()];
        for i in 0..grid.len() {
            for j in i..grid.len() {
                for p in 0..grid.len() {
                    for q in p..grid.len() {
                        samples.push(ivp(&[(grid[i], grid[j]), (grid[p], grid[q])]));
                    }
                }
            }
        }
        let report = validate_kernel_sampled(&space, &k, &samples);
        assert!(report.is_valid(), "violations: {:?}", report.violations);
        assert!(report.checked_pairs >= 10_000);
    }

    #[test]
    fn o_project_keeps_descriptions_fixed_by_the_kernel() {
        let ps = demo_intervals();
        let projected = o_project(&ps, aggregated_length_kernel(2.0));
        // every object description has aggregated size zero, so delta is
        // unchanged
        for g in 0..ps.len() {
            assert_eq!(projected.delta(g), ps.delta(g));
        }

        let id = o_project(&ps, IdentityKernel);
        let orig = close_by_one_extents(&ps);
        assert_eq!(close_by_one_extents(&id), orig);
    }

    fn close_by_one_extents<S: DescriptionSpace>(ps: &PatternStructure<S>) -> Vec<Vec<usize>> {
        crate::cbo::close_by_one(ps).unwrap().extent_family()
    }

    #[test]
    fn triangle_drop_kernel_loses_one_intent() {
        let ps = triangle_sets();
        let space = ps.space().clone();
        let dropped = vec![space.set_of(&["a"])];
        let k = SetKernel::dropping(3, &dropped).unwrap();
        let projected = o_project(&ps, k);
        for g in 0..ps.len() {
            assert_eq!(projected.delta(g), ps.delta(g), "delta must be unchanged");
        }
        let cs = crate::cbo::close_by_one(&projected).unwrap();
        assert_eq!(cs.len(), 7, "one concept merges away");
        let a = space.set_of(&["a"]);
        assert!(cs.intents().iter().all(|d| *d != a));
    }

    #[test]
    fn kernel_from_fixed_point_examples() {
        // powerset of {a,b,c} with {a} removed
        let lat = FiniteLattice::powerset(&["a", "b", "c"]);
        let fixed: Vec<Elt> = lat.elements().filter(|&e| lat.name(e) != "a").collect();
        let k = kernel_from_fixed_point(&lat, &fixed).unwrap();
        assert_eq!(k.map(lat.elt("a").unwrap()), lat.elt("{}").unwrap());
        for &e in &fixed {
            assert_eq!(k.map(e), e);
        }
        assert!(validate_kernel(&lat, &k).is_valid());
        assert_eq!(fixed_point(&k, &lat), fixed);
        // {a} < {a,b} with {a,b} fixed but {a} not
        assert!(!fixed_point_downward_closed(&k, &lat));

        // whole lattice: identity
        let all: Vec<Elt> = lat.elements().collect();
        assert_eq!(
            kernel_from_fixed_point(&lat, &all).unwrap(),
            TableKernel::identity(&lat)
        );

        // diamond restricted to {bot, x}
        let d = diamond();
        let fixed = vec![d.bottom(), d.elt("x").unwrap()];
        let k = kernel_from_fixed_point(&d, &fixed).unwrap();
        assert_eq!(k.map(d.elt("y").unwrap()), d.bottom());
        assert_eq!(k.map(d.top()), d.elt("x").unwrap());
    }

    #[test]
    fn kernel_from_fixed_point_rejects_bad_sets() {
        let d = diamond();
        let err = kernel_from_fixed_point(&d, &[d.elt("x").unwrap()]);
        assert!(matches!(err, Err(ProjError::MissingBottom)));

        let not_closed = vec![d.bottom(), d.elt("x").unwrap(), d.elt("y").unwrap()];
        let err = kernel_from_fixed_point(&d, &not_closed);
        assert!(matches!(err, Err(ProjError::NotJoinClosed(_, _, _))));
    }

    #[test]
    fn fixed_point_examples() {
        let lat = kite();
        let k = kite_kernel(&lat);
        let names: Vec<&str> = fixed_point(&k, &lat)
            .into_iter()
            .map(|e| lat.name(e))
            .collect();
        assert_eq!(names, ["bot", "x", "y", "top"]);

        let kb = TableKernel::constant_bottom(&lat);
        assert_eq!(fixed_point(&kb, &lat), vec![lat.bottom()]);
    }

    #[test]
    fn projection_order_and_meet() {
        let lat = FiniteLattice::powerset(&["a", "b", "c"]);
        let all: Vec<Elt> = lat.elements().collect();
        let minus = |name: &str| -> Vec<Elt> {
            all.iter()
                .copied()
                .filter(|&e| lat.name(e) != name)
                .collect()
        };
        let k1 = kernel_from_fixed_point(&lat, &minus("a")).unwrap();
        let k2 = kernel_from_fixed_point(&lat, &minus("b")).unwrap();
        let id = TableKernel::identity(&lat);
        let kb = TableKernel::constant_bottom(&lat);

        assert!(proj_leq(&k1, &id, &lat));
        assert!(proj_leq(&k1, &k1, &lat));
        assert!(proj_leq(&kb, &k1, &lat));
        assert!(!proj_leq(&k1, &k2, &lat));

        let m = proj_meet(&k1, &k2, &lat).unwrap();
        let fp: Vec<&str> = fixed_point(&m, &lat)
            .into_iter()
            .map(|e| lat.name(e))
            .collect();
        assert!(!fp.contains(&"a") && !fp.contains(&"b"));
        assert_eq!(fp.len(), lat.len() - 2);

        assert_eq!(proj_meet(&k1, &k1, &lat).unwrap(), k1);
    }

    #[test]
    fn factor_projection_examples() {
        let lat = FiniteLattice::powerset(&["a", "b"]);
        let id = TableKernel::identity(&lat);
        let kb = TableKernel::constant_bottom(&lat);

        let (sub, f) = factor_projection(&kb, &id, &lat).unwrap();
        assert_eq!(sub.len(), lat.len());
        assert_eq!(f, TableKernel::constant_bottom(&sub));
        assert!(validate_kernel(&sub, &f).is_valid());

        let (sub, f) = factor_projection(&id, &id, &lat).unwrap();
        assert_eq!(f, TableKernel::identity(&sub));

        assert!(matches!(
            factor_projection(&id, &kb, &lat),
            Err(ProjError::NotComparable)
        ));
    }

    #[test]
    fn kernel_json_parsing() {
        let k = parse_kernel_json(r#"{"kind":"aggregated_length","threshold":2.0}"#).unwrap();
        assert!(matches!(k, KernelFile::AggregatedLength { threshold } if threshold == 2.0));
        let k = parse_kernel_json(
            r#"{"kind":"fixed_point","lattice":"lat.json","fixed_point":["bot","x"]}"#,
        )
        .unwrap();
        assert!(matches!(k, KernelFile::FixedPoint { .. }));
    }
}
