//! Concrete description spaces: interval vectors, attribute sets, and
//! explicit finite-lattice elements.
//!
//! A description space is a meet-semilattice of descriptions. The natural
//! (subsumption) order is `a <= b iff meet(a, b) = a`: the meet of two
//! descriptions is their common part, and smaller descriptions are the
//! less specific ones.

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::order::{Elt, FiniteLattice};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("interval vectors have different arity ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("attribute sets live in different universes ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("interval endpoint is NaN")]
    NanEndpoint,
    #[error("interval lower bound {0} exceeds upper bound {1}")]
    EmptyInterval(f64, f64),
    #[error("cannot parse `{0}` as an interval cell")]
    BadCell(String),
}

/// A pluggable meet-semilattice of descriptions.
///
/// `meet` must be idempotent, commutative and associative, and `leq` must
/// agree with it: `leq(a, b) iff equal(meet(a, b), a)`. Spaces are stateless
/// after construction and safe to share across threads.
pub trait DescriptionSpace: Clone {
    type D: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn meet(&self, a: &Self::D, b: &Self::D) -> Self::D;

    fn equal(&self, a: &Self::D, b: &Self::D) -> bool {
        a == b
    }

    fn leq(&self, a: &Self::D, b: &Self::D) -> bool {
        self.equal(&self.meet(a, b), a)
    }

    /// The greatest description, if the space has one adjoined.
    fn top(&self) -> Option<Self::D>;

    /// The least description, if the space has one.
    fn bottom(&self) -> Option<Self::D>;

    /// Whether `d` is a well-formed member of this space.
    fn contains(&self, d: &Self::D) -> bool;

    /// Canonical human-readable rendering, also used for attribute naming.
    fn render(&self, d: &Self::D) -> String;
}

// ---------------------------------------------------------------------------
// Interval vectors
// ---------------------------------------------------------------------------

/// A closed interval `[lo, hi]` with `lo <= hi`; endpoints may be infinite,
/// NaN is rejected at construction. Comparison, min and max use the total
/// order on bit patterns so the semilattice laws hold bit-exactly.
#[derive(Clone, Copy, Debug)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, SpaceError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(SpaceError::NanEndpoint);
        }
        if lo.total_cmp(&hi).is_gt() {
            return Err(SpaceError::EmptyInterval(lo, hi));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: f64) -> Result<Self, SpaceError> {
        Interval::new(v, v)
    }

    pub fn unbounded() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Convex hull: `[a,b] meet [c,d] = [min(a,c), max(b,d)]`.
    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = if self.lo.total_cmp(&other.lo).is_le() {
            self.lo
        } else {
            other.lo
        };
        let hi = if self.hi.total_cmp(&other.hi).is_ge() {
            self.hi
        } else {
            other.hi
        };
        Interval { lo, hi }
    }

    /// Whether `self` contains `other` as a subinterval.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo.total_cmp(&other.lo).is_le() && self.hi.total_cmp(&other.hi).is_ge()
    }

    pub fn length(&self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            f64::INFINITY
        } else {
            self.hi - self.lo
        }
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.lo.to_bits() == other.lo.to_bits() && self.hi.to_bits() == other.hi.to_bits()
    }
}

impl Eq for Interval {}

impl Hash for Interval {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lo.to_bits().hash(state);
        self.hi.to_bits().hash(state);
    }
}

pub fn render_endpoint(v: f64) -> String {
    if v == f64::INFINITY {
        "+inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v}")
    }
}

pub fn parse_endpoint(s: &str) -> Result<f64, SpaceError> {
    let v = match s.trim() {
        "+inf" | "inf" => f64::INFINITY,
        "-inf" => f64::NEG_INFINITY,
        t => t
            .parse::<f64>()
            .map_err(|_| SpaceError::BadCell(s.to_string()))?,
    };
    if v.is_nan() {
        return Err(SpaceError::NanEndpoint);
    }
    Ok(v)
}

/// A fixed-arity vector of intervals, or the distinguished adjoined `TOP`.
///
/// `TOP` is greater than every vector; it serves as the seed of the
/// lattice construction and as the intent of an empty extent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum IntervalVector {
    Top,
    Intervals(Vec<Interval>),
}

impl IntervalVector {
    pub fn from_points(values: &[f64]) -> Result<Self, SpaceError> {
        let mut out = Vec::with_capacity(values.len());
        for &v in values {
            out.push(Interval::point(v)?);
        }
        Ok(IntervalVector::Intervals(out))
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, SpaceError> {
        let mut out = Vec::with_capacity(pairs.len());
        for &(lo, hi) in pairs {
            out.push(Interval::new(lo, hi)?);
        }
        Ok(IntervalVector::Intervals(out))
    }

    pub fn arity(&self) -> Option<usize> {
        match self {
            IntervalVector::Top => None,
            IntervalVector::Intervals(v) => Some(v.len()),
        }
    }
}

/// Component-wise convex hull; `TOP` is neutral.
pub fn interval_meet(a: &IntervalVector, b: &IntervalVector) -> Result<IntervalVector, SpaceError> {
    match (a, b) {
        (IntervalVector::Top, other) | (other, IntervalVector::Top) => Ok(other.clone()),
        (IntervalVector::Intervals(xs), IntervalVector::Intervals(ys)) => {
            if xs.len() != ys.len() {
                return Err(SpaceError::ArityMismatch(xs.len(), ys.len()));
            }
            Ok(IntervalVector::Intervals(
                xs.iter().zip(ys).map(|(x, y)| x.hull(y)).collect(),
            ))
        }
    }
}

/// Subsumption: `a <= b` iff every component of `a` contains the
/// corresponding component of `b` (the smaller the interval, the larger
/// the description).
pub fn interval_leq(a: &IntervalVector, b: &IntervalVector) -> Result<bool, SpaceError> {
    match (a, b) {
        (_, IntervalVector::Top) => Ok(true),
        (IntervalVector::Top, _) => Ok(false),
        (IntervalVector::Intervals(xs), IntervalVector::Intervals(ys)) => {
            if xs.len() != ys.len() {
                return Err(SpaceError::ArityMismatch(xs.len(), ys.len()));
            }
            Ok(xs.iter().zip(ys).all(|(x, y)| x.contains_interval(y)))
        }
    }
}

/// Sum of the interval lengths; any infinite endpoint makes it infinite,
/// and `TOP` has size zero.
pub fn aggregated_size(d: &IntervalVector) -> f64 {
    match d {
        IntervalVector::Top => 0.0,
        IntervalVector::Intervals(xs) => {
            if xs.iter().any(|x| x.lo.is_infinite() || x.hi.is_infinite()) {
                f64::INFINITY
            } else {
                xs.iter().map(|x| x.hi - x.lo).sum()
            }
        }
    }
}

/// The space of interval vectors of a fixed arity, with attribute names
/// carried along for rendering and scaling.
#[derive(Clone, Debug)]
pub struct IntervalSpace {
    attribute_names: Vec<String>,
}

impl IntervalSpace {
    pub fn new(attribute_names: Vec<String>) -> Self {
        IntervalSpace { attribute_names }
    }

    pub fn with_arity(arity: usize) -> Self {
        IntervalSpace {
            attribute_names: (1..=arity).map(|i| format!("m{i}")).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }
}

impl DescriptionSpace for IntervalSpace {
    type D = IntervalVector;

    fn meet(&self, a: &Self::D, b: &Self::D) -> Self::D {
        interval_meet(a, b).expect("descriptions of one space share its arity")
    }

    fn leq(&self, a: &Self::D, b: &Self::D) -> bool {
        interval_leq(a, b).expect("descriptions of one space share its arity")
    }

    fn top(&self) -> Option<Self::D> {
        Some(IntervalVector::Top)
    }

    fn bottom(&self) -> Option<Self::D> {
        Some(IntervalVector::Intervals(vec![
            Interval::unbounded();
            self.arity()
        ]))
    }

    fn contains(&self, d: &Self::D) -> bool {
        match d {
            IntervalVector::Top => true,
            IntervalVector::Intervals(xs) => xs.len() == self.arity(),
        }
    }

    fn render(&self, d: &Self::D) -> String {
        match d {
            IntervalVector::Top => "TOP".to_string(),
            IntervalVector::Intervals(xs) => {
                let body = xs
                    .iter()
                    .map(|x| format!("[{},{}]", render_endpoint(x.lo), render_endpoint(x.hi)))
                    .collect::<Vec<_>>()
                    .join(";");
                format!("<{body}>")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Attribute sets
// ---------------------------------------------------------------------------

/// A subset of a fixed attribute universe.
pub type AttributeSet = crate::bitset::BitSet;

/// Intersection of two attribute sets from the same universe.
pub fn set_meet(a: &AttributeSet, b: &AttributeSet) -> Result<AttributeSet, SpaceError> {
    if a.capacity() != b.capacity() {
        return Err(SpaceError::UniverseMismatch(a.capacity(), b.capacity()));
    }
    Ok(a.intersection(b))
}

/// The powerset of a named attribute universe ordered by inclusion, with
/// meet given by intersection. This is standard FCA recast as a pattern
/// structure.
#[derive(Clone, Debug)]
pub struct SetSpace {
    attribute_names: Vec<String>,
}

impl SetSpace {
    pub fn new(attribute_names: Vec<String>) -> Self {
        SetSpace { attribute_names }
    }

    pub fn universe_size(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn set_of(&self, names: &[&str]) -> AttributeSet {
        let mut s = AttributeSet::new(self.universe_size());
        for n in names {
            let i = self
                .attribute_names
                .iter()
                .position(|a| a == n)
                .unwrap_or_else(|| panic!("unknown attribute `{n}`"));
            s.insert(i);
        }
        s
    }
}

impl DescriptionSpace for SetSpace {
    type D = AttributeSet;

    fn meet(&self, a: &Self::D, b: &Self::D) -> Self::D {
        set_meet(a, b).expect("descriptions of one space share its universe")
    }

    fn leq(&self, a: &Self::D, b: &Self::D) -> bool {
        a.is_subset(b)
    }

    fn top(&self) -> Option<Self::D> {
        Some(AttributeSet::full(self.universe_size()))
    }

    fn bottom(&self) -> Option<Self::D> {
        Some(AttributeSet::new(self.universe_size()))
    }

    fn contains(&self, d: &Self::D) -> bool {
        d.capacity() == self.universe_size()
    }

    fn render(&self, d: &Self::D) -> String {
        if d.is_empty() {
            "{}".to_string()
        } else {
            d.iter()
                .map(|i| self.attribute_names[i].as_str())
                .collect::<Vec<_>>()
                .join("")
        }
    }
}

// ---------------------------------------------------------------------------
// Explicit lattice elements
// ---------------------------------------------------------------------------

/// A description space whose elements are exactly the elements of a
/// validated [`FiniteLattice`]. Lets oracle lattices act as description
/// spaces.
#[derive(Clone, Debug)]
pub struct ExplicitSpace {
    lattice: FiniteLattice,
}

impl ExplicitSpace {
    pub fn new(lattice: FiniteLattice) -> Self {
        ExplicitSpace { lattice }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }
}

impl DescriptionSpace for ExplicitSpace {
    type D = Elt;

    fn meet(&self, a: &Self::D, b: &Self::D) -> Self::D {
        self.lattice.meet(*a, *b)
    }

    fn leq(&self, a: &Self::D, b: &Self::D) -> bool {
        self.lattice.leq(*a, *b)
    }

    fn top(&self) -> Option<Self::D> {
        Some(self.lattice.top())
    }

    fn bottom(&self) -> Option<Self::D> {
        Some(self.lattice.bottom())
    }

    fn contains(&self, d: &Self::D) -> bool {
        d.0 < self.lattice.len()
    }

    fn render(&self, d: &Self::D) -> String {
        self.lattice.name(*d).to_string()
    }
}

// ---------------------------------------------------------------------------
// Interval grids
// ---------------------------------------------------------------------------

/// Materialises the finite sublattice of interval vectors whose endpoints
/// are restricted to the given per-attribute value grids (extended with
/// both infinities), plus the adjoined `TOP`. Returns the lattice along
/// with the vector corresponding to each element; element names are the
/// canonical renderings.
pub fn interval_grid_lattice(
    space: &IntervalSpace,
    grids: &[Vec<f64>],
) -> (FiniteLattice, Vec<IntervalVector>) {
    assert_eq!(grids.len(), space.arity(), "one grid per attribute");
    let mut per_component: Vec<Vec<Interval>> = Vec::new();
    for grid in grids {
        let mut values = vec![f64::NEG_INFINITY, f64::INFINITY];
        values.extend_from_slice(grid);
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| a.to_bits() == b.to_bits());
        let mut intervals = Vec::new();
        for (i, &lo) in values.iter().enumerate() {
            for &hi in &values[i..] {
                if !(lo.is_infinite() && hi.to_bits() == lo.to_bits()) {
                    intervals.push(Interval::new(lo, hi).expect("grid endpoints are ordered"));
                }
            }
        }
        per_component.push(intervals);
    }
    let mut vectors = vec![IntervalVector::Top];
    let mut partial: Vec<Vec<Interval>> = vec![Vec::new()];
    for comp in &per_component {
        let mut next = Vec::new();
        for p in &partial {
            for iv in comp {
                let mut q = p.clone();
                q.push(*iv);
                next.push(q);
            }
        }
        partial = next;
    }
    vectors.extend(partial.into_iter().map(IntervalVector::Intervals));

    let names: Vec<String> = vectors.iter().map(|v| space.render(v)).collect();
    let index: std::collections::HashMap<IntervalVector, usize> = vectors
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let lattice = FiniteLattice::from_meet_fn(names, |a, b| {
        let m = space.meet(&vectors[a], &vectors[b]);
        index[&m]
    })
    .expect("grid meets are closed on the grid");
    (lattice, vectors)
}
