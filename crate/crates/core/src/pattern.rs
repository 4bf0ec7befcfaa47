//! Pattern structures and the Galois connection between object sets and
//! descriptions.
//!
//! A pattern structure couples a finite object list with a description
//! space and a total map `delta` from objects to descriptions. The two
//! derivation maps are
//!
//! - object set `A` to description: the meet of the descriptions of `A`
//!   (the empty set maps to the space top), and
//! - description `d` to object set: all objects whose description
//!   subsumes `d`.
//!
//! A pattern concept is a pair fixed by both maps.

use thiserror::Error;

use crate::bitset::BitSet;
use crate::descriptions::{parse_endpoint, DescriptionSpace, IntervalSpace, IntervalVector};
use crate::descriptions::{Interval, SpaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PsError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("object index {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("description space has no top element, required for an empty extent")]
    NoTop,
    #[error("description for object `{0}` does not belong to the space")]
    ForeignDescription(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("malformed data file: {0}")]
    BadData(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A pattern structure: objects, a description space, and a materialised
/// `delta` map. Immutable after construction; queries are re-entrant.
#[derive(Clone, Debug)]
pub struct PatternStructure<S: DescriptionSpace> {
    objects: Vec<String>,
    space: S,
    delta: Vec<S::D>,
}

/// A closed (extent, intent) pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternConcept<D> {
    pub extent: BitSet,
    pub intent: D,
}

impl<S: DescriptionSpace> PatternStructure<S> {
    pub fn new(objects: Vec<String>, space: S, delta: Vec<S::D>) -> Result<Self, PsError> {
        assert_eq!(objects.len(), delta.len(), "delta must be total");
        let mut seen = std::collections::HashSet::new();
        for g in &objects {
            if !seen.insert(g.clone()) {
                return Err(PsError::DuplicateObject(g.clone()));
            }
        }
        for (g, d) in objects.iter().zip(&delta) {
            if !space.contains(d) {
                return Err(PsError::ForeignDescription(g.clone()));
            }
        }
        Ok(PatternStructure {
            objects,
            space,
            delta,
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn delta(&self, g: usize) -> &S::D {
        &self.delta[g]
    }

    pub fn deltas(&self) -> &[S::D] {
        &self.delta
    }

    /// Resolves object names to a bitset extent.
    pub fn object_set(&self, names: &[&str]) -> Result<BitSet, PsError> {
        let mut s = BitSet::new(self.objects.len());
        for n in names {
            let i = self
                .objects
                .iter()
                .position(|g| g == n)
                .ok_or_else(|| PsError::UnknownObject(n.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn object_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| self.objects[i].clone()).collect()
    }

    fn check_extent(&self, a: &BitSet) -> Result<(), PsError> {
        if a.capacity() != self.objects.len() {
            return Err(PsError::ObjectOutOfRange(a.capacity()));
        }
        Ok(())
    }

    /// The derivation on object sets: the meet of the descriptions of `a`.
    /// The empty set maps to the space top.
    pub fn ext_to_int(&self, a: &BitSet) -> Result<S::D, PsError> {
        self.check_extent(a)?;
        let mut it = a.iter();
        let first = match it.next() {
            Some(g) => g,
            None => return self.space.top().ok_or(PsError::NoTop),
        };
        let mut acc = self.delta[first].clone();
        for g in it {
            acc = self.space.meet(&acc, &self.delta[g]);
        }
        Ok(acc)
    }

    /// The derivation on descriptions: all objects whose description
    /// subsumes `d`.
    pub fn int_to_ext(&self, d: &S::D) -> BitSet {
        let mut s = BitSet::new(self.objects.len());
        for (g, dg) in self.delta.iter().enumerate() {
            if self.space.leq(d, dg) {
                s.insert(g);
            }
        }
        s
    }

    /// Closes an object set into a pattern concept.
    pub fn closure(&self, a: &BitSet) -> Result<PatternConcept<S::D>, PsError> {
        let intent = self.ext_to_int(a)?;
        let extent = self.int_to_ext(&intent);
        Ok(PatternConcept { extent, intent })
    }

    /// Whether both closure equations hold for the pair.
    pub fn is_concept(&self, c: &PatternConcept<S::D>) -> bool {
        if c.extent.capacity() != self.objects.len() {
            return false;
        }
        match self.ext_to_int(&c.extent) {
            Ok(d) => self.space.equal(&d, &c.intent) && self.int_to_ext(&c.intent) == c.extent,
            Err(_) => false,
        }
    }

    /// `a -> b` holds when every object whose description subsumes `a`
    /// also subsumes `b`.
    pub fn implication_holds(&self, a: &S::D, b: &S::D) -> bool {
        self.int_to_ext(a).is_subset(&self.int_to_ext(b))
    }
}

/// Parses the numeric CSV format: the header names the object column and
/// the attributes, each following row is an object; cells are `v` (read as
/// the degenerate interval `[v,v]`) or `lo:hi`.
pub fn parse_interval_csv(text: &str) -> Result<PatternStructure<IntervalSpace>, PsError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| PsError::BadData("missing header row".into()))?;
    let mut cols = header.split(',').map(str::trim);
    cols.next(); // object-name column label
    let attribute_names: Vec<String> = cols.map(String::from).collect();
    let space = IntervalSpace::new(attribute_names);

    let mut objects = Vec::new();
    let mut delta = Vec::new();
    for line in lines {
        let mut cells = line.split(',').map(str::trim);
        let name = cells
            .next()
            .ok_or_else(|| PsError::BadData("empty row".into()))?
            .to_string();
        let mut intervals = Vec::new();
        for cell in cells {
            let iv = match cell.split_once(':') {
                Some((lo, hi)) => Interval::new(parse_endpoint(lo)?, parse_endpoint(hi)?)?,
                None => Interval::point(parse_endpoint(cell)?)?,
            };
            intervals.push(iv);
        }
        if intervals.len() != space.arity() {
            return Err(PsError::BadData(format!(
                "row `{name}` has {} cells, expected {}",
                intervals.len(),
                space.arity()
            )));
        }
        objects.push(name);
        delta.push(IntervalVector::Intervals(intervals));
    }
    PatternStructure::new(objects, space, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::demo_intervals;

    fn ivp(pairs: &[(f64, f64)]) -> IntervalVector {
        IntervalVector::from_pairs(pairs).unwrap()
    }

    #[test]
    fn ext_to_int_examples() {
        let ps = demo_intervals();
        let a = ps.object_set(&["g1", "g2"]).unwrap();
        assert_eq!(ps.ext_to_int(&a).unwrap(), ivp(&[(1.0, 2.0), (1.0, 2.0)]));
        let single = ps.object_set(&["g2"]).unwrap();
        assert_eq!(ps.ext_to_int(&single).unwrap(), ps.delta(1).clone());
        let bc = ps.object_set(&["g2", "g3"]).unwrap();
        assert_eq!(ps.ext_to_int(&bc).unwrap(), ivp(&[(2.0, 3.0), (2.0, 2.0)]));
        let empty = BitSet::new(3);
        assert_eq!(ps.ext_to_int(&empty).unwrap(), IntervalVector::Top);
    }

    #[test]
    fn int_to_ext_examples() {
        let ps = demo_intervals();
        let wide = ivp(&[(1.0, 3.0), (1.0, 2.0)]);
        assert_eq!(
            ps.int_to_ext(&wide),
            ps.object_set(&["g1", "g2", "g3"]).unwrap()
        );
        assert!(ps.int_to_ext(&IntervalVector::Top).is_empty());
        let mid = ivp(&[(1.0, 2.0), (1.0, 2.0)]);
        assert_eq!(ps.int_to_ext(&mid), ps.object_set(&["g1", "g2"]).unwrap());
    }

    #[test]
    fn closure_examples() {
        let ps = demo_intervals();
        let c = ps.closure(&ps.object_set(&["g1", "g3"]).unwrap()).unwrap();
        assert_eq!(c.extent, ps.object_set(&["g1", "g2", "g3"]).unwrap());
        assert_eq!(c.intent, ivp(&[(1.0, 3.0), (1.0, 2.0)]));

        let empty = ps.closure(&BitSet::new(3)).unwrap();
        assert!(empty.extent.is_empty());
        assert_eq!(empty.intent, IntervalVector::Top);

        let g1 = ps.closure(&ps.object_set(&["g1"]).unwrap()).unwrap();
        assert_eq!(g1.extent, ps.object_set(&["g1"]).unwrap());
        assert_eq!(g1.intent, ivp(&[(1.0, 1.0), (1.0, 1.0)]));
    }

    #[test]
    fn is_concept_examples() {
        let ps = demo_intervals();
        assert!(ps.is_concept(&PatternConcept {
            extent: ps.object_set(&["g1", "g2"]).unwrap(),
            intent: ivp(&[(1.0, 2.0), (1.0, 2.0)]),
        }));
        assert!(!ps.is_concept(&PatternConcept {
            extent: ps.object_set(&["g1", "g3"]).unwrap(),
            intent: ivp(&[(1.0, 3.0), (1.0, 2.0)]),
        }));
        let g = BitSet::full(3);
        let c = ps.closure(&g).unwrap();
        assert!(ps.is_concept(&c));
    }

    #[test]
    fn implication_examples() {
        let ps = demo_intervals();
        let a = ivp(&[(1.0, 2.0), (1.0, 2.0)]);
        let b = ivp(&[(1.0, 3.0), (1.0, 2.0)]);
        assert!(ps.implication_holds(&a, &a));
        assert!(ps.implication_holds(&a, &b));
        assert!(!ps.implication_holds(&b, &a));
    }

    #[test]
    fn no_top_error() {
        use crate::testsupport::NoTopSpace;
        let space = NoTopSpace(IntervalSpace::with_arity(1));
        let ps = PatternStructure::new(
            vec!["g".into()],
            space,
            vec![IntervalVector::from_points(&[1.0]).unwrap()],
        )
        .unwrap();
        assert_eq!(ps.ext_to_int(&BitSet::new(1)), Err(PsError::NoTop));
    }

    #[test]
    fn csv_parsing() {
        let ps = parse_interval_csv("objects,m1,m2\ng1,1,1\ng2,2,0:2\n").unwrap();
        assert_eq!(ps.objects(), ["g1", "g2"]);
        assert_eq!(ps.space().attribute_names(), ["m1", "m2"]);
        assert_eq!(ps.delta(1), &ivp(&[(2.0, 2.0), (0.0, 2.0)]));
        assert!(parse_interval_csv("objects,m1\ng1,oops\n").is_err());
        assert!(parse_interval_csv("objects,m1,m2\ng1,1\n").is_err());
    }

    #[test]
    fn duplicate_object_rejected() {
        let space = IntervalSpace::with_arity(1);
        let d = IntervalVector::from_points(&[0.0]).unwrap();
        assert_eq!(
            PatternStructure::new(vec!["g".into(), "g".into()], space, vec![d.clone(), d]).err(),
            Some(PsError::DuplicateObject("g".into()))
        );
    }
}
