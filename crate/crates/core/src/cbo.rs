//! Close-by-One enumeration of all pattern concepts, Hasse-diagram
//! assembly, and DOT/JSON export.
//!
//! The enumeration extends an extent by one object at a time in the fixed
//! input order and keeps a closure only when it is a canonical extension:
//! the closure may not introduce an object smaller than the generator.
//! This visits every concept exactly once. The recursion is seeded with
//! the closure of the empty extent, whose intent is the space top, so the
//! pair (empty extent, top) is emitted exactly when it is closed, i.e.
//! when no object description equals the top.

use rayon::prelude::*;
use serde_json::json;

use crate::bitset::BitSet;
use crate::descriptions::DescriptionSpace;
use crate::pattern::{PatternConcept, PatternStructure, PsError};

/// All concepts of a pattern structure, sorted by (extent size,
/// lexicographic extent), together with the cover edges of the
/// extent-inclusion order.
#[derive(Clone, Debug)]
pub struct ConceptSet<D> {
    concepts: Vec<PatternConcept<D>>,
    covers: Vec<(usize, usize)>,
}

impl<D: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> ConceptSet<D> {
    /// Sorts the concepts canonically and computes the cover relation.
    /// Duplicate extents indicate an enumeration bug upstream.
    pub fn from_concepts(mut concepts: Vec<PatternConcept<D>>) -> Self {
        concepts.sort_by(|a, b| (a.extent.len(), &a.extent).cmp(&(b.extent.len(), &b.extent)));
        debug_assert!(
            concepts.windows(2).all(|w| w[0].extent != w[1].extent),
            "duplicate extents in concept set"
        );
        let covers = hasse(&concepts);
        ConceptSet { concepts, covers }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[PatternConcept<D>] {
        &self.concepts
    }

    /// Cover edges `(lower, upper)` over concept indices: the transitive
    /// reduction of extent inclusion.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn extents(&self) -> Vec<BitSet> {
        self.concepts.iter().map(|c| c.extent.clone()).collect()
    }

    pub fn intents(&self) -> Vec<D> {
        self.concepts.iter().map(|c| c.intent.clone()).collect()
    }

    /// Extent families as sorted index lists; equality of these decides
    /// lattice isomorphism for structures over the same objects.
    pub fn extent_family(&self) -> Vec<Vec<usize>> {
        self.concepts.iter().map(|c| c.extent.indices()).collect()
    }
}

/// True when `new_extent`, obtained by closing `extent + {generator}`,
/// introduces no object with an index smaller than the generator's.
pub fn is_canonic_extension(extent: &BitSet, new_extent: &BitSet, generator: usize) -> bool {
    new_extent
        .iter()
        .take_while(|&g| g < generator)
        .all(|g| extent.contains(g))
}

fn descend<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    extent: &BitSet,
    intent: &S::D,
    min_generator: usize,
    out: &mut Vec<PatternConcept<S::D>>,
) {
    for g in min_generator..ps.len() {
        if extent.contains(g) {
            continue;
        }
        let new_intent = ps.space().meet(intent, ps.delta(g));
        let new_extent = ps.int_to_ext(&new_intent);
        if is_canonic_extension(extent, &new_extent, g) {
            out.push(PatternConcept {
                extent: new_extent.clone(),
                intent: new_intent.clone(),
            });
            descend(ps, &new_extent, &new_intent, g + 1, out);
        }
    }
}

/// Computes the complete set of pattern concepts, each emitted exactly
/// once. Fails with `NoTop` when the space has no top to seed the
/// enumeration with.
pub fn close_by_one<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
) -> Result<ConceptSet<S::D>, PsError> {
    let root = ps.closure(&BitSet::new(ps.len()))?;
    let mut out = vec![root.clone()];
    descend(ps, &root.extent, &root.intent, 0, &mut out);
    Ok(ConceptSet::from_concepts(out))
}

/// Parallel variant: first-level branches of the recursion tree are
/// explored by rayon workers. The final sort makes the output identical
/// to the sequential one.
pub fn close_by_one_par<S>(ps: &PatternStructure<S>) -> Result<ConceptSet<S::D>, PsError>
where
    S: DescriptionSpace + Sync,
    S::D: Send + Sync,
{
    let root = ps.closure(&BitSet::new(ps.len()))?;
    let branches: Vec<Vec<PatternConcept<S::D>>> = (0..ps.len())
        .into_par_iter()
        .map(|g| {
            let mut local = Vec::new();
            if !root.extent.contains(g) {
                let new_intent = ps.space().meet(&root.intent, ps.delta(g));
                let new_extent = ps.int_to_ext(&new_intent);
                if is_canonic_extension(&root.extent, &new_extent, g) {
                    local.push(PatternConcept {
                        extent: new_extent.clone(),
                        intent: new_intent.clone(),
                    });
                    descend(ps, &new_extent, &new_intent, g + 1, &mut local);
                }
            }
            local
        })
        .collect();
    let mut out = vec![root];
    out.extend(branches.into_iter().flatten());
    Ok(ConceptSet::from_concepts(out))
}

/// Transitive reduction of the extent-inclusion order.
pub fn hasse<D>(concepts: &[PatternConcept<D>]) -> Vec<(usize, usize)> {
    let n = concepts.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&concepts[i].extent, &concepts[j].extent);
            if i == j || !a.is_subset(b) || a == b {
                continue;
            }
            let intermediate = (0..n).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let m = &concepts[k].extent;
                a.is_subset(m) && m.is_subset(b) && m != a && m != b
            });
            if !intermediate {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// DOT rendering of the Hasse diagram; node labels carry the extent and
/// the rendered intent.
pub fn to_dot<S: DescriptionSpace>(ps: &PatternStructure<S>, cs: &ConceptSet<S::D>) -> String {
    let mut out = String::from("digraph concepts {\n  rankdir=BT;\n");
    for (i, c) in cs.concepts().iter().enumerate() {
        let extent = format!("{{{}}}", ps.object_names(&c.extent).join(","));
        let intent = ps.space().render(&c.intent);
        out.push_str(&format!(
            "  n{i} [label=\"{}\\n{}\"];\n",
            escape(&extent),
            escape(&intent)
        ));
    }
    for &(i, j) in cs.covers() {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON export mirroring the concept set.
pub fn to_json<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    cs: &ConceptSet<S::D>,
) -> serde_json::Value {
    json!({
        "concepts": cs
            .concepts()
            .iter()
            .map(|c| {
                json!({
                    "extent": ps.object_names(&c.extent),
                    "intent": ps.space().render(&c.intent),
                })
            })
            .collect::<Vec<_>>(),
        "covers": cs.covers(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptions::{IntervalSpace, IntervalVector, SetSpace};
    use crate::testsupport::{demo_intervals, triangle_sets};

    fn ivp(pairs: &[(f64, f64)]) -> IntervalVector {
        IntervalVector::from_pairs(pairs).unwrap()
    }

    #[test]
    fn demo_intervals_has_seven_concepts() {
        let ps = demo_intervals();
        let cs = close_by_one(&ps).unwrap();
        let extents: Vec<Vec<usize>> = cs.extent_family();
        assert_eq!(
            extents,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
        let by_extent = |idx: &[usize]| {
            cs.concepts()
                .iter()
                .find(|c| c.extent.indices() == idx)
                .unwrap()
                .intent
                .clone()
        };
        assert_eq!(by_extent(&[0, 1]), ivp(&[(1.0, 2.0), (1.0, 2.0)]));
        assert_eq!(by_extent(&[1, 2]), ivp(&[(2.0, 3.0), (2.0, 2.0)]));
        assert_eq!(by_extent(&[]), IntervalVector::Top);
    }

    #[test]
    fn single_object_structures() {
        let space = IntervalSpace::with_arity(1);
        let ps = PatternStructure::new(
            vec!["g".into()],
            space,
            vec![IntervalVector::from_points(&[1.0]).unwrap()],
        )
        .unwrap();
        let cs = close_by_one(&ps).unwrap();
        assert_eq!(cs.extent_family(), vec![vec![], vec![0]]);

        // when some object's description is the top, the empty extent is
        // not closed and must not be emitted
        let sets = SetSpace::new(vec!["a".into()]);
        let top = sets.top().unwrap();
        let ps = PatternStructure::new(vec!["g".into()], sets, vec![top]).unwrap();
        let cs = close_by_one(&ps).unwrap();
        assert_eq!(cs.extent_family(), vec![vec![0]]);
    }

    #[test]
    fn canonic_extension_rule() {
        let empty = BitSet::new(3);
        let g1 = BitSet::from_indices(3, [0]);
        assert!(is_canonic_extension(&empty, &g1, 0));

        let ext = BitSet::from_indices(3, [1]);
        let all = BitSet::full(3);
        assert!(!is_canonic_extension(&ext, &all, 2));

        let ext = BitSet::from_indices(3, [0]);
        let new = BitSet::from_indices(3, [0, 1]);
        assert!(is_canonic_extension(&ext, &new, 1));
    }

    #[test]
    fn hasse_of_demo_lattice() {
        let ps = demo_intervals();
        let cs = close_by_one(&ps).unwrap();
        let top_idx = cs
            .concepts()
            .iter()
            .position(|c| c.extent.len() == 3)
            .unwrap();
        let lower: Vec<Vec<usize>> = cs
            .covers()
            .iter()
            .filter(|&&(_, j)| j == top_idx)
            .map(|&(i, _)| cs.concepts()[i].extent.indices())
            .collect();
        assert_eq!(lower, vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn hasse_trivial_cases() {
        let sets = SetSpace::new(vec!["a".into()]);
        let top = sets.top().unwrap();
        let ps = PatternStructure::new(vec!["g".into()], sets, vec![top]).unwrap();
        let cs = close_by_one(&ps).unwrap();
        assert!(cs.covers().is_empty());

        // chain of extents {} < {g1} < {g1, g2}
        let sets = SetSpace::new(vec!["a".into(), "b".into(), "c".into()]);
        let d1 = sets.set_of(&["a", "b"]);
        let d2 = sets.set_of(&["a"]);
        let ps = PatternStructure::new(vec!["g1".into(), "g2".into()], sets, vec![d1, d2]).unwrap();
        let cs = close_by_one(&ps).unwrap();
        assert_eq!(cs.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parallel_output_is_identical() {
        let ps = demo_intervals();
        let seq = close_by_one(&ps).unwrap();
        let par = close_by_one_par(&ps).unwrap();
        assert_eq!(seq.concepts(), par.concepts());
        assert_eq!(seq.covers(), par.covers());

        let ts = triangle_sets();
        let seq = close_by_one(&ts).unwrap();
        let par = close_by_one_par(&ts).unwrap();
        assert_eq!(seq.concepts(), par.concepts());
    }

    #[test]
    fn triangle_sets_has_full_boolean_lattice() {
        let cs = close_by_one(&triangle_sets()).unwrap();
        assert_eq!(cs.len(), 8);
    }

    #[test]
    fn representation_contexts_reproduce_the_interval_lattice() {
        // running either representation context as a plain set structure
        // gives a lattice with the same extents
        let ps = demo_intervals();
        let interval_cs = close_by_one(&ps).unwrap();

        let rep = crate::representation::minimal_representation_context(&ps).unwrap();
        let as_sets = rep.context.as_pattern_structure();
        // the second object carries the attributes indexed 2, 3, 4
        assert_eq!(as_sets.delta(1).indices(), vec![2, 3, 4]);
        let set_cs = close_by_one(&as_sets).unwrap();
        assert_eq!(interval_cs.extent_family(), set_cs.extent_family());

        let rep = crate::representation::interordinal_context(&ps).unwrap();
        let set_cs = close_by_one(&rep.context.as_pattern_structure()).unwrap();
        assert_eq!(interval_cs.extent_family(), set_cs.extent_family());
    }

    #[test]
    fn empty_structure_has_one_concept() {
        let sets = SetSpace::new(vec!["a".into(), "b".into()]);
        let ps = PatternStructure::new(Vec::new(), sets, Vec::new()).unwrap();
        let cs = close_by_one(&ps).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs.concepts()[0].extent.is_empty());
        assert_eq!(cs.concepts()[0].intent.len(), 2);
    }

    #[test]
    fn dot_and_json_are_deterministic() {
        let ps = demo_intervals();
        let cs = close_by_one(&ps).unwrap();
        let dot = to_dot(&ps, &cs);
        assert_eq!(dot.matches("label=").count(), 7);
        assert!(dot.contains("rankdir=BT"));
        let js = to_json(&ps, &cs);
        assert_eq!(js["concepts"].as_array().unwrap().len(), 7);
        assert_eq!(js["concepts"][0]["intent"], "TOP");
    }
}
