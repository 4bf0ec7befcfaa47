//! Formal contexts and representation contexts.
//!
//! A representation context of a pattern structure is a binary context
//! over the same objects whose attributes are descriptions, with
//! incidence `(g, m)` iff `m` is subsumed by `delta(g)`, and whose
//! attribute set is join-dense in the lattice of intents. Its concept
//! lattice is isomorphic to the pattern lattice: the extents agree, and
//! intents correspond via `d = join(B)` and `B = (down-set of d) ∩ M`.
//!
//! The module provides two builders (interordinal threshold scaling for
//! interval data, and the minimal builder from join-irreducible intents),
//! a verifier for the bijection, the simplicity preorder on contexts,
//! closed relations, attribute reduction, and the reconstruction of a
//! kernel operator from any context that is simpler than the minimal
//! representation context.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::cbo::close_by_one;
use crate::descriptions::{
    render_endpoint, DescriptionSpace, ExplicitSpace, Interval, IntervalSpace, IntervalVector,
    SetSpace,
};
use crate::order::{Elt, FiniteLattice, LatticeError};
use crate::pattern::{PatternStructure, PsError};
use crate::projections::{kernel_from_fixed_point, ProjError, ProjectedSpace, TableKernel};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("attribute set is not join-dense: `{0}` is not a join of attributes below it")]
    NotJoinDense(String),
    #[error("contexts have different object sets")]
    ObjectSetMismatch,
    #[error("sub-relation is not contained in the context incidence")]
    IncidenceNotSubset,
    #[error("context is not simpler than the representation context (attribute `{0}`)")]
    NotSimpler(String),
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
    #[error("malformed context file: {0}")]
    BadFile(String),
    #[error(transparent)]
    Pattern(#[from] PsError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Projection(#[from] ProjError),
}

// ---------------------------------------------------------------------------
// Formal contexts
// ---------------------------------------------------------------------------

/// A binary context: objects, named attributes, and an incidence matrix
/// stored as one attribute bitset per object row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
}

impl FormalContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<BitSet>,
    ) -> Result<Self, RepError> {
        assert_eq!(objects.len(), rows.len(), "one row per object");
        let mut seen = std::collections::HashSet::new();
        for a in &attributes {
            if !seen.insert(a.clone()) {
                return Err(RepError::DuplicateAttribute(a.clone()));
            }
        }
        for r in &rows {
            assert_eq!(r.capacity(), attributes.len(), "row width");
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    pub fn row(&self, g: usize) -> &BitSet {
        &self.rows[g]
    }

    /// The extent of one attribute.
    pub fn column(&self, m: usize) -> BitSet {
        BitSet::from_indices(
            self.objects.len(),
            (0..self.objects.len()).filter(|&g| self.incident(g, m)),
        )
    }

    /// Attributes shared by all objects of `a`.
    pub fn object_derive(&self, a: &BitSet) -> BitSet {
        let mut acc = BitSet::full(self.attributes.len());
        for g in a.iter() {
            acc = acc.intersection(&self.rows[g]);
        }
        acc
    }

    /// Objects carrying all attributes of `b`.
    pub fn attribute_derive(&self, b: &BitSet) -> BitSet {
        let mut acc = BitSet::full(self.objects.len());
        for m in b.iter() {
            acc = acc.intersection(&self.column(m));
        }
        acc
    }

    pub fn object_set(&self, names: &[&str]) -> BitSet {
        BitSet::from_indices(
            self.objects.len(),
            names.iter().map(|n| {
                self.objects
                    .iter()
                    .position(|o| o == n)
                    .unwrap_or_else(|| panic!("unknown object `{n}`"))
            }),
        )
    }

    pub fn attribute_set(&self, names: &[&str]) -> BitSet {
        BitSet::from_indices(
            self.attributes.len(),
            names.iter().map(|n| {
                self.attributes
                    .iter()
                    .position(|a| a == n)
                    .unwrap_or_else(|| panic!("unknown attribute `{n}`"))
            }),
        )
    }

    /// The standard-FCA reading of a context as a pattern structure over
    /// the powerset of its attributes.
    pub fn as_pattern_structure(&self) -> PatternStructure<SetSpace> {
        let space = SetSpace::new(self.attributes.clone());
        PatternStructure::new(self.objects.clone(), space, self.rows.clone())
            .expect("context rows are valid attribute sets")
    }
}

/// Reads the Burmeister context format.
pub fn parse_cxt(text: &str) -> Result<FormalContext, RepError> {
    let mut lines = text.lines();
    let magic = lines
        .next()
        .ok_or_else(|| RepError::BadFile("empty file".into()))?;
    if magic.trim() != "B" {
        return Err(RepError::BadFile("missing B header".into()));
    }
    let mut rest = lines.filter(|l| !l.trim().is_empty());
    let ng: usize = rest
        .next()
        .and_then(|l| l.trim().parse().ok())
        .ok_or_else(|| RepError::BadFile("missing object count".into()))?;
    let nm: usize = rest
        .next()
        .and_then(|l| l.trim().parse().ok())
        .ok_or_else(|| RepError::BadFile("missing attribute count".into()))?;
    let mut names = Vec::with_capacity(ng + nm);
    for _ in 0..ng + nm {
        names.push(
            rest.next()
                .ok_or_else(|| RepError::BadFile("missing name line".into()))?
                .to_string(),
        );
    }
    let attributes = names.split_off(ng);
    let objects = names;
    let mut rows = Vec::with_capacity(ng);
    for g in 0..ng {
        let line = rest
            .next()
            .ok_or_else(|| RepError::BadFile(format!("missing incidence row {g}")))?;
        let cells: Vec<char> = line.trim_end().chars().collect();
        if cells.len() != nm {
            return Err(RepError::BadFile(format!(
                "incidence row {g} has {} cells, expected {nm}",
                cells.len()
            )));
        }
        let mut row = BitSet::new(nm);
        for (m, c) in cells.iter().enumerate() {
            match c {
                'X' | 'x' => row.insert(m),
                '.' => {}
                other => {
                    return Err(RepError::BadFile(format!(
                        "unexpected incidence character `{other}`"
                    )))
                }
            }
        }
        rows.push(row);
    }
    FormalContext::new(objects, attributes, rows)
}

/// Writes the Burmeister context format; `parse_cxt` reads it back
/// bit-exactly.
pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = String::from("B\n\n");
    out.push_str(&format!(
        "{}\n{}\n\n",
        ctx.object_count(),
        ctx.attribute_count()
    ));
    for g in ctx.objects() {
        out.push_str(g);
        out.push('\n');
    }
    for m in ctx.attributes() {
        out.push_str(m);
        out.push('\n');
    }
    for g in 0..ctx.object_count() {
        for m in 0..ctx.attribute_count() {
            out.push(if ctx.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct ContextJson {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Vec<u8>>,
}

/// Reads the JSON context format
/// `{"objects":[...],"attributes":[...],"incidence":[[0,1,...],...]}`.
pub fn parse_context_json(text: &str) -> Result<FormalContext, RepError> {
    let file: ContextJson =
        serde_json::from_str(text).map_err(|e| RepError::BadFile(e.to_string()))?;
    if file.incidence.len() != file.objects.len() {
        return Err(RepError::BadFile("one incidence row per object".into()));
    }
    let rows = file
        .incidence
        .iter()
        .map(|r| {
            if r.len() != file.attributes.len() {
                return Err(RepError::BadFile("row width mismatch".into()));
            }
            Ok(BitSet::from_indices(
                file.attributes.len(),
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, _)| i),
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    FormalContext::new(file.objects, file.attributes, rows)
}

pub fn context_to_json(ctx: &FormalContext) -> serde_json::Value {
    serde_json::json!({
        "objects": ctx.objects(),
        "attributes": ctx.attributes(),
        "incidence": (0..ctx.object_count())
            .map(|g| {
                (0..ctx.attribute_count())
                    .map(|m| u8::from(ctx.incident(g, m)))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// Representation contexts
// ---------------------------------------------------------------------------

/// A formal context whose attributes carry their originating
/// descriptions.
#[derive(Clone, Debug)]
pub struct RepContext<D> {
    pub context: FormalContext,
    pub descriptions: Vec<D>,
}

/// The lattice of intents of a pattern structure, materialised: every
/// intent with its extent, ordered as produced by the concept sort.
pub struct IntentLattice<D> {
    pub intents: Vec<D>,
    pub extents: Vec<BitSet>,
}

pub fn intent_lattice<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
) -> Result<IntentLattice<S::D>, PsError> {
    let cs = close_by_one(ps)?;
    Ok(IntentLattice {
        intents: cs.intents(),
        extents: cs.extents(),
    })
}

/// Join inside the intent lattice: the meet of all intents above every
/// element of `xs`. The empty join is the least intent.
fn join_in_intents<S: DescriptionSpace>(space: &S, intents: &[S::D], xs: &[&S::D]) -> Option<S::D> {
    let uppers: Vec<&S::D> = intents
        .iter()
        .filter(|d| xs.iter().all(|x| space.leq(x, d)))
        .collect();
    let mut it = uppers.into_iter();
    let first = it.next()?;
    Some(it.fold(first.clone(), |acc, d| space.meet(&acc, d)))
}

/// Builds the representation context of `ps` over the attribute
/// descriptions `m`, checking that they are join-dense in the intent
/// lattice. Attribute names are the canonical renderings.
pub fn representation_context<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    m: &[S::D],
) -> Result<RepContext<S::D>, RepError> {
    let space = ps.space();
    let lat = intent_lattice(ps)?;
    for d in &lat.intents {
        let below: Vec<&S::D> = m.iter().filter(|x| space.leq(x, d)).collect();
        match join_in_intents(space, &lat.intents, &below) {
            Some(j) if space.equal(&j, d) => {}
            _ => return Err(RepError::NotJoinDense(space.render(d))),
        }
    }
    build_rep_context(ps, m.to_vec())
}

fn build_rep_context<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    m: Vec<S::D>,
) -> Result<RepContext<S::D>, RepError> {
    let space = ps.space();
    let names: Vec<String> = m.iter().map(|d| space.render(d)).collect();
    let rows = (0..ps.len())
        .map(|g| {
            BitSet::from_indices(
                m.len(),
                m.iter()
                    .enumerate()
                    .filter(|(_, d)| space.leq(d, ps.delta(g)))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    Ok(RepContext {
        context: FormalContext::new(ps.objects().to_vec(), names, rows)?,
        descriptions: m,
    })
}

/// Interordinal scaling of an interval pattern structure: for every
/// attribute, one `>= v` threshold per grid value above the minimum and
/// one `<= v` per value below the maximum, plus the single global
/// pattern (the meet of all object descriptions) as the last attribute.
pub fn interordinal_context(
    ps: &PatternStructure<IntervalSpace>,
) -> Result<RepContext<IntervalVector>, RepError> {
    let space = ps.space();
    let arity = space.arity();
    let mut m: Vec<IntervalVector> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for i in 0..arity {
        let mut values: Vec<f64> = Vec::new();
        for d in ps.deltas() {
            if let IntervalVector::Intervals(xs) = d {
                values.push(xs[i].lo());
                values.push(xs[i].hi());
            }
        }
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| a.to_bits() == b.to_bits());
        if values.is_empty() {
            continue;
        }
        let attr = &space.attribute_names()[i];
        let one_sided = |lo: f64, hi: f64| {
            let mut comps = vec![Interval::unbounded(); arity];
            comps[i] = Interval::new(lo, hi).expect("one-sided bounds are ordered");
            IntervalVector::Intervals(comps)
        };
        for &v in values.iter().skip(1).rev() {
            names.push(format!("{attr}>={}", render_endpoint(v)));
            m.push(one_sided(v, f64::INFINITY));
        }
        for &v in values.iter().take(values.len() - 1) {
            names.push(format!("{attr}<={}", render_endpoint(v)));
            m.push(one_sided(f64::NEG_INFINITY, v));
        }
    }
    let global = ps.ext_to_int(&BitSet::full(ps.len()))?;
    names.push(space.render(&global));
    m.push(global);

    let mut rep = build_rep_context(ps, m)?;
    rep.context = FormalContext::new(
        rep.context.objects().to_vec(),
        names,
        (0..rep.context.object_count())
            .map(|g| rep.context.row(g).clone())
            .collect(),
    )?;
    Ok(rep)
}

/// The minimal builder: attributes are the intents that are
/// join-irreducible in the intent lattice extended with the space bottom.
/// Extending by the bottom keeps the least intent as an attribute when it
/// is not the space bottom itself (it then has exactly one lower cover);
/// `reduce_attributes` strips it again.
pub fn minimal_representation_context<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
) -> Result<RepContext<S::D>, RepError> {
    let space = ps.space();
    let lat = intent_lattice(ps)?;
    let mut poset: Vec<S::D> = lat.intents.clone();
    if let Some(bottom) = space.bottom() {
        if !poset.iter().any(|d| space.equal(d, &bottom)) {
            poset.push(bottom);
        }
    }
    let lt = |a: &S::D, b: &S::D| space.leq(a, b) && !space.equal(a, b);
    let mut chosen: Vec<usize> = Vec::new(); // indices into lat.intents
    for (i, d) in lat.intents.iter().enumerate() {
        let below: Vec<&S::D> = poset.iter().filter(|e| lt(e, d)).collect();
        let covers = below
            .iter()
            .filter(|e| !below.iter().any(|f| lt(e, f)))
            .count();
        if covers == 1 {
            chosen.push(i);
        }
    }
    // emit in the concept order: ascending extent size, then lexicographic
    chosen.sort_by(|&a, &b| {
        (lat.extents[a].len(), &lat.extents[a]).cmp(&(lat.extents[b].len(), &lat.extents[b]))
    });
    let m: Vec<S::D> = chosen.into_iter().map(|i| lat.intents[i].clone()).collect();
    build_rep_context(ps, m)
}

// ---------------------------------------------------------------------------
// Concept-lattice bijection
// ---------------------------------------------------------------------------

/// Outcome of verifying a representation context against its pattern
/// structure: incidence by definition, and the concept bijection with
/// `d = join(B)` and `B = (down-set of d) ∩ M` in both directions.
#[derive(Debug, Clone)]
pub struct RepReport {
    pub pattern_concepts: usize,
    pub context_concepts: usize,
    pub failures: Vec<String>,
}

impl RepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.pattern_concepts == self.context_concepts
    }
}

/// Verifies the representation-context bijection.
pub fn verify_representation<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    rep: &RepContext<S::D>,
) -> Result<RepReport, RepError> {
    let space = ps.space();
    let ctx = &rep.context;
    let m = &rep.descriptions;
    let mut failures = Vec::new();

    if ctx.objects() != ps.objects() {
        return Err(RepError::ObjectSetMismatch);
    }
    for g in 0..ps.len() {
        for (j, d) in m.iter().enumerate() {
            let expected = space.leq(d, ps.delta(g));
            if ctx.incident(g, j) != expected {
                failures.push(format!(
                    "incidence mismatch at object {} attribute {}",
                    ps.objects()[g],
                    ctx.attributes()[j]
                ));
            }
        }
    }

    let lat = intent_lattice(ps)?;
    let pattern_concepts = lat.intents.len();

    // forward: each pattern concept induces a formal concept
    for (d, a) in lat.intents.iter().zip(&lat.extents) {
        let b = BitSet::from_indices(
            m.len(),
            m.iter()
                .enumerate()
                .filter(|(_, x)| space.leq(x, d))
                .map(|(i, _)| i),
        );
        if ctx.object_derive(a) != b || &ctx.attribute_derive(&b) != a {
            failures.push(format!(
                "pattern concept with intent {} does not map to a formal concept",
                space.render(d)
            ));
            continue;
        }
        let below: Vec<&S::D> = b.iter().map(|i| &m[i]).collect();
        match join_in_intents(space, &lat.intents, &below) {
            Some(j) if space.equal(&j, d) => {}
            _ => failures.push(format!(
                "join of the attribute set below {} does not recover it",
                space.render(d)
            )),
        }
    }

    // backward: each formal concept comes from a pattern concept
    let context_cs = crate::oracle::context_concepts(ctx);
    let context_concepts = context_cs.len();
    for (a, b) in &context_cs {
        let below: Vec<&S::D> = b.iter().map(|i| &m[i]).collect();
        let d = match join_in_intents(space, &lat.intents, &below) {
            Some(d) => d,
            None => {
                failures.push("attribute subset has no join in the intent lattice".into());
                continue;
            }
        };
        let is_pattern_concept = lat
            .intents
            .iter()
            .zip(&lat.extents)
            .any(|(di, ai)| space.equal(di, &d) && ai == a);
        if !is_pattern_concept {
            failures.push(format!(
                "formal concept with extent {:?} has no pattern counterpart",
                a.indices()
            ));
            continue;
        }
        let expected_b = BitSet::from_indices(
            m.len(),
            m.iter()
                .enumerate()
                .filter(|(_, x)| space.leq(x, &d))
                .map(|(i, _)| i),
        );
        if b != &expected_b {
            failures.push(format!(
                "attribute set of extent {:?} is not the down-set of its intent",
                a.indices()
            ));
        }
    }

    Ok(RepReport {
        pattern_concepts,
        context_concepts,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Simplicity order and closed relations
// ---------------------------------------------------------------------------

/// Witness that one context is simpler than another: each attribute of
/// the first mapped to a set of attributes of the second with the same
/// derived extent.
#[derive(Debug, Clone)]
pub struct SimplicityWitness {
    pub map: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Clone)]
pub enum SimplerOutcome {
    Simpler(SimplicityWitness),
    NotSimpler { attribute: String },
}

impl SimplerOutcome {
    pub fn is_simpler(&self) -> bool {
        matches!(self, SimplerOutcome::Simpler(_))
    }
}

/// Decides `k1 <=_S k2`: every attribute extent of `k1` must be an
/// intersection of attribute extents of `k2`. Uses the largest candidate
/// `B = E'` in `k2`; a witness exists iff that candidate works.
pub fn simpler_than(k1: &FormalContext, k2: &FormalContext) -> Result<SimplerOutcome, RepError> {
    if k1.objects() != k2.objects() {
        return Err(RepError::ObjectSetMismatch);
    }
    let mut map = Vec::new();
    for (i, name) in k1.attributes().iter().enumerate() {
        let extent = k1.column(i);
        let b2 = k2.object_derive(&extent);
        if k2.attribute_derive(&b2) != extent {
            return Ok(SimplerOutcome::NotSimpler {
                attribute: name.clone(),
            });
        }
        map.push((
            name.clone(),
            b2.iter().map(|j| k2.attributes()[j].clone()).collect(),
        ));
    }
    Ok(SimplerOutcome::Simpler(SimplicityWitness { map }))
}

/// Whether `sub` is a closed relation of `ctx`: same objects and
/// attributes, incidence contained in the context's, and every concept of
/// the sub-context is a concept of the full one.
pub fn is_closed_relation(sub: &FormalContext, ctx: &FormalContext) -> Result<bool, RepError> {
    if sub.objects() != ctx.objects() || sub.attributes() != ctx.attributes() {
        return Err(RepError::ObjectSetMismatch);
    }
    for g in 0..sub.object_count() {
        if !sub.row(g).is_subset(ctx.row(g)) {
            return Err(RepError::IncidenceNotSubset);
        }
    }
    for (a, b) in crate::oracle::context_concepts(sub) {
        if ctx.object_derive(&a) != b || ctx.attribute_derive(&b) != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Removes duplicate columns (keeping the first) and every attribute
/// whose extent is the intersection of the strictly larger remaining
/// extents. The concept lattice is unchanged.
pub fn reduce_attributes(ctx: &FormalContext) -> FormalContext {
    let n = ctx.attribute_count();
    let columns: Vec<BitSet> = (0..n).map(|m| ctx.column(m)).collect();
    let mut keep: Vec<usize> = Vec::new();
    for m in 0..n {
        if keep.iter().any(|&k| columns[k] == columns[m]) {
            continue;
        }
        keep.push(m);
    }
    let reducible = |m: usize| {
        let mut acc = BitSet::full(ctx.object_count());
        for &k in &keep {
            if k != m && columns[m].is_subset(&columns[k]) && columns[m] != columns[k] {
                acc = acc.intersection(&columns[k]);
            }
        }
        acc == columns[m]
    };
    let kept: Vec<usize> = keep.iter().copied().filter(|&m| !reducible(m)).collect();
    let attributes = kept.iter().map(|&m| ctx.attributes()[m].clone()).collect();
    let rows = (0..ctx.object_count())
        .map(|g| {
            BitSet::from_indices(
                kept.len(),
                kept.iter()
                    .enumerate()
                    .filter(|(_, &m)| ctx.incident(g, m))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    FormalContext::new(ctx.objects().to_vec(), attributes, rows)
        .expect("reduction keeps attribute names unique")
}

// ---------------------------------------------------------------------------
// From a simpler context back to a projection
// ---------------------------------------------------------------------------

/// The kernel reconstructed from a context simpler than the minimal
/// representation context, together with the materialised intent lattice
/// it lives on and the rehosted pattern structure.
pub struct ContextProjection<D> {
    pub lattice: FiniteLattice,
    pub elements: Vec<D>,
    pub kernel: TableKernel,
    pub delta: Vec<Elt>,
}

impl<D> ContextProjection<D> {
    /// The o-projected structure over the materialised lattice.
    pub fn projected_structure(
        &self,
        objects: Vec<String>,
    ) -> PatternStructure<ProjectedSpace<ExplicitSpace, TableKernel>> {
        let space = ProjectedSpace::new(
            ExplicitSpace::new(self.lattice.clone()),
            self.kernel.clone(),
        );
        let delta = self.delta.iter().map(|&e| self.kernel.map(e)).collect();
        PatternStructure::new(objects, space, delta).expect("projected deltas are fixed points")
    }
}

/// Realises a context `ctx <=_S` minimal representation of `ps` as an
/// o-projection: materialises the intent lattice (extended with the space
/// bottom), maps every attribute extent to its intent, closes that set
/// under joins, and builds the kernel fixing exactly the closure plus the
/// bottom.
pub fn projection_from_context<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    ctx: &FormalContext,
) -> Result<ContextProjection<S::D>, RepError> {
    let minimal = minimal_representation_context(ps)?;
    match simpler_than(ctx, &minimal.context)? {
        SimplerOutcome::Simpler(_) => {}
        SimplerOutcome::NotSimpler { attribute } => return Err(RepError::NotSimpler(attribute)),
    }
    let space = ps.space();
    let lat = intent_lattice(ps)?;
    let mut elements: Vec<S::D> = lat.intents.clone();
    if let Some(bottom) = space.bottom() {
        if !elements.iter().any(|d| space.equal(d, &bottom)) {
            elements.push(bottom);
        }
    }
    let index_of = |d: &S::D| -> usize {
        elements
            .iter()
            .position(|e| space.equal(e, d))
            .expect("meets of intents are intents")
    };
    let names: Vec<String> = elements.iter().map(|d| space.render(d)).collect();
    let lattice = FiniteLattice::from_meet_fn(names, |a, b| {
        index_of(&space.meet(&elements[a], &elements[b]))
    })?;

    // attribute extents resolve to intents of the base structure; the
    // empty join contributes the least intent, and the lattice bottom is
    // always fixed
    let least_intent = ps.ext_to_int(&BitSet::full(ps.len()))?;
    let mut fixed: Vec<Elt> = vec![lattice.bottom(), Elt(index_of(&least_intent))];
    for m in 0..ctx.attribute_count() {
        let d = ps.ext_to_int(&ctx.column(m))?;
        fixed.push(Elt(index_of(&d)));
    }
    // close under joins
    loop {
        let mut grew = false;
        let snapshot = fixed.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                let j = lattice.join(a, b)?;
                if !fixed.contains(&j) {
                    fixed.push(j);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    fixed.sort_unstable();
    fixed.dedup();
    let kernel = kernel_from_fixed_point(&lattice, &fixed)?;
    let delta = ps.deltas().iter().map(|d| Elt(index_of(d))).collect();
    Ok(ContextProjection {
        lattice,
        elements,
        kernel,
        delta,
    })
}

/// Attaches descriptions to a bare context over the objects of `ps`,
/// mapping every attribute to the intent of its extent. For a context
/// that is a representation context of `ps` this recovers the original
/// attribute descriptions up to extent equivalence.
pub fn attach_descriptions<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    ctx: &FormalContext,
) -> Result<RepContext<S::D>, RepError> {
    if ctx.objects() != ps.objects() {
        return Err(RepError::ObjectSetMismatch);
    }
    let descriptions = (0..ctx.attribute_count())
        .map(|m| ps.ext_to_int(&ctx.column(m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RepContext {
        context: ctx.clone(),
        descriptions,
    })
}

/// Verifies that a reconstructed projection realises the given context as
/// a representation context of the projected structure.
pub fn verify_context_projection<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    ctx: &FormalContext,
    proj: &ContextProjection<S::D>,
) -> Result<RepReport, RepError> {
    let projected = proj.projected_structure(ps.objects().to_vec());
    let descriptions = (0..ctx.attribute_count())
        .map(|m| {
            let d = ps.ext_to_int(&ctx.column(m))?;
            let space = ps.space();
            Ok(proj
                .elements
                .iter()
                .position(|e| space.equal(e, &d))
                .map(Elt)
                .expect("attribute intents are lattice elements"))
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    let rep = RepContext {
        context: FormalContext::new(
            ctx.objects().to_vec(),
            ctx.attributes().to_vec(),
            (0..ctx.object_count())
                .map(|g| ctx.row(g).clone())
                .collect(),
        )?,
        descriptions,
    };
    verify_representation(&projected, &rep)
}
