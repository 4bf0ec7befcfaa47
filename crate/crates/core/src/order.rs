//! Explicit finite complete lattices given by a meet table.
//!
//! The canonical input is a total meet table over named elements; a
//! cover-relation loader is also provided and compiles to a meet table.
//! Validation checks the semilattice axioms (idempotency, commutativity,
//! associativity) and the presence of a neutral top element. The derived
//! natural order is `a <= b iff meet(a, b) = a`; joins are computed as the
//! meet of the set of common upper bounds, so the empty meet is the top
//! and the empty join is the bottom.

use std::collections::HashMap;

use serde::Deserialize;
use thiserror::Error;

/// Index of an element inside a [`FiniteLattice`]. Element ids are opaque
/// strings in files and dense integers internally; file order defines the
/// index order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elt(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Idempotency,
    Commutativity,
    Associativity,
    MissingTop,
}

/// One violated lattice axiom together with the witnessing elements.
#[derive(Debug, Clone)]
pub struct AxiomViolation {
    pub kind: AxiomKind,
    pub witness: Vec<String>,
}

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("lattice axioms violated: {}", render_violations(.0))]
    Axioms(Vec<AxiomViolation>),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("element list is empty")]
    Empty,
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("meet table entry missing for ({0}, {1})")]
    MissingEntry(String, String),
    #[error("conflicting meet table entries for ({0}, {1})")]
    ConflictingEntry(String, String),
    #[error(
        "covers do not form a meet-semilattice: ({0}, {1}) has no greatest common lower bound"
    )]
    NoMeet(String, String),
    #[error("cover relation contains a cycle involving `{0}`")]
    CoverCycle(String),
    #[error("lattice file must specify exactly one of `meet` or `covers`")]
    MeetOrCovers,
}

fn render_violations(vs: &[AxiomViolation]) -> String {
    vs.iter()
        .map(|v| format!("{:?}{:?}", v.kind, v.witness))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Raw lattice description prior to validation.
#[derive(Debug, Clone)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub source: MeetSource,
}

#[derive(Debug, Clone)]
pub enum MeetSource {
    /// `(i, j, k)` entries meaning `meet(elements[i], elements[j]) = elements[k]`.
    /// Missing mirror cells `(j, i)` are filled by commutativity and missing
    /// diagonal cells by idempotency; anything else missing is an error.
    Table(Vec<(usize, usize, usize)>),
    /// `(lower, upper)` cover pairs by element name.
    Covers(Vec<(String, String)>),
}

#[derive(Deserialize)]
struct LatticeFile {
    elements: Vec<String>,
    meet: Option<Vec<(usize, usize, usize)>>,
    covers: Option<Vec<(String, String)>>,
}

/// Parses the JSON lattice file format:
/// `{"elements": [...], "meet": [[i,j,k],...]}` or
/// `{"elements": [...], "covers": [["lower","upper"],...]}`.
/// Files specifying both (or neither) are rejected.
pub fn parse_lattice_json(text: &str) -> Result<LatticeSpec, LatticeError> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|_| LatticeError::MeetOrCovers)?;
    let source = match (file.meet, file.covers) {
        (Some(t), None) => MeetSource::Table(t),
        (None, Some(c)) => MeetSource::Covers(c),
        _ => return Err(LatticeError::MeetOrCovers),
    };
    Ok(LatticeSpec {
        elements: file.elements,
        source,
    })
}

/// A validated finite complete lattice. Immutable after validation; all
/// queries are read-only and safe to share across threads.
#[derive(Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    meet: Vec<usize>, // n*n row-major
    bottom: Elt,
    top: Elt,
}

impl std::fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteLattice({:?})", self.names)
    }
}

/// Validates a raw spec and returns the lattice, or the full list of
/// violated axioms.
pub fn validate_lattice(spec: &LatticeSpec) -> Result<FiniteLattice, LatticeError> {
    if spec.elements.is_empty() {
        return Err(LatticeError::Empty);
    }
    let mut index = HashMap::new();
    for (i, name) in spec.elements.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }
    let n = spec.elements.len();
    let table = match &spec.source {
        MeetSource::Table(entries) => fill_table(&spec.elements, n, entries)?,
        MeetSource::Covers(pairs) => table_from_covers(&spec.elements, &index, pairs)?,
    };

    let name = |i: usize| spec.elements[i].clone();
    let mut violations = Vec::new();
    for a in 0..n {
        if table[a * n + a] != a {
            violations.push(AxiomViolation {
                kind: AxiomKind::Idempotency,
                witness: vec![name(a)],
            });
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if table[a * n + b] != table[b * n + a] {
                violations.push(AxiomViolation {
                    kind: AxiomKind::Commutativity,
                    witness: vec![name(a), name(b)],
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = table[table[a * n + b] * n + c];
                let right = table[a * n + table[b * n + c]];
                if left != right {
                    violations.push(AxiomViolation {
                        kind: AxiomKind::Associativity,
                        witness: vec![name(a), name(b), name(c)],
                    });
                }
            }
        }
    }
    let top = (0..n).find(|&t| (0..n).all(|x| table[t * n + x] == x));
    if top.is_none() {
        violations.push(AxiomViolation {
            kind: AxiomKind::MissingTop,
            witness: vec![],
        });
    }
    if !violations.is_empty() {
        return Err(LatticeError::Axioms(violations));
    }
    let bottom = (0..n).fold(0, |acc, x| table[acc * n + x]);
    Ok(FiniteLattice {
        names: spec.elements.clone(),
        index,
        meet: table,
        bottom: Elt(bottom),
        top: Elt(top.unwrap()),
    })
}

fn fill_table(
    names: &[String],
    n: usize,
    entries: &[(usize, usize, usize)],
) -> Result<Vec<usize>, LatticeError> {
    let mut table = vec![usize::MAX; n * n];
    for &(i, j, k) in entries {
        for idx in [i, j, k] {
            if idx >= n {
                return Err(LatticeError::IndexOutOfRange(idx));
            }
        }
        let cell = &mut table[i * n + j];
        if *cell != usize::MAX && *cell != k {
            return Err(LatticeError::ConflictingEntry(
                names[i].clone(),
                names[j].clone(),
            ));
        }
        *cell = k;
    }
    // Idempotent diagonal and commutative mirror are implied when omitted.
    for a in 0..n {
        if table[a * n + a] == usize::MAX {
            table[a * n + a] = a;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if table[a * n + b] == usize::MAX {
                if table[b * n + a] != usize::MAX {
                    table[a * n + b] = table[b * n + a];
                } else {
                    return Err(LatticeError::MissingEntry(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
    }
    Ok(table)
}

fn table_from_covers(
    names: &[String],
    index: &HashMap<String, usize>,
    pairs: &[(String, String)],
) -> Result<Vec<usize>, LatticeError> {
    let n = names.len();
    let resolve = |s: &String| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(s.clone()))
    };
    // leq as reflexive-transitive closure of the cover pairs
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (lo, up) in pairs {
        leq[resolve(lo)? * n + resolve(up)?] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i * n + j] && leq[j * n + i] {
                return Err(LatticeError::CoverCycle(names[i].clone()));
            }
        }
    }
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n)
                .filter(|&c| leq[c * n + a] && leq[c * n + b])
                .collect();
            let glb = lower
                .iter()
                .copied()
                .find(|&m| lower.iter().all(|&c| leq[c * n + m]));
            match glb {
                Some(m) => table[a * n + b] = m,
                None => return Err(LatticeError::NoMeet(names[a].clone(), names[b].clone())),
            }
        }
    }
    Ok(table)
}

impl FiniteLattice {
    /// Builds and validates a lattice from element names and a meet function
    /// on indices. Handy for programmatic constructions.
    pub fn from_meet_fn<F: Fn(usize, usize) -> usize>(
        names: Vec<String>,
        meet: F,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((i, j, meet(i, j)));
            }
        }
        validate_lattice(&LatticeSpec {
            elements: names,
            source: MeetSource::Table(entries),
        })
    }

    /// The powerset of `atoms` ordered by inclusion, with meet given by
    /// intersection. Elements are named by concatenating the member atom
    /// names; the empty set is named `{}`.
    pub fn powerset(atoms: &[&str]) -> Self {
        let n = atoms.len();
        assert!(n <= 16, "powerset lattice limited to 16 atoms");
        let name_of = |mask: usize| {
            if mask == 0 {
                "{}".to_string()
            } else {
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| atoms[i])
                    .collect::<Vec<_>>()
                    .join("")
            }
        };
        let names: Vec<String> = (0..1usize << n).map(name_of).collect();
        FiniteLattice::from_meet_fn(names, |a, b| a & b)
            .expect("powerset is always a valid lattice")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.names.len()).map(Elt)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elt) -> &str {
        &self.names[e.0]
    }

    pub fn elt(&self, name: &str) -> Result<Elt, LatticeError> {
        self.index
            .get(name)
            .map(|&i| Elt(i))
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> Elt {
        self.bottom
    }

    pub fn top(&self) -> Elt {
        self.top
    }

    fn check(&self, e: Elt) -> Result<(), LatticeError> {
        if e.0 < self.names.len() {
            Ok(())
        } else {
            Err(LatticeError::IndexOutOfRange(e.0))
        }
    }

    pub fn meet(&self, a: Elt, b: Elt) -> Elt {
        Elt(self.meet[a.0 * self.names.len() + b.0])
    }

    /// The natural order: `a <= b iff meet(a, b) = a`.
    pub fn leq(&self, a: Elt, b: Elt) -> bool {
        self.meet(a, b) == a
    }

    pub fn lt(&self, a: Elt, b: Elt) -> bool {
        a != b && self.leq(a, b)
    }

    /// Infimum of a set of elements; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = Elt>>(&self, xs: I) -> Result<Elt, LatticeError> {
        let mut acc = self.top;
        for x in xs {
            self.check(x)?;
            acc = self.meet(acc, x);
        }
        Ok(acc)
    }

    /// Supremum computed as the meet of the common upper bounds; the empty
    /// join is the bottom.
    pub fn join_all<I: IntoIterator<Item = Elt>>(&self, xs: I) -> Result<Elt, LatticeError> {
        let xs: Vec<Elt> = xs.into_iter().collect();
        for &x in &xs {
            self.check(x)?;
        }
        let uppers = self
            .elements()
            .filter(|&u| xs.iter().all(|&x| self.leq(x, u)));
        self.meet_all(uppers)
    }

    pub fn join(&self, a: Elt, b: Elt) -> Result<Elt, LatticeError> {
        self.join_all([a, b])
    }

    /// Elements covered by `e` (maximal elements strictly below it).
    pub fn lower_covers(&self, e: Elt) -> Vec<Elt> {
        let below: Vec<Elt> = self.elements().filter(|&x| self.lt(x, e)).collect();
        below
            .iter()
            .copied()
            .filter(|&x| !below.iter().any(|&y| self.lt(x, y)))
            .collect()
    }
}
