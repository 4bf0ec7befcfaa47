//! Shared fixtures for unit tests.

use crate::descriptions::{DescriptionSpace, IntervalSpace, SetSpace};
use crate::order::{validate_lattice, FiniteLattice, LatticeSpec, MeetSource};
use crate::pattern::PatternStructure;

/// Three objects measured on two numeric attributes; the running
/// interval-data example across the test suite.
///
/// g1 = <[1,1];[1,1]>, g2 = <[2,2];[2,2]>, g3 = <[3,3];[2,2]>
pub fn demo_intervals() -> PatternStructure<IntervalSpace> {
    crate::pattern::parse_interval_csv("objects,m1,m2\ng1,1,1\ng2,2,2\ng3,3,2\n").unwrap()
}

/// Three objects over the attribute universe {a, b, c}:
/// g1 -> {a,b}, g2 -> {a,c}, g3 -> {b,c}.
pub fn triangle_sets() -> PatternStructure<SetSpace> {
    let space = SetSpace::new(vec!["a".into(), "b".into(), "c".into()]);
    let delta = vec![
        space.set_of(&["a", "b"]),
        space.set_of(&["a", "c"]),
        space.set_of(&["b", "c"]),
    ];
    PatternStructure::new(vec!["g1".into(), "g2".into(), "g3".into()], space, delta).unwrap()
}

/// Four-element diamond: bot < {x, y} < top with x, y incomparable.
pub fn diamond() -> FiniteLattice {
    validate_lattice(&LatticeSpec {
        elements: vec!["bot".into(), "x".into(), "y".into(), "top".into()],
        source: MeetSource::Covers(vec![
            ("bot".into(), "x".into()),
            ("bot".into(), "y".into()),
            ("x".into(), "top".into()),
            ("y".into(), "top".into()),
        ]),
    })
    .unwrap()
}

/// The poset bot < z < {x, y} with an adjoined top; meet(x, y) = z.
/// The smallest lattice on which a kernel operator can fail to commute
/// with the base meet.
pub fn kite() -> FiniteLattice {
    validate_lattice(&LatticeSpec {
        elements: vec![
            "bot".into(),
            "z".into(),
            "x".into(),
            "y".into(),
            "top".into(),
        ],
        source: MeetSource::Covers(vec![
            ("bot".into(), "z".into()),
            ("z".into(), "x".into()),
            ("z".into(), "y".into()),
            ("x".into(), "top".into()),
            ("y".into(), "top".into()),
        ]),
    })
    .unwrap()
}

/// Wraps a space and hides its top, for exercising the no-top error paths.
#[derive(Clone, Debug)]
pub struct NoTopSpace<S: DescriptionSpace>(pub S);

impl<S: DescriptionSpace> DescriptionSpace for NoTopSpace<S> {
    type D = S::D;

    fn meet(&self, a: &Self::D, b: &Self::D) -> Self::D {
        self.0.meet(a, b)
    }

    fn leq(&self, a: &Self::D, b: &Self::D) -> bool {
        self.0.leq(a, b)
    }

    fn top(&self) -> Option<Self::D> {
        None
    }

    fn bottom(&self) -> Option<Self::D> {
        self.0.bottom()
    }

    fn contains(&self, d: &Self::D) -> bool {
        match self.0.top() {
            Some(t) => !self.0.equal(d, &t) && self.0.contains(d),
            None => self.0.contains(d),
        }
    }

    fn render(&self, d: &Self::D) -> String {
        self.0.render(d)
    }
}
