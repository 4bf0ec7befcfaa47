//! Shared builders for the integration suites.

use pslat::descriptions::SetSpace;
use pslat::pattern::{parse_interval_csv, PatternStructure};
use pslat::IntervalSpace;

/// Three objects on two numeric attributes: the running interval example.
pub fn demo_intervals() -> PatternStructure<IntervalSpace> {
    parse_interval_csv("objects,m1,m2\ng1,1,1\ng2,2,2\ng3,3,2\n").unwrap()
}

/// g1 -> {a,b}, g2 -> {a,c}, g3 -> {b,c} over the universe {a,b,c}.
pub fn triangle_sets() -> PatternStructure<SetSpace> {
    let space = SetSpace::new(vec!["a".into(), "b".into(), "c".into()]);
    let delta = vec![
        space.set_of(&["a", "b"]),
        space.set_of(&["a", "c"]),
        space.set_of(&["b", "c"]),
    ];
    PatternStructure::new(vec!["g1".into(), "g2".into(), "g3".into()], space, delta).unwrap()
}
