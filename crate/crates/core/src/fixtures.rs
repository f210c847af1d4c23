//! Built-in fan corpus used by tests and the command-line driver.
//!
//! Index conventions follow the worked examples: points are listed so that
//! the first point spans the chart transverse to the reference brane edge.

use std::collections::BTreeSet;

use crate::fan::ExtendedStackyFan;

fn fan(points: Vec<[i64; 3]>, rays: &[usize], cones: Vec<[usize; 3]>) -> ExtendedStackyFan {
    ExtendedStackyFan::new(points, BTreeSet::from_iter(rays.iter().copied()), cones)
}

/// Smooth affine chart.
pub fn c3() -> ExtendedStackyFan {
    fan(vec![[1, 0, 1], [0, 1, 1], [0, 0, 1]], &[0, 1, 2], vec![[0, 1, 2]])
}

/// Affine A_1 transverse orbifold chart (one extended vector at height one).
pub fn a1() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [0, 2, 1]],
        &[0, 2, 3],
        vec![[0, 2, 3]],
    )
}

/// Total space of O(-2) + O over P^1: the crepant resolution of the A_1 chart.
pub fn kp1o() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [0, 2, 1]],
        &[0, 1, 2, 3],
        vec![[0, 1, 2], [0, 1, 3]],
    )
}

/// Resolved conifold-type geometry with a transverse A_1 edge (two charts).
pub fn a1p() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [0, 2, 1], [-1, 0, 1]],
        &[0, 2, 3, 4],
        vec![[0, 2, 3], [2, 3, 4]],
    )
}

/// Full resolution of `a1p`: star subdivision at the interior edge point.
pub fn a1pres() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [0, 2, 1], [-1, 0, 1]],
        &[0, 1, 2, 3, 4],
        vec![[0, 1, 2], [0, 1, 3], [1, 2, 4], [1, 3, 4]],
    )
}

/// Affine A_2 transverse orbifold chart.
pub fn a2() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 2, 1], [0, 0, 1], [0, 3, 1], [0, 1, 1]],
        &[0, 2, 3],
        vec![[0, 2, 3]],
    )
}

/// Partial resolution of the A_2 chart at the height-two point.
pub fn a2res() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 2, 1], [0, 0, 1], [0, 3, 1], [0, 1, 1]],
        &[0, 1, 2, 3],
        vec![[0, 1, 2], [0, 1, 3]],
    )
}

/// Affine A_n chart generator.
pub fn an(n: i64) -> ExtendedStackyFan {
    assert!(n >= 1);
    let mut points = vec![[1, 0, 1], [0, n + 1, 1], [0, 0, 1]];
    for i in 1..=n {
        points.push([0, i, 1]);
    }
    fan(points, &[0, 1, 2], vec![[0, 1, 2]])
}

/// C^3 / Z_3 with the interior point as extended vector.
pub fn c3z3() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [3, -1, 1]],
        &[1, 2, 3],
        vec![[1, 2, 3]],
    )
}

/// Canonical bundle of P^2: the crepant resolution of C^3 / Z_3.
pub fn kp2() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [3, -1, 1]],
        &[0, 1, 2, 3],
        vec![[0, 1, 2], [0, 2, 3], [0, 1, 3]],
    )
}

/// Flop pair on a unit quadrilateral, brane adjacent to the flopped cell.
pub fn flop_plus() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [1, -1, 1]],
        &[0, 1, 2, 3],
        vec![[0, 1, 2], [0, 2, 3]],
    )
}

pub fn flop_minus() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 1, 1], [0, 0, 1], [1, -1, 1]],
        &[0, 1, 2, 3],
        vec![[1, 2, 3], [0, 1, 3]],
    )
}

/// Flop pair with the brane away from the flopped cell; the re-diagonalized
/// quadrilateral has an interior lattice point (an extended vector).
pub fn case1_plus() -> ExtendedStackyFan {
    fan(
        vec![[1, 0, 1], [0, 2, 1], [0, 0, 1], [0, 3, 1], [0, 1, 1]],
        &[0, 1, 2, 3, 4],
        vec![[0, 1, 3], [0, 1, 4], [0, 2, 4]],
    )
}

pub fn case1_minus() -> ExtendedStackyFan {
    a2res()
}

pub fn all_fixtures() -> Vec<ExtendedStackyFan> {
    vec![
        c3(),
        a1(),
        kp1o(),
        a1p(),
        a1pres(),
        a2(),
        a2res(),
        c3z3(),
        kp2(),
        flop_plus(),
        flop_minus(),
        case1_plus(),
        case1_minus(),
    ]
}

/// Reference brane of each named fixture: (edge, primary cone if inner).
pub fn default_brane(name: &str) -> Option<((usize, usize), Option<usize>)> {
    Some(match name {
        "c3" => ((1, 2), None),
        "a1" => ((2, 3), None),
        "kp1o" => ((1, 2), Some(0)),
        "a1p" => ((2, 3), Some(0)),
        "a1pres" => ((1, 2), Some(0)),
        "a2" => ((2, 3), None),
        "a2res" => ((1, 2), Some(0)),
        "an" => ((1, 2), None),
        "c3z3" => ((2, 3), None),
        "kp2" => ((2, 3), Some(1)),
        "flop_plus" => ((1, 2), Some(0)),
        "flop_minus" => ((1, 2), Some(0)),
        "case1_plus" => ((1, 3), None),
        "case1_minus" => ((1, 3), None),
        _ => return None,
    })
}

pub fn by_name(name: &str) -> Option<ExtendedStackyFan> {
    Some(match name {
        "c3" => c3(),
        "a1" => a1(),
        "kp1o" => kp1o(),
        "a1p" => a1p(),
        "a1pres" => a1pres(),
        "a2" => a2(),
        "a2res" => a2res(),
        "c3z3" => c3z3(),
        "kp2" => kp2(),
        "flop_plus" => flop_plus(),
        "flop_minus" => flop_minus(),
        "case1_plus" => case1_plus(),
        "case1_minus" => case1_minus(),
        _ => return None,
    })
}

pub const FIXTURE_NAMES: &[&str] = &[
    "c3",
    "a1",
    "kp1o",
    "a1p",
    "a1pres",
    "a2",
    "a2res",
    "c3z3",
    "kp2",
    "flop_plus",
    "flop_minus",
    "case1_plus",
    "case1_minus",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_validates() {
        for (name, fan) in FIXTURE_NAMES.iter().zip(all_fixtures()) {
            let errs = fan.validate();
            assert!(errs.is_empty(), "{}: {:?}", name, errs);
        }
    }

    #[test]
    fn an_matches_levels() {
        let f = an(2);
        assert_eq!(f.r(), 5);
        assert!(f.validate().is_empty());
        assert_eq!(f.orb_indices(), vec![3, 4]);
    }
}
