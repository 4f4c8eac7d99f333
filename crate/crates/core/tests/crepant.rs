mod common;

use common::*;
use proptest::prelude::*;
use stacky_core::crepant::*;
use stacky_core::fan::StackyFan;
use stacky_core::lattice::{GroupElement, IntegerMatrix};
use stacky_core::num::Int;

// Product of elementary matrices: unimodular.
fn unimodular(d: usize, steps: &[(usize, usize, i64)]) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(d);
    for &(i, j, k) in steps {
        let (i, j) = (i % d, j % d);
        if i == j {
            continue;
        }
        let mut e = IntegerMatrix::identity(d);
        e.set(i, j, Int::from(k));
        m = e.mul(&m).unwrap();
    }
    m
}

fn transform(s: &StackyFan, a: &IntegerMatrix) -> StackyFan {
    let rays = s.rays().iter().map(|r| GroupElement { free: a.apply(&r.free).unwrap(), torsion: vec![] }).collect();
    StackyFan::new(s.group().clone(), rays, s.fan().max_cones().to_vec()).unwrap()
}

fn check_pair(pair: &SubdivisionPair) -> Result<(), TestCaseError> {
    prop_assert!(is_subdivision(&pair.fine, &pair.coarse));
    prop_assert!(is_smooth(&pair.fine));
    prop_assert!(is_crepant(pair));
    prop_assert_eq!(is_crepant(pair), is_crepant_by_coordinates(pair));
    for v in pair.coarse.box_elements().unwrap() {
        prop_assert!(v.age.is_integer());
    }
    let report = hilbert_compare(pair).unwrap();
    prop_assert!(report.equal);
    prop_assert!(report.warnings.is_empty());
    prop_assert!(verify_support_function(pair, report.support.as_ref().unwrap()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn crepant_pairs_survive_a_change_of_basis(k in 0usize..3, steps in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..5)) {
        let (_, pair) = pairs().swap_remove(k);
        let a = unimodular(pair.coarse.dim(), &steps);
        let moved = SubdivisionPair::new(transform(&pair.coarse, &a), transform(&pair.fine, &a)).unwrap();
        check_pair(&moved)?;
    }
}

#[test]
fn bundled_pairs() {
    for (_, pair) in pairs() {
        check_pair(&pair).unwrap();
    }
}

#[test]
fn weighted_plane_export() {
    let (_, pair) = pairs().swap_remove(0);
    let r = hilbert_compare(&pair).unwrap();
    let g = &r.ideal_generators;
    assert_eq!(g.linear, ["y1 - y3", "-y2 + 2*y3 + y4"]);
    assert_eq!(g.product, ["y1*y3 - y4^2", "y2*y4"]);
    assert_eq!(g.stanley_reisner, ["y1*y3", "y2*y4"]);
    let h = r.support.unwrap();
    assert!(g.linear_weighted.iter().all(|s| s.contains("t1") || !s.contains("y4")));
    // h(b4) ≥ 1, so the t2 exponent 2·h(b4) is at least 2
    let gap = Int::from(2) * &h[3];
    assert_eq!(g.product_weighted[0], format!("y1*y3 - y4^2*t2^{gap}"));
}
