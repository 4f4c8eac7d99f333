#![allow(dead_code)]

use proptest::prelude::*;
use stacky_core::crepant::SubdivisionPair;
use stacky_core::fan::StackyFan;
use stacky_core::lattice::{FgAbelianGroup, GroupElement};

pub type Rays<'a> = &'a [(&'a [i64], &'a [i64])];

/// Cones are 1-based, as in the input files.
pub fn fan(rank: usize, torsion: &[i64], rays: Rays, cones: &[&[usize]]) -> StackyFan {
    try_fan(rank, torsion, rays, cones).unwrap()
}

pub fn try_fan(rank: usize, torsion: &[i64], rays: Rays, cones: &[&[usize]]) -> stacky_core::Result<StackyFan> {
    let g = FgAbelianGroup::from_i64(rank, torsion)?;
    let rays = rays.iter().map(|(f, t)| GroupElement::from_i64(f, t)).collect();
    StackyFan::new(g, rays, cones.iter().map(|c| c.iter().map(|i| i - 1).collect()).collect())
}

pub fn p121() -> StackyFan {
    fan(2, &[], &[(&[1, 0], &[]), (&[0, -1], &[]), (&[-1, 2], &[])], &[&[1, 2], &[2, 3], &[1, 3]])
}

pub fn f2() -> StackyFan {
    fan(
        2,
        &[],
        &[(&[1, 0], &[]), (&[0, -1], &[]), (&[-1, 2], &[]), (&[0, 1], &[])],
        &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]],
    )
}

pub fn m11() -> StackyFan {
    fan(1, &[2], &[(&[2], &[1]), (&[-3], &[0])], &[&[1], &[2]])
}

pub fn p1() -> StackyFan {
    fan(1, &[], &[(&[1], &[]), (&[-1], &[])], &[&[1], &[2]])
}

pub fn p112() -> StackyFan {
    fan(2, &[], &[(&[1, 0], &[]), (&[0, 1], &[]), (&[-1, -2], &[])], &[&[1, 2], &[2, 3], &[1, 3]])
}

pub fn p1113() -> StackyFan {
    fan(
        3,
        &[],
        &[(&[1, 0, 0], &[]), (&[0, 1, 0], &[]), (&[-1, -1, -3], &[]), (&[0, 0, 1], &[])],
        &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]],
    )
}

pub fn complete_fans() -> Vec<(&'static str, StackyFan)> {
    vec![("P(1,2,1)", p121()), ("F2", f2()), ("M11", m11()), ("P1", p1()), ("P(1,1,2)", p112()), ("P(1,1,1,3)", p1113())]
}

pub fn pairs() -> Vec<(&'static str, SubdivisionPair)> {
    let f_p112 = fan(
        2,
        &[],
        &[(&[1, 0], &[]), (&[0, 1], &[]), (&[-1, -2], &[]), (&[0, -1], &[])],
        &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]],
    );
    let f_p1113 = fan(
        3,
        &[],
        &[(&[1, 0, 0], &[]), (&[0, 1, 0], &[]), (&[-1, -1, -3], &[]), (&[0, 0, 1], &[]), (&[0, 0, -1], &[])],
        &[&[1, 2, 5], &[1, 3, 5], &[2, 3, 5], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]],
    );
    vec![
        ("P(1,2,1)/F2", SubdivisionPair::new(p121(), f2()).unwrap()),
        ("P(1,1,2)", SubdivisionPair::new(p112(), f_p112).unwrap()),
        ("P(1,1,1,3)", SubdivisionPair::new(p1113(), f_p1113).unwrap()),
    ]
}

// Complete simplicial base fans: rays and 1-based maximal cones.
type Base = (usize, Vec<Vec<i64>>, Vec<Vec<usize>>);

fn bases() -> Vec<Base> {
    let v = |r: &[&[i64]]| r.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
    let c = |r: &[&[usize]]| r.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
    vec![
        (1, v(&[&[1], &[-1]]), c(&[&[1], &[2]])),
        (2, v(&[&[1, 0], &[0, 1], &[-1, -1]]), c(&[&[1, 2], &[2, 3], &[1, 3]])),
        (2, v(&[&[1, 0], &[0, -1], &[-1, 2]]), c(&[&[1, 2], &[2, 3], &[1, 3]])),
        (2, v(&[&[1, 0], &[0, -1], &[-1, 2], &[0, 1]]), c(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])),
        (2, v(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[0, -1]]), c(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]])),
    ]
}

/// A small random complete stacky fan: a base fan with rays scaled by 1 or 2
/// over `Z^d` or `Z^d ⊕ Z/2`, with random residues.
pub fn stacky_fans() -> impl Strategy<Value = StackyFan> {
    let n_bases = bases().len();
    (0..n_bases, proptest::collection::vec(1i64..=2, 5), any::<bool>(), proptest::collection::vec(0i64..2, 5)).prop_map(
        |(k, scale, torsion, residues)| {
            let (d, rays, cones) = bases().swap_remove(k);
            let t: &[i64] = if torsion { &[2] } else { &[] };
            let g = FgAbelianGroup::from_i64(d, t).unwrap();
            let rays = rays
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let free: Vec<i64> = r.iter().map(|x| x * scale[i]).collect();
                    let tor: Vec<i64> = if torsion { vec![residues[i]] } else { vec![] };
                    GroupElement::from_i64(&free, &tor)
                })
                .collect();
            StackyFan::new(g, rays, cones.iter().map(|c| c.iter().map(|i| i - 1).collect()).collect()).unwrap()
        },
    )
}
