//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stacky::{corpus, InputDocument};
use stacky_core::crepant::{hilbert_compare, is_crepant, is_smooth, is_subdivision};
use stacky_core::fan::StackyFan;
use stacky_core::inertia::obstruction_product;
use stacky_core::lattice::*;
use stacky_core::num::Int;
use stacky_core::ring::*;
use stacky_core::Error;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn doc(name: &str) -> InputDocument {
    InputDocument::from_json(corpus::get(name)).unwrap()
}

fn beta(name: &str) -> GroupHomomorphism {
    doc(name).homomorphism().unwrap()
}

fn complete_fans() -> Vec<(&'static str, StackyFan)> {
    corpus::COMPLETE.iter().map(|&n| (n, doc(n).stacky_fan().unwrap())).collect()
}

/// Every valid fan in the corpus, fine fans of subdivision blocks included.
fn all_fans() -> Vec<(String, StackyFan)> {
    let mut out = Vec::new();
    for (name, _) in corpus::FILES {
        let d = doc(name);
        if let Ok(s) = d.stacky_fan() {
            out.push((name.to_string(), s));
        }
        if let Ok(Some(fine)) = d.fine_fan() {
            out.push((format!("{name} (fine)"), fine));
        }
    }
    out
}

fn int_matrix(rows: Vec<Vec<i64>>, cols: usize) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect(), cols).unwrap()
}

fn gale_example() -> Outcome {
    let dual = gale_dual(&beta("m11.json"));
    ensure(dual.dual_group == FgAbelianGroup::free(1), || format!("DG = {}", dual.dual_group))?;
    ensure(dual.dual_map == int_matrix(vec![vec![6, 4]], 2), || format!("beta_vee = {:?}", dual.dual_map))
}

fn gale_pair() -> Outcome {
    let twisted = gale_dual(&beta("z3-twisted.json"));
    ensure(twisted.dual_group == FgAbelianGroup::free(1), || format!("twisted DG = {}", twisted.dual_group))?;
    ensure(twisted.dual_map == int_matrix(vec![vec![3, 3]], 2), || format!("twisted beta_vee = {:?}", twisted.dual_map))?;
    let split = gale_dual(&beta("z3-split.json"));
    let target = FgAbelianGroup::from_i64(1, &[3]).unwrap();
    ensure(split.dual_group == target, || format!("split DG = {}", split.dual_group))?;
    let expected = GroupHomomorphism::from_lift(target, int_matrix(vec![vec![1, 1], vec![0, 0]], 2)).unwrap();
    ensure(equivalent_maps(&split.as_homomorphism(), &expected), || format!("split beta_vee = {:?}", split.dual_map))
}

const TORSIONS: &[&[i64]] = &[&[], &[2], &[3], &[4], &[5], &[6], &[2, 2], &[2, 4], &[2, 6], &[3, 3], &[3, 6]];

fn random_map(rng: &mut ChaCha8Rng) -> GroupHomomorphism {
    let rank = rng.gen_range(0..=3);
    let group = FgAbelianGroup::from_i64(rank, TORSIONS[rng.gen_range(0..TORSIONS.len())]).unwrap();
    let n = rng.gen_range(1..=4);
    let rows = (0..group.ambient_dim()).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
    GroupHomomorphism::from_lift(group, int_matrix(rows, n)).unwrap()
}

fn double_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let (mut finite, mut infinite) = (0, 0);
    while finite < 100 || infinite < 20 {
        let b = random_map(&mut rng);
        if cokernel_is_finite(&b) {
            if finite < 100 {
                ensure(double_dual_check(&b) == Ok(true), || format!("double dual differs for {:?}", b.lift()))?;
                finite += 1;
            }
        } else if infinite < 20 {
            ensure(double_dual_check(&b) == Err(Error::InfiniteCokernel), || format!("accepted {:?}", b.lift()))?;
            infinite += 1;
        }
    }
    Ok(())
}

fn box_bijection() -> Outcome {
    let mut cones = 0;
    for (name, s) in all_fans() {
        for sigma in s.fan().max_cones() {
            let boxed = s.box_of_cone(sigma).map_err(|e| format!("{name}: {e}"))?.len();
            let order = s.local_group(sigma).order().ok_or_else(|| format!("{name}: N({sigma:?}) infinite"))?;
            ensure(Int::from(boxed) == order, || format!("{name} {sigma:?}: |Box| = {boxed}, |N| = {order}"))?;
            cones += 1;
        }
    }
    ensure(cones > 0, || "no cones checked".into())
}

fn weighted_plane_and_resolution() -> Outcome {
    let p121 = orbifold_chow(&doc("p121.json").stacky_fan().unwrap()).map_err(|e| e.to_string())?;
    let dims = p121.integral_dims().ok_or("fractional degree on P(1,2,1)")?;
    ensure(dims == [1, 2, 1], || format!("P(1,2,1) dims {dims:?}"))?;
    ensure(p121.total_dim() == 4, || format!("P(1,2,1) total {}", p121.total_dim()))?;
    let orb = square_zero_degree_one(&p121);
    ensure(orb == SquareZero::NotExists, || format!("P(1,2,1) square zero {orb:?}"))?;
    let f2 = doc("f2.json").stacky_fan().unwrap();
    let chow = chow_graded_dims(&f2).map_err(|e| e.to_string())?;
    ensure(chow == [1, 2, 1], || format!("F2 dims {chow:?}"))?;
    let res = square_zero_degree_one(&orbifold_chow(&f2).map_err(|e| e.to_string())?);
    ensure(matches!(res, SquareZero::Exists(_)), || format!("F2 square zero {res:?}"))?;
    println!("  verdict: the orbifold ring of P(1,2,1) and the Chow ring of F2 are not isomorphic (square-zero degree-one class only in F2)");
    Ok(())
}

fn sector_sums() -> Outcome {
    for (name, s) in complete_fans() {
        let sectors = sector_decomposition(&s).map_err(|e| format!("{name}: {e}"))?;
        if name == "m11.json" {
            ensure(sectors.len() == 8, || format!("m11: {} sectors", sectors.len()))?;
        }
        let pres = orbifold_chow(&s).map_err(|e| format!("{name}: {e}"))?;
        ensure(sector_sum(&sectors) == pres.dims, || format!("{name}: {:?} vs {:?}", sector_sum(&sectors), pres.dims))?;
    }
    Ok(())
}

fn product_cross_check() -> Outcome {
    for (name, s) in complete_fans() {
        let boxes = s.box_elements().map_err(|e| e.to_string())?;
        for v1 in &boxes {
            for v2 in &boxes {
                let direct = s
                    .multiply(&RingElement::monomial(v1.element.clone()), &RingElement::monomial(v2.element.clone()))
                    .map_err(|e| e.to_string())?;
                let via = obstruction_product(&s, v1, v2).map_err(|e| format!("{name}: {e}"))?;
                ensure(via == direct, || format!("{name}: {:?} * {:?}", v1.element, v2.element))?;
            }
        }
    }
    Ok(())
}

fn structure_constants() -> Outcome {
    for (name, s) in complete_fans() {
        let pres = orbifold_chow(&s).map_err(|e| format!("{name}: {e}"))?;
        ensure(pres.is_commutative(), || format!("{name}: not commutative"))?;
        ensure(pres.is_associative(), || format!("{name}: not associative"))?;
        ensure(pres.is_poincare_symmetric(), || format!("{name}: dims {:?}", pres.dims))?;
    }
    Ok(())
}

fn crepant_pairs() -> Outcome {
    for name in corpus::CREPANT_PAIRS {
        let pair = doc(name).subdivision_pair().map_err(|e| format!("{name}: {e}"))?;
        ensure(is_subdivision(&pair.fine, &pair.coarse), || format!("{name}: not a subdivision"))?;
        ensure(is_smooth(&pair.fine), || format!("{name}: not smooth"))?;
        ensure(is_crepant(&pair), || format!("{name}: not crepant"))?;
        let r = hilbert_compare(&pair).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.equal && r.warnings.is_empty(), || format!("{name}: {:?} vs {:?} {:?}", r.orbifold_dims, r.resolution_dims, r.warnings))?;
    }
    ensure(corpus::CREPANT_PAIRS.len() >= 2, || "no derived pair".into())
}

fn smith_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = int_matrix((0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect(), c);
        let f = smith_normal_form(&m);
        let fail = |what: &str| format!("{what} for {m:?}");
        ensure(f.u.mul(&m).unwrap().mul(&f.v).unwrap() == f.s, || fail("UMV != S"))?;
        for (x, n) in [(&f.u, r), (&f.v, c)] {
            ensure(x.determinant().unwrap().abs().is_one(), || fail("not unimodular"))?;
            ensure(x.rows() == n, || fail("wrong shape"))?;
        }
        ensure(f.u.mul(&f.u_inv).unwrap() == IntegerMatrix::identity(r), || fail("U^-1"))?;
        ensure(f.v.mul(&f.v_inv).unwrap() == IntegerMatrix::identity(c), || fail("V^-1"))?;
        let off_diagonal = (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).filter(|(i, j)| i != j);
        ensure(off_diagonal.clone().all(|(i, j)| f.s.get(i, j).is_zero()), || fail("not diagonal"))?;
        let d = f.diagonal();
        ensure(d.iter().all(|x| !x.is_negative()), || fail("negative entry"))?;
        ensure(d.iter().filter(|x| !x.is_zero()).count() == f.rank, || fail("rank"))?;
        ensure(d[..f.rank].windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || fail("divisibility"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("gale dual of the Z + Z/2 example", gale_example),
        ("gale duals of the Z/3 pair", gale_pair),
        ("double duality on random maps", double_duality),
        ("box elements biject with local groups", box_bijection),
        ("P(1,2,1) orbifold ring against F2", weighted_plane_and_resolution),
        ("sector-sum identity", sector_sums),
        ("obstruction product equals deformed product", product_cross_check),
        ("structure-constant algebra", structure_constants),
        ("crepant comparison", crepant_pairs),
        ("Smith normal form contract", smith_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
