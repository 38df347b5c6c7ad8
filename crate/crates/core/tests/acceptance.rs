mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qcoh::algebra::coeff::{identity_rows, CoefficientModule};
use qcoh::algebra::group::AbelianGroup;
use qcoh::algebra::rational::{qvec, RationalMatrix, Q};
use qcoh::certificates::*;
use qcoh::cohomology::*;
use qcoh::extensions::*;
use qcoh::geometry::*;
use qcoh::limits::*;
use qcoh::quandle::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn within(start: Instant, limit: u64, what: &str) -> Outcome {
    let t = start.elapsed();
    ensure!(t <= Duration::from_secs(limit), "{what} took {t:?}, limit {limit} s");
    Ok(())
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let check = |q: &QuandleTable, name: &str| -> Outcome {
        let r = verify_quandle(q);
        ensure!(r.is_empty(), "{name}: {r:?}");
        Ok(())
    };
    for n in 1..=50 {
        check(&make_dihedral(n), &format!("R{n}"))?;
    }
    for m in 1..=50u64 {
        for u in common::units(m) {
            check(&ok(make_alexander(m, u))?, &format!("Alexander({m},{u})"))?;
        }
    }
    let (c2, c3, c4) = (GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::cyclic(4));
    let s3 = GroupTable::symmetric(3);
    let mut groups: Vec<(String, GroupTable)> = (1..=24).map(|n| (format!("Z{n}"), GroupTable::cyclic(n))).collect();
    groups.extend((3..=12).map(|n| (format!("D{n}"), GroupTable::dihedral(n))));
    groups.extend((1..=4).map(|k| (format!("S{k}"), GroupTable::symmetric(k))));
    groups.push(("Z2xZ2".into(), c2.direct_product(&c2)));
    groups.push(("Z2xZ2xZ2".into(), c2.direct_product(&c2).direct_product(&c2)));
    groups.push(("Z3xZ3".into(), c3.direct_product(&c3)));
    groups.push(("Z2xS3".into(), c2.direct_product(&s3)));
    groups.push(("Z3xS3".into(), c3.direct_product(&s3)));
    groups.push(("Z4xS3".into(), c4.direct_product(&s3)));
    groups.push(("Z2xZ2xS3".into(), c2.direct_product(&c2).direct_product(&s3)));
    groups.push(("Z2xD4".into(), c2.direct_product(&GroupTable::dihedral(4))));
    groups.push(("Z2xZ4xZ3".into(), c2.direct_product(&c4).direct_product(&c3)));
    for (name, g) in &groups {
        ensure!(g.size() <= 24, "{name} is too large");
        check(&make_conjugation(g), &format!("Conj({name})"))?;
    }
    for n in 1..=3 {
        for m in 1..=3 {
            check(&ok(make_gm(&GroupTable::cyclic(n), m))?, &format!("Z{n}^{m}"))?;
        }
    }
    within(start, 5, "axiom suite")
}

fn differential_squares_to_zero() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..50 {
        let x = common::random_quandle(&mut rng, 6);
        let coeff = common::random_cyclic(&mut rng, 8);
        let d: Vec<_> = (1..=3).map(|n| ok(differential_matrix(&x, &coeff, n))).collect::<Result<_, _>>()?;
        for n in 0..2 {
            let dd = ok(d[n + 1].compose(&d[n]))?;
            ensure!(dd.is_zero(), "case {case}: twisted d{}d{} != 0 on {:?} with T={:?}", n + 2, n + 1, x.rows(), coeff.t());
        }
    }
    let r3 = make_dihedral(3);
    for case in 0..10 {
        let module = common::random_module_on_r3(&mut rng);
        let d: Vec<_> =
            (1..=3).map(|n| ok(generalized_differential_matrix(&r3, &module, n))).collect::<Result<_, _>>()?;
        for n in 0..2 {
            let dd = ok(d[n + 1].compose(&d[n]))?;
            ensure!(dd.is_zero(), "module case {case}: d{}d{} != 0", n + 2, n + 1);
        }
    }
    within(start, 30, "differential checks")
}

fn first_cohomology_is_coefficients() -> Outcome {
    let quandles = [make_dihedral(3), make_dihedral(5), make_dihedral(7), ok(make_alexander(9, 2))?];
    for factors in [vec![2], vec![3], vec![4], vec![2, 6]] {
        let a = ok(CoefficientModule::constant(factors.clone()))?;
        let c = Coefficients::Twisted(a);
        let expected = AbelianGroup::from_cyclic_orders(&factors);
        for x in &quandles {
            let h = ok(cohomology_group(x, &c, 1))?;
            ensure!(*h.group() == expected, "H^1 of {:?} with {factors:?} is {}", x.rows(), h.group());
        }
        for q in 1..=4 {
            let h = ok(cohomology_group(&make_trivial(q), &c, 1))?;
            let power: Vec<u64> = (0..q).flat_map(|_| factors.clone()).collect();
            let expected = AbelianGroup::from_cyclic_orders(&power);
            ensure!(*h.group() == expected, "H^1 of trivial({q}) with {factors:?} is {}", h.group());
        }
    }
    Ok(())
}

fn dihedral_third_cohomology() -> Outcome {
    let c = Coefficients::Twisted(ok(CoefficientModule::constant(vec![3]))?);
    let z3 = AbelianGroup::cyclic(3);
    let start = Instant::now();
    let r3 = make_dihedral(3);
    let h3 = ok(cohomology_group(&r3, &c, 3))?;
    ensure!(*h3.group() == z3, "H^3(R3; Z/3) = {}", h3.group());
    within(start, 10, "H^3(R3)")?;

    let start = Instant::now();
    let r9 = make_dihedral(9);
    let h9 = ok(cohomology_group(&r9, &c, 3))?;
    ensure!(*h9.group() == z3, "H^3(R9; Z/3) = {}", h9.group());
    let f: Vec<usize> = (0..9).map(|x| x % 3).collect();
    let map = ok(CochainMap::new(f, identity_rows(1), (&r3, &c), (&r9, &c)))?;
    let induced = ok(induced_map(&map, &h3, &h9))?;
    ensure!(induced.is_zero(), "induced map H^3(R3) -> H^3(R9) is {:?}", induced.matrix());
    within(start, 120, "H^3(R9) and the induced map")?;

    let r = ok(tower_cohomology(&ok(make_dihedral_tower(3, 2, None))?, 3, 2))?;
    ensure!(r.colimit.is_trivial(), "colimit is {}", r.colimit);
    ensure!(r.stabilized, "tower not reported stable");
    Ok(())
}

fn alexander_first_cohomology() -> Outcome {
    for (p, u, n) in [(3u64, 2i64, 1u32), (3, 2, 2), (5, 3, 1)] {
        let m = p.pow(n);
        let x = ok(make_alexander(m, u))?;
        let c = Coefficients::Twisted(ok(CoefficientModule::cyclic(m, u))?);
        let h = ok(cohomology_group(&x, &c, 1))?;
        ensure!(*h.group() == AbelianGroup::from_cyclic_orders(&[m, m]), "H^1 for ({p},{u},{n}) is {}", h.group());
    }
    for (p, u) in [(3u64, 2i64), (5, 3)] {
        let r = ok(tower_cohomology(&ok(make_alexander_tower(p, u, 2))?, 1, 2))?;
        let refs = r.reference_maps.ok_or("no reference maps")?;
        ensure!(refs[0] == vec![vec![p, 0], vec![0, p]], "connecting map for p={p} is {:?}", refs[0]);
    }
    let r = ok(tower_cohomology(&ok(make_alexander_tower(3, 2, 3))?, 1, 3))?;
    let refs = r.reference_maps.as_ref().ok_or("no reference maps")?;
    ensure!(refs.iter().all(|m| *m == vec![vec![3, 0], vec![0, 3]]), "connecting maps {refs:?}");
    ensure!(r.colimit == AbelianGroup::from_cyclic_orders(&[27, 27]), "colimit is {}", r.colimit);
    ensure!(!r.stabilized, "Prufer truncation reported stable");
    Ok(())
}

fn gm_class_is_nontrivial() -> Outcome {
    let start = Instant::now();
    let x = ok(make_gm(&GroupTable::cyclic(3), 2))?;
    let c = Coefficients::Twisted(ok(CoefficientModule::constant(vec![3]))?);
    let second = |e: usize| (e % 3) as i64;
    let phi = Cochain::from_fn(CochainBasis::new(9, 2), &[3], |t| vec![second(t[1]) - second(t[0])]);
    ensure!(satisfies_two_cocycle_condition(&x, &c, &phi), "phi fails the 2-cocycle condition");
    ensure!(ok(is_coboundary(&x, &c, &phi))?.is_none(), "is_coboundary found a primitive");

    // every f: X -> Z/3, with (delta f)(a, b) = f(a) - f(a*b)
    let value = |a: usize, b: usize| (second(b) - second(a)).rem_euclid(3);
    let mut f = [0i64; 9];
    for code in 0..3usize.pow(9) {
        let mut k = code;
        for v in f.iter_mut() {
            *v = (k % 3) as i64;
            k /= 3;
        }
        let hit = (0..9).all(|a| (0..9).all(|b| a == b || (f[a] - f[x.op(a, b)]).rem_euclid(3) == value(a, b)));
        ensure!(!hit, "phi is the coboundary of {f:?}");
    }
    // the same through the rank of the coboundary space over F_3
    let rows: Vec<Vec<i64>> = (0..9)
        .map(|g| {
            let mut r = Vec::new();
            for a in 0..9 {
                for b in 0..9 {
                    if a != b {
                        r.push(i64::from(a == g) - i64::from(x.op(a, b) == g));
                    }
                }
            }
            r
        })
        .collect();
    let mut with_phi = rows.clone();
    with_phi.push((0..9).flat_map(|a| (0..9).filter(move |&b| b != a).map(move |b| value(a, b))).collect());
    ensure!(
        common::rank_mod_p(&with_phi, 3) == common::rank_mod_p(&rows, 3) + 1,
        "phi lies in the F_3 span of the coboundaries"
    );
    within(start, 10, "G^m check")
}

fn extension_correspondence() -> Outcome {
    let start = Instant::now();
    let x = make_dihedral(3);
    let c = Coefficients::Twisted(ok(CoefficientModule::cyclic(3, 2))?);
    let basis2 = CochainBasis::new(3, 2);
    let all2 = |code: usize| {
        let flat: Vec<u64> = (0..6).map(|i| (code / 3usize.pow(i as u32) % 3) as u64).collect();
        Cochain::from_flat(basis2.clone(), &[3], &flat).unwrap()
    };
    let cocycles: Vec<Cochain> =
        (0..729).map(all2).filter(|p| satisfies_two_cocycle_condition(&x, &c, p)).collect();
    let boundaries: std::collections::HashSet<Vec<u64>> = (0..27)
        .map(|code| {
            let g = Cochain::from_flat(CochainBasis::new(3, 1), &[3], &[code % 3, code / 3 % 3, code / 9]).unwrap();
            coboundary(&x, &c, &g).unwrap().flatten()
        })
        .collect();
    let h2 = ok(cohomology_group(&x, &c, 2))?;
    ensure!(!cocycles.is_empty(), "no cocycles found");
    for psi in &cocycles {
        let ext_psi = ok(extend(&x, &c, psi))?;
        for phi in &cocycles {
            let in_b2 = boundaries.contains(&ok(psi.sub(phi))?.flatten());
            let same_class = ok(h2.class_of(psi))? == ok(h2.class_of(phi))?;
            ensure!(in_b2 == same_class, "B^2 oracle and H^2 classes disagree");
            match ok(equivalent(&x, &c, psi, phi))? {
                Some(g) => {
                    ensure!(in_b2, "equivalent succeeded outside B^2");
                    ensure!(ok(coboundary(&x, &c, &g))? == ok(psi.sub(phi))?, "returned g is not a primitive");
                    let ext_phi = ok(extend(&x, &c, phi))?;
                    let shift = ok(fiber_shift(&ext_psi, &g))?;
                    ensure!(ok(is_quandle_hom(&shift, ext_psi.total(), ext_phi.total()))?, "fiber shift is not a hom");
                }
                None => ensure!(!in_b2, "equivalent failed inside B^2"),
            }
        }
    }
    println!("    {} cocycles, {} pairs, H^2 = {}", cocycles.len(), cocycles.len().pow(2), h2.group());
    within(start, 30, "extension correspondence")
}

fn m(rows: &[Vec<i64>]) -> RationalMatrix {
    RationalMatrix::from_ints(rows).unwrap()
}

fn linear_certificates() -> Outcome {
    let start = Instant::now();
    let t = m(&[vec![0, -1], vec![1, 1]]);
    let s = t.direct_sum(&t);
    let c = ok(RationalMatrix::identity(2).hstack(&RationalMatrix::identity(2)))?;
    let cert = ok(certify_linear(&s, &t, &c, LinearMode::I, None, None))?;
    ensure!(cert.verdict == Verdict::NonTrivial, "worked example verdict {:?}", cert.verdict);
    ensure!(cert.failing_identities().is_empty(), "failing: {:?}", cert.failing_identities());
    ensure!(cert.boundary_is_zero, "boundary of the worked example is non-zero");
    within(start, 1, "worked example")?;

    let start = Instant::now();
    let s = m(&[vec![-1, 0, 0], vec![0, 0, -1], vec![0, 1, 1]]);
    let t = m(&[vec![-1]]);
    let c = m(&[vec![3, 1, 0]]);
    let u0 = qvec(&[1, 0, 0]);
    let cert = ok(certify_linear(&s, &t, &c, LinearMode::Ii, Some(u0.clone()), None))?;
    let expected: Vec<Q> = ok(c.mul_vec(&u0))?.iter().map(|v| v * Q::from_integer(2.into())).collect();
    ensure!(cert.pairing == expected, "mode ii pairing {:?}", cert.pairing);
    ensure!(cert.verdict == Verdict::NonTrivial, "mode ii verdict {:?}: {:?}", cert.verdict, cert.failing_identities());
    within(start, 1, "mode ii")?;

    let start = Instant::now();
    let rot = m(&[vec![0, -1], vec![1, 0]]);
    let c = m(&[vec![1, 2], vec![0, 1]]);
    let cert = ok(certify_appendix(&rot, &rot, &c, 2, None, None))?;
    ensure!(cert.boundary_is_zero, "k=2 boundary is non-zero");
    let failing: Vec<&str> = cert.failing_identities().into_iter().filter(|n| *n != "pairing is non-zero").collect();
    ensure!(failing.is_empty(), "k=2 failing identities: {failing:?}");
    ensure!(cert.verdict != Verdict::Rejected, "k=2 certificate rejected");
    println!("    k=2 pairing {:?}, verdict {:?}", cert.pairing, cert.verdict);
    within(start, 1, "appendix k=2")
}

fn module_certificate() -> Outcome {
    let cert = ok(certify_module_example(1, &m(&[vec![1]]), &qvec(&[1])))?;
    ensure!(cert.pairing == qvec(&[2]), "kappa(w) = {:?}", cert.pairing);
    ensure!(cert.boundary_is_zero, "boundary non-zero");
    ensure!(cert.failing_identities().is_empty(), "failing: {:?}", cert.failing_identities());
    ensure!(cert.verdict == Verdict::NonTrivial, "verdict {:?}", cert.verdict);
    Ok(())
}

fn geometry() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10_000 {
        let (x, y, z) = (UnitVector::random(&mut rng, 3), UnitVector::random(&mut rng, 3), UnitVector::random(&mut rng, 3));
        let lhs = ok(sphere_op(&ok(sphere_op(&x, &y))?, &z))?;
        let rhs = ok(sphere_op(&ok(sphere_op(&x, &z))?, &ok(sphere_op(&y, &z))?))?;
        ensure!(lhs.distance(&rhs) <= 1e-9, "self-distributivity off by {}", lhs.distance(&rhs));
        ensure!(ok(sphere_op(&x, &x))?.coords() == x.coords(), "x*x != x for {:?}", x.coords());
    }
    let (mut checked, mut skipped) = (0, 0);
    while checked < 10_000 {
        let p: Vec<_> = (0..3).map(|_| ProjectivePoint::new(UnitVector::random(&mut rng, 3))).collect();
        let [Ok(a), Ok(b), Ok(c)] = <[_; 3]>::try_from(p).unwrap() else {
            skipped += 1;
            continue;
        };
        match sphere_cocycle_identity(&a, &b, &c) {
            Ok(holds) => {
                ensure!(holds, "cocycle identity fails at {:?}, {:?}, {:?}", a, b, c);
                checked += 1;
            }
            Err(_) => skipped += 1,
        }
    }
    println!("    {checked} cocycle triples, {skipped} near the boundary skipped");
    let e1 = ok(ProjectivePoint::from_coords(vec![1.0, 0.0, 0.0]))?;
    let e2 = ok(ProjectivePoint::from_coords(vec![0.0, 1.0, 0.0]))?;
    ensure!(ok(sphere_cocycle(&e1, &e2))? == 1, "phi(e1, e2) != 1");
    let mut points = vec![e1, e2];
    while points.len() < 8 {
        if let Ok(p) = ProjectivePoint::new(UnitVector::random(&mut rng, 3)) {
            points.push(p);
        }
    }
    let sphere = ok(sampled_cocycle(&ProjectiveCover, &points))?;
    let trivial = ok(sampled_cocycle(&TrivialCover, &points))?;
    ensure!(!discrete_fiber_vanishing_check(&sphere), "sphere cocycle vanished");
    ensure!(discrete_fiber_vanishing_check(&trivial), "trivial cover cocycle did not vanish");
    within(start, 10, "geometry")
}

fn sylvester() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let (n, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let denom: i128 = rng.gen_range(1..=4);
        // small entries and repeated structure so that non-trivial
        // solution spaces actually occur
        let mut gen = |d: usize| -> Vec<Vec<i128>> {
            let scalar = rng.gen_bool(0.3);
            let c: i128 = rng.gen_range(-2..=2);
            (0..d)
                .map(|i| (0..d).map(|j| if scalar { if i == j { c } else { 0 } } else { rng.gen_range(-2..=2) }).collect())
                .collect()
        };
        let (s_int, t_int) = (gen(n), gen(k));
        let t_int = if rng.gen_bool(0.3) && n == k { s_int.clone() } else { t_int };
        let s = common::rational_from_scaled(&s_int, denom);
        let t = common::rational_from_scaled(&t_int, denom);
        let (dim, basis) = ok(sylvester_h1(&s, &t))?;
        let oracle = common::sylvester_dim_oracle(&s_int, &t_int);
        ensure!(dim == oracle, "case {case}: dimension {dim}, oracle {oracle}");
        for f in &basis {
            ensure!(ok(f.mul(&s))? == ok(t.mul(f))?, "case {case}: basis element does not intertwine");
        }
    }
    let comp = m(&[vec![0, -1], vec![1, 1]]);
    let (dim, _) = ok(sylvester_h1(&comp, &comp))?;
    ensure!(dim == 2, "companion example gives {dim}");
    within(start, 5, "sylvester")
}

fn principal_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..20 {
        let x = common::random_quandle(&mut rng, 4);
        let m = rng.gen_range(2..=5u64);
        let c = Coefficients::Twisted(ok(CoefficientModule::constant(vec![m]))?);
        let h2 = ok(cohomology_group(&x, &c, 2))?;
        let class: Vec<u64> = h2.group().torsion.iter().map(|&d| rng.gen_range(0..d)).collect();
        let flat: Vec<u64> = (0..x.size()).map(|_| rng.gen_range(0..m)).collect();
        let g = ok(Cochain::from_flat(CochainBasis::new(x.size(), 1), &[m], &flat))?;
        let psi = ok(h2.cocycle_for(&class).sub(&ok(coboundary(&x, &c, &g))?))?;
        let ext = ok(extend(&x, &c, &psi))?;
        let data = ok(PrincipalData::from_extension(&ext))?;
        let back = ok(extract_principal_cocycle(&data))?;
        ensure!(back == psi, "case {case}: extracted cocycle differs on {:?}", x.rows());
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1  axiom suite for all constructors", axiom_suite),
        ("2  differentials square to zero", differential_squares_to_zero),
        ("3  H^1 with constant coefficients", first_cohomology_is_coefficients),
        ("4  H^3 of R3, R9 and the dihedral tower", dihedral_third_cohomology),
        ("5  H^1 of Alexander towers and the Prufer truncation", alexander_first_cohomology),
        ("6  G^m class is non-trivial", gm_class_is_nontrivial),
        ("7  extensions match cohomology classes", extension_correspondence),
        ("8  linear certificates", linear_certificates),
        ("9  module certificate", module_certificate),
        ("10 sphere quandle and its cocycle", geometry),
        ("11 Sylvester dimensions", sylvester),
        ("12 principal cocycle round trip", principal_round_trip),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {name} ({t:.2?})"),
            Err(msg) => {
                println!("FAIL {name} ({t:.2?}): {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
