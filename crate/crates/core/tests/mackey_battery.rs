use wittlab_core::green::{constant_tambara, fixed_point_tambara, RingWithAction};
use wittlab_core::mackey::{associator, box_product, burnside, constant_mackey, fixed_point_mackey, left_unit, symmetry};
use wittlab_core::{AbHom, BigInt, Error, FgAbGroup, MackeyFunctor, MackeyMap};

fn sign_z(n: u64) -> MackeyFunctor {
    fixed_point_mackey(n, &AbHom::scalar(&FgAbGroup::free(1), &BigInt::from(-1))).unwrap()
}

fn battery(n: u64) -> Vec<(String, MackeyFunctor)> {
    let mut out = vec![
        ("A".to_string(), burnside(n)),
        ("Z".to_string(), constant_mackey(n, 0)),
        ("F3".to_string(), constant_mackey(n, 3)),
        ("Z/4".to_string(), constant_mackey(n, 4)),
    ];
    if n % 2 == 0 {
        out.push(("Z-".to_string(), sign_z(n)));
    }
    out
}

#[test]
fn standard_functors_satisfy_axioms() {
    for n in 1..=12u64 {
        for (name, m) in battery(n) {
            m.check_axioms().unwrap_or_else(|e| panic!("{name} over C{n}: {e}"));
        }
    }
}

#[test]
fn burnside_levels_have_one_orbit_per_subgroup() {
    for n in 1..=30u64 {
        let a = burnside(n);
        for &d in a.divisors() {
            let k = wittlab_core::arith::divisors(d).len();
            assert!(a.level(d).is_isomorphic(&FgAbGroup::free(k)), "A(C{d})");
        }
    }
}

#[test]
fn sign_action_fixed_points() {
    // −1 has no nonzero fixed points on Z
    let m = sign_z(2);
    assert!(m.level(2).is_trivial());
    assert!(m.level(1).is_isomorphic(&FgAbGroup::free(1)));
    assert!(m.weyl(1).equals(&AbHom::scalar(m.level(1), &BigInt::from(-1))));
}

#[test]
fn box_product_unit_and_symmetry() {
    for n in [1u64, 2, 3, 4, 6] {
        let fs = battery(n);
        for (name, m) in &fs {
            let (bx, iso) = left_unit(m).unwrap();
            iso.check_natural().unwrap();
            assert!(iso.is_isomorphism(), "unit for {name} over C{n}");
            bx.functor.check_axioms().unwrap();
        }
        for (a, m) in &fs {
            for (b, k) in &fs {
                let mn = box_product(m, k).unwrap();
                let nm = box_product(k, m).unwrap();
                let s = symmetry(&mn, &nm).unwrap();
                assert!(s.is_isomorphism(), "{a} □ {b} over C{n}");
                let bottom = FgAbGroup::tensor(m.level(1), k.level(1));
                assert!(mn.functor.level(1).is_isomorphic(&bottom), "{a} □ {b} at the bottom, C{n}");
            }
        }
    }
}

#[test]
fn box_product_associator() {
    for n in [2u64, 3, 4] {
        let fs = battery(n);
        for (x, y, z) in [(0, 2, 3), (2, 2, 3), (1, 2, 2)] {
            let (m, k, p) = (&fs[x].1, &fs[y].1, &fs[z].1);
            let mn = box_product(m, k).unwrap();
            let mn_p = box_product(&mn.functor, p).unwrap();
            let np = box_product(k, p).unwrap();
            let m_np = box_product(m, &np.functor).unwrap();
            let a = associator(&mn_p, &mn, &m_np, &np).unwrap();
            a.check_natural().unwrap();
            assert!(a.is_isomorphism(), "({x} □ {y}) □ {z} over C{n}");
        }
    }
}

#[test]
fn box_product_rejects_mismatched_groups() {
    assert!(matches!(box_product(&burnside(2), &burnside(3)), Err(Error::GroupMismatch(2, 3))));
}

#[test]
fn zeta_and_restriction_are_mackey() {
    let a = burnside(12);
    for m in [1u64, 2, 3, 4, 6, 12] {
        let z = a.zeta(m).unwrap();
        z.check_axioms().unwrap();
        assert_eq!(z.n(), 12 / m);
        let r = a.restrict_to_subgroup(m).unwrap();
        r.check_axioms().unwrap();
        assert_eq!(r.n(), m);
    }
}

#[test]
fn identity_and_inverse() {
    let m = constant_mackey(6, 4);
    let id = MackeyMap::identity(&m);
    assert!(id.inverse().unwrap().equals(&id));
    assert!(id.then(&id).equals(&id));
}

#[test]
fn fixed_point_tambara_battery() {
    for n in [2u64, 4, 6] {
        let ring = RingWithAction::cyclic(5);
        let t = fixed_point_tambara(n, &ring).unwrap();
        t.check_axioms(10).unwrap();
        constant_tambara(n, 5).check_axioms(10).unwrap();
    }
}
