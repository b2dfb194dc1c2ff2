use wittlab_core::complex::{
    check_classical, check_equivariant, degree_zero_family, inject_leibniz_violation, specialize_n1, ClassicalWittComplex, Status,
};
use wittlab_core::eqwitt::{hh0_via_nerve, split_level};
use wittlab_core::green::{burnside_tambara, constant_tambara, norm_functor};
use wittlab_core::matrix::int_vec;
use wittlab_core::{BigInt, EquivariantWitt, Error};

#[test]
fn constant_levels_are_witt_groups() {
    // level p^q m of W_{C_{p^k n}}(F_p) has order p^{q+1}
    for (n, k) in [(1u64, 0u32), (1, 1), (1, 2), (2, 1), (2, 2), (4, 1)] {
        let w = EquivariantWitt::new(&constant_tambara(n, 3), 3, k).unwrap();
        for &d in w.mackey().divisors() {
            let (q, _) = split_level(3, d);
            assert_eq!(w.mackey().level(d).order(), Some(BigInt::from(3u64.pow(q + 1))), "n={n} k={k} level {d}");
        }
        w.green().check_axioms().unwrap();
    }
}

#[test]
fn lift_power_law_everywhere() {
    for (r, n) in [(constant_tambara(2, 3), 2u64), (constant_tambara(1, 4), 1), (burnside_tambara(2), 2)] {
        for k in 0..=2 {
            let w = EquivariantWitt::new(&r, 3, k).unwrap();
            for &m in r.mackey().divisors() {
                for a in r.mackey().level(m).sample_elements(6) {
                    let c = w.check_lift_power(&a, m).unwrap();
                    assert!(c.holds, "n={n} k={k} m={m} a={a:?}: {c:?}");
                }
            }
        }
    }
}

#[test]
fn lift_table_is_multiplicative() {
    let r = constant_tambara(2, 3);
    let w = EquivariantWitt::new(&r, 3, 2).unwrap();
    let table = w.lift_table(1).unwrap();
    assert_eq!(table.len(), 3);
    let top = 9;
    for (a, la) in &table {
        for (b, lb) in &table {
            let ab = r.green().mul(1, a, b);
            let lab = w.multiplicative_lift(&ab, 1).unwrap();
            assert!(w.mackey().level(top).eq_elem(&lab, &w.green().mul(top, la, lb)));
        }
    }
    let z = EquivariantWitt::new(&constant_tambara(1, 0), 3, 1).unwrap();
    assert!(matches!(z.lift_table(1), Err(Error::NotApplicable(_))));
}

#[test]
fn frobenius_and_verschiebung_compose_to_index() {
    let w = EquivariantWitt::new(&constant_tambara(2, 3), 3, 2).unwrap();
    for &d in &[3u64, 9, 6, 18] {
        let f = w.frobenius(d).unwrap();
        let v = w.verschiebung(d / 3).unwrap();
        for x in w.mackey().level(d / 3).sample_elements(9) {
            let fv = f.apply(&v.apply(&x));
            let px: Vec<BigInt> = x.iter().map(|c| c * 3).collect();
            assert!(w.mackey().level(d / 3).eq_elem(&fv, &px), "level {d}");
        }
    }
    assert!(w.frobenius(2).is_err());
}

#[test]
fn parameter_errors() {
    assert!(matches!(EquivariantWitt::new(&constant_tambara(3, 3), 3, 1), Err(Error::PrimeDividesN { p: 3, n: 3 })));
    assert!(matches!(norm_functor(&constant_tambara(2, 3), 4, 1), Err(Error::InvalidParams(_))));
    let w = EquivariantWitt::new(&constant_tambara(2, 3), 3, 0).unwrap();
    assert!(matches!(w.check_r_lift_identity(&int_vec(&[1])), Err(Error::NotApplicable(_))));
    // ν = 2 for p = 3 over C_4
    let w = EquivariantWitt::new(&constant_tambara(4, 3), 3, 1).unwrap();
    assert_eq!(w.nu(), 2);
    assert!(matches!(w.restriction_r(), Err(Error::LengthTooShort(1))));
}

#[test]
fn nerve_agrees_over_c4() {
    let r = constant_tambara(4, 3);
    for k in 0..=1 {
        let w = EquivariantWitt::new(&r, 3, k).unwrap();
        let nerve = hh0_via_nerve(&r, 3, k).unwrap();
        assert!(w.compare_levels(nerve.mackey()).values().all(|&b| b), "k={k}");
    }
}

#[test]
fn degree_zero_families_pass() {
    for (r, s) in [(constant_tambara(2, 3), 1usize), (constant_tambara(1, 3), 3), (burnside_tambara(1), 2), (constant_tambara(4, 3), 2)] {
        let data = degree_zero_family(&r, 3, s).unwrap();
        let report = check_equivariant(&data).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn leibniz_witness_is_stable() {
    let data = degree_zero_family(&constant_tambara(2, 3), 3, 1).unwrap();
    let bad = inject_leibniz_violation(&data).unwrap();
    let (a, b) = (check_equivariant(&bad).unwrap(), check_equivariant(&bad).unwrap());
    assert_eq!(a, b);
    assert!(matches!(a.status("differential"), Some(Status::Fail(_))));
}

#[test]
fn classical_towers() {
    for (p, a, len) in [(3u64, 3i64, 3usize), (3, 9, 2), (5, 5, 2)] {
        let c = ClassicalWittComplex::witt_vectors(p, BigInt::from(a), len, 0).unwrap();
        let r = check_classical(&c).unwrap();
        assert!(r.passed(), "p={p} Z/{a}: {:?}", r.failures().collect::<Vec<_>>());
    }
    let even = ClassicalWittComplex::witt_vectors(2, BigInt::from(2), 2, 0).unwrap();
    assert!(matches!(check_classical(&even), Err(Error::EvenPrime(2))));
}

#[test]
fn specialisation_needs_trivial_group() {
    let data = degree_zero_family(&constant_tambara(2, 3), 3, 1).unwrap();
    assert!(matches!(specialize_n1(&data), Err(Error::NotApplicable(_))));
}
