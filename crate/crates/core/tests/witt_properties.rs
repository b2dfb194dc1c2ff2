use std::sync::OnceLock;

use proptest::prelude::*;

use wittlab_core::ring::{CommRing, Integers, IntegersMod};
use wittlab_core::witt::lattice::WittGroup;
use wittlab_core::witt::{WittRing, WittVector};
use wittlab_core::BigInt;

fn ring(p: u64) -> &'static WittRing<Integers> {
    static RINGS: OnceLock<Vec<WittRing<Integers>>> = OnceLock::new();
    let rings = RINGS.get_or_init(|| [2, 3, 5].iter().map(|&p| WittRing::new(Integers, p, 3).unwrap()).collect());
    &rings[match p {
        2 => 0,
        3 => 1,
        _ => 2,
    }]
}

fn vector(w: &WittRing<Integers>, c: &[i64]) -> WittVector<BigInt> {
    w.from_ints(c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ghost_is_a_ring_map(p in prop::sample::select(vec![2u64, 3, 5]), a in prop::collection::vec(-20i64..20, 3), b in prop::collection::vec(-20i64..20, 3)) {
        let w = ring(p);
        let (x, y) = (vector(w, &a), vector(w, &b));
        let (gx, gy) = (w.ghost(&x), w.ghost(&y));
        let sum: Vec<BigInt> = gx.iter().zip(&gy).map(|(u, v)| u + v).collect();
        let prod: Vec<BigInt> = gx.iter().zip(&gy).map(|(u, v)| u * v).collect();
        prop_assert_eq!(w.ghost(&w.add(&x, &y).unwrap()), sum);
        prop_assert_eq!(w.ghost(&w.mul(&x, &y).unwrap()), prod);
    }

    #[test]
    fn frobenius_shifts_ghost(p in prop::sample::select(vec![2u64, 3, 5]), a in prop::collection::vec(-20i64..20, 3)) {
        let w = ring(p);
        let x = vector(w, &a);
        let f = w.frobenius(&x).unwrap();
        prop_assert_eq!(&w.ghost(&f)[..], &w.ghost(&x)[1..]);
    }

    #[test]
    fn verschiebung_identities(p in prop::sample::select(vec![2u64, 3, 5]), a in prop::collection::vec(-20i64..20, 3), b in prop::collection::vec(-20i64..20, 2)) {
        let w = ring(p);
        let (x, y) = (vector(w, &a), vector(w, &b));
        let vy = w.verschiebung(&y, 3).unwrap();
        // ghost of V(y) is (0, p·w_0(y), p·w_1(y))
        let gv = w.ghost(&vy);
        prop_assert_eq!(&gv[0], &BigInt::from(0));
        for (i, g) in w.ghost(&y).iter().enumerate() {
            prop_assert_eq!(&gv[i + 1], &(g * BigInt::from(p)));
        }
        let lhs = w.mul(&x, &vy).unwrap();
        let rhs = w.verschiebung(&w.mul(&w.frobenius(&x).unwrap(), &y).unwrap(), 3).unwrap();
        prop_assert_eq!(lhs, rhs);
        let x2 = w.restriction(&x).unwrap();
        prop_assert_eq!(w.frobenius(&w.verschiebung(&x2, 3).unwrap()).unwrap(), w.scalar(p as i64, &x2).unwrap());
    }

    #[test]
    fn teichmuller_is_multiplicative(p in prop::sample::select(vec![2u64, 3, 5]), a in -30i64..30, b in -30i64..30) {
        let w = ring(p);
        let ta = w.teichmuller(&BigInt::from(a), 2).unwrap();
        let tb = w.teichmuller(&BigInt::from(b), 2).unwrap();
        prop_assert_eq!(w.mul(&ta, &tb).unwrap(), w.teichmuller(&BigInt::from(a * b), 2).unwrap());
    }
}

#[test]
fn small_witt_rings_have_expected_orders() {
    // W_k(F_p) = Z/p^k and W_2(Z/4) at p=2 has exponent 8
    for p in [2u64, 3, 5] {
        let w = WittRing::new(IntegersMod::new(BigInt::from(p)).unwrap(), p, 3).unwrap();
        for k in 1..=3 {
            let one = w.one(k).unwrap();
            let mut acc = w.zero(k).unwrap();
            let mut order = 0;
            loop {
                acc = w.add(&acc, &one).unwrap();
                order += 1;
                if acc == w.zero(k).unwrap() {
                    break;
                }
            }
            assert_eq!(order, p.pow(k as u32), "W_{k}(F_{p})");
        }
    }
    let w = WittRing::new(IntegersMod::new(BigInt::from(4)).unwrap(), 2, 2).unwrap();
    let one = w.one(2).unwrap();
    assert_ne!(w.scalar(4, &one).unwrap(), w.zero(2).unwrap());
    assert_eq!(w.scalar(8, &one).unwrap(), w.zero(2).unwrap());
}

#[test]
fn lattice_model_matches_witt_coordinates() {
    // the ghost-lattice group agrees with Witt arithmetic over Z/a
    for (p, len, a) in [(3u64, 2usize, 3i64), (3, 3, 3), (2, 2, 4), (3, 2, 4)] {
        let g = WittGroup::new(p, len, BigInt::from(a)).unwrap();
        let base = IntegersMod::new(BigInt::from(a)).unwrap();
        let w = WittRing::new(base.clone(), p, len).unwrap();
        let elems = w.elements(len).unwrap();
        assert_eq!(g.group().order(), Some(BigInt::from(a).pow(len as u32)));
        for x in &elems {
            let cx = g.from_witt_coords(x.coords()).unwrap();
            for y in elems.iter().take(20) {
                let cy = g.from_witt_coords(y.coords()).unwrap();
                let sum = g.from_witt_coords(w.add(x, y).unwrap().coords()).unwrap();
                let prod = g.from_witt_coords(w.mul(x, y).unwrap().coords()).unwrap();
                let lhs: Vec<BigInt> = cx.iter().zip(&cy).map(|(u, v)| u + v).collect();
                assert!(g.group().eq_elem(&sum, &lhs), "p={p} len={len} Z/{a}");
                assert!(g.group().eq_elem(&prod, &g.mul(&cx, &cy)), "p={p} len={len} Z/{a}");
            }
        }
        assert_eq!(base.characteristic(), BigInt::from(a));
    }
}
