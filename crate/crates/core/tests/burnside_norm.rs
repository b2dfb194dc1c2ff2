// Norms and marks of the Burnside functor against explicit finite sets.

use std::collections::{BTreeMap, BTreeSet};

use wittlab_core::arith::divisors;
use wittlab_core::green::{burnside_marks, burnside_norm, burnside_tambara};
use wittlab_core::BigInt;

/// A finite `C_e`-set as a permutation of its points (the generator's action).
fn cyclic_set(e: u64, orbits: &[(u64, u64)]) -> Vec<usize> {
    let mut perm = Vec::new();
    for &(stab, count) in orbits {
        let size = (e / stab) as usize;
        for _ in 0..count {
            let base = perm.len();
            perm.extend((0..size).map(|j| base + (j + 1) % size));
        }
    }
    perm
}

fn basis_coords(d: u64, counts: &BTreeMap<u64, i64>) -> Vec<BigInt> {
    divisors(d).iter().map(|s| BigInt::from(*counts.get(s).unwrap_or(&0))).collect()
}

/// `Map_{C_e}(C_d, X)` with `C_d` translating the source, decomposed into orbits.
fn norm_by_enumeration(e: u64, d: u64, perm: &[usize]) -> Vec<BigInt> {
    let t = (d / e) as usize;
    let n = perm.len();
    let total = n.pow(t as u32);
    let mut seen = BTreeSet::new();
    let mut counts = BTreeMap::new();
    for code in 0..total {
        let mut f: Vec<usize> = (0..t).map(|i| code / n.pow(i as u32) % n).collect();
        if seen.contains(&f) {
            continue;
        }
        let mut size = 0;
        while seen.insert(f.clone()) {
            size += 1;
            // (1·f)(x) = f(x+1), and f(t) = g·f(0)
            let head = perm[f[0]];
            f.rotate_left(1);
            f[t - 1] = head;
        }
        *counts.entry(d / size).or_insert(0) += 1;
    }
    basis_coords(d, &counts)
}

fn fixed_points(perm: &[usize], power: usize) -> i64 {
    (0..perm.len())
        .filter(|&x| {
            let mut y = x;
            for _ in 0..power {
                y = perm[y];
            }
            y == x
        })
        .count() as i64
}

fn small_sets(e: u64) -> Vec<Vec<(u64, u64)>> {
    let divs = divisors(e);
    let mut out = vec![vec![]];
    for &s in &divs {
        let mut next = Vec::new();
        for partial in &out {
            for c in 0..=1 {
                let mut v = partial.clone();
                if c > 0 {
                    v.push((s, c));
                }
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().filter(|v| v.iter().map(|&(s, c)| e / s * c).sum::<u64>() <= 4).collect()
}

#[test]
fn marks_count_fixed_points() {
    for d in 1..=12u64 {
        for orbits in small_sets(d) {
            let perm = cyclic_set(d, &orbits);
            let counts = orbits.iter().map(|&(s, c)| (s, c as i64)).collect();
            let x = basis_coords(d, &counts);
            let marks = burnside_marks(d, &x);
            for (c, m) in divisors(d).iter().zip(&marks) {
                // C_c is generated by the (d/c)-th power of the generator
                assert_eq!(*m, BigInt::from(fixed_points(&perm, (d / c) as usize)), "d={d} c={c} {orbits:?}");
            }
        }
    }
}

#[test]
fn norm_matches_coinduced_sets() {
    for d in [2u64, 3, 4, 6, 8, 9] {
        for e in divisors(d) {
            if (d / e) > 4 {
                continue;
            }
            for orbits in small_sets(e) {
                let perm = cyclic_set(e, &orbits);
                if perm.len().pow((d / e) as u32) > 5000 {
                    continue;
                }
                let counts = orbits.iter().map(|&(s, c)| (s, c as i64)).collect();
                let x = basis_coords(e, &counts);
                assert_eq!(burnside_norm(e, d, &x), norm_by_enumeration(e, d, &perm), "N_{e}^{d} of {orbits:?}");
            }
        }
    }
}

#[test]
fn two_point_set_norms_to_c3() {
    let perm = cyclic_set(1, &[(1, 2)]);
    let x = vec![BigInt::from(2)];
    assert_eq!(norm_by_enumeration(1, 3, &perm), burnside_norm(1, 3, &x));
    assert_eq!(burnside_norm(1, 3, &x), vec![BigInt::from(2), BigInt::from(2)]);
}

#[test]
fn burnside_tambara_axioms() {
    for n in [1u64, 2, 3, 4, 6, 8, 9, 12] {
        burnside_tambara(n).check_axioms(12).unwrap_or_else(|e| panic!("C{n}: {e}"));
    }
}
