//! Acceptance criteria, one PASS/FAIL line each. Runs with its own harness:
//! `cargo test -p wittlab-core --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittlab_core::complex::{
    check_classical, check_equivariant, degree_zero_family, inject_leibniz_violation, inject_scaled_transfer,
    specialize_n1, AxiomReport, Status, WittComplexData,
};
use wittlab_core::eqwitt::hh0_via_nerve;
use wittlab_core::green::{burnside_tambara, constant_tambara};
use wittlab_core::mackey::{box_product, box_unit_iso, burnside, constant_mackey, fixed_point_mackey, symmetry};
use wittlab_core::matrix::{int_vec, unit_vec};
use wittlab_core::ring::{Integers, IntegersMod};
use wittlab_core::witt::{WittRing, WittVector};
use wittlab_core::{AbHom, BigInt, EquivariantWitt, FgAbGroup, IntMatrix, MackeyFunctor, MackeyMap, TambaraFunctor};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `t·1` in level `m` of a Tambara functor.
fn scalar(r: &TambaraFunctor, m: u64, t: &BigInt) -> Vec<BigInt> {
    r.green().one(m).iter().map(|c| c * t).collect()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Check {
    let w = ok(EquivariantWitt::new(&constant_tambara(2, 3), 3, 1))?;
    let top = w.mackey().level(3);
    ensure!(top.invariant_factors() == [big(9)], "C6/C3 has invariant factors {:?}", top.invariant_factors());
    let one3 = w.green().one(3).to_vec();
    let one1 = w.green().one(1).to_vec();
    ensure!(top.elem_order(&one3) == Some(big(9)), "1 does not generate C6/C3");
    let res = w.mackey().res(3, 1);
    for t in 0..9 {
        let x: Vec<BigInt> = one3.iter().map(|c| c * t).collect();
        let want: Vec<BigInt> = one1.iter().map(|c| c * (t % 3)).collect();
        ensure!(w.mackey().level(1).eq_elem(&res.apply(&x), &want), "res({t}) is not {t} mod 3");
    }
    Ok(())
}

fn criterion_2() -> Check {
    let r = constant_tambara(2, 3);
    let w = ok(EquivariantWitt::new(&r, 3, 1))?;
    let top = w.mackey().level(3);
    for (a, want) in [(0, 0), (1, 1), (-1, -1)] {
        let got = ok(w.multiplicative_lift(&scalar(&r, 1, &big(a)), 1))?;
        let want: Vec<BigInt> = w.green().one(3).iter().map(|c| c * want).collect();
        ensure!(top.eq_elem(&got, &want), "[{a}] = {got:?} in Z/9");
    }
    Ok(())
}

fn criterion_3() -> Check {
    let w = ok(EquivariantWitt::new(&burnside_tambara(2), 3, 1))?;
    let a6 = burnside_tambara(6);
    let ranks: Vec<usize> = w.mackey().divisors().iter().map(|&d| w.mackey().level(d).free_rank()).collect();
    ensure!(ranks == [1, 2, 2, 4], "ranks {ranks:?}");
    for &d in w.mackey().divisors() {
        ensure!(w.mackey().level(d).invariant_factors().iter().all(|f| f.is_zero()), "torsion at level {d}");
    }
    let ids = a6.mackey().divisors().iter().map(|&d| (d, IntMatrix::identity(a6.mackey().level(d).ngens()))).collect();
    // MackeyMap::new checks res, tr and the Weyl action on every basis element
    let iso = ok(MackeyMap::new(w.mackey().clone(), a6.mackey().clone(), &ids))?;
    ensure!(iso.is_isomorphism(), "identity on bases is not an isomorphism");
    ok(wittlab_core::GreenFunctor::check_ring_map(&iso, w.green(), a6.green()))?;
    Ok(())
}

/// `C_3`-orbits of functions `C_3 → {0, …, m−1}` by stabiliser order.
fn orbit_counts(m: u64) -> (i64, i64) {
    let mut seen = BTreeSet::new();
    let (mut fixed, mut free) = (0, 0);
    for code in 0..m.pow(3) {
        let f = [code % m, code / m % m, code / (m * m)];
        if seen.contains(&f) {
            continue;
        }
        let orbit: BTreeSet<[u64; 3]> = (0..3).map(|s| [f[s % 3], f[(s + 1) % 3], f[(s + 2) % 3]]).collect();
        if orbit.len() == 1 {
            fixed += 1;
        } else {
            free += 1;
        }
        seen.extend(orbit);
    }
    (fixed, free)
}

fn criterion_4() -> Check {
    let r = burnside_tambara(1);
    let w = ok(EquivariantWitt::new(&r, 3, 1))?;
    let (fixed, free) = orbit_counts(2);
    // basis of A(C_3): [C_3/e], [C_3/C_3]
    let oracle = int_vec(&[free, fixed]);
    ensure!(oracle == int_vec(&[2, 2]), "enumeration gives {oracle:?}");
    let lift = ok(w.multiplicative_lift(&int_vec(&[2]), 1))?;
    ensure!(lift == oracle, "lift of a 2-element set is {lift:?}");
    for k in 0..=2u32 {
        let w = ok(EquivariantWitt::new(&r, 3, k))?;
        let top = 3u64.pow(k);
        for x in -5..=5i64 {
            let lift = ok(w.multiplicative_lift(&int_vec(&[x]), 1))?;
            let down = w.mackey().res(top, 1).apply(&lift);
            let want = Pow::pow(big(x), top);
            ensure!(down == vec![want.clone()], "res [{x}]_{k} = {down:?}, expected {want}");
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for p in [2u64, 3, 5] {
        let w = ok(WittRing::new(Integers, p, 4))?;
        let mut draw = |len: usize| -> WittVector<BigInt> {
            let coords: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
            w.from_ints(&coords).expect("valid length")
        };
        for trial in 0..50 {
            let (x, y, z) = (draw(3), draw(3), draw(3));
            let g = |v: &WittVector<BigInt>| w.ghost(v);
            let (xy, sum) = (ok(w.mul(&x, &y))?, ok(w.add(&x, &y))?);
            let gsum: Vec<BigInt> = g(&x).iter().zip(g(&y)).map(|(a, b)| a + b).collect();
            let gprod: Vec<BigInt> = g(&x).iter().zip(g(&y)).map(|(a, b)| a * b).collect();
            ensure!(g(&sum) == gsum, "p={p} trial {trial}: ghost not additive");
            ensure!(g(&xy) == gprod, "p={p} trial {trial}: ghost not multiplicative");
            let assoc_l = ok(w.mul(&xy, &z))?;
            let assoc_r = ok(w.mul(&x, &ok(w.mul(&y, &z))?))?;
            ensure!(assoc_l == assoc_r, "p={p} trial {trial}: (xy)z ≠ x(yz)");
            let add_l = ok(w.add(&sum, &z))?;
            let add_r = ok(w.add(&x, &ok(w.add(&y, &z))?))?;
            ensure!(add_l == add_r, "p={p} trial {trial}: (x+y)+z ≠ x+(y+z)");
            ensure!(xy == ok(w.mul(&y, &x))?, "p={p} trial {trial}: xy ≠ yx");
            ensure!(sum == ok(w.add(&y, &x))?, "p={p} trial {trial}: x+y ≠ y+x");
            let dist_l = ok(w.mul(&x, &ok(w.add(&y, &z))?))?;
            let dist_r = ok(w.add(&xy, &ok(w.mul(&x, &z))?))?;
            ensure!(dist_l == dist_r, "p={p} trial {trial}: x(y+z) ≠ xy+xz");
            ensure!(ok(w.mul(&x, &ok(w.one(3))?))? == x, "p={p} trial {trial}: x·1 ≠ x");
            ensure!(ok(w.add(&x, &ok(w.neg(&x))?))? == ok(w.zero(3))?, "p={p} trial {trial}: x−x ≠ 0");
            // FV = p on W_3
            let fv = ok(w.frobenius(&ok(w.verschiebung(&x, 4))?))?;
            ensure!(fv == ok(w.scalar(p as i64, &x))?, "p={p} trial {trial}: FV(x) ≠ px");
            // x·V(y) = V(F(x)·y) with y ∈ W_2
            let y2 = ok(w.restriction(&y))?;
            let lhs = ok(w.mul(&x, &ok(w.verschiebung(&y2, 3))?))?;
            let rhs = ok(w.verschiebung(&ok(w.mul(&ok(w.frobenius(&x))?, &y2))?, 3))?;
            ensure!(lhs == rhs, "p={p} trial {trial}: xV(y) ≠ V(F(x)y)");
            // F[a]_k = [a^p]_{k−1}
            let a = x.coords()[0].clone();
            let fl = ok(w.frobenius(&ok(w.teichmuller(&a, 2))?))?;
            ensure!(fl == ok(w.teichmuller(&Pow::pow(&a, p), 1))?, "p={p} trial {trial}: F[a] ≠ [a^p]");
            // RF = FR
            ensure!(
                ok(w.restriction(&ok(w.frobenius(&x))?))? == ok(w.frobenius(&ok(w.restriction(&x))?))?,
                "p={p} trial {trial}: RF ≠ FR"
            );
        }
    }
    Ok(())
}

/// `Σ_i V^i [x_i]` as an element of level `p^j` of `w`, with the lifts taken
/// from the shorter Witt functors `ws`.
fn decompose(ws: &[EquivariantWitt], r: &TambaraFunctor, w: &EquivariantWitt, x: &[BigInt]) -> std::result::Result<Vec<BigInt>, String> {
    let p = w.p();
    let j = x.len() - 1;
    let top = p.pow(j as u32);
    let mut acc = w.mackey().level(top).zero();
    for (i, xi) in x.iter().enumerate() {
        let lift = ok(ws[j - i].multiplicative_lift(&scalar(r, 1, xi), 1))?;
        let from = p.pow((j - i) as u32);
        ensure!(lift.len() == w.mackey().level(from).ngens(), "presentations differ at level {from}");
        let t = w.mackey().tr(from, top).apply(&lift);
        acc = acc.iter().zip(&t).map(|(a, b)| a + b).collect();
    }
    Ok(w.mackey().level(top).reduce(&acc))
}

fn criterion_6() -> Check {
    let p = 3u64;
    for a in [3u64, 4] {
        let r = constant_tambara(1, a);
        let ring = ok(IntegersMod::new(big(a as i64)))?;
        let classical = ok(WittRing::new(ring, p, 3))?;
        let ws: Vec<EquivariantWitt> = (0..=2).map(|k| EquivariantWitt::new(&r, p, k)).collect::<Result<_, _>>().map_err(|e| format!("{e:?}"))?;
        for k in 0..=2usize {
            let w = &ws[k];
            let top = p.pow(k as u32);
            let group = w.mackey().level(top);
            let elems = classical.elements(k + 1).expect("finite");
            ensure!(group.order() == Some(big(a as i64).pow(k as u32 + 1)), "A=Z/{a}, k={k}: top level has order {:?}", group.order());
            let phi: Vec<Vec<BigInt>> = elems.iter().map(|x| decompose(&ws, &r, w, x.coords())).collect::<Result<_, _>>()?;
            let distinct: BTreeSet<Vec<BigInt>> = phi.iter().map(|v| group.canonical(v)).collect();
            ensure!(distinct.len() == elems.len(), "A=Z/{a}, k={k}: identification is not injective");
            for (x, fx) in elems.iter().zip(&phi) {
                for (y, fy) in elems.iter().zip(&phi) {
                    let s = decompose(&ws, &r, w, ok(classical.add(x, y))?.coords())?;
                    let m = decompose(&ws, &r, w, ok(classical.mul(x, y))?.coords())?;
                    let fs: Vec<BigInt> = fx.iter().zip(fy).map(|(u, v)| u + v).collect();
                    ensure!(group.eq_elem(&s, &fs), "A=Z/{a}, k={k}: not additive at {:?}, {:?}", x.coords(), y.coords());
                    ensure!(group.eq_elem(&m, &w.green().mul(top, fx, fy)), "A=Z/{a}, k={k}: not multiplicative");
                }
                if k >= 1 {
                    let f = ok(w.frobenius(top))?.apply(fx);
                    let want = decompose(&ws, &r, w, ok(classical.frobenius(x))?.coords())?;
                    ensure!(w.mackey().level(top / p).eq_elem(&f, &want), "A=Z/{a}, k={k}: F disagrees at {:?}", x.coords());
                    let rr = ok(w.restriction_r())?;
                    let got = rr.map.component(top / p).apply(fx);
                    let want = decompose(&ws, &r, &rr.target, ok(classical.restriction(x))?.coords())?;
                    ensure!(rr.target.mackey().level(top / p).eq_elem(&got, &want), "A=Z/{a}, k={k}: r disagrees with R");
                }
            }
            if k >= 1 {
                for y in classical.elements(k).expect("finite") {
                    let fy = decompose(&ws, &r, w, y.coords())?;
                    let v = ok(w.verschiebung(top / p))?.apply(&fy);
                    let want = decompose(&ws, &r, w, ok(classical.verschiebung(&y, k + 1))?.coords())?;
                    ensure!(group.eq_elem(&v, &want), "A=Z/{a}, k={k}: V disagrees at {:?}", y.coords());
                }
            }
            for t in 0..a as i64 {
                let c = ok(w.check_r_lift_identity(&scalar(&r, 1, &big(t))))?;
                ensure!(c.holds, "A=Z/{a}, k={k}: r^k[{t}]_k = {:?}", c.lhs);
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let cases: Vec<(&str, TambaraFunctor, u32)> = vec![
        ("burnside(2)", burnside_tambara(2), 1),
        ("constant F3 over C2", constant_tambara(2, 3), 1),
        ("F3, n=1, k=0", constant_tambara(1, 3), 0),
        ("F3, n=1, k=1", constant_tambara(1, 3), 1),
        ("F3, n=1, k=2", constant_tambara(1, 3), 2),
    ];
    for (name, r, k) in cases {
        let w = ok(EquivariantWitt::new(&r, 3, k))?;
        let nerve = ok(hh0_via_nerve(&r, 3, k))?;
        ensure!(w.mackey().levels_isomorphic(nerve.mackey()), "{name}: invariant factors differ");
        let cmp = w.compare_levels(nerve.mackey());
        ensure!(cmp.values().all(|&b| b), "{name}: levels {cmp:?}");
        // same generators on both sides, so res and tr agree once the identity is an isomorphism
        let ids = w.mackey().divisors().iter().map(|&d| (d, IntMatrix::identity(w.mackey().level(d).ngens()))).collect();
        ok(MackeyMap::new(nerve.mackey().clone(), w.mackey().clone(), &ids))?;
    }
    Ok(())
}

fn sign_z(n: u64) -> MackeyFunctor {
    let z = FgAbGroup::free(1);
    fixed_point_mackey(n, &AbHom::scalar(&z, &big(-1))).expect("σ² = 1")
}

fn criterion_8() -> Check {
    let batteries: Vec<(u64, Vec<(&str, MackeyFunctor)>)> = vec![
        (2, vec![("A", burnside(2)), ("F3", constant_mackey(2, 3)), ("Z-", sign_z(2))]),
        (6, vec![("A", burnside(6)), ("F3", constant_mackey(6, 3)), ("Z-", sign_z(6))]),
    ];
    for (n, battery) in &batteries {
        for (name, m) in battery {
            let bx = ok(box_product(&burnside(*n), m))?;
            let unit = ok(box_unit_iso(&bx))?;
            ensure!(unit.is_isomorphism(), "C{n}: A □ {name} → {name} is not an isomorphism");
        }
        for (a, m) in battery {
            for (b, k) in battery {
                let mn = ok(box_product(m, k))?;
                let nm = ok(box_product(k, m))?;
                let sym = ok(symmetry(&mn, &nm))?;
                ensure!(sym.is_isomorphism(), "C{n}: {a} □ {b} ≅ {b} □ {a} fails");
                let back = ok(symmetry(&nm, &mn))?;
                ensure!(sym.then(&back).equals(&MackeyMap::identity(&mn.functor)), "C{n}: swap is not an involution on {a} □ {b}");
                let bottom = FgAbGroup::tensor(m.level(1), k.level(1));
                ensure!(mn.functor.level(1).is_isomorphic(&bottom), "C{n}: bottom level of {a} □ {b}");
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    for p in [2u64, 3, 5, 7] {
        let a = burnside(p);
        let (phi, proj) = ok(a.geometric_fixed_points(p))?;
        let g = phi.level(1);
        ensure!(g.is_isomorphic(&FgAbGroup::free(1)), "p={p}: Φ is {g:?}");
        // basis [C_p/e], [C_p/C_p]
        let free = proj.component(1).apply(&unit_vec(2, 0));
        let point = proj.component(1).apply(&unit_vec(2, 1));
        ensure!(g.is_zero(&free), "p={p}: [C_p/e] survives");
        ensure!(g.canonical(&point).iter().map(|c| c.magnitude().clone()).sum::<num_bigint::BigUint>() == 1u32.into(), "p={p}: [C_p/C_p] does not generate");
        let w = ok(EquivariantWitt::new(&burnside_tambara(1), p, 1))?;
        let r = ok(w.restriction_r())?;
        ensure!(r.map.component(1).apply(&unit_vec(2, 1)) == int_vec(&[1]), "p={p}: r([C_p/C_p]) ≠ 1");
        ensure!(r.map.component(1).apply(&unit_vec(2, 0)) == int_vec(&[0]), "p={p}: r([C_p/e]) ≠ 0");
    }
    Ok(())
}

fn fails_with_witness(r: &AxiomReport, axiom: &str) -> bool {
    matches!(r.status(axiom), Some(Status::Fail(_)))
}

fn passes(name: &str, data: &WittComplexData) -> Check {
    let r = ok(check_equivariant(data))?;
    ensure!(r.passed(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
    for axiom in ["mackey", "(i) λr = rλ", "(i) dr = rd", "(ii) res d tr = d", "(ii) res tr = [L:H]"] {
        ensure!(r.status(axiom) == Some(&Status::Pass), "{name}: {axiom} did not run");
    }
    Ok(())
}

fn criterion_10() -> Check {
    let f3_c2 = ok(degree_zero_family(&constant_tambara(2, 3), 3, 1))?;
    let f3_n1 = ok(degree_zero_family(&constant_tambara(1, 3), 3, 2))?;
    passes("constant F3, n=2, S=1", &f3_c2)?;
    passes("F3, n=1, S=2", &f3_n1)?;
    let classical = ok(specialize_n1(&f3_n1))?;
    let r = ok(check_classical(&classical))?;
    ensure!(r.passed(), "specialised F3 tower: {:?}", r.failures().collect::<Vec<_>>());

    for data in [&f3_c2, &f3_n1] {
        let bad = ok(inject_leibniz_violation(data))?;
        let r1 = ok(check_equivariant(&bad))?;
        let r2 = ok(check_equivariant(&bad))?;
        ensure!(r1 == r2, "Leibniz report is not reproducible");
        ensure!(fails_with_witness(&r1, "differential"), "Leibniz violation not detected");
        if let Some(Status::Fail(w)) = r1.status("differential") {
            // re-evaluate d(xy) against d(x)y + x d(y) in degree 0
            let lvl = w.level.ok_or("witness without level")?;
            let e = &bad.tower[w.s];
            let d = &bad.d[w.s][&(0, lvl)];
            let (x, y) = (&w.element, &w.other);
            let lhs = d.apply(&e.mul(0, 0, lvl, x, y));
            let rhs: Vec<BigInt> = e.mul(1, 0, lvl, &d.apply(x), y).iter().zip(e.mul(0, 1, lvl, x, &d.apply(y))).map(|(a, b)| a + b).collect();
            ensure!(!e.degree(1).level(lvl).eq_elem(&lhs, &rhs), "Leibniz witness does not reproduce");
        }
        let bad = ok(inject_scaled_transfer(data, 2))?;
        let r1 = ok(check_equivariant(&bad))?;
        ensure!(r1 == ok(check_equivariant(&bad))?, "scaled-transfer report is not reproducible");
        ensure!(!r1.passed(), "scaled transfer not detected");
    }
    let bad = ok(inject_scaled_transfer(&f3_n1, 2))?;
    let r = ok(check_equivariant(&bad))?;
    match r.status("(ii) res tr = [L:H]") {
        Some(Status::Fail(w)) => {
            let (l, h) = (w.level.ok_or("no level")?, w.sublevel.ok_or("no sublevel")?);
            let f = bad.tower[w.s].degree(w.degree);
            let lhs = f.res(l, h).apply(&f.tr(h, l).apply(&w.element));
            let rhs: Vec<BigInt> = w.element.iter().map(|c| c * BigInt::from(l / h)).collect();
            ensure!(!f.level(h).eq_elem(&lhs, &rhs), "FV witness does not reproduce");
        }
        other => return Err(format!("FV = p violation not reported: {other:?}")),
    }
    let r = ok(check_classical(&ok(specialize_n1(&bad))?))?;
    ensure!(fails_with_witness(&r, "FV = p"), "FV violation does not reach the classical checker");
    Ok(())
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, title: "Z/9 level and reduction mod 3", limit: secs(5), run: criterion_1 },
        Criterion { id: 2, title: "multiplicative lift 0, 1, -1 into Z/9", limit: secs(1), run: criterion_2 },
        Criterion { id: 3, title: "Witt vectors of the Burnside functor", limit: secs(10), run: criterion_3 },
        Criterion { id: 4, title: "Burnside lift and power law", limit: None, run: criterion_4 },
        Criterion { id: 5, title: "classical Witt ring properties", limit: secs(30), run: criterion_5 },
        Criterion { id: 6, title: "n=1 agrees with classical Witt vectors", limit: None, run: criterion_6 },
        Criterion { id: 7, title: "twisted nerve oracle", limit: secs(60), run: criterion_7 },
        Criterion { id: 8, title: "box product laws", limit: None, run: criterion_8 },
        Criterion { id: 9, title: "geometric fixed points of the Burnside functor", limit: None, run: criterion_9 },
        Criterion { id: 10, title: "Witt complex verifier", limit: secs(30), run: criterion_10 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(c.run)) {
            Ok(r) => r,
            Err(e) => Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into())),
        };
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {} ({elapsed:.2?})", c.id, c.title),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({elapsed:.2?}): {msg}", c.id, c.title);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
