//! Box products by generators and relations.
//!
//! Level `d` of `M □ N` is generated by symbols `[x ⊗ y]_e` for `e | d`,
//! `x ∈ M(e)`, `y ∈ N(e)` (think `tr^d_e(x ⊗ y)`), subject to bilinearity,
//! invariance under the generator of `C_d/C_e`, and the two Frobenius
//! relations `[tr x ⊗ y]_e = [x ⊗ res y]_{e'}`, `[x ⊗ tr y]_e = [res x ⊗ y]_{e'}`
//! for `e' | e`. Transfers keep symbols, the Weyl generator acts diagonally,
//! and restriction follows the double coset formula.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{burnside, covering_pairs, MackeyFunctor, MackeyMap};
use crate::abelian::{AbHom, FgAbGroup};
use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::matrix::{outer, unit_vec, zero_vec, IntMatrix};

#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub functor: MackeyFunctor,
    pub left: MackeyFunctor,
    pub right: MackeyFunctor,
    /// Start of the block of symbols with index `e`, per level.
    offsets: BTreeMap<u64, BTreeMap<u64, usize>>,
}

impl BoxProduct {
    fn block_width(&self, e: u64) -> usize {
        self.right.level(e).ngens()
    }

    /// Index of the generator `[xᵢ ⊗ yⱼ]_e` at level `d`.
    pub fn symbol_index(&self, d: u64, e: u64, i: usize, j: usize) -> usize {
        self.offsets[&d][&e] + i * self.block_width(e) + j
    }

    /// `[x ⊗ y]_e` as an element of level `d`.
    pub fn symbol(&self, d: u64, e: u64, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut v = zero_vec(self.functor.level(d).ngens());
        let off = self.offsets[&d][&e];
        for (k, c) in outer(x, y).into_iter().enumerate() {
            v[off + k] += c;
        }
        v
    }

    /// The generators of level `d` as `(e, i, j)` in index order.
    pub fn symbols(&self, d: u64) -> Vec<(u64, usize, usize)> {
        let mut out = Vec::new();
        for e in divisors(d) {
            for i in 0..self.left.level(e).ngens() {
                for j in 0..self.right.level(e).ngens() {
                    out.push((e, i, j));
                }
            }
        }
        out
    }
}

fn add_into(row: &mut [BigInt], off: usize, v: &[BigInt]) {
    for (k, c) in v.iter().enumerate() {
        row[off + k] += c;
    }
}

fn sub_into(row: &mut [BigInt], off: usize, v: &[BigInt]) {
    for (k, c) in v.iter().enumerate() {
        row[off + k] -= c;
    }
}

fn is_identity(h: &AbHom) -> bool {
    h.matrix == IntMatrix::identity(h.matrix.rows())
}

pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<BoxProduct> {
    if m.n() != n.n() {
        return Err(Error::GroupMismatch(m.n(), n.n()));
    }
    let big_n = m.n();
    let divs = divisors(big_n);
    let mut offsets: BTreeMap<u64, BTreeMap<u64, usize>> = BTreeMap::new();
    let mut sizes = BTreeMap::new();
    for &d in &divs {
        let mut off = BTreeMap::new();
        let mut total = 0;
        for e in divisors(d) {
            off.insert(e, total);
            total += m.level(e).ngens() * n.level(e).ngens();
        }
        offsets.insert(d, off);
        sizes.insert(d, total);
    }

    let mut levels = BTreeMap::new();
    for &d in &divs {
        let size = sizes[&d];
        let off = &offsets[&d];
        let mut rel = IntMatrix::zeros(0, size);
        for e in divisors(d) {
            let (me, ne) = (m.level(e), n.level(e));
            let (a, b) = (me.ngens(), ne.ngens());
            for r in 0..me.relations().rows() {
                for j in 0..b {
                    let mut row = zero_vec(size);
                    add_into(&mut row, off[&e], &outer(me.relations().row(r), &unit_vec(b, j)));
                    rel.push_row(row);
                }
            }
            for i in 0..a {
                for s in 0..ne.relations().rows() {
                    let mut row = zero_vec(size);
                    add_into(&mut row, off[&e], &outer(&unit_vec(a, i), ne.relations().row(s)));
                    rel.push_row(row);
                }
            }
            let gm = m.weyl_pow(e, big_n / d);
            let gn = n.weyl_pow(e, big_n / d);
            if !(is_identity(&gm) && is_identity(&gn)) {
                for i in 0..a {
                    for j in 0..b {
                        let mut row = zero_vec(size);
                        add_into(&mut row, off[&e], &outer(gm.matrix.row(i), gn.matrix.row(j)));
                        row[off[&e] + i * b + j] -= 1;
                        rel.push_row(row);
                    }
                }
            }
        }
        for (e1, e) in covering_pairs(d) {
            // [tr x ⊗ y]_e = [x ⊗ res y]_{e1}
            let (tm, rn) = (m.tr(e1, e), n.res(e, e1));
            for i in 0..m.level(e1).ngens() {
                for j in 0..n.level(e).ngens() {
                    let mut row = zero_vec(size);
                    add_into(&mut row, off[&e], &outer(tm.matrix.row(i), &unit_vec(n.level(e).ngens(), j)));
                    sub_into(&mut row, off[&e1], &outer(&unit_vec(m.level(e1).ngens(), i), rn.matrix.row(j)));
                    rel.push_row(row);
                }
            }
            // [x ⊗ tr y]_e = [res x ⊗ y]_{e1}
            let (rm, tn) = (m.res(e, e1), n.tr(e1, e));
            for i in 0..m.level(e).ngens() {
                for j in 0..n.level(e1).ngens() {
                    let mut row = zero_vec(size);
                    add_into(&mut row, off[&e], &outer(&unit_vec(m.level(e).ngens(), i), tn.matrix.row(j)));
                    sub_into(&mut row, off[&e1], &outer(rm.matrix.row(i), &unit_vec(n.level(e1).ngens(), j)));
                    rel.push_row(row);
                }
            }
        }
        levels.insert(d, FgAbGroup::new(size, rel));
    }

    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (d1, d) in covering_pairs(big_n) {
        let mut t = IntMatrix::zeros(sizes[&d1], sizes[&d]);
        for e in divisors(d1) {
            let w = m.level(e).ngens() * n.level(e).ngens();
            for k in 0..w {
                t[(offsets[&d1][&e] + k, offsets[&d][&e] + k)] = BigInt::from(1);
            }
        }
        tr.insert((d1, d), AbHom::new(levels[&d1].clone(), levels[&d].clone(), t)?);

        let mut r = IntMatrix::zeros(0, sizes[&d1]);
        for e in divisors(d) {
            let g = gcd(d1, e);
            let count = d / lcm(d1, e);
            let gm = m.weyl_pow(g, big_n / d);
            let gn = n.weyl_pow(g, big_n / d);
            let (rm, rn) = (m.res(e, g), n.res(e, g));
            for i in 0..m.level(e).ngens() {
                for j in 0..n.level(e).ngens() {
                    let mut row = zero_vec(sizes[&d1]);
                    let mut x = rm.matrix.row(i).to_vec();
                    let mut y = rn.matrix.row(j).to_vec();
                    for _ in 0..count {
                        add_into(&mut row, offsets[&d1][&g], &outer(&x, &y));
                        x = gm.apply(&x);
                        y = gn.apply(&y);
                    }
                    r.push_row(row);
                }
            }
        }
        res.insert((d1, d), AbHom::new(levels[&d].clone(), levels[&d1].clone(), r)?);
    }
    let mut weyl = BTreeMap::new();
    for &d in &divs {
        let mut w = IntMatrix::zeros(0, sizes[&d]);
        for e in divisors(d) {
            let (wm, wn) = (m.weyl(e), n.weyl(e));
            for i in 0..m.level(e).ngens() {
                for j in 0..n.level(e).ngens() {
                    let mut row = zero_vec(sizes[&d]);
                    add_into(&mut row, offsets[&d][&e], &outer(wm.matrix.row(i), wn.matrix.row(j)));
                    w.push_row(row);
                }
            }
        }
        weyl.insert(d, AbHom::new(levels[&d].clone(), levels[&d].clone(), w)?);
    }
    let functor = MackeyFunctor::assemble(big_n, levels, res, tr, weyl);
    Ok(BoxProduct { functor, left: m.clone(), right: n.clone(), offsets })
}

/// The unit isomorphism `A □ M → M`, `[[C_e/C_f] ⊗ x]_e ↦ tr^d_f res^e_f x`.
/// `bx` must be `burnside(N) □ M`.
pub fn box_unit_iso(bx: &BoxProduct) -> Result<MackeyMap> {
    let m = &bx.right;
    let mut comps = BTreeMap::new();
    for &d in bx.functor.divisors() {
        let mut rows = Vec::new();
        for (e, i, j) in bx.symbols(d) {
            let f = divisors(e)[i];
            let x = unit_vec(m.level(e).ngens(), j);
            rows.push(m.tr(f, d).apply(&m.res(e, f).apply(&x)));
        }
        comps.insert(d, IntMatrix::from_rows(m.level(d).ngens(), rows));
    }
    MackeyMap::new(bx.functor.clone(), m.clone(), &comps)
}

/// `M □ N → N □ M`, swapping the factors of every symbol.
pub fn symmetry(mn: &BoxProduct, nm: &BoxProduct) -> Result<MackeyMap> {
    let mut comps = BTreeMap::new();
    for &d in mn.functor.divisors() {
        let size = nm.functor.level(d).ngens();
        let rows = mn.symbols(d).into_iter().map(|(e, i, j)| unit_vec(size, nm.symbol_index(d, e, j, i))).collect();
        comps.insert(d, IntMatrix::from_rows(size, rows));
    }
    MackeyMap::new(mn.functor.clone(), nm.functor.clone(), &comps)
}

/// `(M □ N) □ P → M □ (N □ P)`,
/// `[[x ⊗ y]_f ⊗ z]_e ↦ [x ⊗ [y ⊗ res^e_f z]_f]_f`.
pub fn associator(mn_p: &BoxProduct, mn: &BoxProduct, m_np: &BoxProduct, np: &BoxProduct) -> Result<MackeyMap> {
    let p = &mn_p.right;
    let mut comps = BTreeMap::new();
    for &d in mn_p.functor.divisors() {
        let size = m_np.functor.level(d).ngens();
        let mut rows = Vec::new();
        for (e, u, k) in mn_p.symbols(d) {
            let (f, i, j) = mn.symbols(e)[u];
            let z = p.res(e, f).apply(&unit_vec(p.level(e).ngens(), k));
            let inner = np.symbol(f, f, &unit_vec(np.left.level(f).ngens(), j), &z);
            let x = unit_vec(m_np.left.level(f).ngens(), i);
            rows.push(m_np.symbol(d, f, &x, &inner));
        }
        comps.insert(d, IntMatrix::from_rows(size, rows));
    }
    MackeyMap::new(mn_p.functor.clone(), m_np.functor.clone(), &comps)
}

/// `burnside(N) □ M` together with its unit isomorphism.
pub fn left_unit(m: &MackeyFunctor) -> Result<(BoxProduct, MackeyMap)> {
    let bx = box_product(&burnside(m.n()), m)?;
    let iso = box_unit_iso(&bx)?;
    Ok((bx, iso))
}
