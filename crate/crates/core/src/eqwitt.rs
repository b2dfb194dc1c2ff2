//! Equivariant Witt vectors `W_{C_{p^k n}}(R)` of a `C_n`-Tambara functor,
//! computed as the Weyl coinvariants of the norm `N_{C_n}^{C_{p^k n}} R`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::abelian::AbHom;
use crate::arith::{divisors, is_prime, multiplicative_order, valuation};
use crate::error::{Error, Result};
use crate::green::{norm_functor, GreenFunctor, NormClass, TambaraFunctor};
use crate::mackey::{box_product, MackeyFunctor, MackeyMap};
use crate::matrix::{unit_vec, zero_vec, IntMatrix};

#[derive(Clone, Debug)]
pub struct EquivariantWitt {
    n: u64,
    p: u64,
    k: u32,
    nu: u32,
    base: TambaraFunctor,
    norm: TambaraFunctor,
    green: GreenFunctor,
    q: MackeyMap,
}

/// Both sides of an identity checked pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCheck {
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
    pub holds: bool,
}

/// `r` together with its target `W_{C_{p^{k−ν} n}}(R)`.
#[derive(Clone, Debug)]
pub struct RestrictionR {
    /// From `ζ(W, C_{p^ν})` to `target`.
    pub map: MackeyMap,
    pub target: EquivariantWitt,
}

impl EquivariantWitt {
    pub fn new(r: &TambaraFunctor, p: u64, k: u32) -> Result<Self> {
        let norm = norm_functor(r, p, k)?;
        let n = r.n();
        let nu = multiplicative_order(p, n).ok_or(Error::PrimeDividesN { p, n })?;
        let (green, q) = norm.green().coinvariants()?;
        Ok(EquivariantWitt { n, p, k, nu, base: r.clone(), norm, green, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Multiplicative order of `p` modulo `n`.
    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// Order `p^k n` of the ambient group.
    pub fn group_order(&self) -> u64 {
        self.p.pow(self.k) * self.n
    }

    pub fn base(&self) -> &TambaraFunctor {
        &self.base
    }

    pub fn norm(&self) -> &TambaraFunctor {
        &self.norm
    }

    pub fn green(&self) -> &GreenFunctor {
        &self.green
    }

    pub fn mackey(&self) -> &MackeyFunctor {
        self.green.mackey()
    }

    /// The quotient map from the norm.
    pub fn q(&self) -> &MackeyMap {
        &self.q
    }

    /// `F`: restriction from level `d` to level `d/p`.
    pub fn frobenius(&self, d: u64) -> Result<&AbHom> {
        self.check_level(d)?;
        if d % self.p != 0 {
            return Err(Error::NotASubgroup { sub: d / self.p, order: d });
        }
        Ok(self.mackey().res(d, d / self.p))
    }

    /// `V`: transfer from level `e` to level `e·p`.
    pub fn verschiebung(&self, e: u64) -> Result<&AbHom> {
        self.check_level(e * self.p)?;
        Ok(self.mackey().tr(e, e * self.p))
    }

    fn check_level(&self, d: u64) -> Result<()> {
        let big = self.group_order();
        if d == 0 || big % d != 0 {
            return Err(Error::NotASubgroup { sub: d, order: big });
        }
        Ok(())
    }

    /// The unit of the restriction/norm adjunction at level `m | n`, on
    /// coordinates.
    fn eta(&self, a: &[BigInt], m: u64) -> Result<Vec<BigInt>> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::NotASubgroup { sub: m, order: self.n });
        }
        let src = self.base.green().level(m);
        if a.len() != src.ngens() {
            return Err(Error::DimensionMismatch(format!("element of length {} at level {m}", a.len())));
        }
        match self.base.class() {
            NormClass::Burnside => Ok(src.reduce(a)),
            NormClass::Constant(_) => {
                let z = crate::abelian::FgAbGroup::free(1);
                let one = IntMatrix::from_rows(src.ngens(), alloc::vec![self.base.green().one(m).to_vec()]);
                let t = AbHom::new(z, src.clone(), one)?
                    .preimage(a)
                    .ok_or_else(|| Error::InternalIntegralityFailure("constant level is not generated by 1".into()))?;
                let one_n = self.norm.green().one(m);
                Ok(one_n.iter().map(|c| c * &t[0]).collect())
            }
            other => Err(Error::UnsupportedInput(format!("no lift for class {}", other.tag()))),
        }
    }

    /// `[a]_k`: for `a ∈ R(C_n/C_m)`, the element `q(n^{p^k m}_m η(a))` of
    /// level `p^k m`.
    pub fn multiplicative_lift(&self, a: &[BigInt], m: u64) -> Result<Vec<BigInt>> {
        let x = self.eta(a, m)?;
        let top = self.p.pow(self.k) * m;
        let y = self.norm.internal_norm(&x, m, top)?;
        Ok(self.green.level(top).reduce(&self.q.component(top).apply(&y)))
    }

    /// Lifts of every element of a finite level `m` of the base, in the
    /// enumeration order of its elements.
    pub fn lift_table(&self, m: u64) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
        let elems = self
            .base
            .green()
            .level(m)
            .elements()
            .ok_or_else(|| Error::NotApplicable(format!("level {m} of the base is infinite")))?;
        elems.into_iter().map(|a| Ok((a.clone(), self.multiplicative_lift(&a, m)?))).collect()
    }

    /// `res^{p^k m}_m [a]_k` against `q(η(a))^{p^k}` at level `m`.
    pub fn check_lift_power(&self, a: &[BigInt], m: u64) -> Result<LiftCheck> {
        let top = self.p.pow(self.k) * m;
        let lift = self.multiplicative_lift(a, m)?;
        let lhs = self.green.level(m).reduce(&self.mackey().res(top, m).apply(&lift));
        let base = self.q.component(m).apply(&self.eta(a, m)?);
        let rhs = self.green.level(m).reduce(&self.green.pow(m, &base, self.p.pow(self.k)));
        let holds = self.green.level(m).eq_elem(&lhs, &rhs);
        Ok(LiftCheck { lhs, rhs, holds })
    }

    /// `r^k [a]_k` against `a` (for `n = 1`).
    pub fn check_r_lift_identity(&self, a: &[BigInt]) -> Result<LiftCheck> {
        if self.n != 1 {
            return Err(Error::NotApplicable(format!("r^k [a]_k = a needs n = 1, got n = {}", self.n)));
        }
        let mut x = self.multiplicative_lift(a, 1)?;
        let mut cur = self.clone();
        while cur.k > 0 {
            let r = cur.restriction_r()?;
            let top = cur.group_order() / cur.p;
            x = r.map.component(top).apply(&x);
            cur = r.target;
        }
        let lvl = cur.green.level(1);
        let lhs = lvl.reduce(&x);
        let rhs = lvl.reduce(&cur.q.component(1).apply(&cur.eta(a, 1)?));
        let holds = lvl.eq_elem(&lhs, &rhs);
        Ok(LiftCheck { lhs, rhs, holds })
    }

    /// `r: ζ(W, C_{p^ν}) → W_{C_{p^{k−ν} n}}(R)`, the projection onto the
    /// geometric fixed points followed by their identification with the
    /// shorter Witt vectors.
    pub fn restriction_r(&self) -> Result<RestrictionR> {
        if self.k < self.nu {
            return Err(Error::LengthTooShort(self.k as usize));
        }
        let target = EquivariantWitt::new(&self.base, self.p, self.k - self.nu)?;
        let pn = self.p.pow(self.nu);
        let zeta = self.mackey().zeta(pn)?;
        let mut comps = BTreeMap::new();
        for &d in target.mackey().divisors() {
            let (src, tgt) = (zeta.level(d), target.mackey().level(d));
            let m = match self.base.class() {
                NormClass::Burnside => {
                    let (sd, td) = (divisors(d * pn), divisors(d));
                    let rows = sd
                        .iter()
                        .map(|&e| {
                            let mut v = zero_vec(td.len());
                            if e % pn == 0 {
                                v[td.iter().position(|&f| f == e / pn).expect("divisor")] = BigInt::from(1);
                            }
                            v
                        })
                        .collect();
                    IntMatrix::from_rows(td.len(), rows)
                }
                NormClass::Constant(_) => {
                    let rows = (0..src.ngens())
                        .map(|i| if i < tgt.ngens() { unit_vec(tgt.ngens(), i) } else { zero_vec(tgt.ngens()) })
                        .collect();
                    IntMatrix::from_rows(tgt.ngens(), rows)
                }
                other => return Err(Error::UnsupportedInput(format!("no restriction map for class {}", other.tag()))),
            };
            comps.insert(d, m);
        }
        let map = MackeyMap::new(zeta, target.mackey().clone(), &comps)?;
        // the map must kill exactly the transfers from subgroups not containing C_{p^ν}
        let (_, proj) = self.mackey().geometric_fixed_points(pn)?;
        for &d in target.mackey().divisors() {
            let iota = map.component(d).descend(proj.component(d))?;
            if !iota.is_isomorphism() {
                return Err(Error::InternalIntegralityFailure(format!(
                    "geometric fixed points at level {d} do not match the shorter Witt vectors"
                )));
            }
        }
        Ok(RestrictionR { map, target })
    }

    /// For each level, whether the identity on generators is an isomorphism
    /// between `nerve` and these Witt vectors.
    pub fn compare_levels(&self, other: &MackeyFunctor) -> BTreeMap<u64, bool> {
        self.mackey()
            .divisors()
            .iter()
            .map(|&d| {
                let (a, b) = (self.mackey().level(d), other.level(d));
                let ok = a.ngens() == b.ngens()
                    && AbHom::new(a.clone(), b.clone(), IntMatrix::identity(a.ngens()))
                        .map(|h| h.is_isomorphism())
                        .unwrap_or(false);
                (d, ok)
            })
            .collect()
    }
}

/// `H₀` of the twisted cyclic nerve of the norm: the coequalizer of
/// `μ, μ∘α: N R □ N R → N R`, with `μ[a ⊗ b]_e = tr_e(ab)` and
/// `μα[a ⊗ b]_e = tr_e((g·b)·a)`.
pub fn hh0_via_nerve(r: &TambaraFunctor, p: u64, k: u32) -> Result<GreenFunctor> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let nr = norm_functor(r, p, k)?;
    let g = nr.green();
    let m = g.mackey();
    let bx = box_product(m, m)?;
    let mut rels = BTreeMap::new();
    for &d in m.divisors() {
        let width = m.level(d).ngens();
        let mut rows = Vec::new();
        for (e, i, j) in bx.symbols(d) {
            let ne = m.level(e).ngens();
            let (a, b) = (unit_vec(ne, i), unit_vec(ne, j));
            let mu = m.tr(e, d).apply(&g.mul(e, &a, &b));
            let twisted = m.tr(e, d).apply(&g.mul(e, &m.weyl(e).apply(&b), &a));
            rows.push(mu.iter().zip(&twisted).map(|(x, y)| x - y).collect());
        }
        rels.insert(d, IntMatrix::from_rows(width, rows));
    }
    let (quot, _) = m.quotient(&rels)?;
    g.on_quotient(&quot)
}

/// Valuation helper used when naming levels as `C_{p^q m}`.
pub fn split_level(p: u64, d: u64) -> (u32, u64) {
    let q = valuation(p, d);
    (q, d / p.pow(q))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{burnside_tambara, constant_tambara};
    use crate::matrix::int_vec;

    #[test]
    fn constant_f3_level_three_is_z9() {
        let w = EquivariantWitt::new(&constant_tambara(2, 3), 3, 1).unwrap();
        assert_eq!(w.nu(), 1);
        assert_eq!(w.mackey().level(3).invariant_factors(), &[BigInt::from(9)]);
        assert_eq!(w.mackey().level(1).invariant_factors(), &[BigInt::from(3)]);
        w.green().check_axioms().unwrap();
    }

    #[test]
    fn constant_lifts() {
        let w = EquivariantWitt::new(&constant_tambara(2, 3), 3, 1).unwrap();
        let lvl = w.mackey().level(3);
        for (a, want) in [(0, 0), (1, 1), (-1, -1)] {
            let got = w.multiplicative_lift(&int_vec(&[a]), 1).unwrap();
            assert!(lvl.eq_elem(&got, &int_vec(&[want, 0])), "lift of {a}");
        }
        for a in -3..3 {
            assert!(w.check_lift_power(&int_vec(&[a]), 1).unwrap().holds);
        }
    }

    #[test]
    fn burnside_lift_of_two_point_set() {
        let w = EquivariantWitt::new(&burnside_tambara(1), 3, 1).unwrap();
        assert_eq!(w.multiplicative_lift(&int_vec(&[2]), 1).unwrap(), int_vec(&[2, 2]));
    }

    #[test]
    fn r_of_burnside_basis() {
        let w = EquivariantWitt::new(&burnside_tambara(1), 3, 1).unwrap();
        let r = w.restriction_r().unwrap();
        // level 3 of W is level 1 of the zeta functor; basis [C3/e], [C3/C3]
        let c = r.map.component(1);
        assert_eq!(c.apply(&int_vec(&[0, 1])), int_vec(&[1]));
        assert_eq!(c.apply(&int_vec(&[1, 0])), int_vec(&[0]));
    }

    #[test]
    fn r_lift_identity_n1() {
        let w = EquivariantWitt::new(&constant_tambara(1, 3), 3, 2).unwrap();
        for a in 0..3 {
            assert!(w.check_r_lift_identity(&int_vec(&[a])).unwrap().holds);
        }
        let w = EquivariantWitt::new(&constant_tambara(2, 3), 3, 1).unwrap();
        assert!(matches!(w.check_r_lift_identity(&int_vec(&[1])), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn nerve_matches_coinvariants() {
        let r = constant_tambara(2, 3);
        let w = EquivariantWitt::new(&r, 3, 1).unwrap();
        let h = hh0_via_nerve(&r, 3, 1).unwrap();
        assert!(w.compare_levels(h.mackey()).values().all(|&b| b));
    }
}
