//! Mackey functors for cyclic groups `C_N`.
//!
//! Subgroups are named by their order, so levels are indexed by the divisors
//! of `N`. Structure maps are supplied on covering pairs `e | d` with `d / e`
//! prime; restrictions and transfers between other pairs are composed along
//! a fixed chain and the axiom check confirms every chain agrees. The Weyl
//! action is stored as the action of one global generator `g` of `C_N`.

mod box_product;
mod standard;

pub use box_product::{associator, box_product, box_unit_iso, left_unit, symmetry, BoxProduct};
pub use standard::{burnside, constant_mackey, fixed_point_mackey, fixed_point_parts, FixedPointParts};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::abelian::{AbHom, FgAbGroup};
use crate::arith::{divisors, gcd, is_cover, lcm, prime_factors};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug)]
struct Inner {
    n: u64,
    divisors: Vec<u64>,
    levels: BTreeMap<u64, FgAbGroup>,
    /// `(e, d) ↦ res^d_e`, level `d` to level `e`.
    res: BTreeMap<(u64, u64), AbHom>,
    /// `(e, d) ↦ tr^d_e`, level `e` to level `d`.
    tr: BTreeMap<(u64, u64), AbHom>,
    weyl: BTreeMap<u64, AbHom>,
}

/// Cheap to clone; the data is shared and immutable.
#[derive(Clone, Debug)]
pub struct MackeyFunctor(Arc<Inner>);

/// Covering pairs `(e, d)` with `d / e` prime, ordered by `d` then `e`.
pub fn covering_pairs(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d in divisors(n) {
        for l in prime_factors(d) {
            out.push((d / l, d));
        }
    }
    out.sort_by_key(|&(e, d)| (d, e));
    out
}

/// All pairs `(e, d)` with `e | d | n`.
pub fn divisor_pairs(n: u64) -> Vec<(u64, u64)> {
    let divs = divisors(n);
    let mut out = Vec::new();
    for &d in &divs {
        for &e in &divs {
            if d % e == 0 {
                out.push((e, d));
            }
        }
    }
    out
}

fn violation(msg: alloc::string::String) -> Error {
    Error::AxiomViolation(msg)
}

impl MackeyFunctor {
    /// Builds a functor from levels and covering-pair matrices. Every matrix
    /// must define a homomorphism; the Mackey axioms themselves are checked
    /// separately by [`MackeyFunctor::check_axioms`].
    pub fn new(
        n: u64,
        levels: BTreeMap<u64, FgAbGroup>,
        res: &BTreeMap<(u64, u64), IntMatrix>,
        tr: &BTreeMap<(u64, u64), IntMatrix>,
        weyl: &BTreeMap<u64, IntMatrix>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("group order must be positive".into()));
        }
        let divs = divisors(n);
        if levels.keys().copied().collect::<Vec<_>>() != divs {
            return Err(Error::MalformedData(format!("levels must be indexed by the divisors of {n}")));
        }
        let cover = covering_pairs(n);
        for (name, m) in [("res", res), ("tr", tr)] {
            if let Some(k) = m.keys().find(|k| !cover.contains(k)) {
                return Err(Error::MalformedData(format!("{name} given for non-covering pair {k:?}")));
            }
        }
        let mut res_h = BTreeMap::new();
        let mut tr_h = BTreeMap::new();
        for &(e, d) in &cover {
            let rm = res.get(&(e, d)).ok_or_else(|| Error::MalformedData(format!("missing res {e}<-{d}")))?;
            let tm = tr.get(&(e, d)).ok_or_else(|| Error::MalformedData(format!("missing tr {e}->{d}")))?;
            res_h.insert((e, d), AbHom::new(levels[&d].clone(), levels[&e].clone(), rm.clone())?);
            tr_h.insert((e, d), AbHom::new(levels[&e].clone(), levels[&d].clone(), tm.clone())?);
        }
        let mut weyl_h = BTreeMap::new();
        for &d in &divs {
            let g = &levels[&d];
            let w = match weyl.get(&d) {
                Some(m) => AbHom::new(g.clone(), g.clone(), m.clone())?,
                None => return Err(Error::MalformedData(format!("missing weyl at level {d}"))),
            };
            weyl_h.insert(d, w);
        }
        Ok(Self::assemble(n, levels, res_h, tr_h, weyl_h))
    }

    /// Builds from covering-pair homomorphisms known to be well defined.
    pub(crate) fn assemble(
        n: u64,
        levels: BTreeMap<u64, FgAbGroup>,
        mut res: BTreeMap<(u64, u64), AbHom>,
        mut tr: BTreeMap<(u64, u64), AbHom>,
        weyl: BTreeMap<u64, AbHom>,
    ) -> Self {
        let divs = divisors(n);
        for &d in &divs {
            res.insert((d, d), AbHom::identity(&levels[&d]));
            tr.insert((d, d), AbHom::identity(&levels[&d]));
        }
        let mut pairs: Vec<(u64, u64)> = divisor_pairs(n).into_iter().filter(|&(e, d)| e != d && !is_cover(e, d)).collect();
        pairs.sort_by_key(|&(e, d)| (d / e, d));
        for (e, d) in pairs {
            let l = prime_factors(d / e)[0];
            let mid = d / l;
            let r = res[&(mid, d)].then(&res[&(e, mid)]);
            let t = tr[&(e, mid)].then(&tr[&(mid, d)]);
            res.insert((e, d), r);
            tr.insert((e, d), t);
        }
        MackeyFunctor(Arc::new(Inner { n, divisors: divs, levels, res, tr, weyl }))
    }

    /// The functor with every level zero.
    pub fn zero(n: u64) -> Self {
        let divs = divisors(n);
        let levels: BTreeMap<u64, FgAbGroup> = divs.iter().map(|&d| (d, FgAbGroup::trivial())).collect();
        let z = FgAbGroup::trivial();
        let res = covering_pairs(n).into_iter().map(|k| (k, AbHom::zero(&z, &z))).collect();
        let tr = covering_pairs(n).into_iter().map(|k| (k, AbHom::zero(&z, &z))).collect();
        let weyl = divs.iter().map(|&d| (d, AbHom::zero(&z, &z))).collect();
        Self::assemble(n, levels, res, tr, weyl)
    }

    pub fn n(&self) -> u64 {
        self.0.n
    }

    pub fn divisors(&self) -> &[u64] {
        &self.0.divisors
    }

    pub fn level(&self, d: u64) -> &FgAbGroup {
        &self.0.levels[&d]
    }

    pub fn levels(&self) -> &BTreeMap<u64, FgAbGroup> {
        &self.0.levels
    }

    /// `res^d_e`: level `d` → level `e`, for `e | d`.
    pub fn res(&self, d: u64, e: u64) -> &AbHom {
        &self.0.res[&(e, d)]
    }

    /// `tr^d_e`: level `e` → level `d`, for `e | d`.
    pub fn tr(&self, e: u64, d: u64) -> &AbHom {
        &self.0.tr[&(e, d)]
    }

    /// Action of the chosen generator of `C_N` on level `d`.
    pub fn weyl(&self, d: u64) -> &AbHom {
        &self.0.weyl[&d]
    }

    pub fn weyl_pow(&self, d: u64, j: u64) -> AbHom {
        self.weyl(d).pow(j % (self.n() / d))
    }

    pub fn has_level(&self, d: u64) -> bool {
        self.0.levels.contains_key(&d)
    }

    fn check_divides(&self, m: u64) -> Result<()> {
        if m == 0 || self.n() % m != 0 {
            return Err(Error::NotASubgroup { sub: m, order: self.n() });
        }
        Ok(())
    }

    /// Transitivity along every chain, `weyl^{N/d} = 1`, Weyl equivariance of
    /// res and tr, and the double coset formula for every pair of subgroups
    /// of every level.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n();
        let divs = self.divisors().to_vec();
        for &(e, d) in &divisor_pairs(n) {
            for &f in &divs {
                if e % f == 0 && f != e && e != d {
                    if !self.res(d, e).then(self.res(e, f)).equals(self.res(d, f)) {
                        return Err(violation(format!("res {f}<-{e}<-{d} differs from res {f}<-{d}")));
                    }
                    if !self.tr(f, e).then(self.tr(e, d)).equals(self.tr(f, d)) {
                        return Err(violation(format!("tr {f}->{e}->{d} differs from tr {f}->{d}")));
                    }
                }
            }
        }
        for &d in &divs {
            let w = self.weyl(d).pow(n / d);
            if !w.equals(&AbHom::identity(self.level(d))) {
                return Err(violation(format!("weyl at level {d} does not have order dividing {}", n / d)));
            }
        }
        for (e, d) in covering_pairs(n) {
            if !self.weyl(d).then(self.res(d, e)).equals(&self.res(d, e).then(self.weyl(e))) {
                return Err(violation(format!("res {e}<-{d} does not commute with weyl")));
            }
            if !self.weyl(e).then(self.tr(e, d)).equals(&self.tr(e, d).then(self.weyl(d))) {
                return Err(violation(format!("tr {e}->{d} does not commute with weyl")));
            }
        }
        for &d in &divs {
            for &a in &divs {
                for &b in &divs {
                    if d % a != 0 || d % b != 0 {
                        continue;
                    }
                    let lhs = self.tr(b, d).then(self.res(d, a));
                    if !lhs.equals(&self.double_coset_sum(d, a, b)) {
                        return Err(violation(format!("double coset formula fails for res {a}<-{d} tr {b}->{d}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_{j < d/lcm(a,b)} tr^a_g ∘ weyl_g^{jN/d} ∘ res^b_g` with `g = gcd(a, b)`.
    pub fn double_coset_sum(&self, d: u64, a: u64, b: u64) -> AbHom {
        let g = gcd(a, b);
        let mut acc = AbHom::zero(self.level(b), self.level(a));
        for j in 0..d / lcm(a, b) {
            let term = self.res(b, g).then(&self.weyl_pow(g, j * (self.n() / d))).then(self.tr(g, a));
            acc = acc.add(&term);
        }
        acc
    }

    /// The restriction to `C_h`: same levels for `d | h`, Weyl generator
    /// `g^{N/h}`.
    pub fn restrict_to_subgroup(&self, h: u64) -> Result<Self> {
        self.check_divides(h)?;
        let divs = divisors(h);
        let levels = divs.iter().map(|&d| (d, self.level(d).clone())).collect();
        let res = covering_pairs(h).into_iter().map(|(e, d)| ((e, d), self.res(d, e).clone())).collect();
        let tr = covering_pairs(h).into_iter().map(|(e, d)| ((e, d), self.tr(e, d).clone())).collect();
        let weyl = divs.iter().map(|&d| (d, self.weyl_pow(d, self.n() / h))).collect();
        Ok(Self::assemble(h, levels, res, tr, weyl))
    }

    /// `ζ` for the normal subgroup `C_m`: the `C_{N/m}`-functor with level
    /// `d` equal to level `d·m` of `self`.
    pub fn zeta(&self, m: u64) -> Result<Self> {
        self.check_divides(m)?;
        let n2 = self.n() / m;
        let divs = divisors(n2);
        let levels = divs.iter().map(|&d| (d, self.level(d * m).clone())).collect();
        let res = covering_pairs(n2).into_iter().map(|(e, d)| ((e, d), self.res(d * m, e * m).clone())).collect();
        let tr = covering_pairs(n2).into_iter().map(|(e, d)| ((e, d), self.tr(e * m, d * m).clone())).collect();
        let weyl = divs.iter().map(|&d| (d, self.weyl(d * m).clone())).collect();
        Ok(Self::assemble(n2, levels, res, tr, weyl))
    }

    /// Quotient by the sub-Mackey functor generated by the given elements
    /// (rows of `gens[e]` lie in level `e`). Generators are kept, so the
    /// projection has identity matrices.
    pub fn quotient(&self, gens: &BTreeMap<u64, IntMatrix>) -> Result<(Self, MackeyMap)> {
        let n = self.n();
        let mut sub: BTreeMap<u64, IntMatrix> =
            self.divisors().iter().map(|&d| (d, IntMatrix::zeros(0, self.level(d).ngens()))).collect();
        // every composite of res, tr and weyl from e to d is a sum of
        // tr^d_f ∘ weyl_f^j ∘ res^e_f with f | gcd(d, e)
        for (&e, rows) in gens {
            if rows.rows() == 0 {
                continue;
            }
            for &d in self.divisors() {
                let mut acc = sub[&d].clone();
                for &f in self.divisors() {
                    if gcd(d, e) % f != 0 {
                        continue;
                    }
                    let down = self.res(e, f);
                    let up = self.tr(f, d);
                    for j in 0..n / f {
                        let m = down.then(&self.weyl_pow(f, j)).then(up);
                        acc = acc.vstack(&rows.mul(&m.matrix));
                    }
                }
                sub.insert(d, acc);
            }
        }
        let mut levels = BTreeMap::new();
        for &d in self.divisors() {
            let g = self.level(d);
            levels.insert(d, g.quotient(&sub[&d]).0);
        }
        let rebase = |h: &AbHom, s: u64, t: u64| AbHom::new(levels[&s].clone(), levels[&t].clone(), h.matrix.clone());
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for (e, d) in covering_pairs(n) {
            res.insert((e, d), rebase(self.res(d, e), d, e)?);
            tr.insert((e, d), rebase(self.tr(e, d), e, d)?);
        }
        let mut weyl = BTreeMap::new();
        for &d in self.divisors() {
            weyl.insert(d, rebase(self.weyl(d), d, d)?);
        }
        let q = Self::assemble(n, levels.clone(), res, tr, weyl);
        let comps = self
            .divisors()
            .iter()
            .map(|&d| (d, AbHom::new_unchecked(self.level(d).clone(), levels[&d].clone(), IntMatrix::identity(self.level(d).ngens()))))
            .collect();
        let proj = MackeyMap::from_homs_unchecked(self.clone(), q.clone(), comps);
        Ok((q, proj))
    }

    /// Geometric fixed points for `C_m`: level `d` is level `d·m` modulo the
    /// transfers from every `C_e` with `m ∤ e`. Returns the functor over
    /// `C_{N/m}` and the projection from `ζ(self, m)`.
    pub fn geometric_fixed_points(&self, m: u64) -> Result<(Self, MackeyMap)> {
        self.check_divides(m)?;
        let gens: BTreeMap<u64, IntMatrix> = self
            .divisors()
            .iter()
            .filter(|&&e| e % m != 0)
            .map(|&e| (e, IntMatrix::identity(self.level(e).ngens())))
            .collect();
        let (q, _) = self.quotient(&gens)?;
        let phi = q.zeta(m)?;
        let z = self.zeta(m)?;
        let comps = z
            .divisors()
            .iter()
            .map(|&d| (d, AbHom::new_unchecked(z.level(d).clone(), phi.level(d).clone(), IntMatrix::identity(z.level(d).ngens()))))
            .collect();
        let proj = MackeyMap::from_homs_unchecked(z, phi.clone(), comps);
        Ok((phi, proj))
    }

    /// Level `d` modulo `x − g·x`.
    pub fn weyl_coinvariants(&self, d: u64) -> Result<(FgAbGroup, AbHom)> {
        self.check_divides(d)?;
        self.level(d).quotient_by_endomorphism_family(core::slice::from_ref(self.weyl(d)))
    }

    /// Levelwise Weyl coinvariants, as a quotient functor.
    pub fn coinvariants(&self) -> Result<(Self, MackeyMap)> {
        let gens = self
            .divisors()
            .iter()
            .map(|&d| (d, IntMatrix::identity(self.level(d).ngens()).sub(&self.weyl(d).matrix)))
            .collect();
        self.quotient(&gens)
    }

    /// Transports the structure along levelwise isomorphisms `to[d]` (with
    /// inverses `from[d]`).
    pub fn transport(&self, to: &BTreeMap<u64, AbHom>, from: &BTreeMap<u64, AbHom>) -> Self {
        let n = self.n();
        let levels: BTreeMap<u64, FgAbGroup> = self.divisors().iter().map(|&d| (d, to[&d].target.clone())).collect();
        let res = covering_pairs(n).into_iter().map(|(e, d)| ((e, d), from[&d].then(self.res(d, e)).then(&to[&e]))).collect();
        let tr = covering_pairs(n).into_iter().map(|(e, d)| ((e, d), from[&e].then(self.tr(e, d)).then(&to[&d]))).collect();
        let weyl = self.divisors().iter().map(|&d| (d, from[&d].then(self.weyl(d)).then(&to[&d]))).collect();
        Self::assemble(n, levels, res, tr, weyl)
    }

    /// Isomorphic copy with every level in canonical form `⊕ Z/dᵢ`.
    pub fn simplified(&self) -> (Self, MackeyMap) {
        let mut to = BTreeMap::new();
        let mut from = BTreeMap::new();
        for &d in self.divisors() {
            let (_, t, f) = self.level(d).canonical_form();
            to.insert(d, t);
            from.insert(d, f);
        }
        let s = self.transport(&to, &from);
        let iso = MackeyMap::from_homs_unchecked(self.clone(), s.clone(), to);
        (s, iso)
    }

    /// Invariant factors agree at every level.
    pub fn levels_isomorphic(&self, other: &MackeyFunctor) -> bool {
        self.n() == other.n() && self.divisors().iter().all(|&d| self.level(d).is_isomorphic(other.level(d)))
    }
}

/// A morphism of Mackey functors, one homomorphism per level.
#[derive(Clone, Debug)]
pub struct MackeyMap {
    pub source: MackeyFunctor,
    pub target: MackeyFunctor,
    comps: BTreeMap<u64, AbHom>,
}

impl MackeyMap {
    /// Builds a map from per-level matrices and checks that it commutes with
    /// restriction, transfer and the Weyl action.
    pub fn new(source: MackeyFunctor, target: MackeyFunctor, comps: &BTreeMap<u64, IntMatrix>) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::GroupMismatch(source.n(), target.n()));
        }
        let mut homs = BTreeMap::new();
        for &d in source.divisors() {
            let m = comps.get(&d).ok_or_else(|| Error::MalformedData(format!("missing component at level {d}")))?;
            homs.insert(d, AbHom::new(source.level(d).clone(), target.level(d).clone(), m.clone())?);
        }
        let f = MackeyMap { source, target, comps: homs };
        f.check_natural()?;
        Ok(f)
    }

    /// Builds a map from homomorphisms without checking naturality.
    pub fn from_homs_unchecked(source: MackeyFunctor, target: MackeyFunctor, comps: BTreeMap<u64, AbHom>) -> Self {
        MackeyMap { source, target, comps }
    }

    pub fn identity(m: &MackeyFunctor) -> Self {
        let comps = m.divisors().iter().map(|&d| (d, AbHom::identity(m.level(d)))).collect();
        Self::from_homs_unchecked(m.clone(), m.clone(), comps)
    }

    pub fn component(&self, d: u64) -> &AbHom {
        &self.comps[&d]
    }

    pub fn components(&self) -> &BTreeMap<u64, AbHom> {
        &self.comps
    }

    /// Commutes with res, tr and weyl on every covering pair and level.
    pub fn check_natural(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for (e, d) in covering_pairs(s.n()) {
            if !s.res(d, e).then(self.component(e)).equals(&self.component(d).then(t.res(d, e))) {
                return Err(violation(format!("map does not commute with res {e}<-{d}")));
            }
            if !s.tr(e, d).then(self.component(d)).equals(&self.component(e).then(t.tr(e, d))) {
                return Err(violation(format!("map does not commute with tr {e}->{d}")));
            }
        }
        for &d in s.divisors() {
            if !s.weyl(d).then(self.component(d)).equals(&self.component(d).then(t.weyl(d))) {
                return Err(violation(format!("map does not commute with weyl at level {d}")));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.values().all(AbHom::is_isomorphism)
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.values().all(AbHom::is_surjective)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MackeyMap) -> MackeyMap {
        let comps = self.comps.iter().map(|(&d, h)| (d, h.then(other.component(d)))).collect();
        MackeyMap::from_homs_unchecked(self.source.clone(), other.target.clone(), comps)
    }

    pub fn equals(&self, other: &MackeyMap) -> bool {
        self.comps.iter().all(|(d, h)| h.equals(other.component(*d)))
    }

    /// Levelwise inverse of an isomorphism.
    pub fn inverse(&self) -> Result<MackeyMap> {
        let comps = self.comps.iter().map(|(&d, h)| Ok((d, h.inverse()?))).collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MackeyMap::from_homs_unchecked(self.target.clone(), self.source.clone(), comps))
    }

    /// The same components viewed between `ζ(source, m)` and `ζ(target, m)`.
    pub fn zeta(&self, m: u64) -> Result<MackeyMap> {
        let s = self.source.zeta(m)?;
        let t = self.target.zeta(m)?;
        let comps = s.divisors().iter().map(|&d| (d, self.component(d * m).clone())).collect();
        Ok(MackeyMap::from_homs_unchecked(s, t, comps))
    }

    pub fn restrict_to_subgroup(&self, h: u64) -> Result<MackeyMap> {
        let s = self.source.restrict_to_subgroup(h)?;
        let t = self.target.restrict_to_subgroup(h)?;
        let comps = s.divisors().iter().map(|&d| (d, self.component(d).clone())).collect();
        Ok(MackeyMap::from_homs_unchecked(s, t, comps))
    }
}

/// `[BigInt]` helper used by several constructors.
pub(crate) fn bi(v: u64) -> BigInt {
    BigInt::from(v)
}
