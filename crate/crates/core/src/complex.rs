//! Checkers for equivariant and classical Witt complexes on finite
//! truncations: towers `E[s]` (`0 ≤ s ≤ S`) of graded Green functors in
//! degrees `0..=D` with differential, restriction `r`, unit `λ` and
//! compatibility isomorphisms.
//!
//! Every check runs over generators (all structure maps are additive) except
//! the lift rule, which is evaluated pointwise on the elements of finite base
//! levels and on a fixed sample otherwise. Results come back in a fixed order
//! with concrete witnesses for failures.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{AbHom, FgAbGroup};
use crate::arith::{divisors, gcd, is_prime, multiplicative_order, prime_factors};
use crate::eqwitt::EquivariantWitt;
use crate::error::{Error, Result};
use crate::green::{Bilinear, GreenFunctor, NormClass, TambaraFunctor};
use crate::mackey::{covering_pairs, divisor_pairs, MackeyFunctor, MackeyMap};
use crate::matrix::{unit_vec, vec_add, vec_scale, IntMatrix};
use crate::witt::WittGroup;

/// Elements tried for the lift rule when a base level is infinite.
pub const LIFT_SAMPLE: usize = 9;

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Tower index (for classical data, the ring index `s` of `B_s`).
    pub s: usize,
    pub degree: usize,
    pub level: Option<u64>,
    /// The smaller subgroup for relations between two levels.
    pub sublevel: Option<u64>,
    pub element: Vec<BigInt>,
    /// Second argument of binary relations.
    pub other: Vec<BigInt>,
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
    pub detail: String,
}

impl Witness {
    fn new(detail: impl Into<String>) -> Self {
        Witness {
            s: 0,
            degree: 0,
            level: None,
            sublevel: None,
            element: Vec::new(),
            other: Vec::new(),
            lhs: Vec::new(),
            rhs: Vec::new(),
            detail: detail.into(),
        }
    }

    fn sides(mut self, lhs: Vec<BigInt>, rhs: Vec<BigInt>) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self
    }

    fn elem(mut self, x: &[BigInt]) -> Self {
        self.element = x.to_vec();
        self
    }

    fn other(mut self, y: &[BigInt]) -> Self {
        self.other = y.to_vec();
        self
    }

    fn at(mut self, s: usize, degree: usize, level: u64) -> Self {
        self.s = s;
        self.degree = degree;
        self.level = Some(level);
        self
    }

    fn lvl(mut self, level: u64) -> Self {
        self.level = Some(level);
        self
    }

    fn prefix(mut self, name: &str) -> Self {
        self.detail = format!("{name}: {}", self.detail);
        self
    }

    fn sub(mut self, e: u64) -> Self {
        self.sublevel = Some(e);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Witness),
    Warn(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    fn push(&mut self, axiom: &'static str, w: Option<Witness>) {
        let status = match w {
            Some(w) => Status::Fail(w),
            None => Status::Pass,
        };
        self.results.push(AxiomResult { axiom, status });
    }

    /// No failures (warnings allowed).
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| !matches!(r.status, Status::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &Witness)> {
        self.results.iter().filter_map(|r| match &r.status {
            Status::Fail(w) => Some((r.axiom, w)),
            _ => None,
        })
    }

    pub fn status(&self, axiom: &str) -> Option<&Status> {
        self.results.iter().find(|r| r.axiom == axiom).map(|r| &r.status)
    }
}

// ---------------------------------------------------------------------------
// Graded rings and graded Green functors

/// A graded commutative ring truncated to degrees `0..=D`.
#[derive(Clone, Debug)]
pub struct GradedRing {
    pub degrees: Vec<FgAbGroup>,
    /// `(a, b) ↦` table for `deg a × deg b → deg a+b`, for `a + b ≤ D`.
    pub mul: BTreeMap<(usize, usize), Bilinear>,
    pub one: Vec<BigInt>,
}

impl GradedRing {
    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn mul(&self, a: usize, b: usize, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.degrees[a + b].reduce(&self.mul[&(a, b)].apply(x, y))
    }

    pub fn pow0(&self, x: &[BigInt], e: u64) -> Vec<BigInt> {
        let mut acc = self.one.clone();
        for _ in 0..e {
            acc = self.mul(0, 0, &acc, x);
        }
        acc
    }

    fn gens(&self, q: usize) -> Vec<Vec<BigInt>> {
        let n = self.degrees[q].ngens();
        (0..n).map(|i| unit_vec(n, i)).collect()
    }

    fn validate(&self) -> Result<()> {
        let top = self.top_degree();
        if self.one.len() != self.degrees[0].ngens() {
            return Err(Error::MalformedData("unit has the wrong length".into()));
        }
        for a in 0..=top {
            for b in 0..=top - a {
                let m = self
                    .mul
                    .get(&(a, b))
                    .ok_or_else(|| Error::MalformedData(format!("missing product of degrees {a} and {b}")))?;
                if m.ngens() != self.degrees[a].ngens()
                    || m.right_gens() != self.degrees[b].ngens()
                    || m.width() != self.degrees[a + b].ngens()
                {
                    return Err(Error::MalformedData(format!("product of degrees {a} and {b} has the wrong shape")));
                }
            }
        }
        Ok(())
    }

    /// Well-defined, unital, associative and graded commutative on
    /// generators.
    fn axiom_witness(&self) -> Option<Witness> {
        let top = self.top_degree();
        for a in 0..=top {
            let ga = &self.degrees[a];
            for b in 0..=top - a {
                let gb = &self.degrees[b];
                let gab = &self.degrees[a + b];
                for r in 0..ga.relations().rows() {
                    for y in self.gens(b) {
                        let z = self.mul(a, b, ga.relations().row(r), &y);
                        if !gab.is_zero(&z) {
                            return Some(Witness::new("product is not well defined").elem(ga.relations().row(r)).other(&y).sides(z, gab.zero()).deg(a));
                        }
                    }
                }
                for r in 0..gb.relations().rows() {
                    for x in self.gens(a) {
                        let z = self.mul(a, b, &x, gb.relations().row(r));
                        if !gab.is_zero(&z) {
                            return Some(Witness::new("product is not well defined").elem(&x).other(gb.relations().row(r)).sides(z, gab.zero()).deg(a));
                        }
                    }
                }
            }
        }
        for a in 0..=top {
            for x in self.gens(a) {
                let ux = self.mul(0, a, &self.one, &x);
                if !self.degrees[a].eq_elem(&ux, &x) {
                    return Some(Witness::new("1·x ≠ x").elem(&x).sides(ux, x.clone()).deg(a));
                }
            }
        }
        for a in 0..=top {
            for b in 0..=top - a {
                let sign = if (a * b) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for x in self.gens(a) {
                    for y in self.gens(b) {
                        let xy = self.mul(a, b, &x, &y);
                        let yx = vec_scale(&self.mul(b, a, &y, &x), &sign);
                        if !self.degrees[a + b].eq_elem(&xy, &yx) {
                            return Some(Witness::new("x·y ≠ ±y·x").elem(&x).other(&y).sides(xy, yx).deg(a));
                        }
                        for c in 0..=top - a - b {
                            for z in self.gens(c) {
                                let l = self.mul(a + b, c, &xy, &z);
                                let r = self.mul(a, b + c, &x, &self.mul(b, c, &y, &z));
                                if !self.degrees[a + b + c].eq_elem(&l, &r) {
                                    return Some(Witness::new("(x·y)·z ≠ x·(y·z)").elem(&x).other(&y).sides(l, r).deg(a));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

impl Witness {
    fn deg(mut self, q: usize) -> Self {
        self.degree = q;
        self
    }
}

/// A graded Green functor over `C_N`, truncated to degrees `0..=D`; degree
/// `q` is a Mackey functor and products go levelwise between degrees.
#[derive(Clone, Debug)]
pub struct GradedGreenFunctor {
    degrees: Vec<MackeyFunctor>,
    /// `(a, b, level) ↦` table, for `a + b ≤ D`.
    mul: BTreeMap<(usize, usize, u64), Bilinear>,
    one: BTreeMap<u64, Vec<BigInt>>,
}

impl GradedGreenFunctor {
    pub fn new(
        degrees: Vec<MackeyFunctor>,
        mul: BTreeMap<(usize, usize, u64), Bilinear>,
        one: BTreeMap<u64, Vec<BigInt>>,
    ) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::MalformedData("a graded functor needs degree 0".into()));
        }
        let n = degrees[0].n();
        if degrees.iter().any(|m| m.n() != n) {
            return Err(Error::MalformedData("degrees live over different groups".into()));
        }
        let g = GradedGreenFunctor { degrees, mul, one };
        for &d in g.degrees[0].divisors() {
            if !g.one.contains_key(&d) {
                return Err(Error::MalformedData(format!("missing unit at level {d}")));
            }
            for a in 0..=g.top_degree() {
                for b in 0..=g.top_degree() - a {
                    if !g.mul.contains_key(&(a, b, d)) {
                        return Err(Error::MalformedData(format!("missing product of degrees {a}, {b} at level {d}")));
                    }
                }
            }
            g.ring_at(d).validate()?;
        }
        Ok(g)
    }

    /// `g` in degree 0 and zero functors in degrees `1..=top`.
    pub fn from_green(g: &GreenFunctor, top: usize) -> Self {
        let n = g.n();
        let mut degrees = vec![g.mackey().clone()];
        degrees.extend((0..top).map(|_| MackeyFunctor::zero(n)));
        let mut mul = BTreeMap::new();
        for &d in g.mackey().divisors() {
            for a in 0..=top {
                for b in 0..=top - a {
                    let t = if a == 0 && b == 0 {
                        g.mul_table(d).clone()
                    } else {
                        let (l, r, w) = (degrees[a].level(d).ngens(), degrees[b].level(d).ngens(), degrees[a + b].level(d).ngens());
                        Bilinear::new_rect(l, r, IntMatrix::zeros(l * r, w)).expect("zero table")
                    };
                    mul.insert((a, b, d), t);
                }
            }
        }
        let one = g.mackey().divisors().iter().map(|&d| (d, g.one(d).to_vec())).collect();
        GradedGreenFunctor { degrees, mul, one }
    }

    pub fn n(&self) -> u64 {
        self.degrees[0].n()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, q: usize) -> &MackeyFunctor {
        &self.degrees[q]
    }

    pub fn degrees(&self) -> &[MackeyFunctor] {
        &self.degrees
    }

    pub fn mul_table(&self, a: usize, b: usize, d: u64) -> &Bilinear {
        &self.mul[&(a, b, d)]
    }

    pub fn one(&self, d: u64) -> &[BigInt] {
        &self.one[&d]
    }

    pub fn divisors(&self) -> &[u64] {
        self.degrees[0].divisors()
    }

    /// The graded ring at level `d`.
    pub fn ring_at(&self, d: u64) -> GradedRing {
        let top = self.top_degree();
        let mut mul = BTreeMap::new();
        for a in 0..=top {
            for b in 0..=top - a {
                if let Some(t) = self.mul.get(&(a, b, d)) {
                    mul.insert((a, b), t.clone());
                }
            }
        }
        GradedRing { degrees: self.degrees.iter().map(|m| m.level(d).clone()).collect(), mul, one: self.one[&d].clone() }
    }

    pub fn mul(&self, a: usize, b: usize, d: u64, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.degrees[a + b].level(d).reduce(&self.mul[&(a, b, d)].apply(x, y))
    }

    /// Same data with every degree restricted to `C_h`.
    pub fn restrict_to_subgroup(&self, h: u64) -> Result<Self> {
        let degrees = self.degrees.iter().map(|m| m.restrict_to_subgroup(h)).collect::<Result<Vec<_>>>()?;
        let divs = divisors(h);
        let mul = self.mul.iter().filter(|((_, _, d), _)| divs.contains(d)).map(|(k, v)| (*k, v.clone())).collect();
        let one = self.one.iter().filter(|(d, _)| divs.contains(d)).map(|(k, v)| (*k, v.clone())).collect();
        Ok(GradedGreenFunctor { degrees, mul, one })
    }

    /// Same data viewed through `ζ` for `C_m`.
    pub fn zeta(&self, m: u64) -> Result<Self> {
        let degrees = self.degrees.iter().map(|f| f.zeta(m)).collect::<Result<Vec<_>>>()?;
        let mul = self
            .mul
            .iter()
            .filter(|((_, _, d), _)| d % m == 0)
            .map(|((a, b, d), v)| ((*a, *b, d / m), v.clone()))
            .collect();
        let one = self.one.iter().filter(|(d, _)| *d % m == 0).map(|(d, v)| (d / m, v.clone())).collect();
        Ok(GradedGreenFunctor { degrees, mul, one })
    }

    /// Mackey axioms in each degree.
    fn mackey_witness(&self) -> Option<Witness> {
        for (q, m) in self.degrees.iter().enumerate() {
            if let Err(e) = m.check_axioms() {
                let w = mackey_axiom_witness(m).unwrap_or_else(|| Witness::new(format!("{e}")));
                return Some(w.deg(q));
            }
        }
        None
    }

    /// Ring axioms per level, res multiplicative and unital, Weyl action
    /// multiplicative and unital, Frobenius reciprocity.
    fn green_witness(&self) -> Option<Witness> {
        let top = self.top_degree();
        for &d in self.divisors() {
            if let Some(w) = self.ring_at(d).axiom_witness() {
                return Some(w.lvl(d));
            }
        }
        for &(e, d) in &covering_pairs(self.n()) {
            let h: Vec<AbHom> = self.degrees.iter().map(|m| m.res(d, e).clone()).collect();
            if let Some(w) = ring_map_witness(&self.ring_at(d), &self.ring_at(e), &h) {
                return Some(w.lvl(d).sub(e).prefix("res"));
            }
        }
        for &d in self.divisors() {
            let h: Vec<AbHom> = self.degrees.iter().map(|m| m.weyl(d).clone()).collect();
            let ring = self.ring_at(d);
            if let Some(w) = ring_map_witness(&ring, &ring, &h) {
                return Some(w.lvl(d).prefix("weyl"));
            }
        }
        for &(e, d) in &divisor_pairs(self.n()) {
            if e == d {
                continue;
            }
            for a in 0..=top {
                for b in 0..=top - a {
                    let (res, tr) = (self.degrees[a].res(d, e), self.degrees[b].tr(e, d));
                    let trab = self.degrees[a + b].tr(e, d);
                    for x in gens(self.degrees[a].level(d)) {
                        for y in gens(self.degrees[b].level(e)) {
                            let lhs = self.mul(a, b, d, &x, &tr.apply(&y));
                            let rhs = trab.apply(&self.mul(a, b, e, &res.apply(&x), &y));
                            if !self.degrees[a + b].level(d).eq_elem(&lhs, &rhs) {
                                return Some(
                                    Witness::new("x·tr(y) ≠ tr(res(x)·y)").elem(&x).other(&y).sides(lhs, rhs).at(0, a, d).sub(e),
                                );
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

fn gens(g: &FgAbGroup) -> Vec<Vec<BigInt>> {
    (0..g.ngens()).map(|i| unit_vec(g.ngens(), i)).collect()
}

/// `h` (one homomorphism per degree) is multiplicative and unital.
fn ring_map_witness(src: &GradedRing, tgt: &GradedRing, h: &[AbHom]) -> Option<Witness> {
    let top = src.top_degree().min(tgt.top_degree());
    let one = h[0].apply(&src.one);
    if !tgt.degrees[0].eq_elem(&one, &tgt.one) {
        return Some(Witness::new("1 is not preserved").elem(&src.one).sides(one, tgt.one.clone()));
    }
    for a in 0..=top {
        for b in 0..=top - a {
            for x in src.gens(a) {
                for y in src.gens(b) {
                    let lhs = h[a + b].apply(&src.mul(a, b, &x, &y));
                    let rhs = tgt.mul(a, b, &h[a].apply(&x), &h[b].apply(&y));
                    if !tgt.degrees[a + b].eq_elem(&lhs, &rhs) {
                        return Some(Witness::new("h(x·y) ≠ h(x)·h(y)").elem(&x).other(&y).sides(lhs, rhs).deg(a));
                    }
                }
            }
        }
    }
    None
}

/// Commutation with res, tr and the Weyl action on generators.
fn natural_witness(f: &MackeyMap) -> Option<Witness> {
    let (s, t) = (&f.source, &f.target);
    if s.n() != t.n() {
        return Some(Witness::new(format!("source over C_{} but target over C_{}", s.n(), t.n())));
    }
    for (e, d) in covering_pairs(s.n()) {
        for x in gens(s.level(d)) {
            let lhs = f.component(e).apply(&s.res(d, e).apply(&x));
            let rhs = t.res(d, e).apply(&f.component(d).apply(&x));
            if !t.level(e).eq_elem(&lhs, &rhs) {
                return Some(Witness::new("f∘res ≠ res∘f").elem(&x).sides(lhs, rhs).at(0, 0, d).sub(e));
            }
        }
        for y in gens(s.level(e)) {
            let lhs = f.component(d).apply(&s.tr(e, d).apply(&y));
            let rhs = t.tr(e, d).apply(&f.component(e).apply(&y));
            if !t.level(d).eq_elem(&lhs, &rhs) {
                return Some(Witness::new("f∘tr ≠ tr∘f").elem(&y).sides(lhs, rhs).at(0, 0, d).sub(e));
            }
        }
    }
    for &d in s.divisors() {
        for x in gens(s.level(d)) {
            let lhs = f.component(d).apply(&s.weyl(d).apply(&x));
            let rhs = t.weyl(d).apply(&f.component(d).apply(&x));
            if !t.level(d).eq_elem(&lhs, &rhs) {
                return Some(Witness::new("f∘weyl ≠ weyl∘f").elem(&x).sides(lhs, rhs).at(0, 0, d));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Equivariant data

/// Truncated equivariant Witt complex data over a `C_n`-Tambara functor.
/// `E[s]` lives over `C_{p^s n}`.
#[derive(Clone, Debug)]
pub struct WittComplexData {
    pub p: u64,
    pub base: TambaraFunctor,
    pub tower: Vec<GradedGreenFunctor>,
    /// `d[s][(q, level)]: E[s]_q(level) → E[s]_{q+1}(level)`, for `q < D`.
    pub d: Vec<BTreeMap<(usize, u64), AbHom>>,
    /// `r[s][q]: ζ(E[s]_q, C_{p^ν}) → E[s−ν]_q`, present for `s ≥ ν`.
    pub r: Vec<Option<Vec<MackeyMap>>>,
    /// `λ[s]: W_{C_{p^s n}}(R) → E[s]_0`.
    pub lambda: Vec<MackeyMap>,
    /// `(s, k) ↦` per-degree maps `i*_{C_{p^k n}} E[s]_q → E[k]_q`, `k < s`.
    pub compat: BTreeMap<(usize, usize), Vec<MackeyMap>>,
}

impl WittComplexData {
    pub fn n(&self) -> u64 {
        self.base.n()
    }

    pub fn max_s(&self) -> usize {
        self.tower.len() - 1
    }

    pub fn top_degree(&self) -> usize {
        self.tower[0].top_degree()
    }

    pub fn nu(&self) -> u32 {
        multiplicative_order(self.p, self.n()).unwrap_or(0)
    }

    fn order(&self, s: usize) -> u64 {
        self.p.pow(s as u32) * self.n()
    }

    pub fn validate(&self) -> Result<()> {
        let (p, n) = (self.p, self.n());
        if p == 2 {
            return Err(Error::EvenPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if gcd(p, n) != 1 {
            return Err(Error::PrimeDividesN { p, n });
        }
        let s_max = self.tower.len().checked_sub(1).ok_or_else(|| Error::MalformedData("empty tower".into()))?;
        let top = self.top_degree();
        let nu = self.nu() as usize;
        if self.d.len() != s_max + 1 || self.r.len() != s_max + 1 || self.lambda.len() != s_max + 1 {
            return Err(Error::MalformedData("d, r and lambda need one entry per tower index".into()));
        }
        for (s, e) in self.tower.iter().enumerate() {
            if e.n() != self.order(s) {
                return Err(Error::MalformedData(format!("E[{s}] lives over C_{}, expected C_{}", e.n(), self.order(s))));
            }
            if e.top_degree() != top {
                return Err(Error::MalformedData(format!("E[{s}] has top degree {}, expected {top}", e.top_degree())));
            }
            for q in 0..top {
                for &lvl in e.divisors() {
                    let h = self.d[s]
                        .get(&(q, lvl))
                        .ok_or_else(|| Error::MalformedData(format!("missing d at s={s}, degree {q}, level {lvl}")))?;
                    if h.source.ngens() != e.degree(q).level(lvl).ngens() || h.target.ngens() != e.degree(q + 1).level(lvl).ngens() {
                        return Err(Error::MalformedData(format!("d at s={s}, degree {q}, level {lvl} has the wrong shape")));
                    }
                }
            }
            match (&self.r[s], s >= nu) {
                (Some(maps), true) if maps.len() == top + 1 => {}
                (None, false) => {}
                _ => return Err(Error::MalformedData(format!("r at s={s} must be present exactly when s ≥ ν = {nu}, in every degree"))),
            }
            if self.lambda[s].target.n() != self.order(s) {
                return Err(Error::MalformedData(format!("lambda at s={s} has the wrong target")));
            }
            for k in 0..s {
                let c = self.compat.get(&(s, k)).ok_or_else(|| Error::MalformedData(format!("missing compatibility ({s}, {k})")))?;
                if c.len() != top + 1 {
                    return Err(Error::MalformedData(format!("compatibility ({s}, {k}) needs every degree")));
                }
            }
        }
        Ok(())
    }
}

/// Sample elements of level `m` of the base: everything when finite.
fn base_elements(base: &TambaraFunctor, m: u64) -> Vec<Vec<BigInt>> {
    let g = base.green().level(m);
    g.elements().unwrap_or_else(|| g.sample_elements(LIFT_SAMPLE))
}

/// `Z_(p)`-algebra check on the base: fails for finite levels whose order
/// has a prime factor other than `p`; infinite levels produce a warning.
fn p_locality(groups: &[(u64, &FgAbGroup)], p: u64) -> Result<Status> {
    let mut infinite = Vec::new();
    for &(m, g) in groups {
        match g.order() {
            Some(o) => {
                let o = u64::try_from(&o).map_err(|_| Error::UnsupportedInput("level order too large".into()))?;
                if let Some(&l) = prime_factors(o).iter().find(|&&l| l != p) {
                    return Err(Error::NotPLocal(l));
                }
            }
            None => infinite.push(m),
        }
    }
    if infinite.is_empty() {
        Ok(Status::Pass)
    } else {
        Ok(Status::Warn(format!("levels {infinite:?} are infinite; invertibility of primes other than {p} is not certified")))
    }
}

/// Runs every check, in definition order.
pub fn check_equivariant(data: &WittComplexData) -> Result<AxiomReport> {
    data.validate()?;
    let (p, n) = (data.p, data.n());
    let nu = data.nu() as usize;
    let top = data.top_degree();
    let witt: Vec<EquivariantWitt> =
        (0..=data.max_s()).map(|s| EquivariantWitt::new(&data.base, p, s as u32)).collect::<Result<_>>()?;
    let mut report = AxiomReport::default();

    let base_levels: Vec<(u64, &FgAbGroup)> = divisors(n).into_iter().map(|m| (m, data.base.green().level(m))).collect();
    report.results.push(AxiomResult { axiom: "p-local base", status: p_locality(&base_levels, p)? });

    report.push("mackey", first(data.tower.iter().enumerate(), |(s, e)| e.mackey_witness().map(|w| w.with_s(s))));
    report.push("green", first(data.tower.iter().enumerate(), |(s, e)| e.green_witness().map(|w| w.with_s(s))));

    // compatibility isomorphisms
    report.push(
        "compatibility",
        first(data.compat.iter(), |(&(s, k), maps)| {
            let src = data.tower[s].restrict_to_subgroup(data.order(k)).ok()?;
            let tgt = &data.tower[k];
            for (q, f) in maps.iter().enumerate() {
                if let Some(w) = natural_witness(f) {
                    return Some(w.with_s(s).deg(q));
                }
                for &lvl in tgt.divisors() {
                    if !f.component(lvl).is_isomorphism() {
                        return Some(Witness::new(format!("not an isomorphism onto E[{k}]")).at(s, q, lvl));
                    }
                }
            }
            for &lvl in tgt.divisors() {
                let h: Vec<AbHom> = maps.iter().map(|f| f.component(lvl).clone()).collect();
                if let Some(w) = ring_map_witness(&src.ring_at(lvl), &tgt.ring_at(lvl), &h) {
                    return Some(Witness { level: Some(lvl), s, ..w });
                }
                for q in 0..top {
                    for x in gens(src.degree(q).level(lvl)) {
                        let lhs = h[q + 1].apply(&data.d[s][&(q, lvl)].apply(&x));
                        let rhs = data.d[k][&(q, lvl)].apply(&h[q].apply(&x));
                        if !tgt.degree(q + 1).level(lvl).eq_elem(&lhs, &rhs) {
                            return Some(Witness::new("compatibility does not preserve d").elem(&x).sides(lhs, rhs).at(s, q, lvl));
                        }
                    }
                }
            }
            None
        }),
    );

    // differential graded ring at every level
    report.push(
        "differential",
        first(data.tower.iter().enumerate(), |(s, e)| {
            for &lvl in e.divisors() {
                let ring = e.ring_at(lvl);
                let d = |q: usize, x: &[BigInt]| data.d[s][&(q, lvl)].apply(x);
                for q in 0..top.saturating_sub(1) {
                    for x in ring.gens(q) {
                        let dd = d(q + 1, &d(q, &x));
                        if !ring.degrees[q + 2].is_zero(&dd) {
                            return Some(Witness::new("d∘d ≠ 0").elem(&x).sides(dd, ring.degrees[q + 2].zero()).at(s, q, lvl));
                        }
                    }
                }
                if let Some(w) = leibniz_witness(&ring, &d) {
                    return Some(Witness { s, level: Some(lvl), ..w });
                }
            }
            None
        }),
    );

    // r and lambda are maps of Green functors
    report.push(
        "r is a map of Green functors",
        first(data.r.iter().enumerate(), |(s, r)| {
            let maps = r.as_ref()?;
            let src = data.tower[s].zeta(p.pow(nu as u32)).ok()?;
            let tgt = &data.tower[s - nu];
            for (q, f) in maps.iter().enumerate() {
                if let Some(w) = natural_witness(f) {
                    return Some(w.with_s(s).deg(q));
                }
            }
            for &lvl in tgt.divisors() {
                let h: Vec<AbHom> = maps.iter().map(|f| f.component(lvl).clone()).collect();
                if let Some(w) = ring_map_witness(&src.ring_at(lvl), &tgt.ring_at(lvl), &h) {
                    return Some(Witness { s, level: Some(lvl), ..w });
                }
            }
            None
        }),
    );
    report.push(
        "lambda is a map of Green functors",
        first(data.lambda.iter().enumerate(), |(s, f)| {
            if let Some(w) = natural_witness(f) {
                return Some(w.with_s(s));
            }
            for &lvl in data.tower[s].divisors() {
                let g = witt[s].green();
                let e = &data.tower[s];
                let h = f.component(lvl);
                let one = h.apply(g.one(lvl));
                if !e.degree(0).level(lvl).eq_elem(&one, e.one(lvl)) {
                    return Some(Witness::new("λ(1) ≠ 1").sides(one, e.one(lvl).to_vec()).at(s, 0, lvl));
                }
                for x in gens(g.level(lvl)) {
                    for y in gens(g.level(lvl)) {
                        let lhs = h.apply(&g.mul(lvl, &x, &y));
                        let rhs = e.mul(0, 0, lvl, &h.apply(&x), &h.apply(&y));
                        if !e.degree(0).level(lvl).eq_elem(&lhs, &rhs) {
                            return Some(Witness::new("λ(x·y) ≠ λ(x)·λ(y)").elem(&x).other(&y).sides(lhs, rhs).at(s, 0, lvl));
                        }
                    }
                }
            }
            None
        }),
    );

    // (i)
    let pn = p.pow(nu as u32);
    let mut r_witt: BTreeMap<usize, MackeyMap> = BTreeMap::new();
    for s in nu..=data.max_s() {
        r_witt.insert(s, witt[s].restriction_r()?.map);
    }
    report.push(
        "(i) λr = rλ",
        first(nu..=data.max_s(), |s| {
            let r_e = &data.r[s].as_ref()?[0];
            for &lvl in data.tower[s - nu].divisors() {
                for w in gens(witt[s].mackey().level(lvl * pn)) {
                    let lhs = r_e.component(lvl).apply(&data.lambda[s].component(lvl * pn).apply(&w));
                    let rhs = data.lambda[s - nu].component(lvl).apply(&r_witt[&s].component(lvl).apply(&w));
                    if !data.tower[s - nu].degree(0).level(lvl).eq_elem(&lhs, &rhs) {
                        return Some(Witness::new("r(λ(w)) ≠ λ(r(w))").elem(&w).sides(lhs, rhs).at(s, 0, lvl));
                    }
                }
            }
            None
        }),
    );
    report.push(
        "(i) dr = rd",
        first(nu..=data.max_s(), |s| {
            let r = data.r[s].as_ref()?;
            for q in 0..top {
                for &lvl in data.tower[s - nu].divisors() {
                    for x in gens(data.tower[s].degree(q).level(lvl * pn)) {
                        let lhs = data.d[s - nu][&(q, lvl)].apply(&r[q].component(lvl).apply(&x));
                        let rhs = r[q + 1].component(lvl).apply(&data.d[s][&(q, lvl * pn)].apply(&x));
                        if !data.tower[s - nu].degree(q + 1).level(lvl).eq_elem(&lhs, &rhs) {
                            return Some(Witness::new("d(r(x)) ≠ r(d(x))").elem(&x).sides(lhs, rhs).at(s, q, lvl));
                        }
                    }
                }
            }
            None
        }),
    );

    // (ii) for every pair H ⊂ L
    report.push(
        "(ii) res d tr = d",
        first(data.tower.iter().enumerate(), |(s, e)| {
            for q in 0..top {
                for (h, l) in proper_pairs(e.n()) {
                    for x in gens(e.degree(q).level(h)) {
                        let t = e.degree(q).tr(h, l).apply(&x);
                        let lhs = e.degree(q + 1).res(l, h).apply(&data.d[s][&(q, l)].apply(&t));
                        let rhs = data.d[s][&(q, h)].apply(&x);
                        if !e.degree(q + 1).level(h).eq_elem(&lhs, &rhs) {
                            return Some(Witness::new("res(d(tr(x))) ≠ d(x)").elem(&x).sides(lhs, rhs).at(s, q, l).sub(h));
                        }
                    }
                }
            }
            None
        }),
    );
    report.push(
        "(ii) res tr = [L:H]",
        first(data.tower.iter().enumerate(), |(s, e)| {
            for q in 0..=top {
                for (h, l) in proper_pairs(e.n()) {
                    let f = e.degree(q);
                    for x in gens(f.level(h)) {
                        let lhs = f.res(l, h).apply(&f.tr(h, l).apply(&x));
                        let rhs = vec_scale(&x, &BigInt::from(l / h));
                        if !f.level(h).eq_elem(&lhs, &rhs) {
                            return Some(Witness::new("res(tr(x)) ≠ [L:H]·x").elem(&x).sides(lhs, rhs).at(s, q, l).sub(h));
                        }
                    }
                }
            }
            None
        }),
    );

    // (iii)
    let mut lift_rule = None;
    if top >= 1 {
        'outer: for k in 1..=data.max_s() {
            let compat = &data.compat[&(k, k - 1)];
            for m in divisors(n) {
                let (hi, lo) = (p.pow(k as u32) * m, p.pow(k as u32 - 1) * m);
                for x in base_elements(&data.base, m) {
                    let lk = witt[k].multiplicative_lift(&x, m)?;
                    let lk1 = witt[k - 1].multiplicative_lift(&x, m)?;
                    let dl = data.d[k][&(0, hi)].apply(&data.lambda[k].component(hi).apply(&lk));
                    let f = data.tower[k].degree(1).res(hi, lo).apply(&dl);
                    let lhs = compat[1].component(lo).apply(&f);
                    let l1 = data.lambda[k - 1].component(lo).apply(&lk1);
                    let power = data.tower[k - 1].ring_at(lo).pow0(&l1, p - 1);
                    let rhs = data.tower[k - 1].mul(0, 1, lo, &power, &data.d[k - 1][&(0, lo)].apply(&l1));
                    if !data.tower[k - 1].degree(1).level(lo).eq_elem(&lhs, &rhs) {
                        lift_rule = Some(Witness::new(format!("i*Fdλ([x]_{k}) ≠ λ([x]_{})^(p−1)·dλ([x]_{})", k - 1, k - 1))
                            .elem(&x)
                            .sides(lhs, rhs)
                            .at(k, 1, lo)
                            .sub(m));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.push("(iii) Fdλ([x]_k) = λ([x]_{k-1})^(p-1) dλ([x]_{k-1})", lift_rule);
    Ok(report)
}

impl Witness {
    fn with_s(mut self, s: usize) -> Self {
        self.s = s;
        self
    }
}

fn first<I: IntoIterator>(it: I, mut f: impl FnMut(I::Item) -> Option<Witness>) -> Option<Witness> {
    it.into_iter().find_map(&mut f)
}

/// Pairs `h | l` of divisors of `n` with `h ≠ l`.
fn proper_pairs(n: u64) -> Vec<(u64, u64)> {
    divisor_pairs(n).into_iter().filter(|&(h, l)| h != l).collect()
}

/// `d(xy) = d(x)·y + (−1)^a x·d(y)` on generators, for `a + b < D`.
fn leibniz_witness(ring: &GradedRing, d: &dyn Fn(usize, &[BigInt]) -> Vec<BigInt>) -> Option<Witness> {
    let top = ring.top_degree();
    for a in 0..top {
        for b in 0..top - a {
            let sign = if a % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for x in ring.gens(a) {
                for y in ring.gens(b) {
                    let lhs = d(a + b, &ring.mul(a, b, &x, &y));
                    let rhs = vec_add(&ring.mul(a + 1, b, &d(a, &x), &y), &vec_scale(&ring.mul(a, b + 1, &x, &d(b, &y)), &sign));
                    if !ring.degrees[a + b + 1].eq_elem(&lhs, &rhs) {
                        return Some(Witness::new("d(x·y) ≠ d(x)·y ± x·d(y)").elem(&x).other(&y).sides(lhs, rhs).deg(a));
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Families

/// `E[s] = W_{C_{p^s n}}(R)` in degree 0 and zero in degree 1, with `d = 0`,
/// `r` from the Witt vectors, `λ = id` and identity compatibility maps.
pub fn degree_zero_family(base: &TambaraFunctor, p: u64, max_s: usize) -> Result<WittComplexData> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    let witt: Vec<EquivariantWitt> = (0..=max_s).map(|s| EquivariantWitt::new(base, p, s as u32)).collect::<Result<_>>()?;
    let nu = witt[0].nu() as usize;
    let tower: Vec<GradedGreenFunctor> = witt.iter().map(|w| GradedGreenFunctor::from_green(w.green(), 1)).collect();
    let mut d = Vec::new();
    let mut r = Vec::new();
    let mut lambda = Vec::new();
    let mut compat = BTreeMap::new();
    for (s, e) in tower.iter().enumerate() {
        let mut ds = BTreeMap::new();
        for &lvl in e.divisors() {
            ds.insert((0, lvl), AbHom::zero(e.degree(0).level(lvl), e.degree(1).level(lvl)));
        }
        d.push(ds);
        if s >= nu {
            let r0 = witt[s].restriction_r()?.map;
            let src = e.degree(1).zeta(p.pow(nu as u32))?;
            let tgt = tower[s - nu].degree(1).clone();
            r.push(Some(vec![r0, zero_map(&src, &tgt)]));
        } else {
            r.push(None);
        }
        lambda.push(MackeyMap::identity(witt[s].mackey()));
        for k in 0..s {
            let h = p.pow(k as u32) * base.n();
            let maps = (0..=1)
                .map(|q| identity_map(&e.degree(q).restrict_to_subgroup(h)?, tower[k].degree(q)))
                .collect::<Result<Vec<_>>>()?;
            compat.insert((s, k), maps);
        }
    }
    Ok(WittComplexData { p, base: base.clone(), tower, d, r, lambda, compat })
}

fn zero_map(src: &MackeyFunctor, tgt: &MackeyFunctor) -> MackeyMap {
    let comps = src.divisors().iter().map(|&l| (l, AbHom::zero(src.level(l), tgt.level(l)))).collect();
    MackeyMap::from_homs_unchecked(src.clone(), tgt.clone(), comps)
}

/// Identity matrices between functors with the same generators.
fn identity_map(src: &MackeyFunctor, tgt: &MackeyFunctor) -> Result<MackeyMap> {
    let mut comps = BTreeMap::new();
    for &l in src.divisors() {
        let (a, b) = (src.level(l), tgt.level(l));
        if a.ngens() != b.ngens() {
            return Err(Error::MalformedData(format!("levels {l} have different generators")));
        }
        comps.insert(l, AbHom::new(a.clone(), b.clone(), IntMatrix::identity(a.ngens()))?);
    }
    Ok(MackeyMap::from_homs_unchecked(src.clone(), tgt.clone(), comps))
}

/// Replaces degree 1 by a copy of degree 0 and `d` by the identity, which
/// breaks the Leibniz rule whenever `1 ≠ 0`. Needs `D = 1`.
pub fn inject_leibniz_violation(data: &WittComplexData) -> Result<WittComplexData> {
    if data.top_degree() != 1 {
        return Err(Error::UnsupportedInput("the Leibniz injection needs top degree 1".into()));
    }
    let mut out = data.clone();
    for (s, e) in data.tower.iter().enumerate() {
        let e0 = e.degree(0).clone();
        let mut mul = BTreeMap::new();
        for &lvl in e.divisors() {
            let t = e.mul_table(0, 0, lvl).clone();
            mul.insert((0, 0, lvl), t.clone());
            mul.insert((0, 1, lvl), t.clone());
            mul.insert((1, 0, lvl), t);
        }
        let one = e.divisors().iter().map(|&l| (l, e.one(l).to_vec())).collect();
        out.tower[s] = GradedGreenFunctor::new(vec![e0.clone(), e0.clone()], mul, one)?;
        out.d[s] = e.divisors().iter().map(|&l| ((0, l), AbHom::identity(e0.level(l)))).collect();
    }
    for s in 0..out.tower.len() {
        if let Some(maps) = &data.r[s] {
            let m0 = maps[0].clone();
            out.r[s] = Some(vec![m0.clone(), m0]);
        }
        for k in 0..s {
            let c0 = data.compat[&(s, k)][0].clone();
            out.compat.insert((s, k), vec![c0.clone(), c0]);
        }
    }
    Ok(out)
}

/// Multiplies every transfer of index `p` in every degree by `factor`, so
/// that `FV = factor·p`.
pub fn inject_scaled_transfer(data: &WittComplexData, factor: i64) -> Result<WittComplexData> {
    let mut out = data.clone();
    let c = BigInt::from(factor);
    for (s, e) in data.tower.iter().enumerate() {
        let degrees = e.degrees().iter().map(|m| scale_p_transfers(m, data.p, &c)).collect::<Result<Vec<_>>>()?;
        let mut mul = BTreeMap::new();
        let top = e.top_degree();
        for &lvl in e.divisors() {
            for a in 0..=top {
                for b in 0..=top - a {
                    mul.insert((a, b, lvl), e.mul_table(a, b, lvl).clone());
                }
            }
        }
        let one = e.divisors().iter().map(|&l| (l, e.one(l).to_vec())).collect();
        out.tower[s] = GradedGreenFunctor::new(degrees, mul, one)?;
    }
    // rebuild every map over the new functors, keeping the matrices
    let rebase = |f: &MackeyMap, src: MackeyFunctor, tgt: MackeyFunctor| -> Result<MackeyMap> {
        let mut comps = BTreeMap::new();
        for &l in src.divisors() {
            comps.insert(l, AbHom::new(src.level(l).clone(), tgt.level(l).clone(), f.component(l).matrix.clone())?);
        }
        Ok(MackeyMap::from_homs_unchecked(src, tgt, comps))
    };
    let nu = data.nu();
    for s in 0..out.tower.len() {
        if let Some(maps) = &data.r[s] {
            let t = s - nu as usize;
            let new = maps
                .iter()
                .enumerate()
                .map(|(q, f)| rebase(f, out.tower[s].degree(q).zeta(data.p.pow(nu))?, out.tower[t].degree(q).clone()))
                .collect::<Result<Vec<_>>>()?;
            out.r[s] = Some(new);
        }
        out.lambda[s] = rebase(&data.lambda[s], data.lambda[s].source.clone(), out.tower[s].degree(0).clone())?;
        for k in 0..s {
            let h = data.p.pow(k as u32) * data.n();
            let new = data.compat[&(s, k)]
                .iter()
                .enumerate()
                .map(|(q, f)| rebase(f, out.tower[s].degree(q).restrict_to_subgroup(h)?, out.tower[k].degree(q).clone()))
                .collect::<Result<Vec<_>>>()?;
            out.compat.insert((s, k), new);
        }
    }
    Ok(out)
}

fn scale_p_transfers(m: &MackeyFunctor, p: u64, c: &BigInt) -> Result<MackeyFunctor> {
    let n = m.n();
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (e, d) in covering_pairs(n) {
        res.insert((e, d), m.res(d, e).matrix.clone());
        let t = m.tr(e, d).matrix.clone();
        tr.insert((e, d), if d / e == p { t.scale(c) } else { t });
    }
    let weyl = m.divisors().iter().map(|&d| (d, m.weyl(d).matrix.clone())).collect();
    MackeyFunctor::new(n, m.levels().clone(), &res, &tr, &weyl)
}

// ---------------------------------------------------------------------------
// Classical Witt complexes

/// Truncated classical Witt complex over `A = Z/a` (`a = 0` for `Z`):
/// rings `B_1, …, B_T` with `d`, restriction `R`, `F`, `V` and `λ` from
/// `W_s(A)`. Index `i` of `rings`, `d`, `lambda` holds `B_{i+1}`; index `i`
/// of `restriction`, `frobenius`, `verschiebung` holds the maps between
/// `B_{i+2}` and `B_{i+1}`, per degree.
#[derive(Clone, Debug)]
pub struct ClassicalWittComplex {
    pub p: u64,
    pub modulus: BigInt,
    pub rings: Vec<GradedRing>,
    pub d: Vec<Vec<AbHom>>,
    pub restriction: Vec<Vec<AbHom>>,
    pub frobenius: Vec<Vec<AbHom>>,
    pub verschiebung: Vec<Vec<AbHom>>,
    pub lambda: Vec<AbHom>,
}

impl ClassicalWittComplex {
    /// `W_•(A)` in degree 0 with zero degrees `1..=top` and `d = 0`.
    pub fn witt_vectors(p: u64, modulus: BigInt, len: usize, top: usize) -> Result<Self> {
        let ws: Vec<WittGroup> = (1..=len).map(|s| WittGroup::new(p, s, modulus.clone())).collect::<Result<_>>()?;
        let rings: Vec<GradedRing> = ws
            .iter()
            .map(|w| {
                let mut degrees = vec![w.group().clone()];
                degrees.extend((0..top).map(|_| FgAbGroup::trivial()));
                let mut mul = BTreeMap::new();
                for a in 0..=top {
                    for b in 0..=top - a {
                        let t = if a + b == 0 {
                            Bilinear::new(w.len(), w.mul_table()).expect("square table")
                        } else {
                            let (l, r, wd) = (degrees[a].ngens(), degrees[b].ngens(), degrees[a + b].ngens());
                            Bilinear::new_rect(l, r, IntMatrix::zeros(l * r, wd)).expect("zero table")
                        };
                        mul.insert((a, b), t);
                    }
                }
                GradedRing { degrees, mul, one: w.one() }
            })
            .collect();
        let d = rings.iter().map(|r| (0..top).map(|q| AbHom::zero(&r.degrees[q], &r.degrees[q + 1])).collect()).collect();
        let per_degree = |i: usize, f: AbHom| -> Vec<AbHom> {
            let mut v = vec![f];
            v.extend((1..=top).map(|q| AbHom::zero(&rings[i + 1].degrees[q], &rings[i].degrees[q])));
            v
        };
        let mut restriction = Vec::new();
        let mut frobenius = Vec::new();
        let mut verschiebung = Vec::new();
        for i in 0..len.saturating_sub(1) {
            restriction.push(per_degree(i, ws[i + 1].restriction()?));
            frobenius.push(per_degree(i, ws[i + 1].frobenius()?));
            let mut v = vec![ws[i + 1].verschiebung()?];
            v.extend((1..=top).map(|q| AbHom::zero(&rings[i].degrees[q], &rings[i + 1].degrees[q])));
            verschiebung.push(v);
        }
        let lambda = ws.iter().map(|w| AbHom::identity(w.group())).collect();
        Ok(ClassicalWittComplex { p, modulus, rings, d, restriction, frobenius, verschiebung, lambda })
    }

    pub fn len(&self) -> usize {
        self.rings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }

    pub fn top_degree(&self) -> usize {
        self.rings.first().map_or(0, |r| r.top_degree())
    }

    fn witt(&self, s: usize) -> Result<WittGroup> {
        WittGroup::new(self.p, s, self.modulus.clone())
    }

    fn validate(&self) -> Result<()> {
        if self.p == 2 {
            return Err(Error::EvenPrime(2));
        }
        if !is_prime(self.p) {
            return Err(Error::InvalidParams(format!("{} is not prime", self.p)));
        }
        let t = self.len();
        if t == 0 {
            return Err(Error::MalformedData("no rings".into()));
        }
        let top = self.top_degree();
        if self.d.len() != t || self.lambda.len() != t {
            return Err(Error::MalformedData("d and lambda need one entry per ring".into()));
        }
        for m in [&self.restriction, &self.frobenius, &self.verschiebung] {
            if m.len() != t - 1 || m.iter().any(|v| v.len() != top + 1) {
                return Err(Error::MalformedData("R, F and V need one entry per adjacent pair and degree".into()));
            }
        }
        for (i, r) in self.rings.iter().enumerate() {
            if r.top_degree() != top {
                return Err(Error::MalformedData(format!("ring {} has a different top degree", i + 1)));
            }
            r.validate()?;
            if self.d[i].len() != top {
                return Err(Error::MalformedData(format!("d on ring {} needs every degree below the top", i + 1)));
            }
            if self.lambda[i].source.ngens() != i + 1 {
                return Err(Error::MalformedData(format!("lambda on ring {} must start at W_{}", i + 1, i + 1)));
            }
        }
        Ok(())
    }
}

/// Runs the classical checks, in definition order.
pub fn check_classical(data: &ClassicalWittComplex) -> Result<AxiomReport> {
    data.validate()?;
    let p = data.p;
    let t = data.len();
    let top = data.top_degree();
    let ws: Vec<WittGroup> = (1..=t).map(|s| data.witt(s)).collect::<Result<_>>()?;
    let mut report = AxiomReport::default();
    let base = FgAbGroup::from_factors(core::slice::from_ref(&data.modulus));
    report.results.push(AxiomResult { axiom: "p-local base", status: p_locality(&[(1, &base)], p)? });
    // B_s index helpers: ring i is B_{i+1}; pair i joins B_{i+2} → B_{i+1}
    let ring = |s: usize| &data.rings[s - 1];
    let d = |s: usize, q: usize, x: &[BigInt]| data.d[s - 1][q].apply(x);

    report.push(
        "graded ring",
        first(1..=t, |s| ring(s).axiom_witness().map(|w| w.with_s(s))),
    );
    report.push(
        "differential",
        first(1..=t, |s| {
            let r = ring(s);
            for q in 0..top.saturating_sub(1) {
                for x in r.gens(q) {
                    let dd = d(s, q + 1, &d(s, q, &x));
                    if !r.degrees[q + 2].is_zero(&dd) {
                        return Some(Witness::new("d∘d ≠ 0").elem(&x).sides(dd, r.degrees[q + 2].zero()).with_s(s).deg(q));
                    }
                }
            }
            leibniz_witness(r, &|q, x| d(s, q, x)).map(|w| w.with_s(s))
        }),
    );
    let pair_ring_map = |maps: &Vec<Vec<AbHom>>, name: &str| {
        first(2..=t, |s| {
            ring_map_witness(ring(s), ring(s - 1), &maps[s - 2]).map(|w| w.with_s(s).prefix(name))
        })
    };
    report.push("R is a ring map commuting with d", pair_ring_map(&data.restriction, "R").or_else(|| {
        first(2..=t, |s| commutes_with_d(&data.restriction[s - 2], &data.d[s - 1], &data.d[s - 2], ring(s), ring(s - 1)).map(|w| w.with_s(s)))
    }));
    report.push(
        "lambda is a ring map",
        first(1..=t, |s| {
            let w = &ws[s - 1];
            let r = ring(s);
            let h = &data.lambda[s - 1];
            let one = h.apply(&w.one());
            if !r.degrees[0].eq_elem(&one, &r.one) {
                return Some(Witness::new("λ(1) ≠ 1").sides(one, r.one.clone()).with_s(s));
            }
            for x in gens(w.group()) {
                for y in gens(w.group()) {
                    let lhs = h.apply(&w.mul(&x, &y));
                    let rhs = r.mul(0, 0, &h.apply(&x), &h.apply(&y));
                    if !r.degrees[0].eq_elem(&lhs, &rhs) {
                        return Some(Witness::new("λ(x·y) ≠ λ(x)·λ(y)").elem(&x).other(&y).sides(lhs, rhs).with_s(s));
                    }
                }
            }
            None
        }),
    );
    report.push(
        "λR = Rλ",
        first(2..=t, |s| square_witness(&ws[s - 1].restriction().ok()?, &data.lambda[s - 2], &data.lambda[s - 1], &data.restriction[s - 2][0], &ring(s - 1).degrees[0]).map(|w| w.with_s(s))),
    );
    report.push("F is a ring map", pair_ring_map(&data.frobenius, "F"));
    report.push(
        "FR = RF",
        first(3..=t, |s| {
            for q in 0..=top {
                let (f, r) = (&data.frobenius, &data.restriction);
                let w = square_witness(&f[s - 2][q], &r[s - 3][q], &r[s - 2][q], &f[s - 3][q], &ring(s - 2).degrees[q]);
                if let Some(w) = w {
                    return Some(w.with_s(s).deg(q));
                }
            }
            None
        }),
    );
    report.push(
        "λF = Fλ",
        first(2..=t, |s| square_witness(&ws[s - 1].frobenius().ok()?, &data.lambda[s - 2], &data.lambda[s - 1], &data.frobenius[s - 2][0], &ring(s - 1).degrees[0]).map(|w| w.with_s(s))),
    );
    // Fdλ([a]_k) = λ([a]_{k−1})^{p−1} dλ([a]_{k−1}) for [a]_k ∈ W_{k+1}
    let mut lift_rule = None;
    if top >= 1 {
        let elems = base.elements().unwrap_or_else(|| base.sample_elements(LIFT_SAMPLE));
        'outer: for k in 1..t {
            let (hi, lo) = (k + 1, k);
            for a in &elems {
                let ak = ws[hi - 1].teichmuller(&a[0]);
                let ak1 = ws[lo - 1].teichmuller(&a[0]);
                let lhs = data.frobenius[lo - 1][1].apply(&d(hi, 0, &data.lambda[hi - 1].apply(&ak)));
                let l1 = data.lambda[lo - 1].apply(&ak1);
                let rhs = ring(lo).mul(0, 1, &ring(lo).pow0(&l1, p - 1), &d(lo, 0, &l1));
                if !ring(lo).degrees[1].eq_elem(&lhs, &rhs) {
                    lift_rule = Some(Witness::new(format!("Fdλ([a]_{k}) ≠ λ([a]_{})^(p−1)·dλ([a]_{})", k - 1, k - 1)).elem(a).sides(lhs, rhs).with_s(hi).deg(1));
                    break 'outer;
                }
            }
        }
    }
    report.push("Fdλ([a]_k) = λ([a]_{k-1})^(p-1) dλ([a]_{k-1})", lift_rule);
    report.push(
        "V is a module map",
        first(2..=t, |s| {
            let (hi, lo) = (ring(s), ring(s - 1));
            let (f, v) = (&data.frobenius[s - 2], &data.verschiebung[s - 2]);
            for a in 0..=top {
                for b in 0..=top - a {
                    for x in hi.gens(a) {
                        for y in lo.gens(b) {
                            let lhs = v[a + b].apply(&lo.mul(a, b, &f[a].apply(&x), &y));
                            let rhs = hi.mul(a, b, &x, &v[b].apply(&y));
                            if !hi.degrees[a + b].eq_elem(&lhs, &rhs) {
                                return Some(Witness::new("V(F(x)·y) ≠ x·V(y)").elem(&x).other(&y).sides(lhs, rhs).with_s(s).deg(a));
                            }
                        }
                    }
                }
            }
            None
        }),
    );
    report.push(
        "VR = RV",
        first(3..=t, |s| {
            for q in 0..=top {
                let (v, r) = (&data.verschiebung, &data.restriction);
                // B_{s−1} → B_s → B_{s−1} against B_{s−1} → B_{s−2} → B_{s−1}
                let w = square_witness(&v[s - 2][q], &r[s - 2][q], &r[s - 3][q], &v[s - 3][q], &ring(s - 1).degrees[q]);
                if let Some(w) = w {
                    return Some(w.with_s(s).deg(q));
                }
            }
            None
        }),
    );
    report.push(
        "λV = Vλ",
        first(2..=t, |s| square_witness(&ws[s - 1].verschiebung().ok()?, &data.lambda[s - 1], &data.lambda[s - 2], &data.verschiebung[s - 2][0], &ring(s).degrees[0]).map(|w| w.with_s(s))),
    );
    report.push(
        "FdV = d",
        first(2..=t, |s| {
            for q in 0..top {
                for x in ring(s - 1).gens(q) {
                    let lhs = data.frobenius[s - 2][q + 1].apply(&d(s, q, &data.verschiebung[s - 2][q].apply(&x)));
                    let rhs = d(s - 1, q, &x);
                    if !ring(s - 1).degrees[q + 1].eq_elem(&lhs, &rhs) {
                        return Some(Witness::new("F(d(V(x))) ≠ d(x)").elem(&x).sides(lhs, rhs).with_s(s).deg(q));
                    }
                }
            }
            None
        }),
    );
    report.push(
        "FV = p",
        first(2..=t, |s| {
            for q in 0..=top {
                for x in ring(s - 1).gens(q) {
                    let lhs = data.frobenius[s - 2][q].apply(&data.verschiebung[s - 2][q].apply(&x));
                    let rhs = vec_scale(&x, &BigInt::from(p));
                    if !ring(s - 1).degrees[q].eq_elem(&lhs, &rhs) {
                        return Some(Witness::new("F(V(x)) ≠ p·x").elem(&x).sides(lhs, rhs).with_s(s).deg(q));
                    }
                }
            }
            None
        }),
    );
    Ok(report)
}

/// The first generator on which two maps out of a level disagree.
fn hom_witness(lhs: &AbHom, rhs: &AbHom, detail: String) -> Option<Witness> {
    gens(&lhs.source).into_iter().find_map(|x| {
        let (a, b) = (lhs.apply(&x), rhs.apply(&x));
        (!lhs.target.eq_elem(&a, &b)).then(|| Witness::new(detail.clone()).elem(&x).sides(a, b))
    })
}

/// A concrete element violating one of the identities `check_axioms` tests,
/// searched in the same order.
fn mackey_axiom_witness(m: &MackeyFunctor) -> Option<Witness> {
    let n = m.n();
    for &(e, d) in &divisor_pairs(n) {
        for &f in m.divisors() {
            if e % f == 0 && f != e && e != d {
                let res = hom_witness(&m.res(d, e).then(m.res(e, f)), m.res(d, f), format!("res {f}<-{e}<-{d} ≠ res {f}<-{d}"));
                if let Some(w) = res {
                    return Some(w.lvl(d).sub(f));
                }
                let tr = hom_witness(&m.tr(f, e).then(m.tr(e, d)), m.tr(f, d), format!("tr {f}->{e}->{d} ≠ tr {f}->{d}"));
                if let Some(w) = tr {
                    return Some(w.lvl(d).sub(f));
                }
            }
        }
    }
    for &d in m.divisors() {
        if let Some(w) = hom_witness(&m.weyl(d).pow(n / d), &AbHom::identity(m.level(d)), format!("weyl^{} ≠ 1", n / d)) {
            return Some(w.lvl(d));
        }
    }
    for (e, d) in covering_pairs(n) {
        let w = hom_witness(&m.weyl(d).then(m.res(d, e)), &m.res(d, e).then(m.weyl(e)), format!("res {e}<-{d} does not commute with weyl"));
        if let Some(w) = w {
            return Some(w.lvl(d).sub(e));
        }
        let w = hom_witness(&m.weyl(e).then(m.tr(e, d)), &m.tr(e, d).then(m.weyl(d)), format!("tr {e}->{d} does not commute with weyl"));
        if let Some(w) = w {
            return Some(w.lvl(d).sub(e));
        }
    }
    for &d in m.divisors() {
        for &a in m.divisors() {
            for &b in m.divisors() {
                if d % a != 0 || d % b != 0 {
                    continue;
                }
                let detail = format!("double coset formula for res {a}<-{d} tr {b}->{d}");
                if let Some(w) = hom_witness(&m.tr(b, d).then(m.res(d, a)), &m.double_coset_sum(d, a, b), detail) {
                    return Some(w.lvl(b).sub(a));
                }
            }
        }
    }
    None
}

/// `g∘f` against `k∘h` on generators of the common source (`f`, `h` first).
fn square_witness(f: &AbHom, g: &AbHom, h: &AbHom, k: &AbHom, target: &FgAbGroup) -> Option<Witness> {
    for x in gens(&f.source) {
        let lhs = g.apply(&f.apply(&x));
        let rhs = k.apply(&h.apply(&x));
        if !target.eq_elem(&lhs, &rhs) {
            return Some(Witness::new("square does not commute").elem(&x).sides(lhs, rhs));
        }
    }
    None
}

fn commutes_with_d(h: &[AbHom], d_src: &[AbHom], d_tgt: &[AbHom], src: &GradedRing, tgt: &GradedRing) -> Option<Witness> {
    for q in 0..d_src.len() {
        for x in src.gens(q) {
            let lhs = h[q + 1].apply(&d_src[q].apply(&x));
            let rhs = d_tgt[q].apply(&h[q].apply(&x));
            if !tgt.degrees[q + 1].eq_elem(&lhs, &rhs) {
                return Some(Witness::new("h(d(x)) ≠ d(h(x))").elem(&x).sides(lhs, rhs).deg(q));
            }
        }
    }
    None
}

/// For `n = 1`: `B_{s+1} = E[s]` at the top level, `F = i*∘res`,
/// `V = tr∘(i*)⁻¹`, `R = r` at the top, and `λ` through the identification of
/// the top level of `W_{C_{p^s}}(R)` with `W_{s+1}(R)`.
pub fn specialize_n1(data: &WittComplexData) -> Result<ClassicalWittComplex> {
    if data.n() != 1 {
        return Err(Error::NotApplicable(format!("specialisation needs n = 1, got n = {}", data.n())));
    }
    data.validate()?;
    let p = data.p;
    let top = data.top_degree();
    let modulus = match data.base.class() {
        NormClass::Burnside => BigInt::zero(),
        NormClass::Constant(a) => a.clone(),
        other => return Err(Error::UnsupportedInput(format!("no classical base ring for class {}", other.tag()))),
    };
    let lvl = |s: usize| p.pow(s as u32);
    let rings: Vec<GradedRing> = data.tower.iter().enumerate().map(|(s, e)| e.ring_at(lvl(s))).collect();
    let d = data.tower.iter().enumerate().map(|(s, _)| (0..top).map(|q| data.d[s][&(q, lvl(s))].clone()).collect()).collect();
    let mut restriction = Vec::new();
    let mut frobenius = Vec::new();
    let mut verschiebung = Vec::new();
    for s in 1..data.tower.len() {
        let r = data.r[s].as_ref().ok_or_else(|| Error::MalformedData(format!("missing r at s={s}")))?;
        restriction.push(r.iter().map(|f| f.component(lvl(s - 1)).clone()).collect());
        let compat = &data.compat[&(s, s - 1)];
        let mut fs = Vec::new();
        let mut vs = Vec::new();
        for q in 0..=top {
            let e = data.tower[s].degree(q);
            let c = compat[q].component(lvl(s - 1));
            fs.push(e.res(lvl(s), lvl(s - 1)).then(c));
            vs.push(c.inverse()?.then(e.tr(lvl(s - 1), lvl(s))));
        }
        frobenius.push(fs);
        verschiebung.push(vs);
    }
    let mut lambda = Vec::new();
    for s in 0..data.tower.len() {
        let w = WittGroup::new(p, s + 1, modulus.clone())?;
        let src = data.lambda[s].source.level(lvl(s));
        let mut m = IntMatrix::zeros(s + 1, src.ngens());
        for i in 0..=s {
            // e_i = V^i(1) is the transfer of 1 from C_{p^{s−i}}
            let j = if matches!(data.base.class(), NormClass::Burnside) { s - i } else { i };
            m = m.add(&IntMatrix::from_rows(src.ngens(), (0..=s).map(|r| if r == i { unit_vec(src.ngens(), j) } else { vec![BigInt::zero(); src.ngens()] }).collect()));
        }
        let ident = AbHom::new(w.group().clone(), src.clone(), m)?;
        lambda.push(ident.then(data.lambda[s].component(lvl(s))));
    }
    Ok(ClassicalWittComplex { p, modulus, rings, d, restriction, frobenius, verschiebung, lambda })
}
