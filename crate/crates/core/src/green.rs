//! Green functors (levelwise commutative rings compatible with res and tr)
//! and Tambara functors (Green functors with multiplicative norms).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::abelian::{AbHom, FgAbGroup};
use crate::arith::{divisors, gcd, is_prime, lcm};
use crate::error::{Error, Result};
use crate::mackey::{burnside, covering_pairs, divisor_pairs, fixed_point_parts, MackeyFunctor, MackeyMap};
use crate::matrix::{outer, unit_vec, vec_mul, zero_vec, IntMatrix};
use crate::witt::WittGroup;

/// Structure constants of a bilinear map: row `i·m + j` is the product of
/// generator `i` on the left (of `n`) and generator `j` on the right (of `m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    left: usize,
    right: usize,
    table: IntMatrix,
}

impl Bilinear {
    pub fn new(n: usize, table: IntMatrix) -> Result<Self> {
        Self::new_rect(n, n, table)
    }

    pub fn new_rect(left: usize, right: usize, table: IntMatrix) -> Result<Self> {
        if table.rows() != left * right {
            return Err(Error::DimensionMismatch(format!("{} rows for {left}x{right} generators", table.rows())));
        }
        Ok(Bilinear { left, right, table })
    }

    /// Number of left generators.
    pub fn ngens(&self) -> usize {
        self.left
    }

    pub fn right_gens(&self) -> usize {
        self.right
    }

    pub fn width(&self) -> usize {
        self.table.cols()
    }

    pub fn table(&self) -> &IntMatrix {
        &self.table
    }

    pub fn apply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        if self.left == 0 || self.right == 0 {
            return zero_vec(self.table.cols());
        }
        vec_mul(&outer(x, y), &self.table)
    }

    /// Structure constants obtained by evaluating `f` on generator pairs.
    pub fn from_fn(n: usize, width: usize, f: impl FnMut(usize, usize) -> Vec<BigInt>) -> Self {
        Self::from_fn_rect(n, n, width, f)
    }

    pub fn from_fn_rect(left: usize, right: usize, width: usize, mut f: impl FnMut(usize, usize) -> Vec<BigInt>) -> Self {
        let mut rows = Vec::with_capacity(left * right);
        for i in 0..left {
            for j in 0..right {
                rows.push(f(i, j));
            }
        }
        Bilinear { left, right, table: IntMatrix::from_rows(width, rows) }
    }
}

fn violation(msg: alloc::string::String) -> Error {
    Error::AxiomViolation(msg)
}

/// A Mackey functor with a commutative ring structure at each level.
#[derive(Clone, Debug)]
pub struct GreenFunctor {
    mackey: MackeyFunctor,
    mul: BTreeMap<u64, Bilinear>,
    one: BTreeMap<u64, Vec<BigInt>>,
}

impl GreenFunctor {
    /// Checks shapes only; see [`GreenFunctor::check_axioms`].
    pub fn new(mackey: MackeyFunctor, mul: BTreeMap<u64, Bilinear>, one: BTreeMap<u64, Vec<BigInt>>) -> Result<Self> {
        for &d in mackey.divisors() {
            let n = mackey.level(d).ngens();
            let m = mul.get(&d).ok_or_else(|| Error::MalformedData(format!("missing mul at level {d}")))?;
            let o = one.get(&d).ok_or_else(|| Error::MalformedData(format!("missing one at level {d}")))?;
            if m.left != n || m.right != n || m.table.cols() != n || o.len() != n {
                return Err(Error::DimensionMismatch(format!("ring data at level {d} does not match {n} generators")));
            }
        }
        Ok(GreenFunctor { mackey, mul, one })
    }

    pub fn mackey(&self) -> &MackeyFunctor {
        &self.mackey
    }

    pub fn n(&self) -> u64 {
        self.mackey.n()
    }

    pub fn level(&self, d: u64) -> &FgAbGroup {
        self.mackey.level(d)
    }

    pub fn mul_table(&self, d: u64) -> &Bilinear {
        &self.mul[&d]
    }

    pub fn mul(&self, d: u64, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.level(d).reduce(&self.mul[&d].apply(x, y))
    }

    pub fn one(&self, d: u64) -> &[BigInt] {
        &self.one[&d]
    }

    pub fn pow(&self, d: u64, x: &[BigInt], mut e: u64) -> Vec<BigInt> {
        let mut acc = self.one(d).to_vec();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(d, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(d, &base, &base);
            }
        }
        acc
    }

    /// Mackey axioms, then (on generators, which suffices by bilinearity):
    /// well-defined commutative associative unital multiplication at every
    /// level, res a ring map, weyl a ring automorphism, and Frobenius
    /// reciprocity `x · tr(y) = tr(res(x) · y)`.
    pub fn check_axioms(&self) -> Result<()> {
        self.mackey.check_axioms()?;
        for &d in self.mackey.divisors() {
            self.check_level_ring(d)?;
        }
        for &(e, d) in &covering_pairs(self.n()) {
            let res = self.mackey.res(d, e);
            if !self.level(e).eq_elem(&res.apply(self.one(d)), self.one(e)) {
                return Err(violation(format!("res {e}<-{d} does not preserve 1")));
            }
            let nd = self.level(d).ngens();
            for i in 0..nd {
                for j in 0..nd {
                    let (x, y) = (unit_vec(nd, i), unit_vec(nd, j));
                    let lhs = res.apply(&self.mul(d, &x, &y));
                    let rhs = self.mul(e, &res.apply(&x), &res.apply(&y));
                    if !self.level(e).eq_elem(&lhs, &rhs) {
                        return Err(violation(format!("res {e}<-{d} is not multiplicative")));
                    }
                }
            }
        }
        for &d in self.mackey.divisors() {
            let w = self.mackey.weyl(d);
            let nd = self.level(d).ngens();
            if !self.level(d).eq_elem(&w.apply(self.one(d)), self.one(d)) {
                return Err(violation(format!("weyl at level {d} does not preserve 1")));
            }
            for i in 0..nd {
                for j in 0..nd {
                    let (x, y) = (unit_vec(nd, i), unit_vec(nd, j));
                    if !self.level(d).eq_elem(&w.apply(&self.mul(d, &x, &y)), &self.mul(d, &w.apply(&x), &w.apply(&y))) {
                        return Err(violation(format!("weyl at level {d} is not multiplicative")));
                    }
                }
            }
        }
        for &(e, d) in &divisor_pairs(self.n()) {
            if e == d {
                continue;
            }
            let (res, tr) = (self.mackey.res(d, e), self.mackey.tr(e, d));
            let (nd, ne) = (self.level(d).ngens(), self.level(e).ngens());
            for i in 0..nd {
                for j in 0..ne {
                    let (x, y) = (unit_vec(nd, i), unit_vec(ne, j));
                    let lhs = self.mul(d, &x, &tr.apply(&y));
                    let rhs = tr.apply(&self.mul(e, &res.apply(&x), &y));
                    if !self.level(d).eq_elem(&lhs, &rhs) {
                        return Err(violation(format!("Frobenius reciprocity fails for {e} | {d}")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_level_ring(&self, d: u64) -> Result<()> {
        let g = self.level(d);
        let n = g.ngens();
        let gens: Vec<Vec<BigInt>> = (0..n).map(|i| unit_vec(n, i)).collect();
        for r in 0..g.relations().rows() {
            let rel = g.relations().row(r);
            for y in &gens {
                if !g.is_zero(&self.mul(d, rel, y)) {
                    return Err(violation(format!("multiplication at level {d} is not well defined")));
                }
            }
        }
        for x in &gens {
            if !g.eq_elem(&self.mul(d, self.one(d), x), x) {
                return Err(violation(format!("1 is not a unit at level {d}")));
            }
            for y in &gens {
                let xy = self.mul(d, x, y);
                if !g.eq_elem(&xy, &self.mul(d, y, x)) {
                    return Err(violation(format!("multiplication at level {d} is not commutative")));
                }
                for z in &gens {
                    if !g.eq_elem(&self.mul(d, &xy, z), &self.mul(d, x, &self.mul(d, y, z))) {
                        return Err(violation(format!("multiplication at level {d} is not associative")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that a Mackey map between Green functors is multiplicative and
    /// unital at every level.
    pub fn check_ring_map(f: &MackeyMap, source: &GreenFunctor, target: &GreenFunctor) -> Result<()> {
        for &d in source.mackey.divisors() {
            let h = f.component(d);
            let tg = target.level(d);
            if !tg.eq_elem(&h.apply(source.one(d)), target.one(d)) {
                return Err(violation(format!("map does not preserve 1 at level {d}")));
            }
            let n = source.level(d).ngens();
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (unit_vec(n, i), unit_vec(n, j));
                    if !tg.eq_elem(&h.apply(&source.mul(d, &x, &y)), &target.mul(d, &h.apply(&x), &h.apply(&y))) {
                        return Err(violation(format!("map is not multiplicative at level {d}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same ring structure on a quotient functor with the same
    /// generators (for example from [`MackeyFunctor::quotient`]); fails if
    /// the kernel is not an ideal.
    pub fn on_quotient(&self, q: &MackeyFunctor) -> Result<GreenFunctor> {
        let g = GreenFunctor { mackey: q.clone(), mul: self.mul.clone(), one: self.one.clone() };
        for &d in q.divisors() {
            let lvl = q.level(d);
            let n = lvl.ngens();
            for r in 0..lvl.relations().rows() {
                for j in 0..n {
                    if !lvl.is_zero(&g.mul(d, lvl.relations().row(r), &unit_vec(n, j))) {
                        return Err(Error::NotApplicable(format!("kernel at level {d} is not an ideal")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn zeta(&self, m: u64) -> Result<GreenFunctor> {
        let z = self.mackey.zeta(m)?;
        let mul = z.divisors().iter().map(|&d| (d, self.mul[&(d * m)].clone())).collect();
        let one = z.divisors().iter().map(|&d| (d, self.one[&(d * m)].clone())).collect();
        Ok(GreenFunctor { mackey: z, mul, one })
    }

    pub fn restrict_to_subgroup(&self, h: u64) -> Result<GreenFunctor> {
        let r = self.mackey.restrict_to_subgroup(h)?;
        let mul = r.divisors().iter().map(|&d| (d, self.mul[&d].clone())).collect();
        let one = r.divisors().iter().map(|&d| (d, self.one[&d].clone())).collect();
        Ok(GreenFunctor { mackey: r, mul, one })
    }

    /// Geometric fixed points as a Green functor over `C_{N/m}`, with the
    /// projection from `ζ(self, m)`.
    pub fn geometric_fixed_points(&self, m: u64) -> Result<(GreenFunctor, MackeyMap)> {
        let (phi, proj) = self.mackey.geometric_fixed_points(m)?;
        let g = self.zeta(m)?.on_quotient(&phi)?;
        Ok((g, proj))
    }

    /// Levelwise Weyl coinvariants with the induced ring structure.
    pub fn coinvariants(&self) -> Result<(GreenFunctor, MackeyMap)> {
        let (q, proj) = self.mackey.coinvariants()?;
        Ok((self.on_quotient(&q)?, proj))
    }

    /// A copy whose underlying Mackey functor is replaced by an isomorphic
    /// one along the levelwise isomorphism `iso: self → other`.
    pub fn transport(&self, iso: &MackeyMap) -> Result<GreenFunctor> {
        let inv = iso.inverse()?;
        let target = &iso.target;
        let mut mul = BTreeMap::new();
        let mut one = BTreeMap::new();
        for &d in target.divisors() {
            let (to, from) = (iso.component(d), inv.component(d));
            let n = target.level(d).ngens();
            let width = n;
            let b = Bilinear::from_fn(n, width, |i, j| {
                let x = from.apply(&unit_vec(n, i));
                let y = from.apply(&unit_vec(n, j));
                to.apply(&self.mul(d, &x, &y))
            });
            mul.insert(d, b);
            one.insert(d, to.apply(self.one(d)));
        }
        Ok(GreenFunctor { mackey: target.clone(), mul, one })
    }
}

/// Which closed-form recipe produced a Tambara functor. The norm functor is
/// only available for the Burnside and constant classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormClass {
    Burnside,
    /// Constant functor `Z/m` with trivial action (`m = 0` for `Z`).
    Constant(BigInt),
    FixedPoint,
    Other,
}

impl NormClass {
    pub fn tag(&self) -> alloc::string::String {
        match self {
            NormClass::Burnside => "burnside".into(),
            NormClass::Constant(m) if m.is_zero() => "constant:Z".into(),
            NormClass::Constant(m) if is_prime_big(m) => format!("constant:F{m}"),
            NormClass::Constant(m) => format!("constant:Z/{m}"),
            NormClass::FixedPoint => "fixed_point".into(),
            NormClass::Other => "other".into(),
        }
    }
}

fn is_prime_big(m: &BigInt) -> bool {
    u64::try_from(m).map(is_prime).unwrap_or(false)
}

/// `(from, to, x) ↦ n^{to}_{from}(x)`.
pub type NormFn = Arc<dyn Fn(u64, u64, &[BigInt]) -> Vec<BigInt> + Send + Sync>;

#[derive(Clone)]
pub struct TambaraFunctor {
    green: GreenFunctor,
    norm: NormFn,
    class: NormClass,
}

impl fmt::Debug for TambaraFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TambaraFunctor").field("class", &self.class).field("green", &self.green).finish()
    }
}

impl TambaraFunctor {
    pub fn new(green: GreenFunctor, norm: NormFn, class: NormClass) -> Self {
        TambaraFunctor { green, norm, class }
    }

    pub fn green(&self) -> &GreenFunctor {
        &self.green
    }

    pub fn mackey(&self) -> &MackeyFunctor {
        self.green.mackey()
    }

    pub fn n(&self) -> u64 {
        self.green.n()
    }

    pub fn class(&self) -> &NormClass {
        &self.class
    }

    /// `n^d_e(x)` for `x` in level `e`.
    pub fn internal_norm(&self, x: &[BigInt], e: u64, d: u64) -> Result<Vec<BigInt>> {
        let n = self.n();
        if e == 0 || d == 0 || n % d != 0 || d % e != 0 {
            return Err(Error::NotASubgroup { sub: e, order: d });
        }
        if x.len() != self.green.level(e).ngens() {
            return Err(Error::DimensionMismatch(format!("element of length {} at level {e}", x.len())));
        }
        if e == d {
            return Ok(self.green.level(d).reduce(x));
        }
        Ok(self.green.level(d).reduce(&(self.norm)(e, d, x)))
    }

    /// Green axioms, then on sample elements of every level: `n(1) = 1`,
    /// `n(xy) = n(x) n(y)`, and `res^d_e n^d_e(x) = Π_j weyl^{jN/d}(x)`.
    pub fn check_axioms(&self, sample_limit: usize) -> Result<()> {
        self.green.check_axioms()?;
        let n = self.n();
        for &(e, d) in &divisor_pairs(n) {
            if e == d {
                continue;
            }
            let (ge, gd) = (self.green.level(e), self.green.level(d));
            if !gd.eq_elem(&self.internal_norm(self.green.one(e), e, d)?, self.green.one(d)) {
                return Err(violation(format!("norm {e}->{d} does not preserve 1")));
            }
            let samples = ge.sample_elements(sample_limit);
            let norms: Vec<Vec<BigInt>> = samples.iter().map(|x| self.internal_norm(x, e, d)).collect::<Result<_>>()?;
            for (x, nx) in samples.iter().zip(&norms) {
                let lhs = self.mackey().res(d, e).apply(nx);
                let mut rhs = self.green.one(e).to_vec();
                for j in 0..d / e {
                    rhs = self.green.mul(e, &rhs, &self.mackey().weyl_pow(e, j * (n / d)).apply(x));
                }
                if !ge.eq_elem(&lhs, &rhs) {
                    return Err(violation(format!("res∘norm {e}->{d} is not the Weyl orbit product at {x:?}")));
                }
            }
            for (i, x) in samples.iter().enumerate() {
                for (j, y) in samples.iter().enumerate().skip(i) {
                    let lhs = self.internal_norm(&self.green.mul(e, x, y), e, d)?;
                    let rhs = self.green.mul(d, &norms[i], &norms[j]);
                    if !gd.eq_elem(&lhs, &rhs) {
                        return Err(violation(format!("norm {e}->{d} is not multiplicative at {x:?}, {y:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Burnside

/// Marks `φ_c(x)` of `x ∈ A(C_d)` for every `c | d`, ascending in `c`:
/// `φ_c([C_d/C_e]) = d/e` if `c | e`, else 0.
pub fn burnside_marks(d: u64, x: &[BigInt]) -> Vec<BigInt> {
    let divs = divisors(d);
    divs.iter()
        .map(|&c| {
            divs.iter()
                .zip(x)
                .filter(|(&e, _)| e % c == 0)
                .map(|(&e, xe)| xe * BigInt::from(d / e))
                .sum()
        })
        .collect()
}

/// Inverts [`burnside_marks`]; fails if the marks are not those of a virtual
/// `C_d`-set.
pub fn burnside_from_marks(d: u64, marks: &[BigInt]) -> Result<Vec<BigInt>> {
    let divs = divisors(d);
    let mut x = zero_vec(divs.len());
    for (ci, &c) in divs.iter().enumerate().rev() {
        let mut rest = marks[ci].clone();
        for (ei, &e) in divs.iter().enumerate().skip(ci + 1) {
            if e % c == 0 {
                rest -= &x[ei] * BigInt::from(d / e);
            }
        }
        let (q, r) = rest.div_rem(&BigInt::from(d / c));
        if !r.is_zero() {
            return Err(Error::InternalIntegralityFailure(format!("marks are not integral at C_{c} in A(C_{d})")));
        }
        x[ci] = q;
    }
    Ok(x)
}

/// The norm `A(C_e) → A(C_d)` through marks:
/// `φ_c(n x) = φ_{gcd(e,c)}(x)^{d / lcm(e,c)}`.
pub fn burnside_norm(e: u64, d: u64, x: &[BigInt]) -> Vec<BigInt> {
    let mx = burnside_marks(e, x);
    let de = divisors(e);
    let marks: Vec<BigInt> = divisors(d)
        .iter()
        .map(|&c| {
            let g = gcd(e, c);
            let gi = de.iter().position(|&f| f == g).expect("divisor");
            Pow::pow(&mx[gi], d / lcm(e, c))
        })
        .collect();
    burnside_from_marks(d, &marks).expect("norms of C_e-sets are C_d-sets")
}

/// The Burnside Tambara functor of `C_N`.
pub fn burnside_tambara(n: u64) -> TambaraFunctor {
    let m = burnside(n);
    let mut mul = BTreeMap::new();
    let mut one = BTreeMap::new();
    for &d in m.divisors() {
        let divs = divisors(d);
        let k = divs.len();
        // [C_d/C_a]·[C_d/C_b] = (d / lcm(a,b)) [C_d/C_gcd(a,b)]
        let b = Bilinear::from_fn(k, k, |i, j| {
            let (a, b) = (divs[i], divs[j]);
            let mut v = zero_vec(k);
            let g = gcd(a, b);
            v[divs.iter().position(|&f| f == g).expect("divisor")] = BigInt::from(d / lcm(a, b));
            v
        });
        mul.insert(d, b);
        one.insert(d, unit_vec(k, k - 1));
    }
    let green = GreenFunctor { mackey: m, mul, one };
    TambaraFunctor::new(green, Arc::new(burnside_norm), NormClass::Burnside)
}

// ---------------------------------------------------------------------------
// Fixed points

/// A commutative ring `A` (as an abelian group with structure constants)
/// with a ring automorphism `sigma`.
#[derive(Clone, Debug)]
pub struct RingWithAction {
    pub group: FgAbGroup,
    pub mul: Bilinear,
    pub one: Vec<BigInt>,
    pub sigma: AbHom,
}

impl RingWithAction {
    /// `Z/m` (`Z` when `m = 0`) with trivial action.
    pub fn cyclic(m: u64) -> Self {
        let group = FgAbGroup::from_factors(&[BigInt::from(m)]);
        let mul = Bilinear::new(1, IntMatrix::from_i64(1, &[&[1]])).expect("1x1 table");
        let sigma = AbHom::identity(&group);
        RingWithAction { group, mul, one: unit_vec(1, 0), sigma }
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.mul.apply(x, y))
    }
}

/// Fixed points of a ring with `C_N` acting through `sigma`, with norms
/// `n^d_e(x) = Π_{j < d/e} σ^{jN/d}(x)`.
pub fn fixed_point_tambara(n: u64, ring: &RingWithAction) -> Result<TambaraFunctor> {
    let class = if ring.sigma.equals(&AbHom::identity(&ring.group)) && ring.group.ngens() == 1 {
        NormClass::Constant(ring.group.invariant_factors().first().cloned().unwrap_or_else(BigInt::one))
    } else {
        NormClass::FixedPoint
    };
    fixed_point_tambara_with_class(n, ring, class)
}

fn fixed_point_tambara_with_class(n: u64, ring: &RingWithAction, class: NormClass) -> Result<TambaraFunctor> {
    let parts = fixed_point_parts(n, &ring.sigma)?;
    let m = parts.functor.clone();
    let mut mul = BTreeMap::new();
    let mut one = BTreeMap::new();
    for &d in m.divisors() {
        let inc = &parts.inclusions[&d];
        let k = m.level(d).ngens();
        let mut err = None;
        let b = Bilinear::from_fn(k, k, |i, j| {
            let x = inc.apply(&unit_vec(k, i));
            let y = inc.apply(&unit_vec(k, j));
            inc.preimage(&ring.mul(&x, &y)).unwrap_or_else(|| {
                err = Some(Error::NotApplicable("fixed points are not closed under multiplication".into()));
                zero_vec(k)
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        mul.insert(d, b);
        let o = inc
            .preimage(&ring.one)
            .ok_or_else(|| Error::NotApplicable("the unit is not fixed by the action".into()))?;
        one.insert(d, o);
    }
    let green = GreenFunctor { mackey: m, mul, one };
    let ring2 = ring.clone();
    let incs = parts.inclusions.clone();
    let norm: NormFn = Arc::new(move |e, d, x| {
        let mut y = incs[&e].apply(x);
        let mut acc = ring2.one.clone();
        let step = ring2.sigma.pow(n / d);
        for _ in 0..d / e {
            acc = ring2.mul(&acc, &y);
            y = step.apply(&y);
        }
        incs[&d].preimage(&acc).expect("norms of fixed points are fixed")
    });
    Ok(TambaraFunctor::new(green, norm, class))
}

/// The constant Tambara functor `Z/m` (`Z` for `m = 0`) over `C_N`.
pub fn constant_tambara(n: u64, m: u64) -> TambaraFunctor {
    fixed_point_tambara(n, &RingWithAction::cyclic(m)).expect("trivial action is valid")
}

// ---------------------------------------------------------------------------
// Norm functor

/// `N_{C_n}^{C_{p^k n}} R` for the Burnside and constant classes.
pub fn norm_functor(r: &TambaraFunctor, p: u64, k: u32) -> Result<TambaraFunctor> {
    let n = r.n();
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    if n % p == 0 {
        return Err(Error::PrimeDividesN { p, n });
    }
    match r.class() {
        NormClass::Burnside => Ok(burnside_tambara(p.pow(k) * n)),
        NormClass::Constant(a) => constant_norm(n, p, k, a),
        other => Err(Error::UnsupportedInput(format!("no norm recipe for class {}", other.tag()))),
    }
}

/// Levels of the norm of the constant functor `Z/a`: `p^q m ↦ W_{q+1}(Z/a)`.
pub fn constant_norm(n: u64, p: u64, k: u32, a: &BigInt) -> Result<TambaraFunctor> {
    let big = p.pow(k) * n;
    let mut witt: BTreeMap<u64, WittGroup> = BTreeMap::new();
    for d in divisors(big) {
        let q = crate::arith::valuation(p, d) as usize;
        witt.insert(d, WittGroup::new(p, q + 1, a.clone())?);
    }
    let levels: BTreeMap<u64, FgAbGroup> = witt.iter().map(|(&d, w)| (d, w.group().clone())).collect();
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (e, d) in covering_pairs(big) {
        let l = d / e;
        if l == p {
            res.insert((e, d), witt[&d].frobenius()?);
            tr.insert((e, d), witt[&d].verschiebung()?);
        } else {
            res.insert((e, d), AbHom::identity(&levels[&d]));
            tr.insert((e, d), AbHom::scalar(&levels[&d], &BigInt::from(l)));
        }
    }
    let weyl = levels.iter().map(|(&d, g)| (d, AbHom::identity(g))).collect();
    let mackey = MackeyFunctor::assemble(big, levels, res, tr, weyl);
    let mul = witt.iter().map(|(&d, w)| (d, Bilinear::new(w.len(), w.mul_table()).expect("square table"))).collect();
    let one = witt.iter().map(|(&d, w)| (d, w.one())).collect();
    let green = GreenFunctor { mackey, mul, one };
    let norm: NormFn = Arc::new(move |e, d, x| {
        // p-direction norm into level p^{v(d)}·(e)', then the prime-to-p index acts as a power
        let (we, wd) = (&witt[&e], &witt[&d]);
        let y = wd.norm_from(we, x);
        let prime_to_p = |f: u64| f / p.pow(crate::arith::valuation(p, f));
        let index = prime_to_p(d) / prime_to_p(e);
        wd.pow(&y, index)
    });
    // not constant any more: the levels are Witt groups
    Ok(TambaraFunctor::new(green, norm, NormClass::Other))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn burnside_tambara_axioms() {
        for n in [1, 2, 3, 4, 6] {
            burnside_tambara(n).check_axioms(12).unwrap();
        }
    }

    #[test]
    fn burnside_norm_of_point_is_point() {
        // n^2_1(2·pt) = [2 elements]^{C_2} = 2·pt + [C_2/e]
        let y = burnside_norm(1, 2, &[BigInt::from(2)]);
        assert_eq!(y, crate::matrix::int_vec(&[1, 2]));
    }

    #[test]
    fn constant_tambara_axioms() {
        constant_tambara(4, 3).check_axioms(9).unwrap();
        constant_tambara(6, 0).check_axioms(9).unwrap();
    }

    #[test]
    fn constant_norm_axioms() {
        let r = constant_tambara(2, 3);
        let t = norm_functor(&r, 3, 1).unwrap();
        assert_eq!(t.n(), 6);
        t.check_axioms(10).unwrap();
        assert_eq!(t.green().level(3).invariant_factors(), &[BigInt::from(9)]);
        assert_eq!(t.class(), &NormClass::Other);
    }

    #[test]
    fn norm_functor_rejects_prime_dividing_n() {
        let r = constant_tambara(3, 3);
        assert!(matches!(norm_functor(&r, 3, 1), Err(Error::PrimeDividesN { .. })));
    }
}
