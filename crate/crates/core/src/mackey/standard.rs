//! The Burnside functor and fixed-point functors.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;

use super::{bi, covering_pairs, MackeyFunctor};
use crate::abelian::{AbHom, FgAbGroup};
use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Position of `e` among the divisors of `d`.
fn orbit_index(d: u64, e: u64) -> usize {
    divisors(d).iter().position(|&x| x == e).expect("orbit of a subgroup")
}

/// The Burnside functor of `C_N`. Level `d` is free on the orbits
/// `[C_d/C_e]`, `e | d`, in ascending order of `e`.
pub fn burnside(n: u64) -> MackeyFunctor {
    let divs = divisors(n);
    let levels: BTreeMap<u64, FgAbGroup> = divs.iter().map(|&d| (d, FgAbGroup::free(divisors(d).len()))).collect();
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (e, d) in covering_pairs(n) {
        let (bd, be) = (divisors(d), divisors(e));
        // the C_e-set C_d/C_f splits into d·gcd(e,f)/(f·e) orbits of type C_e/C_{gcd(e,f)}
        let mut r = IntMatrix::zeros(bd.len(), be.len());
        for (i, &f) in bd.iter().enumerate() {
            let g = gcd(e, f);
            r[(i, orbit_index(e, g))] = bi(d * g / (f * e));
        }
        let mut t = IntMatrix::zeros(be.len(), bd.len());
        for (i, &f) in be.iter().enumerate() {
            t[(i, orbit_index(d, f))] = bi(1);
        }
        res.insert((e, d), AbHom::new_unchecked(levels[&d].clone(), levels[&e].clone(), r));
        tr.insert((e, d), AbHom::new_unchecked(levels[&e].clone(), levels[&d].clone(), t));
    }
    let weyl = divs.iter().map(|&d| (d, AbHom::identity(&levels[&d]))).collect();
    MackeyFunctor::assemble(n, levels, res, tr, weyl)
}

/// A fixed-point functor together with the inclusions of its levels.
#[derive(Clone, Debug)]
pub struct FixedPointParts {
    pub functor: MackeyFunctor,
    /// `A^{C_d} → A` for each `d`.
    pub inclusions: BTreeMap<u64, AbHom>,
    pub action: AbHom,
}

/// The fixed-point functor of `A` with `C_N` acting through `sigma` (the
/// action of the chosen generator).
pub fn fixed_point_mackey(n: u64, sigma: &AbHom) -> Result<MackeyFunctor> {
    Ok(fixed_point_parts(n, sigma)?.functor)
}

pub fn fixed_point_parts(n: u64, sigma: &AbHom) -> Result<FixedPointParts> {
    if n == 0 {
        return Err(Error::InvalidParams("group order must be positive".into()));
    }
    let a = &sigma.source;
    if !sigma.pow(n).equals(&AbHom::identity(a)) {
        return Err(Error::ActionOrderInvalid(n));
    }
    let divs = divisors(n);
    let id = AbHom::identity(a);
    let mut levels = BTreeMap::new();
    let mut inc = BTreeMap::new();
    for &d in &divs {
        // C_d is generated by sigma^{N/d}
        let (k, i) = sigma.pow(n / d).sub(&id).kernel();
        let (canon, _, from) = k.canonical_form();
        let i = from.then(&i);
        levels.insert(d, canon);
        inc.insert(d, i);
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (e, d) in covering_pairs(n) {
        res.insert((e, d), inc[&d].factor_through(&inc[&e])?);
        let mut sum = AbHom::zero(a, a);
        for j in 0..d / e {
            sum = sum.add(&sigma.pow(j * (n / d)));
        }
        tr.insert((e, d), inc[&e].then(&sum).factor_through(&inc[&d])?);
    }
    let mut weyl = BTreeMap::new();
    for &d in &divs {
        weyl.insert(d, inc[&d].then(sigma).factor_through(&inc[&d])?);
    }
    let functor = MackeyFunctor::assemble(n, levels, res, tr, weyl);
    Ok(FixedPointParts { functor, inclusions: inc, action: sigma.clone() })
}

/// `Z/m` (or `Z` for `m = 0`) with trivial action, as a fixed-point functor.
pub fn constant_mackey(n: u64, m: u64) -> MackeyFunctor {
    let g = FgAbGroup::from_factors(&[BigInt::from(m)]);
    fixed_point_mackey(n, &AbHom::identity(&g)).expect("trivial action")
}

