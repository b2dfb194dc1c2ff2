use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::CommRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WittParams {
    p: u64,
    k: usize,
}

impl WittParams {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidParams("Witt length must be at least 1".into()));
        }
        Ok(WittParams { p, k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// `w_n = Σ_{i ≤ n} pⁱ x_{var(i)}^{p^{n−i}}` as a polynomial.
fn ghost_poly(p: u64, n: usize, var: impl Fn(usize) -> usize) -> Poly {
    let mut acc = Poly::zero();
    for i in 0..=n {
        let coeff = BigInt::from(p).pow(i as u32);
        let e = p.pow((n - i) as u32);
        acc = acc.add(&Poly::var(var(i)).pow(e).scale(&coeff));
    }
    acc
}

/// Solves `Σ_{i ≤ n} pⁱ sᵢ^{p^{n−i}} = target_n` for each `n < len`.
fn ghost_solve(p: u64, len: usize, target: impl Fn(usize) -> Poly) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = Vec::with_capacity(len);
    for n in 0..len {
        let mut rhs = target(n);
        for (i, s) in out.iter().enumerate() {
            let coeff = BigInt::from(p).pow(i as u32);
            rhs = rhs.sub(&s.pow(p.pow((n - i) as u32)).scale(&coeff));
        }
        let pn = BigInt::from(p).pow(n as u32);
        let s = rhs
            .div_exact(&pn)
            .ok_or_else(|| Error::InternalIntegralityFailure(format!("p={p}, component {n}")))?;
        out.push(s);
    }
    Ok(out)
}

/// Integer polynomials for Witt addition, multiplication, negation and
/// Frobenius. In `sum` and `prod`, `x_i` is variable `2i` and `y_i` is
/// variable `2i + 1`; `neg` and `frob` use `x_i` = variable `i`. Component
/// `n` only involves indices `≤ n` (`≤ n + 1` for `frob`), so the polynomials
/// for length `k` serve every shorter length as well.
#[derive(Clone, Debug)]
pub struct UniversalWittPolynomials {
    pub params: WittParams,
    pub sum: Vec<Poly>,
    pub prod: Vec<Poly>,
    pub neg: Vec<Poly>,
    pub frob: Vec<Poly>,
}

impl UniversalWittPolynomials {
    pub fn compute(params: WittParams) -> Result<Self> {
        let (p, k) = (params.p, params.k);
        let x = |i| 2 * i;
        let y = |i| 2 * i + 1;
        let sum = ghost_solve(p, k, |n| ghost_poly(p, n, x).add(&ghost_poly(p, n, y)))?;
        let prod = ghost_solve(p, k, |n| ghost_poly(p, n, x).mul(&ghost_poly(p, n, y)))?;
        let neg = ghost_solve(p, k, |n| ghost_poly(p, n, |i| i).neg())?;
        let frob = ghost_solve(p, k - 1, |n| ghost_poly(p, n + 1, |i| i))?;
        Ok(UniversalWittPolynomials { params, sum, prod, neg, frob })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<E> {
    p: u64,
    coords: Vec<E>,
}

impl<E: Clone> WittVector<E> {
    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// `W_k(A)` for all `k` up to a fixed maximum, over a coefficient ring `A`.
#[derive(Clone, Debug)]
pub struct WittRing<R: CommRing> {
    ring: R,
    polys: Arc<UniversalWittPolynomials>,
}

impl<R: CommRing> WittRing<R> {
    /// Computes the universal polynomials afresh.
    pub fn new(ring: R, p: u64, max_len: usize) -> Result<Self> {
        let params = WittParams::new(p, max_len)?;
        Ok(Self::with_polynomials(ring, Arc::new(UniversalWittPolynomials::compute(params)?)))
    }

    /// Uses polynomials computed elsewhere (for example from a cache).
    pub fn with_polynomials(ring: R, polys: Arc<UniversalWittPolynomials>) -> Self {
        WittRing { ring, polys }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.polys.params.p
    }

    pub fn max_len(&self) -> usize {
        self.polys.params.k
    }

    pub fn polynomials(&self) -> &UniversalWittPolynomials {
        &self.polys
    }

    pub fn vector(&self, coords: Vec<R::Elem>) -> Result<WittVector<R::Elem>> {
        if coords.is_empty() || coords.len() > self.max_len() {
            return Err(Error::ParamsMismatch(format!(
                "length {} outside 1..={}",
                coords.len(),
                self.max_len()
            )));
        }
        Ok(WittVector { p: self.p(), coords })
    }

    pub fn from_ints(&self, coords: &[i64]) -> Result<WittVector<R::Elem>> {
        self.vector(coords.iter().map(|&c| self.ring.from_i64(c)).collect())
    }

    pub fn zero(&self, k: usize) -> Result<WittVector<R::Elem>> {
        self.vector((0..k).map(|_| self.ring.zero()).collect())
    }

    pub fn one(&self, k: usize) -> Result<WittVector<R::Elem>> {
        self.teichmuller(&self.ring.one(), k.checked_sub(1).ok_or(Error::LengthTooShort(0))?)
    }

    fn check(&self, x: &WittVector<R::Elem>) -> Result<()> {
        if x.p != self.p() {
            return Err(Error::ParamsMismatch(format!("prime {} vs {}", x.p, self.p())));
        }
        if x.is_empty() || x.len() > self.max_len() {
            return Err(Error::ParamsMismatch(format!("length {} outside 1..={}", x.len(), self.max_len())));
        }
        Ok(())
    }

    fn check_pair(&self, x: &WittVector<R::Elem>, y: &WittVector<R::Elem>) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        if x.len() != y.len() {
            return Err(Error::ParamsMismatch(format!("lengths {} and {}", x.len(), y.len())));
        }
        Ok(x.len())
    }

    fn binary(&self, polys: &[Poly], x: &WittVector<R::Elem>, y: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let k = self.check_pair(x, y)?;
        let mut vals = Vec::with_capacity(2 * k);
        for i in 0..k {
            vals.push(x.coords[i].clone());
            vals.push(y.coords[i].clone());
        }
        let coords = polys[..k].iter().map(|f| f.eval(&self.ring, &vals)).collect();
        Ok(WittVector { p: self.p(), coords })
    }

    pub fn add(&self, x: &WittVector<R::Elem>, y: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.binary(&self.polys.sum, x, y)
    }

    pub fn mul(&self, x: &WittVector<R::Elem>, y: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.binary(&self.polys.prod, x, y)
    }

    pub fn neg(&self, x: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(x)?;
        let coords = self.polys.neg[..x.len()].iter().map(|f| f.eval(&self.ring, &x.coords)).collect();
        Ok(WittVector { p: self.p(), coords })
    }

    pub fn sub(&self, x: &WittVector<R::Elem>, y: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.add(x, &self.neg(y)?)
    }

    /// Integer multiple `c · x`.
    pub fn scalar(&self, c: i64, x: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let mut acc = self.zero(x.len())?;
        let base = if c < 0 { self.neg(x)? } else { x.clone() };
        for _ in 0..c.unsigned_abs() {
            acc = self.add(&acc, &base)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &WittVector<R::Elem>, mut e: u64) -> Result<WittVector<R::Elem>> {
        let mut acc = self.one(x.len())?;
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Ghost components `w_n = Σ pⁱ aᵢ^{p^{n−i}}`.
    pub fn ghost(&self, x: &WittVector<R::Elem>) -> Vec<R::Elem> {
        let r = &self.ring;
        let p = self.p();
        (0..x.len())
            .map(|n| {
                let mut acc = r.zero();
                for i in 0..=n {
                    let term = r.pow(&x.coords[i], p.pow((n - i) as u32));
                    let c = r.from_int(&BigInt::from(p).pow(i as u32));
                    acc = r.add(&acc, &r.mul(&c, &term));
                }
                acc
            })
            .collect()
    }

    /// `R`: drop the last coordinate.
    pub fn restriction(&self, x: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(x)?;
        if x.len() < 2 {
            return Err(Error::LengthTooShort(x.len()));
        }
        Ok(WittVector { p: self.p(), coords: x.coords[..x.len() - 1].to_vec() })
    }

    /// `F`: `W_k → W_{k−1}`, determined by `w(F x)_n = w(x)_{n+1}`.
    pub fn frobenius(&self, x: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.check(x)?;
        if x.len() < 2 {
            return Err(Error::LengthTooShort(x.len()));
        }
        let coords = self.polys.frob[..x.len() - 1].iter().map(|f| f.eval(&self.ring, &x.coords)).collect();
        Ok(WittVector { p: self.p(), coords })
    }

    /// `V`: `W_{k−1} → W_k`, prepending a zero.
    pub fn verschiebung(&self, x: &WittVector<R::Elem>, k: usize) -> Result<WittVector<R::Elem>> {
        self.check(x)?;
        if x.len() + 1 != k {
            return Err(Error::LengthMismatch { expected: k.saturating_sub(1), got: x.len() });
        }
        if k > self.max_len() {
            return Err(Error::ParamsMismatch(format!("length {k} exceeds {}", self.max_len())));
        }
        let mut coords = Vec::with_capacity(k);
        coords.push(self.ring.zero());
        coords.extend(x.coords.iter().cloned());
        Ok(WittVector { p: self.p(), coords })
    }

    /// `[a]_k = (a, 0, …, 0)` of length `k + 1`.
    pub fn teichmuller(&self, a: &R::Elem, k: usize) -> Result<WittVector<R::Elem>> {
        let mut coords = Vec::with_capacity(k + 1);
        coords.push(a.clone());
        coords.extend((0..k).map(|_| self.ring.zero()));
        self.vector(coords)
    }

    pub fn is_one(&self, x: &WittVector<R::Elem>) -> bool {
        x.coords[0] == self.ring.one() && x.coords[1..].iter().all(|c| self.ring.is_zero(c))
    }

    /// Every element of `W_k(A)` when `A` is finite.
    pub fn elements(&self, k: usize) -> Option<Vec<WittVector<R::Elem>>> {
        let base = self.ring.elements()?;
        let mut out: Vec<Vec<R::Elem>> = alloc::vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    base.iter().map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a.clone());
                        v
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(|coords| WittVector { p: self.p(), coords }).collect())
    }
}

/// `F^k([a]_k)` should equal `a^{p^k}`; returns both sides.
pub fn iterated_frobenius_of_lift<R: CommRing>(w: &WittRing<R>, a: &R::Elem, k: usize) -> Result<(R::Elem, R::Elem)> {
    let mut x = w.teichmuller(a, k)?;
    for _ in 0..k {
        x = w.frobenius(&x)?;
    }
    let rhs = w.ring().pow(a, w.p().pow(k as u32));
    Ok((x.coords[0].clone(), rhs))
}

impl<E> WittVector<E> {
    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::ring::{Integers, IntegersMod};
    use alloc::vec;

    fn zz(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn length_one_is_the_ring() {
        let u = UniversalWittPolynomials::compute(WittParams::new(5, 1).unwrap()).unwrap();
        assert_eq!(u.sum[0], Poly::var(0).add(&Poly::var(1)));
        assert_eq!(u.prod[0], Poly::var(0).mul(&Poly::var(1)));
        assert!(u.frob.is_empty());
    }

    #[test]
    fn second_sum_polynomial() {
        // p = 2: s1 = x1 + y1 - x0*y0
        let u = UniversalWittPolynomials::compute(WittParams::new(2, 2).unwrap()).unwrap();
        let want = Poly::var(2).add(&Poly::var(3)).sub(&Poly::var(0).mul(&Poly::var(1)));
        assert_eq!(u.sum[1], want);
        // p = 3: s1 = x1 + y1 - (x0^2 y0 + x0 y0^2)
        let u = UniversalWittPolynomials::compute(WittParams::new(3, 2).unwrap()).unwrap();
        assert_eq!(u.sum[1].coeff(&Monomial::new(vec![2, 1])), BigInt::from(-1));
        assert_eq!(u.sum[1].coeff(&Monomial::new(vec![1, 2])), BigInt::from(-1));
        assert_eq!(u.sum[1].num_terms(), 4);
    }

    #[test]
    fn small_values_over_z() {
        let w = WittRing::new(Integers, 3, 3).unwrap();
        let one = w.from_ints(&[1, 0]).unwrap();
        assert_eq!(w.add(&one, &one).unwrap().coords(), &zz(&[2, -2])[..]);
        assert_eq!(w.ghost(&w.from_ints(&[1, 1]).unwrap()), zz(&[1, 4]));
        let t2 = w.teichmuller(&BigInt::from(2), 1).unwrap();
        let t3 = w.teichmuller(&BigInt::from(3), 1).unwrap();
        assert_eq!(w.mul(&t2, &t3).unwrap(), w.teichmuller(&BigInt::from(6), 1).unwrap());
        let x = w.from_ints(&[4, -7]).unwrap();
        assert_eq!(w.frobenius(&x).unwrap().coords(), &zz(&[64 - 21])[..]);
    }

    #[test]
    fn errors() {
        let w = WittRing::new(Integers, 3, 3).unwrap();
        let a = w.from_ints(&[1]).unwrap();
        let b = w.from_ints(&[1, 0]).unwrap();
        assert!(matches!(w.add(&a, &b), Err(Error::ParamsMismatch(_))));
        assert_eq!(w.frobenius(&a), Err(Error::LengthTooShort(1)));
        assert_eq!(w.restriction(&a), Err(Error::LengthTooShort(1)));
        assert_eq!(w.verschiebung(&b, 2), Err(Error::LengthMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn w2_f3_is_z9() {
        let w = WittRing::new(IntegersMod::new(BigInt::from(3)).unwrap(), 3, 2).unwrap();
        assert_eq!(w.elements(2).unwrap().len(), 9);
        let one = w.one(2).unwrap();
        let mut acc = one.clone();
        let mut order = 1;
        while acc != w.zero(2).unwrap() {
            acc = w.add(&acc, &one).unwrap();
            order += 1;
        }
        assert_eq!(order, 9);
    }
}
