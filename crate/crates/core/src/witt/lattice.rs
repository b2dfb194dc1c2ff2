//! `W_{q+1}(Z/a)` as an abelian group with generators `eᵢ = Vⁱ(1)`.
//!
//! Over `Z` the ghost map is injective and `eᵢ` has ghost vector
//! `(0, …, 0, pⁱ, …, pⁱ)` (first nonzero entry at index `i`), so an element
//! with coordinates `c` has ghost components `w_n = Σ_{i ≤ n} pⁱ cᵢ`. For
//! `a ≠ 0` the kernel of `W(Z) → W(Z/a)` is spanned by the vectors
//! `Vⁱ[a·t]`, and since their ghost components are polynomial in `t` of degree
//! at most `p^{q−i}`, the values `t = 0, …, p^{q−i}` already span it.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::abelian::{AbHom, FgAbGroup};
use crate::error::{Error, Result};
use crate::matrix::{unit_vec, zero_vec, IntMatrix};

#[derive(Clone, Debug)]
pub struct WittGroup {
    p: u64,
    len: usize,
    modulus: BigInt,
    group: FgAbGroup,
}

fn pw(p: u64, e: usize) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

fn ipow(x: &BigInt, e: u64) -> BigInt {
    Pow::pow(x, e)
}

impl WittGroup {
    /// `W_len(Z/modulus)`; `modulus = 0` gives `W_len(Z)`.
    pub fn new(p: u64, len: usize, modulus: BigInt) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParams("Witt length must be at least 1".into()));
        }
        let modulus = if modulus < BigInt::zero() { -modulus } else { modulus };
        let mut rel = IntMatrix::zeros(0, len);
        if !modulus.is_zero() {
            for i in 0..len {
                let top = p.pow((len - 1 - i) as u32);
                for t in 0..=top {
                    let x = &modulus * BigInt::from(t);
                    let ghost: Vec<BigInt> = (0..len)
                        .map(|n| if n < i { BigInt::zero() } else { pw(p, i) * ipow(&x, p.pow((n - i) as u32)) })
                        .collect();
                    rel.push_row(Self::ghost_to_coords_raw(p, &ghost)?);
                }
            }
        }
        let group = FgAbGroup::new(len, rel);
        Ok(WittGroup { p, len, modulus, group })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    fn ghost_to_coords_raw(p: u64, w: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut c = Vec::with_capacity(w.len());
        for n in 0..w.len() {
            let diff = if n == 0 { w[0].clone() } else { &w[n] - &w[n - 1] };
            let (q, r) = diff.div_rem(&pw(p, n));
            if !r.is_zero() {
                return Err(Error::InternalIntegralityFailure(format!("ghost vector not in W(Z) at {n}")));
            }
            c.push(q);
        }
        Ok(c)
    }

    /// Basis coordinates of the element of `W(Z)` with the given ghost vector.
    pub fn from_ghost(&self, w: &[BigInt]) -> Result<Vec<BigInt>> {
        Self::ghost_to_coords_raw(self.p, w)
    }

    /// Ghost vector of the integral lift described by basis coordinates.
    pub fn to_ghost(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut acc = BigInt::zero();
        (0..self.len)
            .map(|n| {
                acc += pw(self.p, n) * &c[n];
                acc.clone()
            })
            .collect()
    }

    /// Element with (integer-lifted) Witt coordinates `x`.
    pub fn from_witt_coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.len {
            return Err(Error::LengthMismatch { expected: self.len, got: x.len() });
        }
        let p = self.p;
        let w: Vec<BigInt> = (0..self.len)
            .map(|n| (0..=n).map(|i| pw(p, i) * ipow(&x[i], p.pow((n - i) as u32))).sum())
            .collect();
        self.from_ghost(&w)
    }

    /// Witt coordinates of an element, reduced into `[0, a)` when `a ≠ 0`.
    pub fn to_witt_coords(&self, c: &[BigInt]) -> Vec<BigInt> {
        let w = self.to_ghost(c);
        let p = self.p;
        let mut x: Vec<BigInt> = Vec::with_capacity(self.len);
        for n in 0..self.len {
            let mut rest = w[n].clone();
            for (i, xi) in x.iter().enumerate() {
                rest -= pw(p, i) * ipow(xi, p.pow((n - i) as u32));
            }
            let (q, r) = rest.div_rem(&pw(p, n));
            debug_assert!(r.is_zero());
            x.push(q);
        }
        if !self.modulus.is_zero() {
            for xi in &mut x {
                *xi = xi.mod_floor(&self.modulus);
            }
        }
        x
    }

    pub fn one(&self) -> Vec<BigInt> {
        unit_vec(self.len, 0)
    }

    /// Teichmüller representative `[t]` of an integer `t`.
    pub fn teichmuller(&self, t: &BigInt) -> Vec<BigInt> {
        let w: Vec<BigInt> = (0..self.len).map(|n| ipow(t, self.p.pow(n as u32))).collect();
        self.from_ghost(&w).expect("Teichmüller lifts are integral")
    }

    /// Structure constants: row `i * len + j` is `eᵢ · eⱼ = p^{min(i,j)} e_{max(i,j)}`.
    pub fn mul_table(&self) -> IntMatrix {
        let l = self.len;
        let mut t = IntMatrix::zeros(l * l, l);
        for i in 0..l {
            for j in 0..l {
                t[(i * l + j, i.max(j))] = pw(self.p, i.min(j));
            }
        }
        t
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let gx = self.to_ghost(x);
        let gy = self.to_ghost(y);
        let w: Vec<BigInt> = gx.iter().zip(&gy).map(|(a, b)| a * b).collect();
        self.group.reduce(&self.from_ghost(&w).expect("products of integral vectors are integral"))
    }

    pub fn pow(&self, x: &[BigInt], e: u64) -> Vec<BigInt> {
        let w: Vec<BigInt> = self.to_ghost(x).iter().map(|a| ipow(a, e)).collect();
        self.group.reduce(&self.from_ghost(&w).expect("powers of integral vectors are integral"))
    }

    fn shorter(&self) -> Result<WittGroup> {
        if self.len < 2 {
            return Err(Error::LengthTooShort(self.len));
        }
        WittGroup::new(self.p, self.len - 1, self.modulus.clone())
    }

    /// `F: W_len → W_{len−1}`; `F(e₀) = e₀`, `F(eᵢ) = p·e_{i−1}`.
    pub fn frobenius(&self) -> Result<AbHom> {
        let t = self.shorter()?;
        let mut m = IntMatrix::zeros(self.len, t.len);
        m[(0, 0)] = BigInt::from(1);
        for i in 1..self.len {
            m[(i, i - 1)] = BigInt::from(self.p);
        }
        AbHom::new(self.group.clone(), t.group, m)
    }

    /// `V: W_{len−1} → W_len`; `V(eᵢ) = e_{i+1}`.
    pub fn verschiebung(&self) -> Result<AbHom> {
        let s = self.shorter()?;
        let mut m = IntMatrix::zeros(s.len, self.len);
        for i in 0..s.len {
            m[(i, i + 1)] = BigInt::from(1);
        }
        AbHom::new(s.group, self.group.clone(), m)
    }

    /// `R: W_len → W_{len−1}`; `eᵢ ↦ eᵢ`, the last generator maps to zero.
    pub fn restriction(&self) -> Result<AbHom> {
        let t = self.shorter()?;
        let mut m = IntMatrix::zeros(self.len, t.len);
        for i in 0..t.len {
            m[(i, i)] = BigInt::from(1);
        }
        AbHom::new(self.group.clone(), t.group, m)
    }

    /// The multiplicative norm from `W_{len'}` (`source`) to `W_len` along a
    /// cyclic extension of index `p^{len − len'}`: in ghost components,
    /// `w_n ↦ w'_0^{pⁿ}` for `n < len − len'` and `w'_{n−δ}^{p^δ}` otherwise,
    /// where `δ = len − len'`. Computed on an integral lift and reduced.
    pub fn norm_from(&self, source: &WittGroup, x: &[BigInt]) -> Vec<BigInt> {
        assert!(source.len <= self.len && source.p == self.p);
        let delta = self.len - source.len;
        let gx = source.to_ghost(x);
        let w: Vec<BigInt> = (0..self.len)
            .map(|n| {
                if n < delta {
                    ipow(&gx[0], self.p.pow(n as u32))
                } else {
                    ipow(&gx[n - delta], self.p.pow(delta as u32))
                }
            })
            .collect();
        self.group.reduce(&self.from_ghost(&w).expect("norms of integral vectors are integral"))
    }

    pub fn zero(&self) -> Vec<BigInt> {
        zero_vec(self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_vec;

    #[test]
    fn w2_f3_is_cyclic_of_order_9() {
        let w = WittGroup::new(3, 2, BigInt::from(3)).unwrap();
        assert_eq!(w.group().invariant_factors(), &[BigInt::from(9)]);
        assert_eq!(w.group().elem_order(&w.one()), Some(BigInt::from(9)));
    }

    #[test]
    fn w_of_z_is_free() {
        let w = WittGroup::new(3, 3, BigInt::zero()).unwrap();
        assert_eq!(w.group().free_rank(), 3);
    }

    #[test]
    fn witt_coordinates_round_trip() {
        let w = WittGroup::new(5, 3, BigInt::zero()).unwrap();
        let x = int_vec(&[3, -2, 7]);
        let c = w.from_witt_coords(&x).unwrap();
        assert_eq!(w.to_witt_coords(&c), x);
    }

    #[test]
    fn fv_is_p() {
        let w = WittGroup::new(3, 3, BigInt::from(4)).unwrap();
        let fv = w.verschiebung().unwrap().then(&w.frobenius().unwrap());
        let s = WittGroup::new(3, 2, BigInt::from(4)).unwrap();
        assert!(fv.equals(&AbHom::scalar(s.group(), &BigInt::from(3))));
    }

    #[test]
    fn teichmuller_of_minus_one_in_z9() {
        let w = WittGroup::new(3, 2, BigInt::from(3)).unwrap();
        let t = w.teichmuller(&BigInt::from(2));
        let minus_one = w.group().reduce(&int_vec(&[-1, 0]));
        assert!(w.group().eq_elem(&t, &minus_one));
    }
}
