//! Commutative rings used as coefficient rings for Witt vectors.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

pub trait CommRing: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Every element, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Characteristic (0 for characteristic zero).
    fn characteristic(&self) -> BigInt;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CommRing for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn characteristic(&self) -> BigInt {
        BigInt::zero()
    }
}

/// `Z/m` with representatives in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: BigInt,
}

impl IntegersMod {
    pub fn new(modulus: BigInt) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::InvalidParams(format!("modulus must be positive, got {modulus}")));
        }
        Ok(IntegersMod { modulus })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    fn red(&self, a: BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }
}

impl CommRing for IntegersMod {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.red(BigInt::one())
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.red(n.clone())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.red(a + b)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.red(-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.red(a * b)
    }
    fn pow(&self, a: &BigInt, e: u64) -> BigInt {
        a.modpow(&BigInt::from(e), &self.modulus)
    }
    fn elements(&self) -> Option<Vec<BigInt>> {
        let mut v = Vec::new();
        let mut t = BigInt::zero();
        while t < self.modulus {
            v.push(t.clone());
            t += 1;
        }
        Some(v)
    }
    fn characteristic(&self) -> BigInt {
        self.modulus.clone()
    }
}

/// `Z[x₀, …, x_{n−1}]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialRing {
    vars: Vec<String>,
}

impl PolynomialRing {
    pub fn new(vars: Vec<String>) -> Self {
        PolynomialRing { vars }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var(&self, name: &str) -> Option<Poly> {
        self.vars.iter().position(|v| v == name).map(Poly::var)
    }
}

impl CommRing for PolynomialRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn from_int(&self, n: &BigInt) -> Poly {
        Poly::constant(n.clone())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn pow(&self, a: &Poly, e: u64) -> Poly {
        a.pow(e)
    }
    fn characteristic(&self) -> BigInt {
        BigInt::zero()
    }
}

/// A runtime choice among the supported coefficient rings. Elements are
/// polynomials; for `Z` and `Z/m` they are constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    IntegersMod(BigInt),
    Polynomial(Vec<String>),
}

impl RingSpec {
    /// Parses `Z`, `Z/4`, `F3`, `Z[x,y]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParams(format!("unrecognised ring {s:?}"));
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: BigInt = m.parse().map_err(|_| bad())?;
            if !m.is_positive() {
                return Err(bad());
            }
            return Ok(RingSpec::IntegersMod(m));
        }
        if let Some(q) = s.strip_prefix('F') {
            let q: u64 = q.parse().map_err(|_| bad())?;
            if !crate::arith::is_prime(q) {
                return Err(Error::InvalidParams(format!("F{q}: only prime fields are supported")));
            }
            return Ok(RingSpec::IntegersMod(BigInt::from(q)));
        }
        if let Some(inner) = s.strip_prefix("Z[").and_then(|r| r.strip_suffix(']')) {
            let vars: Vec<String> = inner.split(',').map(|v| v.trim().to_string()).collect();
            if vars.iter().any(|v| v.is_empty()) {
                return Err(bad());
            }
            return Ok(RingSpec::Polynomial(vars));
        }
        Err(bad())
    }

    pub fn name(&self) -> String {
        match self {
            RingSpec::Integers => "Z".into(),
            RingSpec::IntegersMod(m) => format!("Z/{m}"),
            RingSpec::Polynomial(v) => format!("Z[{}]", v.join(",")),
        }
    }

    fn reduce(&self, p: Poly) -> Poly {
        match self {
            RingSpec::IntegersMod(m) => Poly::from_terms(p.terms().map(|(k, c)| (k.clone(), c.mod_floor(m)))),
            _ => p,
        }
    }

    /// Parses an element: an integer, or for polynomial rings a sum of
    /// products like `2*x^2*y - 3`.
    pub fn parse_elem(&self, s: &str) -> Result<Poly> {
        let vars: &[String] = match self {
            RingSpec::Polynomial(v) => v,
            _ => &[],
        };
        let p = parse_poly(s, vars)?;
        Ok(self.reduce(p))
    }

    pub fn format_elem(&self, p: &Poly) -> String {
        let vars: Vec<String> = match self {
            RingSpec::Polynomial(v) => v.clone(),
            _ => Vec::new(),
        };
        format_poly(p, &vars)
    }
}

impl CommRing for RingSpec {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        self.reduce(Poly::one())
    }
    fn from_int(&self, n: &BigInt) -> Poly {
        self.reduce(Poly::constant(n.clone()))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(a.add(b))
    }
    fn neg(&self, a: &Poly) -> Poly {
        self.reduce(a.neg())
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(a.mul(b))
    }
    fn elements(&self) -> Option<Vec<Poly>> {
        match self {
            RingSpec::IntegersMod(m) => IntegersMod::new(m.clone())
                .ok()?
                .elements()
                .map(|v| v.into_iter().map(|c| self.reduce(Poly::constant(c))).collect()),
            _ => None,
        }
    }
    fn characteristic(&self) -> BigInt {
        match self {
            RingSpec::IntegersMod(m) => m.clone(),
            _ => BigInt::zero(),
        }
    }
}

fn parse_poly(s: &str, vars: &[String]) -> Result<Poly> {
    let bad = || Error::InvalidParams(format!("cannot parse ring element {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut out = Poly::zero();
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() && !cur.ends_with('^') {
            terms.push((neg, core::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        let mut term = Poly::one();
        for factor in t.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u64>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let f = if let Ok(c) = base.parse::<BigInt>() {
                Poly::constant(c)
            } else if let Some(i) = vars.iter().position(|v| v == base) {
                Poly::var(i)
            } else {
                return Err(bad());
            };
            term = term.mul(&f.pow(exp));
        }
        out = if neg { out.sub(&term) } else { out.add(&term) };
    }
    Ok(out)
}

fn format_poly(p: &Poly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    // highest degree first
    let terms: Vec<_> = p.terms().collect();
    for (idx, (m, c)) in terms.iter().rev().enumerate() {
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            let name = vars.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
            match e {
                0 => {}
                1 => factors.push(name),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        let mag = c.abs();
        let body = if factors.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            factors.join("*")
        } else {
            format!("{mag}*{}", factors.join("*"))
        };
        if idx == 0 {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(RingSpec::parse("F3").unwrap(), RingSpec::IntegersMod(BigInt::from(3)));
        assert_eq!(RingSpec::parse("Z/4").unwrap(), RingSpec::IntegersMod(BigInt::from(4)));
        assert_eq!(RingSpec::parse("Z[x,y]").unwrap(), RingSpec::Polynomial(alloc::vec!["x".into(), "y".into()]));
        assert!(RingSpec::parse("F4").is_err());
        assert!(RingSpec::parse("Q").is_err());
    }

    #[test]
    fn element_round_trip() {
        let r = RingSpec::parse("Z[x,y]").unwrap();
        let e = r.parse_elem("2*x^2*y - 3 + y").unwrap();
        let again = r.parse_elem(&r.format_elem(&e)).unwrap();
        assert_eq!(e, again);
        let f = RingSpec::parse("F3").unwrap();
        assert_eq!(f.format_elem(&f.parse_elem("-1").unwrap()), "2");
    }

    #[test]
    fn modular_arithmetic() {
        let r = IntegersMod::new(BigInt::from(9)).unwrap();
        assert_eq!(r.mul(&BigInt::from(4), &BigInt::from(7)), BigInt::from(1));
        assert_eq!(r.neg(&BigInt::from(1)), BigInt::from(8));
        assert_eq!(r.elements().unwrap().len(), 9);
    }
}
