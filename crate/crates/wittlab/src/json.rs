//! JSON encodings. Divisor-keyed maps are written in ascending numeric
//! order; matrices are row-major with one row per source generator.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use wittlab_core::arith::divisors;
use wittlab_core::green::{burnside_tambara, constant_tambara, norm_functor};
use wittlab_core::mackey::covering_pairs;
use wittlab_core::ring::RingSpec;
use wittlab_core::{AbHom, Bilinear, FgAbGroup, GreenFunctor, IntMatrix, MackeyFunctor, MackeyMap, TambaraFunctor};

use crate::error::{CliError, Result};

/// An integer written as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.trim().parse().map(Int).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

/// A JSON object that keeps its insertion order in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordered<T>(pub Vec<(String, T)>);

impl<T> Default for Ordered<T> {
    fn default() -> Self {
        Ordered(Vec::new())
    }
}

impl<T> Ordered<T> {
    pub fn get(&self, key: &str) -> Option<&T> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn push(&mut self, key: impl Into<String>, value: T) {
        self.0.push((key.into(), value));
    }
}

impl<T: Serialize> Serialize for Ordered<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Ordered<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Ordered<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Ordered<T>, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry()? {
                    out.push((k, v));
                }
                Ok(Ordered(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Core(wittlab_core::Error::MalformedData(msg.into()))
}

fn lookup<'a, T>(m: &'a Ordered<T>, key: &str, what: &str) -> Result<&'a T> {
    m.get(key).ok_or_else(|| malformed(format!("missing {what} {key:?}")))
}

// ---------------------------------------------------------------------------
// Groups and homomorphisms

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub invariant_factors: Vec<Int>,
    /// Present only for presentations other than `⊕ Z/dᵢ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ngens: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<Int>>>,
}

impl GroupJson {
    pub fn from_group(g: &FgAbGroup) -> Self {
        let factors = g.invariant_factors();
        let canonical = FgAbGroup::from_factors(factors);
        let nonzero = |m: &IntMatrix| m.row_vecs().into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect::<Vec<_>>();
        let plain = g.ngens() == canonical.ngens() && nonzero(g.relations()) == nonzero(canonical.relations());
        GroupJson {
            invariant_factors: ints(factors),
            ngens: (!plain).then(|| g.ngens()),
            relations: (!plain).then(|| nonzero(g.relations()).iter().map(|r| ints(r)).collect()),
        }
    }

    pub fn to_group(&self) -> Result<FgAbGroup> {
        let factors = bigs(&self.invariant_factors);
        let g = match (&self.ngens, &self.relations) {
            (None, None) => return Ok(FgAbGroup::from_factors(&factors)),
            (Some(n), rel) => {
                let rows = rel.as_deref().unwrap_or(&[]);
                FgAbGroup::new(*n, matrix(*n, rows)?)
            }
            (None, Some(_)) => return Err(malformed("relations given without ngens")),
        };
        if g.invariant_factors() != factors.as_slice() {
            return Err(malformed(format!("presentation has invariant factors {:?}, not {factors:?}", g.invariant_factors())));
        }
        Ok(g)
    }
}

fn matrix(cols: usize, rows: &[Vec<Int>]) -> Result<IntMatrix> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(malformed(format!("matrix row of length {} where {cols} columns are expected", r.len())));
    }
    Ok(IntMatrix::from_rows(cols, rows.iter().map(|r| bigs(r)).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub matrix: Vec<Vec<Int>>,
}

impl HomJson {
    pub fn from_hom(h: &AbHom) -> Self {
        HomJson { matrix: h.matrix.row_vecs().iter().map(|r| ints(r)).collect() }
    }

    pub fn to_matrix(&self, source: &FgAbGroup, target: &FgAbGroup) -> Result<IntMatrix> {
        if self.matrix.len() != source.ngens() {
            return Err(malformed(format!("matrix has {} rows for {} source generators", self.matrix.len(), source.ngens())));
        }
        matrix(target.ngens(), &self.matrix)
    }

    pub fn to_hom(&self, source: &FgAbGroup, target: &FgAbGroup) -> Result<AbHom> {
        Ok(AbHom::new(source.clone(), target.clone(), self.to_matrix(source, target)?)?)
    }
}

// ---------------------------------------------------------------------------
// Mackey, Green and Tambara functors

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyJson {
    #[serde(rename = "N")]
    pub n: u64,
    pub levels: Ordered<GroupJson>,
    /// Keys `"e<-d"` for covering pairs.
    pub res: Ordered<HomJson>,
    /// Keys `"e->d"` for covering pairs.
    pub tr: Ordered<HomJson>,
    pub weyl: Ordered<HomJson>,
}

impl MackeyJson {
    pub fn from_functor(m: &MackeyFunctor) -> Self {
        let mut out = MackeyJson { n: m.n(), levels: Ordered::default(), res: Ordered::default(), tr: Ordered::default(), weyl: Ordered::default() };
        for &d in m.divisors() {
            out.levels.push(d.to_string(), GroupJson::from_group(m.level(d)));
        }
        for (e, d) in covering_pairs(m.n()) {
            out.res.push(format!("{e}<-{d}"), HomJson::from_hom(m.res(d, e)));
            out.tr.push(format!("{e}->{d}"), HomJson::from_hom(m.tr(e, d)));
        }
        for &d in m.divisors() {
            out.weyl.push(d.to_string(), HomJson::from_hom(m.weyl(d)));
        }
        out
    }

    pub fn to_functor(&self) -> Result<MackeyFunctor> {
        if self.n == 0 {
            return Err(malformed("N must be positive"));
        }
        let divs = divisors(self.n);
        if self.levels.0.len() != divs.len() {
            return Err(malformed(format!("expected {} levels for C_{}", divs.len(), self.n)));
        }
        let mut levels = BTreeMap::new();
        for &d in &divs {
            levels.insert(d, lookup(&self.levels, &d.to_string(), "level")?.to_group()?);
        }
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for (e, d) in covering_pairs(self.n) {
            let r = lookup(&self.res, &format!("{e}<-{d}"), "res")?;
            let t = lookup(&self.tr, &format!("{e}->{d}"), "tr")?;
            res.insert((e, d), r.to_matrix(&levels[&d], &levels[&e])?);
            tr.insert((e, d), t.to_matrix(&levels[&e], &levels[&d])?);
        }
        let mut weyl = BTreeMap::new();
        for &d in &divs {
            weyl.insert(d, lookup(&self.weyl, &d.to_string(), "weyl")?.to_matrix(&levels[&d], &levels[&d])?);
        }
        Ok(MackeyFunctor::new(self.n, levels, &res, &tr, &weyl)?)
    }
}

/// A Tambara functor: the norm class fixes the norms, and any explicit
/// Mackey and ring data must describe the same functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TambaraJson {
    #[serde(rename = "N")]
    pub n: u64,
    pub norm_class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Ordered<GroupJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub res: Option<Ordered<HomJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tr: Option<Ordered<HomJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<Ordered<HomJson>>,
    /// Per level, row `i·m + j` is the product of generators `i` and `j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Ordered<Vec<Vec<Int>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<Ordered<Vec<Int>>>,
    /// For norms, which have class `other`: the functor they were built from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_of: Option<NormOf>,
}

/// `N_{C_n}^{C_{p^k n}}` of the functor with class `norm_class` over `C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormOf {
    pub norm_class: String,
    pub n: u64,
    pub p: u64,
    pub k: u32,
}

impl TambaraJson {
    pub fn from_tambara(t: &TambaraFunctor) -> Self {
        let m = MackeyJson::from_functor(t.mackey());
        let g = t.green();
        let mut mul = Ordered::default();
        let mut one = Ordered::default();
        for &d in t.mackey().divisors() {
            mul.push(d.to_string(), g.mul_table(d).table().row_vecs().iter().map(|r| ints(r)).collect());
            one.push(d.to_string(), ints(g.one(d)));
        }
        TambaraJson {
            n: t.n(),
            norm_class: t.class().tag(),
            levels: Some(m.levels),
            res: Some(m.res),
            tr: Some(m.tr),
            weyl: Some(m.weyl),
            mul: Some(mul),
            one: Some(one),
            norm_of: None,
        }
    }

    /// The functor named by the class; explicit data, when present, is
    /// compared with it.
    pub fn to_tambara(&self) -> Result<TambaraFunctor> {
        if self.n == 0 {
            return Err(malformed("N must be positive"));
        }
        let t = match &self.norm_of {
            None => tambara_from_tag(&self.norm_class, self.n)?,
            Some(src) => {
                let t = norm_functor(&tambara_from_tag(&src.norm_class, src.n)?, src.p, src.k)?;
                if t.n() != self.n || t.class().tag() != self.norm_class {
                    return Err(malformed(format!("the norm of {} has N = {} and class {}", src.norm_class, t.n(), t.class().tag())));
                }
                t
            }
        };
        let explicit = [self.levels.is_some(), self.res.is_some(), self.tr.is_some(), self.weyl.is_some()];
        if explicit.iter().all(|&b| b) {
            let m = MackeyJson {
                n: self.n,
                levels: self.levels.clone().unwrap_or_default(),
                res: self.res.clone().unwrap_or_default(),
                tr: self.tr.clone().unwrap_or_default(),
                weyl: self.weyl.clone().unwrap_or_default(),
            }
            .to_functor()?;
            if !m.levels_isomorphic(t.mackey()) {
                return Err(malformed(format!("levels do not match the {} functor over C_{}", self.norm_class, self.n)));
            }
        } else if explicit.iter().any(|&b| b) {
            return Err(malformed("levels, res, tr and weyl must be given together"));
        }
        if let Some(mul) = &self.mul {
            let ours = TambaraJson::from_tambara(&t);
            if Some(mul) != ours.mul.as_ref() || self.one.as_ref().is_some_and(|o| Some(o) != ours.one.as_ref()) {
                return Err(malformed(format!("ring structure differs from the {} functor", self.norm_class)));
            }
        }
        Ok(t)
    }
}

/// `burnside` or `constant:<ring>` with `<ring>` one of `Z`, `Z/m`, `Fp`.
pub fn tambara_from_tag(tag: &str, n: u64) -> Result<TambaraFunctor> {
    if tag == "burnside" {
        return Ok(burnside_tambara(n));
    }
    if let Some(ring) = tag.strip_prefix("constant:") {
        return constant_from_ring(ring, n);
    }
    Err(CliError::Core(wittlab_core::Error::UnsupportedInput(format!("norm class {tag:?}"))))
}

/// The constant functor of a ring given as `Z`, `Z/m` or `Fp`; `A` or
/// `burnside` give the Burnside functor.
pub fn constant_from_ring(ring: &str, n: u64) -> Result<TambaraFunctor> {
    if ring == "A" || ring == "burnside" {
        return Ok(burnside_tambara(n));
    }
    match RingSpec::parse(ring)? {
        RingSpec::Integers => Ok(constant_tambara(n, 0)),
        RingSpec::IntegersMod(m) => {
            let m = m.to_u64().ok_or_else(|| CliError::Usage(format!("modulus of {ring} is too large")))?;
            Ok(constant_tambara(n, m))
        }
        RingSpec::Polynomial(_) => Err(CliError::Core(wittlab_core::Error::UnsupportedInput(format!(
            "{ring}: only Z, Z/m and prime fields have constant functors here"
        )))),
    }
}

pub fn green_from_json(levels: &MackeyFunctor, mul: &Ordered<Vec<Vec<Int>>>, one: &Ordered<Vec<Int>>) -> Result<GreenFunctor> {
    let mut muls = BTreeMap::new();
    let mut ones = BTreeMap::new();
    for &d in levels.divisors() {
        let g = levels.level(d).ngens();
        let rows = lookup(mul, &d.to_string(), "mul")?;
        if rows.len() != g * g {
            return Err(malformed(format!("mul at level {d} needs {} rows", g * g)));
        }
        muls.insert(d, Bilinear::new(g, matrix(g, rows)?)?);
        ones.insert(d, bigs(lookup(one, &d.to_string(), "one")?));
    }
    Ok(GreenFunctor::new(levels.clone(), muls, ones)?)
}

/// A map of Mackey functors as one matrix per level.
pub fn map_to_json(f: &MackeyMap) -> Ordered<HomJson> {
    Ordered(f.components().iter().map(|(d, h)| (d.to_string(), HomJson::from_hom(h))).collect())
}

pub fn map_from_json(j: &Ordered<HomJson>, source: &MackeyFunctor, target: &MackeyFunctor) -> Result<MackeyMap> {
    let mut comps = BTreeMap::new();
    for &d in source.divisors() {
        comps.insert(d, lookup(j, &d.to_string(), "component")?.to_hom(source.level(d), target.level(d))?);
    }
    Ok(MackeyMap::from_homs_unchecked(source.clone(), target.clone(), comps))
}

/// `C_N/C_d` with `C_1` written `e`.
pub fn orbit_name(n: u64, d: u64) -> String {
    if d == 1 {
        format!("C{n}/e")
    } else {
        format!("C{n}/C{d}")
    }
}
