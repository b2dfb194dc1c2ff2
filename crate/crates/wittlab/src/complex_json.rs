//! Input and report formats for `check witt-complex`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use wittlab_core::arith::multiplicative_order;
use wittlab_core::complex::{
    check_classical, check_equivariant, degree_zero_family, inject_leibniz_violation, inject_scaled_transfer, specialize_n1,
    AxiomReport, GradedGreenFunctor, Status, WittComplexData,
};
use wittlab_core::{Bilinear, EquivariantWitt, Error, IntMatrix, MackeyFunctor};

use crate::commands::Output;
use crate::error::{CliError, Result};
use crate::json::{bigs, constant_from_ring, ints, map_from_json, map_to_json, HomJson, Int, MackeyJson, Ordered, TambaraJson};

/// Either a library family by name or explicit data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckInput {
    Family { family: FamilySpec },
    Explicit(Box<ComplexJson>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// `Z`, `Z/m`, `Fp`, or `A` for the Burnside functor.
    pub ring: String,
    #[serde(default = "one")]
    pub n: u64,
    pub p: u64,
    #[serde(rename = "S")]
    pub s: usize,
    /// `leibniz` or `scaled-transfer`.
    #[serde(default)]
    pub inject: Option<String>,
    #[serde(default = "two")]
    pub factor: i64,
    /// Also run the classical checks on the `n = 1` specialisation.
    #[serde(default)]
    pub classical: bool,
}

fn one() -> u64 {
    1
}

fn two() -> i64 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedJson {
    pub degrees: Vec<MackeyJson>,
    /// Keys `"a,b"`, then levels.
    pub mul: Ordered<Ordered<Vec<Vec<Int>>>>,
    pub one: Ordered<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompatJson {
    pub s: usize,
    pub k: usize,
    pub maps: Vec<Ordered<HomJson>>,
}

/// `tower[s]` lives over `C_{p^s n}`; `d[s][q]`, `r[s][q]` and
/// `compat.maps[q]` are per degree, each a matrix per level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub p: u64,
    pub base: TambaraJson,
    pub tower: Vec<GradedJson>,
    pub d: Vec<Vec<Ordered<HomJson>>>,
    pub r: Vec<Option<Vec<Ordered<HomJson>>>>,
    pub lambda: Vec<Ordered<HomJson>>,
    pub compat: Vec<CompatJson>,
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::MalformedData(msg.into()))
}

fn rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    m.row_vecs().iter().map(|r| ints(r)).collect()
}

impl GradedJson {
    fn from_graded(e: &GradedGreenFunctor) -> Self {
        let top = e.top_degree();
        let mut mul = Ordered::default();
        for a in 0..=top {
            for b in 0..=top - a {
                let per_level = e.divisors().iter().map(|&l| (l.to_string(), rows(e.mul_table(a, b, l).table()))).collect();
                mul.push(format!("{a},{b}"), Ordered(per_level));
            }
        }
        GradedJson {
            degrees: e.degrees().iter().map(MackeyJson::from_functor).collect(),
            mul,
            one: Ordered(e.divisors().iter().map(|&l| (l.to_string(), ints(e.one(l)))).collect()),
        }
    }

    fn to_graded(&self) -> Result<GradedGreenFunctor> {
        let degrees: Vec<MackeyFunctor> = self.degrees.iter().map(|m| m.to_functor()).collect::<Result<_>>()?;
        let top = degrees.len().checked_sub(1).ok_or_else(|| malformed("a graded functor needs degree 0"))?;
        let mut mul = BTreeMap::new();
        let mut one = BTreeMap::new();
        for &l in degrees[0].divisors() {
            for a in 0..=top {
                for b in 0..=top - a {
                    let key = format!("{a},{b}");
                    let table = self
                        .mul
                        .get(&key)
                        .and_then(|t| t.get(&l.to_string()))
                        .ok_or_else(|| malformed(format!("missing product {key} at level {l}")))?;
                    let (left, right, width) = (degrees[a].level(l).ngens(), degrees[b].level(l).ngens(), degrees[a + b].level(l).ngens());
                    if table.len() != left * right || table.iter().any(|r| r.len() != width) {
                        return Err(malformed(format!("product {key} at level {l} must be {}x{width}", left * right)));
                    }
                    let m = IntMatrix::from_rows(width, table.iter().map(|r| bigs(r)).collect());
                    mul.insert((a, b, l), Bilinear::new_rect(left, right, m)?);
                }
            }
            let u = self.one.get(&l.to_string()).ok_or_else(|| malformed(format!("missing unit at level {l}")))?;
            one.insert(l, bigs(u));
        }
        Ok(GradedGreenFunctor::new(degrees, mul, one)?)
    }
}

impl ComplexJson {
    pub fn from_data(data: &WittComplexData) -> Self {
        let top = data.top_degree();
        let d = data
            .d
            .iter()
            .enumerate()
            .map(|(s, ds)| {
                (0..top)
                    .map(|q| {
                        let levels = data.tower[s].divisors();
                        Ordered(levels.iter().map(|&l| (l.to_string(), HomJson::from_hom(&ds[&(q, l)]))).collect())
                    })
                    .collect()
            })
            .collect();
        ComplexJson {
            p: data.p,
            base: TambaraJson::from_tambara(&data.base),
            tower: data.tower.iter().map(GradedJson::from_graded).collect(),
            d,
            r: data.r.iter().map(|r| r.as_ref().map(|maps| maps.iter().map(map_to_json).collect())).collect(),
            lambda: data.lambda.iter().map(map_to_json).collect(),
            compat: data
                .compat
                .iter()
                .map(|(&(s, k), maps)| CompatJson { s, k, maps: maps.iter().map(map_to_json).collect() })
                .collect(),
        }
    }

    pub fn to_data(&self) -> Result<WittComplexData> {
        let base = self.base.to_tambara()?;
        let (p, n) = (self.p, base.n());
        if p == 2 {
            return Err(CliError::Core(Error::EvenPrime(2)));
        }
        let nu = multiplicative_order(p, n).ok_or(CliError::Core(Error::PrimeDividesN { p, n }))? as usize;
        let tower: Vec<GradedGreenFunctor> = self.tower.iter().map(|g| g.to_graded()).collect::<Result<_>>()?;
        if tower.is_empty() {
            return Err(malformed("empty tower"));
        }
        let top = tower[0].top_degree();
        let count = tower.len();
        if self.d.len() != count || self.r.len() != count || self.lambda.len() != count {
            return Err(malformed("d, r and lambda need one entry per tower index"));
        }
        let mut d = Vec::new();
        for (s, ds) in self.d.iter().enumerate() {
            let e = &tower[s];
            if ds.len() != top || e.top_degree() != top {
                return Err(malformed(format!("d at s={s} needs every degree below {top}")));
            }
            let mut out = BTreeMap::new();
            for (q, per_level) in ds.iter().enumerate() {
                for &l in e.divisors() {
                    let h = per_level.get(&l.to_string()).ok_or_else(|| malformed(format!("missing d at s={s}, degree {q}, level {l}")))?;
                    out.insert((q, l), h.to_hom(e.degree(q).level(l), e.degree(q + 1).level(l))?);
                }
            }
            d.push(out);
        }
        let mut r = Vec::new();
        for (s, rs) in self.r.iter().enumerate() {
            r.push(match rs {
                None => None,
                Some(_) if s < nu => return Err(malformed(format!("r at s={s} is below ν = {nu}"))),
                Some(maps) => {
                    if maps.len() != top + 1 {
                        return Err(malformed(format!("r at s={s} needs every degree")));
                    }
                    let built = maps
                        .iter()
                        .enumerate()
                        .map(|(q, m)| map_from_json(m, &tower[s].degree(q).zeta(p.pow(nu as u32))?, tower[s - nu].degree(q)))
                        .collect::<Result<Vec<_>>>()?;
                    Some(built)
                }
            });
        }
        let mut lambda = Vec::new();
        for (s, l) in self.lambda.iter().enumerate() {
            let w = EquivariantWitt::new(&base, p, s as u32)?;
            lambda.push(map_from_json(l, w.mackey(), tower[s].degree(0))?);
        }
        let mut compat = BTreeMap::new();
        for c in &self.compat {
            if c.k >= c.s || c.s >= count || c.maps.len() != top + 1 {
                return Err(malformed(format!("compatibility ({}, {}) is out of range or incomplete", c.s, c.k)));
            }
            let h = p.pow(c.k as u32) * n;
            let maps = c
                .maps
                .iter()
                .enumerate()
                .map(|(q, m)| map_from_json(m, &tower[c.s].degree(q).restrict_to_subgroup(h)?, tower[c.k].degree(q)))
                .collect::<Result<Vec<_>>>()?;
            compat.insert((c.s, c.k), maps);
        }
        Ok(WittComplexData { p, base, tower, d, r, lambda, compat })
    }
}

/// The data a check input describes.
pub fn build(input: &CheckInput) -> Result<WittComplexData> {
    match input {
        CheckInput::Explicit(c) => c.to_data(),
        CheckInput::Family { family: f } => {
            let base = constant_from_ring(&f.ring, f.n)?;
            let data = degree_zero_family(&base, f.p, f.s)?;
            match f.inject.as_deref() {
                None => Ok(data),
                Some("leibniz") => Ok(inject_leibniz_violation(&data)?),
                Some("scaled-transfer") => Ok(inject_scaled_transfer(&data, f.factor)?),
                Some(other) => Err(CliError::Usage(format!("unknown injection {other:?}; use leibniz or scaled-transfer"))),
            }
        }
    }
}

pub fn report_json(r: &AxiomReport) -> Value {
    let results: Vec<Value> = r
        .results
        .iter()
        .map(|res| match &res.status {
            Status::Pass => json!({ "axiom": res.axiom, "status": "PASS" }),
            Status::Warn(msg) => json!({ "axiom": res.axiom, "status": "WARN", "message": msg }),
            Status::Fail(w) => json!({
                "axiom": res.axiom,
                "status": "FAIL",
                "witness": {
                    "s": w.s,
                    "degree": w.degree,
                    "level": w.level,
                    "sublevel": w.sublevel,
                    "element": ints(&w.element),
                    "other": ints(&w.other),
                    "lhs": ints(&w.lhs),
                    "rhs": ints(&w.rhs),
                    "detail": w.detail,
                }
            }),
        })
        .collect();
    json!({ "passed": r.passed(), "results": results })
}

pub fn run(input: &CheckInput) -> Result<Output> {
    let data = build(input)?;
    let report = check_equivariant(&data)?;
    let mut passed = report.passed();
    let mut doc = serde_json::Map::new();
    doc.insert("equivariant".into(), report_json(&report));
    if let CheckInput::Family { family } = input {
        if family.classical {
            let c = check_classical(&specialize_n1(&data)?)?;
            passed &= c.passed();
            doc.insert("classical".into(), report_json(&c));
        }
    }
    doc.insert("passed".into(), json!(passed));
    Ok(Output { value: Value::Object(doc), code: if passed { 0 } else { 1 } })
}
