use std::path::Path;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use wittlab_core::eqwitt::hh0_via_nerve;
use wittlab_core::green::{norm_functor, NormClass};
use wittlab_core::mackey::box_product;
use wittlab_core::poly::Poly;
use wittlab_core::ring::{CommRing, RingSpec};
use wittlab_core::witt::{WittRing, WittVector};
use wittlab_core::{EquivariantWitt, MackeyFunctor, TambaraFunctor};

use crate::cache;
use crate::complex_json::{self, CheckInput};
use crate::error::{CliError, Result};
use crate::json::{constant_from_ring, ints, orbit_name, HomJson, Int, MackeyJson, NormOf, TambaraJson};

/// A finished command: the document to print and the exit status.
#[derive(Debug)]
pub struct Output {
    pub value: Value,
    pub code: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, code: 0 }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("JSON documents serialise")
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

// ---------------------------------------------------------------------------
// classical

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum WittOp {
    Add,
    Sub,
    Mul,
    Neg,
    Ghost,
    /// Frobenius `W_k → W_{k−1}`.
    #[value(name = "F")]
    F,
    /// Verschiebung `W_k → W_{k+1}`.
    #[value(name = "V")]
    V,
    /// Restriction `W_k → W_{k−1}`.
    #[value(name = "R")]
    R,
    /// `F ∘ V`, which is multiplication by `p`.
    #[value(name = "FV")]
    Fv,
    /// Teichmüller lift of the first coordinate of `x`.
    Teich,
    /// Seeded random checks of the ring and operator identities.
    Props,
}

pub struct ClassicalArgs<'a> {
    pub p: u64,
    pub k: usize,
    pub ring: &'a str,
    pub op: WittOp,
    pub x: Option<&'a str>,
    pub y: Option<&'a str>,
    pub seed: u64,
    pub samples: usize,
}

fn parse_vector(ring: &RingSpec, s: &str, k: usize, name: &str) -> Result<Vec<Poly>> {
    let coords: Vec<Poly> = s.split(',').map(|c| ring.parse_elem(c)).collect::<std::result::Result<_, _>>()?;
    if coords.len() != k {
        return Err(CliError::Usage(format!("--{name} has {} coordinates, --k is {k}", coords.len())));
    }
    Ok(coords)
}

fn elem_value(ring: &RingSpec, e: &Poly) -> Value {
    let s = ring.format_elem(e);
    match ring {
        RingSpec::Polynomial(_) => Value::String(s),
        _ => to_value(&Int(s.parse::<BigInt>().expect("constants format as integers"))),
    }
}

fn witt_value(ring: &RingSpec, w: &WittRing<RingSpec>, x: &WittVector<Poly>) -> Value {
    let coords: Vec<Value> = x.coords().iter().map(|c| elem_value(ring, c)).collect();
    let ghost: Vec<Value> = w.ghost(x).iter().map(|c| elem_value(ring, c)).collect();
    json!({ "coords": coords, "ghost": ghost })
}

pub fn classical(a: ClassicalArgs) -> Result<Output> {
    if a.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let ring = RingSpec::parse(a.ring)?;
    let needs_longer = matches!(a.op, WittOp::V | WittOp::Fv | WittOp::Props);
    let polys = cache::polynomials(a.p, if needs_longer { a.k + 1 } else { a.k })?;
    let w = WittRing::with_polynomials(ring.clone(), polys);
    if a.op == WittOp::Props {
        return props(&ring, &w, a.k, a.seed, a.samples);
    }
    let need = |v: Option<&str>, name: &str| -> Result<WittVector<Poly>> {
        let s = v.ok_or_else(|| CliError::Usage(format!("--op needs --{name}")))?;
        Ok(w.vector(parse_vector(&ring, s, a.k, name)?)?)
    };
    let x = need(a.x, "x")?;
    let out = match a.op {
        WittOp::Add => w.add(&x, &need(a.y, "y")?)?,
        WittOp::Sub => w.sub(&x, &need(a.y, "y")?)?,
        WittOp::Mul => w.mul(&x, &need(a.y, "y")?)?,
        WittOp::Neg => w.neg(&x)?,
        WittOp::Ghost => x,
        WittOp::F => w.frobenius(&x)?,
        WittOp::V => w.verschiebung(&x, a.k + 1)?,
        WittOp::R => w.restriction(&x)?,
        WittOp::Fv => w.frobenius(&w.verschiebung(&x, a.k + 1)?)?,
        WittOp::Teich => w.teichmuller(&x.coords()[0], a.k - 1)?,
        WittOp::Props => unreachable!("handled above"),
    };
    Ok(Output::ok(witt_value(&ring, &w, &out)))
}

fn random_elem(ring: &RingSpec, rng: &mut ChaCha8Rng) -> Poly {
    match ring {
        RingSpec::Integers => ring.from_int(&BigInt::from(rng.gen_range(-20i64..=20))),
        RingSpec::IntegersMod(m) => {
            let m = i64::try_from(m).unwrap_or(i64::MAX);
            ring.from_int(&BigInt::from(rng.gen_range(0..m)))
        }
        RingSpec::Polynomial(vars) => {
            let c = ring.from_int(&BigInt::from(rng.gen_range(-3i64..=3)));
            let v = ring.parse_elem(&vars[rng.gen_range(0..vars.len())]).expect("declared variable");
            ring.add(&c, &ring.mul(&v, &ring.from_int(&BigInt::from(rng.gen_range(-2i64..=2)))))
        }
    }
}

fn props(ring: &RingSpec, w: &WittRing<RingSpec>, k: usize, seed: u64, samples: usize) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = w.p() as i64;
    let names = ["(x+y)+z = x+(y+z)", "xy = yx", "(xy)z = x(yz)", "x(y+z) = xy+xz", "FV = p", "xV(y) = V(F(x)y)", "RF = FR", "ghost is a ring map"];
    let mut failures = vec![0usize; names.len()];
    for _ in 0..samples {
        let mut draw = |len: usize| -> Result<WittVector<Poly>> { Ok(w.vector((0..len).map(|_| random_elem(ring, &mut rng)).collect())?) };
        let (x, y, z) = (draw(k)?, draw(k)?, draw(k)?);
        let (g, sum, prod) = (|v: &WittVector<Poly>| w.ghost(v), w.add(&x, &y)?, w.mul(&x, &y)?);
        let checks = [
            w.add(&sum, &z)? == w.add(&x, &w.add(&y, &z)?)?,
            prod == w.mul(&y, &x)?,
            w.mul(&prod, &z)? == w.mul(&x, &w.mul(&y, &z)?)?,
            w.mul(&x, &w.add(&y, &z)?)? == w.add(&prod, &w.mul(&x, &z)?)?,
            w.frobenius(&w.verschiebung(&x, k + 1)?)? == w.scalar(p, &x)?,
            k < 2 || {
                let y1 = w.restriction(&y)?;
                w.mul(&x, &w.verschiebung(&y1, k)?)? == w.verschiebung(&w.mul(&w.frobenius(&x)?, &y1)?, k)?
            },
            k < 3 || w.restriction(&w.frobenius(&x)?)? == w.frobenius(&w.restriction(&x)?)?,
            {
                let (gx, gy) = (g(&x), g(&y));
                let s: Vec<Poly> = gx.iter().zip(&gy).map(|(a, b)| ring.add(a, b)).collect();
                let m: Vec<Poly> = gx.iter().zip(&gy).map(|(a, b)| ring.mul(a, b)).collect();
                g(&sum) == s && g(&prod) == m
            },
        ];
        for (f, ok) in failures.iter_mut().zip(checks) {
            if !ok {
                *f += 1;
            }
        }
    }
    let results: Vec<Value> = names
        .iter()
        .zip(&failures)
        .map(|(n, &f)| json!({ "property": n, "samples": samples, "failures": f }))
        .collect();
    let passed = failures.iter().all(|&f| f == 0);
    Ok(Output { value: json!({ "seed": seed, "passed": passed, "results": results }), code: if passed { 0 } else { 1 } })
}

// ---------------------------------------------------------------------------
// mackey, box, norm

pub fn mackey_show(file: &Path) -> Result<Output> {
    let m = read_json::<MackeyJson>(file)?.to_functor()?;
    m.check_axioms()?;
    Ok(Output::ok(to_value(&MackeyJson::from_functor(&m))))
}

pub fn box_cmd(a: &Path, b: &Path) -> Result<Output> {
    let (ma, mb): (MackeyFunctor, MackeyFunctor) = (read_json::<MackeyJson>(a)?.to_functor()?, read_json::<MackeyJson>(b)?.to_functor()?);
    let bx = box_product(&ma, &mb)?;
    Ok(Output::ok(to_value(&MackeyJson::from_functor(&bx.functor))))
}

/// The Tambara functor from `--input`, or from `--ring` over `C_n`.
pub fn base_functor(input: Option<&Path>, ring: Option<&str>, n: Option<u64>) -> Result<TambaraFunctor> {
    match (input, ring) {
        (Some(path), None) => {
            if n.is_some() {
                return Err(CliError::Usage("--n only applies with --ring".into()));
            }
            read_json::<TambaraJson>(path)?.to_tambara()
        }
        (None, Some(r)) => {
            let n = n.unwrap_or(1);
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            constant_from_ring(r, n)
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either --input or --ring, not both".into())),
        (None, None) => Err(CliError::Usage("one of --input or --ring is required".into())),
    }
}

pub fn norm(r: &TambaraFunctor, p: u64, k: u32) -> Result<Output> {
    let t = norm_functor(r, p, k)?;
    let mut out = TambaraJson::from_tambara(&t);
    if *t.class() == NormClass::Other {
        out.norm_of = Some(NormOf { norm_class: r.class().tag(), n: r.n(), p, k });
    }
    Ok(Output::ok(to_value(&out)))
}

// ---------------------------------------------------------------------------
// eqwitt

pub fn eqwitt(r: &TambaraFunctor, p: u64, k: u32, oracle: bool) -> Result<Output> {
    let w = EquivariantWitt::new(r, p, k)?;
    let big = w.group_order();
    let m = w.mackey();
    let mut doc = Map::new();
    doc.insert("N".into(), json!(big));
    doc.insert("n".into(), json!(w.n()));
    doc.insert("p".into(), json!(p));
    doc.insert("k".into(), json!(k));
    doc.insert("nu".into(), json!(w.nu()));
    doc.insert("base".into(), json!(r.class().tag()));
    let mut levels = Map::new();
    for &d in m.divisors() {
        levels.insert(orbit_name(big, d), json!({ "invariant_factors": ints(m.level(d).invariant_factors()) }));
    }
    doc.insert("levels".into(), Value::Object(levels));
    doc.insert("functor".into(), to_value(&MackeyJson::from_functor(m)));
    let mut f = Map::new();
    let mut v = Map::new();
    for &d in m.divisors().iter().filter(|&&d| d % p == 0) {
        f.insert(format!("{}->{}", orbit_name(big, d), orbit_name(big, d / p)), to_value(&HomJson::from_hom(w.frobenius(d)?)));
    }
    for &e in m.divisors().iter().filter(|&&e| big % (e * p) == 0) {
        v.insert(format!("{}->{}", orbit_name(big, e), orbit_name(big, e * p)), to_value(&HomJson::from_hom(w.verschiebung(e)?)));
    }
    doc.insert("frobenius".into(), Value::Object(f));
    doc.insert("verschiebung".into(), Value::Object(v));
    let mut lifts = Vec::new();
    for &lvl in r.mackey().divisors() {
        if !r.mackey().level(lvl).is_finite() {
            continue;
        }
        let top = p.pow(k) * lvl;
        for (a, lift) in w.lift_table(lvl)? {
            lifts.push(json!({
                "from": orbit_name(r.n(), lvl),
                "to": orbit_name(big, top),
                "a": ints(&a),
                "lift": ints(&m.level(top).reduce(&lift)),
                "lift_invariant": ints(&m.level(top).canonical(&lift)),
            }));
        }
    }
    doc.insert("lifts".into(), Value::Array(lifts));
    let mut code = 0;
    if oracle {
        let nerve = hh0_via_nerve(r, p, k)?;
        let mut out = Map::new();
        for (d, ok) in w.compare_levels(nerve.mackey()) {
            if !ok {
                code = 1;
            }
            out.insert(orbit_name(big, d), json!(if ok { "PASS" } else { "FAIL" }));
        }
        doc.insert("oracle".into(), Value::Object(out));
    }
    Ok(Output { value: Value::Object(doc), code })
}

// ---------------------------------------------------------------------------
// check witt-complex

pub fn check_witt_complex(file: &Path, dump: bool) -> Result<Output> {
    let input: CheckInput = read_json(file)?;
    if dump {
        let data = complex_json::build(&input)?;
        return Ok(Output::ok(to_value(&complex_json::ComplexJson::from_data(&data))));
    }
    complex_json::run(&input)
}
