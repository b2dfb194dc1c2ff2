//! Universal Witt polynomials, computed once per `(p, length)` per process
//! and optionally persisted under `WITTLAB_CACHE_DIR`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use wittlab_core::matrix::int_vec;
use wittlab_core::poly::{Monomial, Poly};
use wittlab_core::ring::Integers;
use wittlab_core::witt::{UniversalWittPolynomials, WittParams, WittRing};

use crate::error::{CliError, Result};
use crate::json::{Int, Ordered};

pub const CACHE_ENV: &str = "WITTLAB_CACHE_DIR";

type Slot = Arc<Mutex<Option<Arc<UniversalWittPolynomials>>>>;

fn slots() -> &'static Mutex<HashMap<(u64, usize), Slot>> {
    static SLOTS: OnceLock<Mutex<HashMap<(u64, usize), Slot>>> = OnceLock::new();
    SLOTS.get_or_init(Default::default)
}

/// The polynomials for `W_len` at `p`. Concurrent callers asking for the same
/// key wait for a single computation; different keys proceed independently.
pub fn polynomials(p: u64, len: usize) -> Result<Arc<UniversalWittPolynomials>> {
    let params = WittParams::new(p, len)?;
    let slot = slots().lock().expect("cache lock").entry((p, len)).or_default().clone();
    let mut guard = slot.lock().expect("cache slot lock");
    if let Some(polys) = guard.as_ref() {
        return Ok(polys.clone());
    }
    let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let polys = match dir.as_deref().and_then(|d| load(d, params)) {
        Some(polys) => polys,
        None => {
            let polys = UniversalWittPolynomials::compute(params)?;
            if let Some(d) = &dir {
                store(d, &polys)?;
            }
            polys
        }
    };
    let polys = Arc::new(polys);
    *guard = Some(polys.clone());
    Ok(polys)
}

#[derive(Serialize, Deserialize)]
struct Term {
    e: Vec<u32>,
    c: Int,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    p: u64,
    len: usize,
    polys: Ordered<Vec<Vec<Term>>>,
}

fn file_name(dir: &Path, p: u64, len: usize) -> PathBuf {
    dir.join(format!("witt-p{p}-len{len}.json"))
}

fn encode(ps: &[Poly]) -> Vec<Vec<Term>> {
    ps.iter().map(|p| p.terms().map(|(m, c)| Term { e: m.exponents().to_vec(), c: Int(c.clone()) }).collect()).collect()
}

fn decode(ts: &[Vec<Term>]) -> Vec<Poly> {
    ts.iter().map(|t| Poly::from_terms(t.iter().map(|t| (Monomial::new(t.e.clone()), t.c.0.clone())))).collect()
}

/// A cached file is used only if it parses and its sum and product agree
/// with ghost arithmetic at a test point; anything else is recomputed.
fn load(dir: &Path, params: WittParams) -> Option<UniversalWittPolynomials> {
    let text = fs::read_to_string(file_name(dir, params.p(), params.k())).ok()?;
    let f: CacheFile = serde_json::from_str(&text).ok()?;
    if f.p != params.p() || f.len != params.k() {
        return None;
    }
    let get = |k: &str| f.polys.get(k).map(|v| decode(v));
    let polys = UniversalWittPolynomials { params, sum: get("sum")?, prod: get("prod")?, neg: get("neg")?, frob: get("frob")? };
    let len = params.k();
    if polys.sum.len() != len || polys.prod.len() != len || polys.neg.len() != len || polys.frob.len() + 1 != len {
        return None;
    }
    let w = WittRing::with_polynomials(Integers, Arc::new(polys.clone()));
    let xs: Vec<i64> = (0..len as i64).map(|i| 2 - i).collect();
    let ys: Vec<i64> = (0..len as i64).map(|i| i - 1).collect();
    let (x, y) = (w.from_ints(&xs).ok()?, w.from_ints(&ys).ok()?);
    let (gx, gy) = (w.ghost(&x), w.ghost(&y));
    let sum_ok = w.ghost(&w.add(&x, &y).ok()?) == gx.iter().zip(&gy).map(|(a, b)| a + b).collect::<Vec<_>>();
    let prod_ok = w.ghost(&w.mul(&x, &y).ok()?) == gx.iter().zip(&gy).map(|(a, b)| a * b).collect::<Vec<_>>();
    let neg_ok = w.ghost(&w.neg(&x).ok()?) == gx.iter().map(|a| -a).collect::<Vec<_>>();
    (sum_ok && prod_ok && neg_ok && x.coords() == int_vec(&xs).as_slice()).then_some(polys)
}

fn store(dir: &Path, polys: &UniversalWittPolynomials) -> Result<()> {
    let (p, len) = (polys.params.p(), polys.params.k());
    let mut named = Ordered::default();
    named.push("sum", encode(&polys.sum));
    named.push("prod", encode(&polys.prod));
    named.push("neg", encode(&polys.neg));
    named.push("frob", encode(&polys.frob));
    let body = serde_json::to_string(&CacheFile { p, len, polys: named }).map_err(|e| CliError::Cache(e.to_string()))?;
    fs::create_dir_all(dir).map_err(|e| CliError::Cache(format!("{}: {e}", dir.display())))?;
    // write then rename so concurrent readers never see a partial file
    let target = file_name(dir, p, len);
    let tmp = dir.join(format!(".witt-p{p}-len{len}.{}.tmp", std::process::id()));
    fs::write(&tmp, body).map_err(|e| CliError::Cache(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, &target).map_err(|e| CliError::Cache(format!("{}: {e}", target.display())))?;
    Ok(())
}
