//! On-disk cache of degree bases, one JSON file per `L_m`.
//!
//! Each file carries a format tag, a SHA-256 key of everything the basis
//! depends on and a digest of its own payload. Functions are stored as
//! primitive integer coefficient lists of numerator and denominator. A file
//! that fails any check, or whose elements are not in `L_m`, is recomputed
//! and rewritten.

use laxalg::current::{CurrentElement, DegreeBasis, LaxAlgebra};
use laxalg::exactnum::{format_scalar, PartialFraction, Poly, RatFun, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const FORMAT_VERSION: &str = "laxalg-basis/1";

/// Environment variable naming the cache directory when `--cache-dir` is absent.
pub const CACHE_DIR_VAR: &str = "LAXALG_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct StoredFunction {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Payload {
    m: i64,
    ambient_dim: usize,
    constraint_count: usize,
    constraint_rank: usize,
    coordinate: Vec<usize>,
    elements: Vec<Vec<StoredFunction>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    digest: String,
    payload: Payload,
}

/// What happened to one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Loaded,
    Computed,
    /// A file existed but was rejected.
    Replaced,
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Canonical description of everything `L_m` depends on.
fn key_material(lax: &LaxAlgebra, m: i64) -> laxalg::Result<String> {
    let curve = lax.curve();
    let list = |xs: &[Scalar]| xs.iter().map(format_scalar).collect::<Vec<_>>().join(",");
    let gammas: Vec<String> =
        curve.gammas().iter().map(|g| format!("{}:{:?}", format_scalar(&g.coord), g.spec.values())).collect();
    let divisor: Vec<String> =
        lax.divisor(m)?.entries().iter().map(|(label, at, c)| format!("{label}@{}:{c}", format_scalar(at))).collect();
    Ok(format!(
        "{FORMAT_VERSION}|algebra={}|P={}|Q={}|gamma={}|divisor={}|m={m}",
        lax.algebra().label(),
        list(curve.p_points()),
        list(curve.q_points()),
        gammas.join(";"),
        divisor.join(",")
    ))
}

pub fn cache_key(lax: &LaxAlgebra, m: i64) -> laxalg::Result<String> {
    Ok(sha256_hex(key_material(lax, m)?.as_bytes()))
}

/// `num / den` with integer coefficients, content 1 and positive leading
/// denominator coefficient.
fn store_function(f: &RatFun) -> StoredFunction {
    let coeffs = f.num().coeffs().iter().chain(f.den().coeffs());
    let lcm = coeffs.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = |p: &Poly| -> Vec<BigInt> {
        p.coeffs().iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect()
    };
    let (num, den) = (scaled(f.num()), scaled(f.den()));
    let content = num.iter().chain(&den).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let render = |v: Vec<BigInt>| v.into_iter().map(|x| (x / &content).to_string()).collect();
    StoredFunction { num: render(num), den: render(den) }
}

fn load_function(s: &StoredFunction) -> Option<RatFun> {
    let poly = |v: &[String]| -> Option<Poly> {
        v.iter().map(|t| BigInt::from_str(t).ok().map(Scalar::from_integer)).collect::<Option<Vec<_>>>().map(Poly::new)
    };
    let den = poly(&s.den)?;
    if den.is_zero() {
        return None;
    }
    let f = RatFun::new(poly(&s.num)?, den);
    (store_function(&f) == *s).then_some(f)
}

fn payload_of(b: &DegreeBasis) -> Payload {
    Payload {
        m: b.m,
        ambient_dim: b.ambient_dim,
        constraint_count: b.constraint_count,
        constraint_rank: b.constraint_rank,
        coordinate: b.coordinate.clone(),
        elements: b.elements.iter().map(|e| e.to_ratfuns().iter().map(store_function).collect()).collect(),
    }
}

fn digest_of(p: &Payload) -> String {
    sha256_hex(serde_json::to_string(p).expect("plain data").as_bytes())
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, lax: &LaxAlgebra, m: i64) -> laxalg::Result<PathBuf> {
        let key = cache_key(lax, m)?;
        Ok(self.dir.join(format!("L_{m}_{}.json", &key[..16])))
    }

    /// Reads and validates the entry for `L_m`; `None` if absent or rejected.
    pub fn read(&self, lax: &LaxAlgebra, m: i64) -> laxalg::Result<Option<DegreeBasis>> {
        let path = self.path_for(lax, m)?;
        let Ok(text) = std::fs::read_to_string(&path) else { return Ok(None) };
        let Ok(entry) = serde_json::from_str::<Entry>(&text) else { return Ok(None) };
        if entry.version != FORMAT_VERSION
            || entry.key != cache_key(lax, m)?
            || entry.digest != digest_of(&entry.payload)
            || entry.payload.m != m
        {
            return Ok(None);
        }
        self.rebuild(lax, entry.payload)
    }

    fn rebuild(&self, lax: &LaxAlgebra, p: Payload) -> laxalg::Result<Option<DegreeBasis>> {
        let n = lax.algebra().dim();
        if p.coordinate.len() != p.elements.len() || p.constraint_rank > p.constraint_count {
            return Ok(None);
        }
        let points = lax.curve().coords();
        let mut elements = Vec::with_capacity(p.elements.len());
        for (e, stored) in p.elements.iter().enumerate() {
            if stored.len() != n || p.coordinate[e] >= n {
                return Ok(None);
            }
            let mut coords = Vec::with_capacity(n);
            for s in stored {
                let Some(f) = load_function(s).and_then(|f| PartialFraction::from_ratfun(&f, &points)) else {
                    return Ok(None);
                };
                coords.push(f);
            }
            let l = CurrentElement::new(coords);
            if l.support() != [p.coordinate[e]] || !lax.in_degree(&l, p.m)? {
                return Ok(None);
            }
            elements.push(l);
        }
        Ok(Some(DegreeBasis {
            m: p.m,
            divisor: lax.divisor(p.m)?,
            elements,
            coordinate: p.coordinate,
            ambient_dim: p.ambient_dim,
            constraint_count: p.constraint_count,
            constraint_rank: p.constraint_rank,
        }))
    }

    pub fn write(&self, lax: &LaxAlgebra, basis: &DegreeBasis) -> std::io::Result<()> {
        let path = self.path_for(lax, basis.m).map_err(std::io::Error::other)?;
        let payload = payload_of(basis);
        let entry = Entry {
            version: FORMAT_VERSION.to_string(),
            key: cache_key(lax, basis.m).map_err(std::io::Error::other)?,
            digest: digest_of(&payload),
            payload,
        };
        std::fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&entry).expect("plain data") + "\n")?;
        std::fs::rename(tmp, path)
    }

    /// Makes `L_m` available in `lax`, from disk when a valid entry exists.
    /// Write failures are not fatal: the basis is still seeded.
    pub fn prime(&self, lax: &LaxAlgebra, m: i64) -> laxalg::Result<Outcome> {
        let existed = self.path_for(lax, m)?.exists();
        if let Some(b) = self.read(lax, m)? {
            lax.seed_degree(b);
            return Ok(Outcome::Loaded);
        }
        let b = lax.degree_subspace(m)?;
        if let Err(e) = self.write(lax, &b) {
            eprintln!("warning: cannot write cache entry for L_{m} in {}: {e}", self.dir.display());
        }
        Ok(if existed { Outcome::Replaced } else { Outcome::Computed })
    }
}
