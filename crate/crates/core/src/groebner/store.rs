//! Persistent Gröbner basis cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use sha2::{Digest, Sha256};

use crate::ring::{Field, Monomial, Poly, PolyRing};

/// First line of every cache file.
pub const FORMAT_HEADER: &str = "SEGRELAB-GB v1";

/// Key-value storage for serialized bases.
pub trait GbStore: Send + Sync {
    fn load(&self, key: &str) -> Option<String>;
    fn save(&self, key: &str, contents: &str);
}

/// Cache directory with files at `<dir>/<first two hex digits>/<key>.gb`.
#[derive(Debug)]
pub struct DiskStore {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl DiskStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskStore {
            dir: dir.into(),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.gb"))
    }
}

impl GbStore for DiskStore {
    fn load(&self, key: &str) -> Option<String> {
        match fs::read_to_string(self.path(key)) {
            Ok(text) if text.starts_with(FORMAT_HEADER) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(text)
            }
            _ => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn save(&self, key: &str, contents: &str) {
        let path = self.path(key);
        let Some(parent) = path.parent() else { return };
        if fs::create_dir_all(parent).is_err() {
            return;
        }
        // write under a unique name, then rename into place
        let tmp = parent.join(format!(
            "{key}.{}.{:?}.tmp",
            std::process::id(),
            std::thread::current().id()
        ));
        let ok = fs::File::create(&tmp)
            .and_then(|mut f| f.write_all(contents.as_bytes()))
            .is_ok();
        if !ok || fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

pub(crate) fn encode_poly<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let exps: Vec<String> = m.exponents().iter().map(|e| e.to_string()).collect();
            format!("{}@{}", ring.field().format(c), exps.join("."))
        })
        .collect();
    terms.join(" ")
}

fn decode_poly<F: Field>(ring: &PolyRing<F>, line: &str) -> Option<Poly<F::Elem>> {
    if line == "0" {
        return Some(Poly::zero());
    }
    let mut terms = Vec::new();
    for t in line.split(' ') {
        let (c, e) = t.split_once('@')?;
        let c = ring.field().parse_elem(c).ok()?;
        let exps: Vec<u32> = e
            .split('.')
            .map(|x| x.parse().ok())
            .collect::<Option<_>>()?;
        if exps.len() != ring.nvars() {
            return None;
        }
        terms.push((Monomial::from_exponents(&exps), c));
    }
    Some(ring.from_terms(terms))
}

/// Hash of everything that determines the basis.
pub(crate) fn cache_key<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F::Elem>]) -> String {
    let mut h = Sha256::new();
    h.update(format!("field {}\n", ring.field().kind()));
    h.update(format!("vars {}\n", ring.var_names().join(",")));
    h.update(format!("order {}\n", ring.order().descriptor()));
    for f in ring.modulus() {
        h.update(format!("mod {}\n", encode_poly(ring, f)));
    }
    for f in gens {
        h.update(format!("gen {}\n", encode_poly(ring, f)));
    }
    hex::encode(h.finalize())
}

pub(crate) fn encode<F: Field>(ring: &PolyRing<F>, gb: &[Poly<F::Elem>]) -> String {
    let mut out = format!("{FORMAT_HEADER}\norder {}\n", ring.order().descriptor());
    for f in gb {
        out.push_str(&encode_poly(ring, f));
        out.push('\n');
    }
    out.push_str(&format!("end {}\n", gb.len()));
    out
}

/// Parses a cache file; any mismatch or damage counts as a miss.
pub(crate) fn decode<F: Field>(ring: &PolyRing<F>, text: &str) -> Option<Vec<Poly<F::Elem>>> {
    let mut lines = text.lines();
    if lines.next()? != FORMAT_HEADER {
        return None;
    }
    if lines.next()? != format!("order {}", ring.order().descriptor()) {
        return None;
    }
    let body: Vec<&str> = lines.collect();
    let (last, polys) = body.split_last()?;
    if *last != format!("end {}", polys.len()) || !text.ends_with('\n') {
        return None;
    }
    polys.iter().map(|l| decode_poly(ring, l)).collect()
}
