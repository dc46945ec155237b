//! Content-addressed on-disk store of Gröbner bases.
//!
//! The key is a SHA-256 over the engine version, the blob format version, the
//! ring, the order and the generators in input order. Files live at
//! `<dir>/<aa>/<hash>.gb` and are written via rename, so concurrent writers of
//! the same key are harmless. A cache is installed per thread with
//! [`with_scope`]; without one, bases are always computed.

use std::cell::RefCell;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::{FreeModuleVector, MVec, ModuleGroebnerBasis, ModuleOrder, Term};
use crate::poly::{Monomial, Ring};

const MAGIC: &[u8; 4] = b"FLGB";
const FORMAT_VERSION: u32 = 1;
/// Inputs smaller than this are cheaper to recompute than to look up.
const MIN_TERMS: usize = 24;

#[derive(Debug, Default)]
pub struct CacheStats {
    hits: AtomicU64,
    misses: AtomicU64,
}

impl CacheStats {
    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

/// A cache directory together with the counters of the current job.
#[derive(Clone, Debug)]
pub struct CacheScope {
    dir: Arc<PathBuf>,
    stats: Arc<CacheStats>,
}

impl CacheScope {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CacheScope { dir: Arc::new(dir.into()), stats: Arc::default() }
    }

    /// Same directory, fresh counters.
    pub fn fork(&self) -> Self {
        CacheScope { dir: self.dir.clone(), stats: Arc::default() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> &CacheStats {
        &self.stats
    }
}

thread_local! {
    static CURRENT: RefCell<Option<CacheScope>> = const { RefCell::new(None) };
}

/// Runs `f` with `scope` installed on this thread.
pub fn with_scope<R>(scope: Option<CacheScope>, f: impl FnOnce() -> R) -> R {
    struct Restore(Option<CacheScope>);
    impl Drop for Restore {
        fn drop(&mut self) {
            let prev = self.0.take();
            CURRENT.with(|c| *c.borrow_mut() = prev);
        }
    }
    let prev = CURRENT.with(|c| std::mem::replace(&mut *c.borrow_mut(), scope));
    let _restore = Restore(prev);
    f()
}

/// The scope installed on this thread, for handing to worker tasks.
pub fn current() -> Option<CacheScope> {
    CURRENT.with(|c| c.borrow().clone())
}

fn put_u32(buf: &mut Vec<u8>, v: u32) {
    buf.extend_from_slice(&v.to_le_bytes());
}

fn header(ring: Ring, rank: usize, order: ModuleOrder) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    put_u32(&mut buf, FORMAT_VERSION);
    put_u32(&mut buf, ring.p());
    put_u32(&mut buf, ring.nvars() as u32);
    buf.push(ring.var_name().prefix() as u8);
    put_u32(&mut buf, rank as u32);
    buf.push(order.tag());
    buf
}

fn key(ring: Ring, rank: usize, order: ModuleOrder, gens: &[FreeModuleVector]) -> String {
    let mut h = Sha256::new();
    h.update(crate::ENGINE_VERSION.as_bytes());
    h.update(header(ring, rank, order));
    for g in gens {
        h.update(b"g");
        for (i, c) in g.components().iter().enumerate() {
            for (m, coef) in c.terms() {
                h.update((i as u32).to_le_bytes());
                h.update(coef.to_le_bytes());
                for e in m.exponents() {
                    h.update(e.to_le_bytes());
                }
            }
        }
    }
    hex::encode(h.finalize())
}

fn encode(gb: &ModuleGroebnerBasis) -> Vec<u8> {
    let mut buf = header(gb.ring(), gb.rank(), gb.order());
    put_u32(&mut buf, gb.elements().len() as u32);
    for e in gb.elements() {
        put_u32(&mut buf, e.0.len() as u32);
        for t in &e.0 {
            put_u32(&mut buf, t.pos);
            put_u32(&mut buf, t.coef);
            for &x in t.mono.exponents() {
                put_u32(&mut buf, x);
            }
        }
    }
    buf
}

fn decode(bytes: &[u8], ring: Ring, rank: usize, order: ModuleOrder) -> Option<ModuleGroebnerBasis> {
    let head = header(ring, rank, order);
    let rest = bytes.strip_prefix(head.as_slice())?;
    let mut words = rest.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap()));
    if rest.len() % 4 != 0 {
        return None;
    }
    let n = ring.nvars();
    let count = words.next()?;
    let mut elements = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let len = words.next()?;
        let mut terms = Vec::with_capacity(len as usize);
        for _ in 0..len {
            let pos = words.next()?;
            let coef = words.next()?;
            let ex: Vec<u32> = (0..n).map(|_| words.next()).collect::<Option<_>>()?;
            if pos as usize >= rank || coef == 0 || coef >= ring.p() {
                return None;
            }
            terms.push(Term { pos, mono: Monomial::from_exponents(&ex), coef });
        }
        if terms.is_empty() {
            return None;
        }
        elements.push(MVec(terms));
    }
    if words.next().is_some() {
        return None;
    }
    Some(ModuleGroebnerBasis::from_parts(ring, rank, order, elements))
}

fn size(gens: &[FreeModuleVector]) -> usize {
    gens.iter().flat_map(|g| g.components()).map(|c| c.len()).sum()
}

fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(&key[..2]).join(format!("{key}.gb"))
}

pub(super) fn lookup(ring: Ring, rank: usize, order: ModuleOrder, gens: &[FreeModuleVector]) -> Option<ModuleGroebnerBasis> {
    let scope = current()?;
    if size(gens) < MIN_TERMS {
        return None;
    }
    let path = path_for(scope.dir(), &key(ring, rank, order, gens));
    let found = std::fs::read(&path).ok().and_then(|b| decode(&b, ring, rank, order));
    let counter = if found.is_some() { &scope.stats.hits } else { &scope.stats.misses };
    counter.fetch_add(1, Ordering::Relaxed);
    found
}

pub(super) fn store(ring: Ring, rank: usize, order: ModuleOrder, gens: &[FreeModuleVector], gb: &ModuleGroebnerBasis) {
    let Some(scope) = current() else { return };
    if size(gens) < MIN_TERMS {
        return;
    }
    let path = path_for(scope.dir(), &key(ring, rank, order, gens));
    // a cache that cannot be written is only a slower cache
    let _ = write_atomic(&path, &encode(gb));
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let parent = path.parent().expect("cache paths have a parent");
    std::fs::create_dir_all(parent)?;
    let tmp = parent.join(format!(
        ".{}.{}.{:?}.tmp",
        path.file_name().unwrap().to_string_lossy(),
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;
    use crate::groebner::module_groebner;

    #[test]
    fn warm_lookup_returns_the_same_basis() {
        let dir = tempfile::tempdir().unwrap();
        let r = Ring::x(Prime::new(5).unwrap(), 3);
        let gens: Vec<FreeModuleVector> = ["(x0 + x1 + x2)^4", "(x0 - x1)^3 + x2^2", "x0*x1*x2 + (x1 + 2*x2)^2"]
            .iter()
            .map(|s| FreeModuleVector::new(r, vec![r.parse(s).unwrap()]).unwrap())
            .collect();
        let scope = CacheScope::new(dir.path());
        let cold = with_scope(Some(scope.clone()), || module_groebner(r, 1, &gens, ModuleOrder::TermOverPosition));
        assert_eq!((scope.stats().hits(), scope.stats().misses()), (0, 1));
        let warm_scope = scope.fork();
        let warm =
            with_scope(Some(warm_scope.clone()), || module_groebner(r, 1, &gens, ModuleOrder::TermOverPosition));
        assert_eq!((warm_scope.stats().hits(), warm_scope.stats().misses()), (1, 0));
        assert_eq!(cold, warm);
        assert!(current().is_none());
    }

    #[test]
    fn corrupt_blobs_are_misses() {
        let r = Ring::x(Prime::new(3).unwrap(), 2);
        assert!(decode(b"FLGB\x01", r, 1, ModuleOrder::PositionOverTerm).is_none());
    }
}
