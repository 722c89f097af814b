//! Shared configuration and memo caches for one quiver, field size and mode.

use std::collections::HashMap;
use std::hash::Hash;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{HallError, Result};
use crate::ff::Fq;
use crate::linear::{OrbitTable, Shape};
use crate::quiver::{CartanData, Quiver};
use crate::scalars::check_q;

/// Which representations are admitted: nilpotent ones, or all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Nilpotent,
    Full,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Nilpotent => "nilpotent",
            Mode::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nilpotent" => Ok(Mode::Nilpotent),
            "full" => Ok(Mode::Full),
            other => Err(HallError::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

/// Hard enumeration limits; exceeding one is reported as a resource error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest number of matrix tuples enumerated for one orbit table.
    pub max_tuples: u64,
    /// Largest total dimension of a single representation or complex.
    pub max_total_dim: usize,
    /// Highest level of generators at imaginary vertices.
    pub max_level: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { max_tuples: 1 << 22, max_total_dim: 6, max_level: 3 }
    }
}

type Slot<V> = Arc<OnceLock<Result<Arc<V>>>>;

/// Thread-safe memo map: concurrent requests for one key compute it once.
pub struct Memo<K, V> {
    map: RwLock<HashMap<K, Slot<V>>>,
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self { map: RwLock::new(HashMap::new()) }
    }
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        let cell = {
            let read = self.map.read().expect("memo lock");
            read.get(key).cloned()
        };
        let cell = match cell {
            Some(c) => c,
            None => {
                let mut write = self.map.write().expect("memo lock");
                write.entry(key.clone()).or_default().clone()
            }
        };
        cell.get_or_init(|| compute().map(Arc::new)).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Everything needed to compute in the Hall algebras of one quiver over `F_q`.
pub struct HallCtx {
    quiver: Quiver,
    cartan: CartanData,
    hash: String,
    q: u32,
    field: Fq,
    mode: Mode,
    bounds: Bounds,
    rep_shape: Shape,
    cx_shape: Shape,
    cache_dir: Option<PathBuf>,
    pub(crate) rep_tables: Memo<Vec<usize>, OrbitTable>,
    pub(crate) cx_tables: Memo<Vec<usize>, OrbitTable>,
    pub(crate) cpart_products: Memo<crate::sdh::CPartKey, crate::sdh::SDHElem>,
}

impl HallCtx {
    pub fn new(quiver: Quiver, q: u32, mode: Mode) -> Result<Self> {
        Self::with_bounds(quiver, q, mode, Bounds::default())
    }

    pub fn with_bounds(quiver: Quiver, q: u32, mode: Mode, bounds: Bounds) -> Result<Self> {
        let q = check_q(q)?;
        let nilpotent = mode == Mode::Nilpotent;
        let cache_dir = std::env::var_os("HALLFORGE_CACHE_DIR").map(PathBuf::from);
        Ok(Self {
            cartan: quiver.cartan(),
            hash: quiver.content_hash(),
            rep_shape: Shape::representations(&quiver, nilpotent),
            cx_shape: Shape::complexes(&quiver, nilpotent),
            quiver,
            q,
            field: Fq::new(q),
            mode,
            bounds,
            cache_dir,
            rep_tables: Memo::default(),
            cx_tables: Memo::default(),
            cpart_products: Memo::default(),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn quiver_hash(&self) -> &str {
        &self.hash
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn rep_shape(&self) -> &Shape {
        &self.rep_shape
    }

    pub fn cx_shape(&self) -> &Shape {
        &self.cx_shape
    }

    pub(crate) fn check_total_dim(&self, dims: &[usize]) -> Result<()> {
        let total: usize = dims.iter().sum();
        if total > self.bounds.max_total_dim {
            return Err(HallError::Resource(format!(
                "total dimension {total} exceeds the bound {}",
                self.bounds.max_total_dim
            )));
        }
        Ok(())
    }

    /// Orbit table for representations, shared across threads and optionally persisted.
    pub fn rep_table(&self, dims: &[usize]) -> Result<Arc<OrbitTable>> {
        self.check_total_dim(dims)?;
        self.rep_tables.get_or_compute(&dims.to_vec(), || self.load_or_build("rep", &self.rep_shape, dims))
    }

    /// Orbit table for complexes with the given dimensions (degree 0 first).
    pub fn cx_table(&self, dims: &[usize]) -> Result<Arc<OrbitTable>> {
        self.check_total_dim(dims)?;
        self.cx_tables.get_or_compute(&dims.to_vec(), || self.load_or_build("cx", &self.cx_shape, dims))
    }

    fn load_or_build(&self, kind: &str, shape: &Shape, dims: &[usize]) -> Result<OrbitTable> {
        let path = self.cache_dir.as_ref().map(|dir| {
            let d: Vec<String> = dims.iter().map(|x| x.to_string()).collect();
            dir.join(format!("{}-q{}-{}-{kind}-{}.tbl", self.hash, self.q, self.mode.as_str(), d.join("_")))
        });
        if let Some(p) = &path {
            if let Ok(bytes) = std::fs::read(p) {
                if let Some(t) = OrbitTable::from_bytes(&bytes, dims) {
                    return Ok(t);
                }
            }
        }
        let table = OrbitTable::build(shape, dims, self.field, self.bounds.max_tuples)?;
        if let Some(p) = &path {
            // a failed write only loses the cache entry
            let _ = std::fs::create_dir_all(p.parent().expect("cache file has a parent"))
                .and_then(|_| std::fs::write(p, table.to_bytes()));
        }
        Ok(table)
    }
}
