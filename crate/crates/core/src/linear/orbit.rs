//! Complete orbit tables: every matrix tuple of fixed dimensions is labelled with
//! the index of its isomorphism class.

use rayon::prelude::*;

use super::{Obj, Shape};
use crate::error::{HallError, Result};
use crate::ff::{Fq, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// Smallest code in the orbit.
    pub rep_code: u64,
    pub orbit_size: u64,
}

#[derive(Debug)]
pub struct OrbitTable {
    pub dims: Vec<usize>,
    class_of: Vec<u32>,
    pub classes: Vec<OrbitClass>,
    /// `|Π_s GL(dims_s)|`.
    pub group_order: u128,
}

const NONE: u32 = u32::MAX;

struct Generator {
    space: usize,
    g: Mat,
    ginv: Mat,
}

fn generators(dims: &[usize], f: Fq) -> Vec<Generator> {
    let mut out = Vec::new();
    let root = f.primitive_root();
    for (space, &d) in dims.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    let mut g = Mat::identity(d);
                    g.set(i, j, 1);
                    let mut ginv = Mat::identity(d);
                    ginv.set(i, j, f.neg(1));
                    out.push(Generator { space, g, ginv });
                }
            }
        }
        if d > 0 && root != 1 {
            let mut g = Mat::identity(d);
            g.set(0, 0, root);
            let mut ginv = Mat::identity(d);
            ginv.set(0, 0, f.inv(root));
            out.push(Generator { space, g, ginv });
        }
    }
    out
}

fn gl_order(d: usize, q: u128) -> u128 {
    let qd = q.pow(d as u32);
    (0..d).map(|i| qd - q.pow(i as u32)).product()
}

impl OrbitTable {
    /// Enumerate all `q^N` tuples, keep the members of the category and group
    /// them into orbits of `Π GL(dims_s)` by breadth-first search.
    pub fn build(shape: &Shape, dims: &[usize], f: Fq, max_tuples: u64) -> Result<Self> {
        let q = f.q();
        let n = shape.entries(dims);
        let total = (q as u64)
            .checked_pow(n as u32)
            .filter(|&t| t <= max_tuples)
            .ok_or_else(|| {
                HallError::Resource(format!(
                    "{q}^{n} matrix tuples for dimensions {dims:?} exceed the bound {max_tuples}"
                ))
            })?;
        let valid: Vec<bool> =
            (0..total).into_par_iter().map(|c| shape.is_member(&shape.decode(dims, c, q), f)).collect();
        let gens = generators(dims, f);
        let mut class_of = vec![NONE; total as usize];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..total {
            if !valid[start as usize] || class_of[start as usize] != NONE {
                continue;
            }
            let idx = classes.len() as u32;
            class_of[start as usize] = idx;
            stack.push(start);
            let mut size = 0u64;
            while let Some(code) = stack.pop() {
                size += 1;
                let obj = shape.decode(dims, code, q);
                for g in &gens {
                    let next = shape.encode(&act(shape, &obj, g, f), q);
                    if class_of[next as usize] == NONE {
                        class_of[next as usize] = idx;
                        stack.push(next);
                    }
                }
            }
            classes.push(OrbitClass { rep_code: start, orbit_size: size });
        }
        let group_order = dims.iter().map(|&d| gl_order(d, q as u128)).product();
        Ok(Self { dims: dims.to_vec(), class_of, classes, group_order })
    }

    pub fn class_of_code(&self, code: u64) -> Option<u32> {
        self.class_of.get(code as usize).copied().filter(|&c| c != NONE)
    }

    pub fn representative(&self, shape: &Shape, idx: u32, f: Fq) -> Obj {
        shape.decode(&self.dims, self.classes[idx as usize].rep_code, f.q())
    }

    /// Stabilizer order, by orbit-stabilizer.
    pub fn aut_size(&self, idx: u32) -> u128 {
        self.group_order / self.classes[idx as usize].orbit_size as u128
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

const MAGIC: &[u8; 5] = b"HFOT1";

impl OrbitTable {
    /// Little-endian serialization for the on-disk cache.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32 + 16 * self.classes.len() + 4 * self.class_of.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.group_order.to_le_bytes());
        out.extend_from_slice(&(self.classes.len() as u64).to_le_bytes());
        for c in &self.classes {
            out.extend_from_slice(&c.rep_code.to_le_bytes());
            out.extend_from_slice(&c.orbit_size.to_le_bytes());
        }
        out.extend_from_slice(&(self.class_of.len() as u64).to_le_bytes());
        for &c in &self.class_of {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], dims: &[usize]) -> Option<Self> {
        let mut rest = bytes.strip_prefix(MAGIC)?;
        let mut take = |n: usize| -> Option<&[u8]> {
            if rest.len() < n {
                return None;
            }
            let (head, tail) = rest.split_at(n);
            rest = tail;
            Some(head)
        };
        let group_order = u128::from_le_bytes(take(16)?.try_into().ok()?);
        let n_classes = u64::from_le_bytes(take(8)?.try_into().ok()?) as usize;
        let mut classes = Vec::with_capacity(n_classes);
        for _ in 0..n_classes {
            let rep_code = u64::from_le_bytes(take(8)?.try_into().ok()?);
            let orbit_size = u64::from_le_bytes(take(8)?.try_into().ok()?);
            classes.push(OrbitClass { rep_code, orbit_size });
        }
        let n_codes = u64::from_le_bytes(take(8)?.try_into().ok()?) as usize;
        let mut class_of = Vec::with_capacity(n_codes);
        for _ in 0..n_codes {
            class_of.push(u32::from_le_bytes(take(4)?.try_into().ok()?));
        }
        if !rest.is_empty() {
            return None;
        }
        Some(Self { dims: dims.to_vec(), class_of, classes, group_order })
    }
}

fn act(shape: &Shape, obj: &Obj, g: &Generator, f: Fq) -> Obj {
    let mats = shape
        .maps
        .iter()
        .zip(&obj.mats)
        .map(|(&(s, t), m)| {
            let mut out = m.clone();
            if t == g.space {
                out = g.g.mul(&out, f);
            }
            if s == g.space {
                out = out.mul(&g.ginv, f);
            }
            out
        })
        .collect();
    Obj { dims: obj.dims.clone(), mats }
}
