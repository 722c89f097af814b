//! Quivers with loops, Borcherds-Cartan data, Euler forms and reflections.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HallError, Result};

/// Integer vector indexed by the vertices; used for dimension vectors, root
/// lattice elements and Grothendieck-group classes alike.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVec(pub Vec<i64>);

impl DimVec {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The simple root at vertex `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        Self(dims.iter().map(|&d| d as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Coordinates as dimensions, if all are nonnegative.
    pub fn to_dims(&self) -> Option<Vec<usize>> {
        self.0.iter().map(|&x| usize::try_from(x).ok()).collect()
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &DimVec {
    type Output = DimVec;
    fn add(self, rhs: &DimVec) -> DimVec {
        assert_eq!(self.len(), rhs.len());
        DimVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVec {
    type Output = DimVec;
    fn sub(self, rhs: &DimVec) -> DimVec {
        assert_eq!(self.len(), rhs.len());
        DimVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVec {
    type Output = DimVec;
    fn neg(self) -> DimVec {
        DimVec(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
}

impl Quiver {
    /// Build a quiver from vertex ids and arrows given by (source, target) ids.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (k, v) in vertices.iter().enumerate() {
            if vertices[..k].contains(v) {
                return Err(HallError::InvalidQuiver(format!("duplicate vertex '{v}'")));
            }
        }
        let find = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| HallError::InvalidQuiver(format!("unknown vertex '{name}'")))
        };
        let arrows = arrows
            .iter()
            .map(|(s, t)| Ok(Arrow { src: find(s.as_ref())?, tgt: find(t.as_ref())? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices, arrows })
    }

    pub fn from_indices(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = vertices.len();
        if arrows.iter().any(|a| a.src >= n || a.tgt >= n) {
            return Err(HallError::InvalidQuiver("arrow endpoint out of range".into()));
        }
        let names: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = arrows.iter().map(|a| (names[a.src], names[a.tgt])).collect();
        Self::new(&names, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuiverJson =
            serde_json::from_str(text).map_err(|e| HallError::Parse(format!("quiver JSON: {e}")))?;
        let pairs: Vec<(String, String)> = raw.arrows.into_iter().map(|a| (a.src, a.tgt)).collect();
        Self::new(&raw.vertices, &pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("quiver serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson { src: self.vertices[a.src].clone(), tgt: self.vertices[a.tgt].clone() })
                .collect(),
        };
        serde_json::to_value(raw).expect("quiver serializes")
    }

    /// Short content hash of the canonical JSON form, used in class ids.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| HallError::InvalidQuiver(format!("unknown vertex '{name}'")))
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    /// Number of loops at `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows.iter().filter(|a| a.src == i && a.tgt == i).count()
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrows_between(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.src == i && a.tgt == j).count()
    }

    pub fn is_sink(&self, l: usize) -> bool {
        self.arrows.iter().all(|a| a.src != l)
    }

    pub fn is_source(&self, l: usize) -> bool {
        self.arrows.iter().all(|a| a.tgt != l)
    }

    /// Reverse every arrow incident to `l`; loops at `l` are left alone.
    pub fn reflect(&self, l: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.is_loop() || (a.src != l && a.tgt != l) {
                    *a
                } else {
                    Arrow { src: a.tgt, tgt: a.src }
                }
            })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Euler form `Σ x_i y_i − Σ_a x_{src a} y_{tgt a}`.
    pub fn euler(&self, x: &DimVec, y: &DimVec) -> i64 {
        let diag: i64 = x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum();
        let arrows: i64 = self.arrows.iter().map(|a| x.0[a.src] * y.0[a.tgt]).sum();
        diag - arrows
    }

    pub fn sym(&self, x: &DimVec, y: &DimVec) -> i64 {
        self.euler(x, y) + self.euler(y, x)
    }

    pub fn cartan(&self) -> CartanData {
        let n = self.n();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = if i == j {
                    2 - 2 * self.loops_at(i) as i64
                } else {
                    -(self.arrows_between(i, j) as i64) - self.arrows_between(j, i) as i64
                };
            }
        }
        CartanData { a }
    }
}

/// Symmetric Borcherds-Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub a: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.a[i][i] == 2
    }

    pub fn is_imaginary(&self, i: usize) -> bool {
        self.a[i][i] <= 0
    }

    /// Loop count recovered from the diagonal.
    pub fn loops(&self, i: usize) -> i64 {
        (2 - self.a[i][i]) / 2
    }

    /// `(x, y) = Σ a_ij x_i y_j`.
    pub fn pairing(&self, x: &DimVec, y: &DimVec) -> i64 {
        let mut s = 0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                s += self.a[i][j] * x.0[i] * y.0[j];
            }
        }
        s
    }

    /// Generator labels `(i, l)`: level 1 at real vertices, levels `1..=max_level` at imaginary ones.
    pub fn generator_indices(&self, max_level: u32) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            let top = if self.is_real(i) { 1 } else { max_level };
            for l in 1..=top {
                out.push((i, l));
            }
        }
        out
    }

    /// `s_i(x) = x − (α_i, x) α_i` at a real vertex.
    pub fn simple_reflection(&self, i: usize, x: &DimVec) -> Result<DimVec> {
        if !self.is_real(i) {
            return Err(HallError::NotReal(format!("vertex index {i}")));
        }
        let mut out = x.clone();
        let c: i64 = (0..self.n()).map(|j| self.a[i][j] * x.0[j]).sum();
        out.0[i] -= c;
        Ok(out)
    }
}

/// The five quivers used throughout the test suites.
pub mod examples {
    use super::Quiver;

    pub fn jordan() -> Quiver {
        Quiver::new(&["1"], &[("1", "1")]).expect("valid")
    }

    pub fn two_loops() -> Quiver {
        Quiver::new(&["1"], &[("1", "1"), ("1", "1")]).expect("valid")
    }

    pub fn a2() -> Quiver {
        Quiver::new(&["1", "2"], &[("1", "2")]).expect("valid")
    }

    pub fn kronecker() -> Quiver {
        Quiver::new(&["1", "2"], &[("1", "2"), ("1", "2")]).expect("valid")
    }

    /// Loop at vertex 1 and an arrow 1 → 2, so vertex 2 is a real sink.
    pub fn loop_arrow() -> Quiver {
        Quiver::new(&["1", "2"], &[("1", "1"), ("1", "2")]).expect("valid")
    }

    /// Two vertices and no arrows.
    pub fn disjoint2() -> Quiver {
        Quiver::new::<&str>(&["1", "2"], &[]).expect("valid")
    }

    pub fn all() -> Vec<(&'static str, Quiver)> {
        vec![
            ("jordan", jordan()),
            ("two-loops", two_loops()),
            ("a2", a2()),
            ("kronecker", kronecker()),
            ("loop-arrow", loop_arrow()),
        ]
    }
}
