//! Finite collections of `F_q`-vector spaces joined by linear maps subject to
//! quadratic relations. Quiver representations and Z/2-graded complexes of
//! representations are both instances of such a shape, so Hom spaces, extension
//! cocycles, subobjects and orbit tables are implemented once here.

mod orbit;

pub use orbit::{OrbitClass, OrbitTable};

use crate::ff::{subspaces, Fq, Mat};
use crate::quiver::Quiver;

/// One summand `coeff · M_outer ∘ M_inner` of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i8,
    pub outer: usize,
    pub inner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub spaces: usize,
    /// `(source space, target space)` of every map.
    pub maps: Vec<(usize, usize)>,
    /// Each relation asserts `Σ coeff · M_outer M_inner = 0`.
    pub relations: Vec<Vec<Term>>,
    /// Each group of maps must generate a nilpotent action.
    pub nil_groups: Vec<Vec<usize>>,
}

/// Concrete object: a dimension per space and a matrix per map
/// (`dims[tgt] × dims[src]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl Obj {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

impl Shape {
    /// Representations of `quiver`; nilpotent mode constrains the arrows jointly.
    pub fn representations(quiver: &Quiver, nilpotent: bool) -> Self {
        let maps: Vec<(usize, usize)> = quiver.arrows().iter().map(|a| (a.src, a.tgt)).collect();
        let nil_groups = if nilpotent { vec![(0..maps.len()).collect()] } else { vec![] };
        Self { spaces: quiver.n(), maps, relations: vec![], nil_groups }
    }

    /// Z/2-graded complexes of representations. Space `deg * n + i` is vertex `i`
    /// in degree `deg`; maps are the arrows in degree 0, the arrows in degree 1,
    /// then `d⁰` per vertex, then `d¹` per vertex.
    pub fn complexes(quiver: &Quiver, nilpotent: bool) -> Self {
        let n = quiver.n();
        let na = quiver.arrows().len();
        let mut maps = Vec::new();
        for deg in 0..2 {
            for a in quiver.arrows() {
                maps.push((deg * n + a.src, deg * n + a.tgt));
            }
        }
        for i in 0..n {
            maps.push((i, n + i));
        }
        for i in 0..n {
            maps.push((n + i, i));
        }
        let diff = |deg: usize, i: usize| 2 * na + deg * n + i;
        let mut relations = Vec::new();
        for deg in 0..2 {
            for (k, a) in quiver.arrows().iter().enumerate() {
                relations.push(vec![
                    Term { coeff: 1, outer: diff(deg, a.tgt), inner: deg * na + k },
                    Term { coeff: -1, outer: (1 - deg) * na + k, inner: diff(deg, a.src) },
                ]);
            }
        }
        for deg in 0..2 {
            for i in 0..n {
                relations.push(vec![Term { coeff: 1, outer: diff(1 - deg, i), inner: diff(deg, i) }]);
            }
        }
        let nil_groups =
            if nilpotent { vec![(0..na).collect(), (na..2 * na).collect()] } else { vec![] };
        Self { spaces: 2 * n, maps, relations, nil_groups }
    }

    pub fn zero_obj(&self, dims: &[usize]) -> Obj {
        assert_eq!(dims.len(), self.spaces);
        let mats = self.maps.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        Obj { dims: dims.to_vec(), mats }
    }

    /// Number of matrix entries for objects of the given dimensions.
    pub fn entries(&self, dims: &[usize]) -> usize {
        self.maps.iter().map(|&(s, t)| dims[s] * dims[t]).sum()
    }

    pub fn encode(&self, obj: &Obj, q: u32) -> u64 {
        let mut code = 0u64;
        let mut place = 1u64;
        for m in &obj.mats {
            for &x in m.data() {
                code += x as u64 * place;
                place *= q as u64;
            }
        }
        code
    }

    pub fn decode(&self, dims: &[usize], mut code: u64, q: u32) -> Obj {
        let mut obj = self.zero_obj(dims);
        for m in &mut obj.mats {
            for x in m.data_mut() {
                *x = (code % q as u64) as u8;
                code /= q as u64;
            }
        }
        obj
    }

    pub fn satisfies_relations(&self, obj: &Obj, f: Fq) -> bool {
        self.relations.iter().all(|rel| {
            let (s, _) = self.maps[rel[0].inner];
            let (_, t) = self.maps[rel[0].outer];
            let mut acc = Mat::zeros(obj.dims[t], obj.dims[s]);
            for term in rel {
                let prod = obj.mats[term.outer].mul(&obj.mats[term.inner], f);
                acc = if term.coeff >= 0 { acc.add(&prod, f) } else { acc.sub(&prod, f) };
            }
            acc.is_zero()
        })
    }

    /// Iterate `V ↦ Σ_m M_m(V)` from the whole space; nilpotent iff it reaches zero.
    pub fn is_nilpotent(&self, obj: &Obj, f: Fq) -> bool {
        self.nil_groups.iter().all(|group| {
            let mut current: Vec<Mat> = obj.dims.iter().map(|&d| Mat::identity(d)).collect();
            let mut total: usize = obj.total_dim();
            loop {
                let mut next: Vec<Mat> = obj.dims.iter().map(|&d| Mat::zeros(d, 0)).collect();
                for &m in group {
                    let (s, t) = self.maps[m];
                    let img = obj.mats[m].mul(&current[s], f);
                    next[t] = next[t].hstack(&img);
                }
                let next: Vec<Mat> = next.iter().map(|b| b.column_basis(f)).collect();
                let new_total: usize = next.iter().map(Mat::cols).sum();
                if new_total == 0 {
                    return true;
                }
                if new_total == total {
                    return false;
                }
                total = new_total;
                current = next;
            }
        })
    }

    pub fn is_member(&self, obj: &Obj, f: Fq) -> bool {
        self.satisfies_relations(obj, f) && self.is_nilpotent(obj, f)
    }

    pub fn direct_sum(&self, a: &Obj, b: &Obj) -> Obj {
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let mats = a.mats.iter().zip(&b.mats).map(|(x, y)| x.direct_sum(y)).collect();
        Obj { dims, mats }
    }

    fn block_offsets(&self, rows: &[usize], cols: &[usize], per_map: bool) -> (Vec<usize>, usize) {
        let mut offs = Vec::new();
        let mut acc = 0;
        if per_map {
            for &(s, t) in &self.maps {
                offs.push(acc);
                acc += rows[t] * cols[s];
            }
        } else {
            for s in 0..self.spaces {
                offs.push(acc);
                acc += rows[s] * cols[s];
            }
        }
        (offs, acc)
    }

    /// Linear equations whose solutions are the morphisms `x → y`
    /// (one unknown block `y_s × x_s` per space).
    fn morphism_equations(&self, x: &Obj, y: &Obj, f: Fq) -> (Mat, usize) {
        let (offs, nvars) = self.block_offsets(&y.dims, &x.dims, false);
        let var = |s: usize, r: usize, c: usize| offs[s] + r * x.dims[s] + c;
        let mut rows: Vec<Vec<u8>> = Vec::new();
        let mut push = |row: Vec<u8>| {
            if row.iter().any(|&e| e != 0) {
                rows.push(row);
            }
        };
        for (m, &(s, t)) in self.maps.iter().enumerate() {
            for r in 0..y.dims[t] {
                for c in 0..x.dims[s] {
                    let mut row = vec![0u8; nvars];
                    for k in 0..y.dims[s] {
                        let idx = var(s, k, c);
                        row[idx] = f.add(row[idx], y.mats[m].get(r, k));
                    }
                    for k in 0..x.dims[t] {
                        let idx = var(t, r, k);
                        row[idx] = f.sub(row[idx], x.mats[m].get(k, c));
                    }
                    push(row);
                }
            }
        }
        let n = rows.len();
        (Mat::from_rows(n, nvars, &rows), nvars)
    }

    /// Basis of `Hom(x, y)`, flattened one morphism per column.
    pub fn hom_space(&self, x: &Obj, y: &Obj, f: Fq) -> Mat {
        let (eqs, _) = self.morphism_equations(x, y, f);
        eqs.nullspace(f)
    }

    pub fn hom_dim(&self, x: &Obj, y: &Obj, f: Fq) -> usize {
        self.hom_space(x, y, f).cols()
    }

    /// Split a flattened morphism vector into per-space matrices.
    pub fn unflatten_morphism(&self, x: &Obj, y: &Obj, v: &[u8]) -> Vec<Mat> {
        let (offs, _) = self.block_offsets(&y.dims, &x.dims, false);
        (0..self.spaces)
            .map(|s| {
                let len = y.dims[s] * x.dims[s];
                Mat::from_data(y.dims[s], x.dims[s], v[offs[s]..offs[s] + len].to_vec())
            })
            .collect()
    }

    /// Equations for extension cocycles: one block `ξ_m : L_src → M_tgt` per map,
    /// making `[[M_m, ξ_m], [0, L_m]]` satisfy every relation.
    fn cocycle_equations(&self, l: &Obj, m: &Obj, f: Fq) -> (Mat, usize) {
        let (offs, nvars) = self.block_offsets(&m.dims, &l.dims, true);
        let var = |map: usize, r: usize, c: usize| offs[map] + r * l.dims[self.maps[map].0] + c;
        let p = f.q() as u8;
        let mut rows = Vec::new();
        for rel in &self.relations {
            let (s, _) = self.maps[rel[0].inner];
            let (_, t) = self.maps[rel[0].outer];
            for r in 0..m.dims[t] {
                for c in 0..l.dims[s] {
                    let mut row = vec![0u8; nvars];
                    for term in rel {
                        let sign = if term.coeff >= 0 { 1 } else { p - 1 };
                        let (_, u) = self.maps[term.inner];
                        for k in 0..m.dims[u] {
                            let e = f.mul(sign, m.mats[term.outer].get(r, k));
                            let idx = var(term.inner, k, c);
                            row[idx] = f.add(row[idx], e);
                        }
                        for k in 0..l.dims[u] {
                            let e = f.mul(sign, l.mats[term.inner].get(k, c));
                            let idx = var(term.outer, r, k);
                            row[idx] = f.add(row[idx], e);
                        }
                    }
                    if row.iter().any(|&e| e != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let n = rows.len();
        (Mat::from_rows(n, nvars, &rows), nvars)
    }

    /// Basis of the cocycle space `Z(l, m)`, flattened one cocycle per column.
    pub fn cocycle_space(&self, l: &Obj, m: &Obj, f: Fq) -> Mat {
        let (eqs, _) = self.cocycle_equations(l, m, f);
        eqs.nullspace(f)
    }

    /// `Σ_s dim L_s · dim M_s`, the dimension of the space of coboundary parameters.
    pub fn cochain_dim(&self, l: &Obj, m: &Obj) -> usize {
        l.dims.iter().zip(&m.dims).map(|(a, b)| a * b).sum()
    }

    /// `dim Ext¹(l, m) = dim Z − (dim C⁰ − dim Hom(l, m))`.
    pub fn ext1_dim(&self, l: &Obj, m: &Obj, f: Fq) -> usize {
        let z = self.cocycle_space(l, m, f).cols();
        let b = self.cochain_dim(l, m) - self.hom_dim(l, m, f);
        z - b
    }

    /// Middle object of the extension with cocycle `xi` (flattened);
    /// the basis of `m` comes first.
    pub fn extension(&self, l: &Obj, m: &Obj, xi: &[u8]) -> Obj {
        let (offs, _) = self.block_offsets(&m.dims, &l.dims, true);
        let dims: Vec<usize> = m.dims.iter().zip(&l.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let mut out = Mat::zeros(dims[t], dims[s]);
                out.set_block(0, 0, &m.mats[k]);
                out.set_block(m.dims[t], m.dims[s], &l.mats[k]);
                let len = m.dims[t] * l.dims[s];
                let block = Mat::from_data(m.dims[t], l.dims[s], xi[offs[k]..offs[k] + len].to_vec());
                out.set_block(0, m.dims[s], &block);
                out
            })
            .collect();
        Obj { dims, mats }
    }

    pub fn is_morphism(&self, x: &Obj, y: &Obj, phi: &[Mat], f: Fq) -> bool {
        self.maps.iter().enumerate().all(|(k, &(s, t))| {
            y.mats[k].mul(&phi[s], f) == phi[t].mul(&x.mats[k], f)
        })
    }

    /// Transport `obj` along the isomorphism `g` (per space), i.e. `g_t X_m g_s⁻¹`.
    pub fn transport(&self, obj: &Obj, g: &[Mat], f: Fq) -> Obj {
        let ginv: Vec<Mat> = g.iter().map(|m| m.inverse(f).expect("invertible")).collect();
        let mats = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| g[t].mul(&obj.mats[k], f).mul(&ginv[s], f))
            .collect();
        Obj { dims: obj.dims.clone(), mats }
    }

    /// Whether the per-space column spans `u` are stable under every map.
    pub fn is_invariant(&self, obj: &Obj, u: &[Mat], f: Fq) -> bool {
        self.maps.iter().enumerate().all(|(k, &(s, t))| {
            if u[s].cols() == 0 || u[t].rows() == 0 {
                return true;
            }
            let img = obj.mats[k].mul(&u[s], f);
            u[t].hstack(&img).rank(f) == u[t].cols()
        })
    }

    /// All subobjects with the given dimensions, as per-space basis matrices.
    pub fn subobjects(&self, obj: &Obj, sub_dims: &[usize], f: Fq) -> Vec<Vec<Mat>> {
        let choices: Vec<Vec<Mat>> =
            (0..self.spaces).map(|s| subspaces(obj.dims[s], sub_dims[s], f)).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.spaces];
        if choices.iter().any(|c| c.is_empty()) {
            return out;
        }
        loop {
            let pick: Vec<Mat> = (0..self.spaces).map(|s| choices[s][idx[s]].clone()).collect();
            if self.is_invariant(obj, &pick, f) {
                out.push(pick);
            }
            let mut pos = 0;
            loop {
                if pos == self.spaces {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// The subquotient `outer / inner` of `obj`, where `inner ⊆ outer` are
    /// invariant per-space subspaces given by spanning columns.
    pub fn subquotient(&self, obj: &Obj, outer: &[Mat], inner: &[Mat], f: Fq) -> Obj {
        let mut bases = Vec::new();
        let mut dims = Vec::new();
        for s in 0..self.spaces {
            let inner_b = inner[s].column_basis(f);
            let k = inner_b.cols();
            let mut basis = inner_b;
            for c in 0..outer[s].cols() {
                let col = outer[s].submatrix(0, outer[s].rows(), c, c + 1);
                let cand = basis.hstack(&col);
                if cand.rank(f) == cand.cols() {
                    basis = cand;
                }
            }
            dims.push(basis.cols() - k);
            bases.push((basis, k));
        }
        let mats = self
            .maps
            .iter()
            .enumerate()
            .map(|(m, &(s, t))| {
                let (bs, ks) = &bases[s];
                let (bt, kt) = &bases[t];
                let w = bs.submatrix(0, bs.rows(), *ks, bs.cols());
                let img = obj.mats[m].mul(&w, f);
                let coords = bt.solve_left_full_rank(&img, f).expect("subspace is invariant");
                coords.submatrix(*kt, bt.cols(), 0, coords.cols())
            })
            .collect();
        Obj { dims, mats }
    }

    pub fn full_spaces(&self, obj: &Obj) -> Vec<Mat> {
        obj.dims.iter().map(|&d| Mat::identity(d)).collect()
    }

    pub fn zero_spaces(&self, obj: &Obj) -> Vec<Mat> {
        obj.dims.iter().map(|&d| Mat::zeros(d, 0)).collect()
    }
}
