//! Multigraded complexes with one differential per degree slot.
//!
//! Slots are numbered from 0. In `Mode::Iterated` the differentials commute,
//! in `Mode::KComplex` they anticommute. The simple (total) complex of an
//! iterated complex first twists `d_i` by `(-1)^{n_0 + … + n_{i-1}}`.

use crate::complex::{Complex, ComplexMap, Label};
use crate::error::{Error, Result};
use crate::linalg::{sign, Matrix};
use std::borrow::Cow;
use std::collections::BTreeMap;

pub type MultiDegree = Vec<i32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Iterated,
    KComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedComplex {
    arity: usize,
    mode: Mode,
    dims: BTreeMap<MultiDegree, usize>,
    /// `diffs[i][m]` maps multidegree `m` to `m + e_i`.
    diffs: Vec<BTreeMap<MultiDegree, Matrix>>,
    labels: Option<BTreeMap<MultiDegree, Vec<Label>>>,
}

fn bump(m: &[i32], i: usize, by: i32) -> MultiDegree {
    let mut v = m.to_vec();
    v[i] += by;
    v
}

impl IteratedComplex {
    /// Validates shapes, `d_i² = 0`, and the (anti)commutation law for the mode.
    pub fn new(arity: usize, mode: Mode, dims: BTreeMap<MultiDegree, usize>, diffs: Vec<BTreeMap<MultiDegree, Matrix>>) -> Result<Self> {
        let c = Self::build(arity, mode, dims, diffs)?;
        c.check_laws()?;
        Ok(c)
    }

    fn build(arity: usize, mode: Mode, dims: BTreeMap<MultiDegree, usize>, diffs: Vec<BTreeMap<MultiDegree, Matrix>>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::pre("arity must be positive"));
        }
        if diffs.len() != arity {
            return Err(Error::input(format!("expected {arity} differential families, got {}", diffs.len())));
        }
        let dims: BTreeMap<MultiDegree, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        if dims.keys().any(|m| m.len() != arity) {
            return Err(Error::input("multidegree length differs from arity"));
        }
        let mut kept = vec![BTreeMap::new(); arity];
        for (i, fam) in diffs.into_iter().enumerate() {
            for (m, mat) in fam {
                let t = bump(&m, i, 1);
                let (r, c) = (*dims.get(&t).unwrap_or(&0), *dims.get(&m).unwrap_or(&0));
                if mat.shape() != (r, c) {
                    return Err(Error::invariant("differential shape", format!("slot {i}, multidegree {m:?}")));
                }
                if r > 0 && c > 0 && !mat.is_zero() {
                    kept[i].insert(m, mat);
                }
            }
        }
        Ok(IteratedComplex { arity, mode, dims, diffs: kept, labels: None })
    }

    fn check_laws(&self) -> Result<()> {
        for m in self.dims.keys() {
            for i in 0..self.arity {
                let di = self.diff(i, m);
                let mi = bump(m, i, 1);
                if !self.diff(i, &mi).mul(&di).is_zero() {
                    return Err(Error::invariant("d_i∘d_i = 0", format!("slot {i}, multidegree {m:?}")));
                }
                for j in (i + 1)..self.arity {
                    let mj = bump(m, j, 1);
                    let lhs = self.diff(j, &mi).mul(&di);
                    let rhs = self.diff(i, &mj).mul(&self.diff(j, m));
                    let ok = match self.mode {
                        Mode::Iterated => lhs == rhs,
                        Mode::KComplex => lhs == rhs.neg(),
                    };
                    if !ok {
                        let law = if self.mode == Mode::Iterated { "d_i d_j = d_j d_i" } else { "d_i d_j = -d_j d_i" };
                        return Err(Error::invariant(law, format!("slots {i},{j}, multidegree {m:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The arity-one complex `C`.
    pub fn from_complex(c: &Complex) -> Self {
        let dims = (c.lo()..=c.hi()).map(|n| (vec![n], c.dim(n))).collect();
        let diffs = vec![(c.lo()..c.hi()).map(|n| (vec![n], c.diff(n).into_owned())).collect()];
        let mut out = Self::build(1, Mode::Iterated, dims, diffs).expect("valid complex");
        if c.has_labels() {
            out.labels = Some((c.lo()..=c.hi()).map(|n| (vec![n], c.labels(n).unwrap().to_vec())).filter(|(_, l)| !l.is_empty()).collect());
        }
        out
    }

    /// A morphism `f: A → B` as the 2-iterated complex with `(0,q) = A^q`, `(1,q) = B^q`,
    /// first differential `f`, second differentials `d_A`, `d_B`.
    pub fn from_map(f: &ComplexMap) -> Self {
        let (a, b) = (f.source(), f.target());
        let mut dims = BTreeMap::new();
        for n in a.lo()..=a.hi() {
            dims.insert(vec![0, n], a.dim(n));
        }
        for n in b.lo()..=b.hi() {
            dims.insert(vec![1, n], b.dim(n));
        }
        let mut d0 = BTreeMap::new();
        for n in f.degrees() {
            d0.insert(vec![0, n], f.map(n).into_owned());
        }
        let mut d1 = BTreeMap::new();
        for n in a.lo()..a.hi() {
            d1.insert(vec![0, n], a.diff(n).into_owned());
        }
        for n in b.lo()..b.hi() {
            d1.insert(vec![1, n], b.diff(n).into_owned());
        }
        let mut out = Self::build(2, Mode::Iterated, dims, vec![d0, d1]).expect("morphism encoding");
        if a.has_labels() && b.has_labels() {
            let mut l = BTreeMap::new();
            for n in a.lo()..=a.hi() {
                l.insert(vec![0, n], a.labels(n).unwrap().to_vec());
            }
            for n in b.lo()..=b.hi() {
                l.insert(vec![1, n], b.labels(n).unwrap().to_vec());
            }
            l.retain(|_, v: &mut Vec<Label>| !v.is_empty());
            out.labels = Some(l);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self, m: &[i32]) -> usize {
        *self.dims.get(m).unwrap_or(&0)
    }

    pub fn multidegrees(&self) -> impl Iterator<Item = &MultiDegree> {
        self.dims.keys()
    }

    pub fn diff(&self, i: usize, m: &[i32]) -> Cow<'_, Matrix> {
        match self.diffs[i].get(m) {
            Some(x) => Cow::Borrowed(x),
            None => Cow::Owned(Matrix::zeros(self.dim(&bump(m, i, 1)), self.dim(m))),
        }
    }

    pub fn labels(&self, m: &[i32]) -> Option<&[Label]> {
        self.labels.as_ref().map(|l| l.get(m).map(|v| v.as_slice()).unwrap_or(&[]))
    }

    pub fn with_labels(mut self, labels: BTreeMap<MultiDegree, Vec<Label>>) -> Result<Self> {
        for (m, d) in &self.dims {
            if labels.get(m).map(|l| l.len()) != Some(*d) {
                return Err(Error::input(format!("labels missing at {m:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn rescaled(&self, mode: Mode, s: impl Fn(usize, &[i32]) -> i64) -> Self {
        let diffs =
            self.diffs.iter().enumerate().map(|(i, fam)| fam.iter().map(|(m, d)| (m.clone(), d.scale(&sign(s(i, m))))).collect()).collect();
        IteratedComplex { arity: self.arity, mode, dims: self.dims.clone(), diffs, labels: self.labels.clone() }
    }

    fn twist_exponent(i: usize, m: &[i32]) -> i64 {
        m[..i].iter().map(|&x| x as i64).sum()
    }

    /// The functor `C_k`: `d_i ↦ (-1)^{n_0+…+n_{i-1}} d_i`.
    pub fn to_kcomplex(&self) -> Result<Self> {
        if self.mode != Mode::Iterated {
            return Err(Error::pre("to_kcomplex expects an iterated complex"));
        }
        let out = self.rescaled(Mode::KComplex, Self::twist_exponent);
        out.check_laws()?;
        Ok(out)
    }

    /// Inverse of `to_kcomplex`.
    pub fn from_kcomplex(&self) -> Result<Self> {
        if self.mode != Mode::KComplex {
            return Err(Error::pre("from_kcomplex expects a k-complex"));
        }
        let out = self.rescaled(Mode::Iterated, Self::twist_exponent);
        out.check_laws()?;
        Ok(out)
    }

    /// Total degree of a multidegree.
    fn total(m: &[i32]) -> i32 {
        m.iter().sum()
    }

    /// Multidegrees of total degree `n` in lexicographic order, with offsets in the simple complex.
    pub fn simple_layout(&self, n: i32) -> Vec<(MultiDegree, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for (m, d) in &self.dims {
            if Self::total(m) == n {
                out.push((m.clone(), off));
                off += d;
            }
        }
        out
    }

    pub fn simple_offset(&self, m: &[i32]) -> usize {
        let n = Self::total(m);
        self.simple_layout(n).into_iter().find(|(k, _)| k.as_slice() == m).map(|(_, o)| o).unwrap_or(0)
    }

    /// The simple complex `s(A)`; for iterated mode this is `s(C_k A)`.
    pub fn simple(&self) -> Complex {
        if self.dims.is_empty() {
            return Complex::zero();
        }
        let k = match self.mode {
            Mode::Iterated => self.rescaled(Mode::KComplex, Self::twist_exponent),
            Mode::KComplex => self.clone(),
        };
        let totals: Vec<i32> = k.dims.keys().map(|m| Self::total(m)).collect();
        let lo = *totals.iter().min().unwrap();
        let hi = *totals.iter().max().unwrap();
        let layouts: BTreeMap<i32, Vec<(MultiDegree, usize)>> = (lo..=hi + 1).map(|n| (n, k.simple_layout(n))).collect();
        let dimn = |n: i32| -> usize { layouts[&n].iter().map(|(m, _)| k.dim(m)).sum() };
        let dims: Vec<usize> = (lo..=hi).map(dimn).collect();
        let diffs: Vec<Matrix> = (lo..hi)
            .map(|n| {
                let mut mat = Matrix::zeros(dimn(n + 1), dimn(n));
                let target: BTreeMap<&MultiDegree, usize> = layouts[&(n + 1)].iter().map(|(m, o)| (m, *o)).collect();
                for (m, off) in &layouts[&n] {
                    for i in 0..k.arity {
                        let t = bump(m, i, 1);
                        if let (Some(d), Some(&to)) = (k.diffs[i].get(m), target.get(&t)) {
                            mat.add_block(to, *off, d);
                        }
                    }
                }
                mat
            })
            .collect();
        let c = Complex::new(lo, dims, diffs).expect("simple complex squares to zero");
        match &self.labels {
            Some(l) => {
                let lab = (c.lo()..=c.hi())
                    .map(|n| layouts[&n].iter().flat_map(|(m, _)| l.get(m).cloned().unwrap_or_default()).collect())
                    .collect();
                c.with_labels(lab).expect("labels match")
            }
            None => c,
        }
    }

    /// Merges slots `j` and `j+1`; the merged differential is `d_j + (-1)^{n_j} d_{j+1}`.
    /// Summands of a merged multidegree are ordered by `n_j` ascending.
    pub fn partial_simple(&self, j: usize) -> Result<Self> {
        if self.mode != Mode::Iterated {
            return Err(Error::pre("partial simple expects an iterated complex"));
        }
        if self.arity < 2 || j + 1 >= self.arity {
            return Err(Error::pre(format!("cannot merge slots {j},{} of an arity-{} complex", j + 1, self.arity)));
        }
        let merge = |m: &[i32]| -> MultiDegree {
            let mut v = m[..j].to_vec();
            v.push(m[j] + m[j + 1]);
            v.extend_from_slice(&m[j + 2..]);
            v
        };
        // summands of each merged multidegree, in lexicographic order of the original
        let mut parts: BTreeMap<MultiDegree, Vec<(MultiDegree, usize)>> = BTreeMap::new();
        for m in self.dims.keys() {
            parts.entry(merge(m)).or_default();
        }
        for m in self.dims.keys() {
            let key = merge(m);
            let off: usize = parts[&key].iter().map(|(x, _)| self.dim(x)).sum();
            parts.get_mut(&key).unwrap().push((m.clone(), off));
        }
        for v in parts.values_mut() {
            v.sort();
            let mut off = 0;
            for e in v.iter_mut() {
                e.1 = off;
                off += self.dim(&e.0);
            }
        }
        let dims: BTreeMap<MultiDegree, usize> = parts.iter().map(|(k, v)| (k.clone(), v.iter().map(|(m, _)| self.dim(m)).sum())).collect();
        let arity = self.arity - 1;
        let mut diffs = vec![BTreeMap::new(); arity];
        for (key, summands) in &parts {
            for slot in 0..arity {
                let tkey = bump(key, slot, 1);
                let Some(tparts) = parts.get(&tkey) else {
                    continue;
                };
                let toff: BTreeMap<&MultiDegree, usize> = tparts.iter().map(|(m, o)| (m, *o)).collect();
                let mut mat = Matrix::zeros(dims[&tkey], dims[key]);
                for (m, off) in summands {
                    let contributions: Vec<(usize, i64)> = if slot < j {
                        vec![(slot, 1)]
                    } else if slot == j {
                        vec![(j, 1), (j + 1, if m[j].rem_euclid(2) == 0 { 1 } else { -1 })]
                    } else {
                        vec![(slot + 1, 1)]
                    };
                    for (i, s) in contributions {
                        let t = bump(m, i, 1);
                        if let (Some(d), Some(&to)) = (self.diffs[i].get(m), toff.get(&t)) {
                            mat.add_block(to, *off, &d.scale(&crate::linalg::q(s)));
                        }
                    }
                }
                diffs[slot].insert(key.clone(), mat);
            }
        }
        let mut out = Self::new(arity, Mode::Iterated, dims, diffs)?;
        if let Some(l) = &self.labels {
            out.labels = Some(
                parts
                    .iter()
                    .map(|(k, v)| (k.clone(), v.iter().flat_map(|(m, _)| l.get(m).cloned().unwrap_or_default()).collect()))
                    .collect(),
            );
        }
        Ok(out)
    }

    /// `T_{i,i+1}`: swaps slots `i` and `i+1`. Also returns the isomorphism
    /// `s(A) → s(T A)`, `x ↦ (-1)^{n_i n_{i+1}} x`.
    pub fn transpose(&self, i: usize) -> Result<(Self, ComplexMap)> {
        if i + 1 >= self.arity {
            return Err(Error::pre(format!("slot {i} out of range for arity {}", self.arity)));
        }
        let swap = |m: &[i32]| -> MultiDegree {
            let mut v = m.to_vec();
            v.swap(i, i + 1);
            v
        };
        let dims = self.dims.iter().map(|(m, d)| (swap(m), *d)).collect();
        let mut diffs = vec![BTreeMap::new(); self.arity];
        for (s, fam) in self.diffs.iter().enumerate() {
            let slot = if s == i {
                i + 1
            } else if s == i + 1 {
                i
            } else {
                s
            };
            for (m, d) in fam {
                diffs[slot].insert(swap(m), d.clone());
            }
        }
        let mut t = Self::new(self.arity, self.mode, dims, diffs)?;
        if let Some(l) = &self.labels {
            t.labels = Some(l.iter().map(|(m, v)| (swap(m), v.clone())).collect());
        }
        let src = self.simple();
        let tgt = t.simple();
        let mut maps = BTreeMap::new();
        for n in src.lo()..=src.hi() {
            let mut mat = Matrix::zeros(tgt.dim(n), src.dim(n));
            let tl: BTreeMap<MultiDegree, usize> = t.simple_layout(n).into_iter().collect();
            for (m, off) in self.simple_layout(n) {
                let s = sign(m[i] as i64 * m[i + 1] as i64);
                mat.add_block(tl[&swap(&m)], off, &Matrix::scalar(self.dim(&m), &s));
            }
            maps.insert(n, mat);
        }
        let iso = ComplexMap::new(src, tgt, maps)?;
        Ok((t, iso))
    }

    /// `A⊠B`: multidegrees concatenate, `d_i ⊗ Id` on the first slots and `Id ⊗ d_j` on the rest.
    pub fn external_product(&self, other: &Self) -> Result<Self> {
        if self.mode != Mode::Iterated || other.mode != Mode::Iterated {
            return Err(Error::pre("external product expects iterated complexes"));
        }
        let (k, l) = (self.arity, other.arity);
        let mut dims = BTreeMap::new();
        for (m, d) in &self.dims {
            for (n, e) in &other.dims {
                let mut key = m.clone();
                key.extend_from_slice(n);
                dims.insert(key, d * e);
            }
        }
        let mut diffs = vec![BTreeMap::new(); k + l];
        for (m, d) in &self.dims {
            for (n, e) in &other.dims {
                let mut key = m.clone();
                key.extend_from_slice(n);
                for i in 0..k {
                    let t = self.diff(i, m);
                    if t.rows() > 0 {
                        diffs[i].insert(key.clone(), t.kron(&Matrix::identity(*e)));
                    }
                }
                for j in 0..l {
                    let t = other.diff(j, n);
                    if t.rows() > 0 {
                        diffs[k + j].insert(key.clone(), Matrix::identity(*d).kron(&t));
                    }
                }
            }
        }
        let mut out = Self::new(k + l, Mode::Iterated, dims, diffs)?;
        if let (Some(la), Some(lb)) = (&self.labels, &other.labels) {
            let mut lab = BTreeMap::new();
            for (m, xs) in la {
                for (n, ys) in lb {
                    let mut key = m.clone();
                    key.extend_from_slice(n);
                    lab.insert(key, xs.iter().flat_map(|x| ys.iter().map(move |y| x.join(y))).collect());
                }
            }
            out.labels = Some(lab);
        }
        Ok(out)
    }

    /// Tensor product of 2-iterated complexes: `s_{0,1} s_{2,3} T_{1,2}(A⊠B)`.
    pub fn tensor2(&self, other: &Self) -> Result<Self> {
        if self.arity != 2 || other.arity != 2 {
            return Err(Error::pre("tensor2 expects two 2-iterated complexes"));
        }
        let e = self.external_product(other)?;
        let (t, _) = e.transpose(1)?;
        t.partial_simple(2)?.partial_simple(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn square() -> IteratedComplex {
        // ℚ at (0,0),(1,0),(0,1),(1,1), all maps identity: commutes.
        let mut dims = BTreeMap::new();
        for m in [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]] {
            dims.insert(m, 1);
        }
        let id = Matrix::identity(1);
        let d0 = [(vec![0, 0], id.clone()), (vec![0, 1], id.clone())].into_iter().collect();
        let d1 = [(vec![0, 0], id.clone()), (vec![1, 0], id.clone())].into_iter().collect();
        IteratedComplex::new(2, Mode::Iterated, dims, vec![d0, d1]).unwrap()
    }

    #[test]
    fn kcomplex_twist_sign() {
        let k = square().to_kcomplex().unwrap();
        assert_eq!(k.diff(1, &[1, 0]).get(0, 0), &q(-1));
        assert_eq!(k.diff(1, &[0, 0]).get(0, 0), &q(1));
        assert_eq!(k.from_kcomplex().unwrap(), square());
    }

    #[test]
    fn rejects_noncommuting() {
        let mut dims = BTreeMap::new();
        for m in [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]] {
            dims.insert(m, 1);
        }
        let id = Matrix::identity(1);
        let d0 = [(vec![0, 0], id.clone()), (vec![0, 1], id.neg())].into_iter().collect();
        let d1 = [(vec![0, 0], id.clone()), (vec![1, 0], id.clone())].into_iter().collect();
        assert!(IteratedComplex::new(2, Mode::Iterated, dims, vec![d0, d1]).is_err());
    }

    #[test]
    fn arity_one_simple_is_identity() {
        let c = Complex::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        assert_eq!(IteratedComplex::from_complex(&c).simple(), c);
    }

    #[test]
    fn transpose_sign_on_bidegree_one_one() {
        let (_, iso) = square().transpose(0).unwrap();
        assert_eq!(iso.map(2).get(0, 0), &q(-1));
        assert_eq!(iso.map(0).get(0, 0), &q(1));
    }

    #[test]
    fn partial_simple_of_arity_two_is_simple() {
        let p = square().partial_simple(0).unwrap();
        assert_eq!(p.arity(), 1);
        assert_eq!(p.simple(), square().simple());
    }

    #[test]
    fn point_external_product() {
        let pt = IteratedComplex::from_complex(&Complex::concentrated(0, 1));
        let e = pt.external_product(&pt).unwrap();
        assert_eq!(e.dim(&[0, 0]), 1);
        assert_eq!(e.simple(), Complex::concentrated(0, 1));
    }
}
