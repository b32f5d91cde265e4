//! Bounded cochain complexes of finite-dimensional rational vector spaces.

use crate::error::{Error, Result};
use crate::linalg::{kron_vec, sign, zero_vec, Coordinates, Matrix, Q};
use num_traits::{One, Zero};
use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// One basis vector of an atomic space: which space, in which degree, which index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub space: u32,
    pub deg: i32,
    pub idx: usize,
}

/// A basis vector of a sum of tensor products of atomic spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub Vec<Atom>);

impl Label {
    pub fn atom(space: u32, deg: i32, idx: usize) -> Self {
        Label(vec![Atom { space, deg, idx }])
    }

    pub fn join(&self, other: &Label) -> Label {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Label(v)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| format!("s{}[{}]#{}", a.space, a.deg, a.idx)).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[i]` maps degree `lo + i` to `lo + i + 1`.
    diffs: Vec<Matrix>,
    labels: Option<Vec<Vec<Label>>>,
}

impl Complex {
    /// Builds a complex on degrees `lo..lo+dims.len()`; `diffs` holds the maps between consecutive degrees.
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() != dims.len().saturating_sub(1) {
            return Err(Error::input(format!(
                "expected {} differentials for {} degrees, got {}",
                dims.len().saturating_sub(1),
                dims.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::invariant("differential shape", format!("degree {}", lo + i as i32)));
            }
        }
        let c = Complex { lo, dims, diffs, labels: None };
        c.check_square_zero()?;
        Ok(c.trimmed())
    }

    /// Builds a complex from per-degree callbacks over `lo..=hi`.
    pub fn from_fn(lo: i32, hi: i32, dim: impl Fn(i32) -> usize, diff: impl Fn(i32) -> Matrix) -> Result<Self> {
        if hi < lo {
            return Ok(Complex::zero());
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs = (lo..hi).map(&diff).collect();
        Complex::new(lo, dims, diffs)
    }

    pub fn zero() -> Self {
        Complex { lo: 0, dims: vec![], diffs: vec![], labels: None }
    }

    /// `ℚ^dim` concentrated in one degree.
    pub fn concentrated(deg: i32, dim: usize) -> Self {
        Complex { lo: deg, dims: vec![dim], diffs: vec![], labels: None }.trimmed()
    }

    fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.diffs.len() {
            if !self.diffs[i].mul(&self.diffs[i - 1]).is_zero() {
                return Err(Error::invariant("d∘d = 0", format!("degree {}", self.lo + i as i32 - 1)));
            }
        }
        Ok(())
    }

    /// Drops zero-dimensional degrees at both ends.
    fn trimmed(mut self) -> Self {
        let first = self.dims.iter().position(|&d| d > 0);
        let Some(first) = first else {
            return Complex { labels: self.labels.map(|_| vec![]), ..Complex::zero() };
        };
        let last = self.dims.iter().rposition(|&d| d > 0).unwrap();
        if first == 0 && last + 1 == self.dims.len() {
            return self;
        }
        self.dims = self.dims[first..=last].to_vec();
        self.diffs = self.diffs[first..last].to_vec();
        if let Some(l) = self.labels.as_mut() {
            *l = l[first..=last].to_vec();
        }
        self.lo += first as i32;
        self
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The differential `C^n → C^{n+1}`.
    pub fn diff(&self, n: i32) -> Cow<'_, Matrix> {
        if n >= self.lo && n < self.hi() {
            Cow::Borrowed(&self.diffs[(n - self.lo) as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.dim(n + 1), self.dim(n)))
        }
    }

    pub fn d(&self, n: i32, v: &[Q]) -> Vec<Q> {
        self.diff(n).apply(v)
    }

    pub fn labels(&self, n: i32) -> Option<&[Label]> {
        let l = self.labels.as_ref()?;
        if n < self.lo || n > self.hi() {
            return Some(&[]);
        }
        Some(&l[(n - self.lo) as usize])
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn with_labels(mut self, labels: Vec<Vec<Label>>) -> Result<Self> {
        if labels.len() != self.dims.len() || labels.iter().zip(&self.dims).any(|(l, &d)| l.len() != d) {
            return Err(Error::input("label table does not match dimensions"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Gives every basis vector an atomic label in the named space.
    pub fn relabel(&self, space: u32) -> Complex {
        let labels = (self.lo..=self.hi()).map(|n| (0..self.dim(n)).map(|i| Label::atom(space, n, i)).collect()).collect();
        Complex { labels: Some(labels), ..self.clone() }
    }

    pub fn without_labels(&self) -> Complex {
        Complex { labels: None, ..self.clone() }
    }

    /// Index of a labelled basis vector in degree `n`.
    pub fn index_of(&self, n: i32, label: &Label) -> Option<usize> {
        self.labels(n)?.iter().position(|l| l == label)
    }

    pub fn label_index(&self, n: i32) -> BTreeMap<Label, usize> {
        self.labels(n).map(|ls| ls.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()).unwrap_or_default()
    }

    pub fn cohomology(&self, n: i32) -> CohomologySpace {
        CohomologySpace::new(self, n)
    }

    pub fn betti(&self) -> BTreeMap<i32, usize> {
        (self.lo..=self.hi()).map(|n| (n, self.cohomology(n).dim())).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64).sum()
    }

    pub fn cohomology_euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.cohomology(n).dim() as i64).sum()
    }

    /// Equality ignoring basis labels.
    pub fn same_underlying(&self, other: &Complex) -> bool {
        self.lo == other.lo && self.dims == other.dims && self.diffs == other.diffs
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..=self.hi()).all(|n| self.cohomology(n).dim() == 0)
    }

    /// `C[k]^n = C^{n+k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let s = sign(k as i64);
        Complex {
            lo: self.lo - k,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Stupid truncation: degrees below `p` replaced by zero.
    pub fn bete_truncation(&self, p: i32) -> Complex {
        if self.is_zero() || p <= self.lo {
            return self.clone();
        }
        if p > self.hi() {
            return Complex::zero();
        }
        let cut = (p - self.lo) as usize;
        Complex {
            lo: p,
            dims: self.dims[cut..].to_vec(),
            diffs: self.diffs[cut..].to_vec(),
            labels: self.labels.as_ref().map(|l| l[cut..].to_vec()),
        }
    }

    pub fn direct_sum(parts: &[&Complex]) -> Complex {
        let nonzero: Vec<&&Complex> = parts.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return Complex::zero();
        }
        let lo = nonzero.iter().map(|c| c.lo()).min().unwrap();
        let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
        let dims = (lo..=hi).map(|n| parts.iter().map(|c| c.dim(n)).sum()).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let blocks: Vec<Matrix> = parts.iter().map(|c| c.diff(n).into_owned()).collect();
                Matrix::block_diag(&blocks.iter().collect::<Vec<_>>())
            })
            .collect();
        let labels = if parts.iter().all(|c| c.has_labels()) {
            Some((lo..=hi).map(|n| parts.iter().flat_map(|c| c.labels(n).unwrap().to_vec()).collect()).collect())
        } else {
            None
        };
        Complex { lo, dims, diffs, labels }.trimmed()
    }
}

/// `H^n` with chosen representatives and a decision procedure for classes.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    degree: i32,
    ambient: usize,
    d_out: Matrix,
    cocycles: Matrix,
    coboundaries: Matrix,
    reps: Matrix,
    coords: Coordinates,
}

impl CohomologySpace {
    pub fn new(c: &Complex, n: i32) -> Self {
        let ambient = c.dim(n);
        let d_out = c.diff(n).into_owned();
        let d_in = c.diff(n - 1);
        let cocycles = d_out.kernel();
        let coboundaries = d_in.image();
        let joint = Matrix::hstack(&[&coboundaries, &cocycles]);
        let (_, piv) = joint.rref();
        let nb = coboundaries.cols();
        let rep_idx: Vec<usize> = piv.iter().filter(|&&p| p >= nb).map(|&p| p - nb).collect();
        let reps = cocycles.select_cols(&rep_idx);
        let coords = Coordinates::new(Matrix::hstack(&[&coboundaries, &reps]));
        CohomologySpace { degree: n, ambient, d_out, cocycles, coboundaries, reps, coords }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Representatives as columns.
    pub fn representatives(&self) -> &Matrix {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> Vec<Q> {
        self.reps.col(i)
    }

    pub fn cocycles(&self) -> &Matrix {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Matrix {
        &self.coboundaries
    }

    pub fn is_cocycle(&self, v: &[Q]) -> bool {
        self.d_out.apply(v).iter().all(|x| x.is_zero())
    }

    pub fn is_coboundary(&self, v: &[Q]) -> bool {
        match self.class_of(v) {
            Some(c) => c.iter().all(|x| x.is_zero()),
            None => false,
        }
    }

    /// Coordinates of the class of `v` in the representative basis; `None` if `v` is not a cocycle.
    pub fn class_of(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.is_cocycle(v) {
            return None;
        }
        let c = self.coords.coords(v)?;
        Some(c[self.coboundaries.cols()..].to_vec())
    }

    pub fn same_class(&self, u: &[Q], v: &[Q]) -> bool {
        let diff: Vec<Q> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        self.is_coboundary(&diff)
    }

    /// The cocycle `Σ c_i rep_i`.
    pub fn lift(&self, c: &[Q]) -> Vec<Q> {
        self.reps.apply(c)
    }
}

impl crate::linalg::ClassSpace for CohomologySpace {
    fn dim(&self) -> usize {
        CohomologySpace::dim(self)
    }
    fn representative(&self, i: usize) -> Vec<Q> {
        CohomologySpace::representative(self, i)
    }
    fn class_of(&self, v: &[Q]) -> Option<Vec<Q>> {
        CohomologySpace::class_of(self, v)
    }
}

#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    maps: BTreeMap<i32, Matrix>,
}

impl ComplexMap {
    /// Checks shapes and the chain condition.
    pub fn new(source: impl Into<Arc<Complex>>, target: impl Into<Arc<Complex>>, maps: BTreeMap<i32, Matrix>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, maps)?;
        f.check_chain()?;
        Ok(f)
    }

    /// Checks shapes only; for degreewise maps that need not commute with `d`.
    pub fn new_unchecked(source: impl Into<Arc<Complex>>, target: impl Into<Arc<Complex>>, maps: BTreeMap<i32, Matrix>) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        let mut kept = BTreeMap::new();
        for (n, m) in maps {
            if m.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::invariant("map shape", format!("degree {n}")));
            }
            if source.dim(n) > 0 && target.dim(n) > 0 {
                kept.insert(n, m);
            }
        }
        Ok(ComplexMap { source, target, maps: kept })
    }

    pub fn from_fn(source: impl Into<Arc<Complex>>, target: impl Into<Arc<Complex>>, f: impl Fn(i32) -> Matrix) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        let maps = degree_span(&source, &target).map(|n| (n, f(n))).collect();
        Self::new(source, target, maps)
    }

    pub fn identity(c: impl Into<Arc<Complex>>) -> Self {
        let c = c.into();
        let maps = (c.lo()..=c.hi()).map(|n| (n, Matrix::identity(c.dim(n)))).collect();
        ComplexMap { source: c.clone(), target: c, maps }
    }

    pub fn zero(source: impl Into<Arc<Complex>>, target: impl Into<Arc<Complex>>) -> Self {
        ComplexMap { source: source.into(), target: target.into(), maps: BTreeMap::new() }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<Complex> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<Complex> {
        self.target.clone()
    }

    pub fn map(&self, n: i32) -> Cow<'_, Matrix> {
        match self.maps.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.target.dim(n), self.source.dim(n))),
        }
    }

    pub fn apply(&self, n: i32, v: &[Q]) -> Vec<Q> {
        match self.maps.get(&n) {
            Some(m) => m.apply(v),
            None => zero_vec(self.target.dim(n)),
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        degree_span(&self.source, &self.target)
    }

    pub fn check_chain(&self) -> Result<()> {
        for n in self.degrees() {
            let lhs = self.target.diff(n).mul(&self.map(n));
            let rhs = self.map(n + 1).mul(&self.source.diff(n));
            if lhs != rhs {
                return Err(Error::invariant("chain condition d∘f = f∘d", format!("degree {n}")));
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.check_chain().is_ok()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ComplexMap) -> ComplexMap {
        let maps = g.degrees().map(|n| (n, self.map(n).mul(&g.map(n)))).collect();
        ComplexMap { source: g.source.clone(), target: self.target.clone(), maps }
    }

    pub fn neg(&self) -> ComplexMap {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, s: &Q) -> ComplexMap {
        ComplexMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|(n, m)| (*n, m.scale(s))).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMap) -> ComplexMap {
        let maps = self.degrees().map(|n| (n, self.map(n).add(&other.map(n)))).collect();
        ComplexMap { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn equals(&self, other: &ComplexMap) -> bool {
        self.degrees().chain(other.degrees()).all(|n| self.map(n) == other.map(n))
    }

    /// Matrix of `H^n(f)` in the representative bases.
    pub fn induced(&self, n: i32) -> Matrix {
        let hs = self.source.cohomology(n);
        let ht = self.target.cohomology(n);
        let cols: Vec<Vec<Q>> = (0..hs.dim())
            .map(|i| ht.class_of(&self.apply(n, &hs.representative(i))).expect("chain map sends cocycles to cocycles"))
            .collect();
        Matrix::from_cols(ht.dim(), &cols)
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.degrees().all(|n| {
            let m = self.induced(n);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }

    /// Same maps, with source and target replaced by equal-shaped complexes.
    pub fn retarget(&self, source: impl Into<Arc<Complex>>, target: impl Into<Arc<Complex>>) -> Result<ComplexMap> {
        ComplexMap::new(source, target, self.maps.clone())
    }
}

fn degree_span(a: &Complex, b: &Complex) -> std::ops::RangeInclusive<i32> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => std::ops::RangeInclusive::new(1, 0),
        (true, false) => b.lo()..=b.hi(),
        (false, true) => a.lo()..=a.hi(),
        (false, false) => a.lo().min(b.lo())..=a.hi().max(b.hi()),
    }
}

/// `s(f)^n = A^n ⊕ B^{n-1}` with `d(a,b) = (d a, f(a) - d b)`.
pub fn simple_of_map(f: &ComplexMap) -> Complex {
    let a = f.source();
    let b = f.target();
    simple_of_parts(a, b, |n| f.map(n).into_owned(), 1, -1)
}

/// `cone(f)^n = A^{n+1} ⊕ B^n` with `d(a,b) = (-d a, f(a) + d b)`.
pub fn cone(f: &ComplexMap) -> Complex {
    simple_of_parts(&f.source().shift(1), f.target(), |n| f.map(n + 1).into_owned(), 0, 1)
}

/// Generic two-block total complex: degree `n` is `A^n ⊕ B^{n-1+shift}`, with `d(a,b) = (dA a, g(a) + eps·dB b)`.
fn simple_of_parts(a: &Complex, b: &Complex, g: impl Fn(i32) -> Matrix, b_shift: i32, eps: i64) -> Complex {
    let bd = |n: i32| b.dim(n - b_shift);
    if a.is_zero() && b.is_zero() {
        return Complex::zero();
    }
    let lo = if a.is_zero() {
        b.lo() + b_shift
    } else if b.is_zero() {
        a.lo()
    } else {
        a.lo().min(b.lo() + b_shift)
    };
    let hi = if a.is_zero() {
        b.hi() + b_shift
    } else if b.is_zero() {
        a.hi()
    } else {
        a.hi().max(b.hi() + b_shift)
    };
    let dims: Vec<usize> = (lo..=hi).map(|n| a.dim(n) + bd(n)).collect();
    let e = crate::linalg::q(eps);
    let diffs = (lo..hi)
        .map(|n| {
            let mut m = Matrix::zeros(a.dim(n + 1) + bd(n + 1), a.dim(n) + bd(n));
            m.add_block(0, 0, &a.diff(n));
            let gn = g(n);
            if gn.rows() > 0 && gn.cols() > 0 {
                m.add_block(a.dim(n + 1), 0, &gn);
            }
            m.add_block(a.dim(n + 1), a.dim(n), &b.diff(n - b_shift).scale(&e));
            m
        })
        .collect();
    let labels = if a.has_labels() && b.has_labels() {
        Some(
            (lo..=hi)
                .map(|n| {
                    let mut l = a.labels(n).unwrap().to_vec();
                    l.extend(b.labels(n - b_shift).unwrap().iter().cloned());
                    l
                })
                .collect(),
        )
    } else {
        None
    };
    Complex { lo, dims, diffs, labels }.trimmed()
}

/// Splits a vector of `s(f)^n` into its `A^n` and `B^{n-1}` parts.
pub fn split_simple(f: &ComplexMap, n: i32, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let da = f.source().dim(n);
    (v[..da].to_vec(), v[da..].to_vec())
}

pub fn join_simple(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Koszul tensor product: `(X⊗Y)^n = ⊕_p X^p ⊗ Y^{n-p}` (p ascending, row-major blocks)
/// with `d(x⊗y) = dx⊗y + (-1)^p x⊗dy`.
pub fn tensor(x: &Complex, y: &Complex) -> Complex {
    if x.is_zero() || y.is_zero() {
        return Complex::zero();
    }
    let lo = x.lo() + y.lo();
    let hi = x.hi() + y.hi();
    let layout = TensorLayout::new(x, y);
    let dims: Vec<usize> = (lo..=hi).map(|n| layout.dim(n)).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let mut m = Matrix::zeros(layout.dim(n + 1), layout.dim(n));
            for p in x.lo()..=x.hi() {
                let qd = n - p;
                if x.dim(p) == 0 || y.dim(qd) == 0 {
                    continue;
                }
                let src = layout.offset(n, p);
                if x.dim(p + 1) > 0 {
                    let blk = x.diff(p).kron(&Matrix::identity(y.dim(qd)));
                    m.add_block(layout.offset(n + 1, p + 1), src, &blk);
                }
                if y.dim(qd + 1) > 0 {
                    let blk = Matrix::identity(x.dim(p)).kron(&y.diff(qd)).scale(&sign(p as i64));
                    m.add_block(layout.offset(n + 1, p), src, &blk);
                }
            }
            m
        })
        .collect();
    let labels = if x.has_labels() && y.has_labels() {
        Some(
            (lo..=hi)
                .map(|n| {
                    let mut l = Vec::with_capacity(layout.dim(n));
                    for p in x.lo()..=x.hi() {
                        for lx in x.labels(p).unwrap() {
                            for ly in y.labels(n - p).unwrap() {
                                l.push(lx.join(ly));
                            }
                        }
                    }
                    l
                })
                .collect(),
        )
    } else {
        None
    };
    Complex { lo, dims, diffs, labels }.trimmed()
}

/// Block offsets inside a Koszul tensor product.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    xlo: i32,
    xhi: i32,
    xd: BTreeMap<i32, usize>,
    yd: BTreeMap<i32, usize>,
}

impl TensorLayout {
    pub fn new(x: &Complex, y: &Complex) -> Self {
        TensorLayout {
            xlo: x.lo(),
            xhi: x.hi(),
            xd: (x.lo()..=x.hi()).map(|n| (n, x.dim(n))).collect(),
            yd: (y.lo()..=y.hi()).map(|n| (n, y.dim(n))).collect(),
        }
    }

    fn xdim(&self, p: i32) -> usize {
        *self.xd.get(&p).unwrap_or(&0)
    }

    fn ydim(&self, p: i32) -> usize {
        *self.yd.get(&p).unwrap_or(&0)
    }

    pub fn dim(&self, n: i32) -> usize {
        (self.xlo..=self.xhi).map(|p| self.xdim(p) * self.ydim(n - p)).sum()
    }

    /// Offset of the block `X^p ⊗ Y^{n-p}` inside degree `n`.
    pub fn offset(&self, n: i32, p: i32) -> usize {
        (self.xlo..p).map(|r| self.xdim(r) * self.ydim(n - r)).sum()
    }

    /// Coordinates of `x⊗y` for `x ∈ X^p`, `y ∈ Y^{n-p}`.
    pub fn embed(&self, p: i32, x: &[Q], m: i32, y: &[Q]) -> Vec<Q> {
        let n = p + m;
        let mut v = zero_vec(self.dim(n));
        if x.is_empty() || y.is_empty() {
            return v;
        }
        let off = self.offset(n, p);
        for (i, val) in kron_vec(x, y).into_iter().enumerate() {
            v[off + i] = val;
        }
        v
    }
}

/// `f⊗g` between Koszul tensor products (degree-zero maps, no signs).
pub fn tensor_maps(f: &ComplexMap, g: &ComplexMap) -> ComplexMap {
    let src = Arc::new(tensor(f.source(), g.source()));
    let tgt = Arc::new(tensor(f.target(), g.target()));
    let ls = TensorLayout::new(f.source(), g.source());
    let lt = TensorLayout::new(f.target(), g.target());
    let (flo, fhi) = span_of(f);
    let maps = degree_span(&src, &tgt)
        .map(|n| {
            let mut m = Matrix::zeros(tgt.dim(n), src.dim(n));
            for p in flo..=fhi {
                let (sx, sy) = (f.source().dim(p), g.source().dim(n - p));
                let (tx, ty) = (f.target().dim(p), g.target().dim(n - p));
                if sx * sy == 0 || tx * ty == 0 {
                    continue;
                }
                let blk = f.map(p).kron(&g.map(n - p));
                m.add_block(lt.offset(n, p), ls.offset(n, p), &blk);
            }
            (n, m)
        })
        .collect();
    ComplexMap { source: src, target: tgt, maps }
}

fn span_of(f: &ComplexMap) -> (i32, i32) {
    let r = degree_span(f.source(), f.target());
    (*r.start(), *r.end())
}

/// Matrix sending basis vectors of `source` (degree `n`) to signed basis vectors of `target`,
/// by label. Used to write explicit sign isomorphisms.
pub fn signed_relabeling(source: &Complex, target: &Complex, n: i32, rule: impl Fn(&Label) -> Option<(i64, Label)>) -> Result<Matrix> {
    let src = source.labels(n).ok_or_else(|| Error::pre("source complex is unlabelled"))?;
    let idx = target.label_index(n);
    let mut m = Matrix::zeros(target.dim(n), source.dim(n));
    for (j, l) in src.iter().enumerate() {
        if let Some((s, tl)) = rule(l) {
            let i = *idx.get(&tl).ok_or_else(|| Error::invariant("relabeling target exists", format!("degree {n}, label {tl}")))?;
            m.add_at(i, j, &crate::linalg::q(s));
        }
    }
    Ok(m)
}

/// A bilinear chain-level pairing `X ⊗ Y → Z`, stored as a chain map out of the Koszul tensor product.
#[derive(Clone, Debug)]
pub struct Pairing {
    left: Arc<Complex>,
    right: Arc<Complex>,
    layout: TensorLayout,
    map: ComplexMap,
}

impl Pairing {
    pub fn new(left: impl Into<Arc<Complex>>, right: impl Into<Arc<Complex>>, map: ComplexMap) -> Result<Self> {
        let (left, right) = (left.into(), right.into());
        if !map.source().same_underlying(&tensor(&left, &right)) {
            return Err(Error::pre("pairing source is not the tensor product of its factors"));
        }
        map.check_chain()?;
        let layout = TensorLayout::new(&left, &right);
        Ok(Pairing { left, right, layout, map })
    }

    /// `x ⊗ y ↦ x ⊗ y` into the tensor product itself.
    pub fn tautological(left: impl Into<Arc<Complex>>, right: impl Into<Arc<Complex>>) -> Self {
        let (left, right) = (left.into(), right.into());
        let map = ComplexMap::identity(tensor(&left, &right));
        let layout = TensorLayout::new(&left, &right);
        Pairing { left, right, layout, map }
    }

    pub fn left(&self) -> &Complex {
        &self.left
    }

    pub fn right(&self) -> &Complex {
        &self.right
    }

    pub fn target(&self) -> &Complex {
        self.map.target()
    }

    pub fn map(&self) -> &ComplexMap {
        &self.map
    }

    /// Image of `x ⊗ y` with `x ∈ X^p`, `y ∈ Y^r`.
    pub fn apply(&self, p: i32, x: &[Q], r: i32, y: &[Q]) -> Vec<Q> {
        let n = p + r;
        if x.len() != self.left.dim(p) || y.len() != self.right.dim(r) {
            panic!("pairing argument dimensions do not match degrees {p}, {r}");
        }
        if x.is_empty() || y.is_empty() {
            return zero_vec(self.target().dim(n));
        }
        self.map.apply(n, &self.layout.embed(p, x, r, y))
    }

    /// Same pairing followed by a chain map out of its target.
    pub fn then(&self, g: &ComplexMap) -> Pairing {
        Pairing { left: self.left.clone(), right: self.right.clone(), layout: self.layout.clone(), map: g.compose(&self.map) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn id_complex() -> Complex {
        Complex::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap()
    }

    #[test]
    fn zero_differential_keeps_class() {
        let c = Complex::new(0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(c.cohomology(0).dim(), 1);
        assert_eq!(c.cohomology(1).dim(), 1);
    }

    #[test]
    fn identity_complex_is_acyclic() {
        assert!(id_complex().is_acyclic());
    }

    #[test]
    fn rejects_nonzero_square() {
        let r = Complex::new(0, vec![1, 1, 1], vec![Matrix::identity(1), Matrix::identity(1)]);
        assert!(matches!(r, Err(Error::Invariant { .. })));
    }

    #[test]
    fn shift_moves_degrees_and_sign() {
        let c = Complex::concentrated(0, 1);
        assert_eq!(c.shift(1).dim(-1), 1);
        let d = id_complex().shift(1);
        assert_eq!(d.diff(-1).get(0, 0), &q(-1));
        assert_eq!(id_complex().shift(1).shift(-1), id_complex());
        assert_eq!(id_complex().shift(2).diff(-2).into_owned(), id_complex().diff(0).into_owned());
    }

    #[test]
    fn bete_truncation_drops_low_degrees() {
        let t = id_complex().bete_truncation(1);
        assert_eq!(t.dim(0), 0);
        assert_eq!(t.dim(1), 1);
        assert_eq!(t.cohomology(1).dim(), 1);
        assert_eq!(id_complex().bete_truncation(0), id_complex());
    }

    #[test]
    fn simple_of_identity_is_acyclic() {
        let a = Complex::concentrated(0, 1);
        let f = ComplexMap::identity(a);
        assert!(simple_of_map(&f).is_acyclic());
    }

    #[test]
    fn simple_of_zero_map_splits() {
        let a = Complex::concentrated(0, 1);
        let f = ComplexMap::zero(a.clone(), a);
        let s = simple_of_map(&f);
        assert_eq!(s.cohomology(0).dim(), 1);
        assert_eq!(s.cohomology(1).dim(), 1);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let f = ComplexMap::identity(id_complex());
        assert!(cone(&f).is_acyclic());
    }

    #[test]
    fn cone_of_map_to_zero_is_shift() {
        let f = ComplexMap::zero(id_complex(), Complex::zero());
        assert_eq!(cone(&f), id_complex().shift(1));
    }

    #[test]
    fn identity_is_quasi_iso_and_zero_is_not() {
        let c = Complex::concentrated(0, 2);
        assert!(ComplexMap::identity(c.clone()).is_quasi_iso());
        assert!(!ComplexMap::zero(c.clone(), c).is_quasi_iso());
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let pt = Complex::concentrated(0, 1);
        let c = id_complex();
        assert_eq!(tensor(&pt, &c), c);
    }
}
