//! Dense matrices over exact rationals.
//!
//! Everything here is plain Gaussian elimination; instances are small, so
//! the only optimization is skipping zero entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vec(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], s: &Q) -> Vec<Q> {
    if s.is_zero() {
        return zero_vec(a.len());
    }
    a.iter().map(|x| x * s).collect()
}

pub fn vec_neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn concat(parts: &[&[Q]]) -> Vec<Q> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Coordinates of `a ⊗ b` in the row-major basis.
pub fn kron_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = zero_vec(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::from_rows(rows, cols, data.iter().map(|&x| q(x)).collect())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.data[i * m.cols + j] = x.clone();
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Q) {
        if !v.is_zero() {
            let e = &mut self.data[r * self.cols + c];
            *e += v;
        }
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.data[c * self.rows + r] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape {:?} * {:?}", self.shape(), other.shape());
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = zero_vec(self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, k);
                if !a.is_zero() {
                    out[i] += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut out = Self::zeros(r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * r2 + k) * (c1 * c2) + j * c2 + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !b.is_zero() {
                    self.data[(r0 + i) * self.cols + c0 + j] += b;
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].clone_from_slice(self.row(r));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map(|m| m.rows).unwrap_or(0);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.add_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map(|m| m.cols).unwrap_or(0);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.add_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.add_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Reduces in place using only the first `ncols` columns for pivoting.
    fn rref_in_place(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..ncols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, c).recip();
            if !inv.is_one() {
                for j in c..self.cols {
                    let idx = row * self.cols + j;
                    if !self.data[idx].is_zero() {
                        self.data[idx] = &self.data[idx] * &inv;
                    }
                }
            }
            let prow: Vec<(usize, Q)> =
                (c..self.cols).filter(|&j| !self.get(row, j).is_zero()).map(|j| (j, self.get(row, j).clone())).collect();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &prow {
                    let idx = r * self.cols + j;
                    self.data[idx] -= &f * v;
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, as columns; free variables in increasing order.
    pub fn kernel(&self) -> Matrix {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Q::one());
            for (i, &pc) in piv.iter().enumerate() {
                let v = r.get(i, fc);
                if !v.is_zero() {
                    out.set(pc, k, -v.clone());
                }
            }
        }
        out
    }

    /// Basis of the column space chosen among the original columns (leftmost pivots).
    pub fn image(&self) -> Matrix {
        let (_, piv) = self.rref();
        self.select_cols(&piv)
    }

    pub fn solver(&self) -> Solver {
        Solver::new(self)
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        self.solver().solve(b)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let s = self.solver();
        if s.rank() != self.rows {
            return None;
        }
        Some(s.left_inverse())
    }

    /// `L` with `L * self = I`, when the columns are independent.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let s = self.solver();
        if s.rank() != self.cols {
            return None;
        }
        Some(s.left_inverse())
    }

    pub fn in_column_space(&self, v: &[Q]) -> bool {
        self.solve(v).is_some()
    }
}

/// Precomputed elimination `E * A = R` for repeated solves against one matrix.
#[derive(Clone, Debug)]
pub struct Solver {
    ncols: usize,
    nrows: usize,
    r: Matrix,
    e: Matrix,
    pivots: Vec<usize>,
}

impl Solver {
    pub fn new(a: &Matrix) -> Self {
        let aug = Matrix::hstack(&[a, &Matrix::identity(a.rows)]);
        let mut m = aug;
        let pivots = m.rref_in_place(a.cols);
        let r = m.block(0, 0, a.rows, a.cols);
        let e = m.block(0, a.cols, a.rows, a.rows);
        Solver { ncols: a.cols, nrows: a.rows, r, e, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.nrows, "solve rhs length");
        let eb = self.e.apply(b);
        if eb[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = zero_vec(self.ncols);
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = eb[i].clone();
        }
        Some(x)
    }

    pub fn contains(&self, b: &[Q]) -> bool {
        let eb = self.e.apply(b);
        eb[self.rank()..].iter().all(|x| x.is_zero())
    }

    /// Valid when the matrix has full column rank.
    pub fn left_inverse(&self) -> Matrix {
        assert_eq!(self.rank(), self.ncols, "left inverse needs independent columns");
        self.e.block(0, 0, self.ncols, self.nrows)
    }

    pub fn reduced(&self) -> &Matrix {
        &self.r
    }
}

/// Coordinates of vectors with respect to a fixed independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Matrix,
    solver: Solver,
}

impl Coordinates {
    pub fn new(basis: Matrix) -> Self {
        let solver = basis.solver();
        assert_eq!(solver.rank(), basis.cols(), "coordinate family must be independent");
        Coordinates { basis, solver }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        self.solver.solve(v)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.solver.contains(v)
    }

    pub fn embed(&self, c: &[Q]) -> Vec<Q> {
        self.basis.apply(c)
    }
}

/// Joint basis of the column spaces of the given matrices.
pub fn span_basis(parts: &[&Matrix], ambient: usize) -> Matrix {
    let nonempty: Vec<&Matrix> = parts.iter().copied().filter(|m| m.cols() > 0).collect();
    if nonempty.is_empty() {
        return Matrix::zeros(ambient, 0);
    }
    Matrix::hstack(&nonempty).image()
}

/// Basis of the intersection of two column spaces, inside the ambient space.
pub fn intersect(a: &Matrix, b: &Matrix) -> Matrix {
    let ambient = a.rows();
    if a.cols() == 0 || b.cols() == 0 {
        return Matrix::zeros(ambient, 0);
    }
    let k = Matrix::hstack(&[a, &b.neg()]).kernel();
    let top = k.block(0, 0, a.cols(), k.cols());
    span_basis(&[&a.mul(&top)], ambient)
}

/// `V / W` for subspaces `W ⊆ V` of a common ambient space, with chosen
/// representatives of a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    sub: Matrix,
    quot: Matrix,
    reps: Matrix,
    coords: Coordinates,
}

impl Subquotient {
    /// `sub` and `quot` are spanning families (columns); `quot` must lie in `sub`.
    pub fn new(sub: &Matrix, quot: &Matrix) -> Self {
        let ambient = sub.rows();
        let sub = span_basis(&[sub], ambient);
        let quot = span_basis(&[quot], ambient);
        let inside = Solver::new(&sub);
        assert!(quot.columns().iter().all(|c| inside.contains(c)), "quotient subspace not contained in subspace");
        let joint = Matrix::hstack(&[&quot, &sub]);
        let (_, piv) = joint.rref();
        let nq = quot.cols();
        let idx: Vec<usize> = piv.iter().filter(|&&p| p >= nq).map(|&p| p - nq).collect();
        let reps = sub.select_cols(&idx);
        let coords = Coordinates::new(Matrix::hstack(&[&quot, &reps]));
        Subquotient { ambient, sub, quot, reps, coords }
    }

    /// The whole ambient space modulo `quot`.
    pub fn cokernel(ambient: usize, quot: &Matrix) -> Self {
        Self::new(&Matrix::identity(ambient), quot)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn representatives(&self) -> &Matrix {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> Vec<Q> {
        self.reps.col(i)
    }

    pub fn sub_basis(&self) -> &Matrix {
        &self.sub
    }

    pub fn quotient_basis(&self) -> &Matrix {
        &self.quot
    }

    /// Coordinates of the class of `v`; `None` when `v` is outside the subspace.
    pub fn class_of(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c = self.coords.coords(v)?;
        Some(c[self.quot.cols()..].to_vec())
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords.contains(v)
    }

    pub fn is_zero_class(&self, v: &[Q]) -> bool {
        self.class_of(v).is_some_and(|c| is_zero_vec(&c))
    }

    pub fn same_class(&self, u: &[Q], v: &[Q]) -> bool {
        self.is_zero_class(&vec_sub(u, v))
    }

    pub fn lift(&self, c: &[Q]) -> Vec<Q> {
        self.reps.apply(c)
    }
}

/// A quotient-like space with chosen representatives and a class decision procedure.
pub trait ClassSpace {
    fn dim(&self) -> usize;
    fn representative(&self, i: usize) -> Vec<Q>;
    /// `None` when `v` does not represent any class.
    fn class_of(&self, v: &[Q]) -> Option<Vec<Q>>;
}

impl ClassSpace for Subquotient {
    fn dim(&self) -> usize {
        Subquotient::dim(self)
    }
    fn representative(&self, i: usize) -> Vec<Q> {
        Subquotient::representative(self, i)
    }
    fn class_of(&self, v: &[Q]) -> Option<Vec<Q>> {
        Subquotient::class_of(self, v)
    }
}

/// Matrix of the map between class spaces induced by a linear map on representatives;
/// `None` if some image represents no class.
pub fn induced_matrix(src: &dyn ClassSpace, tgt: &dyn ClassSpace, f: impl Fn(&[Q]) -> Vec<Q>) -> Option<Matrix> {
    let cols = (0..src.dim()).map(|i| tgt.class_of(&f(&src.representative(i)))).collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_cols(tgt.dim(), &cols))
}

/// Exactness of `X --u--> Y --v--> Z` at `Y`, given matrices in chosen bases.
pub fn is_exact_at(u: &Matrix, v: &Matrix) -> bool {
    let dim_y = u.rows();
    assert_eq!(v.cols(), dim_y, "composable maps");
    let composite_zero = dim_y == 0 || u.cols() == 0 || v.rows() == 0 || v.mul(u).is_zero();
    composite_zero && rank0(u) + rank0(v) == dim_y
}

fn rank0(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

pub fn abs_max_denominator(m: &Matrix) -> BigInt {
    m.data.iter().map(|x| x.denom().abs()).max().unwrap_or_else(BigInt::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn left_inverse_of_injective() {
        let m = Matrix::from_i64(3, 2, &[1, 0, 1, 1, 0, 2]);
        let l = m.left_inverse().unwrap();
        assert!(l.mul(&m).is_identity());
    }

    #[test]
    fn solve_consistency() {
        let m = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(m.solve(&[q(1), q(2)]).is_none());
        let x = m.solve(&[q(3), q(3)]).unwrap();
        assert_eq!(m.apply(&x), vec![q(3), q(3)]);
    }

    #[test]
    fn kron_matches_vectors() {
        let a = Matrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_i64(2, 1, &[5, 6]);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (4, 2));
        let x = vec![q(1), q(-1)];
        let y = vec![q(2)];
        assert_eq!(k.apply(&kron_vec(&x, &y)), kron_vec(&a.apply(&x), &b.apply(&y)));
    }

    #[test]
    fn intersection_dimension() {
        let a = Matrix::from_i64(3, 2, &[1, 0, 0, 1, 0, 0]);
        let b = Matrix::from_i64(3, 2, &[0, 0, 1, 0, 0, 1]);
        assert_eq!(intersect(&a, &b).cols(), 1);
    }

    #[test]
    fn subquotient_classes() {
        let sub = Matrix::from_i64(3, 2, &[1, 0, 0, 1, 0, 0]);
        let quot = Matrix::from_i64(3, 1, &[1, 1, 0]);
        let sq = Subquotient::new(&sub, &quot);
        assert_eq!(sq.dim(), 1);
        assert!(sq.same_class(&[q(1), q(0), q(0)], &[q(0), q(-1), q(0)]));
        assert!(sq.class_of(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn exactness_by_rank() {
        let u = Matrix::from_i64(2, 1, &[1, 0]);
        let v = Matrix::from_i64(1, 2, &[0, 1]);
        assert!(is_exact_at(&u, &v));
        assert!(!is_exact_at(&u, &Matrix::from_i64(1, 2, &[0, 0])));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(fmt_q(&qf(4, 2)), "2");
        assert!(parse_q("1/0").is_none());
    }
}
