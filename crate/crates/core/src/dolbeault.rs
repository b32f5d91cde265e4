//! Finite Dolbeault algebras and modules over the Gaussian rationals.
//!
//! Elements are dense vectors over a monomial basis of the complexification. The real
//! structure is an antilinear involution `κ` sending a basis vector to a signed basis vector.
//! Every subspace used downstream is a `ℚ`-subspace of the realification `[re; im]`.

use crate::error::{Error, Result};
use crate::linalg::{parse_q, q, Matrix, Q};
use crate::random::{small_q, Rand};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianScalar {
    pub re: Q,
    pub im: Q,
}

pub type G = GaussianScalar;

impl GaussianScalar {
    pub fn new(re: Q, im: Q) -> Self {
        GaussianScalar { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussianScalar { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        GaussianScalar { re: Q::zero(), im: Q::one() }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianScalar { re: q(re), im: q(im) }
    }

    pub fn conj(&self) -> Self {
        GaussianScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        GaussianScalar { re: &self.re * s, im: &self.im * s }
    }

    /// Parses `"a/b+c/d i"`, `"a/b"`, `"c/d i"`, `"-i"`.
    pub fn parse(s: &str) -> Option<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return None;
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_q(&t).map(GaussianScalar::real);
        };
        // split at the last sign that is not the leading character
        let cut = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
        let (re, im) = match cut {
            Some(k) => (parse_q(&body[..k])?, &body[k..]),
            None => (Q::zero(), body),
        };
        let im = match im {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            other => parse_q(other.strip_prefix('+').unwrap_or(other))?,
        };
        Some(GaussianScalar { re, im })
    }
}

impl Zero for GaussianScalar {
    fn zero() -> Self {
        GaussianScalar { re: Q::zero(), im: Q::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianScalar {
    fn one() -> Self {
        GaussianScalar::real(Q::one())
    }
}

impl Add for GaussianScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianScalar { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a> Add<&'a GaussianScalar> for &'a GaussianScalar {
    type Output = GaussianScalar;
    fn add(self, o: &GaussianScalar) -> GaussianScalar {
        GaussianScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for GaussianScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianScalar { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for GaussianScalar {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianScalar { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussianScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<'a> Mul<&'a GaussianScalar> for &'a GaussianScalar {
    type Output = GaussianScalar;
    fn mul(self, o: &GaussianScalar) -> GaussianScalar {
        GaussianScalar { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl fmt::Display for GaussianScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{} i", self.im),
            (false, false) => {
                if self.im < Q::zero() {
                    write!(f, "{}{} i", self.re, self.im)
                } else {
                    write!(f, "{}+{} i", self.re, self.im)
                }
            }
        }
    }
}

pub type GVec = Vec<G>;

pub fn gzero(n: usize) -> GVec {
    vec![G::zero(); n]
}

pub fn gadd(a: &[G], b: &[G]) -> GVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn gsub(a: &[G], b: &[G]) -> GVec {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn gscale(a: &[G], s: &G) -> GVec {
    a.iter().map(|x| x * s).collect()
}

pub fn gscale_q(a: &[G], s: &Q) -> GVec {
    a.iter().map(|x| x.scale(s)).collect()
}

pub fn gis_zero(a: &[G]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Sparse column: images of one basis vector.
pub type SparseCol = Vec<(usize, G)>;

/// The bigraded vector space with `κ`, `∂`, `∂̄` underlying a Dolbeault algebra or module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigraded {
    pub bideg: Vec<(i32, i32)>,
    /// `κ(e_i) = sign · e_j`.
    pub conj: Vec<(usize, i64)>,
    pub del: Vec<SparseCol>,
    pub delbar: Vec<SparseCol>,
}

/// Sentinel for "no lower bound" in Hodge projections.
pub const UNBOUNDED: i32 = i32::MIN / 4;

impl Bigraded {
    pub fn dim(&self) -> usize {
        self.bideg.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.bideg[i].0 + self.bideg[i].1
    }

    pub fn top_degree(&self) -> i32 {
        (0..self.dim()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn indices_of_degree(&self, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == n).collect()
    }

    fn apply_sparse(cols: &[SparseCol], x: &[G]) -> GVec {
        let mut out = gzero(x.len());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, c) in &cols[i] {
                out[*j] = &out[*j] + &(c * xi);
            }
        }
        out
    }

    pub fn del(&self, x: &[G]) -> GVec {
        Self::apply_sparse(&self.del, x)
    }

    pub fn delbar(&self, x: &[G]) -> GVec {
        Self::apply_sparse(&self.delbar, x)
    }

    pub fn d(&self, x: &[G]) -> GVec {
        gadd(&self.del(x), &self.delbar(x))
    }

    /// The antilinear involution.
    pub fn kappa(&self, x: &[G]) -> GVec {
        let mut out = gzero(x.len());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let (j, s) = self.conj[i];
            out[j] = &out[j] + &xi.conj().scale(&q(s));
        }
        out
    }

    /// `F^{k,k'}`: keep components of bidegree `(l, l')` with `l ≥ k`, `l' ≥ k'`.
    pub fn hodge(&self, x: &[G], k: i32, kk: i32) -> GVec {
        x.iter().enumerate().map(|(i, v)| if self.bideg[i].0 >= k && self.bideg[i].1 >= kk { v.clone() } else { G::zero() }).collect()
    }

    /// The `(l, l')` component.
    pub fn component(&self, x: &[G], l: i32, ll: i32) -> GVec {
        x.iter().enumerate().map(|(i, v)| if self.bideg[i] == (l, ll) { v.clone() } else { G::zero() }).collect()
    }

    /// Degree-`n` part.
    pub fn degree_part(&self, x: &[G], n: i32) -> GVec {
        x.iter().enumerate().map(|(i, v)| if self.degree(i) == n { v.clone() } else { G::zero() }).collect()
    }

    /// `π_p(x) = ½(x + (−1)^p κ x)`.
    pub fn pi(&self, x: &[G], p: i32) -> GVec {
        let k = self.kappa(x);
        let s = q(if p.rem_euclid(2) == 0 { 1 } else { -1 });
        let half = crate::linalg::qf(1, 2);
        x.iter().zip(k).map(|(a, b)| (a + &b.scale(&s)).scale(&half)).collect()
    }

    /// `κ x = (−1)^p x`, i.e. `x ∈ A_ℝ(p)`.
    pub fn is_real_of_twist(&self, x: &[G], p: i32) -> bool {
        let s = q(if p.rem_euclid(2) == 0 { 1 } else { -1 });
        self.kappa(x) == gscale_q(x, &s)
    }

    pub fn realify(x: &[G]) -> Vec<Q> {
        x.iter().map(|v| v.re.clone()).chain(x.iter().map(|v| v.im.clone())).collect()
    }

    pub fn complexify(v: &[Q]) -> GVec {
        let n = v.len() / 2;
        (0..n).map(|i| G::new(v[i].clone(), v[n + i].clone())).collect()
    }

    /// `κ` as a `ℚ`-linear map on realified coordinates.
    pub fn kappa_real_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            let (j, s) = self.conj[i];
            m.set(j, i, q(s));
            m.set(n + j, n + i, q(-s));
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> GVec {
        let mut v = gzero(self.dim());
        v[i] = G::one();
        v
    }

    /// `∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0`, types `(1,0)` and `(0,1)`, `κ² = Id`, `κ∂ = ∂̄κ`.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let (j, _) = self.conj[i];
            let (a, b) = self.bideg[i];
            if self.bideg[j] != (b, a) {
                return Err(Error::invariant("κ swaps bidegrees", format!("basis {i}")));
            }
            for (k, _) in &self.del[i] {
                if self.bideg[*k] != (a + 1, b) {
                    return Err(Error::invariant("∂ has type (1,0)", format!("basis {i}")));
                }
            }
            for (k, _) in &self.delbar[i] {
                if self.bideg[*k] != (a, b + 1) {
                    return Err(Error::invariant("∂̄ has type (0,1)", format!("basis {i}")));
                }
            }
            let e = self.basis_vector(i);
            if self.kappa(&self.kappa(&e)) != e {
                return Err(Error::invariant("κ² = Id", format!("basis {i}")));
            }
            if !gis_zero(&self.del(&self.del(&e))) || !gis_zero(&self.delbar(&self.delbar(&e))) {
                return Err(Error::invariant("∂² = 0 and ∂̄² = 0", format!("basis {i}")));
            }
            if !gis_zero(&gadd(&self.del(&self.delbar(&e)), &self.delbar(&self.del(&e)))) {
                return Err(Error::invariant("∂∂̄ + ∂̄∂ = 0", format!("basis {i}")));
            }
            if self.kappa(&self.del(&e)) != self.delbar(&self.kappa(&e)) {
                return Err(Error::invariant("κ∂ = ∂̄κ", format!("basis {i}")));
            }
        }
        Ok(())
    }
}

/// Structure constants: `e_i e_j = Σ c e_k`.
pub type Table = BTreeMap<(usize, usize), SparseCol>;

fn bilinear(table: &Table, x: &[G], y: &[G], out_dim: usize) -> GVec {
    let mut out = gzero(out_dim);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            if let Some(col) = table.get(&(i, j)) {
                let c = xi * yj;
                for (k, v) in col {
                    out[*k] = &out[*k] + &(v * &c);
                }
            }
        }
    }
    out
}

/// A finite Dolbeault algebra.
#[derive(Clone, Debug)]
pub struct DolbeaultAlgebra {
    pub space: Bigraded,
    pub table: Table,
    pub unit: usize,
    pub names: Vec<String>,
}

impl DolbeaultAlgebra {
    pub fn new(space: Bigraded, table: Table, unit: usize, names: Vec<String>) -> Result<Self> {
        let a = DolbeaultAlgebra { space, table, unit, names };
        a.check_axioms()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul(&self, x: &[G], y: &[G]) -> GVec {
        bilinear(&self.table, x, y, self.dim())
    }

    pub fn unit_vector(&self) -> GVec {
        self.space.basis_vector(self.unit)
    }

    /// All Dolbeault-algebra axioms on basis elements.
    pub fn check_axioms(&self) -> Result<()> {
        let s = &self.space;
        s.check_axioms()?;
        let n = self.dim();
        let one = self.unit_vector();
        for i in 0..n {
            let x = s.basis_vector(i);
            if self.mul(&one, &x) != x || self.mul(&x, &one) != x {
                return Err(Error::invariant("unit", format!("basis {i}")));
            }
            for j in 0..n {
                let y = s.basis_vector(j);
                let xy = self.mul(&x, &y);
                let (a, b) = s.bideg[i];
                let (c, d) = s.bideg[j];
                if xy.iter().enumerate().any(|(k, v)| !v.is_zero() && s.bideg[k] != (a + c, b + d)) {
                    return Err(Error::invariant("product respects bidegree", format!("basis {i}, {j}")));
                }
                let sgn = q(if (s.degree(i) * s.degree(j)) % 2 == 0 { 1 } else { -1 });
                if xy != gscale_q(&self.mul(&y, &x), &sgn) {
                    return Err(Error::invariant("graded commutativity", format!("basis {i}, {j}")));
                }
                let e = q(if s.degree(i) % 2 == 0 { 1 } else { -1 });
                for (op, name) in [(Bigraded::del as fn(&Bigraded, &[G]) -> GVec, "∂"), (Bigraded::delbar, "∂̄")] {
                    let lhs = op(s, &xy);
                    let rhs = gadd(&self.mul(&op(s, &x), &y), &gscale_q(&self.mul(&x, &op(s, &y)), &e));
                    if lhs != rhs {
                        return Err(Error::invariant(format!("Leibniz rule for {name}"), format!("basis {i}, {j}")));
                    }
                }
                if s.kappa(&xy) != self.mul(&s.kappa(&x), &s.kappa(&y)) {
                    return Err(Error::invariant("κ multiplicative", format!("basis {i}, {j}")));
                }
            }
        }
        self.check_associative()
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = match self.table.get(&(i, j)) {
                    Some(c) if !c.is_empty() => self.mul(&self.space.basis_vector(i), &self.space.basis_vector(j)),
                    _ => continue,
                };
                for k in 0..n {
                    let z = self.space.basis_vector(k);
                    let yz = self.mul(&self.space.basis_vector(j), &z);
                    if self.mul(&xy, &z) != self.mul(&self.space.basis_vector(i), &yz) {
                        return Err(Error::invariant("associativity", format!("basis {i}, {j}, {k}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A Dolbeault module over a Dolbeault algebra: `A^{p,q} M^{p',q'} ⊂ M^{p+p',q+q'}`.
#[derive(Clone, Debug)]
pub struct DolbeaultModule {
    pub space: Bigraded,
    /// `a_i · m_j`.
    pub action: Table,
}

impl DolbeaultModule {
    pub fn new(alg: &DolbeaultAlgebra, space: Bigraded, action: Table) -> Result<Self> {
        let m = DolbeaultModule { space, action };
        m.check_axioms(alg)?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn act(&self, a: &[G], m: &[G]) -> GVec {
        bilinear(&self.action, a, m, self.dim())
    }

    /// `A` as a module over itself.
    pub fn regular(alg: &DolbeaultAlgebra) -> Self {
        DolbeaultModule { space: alg.space.clone(), action: alg.table.clone() }
    }

    /// The submodule `F^{k,k} A` of `A`.
    pub fn hodge_submodule(alg: &DolbeaultAlgebra, k: i32) -> Result<Self> {
        let s = &alg.space;
        let keep: Vec<usize> = (0..s.dim()).filter(|&i| s.bideg[i].0 >= k && s.bideg[i].1 >= k).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let remap = |col: &SparseCol| -> Result<SparseCol> {
            col.iter().map(|(j, c)| pos.get(j).map(|&n| (n, c.clone())).ok_or_else(|| Error::pre("subspace not stable"))).collect()
        };
        let space = Bigraded {
            bideg: keep.iter().map(|&i| s.bideg[i]).collect(),
            conj: keep.iter().map(|&i| (pos[&s.conj[i].0], s.conj[i].1)).collect(),
            del: keep.iter().map(|&i| remap(&s.del[i])).collect::<Result<_>>()?,
            delbar: keep.iter().map(|&i| remap(&s.delbar[i])).collect::<Result<_>>()?,
        };
        let mut action = Table::new();
        for a in 0..s.dim() {
            for (&m, &mm) in &pos {
                if let Some(col) = alg.table.get(&(a, m)) {
                    action.insert((a, mm), remap(col)?);
                }
            }
        }
        Self::new(alg, space, action)
    }

    pub fn check_axioms(&self, alg: &DolbeaultAlgebra) -> Result<()> {
        self.space.check_axioms()?;
        let (sa, sm) = (&alg.space, &self.space);
        let one = alg.unit_vector();
        for j in 0..sm.dim() {
            let m = sm.basis_vector(j);
            if self.act(&one, &m) != m {
                return Err(Error::invariant("unit acts trivially", format!("basis {j}")));
            }
        }
        for i in 0..sa.dim() {
            let a = sa.basis_vector(i);
            let e = q(if sa.degree(i) % 2 == 0 { 1 } else { -1 });
            for j in 0..sm.dim() {
                let m = sm.basis_vector(j);
                let am = self.act(&a, &m);
                let (x, y) = sa.bideg[i];
                let (u, v) = sm.bideg[j];
                if am.iter().enumerate().any(|(k, c)| !c.is_zero() && sm.bideg[k] != (x + u, y + v)) {
                    return Err(Error::invariant("action respects bidegree", format!("basis {i}, {j}")));
                }
                let lhs = sm.del(&am);
                let rhs = gadd(&self.act(&sa.del(&a), &m), &gscale_q(&self.act(&a, &sm.del(&m)), &e));
                let lhs2 = sm.delbar(&am);
                let rhs2 = gadd(&self.act(&sa.delbar(&a), &m), &gscale_q(&self.act(&a, &sm.delbar(&m)), &e));
                if lhs != rhs || lhs2 != rhs2 {
                    return Err(Error::invariant("Leibniz rule for the action", format!("basis {i}, {j}")));
                }
                if sm.kappa(&am) != self.act(&sa.kappa(&a), &sm.kappa(&m)) {
                    return Err(Error::invariant("κ compatible with the action", format!("basis {i}, {j}")));
                }
                for k in 0..sa.dim() {
                    let b = sa.basis_vector(k);
                    if self.act(&alg.mul(&b, &a), &m) != self.act(&b, &am) {
                        return Err(Error::invariant("action is associative", format!("basis {k}, {i}, {j}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A generator of a free graded-commutative algebra.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub bideg: (i32, i32),
    pub odd: bool,
    /// Largest allowed exponent for even generators.
    pub cap: u32,
    /// Index of the conjugate generator.
    pub conj: usize,
}

/// A polynomial as `(coefficient, exponent vector)` terms.
pub type Poly = Vec<(G, Vec<u32>)>;

/// Monomial presentation: free graded-commutative algebra on `gens` modulo the monomial
/// ideal generated by `forbidden`, with `∂` and `∂̄` given on generators.
#[derive(Clone, Debug)]
pub struct MonomialPresentation {
    pub gens: Vec<Generator>,
    pub forbidden: Vec<Vec<u32>>,
    pub del: Vec<Poly>,
    pub delbar: Vec<Poly>,
}

impl MonomialPresentation {
    fn allowed(&self, e: &[u32]) -> bool {
        let within = e.iter().zip(&self.gens).all(|(x, g)| if g.odd { *x <= 1 } else { *x <= g.cap });
        within && !self.forbidden.iter().any(|f| f.iter().zip(e).all(|(a, b)| b >= a))
    }

    fn bideg(&self, e: &[u32]) -> (i32, i32) {
        e.iter().zip(&self.gens).fold((0, 0), |(a, b), (x, g)| (a + *x as i32 * g.bideg.0, b + *x as i32 * g.bideg.1))
    }

    fn monomials(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![vec![]];
        for g in &self.gens {
            let top = if g.odd { 1 } else { g.cap };
            out = out.into_iter().flat_map(|e| (0..=top).map(move |k| [e.clone(), vec![k]].concat())).collect();
        }
        let mut out: Vec<Vec<u32>> = out.into_iter().filter(|e| self.allowed(e)).collect();
        out.sort_by_key(|e| {
            let (a, b) = self.bideg(e);
            (a + b, a, b, e.clone())
        });
        out
    }

    /// Product of monomials with the Koszul sign of reordering odd generators.
    fn mul_mono(&self, a: &[u32], b: &[u32]) -> Option<(i64, Vec<u32>)> {
        let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !self.allowed(&e) {
            return None;
        }
        let odd_a: Vec<usize> = (0..a.len()).filter(|&i| self.gens[i].odd && a[i] == 1).collect();
        let odd_b: Vec<usize> = (0..b.len()).filter(|&i| self.gens[i].odd && b[i] == 1).collect();
        let inv = odd_a.iter().map(|x| odd_b.iter().filter(|y| x > y).count()).sum::<usize>();
        Some((if inv % 2 == 0 { 1 } else { -1 }, e))
    }

    pub fn build(&self) -> Result<DolbeaultAlgebra> {
        let monos = self.monomials();
        let index: BTreeMap<Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let ng = self.gens.len();
        let mut table = Table::new();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                if let Some((s, e)) = self.mul_mono(a, b) {
                    table.insert((i, j), vec![(index[&e], G::real(q(s)))]);
                }
            }
        }
        let mono_vec = |e: &[u32]| -> Option<usize> { index.get(e).copied() };
        let poly_vec = |p: &Poly| -> SparseCol { p.iter().filter_map(|(c, e)| mono_vec(e).map(|k| (k, c.clone()))).collect() };
        let mul_sparse = |x: &SparseCol, y: &SparseCol| -> SparseCol {
            let mut acc: BTreeMap<usize, G> = BTreeMap::new();
            for (i, a) in x {
                for (j, b) in y {
                    if let Some(col) = table.get(&(*i, *j)) {
                        for (k, v) in col {
                            let e = acc.entry(*k).or_insert_with(G::zero);
                            *e = &*e + &(v * &(a * b));
                        }
                    }
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        };
        let derivation = |values: &[Poly]| -> Vec<SparseCol> {
            monos
                .iter()
                .map(|m| {
                    let factors: Vec<usize> = (0..ng).flat_map(|g| std::iter::repeat_n(g, m[g] as usize)).collect();
                    let mut acc: BTreeMap<usize, G> = BTreeMap::new();
                    for (k, &g) in factors.iter().enumerate() {
                        let mut left = vec![0u32; ng];
                        for &f in &factors[..k] {
                            left[f] += 1;
                        }
                        let mut right = vec![0u32; ng];
                        for &f in &factors[k + 1..] {
                            right[f] += 1;
                        }
                        let sign = factors[..k].iter().filter(|&&f| self.gens[f].odd).count();
                        let (Some(l), Some(r)) = (mono_vec(&left), mono_vec(&right)) else {
                            continue;
                        };
                        let dg = poly_vec(&values[g]);
                        let term = mul_sparse(&mul_sparse(&vec![(l, G::one())], &dg), &vec![(r, G::one())]);
                        let s = q(if sign % 2 == 0 { 1 } else { -1 });
                        for (idx, v) in term {
                            let e = acc.entry(idx).or_insert_with(G::zero);
                            *e = &*e + &v.scale(&s);
                        }
                    }
                    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                })
                .collect()
        };
        let del = derivation(&self.del);
        let delbar = derivation(&self.delbar);
        let conj = monos
            .iter()
            .map(|m| {
                let mut e = vec![0u32; ng];
                for g in 0..ng {
                    e[self.gens[g].conj] += m[g];
                }
                let images: Vec<usize> = (0..ng).filter(|&g| self.gens[g].odd && m[g] == 1).map(|g| self.gens[g].conj).collect();
                let inv = (0..images.len()).map(|a| (a + 1..images.len()).filter(|&b| images[a] > images[b]).count()).sum::<usize>();
                let j = *index.get(&e).ok_or_else(|| Error::pre("conjugation does not preserve the monomial ideal"))?;
                Ok((j, if inv % 2 == 0 { 1 } else { -1 }))
            })
            .collect::<Result<Vec<_>>>()?;
        let bideg = monos.iter().map(|m| self.bideg(m)).collect();
        let names = monos.iter().map(|m| self.name_of(m)).collect();
        let unit = index[&vec![0u32; ng]];
        DolbeaultAlgebra::new(Bigraded { bideg, conj, del, delbar }, table, unit, names)
    }

    fn name_of(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(g, &k)| if k == 1 { self.gens[g].name.clone() } else { format!("{}^{k}", self.gens[g].name) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }
}

fn odd_pair(g: usize, prefix: &str) -> Vec<Generator> {
    let mut v = Vec::new();
    for i in 0..g {
        v.push(Generator { name: format!("d{prefix}{}", i + 1), bideg: (1, 0), odd: true, cap: 1, conj: g + i });
    }
    for i in 0..g {
        v.push(Generator { name: format!("d{prefix}̄{}", i + 1), bideg: (0, 1), odd: true, cap: 1, conj: i });
    }
    v
}

fn unit_exp(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn pair_exp(n: usize, i: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] += 1;
    e[j] += 1;
    e
}

/// Exterior algebra on `dz_1..dz_g, dz̄_1..dz̄_g` with zero differentials: the
/// cohomology of a complex torus of dimension `g`.
pub fn torus(g: usize) -> DolbeaultAlgebra {
    let gens = odd_pair(g, "z");
    let n = gens.len();
    MonomialPresentation { gens, forbidden: vec![], del: vec![vec![]; n], delbar: vec![vec![]; n] }.build().expect("torus algebra")
}

/// Truncated jets: `z, z̄` of bidegree `(0,0)` with `z² = z·dz = 0` and conjugates, plus
/// `extra` closed pairs `dw_i, dw̄_i`. Has `∂∂̄ ≠ 0` in degree zero.
pub fn jet(extra: usize) -> DolbeaultAlgebra {
    let mut gens = vec![
        Generator { name: "z".into(), bideg: (0, 0), odd: false, cap: 1, conj: 1 },
        Generator { name: "z̄".into(), bideg: (0, 0), odd: false, cap: 1, conj: 0 },
        Generator { name: "dz".into(), bideg: (1, 0), odd: true, cap: 1, conj: 3 },
        Generator { name: "dz̄".into(), bideg: (0, 1), odd: true, cap: 1, conj: 2 },
    ];
    for g in odd_pair(extra, "w") {
        let conj = g.conj + 4;
        gens.push(Generator { conj, ..g });
    }
    let n = gens.len();
    let forbidden = vec![pair_exp(n, 0, 2), pair_exp(n, 1, 3)];
    let mut del = vec![vec![]; n];
    let mut delbar = vec![vec![]; n];
    del[0] = vec![(G::one(), unit_exp(n, 2))];
    delbar[1] = vec![(G::one(), unit_exp(n, 3))];
    MonomialPresentation { gens, forbidden, del, delbar }.build().expect("jet algebra")
}

/// Two-step nilpotent Dolbeault algebra on `θ_1..θ_g` of type `(1,0)` and conjugates: the first
/// `closed` generators are closed and the others have random Gaussian structure constants
/// `∂θ_k ∈ span θ_iθ_j`, `∂̄θ_k ∈ span θ_iθ̄_j`.
pub fn nilpotent(r: &mut Rand, g: usize, closed: usize) -> DolbeaultAlgebra {
    let gens = odd_pair(g, "θ");
    let n = gens.len();
    let mut del: Vec<Poly> = vec![vec![]; n];
    let mut delbar: Vec<Poly> = vec![vec![]; n];
    let gauss = |r: &mut Rand| G::new(small_q(r, 0.3), small_q(r, 0.5));
    for k in closed..g {
        for i in 0..closed {
            for j in (i + 1)..closed {
                let a = gauss(r);
                if !a.is_zero() {
                    del[k].push((a.clone(), pair_exp(n, i, j)));
                    delbar[g + k].push((a.conj(), pair_exp(n, g + i, g + j)));
                }
            }
            for j in 0..closed {
                let b = gauss(r);
                if !b.is_zero() {
                    // ∂̄θ_k ∋ b θ_i θ̄_j, so ∂θ̄_k ∋ conj(b) θ̄_i θ_j = −conj(b) θ_j θ̄_i
                    delbar[k].push((b.clone(), pair_exp(n, i, g + j)));
                    del[g + k].push((-b.conj(), pair_exp(n, j, g + i)));
                }
            }
        }
    }
    MonomialPresentation { gens, forbidden: vec![], del, delbar }.build().expect("nilpotent algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_parse_and_display() {
        let x = G::parse("1/2+3/4 i").unwrap();
        assert_eq!(x, G::new(crate::linalg::qf(1, 2), crate::linalg::qf(3, 4)));
        assert_eq!(G::parse(&x.to_string()).unwrap(), x);
        assert_eq!(G::parse("-i").unwrap(), G::from_i64(0, -1));
        assert_eq!(G::parse("-2-i").unwrap(), G::from_i64(-2, -1));
        assert_eq!(G::parse("5").unwrap(), G::from_i64(5, 0));
        assert_eq!(&G::i() * &G::i(), G::from_i64(-1, 0));
    }

    #[test]
    fn torus_dimensions() {
        for g in 1..=3 {
            let a = torus(g);
            assert_eq!(a.dim(), 1 << (2 * g));
        }
    }

    #[test]
    fn jet_has_nonzero_ddbar_in_degree_zero() {
        let a = jet(1);
        let zz = a.names.iter().position(|n| n == "z·z̄").unwrap();
        let x = a.space.basis_vector(zz);
        assert!(!gis_zero(&a.space.del(&a.space.delbar(&x))));
    }

    #[test]
    fn nilpotent_algebras_satisfy_axioms() {
        let mut r = crate::random::rng(3);
        for _ in 0..3 {
            let a = nilpotent(&mut r, 2, 1);
            a.check_axioms().unwrap();
        }
    }

    #[test]
    fn hodge_projection_examples() {
        let a = torus(1);
        let s = &a.space;
        let x = gadd(&s.basis_vector(1), &s.basis_vector(2));
        let kept = s.hodge(&x, 1, 0);
        assert_eq!(kept.iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(s.bideg[kept.iter().position(|c| !c.is_zero()).unwrap()], (1, 0));
        assert_eq!(s.hodge(&x, UNBOUNDED, UNBOUNDED), x);
        assert_eq!(s.pi(&s.pi(&x, 1), 1), s.pi(&x, 1));
        assert!(s.is_real_of_twist(&s.pi(&x, 1), 1));
    }

    #[test]
    fn hodge_submodule_is_a_module() {
        let a = torus(2);
        let m = DolbeaultModule::hodge_submodule(&a, 1).unwrap();
        assert_eq!(m.dim(), 4 + 4 + 1 + 0 + 0);
    }
}
