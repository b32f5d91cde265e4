//! Truncated relative cohomology `Ĥ^n(A,B)`: pairs `(a, b̃)` with `d a = 0`,
//! `f(a) = d b`, and `b` taken modulo coboundaries.

use crate::algebra::AlgebraMorphism;
use crate::complex::{tensor_maps, CohomologySpace, ComplexMap, Pairing};
use crate::error::{Error, Result};
use crate::linalg::{
    concat, induced_matrix, is_exact_at, is_zero_vec, sign, vec_add, vec_neg, vec_scale, vec_sub, zero_vec, ClassSpace, Matrix,
    Subquotient, Q,
};
use crate::random::{random_vec, Rand};
use crate::relative::{CornerPairings, CornerSquare, RelativePair, RelativeProduct};

/// A representative `(a, b)` of a truncated class of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedClass {
    pub degree: i32,
    pub a: Vec<Q>,
    pub b: Vec<Q>,
}

impl TruncatedClass {
    pub fn add(&self, other: &TruncatedClass) -> TruncatedClass {
        assert_eq!(self.degree, other.degree);
        TruncatedClass { degree: self.degree, a: vec_add(&self.a, &other.a), b: vec_add(&self.b, &other.b) }
    }

    pub fn scale(&self, s: &Q) -> TruncatedClass {
        TruncatedClass { degree: self.degree, a: vec_scale(&self.a, s), b: vec_scale(&self.b, s) }
    }
}

/// `Ĥ^n(A,B)` for a fixed pair and degree. As a vector space it is `H^n` of the simple
/// complex of `f` restricted to the stupid truncation `σ_{≥n} A`.
#[derive(Clone, Debug)]
pub struct TruncatedGroup {
    pair: RelativePair,
    degree: i32,
    space: Subquotient,
}

impl TruncatedGroup {
    pub fn new(pair: &RelativePair, n: i32) -> Self {
        let (a, b) = (pair.source(), pair.target());
        let sub = pair.simple().diff(n).kernel();
        let coboundaries = b.diff(n - 2).image();
        let quot = Matrix::vstack(&[&Matrix::zeros(a.dim(n), coboundaries.cols()), &coboundaries]);
        let space = Subquotient::new(&sub, &quot);
        TruncatedGroup { pair: pair.clone(), degree: n, space }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn pair(&self) -> &RelativePair {
        &self.pair
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subquotient {
        &self.space
    }

    fn vector(&self, t: &TruncatedClass) -> Vec<Q> {
        concat(&[&t.a, &t.b])
    }

    fn unpack(&self, v: &[Q]) -> TruncatedClass {
        let (a, b) = self.pair.split(self.degree, v);
        TruncatedClass { degree: self.degree, a, b }
    }

    /// Builds a class after checking `d a = 0` and `f(a) = d b`.
    pub fn element(&self, a: Vec<Q>, b: Vec<Q>) -> Result<TruncatedClass> {
        let t = TruncatedClass { degree: self.degree, a, b };
        self.check(&t)?;
        Ok(t)
    }

    pub fn check(&self, t: &TruncatedClass) -> Result<()> {
        let n = self.degree;
        let (sa, sb) = (self.pair.source(), self.pair.target());
        if t.degree != n || t.a.len() != sa.dim(n) || t.b.len() != sb.dim(n - 1) {
            return Err(Error::pre(format!("truncated class has the wrong shape for degree {n}")));
        }
        if !is_zero_vec(&sa.d(n, &t.a)) {
            return Err(Error::invariant("d a = 0", format!("degree {n}")));
        }
        if self.pair.map().apply(n, &t.a) != sb.d(n - 1, &t.b) {
            return Err(Error::invariant("f(a) = d b", format!("degree {n}")));
        }
        Ok(())
    }

    pub fn class_of(&self, t: &TruncatedClass) -> Option<Vec<Q>> {
        self.space.class_of(&self.vector(t))
    }

    pub fn same_class(&self, s: &TruncatedClass, t: &TruncatedClass) -> bool {
        self.space.same_class(&self.vector(s), &self.vector(t))
    }

    pub fn is_zero(&self, t: &TruncatedClass) -> bool {
        self.space.is_zero_class(&self.vector(t))
    }

    pub fn representative(&self, i: usize) -> TruncatedClass {
        self.unpack(&self.space.representative(i))
    }

    pub fn lift(&self, c: &[Q]) -> TruncatedClass {
        self.unpack(&self.space.lift(c))
    }

    /// A random class with its `b` part moved by a random coboundary.
    pub fn random_element(&self, r: &mut Rand) -> TruncatedClass {
        let c = random_vec(r, self.dim());
        let mut t = self.lift(&c);
        let b = self.pair.target();
        let shift = b.d(self.degree - 2, &random_vec(r, b.dim(self.degree - 2)));
        t.b = vec_add(&t.b, &shift);
        t
    }

    /// `cl(a, b̃) = [a, b]` as a cocycle of `s(f)`.
    pub fn cl(&self, t: &TruncatedClass) -> Vec<Q> {
        self.vector(t)
    }

    /// `ω(a, b̃) = a`.
    pub fn omega(&self, t: &TruncatedClass) -> Vec<Q> {
        t.a.clone()
    }

    /// `a(x̃) = (−d x, −f(x)~)` for `x ∈ A^{n-1}`.
    pub fn a_map(&self, x: &[Q]) -> TruncatedClass {
        let n = self.degree;
        TruncatedClass { degree: n, a: vec_neg(&self.pair.source().d(n - 1, x)), b: vec_neg(&self.pair.map().apply(n - 1, x)) }
    }

    /// `b([y]) = (0, −ỹ)` for a cocycle `y ∈ B^{n-1}`.
    pub fn b_map(&self, y: &[Q]) -> Result<TruncatedClass> {
        let n = self.degree;
        let b = self.pair.target();
        if !is_zero_vec(&b.d(n - 1, y)) {
            return Err(Error::pre("b-map input is not a cocycle"));
        }
        Ok(TruncatedClass { degree: n, a: zero_vec(self.pair.source().dim(n)), b: vec_neg(y) })
    }
}

impl ClassSpace for TruncatedGroup {
    fn dim(&self) -> usize {
        self.space.dim()
    }
    fn representative(&self, i: usize) -> Vec<Q> {
        self.space.representative(i)
    }
    fn class_of(&self, v: &[Q]) -> Option<Vec<Q>> {
        self.space.class_of(v)
    }
}

fn cocycles(m: &Matrix) -> Subquotient {
    let k = m.kernel();
    Subquotient::new(&k, &Matrix::zeros(k.rows(), 0))
}

fn surjective(m: &Matrix) -> bool {
    m.rows() == 0 || (m.cols() > 0 && m.rank() == m.rows())
}

fn injective(m: &Matrix) -> bool {
    m.cols() == 0 || (m.rows() > 0 && m.rank() == m.cols())
}

fn mat(src: &dyn ClassSpace, tgt: &dyn ClassSpace, f: impl Fn(&[Q]) -> Vec<Q>, what: &str) -> Result<Matrix> {
    induced_matrix(src, tgt, f).ok_or_else(|| Error::invariant("structure map well defined", what.to_string()))
}

/// The three exact sequences through `Ĥ^n(A,B)`, checked by ranks:
///
/// `H^{n-1}(A,B) → Ã^{n-1} → Ĥ^n → H^n(A,B) → 0`,
/// `0 → H^{n-1}(B) → Ĥ^n → Z^n(A) → H^n(B)`,
/// `H^{n-1}(A,B) → H^{n-1}(A) → Ĥ^n → H^n(A,B) ⊕ Z^n(A) → H^n(A) → 0`.
pub fn check_exact_sequences(pair: &RelativePair, n: i32) -> Result<()> {
    let (a, b, f) = (pair.source(), pair.target(), pair.map());
    let hat = TruncatedGroup::new(pair, n);
    let rel_prev: CohomologySpace = pair.cohomology(n - 1);
    let rel: CohomologySpace = pair.cohomology(n);
    let a_tilde = Subquotient::cokernel(a.dim(n - 1), &a.diff(n - 2).image());
    let hb_prev = b.cohomology(n - 1);
    let hb = b.cohomology(n);
    let ha_prev = a.cohomology(n - 1);
    let ha = a.cohomology(n);
    let z = cocycles(&a.diff(n));
    let split_hat = |v: &[Q]| pair.split(n, v);
    let fail = |what: &str| Err(Error::invariant("truncated exact sequence", format!("{what} in degree {n}")));

    // first sequence
    let rel_to_tilde = mat(&rel_prev, &a_tilde, |v| pair.split(n - 1, v).0, "H(A,B) → Ã")?;
    let a_mat = mat(&a_tilde, &hat, |x| hat.vector(&hat.a_map(x)), "a")?;
    let cl_mat = mat(&hat, &rel, |v| v.to_vec(), "cl")?;
    if !is_exact_at(&rel_to_tilde, &a_mat) {
        return fail("first sequence at Ã");
    }
    if !is_exact_at(&a_mat, &cl_mat) {
        return fail("first sequence at Ĥ");
    }
    if !surjective(&cl_mat) {
        return fail("cl surjective");
    }

    // second sequence
    let b_mat = mat(&hb_prev, &hat, |y| hat.vector(&hat.b_map(y).expect("cocycle")), "b")?;
    let omega_mat = mat(&hat, &z, |v| split_hat(v).0, "ω")?;
    let z_to_hb = mat(&z, &hb, |x| f.apply(n, x), "Z(A) → H(B)")?;
    if !injective(&b_mat) {
        return fail("b injective");
    }
    if !is_exact_at(&b_mat, &omega_mat) {
        return fail("second sequence at Ĥ");
    }
    if !is_exact_at(&omega_mat, &z_to_hb) {
        return fail("second sequence at Z(A)");
    }

    // third sequence
    let proj_prev = pair.projection(n - 1);
    let a_cls = mat(&ha_prev, &hat, |x| hat.vector(&hat.a_map(x)), "a on classes")?;
    let cl_omega = Matrix::vstack(&[&cl_mat, &omega_mat]);
    let z_to_ha = mat(&z, &ha, |x| x.to_vec(), "Z(A) → H(A)")?;
    let to_ha = Matrix::hstack(&[&pair.projection(n), &z_to_ha.neg()]);
    if !is_exact_at(&proj_prev, &a_cls) {
        return fail("third sequence at H(A)");
    }
    if !is_exact_at(&a_cls, &cl_omega) {
        return fail("third sequence at Ĥ");
    }
    if !is_exact_at(&cl_omega, &to_ha) {
        return fail("third sequence at H(A,B) ⊕ Z(A)");
    }
    if !surjective(&to_ha) {
        return fail("third sequence onto H(A)");
    }
    Ok(())
}

/// `(a1,b̃1) * (a2,b̃2) = (a1•a2, ((b1•a2, (-1)^n a1•b2), (-1)^{n-1} b1•b2)~)` in
/// `Ĥ^{n+m}(E00, s(-j))`.
pub fn star(prod: &RelativeProduct, t1: &TruncatedClass, t2: &TruncatedClass) -> TruncatedClass {
    let (n, m) = (t1.degree, t2.degree);
    let a = prod.pairings().m00.apply(n, &t1.a, m, &t2.a);
    let b = prod.correction(n, &t1.a, &t1.b, m, &t2.a, &t2.b);
    TruncatedClass { degree: n + m, a, b }
}

/// The group receiving `*` products of degree `n + m`.
pub fn star_group(prod: &RelativeProduct, degree: i32) -> TruncatedGroup {
    TruncatedGroup::new(prod.target(), degree)
}

/// Corner data of a dg-algebra morphism `f: A → B`: `E00 = A`, the other corners `B`,
/// `α = β = f`, `γ = δ = Id`, products `a•a'`, `b•f(a')`, `f(a)•b'`, `b•b'`.
pub fn algebra_corners(morph: &AlgebraMorphism) -> Result<RelativeProduct> {
    let f = morph.map();
    let (a, b) = (morph.source(), morph.target());
    let id_b = ComplexMap::identity(b.complex_arc());
    let mb = b.pairing().map();
    let pairings = CornerPairings {
        m00: a.pairing().clone(),
        m10: Pairing::new(b.complex_arc(), a.complex_arc(), mb.compose(&tensor_maps(&id_b, f)))?,
        m01: Pairing::new(a.complex_arc(), b.complex_arc(), mb.compose(&tensor_maps(f, &id_b)))?,
        m11: b.pairing().clone(),
    };
    let square = CornerSquare { alpha: f.clone(), beta: f.clone(), gamma: id_b.clone(), delta: id_b };
    let pair = RelativePair::new(f.clone());
    RelativeProduct::new(pair.clone(), pair, square, pairings)
}

/// Product on `Ĥ(A,B)` for a dg-algebra morphism, `(a1 a2, (b1 f(a2))~)`.
///
/// Uses a strictly associative target; the hypothesis on the associativity homotopy is
/// checked as strict associativity on the images of basis triples.
#[derive(Clone, Debug)]
pub struct AlgebraStar {
    morph: AlgebraMorphism,
    pair: RelativePair,
}

impl AlgebraStar {
    pub fn new(morph: AlgebraMorphism) -> Result<Self> {
        morph.source().check_associative()?;
        check_associative_on_image(&morph)?;
        let pair = RelativePair::new(morph.map().clone());
        Ok(AlgebraStar { morph, pair })
    }

    pub fn pair(&self) -> &RelativePair {
        &self.pair
    }

    pub fn morphism(&self) -> &AlgebraMorphism {
        &self.morph
    }

    pub fn group(&self, n: i32) -> TruncatedGroup {
        TruncatedGroup::new(&self.pair, n)
    }

    pub fn product(&self, t1: &TruncatedClass, t2: &TruncatedClass) -> TruncatedClass {
        let (n, m) = (t1.degree, t2.degree);
        let (a, b) = (self.morph.source(), self.morph.target());
        let fa2 = self.morph.map().apply(m, &t2.a);
        TruncatedClass { degree: n + m, a: a.mul(n, &t1.a, m, &t2.a), b: b.mul(n - 1, &t1.b, m, &fa2) }
    }
}

fn check_associative_on_image(morph: &AlgebraMorphism) -> Result<()> {
    let (a, b, f) = (morph.source().complex(), morph.target(), morph.map());
    if a.is_zero() {
        return Ok(());
    }
    let images = |p: i32| -> Vec<Vec<Q>> { Matrix::identity(a.dim(p)).columns().iter().map(|x| f.apply(p, x)).collect() };
    for p in a.lo()..=a.hi() {
        for r in a.lo()..=a.hi() {
            for s in a.lo()..=a.hi() {
                for x in images(p) {
                    for y in images(r) {
                        let xy = b.mul(p, &x, r, &y);
                        for z in images(s) {
                            let lhs = b.mul(p + r, &xy, s, &z);
                            let rhs = b.mul(p, &x, r + s, &b.mul(r, &y, s, &z));
                            if !is_zero_vec(&vec_sub(&lhs, &rhs)) {
                                return Err(Error::invariant(
                                    "associativity homotopy vanishes on images",
                                    format!("degrees {p}, {r}, {s}"),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(-1)^{nm}` with the degrees of two classes.
pub fn koszul_sign(t1: &TruncatedClass, t2: &TruncatedClass) -> Q {
    sign((t1.degree * t2.degree) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_morphism, rng};

    #[test]
    fn a_map_of_cocycle_is_b_map_of_image() {
        let mut r = rng(31);
        for _ in 0..10 {
            let pair = RelativePair::new(random_morphism(&mut r, 3));
            for n in pair.degree_window() {
                let g = TruncatedGroup::new(&pair, n);
                let ha = pair.source().cohomology(n - 1);
                for i in 0..ha.dim() {
                    let x = ha.representative(i);
                    let lhs = g.a_map(&x);
                    let rhs = g.b_map(&pair.map().apply(n - 1, &x)).unwrap();
                    assert!(g.same_class(&lhs, &rhs));
                }
            }
        }
    }

    #[test]
    fn b_map_rejects_non_cocycles() {
        let mut r = rng(2);
        let pair = RelativePair::new(random_morphism(&mut r, 3));
        let b = pair.target();
        for n in pair.degree_window() {
            let g = TruncatedGroup::new(&pair, n);
            let d = b.diff(n - 1);
            if d.rows() > 0 && d.cols() > 0 && !d.is_zero() {
                let k = d.kernel();
                let bad = (0..d.cols()).map(|i| Matrix::identity(d.cols()).col(i)).find(|v| !k.in_column_space(v));
                if let Some(v) = bad {
                    assert!(g.b_map(&v).is_err());
                }
            }
        }
    }
}
