//! Simple complexes of tensor products of morphisms and the explicit sign
//! isomorphisms relating them.
//!
//! Every construction here works on labelled bases: the source and target of
//! a morphism `f_k: A_k → B_k` get atomic space ids `2k-1` (for `A_k`) and
//! `2k` (for `B_k`), so a basis vector of any tensor construction is a list of
//! atoms and the sign maps can be written down one basis vector at a time.

use crate::complex::{signed_relabeling, simple_of_map, tensor, Atom, Complex, ComplexMap, Label};
use crate::error::{Error, Result};
use crate::iterated::IteratedComplex;
use std::collections::BTreeMap;
use std::sync::Arc;

fn is_target(a: &Atom) -> bool {
    a.space.is_multiple_of(2)
}

/// Degree of the atom inside the simple complex of its morphism.
fn simple_degree(a: &Atom) -> i64 {
    a.deg as i64 + if is_target(a) { 1 } else { 0 }
}

fn pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A morphism with its source and target relabelled as spaces `2k-1` and `2k`.
pub fn labelled(f: &ComplexMap, k: u32) -> ComplexMap {
    let a = f.source().relabel(2 * k - 1);
    let b = f.target().relabel(2 * k);
    f.retarget(a, b).expect("relabelling keeps the chain condition")
}

/// `s(f)` with labelled basis.
pub fn labelled_simple(f: &ComplexMap, k: u32) -> Complex {
    simple_of_map(&labelled(f, k))
}

/// `s(f_1 ⊗ f_2)` built from the 2-iterated tensor product.
pub fn simple_of_tensor(f1: &ComplexMap, f2: &ComplexMap) -> Result<Complex> {
    let t = IteratedComplex::from_map(&labelled(f1, 1)).tensor2(&IteratedComplex::from_map(&labelled(f2, 2)))?;
    Ok(t.simple())
}

fn relabel_map(source: Arc<Complex>, target: Arc<Complex>, rule: impl Fn(&Label) -> Option<(i64, Label)>) -> Result<ComplexMap> {
    let lo = source.lo().min(target.lo());
    let hi = source.hi().max(target.hi());
    let mut maps = BTreeMap::new();
    for n in lo..=hi {
        maps.insert(n, signed_relabeling(&source, &target, n, &rule)?);
    }
    ComplexMap::new_unchecked(source, target, maps)
}

/// Sign of the pure tensor `x⊗y` under `s(f)⊗s(g) → s(f⊗g)`.
fn product_sign(x: &Atom, y: &Atom) -> i64 {
    let n = simple_degree(x);
    match (is_target(x), is_target(y)) {
        (false, false) | (true, false) => 1,
        (false, true) => pow(n),
        (true, true) => pow(n - 1),
    }
}

/// The isomorphism `s(f_1)⊗s(f_2) → s(f_1⊗f_2)`,
/// `(a_1,b_1)⊗(a_2,b_2) ↦ (a_1⊗a_2, (b_1⊗a_2, (-1)^n a_1⊗b_2), (-1)^{n-1} b_1⊗b_2)`.
pub fn funiso(f1: &ComplexMap, f2: &ComplexMap) -> Result<ComplexMap> {
    let src = Arc::new(tensor(&labelled_simple(f1, 1), &labelled_simple(f2, 2)));
    let tgt = Arc::new(simple_of_tensor(f1, f2)?);
    let m = relabel_map(src, tgt, |l| Some((product_sign(&l.0[0], &l.0[1]), l.clone())))?;
    m.check_chain()?;
    Ok(m)
}

/// Inverse of [`funiso`], written with the same signs in the other direction.
pub fn funiso_inverse(f1: &ComplexMap, f2: &ComplexMap) -> Result<ComplexMap> {
    let src = Arc::new(simple_of_tensor(f1, f2)?);
    let tgt = Arc::new(tensor(&labelled_simple(f1, 1), &labelled_simple(f2, 2)));
    let m = relabel_map(src, tgt, |l| Some((product_sign(&l.0[0], &l.0[1]), l.clone())))?;
    m.check_chain()?;
    Ok(m)
}

/// Outcome of checking one commutative square of sign isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub chain_maps: bool,
    pub commutes: bool,
    pub first_failure: Option<String>,
}

impl SquareReport {
    pub fn ok(&self) -> bool {
        self.chain_maps && self.commutes
    }
}

fn compare(lhs: &ComplexMap, rhs: &ComplexMap, maps: &[&ComplexMap]) -> SquareReport {
    let chain_maps = maps.iter().all(|m| m.is_chain_map());
    let mut first_failure = None;
    'outer: for n in lhs.degrees() {
        let (l, r) = (lhs.map(n), rhs.map(n));
        for j in 0..l.cols() {
            if l.col(j) != r.col(j) {
                let label = lhs.source().labels(n).map(|ls| ls[j].to_string()).unwrap_or_else(|| format!("#{j}"));
                first_failure = Some(format!("degree {n}, basis element {label}"));
                break 'outer;
            }
        }
    }
    SquareReport { chain_maps, commutes: first_failure.is_none(), first_failure }
}

/// The square `β₂∘α₁ = β₁∘α₂` with `α₁, β₁` product isomorphisms,
/// `α₂` the Koszul swap `(-1)^{nm}` and `β₂` the swap of `s(f_1⊗f_2)`.
pub fn commutativity_square(f1: &ComplexMap, f2: &ComplexMap) -> Result<SquareReport> {
    let l1 = labelled(f1, 1);
    let l2 = labelled(f2, 2);
    let s1 = simple_of_map(&l1);
    let s2 = simple_of_map(&l2);
    let s12 = Arc::new(tensor(&s1, &s2));
    let s21 = Arc::new(tensor(&s2, &s1));
    let t12 = Arc::new(IteratedComplex::from_map(&l1).tensor2(&IteratedComplex::from_map(&l2))?.simple());
    let t21 = Arc::new(IteratedComplex::from_map(&l2).tensor2(&IteratedComplex::from_map(&l1))?.simple());
    let same = |l: &Label| Some((product_sign(&l.0[0], &l.0[1]), l.clone()));
    let alpha1 = relabel_map(s12.clone(), t12.clone(), same)?;
    let beta1 = relabel_map(s21.clone(), t21.clone(), same)?;
    let alpha2 = relabel_map(s12, s21, |l| {
        let (x, y) = (&l.0[0], &l.0[1]);
        Some((pow(simple_degree(x) * simple_degree(y)), Label(vec![y.clone(), x.clone()])))
    })?;
    let beta2 = relabel_map(t12, t21, |l| {
        let (x, y) = (&l.0[0], &l.0[1]);
        let koszul = pow(x.deg as i64 * y.deg as i64);
        let extra = if is_target(x) && is_target(y) { -1 } else { 1 };
        Some((koszul * extra, Label(vec![y.clone(), x.clone()])))
    })?;
    let lhs = beta2.compose(&alpha1);
    let rhs = beta1.compose(&alpha2);
    Ok(compare(&lhs, &rhs, &[&alpha1, &alpha2, &beta1, &beta2]))
}

/// `s(f_1⊗f_2⊗f_3)`, the simple complex of the three-column diagram.
pub fn simple_of_triple(f1: &ComplexMap, f2: &ComplexMap, f3: &ComplexMap) -> Result<Complex> {
    let i1 = IteratedComplex::from_map(&labelled(f1, 1));
    let i2 = IteratedComplex::from_map(&labelled(f2, 2));
    let i3 = IteratedComplex::from_map(&labelled(f3, 3));
    Ok(i1.tensor2(&i2)?.tensor2(&i3)?.simple())
}

/// The same complex built as `f_1⊗(f_2⊗f_3)`.
pub fn simple_of_triple_right(f1: &ComplexMap, f2: &ComplexMap, f3: &ComplexMap) -> Result<Complex> {
    let i1 = IteratedComplex::from_map(&labelled(f1, 1));
    let i2 = IteratedComplex::from_map(&labelled(f2, 2));
    let i3 = IteratedComplex::from_map(&labelled(f3, 3));
    Ok(i1.tensor2(&i2.tensor2(&i3)?)?.simple())
}

/// Identity-on-labels map between the two bracketings of the triple tensor.
pub fn triple_bracketing_iso(f1: &ComplexMap, f2: &ComplexMap, f3: &ComplexMap) -> Result<ComplexMap> {
    let l = Arc::new(simple_of_triple(f1, f2, f3)?);
    let r = Arc::new(simple_of_triple_right(f1, f2, f3)?);
    relabel_map(l, r, |x| Some((1, x.clone())))
}

/// The square `β₂∘α₁ = β₁∘α₂` relating the two ways of multiplying three
/// relative classes; `α₁ = ι⊗Id`, `α₂ = Id⊗ι` with `ι` the product isomorphism.
pub fn associativity_square(f1: &ComplexMap, f2: &ComplexMap, f3: &ComplexMap) -> Result<SquareReport> {
    let s1 = labelled_simple(f1, 1);
    let s2 = labelled_simple(f2, 2);
    let s3 = labelled_simple(f3, 3);
    let src = Arc::new(tensor(&tensor(&s1, &s2), &s3));
    let t12 = simple_of_tensor(f1, f2)?;
    let i2 = IteratedComplex::from_map(&labelled(f2, 2));
    let i3 = IteratedComplex::from_map(&labelled(f3, 3));
    let t23 = i2.tensor2(&i3)?.simple();
    let mid1 = Arc::new(tensor(&t12, &s3));
    let mid2 = Arc::new(tensor(&s1, &t23));
    let tgt = Arc::new(simple_of_triple(f1, f2, f3)?);

    let alpha1 = relabel_map(src.clone(), mid1.clone(), |l| Some((product_sign(&l.0[0], &l.0[1]), l.clone())))?;
    let alpha2 = relabel_map(src, mid2.clone(), |l| Some((product_sign(&l.0[1], &l.0[2]), l.clone())))?;
    // (a,b)⊗(c,(d,e),f): sign depends on whether the first factor is a or b and on the pair (y,z)
    let beta1 = relabel_map(mid2, tgt.clone(), |l| {
        let (x, y, z) = (&l.0[0], &l.0[1], &l.0[2]);
        let n = simple_degree(x);
        let s = match (is_target(x), is_target(y), is_target(z)) {
            (_, false, false) => 1,
            (false, true, false) | (false, false, true) => pow(n),
            (true, true, false) | (true, false, true) => pow(n - 1),
            (_, true, true) => 1,
        };
        Some((s, l.clone()))
    })?;
    // (a,(b,c),d)⊗(e,f): n is the degree in s(f_1⊗f_2)
    let beta2 = relabel_map(mid1, tgt, |l| {
        let (x, y, z) = (&l.0[0], &l.0[1], &l.0[2]);
        let col = is_target(x) as i64 + is_target(y) as i64;
        let n = x.deg as i64 + y.deg as i64 + col;
        let s = if !is_target(z) {
            1
        } else {
            match col {
                0 => pow(n),
                1 => pow(n - 1),
                _ => pow(n - 2),
            }
        };
        Some((s, l.clone()))
    })?;
    let lhs = beta2.compose(&alpha1);
    let rhs = beta1.compose(&alpha2);
    Ok(compare(&lhs, &rhs, &[&alpha1, &alpha2, &beta1, &beta2]))
}

/// Matrix of the product isomorphism restricted to pure tensors `x⊗y` of given atoms;
/// exposed for reports and the command line.
pub fn product_sign_of(x: &Atom, y: &Atom) -> i64 {
    product_sign(x, y)
}

/// Checks that `s(f)` from the two-block formula equals the simple complex of the
/// 2-iterated encoding of `f`.
pub fn simple_matches_iterated(f: &ComplexMap) -> bool {
    IteratedComplex::from_map(f).simple().without_labels() == simple_of_map(f).without_labels()
}

pub fn ensure(cond: bool, name: &str, location: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invariant(name, location))
    }
}

/// Checks `funiso_inverse ∘ funiso = Id` and `funiso ∘ funiso_inverse = Id` degree by degree.
pub fn funiso_round_trip_is_identity(f1: &ComplexMap, f2: &ComplexMap) -> Result<bool> {
    let fw = funiso(f1, f2)?;
    let bw = funiso_inverse(f1, f2)?;
    let is_id = |c: ComplexMap| c.degrees().all(|n| c.map(n).is_identity() || c.map(n).rows() == 0);
    Ok(is_id(bw.compose(&fw)) && is_id(fw.compose(&bw)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn id_point() -> ComplexMap {
        ComplexMap::identity(Complex::concentrated(0, 1))
    }

    #[test]
    fn funiso_on_a_parts() {
        let f = id_point();
        let m = funiso(&f, &f).unwrap();
        // degree 0: only a1⊗a2
        assert_eq!(m.map(0).into_owned(), Matrix::identity(1));
    }

    #[test]
    fn funiso_degree_one_sign() {
        // f: ℚ[-1] → ℚ[-1]: a_1 in degree 1, b_2 in degree 0
        let a = Complex::concentrated(1, 1);
        let f = ComplexMap::identity(a.clone());
        let g = ComplexMap::identity(Complex::concentrated(0, 1));
        let m = funiso(&f, &g).unwrap();
        let src = m.source();
        let x = Atom { space: 1, deg: 1, idx: 0 };
        let y = Atom { space: 4, deg: 0, idx: 0 };
        let j = src.index_of(2, &Label(vec![x.clone(), y.clone()])).unwrap();
        let i = m.target().index_of(2, &Label(vec![x, y])).unwrap();
        assert_eq!(m.map(2).get(i, j), &crate::linalg::q(-1));
    }

    #[test]
    fn squares_commute_for_identities() {
        let f = id_point();
        assert!(commutativity_square(&f, &f).unwrap().ok());
        assert!(associativity_square(&f, &f, &f).unwrap().ok());
    }

    #[test]
    fn zero_maps_associate() {
        let z = ComplexMap::zero(Complex::concentrated(0, 1), Complex::concentrated(0, 1));
        assert!(associativity_square(&z, &z, &z).unwrap().ok());
    }

    #[test]
    fn morphism_simple_matches_iterated() {
        assert!(simple_matches_iterated(&id_point()));
    }
}
