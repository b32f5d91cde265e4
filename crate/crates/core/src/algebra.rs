//! Differential graded algebras given by a product on a finite complex.

use crate::complex::{tensor, Complex, ComplexMap, Pairing, TensorLayout};
use crate::error::{Error, Result};
use crate::linalg::{q, vec_scale, zero_vec, Matrix, Q};
use crate::random::{small_q, Rand};
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct DgAlgebra {
    complex: Arc<Complex>,
    mult: Pairing,
    unit: Vec<Q>,
}

impl DgAlgebra {
    /// `mult` must be a chain map `A⊗A → A` (Leibniz rule) and `unit ∈ A^0` a two-sided unit.
    pub fn new(complex: impl Into<Arc<Complex>>, mult: ComplexMap, unit: Vec<Q>) -> Result<Self> {
        let complex = complex.into();
        let mult = Pairing::new(complex.clone(), complex.clone(), mult)?;
        if !mult.target().same_underlying(&complex) {
            return Err(Error::pre("product does not land in the algebra"));
        }
        let alg = DgAlgebra { complex, mult, unit };
        alg.check_unit()?;
        Ok(alg)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<Complex> {
        self.complex.clone()
    }

    pub fn pairing(&self) -> &Pairing {
        &self.mult
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn mul(&self, p: i32, x: &[Q], r: i32, y: &[Q]) -> Vec<Q> {
        self.mult.apply(p, x, r, y)
    }

    fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        if self.complex.is_zero() {
            std::ops::RangeInclusive::new(1, 0)
        } else {
            self.complex.lo()..=self.complex.hi()
        }
    }

    fn basis(&self, p: i32) -> Vec<Vec<Q>> {
        Matrix::identity(self.complex.dim(p)).columns()
    }

    fn check_unit(&self) -> Result<()> {
        for p in self.degrees() {
            for x in self.basis(p) {
                if self.mul(0, &self.unit, p, &x) != x || self.mul(p, &x, 0, &self.unit) != x {
                    return Err(Error::invariant("unit", format!("degree {p}")));
                }
            }
        }
        Ok(())
    }

    /// `(xy)z = x(yz)` on basis triples.
    pub fn check_associative(&self) -> Result<()> {
        for p in self.degrees() {
            for r in self.degrees() {
                for s in self.degrees() {
                    for x in self.basis(p) {
                        for y in self.basis(r) {
                            let xy = self.mul(p, &x, r, &y);
                            for z in self.basis(s) {
                                let yz = self.mul(r, &y, s, &z);
                                if self.mul(p + r, &xy, s, &z) != self.mul(p, &x, r + s, &yz) {
                                    return Err(Error::invariant("associativity", format!("degrees {p}, {r}, {s}")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `xy = (-1)^{pr} yx` on basis pairs.
    pub fn check_graded_commutative(&self) -> Result<()> {
        for p in self.degrees() {
            for r in self.degrees() {
                for x in self.basis(p) {
                    for y in self.basis(r) {
                        let lhs = self.mul(p, &x, r, &y);
                        let rhs = vec_scale(&self.mul(r, &y, p, &x), &crate::linalg::sign((p * r) as i64));
                        if lhs != rhs {
                            return Err(Error::invariant("graded commutativity", format!("degrees {p}, {r}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A chain map between dg algebras that is multiplicative and unital.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: DgAlgebra,
    target: DgAlgebra,
    map: ComplexMap,
}

impl AlgebraMorphism {
    pub fn new(source: DgAlgebra, target: DgAlgebra, map: ComplexMap) -> Result<Self> {
        map.check_chain()?;
        if !map.source().same_underlying(source.complex()) || !map.target().same_underlying(target.complex()) {
            return Err(Error::pre("morphism does not match the algebras"));
        }
        for p in source.degrees() {
            for r in source.degrees() {
                for x in source.basis(p) {
                    for y in source.basis(r) {
                        let lhs = map.apply(p + r, &source.mul(p, &x, r, &y));
                        let rhs = target.mul(p, &map.apply(p, &x), r, &map.apply(r, &y));
                        if lhs != rhs {
                            return Err(Error::invariant("multiplicativity", format!("degrees {p}, {r}")));
                        }
                    }
                }
            }
        }
        Ok(AlgebraMorphism { source, target, map })
    }

    pub fn source(&self) -> &DgAlgebra {
        &self.source
    }

    pub fn target(&self) -> &DgAlgebra {
        &self.target
    }

    pub fn map(&self) -> &ComplexMap {
        &self.map
    }
}

/// Differential of a generator: a list of `(i, j, c)` meaning `c·y_i y_j` with `i < j`.
pub type Quadratic = Vec<(usize, usize, Q)>;

/// Exterior algebra on degree-one generators with a derivation determined by its values on
/// generators. Basis in degree `k`: increasing `k`-subsets, in lexicographic order of bitmasks.
#[derive(Clone, Debug)]
pub struct Exterior {
    pub gens: usize,
    pub differential: Vec<Quadratic>,
}

impl Exterior {
    pub fn basis(&self, k: usize) -> Vec<u32> {
        let mut v: Vec<u32> = (0u32..(1 << self.gens)).filter(|m| m.count_ones() as usize == k).collect();
        v.sort_by_key(|m| (0..self.gens).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>());
        v
    }

    fn index(&self, k: usize) -> BTreeMap<u32, usize> {
        self.basis(k).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// `e_S ∧ e_T` as a signed monomial.
    pub fn wedge(s: u32, t: u32) -> Option<(i64, u32)> {
        if s & t != 0 {
            return None;
        }
        // sign: number of pairs (i in S, j in T) with i > j
        let mut inversions = 0;
        for j in 0..32 {
            if t & (1 << j) != 0 {
                inversions += (s >> (j + 1)).count_ones();
            }
        }
        Some((if inversions % 2 == 0 { 1 } else { -1 }, s | t))
    }

    fn d_monomial(&self, m: u32) -> Vec<(Q, u32)> {
        let mut out = Vec::new();
        let mut pos = 0;
        for g in 0..self.gens {
            if m & (1 << g) == 0 {
                continue;
            }
            let before = m & ((1u32 << g) - 1);
            let after = m & !((1u32 << (g + 1)) - 1);
            let eps = if pos % 2 == 0 { 1 } else { -1 };
            for (i, j, c) in &self.differential[g] {
                let quad = (1u32 << i) | (1u32 << j);
                let Some((s1, w1)) = Exterior::wedge(before, quad) else {
                    continue;
                };
                let Some((s2, w2)) = Exterior::wedge(w1, after) else {
                    continue;
                };
                out.push((c * q(eps * s1 * s2), w2));
            }
            pos += 1;
        }
        out
    }

    pub fn complex(&self) -> Result<Complex> {
        let g = self.gens;
        let dims: Vec<usize> = (0..=g).map(|k| self.basis(k).len()).collect();
        let diffs = (0..g)
            .map(|k| {
                let rows = self.index(k + 1);
                let mut m = Matrix::zeros(dims[k + 1], dims[k]);
                for (col, mono) in self.basis(k).into_iter().enumerate() {
                    for (c, w) in self.d_monomial(mono) {
                        m.add_at(rows[&w], col, &c);
                    }
                }
                m
            })
            .collect();
        Complex::new(0, dims, diffs)
    }

    pub fn algebra(&self) -> Result<DgAlgebra> {
        let c = Arc::new(self.complex()?);
        let t = tensor(&c, &c);
        let layout = TensorLayout::new(&c, &c);
        let g = self.gens as i32;
        let maps = (0..=2 * g)
            .map(|n| {
                let mut m = Matrix::zeros(c.dim(n), t.dim(n));
                if n <= g {
                    let idx = self.index(n as usize);
                    for p in 0.max(n - g)..=n.min(g) {
                        let bp = self.basis(p as usize);
                        let bq = self.basis((n - p) as usize);
                        let off = layout.offset(n, p);
                        for (i, &s) in bp.iter().enumerate() {
                            for (j, &tm) in bq.iter().enumerate() {
                                if let Some((sg, w)) = Exterior::wedge(s, tm) {
                                    m.set(idx[&w], off + i * bq.len() + j, q(sg));
                                }
                            }
                        }
                    }
                }
                (n, m)
            })
            .collect();
        let mult = ComplexMap::new(Arc::new(t), c.clone(), maps)?;
        let mut unit = zero_vec(1);
        unit[0] = q(1);
        DgAlgebra::new(c, mult, unit)
    }

    /// Quotient by the ideal generated by the closed generators in `killed`, with the
    /// projection as an algebra morphism.
    pub fn quotient(&self, killed: &[usize]) -> Result<(Exterior, ComplexMap)> {
        for &k in killed {
            if !self.differential[k].is_empty() {
                return Err(Error::pre("only closed generators can be killed"));
            }
        }
        let keep: Vec<usize> = (0..self.gens).filter(|i| !killed.contains(i)).collect();
        let new_index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let differential = keep
            .iter()
            .map(|&o| {
                self.differential[o]
                    .iter()
                    .filter(|(i, j, _)| new_index.contains_key(i) && new_index.contains_key(j))
                    .map(|(i, j, c)| (new_index[i], new_index[j], c.clone()))
                    .collect()
            })
            .collect();
        let quot = Exterior { gens: keep.len(), differential };
        let (src, tgt) = (Arc::new(self.complex()?), Arc::new(quot.complex()?));
        let maps = (0..=self.gens as i32)
            .map(|k| {
                let mut m = Matrix::zeros(tgt.dim(k), src.dim(k));
                if (k as usize) <= quot.gens {
                    let idx = quot.index(k as usize);
                    for (col, mono) in self.basis(k as usize).into_iter().enumerate() {
                        if killed.iter().any(|&x| mono & (1 << x) != 0) {
                            continue;
                        }
                        let mut w = 0u32;
                        for (o, n) in &new_index {
                            if mono & (1 << o) != 0 {
                                w |= 1 << n;
                            }
                        }
                        m.set(idx[&w], col, q(1));
                    }
                }
                (k, m)
            })
            .collect();
        Ok((quot, ComplexMap::new(src, tgt, maps)?))
    }

    /// Two-step nilpotent: the first `closed` generators are cocycles, the rest have random
    /// differentials in the span of products of closed generators.
    pub fn random_two_step(r: &mut Rand, closed: usize, open: usize) -> Exterior {
        let mut differential = vec![Vec::new(); closed];
        for _ in 0..open {
            let mut terms = Vec::new();
            for i in 0..closed {
                for j in (i + 1)..closed {
                    let c = small_q(r, 0.6);
                    if !c.is_zero() {
                        terms.push((i, j, c));
                    }
                }
            }
            differential.push(terms);
        }
        Exterior { gens: closed + open, differential }
    }
}

/// A random quotient morphism between two-step exterior algebras.
pub fn random_algebra_morphism(r: &mut Rand) -> AlgebraMorphism {
    let closed = r.gen_range(2..=3);
    let open = r.gen_range(1..=2);
    let ext = Exterior::random_two_step(r, closed, open);
    let killed: Vec<usize> = (0..closed).filter(|_| r.gen_bool(0.4)).collect();
    let killed = if killed.is_empty() { vec![0] } else { killed };
    let (quot, map) = ext.quotient(&killed).expect("closed generators");
    let a = ext.algebra().expect("exterior algebra");
    let b = quot.algebra().expect("quotient algebra");
    let map = map.retarget(a.complex_arc(), b.complex_arc()).expect("same shapes");
    AlgebraMorphism::new(a, b, map).expect("quotient map is multiplicative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng;

    #[test]
    fn heisenberg_algebra() {
        let ext = Exterior { gens: 3, differential: vec![vec![], vec![], vec![(0, 1, q(1))]] };
        let a = ext.algebra().unwrap();
        a.check_associative().unwrap();
        a.check_graded_commutative().unwrap();
        let betti: Vec<usize> = (0..=3).map(|n| a.complex().cohomology(n).dim()).collect();
        assert_eq!(betti, vec![1, 2, 2, 1]);
    }

    #[test]
    fn random_morphisms_are_valid() {
        let mut r = rng(2);
        for _ in 0..5 {
            let f = random_algebra_morphism(&mut r);
            f.target().check_associative().unwrap();
        }
    }
}
