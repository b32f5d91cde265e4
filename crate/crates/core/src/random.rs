//! Seeded generators for complexes, chain maps and split sequences.

use crate::complex::{Complex, ComplexMap};
use crate::linalg::{q, Matrix, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integer, zero with probability about `zero_bias`.
pub fn small_q(r: &mut Rand, zero_bias: f64) -> Q {
    if r.gen_bool(zero_bias) {
        Q::zero()
    } else {
        let v: i64 = r.gen_range(1..=3);
        q(if r.gen_bool(0.5) { v } else { -v })
    }
}

pub fn random_matrix(r: &mut Rand, rows: usize, cols: usize, zero_bias: f64) -> Matrix {
    Matrix::from_rows(rows, cols, (0..rows * cols).map(|_| small_q(r, zero_bias)).collect())
}

pub fn random_vec(r: &mut Rand, n: usize) -> Vec<Q> {
    (0..n).map(|_| small_q(r, 0.3)).collect()
}

/// Product of random unit lower and upper triangular matrices.
pub fn random_invertible(r: &mut Rand, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, small_q(r, 0.5));
            u.set(j, i, small_q(r, 0.5));
        }
    }
    l.mul(&u)
}

/// Random complex on `lo..=hi` with every degree at most `max_dim` and
/// nontrivial cohomology, differentials, and coboundaries in general.
pub fn random_complex(r: &mut Rand, lo: i32, hi: i32, max_dim: usize) -> Complex {
    let len = (hi - lo + 1) as usize;
    // e[i]: part of degree lo+i mapped isomorphically onto the next degree
    let mut e = vec![0usize; len];
    let mut h = vec![0usize; len];
    for i in 0..len {
        let b = if i == 0 { 0 } else { e[i - 1] };
        let room = max_dim.saturating_sub(b);
        h[i] = r.gen_range(0..=room.min(2));
        let room2 = room - h[i];
        e[i] = if i + 1 < len { r.gen_range(0..=room2.min(2)) } else { 0 };
    }
    let dims: Vec<usize> = (0..len).map(|i| h[i] + e[i] + if i == 0 { 0 } else { e[i - 1] }).collect();
    let ps: Vec<Matrix> = dims.iter().map(|&d| random_invertible(r, d)).collect();
    let pinv: Vec<Matrix> = ps.iter().map(|p| p.inverse().unwrap()).collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|i| {
            // basis order in degree i: [B (from e[i-1]), H, E]
            let bi = if i == 0 { 0 } else { e[i - 1] };
            let mut d = Matrix::zeros(dims[i + 1], dims[i]);
            let scale = random_invertible(r, e[i]);
            d.add_block(0, bi + h[i], &scale);
            ps[i + 1].mul(&d).mul(&pinv[i])
        })
        .collect();
    Complex::new(lo, dims, diffs).expect("generated complex")
}

/// A basis of the space of chain maps `A → B`.
pub fn chain_map_basis(a: &Complex, b: &Complex) -> Vec<ComplexMap> {
    if a.is_zero() || b.is_zero() {
        return vec![];
    }
    let lo = a.lo().max(b.lo());
    let hi = a.hi().min(b.hi());
    if lo > hi {
        return vec![];
    }
    // unknowns: entries of f_n, row-major, for n in lo..=hi
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for n in lo..=hi {
        offsets.insert(n, total);
        total += a.dim(n) * b.dim(n);
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    // d_B f_n - f_{n+1} d_A = 0 for n in lo-1..=hi
    for n in (lo - 1)..=hi {
        let (ra, rb) = (a.dim(n), b.dim(n + 1));
        let db = b.diff(n);
        let da = a.diff(n);
        for i in 0..rb {
            for j in 0..ra {
                let mut row = vec![Q::zero(); total];
                if let Some(&off) = offsets.get(&n) {
                    for k in 0..b.dim(n) {
                        let c = db.get(i, k);
                        if !c.is_zero() {
                            row[off + k * a.dim(n) + j] += c;
                        }
                    }
                }
                if let Some(&off) = offsets.get(&(n + 1)) {
                    for k in 0..a.dim(n + 1) {
                        let c = da.get(k, j);
                        if !c.is_zero() {
                            row[off + i * a.dim(n + 1) + k] -= c;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(rows.len(), total, rows.into_iter().flatten().collect());
    let ker = sys.kernel();
    (0..ker.cols())
        .map(|c| {
            let v = ker.col(c);
            let maps = (lo..=hi)
                .map(|n| {
                    let off = offsets[&n];
                    (n, Matrix::from_rows(b.dim(n), a.dim(n), v[off..off + a.dim(n) * b.dim(n)].to_vec()))
                })
                .collect();
            ComplexMap::new(a.clone(), b.clone(), maps).expect("kernel element is a chain map")
        })
        .collect()
}

/// A random integer combination of chain-map basis elements.
pub fn random_chain_map(r: &mut Rand, a: &Complex, b: &Complex) -> ComplexMap {
    let basis = chain_map_basis(a, b);
    let mut f = ComplexMap::zero(a.clone(), b.clone());
    for m in &basis {
        let c = small_q(r, 0.4);
        if !c.is_zero() {
            f = f.add(&m.scale(&c));
        }
    }
    f
}

/// Random complexes on a small window together with a random chain map.
pub fn random_morphism(r: &mut Rand, max_dim: usize) -> ComplexMap {
    let lo = r.gen_range(-1..=0);
    let len = r.gen_range(1..=2);
    let a = random_complex(r, lo, lo + len, max_dim);
    let lo2 = r.gen_range(-1..=0);
    let len2 = r.gen_range(1..=2);
    let b = random_complex(r, lo2, lo2 + len2, max_dim);
    random_chain_map(r, &a, &b)
}

/// `C ⊕ C[1]` with the cone differential of the identity: acyclic.
pub fn random_acyclic(r: &mut Rand, lo: i32, hi: i32, max_dim: usize) -> Complex {
    let c = random_complex(r, lo, hi, max_dim);
    crate::complex::cone(&ComplexMap::identity(c))
}

/// An inclusion `A → A ⊕ K` with `K` acyclic, conjugated by random invertibles on the target.
pub fn random_quasi_iso(r: &mut Rand, max_dim: usize) -> ComplexMap {
    let lo = r.gen_range(-1..=0);
    let a = random_complex(r, lo, lo + 2, max_dim);
    let k = random_acyclic(r, lo, lo + 1, max_dim.min(2));
    let b = Complex::direct_sum(&[&a, &k]);
    let inc: BTreeMap<i32, Matrix> =
        (b.lo()..=b.hi()).map(|n| (n, Matrix::vstack(&[&Matrix::identity(a.dim(n)), &Matrix::zeros(k.dim(n), a.dim(n))]))).collect();
    let f = ComplexMap::new(a, b, inc).expect("inclusion of a summand");
    conjugate_target(r, &f)
}

/// Replace the target basis by a random one: `B' = P B P^{-1}`, `f' = P f`.
pub fn conjugate_target(r: &mut Rand, f: &ComplexMap) -> ComplexMap {
    let b = f.target();
    if b.is_zero() {
        return f.clone();
    }
    let ps: BTreeMap<i32, Matrix> = (b.lo()..=b.hi()).map(|n| (n, random_invertible(r, b.dim(n)))).collect();
    let (b2, _) = conjugate(b, &ps);
    let maps = f.degrees().map(|n| (n, ps.get(&n).map_or_else(|| f.map(n).into_owned(), |p| p.mul(&f.map(n))))).collect();
    ComplexMap::new(f.source().clone(), b2, maps).expect("conjugated map")
}

fn conjugate(b: &Complex, ps: &BTreeMap<i32, Matrix>) -> (Complex, BTreeMap<i32, Matrix>) {
    let inv: BTreeMap<i32, Matrix> = ps.iter().map(|(n, p)| (*n, p.inverse().expect("invertible"))).collect();
    let diffs = (b.lo()..b.hi()).map(|n| ps[&(n + 1)].mul(&b.diff(n)).mul(&inv[&n])).collect();
    let dims = (b.lo()..=b.hi()).map(|n| b.dim(n)).collect();
    (Complex::new(b.lo(), dims, diffs).expect("conjugate complex"), inv)
}

/// A degreewise split short exact sequence `0 → A → B → C → 0` with a section of the
/// projection that is generally not a chain map and a nontrivial extension class.
pub struct SplitSample {
    pub f: ComplexMap,
    pub g: ComplexMap,
    pub section: BTreeMap<i32, Matrix>,
}

pub fn random_split_sequence(r: &mut Rand, max_dim: usize) -> SplitSample {
    let lo = r.gen_range(-1..=0);
    let a = random_complex(r, lo, lo + 2, max_dim);
    let c = random_complex(r, lo, lo + 2, max_dim);
    // h: C → A[1] chain map means d_A h + h d_C = 0
    let h = random_chain_map(r, &c, &a.shift(1));
    let (blo, bhi) = (lo, lo + 2);
    let dims: Vec<usize> = (blo..=bhi).map(|n| a.dim(n) + c.dim(n)).collect();
    let diffs = (blo..bhi)
        .map(|n| {
            let top = Matrix::hstack(&[&a.diff(n), &h.map(n)]);
            let bottom = Matrix::hstack(&[&Matrix::zeros(c.dim(n + 1), a.dim(n)), &c.diff(n)]);
            Matrix::vstack(&[&top, &bottom])
        })
        .collect();
    let b = Complex::new(blo, dims, diffs).expect("twisted sum");
    let ps: BTreeMap<i32, Matrix> = (blo..=bhi).map(|n| (n, random_invertible(r, b.dim(n)))).collect();
    let (b2, inv) = conjugate(&b, &ps);
    let mut fm = BTreeMap::new();
    let mut gm = BTreeMap::new();
    let mut sec = BTreeMap::new();
    for n in blo..=bhi {
        let (da, dc) = (a.dim(n), c.dim(n));
        let inc = Matrix::vstack(&[&Matrix::identity(da), &Matrix::zeros(dc, da)]);
        let proj = Matrix::hstack(&[&Matrix::zeros(dc, da), &Matrix::identity(dc)]);
        let f_n = ps[&n].mul(&inc);
        // perturb the canonical section by f∘k so that it stops being a chain map
        let k = random_matrix(r, da, dc, 0.5);
        let s_n = ps[&n].mul(&Matrix::vstack(&[&Matrix::zeros(da, dc), &Matrix::identity(dc)])).add(&f_n.mul(&k));
        fm.insert(n, f_n);
        gm.insert(n, proj.mul(&inv[&n]));
        sec.insert(n, s_n);
    }
    let b2 = std::sync::Arc::new(b2);
    let f = ComplexMap::new(a, b2.clone(), fm).expect("inclusion is a chain map");
    let g = ComplexMap::new(b2, c, gm).expect("projection is a chain map");
    SplitSample { f, g, section: sec }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_complexes_are_valid_and_reproducible() {
        let c1 = random_complex(&mut rng(7), 0, 3, 3);
        let c2 = random_complex(&mut rng(7), 0, 3, 3);
        assert_eq!(c1, c2);
        assert_eq!(c1.euler_characteristic(), c1.cohomology_euler_characteristic());
    }

    #[test]
    fn chain_maps_commute() {
        let mut r = rng(3);
        for _ in 0..10 {
            let f = random_morphism(&mut r, 3);
            assert!(f.is_chain_map());
        }
    }
}
