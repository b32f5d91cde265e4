//! The Deligne complex of a Dolbeault algebra or module, its homotopy equivalence with the
//! simple complex of `A_ℝ(p) ⊕ F^p A → A`, and the Deligne product.
//!
//! A twist `p` is an integer weight. "`x` is real of twist `p`" means `κx = (−1)^p x`.

use crate::complex::{simple_of_map, tensor, Complex, ComplexMap, Pairing, TensorLayout};
use crate::dolbeault::{gadd, gis_zero, gscale_q, gsub, Bigraded, DolbeaultAlgebra, DolbeaultModule, GVec, G, UNBOUNDED};
use crate::error::{Error, Result};
use crate::linalg::{q, sign, Coordinates, Matrix, Q};
use crate::random::{random_vec, Rand};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Where `D^n(A,p)` lives: `(ambient degree, Hodge bound, twist)`.
pub fn window(n: i32, p: i32) -> (i32, i32, i32) {
    if n < 2 * p {
        (n - 1, n - p, p - 1)
    } else {
        (n, p, p)
    }
}

fn parity(e: i32) -> Q {
    sign(e as i64)
}

/// A family of `ℚ`-subspaces of the realified space, one per degree.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    ambient: usize,
    coords: BTreeMap<i32, Coordinates>,
}

impl GradedSubspace {
    /// `{x supported on indices(n) : κx = (−1)^twist(n) x}`, or no reality condition.
    pub fn build(
        space: &Bigraded,
        degrees: impl Iterator<Item = i32>,
        indices: impl Fn(i32) -> Vec<usize>,
        twist: impl Fn(i32) -> Option<i32>,
    ) -> Self {
        let n2 = 2 * space.dim();
        let kappa = space.kappa_real_matrix();
        let coords = degrees
            .map(|n| {
                let idx = indices(n);
                let mut sel = Matrix::zeros(n2, 2 * idx.len());
                for (k, &i) in idx.iter().enumerate() {
                    sel.set(i, 2 * k, q(1));
                    sel.set(space.dim() + i, 2 * k + 1, q(1));
                }
                let basis = match twist(n) {
                    None => sel,
                    Some(t) if sel.cols() > 0 => {
                        let cond = kappa.mul(&sel).sub(&sel.scale(&parity(t)));
                        sel.mul(&cond.kernel())
                    }
                    Some(_) => sel,
                };
                (n, Coordinates::new(basis))
            })
            .collect();
        GradedSubspace { ambient: n2, coords }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.coords.get(&n).map_or(0, |c| c.dim())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.coords.keys().copied()
    }

    pub fn coords(&self, n: i32, x: &[G]) -> Option<Vec<Q>> {
        let v = Bigraded::realify(x);
        match self.coords.get(&n) {
            Some(c) => c.coords(&v),
            None => gis_zero(x).then(Vec::new),
        }
    }

    pub fn element(&self, n: i32, c: &[Q]) -> GVec {
        match self.coords.get(&n) {
            Some(co) => Bigraded::complexify(&co.embed(c)),
            None => vec![G::default(); self.ambient / 2],
        }
    }

    pub fn basis_element(&self, n: i32, i: usize) -> GVec {
        let mut c = vec![q(0); self.dim(n)];
        c[i] = q(1);
        self.element(n, &c)
    }

    /// Matrix of `op` from degree `sn` here to degree `tn` of `target`.
    pub fn matrix_to(&self, sn: i32, target: &GradedSubspace, tn: i32, op: impl Fn(&[G]) -> GVec) -> Result<Matrix> {
        let cols = (0..self.dim(sn))
            .map(|i| {
                let y = op(&self.basis_element(sn, i));
                target.coords(tn, &y).ok_or_else(|| Error::invariant("operator lands in the target subspace", format!("degree {sn}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_cols(target.dim(tn), &cols))
    }

    /// The complex with differential `d` (degree `n` to `n+1`).
    pub fn complex(&self, d: impl Fn(i32, &[G]) -> GVec) -> Result<Complex> {
        let lo = self.coords.keys().next().copied().unwrap_or(0);
        let hi = self.coords.keys().last().copied().unwrap_or(-1);
        let mats = (lo..hi).map(|n| self.matrix_to(n, self, n + 1, |x| d(n, x))).collect::<Result<Vec<_>>>()?;
        Complex::new(lo, (lo..=hi).map(|n| self.dim(n)).collect(), mats)
    }
}

/// `D(V, p)` for the underlying space `V` of a Dolbeault algebra or module.
#[derive(Clone, Debug)]
pub struct DeligneComplex {
    space: Arc<Bigraded>,
    weight: i32,
    sub: GradedSubspace,
    complex: Arc<Complex>,
}

impl DeligneComplex {
    pub fn new(space: Arc<Bigraded>, p: i32) -> Result<Self> {
        let top = space.top_degree();
        let sub = GradedSubspace::build(
            &space,
            0..=top + 1,
            |n| {
                let (deg, k, _) = window(n, p);
                (0..space.dim()).filter(|&i| space.degree(i) == deg && space.bideg[i].0 >= k && space.bideg[i].1 >= k).collect()
            },
            |n| Some(window(n, p).2),
        );
        let complex = sub.complex(|n, x| deligne_d(&space, n, p, x))?;
        Ok(DeligneComplex { space, weight: p, sub, complex: Arc::new(complex) })
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn space(&self) -> &Bigraded {
        &self.space
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<Complex> {
        self.complex.clone()
    }

    pub fn subspace(&self) -> &GradedSubspace {
        &self.sub
    }

    pub fn dim(&self, n: i32) -> usize {
        self.complex.dim(n)
    }

    /// Membership in `D^n` straight from the defining conditions.
    pub fn contains(&self, n: i32, x: &[G]) -> bool {
        let (deg, k, t) = window(n, self.weight);
        let in_window = x.iter().enumerate().all(|(i, v)| {
            let (a, b) = self.space.bideg[i];
            v == &G::default() || (a + b == deg && a >= k && b >= k)
        });
        in_window && self.space.is_real_of_twist(x, t)
    }

    pub fn coords(&self, n: i32, x: &[G]) -> Option<Vec<Q>> {
        if self.complex.dim(n) == 0 {
            return gis_zero(x).then(Vec::new);
        }
        self.sub.coords(n, x)
    }

    pub fn element(&self, n: i32, c: &[Q]) -> GVec {
        self.sub.element(n, c)
    }

    pub fn basis_element(&self, n: i32, i: usize) -> GVec {
        self.sub.basis_element(n, i)
    }

    pub fn d(&self, n: i32, x: &[G]) -> GVec {
        deligne_d(&self.space, n, self.weight, x)
    }

    pub fn random_element(&self, r: &mut Rand, n: i32) -> GVec {
        self.element(n, &random_vec(r, self.dim(n)))
    }
}

/// `d_D`: `−F^{n−p+1,n−p+1} d` below the junction, `−2∂∂̄` at `n = 2p−1`, `d` from `2p` on.
pub fn deligne_d(s: &Bigraded, n: i32, p: i32, x: &[G]) -> GVec {
    if n < 2 * p - 1 {
        gscale_q(&s.hodge(&s.d(x), n - p + 1, n - p + 1), &q(-1))
    } else if n == 2 * p - 1 {
        gscale_q(&s.del(&s.delbar(x)), &q(-2))
    } else {
        s.d(x)
    }
}

/// `r_p(x) = 2π_p(F^p d x)` below `2p`, the identity from `2p` on.
pub fn r_p(s: &Bigraded, n: i32, p: i32, x: &[G]) -> GVec {
    if n < 2 * p {
        gscale_q(&s.pi(&s.hodge(&s.d(x), p, UNBOUNDED), p), &q(2))
    } else {
        x.to_vec()
    }
}

/// The Deligne product `x • y` of `x ∈ D^n(A,p)` and `y ∈ D^m(M,q)`, where `wedge` is the
/// product or module action `A × M → M` and the result lies in `D^{n+m}(M,p+q)`.
#[allow(clippy::too_many_arguments)]
pub fn deligne_product(
    sa: &Bigraded,
    sm: &Bigraded,
    wedge: &dyn Fn(&[G], &[G]) -> GVec,
    x: &[G],
    n: i32,
    p: i32,
    y: &[G],
    m: i32,
    qw: i32,
) -> GVec {
    let (l, r) = (n + m, p + qw);
    let low_x = n < 2 * p;
    let low_y = m < 2 * qw;
    match (low_x, low_y) {
        (true, true) => gadd(&gscale_q(&wedge(&r_p(sa, n, p, x), y), &parity(n)), &wedge(x, &r_p(sm, m, qw, y))),
        (true, false) => {
            if l < 2 * r {
                sm.hodge(&wedge(x, y), l - r, l - r)
            } else {
                let first = sm.hodge(&wedge(&r_p(sa, n, p, x), y), r, r);
                let corr = sm.pi(&sm.del(&sm.component(&wedge(x, y), r - 1, l - r)), r);
                gadd(&first, &gscale_q(&corr, &q(2)))
            }
        }
        // (−1)^{nm} y • x, written with the A-factor on the left
        (false, true) => {
            if l < 2 * r {
                gscale_q(&sm.hodge(&wedge(x, y), l - r, l - r), &parity(n))
            } else {
                let first = sm.hodge(&wedge(x, &r_p(sm, m, qw, y)), r, r);
                let corr = sm.pi(&sm.del(&sm.component(&wedge(x, y), r - 1, l - r)), r);
                gadd(&first, &gscale_q(&corr, &(q(2) * parity(n))))
            }
        }
        (false, false) => wedge(x, y),
    }
}

/// Deligne complexes of a Dolbeault algebra for a range of weights, with the product.
#[derive(Clone, Debug)]
pub struct DeligneAlgebra {
    alg: Arc<DolbeaultAlgebra>,
    space: Arc<Bigraded>,
    complexes: BTreeMap<i32, Arc<DeligneComplex>>,
}

impl DeligneAlgebra {
    /// Builds `D(A,p)` for `0 ≤ p ≤ max_weight`.
    pub fn new(alg: Arc<DolbeaultAlgebra>, max_weight: i32) -> Result<Self> {
        let space = Arc::new(alg.space.clone());
        let complexes = (0..=max_weight).map(|p| Ok((p, Arc::new(DeligneComplex::new(space.clone(), p)?)))).collect::<Result<_>>()?;
        Ok(DeligneAlgebra { alg, space, complexes })
    }

    pub fn algebra(&self) -> &DolbeaultAlgebra {
        &self.alg
    }

    pub fn max_weight(&self) -> i32 {
        *self.complexes.keys().last().unwrap_or(&-1)
    }

    pub fn complex(&self, p: i32) -> Arc<DeligneComplex> {
        match self.complexes.get(&p) {
            Some(c) => c.clone(),
            None => Arc::new(DeligneComplex::new(self.space.clone(), p).expect("Deligne complex")),
        }
    }

    pub fn product(&self, x: &[G], n: i32, p: i32, y: &[G], m: i32, qw: i32) -> GVec {
        let w = |a: &[G], b: &[G]| self.alg.mul(a, b);
        deligne_product(&self.space, &self.space, &w, x, n, p, y, m, qw)
    }

    pub fn r_p(&self, n: i32, p: i32, x: &[G]) -> GVec {
        r_p(&self.space, n, p, x)
    }

    /// The product as a chain-level pairing `D(A,p) ⊗ D(A,q) → D(A,p+q)`.
    pub fn pairing(&self, p: i32, qw: i32) -> Result<Pairing> {
        let (x, y, z) = (self.complex(p), self.complex(qw), self.complex(p + qw));
        product_pairing(&x, &y, &z, &|a, n, b, m| self.product(a, n, p, b, m, qw))
    }

    /// `x • y = (−1)^{nm} y • x` on all basis pairs.
    pub fn check_graded_commutative(&self, p: i32, qw: i32) -> Result<()> {
        let (cx, cy) = (self.complex(p), self.complex(qw));
        let cz = self.complex(p + qw);
        for n in cx.complex().lo()..=cx.complex().hi() {
            for m in cy.complex().lo()..=cy.complex().hi() {
                for i in 0..cx.dim(n) {
                    let x = cx.basis_element(n, i);
                    for j in 0..cy.dim(m) {
                        let y = cy.basis_element(m, j);
                        let xy = self.product(&x, n, p, &y, m, qw);
                        let yx = gscale_q(&self.product(&y, m, qw, &x, n, p), &parity(n * m));
                        if xy != yx {
                            return Err(Error::invariant(
                                "graded commutativity of the Deligne product",
                                format!("weights {p},{qw} degrees {n},{m}"),
                            ));
                        }
                        if !cz.contains(n + m, &xy) {
                            return Err(Error::invariant(
                                "product lands in the Deligne complex",
                                format!("weights {p},{qw} degrees {n},{m}"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact associativity on `D^{2p} × D^{2q} × D^{2r}`, and associativity up to `d_D`-coboundaries
    /// on cocycles in every degree.
    pub fn pseudo_assoc_check(&self, p: i32, qw: i32, rw: i32, mode: AssocSweep) -> Result<AssocReport> {
        let prod = |x: &[G], n, pp, y: &[G], m, qq| self.product(x, n, pp, y, m, qq);
        pseudo_assoc(&self.complex(p), &self.complex(qw), &self.complex(rw), &self.complex(p + qw + rw), mode, &prod, &prod, &prod, &prod)
    }

    /// `r_{p+q}(x•y) − r_p(x) r_q(y) ∈ d_A(A)` for cocycles `x`, `y`.
    pub fn check_r_multiplicative(&self, p: i32, qw: i32) -> Result<()> {
        let s = &self.space;
        let (cx, cy) = (self.complex(p), self.complex(qw));
        let exact: BTreeMap<i32, Coordinates> = (0..=s.top_degree())
            .map(|n| {
                let src: Vec<usize> = s.indices_of_degree(n - 1);
                let cols: Vec<Vec<Q>> = src
                    .iter()
                    .flat_map(|&i| {
                        let e = s.basis_vector(i);
                        let ie = gscale_q(&e, &q(1)).into_iter().map(|v| &v * &G::i()).collect::<GVec>();
                        [Bigraded::realify(&s.d(&e)), Bigraded::realify(&s.d(&ie))]
                    })
                    .collect();
                let m = Matrix::from_cols(2 * s.dim(), &cols);
                (n, Coordinates::new(crate::linalg::span_basis(&[&m], 2 * s.dim())))
            })
            .collect();
        for n in cx.complex().lo()..=cx.complex().hi() {
            let zx = cx.complex().cohomology(n);
            for m in cy.complex().lo()..=cy.complex().hi() {
                let zy = cy.complex().cohomology(m);
                for x in zx.cocycles().columns() {
                    let x = cx.element(n, &x);
                    for y in zy.cocycles().columns() {
                        let y = cy.element(m, &y);
                        let lhs = self.r_p(n + m, p + qw, &self.product(&x, n, p, &y, m, qw));
                        let rhs = self.alg.mul(&self.r_p(n, p, &x), &self.r_p(m, qw, &y));
                        let diff = Bigraded::realify(&gsub(&lhs, &rhs));
                        let ok = match exact.get(&(n + m)) {
                            Some(c) => c.contains(&diff),
                            None => diff.iter().all(|v| v == &q(0)),
                        };
                        if !ok {
                            return Err(Error::invariant(
                                "r_p multiplicative up to coboundaries",
                                format!("weights {p},{qw} degrees {n},{m}"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds a pairing out of the tensor product from a bilinear formula on elements.
pub fn product_pairing(
    x: &DeligneComplex,
    y: &DeligneComplex,
    z: &DeligneComplex,
    f: &dyn Fn(&[G], i32, &[G], i32) -> GVec,
) -> Result<Pairing> {
    let t = tensor(x.complex(), y.complex());
    let layout = TensorLayout::new(x.complex(), y.complex());
    let map = ComplexMap::from_fn(t.clone(), z.complex_arc(), |l| {
        let mut mat = Matrix::zeros(z.dim(l), layout.dim(l));
        for n in x.complex().lo()..=x.complex().hi() {
            let m = l - n;
            let (dx, dy) = (x.dim(n), y.dim(m));
            if dx == 0 || dy == 0 {
                continue;
            }
            let off = layout.offset(l, n);
            for i in 0..dx {
                let a = x.basis_element(n, i);
                for j in 0..dy {
                    let c = z.coords(l, &f(&a, n, &y.basis_element(m, j), m)).expect("product lands in the Deligne complex");
                    for (k, v) in c.into_iter().enumerate() {
                        mat.set(k, off + i * dy + j, v);
                    }
                }
            }
        }
        mat
    })?;
    Pairing::new(x.complex_arc(), y.complex_arc(), map)
}

/// Which cocycle triples the off-diagonal part of a pseudo-associativity check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocSweep {
    /// Every triple of basis cocycles.
    Exhaustive,
    /// `per_degree` random cocycle triples for each degree triple.
    Sampled { seed: u64, per_degree: usize },
}

/// Outcome of a pseudo-associativity sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssocReport {
    pub exact_triples: usize,
    pub cocycle_triples: usize,
}

type Bil<'a> = dyn Fn(&[G], i32, i32, &[G], i32, i32) -> GVec + 'a;

/// `(x•y)•z` against `x•(y•z)` with `x ∈ D(p)`, `y ∈ D(q)`, `z ∈ D(r)` where the last factor may
/// live in a module. `xy`: first two factors; `xy_z`: result times third; `yz`, `x_yz` likewise.
#[allow(clippy::too_many_arguments)]
fn pseudo_assoc(
    cx: &DeligneComplex,
    cy: &DeligneComplex,
    cz: &DeligneComplex,
    out: &DeligneComplex,
    mode: AssocSweep,
    xy: &Bil,
    xy_z: &Bil,
    yz: &Bil,
    x_yz: &Bil,
) -> Result<AssocReport> {
    let (p, qw, rw) = (cx.weight(), cy.weight(), cz.weight());
    let mut report = AssocReport::default();
    // every pairwise product is formed once per degree triple
    let sweep = |xs: &[GVec], n: i32, ys: &[GVec], m: i32, zs: &[GVec], k: i32, check: &mut dyn FnMut(GVec) -> Result<()>| {
        let yzs: Vec<Vec<GVec>> = ys.iter().map(|y| zs.iter().map(|z| yz(y, m, qw, z, k, rw)).collect()).collect();
        for x in xs {
            for (y, yz_row) in ys.iter().zip(&yzs) {
                let xy_v = xy(x, n, p, y, m, qw);
                for (z, yz_v) in zs.iter().zip(yz_row) {
                    let left = xy_z(&xy_v, n + m, p + qw, z, k, rw);
                    check(gsub(&left, &x_yz(x, n, p, yz_v, m + k, qw + rw)))?;
                }
            }
        }
        Ok(())
    };
    let basis = |c: &DeligneComplex, n: i32| -> Vec<GVec> { (0..c.dim(n)).map(|i| c.basis_element(n, i)).collect() };
    // diagonal even degrees: exact
    let (n, m, k) = (2 * p, 2 * qw, 2 * rw);
    sweep(&basis(cx, n), n, &basis(cy, m), m, &basis(cz, k), k, &mut |diff| {
        if !gis_zero(&diff) {
            return Err(Error::invariant("exact associativity on diagonal even degrees", format!("weights {p},{qw},{rw}")));
        }
        report.exact_triples += 1;
        Ok(())
    })?;
    // everywhere else: cocycle inputs give coboundary discrepancies
    let cocycles = |c: &DeligneComplex| -> BTreeMap<i32, Vec<GVec>> {
        (c.complex().lo()..=c.complex().hi())
            .map(|n| (n, c.complex().cohomology(n).cocycles().columns().iter().map(|v| c.element(n, v)).collect()))
            .collect()
    };
    let (zx, zy, zz) = (cocycles(cx), cocycles(cy), cocycles(cz));
    let mut r = crate::random::rng(match mode {
        AssocSweep::Sampled { seed, .. } => seed,
        AssocSweep::Exhaustive => 0,
    });
    let mut pick = |c: &DeligneComplex, all: &[GVec]| -> Vec<GVec> {
        match mode {
            AssocSweep::Exhaustive => all.to_vec(),
            AssocSweep::Sampled { per_degree, .. } if !all.is_empty() => (0..per_degree)
                .map(|_| {
                    let w = random_vec(&mut r, all.len());
                    all.iter().zip(&w).fold(vec![G::default(); c.space().dim()], |acc, (v, s)| gadd(&acc, &gscale_q(v, s)))
                })
                .collect(),
            AssocSweep::Sampled { .. } => vec![],
        }
    };
    for (&n, xs) in &zx {
        for (&m, ys) in &zy {
            for (&k, zs) in &zz {
                if (n, m, k) == (2 * p, 2 * qw, 2 * rw) || n + m + k > out.complex().hi() {
                    continue;
                }
                let target = out.complex().cohomology(n + m + k);
                let (xs, ys, zs) = (pick(cx, xs), pick(cy, ys), pick(cz, zs));
                sweep(&xs, n, &ys, m, &zs, k, &mut |diff| {
                    if !gis_zero(&diff) {
                        let c = out
                            .coords(n + m + k, &diff)
                            .ok_or_else(|| Error::invariant("associator lands in the Deligne complex", format!("degrees {n},{m},{k}")))?;
                        if !target.is_coboundary(&c) {
                            return Err(Error::invariant(
                                "associator is a coboundary on cocycles",
                                format!("weights {p},{qw},{rw} degrees {n},{m},{k}"),
                            ));
                        }
                    }
                    report.cocycle_triples += 1;
                    Ok(())
                })?;
            }
        }
    }
    Ok(report)
}

/// Deligne complexes of a Dolbeault module with the action of a Deligne algebra.
#[derive(Clone, Debug)]
pub struct DeligneModule {
    algebra: Arc<DeligneAlgebra>,
    module: Arc<DolbeaultModule>,
    space: Arc<Bigraded>,
}

impl DeligneModule {
    pub fn new(algebra: Arc<DeligneAlgebra>, module: Arc<DolbeaultModule>) -> Result<Self> {
        module.check_axioms(algebra.algebra())?;
        let space = Arc::new(module.space.clone());
        Ok(DeligneModule { algebra, module, space })
    }

    pub fn complex(&self, p: i32) -> Result<DeligneComplex> {
        DeligneComplex::new(self.space.clone(), p)
    }

    pub fn action(&self, x: &[G], n: i32, p: i32, y: &[G], m: i32, qw: i32) -> GVec {
        let w = |a: &[G], b: &[G]| self.module.act(a, b);
        deligne_product(&self.algebra.space, &self.space, &w, x, n, p, y, m, qw)
    }

    /// The action as a pairing: checks the Leibniz rule.
    pub fn pairing(&self, p: i32, qw: i32) -> Result<Pairing> {
        let (x, y, z) = (self.algebra.complex(p), self.complex(qw)?, self.complex(p + qw)?);
        product_pairing(&x, &y, &z, &|a, n, b, m| self.action(a, n, p, b, m, qw))
    }

    /// `(x•y)·z` against `x·(y·z)` as in [`DeligneAlgebra::pseudo_assoc_check`].
    pub fn pseudo_assoc_check(&self, p: i32, qw: i32, rw: i32, mode: AssocSweep) -> Result<AssocReport> {
        let alg = |x: &[G], n, pp, y: &[G], m, qq| self.algebra.product(x, n, pp, y, m, qq);
        let act = |x: &[G], n, pp, y: &[G], m, qq| self.action(x, n, pp, y, m, qq);
        let (cx, cy) = (self.algebra.complex(p), self.algebra.complex(qw));
        pseudo_assoc(&cx, &cy, &self.complex(rw)?, &self.complex(p + qw + rw)?, mode, &alg, &act, &act, &act)
    }
}

/// The homotopy equivalence between `A(p)_D = s(A_ℝ(p) ⊕ F^p A → A)` and `D(A,p)`.
#[derive(Clone, Debug)]
pub struct DeligneHomotopy {
    pub simple: Arc<Complex>,
    pub psi: ComplexMap,
    pub phi: ComplexMap,
    pub h: BTreeMap<i32, Matrix>,
}

struct Parts {
    real: GradedSubspace,
    hodge: GradedSubspace,
    full: GradedSubspace,
}

impl Parts {
    fn split(&self, n: i32, v: &[Q]) -> (GVec, GVec, GVec) {
        let (a, b) = (self.real.dim(n), self.hodge.dim(n));
        (self.real.element(n, &v[..a]), self.hodge.element(n, &v[a..a + b]), self.full.element(n - 1, &v[a + b..]))
    }

    fn join(&self, n: i32, a: &[G], f: &[G], w: &[G]) -> Result<Vec<Q>> {
        let err = || Error::invariant("component lands in its subspace", format!("degree {n}"));
        let mut v = self.real.coords(n, a).ok_or_else(err)?;
        v.extend(self.hodge.coords(n, f).ok_or_else(err)?);
        v.extend(self.full.coords(n - 1, w).ok_or_else(err)?);
        Ok(v)
    }
}

impl DeligneHomotopy {
    pub fn new(d: &DeligneComplex) -> Result<Self> {
        let s = d.space().clone();
        let p = d.weight();
        let top = s.top_degree();
        let all = |n: i32| s.indices_of_degree(n);
        let parts = Parts {
            real: GradedSubspace::build(&s, 0..=top, all, |_| Some(p)),
            hodge: GradedSubspace::build(&s, 0..=top, |n| all(n).into_iter().filter(|&i| s.bideg[i].0 >= p).collect(), |_| None),
            full: GradedSubspace::build(&s, 0..=top, all, |_| None),
        };
        let dd = |_: i32, x: &[G]| s.d(x);
        let (cr, cf, ca) = (parts.real.complex(dd)?, parts.hodge.complex(dd)?, parts.full.complex(dd)?);
        let src = Complex::direct_sum(&[&cr, &cf]);
        let u = ComplexMap::from_fn(src, ca, |n| {
            let neg = parts.real.matrix_to(n, &parts.full, n, |x| gscale_q(x, &q(-1))).expect("A_ℝ(p) ⊂ A");
            let inc = parts.hodge.matrix_to(n, &parts.full, n, |x| x.to_vec()).expect("F^p A ⊂ A");
            Matrix::hstack(&[&neg, &inc])
        })?;
        let simple = Arc::new(simple_of_map(&u));
        let lo = simple.lo().min(d.complex().lo()) - 1;
        let hi = simple.hi().max(d.complex().hi()) + 1;
        let dc = d.complex_arc();
        let phi = ComplexMap::new(
            dc.clone(),
            simple.clone(),
            (lo..=hi).map(|n| Ok((n, phi_matrix(d, &parts, &simple, n)?))).collect::<Result<_>>()?,
        )?;
        let psi =
            ComplexMap::new(simple.clone(), dc, (lo..=hi).map(|n| Ok((n, psi_matrix(d, &parts, &simple, n)?))).collect::<Result<_>>()?)?;
        let h = (lo..=hi).map(|n| Ok((n, h_matrix(d, &parts, &simple, n)?))).collect::<Result<_>>()?;
        Ok(DeligneHomotopy { simple, psi, phi, h })
    }

    /// `ψφ = Id`, `φψ − Id = dh + hd`, and `ψ` a quasi-isomorphism.
    pub fn check(&self) -> Result<()> {
        let s = &self.simple;
        let d = self.phi.source();
        for n in d.lo()..=d.hi() {
            if !self.psi.map(n).mul(&self.phi.map(n)).is_identity() {
                return Err(Error::invariant("ψ∘φ = Id", format!("degree {n}")));
            }
        }
        for n in s.lo()..=s.hi() {
            let lhs = self.phi.map(n).mul(&self.psi.map(n)).sub(&Matrix::identity(s.dim(n)));
            let mut rhs = Matrix::zeros(s.dim(n), s.dim(n));
            if s.dim(n - 1) > 0 {
                rhs = rhs.add(&s.diff(n - 1).mul(&self.h[&n]));
            }
            if s.dim(n + 1) > 0 {
                rhs = rhs.add(&self.h[&(n + 1)].mul(&s.diff(n)));
            }
            if lhs != rhs {
                return Err(Error::invariant("φ∘ψ − Id = dh + hd", format!("degree {n}")));
            }
        }
        if !self.psi.is_quasi_iso() {
            return Err(Error::invariant("ψ is a quasi-isomorphism", "cohomology"));
        }
        Ok(())
    }
}

fn phi_matrix(d: &DeligneComplex, parts: &Parts, simple: &Complex, n: i32) -> Result<Matrix> {
    let s = d.space();
    let p = d.weight();
    let cols = (0..d.dim(n))
        .map(|i| {
            let x = d.basis_element(n, i);
            if n < 2 * p {
                let hol = s.del(&s.component(&x, p - 1, n - p));
                let a = gsub(&hol, &s.delbar(&s.component(&x, n - p, p - 1)));
                parts.join(n, &a, &gscale_q(&hol, &q(2)), &x)
            } else {
                parts.join(n, &x, &x, &vec![G::default(); x.len()])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(simple.dim(n), &cols))
}

fn psi_matrix(d: &DeligneComplex, parts: &Parts, simple: &Complex, n: i32) -> Result<Matrix> {
    let s = d.space();
    let p = d.weight();
    let cols = (0..simple.dim(n))
        .map(|i| {
            let mut e = vec![q(0); simple.dim(n)];
            e[i] = q(1);
            let (a, _, w) = parts.split(n, &e);
            let y = if n < 2 * p {
                s.pi(&s.hodge(&w, n - p, n - p), p - 1)
            } else {
                gadd(&s.hodge(&a, p, p), &gscale_q(&s.pi(&s.del(&s.component(&w, p - 1, n - p)), p), &q(2)))
            };
            d.coords(n, &y).ok_or_else(|| Error::invariant("ψ lands in the Deligne complex", format!("degree {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(d.dim(n), &cols))
}

fn h_matrix(d: &DeligneComplex, parts: &Parts, simple: &Complex, n: i32) -> Result<Matrix> {
    let s = d.space();
    let p = d.weight();
    let zero = vec![G::default(); s.dim()];
    let cols = (0..simple.dim(n))
        .map(|i| {
            let mut e = vec![q(0); simple.dim(n)];
            e[i] = q(1);
            let (_, _, w) = parts.split(n, &e);
            let hol_part = |x: &[G], k: i32| s.hodge(x, k, UNBOUNDED);
            let anti_part = |x: &[G], k: i32| s.hodge(x, UNBOUNDED, k);
            let (a, f) = if n < 2 * p {
                let a = s.pi(&gadd(&anti_part(&w, p), &anti_part(&w, n - p)), p);
                let f = gscale_q(&hol_part(&s.pi(&w, p - 1), p), &q(-2));
                (a, f)
            } else {
                let a = gscale_q(&s.pi(&anti_part(&w, n - p), p), &q(2));
                let f = gsub(&gscale_q(&s.hodge(&w, p, p), &q(-1)), &gscale_q(&hol_part(&s.pi(&w, p - 1), n - p), &q(2)));
                (a, f)
            };
            parts.join(n - 1, &a, &f, &zero)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(simple.dim(n - 1), &cols))
}
