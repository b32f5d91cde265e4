//! Green objects and their `*`-product in a finite cover model.
//!
//! `X` is a finite set of points and `E(W)` is the algebra of maps `W → fiber` for a Dolbeault
//! algebra `fiber`, so restrictions are projections and Mayer–Vietoris exactness holds by
//! extension by zero. A Green object for a support `S ⊂ X` of weight `p` is a truncated class in
//! `Ĥ^{2p}(D(E_X,p), D(E_{X∖S},p))`.

use crate::complex::{Complex, ComplexMap, Pairing, TensorLayout};
use crate::deligne::{deligne_d, DeligneAlgebra};
use crate::dolbeault::{gadd, gscale_q, GVec, G};
use crate::error::{Error, Result};
use crate::linalg::{q, vec_add, Matrix, Q};
use crate::random::{random_matrix, small_q, Rand};
use crate::relative::{CornerPairings, CornerSquare, RelativePair, RelativeProduct, SplitExactSequence};
use crate::truncated::{star, TruncatedClass, TruncatedGroup};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

pub type Support = BTreeSet<usize>;

fn complement(points: usize, s: &Support) -> Support {
    (0..points).filter(|i| !s.contains(i)).collect()
}

/// `(X; Y, Z)` with `U = X∖Y`, `V = X∖Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub points: usize,
    pub y: Support,
    pub z: Support,
}

impl Cover {
    pub fn new(points: usize, y: Support, z: Support) -> Result<Self> {
        if y.iter().chain(&z).any(|&i| i >= points) {
            return Err(Error::input("support outside the point set"));
        }
        Ok(Cover { points, y, z })
    }

    pub fn u(&self) -> Support {
        complement(self.points, &self.y)
    }

    pub fn v(&self) -> Support {
        complement(self.points, &self.z)
    }

    pub fn u_and_v(&self) -> Support {
        self.u().intersection(&self.v()).copied().collect()
    }

    pub fn u_or_v(&self) -> Support {
        self.u().union(&self.v()).copied().collect()
    }

    pub fn all(&self) -> Support {
        (0..self.points).collect()
    }

    /// `Y ∪ Z = X`, so `U ∩ V` is empty.
    pub fn is_degenerate(&self) -> bool {
        self.u_and_v().is_empty()
    }

    pub fn swapped(&self) -> Cover {
        Cover { points: self.points, y: self.z.clone(), z: self.y.clone() }
    }
}

/// Scalar partition of unity on `U ∪ V`: `σ_YZ = 1` on `Y∖Z`, `0` on `Z∖Y`, and `σ_ZY = 1 − σ_YZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// `σ_YZ` at each point (only points of `U ∪ V` matter).
    pub sigma_yz: Vec<Q>,
}

impl Partition {
    pub fn new(cover: &Cover, sigma_yz: Vec<Q>) -> Result<Self> {
        if sigma_yz.len() != cover.points {
            return Err(Error::input("one σ value per point"));
        }
        for i in cover.y.difference(&cover.z) {
            if sigma_yz[*i] != q(1) {
                return Err(Error::pre("σ_YZ must be 1 on Y∖Z"));
            }
        }
        for i in cover.z.difference(&cover.y) {
            if sigma_yz[*i] != q(0) {
                return Err(Error::pre("σ_YZ must vanish on Z∖Y"));
            }
        }
        Ok(Partition { sigma_yz })
    }

    /// Random values in the overlap `U ∩ V`.
    pub fn random(cover: &Cover, r: &mut Rand) -> Self {
        let sigma_yz = (0..cover.points)
            .map(|i| match (cover.y.contains(&i), cover.z.contains(&i)) {
                (true, false) => q(1),
                (false, true) => q(0),
                _ => small_q(r, 0.2),
            })
            .collect();
        Partition { sigma_yz }
    }

    pub fn yz(&self, i: usize) -> Q {
        self.sigma_yz[i].clone()
    }

    pub fn zy(&self, i: usize) -> Q {
        q(1) - &self.sigma_yz[i]
    }

    /// The partition for the swapped cover `(X; Z, Y)`.
    pub fn swapped(&self) -> Partition {
        Partition { sigma_yz: (0..self.sigma_yz.len()).map(|i| self.zy(i)).collect() }
    }
}

/// How the Mayer–Vietoris sequence is split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// `c ↦ (−σ_YZ c, σ_ZY c)`.
    Partition(Partition),
    /// The partition section plus `i∘K` for a random degree-zero `K`: not a chain map, so the
    /// correction `σ d c − d σ c` is nonzero.
    Synthetic(Partition, u64),
}

/// Sections `D(E_W, p)` of the pointwise Deligne complexes over subsets of `X`.
#[derive(Debug)]
pub struct CoverModel {
    fiber: Arc<DeligneAlgebra>,
    points: usize,
    pairings: Mutex<BTreeMap<(i32, i32), Arc<Pairing>>>,
}

impl CoverModel {
    pub fn new(fiber: Arc<DeligneAlgebra>, points: usize) -> Self {
        CoverModel { fiber, points, pairings: Mutex::new(BTreeMap::new()) }
    }

    pub fn fiber(&self) -> &DeligneAlgebra {
        &self.fiber
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn all(&self) -> Support {
        (0..self.points).collect()
    }

    fn fiber_pairing(&self, p: i32, qw: i32) -> Result<Arc<Pairing>> {
        if let Some(pr) = self.pairings.lock().unwrap().get(&(p, qw)) {
            return Ok(pr.clone());
        }
        let pr = Arc::new(self.fiber.pairing(p, qw)?);
        self.pairings.lock().unwrap().insert((p, qw), pr.clone());
        Ok(pr)
    }

    /// `D(E_W, p)`: one copy of the fiber complex per point of `W`, in increasing order.
    pub fn sections(&self, w: &Support, p: i32) -> Complex {
        let c = self.fiber.complex(p);
        Complex::direct_sum(&vec![c.complex(); w.len()])
    }

    /// Restriction `D(E_W) → D(E_W')` for `W' ⊂ W`.
    pub fn restriction(&self, from: &Support, to: &Support, p: i32) -> Result<ComplexMap> {
        if !to.is_subset(from) {
            return Err(Error::pre("restriction target is not a subset"));
        }
        let c = self.fiber.complex(p);
        let pos: Vec<usize> = to.iter().map(|x| from.iter().position(|y| y == x).unwrap()).collect();
        ComplexMap::from_fn(self.sections(from, p), self.sections(to, p), |n| {
            let d = c.dim(n);
            let mut m = Matrix::zeros(d * to.len(), d * from.len());
            for (k, &j) in pos.iter().enumerate() {
                m.add_block(k * d, j * d, &Matrix::identity(d));
            }
            m
        })
    }

    /// `(x • y)(w) = x(w) • y(w)` from `D(E_WL,p) ⊗ D(E_WR,q)` to `D(E_WO,p+q)`, `WO ⊂ WL ∩ WR`.
    pub fn pointwise_pairing(&self, wl: &Support, p: i32, wr: &Support, qw: i32, wo: &Support) -> Result<Pairing> {
        if !wo.is_subset(wl) || !wo.is_subset(wr) {
            return Err(Error::pre("pairing target outside both factors"));
        }
        let fp = self.fiber_pairing(p, qw)?;
        let (cx, cy, cz) = (self.fiber.complex(p), self.fiber.complex(qw), self.fiber.complex(p + qw));
        let flay = TensorLayout::new(cx.complex(), cy.complex());
        let (left, right) = (self.sections(wl, p), self.sections(wr, qw));
        let layout = TensorLayout::new(&left, &right);
        let src = crate::complex::tensor(&left, &right);
        let li: Vec<usize> = wo.iter().map(|x| wl.iter().position(|y| y == x).unwrap()).collect();
        let ri: Vec<usize> = wo.iter().map(|x| wr.iter().position(|y| y == x).unwrap()).collect();
        let map = ComplexMap::from_fn(src, self.sections(wo, p + qw), |l| {
            let dz = cz.dim(l);
            let mut m = Matrix::zeros(dz * wo.len(), layout.dim(l));
            let fm = fp.map().map(l);
            for n in cx.complex().lo()..=cx.complex().hi() {
                let (dx, dy) = (cx.dim(n), cy.dim(l - n));
                if dx == 0 || dy == 0 {
                    continue;
                }
                let (off, foff) = (layout.offset(l, n), flay.offset(l, n));
                let row_len = dy * wr.len();
                for (k, (&a, &b)) in li.iter().zip(&ri).enumerate() {
                    for i in 0..dx {
                        for j in 0..dy {
                            let col = off + (a * dx + i) * row_len + b * dy + j;
                            for t in 0..dz {
                                let v = fm.get(t, foff + i * dy + j);
                                if v != &q(0) {
                                    m.set(k * dz + t, col, v.clone());
                                }
                            }
                        }
                    }
                }
            }
            m
        })?;
        Pairing::new(left, right, map)
    }

    /// `D(E_X, p) → D(E_{X∖S}, p)`.
    pub fn pair(&self, support: &Support, p: i32) -> Result<RelativePair> {
        Ok(RelativePair::new(self.restriction(&self.all(), &complement(self.points, support), p)?))
    }

    pub fn green_group(&self, support: &Support, p: i32) -> Result<TruncatedGroup> {
        Ok(TruncatedGroup::new(&self.pair(support, p)?, 2 * p))
    }

    /// Fiber element at `point` of a section vector over `w` in degree `n`.
    pub fn at(&self, w: &Support, p: i32, n: i32, v: &[Q], point: usize) -> GVec {
        let c = self.fiber.complex(p);
        let d = c.dim(n);
        match w.iter().position(|x| *x == point) {
            Some(k) => c.element(n, &v[k * d..(k + 1) * d]),
            None => vec![G::default(); self.fiber.algebra().dim()],
        }
    }

    /// Section vector over `w` from fiber elements, one per point.
    pub fn assemble(&self, w: &Support, p: i32, n: i32, value: impl Fn(usize) -> GVec) -> Result<Vec<Q>> {
        let c = self.fiber.complex(p);
        let mut out = Vec::with_capacity(c.dim(n) * w.len());
        for &x in w {
            let e = value(x);
            out.extend(
                c.coords(n, &e)
                    .ok_or_else(|| Error::invariant("pointwise value lies in the Deligne complex", format!("point {x}, degree {n}")))?,
            );
        }
        Ok(out)
    }
}

/// A truncated class together with the relative class it is a Green object for.
#[derive(Clone, Debug)]
pub struct GreenObject {
    pub support: Support,
    pub weight: i32,
    pub class: TruncatedClass,
    pub designated: Vec<Q>,
}

impl GreenObject {
    pub fn new(model: &CoverModel, support: Support, weight: i32, class: TruncatedClass, designated: Vec<Q>) -> Result<Self> {
        let group = model.green_group(&support, weight)?;
        group.check(&class)?;
        let h = group.pair().cohomology(2 * weight);
        if !h.is_cocycle(&designated) || !h.same_class(&group.cl(&class), &designated) {
            return Err(Error::invariant("cl(g) equals the designated class", format!("weight {weight}")));
        }
        Ok(GreenObject { support, weight, class, designated })
    }

    /// A random Green object for its own class.
    pub fn random(model: &CoverModel, support: Support, weight: i32, r: &mut Rand) -> Result<Self> {
        let group = model.green_group(&support, weight)?;
        let class = group.random_element(r);
        let designated = group.cl(&class);
        Self::new(model, support, weight, class, designated)
    }

    pub fn group(&self, model: &CoverModel) -> Result<TruncatedGroup> {
        model.green_group(&self.support, self.weight)
    }

    pub fn omega(&self) -> &[Q] {
        &self.class.a
    }
}

/// Corner data and the split Mayer–Vietoris sequence for one cover.
pub struct StarSetup {
    pub cover: Cover,
    pub product: RelativeProduct,
    pub mv: SplitExactSequence,
    /// `(Id, π′)` applied to the `b` part.
    pub pi_prime: ComplexMap,
    pub out_pair: RelativePair,
}

impl StarSetup {
    pub fn new(model: &CoverModel, cover: Cover, p: i32, qw: i32, splitting: &Splitting) -> Result<Self> {
        let r = p + qw;
        let (x, u, v, uv, uov) = (cover.all(), cover.u(), cover.v(), cover.u_and_v(), cover.u_or_v());
        let first = RelativePair::new(model.restriction(&x, &u, p)?);
        let second = RelativePair::new(model.restriction(&x, &v, qw)?);
        let square = CornerSquare {
            alpha: model.restriction(&x, &v, r)?,
            beta: model.restriction(&x, &u, r)?,
            gamma: model.restriction(&u, &uv, r)?,
            delta: model.restriction(&v, &uv, r)?,
        };
        let pairings = CornerPairings {
            m00: model.pointwise_pairing(&x, p, &x, qw, &x)?,
            m10: model.pointwise_pairing(&u, p, &x, qw, &u)?,
            m01: model.pointwise_pairing(&x, p, &v, qw, &v)?,
            m11: model.pointwise_pairing(&u, p, &v, qw, &uv)?,
        };
        let product = RelativeProduct::new(first, second, square.clone(), pairings)?;
        // 0 → D(U∪V) → D(U) ⊕ D(V) → D(U∩V) → 0
        let (du, dv) = (model.sections(&u, r), model.sections(&v, r));
        let sum = Arc::new(Complex::direct_sum(&[&du, &dv]));
        let (ru, rv) = (model.restriction(&uov, &u, r)?, model.restriction(&uov, &v, r)?);
        let i_map = ComplexMap::from_fn(model.sections(&uov, r), sum.clone(), |n| Matrix::vstack(&[&ru.map(n), &rv.map(n)]))?;
        let j_map =
            ComplexMap::from_fn(sum, model.sections(&uv, r), |n| Matrix::hstack(&[&square.gamma.map(n).neg(), &square.delta.map(n)]))?;
        let partition = match splitting {
            Splitting::Partition(s) | Splitting::Synthetic(s, _) => s,
        };
        let c = model.fiber.complex(r);
        let mut section = BTreeMap::new();
        let lo = c.complex().lo();
        for n in lo..=c.complex().hi() {
            let d = c.dim(n);
            let mut s = Matrix::zeros(d * (u.len() + v.len()), d * uv.len());
            for (k, pt) in uv.iter().enumerate() {
                let iu = u.iter().position(|x| x == pt).unwrap();
                let iv = v.iter().position(|x| x == pt).unwrap();
                s.add_block(iu * d, k * d, &Matrix::scalar(d, &-partition.yz(*pt)));
                s.add_block((u.len() + iv) * d, k * d, &Matrix::scalar(d, &partition.zy(*pt)));
            }
            section.insert(n, s);
        }
        if let Splitting::Synthetic(_, seed) = splitting {
            let mut rng = crate::random::rng(*seed);
            for (n, s) in section.iter_mut() {
                let k = random_matrix(&mut rng, c.dim(*n) * uov.len(), c.dim(*n) * uv.len(), 0.5);
                *s = s.add(&i_map.map(*n).mul(&k));
            }
        }
        let mv = SplitExactSequence::new(i_map, j_map, section)?;
        let (_, pi_prime) = mv.kernel_simple()?;
        if !pi_prime.source().same_underlying(product.target().target()) {
            return Err(Error::invariant("kernel simple matches the product target", "s(−j)"));
        }
        let out_pair = RelativePair::new(model.restriction(&x, &uov, r)?);
        Ok(StarSetup { cover, product, mv, pi_prime, out_pair })
    }

    /// `Ĥ(D(E_X), s(−j)) → Ĥ(D(E_X), D(E_{U∪V}))`.
    pub fn push(&self, t: &TruncatedClass) -> TruncatedClass {
        TruncatedClass { degree: t.degree, a: t.a.clone(), b: self.pi_prime.apply(t.degree - 1, &t.b) }
    }

    /// The same map on relative cocycles `[a, b]`.
    pub fn push_relative(&self, n: i32, v: &[Q]) -> Vec<Q> {
        let (a, b) = self.product.target().split(n, v);
        self.out_pair.join(n, &a, &self.pi_prime.apply(n - 1, &b))
    }

    pub fn out_group(&self, n: i32) -> TruncatedGroup {
        TruncatedGroup::new(&self.out_pair, n)
    }
}

fn intersect(a: &Support, b: &Support) -> Support {
    a.intersection(b).copied().collect()
}

/// `g1 * g2` via the relative product and the kernel-simple quasi-inverse.
pub fn star_kernel_simple(model: &CoverModel, g1: &GreenObject, g2: &GreenObject, splitting: &Splitting) -> Result<GreenObject> {
    let cover = Cover::new(model.points, g1.support.clone(), g2.support.clone())?;
    let setup = StarSetup::new(model, cover, g1.weight, g2.weight, splitting)?;
    star_with(model, &setup, g1, g2)
}

/// `g1 * g2` for a prepared setup.
pub fn star_with(model: &CoverModel, setup: &StarSetup, g1: &GreenObject, g2: &GreenObject) -> Result<GreenObject> {
    let t = setup.push(&star(&setup.product, &g1.class, &g2.class));
    let n = t.degree;
    let designated = setup.push_relative(n, &setup.product.representative(2 * g1.weight, &g1.designated, 2 * g2.weight, &g2.designated));
    GreenObject::new(model, intersect(&g1.support, &g2.support), g1.weight + g2.weight, t, designated)
}

/// `(ω_y•ω_z, (−2σ_ZY g_y∧∂∂̄g_z − 2∂∂̄(σ_YZ g_y)∧g_z)~)` with scalar `σ`. Where `g_z` is undefined
/// (`Z∖Y`) the form `−2∂∂̄g_z` is read as `ω_z`, and likewise for `g_y` on `Y∖Z`.
pub fn star_partition_formula(model: &CoverModel, g1: &GreenObject, g2: &GreenObject, partition: &Partition) -> Result<GreenObject> {
    let cover = Cover::new(model.points, g1.support.clone(), g2.support.clone())?;
    let (p, qw) = (g1.weight, g2.weight);
    let r = p + qw;
    let fiber = model.fiber();
    let s = &fiber.algebra().space;
    let (x, u, v, uov) = (cover.all(), cover.u(), cover.v(), cover.u_or_v());
    let wy = |pt| model.at(&x, p, 2 * p, &g1.class.a, pt);
    let wz = |pt| model.at(&x, qw, 2 * qw, &g2.class.a, pt);
    let gy = |pt| model.at(&u, p, 2 * p - 1, &g1.class.b, pt);
    let gz = |pt| model.at(&v, qw, 2 * qw - 1, &g2.class.b, pt);
    let big_y = |pt| {
        if u.contains(&pt) {
            deligne_d(s, 2 * p - 1, p, &gy(pt))
        } else {
            wy(pt)
        }
    };
    let big_z = |pt| {
        if v.contains(&pt) {
            deligne_d(s, 2 * qw - 1, qw, &gz(pt))
        } else {
            wz(pt)
        }
    };
    let b = model.assemble(&uov, r, 2 * r - 1, |pt| {
        let mut out = vec![G::default(); fiber.algebra().dim()];
        let (szy, syz) = (partition.zy(pt), partition.yz(pt));
        if szy != q(0) {
            out = gadd(&out, &gscale_q(&fiber.algebra().mul(&gy(pt), &big_z(pt)), &szy));
        }
        if syz != q(0) {
            out = gadd(&out, &gscale_q(&fiber.algebra().mul(&big_y(pt), &gz(pt)), &syz));
        }
        out
    })?;
    let a = model.assemble(&x, r, 2 * r, |pt| fiber.product(&wy(pt), 2 * p, p, &wz(pt), 2 * qw, qw))?;
    let t = TruncatedClass { degree: 2 * r, a, b };
    let setup_pair = RelativePair::new(model.restriction(&x, &uov, r)?);
    let group = TruncatedGroup::new(&setup_pair, 2 * r);
    let designated = group.cl(&t);
    GreenObject::new(model, intersect(&g1.support, &g2.support), r, t, designated)
}

/// Outcome of a commutativity or associativity comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub equal: bool,
    pub detail: String,
}

/// `g1 * g2` against `g2 * g1` in `Ĥ(X, X∖(Y∩Z))`.
pub fn star_commutativity_report(model: &CoverModel, g1: &GreenObject, g2: &GreenObject, partition: &Partition) -> Result<StarReport> {
    let left = star_kernel_simple(model, g1, g2, &Splitting::Partition(partition.clone()))?;
    let right = star_kernel_simple(model, g2, g1, &Splitting::Partition(partition.swapped()))?;
    let group = left.group(model)?;
    let equal = group.same_class(&left.class, &right.class);
    let detail = if equal {
        "g1*g2 = g2*g1".into()
    } else {
        format!("classes differ: {:?}", group.class_of(&left.class.add(&right.class.scale(&q(-1)))))
    };
    Ok(StarReport { equal, detail })
}

/// `(g1*g2)*g3` against `g1*(g2*g3)` with random scalar partitions for each cover.
pub fn star_associativity_report(model: &CoverModel, g: [&GreenObject; 3], r: &mut Rand) -> Result<StarReport> {
    let mut prod = |a: &GreenObject, b: &GreenObject| -> Result<GreenObject> {
        let cover = Cover::new(model.points, a.support.clone(), b.support.clone())?;
        star_kernel_simple(model, a, b, &Splitting::Partition(Partition::random(&cover, r)))
    };
    let g12 = prod(g[0], g[1])?;
    let left = prod(&g12, g[2])?;
    let g23 = prod(g[1], g[2])?;
    let right = prod(g[0], &g23)?;
    let group = left.group(model)?;
    let equal = group.same_class(&left.class, &right.class);
    let detail = if equal { "(g1*g2)*g3 = g1*(g2*g3)".into() } else { "triple products differ".into() };
    Ok(StarReport { equal, detail })
}

/// Random nonempty proper subset.
pub fn random_support(points: usize, r: &mut Rand) -> Support {
    use rand::Rng;
    loop {
        let s: Support = (0..points).filter(|_| r.gen_bool(0.4)).collect();
        if !s.is_empty() && s.len() < points {
            return s;
        }
    }
}

/// `x ↦ x + y` on Green objects with the same support and weight.
pub fn add(model: &CoverModel, g: &GreenObject, h: &GreenObject) -> Result<GreenObject> {
    GreenObject::new(model, g.support.clone(), g.weight, g.class.add(&h.class), vec_add(&g.designated, &h.designated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dolbeault::jet;

    fn model(points: usize) -> CoverModel {
        CoverModel::new(Arc::new(DeligneAlgebra::new(Arc::new(jet(0)), 2).unwrap()), points)
    }

    fn set(v: &[usize]) -> Support {
        v.iter().copied().collect()
    }

    #[test]
    fn disjoint_two_point_cover_is_degenerate_but_exact() {
        let m = model(2);
        let cover = Cover::new(2, set(&[0]), set(&[1])).unwrap();
        assert!(cover.is_degenerate());
        let part = Partition::random(&cover, &mut crate::random::rng(1));
        StarSetup::new(&m, cover, 1, 1, &Splitting::Partition(part)).unwrap();
    }

    #[test]
    fn partition_sums_to_one() {
        let cover = Cover::new(3, set(&[0]), set(&[1])).unwrap();
        let p = Partition::random(&cover, &mut crate::random::rng(2));
        assert_eq!(p.yz(0), q(1));
        assert_eq!(p.yz(1), q(0));
        for i in 0..3 {
            assert_eq!(p.yz(i) + p.zy(i), q(1));
        }
        assert!(Partition::new(&cover, vec![q(0), q(0), q(1)]).is_err());
    }

    #[test]
    fn kernel_simple_matches_partition_formula() {
        let m = model(3);
        let mut r = crate::random::rng(3);
        let g1 = GreenObject::random(&m, set(&[0]), 1, &mut r).unwrap();
        let g2 = GreenObject::random(&m, set(&[1]), 1, &mut r).unwrap();
        let cover = Cover::new(3, g1.support.clone(), g2.support.clone()).unwrap();
        let part = Partition::random(&cover, &mut r);
        let ks = star_kernel_simple(&m, &g1, &g2, &Splitting::Partition(part.clone())).unwrap();
        let pf = star_partition_formula(&m, &g1, &g2, &part).unwrap();
        assert!(ks.group(&m).unwrap().same_class(&ks.class, &pf.class));
    }
}
