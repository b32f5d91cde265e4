//! Seeded verification suites shared by the test harness and the command line.

use crate::complex::ComplexMap;
use crate::deligne::{deligne_d, AssocSweep, DeligneAlgebra, DeligneHomotopy};
use crate::dolbeault::{gis_zero, jet, nilpotent, torus, DolbeaultAlgebra};
use crate::error::{Error, Result};
use crate::green::*;
use crate::iterated::IteratedComplex;
use crate::linalg::vec_add;
use crate::random::{random_morphism, random_split_sequence, random_vec, rng, Rand};
use crate::relative::{RelativePair, RelativeProduct, SplitExactSequence};
use crate::signs::{associativity_square, commutativity_square, funiso, funiso_round_trip_is_identity};
use crate::truncated::{check_exact_sequences, star, star_group, TruncatedGroup};
use rand::Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

/// Default seed for every randomized suite.
pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Signs,
    Relative,
    Truncated,
    Deligne,
    Green,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Signs, Suite::Relative, Suite::Truncated, Suite::Deligne, Suite::Green];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Signs => "signs",
            Suite::Relative => "relative",
            Suite::Truncated => "truncated",
            Suite::Deligne => "deligne",
            Suite::Green => "green",
        }
    }

    /// Instance sizes tried when shrinking a failure, smallest first; the last one is the default.
    fn sizes(self) -> &'static [usize] {
        match self {
            Suite::Signs => &[1, 2],
            Suite::Relative | Suite::Truncated => &[1, 2, 3],
            Suite::Deligne | Suite::Green => &[1],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::input(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing instance, shrunk to the smallest size that still fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: usize,
    pub seed: u64,
    pub size: usize,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Seed of the `i`-th instance of a run.
pub fn instance_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs `count` instances of a suite. Deterministic in `seed`.
pub fn run(suite: Suite, seed: u64, count: usize) -> SuiteReport {
    let sizes = suite.sizes();
    let full = *sizes.last().expect("sizes");
    let mut checks = 0;
    let mut failures = Vec::new();
    for i in 0..count {
        let s = instance_seed(seed, i);
        match run_instance(suite, i, s, full) {
            Ok(c) => checks += c,
            Err(e) => {
                let (size, error) = sizes.iter().find_map(|&k| run_instance(suite, i, s, k).err().map(|e| (k, e))).unwrap_or((full, e));
                failures.push(Failure { instance: i, seed: s, size, error: error.to_string() });
            }
        }
    }
    SuiteReport { suite, seed, count, checks, failures }
}

fn run_instance(suite: Suite, i: usize, seed: u64, size: usize) -> Result<usize> {
    match suite {
        Suite::Signs => signs_instance(seed, size),
        Suite::Relative => relative_instance(seed, size),
        Suite::Truncated => truncated_instance(seed, size),
        Suite::Deligne => deligne_instance(i, seed),
        Suite::Green => green_instance_checks(seed),
    }
}

fn ensure(cond: bool, name: &str, location: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invariant(name, location))
    }
}

/// First basis element on which `d∘f = f∘d` fails.
pub fn check_chain_map_located(f: &ComplexMap, name: &str) -> Result<()> {
    for n in f.degrees() {
        let lhs = f.target().diff(n).mul(&f.map(n));
        let rhs = f.map(n + 1).mul(&f.source().diff(n));
        for j in 0..lhs.cols() {
            if lhs.col(j) != rhs.col(j) {
                let label = f.source().labels(n).map(|l| l[j].to_string()).unwrap_or_else(|| format!("#{j}"));
                return Err(Error::invariant(name, format!("degree {n}, basis element {label}")));
            }
        }
    }
    Ok(())
}

fn is_identity_map(c: &ComplexMap) -> bool {
    c.degrees().all(|n| c.map(n).rows() == 0 || c.map(n).is_identity())
}

fn signs_instance(seed: u64, size: usize) -> Result<usize> {
    let mut r = rng(seed);
    let f1 = random_morphism(&mut r, size);
    let f2 = random_morphism(&mut r, size);
    let f3 = random_morphism(&mut r, size);
    let mut checks = 0;
    // slot transpositions of a 4-iterated complex
    let e = IteratedComplex::from_map(&f1).external_product(&IteratedComplex::from_map(&f2))?;
    for i in 0..3 {
        let (t, iso) = e.transpose(i)?;
        check_chain_map_located(&iso, "transpose sign map is a chain map")?;
        let (_, back) = t.transpose(i)?;
        ensure(is_identity_map(&back.compose(&iso)), "transpose sign map squares to the identity", format!("slot {i}"))?;
        checks += 2;
    }
    let fw = funiso(&f1, &f2)?;
    check_chain_map_located(&fw, "product isomorphism is a chain map")?;
    ensure(funiso_round_trip_is_identity(&f1, &f2)?, "product isomorphism has an exact inverse", "all degrees")?;
    let c = commutativity_square(&f1, &f2)?;
    ensure(c.ok(), "commutativity square", c.first_failure.unwrap_or_else(|| "chain maps".into()))?;
    let a = associativity_square(&f1, &f2, &f3)?;
    ensure(a.ok(), "associativity square", a.first_failure.unwrap_or_else(|| "chain maps".into()))?;
    Ok(checks + 4)
}

fn relative_instance(seed: u64, size: usize) -> Result<usize> {
    let mut r = rng(seed);
    let mut checks = 0;
    let pair = RelativePair::new(random_morphism(&mut r, size));
    pair.check_long_exact_sequence()?;
    for n in pair.degree_window() {
        check_exact_sequences(&pair, n)?;
        checks += 1;
    }
    let s = random_split_sequence(&mut r, size);
    let seq = SplitExactSequence::new(s.f, s.g, s.section)?;
    let (iota, pi) = seq.kernel_simple()?;
    ensure(is_identity_map(&pi.compose(&iota)), "π′∘ι = Id", "kernel to simple")?;
    ensure(iota.is_quasi_iso() && pi.is_quasi_iso(), "ι and π′ are quasi-isomorphisms", "kernel to simple")?;
    let (pi2, iota2) = seq.simple_cokernel()?;
    ensure(is_identity_map(&pi2.compose(&iota2)), "π∘ι′ = Id", "simple to cokernel")?;
    ensure(iota2.is_quasi_iso() && pi2.is_quasi_iso(), "π and ι′ are quasi-isomorphisms", "simple to cokernel")?;
    checks += 5;
    let half = size.min(2);
    let p1 = RelativePair::new(random_morphism(&mut r, half));
    let p2 = RelativePair::new(random_morphism(&mut r, half));
    let prod = RelativeProduct::universal(p1.clone(), p2.clone())?;
    for n in p1.degree_window() {
        let hb = p1.target().cohomology(n - 1);
        for m in p2.degree_window() {
            let h2 = p2.cohomology(m);
            for i in 0..hb.dim() {
                for k in 0..h2.dim() {
                    let (lhs, rhs) = prod.connecting_compatibility(n, &hb.representative(i), m, &h2.representative(k));
                    ensure(lhs == rhs, "δ-compatibility of the relative product", format!("degrees {n},{m}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

fn truncated_instance(seed: u64, size: usize) -> Result<usize> {
    let mut r = rng(seed);
    let half = size.min(2);
    let p1 = RelativePair::new(random_morphism(&mut r, half));
    let p2 = RelativePair::new(random_morphism(&mut r, half));
    let prod = RelativeProduct::universal(p1.clone(), p2.clone())?;
    let mut checks = 0;
    for n in p1.degree_window() {
        let g1 = TruncatedGroup::new(&p1, n);
        for m in p2.degree_window() {
            let g2 = TruncatedGroup::new(&p2, m);
            let target = star_group(&prod, n + m);
            let loc = || format!("degrees {n},{m}");
            let t1 = g1.random_element(&mut r);
            let t2 = g2.random_element(&mut r);
            let s = star(&prod, &t1, &t2);
            target.check(&s)?;
            let mut u1 = t1.clone();
            u1.b = vec_add(&u1.b, &p1.target().d(n - 2, &random_vec(&mut r, p1.target().dim(n - 2))));
            ensure(target.same_class(&s, &star(&prod, &u1, &t2)), "star ignores the representative", loc())?;
            ensure(target.cl(&s) == prod.representative(n, &g1.cl(&t1), m, &g2.cl(&t2)), "cl intertwines the products", loc())?;
            ensure(target.omega(&s) == prod.pairings().m00.apply(n, &t1.a, m, &t2.a), "ω intertwines the products", loc())?;
            let x1 = random_vec(&mut r, p1.source().dim(n - 1));
            let rhs = target.a_map(&prod.pairings().m00.apply(n - 1, &x1, m, &g2.omega(&t2)));
            ensure(target.same_class(&star(&prod, &g1.a_map(&x1), &t2), &rhs), "a(x̃)*g = a((x•ω(g))~)", loc())?;
            let hb = p1.target().cohomology(n - 1);
            for i in 0..hb.dim() {
                let y = hb.representative(i);
                let by = g1.b_map(&y)?;
                let rhs = target.b_map(&prod.boundary_pairing(n, &y, m, &g2.cl(&t2)))?;
                ensure(target.same_class(&star(&prod, &by, &t2), &rhs), "b([y])*g = b([y]•cl(g))", loc())?;
                checks += 1;
            }
            checks += 5;
        }
    }
    Ok(checks)
}

/// `d_D∘d_D = 0` evaluated through the element formula on basis vectors, around the degree
/// where the differential changes shape.
pub fn check_deligne_square_zero(d: &DeligneAlgebra, p: i32) -> Result<()> {
    let c = d.complex(p);
    let s = c.space();
    for n in (2 * p - 3).max(c.complex().lo())..=(2 * p + 1).min(c.complex().hi()) {
        for i in 0..c.dim(n) {
            let x = c.basis_element(n, i);
            let dx = deligne_d(s, n, p, &x);
            ensure(c.contains(n + 1, &dx), "d_D lands in the Deligne complex", format!("weight {p}, degree {n}, basis element #{i}"))?;
            ensure(gis_zero(&deligne_d(s, n + 1, p, &dx)), "d_D∘d_D = 0", format!("weight {p}, degree {n}, basis element #{i}"))?;
        }
    }
    Ok(())
}

/// The full Deligne battery on one algebra: homotopy equivalence for every weight up to
/// `top + 1`, `d_D² = 0` at the junction, graded commutativity on all basis pairs, and
/// pseudo-associativity for weights in `{0,1}`.
pub fn deligne_battery(a: DolbeaultAlgebra, sweep: AssocSweep) -> Result<usize> {
    let top = a.space.top_degree();
    let d = DeligneAlgebra::new(Arc::new(a), 2)?;
    let mut checks = 0;
    for p in 0..=top + 1 {
        check_deligne_square_zero(&d, p)?;
        DeligneHomotopy::new(&d.complex(p))?.check()?;
        checks += 2;
    }
    for p in 0..=2 {
        for qw in 0..=2 - p {
            d.check_graded_commutative(p, qw)?;
            checks += 1;
        }
    }
    for p in 0..=1 {
        for qw in 0..=1 {
            for rw in 0..=1 {
                let rep = d.pseudo_assoc_check(p, qw, rw, sweep)?;
                checks += rep.exact_triples + rep.cocycle_triples;
            }
        }
    }
    Ok(checks)
}

/// Instances `0, 1, 2` are the tori of dimension 1, 2, 3; later ones are random two-step
/// nilpotent algebras of dimension 2, with dimension 3 every 48th instance (about 30 times
/// slower).
fn deligne_instance(i: usize, seed: u64) -> Result<usize> {
    match i {
        0 | 1 => deligne_battery(torus(i + 1), AssocSweep::Exhaustive),
        2 => deligne_battery(torus(3), AssocSweep::Sampled { seed, per_degree: 2 }),
        _ => {
            let g = if i % 48 == 3 { 3 } else { 2 };
            deligne_battery(nilpotent(&mut rng(seed), g, 1), AssocSweep::Sampled { seed, per_degree: 2 })
        }
    }
}

/// Cover models used by the Green suite: a jet fiber with nonzero `∂∂̄` on two and three
/// points, and weight-2 capable fibers (a torus and a non-Kähler nilpotent algebra) on two.
pub fn green_models() -> &'static [CoverModel] {
    static MODELS: OnceLock<Vec<CoverModel>> = OnceLock::new();
    MODELS.get_or_init(|| {
        let fib = |a| Arc::new(DeligneAlgebra::new(Arc::new(a), 2).expect("fiber"));
        vec![
            CoverModel::new(fib(jet(0)), 3),
            CoverModel::new(fib(jet(0)), 2),
            CoverModel::new(fib(torus(2)), 2),
            CoverModel::new(fib(nilpotent(&mut rng(11), 2, 1)), 2),
        ]
    })
}

/// A seeded Green-star instance: two Green objects over random supports and a partition.
pub struct GreenInstance {
    pub model: &'static CoverModel,
    pub g1: GreenObject,
    pub g2: GreenObject,
    pub partition: Partition,
    pub rng: Rand,
}

pub fn green_instance(seed: u64) -> Result<GreenInstance> {
    let mut r = rng(seed);
    let models = green_models();
    let model = &models[r.gen_range(0..models.len())];
    let (p, qw) = if model.fiber().algebra().space.top_degree() >= 4 { (1, 1) } else { [(0, 1), (1, 0), (1, 1)][r.gen_range(0..3)] };
    let y = random_support(model.points(), &mut r);
    let z = random_support(model.points(), &mut r);
    let g1 = GreenObject::random(model, y, p, &mut r)?;
    let g2 = GreenObject::random(model, z, qw, &mut r)?;
    let cover = Cover::new(model.points(), g1.support.clone(), g2.support.clone())?;
    let partition = Partition::random(&cover, &mut r);
    Ok(GreenInstance { model, g1, g2, partition, rng: r })
}

fn green_instance_checks(seed: u64) -> Result<usize> {
    let GreenInstance { model: m, g1, g2, partition, mut rng } = green_instance(seed)?;
    let cover = Cover::new(m.points(), g1.support.clone(), g2.support.clone())?;
    let pf = star_partition_formula(m, &g1, &g2, &partition)?;
    let setup = StarSetup::new(m, cover.clone(), g1.weight, g2.weight, &Splitting::Partition(partition.clone()))?;
    let ks = star_with(m, &setup, &g1, &g2)?;
    let (p, qw) = (g1.weight, g2.weight);
    let deg = 2 * (p + qw);
    let out = setup.out_group(deg);
    ensure(out.same_class(&ks.class, &pf.class), "kernel-simple star equals the partition formula", format!("weights {p},{qw}"))?;
    let synth = star_kernel_simple(m, &g1, &g2, &Splitting::Synthetic(partition.clone(), seed))?;
    ensure(out.same_class(&synth.class, &pf.class), "star is independent of the section", format!("weights {p},{qw}"))?;
    // ω and cl squares
    let all = m.all();
    let omega = m.assemble(&all, p + qw, deg, |pt| {
        m.fiber().product(&m.at(&all, p, 2 * p, g1.omega(), pt), 2 * p, p, &m.at(&all, qw, 2 * qw, g2.omega(), pt), 2 * qw, qw)
    })?;
    ensure(ks.omega() == &omega[..], "ω(g1*g2) = ω1•ω2", format!("weights {p},{qw}"))?;
    let rep = setup.push_relative(deg, &setup.product.representative(2 * p, &g1.designated, 2 * qw, &g2.designated));
    ensure(setup.out_pair.cohomology(deg).same_class(&out.cl(&ks.class), &rep), "cl(g1*g2) = cl(g1)•cl(g2)", format!("weights {p},{qw}"))?;
    ensure(star_commutativity_report(m, &g1, &g2, &partition)?.equal, "star is graded commutative", format!("weights {p},{qw}"))?;
    let mut checks = 5;
    if p + qw <= 1 || seed.is_multiple_of(4) {
        let w = random_support(m.points(), &mut rng);
        let g3 = GreenObject::random(m, w, if p + qw >= 2 { 0 } else { 1 }, &mut rng)?;
        ensure(star_associativity_report(m, [&g1, &g2, &g3], &mut rng)?.equal, "star is associative", format!("weights {p},{qw}"))?;
        checks += 1;
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic() {
        assert_eq!(run(Suite::Signs, 3, 4), run(Suite::Signs, 3, 4));
        assert!(run(Suite::Relative, 3, 3).passed());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
