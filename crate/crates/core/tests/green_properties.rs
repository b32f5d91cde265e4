use cohchow::deligne::DeligneAlgebra;
use cohchow::dolbeault::{jet, nilpotent, torus};
use cohchow::green::*;
use cohchow::linalg::is_zero_vec;
use cohchow::random::{random_vec, rng, Rand};
use proptest::prelude::*;
use rand::Rng;
use std::sync::{Arc, OnceLock};

fn models() -> &'static [CoverModel] {
    static MODELS: OnceLock<Vec<CoverModel>> = OnceLock::new();
    MODELS.get_or_init(|| {
        let fib = |a| Arc::new(DeligneAlgebra::new(Arc::new(a), 2).unwrap());
        vec![
            CoverModel::new(fib(jet(0)), 3),
            CoverModel::new(fib(jet(0)), 2),
            CoverModel::new(fib(torus(2)), 2),
            CoverModel::new(fib(nilpotent(&mut rng(11), 2, 1)), 2),
        ]
    })
}

/// A model, two supports, and weights with a nonzero output group when the fiber allows it.
fn instance(seed: u64) -> (&'static CoverModel, GreenObject, GreenObject, Partition, Rand) {
    let mut r = rng(seed);
    let m = &models()[r.gen_range(0..models().len())];
    let (p, qw) = if m.fiber().algebra().space.top_degree() >= 4 { (1, 1) } else { [(0, 1), (1, 0), (1, 1)][r.gen_range(0..3)] };
    let y = random_support(m.points(), &mut r);
    let z = random_support(m.points(), &mut r);
    let g1 = GreenObject::random(m, y, p, &mut r).unwrap();
    let g2 = GreenObject::random(m, z, qw, &mut r).unwrap();
    let cover = Cover::new(m.points(), g1.support.clone(), g2.support.clone()).unwrap();
    let part = Partition::random(&cover, &mut r);
    (m, g1, g2, part, r)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn kernel_simple_agrees_with_partition_formula(seed in any::<u64>()) {
        let (m, g1, g2, part, _) = instance(seed);
        let pf = star_partition_formula(m, &g1, &g2, &part).unwrap();
        for split in [Splitting::Partition(part.clone()), Splitting::Synthetic(part.clone(), seed)] {
            let ks = star_kernel_simple(m, &g1, &g2, &split).unwrap();
            let group = ks.group(m).unwrap();
            prop_assert!(group.same_class(&ks.class, &pf.class));
        }
    }

    #[test]
    fn omega_and_class_squares(seed in any::<u64>()) {
        let (m, g1, g2, part, _) = instance(seed);
        let cover = Cover::new(m.points(), g1.support.clone(), g2.support.clone()).unwrap();
        let setup = StarSetup::new(m, cover, g1.weight, g2.weight, &Splitting::Partition(part)).unwrap();
        let s = star_with(m, &setup, &g1, &g2).unwrap();
        // ω(g1*g2) = ω1•ω2 pointwise
        let (p, qw) = (g1.weight, g2.weight);
        let all = m.all();
        let expected = m.assemble(&all, p + qw, 2 * (p + qw), |pt| {
            m.fiber().product(&m.at(&all, p, 2 * p, g1.omega(), pt), 2 * p, p, &m.at(&all, qw, 2 * qw, g2.omega(), pt), 2 * qw, qw)
        }).unwrap();
        prop_assert_eq!(s.omega(), &expected[..]);
        // cl(g1*g2) = cl(g1)•cl(g2), pushed to (X, U∪V)
        let h = setup.out_pair.cohomology(2 * (p + qw));
        let group = setup.out_group(2 * (p + qw));
        let rep = setup.push_relative(2 * (p + qw), &setup.product.representative(2 * p, &g1.designated, 2 * qw, &g2.designated));
        prop_assert!(h.same_class(&group.cl(&s.class), &rep));
    }

    #[test]
    fn star_is_bilinear(seed in any::<u64>()) {
        let (m, g1, g2, part, mut r) = instance(seed);
        let h1 = GreenObject::random(m, g1.support.clone(), g1.weight, &mut r).unwrap();
        let split = Splitting::Partition(part);
        let lhs = star_kernel_simple(m, &add(m, &g1, &h1).unwrap(), &g2, &split).unwrap();
        let a = star_kernel_simple(m, &g1, &g2, &split).unwrap();
        let b = star_kernel_simple(m, &h1, &g2, &split).unwrap();
        prop_assert!(lhs.group(m).unwrap().same_class(&lhs.class, &a.class.add(&b.class)));
    }

    #[test]
    fn commutativity(seed in any::<u64>()) {
        let (m, g1, g2, part, _) = instance(seed);
        prop_assert!(star_commutativity_report(m, &g1, &g2, &part).unwrap().equal);
        // the partition formula is symmetric under (Y, Z, σ_YZ) ↔ (Z, Y, σ_ZY)
        let a = star_partition_formula(m, &g1, &g2, &part).unwrap();
        let b = star_partition_formula(m, &g2, &g1, &part.swapped()).unwrap();
        prop_assert_eq!(a.class, b.class);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn restriction_lemma_cases(seed in any::<u64>()) {
        let (m, g1, g2, part, mut r) = instance(seed);
        let split = Splitting::Partition(part);
        let cover = Cover::new(m.points(), g1.support.clone(), g2.support.clone()).unwrap();
        let setup = StarSetup::new(m, cover, g1.weight, g2.weight, &split).unwrap();
        let grp1 = g1.group(m).unwrap();
        let out = setup.out_group(2 * (g1.weight + g2.weight));
        let n = 2 * g1.weight;
        // a(x̃) * g = a((x•ω)~)
        let x = random_vec(&mut r, grp1.pair().source().dim(n - 1));
        let ga = GreenObject::new(m, g1.support.clone(), g1.weight, grp1.a_map(&x), grp1.cl(&grp1.a_map(&x))).unwrap();
        let lhs = star_with(m, &setup, &ga, &g2).unwrap();
        let xw = setup.product.pairings().m00.apply(n - 1, &x, 2 * g2.weight, g2.omega());
        prop_assert!(out.same_class(&lhs.class, &out.a_map(&xw)));
        // b([y]) * g = b(π′([y] • cl(g)))
        let hb = grp1.pair().target().cohomology(n - 1);
        for i in 0..hb.dim() {
            let y = hb.representative(i);
            let t = grp1.b_map(&y).unwrap();
            let gb = GreenObject::new(m, g1.support.clone(), g1.weight, t.clone(), grp1.cl(&t)).unwrap();
            let lhs = star_with(m, &setup, &gb, &g2).unwrap();
            let pairing = setup.product.boundary_pairing(n, &y, 2 * g2.weight, &g2.designated);
            let pushed = setup.pi_prime.apply(lhs.class.degree - 1, &pairing);
            prop_assert!(out.same_class(&lhs.class, &out.b_map(&pushed).unwrap()));
            // Ker ω factors commute
            prop_assert!(star_commutativity_report(m, &gb, &g2, &Partition::random(&setup.cover, &mut r)).unwrap().equal);
        }
    }

    #[test]
    fn equal_supports_give_the_one_sided_formula(seed in any::<u64>()) {
        let (m, g1, _, _, mut r) = instance(seed);
        let g2 = GreenObject::random(m, g1.support.clone(), 1 - g1.weight.min(1), &mut r).unwrap();
        let cover = Cover::new(m.points(), g1.support.clone(), g2.support.clone()).unwrap();
        let s = star_kernel_simple(m, &g1, &g2, &Splitting::Partition(Partition::random(&cover, &mut r))).unwrap();
        // (ω_y•ω_z, (g_y•ω_z)~) over U
        let (p, qw) = (g1.weight, g2.weight);
        let (all, u) = (m.all(), cover.u());
        let b = m.assemble(&u, p + qw, 2 * (p + qw) - 1, |pt| {
            m.fiber().product(&m.at(&u, p, 2 * p - 1, &g1.class.b, pt), 2 * p - 1, p, &m.at(&all, qw, 2 * qw, g2.omega(), pt), 2 * qw, qw)
        }).unwrap();
        let expected = cohchow::truncated::TruncatedClass { degree: s.class.degree, a: s.class.a.clone(), b };
        prop_assert!(s.group(m).unwrap().same_class(&s.class, &expected));
    }

    #[test]
    fn associativity(seed in any::<u64>()) {
        let (m, g1, g2, _, mut r) = instance(seed);
        let w = random_support(m.points(), &mut r);
        let wt = if g1.weight + g2.weight >= 2 { 0 } else { 1 };
        let g3 = GreenObject::random(m, w, wt, &mut r).unwrap();
        prop_assert!(star_associativity_report(m, [&g1, &g2, &g3], &mut r).unwrap().equal);
        // repeated supports
        let g4 = GreenObject::random(m, g1.support.clone(), 0, &mut r).unwrap();
        prop_assert!(star_associativity_report(m, [&g1, &g4, &g1.clone()], &mut r).unwrap().equal);
    }
}

#[test]
fn disjoint_supports_associate() {
    let fiber = Arc::new(DeligneAlgebra::new(Arc::new(jet(0)), 2).unwrap());
    let m = CoverModel::new(fiber, 4);
    let mut r = rng(21);
    let s = |i: usize| [i].into_iter().collect::<Support>();
    for _ in 0..3 {
        let g = [
            GreenObject::random(&m, s(0), 0, &mut r).unwrap(),
            GreenObject::random(&m, s(1), 1, &mut r).unwrap(),
            GreenObject::random(&m, s(2), 0, &mut r).unwrap(),
        ];
        assert!(star_associativity_report(&m, [&g[0], &g[1], &g[2]], &mut r).unwrap().equal);
    }
}

#[test]
fn instances_are_not_vacuous() {
    let mut nonzero_omega = 0;
    let mut synthetic_moves_b = 0;
    for seed in 0..24 {
        let (m, g1, g2, part, _) = instance(seed);
        let ks = star_kernel_simple(m, &g1, &g2, &Splitting::Partition(part.clone())).unwrap();
        let sy = star_kernel_simple(m, &g1, &g2, &Splitting::Synthetic(part, seed)).unwrap();
        if !is_zero_vec(ks.omega()) {
            nonzero_omega += 1;
        }
        if ks.class.b != sy.class.b {
            synthetic_moves_b += 1;
        }
    }
    assert!(nonzero_omega >= 4, "{nonzero_omega}");
    assert!(synthetic_moves_b >= 4, "{synthetic_moves_b}");
}
