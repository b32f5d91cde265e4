use cohchow::algebra::random_algebra_morphism;
use cohchow::linalg::{vec_add, vec_neg};
use cohchow::random::{random_morphism, random_vec, rng};
use cohchow::relative::{RelativePair, RelativeProduct};
use cohchow::truncated::{algebra_corners, check_exact_sequences, koszul_sign, star, star_group, AlgebraStar, TruncatedGroup};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

fn two_pairs(seed: u64) -> (RelativePair, RelativePair, RelativeProduct) {
    let mut r = rng(seed);
    let p1 = RelativePair::new(random_morphism(&mut r, 2));
    let p2 = RelativePair::new(random_morphism(&mut r, 2));
    let prod = RelativeProduct::universal(p1.clone(), p2.clone()).unwrap();
    (p1, p2, prod)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn exact_sequences_hold(seed in any::<u64>()) {
        let pair = RelativePair::new(random_morphism(&mut rng(seed), 3));
        for n in pair.degree_window() {
            prop_assert!(check_exact_sequences(&pair, n).is_ok(), "degree {}", n);
        }
    }

    #[test]
    fn star_ignores_representatives_and_lifts_the_relative_product(seed in any::<u64>()) {
        let (p1, p2, prod) = two_pairs(seed);
        let mut r = rng(seed ^ 0x5eed);
        for n in p1.degree_window() {
            let g1 = TruncatedGroup::new(&p1, n);
            for m in p2.degree_window() {
                let g2 = TruncatedGroup::new(&p2, m);
                let target = star_group(&prod, n + m);
                let t1 = g1.random_element(&mut r);
                let t2 = g2.random_element(&mut r);
                let s = star(&prod, &t1, &t2);
                prop_assert!(target.check(&s).is_ok());
                // move b1 and b2 by coboundaries
                let (b1c, b2c) = (p1.target(), p2.target());
                let mut u1 = t1.clone();
                u1.b = vec_add(&u1.b, &b1c.d(n - 2, &random_vec(&mut r, b1c.dim(n - 2))));
                let mut u2 = t2.clone();
                u2.b = vec_add(&u2.b, &b2c.d(m - 2, &random_vec(&mut r, b2c.dim(m - 2))));
                prop_assert!(target.same_class(&s, &star(&prod, &u1, &u2)));
                // cl and ω intertwine the products
                let x1 = g1.cl(&t1);
                let x2 = g2.cl(&t2);
                prop_assert_eq!(target.cl(&s), prod.representative(n, &x1, m, &x2));
                prop_assert_eq!(target.omega(&s), prod.pairings().m00.apply(n, &t1.a, m, &t2.a));
            }
        }
    }

    #[test]
    fn restriction_lemma(seed in any::<u64>()) {
        let (p1, p2, prod) = two_pairs(seed);
        let mut r = rng(seed ^ 0xabc);
        for n in p1.degree_window() {
            let g1 = TruncatedGroup::new(&p1, n);
            let hb1 = p1.target().cohomology(n - 1);
            let a1dim = p1.source().dim(n - 1);
            for m in p2.degree_window() {
                let g2 = TruncatedGroup::new(&p2, m);
                let target = star_group(&prod, n + m);
                let t2 = g2.random_element(&mut r);
                let x1 = random_vec(&mut r, a1dim);
                let x2 = random_vec(&mut r, p2.source().dim(m - 1));
                for i in 0..hb1.dim() {
                    let y1 = hb1.representative(i);
                    let by = g1.b_map(&y1).unwrap();
                    // b(H(B1)) * a(Ã2) = 0
                    prop_assert!(target.is_zero(&star(&prod, &by, &g2.a_map(&x2))));
                    // b([y]) * g = b([y] • cl(g))
                    let pairing = prod.boundary_pairing(n, &y1, m, &g2.cl(&t2));
                    let rhs = target.b_map(&pairing).unwrap();
                    prop_assert!(target.same_class(&star(&prod, &by, &t2), &rhs));
                }
                // a(x̃1) * g = a((x1 • ω(g))~)
                let lhs = star(&prod, &g1.a_map(&x1), &t2);
                let rhs = target.a_map(&prod.pairings().m00.apply(n - 1, &x1, m, &g2.omega(&t2)));
                prop_assert!(target.same_class(&lhs, &rhs));
                // so a(x̃1) * g only sees ω(g): shift b2 by a cocycle
                let zb = p2.target().cohomology(m - 1);
                if zb.dim() > 0 {
                    let mut t3 = t2.clone();
                    t3.b = vec_add(&t3.b, &zb.representative(0));
                    prop_assert!(target.same_class(&lhs, &star(&prod, &g1.a_map(&x1), &t3)));
                }
            }
        }
    }

    #[test]
    fn algebra_star_properties(seed in any::<u64>()) {
        let mut r = rng(seed);
        let morph = random_algebra_morphism(&mut r);
        let alg = AlgebraStar::new(morph.clone()).unwrap();
        let generic = algebra_corners(&morph).unwrap();
        let top = morph.source().complex().hi();
        for n in 0..=top {
            let g1 = alg.group(n);
            for m in 0..=(top - n) {
                let g2 = alg.group(m);
                let g12 = alg.group(n + m);
                let t1 = g1.random_element(&mut r);
                let t2 = g2.random_element(&mut r);
                let p = alg.product(&t1, &t2);
                prop_assert!(g12.check(&p).is_ok());
                // graded commutativity
                let q = alg.product(&t2, &t1).scale(&koszul_sign(&t1, &t2));
                prop_assert!(g12.same_class(&p, &q));
                // agrees with the general product after s(-j) → B, ((x, y), z) ↦ x
                let s = star(&generic, &t1, &t2);
                let bdim = morph.target().complex().dim(n + m - 1);
                prop_assert_eq!(&s.b[..bdim], &p.b[..]);
                prop_assert_eq!(&s.a, &p.a);
                // b(H(B)) * Ĥ = 0
                let hb = morph.target().complex().cohomology(n - 1);
                for i in 0..hb.dim() {
                    let bt = g1.b_map(&hb.representative(i)).unwrap();
                    prop_assert!(g12.is_zero(&alg.product(&bt, &t2)));
                }
                for k in 0..=(top - n - m) {
                    let t3 = alg.group(k).random_element(&mut r);
                    let g123 = alg.group(n + m + k);
                    let left = alg.product(&alg.product(&t1, &t2), &t3);
                    let right = alg.product(&t1, &alg.product(&t2, &t3));
                    prop_assert!(g123.same_class(&left, &right));
                }
            }
        }
    }
}

#[test]
fn omega_kills_b_map() {
    let mut r = rng(17);
    for _ in 0..8 {
        let pair = RelativePair::new(random_morphism(&mut r, 3));
        for n in pair.degree_window() {
            let g = TruncatedGroup::new(&pair, n);
            let hb = pair.target().cohomology(n - 1);
            for i in 0..hb.dim() {
                let t = g.b_map(&hb.representative(i)).unwrap();
                assert!(g.omega(&t).iter().all(|x| *x == cohchow::linalg::q(0)));
                // cl∘b is the connecting map [y] ↦ [0, -y]
                let v = g.cl(&t);
                let expected = pair.join(n, &vec![cohchow::linalg::q(0); pair.source().dim(n)], &vec_neg(&hb.representative(i)));
                assert_eq!(v, expected);
            }
        }
    }
}
