use cohchow::complex::{ComplexMap, Pairing};
use cohchow::linalg::{is_zero_vec, vec_add};
use cohchow::random::{random_morphism, random_quasi_iso, random_split_sequence, random_vec, rng};
use cohchow::relative::{RelativePair, RelativeProduct, SplitExactSequence};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn long_exact_sequence_of_pair(seed in any::<u64>()) {
        let p = RelativePair::new(random_morphism(&mut rng(seed), 3));
        prop_assert!(p.check_long_exact_sequence().is_ok());
    }

    #[test]
    fn quasi_isomorphism_has_no_relative_cohomology(seed in any::<u64>()) {
        let p = RelativePair::new(random_quasi_iso(&mut rng(seed), 3));
        prop_assert!(p.simple().is_acyclic());
    }

    #[test]
    fn kernel_simple_quasi_inverse(seed in any::<u64>()) {
        let s = random_split_sequence(&mut rng(seed), 3);
        let seq = SplitExactSequence::new(s.f, s.g, s.section).unwrap();
        let (iota, pi) = seq.kernel_simple().unwrap();
        prop_assert!(pi.compose(&iota).equals(&ComplexMap::identity(iota.source_arc())));
        prop_assert!(iota.is_quasi_iso());
        prop_assert!(pi.is_quasi_iso());
        for n in iota.target().lo()..=iota.target().hi() {
            prop_assert!(iota.compose(&pi).induced(n).is_identity());
        }
    }

    #[test]
    fn simple_cokernel_quasi_inverse(seed in any::<u64>()) {
        let s = random_split_sequence(&mut rng(seed), 3);
        let seq = SplitExactSequence::new(s.f, s.g, s.section).unwrap();
        let (pi, iota) = seq.simple_cokernel().unwrap();
        prop_assert!(pi.compose(&iota).equals(&ComplexMap::identity(iota.source_arc())));
        prop_assert!(pi.is_quasi_iso());
        prop_assert!(iota.is_quasi_iso());
    }

    #[test]
    fn connecting_map_agrees_with_simple_cokernel(seed in any::<u64>()) {
        // δ(c) = f^{-1}(d_B σ c) must match the first component of ι'(c)
        let s = random_split_sequence(&mut rng(seed), 3);
        let seq = SplitExactSequence::new(s.f, s.g, s.section).unwrap();
        let (_, iota) = seq.simple_cokernel().unwrap();
        let c = seq.g().target();
        for n in c.lo()..=c.hi() {
            let hc = c.cohomology(n);
            for i in 0..hc.dim() {
                let rep = hc.representative(i);
                let b = seq.section(n).apply(&rep);
                let delta = seq.connecting_from_lift(n, &b).unwrap();
                let first = iota.apply(n, &rep)[..delta.len()].to_vec();
                prop_assert_eq!(delta, first);
            }
            prop_assert!(seq.connecting(n).is_ok());
        }
    }

    #[test]
    fn product_is_well_defined(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p1 = RelativePair::new(random_morphism(&mut r, 2));
        let p2 = RelativePair::new(random_morphism(&mut r, 2));
        let prod = RelativeProduct::universal(p1.clone(), p2.clone()).unwrap();
        for n in p1.degree_window() {
            let h1 = p1.cohomology(n);
            for m in p2.degree_window() {
                let h2 = p2.cohomology(m);
                let ht = prod.target().cohomology(n + m);
                for i in 0..h1.dim() {
                    for k in 0..h2.dim() {
                        let x1 = h1.representative(i);
                        let x2 = h2.representative(k);
                        let rep = prod.representative(n, &x1, m, &x2);
                        prop_assert!(ht.is_cocycle(&rep));
                        // perturb both inputs by coboundaries
                        let s1 = p1.simple();
                        let s2 = p2.simple();
                        let y1 = vec_add(&x1, &s1.d(n - 1, &random_vec(&mut r, s1.dim(n - 1))));
                        let y2 = vec_add(&x2, &s2.d(m - 1, &random_vec(&mut r, s2.dim(m - 1))));
                        let rep2 = prod.representative(n, &y1, m, &y2);
                        prop_assert!(ht.same_class(&rep, &rep2));
                    }
                }
            }
        }
    }

    #[test]
    fn product_compatible_with_connecting(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p1 = RelativePair::new(random_morphism(&mut r, 2));
        let p2 = RelativePair::new(random_morphism(&mut r, 2));
        let prod = RelativeProduct::universal(p1.clone(), p2.clone()).unwrap();
        let b1c = p1.target();
        for n in p1.degree_window() {
            let hb = b1c.cohomology(n - 1);
            for m in p2.degree_window() {
                let h2 = p2.cohomology(m);
                for i in 0..hb.dim() {
                    for k in 0..h2.dim() {
                        let (lhs, rhs) = prod.connecting_compatibility(n, &hb.representative(i), m, &h2.representative(k));
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn corner_square_violation_is_rejected() {
    let mut r = rng(99);
    let p1 = RelativePair::new(random_morphism(&mut r, 2));
    let p2 = RelativePair::new(random_morphism(&mut r, 2));
    let good = RelativeProduct::universal(p1.clone(), p2.clone()).unwrap();
    let mut sq = good.square().clone();
    sq.gamma = sq.gamma.scale(&cohchow::linalg::q(2));
    let nonzero = sq.gamma.degrees().any(|n| !sq.gamma.map(n).is_zero());
    let res = RelativeProduct::new(p1, p2, sq, good.pairings().clone());
    if nonzero {
        assert!(res.is_err());
    }
}

#[test]
fn boundary_pairing_is_a_cocycle() {
    let mut r = rng(4);
    for _ in 0..6 {
        let p1 = RelativePair::new(random_morphism(&mut r, 2));
        let p2 = RelativePair::new(random_morphism(&mut r, 2));
        let prod = RelativeProduct::universal(p1.clone(), p2.clone()).unwrap();
        let sj = prod.target().target();
        for n in p1.degree_window() {
            let hb = p1.target().cohomology(n - 1);
            for m in p2.degree_window() {
                let h2 = p2.cohomology(m);
                for i in 0..hb.dim() {
                    for k in 0..h2.dim() {
                        let v = prod.boundary_pairing(n, &hb.representative(i), m, &h2.representative(k));
                        assert!(is_zero_vec(&sj.d(n + m - 1, &v)));
                    }
                }
            }
        }
    }
}

#[test]
fn pairing_rejects_wrong_source() {
    let mut r = rng(8);
    let f = random_morphism(&mut r, 2);
    let (a, b) = (f.source_arc(), f.target_arc());
    let bad = ComplexMap::identity(a.clone());
    if !cohchow::complex::tensor(&a, &b).same_underlying(&a) {
        assert!(Pairing::new(a, b, bad).is_err());
    }
}
