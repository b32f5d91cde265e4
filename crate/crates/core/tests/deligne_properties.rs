use cohchow::deligne::{AssocSweep, DeligneAlgebra, DeligneHomotopy, DeligneModule};
use cohchow::dolbeault::{jet, nilpotent, torus, DolbeaultAlgebra, DolbeaultModule};
use cohchow::random::rng;
use proptest::prelude::*;
use std::sync::Arc;

fn deligne(a: DolbeaultAlgebra, w: i32) -> Arc<DeligneAlgebra> {
    Arc::new(DeligneAlgebra::new(Arc::new(a), w).unwrap())
}

fn small_algebras() -> Vec<(&'static str, DolbeaultAlgebra)> {
    vec![("torus1", torus(1)), ("torus2", torus(2)), ("jet0", jet(0)), ("nil21", nilpotent(&mut rng(3), 2, 1))]
}

#[test]
fn homotopy_equivalence_for_all_weights() {
    for (name, a) in small_algebras().into_iter().chain([("jet1", jet(1))]) {
        let top = a.space.top_degree();
        let d = deligne(a, top + 1);
        for p in 0..=top + 1 {
            let h = DeligneHomotopy::new(&d.complex(p)).unwrap();
            h.check().unwrap_or_else(|e| panic!("{name} weight {p}: {e}"));
        }
    }
}

#[test]
fn product_is_commutative_and_leibniz() {
    for (name, a) in small_algebras() {
        let d = deligne(a, 2);
        for p in 0..=2 {
            for qw in 0..=2 - p {
                d.check_graded_commutative(p, qw).unwrap_or_else(|e| panic!("{name}: {e}"));
                d.pairing(p, qw).unwrap_or_else(|e| panic!("{name}: {e}"));
                d.check_r_multiplicative(p, qw).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }
}

#[test]
fn pseudo_associativity() {
    for (name, a) in small_algebras() {
        let d = deligne(a, 3);
        for p in 0..=1 {
            for qw in 0..=1 {
                for rw in 0..=1 {
                    let rep = d.pseudo_assoc_check(p, qw, rw, AssocSweep::Exhaustive).unwrap_or_else(|e| panic!("{name}: {e}"));
                    assert!(rep.cocycle_triples > 0 || rep.exact_triples > 0, "{name} {p}{qw}{rw} visited nothing");
                }
            }
        }
    }
}

#[test]
fn module_actions() {
    for (name, a) in [("torus2", torus(2)), ("jet0", jet(0))] {
        let d = deligne(a, 2);
        let alg = d.algebra();
        for m in [DolbeaultModule::regular(alg), DolbeaultModule::hodge_submodule(alg, 1).unwrap()] {
            let dm = DeligneModule::new(d.clone(), Arc::new(m)).unwrap();
            for p in 0..=1 {
                for qw in 0..=1 {
                    dm.pairing(p, qw).unwrap_or_else(|e| panic!("{name}: {e}"));
                    for rw in 0..=1 {
                        dm.pseudo_assoc_check(p, qw, rw, AssocSweep::Sampled { seed: 5, per_degree: 3 })
                            .unwrap_or_else(|e| panic!("{name}: {e}"));
                    }
                }
            }
        }
    }
}

#[test]
fn regular_module_action_is_the_product() {
    let d = deligne(torus(2), 2);
    let dm = DeligneModule::new(d.clone(), Arc::new(DolbeaultModule::regular(d.algebra()))).unwrap();
    let mut r = rng(9);
    for (n, p, m, qw) in [(1, 1, 2, 1), (2, 1, 1, 1), (0, 0, 3, 2), (2, 1, 2, 1)] {
        let x = d.complex(p).random_element(&mut r, n);
        let y = d.complex(qw).random_element(&mut r, m);
        assert_eq!(dm.action(&x, n, p, &y, m, qw), d.product(&x, n, p, &y, m, qw));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn random_nilpotent_algebras(seed in any::<u64>()) {
        let a = nilpotent(&mut rng(seed), 3, 2);
        let d = deligne(a, 1);
        for p in 0..=1 {
            DeligneHomotopy::new(&d.complex(p)).unwrap().check().unwrap();
        }
        d.check_graded_commutative(1, 1).unwrap();
        d.pairing(0, 1).unwrap();
        let rep = d.pseudo_assoc_check(0, 1, 1, AssocSweep::Sampled { seed, per_degree: 2 }).unwrap();
        prop_assert!(rep.exact_triples > 0);
    }
}
