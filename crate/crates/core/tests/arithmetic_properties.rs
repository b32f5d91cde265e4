use cohchow::arithmetic::*;
use cohchow::linalg::{q, Q};
use proptest::prelude::*;

fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[test]
fn sigma_matches_trial_division() {
    for n in 1..=10_000i64 {
        let brute: i64 = (1..=n).filter(|d| n % d == 0).sum();
        assert_eq!(sigma(n).unwrap() as i64, brute, "N = {n}");
    }
    assert_eq!(sigma(1).unwrap(), 1);
    assert_eq!(sigma(6).unwrap(), 12);
    assert!(sigma(0).is_err());
    assert!(sigma(-4).is_err());
}

#[test]
fn sigma_is_multiplicative_only_on_coprime_arguments() {
    assert_eq!(sigma(4).unwrap() * sigma(3).unwrap(), sigma(12).unwrap());
    assert_ne!(sigma(2).unwrap() * sigma(2).unwrap(), sigma(4).unwrap());
}

#[test]
fn sum_dlogd_matches_per_divisor_accumulation() {
    for n in 1..=300i64 {
        let mut acc = SymbolicReal::zero();
        for d in (1..=n).filter(|d| n % d == 0) {
            // log d by repeated division
            let mut m = d;
            let mut p = 2;
            while m > 1 {
                while m % p == 0 {
                    acc = acc + SymbolicReal::log_prime(p as u64, q(d));
                    m /= p;
                }
                p += 1;
            }
        }
        assert_eq!(sum_dlogd(n).unwrap(), acc, "N = {n}");
    }
}

#[test]
fn arithmetic_degree_examples() {
    assert!(dega(&ArithmeticDivisor::default()).is_zero());
    let d = ArithmeticDivisor { finite: [(2, 1)].into_iter().collect(), green: SymbolicReal::zero() };
    assert_eq!(dega(&d), SymbolicReal::log_prime(2, q(1)));
    assert_eq!(div_hat(&q(1)).unwrap(), ArithmeticDivisor::default());
    let two = div_hat(&q(2)).unwrap();
    assert_eq!(two.finite, [(2, 1)].into_iter().collect());
    assert_eq!(two.green, SymbolicReal::log_prime(2, q(-1)));
    assert!(div_hat(&q(0)).is_err());
    assert!(dega(&div_hat(&qf(355, 113)).unwrap()).is_zero());
}

proptest! {
    #[test]
    fn product_formula(n in -1_000_000i64..=1_000_000, d in 1i64..=1_000_000) {
        prop_assume!(n != 0);
        prop_assert!(dega(&div_hat(&qf(n, d)).unwrap()).is_zero());
    }

    #[test]
    fn div_hat_is_a_homomorphism(a in 1i64..=10_000, b in 1i64..=10_000) {
        let f = |x: &Q| { let h = div_hat(x).unwrap(); (h.finite, h.green) };
        let (fa, ga) = f(&q(a));
        let (fb, gb) = f(&qf(1, b));
        let (fab, gab) = f(&qf(a, b));
        let mut sum = fa;
        for (p, v) in fb { *sum.entry(p).or_insert(0) += v; }
        sum.retain(|_, v| *v != 0);
        prop_assert_eq!(sum, fab);
        prop_assert_eq!(ga + gb, gab);
    }
}

#[test]
fn closed_forms() {
    let z = zeta_constant();
    assert_eq!(z.rational_part(), &qf(-1, 24));
    assert_eq!(z.zeta_coefficient(), &q(1));
    let expect =
        |r: i64, zc: i64, l2: i64| SymbolicReal::rational(q(r)) + SymbolicReal::zeta_prime(q(zc)) + SymbolicReal::log_prime(2, q(l2));
    assert_eq!(modular_selfintersection(12).unwrap(), expect(-6, 144, 0));
    assert_eq!(threefold_selfintersection(12, 12).unwrap(), expect(-36, 864, 0));
    assert_eq!(hecke_height(1, 12).unwrap(), expect(-24, 576, 0));
    assert_eq!(hecke_height(2, 12).unwrap(), expect(-72, 1728, 12));
}

#[test]
fn scaling_and_symmetry() {
    for k in [12, 24, 36, 48] {
        assert_eq!(modular_selfintersection(2 * k).unwrap(), modular_selfintersection(k).unwrap().scale_int(4));
        for l in [12, 24, 36] {
            assert_eq!(threefold_selfintersection(k, l).unwrap(), threefold_selfintersection(l, k).unwrap());
            assert_eq!(threefold_selfintersection(k, l).unwrap(), threefold_by_expansion(k, l).unwrap());
        }
        assert_eq!(modular_selfintersection(k).unwrap(), modular_selfintersection_by_diagonal(k).unwrap());
    }
    for n in 1..=60 {
        assert_eq!(hecke_height(n, 24).unwrap(), hecke_height(n, 12).unwrap().scale_int(4));
    }
}

#[test]
fn hecke_height_routes_agree() {
    for n in 1..=500 {
        for k in [12, 24, 36] {
            assert_eq!(hecke_height(n, k).unwrap(), hecke_height_by_decomposition(n, k).unwrap(), "N = {n}, k = {k}");
        }
    }
}

#[test]
fn jensen_values() {
    let z = zeta_constant();
    assert_eq!(rohrlich_jensen(1).unwrap(), z.scale_int(-12));
    assert_eq!(rohrlich_jensen(2).unwrap(), z.scale_int(-36) + SymbolicReal::log_prime(2, qf(1, 2)));
    for n in 1..=200 {
        let s = sigma(n).unwrap() as i64;
        let formula = z.scale_int(-12 * s) + sum_dlogd(n).unwrap() - SymbolicReal::log(n as u64).unwrap().scale(&qf(s, 2));
        assert_eq!(rohrlich_jensen(n).unwrap(), formula, "N = {n}");
        assert_eq!(hecke_representatives(n).unwrap().len() as i64, s);
    }
}

#[test]
fn eisenstein_coefficients() {
    let c0 = eisenstein_multiplier(0);
    assert_eq!(c0.holomorphic, SymbolicReal::rational(qf(-1, 24)));
    assert_eq!(c0.inverse_8_pi_y, q(1));
    let rest: Vec<String> = (1..=5).map(|n| eisenstein_multiplier(n).to_string()).collect();
    assert_eq!(rest, ["1", "3", "4", "7", "6"]);
    assert!(eisenstein_multiplier(-3).holomorphic.is_zero());
    assert_eq!(c0.to_string(), "-1/24 + 1/(8*pi*y)");
    for n in -20..=1000 {
        assert_eq!(generating_series_multiplier(n), eisenstein_multiplier(n));
    }
}

#[test]
fn symbolic_real_is_canonical() {
    let a = SymbolicReal::log_prime(3, q(2)) + SymbolicReal::log_prime(2, q(1));
    let b = a.clone() - SymbolicReal::log_prime(3, q(2));
    assert_eq!(b.log_coefficients().keys().copied().collect::<Vec<_>>(), vec![2]);
    assert_eq!(a.log_coefficients().keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    assert!((a.clone() - a).is_zero());
}

#[test]
fn rendering() {
    let r = render(&zeta_constant(), 30).unwrap();
    assert!(r.starts_with("-0.2070878"), "{r}");
    assert_eq!(render(&hecke_height(2, 12).unwrap(), 12).unwrap(), "-349.529970148");
    assert!(render(&zeta_constant(), MAX_DIGITS + 1).is_err());
}
