//! Exact closed forms for arithmetic intersection numbers on modular curves and their products.
//!
//! Values live in `ℚ ⊕ ℚ·ζ′(−1) ⊕ ⨁_p ℚ·log p`. Floating point only enters through [`render`].

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use dashu_float::DBig;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// ζ′(−1) to 70 significant digits. Checked against two independent high-precision evaluations
/// (direct derivative and `1/12 − log A` with Glaisher's constant) before being written down.
pub const ZETA_PRIME_MINUS_ONE: &str = "-0.1654211437004509292139196602427806427640363803352017836665223063573597";

/// Largest number of significant digits [`render`] will produce.
pub const MAX_DIGITS: usize = 60;

/// An exact real number `q0 + qz·ζ′(−1) + Σ c_p log p`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolicReal {
    q0: Q,
    qz: Q,
    logs: BTreeMap<u64, Q>,
}

impl SymbolicReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(x: Q) -> Self {
        SymbolicReal { q0: x, ..Self::default() }
    }

    /// `c·ζ′(−1)`.
    pub fn zeta_prime(c: Q) -> Self {
        SymbolicReal { qz: c, ..Self::default() }
    }

    /// `c·log p` for a prime `p`.
    pub fn log_prime(p: u64, c: Q) -> Self {
        let mut logs = BTreeMap::new();
        if !c.is_zero() {
            logs.insert(p, c);
        }
        SymbolicReal { logs, ..Self::default() }
    }

    /// `log n`, expanded along the factorization of `n ≥ 1`.
    pub fn log(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::pre("log argument is positive, got 0"));
        }
        Ok(factorize(n).into_iter().fold(Self::zero(), |acc, (p, e)| acc + Self::log_prime(p, q(e as i64))))
    }

    pub fn rational_part(&self) -> &Q {
        &self.q0
    }

    pub fn zeta_coefficient(&self) -> &Q {
        &self.qz
    }

    /// Coefficients of `log p`, primes increasing, zero coefficients absent.
    pub fn log_coefficients(&self) -> &BTreeMap<u64, Q> {
        &self.logs
    }

    pub fn log_coefficient(&self, p: u64) -> Q {
        self.logs.get(&p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.qz.is_zero() && self.logs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.qz.is_zero() && self.logs.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymbolicReal { q0: &self.q0 * c, qz: &self.qz * c, logs: self.logs.iter().map(|(p, v)| (*p, v * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&q(c))
    }

    /// Product, defined only when one factor is rational.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_rational() {
            Ok(other.scale(&self.q0))
        } else if other.is_rational() {
            Ok(self.scale(&other.q0))
        } else {
            Err(Error::pre(format!("one factor of a product is rational: ({self})·({other})")))
        }
    }

    pub fn to_json(&self) -> Value {
        let logs: serde_json::Map<String, Value> = self.logs.iter().map(|(p, c)| (p.to_string(), json!(c.to_string()))).collect();
        json!({ "rational": self.q0.to_string(), "zeta_prime": self.qz.to_string(), "logs": logs })
    }
}

impl Add for SymbolicReal {
    type Output = SymbolicReal;
    fn add(mut self, rhs: SymbolicReal) -> SymbolicReal {
        self.q0 += rhs.q0;
        self.qz += rhs.qz;
        for (p, c) in rhs.logs {
            let e = self.logs.entry(p).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                self.logs.remove(&p);
            }
        }
        self
    }
}

impl Neg for SymbolicReal {
    type Output = SymbolicReal;
    fn neg(self) -> SymbolicReal {
        self.scale_int(-1)
    }
}

impl Sub for SymbolicReal {
    type Output = SymbolicReal;
    fn sub(self, rhs: SymbolicReal) -> SymbolicReal {
        self + (-rhs)
    }
}

impl std::iter::Sum for SymbolicReal {
    fn sum<I: Iterator<Item = SymbolicReal>>(iter: I) -> Self {
        iter.fold(SymbolicReal::zero(), |a, b| a + b)
    }
}

/// `-24 + 576*zeta'(-1) + 12*log(2)`; `0` for zero.
impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Q, Option<String>)> = Vec::new();
        if !self.q0.is_zero() {
            terms.push((self.q0.clone(), None));
        }
        if !self.qz.is_zero() {
            terms.push((self.qz.clone(), Some("zeta'(-1)".into())));
        }
        for (p, c) in &self.logs {
            terms.push((c.clone(), Some(format!("log({p})"))));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, sym)) in terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match sym {
                None => write!(f, "{mag}")?,
                Some(s) if mag.is_one() => write!(f, "{s}")?,
                Some(s) => write!(f, "{mag}*{s}")?,
            }
        }
        Ok(())
    }
}

/// Prime factorization by trial division, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn positive(n: i64, what: &str) -> Result<u64> {
    if n <= 0 {
        return Err(Error::pre(format!("{what} is positive, got {n}")));
    }
    Ok(n as u64)
}

/// Sum of the positive divisors of `n ≥ 1`, from the factorization.
pub fn sigma(n: i64) -> Result<u64> {
    let n = positive(n, "N")?;
    Ok(factorize(n).into_iter().map(|(p, e)| (p.pow(e + 1) - 1) / (p - 1)).product())
}

/// Positive divisors of `n`, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Σ_{d|N} d·log d`, exact.
pub fn sum_dlogd(n: i64) -> Result<SymbolicReal> {
    let n = positive(n, "N")?;
    divisors(n).into_iter().map(|d| Ok(SymbolicReal::log(d)?.scale_int(d as i64))).collect::<Result<Vec<_>>>().map(|v| v.into_iter().sum())
}

/// The upper triangular integer matrices `(a b; 0 d)` with `ad = N`, `d > 0`, `0 ≤ b < d`:
/// representatives of the determinant `N` matrices modulo `SL₂(ℤ)`.
pub fn hecke_representatives(n: i64) -> Result<Vec<[u64; 3]>> {
    let n = positive(n, "N")?;
    Ok(divisors(n).into_iter().flat_map(|d| (0..d).map(move |b| [n / d, b, d])).collect())
}

/// A divisor on `Spec ℤ` with its archimedean Green datum: `(Σ n_p [p], g)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ArithmeticDivisor {
    pub finite: BTreeMap<u64, i64>,
    pub green: SymbolicReal,
}

/// Arithmetic degree `Σ n_p log p + g`.
pub fn dega(d: &ArithmeticDivisor) -> SymbolicReal {
    d.finite.iter().map(|(p, n)| SymbolicReal::log_prime(*p, q(*n))).sum::<SymbolicReal>() + d.green.clone()
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.abs().to_u64().ok_or_else(|| Error::input(format!("{what} fits in 64 bits, got {x}")))
}

/// The principal arithmetic divisor of `f ∈ ℚ*`: `(Σ v_p(f)[p], −log|f|)`.
pub fn div_hat(f: &Q) -> Result<ArithmeticDivisor> {
    if f.is_zero() {
        return Err(Error::pre("f is nonzero"));
    }
    let mut finite = BTreeMap::new();
    for (x, sign) in [(f.numer(), 1i64), (f.denom(), -1)] {
        for (p, e) in factorize(to_u64(x, "numerator and denominator")?) {
            *finite.entry(p).or_insert(0) += sign * e as i64;
        }
    }
    finite.retain(|_, v| *v != 0);
    let log_abs: SymbolicReal = finite.iter().map(|(p, v)| SymbolicReal::log_prime(*p, q(*v))).sum();
    Ok(ArithmeticDivisor { finite, green: -log_abs })
}

/// `½ζ(−1) + ζ′(−1) = −1/24 + ζ′(−1)`.
pub fn zeta_constant() -> SymbolicReal {
    SymbolicReal::rational(Q::new((-1).into(), 24.into())) + SymbolicReal::zeta_prime(q(1))
}

fn check_weight(k: i64) -> Result<()> {
    if k <= 0 || k % 12 != 0 {
        return Err(Error::pre(format!("weight is a positive multiple of 12, got {k}")));
    }
    Ok(())
}

/// Self-intersection `k²(½ζ(−1) + ζ′(−1))` of the weight `k` modular line bundle on `X(1)`.
pub fn modular_selfintersection(k: i64) -> Result<SymbolicReal> {
    check_weight(k)?;
    Ok(zeta_constant().scale_int(k * k))
}

/// Degree of the weight `k` line bundle on `X(1)`: `k/12`.
pub fn modular_degree(k: i64) -> Q {
    Q::new(k.into(), 12.into())
}

/// `(k²l + l²k)/4 · (½ζ(−1) + ζ′(−1))` for the bundle `p₁*M_k ⊗ p₂*M_l` on the product.
pub fn threefold_selfintersection(k: i64, l: i64) -> Result<SymbolicReal> {
    check_weight(k)?;
    check_weight(l)?;
    Ok(zeta_constant().scale(&Q::new((k * k * l + l * l * k).into(), 4.into())))
}

/// Bidegree `(k, l)` of a line bundle on `X(1) × X(1)`.
pub type Bundle = (i64, i64);

/// Triple intersection of three bundles on the product, by expanding each as `p₁*M ⊗ p₂*M` and
/// keeping the terms with two factors from one side and one from the other:
/// `M_a·M_b = ab·(½ζ(−1) + ζ′(−1))` on one factor times `deg M_c = c/12` on the other.
pub fn triple_product(b: [Bundle; 3]) -> SymbolicReal {
    let pair = |x: i64, y: i64| zeta_constant().scale_int(x * y);
    let mut total = SymbolicReal::zero();
    for lone in 0..3 {
        let (i, j) = match lone {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        total = total + pair(b[i].0, b[j].0).scale(&modular_degree(b[lone].1));
        total = total + pair(b[i].1, b[j].1).scale(&modular_degree(b[lone].0));
    }
    total
}

/// The threefold self-intersection through [`triple_product`].
pub fn threefold_by_expansion(k: i64, l: i64) -> Result<SymbolicReal> {
    check_weight(k)?;
    check_weight(l)?;
    Ok(triple_product([(k, l); 3]))
}

/// `(2k)²(σ(N)(½ζ(−1) + ζ′(−1)) + Σ_{d|N} d log d / 24 − σ(N) log N / 48)`.
pub fn hecke_height(n: i64, k: i64) -> Result<SymbolicReal> {
    check_weight(k)?;
    let s = sigma(n)? as i64;
    let inner = zeta_constant().scale_int(s) + sum_dlogd(n)?.scale(&Q::new(1.into(), 24.into()))
        - SymbolicReal::log(n as u64)?.scale(&Q::new(s.into(), 48.into()));
    Ok(inner.scale_int(4 * k * k))
}

/// Modular Jensen value `∫ log‖s_N(z, z₀)‖ dμ`, assembled from the representatives: the
/// `−12σ(N)(½ζ(−1) + ζ′(−1))` term plus `½ Σ_γ log(d²/N)`.
pub fn rohrlich_jensen(n: i64) -> Result<SymbolicReal> {
    let reps = hecke_representatives(n)?;
    let count = reps.len() as i64;
    let mut logs = SymbolicReal::zero();
    for [_, _, d] in &reps {
        logs = logs + SymbolicReal::log(*d)?.scale_int(2) - SymbolicReal::log(n as u64)?;
    }
    Ok(zeta_constant().scale_int(-12 * count) + logs.scale(&Q::new(1.into(), 2.into())))
}

/// The height split as `dega π*(ĉ₁(L(k,k))²·ĉ₁(L(12σ,12σ)))` plus the integral of
/// `log‖s_N‖ · c₁(L(k,k))²`, which equals `k²/6` times the Jensen value.
fn hecke_decomposition_unchecked(n: i64, k: i64) -> Result<SymbolicReal> {
    let m = 12 * hecke_representatives(n)?.len() as i64;
    let intersection = triple_product([(k, k), (k, k), (m, m)]);
    let integral = rohrlich_jensen(n)?.scale(&Q::new((k * k).into(), 6.into()));
    Ok(intersection + integral)
}

/// [`hecke_height`] by the decomposition route.
pub fn hecke_height_by_decomposition(n: i64, k: i64) -> Result<SymbolicReal> {
    check_weight(k)?;
    hecke_decomposition_unchecked(n, k)
}

/// [`modular_selfintersection`] from the diagonal `T_1` in `X(1) × X(1)`, where `L(k/2, k/2)`
/// restricts to `M_k`.
pub fn modular_selfintersection_by_diagonal(k: i64) -> Result<SymbolicReal> {
    check_weight(k)?;
    hecke_decomposition_unchecked(1, k / 2)
}

/// A Fourier coefficient of the weight 2 Eisenstein series, with the coefficient of the
/// non-holomorphic `1/(8πy)` term kept apart and never evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinCoefficient {
    pub holomorphic: SymbolicReal,
    pub inverse_8_pi_y: Q,
}

impl EisensteinCoefficient {
    fn plain(x: SymbolicReal) -> Self {
        EisensteinCoefficient { holomorphic: x, inverse_8_pi_y: Q::zero() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "holomorphic": self.holomorphic.to_json(), "inverse_8_pi_y": self.inverse_8_pi_y.to_string() })
    }
}

impl fmt::Display for EisensteinCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.holomorphic.is_zero(), self.inverse_8_pi_y.is_zero()) {
            (_, true) => write!(f, "{}", self.holomorphic),
            (true, false) => write!(f, "{}/(8*pi*y)", self.inverse_8_pi_y),
            (false, false) => write!(f, "{} + {}/(8*pi*y)", self.holomorphic, self.inverse_8_pi_y),
        }
    }
}

/// `N`-th Fourier coefficient of `E₂(z,1) = −1/24 + 1/(8πy) + Σ σ(N) qᴺ`.
pub fn eisenstein_multiplier(n: i64) -> EisensteinCoefficient {
    match n.cmp(&0) {
        std::cmp::Ordering::Less => EisensteinCoefficient::plain(SymbolicReal::zero()),
        std::cmp::Ordering::Equal => {
            EisensteinCoefficient { holomorphic: SymbolicReal::rational(Q::new((-1).into(), 24.into())), inverse_8_pi_y: q(1) }
        }
        std::cmp::Ordering::Greater => EisensteinCoefficient::plain(SymbolicReal::rational(q(sigma(n).expect("N > 0") as i64))),
    }
}

/// The multiple of `ĉ₁(L(12,12))` that the arithmetic cycle `T̂(N)` of the generating series
/// equals: `s_N` is a section of `L(12|R_N|, 12|R_N|)`, and `T̂(0)` is defined with `−1/24` and
/// `1/(8πy)`.
pub fn generating_series_multiplier(n: i64) -> EisensteinCoefficient {
    match n.cmp(&0) {
        std::cmp::Ordering::Less => EisensteinCoefficient::plain(SymbolicReal::zero()),
        std::cmp::Ordering::Equal => {
            EisensteinCoefficient { holomorphic: SymbolicReal::rational(Q::new((-1).into(), 24.into())), inverse_8_pi_y: q(1) }
        }
        std::cmp::Ordering::Greater => {
            let weight = 12 * hecke_representatives(n).expect("N > 0").len() as i64;
            EisensteinCoefficient::plain(SymbolicReal::rational(Q::new(weight.into(), 12.into())))
        }
    }
}

fn dbig(s: &str, prec: usize) -> DBig {
    DBig::from_str(s).expect("decimal literal").with_precision(prec).value()
}

fn dbig_q(x: &Q, prec: usize) -> DBig {
    dbig(&x.numer().to_string(), prec) / dbig(&x.denom().to_string(), prec)
}

/// Decimal value of `x` to `digits` significant digits, substituting [`ZETA_PRIME_MINUS_ONE`].
pub fn render(x: &SymbolicReal, digits: usize) -> Result<String> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::input(format!("precision in 1..={MAX_DIGITS}, got {digits}")));
    }
    let prec = digits + 20;
    let mut v = dbig_q(&x.q0, prec);
    if !x.qz.is_zero() {
        v += dbig_q(&x.qz, prec) * dbig(ZETA_PRIME_MINUS_ONE, prec);
    }
    for (p, c) in &x.logs {
        v += dbig_q(c, prec) * dbig(&p.to_string(), prec).ln();
    }
    Ok(pad_digits(&v.with_precision(digits).value().to_string(), digits))
}

/// Restores trailing zeros dropped by the decimal formatter.
fn pad_digits(s: &str, digits: usize) -> String {
    if s.contains('e') {
        return s.to_string();
    }
    let sig = s.trim_start_matches('-').trim_start_matches(['0', '.']).chars().filter(|c| c.is_ascii_digit()).count();
    if sig >= digits {
        return s.to_string();
    }
    let mut out = s.to_string();
    if !out.contains('.') {
        out.push('.');
    }
    out.extend(std::iter::repeat_n('0', digits - sig));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(hecke_height(1, 12).unwrap().to_string(), "-24 + 576*zeta'(-1)");
        assert_eq!(hecke_height(2, 12).unwrap().to_string(), "-72 + 1728*zeta'(-1) + 12*log(2)");
        assert_eq!(SymbolicReal::zero().to_string(), "0");
        assert_eq!(zeta_constant().to_string(), "-1/24 + zeta'(-1)");
    }

    #[test]
    fn sum_dlogd_small_cases() {
        assert!(sum_dlogd(1).unwrap().is_zero());
        assert_eq!(sum_dlogd(2).unwrap(), SymbolicReal::log_prime(2, q(2)));
        let s = sum_dlogd(12).unwrap();
        assert_eq!(s, SymbolicReal::log_prime(2, q(40)) + SymbolicReal::log_prime(3, q(21)));
        assert!(sum_dlogd(0).is_err());
    }

    #[test]
    fn products_need_a_rational_factor() {
        let z = zeta_constant();
        assert!(z.checked_mul(&z).is_err());
        assert_eq!(z.checked_mul(&SymbolicReal::rational(q(2))).unwrap(), z.scale_int(2));
    }

    #[test]
    fn rendering_pads_and_rounds() {
        assert_eq!(render(&SymbolicReal::rational(q(1)), 5).unwrap(), "1.0000");
        assert_eq!(render(&zeta_constant(), 7).unwrap(), "-0.2070878");
        assert!(render(&zeta_constant(), 0).is_err());
    }

    #[test]
    fn weights_are_checked() {
        assert!(modular_selfintersection(0).is_err());
        assert!(hecke_height(1, 13).is_err());
        assert!(hecke_height(0, 12).is_err());
    }
}
