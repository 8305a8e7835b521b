//! Poincaré polynomials of `T_{d,n}` and their generating functions.
//!
//! `P_n(q)` is produced by the normalized recursion on `p_n = P_n / n!`
//! starting from `p_1 = 1`; the binomial recursion on `P_n` starting from
//! `P_2 = κ_d` is kept as an independent cross-check. The generating
//! function `ψ(q,t) = Σ p_n t^n` is checked against its functional and
//! differential equations, and `η(t) = ψ(-1,t)` against the Euler
//! characteristic equations. All arithmetic is exact.

mod qpoly;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use qpoly::QPoly;
pub use series::{Coefficient, TruncSeries};

use crate::error::{Error, Result};
use crate::util::rat;

/// Default truncation order for generating-function checks.
pub const DEFAULT_ORDER: usize = 8;

fn check_d(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::BadParams("d must be at least 1".into()));
    }
    Ok(())
}

/// `κ_m = 1 + q² + … + q^{2(m-1)}`, the Poincaré polynomial of `P^{m-1}`.
pub fn kappa(m: u32) -> QPoly {
    QPoly::from_integers((0..2 * i64::from(m)).map(|k| i64::from(k % 2 == 0)))
}

/// `p_0 = 0, p_1, …, p_max` from
/// `(n+1) p_{n+1} = (1 - n q^{2d}) p_n + q² κ_d Σ_{i+j=n+1, i≥1} j p_i p_j`.
pub fn normalized_coefficients(d: u32, max: usize) -> Result<Vec<QPoly>> {
    check_d(d)?;
    let q2d = QPoly::q_pow(2 * d as usize);
    let q2_kappa = &QPoly::q_pow(2) * &kappa(d);
    let mut p = vec![QPoly::zero(); max + 1];
    if max >= 1 {
        p[1] = QPoly::one();
    }
    for n in 1..max {
        let linear = &(&QPoly::one() - &q2d.scale(&rat(n as i64))) * &p[n];
        let mut conv = QPoly::zero();
        for i in 1..=n {
            let j = n + 1 - i;
            conv = &conv + &(&p[i] * &p[j]).scale(&rat(j as i64));
        }
        let total = &linear + &(&q2_kappa * &conv);
        p[n + 1] = total.scale(&BigRational::new(BigInt::one(), BigInt::from(n + 1)));
    }
    Ok(p)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `P_n(q) = n! p_n(q)`, the Poincaré polynomial of `T_{d,n}` (`P_1 = 1`).
pub fn poincare(d: u32, n: u32) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    let p = normalized_coefficients(d, n as usize)?;
    let poly = p[n as usize].scale(&BigRational::from_integer(factorial(n as usize)));
    assert!(
        poly.has_integer_coefficients(),
        "n! p_n has a fractional coefficient for d={d}, n={n}: {poly}"
    );
    Ok(poly)
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `P_n` from `P_2 = κ_d` and
/// `P_{n+1} = (κ_{d+1} + n q² κ_{d-1}) P_n
///          + q² κ_d Σ_{i+j=n+1, 2≤i≤n-1} C(n,i) P_i P_j`.
pub fn poincare_via_binomial_recursion(d: u32, n: u32) -> Result<QPoly> {
    check_d(d)?;
    if n < 2 {
        return Err(Error::BadParams("n must be at least 2".into()));
    }
    let n = n as usize;
    let q2 = QPoly::q_pow(2);
    let q2_kappa = &q2 * &kappa(d);
    let mut big_p = vec![QPoly::zero(); n + 1];
    big_p[1] = QPoly::one();
    big_p[2] = kappa(d);
    for m in 2..n {
        let factor = &kappa(d + 1) + &(&q2 * &kappa(d - 1)).scale(&rat(m as i64));
        let mut conv = QPoly::zero();
        for i in 2..m {
            let j = m + 1 - i;
            let c = BigRational::from_integer(binomial(m, i));
            conv = &conv + &(&big_p[i] * &big_p[j]).scale(&c);
        }
        big_p[m + 1] = &(&factor * &big_p[m]) + &(&q2_kappa * &conv);
    }
    Ok(big_p.swap_remove(n))
}

/// Betti numbers `b_{2k}`, `k = 0..=dim`. Odd coefficients must vanish.
pub fn betti_numbers(d: u32, n: u32) -> Result<Vec<BigInt>> {
    let poly = poincare(d, n)?;
    let ints = poly
        .integer_coefficients()
        .expect("integral Poincaré polynomial");
    if ints.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(Error::NormalizationFailure(format!(
            "odd Betti number in {poly}"
        )));
    }
    Ok(ints.into_iter().step_by(2).collect())
}

/// `χ(T_{d,n}) = P_n(-1)`.
pub fn euler_char(d: u32, n: u32) -> Result<BigInt> {
    Ok(poincare(d, n)?.eval(&rat(-1)).to_integer())
}

/// `ψ(q,t) = Σ_{n ≥ 1} p_n(q) t^n` truncated at `t^order`.
pub fn psi_series(d: u32, order: usize) -> Result<TruncSeries<QPoly>> {
    if order == 0 {
        return Err(Error::BadParams("order must be at least 1".into()));
    }
    Ok(TruncSeries::from_coeffs(
        normalized_coefficients(d, order)?,
        order,
    ))
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::BadParams("order must be at least 2".into()));
    }
    Ok(())
}

fn differential_residual(d: u32, psi: &TruncSeries<QPoly>) -> TruncSeries<QPoly> {
    let m = psi.order() - 1;
    let q2d = QPoly::q_pow(2 * d as usize);
    let q2_kappa = &QPoly::q_pow(2) * &kappa(d);
    let one = TruncSeries::constant(QPoly::one(), m);
    let psi_m = psi.truncate(m);
    let factor = one
        .add(&TruncSeries::t(m).mul_coeff(&q2d))
        .sub(&psi_m.mul_coeff(&q2_kappa));
    factor.mul(&psi.derivative()).sub(&one.add(&psi_m))
}

/// Residual of `(1 + q^{2d} t - q² κ_d ψ) ψ_t - (1 + ψ)` through
/// `t^{order-1}`.
pub fn verify_differential(d: u32, order: usize) -> Result<TruncSeries<QPoly>> {
    check_order(order)?;
    Ok(differential_residual(d, &psi_series(d, order)?))
}

/// Residual of
/// `κ_d (1+ψ)^{q^{2d}} - (q^{2d+2} κ_d ψ - q^{2d}(q^{2d}-1) t + κ_d)`
/// through `t^order`, with the power taken as `exp(q^{2d} log(1+ψ))`.
pub fn verify_functional(d: u32, order: usize) -> Result<TruncSeries<QPoly>> {
    check_order(order)?;
    let psi = psi_series(d, order)?;
    let kd = kappa(d);
    let q2d = QPoly::q_pow(2 * d as usize);
    let power = psi.log_one_plus()?.mul_coeff(&q2d).exp()?;
    let lhs = power.mul_coeff(&kd);
    let t_coeff = &q2d * &(&q2d - &QPoly::one());
    let rhs = psi
        .mul_coeff(&(&QPoly::q_pow(2 * d as usize + 2) * &kd))
        .sub(&TruncSeries::t(order).mul_coeff(&t_coeff))
        .add(&TruncSeries::constant(kd, order));
    Ok(lhs.sub(&rhs))
}

/// Re-derives `ψ` by solving the differential equation one coefficient at
/// a time from `p_1 = 1`, using only series arithmetic.
pub fn solve_differential(d: u32, order: usize) -> Result<TruncSeries<QPoly>> {
    check_d(d)?;
    check_order(order)?;
    let mut psi = TruncSeries::t(order);
    for n in 1..order {
        // with p_{n+1} still zero, the t^n residual is -(n+1) p_{n+1}
        let residual = differential_residual(d, &psi);
        let next = residual
            .coeff(n)
            .scale(&BigRational::new(BigInt::from(-1), BigInt::from(n + 1)));
        let mut coeffs = psi.coeffs().to_vec();
        coeffs[n + 1] = next;
        psi = TruncSeries::from_coeffs(coeffs, order);
    }
    Ok(psi)
}

/// `η(t) = ψ(-1, t)`, coefficients `χ(T_{d,n}) / n!`.
pub fn euler_series(d: u32, order: usize) -> Result<TruncSeries<BigRational>> {
    let minus_one = rat(-1);
    let p = normalized_coefficients(d, order)?;
    Ok(TruncSeries::from_coeffs(
        p.iter().map(|c| c.eval(&minus_one)).collect(),
        order,
    ))
}

/// Residuals of the two Euler characteristic equations.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerResiduals {
    /// `d(1+η) log(1+η) - ((d+1)η - t)` through `t^order`.
    pub logarithmic: TruncSeries<BigRational>,
    /// `(1 + t - dη) η_t - (1 + η)` through `t^{order-1}`.
    pub differential: TruncSeries<BigRational>,
}

impl EulerResiduals {
    pub fn is_zero(&self) -> bool {
        self.logarithmic.is_zero() && self.differential.is_zero()
    }
}

pub fn verify_euler(d: u32, order: usize) -> Result<EulerResiduals> {
    check_order(order)?;
    let eta = euler_series(d, order)?;
    let dd = rat(i64::from(d));
    let one = TruncSeries::constant(rat(1), order);
    let t = TruncSeries::t(order);
    let logarithmic = one
        .add(&eta)
        .mul(&eta.log_one_plus()?)
        .scale(&dd)
        .sub(&eta.scale(&rat(i64::from(d) + 1)).sub(&t));

    let m = order - 1;
    let eta_m = eta.truncate(m);
    let one_m = one.truncate(m);
    let differential = one_m
        .add(&t.truncate(m))
        .sub(&eta_m.scale(&dd))
        .mul(&eta.derivative())
        .sub(&one_m.add(&eta_m));
    Ok(EulerResiduals {
        logarithmic,
        differential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(0), QPoly::zero());
        assert_eq!(kappa(1), QPoly::one());
        assert_eq!(kappa(3), QPoly::from_integers([1, 0, 1, 0, 1]));
    }

    #[test]
    fn poincare_small() {
        for d in 1..5 {
            assert_eq!(poincare(d, 2).unwrap(), kappa(d));
        }
        assert_eq!(
            poincare(1, 4).unwrap(),
            QPoly::from_integers([1, 0, 5, 0, 1])
        );
        assert_eq!(
            poincare(2, 3).unwrap(),
            QPoly::from_integers([1, 0, 4, 0, 4, 0, 1])
        );
        assert_eq!(poincare(3, 1).unwrap(), QPoly::one());
        assert_eq!(
            poincare_via_binomial_recursion(1, 3).unwrap(),
            QPoly::from_integers([1, 0, 1])
        );
        assert_eq!(
            poincare_via_binomial_recursion(2, 3).unwrap(),
            poincare(2, 3).unwrap()
        );
        assert_eq!(
            poincare_via_binomial_recursion(1, 5).unwrap(),
            poincare(1, 5).unwrap()
        );
    }

    #[test]
    fn psi_low_coefficients() {
        let psi = psi_series(1, 3).unwrap();
        assert_eq!(psi.coeff(1), &QPoly::one());
        assert_eq!(psi.coeff(2), &QPoly::constant(frac(1, 2)));
        assert_eq!(
            psi.coeff(3),
            &QPoly::new(vec![frac(1, 6), frac(0, 1), frac(1, 6)])
        );
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_char(1, 3).unwrap(), BigInt::from(2));
        assert_eq!(euler_char(2, 2).unwrap(), BigInt::from(2));
        assert_eq!(euler_char(1, 4).unwrap(), BigInt::from(7));
        assert_eq!(euler_char(2, 3).unwrap(), BigInt::from(10));
        let eta = euler_series(1, 4).unwrap();
        assert_eq!(eta.coeff(1), &rat(1));
        assert_eq!(eta.coeff(4), &frac(7, 24));
    }

    #[test]
    fn residuals_vanish() {
        assert!(verify_differential(1, 8).unwrap().is_zero());
        assert!(verify_differential(2, 8).unwrap().is_zero());
        assert!(verify_differential(3, 6).unwrap().is_zero());
        assert!(verify_functional(1, 8).unwrap().is_zero());
        assert!(verify_functional(2, 6).unwrap().is_zero());
        assert!(verify_euler(2, 8).unwrap().is_zero());
    }

    #[test]
    fn functional_first_order_reduces_to_kappa_identity() {
        // q² κ_d = q^{2d} - 1 + κ_d
        for d in 1..6 {
            let lhs = &QPoly::q_pow(2) * &kappa(d);
            let rhs = &(&QPoly::q_pow(2 * d as usize) - &QPoly::one()) + &kappa(d);
            assert_eq!(lhs, rhs);
        }
        let r = verify_functional(2, 2).unwrap();
        assert!(r.coeff(1).is_zero());
    }

    #[test]
    fn betti_vectors() {
        let b = betti_numbers(2, 3).unwrap();
        assert_eq!(b, [1, 4, 4, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn bad_orders() {
        assert!(verify_differential(1, 1).is_err());
        assert!(psi_series(1, 0).is_err());
        assert!(poincare(0, 3).is_err());
    }
}
