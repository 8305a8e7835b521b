use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Coefficient ring of a truncated series: a commutative Q-algebra.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
}

impl Coefficient for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        QPoly::scale(self, c)
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `c_0 + c_1 t + … + c_M t^M`, with every operation truncated at `t^M`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t` (zero when `order` is 0).
    pub fn t(order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    /// Pads or truncates `coeffs` to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        TruncSeries {
            coeffs: (0..=m)
                .map(|k| self.coeffs[k].add(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        TruncSeries {
            coeffs: (0..=m)
                .map(|k| self.coeffs[k].sub(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.common_order(other);
        let coeffs = (0..=m)
            .map(|k| {
                (0..=k).fold(C::zero(), |acc, i| {
                    if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                        acc
                    } else {
                        acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]))
                    }
                })
            })
            .collect();
        TruncSeries { coeffs }
    }

    /// Multiplies every coefficient by `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `d/dt`; the result has order one less.
    pub fn derivative(&self) -> Self {
        let m = self.order();
        if m == 0 {
            return TruncSeries::zero(0);
        }
        TruncSeries {
            coeffs: (1..=m)
                .map(|k| self.coeffs[k].scale(&ratio(k as i64, 1)))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term, truncated at the same order.
    pub fn integral(&self) -> Self {
        let m = self.order();
        let coeffs = std::iter::once(C::zero())
            .chain((1..=m).map(|k| self.coeffs[k - 1].scale(&ratio(1, k as i64))))
            .collect();
        TruncSeries { coeffs }
    }

    fn require_no_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::BadParams(format!(
                "{what} needs a series with zero constant term"
            )))
        }
    }

    /// `1 / (1 + f)` for `f` with zero constant term.
    pub fn inverse_one_plus(&self) -> Result<Self> {
        self.require_no_constant("inverse of 1+f")?;
        let m = self.order();
        let mut u: Vec<C> = Vec::with_capacity(m + 1);
        u.push(C::one());
        for n in 1..=m {
            let acc = (1..=n).fold(C::zero(), |acc, k| acc.add(&self.coeffs[k].mul(&u[n - k])));
            u.push(C::zero().sub(&acc));
        }
        Ok(TruncSeries { coeffs: u })
    }

    /// `log(1 + f)` for `f` with zero constant term.
    pub fn log_one_plus(&self) -> Result<Self> {
        let inv = self.inverse_one_plus()?;
        let h = self
            .derivative()
            .mul(&inv.truncate(self.order().saturating_sub(1)));
        let mut out = TruncSeries::zero(self.order());
        for k in 1..=self.order() {
            out.coeffs[k] = h.coeffs[k - 1].scale(&ratio(1, k as i64));
        }
        Ok(out)
    }

    /// `exp(g)` for `g` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_no_constant("exp")?;
        let m = self.order();
        let mut e: Vec<C> = Vec::with_capacity(m + 1);
        e.push(C::one());
        for n in 1..=m {
            let acc = (1..=n).fold(C::zero(), |acc, k| {
                acc.add(&self.coeffs[k].scale(&ratio(k as i64, 1)).mul(&e[n - k]))
            });
            e.push(acc.scale(&ratio(1, n as i64)));
        }
        Ok(TruncSeries { coeffs: e })
    }

    /// Index and value of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &C)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}
