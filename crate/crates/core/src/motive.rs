//! Chow-rank polynomials in the Lefschetz twist `L`.
//!
//! The coefficient of `L^i` is the rank of the codimension-`i` Chow group.
//! Projective bundles and blowups act on these polynomials by the usual
//! twist formulas, which drive recursions for `T_{d,n}`, for relative
//! spaces over a base, and for Fulton–MacPherson spaces `X[n]` over
//! cellular `X`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::genfunc::QPoly;

/// Nonnegative integer polynomial in `L`, lowest codimension first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LefschetzPoly {
    coeffs: Vec<BigUint>,
}

impl LefschetzPoly {
    pub fn zero() -> Self {
        LefschetzPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LefschetzPoly::from_u64s([1])
    }

    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LefschetzPoly { coeffs }
    }

    pub fn from_u64s<I: IntoIterator<Item = u64>>(coeffs: I) -> Self {
        LefschetzPoly::new(coeffs.into_iter().map(BigUint::from).collect())
    }

    /// `L^k`.
    pub fn twist(k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = BigUint::one();
        LefschetzPoly { coeffs }
    }

    /// `L^lo + L^{lo+1} + … + L^hi`, zero when `lo > hi`.
    pub fn twist_range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return LefschetzPoly::zero();
        }
        let mut coeffs = vec![BigUint::zero(); hi + 1];
        for c in &mut coeffs[lo..=hi] {
            *c = BigUint::one();
        }
        LefschetzPoly { coeffs }
    }

    /// Ranks of `P^m`.
    pub fn projective(m: usize) -> Self {
        LefschetzPoly::twist_range(0, m)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, k: u64) -> Self {
        LefschetzPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Total rank, the value at `L = 1`.
    pub fn total_rank(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Substitutes `L = q²`.
    pub fn to_qpoly(&self) -> QPoly {
        let mut coeffs = vec![num_rational::BigRational::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = num_rational::BigRational::from_integer(BigInt::from(c.clone()));
        }
        QPoly::new(coeffs)
    }

    /// Exact quotient `self / divisor`.
    pub fn checked_div(&self, divisor: &LefschetzPoly) -> Result<LefschetzPoly> {
        let fail = || Error::DivisionFailure(format!("{divisor} does not divide {self}"));
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionFailure("division by zero".into()));
        };
        if self.is_zero() {
            return Ok(LefschetzPoly::zero());
        }
        let lead = BigInt::from(divisor.coeffs[dd].clone());
        let mut rem: Vec<BigInt> = self.coeffs.iter().cloned().map(BigInt::from).collect();
        if rem.len() <= dd {
            return Err(fail());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(&lead);
            if !r.is_zero() {
                return Err(fail());
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * BigInt::from(c.clone());
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) || quot.iter().any(Signed::is_negative) {
            return Err(fail());
        }
        Ok(LefschetzPoly::new(
            quot.into_iter()
                .map(|c| c.to_biguint().expect("nonnegative"))
                .collect(),
        ))
    }

    /// Integer array keyed by codimension; entries beyond `u64` become strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| match c.to_u64() {
                    Some(v) => Value::from(v),
                    None => Value::String(c.to_string()),
                })
                .collect(),
        )
    }
}

impl Add<&LefschetzPoly> for &LefschetzPoly {
    type Output = LefschetzPoly;

    fn add(self, rhs: &LefschetzPoly) -> LefschetzPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        LefschetzPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Mul<&LefschetzPoly> for &LefschetzPoly {
    type Output = LefschetzPoly;

    fn mul(self, rhs: &LefschetzPoly) -> LefschetzPoly {
        if self.is_zero() || rhs.is_zero() {
            return LefschetzPoly::zero();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LefschetzPoly::new(out)
    }
}

impl fmt::Display for LefschetzPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => f.write_str("L")?,
                _ => write!(f, "{c}L")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LefschetzPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LefschetzPoly({self})")
    }
}

/// Ranks of a projective bundle of rank `r` over a base.
pub fn proj_bundle(base: &LefschetzPoly, r: usize) -> Result<LefschetzPoly> {
    if r == 0 {
        return Err(Error::BadParams("bundle rank must be at least 1".into()));
    }
    Ok(base * &LefschetzPoly::projective(r - 1))
}

/// Ranks of the blowup of `total` along a center of codimension `codim`.
pub fn blowup(
    total: &LefschetzPoly,
    center: &LefschetzPoly,
    codim: usize,
) -> Result<LefschetzPoly> {
    if codim == 0 {
        return Err(Error::BadParams("codimension must be at least 1".into()));
    }
    Ok(total + &(center * &LefschetzPoly::twist_range(1, codim - 1)))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn check_dn(d: u32, n: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::BadParams("d must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::BadParams("n must be at least 2".into()));
    }
    Ok(())
}

/// Shared recursion for `T_{V,n}` over a base with ranks `base`:
/// the `S ⊊ N` blocks combine two smaller spaces through `combine`.
fn relative_tower<F>(
    d: u32,
    n: usize,
    base: &LefschetzPoly,
    combine: F,
) -> Result<Vec<LefschetzPoly>>
where
    F: Fn(&LefschetzPoly, &LefschetzPoly) -> Result<LefschetzPoly>,
{
    check_dn(d, n)?;
    let d = d as usize;
    let bundle = LefschetzPoly::projective(d);
    let blow = LefschetzPoly::twist_range(1, d);
    let inner = LefschetzPoly::twist_range(1, d - 1);
    let mut t = vec![LefschetzPoly::zero(); n + 1];
    t[2] = base * &LefschetzPoly::projective(d - 1);
    for m in 2..n {
        let mut next = &bundle * &t[m];
        for s in 2..m {
            let block = combine(&t[s], &t[m - s + 1])?.scale(binomial(m, s));
            next = &next + &(&blow * &block);
        }
        next = &next + &(&inner * &t[m]).scale(m as u64);
        t[m + 1] = next;
    }
    Ok(t)
}

/// Rank polynomial of `A*(T_{d,n})`.
pub fn tdn_ranks(d: u32, n: usize) -> Result<LefschetzPoly> {
    let mut t = relative_tower(d, n, &LefschetzPoly::one(), |a, b| Ok(a * b))?;
    Ok(t.swap_remove(n))
}

/// Ranks of `T_{V,n} ×_X T_{V,m}` from the ranks of the factors and of `X`.
pub fn fiber_product_ranks(
    base: &LefschetzPoly,
    a: &LefschetzPoly,
    b: &LefschetzPoly,
) -> Result<LefschetzPoly> {
    a.checked_div(base)?;
    b.checked_div(base)?;
    (a * b).checked_div(base)
}

/// Ranks of `T_{V,n}` for a rank-`d` bundle over a base with ranks `base`,
/// computed with fiber products rather than the product factorization.
pub fn tvn_ranks(base: &LefschetzPoly, d: u32, n: usize) -> Result<LefschetzPoly> {
    if base.is_zero() {
        return Err(Error::BadParams("base rank polynomial is zero".into()));
    }
    let mut t = relative_tower(d, n, base, |a, b| fiber_product_ranks(base, a, b))?;
    Ok(t.swap_remove(n))
}

/// A smooth projective variety with known Chow ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularSpace {
    name: String,
    dimension: usize,
    poly: LefschetzPoly,
    cellular: bool,
}

impl CellularSpace {
    pub fn new(name: impl Into<String>, poly: LefschetzPoly, cellular: bool) -> Result<Self> {
        let name = name.into();
        let Some(dimension) = poly.degree() else {
            return Err(Error::BadParams(format!("{name} has zero rank polynomial")));
        };
        if cellular && !poly.coeff(0).is_one() {
            return Err(Error::BadParams(format!(
                "irreducible cellular space {name} must have constant rank 1"
            )));
        }
        Ok(CellularSpace {
            name,
            dimension,
            poly,
            cellular,
        })
    }

    /// `P^m`.
    pub fn projective(m: usize) -> Self {
        CellularSpace {
            name: format!("P{m}"),
            dimension: m,
            poly: LefschetzPoly::projective(m),
            cellular: true,
        }
    }

    /// `P^{m_1} × … × P^{m_k}`.
    pub fn product_of_projective(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::BadParams("empty product".into()));
        }
        let poly = dims.iter().fold(LefschetzPoly::one(), |acc, &m| {
            &acc * &LefschetzPoly::projective(m)
        });
        let name = dims
            .iter()
            .map(|m| format!("P{m}"))
            .collect::<Vec<_>>()
            .join("x");
        CellularSpace::new(name, poly, true)
    }

    /// Parses catalog names such as `P2` or `P1xP1xP3`.
    pub fn from_catalog(name: &str) -> Result<Self> {
        let dims = name
            .split(['x', 'X', '*'])
            .map(|part| {
                part.trim()
                    .strip_prefix(['P', 'p'])
                    .and_then(|m| m.parse::<usize>().ok())
                    .ok_or_else(|| Error::BadParams(format!("unknown space {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if dims.len() == 1 {
            Ok(CellularSpace::projective(dims[0]))
        } else {
            CellularSpace::product_of_projective(&dims)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn poly(&self) -> &LefschetzPoly {
        &self.poly
    }

    pub fn is_cellular(&self) -> bool {
        self.cellular
    }
}

fn fm_table(x: &CellularSpace, n: usize) -> Result<Vec<LefschetzPoly>> {
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    if x.dimension == 0 {
        return Err(Error::BadParams(format!("{} has dimension 0", x.name)));
    }
    if n >= 2 && !x.cellular {
        return Err(Error::NotCellular(x.name.clone()));
    }
    let d = x.dimension;
    let dims = u32::try_from(d).map_err(|_| Error::BadParams("dimension too large".into()))?;
    let tdn: Vec<LefschetzPoly> = (2..=n).map(|s| tdn_ranks(dims, s)).collect::<Result<_>>()?;
    let blow = LefschetzPoly::twist_range(1, d);
    let inner = LefschetzPoly::twist_range(1, d - 1);
    let mut fm = vec![LefschetzPoly::zero(); n + 1];
    fm[1] = x.poly.clone();
    for m in 1..n {
        let mut next = &fm[m] * &x.poly;
        for s in 2..=m {
            let ds = &fm[m - s + 1] * &tdn[s - 2];
            next = &next + &(&blow * &ds).scale(binomial(m, s));
        }
        next = &next + &(&inner * &fm[m]).scale(m as u64);
        fm[m + 1] = next;
    }
    Ok(fm)
}

/// Rank polynomial of the Fulton–MacPherson space `X[n]`.
///
/// The boundary sum runs over all `S ⊆ N` with `|S| ≥ 2`, including `N`.
pub fn fm_ranks(x: &CellularSpace, n: usize) -> Result<LefschetzPoly> {
    Ok(fm_table(x, n)?.swap_remove(n))
}

/// Ranks of the boundary divisor `D(S)` with `|S| = s` in `X[n]`:
/// `fm_ranks(X, n-s+1) · tdn_ranks(dim X, s)`.
pub fn ds_ranks(x: &CellularSpace, n: usize, s: usize) -> Result<LefschetzPoly> {
    if s < 2 || s > n {
        return Err(Error::BadParams(format!(
            "need 2 <= s <= n, got s={s}, n={n}"
        )));
    }
    let dims =
        u32::try_from(x.dimension).map_err(|_| Error::BadParams("dimension too large".into()))?;
    Ok(&fm_ranks(x, n - s + 1)? * &tdn_ranks(dims, s)?)
}
