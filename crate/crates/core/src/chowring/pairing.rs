//! Divisor/curve pairing, nef checks for the `η_S` classes, and the
//! evaluator for the conjectured pairing of nested strata.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::monomial::{CycleClass, Monomial};
use super::ring::RingPresentation;
use crate::error::{Error, Result};
use crate::setcore::{NestedFamily, Subset};
use crate::util::{abs_is_one, as_small_integer, determinant, sign_pow};

fn check_proper(p: &RingPresentation, s: Subset) -> Result<()> {
    if s.len() < 2 || s == p.full() || !s.is_subset_of(p.full()) {
        return Err(Error::BadSubset(format!(
            "{s} must be a proper subset of {} with at least two elements",
            p.full()
        )));
    }
    Ok(())
}

/// `C_T = δ_T^{d(|T|-1)-1} · δ_N^{d(n-|T|)-1}`, a class of degree `D - 1`.
pub fn curve_class(p: &RingPresentation, t: Subset) -> Result<CycleClass> {
    check_proper(p, t)?;
    let d = i64::from(p.d());
    let n = i64::from(p.n());
    let size = i64::from(t.len());
    let e_t = d * (size - 1) - 1;
    let e_n = d * (n - size) - 1;
    for (set, e) in [(t, e_t), (p.full(), e_n)] {
        if e < 0 {
            return Err(Error::NegativeExponent { set, exponent: e });
        }
    }
    Ok(CycleClass::from_monomial(Monomial::from_factors([
        (t, e_t as u32),
        (p.full(), e_n as u32),
    ])))
}

/// Curves with `d = 1` and `|T| = 2` fall outside the range where the
/// closed form is claimed.
pub fn is_degenerate_curve(p: &RingPresentation, t: Subset) -> bool {
    p.d() == 1 && t.len() == 2
}

/// The closed-form value of `δ_S · C_T`.
pub fn expected_pairing(d: u32, n: u32, s: Subset, t: Subset) -> i64 {
    if s == t {
        sign_pow(i64::from(d) * (i64::from(n) - 1))
    } else if d == 1 && s.len() == 2 && s.is_strict_subset_of(t) {
        sign_pow(i64::from(n) - 2)
    } else {
        0
    }
}

/// `∫ δ_S · C_T`, which must be an integer.
pub fn pair(p: &RingPresentation, s: Subset, t: Subset) -> Result<i64> {
    check_proper(p, s)?;
    let product = CycleClass::delta(s).mul(&curve_class(p, t)?);
    let value = p.integrate(&product)?;
    as_small_integer(&value).ok_or_else(|| Error::NonIntegral(value.to_string()))
}

/// Curve indices used in the pairing table: `|T| ≥ 2` for `d ≥ 2` and
/// `|T| ≥ 3` for `d = 1`.
pub fn curve_indices(p: &RingPresentation) -> Vec<Subset> {
    let min = if p.d() == 1 { 3 } else { 2 };
    p.variables()
        .iter()
        .copied()
        .filter(|&t| t != p.full() && t.len() >= min)
        .collect()
}

/// Divisor indices: every proper `S` with `|S| ≥ 2`.
pub fn divisor_indices(p: &RingPresentation) -> Vec<Subset> {
    p.variables()
        .iter()
        .copied()
        .filter(|&s| s != p.full())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingMismatch {
    pub s: Subset,
    pub t: Subset,
    pub computed: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingTable {
    pub d: u32,
    pub n: u32,
    pub rows: Vec<Subset>,
    pub columns: Vec<Subset>,
    pub values: Vec<Vec<i64>>,
    pub mismatches: Vec<PairingMismatch>,
}

impl PairingTable {
    pub fn matches_closed_form(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// The square block whose rows use the same index range as the
    /// columns.
    pub fn basis_block(&self) -> Vec<Vec<i64>> {
        self.columns
            .iter()
            .map(|t| {
                let r = self.rows.iter().position(|s| s == t).expect("row exists");
                self.values[r].clone()
            })
            .collect()
    }

    pub fn basis_determinant(&self) -> BigRational {
        determinant(&self.basis_block())
    }

    pub fn is_unimodular(&self) -> bool {
        abs_is_one(&self.basis_determinant())
    }
}

pub fn pairing_table(p: &RingPresentation) -> Result<PairingTable> {
    let rows = divisor_indices(p);
    let columns = curve_indices(p);
    let curves: Vec<CycleClass> = columns
        .iter()
        .map(|&t| curve_class(p, t))
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(rows.len());
    let mut mismatches = Vec::new();
    for &s in &rows {
        let delta = CycleClass::delta(s);
        let mut row = Vec::with_capacity(columns.len());
        for (&t, curve) in columns.iter().zip(&curves) {
            let value = p.integrate(&delta.mul(curve))?;
            let value =
                as_small_integer(&value).ok_or_else(|| Error::NonIntegral(value.to_string()))?;
            let expected = expected_pairing(p.d(), p.n(), s, t);
            if value != expected {
                mismatches.push(PairingMismatch {
                    s,
                    t,
                    computed: value,
                    expected,
                });
            }
            row.push(value);
        }
        values.push(row);
    }
    Ok(PairingTable {
        d: p.d(),
        n: p.n(),
        rows,
        columns,
        values,
        mismatches,
    })
}

/// `η_S = Σ_{N ⊇ T ⊇ S} δ_T`.
pub fn eta_class(p: &RingPresentation, s: Subset) -> Result<CycleClass> {
    if s.len() < 2 || !s.is_subset_of(p.full()) {
        return Err(Error::BadSubset(format!(
            "{s} must be a subset of {} with at least two elements",
            p.full()
        )));
    }
    let terms = p
        .variables()
        .iter()
        .filter(|t| s.is_subset_of(**t))
        .map(|&t| (Monomial::var(t), BigRational::from_integer(1.into())));
    CycleClass::from_terms(terms)
}

#[derive(Debug, Clone, Serialize)]
pub struct NefEntry {
    pub s: Subset,
    pub t: Subset,
    /// `η_S · C_T`.
    pub value: i64,
    /// `η_S · C_T` with `C_T` rescaled by `(-1)^{d(n-1)}`, so that
    /// `δ_T · C_T` becomes `+1`.
    pub oriented: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NefReport {
    pub d: u32,
    pub n: u32,
    pub entries: Vec<NefEntry>,
    pub negatives: Vec<NefEntry>,
}

impl NefReport {
    pub fn all_nonnegative(&self) -> bool {
        self.negatives.is_empty()
    }
}

/// `η_S · C_T` for every `S` (with `N`) and every curve index `T`.
/// Negatives are flagged on the oriented values.
pub fn nef_report(p: &RingPresentation) -> Result<NefReport> {
    let columns = curve_indices(p);
    let curves: Vec<CycleClass> = columns
        .iter()
        .map(|&t| curve_class(p, t))
        .collect::<Result<_>>()?;
    let orientation = sign_pow(i64::from(p.d()) * (i64::from(p.n()) - 1));
    let mut entries = Vec::new();
    for &s in p.variables() {
        let eta = eta_class(p, s)?;
        for (&t, curve) in columns.iter().zip(&curves) {
            let value = p.integrate(&eta.mul(curve))?;
            let value =
                as_small_integer(&value).ok_or_else(|| Error::NonIntegral(value.to_string()))?;
            entries.push(NefEntry {
                s,
                t,
                value,
                oriented: orientation * value,
            });
        }
    }
    let negatives = entries.iter().filter(|e| e.oriented < 0).cloned().collect();
    Ok(NefReport {
        d: p.d(),
        n: p.n(),
        entries,
        negatives,
    })
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub family: NestedFamily,
    /// The stratum cycle `∏ δ_S^{n_S}` (the fundamental class when no
    /// exponents were supplied).
    pub cycle: Monomial,
    /// Its conjectured dual.
    pub dual: Monomial,
    /// `cycle · dual`.
    pub product: Monomial,
    pub integral: BigRational,
    pub integral_is_integer: bool,
    pub sign: i8,
    pub magnitude_ok: bool,
}

/// Evaluates the conjectured pairing for a nested family.
///
/// Without `exponents` the product is
/// `∏_{S ≠ N} δ_S^{d χ(S)} · δ_N^{d χ(N) - 1}`. With exponents `n_S` for
/// members of the family (the root may be given an exponent too) the
/// cycle `∏ δ_S^{n_S}` is paired with
/// `∏_{S ≠ N} δ_S^{d χ(S) - n_S} · δ_N^{d χ(N) - n_N - 1}`.
/// The sign is reported, never checked.
pub fn conjecture_check(
    p: &RingPresentation,
    family: &NestedFamily,
    exponents: Option<&BTreeMap<Subset, i64>>,
) -> Result<ConjectureReport> {
    if family.n() != p.n() {
        return Err(Error::BadParams(format!(
            "family is over {} points but the ring has {}",
            family.n(),
            p.n()
        )));
    }
    let d = i64::from(p.d());
    let full = p.full();
    let empty = BTreeMap::new();
    let exps = exponents.unwrap_or(&empty);
    for (&s, &e) in exps {
        if !family.is_vertex(s) {
            return Err(Error::NotMember(s));
        }
        if e <= 0 {
            return Err(Error::NegativeExponent {
                set: s,
                exponent: e,
            });
        }
    }
    let mut cycle = Vec::new();
    let mut dual = Vec::new();
    let mut chi_sum = 0;
    for v in family.vertices() {
        let chi = family.chi(v)?;
        chi_sum += chi;
        let given = exps.get(&v).copied().unwrap_or(0);
        let dual_exp = d * chi - given - i64::from(v == full);
        if dual_exp < 0 {
            return Err(Error::NegativeExponent {
                set: v,
                exponent: dual_exp,
            });
        }
        cycle.push((v, given as u32));
        dual.push((v, dual_exp as u32));
    }
    let cycle = Monomial::from_factors(cycle);
    let dual = Monomial::from_factors(dual);
    let product = cycle.mul(&dual);
    let degree = product.degree();
    if degree != p.top_degree() {
        return Err(Error::DegreeMismatch {
            actual: degree as i64,
            expected: p.top_degree(),
            detail: format!("sum of chi over vertices is {chi_sum}, d = {d}"),
        });
    }
    let integral = p.integrate_monomial(&product)?;
    let sign = if integral.is_zero() {
        0
    } else if integral.is_positive() {
        1
    } else {
        -1
    };
    Ok(ConjectureReport {
        family: family.clone(),
        integral_is_integer: integral.is_integer(),
        magnitude_ok: abs_is_one(&integral),
        cycle,
        dual,
        product,
        integral,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::setcore::canonical_family;
    use crate::util::rat;

    fn s(elements: &[u32]) -> Subset {
        Subset::from_elements(elements.iter().copied()).unwrap()
    }

    fn ring(d: u32, n: u32) -> RingPresentation {
        RingPresentation::new(d, n, Caps::default()).unwrap()
    }

    #[test]
    fn curve_classes() {
        let p = ring(1, 4);
        assert_eq!(
            curve_class(&p, s(&[1, 2, 3])).unwrap(),
            CycleClass::delta(s(&[1, 2, 3]))
        );
        let p = ring(2, 3);
        assert_eq!(
            curve_class(&p, s(&[1, 2])).unwrap(),
            CycleClass::from_monomial(Monomial::from_factors([(s(&[1, 2]), 1), (p.full(), 1)]))
        );
        let p = ring(1, 3);
        let c = curve_class(&p, s(&[1, 2])).unwrap();
        assert_eq!(c, CycleClass::from_monomial(Monomial::one()));
        assert!(is_degenerate_curve(&p, s(&[1, 2])));
        assert!(matches!(
            curve_class(&p, p.full()),
            Err(Error::BadSubset(_))
        ));
    }

    #[test]
    fn pairing_values() {
        let p = ring(1, 4);
        assert_eq!(pair(&p, s(&[1, 2, 3]), s(&[1, 2, 3])).unwrap(), -1);
        assert_eq!(pair(&p, s(&[1, 2]), s(&[1, 2, 3])).unwrap(), 1);
        let p = ring(2, 3);
        assert_eq!(pair(&p, s(&[1, 2]), s(&[1, 3])).unwrap(), 0);
        // degenerate curve: direct evaluation disagrees with the closed form
        let p = ring(1, 3);
        assert_eq!(pair(&p, s(&[1, 3]), s(&[1, 2])).unwrap(), 1);
        assert_eq!(expected_pairing(1, 3, s(&[1, 3]), s(&[1, 2])), 0);
    }

    #[test]
    fn pairing_table_d2n3() {
        let t = pairing_table(&ring(2, 3)).unwrap();
        assert!(t.matches_closed_form());
        for (i, row) in t.values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, if i == j { 1 } else { 0 });
            }
        }
        assert!(t.is_unimodular());
    }

    #[test]
    fn pairing_table_d1n4_shape() {
        let t = pairing_table(&ring(1, 4)).unwrap();
        assert_eq!(t.rows.len(), 10);
        assert_eq!(t.columns.len(), 4);
        assert!(t.matches_closed_form(), "{:?}", t.mismatches);
        assert!(t.is_unimodular());
    }

    #[test]
    fn eta_classes() {
        let p = ring(1, 3);
        let eta = eta_class(&p, s(&[1, 2])).unwrap();
        assert!(p.is_zero(&eta).unwrap());
        let p = ring(2, 3);
        assert_eq!(
            eta_class(&p, p.full()).unwrap(),
            CycleClass::delta(p.full())
        );
        assert!(nef_report(&p).unwrap().all_nonnegative());
    }

    #[test]
    fn conjecture_small_cases() {
        let p = ring(1, 4);
        let empty = NestedFamily::empty(4).unwrap();
        let r = conjecture_check(&p, &empty, None).unwrap();
        assert_eq!(r.product, Monomial::power(p.full(), 2));
        assert_eq!(r.integral, rat(1));

        let single = canonical_family(4, [s(&[1, 2, 3])]).unwrap();
        let r = conjecture_check(&p, &single, None).unwrap();
        assert_eq!(r.integral, rat(-1));

        let chain = canonical_family(4, [s(&[1, 2]), s(&[1, 2, 3])]).unwrap();
        let r = conjecture_check(&p, &chain, None).unwrap();
        assert!(r.magnitude_ok);

        let mut exps = BTreeMap::new();
        exps.insert(s(&[1, 2]), 1);
        let r2 = conjecture_check(&p, &chain, Some(&exps)).unwrap();
        assert_eq!(r2.product, r.product);
        assert_eq!(r2.cycle, Monomial::var(s(&[1, 2])));

        exps.insert(s(&[1, 2]), 5);
        assert!(matches!(
            conjecture_check(&p, &chain, Some(&exps)),
            Err(Error::NegativeExponent { .. })
        ));
        let mut bad = BTreeMap::new();
        bad.insert(s(&[3, 4]), 1);
        assert_eq!(
            conjecture_check(&p, &chain, Some(&bad)).unwrap_err(),
            Error::NotMember(s(&[3, 4]))
        );
    }
}
