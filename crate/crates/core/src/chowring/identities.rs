//! Vanishing and reduction identities among products of the chain classes
//! `δ_i := δ_{{1,…,i}}` and `δ_N`, checked over every index tuple whose
//! product lands in degree at most `D`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::monomial::{CycleClass, Monomial};
use super::ring::RingPresentation;
use crate::error::Result;
use crate::setcore::Subset;
use crate::util::{rat, sign_pow};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub indices: String,
    pub monomial: String,
    pub holds: bool,
}

fn chain(i: u32) -> Subset {
    Subset::full(i)
}

/// Combines `(set, exponent)` factors; `None` if a combined exponent is
/// negative or a set is too small to be a variable.
fn combine(factors: &[(Subset, i64)]) -> Option<Monomial> {
    let mut map: BTreeMap<Subset, i64> = BTreeMap::new();
    for &(s, e) in factors {
        *map.entry(s).or_default() += e;
    }
    if map.iter().any(|(s, &e)| e < 0 || (e > 0 && s.len() < 2)) {
        return None;
    }
    Some(Monomial::from_factors(
        map.into_iter().map(|(s, e)| (s, e as u32)),
    ))
}

fn vanishing(
    p: &RingPresentation,
    identity: &'static str,
    indices: String,
    factors: &[(Subset, i64)],
) -> Result<Option<IdentityCheck>> {
    let Some(m) = combine(factors) else {
        return Ok(None);
    };
    if m.degree() > p.top_degree() {
        return Ok(None);
    }
    let holds = p.is_zero(&CycleClass::from_monomial(m.clone()))?;
    Ok(Some(IdentityCheck {
        identity,
        indices,
        monomial: m.to_string(),
        holds,
    }))
}

fn top_multiple(
    p: &RingPresentation,
    identity: &'static str,
    indices: String,
    factors: &[(Subset, i64)],
    sign: i64,
) -> Result<Option<IdentityCheck>> {
    let Some(m) = combine(factors) else {
        return Ok(None);
    };
    if m.degree() != p.top_degree() {
        return Ok(None);
    }
    let expected = p.point_class().scale(&rat(sign));
    let holds = p.equivalent(&CycleClass::from_monomial(m.clone()), &expected)?;
    Ok(Some(IdentityCheck {
        identity,
        indices,
        monomial: m.to_string(),
        holds,
    }))
}

/// `δ_S · δ_N^{d(n-|S|)} = 0`, and `δ_S · δ_N^{d(n-j)-1} = 0` whenever
/// `|S| > j`.
pub fn big_vanishing(p: &RingPresentation) -> Result<Vec<IdentityCheck>> {
    let d = i64::from(p.d());
    let n = i64::from(p.n());
    let full = p.full();
    let mut out = Vec::new();
    for &s in p.variables().iter().filter(|&&s| s != full) {
        let size = i64::from(s.len());
        out.extend(vanishing(
            p,
            "big_vanishing",
            format!("S={s}"),
            &[(s, 1), (full, d * (n - size))],
        )?);
        for j in 1..size {
            out.extend(vanishing(
                p,
                "big_vanishing",
                format!("S={s}, j={j}"),
                &[(s, 1), (full, d * (n - j) - 1)],
            )?);
        }
    }
    Ok(out)
}

/// `δ_2^d ⋯ δ_j^d · δ_N^{d(n-j)-1} = (-1)^{j-1} δ_N^D` for `2 ≤ j ≤ n-1`.
pub fn squish(p: &RingPresentation) -> Result<Vec<IdentityCheck>> {
    let d = i64::from(p.d());
    let n = p.n();
    let mut out = Vec::new();
    for j in 2..n {
        let mut factors: Vec<(Subset, i64)> = (2..=j).map(|l| (chain(l), d)).collect();
        factors.push((p.full(), d * i64::from(n - j) - 1));
        out.extend(top_multiple(
            p,
            "squish",
            format!("j={j}"),
            &factors,
            sign_pow(i64::from(j) - 1),
        )?);
    }
    Ok(out)
}

/// `δ_2^d ⋯ δ_i^d · δ_{i+k}^{dk} · δ_{i+k+1}^d ⋯ δ_j^d · δ_N^{d(n-j)-1}
/// = (-1)^{j-k} δ_N^D` for `1 ≤ i ≤ j ≤ n-1`, `1 ≤ k ≤ j-i`.
pub fn chain_reduction(p: &RingPresentation) -> Result<Vec<IdentityCheck>> {
    let d = i64::from(p.d());
    let n = p.n();
    let mut out = Vec::new();
    for j in 1..n {
        for i in 1..=j {
            for k in 1..=(j - i) {
                let mut factors: Vec<(Subset, i64)> = (2..=i).map(|l| (chain(l), d)).collect();
                factors.push((chain(i + k), d * i64::from(k)));
                factors.extend((i + k + 1..=j).map(|l| (chain(l), d)));
                factors.push((p.full(), d * i64::from(n - j) - 1));
                out.extend(top_multiple(
                    p,
                    "chain_reduction",
                    format!("i={i}, j={j}, k={k}"),
                    &factors,
                    sign_pow(i64::from(j) - i64::from(k)),
                )?);
            }
        }
    }
    Ok(out)
}

/// `δ_T · δ_i^{kd+1} · δ_{i+1}^d ⋯ δ_j^d · δ_N^{d(n-j)-1} = 0` for
/// `2 ≤ j ≤ n`, `1 ≤ k < i ≤ j` and every `T ⊆ {1,…,i}` with `|T| = i-k`.
pub fn chain_vanishing(p: &RingPresentation) -> Result<Vec<IdentityCheck>> {
    let d = i64::from(p.d());
    let n = p.n();
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 2..=j {
            for k in 1..i {
                let size = i - k;
                if size < 2 {
                    continue;
                }
                for t in p
                    .variables()
                    .iter()
                    .filter(|t| t.len() == size && t.is_subset_of(chain(i)))
                {
                    let mut factors = vec![(*t, 1), (chain(i), i64::from(k) * d + 1)];
                    factors.extend((i + 1..=j).map(|l| (chain(l), d)));
                    factors.push((p.full(), d * i64::from(n - j) - 1));
                    out.extend(vanishing(
                        p,
                        "chain_vanishing",
                        format!("T={t}, i={i}, k={k}, j={j}"),
                        &factors,
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// All four families of identities.
pub fn all_identities(p: &RingPresentation) -> Result<Vec<IdentityCheck>> {
    let mut out = big_vanishing(p)?;
    out.extend(squish(p)?);
    out.extend(chain_reduction(p)?);
    out.extend(chain_vanishing(p)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;

    #[test]
    fn identities_hold_on_t23() {
        let p = RingPresentation::new(2, 3, Caps::default()).unwrap();
        let checks = all_identities(&p).unwrap();
        assert!(!checks.is_empty());
        let failed: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn combine_rejects_negative() {
        let a = Subset::full(2);
        assert!(combine(&[(a, 1), (a, -2)]).is_none());
        assert_eq!(combine(&[(a, 2), (a, -1)]), Some(Monomial::var(a)));
        assert_eq!(combine(&[(Subset::full(1), 0)]), Some(Monomial::one()));
    }
}
