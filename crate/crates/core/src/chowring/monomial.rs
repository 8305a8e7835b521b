use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::setcore::{nested, Subset};
use crate::util::rational_string;

/// A product of boundary classes `∏ δ_S^{e_S}` with positive exponents,
/// variables kept in variable order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Subset, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Subset) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn power(s: Subset, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    /// Builds a monomial from `(set, exponent)` factors; repeated sets have
    /// their exponents added and zero exponents are dropped.
    pub fn from_factors<I: IntoIterator<Item = (Subset, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Subset, u32> = BTreeMap::new();
        for (s, e) in factors {
            *map.entry(s).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Subset, u32)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn exponent(&self, s: Subset) -> u32 {
        self.0.iter().find(|&&(v, _)| v == s).map_or(0, |&(_, e)| e)
    }

    /// Support is pairwise nested. Monomials failing this vanish by the
    /// overlap relation.
    pub fn has_nested_support(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &(a, _))| self.0[i + 1..].iter().all(|&(b, _)| nested(a, b)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Multiplies by a single variable.
    pub fn times_var(&self, s: Subset) -> Monomial {
        let mut out = self.0.clone();
        match out.binary_search_by(|&(v, _)| v.cmp(&s)) {
            Ok(i) => out[i].1 += 1,
            Err(i) => out.insert(i, (s, 1)),
        }
        Monomial(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.0.iter().map(|(s, _)| s.to_vec()).collect::<Vec<_>>(),
            "exps": self.0.iter().map(|&(_, e)| e).collect::<Vec<_>>(),
        })
    }
}

/// Lexicographic comparison of dense exponent vectors over the variable
/// order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // the side holding the earlier variable has the
                        // larger exponent there
                        return vb.cmp(&va);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "d{s}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A homogeneous formal rational combination of monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleClass {
    degree: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl CycleClass {
    pub fn zero(degree: usize) -> Self {
        CycleClass {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut c = CycleClass::zero(m.degree());
        c.terms.insert(m, BigRational::one());
        c
    }

    pub fn delta(s: Subset) -> Self {
        CycleClass::from_monomial(Monomial::var(s))
    }

    /// Sum of `coef * monomial` terms, all of one degree.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out: Option<CycleClass> = None;
        for (m, coef) in terms {
            let c = out.get_or_insert_with(|| CycleClass::zero(m.degree()));
            if m.degree() != c.degree {
                return Err(Error::BadParams(format!(
                    "class is not homogeneous: degrees {} and {}",
                    c.degree,
                    m.degree()
                )));
            }
            c.add_term(m, coef);
        }
        out.ok_or_else(|| Error::BadParams("empty class has no degree".into()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, coef: BigRational) {
        debug_assert_eq!(m.degree(), self.degree);
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CycleClass) -> Result<CycleClass> {
        if self.degree != other.degree {
            return Err(Error::BadParams(format!(
                "cannot add classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> CycleClass {
        let mut out = CycleClass::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &CycleClass) -> CycleClass {
        let mut out = CycleClass::zero(self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Any monomial with non-nested support; such terms vanish in the ring.
    pub fn has_non_nested_terms(&self) -> bool {
        self.terms.keys().any(|m| !m.has_nested_support())
    }

    pub fn to_json(&self) -> Value {
        let monomials: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut v = m.to_json();
                v["coef"] = Value::String(rational_string(c));
                v
            })
            .collect();
        json!({ "monomials": monomials })
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
