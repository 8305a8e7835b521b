use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::echelon::{SparseEchelon, SparseVec};
use super::monomial::{CycleClass, Monomial};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::setcore::{nested, GroundSet, Subset};
use crate::util::{rat, sign_pow};

/// The presented ring `Z[δ_S : S ⊆ N, |S| ≥ 2] / I_{d,n}`, graded by
/// codimension with every `δ_S` in degree one.
///
/// `I_{d,n}` is generated by the overlap products `δ_S δ_T` (S, T properly
/// overlapping) and by `(Σ_ij)^d` where `Σ_ij` sums `δ_T` over all `T`
/// containing `i` and `j`. Graded pieces are built on demand, once per
/// degree, and cached.
#[derive(Debug)]
pub struct RingPresentation {
    d: u32,
    n: u32,
    top_degree: usize,
    variables: Vec<Subset>,
    caps: Caps,
    bases: Mutex<HashMap<usize, Arc<GradedBasis>>>,
}

/// Degree-`k` piece: nested-support monomials (ascending monomial order),
/// the echelon form of the relation rows, and the quotient rank.
#[derive(Debug)]
pub struct GradedBasis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relation_rows: usize,
    echelon: SparseEchelon,
}

impl GradedBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Number of relation expansions generated (zero rows included).
    pub fn relation_rows(&self) -> usize {
        self.relation_rows
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_rank(&self) -> usize {
        self.monomials.len() - self.echelon.rank()
    }

    /// Monomials on the free columns; they form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<&Monomial> {
        self.echelon
            .free_columns()
            .map(|c| &self.monomials[c])
            .collect()
    }

    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn vector_of(&self, c: &CycleClass) -> SparseVec {
        let mut v = SparseVec::new();
        for (m, coef) in c.terms() {
            // non-nested monomials are zero by the overlap relation
            if let Some(col) = self.column_of(m) {
                let entry = v.entry(col).or_insert_with(BigRational::zero);
                *entry += coef;
            }
        }
        v.retain(|_, a| !a.is_zero());
        v
    }

    fn reduce_class(&self, c: &CycleClass) -> SparseVec {
        let mut v = self.vector_of(c);
        self.echelon.reduce(&mut v);
        v
    }
}

/// A class reduced to its coordinates on the quotient basis of its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    class: CycleClass,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.class.is_formally_zero()
    }

    pub fn class(&self) -> &CycleClass {
        &self.class
    }

    pub fn into_class(self) -> CycleClass {
        self.class
    }
}

impl RingPresentation {
    pub fn new(d: u32, n: u32, caps: Caps) -> Result<Self> {
        if d == 0 || n < 2 {
            return Err(Error::BadParams(format!(
                "need d >= 1 and n >= 2, got d={d}, n={n}"
            )));
        }
        if u64::from(d) * u64::from(n) > caps.max_dn {
            return Err(Error::CapExceeded {
                what: "d*n",
                limit: caps.max_dn,
            });
        }
        let ground = GroundSet::new(n)?;
        let top_degree = (d * (n - 1) - 1) as usize;
        Ok(RingPresentation {
            d,
            n,
            top_degree,
            variables: ground.boundary_subsets(),
            caps,
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `D = d(n-1) - 1`, the dimension of the space.
    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    /// All `S` with `|S| ≥ 2` in variable order; `N` is last.
    pub fn variables(&self) -> &[Subset] {
        &self.variables
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// Variables occurring in `Σ_ij`.
    fn sigma(&self, i: u32, j: u32) -> Vec<Subset> {
        self.variables
            .iter()
            .copied()
            .filter(|s| s.contains_point(i) && s.contains_point(j))
            .collect()
    }

    /// Degree-`k` monomials whose support is pairwise nested.
    pub fn nested_monomials(&self, k: usize) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.collect_nested(0, k, &mut current, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn collect_nested(
        &self,
        start: usize,
        remaining: usize,
        current: &mut Vec<(Subset, u32)>,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        if remaining == 0 {
            if out.len() as u64 >= self.caps.max_monomials {
                return Err(Error::CapExceeded {
                    what: "nested monomials per degree",
                    limit: self.caps.max_monomials,
                });
            }
            out.push(Monomial::from_factors(current.iter().copied()));
            return Ok(());
        }
        for idx in start..self.variables.len() {
            let v = self.variables[idx];
            if !current.iter().all(|&(u, _)| nested(u, v)) {
                continue;
            }
            for e in 1..=remaining as u32 {
                current.push((v, e));
                self.collect_nested(idx + 1, remaining - e as usize, current, out)?;
                current.pop();
            }
        }
        Ok(())
    }

    /// Expansion of `(Σ_ij)^d · m` with non-nested terms dropped.
    fn relation_expansion(&self, sigma: &[Subset], m: &Monomial) -> HashMap<Monomial, BigRational> {
        let mut poly: HashMap<Monomial, BigRational> = HashMap::new();
        poly.insert(m.clone(), BigRational::one());
        for _ in 0..self.d {
            let mut next: HashMap<Monomial, BigRational> = HashMap::new();
            for (mono, coef) in &poly {
                for &s in sigma {
                    if mono.factors().iter().all(|&(u, _)| nested(u, s)) {
                        let entry = next
                            .entry(mono.times_var(s))
                            .or_insert_with(BigRational::zero);
                        *entry += coef;
                    }
                }
            }
            poly = next;
        }
        poly
    }

    fn build_basis(&self, k: usize) -> Result<GradedBasis> {
        let monomials = self.nested_monomials(k)?;
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut echelon = SparseEchelon::new(monomials.len());
        let mut relation_rows = 0;
        let d = self.d as usize;
        if k >= d {
            let lower = self.nested_monomials(k - d)?;
            for i in 1..=self.n {
                for j in i + 1..=self.n {
                    let sigma = self.sigma(i, j);
                    for m in &lower {
                        relation_rows += 1;
                        if echelon.rank() == monomials.len() {
                            continue;
                        }
                        let row: SparseVec = self
                            .relation_expansion(&sigma, m)
                            .into_iter()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(mono, c)| (index[&mono], c))
                            .collect();
                        echelon.insert(row);
                    }
                }
            }
        }
        Ok(GradedBasis {
            degree: k,
            monomials,
            index,
            relation_rows,
            echelon,
        })
    }

    /// The degree-`k` piece. Pieces with `k ≤ D` are cached.
    pub fn graded_basis(&self, k: usize) -> Result<Arc<GradedBasis>> {
        if k > self.top_degree {
            return self.build_basis(k).map(Arc::new);
        }
        let mut cache = self.bases.lock().expect("basis cache poisoned");
        if let Some(b) = cache.get(&k) {
            return Ok(Arc::clone(b));
        }
        let basis = Arc::new(self.build_basis(k)?);
        cache.insert(k, Arc::clone(&basis));
        Ok(basis)
    }

    pub fn rank(&self, k: usize) -> Result<usize> {
        Ok(self.graded_basis(k)?.quotient_rank())
    }

    /// Ranks in degrees `0..=D`.
    pub fn ranks(&self) -> Result<Vec<usize>> {
        (0..=self.top_degree).map(|k| self.rank(k)).collect()
    }

    pub fn normal_form(&self, c: &CycleClass) -> Result<NormalForm> {
        if c.degree() > self.top_degree {
            return Err(Error::DegreeOutOfRange {
                degree: c.degree(),
                max: self.top_degree,
            });
        }
        let basis = self.graded_basis(c.degree())?;
        let reduced = basis.reduce_class(c);
        let mut class = CycleClass::zero(c.degree());
        for (col, coef) in reduced {
            class.add_term(basis.monomials[col].clone(), coef);
        }
        Ok(NormalForm { class })
    }

    /// `c ≡ 0` in the ring.
    pub fn is_zero(&self, c: &CycleClass) -> Result<bool> {
        Ok(self.normal_form(c)?.is_zero())
    }

    pub fn equivalent(&self, a: &CycleClass, b: &CycleClass) -> Result<bool> {
        let diff = a.add(&b.scale(&rat(-1)))?;
        self.is_zero(&diff)
    }

    /// `δ_N^D`.
    pub fn point_class(&self) -> CycleClass {
        CycleClass::from_monomial(Monomial::power(self.full(), self.top_degree as u32))
    }

    /// Degree of a top-codimension class, normalized by
    /// `∫ δ_N^D = (-1)^D`.
    pub fn integrate(&self, c: &CycleClass) -> Result<BigRational> {
        if c.degree() != self.top_degree {
            return Err(Error::DegreeOutOfRange {
                degree: c.degree(),
                max: self.top_degree,
            });
        }
        let basis = self.graded_basis(self.top_degree)?;
        if basis.quotient_rank() != 1 {
            return Err(Error::NormalizationFailure(format!(
                "top graded piece has rank {}",
                basis.quotient_rank()
            )));
        }
        let reference = basis.reduce_class(&self.point_class());
        let Some((&free_col, unit)) = reference.iter().next() else {
            return Err(Error::NormalizationFailure(
                "the top power of the root class reduces to zero".into(),
            ));
        };
        let reduced = basis.reduce_class(c);
        debug_assert!(reduced.keys().all(|&col| col == free_col));
        let lambda = reduced
            .get(&free_col)
            .map_or_else(BigRational::zero, |v| v / unit);
        Ok(lambda * rat(sign_pow(self.top_degree as i64)))
    }

    pub fn integrate_monomial(&self, m: &Monomial) -> Result<BigRational> {
        self.integrate(&CycleClass::from_monomial(m.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(elements: &[u32]) -> Subset {
        Subset::from_elements(elements.iter().copied()).unwrap()
    }

    fn ring(d: u32, n: u32) -> RingPresentation {
        RingPresentation::new(d, n, Caps::default()).unwrap()
    }

    #[test]
    fn presentation_shapes() {
        let p = ring(2, 2);
        assert_eq!(p.variables(), &[s(&[1, 2])]);
        assert_eq!(p.top_degree(), 1);
        let p = ring(1, 3);
        assert_eq!(p.variables().len(), 4);
        assert_eq!(p.top_degree(), 1);
        let p = ring(1, 2);
        assert_eq!(p.variables().len(), 1);
        assert_eq!(p.top_degree(), 0);
        assert_eq!(ring(1, 5).variables().len(), 32 - 5 - 1);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            RingPresentation::new(0, 3, Caps::default()),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            RingPresentation::new(1, 1, Caps::default()),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            RingPresentation::new(3, 5, Caps::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn degree_one_of_t13() {
        let p = ring(1, 3);
        let b = p.graded_basis(1).unwrap();
        assert_eq!(b.monomials().len(), 4);
        assert_eq!(b.relation_rows(), 3);
        assert_eq!(b.quotient_rank(), 1);
    }

    #[test]
    fn ranks_of_small_spaces() {
        assert_eq!(ring(2, 2).ranks().unwrap(), vec![1, 1]);
        assert_eq!(ring(2, 2).rank(2).unwrap(), 0);
        assert_eq!(ring(1, 4).rank(1).unwrap(), 5);
        assert_eq!(ring(2, 3).ranks().unwrap(), vec![1, 4, 4, 1]);
        assert_eq!(ring(2, 3).rank(4).unwrap(), 0);
    }

    #[test]
    fn normal_forms() {
        let p = ring(2, 3);
        let overlap = CycleClass::delta(s(&[1, 2])).mul(&CycleClass::delta(s(&[2, 3])));
        assert!(p.is_zero(&overlap).unwrap());
        let m = Monomial::from_factors([(s(&[1, 2]), 1), (p.full(), 2)]);
        assert!(p.is_zero(&CycleClass::from_monomial(m)).unwrap());

        let p = ring(1, 3);
        let rel = CycleClass::delta(s(&[1, 2]))
            .add(&CycleClass::delta(p.full()))
            .unwrap();
        assert!(p.is_zero(&rel).unwrap());
        assert!(!p.is_zero(&CycleClass::delta(p.full())).unwrap());
        let big = CycleClass::from_monomial(Monomial::power(p.full(), 2));
        assert!(matches!(
            p.normal_form(&big),
            Err(Error::DegreeOutOfRange { degree: 2, max: 1 })
        ));
    }

    #[test]
    fn integration_normalization() {
        let p = ring(2, 2);
        assert_eq!(p.integrate(&CycleClass::delta(p.full())).unwrap(), rat(-1));
        let p = ring(1, 3);
        assert_eq!(p.integrate(&CycleClass::delta(p.full())).unwrap(), rat(-1));
        assert_eq!(p.integrate(&CycleClass::delta(s(&[1, 3]))).unwrap(), rat(1));
        let p = ring(1, 4);
        assert_eq!(p.integrate(&p.point_class()).unwrap(), rat(1));
        let p = ring(1, 2);
        assert_eq!(p.integrate(&p.point_class()).unwrap(), rat(1));
        assert!(matches!(
            p.integrate(&CycleClass::delta(p.full())),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }
}
