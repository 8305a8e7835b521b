//! Ground-set combinatorics: subsets of `{1,…,n}`, nested families, the
//! child relation and the χ statistic, stable rooted trees, and stratum
//! enumeration.
//!
//! Subsets are bitmasks over at most [`MAX_POINTS`] points. Point `i` lives
//! in bit `i - 1`.

mod enumerate;
mod tree;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use enumerate::{count_strata, enumerate_nested_families, NestedFamilyIter};
pub use tree::{family_to_tree, Marking, StableTree};

/// Largest supported number of marked points.
pub const MAX_POINTS: u32 = 63;

/// The marked points `{1,…,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::BadParams(format!(
                "number of points must be in 1..={MAX_POINTS}, got {n}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn full(self) -> Subset {
        Subset::full(self.n)
    }

    pub fn contains(self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    /// Every subset with at least two elements, in variable order
    /// (cardinality ascending, then lexicographic). The full set comes last.
    pub fn boundary_subsets(self) -> Vec<Subset> {
        let mut all: Vec<Subset> = (1..=self.full().0)
            .map(Subset)
            .filter(|s| s.len() >= 2)
            .collect();
        all.sort();
        all
    }

    /// Proper subsets with at least two elements, in canonical family order
    /// (cardinality descending, then lexicographic).
    pub fn proper_boundary_subsets(self) -> Vec<Subset> {
        let full = self.full();
        let mut all: Vec<Subset> = self
            .boundary_subsets()
            .into_iter()
            .filter(|&s| s != full)
            .collect();
        all.sort_by(family_order);
        all
    }
}

/// A subset of the marked points, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn full(n: u32) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_POINTS {
                return Err(Error::BadSubset(format!(
                    "element {e} is outside 1..={MAX_POINTS}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains_point(self, point: u32) -> bool {
        (1..=64).contains(&point) && self.0 & (1 << (point - 1)) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }

    fn cmp_lex(self, other: Subset) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

/// Variable order: cardinality ascending, then lexicographic on the sorted
/// elements.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_lex(*other))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical family order: cardinality descending, then lexicographic. A
/// parent always precedes its children.
pub fn family_order(a: &Subset, b: &Subset) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp_lex(*b))
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

/// A point written as an integer or as a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Int(u32),
    Text(String),
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<PointRepr>::deserialize(deserializer)?;
        let elements = points
            .into_iter()
            .map(|p| match p {
                PointRepr::Int(i) => Ok(i),
                PointRepr::Text(t) => t
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| serde::de::Error::custom(format!("invalid point {t:?}"))),
            })
            .collect::<std::result::Result<Vec<u32>, D::Error>>()?;
        Subset::from_elements(elements).map_err(serde::de::Error::custom)
    }
}

/// True iff `a` and `b` are disjoint or one contains the other.
pub fn nested(a: Subset, b: Subset) -> bool {
    let meet = a.0 & b.0;
    meet == 0 || meet == a.0 || meet == b.0
}

/// A collection of pairwise nested subsets, each with at least two elements.
///
/// Proper members are kept in canonical family order; whether the full set
/// `N` was supplied is recorded separately in `root_included`. The child
/// relation and χ always treat `N` as adjoined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NestedFamily {
    n: u32,
    sets: Vec<Subset>,
    root_included: bool,
}

/// Validates, deduplicates and sorts `sets` into a [`NestedFamily`] over
/// `{1,…,n}`.
pub fn canonical_family<I>(n: u32, sets: I) -> Result<NestedFamily>
where
    I: IntoIterator<Item = Subset>,
{
    let ground = GroundSet::new(n)?;
    let full = ground.full();
    let mut proper = Vec::new();
    let mut root_included = false;
    for s in sets {
        if !ground.contains(s) {
            return Err(Error::BadSubset(format!("{s} is not contained in {full}")));
        }
        if s.len() < 2 {
            return Err(Error::BadCardinality(s));
        }
        if s == full {
            root_included = true;
        } else {
            proper.push(s);
        }
    }
    proper.sort_by(family_order);
    proper.dedup();
    for (i, &a) in proper.iter().enumerate() {
        if let Some(&b) = proper[i + 1..].iter().find(|&&b| !nested(a, b)) {
            return Err(Error::NotNested(a, b));
        }
    }
    Ok(NestedFamily {
        n,
        sets: proper,
        root_included,
    })
}

impl NestedFamily {
    /// The empty family over `{1,…,n}`.
    pub fn empty(n: u32) -> Result<Self> {
        canonical_family(n, [])
    }

    pub(crate) fn from_sorted_unchecked(n: u32, sets: Vec<Subset>, root_included: bool) -> Self {
        NestedFamily {
            n,
            sets,
            root_included,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Proper members in canonical order.
    pub fn proper_sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn root_included(&self) -> bool {
        self.root_included
    }

    /// Members as supplied: `N` first when it was included, then the proper
    /// members.
    pub fn members(&self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(self.sets.len() + 1);
        if self.root_included {
            out.push(self.full());
        }
        out.extend_from_slice(&self.sets);
        out
    }

    /// The same family with `N` recorded as a member.
    pub fn with_root(&self) -> NestedFamily {
        NestedFamily {
            root_included: true,
            ..self.clone()
        }
    }

    /// Tree vertices: `N` followed by the proper members.
    pub fn vertices(&self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(self.sets.len() + 1);
        out.push(self.full());
        out.extend_from_slice(&self.sets);
        out
    }

    pub fn is_vertex(&self, s: Subset) -> bool {
        s == self.full() || self.sets.contains(&s)
    }

    /// Maximal members strictly contained in `s` (its children).
    pub fn children(&self, s: Subset) -> Result<Vec<Subset>> {
        if !self.is_vertex(s) {
            return Err(Error::NotMember(s));
        }
        let below: Vec<Subset> = self
            .sets
            .iter()
            .copied()
            .filter(|t| t.is_strict_subset_of(s))
            .collect();
        Ok(below
            .iter()
            .copied()
            .filter(|&t| !below.iter().any(|&u| t.is_strict_subset_of(u)))
            .collect())
    }

    /// χ(s) = |s| − Σ_{t ∈ ch(s)} |t| + |ch(s)| − 1.
    pub fn chi(&self, s: Subset) -> Result<i64> {
        let ch = self.children(s)?;
        let child_points: i64 = ch.iter().map(|t| i64::from(t.len())).sum();
        Ok(i64::from(s.len()) - child_points + ch.len() as i64 - 1)
    }

    /// Sorted arrays of sorted points, e.g. `[[1,2,3],[1,2]]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.members()).expect("subsets serialize")
    }
}

/// Parses the JSON array-of-arrays form of a family.
pub fn family_from_json(n: u32, value: &serde_json::Value) -> Result<NestedFamily> {
    let sets: Vec<Subset> = serde_json::from_value(value.clone())
        .map_err(|e| Error::BadSubset(format!("malformed family JSON: {e}")))?;
    canonical_family(n, sets)
}
