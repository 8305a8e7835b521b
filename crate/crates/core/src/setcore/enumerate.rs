use super::{nested, GroundSet, NestedFamily, Subset};
use crate::config::Caps;
use crate::error::{Error, Result};

/// Depth-first stream of nested families of proper subsets `S ⊊ N` with
/// `|S| ≥ 2`.
///
/// Families are produced in pre-order over candidate indices (candidates in
/// canonical family order), so the members of every emitted family are
/// already canonically sorted. After the cap is passed the stream yields a
/// single [`Error::CapExceeded`] and ends.
#[derive(Debug, Clone)]
pub struct NestedFamilyIter {
    n: u32,
    candidates: Vec<Subset>,
    include_root: bool,
    max_size: Option<usize>,
    cap: u64,
    emitted: u64,
    chosen: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn enumerate_nested_families(
    n: u32,
    include_root: bool,
    max_size: Option<usize>,
    caps: &Caps,
) -> Result<NestedFamilyIter> {
    if n < 2 {
        return Err(Error::BadParams(format!("need n >= 2, got {n}")));
    }
    let ground = GroundSet::new(n)?;
    Ok(NestedFamilyIter {
        n,
        candidates: ground.proper_boundary_subsets(),
        include_root,
        max_size,
        cap: caps.max_families,
        emitted: 0,
        chosen: Vec::new(),
        started: false,
        done: false,
    })
}

impl NestedFamilyIter {
    fn find_from(&self, start: usize) -> Option<usize> {
        (start..self.candidates.len()).find(|&j| {
            let c = self.candidates[j];
            self.chosen.iter().all(|&i| nested(self.candidates[i], c))
        })
    }

    fn advance(&mut self) -> bool {
        let can_extend = self.max_size.is_none_or(|m| self.chosen.len() < m);
        if can_extend {
            let start = self.chosen.last().map_or(0, |&l| l + 1);
            if let Some(j) = self.find_from(start) {
                self.chosen.push(j);
                return true;
            }
        }
        while let Some(last) = self.chosen.pop() {
            if let Some(j) = self.find_from(last + 1) {
                self.chosen.push(j);
                return true;
            }
        }
        false
    }

    fn current(&self) -> NestedFamily {
        let sets = self.chosen.iter().map(|&i| self.candidates[i]).collect();
        NestedFamily::from_sorted_unchecked(self.n, sets, self.include_root)
    }
}

impl Iterator for NestedFamilyIter {
    type Item = Result<NestedFamily>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        self.emitted += 1;
        if self.emitted > self.cap {
            self.done = true;
            return Some(Err(Error::CapExceeded {
                what: "nested family enumeration",
                limit: self.cap,
            }));
        }
        Some(Ok(self.current()))
    }
}

/// Number of closed boundary strata, the empty family (the whole space)
/// included.
pub fn count_strata(n: u32, caps: &Caps) -> Result<u64> {
    let mut count = 0;
    for family in enumerate_nested_families(n, false, None, caps)? {
        family?;
        count += 1;
    }
    Ok(count)
}
