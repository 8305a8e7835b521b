//! Incremental sparse row echelon form over exact rationals.
//!
//! Rows are stored with their pivot (leading) entry normalized to one and
//! all other entries in later columns. Reducing a vector eliminates pivot
//! columns in increasing order, which leaves a unique representative
//! supported on the free columns.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseVec = BTreeMap<usize, BigRational>;

#[derive(Debug, Clone)]
pub struct SparseEchelon {
    columns: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
    pivot_row: Vec<Option<usize>>,
}

impl SparseEchelon {
    pub fn new(columns: usize) -> Self {
        SparseEchelon {
            columns,
            rows: Vec::new(),
            pivot_row: vec![None; columns],
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, column: usize) -> bool {
        self.pivot_row[column].is_some()
    }

    pub fn free_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.columns).filter(|&c| !self.is_pivot(c))
    }

    /// Reduces `v` in place modulo the row space.
    pub fn reduce(&self, v: &mut SparseVec) {
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .map(|(&c, _)| c)
                .find(|&c| self.pivot_row[c].is_some());
            let Some(col) = next else { break };
            let coef = v.remove(&col).expect("column present");
            let row = &self.rows[self.pivot_row[col].expect("pivot")];
            for (c, a) in &row[1..] {
                let entry = v.entry(*c).or_insert_with(BigRational::zero);
                *entry -= &coef * a;
                if entry.is_zero() {
                    v.remove(c);
                }
            }
            cursor = col + 1;
        }
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        v.retain(|_, a| !a.is_zero());
        self.reduce(&mut v);
        let Some((&lead, lead_coef)) = v.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / lead_coef;
        let row: Vec<(usize, BigRational)> = v.into_iter().map(|(c, a)| (c, a * &inv)).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }
}
