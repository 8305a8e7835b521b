//! Dense all-monomials eliminator used as an independent oracle for ranks
//! and integration. It works in the full polynomial ring (non-nested
//! monomials included) with the ideal generated by both relation families,
//! and shares nothing with the engine beyond the subset type.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use tdn_core::chowring::Monomial;
use tdn_core::{Caps, RingPresentation, Subset};

type Exps = Vec<u32>;

struct Dense {
    d: u32,
    n: u32,
    vars: Vec<Subset>,
}

fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Exps> {
    fn rec(i: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(0, k, &mut vec![0; nvars], &mut out);
    out
}

type Poly = HashMap<Exps, BigRational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Dense {
    fn new(d: u32, n: u32) -> Self {
        let mut vars: Vec<Subset> = (1u64..(1 << n))
            .map(Subset::from_bits)
            .filter(|s| s.len() >= 2)
            .collect();
        vars.sort_by_key(|s| (s.len(), s.to_vec()));
        Dense { d, n, vars }
    }

    fn top(&self) -> u32 {
        self.d * (self.n - 1) - 1
    }

    fn unit(&self, i: usize) -> Exps {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        e
    }

    /// Ideal generators: overlapping products and `(Σ_ij)^d`.
    fn generators(&self) -> Vec<Poly> {
        let mut gens = Vec::new();
        let nv = self.vars.len();
        for a in 0..nv {
            for b in a + 1..nv {
                let (s, t) = (self.vars[a], self.vars[b]);
                let inter = s.bits() & t.bits();
                if inter != 0 && inter != s.bits() && inter != t.bits() {
                    let e: Exps = self
                        .unit(a)
                        .iter()
                        .zip(self.unit(b))
                        .map(|(x, y)| x + y)
                        .collect();
                    gens.push(Poly::from([(e, BigRational::one())]));
                }
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let pair = (1u64 << i) | (1u64 << j);
                let sigma: Poly = (0..nv)
                    .filter(|&v| self.vars[v].bits() & pair == pair)
                    .map(|v| (self.unit(v), BigRational::one()))
                    .collect();
                let mut power = Poly::from([(vec![0; nv], BigRational::one())]);
                for _ in 0..self.d {
                    power = poly_mul(&power, &sigma);
                }
                gens.push(power);
            }
        }
        gens
    }

    /// Reduced row echelon basis of the degree-`k` ideal piece, plus the
    /// column index of every degree-`k` monomial.
    fn ideal_piece(&self, k: u32) -> (Vec<Vec<BigRational>>, Vec<usize>, HashMap<Exps, usize>) {
        let nv = self.vars.len();
        let cols: Vec<Exps> = monomials_of_degree(nv, k);
        let index: HashMap<Exps, usize> = cols
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for g in self.generators() {
            let gdeg: u32 = g.keys().next().unwrap().iter().sum();
            if gdeg > k {
                continue;
            }
            for m in monomials_of_degree(nv, k - gdeg) {
                let mut row = vec![BigRational::zero(); cols.len()];
                for (e, c) in &g {
                    let prod: Exps = e.iter().zip(&m).map(|(x, y)| x + y).collect();
                    row[index[&prod]] += c;
                }
                rows.push(row);
            }
        }
        let (rref, pivots) = rref(rows, cols.len());
        (rref, pivots, index)
    }

    fn quotient_rank(&self, k: u32) -> usize {
        let (_, pivots, index) = self.ideal_piece(k);
        index.len() - pivots.len()
    }

    fn reduce(
        rref: &[Vec<BigRational>],
        pivots: &[usize],
        mut v: Vec<BigRational>,
    ) -> Vec<BigRational> {
        for (row, &p) in rref.iter().zip(pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// `∫ m` with `∫ δ_N^D = (-1)^D`.
    fn integrate(&self, m: &Exps) -> BigRational {
        let k = self.top();
        let (rref, pivots, index) = self.ideal_piece(k);
        let basis_vec = |e: &Exps| {
            let mut v = vec![BigRational::zero(); index.len()];
            v[index[e]] = BigRational::one();
            v
        };
        let mut point = vec![0; self.vars.len()];
        *point.last_mut().unwrap() = k;
        let rn = Self::reduce(&rref, &pivots, basis_vec(&point));
        let rm = Self::reduce(&rref, &pivots, basis_vec(m));
        let (col, denom) = rn
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .expect("point class nonzero");
        let lambda = &rm[col] / denom;
        for (a, b) in rm.iter().zip(&rn) {
            assert_eq!(a, &(&lambda * b), "top quotient is not one-dimensional");
        }
        if k % 2 == 1 {
            -lambda
        } else {
            lambda
        }
    }

    fn to_monomial(&self, e: &Exps) -> Monomial {
        Monomial::from_factors(
            self.vars
                .iter()
                .zip(e)
                .filter(|(_, &x)| x > 0)
                .map(|(&s, &x)| (s, x)),
        )
    }
}

fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

const CASES: [(u32, u32); 4] = [(1, 3), (1, 4), (2, 2), (2, 3)];

#[test]
fn dense_ranks_match_engine() {
    for (d, n) in CASES {
        let dense = Dense::new(d, n);
        let p = RingPresentation::new(d, n, Caps::default()).unwrap();
        for k in 0..=dense.top() {
            assert_eq!(
                dense.quotient_rank(k),
                p.rank(k as usize).unwrap(),
                "rank mismatch at (d,n,k)=({d},{n},{k})"
            );
        }
    }
}

#[test]
fn dense_integrals_match_engine_on_every_top_monomial() {
    for (d, n) in CASES {
        let dense = Dense::new(d, n);
        let p = RingPresentation::new(d, n, Caps::default()).unwrap();
        let mut nonzero = 0;
        for e in monomials_of_degree(dense.vars.len(), dense.top()) {
            let expected = dense.integrate(&e);
            let m = dense.to_monomial(&e);
            let got = p.integrate_monomial(&m).unwrap();
            assert_eq!(got, expected, "integral of {m} at (d,n)=({d},{n})");
            if !expected.is_zero() {
                nonzero += 1;
                assert!(
                    expected.is_integer() && expected.abs() <= BigRational::from_integer(64.into())
                );
            }
        }
        assert!(nonzero > 0);
    }
}
