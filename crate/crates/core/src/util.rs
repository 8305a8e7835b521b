use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `"p"` for integers, `"p/q"` otherwise.
pub fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The value as an `i64` when it is an integer that fits.
pub fn as_small_integer(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}

/// Exact determinant of a square integer matrix by rational elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigRational {
    let n = matrix.len();
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let pivot_row = m[col].clone();
            for (x, y) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

pub fn abs_is_one(q: &BigRational) -> bool {
    q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(rational_string(&rat(-1)), "-1");
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(rational_string(&half), "-1/2");
        assert_eq!(parse_rational("-1/2"), Some(half));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[]), rat(1));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), rat(-1));
        assert_eq!(determinant(&[vec![2, 1], vec![4, 2]]), rat(0));
        assert_eq!(
            determinant(&[vec![1, 0, 0], vec![5, -1, 0], vec![3, 3, 1]]),
            rat(-1)
        );
    }
}
