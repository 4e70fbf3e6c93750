//! Fraction-free elimination over the Gaussian integers ℤ[i].
//!
//! Rows are cleared of denominators first, then the Bareiss update
//! `a_ij ← (a_kk·a_ij − a_ik·a_kj) / a_{k−1,k−1}` keeps every entry a
//! Gaussian integer; each division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn neg(&self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }

    /// Exact quotient; panics if `o` does not divide `self`.
    fn div_exact(&self, o: &GaussInt) -> GaussInt {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        assert!(rr.is_zero() && ri.is_zero(), "Bareiss division was not exact");
        GaussInt { re: qr, im: qi }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

/// Row-wise denominator clearing. Returns the integer matrix and the product
/// of the row scale factors.
fn integerize(m: &Matrix) -> (Vec<Vec<GaussInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let l = m.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.denom_lcm()));
            total *= &l;
            let lr = BigRational::from_integer(l);
            m.row(i)
                .iter()
                .map(|v| {
                    let s = v.scale(&lr);
                    GaussInt { re: s.re.to_integer(), im: s.im.to_integer() }
                })
                .collect()
        })
        .collect();
    (rows, total)
}

/// Forward Bareiss pass. Returns the rank and, for square input, the
/// determinant of the integerized matrix including the row-swap sign.
fn eliminate(a: &mut [Vec<GaussInt>], cols: usize) -> (usize, GaussInt) {
    let rows = a.len();
    let mut prev = GaussInt::one();
    let mut rank = 0;
    let mut sign_neg = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign_neg = !sign_neg;
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let t = a[rank][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[rank][j]));
                a[i][j] = t.div_exact(&prev);
            }
            a[i][c] = GaussInt::default();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols {
        if sign_neg {
            prev.neg()
        } else {
            prev
        }
    } else {
        GaussInt::default()
    };
    (rank, det)
}

pub fn rank(m: &Matrix) -> usize {
    let (mut a, _) = integerize(m);
    eliminate(&mut a, m.cols()).0
}

/// Determinant of a square matrix. Panics on non-square input.
pub fn determinant(m: &Matrix) -> Scalar {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    if m.rows() == 0 {
        return Scalar::one();
    }
    let (mut a, scale) = integerize(m);
    let (_, det) = eliminate(&mut a, m.cols());
    let s = BigRational::new(BigInt::one(), scale);
    det.to_scalar().scale(&s)
}

/// Leading principal minors `det(M[0..k, 0..k])` for `k = 1..=n`.
pub fn leading_minors(m: &Matrix) -> Vec<Scalar> {
    (1..=m.rows().min(m.cols())).map(|k| determinant(&m.submatrix(0..k, 0..k))).collect()
}
