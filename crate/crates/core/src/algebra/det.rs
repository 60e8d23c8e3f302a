//! Determinant kernels.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Fraction-free Bareiss elimination after scaling every row to integers.
pub(crate) fn bareiss_rational(entries: Vec<BigRational>, n: usize) -> BigRational {
    debug_assert_eq!(entries.len(), n * n);
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<BigInt> = Vec::with_capacity(n * n);
    for row in entries.chunks(n) {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in row {
            a.push(x.numer() * (&lcm / x.denom()));
        }
        scale *= lcm;
    }

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigRational::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (&pivot * &a[i * n + j] - &lead * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    let det = if negate { -det } else { det };
    BigRational::new(det, scale)
}

/// LU decomposition with partial pivoting.
pub(crate) fn lu_complex(mut a: Vec<Complex64>, n: usize) -> Complex64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = Complex64::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
            .expect("nonempty pivot range");
        if a[p * n + k].norm() == 0.0 {
            return Complex64::zero();
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let v = a[k * n + j];
                a[i * n + j] -= f * v;
            }
        }
    }
    det
}

/// Laplace expansion along the first row. Exponential; reference use only.
pub fn cofactor_determinant<S: Scalar>(entries: &[S], n: usize) -> S {
    assert_eq!(entries.len(), n * n, "grid is not n x n");
    fn rec<S: Scalar>(a: &[S], n: usize, rows: &[usize], cols: &mut Vec<usize>) -> S {
        let Some((&r, rest)) = rows.split_first() else {
            return S::one();
        };
        let mut total = S::zero();
        for pos in 0..cols.len() {
            let c = cols.remove(pos);
            let term = a[r * n + c].clone() * rec(a, n, rest, cols);
            total = if pos % 2 == 0 { total + term } else { total - term };
            cols.insert(pos, c);
        }
        total
    }
    let rows: Vec<usize> = (0..n).collect();
    let mut cols = rows.clone();
    rec(entries, n, &rows, &mut cols)
}
