//! Skew-symmetric matrices, Pfaffians and sub-Pfaffian tensors.

mod circuit;

pub use circuit::{eval_pfaffian_circuit, eval_pfaffian_oracle, eval_pfaffian_oracle_capped, GateKind, PfGate, PfaffianCircuit};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::matrix::check_distinct;
use crate::algebra::{Label, LabeledMatrix, Scalar};
use crate::error::{Error, Result};
use crate::oracle::{Tensor, DEFAULT_CAP};

/// Largest dimension the pairing-sum reference accepts.
pub const ORACLE_MAX_DIM: usize = 12;

/// Square skew-symmetric matrix; rows and columns share one label list.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<S> {
    labels: Vec<Label>,
    data: Vec<S>,
}

impl<S: Scalar> SkewMatrix<S> {
    /// Row-major entries; rejects anything that is not skew-symmetric.
    pub fn new(labels: Vec<Label>, data: Vec<S>) -> Result<Self> {
        check_distinct(&labels, "skew matrix labels")?;
        let n = labels.len();
        if data.len() != n * n {
            return Err(Error::ShapeMismatch { expected: n * n, found: data.len() });
        }
        for i in 0..n {
            for j in i..n {
                if !data[i * n + j].approx_eq(&-data[j * n + i].clone()) || (i == j && !data[i * n + i].approx_eq(&S::zero())) {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(Self { labels, data })
    }

    /// Builds the skew matrix whose upper triangle is given by `upper(i, j)`, `i < j`.
    pub fn from_upper(labels: Vec<Label>, upper: impl Fn(usize, usize) -> S) -> Result<Self> {
        check_distinct(&labels, "skew matrix labels")?;
        let n = labels.len();
        let mut data = vec![S::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j);
                data[j * n + i] = -v.clone();
                data[i * n + j] = v;
            }
        }
        Ok(Self { labels, data })
    }

    pub fn from_labeled(m: &LabeledMatrix<S>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::LabelMismatch("skew matrix needs identical row and column labels".into()));
        }
        Self::new(m.rows().to_vec(), m.data().to_vec())
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.labels.len() + j]
    }

    /// Principal submatrix on the given positions, in the order given.
    pub fn principal(&self, pos: &[usize]) -> Self {
        let n = self.dim();
        let mut data = Vec::with_capacity(pos.len() * pos.len());
        for &i in pos {
            for &j in pos {
                data.push(self.data[i * n + j].clone());
            }
        }
        Self { labels: pos.iter().map(|&i| self.labels[i]).collect(), data }
    }

    pub fn relabel(&self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::ShapeMismatch { expected: self.dim(), found: labels.len() });
        }
        check_distinct(&labels, "skew matrix labels")?;
        Ok(Self { labels, data: self.data.clone() })
    }

    pub fn to_labeled(&self) -> LabeledMatrix<S> {
        LabeledMatrix::new(self.labels.clone(), self.labels.clone(), self.data.clone())
            .expect("labels already checked")
    }

    /// Moves the first `t` positions to the end and negates their rows and
    /// columns. The sub-Pfaffian tensor on named wires is unchanged.
    pub(crate) fn rotate_negating(&self, t: usize) -> Self {
        let n = self.dim();
        if n == 0 {
            return self.clone();
        }
        let t = t % n;
        let old: Vec<usize> = (0..n).map(|i| (t + i) % n).collect();
        let mut out = self.principal(&old);
        for (a, &oa) in old.iter().enumerate() {
            for (b, &ob) in old.iter().enumerate() {
                if (oa < t) != (ob < t) {
                    let v = out.data[a * n + b].clone();
                    out.data[a * n + b] = -v;
                }
            }
        }
        out
    }
}

/// Pfaffian by skew congruence elimination; 0 for odd size, 1 for 0x0.
pub fn pfaffian<S: Scalar>(a: &SkewMatrix<S>) -> S {
    pfaffian_of(a.data.clone(), a.dim())
}

pub(crate) fn pfaffian_of<S: Scalar>(a: Vec<S>, n: usize) -> S {
    S::pf_kernel(a, n)
}

/// Fraction-free elimination on the integer multiple of the matrix.
///
/// After pivot pair `k` every remaining entry `(i, j)` equals the Pfaffian of
/// the principal submatrix on the pivots so far plus `i, j`, by the
/// overlapping-Pfaffian identity, so each division is exact.
pub(crate) fn fraction_free_rational(entries: Vec<BigRational>, n: usize) -> BigRational {
    if n % 2 == 1 {
        return BigRational::zero();
    }
    if n == 0 {
        return BigRational::one();
    }
    let scale = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut b: Vec<BigInt> = entries.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in (0..n).step_by(2) {
        let Some(j) = (k + 1..n).find(|&j| !b[k * n + j].is_zero()) else {
            return BigRational::zero();
        };
        if j != k + 1 {
            swap_index(&mut b, n, j, k + 1);
            negate = !negate;
        }
        if k + 2 == n {
            break;
        }
        let p = b[k * n + k + 1].clone();
        for i in k + 2..n {
            for j in i + 1..n {
                let v = &p * &b[i * n + j] - &b[k * n + i] * &b[(k + 1) * n + j] + &b[k * n + j] * &b[(k + 1) * n + i];
                debug_assert!((&v % &prev).is_zero());
                let v = v / &prev;
                b[j * n + i] = -&v;
                b[i * n + j] = v;
            }
        }
        prev = p;
    }
    let pf = b[(n - 2) * n + n - 1].clone();
    let pf = if negate { -pf } else { pf };
    BigRational::new(pf, num_traits::pow(scale, n / 2))
}

fn swap_index<T>(a: &mut [T], n: usize, x: usize, y: usize) {
    for r in 0..n {
        a.swap(r * n + x, r * n + y);
    }
    for c in 0..n {
        a.swap(x * n + c, y * n + c);
    }
}

/// Skew congruence elimination with pivoting; closed forms once at most 4x4 remains.
pub(crate) fn eliminate<S: Scalar>(mut a: Vec<S>, n: usize) -> S {
    if n % 2 == 1 {
        return S::zero();
    }
    let at = |a: &[S], i: usize, j: usize| a[i * n + j].clone();
    let mut result = S::one();
    let mut k = 0;
    while k < n {
        let rest = n - k;
        if rest <= 4 {
            let e = |i: usize, j: usize| at(&a, k + i, k + j);
            let tail = match rest {
                0 => S::one(),
                2 => e(0, 1),
                _ => e(0, 1) * e(2, 3) - e(0, 2) * e(1, 3) + e(0, 3) * e(1, 2),
            };
            return result * tail;
        }
        let pivot = if S::EXACT {
            (k + 1..n).find(|&j| !a[k * n + j].is_zero())
        } else {
            (k + 1..n)
                .max_by(|&x, &y| a[k * n + x].magnitude().total_cmp(&a[k * n + y].magnitude()))
                .filter(|&j| !a[k * n + j].is_zero())
        };
        let Some(j) = pivot else {
            return S::zero();
        };
        if j != k + 1 {
            swap_index(&mut a, n, j, k + 1);
            result = -result;
        }
        let p = at(&a, k, k + 1);
        // Row i loses alpha_i copies of row k and beta_i copies of row k+1.
        let alpha: Vec<S> = (k + 2..n).map(|i| at(&a, i, k + 1) / p.clone()).collect();
        let beta: Vec<S> = (k + 2..n).map(|i| at(&a, k, i) / p.clone()).collect();
        for i in k + 2..n {
            let (ai, bi) = (&alpha[i - k - 2], &beta[i - k - 2]);
            for j in i + 1..n {
                let (aj, bj) = (&alpha[j - k - 2], &beta[j - k - 2]);
                let v = at(&a, i, j)
                    - aj.clone() * at(&a, i, k)
                    - bj.clone() * at(&a, i, k + 1)
                    - ai.clone() * at(&a, k, j)
                    - bi.clone() * at(&a, k + 1, j)
                    + (ai.clone() * bj.clone() - bi.clone() * aj.clone()) * p.clone();
                a[j * n + i] = -v.clone();
                a[i * n + j] = v;
            }
        }
        result = result * p;
        k += 2;
    }
    result
}

/// Signed sum over all perfect pairings; the sign is the parity of the
/// number of crossing chord pairs.
pub fn pfaffian_oracle<S: Scalar>(a: &SkewMatrix<S>) -> Result<S> {
    let n = a.dim();
    if n > ORACLE_MAX_DIM {
        return Err(Error::TooLarge { what: "pairing-sum dimension", size: n, cap: ORACLE_MAX_DIM });
    }
    if n % 2 == 1 {
        return Ok(S::zero());
    }
    fn rec<S: Scalar>(a: &SkewMatrix<S>, free: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>, acc: &mut S) {
        if free.is_empty() {
            let crossings = pairs
                .iter()
                .enumerate()
                .flat_map(|(x, p)| pairs[x + 1..].iter().map(move |q| (p, q)))
                .filter(|(p, q)| {
                    let (i1, j1, i2, j2) = (p.0, p.1, q.0, q.1);
                    (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1)
                })
                .count();
            let term = pairs.iter().fold(S::one(), |t, &(i, j)| t * a.get(i, j).clone());
            *acc = if crossings % 2 == 0 { acc.clone() + term } else { acc.clone() - term };
            return;
        }
        let first = free.remove(0);
        for idx in 0..free.len() {
            let partner = free.remove(idx);
            pairs.push((first, partner));
            rec(a, free, pairs, acc);
            pairs.pop();
            free.insert(idx, partner);
        }
        free.insert(0, first);
    }
    let mut acc = S::zero();
    rec(a, &mut (0..n).collect(), &mut Vec::new(), &mut acc);
    Ok(acc)
}

/// Reflection across the anti-diagonal; labels are kept.
pub fn anti_transpose<S: Scalar>(a: &SkewMatrix<S>) -> SkewMatrix<S> {
    let n = a.dim();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(a.get(n - 1 - j, n - 1 - i).clone());
        }
    }
    SkewMatrix { labels: a.labels.clone(), data }
}

fn subset_positions(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> (n - 1 - i) & 1 == 1).collect()
}

/// State whose coefficient on subset `I` is `Pf(m_I)`.
pub fn spf<S: Scalar>(m: &SkewMatrix<S>) -> Result<Tensor<S>> {
    spf_capped(m, DEFAULT_CAP)
}

pub(crate) fn spf_capped<S: Scalar>(m: &SkewMatrix<S>, cap: usize) -> Result<Tensor<S>> {
    let n = m.dim();
    if n > cap {
        return Err(Error::TooLarge { what: "gate wire count", size: n, cap });
    }
    let data = (0..1usize << n)
        .map(|mask| {
            let sub = m.principal(&subset_positions(mask, n));
            pfaffian_of(sub.data, sub.labels.len())
        })
        .collect();
    Tensor::new(m.labels.clone(), vec![], data)
}

/// Costate whose coefficient on subset `I` is the Pfaffian of the complement of `I`.
pub fn spf_dual<S: Scalar>(m: &SkewMatrix<S>) -> Result<Tensor<S>> {
    spf_dual_capped(m, DEFAULT_CAP)
}

pub(crate) fn spf_dual_capped<S: Scalar>(m: &SkewMatrix<S>, cap: usize) -> Result<Tensor<S>> {
    let n = m.dim();
    if n > cap {
        return Err(Error::TooLarge { what: "gate wire count", size: n, cap });
    }
    let full = (1usize << n) - 1;
    let data = (0..1usize << n)
        .map(|mask| {
            let sub = m.principal(&subset_positions(full ^ mask, n));
            pfaffian_of(sub.data, sub.labels.len())
        })
        .collect();
    Tensor::new(vec![], m.labels.clone(), data)
}
