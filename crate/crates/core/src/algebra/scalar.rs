//! Scalar fields: exact rationals and complex floats.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;
/// Complex floating scalar.
pub type Complex = Complex64;

/// Complex comparison tolerance, relative to the larger magnitude once it exceeds 1.
pub const COMPLEX_TOLERANCE: f64 = 1e-9;

/// Field operations shared by both scalar kinds.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Whether arithmetic is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Magnitude used to rank pivot candidates.
    fn magnitude(&self) -> f64;

    /// Exact equality for rationals, tolerance for complex.
    fn approx_eq(&self, other: &Self) -> bool;

    /// Determinant of a row-major `n x n` grid.
    fn det_kernel(entries: Vec<Self>, n: usize) -> Self;

    /// Pfaffian of a row-major skew-symmetric `n x n` grid.
    fn pf_kernel(entries: Vec<Self>, n: usize) -> Self;

    fn parse_scalar(text: &str) -> Result<Self, String>;

    /// Canonical text form used by every printer.
    fn render(&self) -> String;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn magnitude(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.abs().to_f64().unwrap_or(f64::MAX)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn det_kernel(entries: Vec<Self>, n: usize) -> Self {
        super::det::bareiss_rational(entries, n)
    }

    fn pf_kernel(entries: Vec<Self>, n: usize) -> Self {
        crate::pfaffian::fraction_free_rational(entries, n)
    }

    fn parse_scalar(text: &str) -> Result<Self, String> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for Complex {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.norm().max(other.norm()).max(1.0);
        (self - other).norm() <= COMPLEX_TOLERANCE * scale
    }

    fn det_kernel(entries: Vec<Self>, n: usize) -> Self {
        super::det::lu_complex(entries, n)
    }

    fn pf_kernel(entries: Vec<Self>, n: usize) -> Self {
        crate::pfaffian::eliminate(entries, n)
    }

    fn parse_scalar(text: &str) -> Result<Self, String> {
        parse_complex(text)
    }

    fn render(&self) -> String {
        let re = render_float(self.re);
        let im = render_float(self.im);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let bad = || format!("invalid rational `{text}`");
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(BigRational::new(p, q))
        }
        None => text
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Real part may be a float or `p/q`.
fn parse_real(text: &str) -> Result<f64, String> {
    if text.contains('/') {
        use num_traits::ToPrimitive;
        let r = parse_rational(text)?;
        return r.to_f64().ok_or_else(|| format!("value `{text}` out of range"));
    }
    text.parse::<f64>()
        .map_err(|_| format!("invalid number `{text}`"))
}

fn parse_complex(text: &str) -> Result<Complex, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other)?,
    };
    Ok(Complex64::new(parse_real(re)?, im))
}

/// Twelve significant digits, values below 1e-12 shown as zero.
fn render_float(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

/// Integer value as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// `p / q` as a rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
