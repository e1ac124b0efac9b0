//! Integer polynomials and exact determinants.
//!
//! `ZPoly` is a dense polynomial over `Z` with arbitrary-precision
//! coefficients. `Bareiss` elimination works over any integral domain with
//! exact division, which covers both `Z` (discriminants of fibres) and `Z[t]`
//! (discriminants of families, as polynomials in the parameter).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactDomain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self / other`, where the quotient is known to be exact.
    fn exact_div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl ExactDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det<T: ExactDomain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Dense polynomial over `Z`, little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = ZPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_i128(coeffs: &[i128]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::new(vec![]), |acc, c| {
            ExactDomain::add(&ExactDomain::mul(&acc, inner), &Self::constant(c.clone()))
        })
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(<BigInt as Zero>::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(<BigInt as Zero>::zero(), |acc, c| acc.gcd(c))
    }

    /// Polynomial long division by a divisor with unit or dividing leading
    /// coefficient. Returns `None` if the division is not exact over `Z`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero_poly() {
                Some(self.clone())
            } else {
                None
            };
        }
        let mut quot = vec![<BigInt as Zero>::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if Zero::is_zero(&rem[i]) {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lead);
            if !Zero::is_zero(&r) {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * d;
            }
            quot[i - dd] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn zero() -> Self {
        <Self as ExactDomain>::zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExactDomain::add(self, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExactDomain::sub(self, other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactDomain::mul(self, other)
    }

    pub fn neg(&self) -> Self {
        ExactDomain::neg(self)
    }

    /// Resultant `Res(self, other)` via the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> BigInt {
        resultant(&self.coeffs, &other.coeffs)
    }

    /// Discriminant `(-1)^{m(m-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.coeffs)
    }

    /// True when `gcd(f, f') = 1` over `Q`, i.e. the discriminant is nonzero.
    pub fn is_squarefree(&self) -> bool {
        self.degree().unwrap_or(0) == 0 || !Zero::is_zero(&self.discriminant())
    }
}

impl ExactDomain for ZPoly {
    fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }
    fn one() -> Self {
        ZPoly::from_i64(&[1])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![<BigInt as Zero>::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.div_exact(other).expect("inexact polynomial division")
    }
}

impl fmt::Display for ZPoly {
    /// Human-readable form in the variable `X`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.coeffs, "X"))
    }
}

/// Render a little-endian coefficient list as e.g. `X^3 - 3*X + 2`.
pub fn render(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if Zero::is_zero(c) {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn sylvester<T: ExactDomain>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![T::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![T::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two little-endian coefficient lists (leading entries nonzero).
pub fn resultant<T: ExactDomain>(f: &[T], g: &[T]) -> T {
    assert!(!f.is_empty() && !g.is_empty(), "resultant of zero polynomial");
    if f.len() == 1 && g.len() == 1 {
        return T::one();
    }
    bareiss_det(sylvester(f, g))
}

/// Discriminant of a polynomial over an exact domain, coefficients little-endian.
pub fn discriminant<T: ExactDomain>(f: &[T]) -> T {
    let m = f.len() - 1;
    assert!(m >= 1, "discriminant needs positive degree");
    if m == 1 {
        return T::one();
    }
    let df: Vec<T> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (0..i).fold(T::zero(), |acc, _| acc.add(c)))
        .collect();
    let res = resultant(f, &df);
    let d = res.exact_div(&f[m]);
    if (m * (m - 1) / 2) % 2 == 1 {
        d.neg()
    } else {
        d
    }
}
