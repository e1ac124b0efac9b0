//! Exact arithmetic in real cyclotomic rings `O_n = Z[θ_n]`, `θ_n = ζ_n + ζ_n⁻¹`.
//!
//! Elements are coordinate vectors in the power basis `1, θ, …, θ^{d-1}`,
//! always reduced modulo the minimal polynomial `ψ_n` of `θ_n`. The rings for
//! `n = 1` and `n = 2` are both `Z`, with `θ_1 = 2` and `θ_2 = -2`.
//!
//! Besides ring operations this module provides the Galois conjugates of an
//! element, its real embeddings to any requested decimal precision, the
//! inclusions `O_m ⊂ O_n`, and the residue fields of `O_n` at the primes above
//! an odd rational prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, gcd, is_prime, lcm, mobius, real_cyclotomic_degree, totient};
use crate::error::{Error, Result};
use crate::fp_poly::FpPoly;

/// The ring `O_n` together with the minimal polynomial of its generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    n: u64,
    degree: usize,
    /// ψ_n, little-endian, monic
    min_poly: Vec<i128>,
}

impl RingSpec {
    /// Shared handle to `O_n`.
    pub fn new(n: u64) -> Arc<RingSpec> {
        Arc::new(min_poly(n))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &[i128] {
        &self.min_poly
    }

    /// `2cos(2πj/n)` for the exponents `j` indexing the real embeddings, in
    /// increasing `j` (so decreasing value).
    pub fn embedding_exponents(&self) -> Vec<u64> {
        match self.n {
            1 => vec![0],
            2 => vec![1],
            n => (1..n.div_ceil(2)).filter(|&j| gcd(j, n) == 1).collect(),
        }
    }

    /// Real roots of `ψ_n` as floats, ordered like [`Self::embedding_exponents`].
    pub fn roots_f64(&self) -> Vec<f64> {
        self.embedding_exponents()
            .into_iter()
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / self.n as f64).cos())
            .collect()
    }
}

/// ψ_n: the minimal polynomial of `2cos(2π/n)`.
pub fn min_poly(n: u64) -> RingSpec {
    assert!(n >= 1, "conductor must be positive");
    let min_poly = match n {
        1 => vec![-2, 1],
        2 => vec![2, 1],
        _ => {
            let phi = cyclotomic_poly(n);
            let d = phi.len() / 2;
            // z^{-d} Φ_n(z) = c_0 + Σ c_k (z^k + z^{-k}), and z^k + z^{-k} = D_k(z + 1/z)
            let mut out = vec![0i128; d + 1];
            out[0] = phi[d];
            let mut prev = vec![2i128];
            let mut cur = vec![0i128, 1];
            for k in 1..=d {
                for (i, &c) in cur.iter().enumerate() {
                    out[i] += phi[d + k] * c;
                }
                let next = dickson_step(&cur, &prev);
                prev = std::mem::replace(&mut cur, next);
            }
            out
        }
    };
    RingSpec {
        n,
        degree: min_poly.len() - 1,
        min_poly,
    }
}

/// `X·cur − prev`, the Dickson/Chebyshev recurrence.
fn dickson_step(cur: &[i128], prev: &[i128]) -> Vec<i128> {
    let mut next = vec![0i128; cur.len() + 1];
    for (i, &c) in cur.iter().enumerate() {
        next[i + 1] += c;
    }
    for (i, &c) in prev.iter().enumerate() {
        next[i] -= c;
    }
    next
}

/// `D_k` with `D_k(z + 1/z) = z^k + z^{-k}`; `D_0 = 2`.
pub fn dickson(k: u64) -> Vec<i128> {
    let mut prev = vec![2i128];
    let mut cur = vec![0i128, 1];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = dickson_step(&cur, &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The cyclotomic polynomial Φ_m, little-endian.
pub fn cyclotomic_poly(m: u64) -> Vec<i128> {
    if m == 1 {
        return vec![-1, 1];
    }
    let deg = totient(m) as usize;
    // Φ_m = ∏_{d|m} (1 − X^d)^{μ(m/d)} as a power series (m > 1)
    let mut s = vec![0i128; deg + 1];
    s[0] = 1;
    for d in divisors(m) {
        let d = d as usize;
        match mobius(m / d as u64) {
            1 => {
                for i in (d..=deg).rev() {
                    s[i] -= s[i - d];
                }
            }
            -1 => {
                for i in d..=deg {
                    s[i] += s[i - d];
                }
            }
            _ => {}
        }
    }
    s
}

/// An element of `O_n` in the power basis of `θ_n`.
#[derive(Clone, Debug)]
pub struct RingElement {
    spec: Arc<RingSpec>,
    coeffs: Vec<i128>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.n == other.spec.n && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl RingElement {
    /// Element with the given power-basis coordinates, reduced mod ψ_n.
    pub fn new(spec: &Arc<RingSpec>, coeffs: &[i128]) -> Self {
        let mut out = RingElement {
            spec: spec.clone(),
            coeffs: coeffs.to_vec(),
        };
        out.reduce();
        out
    }

    pub fn from_int(spec: &Arc<RingSpec>, c: i128) -> Self {
        Self::new(spec, &[c])
    }

    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        Self::from_int(spec, 0)
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::from_int(spec, 1)
    }

    /// θ_n itself.
    pub fn theta(spec: &Arc<RingSpec>) -> Self {
        Self::new(spec, &[0, 1])
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn n(&self) -> u64 {
        self.spec.n
    }

    /// Exactly `degree` coordinates.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let d = self.spec.degree;
        let psi = &self.spec.min_poly;
        for top in (d..self.coeffs.len()).rev() {
            let c = self.coeffs[top];
            if c != 0 {
                for i in 0..d {
                    self.coeffs[top - d + i] -= c * psi[i];
                }
            }
        }
        self.coeffs.resize(d, 0);
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_int(&self, c: i128) -> bool {
        self.as_integer() == Some(c)
    }

    pub fn is_zero(&self) -> bool {
        self.is_int(0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec.n == other.spec.n {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.spec.n,
                right: other.spec.n,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let c: Vec<i128> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new(&self.spec, &c))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let c: Vec<i128> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::new(&self.spec, &c))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.spec.degree;
        let mut c = vec![0i128; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Ok(Self::new(&self.spec, &c))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.spec), |acc, _| &acc * self)
    }

    /// Evaluate an integer polynomial (little-endian) at this element.
    pub fn eval_poly(&self, poly: &[i128]) -> Self {
        poly.iter().rev().fold(Self::zero(&self.spec), |acc, &c| {
            &(&acc * self) + &Self::from_int(&self.spec, c)
        })
    }

    /// Images under the Galois automorphisms `θ ↦ ζ^j + ζ^{-j}`, ordered by `j`.
    pub fn conjugates(&self) -> Vec<RingElement> {
        if self.spec.n <= 2 {
            return vec![self.clone()];
        }
        let theta = Self::theta(&self.spec);
        self.spec
            .embedding_exponents()
            .into_iter()
            .map(|j| {
                let image = theta.eval_poly(&dickson(j));
                image.eval_poly(&self.coeffs)
            })
            .collect()
    }

    /// Real embeddings as floats (fast, unverified precision).
    pub fn embeddings_f64(&self) -> Vec<f64> {
        self.spec
            .roots_f64()
            .into_iter()
            .map(|r| {
                self.coeffs
                    .iter()
                    .rev()
                    .fold(0.0, |acc, &c| acc * r + c as f64)
            })
            .collect()
    }

    /// Real embeddings with absolute error below `10^(-precision)`, one per root
    /// of ψ_n, ordered like [`RingSpec::embedding_exponents`].
    pub fn numeric_embeddings(&self, precision: u32) -> Vec<RealApprox> {
        let psi: Vec<BigRational> = self.spec.min_poly.iter().map(|&c| rat(c)).collect();
        let coeffs: Vec<BigRational> = self.coeffs.iter().map(|&c| rat(c)).collect();
        // |a'(x)| ≤ Σ i|c_i| 3^{i-1} on |x| ≤ 3
        let deriv_bound: i128 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c.abs() * i as i128 * 3i128.pow(i as u32 - 1))
            .sum::<i128>()
            + 1;
        let target = BigRational::new(
            BigInt::one(),
            BigInt::from(10).pow(precision) * BigInt::from(4) * BigInt::from(deriv_bound),
        );
        self.spec
            .roots_f64()
            .into_iter()
            .map(|r| {
                let root = if self.spec.degree == 1 {
                    // the root of a linear ψ is an integer
                    rat(-self.spec.min_poly[0])
                } else {
                    bisect_root(&psi, r, &target)
                };
                RealApprox {
                    value: horner_rat(&coeffs, &root),
                    precision,
                }
            })
            .collect()
    }

    /// Map into the ring `O_m` for a multiple `m` of `n`.
    pub fn embed_into_multiple(&self, target: &Arc<RingSpec>) -> Self {
        assert!(
            target.n % self.spec.n == 0,
            "O_{} is not contained in O_{} by divisibility",
            self.spec.n,
            target.n
        );
        if target.n == self.spec.n {
            return Self::new(target, &self.coeffs);
        }
        // θ_n = 2cos(2π (m/n) / m) = D_{m/n}(θ_m); n ≤ 2 handled by the same identity
        let image = Self::theta(target).eval_poly(&dickson(target.n / self.spec.n));
        image.eval_poly(&self.coeffs)
    }

    /// Express this element in `O_target`, if it lies in that subring.
    pub fn embed(&self, target: &Arc<RingSpec>) -> Option<Self> {
        if target.n == self.spec.n {
            return Some(self.clone());
        }
        if let Some(c) = self.as_integer() {
            return Some(Self::from_int(target, c));
        }
        let l = lcm(self.spec.n, target.n);
        let big = if l == self.spec.n {
            self.spec.clone()
        } else {
            RingSpec::new(l)
        };
        let v = self.embed_into_multiple(&big);
        if l == target.n {
            return Some(v);
        }
        // solve Σ x_i ι(θ_target^i) = v over Z
        let basis_image = Self::theta(target).embed_into_multiple(&big);
        let cols: Vec<Vec<i128>> = (0..target.degree)
            .map(|i| basis_image.pow(i as u32).coeffs.clone())
            .collect();
        solve_integral(&cols, &v.coeffs).map(|x| Self::new(target, &x))
    }
}

fn rat(c: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn horner_rat(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn bisect_root(psi: &[BigRational], approx: f64, width: &BigRational) -> BigRational {
    let mut delta = 1e-7;
    let (mut lo, mut hi) = loop {
        let lo = BigRational::from_float(approx - delta).expect("finite");
        let hi = BigRational::from_float(approx + delta).expect("finite");
        let slo = horner_rat(psi, &lo).signum();
        let shi = horner_rat(psi, &hi).signum();
        if slo.is_zero() {
            return lo;
        }
        if shi.is_zero() {
            return hi;
        }
        if slo != shi {
            break (lo, hi);
        }
        delta *= 2.0;
        assert!(delta < 1e-2, "failed to bracket root near {approx}");
    };
    let s_lo = horner_rat(psi, &lo).signum();
    let two = rat(2);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = horner_rat(psi, &mid).signum();
        if s.is_zero() {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// Integral solution of `Σ x_j cols[j] = rhs`, if one exists.
fn solve_integral(cols: &[Vec<i128>], rhs: &[i128]) -> Option<Vec<i128>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| rat(c[r])).collect();
            row.push(rat(rhs[r]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for j in c..=ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![0i128; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        let v = &m[i][ncols];
        if !v.is_integer() {
            return None;
        }
        x[c] = v.to_integer().to_i128()?;
    }
    Some(x)
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: Self) -> RingElement {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: Self) -> RingElement {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: Self) -> RingElement {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let c: Vec<i128> = self.coeffs.iter().map(|a| -a).collect();
        RingElement::new(&self.spec, &c)
    }
}

impl fmt::Display for RingElement {
    /// `[c0,c1,...]@n` with trailing zero coordinates dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self
            .coeffs
            .iter()
            .rposition(|&c| c != 0)
            .map_or(1, |i| i + 1);
        let body: Vec<String> = self.coeffs[..len].iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]@{}", body.join(","), self.spec.n)
    }
}

impl FromStr for RingElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [c0,c1,...]@n, got {s:?}"));
        let (body, n) = s.trim().rsplit_once('@').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let inner = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let coeffs: Vec<i128> = if inner.trim().is_empty() {
            vec![]
        } else {
            inner
                .split(',')
                .map(|c| c.trim().parse::<i128>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        Ok(RingElement::new(&RingSpec::new(n), &coeffs))
    }
}

impl serde::Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A real number known to within `10^(-precision)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealApprox {
    value: BigRational,
    precision: u32,
}

impl RealApprox {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Decimal expansion rounded to `precision` fractional digits.
    pub fn to_decimal_string(&self) -> String {
        let scale = BigInt::from(10).pow(self.precision);
        let scaled = &self.value * BigRational::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let neg = rounded.is_negative();
        let digits = rounded.abs().to_string();
        let p = self.precision as usize;
        let padded = format!("{digits:0>width$}", width = p + 1);
        let (int, frac) = padded.split_at(padded.len() - p);
        let sign = if neg { "-" } else { "" };
        if p == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

/// Operations exposed by [`ring_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingValue {
    Element(RingElement),
    Bool(bool),
}

/// Binary ring operation with spec checking. `Neg` ignores `b` apart from the
/// ring check.
pub fn ring_arith(op: RingOp, a: &RingElement, b: &RingElement) -> Result<RingValue> {
    a.check_same(b)?;
    Ok(match op {
        RingOp::Add => RingValue::Element(a.try_add(b)?),
        RingOp::Sub => RingValue::Element(a.try_sub(b)?),
        RingOp::Mul => RingValue::Element(a.try_mul(b)?),
        RingOp::Neg => RingValue::Element(-a),
        RingOp::Eq => RingValue::Bool(a == b),
    })
}

/// The residue field of `O_n` at one prime above `ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData {
    n: u64,
    ell: u64,
    modulus: FpPoly,
    theta_image: FpPoly,
    ramification_e: u32,
    inertia_k: usize,
}

impl ResidueData {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The irreducible factor of ψ_n mod ℓ defining `F = F_ℓ[X]/(modulus)`.
    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Image of θ_n in `F`.
    pub fn theta_image(&self) -> &FpPoly {
        &self.theta_image
    }

    pub fn ramification_e(&self) -> u32 {
        self.ramification_e
    }

    pub fn inertia_k(&self) -> usize {
        self.inertia_k
    }

    pub fn field_size(&self) -> u64 {
        self.ell.pow(self.inertia_k as u32)
    }

    /// The reduction map `O_n → F`.
    pub fn reduce(&self, a: &RingElement) -> FpPoly {
        assert_eq!(a.n(), self.n, "element is not in O_{}", self.n);
        a.coeffs
            .iter()
            .rev()
            .fold(FpPoly::zero(self.ell), |acc, &c| {
                acc.mul_mod(&self.theta_image, &self.modulus)
                    .add(&FpPoly::from_i128(self.ell, &[c]))
            })
            .rem(&self.modulus)
    }

    /// Short description, e.g. `λ | 5 in O_10: (X + 2)^2, F_5`.
    pub fn describe(&self) -> String {
        let m = crate::zpoly::render(
            &self
                .modulus
                .coeffs()
                .iter()
                .map(|&c| BigInt::from(c))
                .collect::<Vec<_>>(),
            "X",
        );
        format!(
            "prime above {} in O_{}: ({})^{}, F_{}",
            self.ell,
            self.n,
            m,
            self.ramification_e,
            self.field_size()
        )
    }
}

/// The primes of `O_n` above an odd prime `ell`, one per irreducible factor of
/// ψ_n mod ℓ, ordered by the factors' coefficient sequences.
pub fn residue_reduction(spec: &RingSpec, ell: u64) -> Result<Vec<ResidueData>> {
    if ell % 2 == 0 || !is_prime(ell) {
        return Err(Error::InvalidPrime(ell));
    }
    let psi = FpPoly::from_i128(ell, &spec.min_poly);
    Ok(psi
        .factor()
        .into_iter()
        .map(|(g, e)| {
            let k = g.degree().expect("nonconstant factor");
            ResidueData {
                n: spec.n,
                ell,
                theta_image: FpPoly::x(ell).rem(&g),
                modulus: g,
                ramification_e: e,
                inertia_k: k,
            }
        })
        .collect())
}

/// The canonical prime above `ell`: the first entry of [`residue_reduction`].
pub fn canonical_residue(spec: &RingSpec, ell: u64) -> Result<ResidueData> {
    Ok(residue_reduction(spec, ell)?.remove(0))
}

/// Degree of `O_n`; re-exported for callers that only need the number.
pub fn ring_degree(n: u64) -> usize {
    real_cyclotomic_degree(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elt(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(min_poly(1).min_poly, vec![-2, 1]);
        assert_eq!(min_poly(2).min_poly, vec![2, 1]);
        assert_eq!(min_poly(3).min_poly, vec![1, 1]);
        assert_eq!(min_poly(4).min_poly, vec![0, 1]);
        assert_eq!(min_poly(5).min_poly, vec![-1, 1, 1]);
        assert_eq!(min_poly(7).min_poly, vec![-1, -2, 1, 1]);
        assert_eq!(min_poly(10).min_poly, vec![-1, -1, 1]);
    }

    #[test]
    fn degrees_match_totient() {
        for n in 3..=100 {
            assert_eq!(min_poly(n).degree, totient(n) as usize / 2, "n = {n}");
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 has a coefficient -2
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn theta_squared() {
        let t5 = elt("[0,1]@5");
        assert_eq!((&t5 * &t5).to_string(), "[1,-1]@5");
        let t10 = elt("[0,1]@10");
        assert_eq!((&t10 * &t10).to_string(), "[1,1]@10");
    }

    #[test]
    fn multiplicative_identity() {
        for s in ["[3,-2,5]@7", "[0,1]@12", "[-4]@1", "[1,2,3,4]@15"] {
            let a = elt(s);
            assert_eq!(&a * &RingElement::one(a.spec()), a);
        }
    }

    #[test]
    fn ring_arith_checks_spec() {
        let a = elt("[0,1]@5");
        let b = elt("[0,1]@10");
        assert!(matches!(
            ring_arith(RingOp::Add, &a, &b),
            Err(Error::RingMismatch { left: 5, right: 10 })
        ));
        assert_eq!(
            ring_arith(RingOp::Eq, &a, &a).unwrap(),
            RingValue::Bool(true)
        );
    }

    #[test]
    fn conjugates_examples() {
        let c: Vec<String> = elt("[0,1]@5")
            .conjugates()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(c, vec!["[0,1]@5", "[-1,-1]@5"]);
        assert_eq!(elt("[0,1]@3").conjugates().len(), 1);
        let c = elt("[7]@13").conjugates();
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|x| x.is_int(7)));
    }

    #[test]
    fn embeddings_examples() {
        let e = elt("[0,1]@5").numeric_embeddings(12);
        assert!((e[0].to_f64() - 0.618_033_988_749_895).abs() < 1e-12);
        assert!((e[1].to_f64() + 1.618_033_988_749_895).abs() < 1e-12);
        let e = elt("[0,1]@10").numeric_embeddings(12);
        assert!((e[0].to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert!((e[1].to_f64() + 0.618_033_988_749_895).abs() < 1e-12);
        let e = elt("[7]@9").numeric_embeddings(5);
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(|v| v.to_decimal_string() == "7.00000"));
    }

    #[test]
    fn high_precision_golden_ratio() {
        // θ_10 = (1 + √5)/2
        let e = elt("[0,1]@10").numeric_embeddings(30);
        assert_eq!(
            e[0].to_decimal_string(),
            "1.618033988749894848204586834366"
        );
        assert_eq!(
            e[1].to_decimal_string(),
            "-0.618033988749894848204586834366"
        );
    }

    #[test]
    fn residue_examples() {
        let r = residue_reduction(&min_poly(10), 5).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].ramification_e, r[0].inertia_k), (2, 1));
        assert_eq!(r[0].theta_image.coeffs(), &[3]);

        let r = residue_reduction(&min_poly(7), 7).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].ramification_e, r[0].inertia_k), (3, 1));
        assert_eq!(r[0].theta_image.coeffs(), &[2]);

        let r = residue_reduction(&min_poly(5), 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].ramification_e, r[0].inertia_k), (1, 2));
        assert_eq!(r[0].field_size(), 9);

        assert!(matches!(
            residue_reduction(&min_poly(5), 2),
            Err(Error::InvalidPrime(2))
        ));
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let spec = RingSpec::new(15);
        for res in residue_reduction(&spec, 7).unwrap() {
            let a = RingElement::new(&spec, &[3, -1, 4, 2]);
            let b = RingElement::new(&spec, &[-5, 2, 0, 7]);
            let lhs = res.reduce(&(&a * &b));
            let rhs = res.reduce(&a).mul_mod(&res.reduce(&b), &res.modulus);
            assert_eq!(lhs, rhs);
            assert_eq!(res.reduce(&(&a + &b)), res.reduce(&a).add(&res.reduce(&b)));
        }
    }

    #[test]
    fn embedding_between_rings() {
        // θ_5 = θ_10^2 - 2 in O_10
        let t5 = elt("[0,1]@5");
        let t10 = RingSpec::new(10);
        assert_eq!(t5.embed(&t10).unwrap().to_string(), "[-1,1]@10");
        // and θ_10 descends back to O_5
        let back = elt("[0,1]@10").embed(&RingSpec::new(5)).unwrap();
        assert!((back.embeddings_f64()[0] - 1.618_033_988_749_895).abs() < 1e-12);
        // √3 = θ_12 does not lie in O_5
        assert!(elt("[0,1]@12").embed(&RingSpec::new(5)).is_none());
        // integers embed everywhere
        assert_eq!(elt("[-1]@12").embed(&RingSpec::new(1)).unwrap().to_string(), "[-1]@1");
    }

    #[test]
    fn display_parse() {
        for s in ["[0,1]@5", "[0]@12", "[-1]@12", "[3,0,-2]@7"] {
            assert_eq!(elt(s).to_string(), s);
        }
        assert_eq!(elt("[ 1 , 2 ]@3").to_string(), "[-1]@3");
        assert!("[1,2".parse::<RingElement>().is_err());
        assert!("[1]@0".parse::<RingElement>().is_err());
        assert!("[x]@5".parse::<RingElement>().is_err());
    }
}
