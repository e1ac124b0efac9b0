//! Point counts, L-polynomials, and mod-ℓ Frobenius congruences between
//! fibres.
//!
//! Congruences are tested at primes of `K_n`: for a rational prime `p` with
//! residue degree `f` in `K_n`, the L-polynomial over `F_p` is base-changed to
//! `F_{p^f}` before reduction modulo the chosen prime `λ | ℓ`. A match is
//! sought up to a twist `χ_D·ω^i`, with `χ_D` quadratic and `ω` the mod-ℓ
//! cyclotomic character.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, legendre, mod_pow, order_up_to_sign, primes_up_to, rem_big, rem_i128};
use crate::curves::{family_from_kind, family_from_traces, specialize, CurveFamily, FamilyKind, SpecializedCurve};
use crate::cyclo::ResidueData;
use crate::error::{Error, Result};
use crate::fp_poly::FpPoly;
use crate::gf::{Elem, Gf};
use crate::triples::lift_traces;
use crate::zpoly::ZPoly;

/// Largest field size counted by default.
pub const DEFAULT_BOUND: u64 = 1_000_000;

/// Largest number of twist characters tried before giving up as inconclusive.
pub const CANDIDATE_CAP: usize = 1 << 16;

fn check_good(curve: &SpecializedCurve, p: u64) -> Result<()> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if curve.is_bad(p) {
        return Err(Error::BadPrime { p });
    }
    Ok(())
}

/// Projective points on `y² = h(X)` over `F_q`, counting the points at
/// infinity of the smooth model.
pub fn count_points(h: &ZPoly, gf: &Gf) -> u64 {
    let p = gf.characteristic();
    let coeffs: Vec<Elem> = h
        .coeffs()
        .iter()
        .map(|c| gf.from_int(rem_big(c, p) as i64))
        .collect();
    let affine: i64 = gf
        .elements()
        .map(|x| 1 + gf.quadratic_character(gf.eval_int_poly(&coeffs, x)) as i64)
        .sum();
    let lead = *coeffs.last().expect("nonzero polynomial");
    let infinity = if (coeffs.len() - 1) % 2 == 1 {
        1
    } else {
        1 + gf.quadratic_character(lead) as i64
    };
    (affine + infinity) as u64
}

/// `#C(F_{p^k})` for a good odd prime `p`.
pub fn point_count(curve: &SpecializedCurve, p: u64, k: u32, bound: u64) -> Result<u64> {
    check_good(curve, p)?;
    if p.checked_pow(k).is_none_or(|q| q > bound) {
        return Err(Error::BoundExceeded {
            size: p.saturating_pow(k),
            bound,
        });
    }
    Ok(count_points(&curve.poly, &Gf::new(p, k as usize)))
}

/// `L(T) = Σ b_i T^i`, the numerator of the zeta function over `F_q`, `q = p^f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub p: u64,
    pub f: u32,
    pub genus: usize,
    pub coeffs: Vec<i128>,
}

impl LPolynomial {
    pub fn q(&self) -> i128 {
        (self.p as i128).pow(self.f)
    }

    /// From `N_k = #C(F_{q^k})`, `k = 1..g`.
    pub fn from_counts(p: u64, f: u32, genus: usize, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), genus);
        let q = (p as i128).pow(f);
        let s: Vec<i128> = std::iter::once(0)
            .chain(
                counts
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| q.pow(k as u32 + 1) + 1 - n as i128),
            )
            .collect();
        let mut b = vec![0i128; 2 * genus + 1];
        b[0] = 1;
        for k in 1..=genus {
            let acc: i128 = (1..=k).map(|i| s[i] * b[k - i]).sum();
            assert_eq!(acc % k as i128, 0, "counts are not those of a curve");
            b[k] = -acc / k as i128;
        }
        for i in 0..genus {
            b[2 * genus - i] = q.pow((genus - i) as u32) * b[i];
        }
        LPolynomial {
            p,
            f,
            genus,
            coeffs: b,
        }
    }

    /// Power sums `s_1..s_K` of the inverse roots (`s[0]` unused).
    pub fn power_sums(&self, k_max: usize) -> Vec<i128> {
        let b = |k: usize| self.coeffs.get(k).copied().unwrap_or(0);
        let mut s = vec![0i128; k_max + 1];
        for k in 1..=k_max {
            let acc: i128 = (1..k).map(|i| s[i] * b(k - i)).sum();
            s[k] = -(k as i128) * b(k) - acc;
        }
        s
    }

    /// `#C(F_{q^k})` implied by this polynomial.
    pub fn count(&self, k: u32) -> i128 {
        self.q().pow(k) + 1 - self.power_sums(k as usize)[k as usize]
    }

    /// The L-polynomial over `F_{q^e}`.
    pub fn base_change(&self, e: u32) -> LPolynomial {
        let g = self.genus;
        let s = self.power_sums(2 * g * e as usize);
        let big: Vec<i128> = (0..=2 * g).map(|k| if k == 0 { 0 } else { s[k * e as usize] }).collect();
        let mut b = vec![0i128; 2 * g + 1];
        b[0] = 1;
        for k in 1..=2 * g {
            let acc: i128 = (1..=k).map(|i| big[i] * b[k - i]).sum();
            b[k] = -acc / k as i128;
        }
        LPolynomial {
            p: self.p,
            f: self.f * e,
            genus: g,
            coeffs: b,
        }
    }

    /// `b_{2g−i} = q^{g−i}·b_i` for all `i`.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus;
        self.coeffs.len() == 2 * g + 1
            && self.coeffs[0] == 1
            && (0..=g).all(|i| self.coeffs[2 * g - i] == self.q().pow((g - i) as u32) * self.coeffs[i])
    }

    /// Largest `| |α|/√q − 1 |` over the inverse roots `α`.
    pub fn weil_deviation(&self) -> f64 {
        let deg = 2 * self.genus;
        let sq = (self.q() as f64).sqrt();
        // monic in β = α/√q
        let c: Vec<f64> = (0..=deg)
            .map(|i| self.coeffs[i] as f64 / sq.powi(i as i32))
            .collect();
        roots_of_monic(&c)
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn weil_bound_holds(&self, tol: f64) -> bool {
        self.weil_deviation() < tol
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, &b) in self.coeffs.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{i}"),
            };
            if out.is_empty() {
                if b < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if b < 0 { " - " } else { " + " });
            }
            let mag = b.unsigned_abs();
            match (mono.is_empty(), mag) {
                (true, _) => out.push_str(&mag.to_string()),
                (false, 1) => out.push_str(&mono),
                (false, _) => out.push_str(&format!("{mag}*{mono}")),
            }
        }
        write!(f, "{out}")
    }
}

/// Roots of `Σ c_i z^{n−i}` (`c_0 = 1`) by Durand–Kerner iteration.
fn roots_of_monic(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for k in 0..n {
            let denom = (0..n)
                .filter(|&j| j != k)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[k] - z[j]));
            if denom.norm() == 0.0 {
                z[k] += Complex64::new(1e-9, 1e-9);
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// The L-polynomial of a good fibre over `F_p`.
pub fn l_polynomial(curve: &SpecializedCurve, p: u64, bound: u64) -> Result<LPolynomial> {
    check_good(curve, p)?;
    let g = curve.genus;
    let size = p.checked_pow(g as u32).unwrap_or(u64::MAX);
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    let counts: Vec<u64> = (1..=g)
        .map(|k| count_points(&curve.poly, &Gf::new(p, k)))
        .collect();
    Ok(LPolynomial::from_counts(p, 1, g, &counts))
}

/// Residue degree of `p` in `K_n`.
pub fn residue_degree(p: u64, n: u64) -> u32 {
    order_up_to_sign(p, n)
}

/// Result of testing the collapse `L ≡ Q^e mod λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RmOutcome {
    /// All `ā ∈ F` with `(1 − āT + qT²)^e | L mod λ`.
    SquareOk { exponent: u32, roots: Vec<FpPoly> },
    Fail(String),
}

impl RmOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, RmOutcome::SquareOk { .. })
    }
}

/// `b | a` in `F[T]`, coefficient lists low degree first.
fn divides(gf: &Gf, a: &[Elem], b: &[Elem]) -> bool {
    let trim = |v: &[Elem]| -> Vec<Elem> {
        let len = v.iter().rposition(|e| !e.is_zero()).map_or(0, |i| i + 1);
        v[..len].to_vec()
    };
    let mut r = trim(a);
    let b = trim(b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let inv = gf.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let c = gf.mul(*r.last().unwrap(), inv);
        let shift = r.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = gf.sub(r[shift + i], gf.mul(c, bi));
        }
        r = trim(&r);
    }
    r.is_empty()
}

fn poly_mul(gf: &Gf, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = gf.add(out[i + j], gf.mul(x, y));
        }
    }
    out
}

fn int_in(gf: &Gf, v: i128) -> Elem {
    gf.from_int(rem_i128(v, gf.characteristic()) as i64)
}

/// All `ā ∈ F` with `(1 − āT + qT²)^e` dividing `L mod λ`.
fn collapse_roots(l: &LPolynomial, gf: &Gf, e: u32) -> Vec<Elem> {
    let lbar: Vec<Elem> = l.coeffs.iter().map(|&c| int_in(gf, c)).collect();
    let qbar = int_in(gf, l.q());
    gf.elements()
        .filter(|&a| {
            let quad = [gf.one(), gf.neg(a), qbar];
            let mut pw = vec![gf.one()];
            for _ in 0..e {
                pw = poly_mul(gf, &pw, &quad);
            }
            pw.len() <= lbar.len() && divides(gf, &lbar, &pw)
        })
        .collect()
}

/// Check that `L mod λ` is the `e`-th power of a quadratic, `e` the
/// ramification index of `λ` (degree-2 passthrough for genus 1).
pub fn rm_consistency(l: &LPolynomial, res: &ResidueData) -> RmOutcome {
    if !l.functional_equation_holds() {
        return RmOutcome::Fail("input violates the functional equation".into());
    }
    let gf = Gf::with_modulus(res.modulus());
    if l.genus == 1 {
        let a = int_in(&gf, -l.coeffs[1]);
        return RmOutcome::SquareOk {
            exponent: 1,
            roots: vec![gf.to_poly(a)],
        };
    }
    let e = res.ramification_e();
    if 2 * e as usize > l.coeffs.len() - 1 {
        return RmOutcome::Fail(format!("degree {} is too small for exponent {e}", l.coeffs.len() - 1));
    }
    let roots = collapse_roots(l, &gf, e);
    if roots.is_empty() {
        RmOutcome::Fail(format!(
            "L mod {} has no factor (1 - aT + qT^2)^{e}",
            res.ell()
        ))
    } else {
        RmOutcome::SquareOk {
            exponent: e,
            roots: roots.into_iter().map(|a| gf.to_poly(a)).collect(),
        }
    }
}

/// `χ_D·ω^i`: a quadratic character times a power of the mod-ℓ cyclotomic
/// character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCharacter {
    /// Generators among `−4`, `8`, and `p* = ±p` for odd `p`.
    gens: Vec<i64>,
    pub omega_power: u32,
    pub ell: u64,
}

impl TwistCharacter {
    pub fn trivial(ell: u64) -> Self {
        TwistCharacter {
            gens: vec![],
            omega_power: 0,
            ell,
        }
    }

    /// The fundamental discriminant `D`.
    pub fn discriminant(&self) -> BigInt {
        let mut d: BigInt = self.gens.iter().map(|&g| BigInt::from(g)).product();
        if self.gens.contains(&-4) && self.gens.contains(&8) {
            d /= 4;
        }
        d
    }

    pub fn modulus(&self) -> BigInt {
        let d = self.discriminant().abs();
        if self.omega_power > 0 {
            d * BigInt::from(self.ell)
        } else {
            d
        }
    }

    pub fn label(&self) -> String {
        format!("chi_{} * omega^{}", self.discriminant(), self.omega_power)
    }

    /// `χ_D(p) ∈ {±1}` for odd `p` prime to `D`.
    pub fn quadratic_value(&self, p: u64) -> i32 {
        self.gens
            .iter()
            .map(|&g| match g {
                -4 => {
                    if p % 4 == 1 {
                        1
                    } else {
                        -1
                    }
                }
                8 => {
                    if p % 8 == 1 || p % 8 == 7 {
                        1
                    } else {
                        -1
                    }
                }
                _ => legendre(p as i64, g.unsigned_abs()),
            })
            .product()
    }

    /// Value at the norm `p^f` of a prime of `K_n`, in `F_ℓ`.
    pub fn value_at(&self, p: u64, f: u32) -> u64 {
        let sign = if self.quadratic_value(p).pow(f) == 1 { 1 } else { self.ell - 1 };
        let q = mod_pow(p, f as u64, self.ell);
        sign * mod_pow(q, self.omega_power as u64, self.ell) % self.ell
    }
}

/// Twist candidates for the odd primes `primes` and ℓ, ordered by
/// `(i, |D|, sign)`; the flag is set when primes were dropped to fit `cap`.
pub fn candidate_characters(primes: &[u64], ell: u64, cap: usize) -> (Vec<TwistCharacter>, bool) {
    let mut odd: Vec<u64> = primes.iter().copied().filter(|&p| p % 2 == 1).collect();
    odd.sort_unstable();
    odd.dedup();
    let mut capped = false;
    while (1usize << (2 + odd.len())).saturating_mul((ell - 1) as usize) > cap {
        odd.pop();
        capped = true;
    }
    let mut gens: Vec<i64> = vec![-4, 8];
    gens.extend(odd.iter().map(|&p| if p % 4 == 1 { p as i64 } else { -(p as i64) }));
    let mut out = Vec::new();
    for mask in 0usize..(1 << gens.len()) {
        let chosen: Vec<i64> = (0..gens.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| gens[i])
            .collect();
        for i in 0..(ell - 1) as u32 {
            out.push(TwistCharacter {
                gens: chosen.clone(),
                omega_power: i,
                ell,
            });
        }
    }
    out.sort_by_cached_key(|c| {
        let d = c.discriminant();
        (c.omega_power, d.abs(), d.is_negative())
    });
    (out, capped)
}

/// What the fibre is compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Curve(FamilyKind),
    Eisenstein,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Curve(k) => write!(f, "{k}"),
            Target::Eisenstein => write!(f, "eisenstein"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("eisenstein") {
            Ok(Target::Eisenstein)
        } else {
            Ok(Target::Curve(s.parse()?))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub label: String,
    pub discriminant: String,
    pub cyclotomic_power: u32,
    pub modulus: String,
}

impl From<&TwistCharacter> for CharacterReport {
    fn from(c: &TwistCharacter) -> Self {
        CharacterReport {
            label: c.label(),
            discriminant: c.discriminant().to_string(),
            cyclotomic_power: c.omega_power,
            modulus: c.modulus().to_string(),
        }
    }
}

/// One comparison at a prime `p`, made at a prime of `K_n` of norm `q = p^f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRow {
    pub p: u64,
    pub residue_degree: u32,
    /// `q mod ℓ`
    pub q_residue: u64,
    /// Candidate traces `ā` of the fibre mod λ.
    pub lhs: Vec<String>,
    /// Trace and determinant predicted by the target under the twist.
    pub rhs: Vec<String>,
    /// Values of the twist character(s) at `q`.
    pub twist_values: Vec<u64>,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub family: String,
    pub target: String,
    pub mode: String,
    pub ell: u64,
    pub residue: String,
    pub x0: String,
    pub prime_range: u64,
    pub lifted_traces: Vec<String>,
    pub twisted_lift: bool,
    /// The character (curve target) or pair (Eisenstein target) found.
    pub twist: Option<Vec<CharacterReport>>,
    pub candidates_tested: usize,
    pub search_exhausted: bool,
    pub per_prime: Vec<PrimeRow>,
    pub verdict: Verdict,
}

struct RowData {
    p: u64,
    f: u32,
    q_mod: u64,
    a_cands: Vec<Elem>,
    /// Trace of the target fibre (curve target only).
    a_target: Option<i128>,
}

fn render_elem(gf: &Gf, a: Elem) -> String {
    let c = gf.to_poly(a);
    if gf.degree() == 1 {
        c.coeff(0).to_string()
    } else {
        let mut v: Vec<u64> = c.coeffs().to_vec();
        v.resize(gf.degree(), 0);
        format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Test whether the fibre of `family` at `x0` is congruent mod a prime above
/// `ell` to the target, up to a twist, at every good `p ≤ pmax`.
pub fn congruence_check(
    family: &CurveFamily,
    target: Target,
    x0: Rational64,
    ell: u64,
    pmax: u64,
    bound: u64,
) -> Result<CongruenceReport> {
    if ell % 2 == 0 || !is_prime(ell) {
        return Err(Error::InvalidPrime(ell));
    }
    let n = family.ring_spec.n();
    if n % ell != 0 {
        return Err(Error::EllDoesNotDivide { ell, n });
    }
    let lift = lift_traces(family.expected_orders(), &family.expected_traces, ell)?;
    let target_family = match (target, lift.reducible) {
        (Target::Eisenstein, true) => None,
        (Target::Curve(kind), false) => {
            let lifted = family_from_traces(&lift.traces)?;
            if lifted.kind != kind {
                return Err(Error::BranchMismatch(format!(
                    "the lifted triple belongs to {}, not {kind}",
                    lifted.kind
                )));
            }
            Some(family_from_kind(kind)?)
        }
        (Target::Eisenstein, false) => {
            return Err(Error::BranchMismatch(
                "the lifted triple is irreducible; use a curve target".into(),
            ))
        }
        (Target::Curve(_), true) => {
            return Err(Error::BranchMismatch(
                "the lifted triple is reducible; use the eisenstein target".into(),
            ))
        }
    };
    if let Some(t) = &target_family {
        if t.ring_spec.degree() != 1 {
            return Err(Error::Unsupported(format!(
                "curve targets with multiplication by a field of degree {}",
                t.ring_spec.degree()
            )));
        }
    }
    let fibre = specialize(family, x0)?;
    let target_fibre = target_family.as_ref().map(|t| specialize(t, x0)).transpose()?;
    let primes: Vec<u64> = primes_up_to(pmax)
        .into_iter()
        .filter(|&p| {
            p != 2
                && p != ell
                && !fibre.is_bad(p)
                && !target_fibre.as_ref().is_some_and(|c| c.is_bad(p))
        })
        .collect();
    if primes.is_empty() {
        return Err(Error::NoGoodPrimes);
    }
    let gf = Gf::with_modulus(lift.residue.modulus());
    let e = lift.residue.ramification_e();

    let rows: Vec<RowData> = primes
        .par_iter()
        .map(|&p| -> Result<RowData> {
            let f = residue_degree(p, n);
            let la = l_polynomial(&fibre, p, bound)?.base_change(f);
            let a_cands = if la.genus == 1 {
                vec![int_in(&gf, -la.coeffs[1])]
            } else {
                collapse_roots(&la, &gf, e)
            };
            let a_target = match &target_fibre {
                Some(c) => Some(-l_polynomial(c, p, bound)?.base_change(f).coeffs[1]),
                None => None,
            };
            Ok(RowData {
                p,
                f,
                q_mod: mod_pow(p, f as u64, ell),
                a_cands,
                a_target,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut odd_bad: Vec<u64> = vec![ell];
    odd_bad.extend(fibre.bad_primes.iter().copied());
    if let Some(c) = &target_fibre {
        odd_bad.extend(c.bad_primes.iter().copied());
    }
    let (chars, capped) = candidate_characters(&odd_bad, ell, CANDIDATE_CAP);
    let unfactored = fibre.unfactored.is_some()
        || target_fibre.as_ref().is_some_and(|c| c.unfactored.is_some());
    let search_exhausted = !capped && !unfactored;
    let values: Vec<Vec<u64>> = chars
        .iter()
        .map(|c| rows.iter().map(|r| c.value_at(r.p, r.f)).collect())
        .collect();
    let fe = |v: u64| gf.from_int(v as i64);

    // (rhs strings, matched) for a row under the given character values
    let curve_eval = |r: &RowData, v: u64| -> (Vec<String>, bool) {
        let a = gf.mul(fe(v), int_in(&gf, r.a_target.expect("curve target")));
        let det_ok = v * v % ell == 1;
        let det = fe(v * v % ell * r.q_mod % ell);
        (
            vec![render_elem(&gf, a), render_elem(&gf, det)],
            det_ok && r.a_cands.contains(&a),
        )
    };
    let eis_eval = |r: &RowData, v1: u64, v2: u64| -> (Vec<String>, bool) {
        let a = fe((v1 + v2 * r.q_mod) % ell);
        (
            vec![render_elem(&gf, fe(v1)), render_elem(&gf, fe(v2 * r.q_mod % ell))],
            v1 * v2 % ell == 1 && r.a_cands.contains(&a),
        )
    };

    let (found, tested): (Option<Vec<usize>>, usize) = if target_family.is_some() {
        let found = (0..chars.len())
            .find(|&c| rows.iter().zip(&values[c]).all(|(r, &v)| curve_eval(r, v).1));
        (found.map(|c| vec![c]), chars.len())
    } else {
        let mut reps: Vec<usize> = Vec::new();
        for c in 0..chars.len() {
            if !reps.iter().any(|&r| values[r] == values[c]) {
                reps.push(c);
            }
        }
        let mut found = None;
        'outer: for &c1 in &reps {
            for &c2 in &reps {
                let ok = rows
                    .iter()
                    .enumerate()
                    .all(|(i, r)| eis_eval(r, values[c1][i], values[c2][i]).1);
                if ok {
                    found = Some(vec![c1, c2]);
                    break 'outer;
                }
            }
        }
        (found, reps.len() * reps.len())
    };

    // rows are reported under the found twist, or the trivial one
    let shown: Vec<usize> = found.clone().unwrap_or_else(|| {
        let triv = chars
            .iter()
            .position(|c| *c == TwistCharacter::trivial(ell))
            .expect("trivial character is a candidate");
        if target_family.is_some() {
            vec![triv]
        } else {
            vec![triv, triv]
        }
    });
    let per_prime: Vec<PrimeRow> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let tv: Vec<u64> = shown.iter().map(|&c| values[c][i]).collect();
            let (rhs, matched) = if target_family.is_some() {
                curve_eval(r, tv[0])
            } else {
                eis_eval(r, tv[0], tv[1])
            };
            PrimeRow {
                p: r.p,
                residue_degree: r.f,
                q_residue: r.q_mod,
                lhs: r.a_cands.iter().map(|&a| render_elem(&gf, a)).collect(),
                rhs,
                twist_values: tv,
                matched,
            }
        })
        .collect();

    let verdict = if found.is_some() {
        Verdict::Verified
    } else if rows.iter().any(|r| r.a_cands.is_empty()) || !search_exhausted {
        Verdict::Inconclusive
    } else {
        Verdict::Refuted
    };
    let x0s = if x0.denom().is_one() {
        x0.numer().to_string()
    } else {
        x0.to_string()
    };
    Ok(CongruenceReport {
        family: family.kind.to_string(),
        target: target.to_string(),
        mode: if target_family.is_some() {
            "curve_target".into()
        } else {
            "eisenstein_target".into()
        },
        ell,
        residue: lift.residue.describe(),
        x0: x0s,
        prime_range: pmax,
        lifted_traces: lift.traces.iter().map(|t| t.to_string()).collect(),
        twisted_lift: lift.twisted,
        twist: found.map(|cs| cs.iter().map(|&c| CharacterReport::from(&chars[c])).collect()),
        candidates_tested: tested,
        search_exhausted,
        per_prime,
        verdict,
    })
}
