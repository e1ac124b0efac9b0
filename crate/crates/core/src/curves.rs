//! The explicit hyperelliptic families `y² = h(X, t)` attached to the
//! supported triples, and their fibres over rational `t = x0`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, rem_big, trial_factor_big};
use crate::cyclo::{RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::triples::{order_of_trace, AdmissibleTriple};
use crate::zpoly::{discriminant, ZPoly};

/// Trial division bound used when factoring discriminants.
const FACTOR_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// `y² = X(X − 1)(X − t)`
    Legendre,
    /// `y² = X³ − 3tX − 2t²`, `j = 1728/(1 − t)`
    J1728,
    /// `y² = (X + 2)(f_r(X) + 2 − 4t)`
    TtvOdd(u64),
    /// `y² = f_r(X) + 2 − 4t`
    TtvEven(u64),
}

impl FamilyKind {
    pub fn r(self) -> Option<u64> {
        match self {
            FamilyKind::TtvOdd(r) | FamilyKind::TtvEven(r) => Some(r),
            _ => None,
        }
    }

    /// Conductor of the multiplication ring.
    pub fn level(self) -> u64 {
        match self {
            FamilyKind::Legendre => 2,
            FamilyKind::J1728 => 12,
            FamilyKind::TtvOdd(r) => r,
            FamilyKind::TtvEven(r) => 2 * r,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Legendre => write!(f, "legendre"),
            FamilyKind::J1728 => write!(f, "j1728"),
            FamilyKind::TtvOdd(r) => write!(f, "ttv-odd:{r}"),
            FamilyKind::TtvEven(r) => write!(f, "ttv-even:{r}"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("unknown family {s:?}; expected legendre, j1728, ttv-odd:<r> or ttv-even:<r>"));
        let kind = match s.split_once(':') {
            None if s == "legendre" => FamilyKind::Legendre,
            None if s == "j1728" => FamilyKind::J1728,
            Some((name, r)) => {
                let r: u64 = r.parse().map_err(|_| bad())?;
                match name {
                    "ttv-odd" => FamilyKind::TtvOdd(r),
                    "ttv-even" => FamilyKind::TtvEven(r),
                    _ => return Err(bad()),
                }
            }
            None => return Err(bad()),
        };
        if let Some(r) = kind.r() {
            if r % 2 == 0 || !is_prime(r) {
                return Err(Error::Parse(format!("r = {r} must be an odd prime")));
            }
        }
        Ok(kind)
    }
}

/// A family `y² = h(X, t)` over the `t`-line.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub kind: FamilyKind,
    /// Coefficient of `X^i`, as a polynomial in `t`.
    pub hpoly: Vec<ZPoly>,
    pub ring_spec: Arc<RingSpec>,
    /// Traces `(x, y, z)` of the local monodromies at `0, 1, ∞`.
    pub expected_traces: [RingElement; 3],
}

impl CurveFamily {
    pub fn degree(&self) -> usize {
        self.hpoly.len() - 1
    }

    pub fn genus(&self) -> usize {
        (self.degree() - 1) / 2
    }

    /// Orders of the local monodromies.
    pub fn expected_orders(&self) -> [u64; 3] {
        self.expected_traces
            .clone()
            .map(|t| order_of_trace(&t).expect("family traces have finite order"))
    }

    /// `h` written out, e.g. `X^3 - 3*X + 2 - 4*t`.
    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.hpoly.iter().enumerate().rev() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    (0, _) => tpow(j),
                    (_, 0) => xpow(i),
                    _ => format!("{}*{}", xpow(i), tpow(j)),
                };
                terms.push((a.clone(), mono));
            }
        }
        let mut out = String::new();
        for (k, (a, mono)) in terms.into_iter().enumerate() {
            let neg = a.is_negative();
            let mag = a.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
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
}

fn xpow(i: usize) -> String {
    if i == 1 {
        "X".into()
    } else {
        format!("X^{i}")
    }
}

fn tpow(j: usize) -> String {
    if j == 1 {
        "t".into()
    } else {
        format!("t^{j}")
    }
}

/// `(g_r, f_r)`: `g_r` the characteristic polynomial of `−θ_r` and
/// `f_r = X·g_r(X² − 2)`, so that `f_r(2cos φ) = 2cos(rφ)`.
pub fn ttv_polys(r: u64) -> Result<(ZPoly, ZPoly)> {
    if r % 2 == 0 || !is_prime(r) {
        return Err(Error::Config(format!("r = {r} must be an odd prime")));
    }
    let spec = RingSpec::new(r);
    let d = spec.degree();
    let psi = spec.min_poly();
    // g(X) = (−1)^d ψ(−X)
    let g: Vec<i128> = psi
        .iter()
        .enumerate()
        .map(|(i, &c)| if (i + d) % 2 == 1 { -c } else { c })
        .collect();
    let g = ZPoly::from_i128(&g);
    let f = ZPoly::x().mul(&g.compose(&ZPoly::from_i64(&[-2, 0, 1])));
    Ok((g, f))
}

fn lin(c0: i64, c1: i64) -> ZPoly {
    ZPoly::from_i64(&[c0, c1])
}

/// The family of the given kind.
pub fn family_from_kind(kind: FamilyKind) -> Result<CurveFamily> {
    let spec = RingSpec::new(kind.level());
    let int = |c| RingElement::from_int(&spec, c);
    let (hpoly, traces) = match kind {
        FamilyKind::Legendre => (
            // X³ − (1 + t)X² + tX
            vec![lin(0, 0), lin(0, 1), lin(-1, -1), lin(1, 0)],
            [int(2), int(2), int(-2)],
        ),
        FamilyKind::J1728 => (
            vec![
                ZPoly::from_i64(&[0, 0, -2]),
                lin(0, -3),
                lin(0, 0),
                lin(1, 0),
            ],
            [int(0), int(2), int(-1)],
        ),
        FamilyKind::TtvEven(r) | FamilyKind::TtvOdd(r) => {
            let (_, f) = ttv_polys(r)?;
            // f + 2 − 4t with t-polynomial coefficients
            let mut h: Vec<ZPoly> = f.coeffs().iter().map(|c| ZPoly::constant(c.clone())).collect();
            h[0] = h[0].add(&lin(2, -4));
            if let FamilyKind::TtvOdd(_) = kind {
                let mut shifted = vec![ZPoly::zero(); h.len() + 1];
                for (i, c) in h.iter().enumerate() {
                    shifted[i + 1] = shifted[i + 1].add(c);
                    shifted[i] = shifted[i].add(&c.scale(&BigInt::from(2)));
                }
                h = shifted;
            }
            (h, [int(2), int(2), RingElement::theta(&spec)])
        }
    };
    Ok(CurveFamily {
        kind,
        hpoly,
        ring_spec: spec,
        expected_traces: traces,
    })
}

/// Match a trace tuple `(x, 2, z)` against the supported families, up to the
/// sign twist `(x, y, z) ↦ (−x, y, −z)`.
pub fn family_from_traces(traces: &[RingElement; 3]) -> Result<CurveFamily> {
    let unsupported = || {
        Error::Unsupported(format!(
            "traces ({}, {}, {}) do not belong to a supported family",
            traces[0], traces[1], traces[2]
        ))
    };
    if !traces[1].is_int(2) {
        return Err(unsupported());
    }
    let (x, z) = (&traces[0], &traces[2]);
    let neg = |e: &RingElement| -e;
    let (x, z) = if x.is_int(-2) || (x.is_zero() && z.is_int(1)) {
        (neg(x), neg(z))
    } else {
        (x.clone(), z.clone())
    };
    let kind = if x.is_int(2) {
        if z.is_int(-2) {
            FamilyKind::Legendre
        } else {
            match order_of_trace(&z) {
                Some(m) if m % 2 == 0 && m / 2 >= 3 && is_prime(m / 2) => FamilyKind::TtvEven(m / 2),
                Some(m) if m % 2 == 1 && m >= 3 && is_prime(m) => FamilyKind::TtvOdd(m),
                _ => return Err(unsupported()),
            }
        }
    } else if x.is_zero() && z.is_int(-1) {
        FamilyKind::J1728
    } else {
        return Err(unsupported());
    };
    family_from_kind(kind)
}

/// The family whose local monodromies match the triple's traces.
pub fn family_from_triple(triple: &AdmissibleTriple) -> Result<CurveFamily> {
    family_from_traces(&triple.traces)
}

/// `disc_X(h)` as a polynomial in `t`.
pub fn disc_in_t(family: &CurveFamily) -> ZPoly {
    discriminant(&family.hpoly)
}

/// `D(t) = c·t^a·(t − 1)^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rigidity {
    pub c: BigInt,
    pub a: u32,
    pub b: u32,
}

/// Write `D` as `c·t^a·(t − 1)^b` if possible.
pub fn rigidity_decomposition(disc: &ZPoly) -> Option<Rigidity> {
    if disc.is_zero_poly() {
        return None;
    }
    let mut d = disc.clone();
    let mut a = 0;
    while d.degree()? > 0 && d.coeff(0).is_zero() {
        d = d.div_exact(&ZPoly::x())?;
        a += 1;
    }
    let t1 = ZPoly::from_i64(&[-1, 1]);
    let mut b = 0;
    while d.degree()? > 0 {
        d = d.div_exact(&t1)?;
        b += 1;
    }
    Some(Rigidity {
        c: d.coeff(0),
        a,
        b,
    })
}

/// The fibre `y² = h(X)` at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedCurve {
    pub kind: FamilyKind,
    pub x0: Rational64,
    pub poly: ZPoly,
    pub genus: usize,
    pub disc: BigInt,
    /// Primes of bad reduction found by trial division (always contains 2).
    pub bad_primes: Vec<u64>,
    /// Part of `disc · lc` left after trial division, if any.
    pub unfactored: Option<BigInt>,
}

impl SpecializedCurve {
    /// Whether `p` is 2 or divides the discriminant or leading coefficient.
    pub fn is_bad(&self, p: u64) -> bool {
        p == 2 || rem_big(&self.disc, p) == 0 || rem_big(&self.poly.lead(), p) == 0
    }
}

/// Largest `s` with `s²` dividing `n` (up to the trial bound).
fn square_part(n: &BigInt) -> BigInt {
    let (primes, _) = trial_factor_big(n, FACTOR_BOUND);
    let mut s = BigInt::one();
    for p in primes {
        let bp = BigInt::from(p);
        let mut m = n.abs();
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        s *= bp.pow(e / 2);
    }
    s
}

/// Substitute `t = x0 = a/b`, scale by `b²` and remove square content.
pub fn specialize(family: &CurveFamily, x0: Rational64) -> Result<SpecializedCurve> {
    if x0.is_zero() || x0.is_one() {
        return Err(Error::DegenerateFibre(format!(
            "x0 = {x0} is a branch point of the family"
        )));
    }
    let a = BigInt::from(*x0.numer());
    let b = BigInt::from(*x0.denom());
    let coeffs: Vec<BigInt> = family
        .hpoly
        .iter()
        .map(|c| {
            assert!(c.degree().unwrap_or(0) <= 2, "t-degree above 2");
            c.coeffs()
                .iter()
                .enumerate()
                .map(|(j, cj)| cj * a.pow(j as u32) * b.pow(2 - j as u32))
                .sum()
        })
        .collect();
    let h = ZPoly::new(coeffs);
    let s = square_part(&h.content());
    let h = ZPoly::new(h.coeffs().iter().map(|c| c / (&s * &s)).collect());
    let disc = h.discriminant();
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let lead = h.lead();
    let mut bad: Vec<u64> = vec![2];
    let mut rest = BigInt::one();
    for n in [&disc, &lead] {
        let (ps, cof) = trial_factor_big(n, FACTOR_BOUND);
        bad.extend(ps);
        rest = rest.lcm(&cof);
    }
    bad.sort_unstable();
    bad.dedup();
    let genus = (h.degree().expect("nonzero") - 1) / 2;
    Ok(SpecializedCurve {
        kind: family.kind,
        x0,
        poly: h,
        genus,
        disc,
        bad_primes: bad,
        unfactored: if rest.is_one() { None } else { Some(rest) },
    })
}

/// Parse `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("expected a rational p/q, got {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
