//! SL₂ monodromy triples over `O_n`: classification, the trace normal form,
//! lifting away from ℓ, and the induction plan on `[K_n : Q]`.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factorize, lcm, prime_to_part, real_cyclotomic_degree, totient};
use crate::cyclo::{canonical_residue, residue_reduction, RingElement, RingSpec, ResidueData};
use crate::error::{Error, Result};
use crate::fp_poly::FpPoly;
use crate::gf::FieldElem;

/// The operations needed to evaluate trace identities.
pub trait TraceRing: Clone + PartialEq {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// The integer `c` in the ring of `self`.
    fn int(&self, c: i64) -> Self;
}

impl TraceRing for RingElement {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn int(&self, c: i64) -> Self {
        RingElement::from_int(self.spec(), c as i128)
    }
}

impl TraceRing for FieldElem<'_> {
    fn add(&self, other: &Self) -> Self {
        FieldElem {
            field: self.field,
            value: self.field.add(self.value, other.value),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElem {
            field: self.field,
            value: self.field.sub(self.value, other.value),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElem {
            field: self.field,
            value: self.field.mul(self.value, other.value),
        }
    }
    fn int(&self, c: i64) -> Self {
        FieldElem {
            field: self.field,
            value: self.field.from_int(c),
        }
    }
}

/// `κ = x² + y² + z² − xyz − 4`; zero exactly for reducible triples.
pub fn irreducibility_kappa<T: TraceRing>(x: &T, y: &T, z: &T) -> T {
    let sq = x.mul(x).add(&y.mul(y)).add(&z.mul(z));
    sq.sub(&x.mul(y).mul(z)).sub(&x.int(4))
}

/// A 2×2 matrix over `O_n`, `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: RingElement,
    pub b: RingElement,
    pub c: RingElement,
    pub d: RingElement,
}

impl Mat2 {
    pub fn new(a: RingElement, b: RingElement, c: RingElement, d: RingElement) -> Result<Self> {
        let n = a.n();
        for e in [&b, &c, &d] {
            if e.n() != n {
                return Err(Error::RingMismatch {
                    left: n,
                    right: e.n(),
                });
            }
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn from_ints(spec: &Arc<RingSpec>, e: [[i128; 2]; 2]) -> Self {
        let f = |c| RingElement::from_int(spec, c);
        Mat2 {
            a: f(e[0][0]),
            b: f(e[0][1]),
            c: f(e[1][0]),
            d: f(e[1][1]),
        }
    }

    pub fn identity(spec: &Arc<RingSpec>) -> Self {
        Self::from_ints(spec, [[1, 0], [0, 1]])
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        self.a.spec()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn det(&self) -> RingElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> RingElement {
        &self.a + &self.d
    }

    /// Adjugate, which is the inverse when `det = 1`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn is_scalar(&self, s: i128) -> bool {
        self.a.is_int(s) && self.d.is_int(s) && self.b.is_zero() && self.c.is_zero()
    }

    /// Re-express all entries in another ring containing them.
    pub fn embed(&self, target: &Arc<RingSpec>) -> Option<Mat2> {
        Some(Mat2 {
            a: self.a.embed(target)?,
            b: self.b.embed(target)?,
            c: self.c.embed(target)?,
            d: self.d.embed(target)?,
        })
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Conjugacy behaviour of a monodromy matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "class", content = "order", rename_all = "snake_case")]
pub enum TraceClass {
    Identity,
    MinusIdentity,
    QuasiUnipotent(u64),
    FiniteOrder(u64),
    NotAdmissible,
}

impl TraceClass {
    /// Order of the semisimplification.
    pub fn order(self) -> Option<u64> {
        match self {
            TraceClass::Identity => Some(1),
            TraceClass::MinusIdentity => Some(2),
            TraceClass::QuasiUnipotent(m) | TraceClass::FiniteOrder(m) => Some(m),
            TraceClass::NotAdmissible => None,
        }
    }
}

impl fmt::Display for TraceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceClass::Identity => write!(f, "identity"),
            TraceClass::MinusIdentity => write!(f, "minus_identity"),
            TraceClass::QuasiUnipotent(m) => write!(f, "quasi_unipotent({m})"),
            TraceClass::FiniteOrder(m) => write!(f, "finite_order({m})"),
            TraceClass::NotAdmissible => write!(f, "not_admissible"),
        }
    }
}

/// Order `m` of the semisimplification of an SL₂ matrix with trace `t`:
/// 1 for trace 2, 2 for trace −2, otherwise the `m ≥ 3` with `ψ_m(t) = 0`.
pub fn order_of_trace(t: &RingElement) -> Option<u64> {
    if t.is_int(2) {
        return Some(1);
    }
    if t.is_int(-2) {
        return Some(2);
    }
    let d = t.spec().degree() as u64;
    let approx = t.embeddings_f64()[0];
    // φ(m)/2 ≤ d forces m ≤ 8d²
    (3..=8 * d * d + 6).find(|&m| {
        if totient(m) / 2 > d {
            return false;
        }
        let spec = RingSpec::new(m);
        let psi = spec.min_poly();
        // a root of ψ_m under one embedding is a root under all of them
        let val = psi.iter().rev().fold(0.0, |acc, &c| acc * approx + c as f64);
        let scale: f64 = psi.iter().map(|&c| (c as f64).abs()).sum::<f64>()
            * (2.0 + approx.abs()).powi(psi.len() as i32);
        val.abs() <= 1e-9 * scale && t.eval_poly(psi).is_zero()
    })
}

/// Classify an SL₂ matrix by its trace.
pub fn trace_order(sigma: &Mat2) -> Result<TraceClass> {
    if !sigma.det().is_int(1) {
        return Err(Error::DeterminantNotOne { index: 0 });
    }
    let t = sigma.trace();
    Ok(if t.is_int(2) {
        if sigma.is_scalar(1) {
            TraceClass::Identity
        } else {
            TraceClass::QuasiUnipotent(1)
        }
    } else if t.is_int(-2) {
        if sigma.is_scalar(-1) {
            TraceClass::MinusIdentity
        } else {
            TraceClass::QuasiUnipotent(2)
        }
    } else {
        match order_of_trace(&t) {
            Some(m) => TraceClass::FiniteOrder(m),
            None => TraceClass::NotAdmissible,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReflectionClass {
    AllSl2,
    /// Indices (0, 1, 2 for σ₀, σ₁, σ∞) of the two reflections.
    Dihedral { reflections: [usize; 2] },
    Invalid,
}

/// Decide whether the triple lies in SL₂ or is dihedral (two reflections).
pub fn reflection_classify(s0: &Mat2, s1: &Mat2, sinf: &Mat2) -> Result<ReflectionClass> {
    let ms = [s0, s1, sinf];
    let dets: Vec<RingElement> = ms.iter().map(|m| m.det()).collect();
    let prod_det = &(&dets[0] * &dets[1]) * &dets[2];
    if !prod_det.is_int(1) {
        return Ok(ReflectionClass::Invalid);
    }
    if !s0.mul(s1).mul(sinf).is_scalar(1) {
        return Err(Error::ProductNotIdentity);
    }
    if dets.iter().all(|d| d.is_int(1)) {
        return Ok(ReflectionClass::AllSl2);
    }
    let refl: Vec<usize> = (0..3)
        .filter(|&j| dets[j].is_int(-1) && ms[j].trace().is_zero())
        .collect();
    let third_ok = (0..3)
        .filter(|j| !refl.contains(j))
        .all(|j| dets[j].is_int(1));
    Ok(if refl.len() == 2 && third_ok {
        ReflectionClass::Dihedral {
            reflections: [refl[0], refl[1]],
        }
    } else {
        ReflectionClass::Invalid
    })
}

/// A product-one triple in SL₂(O_n) with finite-order semisimplifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTriple {
    /// σ₀, σ₁, σ∞
    pub sigma: [Mat2; 3],
    pub classes: [TraceClass; 3],
    pub orders: [u64; 3],
    pub n: u64,
    pub spec: Arc<RingSpec>,
    pub kappa: RingElement,
    pub traces: [RingElement; 3],
}

impl AdmissibleTriple {
    /// Whether the level violates the `8 ∤ n` hypothesis of the induction.
    pub fn eight_divides_n(&self) -> bool {
        self.n % 8 == 0
    }
}

/// The normal form with `σ₀ = [[x, −1], [1, 0]]`, `σ₁ = [[1, 0], [x − z, 1]]`
/// and `σ∞ = (σ₀σ₁)⁻¹`, so the traces are `(x, 2, z)`.
pub fn from_traces(x: &RingElement, z: &RingElement) -> Result<AdmissibleTriple> {
    let big = RingSpec::new(lcm(x.n(), z.n()));
    let xb = x.embed_into_multiple(&big);
    let zb = z.embed_into_multiple(&big);
    if xb == zb {
        return Err(Error::Reducible(format!(
            "x = z = {xb}, so kappa = (x - z)^2 = 0"
        )));
    }
    let build = |x: &RingElement, z: &RingElement| -> [Mat2; 3] {
        let spec = x.spec();
        let one = RingElement::one(spec);
        let zero = RingElement::zero(spec);
        let s0 = Mat2 {
            a: x.clone(),
            b: -&one,
            c: one.clone(),
            d: zero.clone(),
        };
        let s1 = Mat2 {
            a: one.clone(),
            b: zero.clone(),
            c: x - z,
            d: one.clone(),
        };
        let sinf = s0.mul(&s1).adjugate();
        [s0, s1, sinf]
    };
    let sigma = build(&xb, &zb);
    let mut classes = [TraceClass::NotAdmissible; 3];
    for (j, m) in sigma.iter().enumerate() {
        classes[j] = trace_order(m).map_err(|_| Error::DeterminantNotOne { index: j })?;
        if classes[j] == TraceClass::NotAdmissible {
            return Err(Error::NotAdmissible(format!(
                "{} has trace {} whose eigenvalues are not roots of unity",
                SIGMA_NAMES[j],
                m.trace()
            )));
        }
    }
    let orders = classes.map(|c| c.order().expect("admissible"));
    let n = orders.iter().fold(1, |acc, &m| lcm(acc, m));
    let spec = RingSpec::new(n);
    let xn = xb.embed(&spec).ok_or(Error::NotInRing { n })?;
    let zn = zb.embed(&spec).ok_or(Error::NotInRing { n })?;
    let sigma = build(&xn, &zn);
    let two = RingElement::from_int(&spec, 2);
    let kappa = irreducibility_kappa(&xn, &two, &zn);
    Ok(AdmissibleTriple {
        sigma,
        classes,
        orders,
        n,
        spec,
        kappa,
        traces: [xn, two, zn],
    })
}

pub const SIGMA_NAMES: [&str; 3] = ["sigma0", "sigma1", "sigma_inf"];

/// Which defining property a triple fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// semisimplifications of finite order
    FiniteOrder,
    /// irreducible, κ ≠ 0
    Irreducible,
    /// σ₀σ₁σ∞ = 1
    ProductOne,
    Determinant,
    Level,
    TraceField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }
}

/// Check every defining condition, collecting all violations.
pub fn validate(t: &AdmissibleTriple) -> ValidationReport {
    let mut v = Vec::new();
    let mut push = |condition, detail: String| v.push(Violation { condition, detail });
    let n0 = t.sigma[0].spec().n();
    if t.sigma.iter().any(|m| m.spec().n() != n0) || t.traces.iter().any(|x| x.n() != n0) {
        push(Condition::Level, "entries lie in different rings".into());
        return ValidationReport { violations: v };
    }
    if !t.sigma[0].mul(&t.sigma[1]).mul(&t.sigma[2]).is_scalar(1) {
        push(Condition::ProductOne, "sigma0 sigma1 sigma_inf != 1".into());
    }
    for (j, m) in t.sigma.iter().enumerate() {
        if !m.det().is_int(1) {
            push(Condition::Determinant, format!("det {} = {}", SIGMA_NAMES[j], m.det()));
            continue;
        }
        if m.trace() != t.traces[j] {
            push(Condition::TraceField, format!("trace of {} differs from recorded trace", SIGMA_NAMES[j]));
        }
        match trace_order(m) {
            Ok(TraceClass::NotAdmissible) | Err(_) => {
                push(Condition::FiniteOrder, format!("{} has infinite order", SIGMA_NAMES[j]))
            }
            Ok(c) if c.order() != Some(t.orders[j]) => push(
                Condition::FiniteOrder,
                format!("{} is {c}, recorded order {}", SIGMA_NAMES[j], t.orders[j]),
            ),
            Ok(_) => {}
        }
        let tr = m.trace();
        let in_field = match t.orders[j] {
            1 => tr.is_int(2),
            2 => tr.is_int(-2),
            m => tr.eval_poly(RingSpec::new(m).min_poly()).is_zero(),
        };
        if !in_field {
            push(
                Condition::TraceField,
                format!("trace of {} is not a root of psi_{}", SIGMA_NAMES[j], t.orders[j]),
            );
        }
    }
    let kappa = irreducibility_kappa(&t.traces[0], &t.traces[1], &t.traces[2]);
    if kappa.is_zero() {
        push(Condition::Irreducible, "kappa = 0, the triple is reducible".into());
    }
    let n = t.orders.iter().fold(1, |acc, &m| lcm(acc, m));
    if n != t.n {
        push(Condition::Level, format!("n = {} but lcm of orders is {n}", t.n));
    }
    ValidationReport { violations: v }
}

/// Result of moving a triple from `O_n` to `O_{n′}`, `n′` the prime-to-ℓ part.
#[derive(Clone, Debug)]
pub struct Lift {
    pub ell: u64,
    pub n: u64,
    pub n_prime: u64,
    pub orders_prime: [u64; 3],
    /// Lifted traces `(x′, 2, z′)` in `O_{n′}`.
    pub traces: [RingElement; 3],
    /// The prime λ of `O_n` above ℓ.
    pub residue: ResidueData,
    /// The prime λ′ of `O_{n′}` below λ.
    pub residue_prime: ResidueData,
    pub kappa: RingElement,
    pub reducible: bool,
    /// True when the lift matches `(−x, 2, −z)` rather than `(x, 2, z)`.
    pub twisted: bool,
}

fn eval_in_residue(poly: &FpPoly, alpha: &FpPoly, modulus: &FpPoly) -> FpPoly {
    let p = poly.modulus();
    poly.coeffs()
        .iter()
        .rev()
        .fold(FpPoly::zero(p), |acc, &c| {
            acc.mul_mod(alpha, modulus).add(&FpPoly::constant(p, c))
        })
        .rem(modulus)
}

/// Lift the residues of the traces at the canonical λ | ℓ to conjugates of
/// `θ_{n′_j}`, preferring the sign pattern `(+,+,+)` over `(−,+,−)`.
pub fn lift_traces(orders: [u64; 3], traces: &[RingElement; 3], ell: u64) -> Result<Lift> {
    let res_all_check = ell % 2 == 1 && crate::arith::is_prime(ell);
    if !res_all_check {
        return Err(Error::InvalidPrime(ell));
    }
    if !traces[1].is_int(2) {
        return Err(Error::NotAdmissible("sigma1 must be unipotent (trace 2)".into()));
    }
    let n = orders.iter().fold(1, |acc, &m| lcm(acc, m));
    let spec = RingSpec::new(n);
    let tr: Vec<RingElement> = traces
        .iter()
        .map(|t| t.embed(&spec).ok_or(Error::NotInRing { n }))
        .collect::<Result<_>>()?;
    let orders_prime = orders.map(|m| prime_to_part(m, ell));
    let n_prime = prime_to_part(n, ell);
    let spec_prime = RingSpec::new(n_prime);
    let residue = canonical_residue(&spec, ell)?;
    let theta_prime_image =
        residue.reduce(&RingElement::theta(&spec_prime).embed_into_multiple(&spec));
    let residue_prime = residue_reduction(&spec_prime, ell)?
        .into_iter()
        .find(|r| eval_in_residue(r.modulus(), &theta_prime_image, residue.modulus()).is_zero())
        .expect("some prime of O_n' lies below the chosen prime of O_n");

    let candidates = |j: usize| -> Vec<RingElement> {
        let m = orders_prime[j];
        let mut out: Vec<RingElement> = Vec::new();
        if m == orders[j] {
            if let Some(t) = tr[j].embed(&spec_prime) {
                out.push(t);
            }
        }
        let theta = RingElement::theta(&RingSpec::new(m));
        for c in theta.conjugates() {
            let c = c.embed_into_multiple(&spec_prime);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    };
    let lifted_residue = |c: &RingElement| residue.reduce(&c.embed_into_multiple(&spec));

    for (twisted, sign) in [(false, 1i128), (true, -1i128)] {
        let pick = |j: usize| -> Option<RingElement> {
            let target = residue.reduce(&(&tr[j] * &RingElement::from_int(&spec, sign)));
            candidates(j).into_iter().find(|c| lifted_residue(c) == target)
        };
        if let (Some(x), Some(z)) = (pick(0), pick(2)) {
            let two = RingElement::from_int(&spec_prime, 2);
            let kappa = irreducibility_kappa(&x, &two, &z);
            let reducible = kappa.is_zero();
            return Ok(Lift {
                ell,
                n,
                n_prime,
                orders_prime,
                traces: [x, two, z],
                residue,
                residue_prime,
                kappa,
                reducible,
                twisted,
            });
        }
    }
    Err(Error::NoLift(format!(
        "no conjugates of theta_{} and theta_{} match the residues of the traces mod a prime above {ell}",
        orders_prime[0], orders_prime[2]
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanStep {
    pub ell: u64,
    pub n_before: u64,
    pub n_after: u64,
    pub d_before: usize,
    pub d_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionPlan {
    pub n: u64,
    pub steps: Vec<PlanStep>,
    pub terminal: bool,
    pub rejected_reason: Option<String>,
}

/// Strip the smallest odd prime from `n` until `O_n = Z`.
pub fn reduction_plan(n: u64) -> ReductionPlan {
    assert!(n >= 1);
    if n % 8 == 0 {
        return ReductionPlan {
            n,
            steps: vec![],
            terminal: false,
            rejected_reason: Some(format!(
                "8 divides n = {n}; the induction needs the hypothesis that 8 does not divide n"
            )),
        };
    }
    let mut steps = Vec::new();
    let mut cur = n;
    while real_cyclotomic_degree(cur) > 1 {
        let ell = factorize(cur)
            .into_iter()
            .map(|(p, _)| p)
            .find(|&p| p % 2 == 1)
            .expect("d > 1 and 8 does not divide n imply an odd prime factor");
        let next = prime_to_part(cur, ell);
        steps.push(PlanStep {
            ell,
            n_before: cur,
            n_after: next,
            d_before: real_cyclotomic_degree(cur),
            d_after: real_cyclotomic_degree(next),
        });
        cur = next;
    }
    ReductionPlan {
        n,
        steps,
        terminal: true,
        rejected_reason: None,
    }
}

/// The `x0` with `n` dividing the numerator of `x0 − 1`.
pub fn ordinary_candidates(n: u64, x0s: &[Rational64]) -> Result<Vec<Rational64>> {
    let mut out = Vec::new();
    for &x in x0s {
        if x.is_zero() || x == Rational64::from_integer(1) {
            return Err(Error::DegenerateFibre(format!("x0 = {x}")));
        }
        let num = (x - 1).numer().unsigned_abs();
        if num % n == 0 {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn elt(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    fn z(c: i128) -> RingElement {
        RingElement::from_int(&RingSpec::new(1), c)
    }

    #[test]
    fn trace_order_examples() {
        let spec = RingSpec::new(1);
        let u = Mat2::from_ints(&spec, [[1, 0], [1, 1]]);
        assert_eq!(trace_order(&u).unwrap(), TraceClass::QuasiUnipotent(1));
        assert_eq!(trace_order(&Mat2::identity(&spec)).unwrap(), TraceClass::Identity);
        let m = Mat2::from_ints(&spec, [[-1, 0], [0, -1]]);
        assert_eq!(trace_order(&m).unwrap(), TraceClass::MinusIdentity);
        let m = Mat2::from_ints(&spec, [[-1, 1], [0, -1]]);
        assert_eq!(trace_order(&m).unwrap(), TraceClass::QuasiUnipotent(2));
        for (t, m) in [(0, 4), (1, 6), (-1, 3)] {
            let mat = Mat2::from_ints(&spec, [[t, -1], [1, 0]]);
            assert_eq!(trace_order(&mat).unwrap(), TraceClass::FiniteOrder(m));
        }
        let m = Mat2::from_ints(&spec, [[3, -1], [1, 0]]);
        assert_eq!(trace_order(&m).unwrap(), TraceClass::NotAdmissible);
        let m = Mat2::from_ints(&spec, [[2, 0], [0, 1]]);
        assert!(trace_order(&m).is_err());
    }

    #[test]
    fn theta_five_has_order_five() {
        assert_eq!(order_of_trace(&elt("[0,1]@5")), Some(5));
        assert_eq!(order_of_trace(&elt("[0,1]@10")), Some(10));
        // the other conjugate has the same order
        assert_eq!(order_of_trace(&elt("[-1,-1]@5")), Some(5));
        assert_eq!(order_of_trace(&elt("[0,1]@7")), Some(7));
        assert_eq!(order_of_trace(&elt("[1,1]@5")), Some(10));
        assert_eq!(order_of_trace(&elt("[2,1]@5")), None);
    }

    #[test]
    fn numeric_orders_agree() {
        // eigenvalues of X² − tX + 1 are primitive m-th roots of unity
        for (t, m) in [(0.0f64, 4.0f64), (1.0, 6.0), (-1.0, 3.0)] {
            let ang = (t / 2.0).acos();
            assert!((ang - 2.0 * std::f64::consts::PI / m).abs() < 1e-12);
        }
    }

    #[test]
    fn reflections() {
        let spec = RingSpec::new(1);
        let r = Mat2::from_ints(&spec, [[1, 0], [0, -1]]);
        let id = Mat2::identity(&spec);
        assert_eq!(
            reflection_classify(&r, &r, &id).unwrap(),
            ReflectionClass::Dihedral { reflections: [0, 1] }
        );
        let t = from_traces(&z(2), &z(-2)).unwrap();
        assert_eq!(
            reflection_classify(&t.sigma[0], &t.sigma[1], &t.sigma[2]).unwrap(),
            ReflectionClass::AllSl2
        );
        assert_eq!(
            reflection_classify(&r, &id, &id).unwrap(),
            ReflectionClass::Invalid
        );
        let u = Mat2::from_ints(&spec, [[1, 1], [0, 1]]);
        assert!(matches!(
            reflection_classify(&u, &id, &id),
            Err(Error::ProductNotIdentity)
        ));
    }

    #[test]
    fn kappa_examples() {
        assert!(irreducibility_kappa(&z(2), &z(2), &z(2)).is_int(0));
        assert!(irreducibility_kappa(&z(2), &z(2), &z(-2)).is_int(16));
        assert!(irreducibility_kappa(&z(0), &z(2), &z(-1)).is_int(1));
    }

    #[test]
    fn from_traces_j1728_shape() {
        let t = from_traces(&elt("[0]@12"), &elt("[-1]@12")).unwrap();
        assert_eq!(t.orders, [4, 1, 3]);
        assert_eq!(t.n, 12);
        assert_eq!(t.sigma[0], Mat2::from_ints(&t.spec, [[0, -1], [1, 0]]));
        assert_eq!(t.sigma[1], Mat2::from_ints(&t.spec, [[1, 0], [1, 1]]));
        assert!(t.sigma[2].trace().is_int(-1));
        assert!(validate(&t).pass());
    }

    #[test]
    fn from_traces_legendre_shape() {
        let t = from_traces(&z(2), &z(-2)).unwrap();
        assert_eq!(t.orders, [1, 1, 2]);
        assert_eq!(t.n, 2);
        assert_eq!(t.classes[0], TraceClass::QuasiUnipotent(1));
        assert_eq!(t.classes[2], TraceClass::QuasiUnipotent(2));
        assert!(t.kappa.is_int(16));
        assert!(validate(&t).pass());
    }

    #[test]
    fn from_traces_ttv_shape() {
        let t = from_traces(&elt("[2]@10"), &elt("[0,1]@10")).unwrap();
        assert_eq!(t.orders, [1, 1, 10]);
        assert_eq!(t.n, 10);
        assert!(!t.eight_divides_n());
    }

    #[test]
    fn from_traces_errors() {
        assert!(matches!(from_traces(&z(1), &z(1)), Err(Error::Reducible(_))));
        assert!(matches!(
            from_traces(&z(3), &z(1)),
            Err(Error::NotAdmissible(_))
        ));
        let t = from_traces(&elt("[0,1]@8"), &z(2)).unwrap();
        assert!(t.eight_divides_n());
    }

    #[test]
    fn validate_failures() {
        // the all-unipotent trace triple is reducible
        let spec = RingSpec::new(1);
        let s0 = Mat2::from_ints(&spec, [[2, -1], [1, 0]]);
        let s1 = Mat2::identity(&spec);
        let sinf = s0.mul(&s1).adjugate();
        let t = AdmissibleTriple {
            sigma: [s0, s1, sinf],
            classes: [TraceClass::QuasiUnipotent(1), TraceClass::Identity, TraceClass::QuasiUnipotent(1)],
            orders: [1, 1, 1],
            n: 1,
            spec: spec.clone(),
            kappa: z(0),
            traces: [z(2), z(2), z(2)],
        };
        let r = validate(&t);
        assert!(r.fails(Condition::Irreducible));
        assert!(!r.fails(Condition::ProductOne));

        let mut bad = from_traces(&z(2), &z(-2)).unwrap();
        bad.sigma[2] = Mat2::identity(&bad.spec);
        let r = validate(&bad);
        assert!(r.fails(Condition::ProductOne));
    }

    #[test]
    fn lift_examples() {
        let ttv_even = [z(2), z(2), elt("[0,1]@10")]
            .map(|t| t.embed(&RingSpec::new(10)).unwrap());
        let l = lift_traces([1, 1, 10], &ttv_even, 5).unwrap();
        assert_eq!(l.n_prime, 2);
        assert!(l.traces[0].is_int(2) && l.traces[2].is_int(-2));
        assert!(!l.reducible && !l.twisted);
        assert!(l.kappa.is_int(16));

        let ttv_odd = [z(2), z(2), elt("[0,1]@5")].map(|t| t.embed(&RingSpec::new(5)).unwrap());
        let l = lift_traces([1, 1, 5], &ttv_odd, 5).unwrap();
        assert_eq!(l.n_prime, 1);
        assert!(l.traces.iter().all(|t| t.is_int(2)));
        assert!(l.reducible);

        // ℓ coprime to every order: identity on traces
        let j = from_traces(&elt("[0]@12"), &elt("[-1]@12")).unwrap();
        let l = lift_traces(j.orders, &j.traces, 5).unwrap();
        assert_eq!(l.n_prime, 12);
        assert_eq!(l.traces, j.traces);

        assert!(matches!(lift_traces([1, 1, 10], &ttv_even, 2), Err(Error::InvalidPrime(2))));
    }

    #[test]
    fn lift_commutes_with_reduction() {
        for r in [3u64, 5, 7] {
            for n in [r, 2 * r] {
                let spec = RingSpec::new(n);
                for zt in RingElement::theta(&spec).conjugates() {
                    let traces = [RingElement::from_int(&spec, 2), RingElement::from_int(&spec, 2), zt];
                    let l = lift_traces([1, 1, n], &traces, r).unwrap();
                    for j in 0..3 {
                        let up = l.traces[j].embed_into_multiple(&spec);
                        assert_eq!(l.residue.reduce(&up), l.residue.reduce(&traces[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn plan_examples() {
        let p = reduction_plan(10);
        assert_eq!(p.steps.len(), 1);
        assert_eq!((p.steps[0].ell, p.steps[0].n_before, p.steps[0].n_after), (5, 10, 2));
        assert_eq!((p.steps[0].d_before, p.steps[0].d_after), (2, 1));
        assert!(p.terminal);

        let p = reduction_plan(8);
        assert!(!p.terminal);
        assert!(p.rejected_reason.unwrap().contains("8 does not divide n"));

        let p = reduction_plan(15);
        let s: Vec<_> = p.steps.iter().map(|s| (s.ell, s.n_before, s.n_after)).collect();
        assert_eq!(s, vec![(3, 15, 5), (5, 5, 1)]);

        let p = reduction_plan(6);
        assert!(p.steps.is_empty() && p.terminal);
    }

    #[test]
    fn ordinary_examples() {
        let r = |a, b| Rational64::new(a, b);
        assert_eq!(ordinary_candidates(5, &[r(6, 1)]).unwrap(), vec![r(6, 1)]);
        assert!(ordinary_candidates(5, &[r(1, 2)]).unwrap().is_empty());
        assert_eq!(ordinary_candidates(3, &[r(-2, 1)]).unwrap(), vec![r(-2, 1)]);
        assert!(ordinary_candidates(3, &[r(1, 1)]).is_err());
        assert!(ordinary_candidates(3, &[r(0, 1)]).is_err());
    }

    fn small_element() -> impl Strategy<Value = RingElement> {
        (3u64..=12, prop::collection::vec(-5i128..=5, 6)).prop_map(|(n, c)| {
            RingElement::new(&RingSpec::new(n), &c)
        })
    }

    proptest! {
        #[test]
        fn kappa_with_unipotent_middle(x in small_element(), c in prop::collection::vec(-5i128..=5, 6)) {
            let zz = RingElement::new(x.spec(), &c);
            let two = RingElement::from_int(x.spec(), 2);
            let k = irreducibility_kappa(&x, &two, &zz);
            let diff = &x - &zz;
            prop_assert_eq!(k, &diff * &diff);
        }

        #[test]
        fn plan_strictly_descends(n in 1u64..500) {
            let p = reduction_plan(n);
            prop_assert_eq!(p.rejected_reason.is_some(), n % 8 == 0);
            for s in &p.steps {
                prop_assert!(s.ell % 2 == 1);
                prop_assert!(s.d_after < s.d_before);
                prop_assert_eq!(s.n_before % s.ell, 0);
                prop_assert_eq!(s.n_after, prime_to_part(s.n_before, s.ell));
            }
        }
    }
}
