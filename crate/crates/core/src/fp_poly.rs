//! Dense polynomials over a prime field `F_p`, with factorization.
//!
//! Coefficients are little-endian and always reduced; the zero polynomial is
//! the empty vector. Factoring is deterministic: squarefree decomposition,
//! distinct-degree splitting, then Cantor-Zassenhaus with trial polynomials
//! taken in a fixed order instead of at random.

use crate::arith::mod_inv;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    pub fn from_i128(p: u64, coeffs: &[i128]) -> Self {
        Self::new(
            p,
            coeffs.iter().map(|&c| c.rem_euclid(p as i128) as u64).collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = s % self.p;
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| ((c as u128 * s as u128) % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.lead(), self.p))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = mod_inv(divisor.lead(), self.p);
        let p = self.p;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = ((c as u128 * inv as u128) % p as u128) as u64;
            quot[i - dd] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let sub = ((f as u128 * d as u128) % p as u128) as u64;
                rem[i - dd + j] = (rem[i - dd + j] + p - sub) % p;
            }
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u128 % self.p as u128) * c as u128 % self.p as u128) as u64)
            .collect();
        Self::new(self.p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p) as u64
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.p, 1).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    /// `self^(p^k)` modulo `modulus`, by `k` Frobenius steps.
    pub fn frobenius_pow_mod(&self, k: usize, modulus: &Self) -> Self {
        (0..k).fold(self.rem(modulus), |acc, _| acc.pow_mod(self.p, modulus))
    }

    /// `a(X^p)^(1/p)`: the p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        // x ↦ x^(1/p) is the identity on F_p
        Self::new(self.p, c)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
    /// `self = ∏ g^m`, each `g` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        self.sqf_into(1, &mut out);
        out
    }

    fn sqf_into(&self, mult: u32, out: &mut Vec<(Self, u32)>) {
        if self.degree().unwrap_or(0) == 0 {
            return;
        }
        let f = self.monic();
        let d = f.derivative();
        if d.is_zero() {
            f.pth_root().sqf_into(mult * self.p as u32, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div_rem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i * mult));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            c.pth_root().sqf_into(mult * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial:
    /// pairs `(g, k)` where `g` is the product of all irreducible factors of degree `k`.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut k = 0;
        while f.degree().unwrap_or(0) >= 2 * (k + 1) {
            k += 1;
            h = h.pow_mod(self.p, &f);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, k));
            }
        }
        if let Some(d) = f.degree() {
            if d > 0 {
                out.push((f, d));
            }
        }
        out
    }

    /// Splits a product of distinct irreducibles of common degree `k` (p odd).
    pub fn equal_degree(&self, k: usize) -> Vec<Self> {
        let f = self.monic();
        let n = f.degree().unwrap_or(0);
        if n <= k {
            return vec![f];
        }
        let p = self.p;
        let exp_half = (p - 1) / 2;
        let mut seed: u64 = 0;
        loop {
            seed += 1;
            let trial = index_poly(p, seed).rem(&f);
            if trial.degree().unwrap_or(0) == 0 {
                continue;
            }
            // trial^((p^k - 1)/2) = ∏_{i<k} (trial^((p-1)/2))^(p^i)
            let b = trial.pow_mod(exp_half, &f);
            let mut acc = b.clone();
            let mut t = b;
            for _ in 1..k {
                t = t.pow_mod(p, &f);
                acc = acc.mul_mod(&t, &f);
            }
            let g = acc.sub(&Self::constant(p, 1)).gcd(&f);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = f.div_rem(&g).0;
                let mut out = g.equal_degree(k);
                out.extend(h.equal_degree(k));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities, sorted by
    /// coefficient sequence. Requires `p` odd.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        assert!(self.p % 2 == 1, "factorization implemented for odd p");
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for (h, k) in g.distinct_degree() {
                for irr in h.equal_degree(k) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|a, b| a.0.coeffs.cmp(&b.0.coeffs));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(d) => {
                let f = self.factor();
                f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == Some(d)
            }
        }
    }

    /// The first monic irreducible of degree `k` in index order.
    pub fn first_irreducible(p: u64, k: usize) -> Self {
        let count = p.pow(k as u32);
        (0..count)
            .map(|i| {
                let mut c = digits(i, p, k);
                c.push(1);
                Self::new(p, c)
            })
            .find(|f| f.is_irreducible())
            .expect("irreducible polynomials exist in every degree")
    }
}

/// Base-`p` digits of `i`, least significant first, padded to `len`.
pub fn digits(mut i: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(i % p);
        i /= p;
    }
    out
}

/// The polynomial whose base-`p` digit expansion is `i`.
fn index_poly(p: u64, mut i: u64) -> FpPoly {
    let mut c = Vec::new();
    while i > 0 {
        c.push(i % p);
        i /= p;
    }
    FpPoly::new(p, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i128]) -> FpPoly {
        FpPoly::from_i128(p, c)
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::constant(p, 1), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn factor_psi10_mod5() {
        // X^2 - X - 1 = (X + 2)^2 mod 5
        let f = poly(5, &[-1, -1, 1]).factor();
        assert_eq!(f, vec![(poly(5, &[2, 1]), 2)]);
    }

    #[test]
    fn factor_psi7_mod7() {
        let f = poly(7, &[-1, -2, 1, 1]).factor();
        assert_eq!(f, vec![(poly(7, &[-2, 1]), 3)]);
    }

    #[test]
    fn psi5_inert_mod3() {
        assert!(poly(3, &[-1, 1, 1]).is_irreducible());
    }

    #[test]
    fn factor_reconstructs_product() {
        for p in [3u64, 5, 7, 11, 13] {
            // (X^3 + X + 1)^2 (X^2 + 1) (X - 1)^p-ish mixes
            let a = poly(p, &[1, 1, 0, 1]);
            let b = poly(p, &[1, 0, 1]);
            let c = poly(p, &[-1, 1]);
            let f = a.mul(&a).mul(&b).mul(&c).mul(&c).mul(&c);
            let fs = f.factor();
            assert_eq!(product(&fs, p), f.monic(), "p = {p}");
            for (g, _) in &fs {
                assert!(g.is_irreducible());
            }
        }
    }

    #[test]
    fn pth_power_inputs() {
        // X^5 - 1 = (X - 1)^5 over F_5
        let f = poly(5, &[-1, 0, 0, 0, 0, 1]).factor();
        assert_eq!(f, vec![(poly(5, &[-1, 1]), 5)]);
    }

    #[test]
    fn first_irreducible_degrees() {
        for (p, k) in [(3, 2), (5, 3), (7, 4), (3, 5)] {
            let f = FpPoly::first_irreducible(p, k);
            assert_eq!(f.degree(), Some(k));
            assert!(f.is_irreducible());
        }
    }
}
