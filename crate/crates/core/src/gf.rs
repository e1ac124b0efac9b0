//! Table-driven finite fields `F_q`, `q = p^k`, for point counting.
//!
//! Nonzero elements are stored as discrete logarithms to a fixed primitive
//! element; addition goes through a Zech logarithm table. Every field
//! operation is then a table lookup plus an addition mod `q - 1`.

use crate::fp_poly::{digits, FpPoly};

/// A field element in logarithmic form. `Elem::ZERO` is the additive identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(u32::MAX);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

#[derive(Debug, Clone)]
pub struct Gf {
    p: u64,
    k: usize,
    q: u64,
    modulus: FpPoly,
    /// log -> base-p index of the element's coefficient vector
    exp: Vec<u32>,
    /// index -> log (entry 0 unused)
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i)
    zech: Vec<u32>,
}

impl Gf {
    /// `F_{p^k}` with the first irreducible modulus of degree `k`.
    pub fn new(p: u64, k: usize) -> Self {
        let modulus = if k == 1 {
            FpPoly::x(p)
        } else {
            FpPoly::first_irreducible(p, k)
        };
        Self::with_modulus(&modulus)
    }

    /// `F_p[X]/(modulus)` for a monic irreducible `modulus`.
    pub fn with_modulus(modulus: &FpPoly) -> Self {
        let p = modulus.modulus();
        let modulus = modulus.monic();
        let k = modulus.degree().expect("nonzero modulus");
        assert!(k >= 1, "modulus must have positive degree");
        let q = p.checked_pow(k as u32).expect("field size overflow");
        assert!(q < u32::MAX as u64, "field too large for table arithmetic");
        let order = q - 1;

        // find a generator: first element (by index) whose powers cover F_q^*
        let mut exp = vec![0u32; order as usize];
        let found = (1..q).any(|g| {
                let gen_poly = FpPoly::new(p, digits(g, p, k));
                let mut cur = FpPoly::constant(p, 1);
                for i in 0..order {
                    exp[i as usize] = encode(&cur, p, k) as u32;
                    if i > 0 && cur.is_one() {
                        return false;
                    }
                    cur = cur.mul_mod(&gen_poly, &modulus);
                }
                cur.is_one()
            });
        assert!(found, "modulus is not irreducible");

        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let zech = exp
            .iter()
            .map(|&e| {
                let mut c = digits(e as u64, p, k);
                c[0] = (c[0] + 1) % p;
                let idx = index_of(&c, p);
                if idx == 0 {
                    u32::MAX
                } else {
                    log[idx as usize]
                }
            })
            .collect();
        Gf {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            zech,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    fn order(&self) -> u32 {
        (self.q - 1) as u32
    }

    pub fn one(&self) -> Elem {
        Elem(0)
    }

    /// The primitive element used for logarithms.
    pub fn generator(&self) -> Elem {
        Elem(1 % self.order())
    }

    /// Element from its base-p coefficient index.
    pub fn from_index(&self, idx: u64) -> Elem {
        assert!(idx < self.q);
        if idx == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[idx as usize])
        }
    }

    pub fn to_index(&self, a: Elem) -> u64 {
        if a.is_zero() {
            0
        } else {
            self.exp[a.0 as usize] as u64
        }
    }

    /// Coefficients in the basis `1, X, …, X^{k-1}` of `F_p[X]/(modulus)`.
    pub fn to_poly(&self, a: Elem) -> FpPoly {
        FpPoly::new(self.p, digits(self.to_index(a), self.p, self.k))
    }

    pub fn from_poly(&self, f: &FpPoly) -> Elem {
        let r = f.rem(&self.modulus);
        let mut c = r.coeffs().to_vec();
        c.resize(self.k, 0);
        self.from_index(index_of(&c, self.p))
    }

    pub fn from_int(&self, c: i64) -> Elem {
        let r = c.rem_euclid(self.p as i64) as u64;
        self.from_index(r)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = a.0 as u64 + b.0 as u64;
        Elem((s % self.order() as u64) as u32)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let ord = self.order();
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + ord - a.0 };
        let z = self.zech[d as usize];
        if z == u32::MAX {
            Elem::ZERO
        } else {
            Elem(((a.0 as u64 + z as u64) % ord as u64) as u32)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        let half = self.order() / 2;
        Elem(((a.0 as u64 + half as u64) % self.order() as u64) as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        Elem((self.order() - a.0) % self.order())
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a.is_zero() {
            return if e == 0 { self.one() } else { Elem::ZERO };
        }
        Elem(((a.0 as u64 * (e % self.order() as u64)) % self.order() as u64) as u32)
    }

    /// Quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at zero.
    pub fn quadratic_character(&self, a: Elem) -> i32 {
        if a.is_zero() {
            0
        } else if a.0 % 2 == 0 || self.p == 2 {
            1
        } else {
            -1
        }
    }

    /// All elements, zero first, then in logarithm order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain((0..self.order()).map(Elem))
    }

    /// Elements of the subfield `F_{p^j}` for `j | k`.
    pub fn subfield_elements(&self, j: usize) -> Vec<Elem> {
        assert!(self.k % j == 0, "subfield degree must divide field degree");
        let sub_order = self.p.pow(j as u32) - 1;
        let step = (self.order() as u64 / sub_order) as u32;
        std::iter::once(Elem::ZERO)
            .chain((0..sub_order as u32).map(|i| Elem(i * step)))
            .collect()
    }

    /// Evaluate an integer polynomial (little-endian) by Horner's rule.
    pub fn eval_int_poly(&self, coeffs: &[Elem], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// An element bundled with its field, for code generic over rings.
#[derive(Clone, Copy, Debug)]
pub struct FieldElem<'a> {
    pub field: &'a Gf,
    pub value: Elem,
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

fn encode(f: &FpPoly, p: u64, k: usize) -> u64 {
    let mut c = f.coeffs().to_vec();
    c.resize(k, 0);
    index_of(&c, p)
}

fn index_of(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}
