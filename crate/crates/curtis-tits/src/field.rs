//! Exact arithmetic in GF(p^m) together with its Frobenius automorphism group.
//!
//! A [`FieldCtx`] fixes the prime `p`, the extension degree `m` and a monic
//! irreducible modulus from a built-in table, so the same `(p, m)` always
//! yields bit-identical arithmetic. Elements are stored as indices into the
//! canonical enumeration of coefficient vectors; all operations are table
//! lookups after construction.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported extension degree. Bounded by the modulus table.
pub const MAX_DEG: usize = 4;

/// An element of GF(p^m), canonically reduced.
///
/// The raw value encodes the coefficient vector `(c_0, .., c_{m-1})` of the
/// polynomial-basis representation as `sum c_i p^i`; equality is structural.
/// Interpretation requires the owning [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);
}

/// A field automorphism x -> x^(p^r); r = 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldAut(pub usize);

/// Built-in monic irreducible moduli, one per supported (p, m).
///
/// Coefficients are listed constant-term first, including the leading 1.
/// For m = 1 the modulus is x itself and GF(p) is the prime field.
const MODULUS_TABLE: &[(u64, usize, &[u8])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (3, 1, &[0, 1]),
    (3, 2, &[2, 2, 1]), // x^2 + 2x + 2
    (5, 1, &[0, 1]),
    (7, 1, &[0, 1]),
];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Context for exact GF(p^m) arithmetic.
#[derive(Clone)]
pub struct FieldCtx {
    pub p: u64,
    pub m: usize,
    /// Modulus coefficients, constant term first, leading coefficient 1.
    pub modulus: Vec<u8>,
    q: u16,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    /// frob_t[r * q + e] = e^(p^r) for 0 <= r < m.
    frob_t: Vec<u16>,
    coeff_t: Vec<[u8; MAX_DEG]>,
    primitive: FieldElem,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(GF({}^{}))", self.p, self.m)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}
impl Eq for FieldCtx {}

/// Raw polynomial arithmetic over GF(p), used only while building the tables.
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u64) -> Vec<u8> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
        }
    }
    // reduce by the monic modulus
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for k in 0..m {
            let sub = (c * modulus[k] as u64) % p;
            prod[d - m + k] = (prod[d - m + k] + p - sub) % p;
        }
    }
    prod.truncate(m.max(1));
    prod.iter().map(|&c| c as u8).collect()
}

impl FieldCtx {
    /// Build the context for GF(p^m) from the built-in modulus table.
    pub fn new(p: u64, m: usize) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = MODULUS_TABLE
            .iter()
            .find(|&&(tp, tm, _)| tp == p && tm == m)
            .map(|&(_, _, coeffs)| coeffs.to_vec())
            .ok_or(Error::UnsupportedField { p, m })?;
        let q64 = p.pow(m as u32);
        debug_assert!(q64 <= u16::MAX as u64);
        let q = q64 as u16;

        let idx_of = |coeffs: &[u8]| -> u16 {
            let mut v = 0u64;
            for i in (0..m).rev() {
                v = v * p + coeffs[i] as u64;
            }
            v as u16
        };
        let coeffs_of = |idx: u16| -> Vec<u8> {
            let mut v = idx as u64;
            let mut out = vec![0u8; m];
            for c in out.iter_mut() {
                *c = (v % p) as u8;
                v /= p;
            }
            out
        };

        let qs = q as usize;
        let mut add_t = vec![0u16; qs * qs];
        let mut mul_t = vec![0u16; qs * qs];
        let mut neg_t = vec![0u16; qs];
        let mut inv_t = vec![0u16; qs];
        let mut coeff_t = vec![[0u8; MAX_DEG]; qs];

        for a in 0..qs {
            let ca = coeffs_of(a as u16);
            for (k, &c) in ca.iter().enumerate() {
                coeff_t[a][k] = c;
            }
            let cneg: Vec<u8> = ca.iter().map(|&c| ((p - c as u64) % p) as u8).collect();
            neg_t[a] = idx_of(&cneg);
            for b in 0..qs {
                let cb = coeffs_of(b as u16);
                let csum: Vec<u8> = ca
                    .iter()
                    .zip(&cb)
                    .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u8)
                    .collect();
                add_t[a * qs + b] = idx_of(&csum);
                mul_t[a * qs + b] = idx_of(&poly_mul_mod(&ca, &cb, &modulus, p));
            }
        }
        // inverses by exhaustive pairing; inv_t[0] stays 0 and is never consulted
        for a in 1..qs {
            for b in 1..qs {
                if mul_t[a * qs + b] == 1 {
                    inv_t[a] = b as u16;
                    break;
                }
            }
        }
        let mut frob_t = vec![0u16; m * qs];
        for (a, slot) in frob_t.iter_mut().enumerate().take(qs) {
            *slot = a as u16;
        }
        for r in 1..m {
            for a in 0..qs {
                // x^(p^r) = (x^(p^(r-1)))^p
                let prev = frob_t[(r - 1) * qs + a] as usize;
                let mut acc = prev as u16;
                for _ in 1..p {
                    acc = mul_t[acc as usize * qs + prev];
                }
                frob_t[r * qs + a] = acc;
            }
        }
        // smallest element of multiplicative order q - 1
        let mut primitive = FieldElem(1);
        'outer: for a in 1..qs {
            let mut acc = 1u16;
            for k in 1..qs as u64 {
                acc = mul_t[acc as usize * qs + a];
                if acc == 1 {
                    if k == q64 - 1 {
                        primitive = FieldElem(a as u16);
                        break 'outer;
                    }
                    break;
                }
            }
        }
        Ok(FieldCtx {
            p,
            m,
            modulus,
            q,
            add_t,
            mul_t,
            neg_t,
            inv_t,
            frob_t,
            coeff_t,
            primitive,
        })
    }

    /// Parse a field description of the form `"p^m"` or `"p"`.
    pub fn parse(s: &str) -> Result<FieldCtx> {
        let (ps, ms) = match s.split_once('^') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let p: u64 = ps
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad field spec '{s}'")))?;
        let m: usize = ms
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad field spec '{s}'")))?;
        FieldCtx::new(p, m)
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The class of x in the polynomial basis (equals 1 in a prime field of degree 1... no:
    /// for m = 1 there is no x; callers should use `primitive()` instead).
    pub fn gen_x(&self) -> FieldElem {
        if self.m == 1 {
            FieldElem(1)
        } else {
            FieldElem(self.p as u16)
        }
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    pub fn from_u64(&self, v: u64) -> FieldElem {
        FieldElem((v % self.p) as u16)
    }

    /// Element from a coefficient vector (length <= m, entries reduced mod p internally).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        let mut v = 0u64;
        for i in (0..self.m).rev() {
            let c = coeffs.get(i).copied().unwrap_or(0) % self.p;
            v = v * self.p + c;
        }
        FieldElem(v as u16)
    }

    pub fn coeffs(&self, a: FieldElem) -> &[u8] {
        &self.coeff_t[a.0 as usize][..self.m]
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add_t[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul_t[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg_t[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldElem(self.inv_t[a.0 as usize]))
    }

    pub fn is_zero(&self, a: FieldElem) -> bool {
        a.0 == 0
    }

    /// a^(p^r). Homomorphic in both + and *; r is reduced mod m.
    pub fn frobenius(&self, r: FieldAut, a: FieldElem) -> FieldElem {
        let r = r.0 % self.m;
        FieldElem(self.frob_t[r * self.q as usize + a.0 as usize])
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        let mut acc = FieldElem(1);
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// All q elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// Serialize as a coefficient vector, e.g. `[1,0]`.
    pub fn elem_string(&self, a: FieldElem) -> String {
        let cs: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", cs.join(","))
    }

    /// Parse the output of [`FieldCtx::elem_string`].
    pub fn elem_from_string(&self, s: &str) -> Result<FieldElem> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidInput(format!("bad field element '{s}'")))?;
        let mut coeffs = Vec::new();
        if !body.trim().is_empty() {
            for part in body.split(',') {
                let c: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad field element '{s}'")))?;
                coeffs.push(c);
            }
        }
        if coeffs.len() > self.m {
            return Err(Error::InvalidInput(format!(
                "element '{s}' has more than m = {} coefficients",
                self.m
            )));
        }
        Ok(self.from_coeffs(&coeffs))
    }

    pub fn name(&self) -> String {
        format!("{}^{}", self.p, self.m)
    }
}
