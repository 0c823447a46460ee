//! Laurent polynomials GF(q)[t, t^-1] with finitely supported exact coefficients.
//!
//! Units are exactly the nonzero monomials c t^k; this is what makes the
//! determinant-is-a-unit test meaningful for matrices over the Laurent ring.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::ring::Ring;
use std::collections::BTreeMap;

/// A Laurent polynomial, exponent -> coefficient, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    pub coeffs: BTreeMap<i64, FieldElem>,
}

impl LaurentPoly {
    pub fn monomial(c: FieldElem, k: i64) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if c != FieldElem::ZERO {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: FieldElem) -> LaurentPoly {
        Self::monomial(c, 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }
}

/// Arithmetic context for GF(q)[t, t^-1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentCtx {
    pub field: FieldCtx,
}

impl LaurentCtx {
    pub fn new(field: FieldCtx) -> LaurentCtx {
        LaurentCtx { field }
    }

    pub fn t(&self, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(self.field.one(), k)
    }

    pub fn scalar(&self, c: FieldElem) -> LaurentPoly {
        LaurentPoly::constant(c)
    }

    /// Evaluate at t = c for nonzero c, landing back in the field.
    pub fn eval(&self, a: &LaurentPoly, c: FieldElem) -> Result<FieldElem> {
        if self.field.is_zero(c) {
            return Err(Error::ZeroInverse);
        }
        let cinv = self.field.inv(c)?;
        let mut acc = self.field.zero();
        for (&k, &coef) in &a.coeffs {
            let base = if k >= 0 { c } else { cinv };
            let pw = self.field.pow(base, k.unsigned_abs());
            acc = self.field.add(acc, self.field.mul(coef, pw));
        }
        Ok(acc)
    }
}

impl Ring for LaurentCtx {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::default()
    }

    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(self.field.one())
    }

    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = a.coeffs.clone();
        for (&k, &c) in &b.coeffs {
            let entry = coeffs.entry(k).or_insert(FieldElem::ZERO);
            *entry = self.field.add(*entry, c);
            if *entry == FieldElem::ZERO {
                coeffs.remove(&k);
            }
        }
        LaurentPoly { coeffs }
    }

    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            coeffs: a
                .coeffs
                .iter()
                .map(|(&k, &c)| (k, self.field.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, FieldElem> = BTreeMap::new();
        for (&ka, &ca) in &a.coeffs {
            for (&kb, &cb) in &b.coeffs {
                let k = ka + kb;
                let entry = coeffs.entry(k).or_insert(FieldElem::ZERO);
                *entry = self.field.add(*entry, self.field.mul(ca, cb));
            }
        }
        coeffs.retain(|_, c| *c != FieldElem::ZERO);
        LaurentPoly { coeffs }
    }

    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.coeffs.is_empty()
    }

    fn is_unit(&self, a: &LaurentPoly) -> bool {
        a.coeffs.len() == 1
    }

    fn inv(&self, a: &LaurentPoly) -> Result<LaurentPoly> {
        if !self.is_unit(a) {
            return Err(Error::SingularMatrix);
        }
        let (&k, &c) = a.coeffs.iter().next().unwrap();
        Ok(LaurentPoly::monomial(self.field.inv(c)?, -k))
    }

    /// Serialize as `{k:[coeffs],...}` in increasing exponent order.
    fn elem_string(&self, a: &LaurentPoly) -> String {
        let parts: Vec<String> = a
            .coeffs
            .iter()
            .map(|(k, c)| format!("{}:{}", k, self.field.elem_string(*c)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}
