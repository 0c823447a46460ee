//! Context-style ring abstraction shared by the field and the Laurent ring.
//!
//! The ring object owns the arithmetic; elements are plain data. Matrices are
//! generic over this trait so the same determinant/inverse/product code serves
//! GF(q) and GF(q)[t, t^-1].

use crate::error::Result;
use std::fmt::Debug;
use std::hash::Hash;

pub trait Ring {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` has a multiplicative inverse in this ring.
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit; error on non-units.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn elem_string(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

impl Ring for crate::field::FieldCtx {
    type Elem = crate::field::FieldElem;

    fn zero(&self) -> Self::Elem {
        FieldCtxExt::zero(self)
    }
    fn one(&self) -> Self::Elem {
        FieldCtxExt::one(self)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::field::FieldCtx::add(self, *a, *b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        crate::field::FieldCtx::neg(self, *a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::field::FieldCtx::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        crate::field::FieldCtx::is_zero(self, *a)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        !crate::field::FieldCtx::is_zero(self, *a)
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        crate::field::FieldCtx::inv(self, *a)
    }
    fn elem_string(&self, a: &Self::Elem) -> String {
        crate::field::FieldCtx::elem_string(self, *a)
    }
}

// Disambiguation helpers: FieldCtx has inherent zero/one with the same names.
trait FieldCtxExt {
    fn zero(&self) -> crate::field::FieldElem;
    fn one(&self) -> crate::field::FieldElem;
}
impl FieldCtxExt for crate::field::FieldCtx {
    fn zero(&self) -> crate::field::FieldElem {
        crate::field::FieldCtx::zero(self)
    }
    fn one(&self) -> crate::field::FieldElem {
        crate::field::FieldCtx::one(self)
    }
}
