//! Exact linear algebra over [`Field`]s.
//!
//! Everything downstream is a [`LinearMap`] between tensor powers of small
//! spaces, stored as sparse columns. Ranks, kernels and solves go through
//! sparse row reduction in [`echelon`].

pub mod echelon;
pub mod field;
pub mod map;
pub mod rat;
pub mod subspace;

pub use echelon::{CancelToken, Echelon};
pub use field::{Elem, Field, FieldSpec};
pub use map::{LinearMap, SparseVec, TensorShape};
pub use rat::Rat;
pub use subspace::Subspace;

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("vector is not in the subspace")]
    NotInSubspace,
    #[error("bad field: {0}")]
    BadField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cancelled")]
    Cancelled,
}

/// A field element bundled with its field, for callers who do not want to
/// thread the [`Field`] handle themselves.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    value: Elem,
}

impl Scalar {
    pub fn new(field: &Field, value: Elem) -> Scalar {
        Scalar { field: field.clone(), value }
    }

    pub fn parse(field: &Field, s: &str) -> Result<Scalar, LinalgError> {
        Ok(Scalar::new(field, field.parse(s)?))
    }

    pub fn from_i64(field: &Field, n: i64) -> Scalar {
        Scalar::new(field, field.from_i64(n))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn same(&self, o: &Scalar) -> Result<(), LinalgError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch(self.field.name(), o.field.name()))
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar, LinalgError> {
        self.same(o)?;
        Ok(Scalar::new(&self.field, self.field.add(&self.value, &o.value)))
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar, LinalgError> {
        self.same(o)?;
        Ok(Scalar::new(&self.field, self.field.sub(&self.value, &o.value)))
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar, LinalgError> {
        self.same(o)?;
        Ok(Scalar::new(&self.field, self.field.mul(&self.value, &o.value)))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, LinalgError> {
        self.same(o)?;
        Ok(Scalar::new(&self.field, self.field.div(&self.value, &o.value)?))
    }

    pub fn inv(&self) -> Result<Scalar, LinalgError> {
        Ok(Scalar::new(&self.field, self.field.inv(&self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, LinalgError> {
        Ok(Scalar::new(&self.field, self.field.pow(&self.value, e)?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(&self.value))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field.name())
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics when the operands live in different fields.
        impl std::ops::$tr for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$checked(o).expect("scalar operation")
            }
        }
        impl std::ops::$tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}
scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);
scalar_op!(Div, div, checked_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(&self.field, self.field.neg(&self.value))
    }
}
