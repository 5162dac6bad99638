//! Coefficient fields of characteristic 2.
//!
//! Three fields are supported: GF(2) itself, the extensions GF(2^k) and the
//! rational function field GF(2)(x_1, ..., x_n). [`Field`] is the descriptor
//! and [`FieldElement`] a tagged value. Arithmetic on tagged values checks
//! that both operands live in the same field.
//!
//! Hot loops do not go through the tagged type; they use the [`FieldOps`]
//! implementations on the concrete descriptors instead.

pub mod gf2k;
pub mod poly;
pub mod ratfunc;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use gf2k::Gf2kField;
pub use poly::{Gf2Poly, Monomial};
pub use ratfunc::RatFunc;

use crate::linalg::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    DescriptorMismatch { left: String, right: String },
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DescriptorMismatch { left, right } => {
                write!(f, "field descriptor mismatch: {left} vs {right}")
            }
            FieldError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

/// Rational function field over named variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFnField {
    vars: Arc<[String]>,
}

impl RatFnField {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        RatFnField { vars: vars.into_iter().map(Into::into).collect() }
    }

    /// Variables `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        RatFnField::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> RatFunc {
        RatFunc::var(self.nvars(), i)
    }

    pub fn format_poly(&self, p: &Gf2Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::with_capacity(p.len());
        // highest terms first reads more naturally
        for m in p.terms().iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                parts.push("1".to_string());
            } else {
                parts.push(factors.join("*"));
            }
        }
        parts.join("+")
    }

    pub fn format(&self, r: &RatFunc) -> String {
        let num = self.format_poly(r.num());
        if r.den().is_one() {
            return num;
        }
        let wrap = |p: &Gf2Poly, s: String| if p.len() > 1 || s.contains('*') { format!("({s})") } else { s };
        let den = self.format_poly(r.den());
        format!("{}/{}", wrap(r.num(), num), wrap(r.den(), den))
    }
}

impl fmt::Debug for RatFnField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2)({})", self.vars.join(","))
    }
}

/// Field descriptor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Gf2,
    Gf2k(Gf2kField),
    RatFn(RatFnField),
}

impl Field {
    pub fn gf2k(k: u32) -> Option<Field> {
        Gf2kField::new(k).map(Field::Gf2k)
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Gf2 => FieldElement::Gf2(false),
            Field::Gf2k(f) => FieldElement::Gf2k(Gf2kElem::new(*f, 0)),
            Field::RatFn(r) => FieldElement::Rat(RatFunc::zero(r.nvars())),
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            Field::Gf2 => FieldElement::Gf2(true),
            Field::Gf2k(f) => FieldElement::Gf2k(Gf2kElem::new(*f, 1)),
            Field::RatFn(r) => FieldElement::Rat(RatFunc::one(r.nvars())),
        }
    }

    /// Whether `a` is a value of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (Field::Gf2, FieldElement::Gf2(_)) => true,
            (Field::Gf2k(f), FieldElement::Gf2k(e)) => e.field == *f,
            (Field::RatFn(r), FieldElement::Rat(x)) => x.nvars() == r.nvars(),
            _ => false,
        }
    }

    /// Short textual name, the same syntax the PD `field` directive accepts.
    pub fn name(&self) -> String {
        match self {
            Field::Gf2 => "gf2".to_string(),
            Field::Gf2k(f) => format!("gf2k:{}", f.degree()),
            Field::RatFn(r) => format!("ratfn({})", r.vars.join(",")),
        }
    }

    /// Renders an element: "0"/"1" for GF(2), hex for GF(2^k), an expression for rational functions.
    pub fn format(&self, a: &FieldElement) -> String {
        match (self, a) {
            (_, FieldElement::Gf2(b)) => (if *b { "1" } else { "0" }).to_string(),
            (_, FieldElement::Gf2k(e)) => format!("{:#x}", e.bits),
            (Field::RatFn(r), FieldElement::Rat(x)) => r.format(x),
            (_, FieldElement::Rat(x)) => format!("{x:?}"),
        }
    }

    /// Dimension over GF(2) of the span of `elems`.
    ///
    /// Rational functions are brought to a common denominator first; the
    /// numerators are then compared as vectors indexed by monomials.
    pub fn f2_rank(&self, elems: &[FieldElement]) -> Result<usize, FieldError> {
        for e in elems {
            self.check(e)?;
        }
        match self {
            Field::Gf2 => Ok(usize::from(elems.iter().any(|e| !e.is_zero()))),
            Field::Gf2k(f) => {
                let mut m = BitMatrix::new(elems.len(), f.degree() as usize);
                for (i, e) in elems.iter().enumerate() {
                    if let FieldElement::Gf2k(x) = e {
                        for b in 0..f.degree() as usize {
                            if x.bits >> b & 1 == 1 {
                                m.set(i, b, true);
                            }
                        }
                    }
                }
                Ok(m.rank())
            }
            Field::RatFn(_) => {
                let rats: Vec<&RatFunc> = elems
                    .iter()
                    .map(|e| match e {
                        FieldElement::Rat(x) => x,
                        _ => unreachable!(),
                    })
                    .collect();
                let mut nums: Vec<Gf2Poly> = Vec::with_capacity(rats.len());
                for (i, x) in rats.iter().enumerate() {
                    let mut p = x.num().clone();
                    for (j, y) in rats.iter().enumerate() {
                        if i != j {
                            p = p.mul(y.den());
                        }
                    }
                    nums.push(p);
                }
                let mut monos: Vec<Monomial> = nums.iter().flat_map(|p| p.terms().iter().cloned()).collect();
                monos.sort_unstable();
                monos.dedup();
                let mut m = BitMatrix::new(nums.len(), monos.len());
                for (i, p) in nums.iter().enumerate() {
                    for t in p.terms() {
                        let col = monos.binary_search(t).expect("monomial collected above");
                        m.set(i, col, true);
                    }
                }
                Ok(m.rank())
            }
        }
    }

    pub fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch { left: self.name(), right: a.descriptor_name() })
        }
    }
}

/// Element of GF(2^k) tagged with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf2kElem {
    pub field: Gf2kField,
    pub bits: u64,
}

impl Gf2kElem {
    pub fn new(field: Gf2kField, bits: u64) -> Self {
        assert!(field.contains(bits), "{bits:#x} is not reduced modulo {field:?}");
        Gf2kElem { field, bits }
    }
}

/// A value in one of the coefficient fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldElement {
    Gf2(bool),
    Gf2k(Gf2kElem),
    Rat(RatFunc),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Gf2(b) => !*b,
            FieldElement::Gf2k(e) => e.bits == 0,
            FieldElement::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Gf2(b) => *b,
            FieldElement::Gf2k(e) => e.bits == 1,
            FieldElement::Rat(r) => r.is_one(),
        }
    }

    fn descriptor_name(&self) -> String {
        match self {
            FieldElement::Gf2(_) => "gf2".to_string(),
            FieldElement::Gf2k(e) => format!("gf2k:{} ({:?})", e.field.degree(), e.field),
            FieldElement::Rat(r) => format!("ratfn in {} variables", r.nvars()),
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        let ok = match (self, other) {
            (FieldElement::Gf2(_), FieldElement::Gf2(_)) => true,
            (FieldElement::Gf2k(a), FieldElement::Gf2k(b)) => a.field == b.field,
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a.nvars() == b.nvars(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch { left: self.descriptor_name(), right: other.descriptor_name() })
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Gf2(a), FieldElement::Gf2(b)) => FieldElement::Gf2(a ^ b),
            (FieldElement::Gf2k(a), FieldElement::Gf2k(b)) => {
                FieldElement::Gf2k(Gf2kElem { field: a.field, bits: a.bits ^ b.bits })
            }
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Gf2(a), FieldElement::Gf2(b)) => FieldElement::Gf2(a & b),
            (FieldElement::Gf2k(a), FieldElement::Gf2k(b)) => {
                FieldElement::Gf2k(Gf2kElem { field: a.field, bits: a.field.mul(a.bits, b.bits) })
            }
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        match self {
            FieldElement::Gf2(true) => Ok(FieldElement::Gf2(true)),
            FieldElement::Gf2(false) => Err(FieldError::DivisionByZero),
            FieldElement::Gf2k(a) => a
                .field
                .inv(a.bits)
                .map(|bits| FieldElement::Gf2k(Gf2kElem { field: a.field, bits }))
                .ok_or(FieldError::DivisionByZero),
            FieldElement::Rat(r) => r.inv().map(FieldElement::Rat).ok_or(FieldError::DivisionByZero),
        }
    }
}

/// `a + b`, failing on mismatched fields.
pub fn field_add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    a.add(b)
}

/// `a * b`, failing on mismatched fields.
pub fn field_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    a.mul(b)
}

/// `1 / a`, failing on zero.
pub fn field_inv(a: &FieldElement) -> Result<FieldElement, FieldError> {
    a.inv()
}

/// Equality of rational functions by cross-multiplication.
pub fn ratfunc_eq(a: &RatFunc, b: &RatFunc) -> bool {
    a.equals(b)
}

/// Untagged field arithmetic used by the elimination kernels.
pub trait FieldOps {
    type Elem: Clone + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// GF(2) as a [`FieldOps`] backend.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gf2;

impl FieldOps for Gf2 {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    fn inv(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }
}

impl FieldOps for Gf2kField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        Gf2kField::mul(self, *a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        Gf2kField::inv(self, *a)
    }
}

impl FieldOps for RatFnField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero(self.nvars())
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(self.nvars())
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv()
    }
}
