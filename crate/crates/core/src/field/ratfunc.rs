//! Rational functions over GF(2) in a fixed set of variables.
//!
//! Fractions are never brought to lowest terms. Equality is decided by
//! cross-multiplication, and the only normalization applied is removal of a
//! monomial factor common to numerator and denominator.

use core::fmt;

use super::gf2k::Gf2kField;
use super::poly::Gf2Poly;

#[derive(Clone)]
pub struct RatFunc {
    num: Gf2Poly,
    den: Gf2Poly,
}

impl RatFunc {
    /// `num / den`; `None` if `den` is zero.
    pub fn new(num: Gf2Poly, den: Gf2Poly) -> Option<Self> {
        if den.is_zero() || num.nvars() != den.nvars() {
            return None;
        }
        Some(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(p: Gf2Poly) -> Self {
        let den = Gf2Poly::one(p.nvars());
        RatFunc { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc::from_poly(Gf2Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc::from_poly(Gf2Poly::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RatFunc::from_poly(Gf2Poly::var(nvars, i))
    }

    pub fn num(&self) -> &Gf2Poly {
        &self.num
    }

    pub fn den(&self) -> &Gf2Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = Gf2Poly::one(self.den.nvars());
            return self;
        }
        let common = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !common.is_one() {
            let g = Gf2Poly::monomial(common);
            self.num = self.num.exact_div(&g).expect("monomial content divides numerator");
            self.den = self.den.exact_div(&g).expect("monomial content divides denominator");
        }
        self
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc { num: self.num.add(&other.num), den: self.den.clone() }.normalized();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc { num, den: self.den.mul(&other.den) }.normalized()
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }.normalized()
    }

    /// Swaps numerator and denominator.
    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc { num: self.den.clone(), den: self.num.clone() })
    }

    /// Cross-multiplication equality: `a.num * b.den == b.num * a.den`.
    pub fn equals(&self, other: &RatFunc) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Value at a point of GF(2^k)^nvars; `None` when the denominator vanishes there.
    pub fn eval(&self, field: &Gf2kField, point: &[u64]) -> Option<u64> {
        let den = self.den.eval(field, point);
        let inv = field.inv(den)?;
        Some(field.mul(self.num.eval(field, point), inv))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RatFunc {}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(i: usize) -> Gf2Poly {
        Gf2Poly::var(3, i)
    }

    fn frac(n: Gf2Poly, d: Gf2Poly) -> RatFunc {
        RatFunc::new(n, d).unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(w(0), Gf2Poly::zero(3)).is_none());
    }

    #[test]
    fn cross_multiplication_equality() {
        // w1/w2 == (w1 w3)/(w2 w3)
        assert!(frac(w(0), w(1)).equals(&frac(w(0).mul(&w(2)), w(1).mul(&w(2)))));
        assert!(!RatFunc::from_poly(w(0)).equals(&RatFunc::from_poly(w(1))));
        // (w1+w2)/w1 == (w1+w2)^2/(w1^2 + w1 w2)
        let s = w(0).add(&w(1));
        let lhs = frac(s.clone(), w(0));
        let rhs = frac(s.mul(&s), w(0).mul(&w(0)).add(&w(0).mul(&w(1))));
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn product_of_fractions() {
        let a = frac(w(0), w(1));
        let b = frac(w(1), w(2));
        let p = a.mul(&b);
        assert!(p.equals(&frac(w(0), w(2))));
    }

    #[test]
    fn inverse_swaps() {
        let s = RatFunc::from_poly(w(0).add(&w(1)));
        let i = s.inv().unwrap();
        assert_eq!(i.num(), &Gf2Poly::one(3));
        assert_eq!(i.den(), &w(0).add(&w(1)));
        assert!(s.mul(&i).is_one());
        assert!(RatFunc::zero(3).inv().is_none());
    }
}
