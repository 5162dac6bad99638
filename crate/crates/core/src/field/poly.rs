//! Sparse multivariate polynomials over GF(2).
//!
//! Every coefficient is 1, so a polynomial is just a set of monomials. Terms
//! are kept sorted in ascending lexicographic order of their exponent vectors
//! with no repeats; adding a monomial that is already present removes it.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::gf2k::Gf2kField;

/// Exponent vector of a monomial. Its length is the number of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(exps.into())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out.into_boxed_slice()))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in `nvars` variables with coefficients in GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Poly {
    nvars: usize,
    terms: Vec<Monomial>,
}

impl Gf2Poly {
    pub fn zero(nvars: usize) -> Self {
        Gf2Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Gf2Poly { nvars, terms: vec![Monomial::one(nvars)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Gf2Poly { nvars, terms: vec![Monomial::var(nvars, i)] }
    }

    pub fn monomial(m: Monomial) -> Self {
        Gf2Poly { nvars: m.nvars(), terms: vec![m] }
    }

    /// Builds a polynomial from arbitrary monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(nvars: usize, mut terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.iter().all(|m| m.nvars() == nvars));
        terms.sort_unstable();
        Gf2Poly { nvars, terms: cancel_pairs(terms) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(Monomial::degree).max()
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.last()
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Gf2Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero(self.nvars);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                prods.push(a.mul(b));
            }
        }
        Gf2Poly::from_monomials(self.nvars, prods)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Gf2Poly {
        // multiplication by a monomial preserves the lex order of terms
        Gf2Poly { nvars: self.nvars, terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn square(&self) -> Gf2Poly {
        // (sum m)^2 = sum m^2 in characteristic 2
        Gf2Poly { nvars: self.nvars, terms: self.terms.iter().map(|t| t.mul(t)).collect() }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Gf2Poly) -> Option<Gf2Poly> {
        let lead = divisor.leading()?;
        if divisor.is_one() {
            return Some(self.clone());
        }
        if divisor.terms.len() == 1 {
            let terms: Option<Vec<_>> = self.terms.iter().map(|t| t.div(lead)).collect();
            return Some(Gf2Poly { nvars: self.nvars, terms: terms? });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(top) = rem.leading() {
            let m = top.div(lead)?;
            rem = rem.add(&divisor.mul_monomial(&m));
            quot.push(m);
        }
        Some(Gf2Poly::from_monomials(self.nvars, quot))
    }

    /// Greatest common monomial factor of all terms (one for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, t| acc.gcd(t)),
        }
    }

    /// Evaluates at a point of GF(2^k)^nvars, elements given as bit patterns.
    pub fn eval(&self, field: &Gf2kField, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<u64>> = point.iter().map(|&p| vec![1, p]).collect();
        let mut acc = 0u64;
        for t in &self.terms {
            let mut v = 1u64;
            for (i, &e) in t.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = field.mul(*table.last().unwrap(), point[i]);
                    table.push(next);
                }
                v = field.mul(v, table[e as usize]);
            }
            acc ^= v;
        }
        acc
    }
}

fn cancel_pairs(sorted: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}
