//! Binary extension fields GF(2^k), 1 <= k <= 64.
//!
//! Elements are `u64` bit patterns: bit `i` is the coefficient of `t^i`. The
//! modulus of each field is the lexicographically least irreducible
//! polynomial of degree `k`, found by a Rabin test when the descriptor is
//! built, so a given `k` always names the same field.

use core::fmt;

pub const MAX_DEGREE: u32 = 64;

/// Descriptor of GF(2^k): the degree and the modulus `t^k + low`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2kField {
    k: u32,
    low: u64,
}

impl fmt::Debug for Gf2kField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; t^{} + {:#x})", self.k, self.k, self.low)
    }
}

/// Carry-less product of two 64-bit polynomials.
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let a = a as u128;
    for i in 1..16 {
        table[i] = if i & 1 == 1 { table[i - 1] ^ a } else { table[i >> 1] << 1 };
    }
    let mut acc = 0u128;
    let mut shift = 0;
    let mut b = b;
    while b != 0 {
        acc ^= table[(b & 0xf) as usize] << shift;
        b >>= 4;
        shift += 4;
    }
    acc
}

fn poly_degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `m` as plain GF(2)[t] polynomials.
fn poly_rem(mut a: u128, m: u128) -> u128 {
    let dm = poly_degree(m);
    debug_assert!(dm >= 0);
    loop {
        let da = poly_degree(a);
        if da < dm {
            return a;
        }
        a ^= m << (da - dm);
    }
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

impl Gf2kField {
    /// GF(2^k) with the least irreducible modulus of degree `k`.
    pub fn new(k: u32) -> Option<Self> {
        if k == 0 || k > MAX_DEGREE {
            return None;
        }
        // candidates t^k + low in increasing order; low even means t divides it (except k = 1)
        let start = if k == 1 { 0 } else { 1 };
        let mut low = start;
        loop {
            let f = Gf2kField { k, low };
            if f.is_irreducible() {
                return Some(f);
            }
            low += if k == 1 { 1 } else { 2 };
        }
    }

    /// A field with an explicit modulus `t^k + low`, checked for irreducibility.
    pub fn with_modulus(k: u32, low: u64) -> Option<Self> {
        if k == 0 || k > MAX_DEGREE || (k < 64 && low >> k != 0) {
            return None;
        }
        let f = Gf2kField { k, low };
        f.is_irreducible().then_some(f)
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Full modulus as a 65-bit polynomial.
    pub fn modulus(&self) -> u128 {
        (1u128 << self.k) | self.low as u128
    }

    pub fn mask(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    pub fn contains(&self, a: u64) -> bool {
        a & !self.mask() == 0
    }

    /// Basis element `t^i`.
    pub fn basis(&self, i: u32) -> u64 {
        assert!(i < self.k);
        1u64 << i
    }

    pub fn reduce(&self, mut p: u128) -> u64 {
        let k = self.k;
        let mask = self.mask() as u128;
        loop {
            let hi = p >> k;
            if hi == 0 {
                return p as u64;
            }
            if hi >> 64 != 0 {
                return poly_rem(p, self.modulus()) as u64;
            }
            // hi * t^k == hi * low
            p = (p & mask) ^ clmul(hi as u64, self.low);
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }

    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut base: u64, mut exp: u128) -> u64 {
        let mut acc = 1u64;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the modulus.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 || !self.contains(a) {
            return None;
        }
        // invariant: s_i * a == r_i (mod modulus)
        let (mut r0, mut r1) = (self.modulus(), a as u128);
        let (mut s0, mut s1) = (0u128, 1u128);
        while r1 != 0 {
            let mut q = 0u128;
            let mut r = r0;
            let d1 = poly_degree(r1);
            loop {
                let dr = poly_degree(r);
                if dr < d1 {
                    break;
                }
                q ^= 1u128 << (dr - d1);
                r ^= r1 << (dr - d1);
            }
            let s = s0 ^ poly_mul_small(q, s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0, 1);
        Some(poly_rem(s0, self.modulus()) as u64)
    }

    fn is_irreducible(&self) -> bool {
        let k = self.k;
        // t^(2^k) == t (mod f)
        let t = if k == 1 { self.reduce(2) } else { 2u64 };
        let frob = |times: u32| {
            let mut x = t;
            for _ in 0..times {
                x = self.square(x);
            }
            x
        };
        if frob(k) != t {
            return false;
        }
        let mut n = k;
        let mut p = 2;
        while n > 1 {
            if n.is_multiple_of(p) {
                while n.is_multiple_of(p) {
                    n /= p;
                }
                let h = (frob(k / p) ^ t) as u128;
                if poly_gcd(self.modulus(), h) != 1 {
                    return false;
                }
            }
            p += 1;
        }
        true
    }
}

/// Product of two polynomials whose product fits in 128 bits.
fn poly_mul_small(a: u128, b: u128) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducible_moduli() {
        assert_eq!(Gf2kField::new(2).unwrap().modulus(), 0b111);
        assert_eq!(Gf2kField::new(3).unwrap().modulus(), 0b1011);
        assert_eq!(Gf2kField::new(8).unwrap().modulus(), 0x11b);
        assert_eq!(Gf2kField::new(64).unwrap().modulus(), (1u128 << 64) | 0x1b);
        assert!(Gf2kField::new(0).is_none());
        assert!(Gf2kField::new(65).is_none());
    }

    #[test]
    fn gf8_cube_of_t() {
        let f = Gf2kField::new(3).unwrap();
        let t = 0b010;
        assert_eq!(f.mul(f.mul(t, t), t), 0b011);
        assert_eq!(f.inv(t), Some(0b101));
    }

    #[test]
    fn inverses_in_every_degree() {
        for k in 1..=64 {
            let f = Gf2kField::new(k).unwrap();
            let mut a = 0x9e37_79b9_7f4a_7c15u64 & f.mask();
            for _ in 0..20 {
                if a != 0 {
                    let b = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, b), 1, "k = {k}, a = {a:#x}");
                }
                a = f.mul(a ^ 0x5, 0x3 & f.mask()) ^ (a >> 1);
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn multiplicative_group_order() {
        // a^(2^k - 1) == 1
        for k in [5u32, 13, 31, 64] {
            let f = Gf2kField::new(k).unwrap();
            let order = (1u128 << k) - 1;
            assert_eq!(f.pow(0b1101, order), 1);
        }
    }
}
