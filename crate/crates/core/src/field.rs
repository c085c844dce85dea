//! Arithmetic in the prime field GF(p), 2 <= p < 2^31.
//!
//! Elements are plain residues in `[0, p)`. Products are formed in 64 bits and
//! reduced with a single remainder.

use std::fmt;

use crate::error::{Error, Result};

/// A reduced residue modulo the prime of some [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Felt(pub(crate) u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
}

const MAX_PRIME_EXCLUSIVE: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME_EXCLUSIVE || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldCtx { p: p as u32 })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    /// Field size as a `u64`, convenient for counting.
    pub fn order(self) -> u64 {
        self.p as u64
    }

    pub fn elem(self, v: u64) -> Felt {
        Felt((v % self.p as u64) as u32)
    }

    pub fn from_i64(self, v: i64) -> Felt {
        Felt(v.rem_euclid(self.p as i64) as u32)
    }

    /// Returns `Some` only if `v` is already a reduced residue.
    pub fn checked_elem(self, v: u64) -> Option<Felt> {
        (v < self.p as u64).then_some(Felt(v as u32))
    }

    pub fn zero(self) -> Felt {
        Felt::ZERO
    }

    pub fn one(self) -> Felt {
        Felt::ONE
    }

    #[inline]
    pub fn add(self, a: Felt, b: Felt) -> Felt {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        Felt(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn sub(self, a: Felt, b: Felt) -> Felt {
        if a.0 >= b.0 {
            Felt(a.0 - b.0)
        } else {
            Felt((a.0 as u64 + self.p as u64 - b.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn mul(self, a: Felt, b: Felt) -> Felt {
        Felt(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    #[inline]
    pub fn neg(self, a: Felt) -> Felt {
        if a.0 == 0 {
            a
        } else {
            Felt(self.p - a.0)
        }
    }

    /// `a + c*b`
    #[inline]
    pub fn mul_add(self, a: Felt, c: Felt, b: Felt) -> Felt {
        Felt(((a.0 as u64 + c.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn arith(self, op: ArithOp, a: Felt, b: Felt) -> Felt {
        match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        }
    }

    pub fn pow(self, a: Felt, mut e: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via Fermat's little theorem.
    pub fn inv(self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    pub fn elements(self) -> impl Iterator<Item = Felt> {
        (0..self.p).map(Felt)
    }

    pub fn dot(self, a: &[Felt], b: &[Felt]) -> Felt {
        debug_assert_eq!(a.len(), b.len());
        let p = self.p as u64;
        let mut acc = 0u64;
        for (x, y) in a.iter().zip(b) {
            acc = (acc + x.0 as u64 * y.0 as u64) % p;
        }
        Felt(acc as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn small_arith_examples() {
        assert_eq!(f(3).arith(ArithOp::Add, Felt(2), Felt(2)), Felt(1));
        assert_eq!(f(5).arith(ArithOp::Mul, Felt(3), Felt(4)), Felt(2));
        assert_eq!(f(2).arith(ArithOp::Neg, Felt(1), Felt(0)), Felt(1));
        assert_eq!(f(7).sub(Felt(2), Felt(5)), Felt(4));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f(5).inv(Felt(2)).unwrap(), Felt(3));
        assert_eq!(f(3).inv(Felt(2)).unwrap(), Felt(2));
        assert_eq!(f(7).inv(Felt(1)).unwrap(), Felt(1));
        assert!(matches!(f(7).inv(Felt(0)), Err(Error::ZeroInverse)));
    }

    #[test]
    fn rejects_composites_and_out_of_range() {
        for bad in [0u64, 1, 4, 9, 91, 2_147_483_649, 1 << 31] {
            assert!(FieldCtx::new(bad).is_err(), "{bad}");
        }
        // largest prime below 2^31
        assert!(FieldCtx::new(2_147_483_647).is_ok());
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let k = f(2_147_483_647);
        let a = Felt(2_147_483_646);
        assert_eq!(k.mul(a, a), Felt(1));
        assert_eq!(k.add(a, a), Felt(2_147_483_645));
    }

    proptest! {
        #[test]
        fn field_axioms(pi in 0usize..6, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let k = f([2u64, 3, 5, 7, 65_521, 2_147_483_647][pi]);
            let (a, b, c) = (k.elem(a as u64), k.elem(b as u64), k.elem(c as u64));
            prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
            prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
            prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            prop_assert_eq!(k.add(a, k.neg(a)), Felt::ZERO);
            prop_assert_eq!(k.sub(a, b), k.add(a, k.neg(b)));
            prop_assert_eq!(k.mul_add(a, b, c), k.add(a, k.mul(b, c)));
            if !a.is_zero() {
                let ai = k.inv(a).unwrap();
                prop_assert_eq!(k.mul(a, ai), Felt::ONE);
                prop_assert_eq!(k.inv(ai).unwrap(), a);
            }
        }
    }
}
