//! Fixed-precision elements of Q_p.
//!
//! A nonzero value is `p^val * unit` with `unit` a residue mod `p^prec`
//! coprime to `p`; it is therefore known modulo `p^(val + prec)`, its
//! absolute precision. A zero value only records that absolute precision:
//! it stands for anything divisible by `p^abs_prec`.
//!
//! Addition keeps the smaller absolute precision of its operands, so
//! cancellation raises the valuation and eats unit digits but never invents
//! them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::modarith::{add_mod, inv_mod, mul_mod, neg_mod, pow_checked, pow_mod, split_p};
use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicNum {
    p: u64,
    /// Valuation, or the absolute precision when zero.
    val: i64,
    unit: u64,
    /// Relative precision; 0 marks zero.
    prec: u32,
}

fn modulus(p: u64, k: u32) -> Result<u64> {
    pow_checked(p, k).ok_or(Error::RangeOverflow { p, k })
}

impl PadicNum {
    /// `p^val * unit` with `unit` known mod `p^prec`. The unit must be prime
    /// to `p`.
    pub fn new(p: u64, val: i64, unit: u64, prec: u32) -> Result<PadicNum> {
        if prec == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let m = modulus(p, prec)?;
        if unit.is_multiple_of(p) {
            return Err(Error::Parse(format!("unit {unit} is divisible by {p}")));
        }
        Ok(PadicNum {
            p,
            val,
            unit: unit % m,
            prec,
        })
    }

    /// Anything divisible by `p^abs_prec`.
    pub fn zero(p: u64, abs_prec: i64) -> PadicNum {
        PadicNum {
            p,
            val: abs_prec,
            unit: 0,
            prec: 0,
        }
    }

    pub fn one(p: u64, prec: u32) -> PadicNum {
        PadicNum {
            p,
            val: 0,
            unit: 1,
            prec: prec.max(1),
        }
    }

    /// `p^val * n` where `n` is known modulo `p^prec`; `n` may be divisible
    /// by `p` (digits are shifted into the valuation) or zero.
    pub fn from_scaled(p: u64, val: i64, n: u64, prec: u32) -> Result<PadicNum> {
        let m = modulus(p, prec)?;
        let n = n % m;
        if n == 0 {
            return Ok(PadicNum::zero(p, val + prec as i64));
        }
        let (v, u) = split_p(n, p);
        let rel = prec - v;
        Ok(PadicNum {
            p,
            val: val + v as i64,
            unit: u % modulus(p, rel)?,
            prec: rel,
        })
    }

    /// An integer, known mod `p^abs_prec`.
    pub fn from_int(p: u64, n: i128, abs_prec: u32) -> Result<PadicNum> {
        let m = modulus(p, abs_prec)?;
        PadicNum::from_scaled(p, 0, n.rem_euclid(m as i128) as u64, abs_prec)
    }

    /// A rational with `p ∤ den`, known mod `p^abs_prec`.
    pub fn from_rat(p: u64, x: Rat, abs_prec: u32) -> Result<PadicNum> {
        let r = x.to_residue(p, abs_prec)?;
        PadicNum::from_scaled(p, 0, r, abs_prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// The unit residue (0 for zero).
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn rel_prec(&self) -> u32 {
        self.prec
    }

    /// The value is known modulo `p^abs_prec()`.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.prec as i64
    }

    fn check_prime(&self, other: &PadicNum) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// Drops digits beyond absolute precision `abs`.
    pub fn truncate(&self, abs: i64) -> PadicNum {
        if abs >= self.abs_prec() {
            return *self;
        }
        if self.is_zero() || self.val >= abs {
            return PadicNum::zero(self.p, abs);
        }
        let prec = (abs - self.val) as u32;
        let m = self.p.pow(prec);
        PadicNum {
            unit: self.unit % m,
            prec,
            ..*self
        }
    }

    pub fn checked_add(&self, other: &PadicNum) -> Result<PadicNum> {
        self.check_prime(other)?;
        let p = self.p;
        let abs = self.abs_prec().min(other.abs_prec());
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(PadicNum::zero(p, abs)),
            (true, false) => return Ok(other.truncate(abs)),
            (false, true) => return Ok(self.truncate(abs)),
            _ => {}
        }
        let v = self.val.min(other.val);
        if v >= abs {
            return Ok(PadicNum::zero(p, abs));
        }
        let w = (abs - v) as u32;
        let m = p.pow(w);
        let shifted = |x: &PadicNum| -> u64 {
            let d = x.val - v;
            if d >= w as i64 {
                0
            } else {
                mul_mod(x.unit % m, p.pow(d as u32), m)
            }
        };
        PadicNum::from_scaled(p, v, add_mod(shifted(self), shifted(other), m), w)
    }

    pub fn checked_sub(&self, other: &PadicNum) -> Result<PadicNum> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &PadicNum) -> Result<PadicNum> {
        self.check_prime(other)?;
        let p = self.p;
        Ok(match (self.is_zero(), other.is_zero()) {
            (true, true) => PadicNum::zero(p, self.val + other.val),
            (true, false) => PadicNum::zero(p, self.val + other.val),
            (false, true) => PadicNum::zero(p, self.val + other.val),
            (false, false) => {
                let prec = self.prec.min(other.prec);
                let m = p.pow(prec);
                PadicNum {
                    p,
                    val: self.val + other.val,
                    unit: mul_mod(self.unit % m, other.unit % m, m),
                    prec,
                }
            }
        })
    }

    pub fn inv(&self) -> Result<PadicNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.p.pow(self.prec);
        Ok(PadicNum {
            val: -self.val,
            unit: inv_mod(self.unit, m).ok_or(Error::DivisionByZero)?,
            ..*self
        })
    }

    pub fn checked_div(&self, other: &PadicNum) -> Result<PadicNum> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<PadicNum> {
        if self.is_zero() {
            return match e {
                0 => Ok(PadicNum::one(self.p, 1)),
                e if e < 0 => Err(Error::DivisionByZero),
                e => Ok(PadicNum::zero(self.p, self.val * e)),
            };
        }
        let base = if e < 0 { self.inv()? } else { *self };
        let m = self.p.pow(self.prec);
        Ok(PadicNum {
            val: base.val * e.abs(),
            unit: pow_mod(base.unit, e.unsigned_abs(), m),
            ..base
        })
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> PadicNum {
        PadicNum {
            val: self.val + k,
            ..*self
        }
    }

    /// Whether `self ≡ other (mod p^k)`. Both operands must be known at
    /// least mod `p^k`.
    pub fn eq_mod(&self, other: &PadicNum, k: i64) -> Result<bool> {
        self.check_prime(other)?;
        let have = self.abs_prec().min(other.abs_prec());
        if have < k {
            return Err(Error::InsufficientPrecision {
                needed: k,
                available: have,
            });
        }
        let d = self.checked_sub(other)?;
        Ok(d.is_zero() || d.val >= k)
    }

    /// The value as a residue mod `p^k`. Needs a p-adic integer known at
    /// least mod `p^k`.
    pub fn residue(&self, k: u32) -> Result<u64> {
        if self.abs_prec() < k as i64 {
            return Err(Error::InsufficientPrecision {
                needed: k as i64,
                available: self.abs_prec(),
            });
        }
        let m = modulus(self.p, k)?;
        if self.is_zero() || self.val >= k as i64 {
            return Ok(0);
        }
        if self.val < 0 {
            return Err(Error::DenominatorDivisibleByP(self.to_string(), self.p));
        }
        Ok(mul_mod(self.unit % m, self.p.pow(self.val as u32), m))
    }

    /// Representative in `(-p^k/2, p^k/2]` of [`PadicNum::residue`].
    pub fn symmetric_residue(&self, k: u32) -> Result<i128> {
        let r = self.residue(k)? as i128;
        let m = self.p.pow(k) as i128;
        Ok(if r > m / 2 { r - m } else { r })
    }
}

impl Neg for PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        if self.is_zero() {
            return self;
        }
        let m = self.p.pow(self.prec);
        PadicNum {
            unit: neg_mod(self.unit, m),
            ..self
        }
    }
}

// Operator forms panic on mismatched primes; use the checked_* methods when
// the operands come from different sessions.
impl Add for PadicNum {
    type Output = PadicNum;
    fn add(self, o: PadicNum) -> PadicNum {
        self.checked_add(&o).expect("p-adic add")
    }
}

impl Sub for PadicNum {
    type Output = PadicNum;
    fn sub(self, o: PadicNum) -> PadicNum {
        self.checked_sub(&o).expect("p-adic sub")
    }
}

impl Mul for PadicNum {
    type Output = PadicNum;
    fn mul(self, o: PadicNum) -> PadicNum {
        self.checked_mul(&o).expect("p-adic mul")
    }
}

/// Renders as `p^v * u mod p^K`, or `0 (prec p^k)` for zero.
impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0 (prec {}^{})", self.p, self.val)
        } else {
            write!(
                f,
                "{p}^{} * {} mod {p}^{}",
                self.val,
                self.unit,
                self.prec,
                p = self.p
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn num(p: u64, val: i64, unit: u64, prec: u32) -> PadicNum {
        PadicNum::new(p, val, unit, prec).unwrap()
    }

    #[test]
    fn mul_adds_valuations() {
        let r = num(5, 1, 2, 2) * num(5, -1, 3, 2);
        assert_eq!((r.valuation(), r.unit(), r.rel_prec()), (Some(0), 6, 2));
    }

    #[test]
    fn full_cancellation_is_zero() {
        let r = num(7, 0, 1, 3) + num(7, 0, 342, 3);
        assert!(r.is_zero());
        assert_eq!(r.abs_prec(), 3);
        assert_eq!(r.to_string(), "0 (prec 7^3)");
    }

    #[test]
    fn partial_cancellation_raises_valuation() {
        // 1 + 8 = 9 = 3^2 at precision 3^3
        let r = num(3, 0, 1, 3) + num(3, 0, 8, 3);
        assert_eq!((r.valuation(), r.unit(), r.rel_prec()), (Some(2), 1, 1));
    }

    #[test]
    fn fermat_power() {
        assert_eq!(num(7, 0, 2, 1).pow(6).unwrap().unit(), 1);
        assert_eq!(num(5, 2, 2, 2).pow(-1).unwrap().valuation(), Some(-2));
    }

    #[test]
    fn eq_mod_examples() {
        let a = num(5, 0, 17, 3);
        assert!(a.eq_mod(&a, 3).unwrap());
        let b = num(3, 3, 2, 2);
        assert!(b.eq_mod(&PadicNum::zero(3, 5), 3).unwrap());
        let c = PadicNum::from_int(3, 23, 3).unwrap();
        let d = PadicNum::from_int(3, -4, 3).unwrap();
        assert!(c.eq_mod(&d, 3).unwrap());
        assert!(matches!(
            c.eq_mod(&d, 4),
            Err(Error::InsufficientPrecision {
                needed: 4,
                available: 3
            })
        ));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(PadicNum::zero(3, 2).inv(), Err(Error::DivisionByZero));
        assert!(matches!(
            num(3, 0, 1, 1).checked_add(&num(5, 0, 1, 1)),
            Err(Error::PrimeMismatch(3, 5))
        ));
    }

    #[test]
    fn serialization() {
        assert_eq!(num(3, 0, 23, 3).to_string(), "3^0 * 23 mod 3^3");
        assert_eq!(num(5, -2, 7, 4).to_string(), "5^-2 * 7 mod 5^4");
    }

    #[test]
    fn misaligned_add_keeps_absolute_precision() {
        // known mod 5^1 plus known mod 5^4: sum known mod 5^1
        let a = num(5, 0, 3, 1);
        let b = num(5, 2, 1, 2);
        let s = a + b;
        assert_eq!(s.abs_prec(), 1);
        let c = num(5, -1, 3, 3);
        assert_eq!((c + b).abs_prec(), 2);
    }

    fn arb(p: u64) -> impl Strategy<Value = PadicNum> {
        (-2i64..3, 1u64..p.pow(4), 1u32..5)
            .prop_filter_map("unit", move |(v, u, k)| PadicNum::new(p, v, u, k).ok())
    }

    fn agree(x: &PadicNum, y: &PadicNum) -> bool {
        let k = x.abs_prec().min(y.abs_prec());
        x.eq_mod(y, k).unwrap()
    }

    proptest! {
        #[test]
        fn add_assoc(a in arb(5), b in arb(5), c in arb(5)) {
            prop_assert!(agree(&((a + b) + c), &(a + (b + c))));
        }

        #[test]
        fn distributive(a in arb(7), b in arb(7), c in arb(7)) {
            prop_assert!(agree(&(a * (b + c)), &(a * b + a * c)));
        }

        #[test]
        fn inverse_is_inverse(a in arb(3)) {
            let one = a * a.inv().unwrap();
            prop_assert!(agree(&one, &PadicNum::one(3, 10)));
        }
    }
}
