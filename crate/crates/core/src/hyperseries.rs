//! Truncated generalized hypergeometric series reduced mod `p^M`.

use crate::modarith::{add_mod, inv_mod, mul_mod, pow_checked, split_p};
use crate::rat::Rat;
use crate::{Error, Result};

/// `rFs[upper; lower | z]_m` to be evaluated in `Z/p^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeriesSpec {
    pub upper: Vec<Rat>,
    pub lower: Vec<Rat>,
    pub z: Rat,
    pub m: usize,
    pub p: u64,
    pub prec: u32,
}

impl TruncSeriesSpec {
    /// `4F3[upper; 1, 1, 1 | 1]_{p-1}`, the shape of every supercongruence.
    pub fn balanced(upper: Vec<Rat>, p: u64, prec: u32) -> TruncSeriesSpec {
        let lower = vec![Rat::ONE; upper.len().saturating_sub(1)];
        TruncSeriesSpec {
            upper,
            lower,
            z: Rat::ONE,
            m: p as usize - 1,
            p,
            prec,
        }
    }

    fn validate(&self) -> Result<()> {
        for b in &self.lower {
            if b.is_integer() && b.num() <= 0 {
                return Err(Error::InvalidLowerParameter(b.to_string()));
            }
        }
        for x in self.upper.iter().chain(&self.lower).chain([&self.z]) {
            if !x.is_p_integral(self.p) {
                return Err(Error::DenominatorDivisibleByP(x.to_string(), self.p));
            }
        }
        Ok(())
    }
}

/// Tracks `p^val * unit` for an exact rational with `p`-integral pieces.
struct Running {
    p: u64,
    modulus: u64,
    val: i64,
    unit: u64,
    zero: bool,
}

impl Running {
    /// Multiplies (or divides) by the rational `x`.
    fn scale(&mut self, x: Rat, divide: bool) -> Result<()> {
        if x.num() == 0 {
            if divide {
                return Err(Error::DivisionByZero);
            }
            self.zero = true;
            return Ok(());
        }
        let (v, u) = split_p(x.num().unsigned_abs(), self.p);
        let mut r = mul_mod(
            u % self.modulus,
            inv_mod(x.den() as u64 % self.modulus, self.modulus).ok_or(Error::DivisionByZero)?,
            self.modulus,
        );
        if x.num() < 0 {
            r = self.modulus - r;
        }
        if divide {
            r = inv_mod(r, self.modulus).ok_or(Error::DivisionByZero)?;
            self.val -= v as i64;
        } else {
            self.val += v as i64;
        }
        self.unit = mul_mod(self.unit, r, self.modulus);
        Ok(())
    }

    fn residue(&self, prec: u32) -> u64 {
        if self.zero || self.val >= prec as i64 {
            0
        } else {
            mul_mod(self.unit, self.p.pow(self.val as u32), self.modulus)
        }
    }
}

/// `Σ_{n=0}^{m} ∏(a_i)_n / (∏(b_j)_n n!) z^n mod p^M`.
///
/// Terms are updated incrementally with exact tracking of the powers of `p`
/// in the numerator, so `(a)_n` may be divisible by `p`; a term whose
/// denominator is divisible by `p` is an error.
pub fn trunc_hyp(spec: &TruncSeriesSpec) -> Result<u64> {
    spec.validate()?;
    let p = spec.p;
    let modulus = pow_checked(p, spec.prec).ok_or(Error::RangeOverflow { p, k: spec.prec })?;
    let mut term = Running {
        p,
        modulus,
        val: 0,
        unit: 1 % modulus,
        zero: false,
    };
    let mut sum = 0u64;
    for n in 0..=spec.m {
        if n > 0 {
            let k = Rat::int(n as i64 - 1);
            for &a in &spec.upper {
                term.scale(a + k, false)?;
            }
            for &b in &spec.lower {
                term.scale(b + k, true)?;
            }
            term.scale(Rat::int(n as i64), true)?;
            term.scale(spec.z, false)?;
        }
        if term.zero {
            break;
        }
        if term.val < 0 {
            return Err(Error::NonInvertibleDenominator(n));
        }
        sum = add_mod(sum, term.residue(spec.prec), modulus);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    /// Direct evaluation with factorial products in exact big rationals.
    fn oracle(spec: &TruncSeriesSpec) -> Option<u64> {
        let big = |x: Rat| BigRational::new(BigInt::from(x.num()), BigInt::from(x.den()));
        let rising = |a: Rat, n: usize| {
            (0..n).fold(BigRational::one(), |acc, k| {
                acc * (big(a) + BigRational::from_integer(k.into()))
            })
        };
        let mut total = BigRational::zero();
        for n in 0..=spec.m {
            let mut t = BigRational::one();
            for &a in &spec.upper {
                t *= rising(a, n);
            }
            for &b in &spec.lower {
                t /= rising(b, n);
            }
            t /= rising(Rat::ONE, n);
            for _ in 0..n {
                t *= big(spec.z);
            }
            total += t;
        }
        let m = BigInt::from(spec.p.pow(spec.prec));
        let den = total.denom().clone();
        if &den % BigInt::from(spec.p) == BigInt::zero() {
            return None;
        }
        let inv = den.modinv(&m)?;
        let v = ((total.numer() * inv) % &m + &m) % &m;
        Some(u64::try_from(v).unwrap())
    }

    #[test]
    fn empty_truncation_is_one() {
        let mut s = TruncSeriesSpec::balanced(vec![r(1, 2); 4], 7, 3);
        s.m = 0;
        assert_eq!(trunc_hyp(&s).unwrap(), 1);
    }

    #[test]
    fn halves_at_three() {
        let s = TruncSeriesSpec::balanced(vec![r(1, 2); 4], 3, 3);
        assert_eq!(trunc_hyp(&s).unwrap(), 23);
    }

    #[test]
    fn mixed_at_three() {
        let s = TruncSeriesSpec::balanced(vec![r(1, 2), r(1, 2), r(1, 4), r(3, 4)], 3, 3);
        assert_eq!(trunc_hyp(&s).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_specs() {
        let mut s = TruncSeriesSpec::balanced(vec![r(1, 2); 2], 5, 3);
        s.lower = vec![r(-2, 1)];
        assert!(matches!(
            trunc_hyp(&s),
            Err(Error::InvalidLowerParameter(_))
        ));
        s.lower = vec![r(1, 5)];
        assert!(matches!(
            trunc_hyp(&s),
            Err(Error::DenominatorDivisibleByP(..))
        ));
        // n! picks up a factor of p once n reaches p
        let mut s = TruncSeriesSpec::balanced(vec![r(1, 2), r(1, 2)], 3, 3);
        s.upper.pop();
        s.m = 5;
        assert!(matches!(
            trunc_hyp(&s),
            Err(Error::NonInvertibleDenominator(3))
        ));
    }

    #[test]
    fn truncation_is_stable_once_terms_vanish() {
        // terms past (p-1)/2 carry p^4 from (1/2)_n^4
        for p in [5u64, 7, 11, 13] {
            let mut s = TruncSeriesSpec::balanced(vec![r(1, 2); 4], p, 3);
            let full = trunc_hyp(&s).unwrap();
            s.m = (p as usize - 1) / 2;
            assert_eq!(trunc_hyp(&s).unwrap(), full);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn incremental_matches_factorials(
            pi in 0usize..5, k in 1u32..4,
            ups in proptest::collection::vec((-6i64..7, 1i64..7), 1..4),
            lows in proptest::collection::vec((1i64..9, 1i64..7), 0..3),
            zn in -5i64..6, zd in 1i64..5, m in 0usize..6,
        ) {
            let p = [5u64, 7, 11, 13, 17][pi];
            let spec = TruncSeriesSpec {
                upper: ups.iter().map(|&(n, d)| Rat::new(n, d)).collect(),
                lower: lows.iter().map(|&(n, d)| Rat::new(n, d)).collect(),
                z: Rat::new(zn, zd),
                m: m.min(p as usize - 1),
                p,
                prec: k,
            };
            match trunc_hyp(&spec) {
                Ok(v) => prop_assert_eq!(Some(v), oracle(&spec)),
                Err(Error::DenominatorDivisibleByP(..)) | Err(Error::NonInvertibleDenominator(_)) => {}
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
