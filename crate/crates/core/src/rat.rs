//! Small exact rationals used as gamma arguments and series parameters.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::modarith::{inv_mod, pow_checked};
use crate::{Error, Result};

/// A reduced fraction `num/den` with `den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i64,
    den: i64,
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Rat { num: n, den: d }
    }

    pub fn int(n: i64) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// `⟨x⟩ = x - ⌊x⌋`, always in `[0, 1)`.
    pub fn frac(&self) -> Rat {
        self.frac_floor().0
    }

    /// Splits `x` into its fractional part in `[0, 1)` and its floor.
    pub fn frac_floor(&self) -> (Rat, i64) {
        let fl = self.floor();
        (
            Rat {
                num: self.num - fl * self.den,
                den: self.den,
            },
            fl,
        )
    }

    /// The residue of `x` in `Z/p^k`, i.e. `num * den^{-1} mod p^k`.
    pub fn to_residue(&self, p: u64, k: u32) -> Result<u64> {
        let m = pow_checked(p, k).ok_or(Error::RangeOverflow { p, k })?;
        if (self.den as u64).is_multiple_of(p) {
            return Err(Error::DenominatorDivisibleByP(self.to_string(), p));
        }
        let n = self.num.rem_euclid(m as i64) as u64;
        let d = (self.den as u64) % m;
        let dinv = inv_mod(d, m).ok_or(Error::DivisionByZero)?;
        Ok(((n as u128 * dinv as u128) % m as u128) as u64)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        !(self.den as u64).is_multiple_of(p)
    }
}

/// Free-function form of [`Rat::frac_floor`].
pub fn frac_floor(x: Rat) -> (Rat, i64) {
    x.frac_floor()
}

/// Free-function form of [`Rat::to_residue`].
pub fn rat_to_residue(x: Rat, p: u64, k: u32) -> Result<u64> {
    x.to_residue(p, k)
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        let l = self.den.lcm(&o.den);
        Rat::new(self.num * (l / self.den) + o.num * (l / o.den), l)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        self + (-o)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Rat::new(n, d))
            }
            None => Ok(Rat::int(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// Parses a comma separated list such as `1/2,1/2,1/4,3/4`.
pub fn parse_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frac_floor_examples() {
        assert_eq!(Rat::new(1, 2).frac_floor(), (Rat::new(1, 2), 0));
        assert_eq!(Rat::new(-1, 4).frac_floor(), (Rat::new(3, 4), -1));
        assert_eq!(Rat::new(7, 3).frac_floor(), (Rat::new(1, 3), 2));
        assert_eq!(Rat::int(-3).frac_floor(), (Rat::ZERO, -3));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(Rat::new(1, 2).to_residue(3, 3).unwrap(), 14);
        assert_eq!(Rat::int(5).to_residue(7, 2).unwrap(), 5);
        assert_eq!(Rat::new(1, 4).to_residue(5, 2).unwrap(), 19);
        assert_eq!(Rat::new(-1, 2).to_residue(3, 1).unwrap(), 1);
        assert!(matches!(
            Rat::new(1, 3).to_residue(3, 2),
            Err(Error::DenominatorDivisibleByP(_, 3))
        ));
    }

    #[test]
    fn reduced_and_parsed() {
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!(parse_list("1/2, 1,1/4").unwrap().len(), 3);
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn residue_round_trip(num in -10_000i64..10_000, den in 1i64..500,
                              pi in 0usize..8, k in 1u32..5) {
            let p = [3u64, 5, 7, 11, 13, 17, 19, 23][pi];
            prop_assume!(!(den as u64).is_multiple_of(p));
            let x = Rat::new(num, den);
            let m = p.pow(k) as i128;
            let r = x.to_residue(p, k).unwrap() as i128;
            prop_assert_eq!((x.den() as i128 * r - x.num() as i128).rem_euclid(m), 0);
        }

        #[test]
        fn frac_in_unit_interval(num in -10_000i64..10_000, den in 1i64..500) {
            let x = Rat::new(num, den);
            let (f, fl) = x.frac_floor();
            prop_assert!(f >= Rat::ZERO && f < Rat::ONE);
            prop_assert_eq!(f + Rat::int(fl), x);
            prop_assert_eq!(x.den() % f.den(), 0);
        }
    }
}
