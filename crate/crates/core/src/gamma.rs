//! Morita's p-adic gamma function and the Teichmuller character.
//!
//! `Γ_p(x) mod p^K` depends only on `x mod p^K`, so every rational argument
//! is mapped to a positive integer checkpoint `N ∈ (0, p^K]` and all
//! checkpoints are read off one ascending sweep of the running product
//! `∏_{0<j<N, p∤j} j`.

use std::collections::HashMap;

use crate::modarith::{mul_mod, neg_mod, pow_checked, pow_mod, Montgomery};
use crate::padic::PadicNum;
use crate::rat::Rat;
use crate::{is_prime, Error, Result};

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

/// Γ_p values mod `p^K` at a fixed set of rational arguments.
#[derive(Clone, Debug)]
pub struct GammaTable {
    p: u64,
    prec: u32,
    entries: HashMap<Rat, u64>,
}

impl GammaTable {
    /// One sweep over `j = 1..max N`, snapshotting at each checkpoint.
    pub fn build(p: u64, prec: u32, args: impl IntoIterator<Item = Rat>) -> Result<GammaTable> {
        check_odd_prime(p)?;
        if prec == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let m = pow_checked(p, prec).ok_or(Error::RangeOverflow { p, k: prec })?;
        let mut by_checkpoint: Vec<(u64, Rat)> = Vec::new();
        for x in args {
            let r = x.to_residue(p, prec)?;
            by_checkpoint.push((if r == 0 { m } else { r }, x));
        }
        by_checkpoint.sort_unstable_by_key(|&(n, _)| n);
        by_checkpoint.dedup();

        let mont = Montgomery::new(m);
        let mut entries = HashMap::with_capacity(by_checkpoint.len());
        // acc = (∏ j) * 2^{-64 count} mod m over j < next, p ∤ j
        let mut acc = 1 % m;
        let mut count: u64 = 0;
        let mut next: u64 = 1;
        let mut last: Option<(u64, u64)> = None;
        for (n, x) in by_checkpoint {
            if let Some((ln, lv)) = last {
                if ln == n {
                    entries.insert(x, lv);
                    continue;
                }
            }
            while next < n {
                let block_end = n.min(next - next % p + p);
                let mut j = next;
                if j.is_multiple_of(p) {
                    j += 1;
                }
                while j < block_end {
                    acc = mont.mul_redc(acc, j);
                    j += 1;
                }
                count += block_end - next - u64::from(next.is_multiple_of(p));
                next = block_end;
            }
            let prod = mul_mod(acc, mont.r_pow(count), m);
            let value = if n % 2 == 1 { neg_mod(prod, m) } else { prod };
            entries.insert(x, value);
            last = Some((n, value));
        }
        Ok(GammaTable { p, prec, entries })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Raw unit residue of `Γ_p(x)` mod `p^K`.
    pub fn unit(&self, x: Rat) -> Result<u64> {
        self.entries
            .get(&x)
            .copied()
            .ok_or_else(|| Error::MissingArgument(x.to_string()))
    }

    /// `Γ_p(x)` as a p-adic unit.
    pub fn gamma_p(&self, x: Rat) -> Result<PadicNum> {
        PadicNum::new(self.p, 0, self.unit(x)?, self.prec)
    }
}

/// Teichmuller lifts `ω(x)` for `x ∈ F_p^*`, with discrete logs to a fixed
/// primitive root.
#[derive(Clone, Debug)]
pub struct TeichTable {
    p: u64,
    prec: u32,
    modulus: u64,
    /// `values[x] = ω(x)`, index 0 unused.
    values: Vec<u64>,
    /// `dlog[x] = k` with `g^k ≡ x (mod p)`.
    dlog: Vec<u64>,
    /// `gpow[k] = ω(g)^k`.
    gpow: Vec<u64>,
}

impl TeichTable {
    pub fn build(p: u64, prec: u32) -> Result<TeichTable> {
        check_odd_prime(p)?;
        if prec == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let m = pow_checked(p, prec).ok_or(Error::RangeOverflow { p, k: prec })?;
        let values: Vec<u64> = (0..p)
            .map(|x| {
                // K-1 successive p-th powers
                let mut w = x % m;
                for _ in 1..prec {
                    w = pow_mod(w, p, m);
                }
                w
            })
            .collect();
        let order = p - 1;
        let g = (2..p)
            .find(|&g| (1..order).all(|k| !order.is_multiple_of(k) || pow_mod(g, k, p) != 1))
            .unwrap_or(1);
        let mut dlog = vec![0; p as usize];
        let mut gpow = Vec::with_capacity(order as usize);
        let (mut x, mut w) = (1u64, 1 % m);
        for k in 0..order {
            dlog[x as usize] = k;
            gpow.push(w);
            x = x * g % p;
            w = mul_mod(w, values[g as usize], m);
        }
        Ok(TeichTable {
            p,
            prec,
            modulus: m,
            values,
            dlog,
            gpow,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `ω(x)` for `x ≢ 0 (mod p)`.
    pub fn teich(&self, x: i64) -> Result<u64> {
        let r = x.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.values[r])
    }

    /// `ω(x)^j`; negative `j` gives powers of `ω̄`.
    pub fn teich_pow(&self, x: i64, j: i64) -> Result<u64> {
        let r = x.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            return Err(Error::ZeroArgument);
        }
        let order = self.p as i64 - 1;
        let k = (self.dlog[r] as i64 * j.rem_euclid(order)).rem_euclid(order);
        Ok(self.gpow[k as usize])
    }

    /// Character value with the convention `χ(0) = 0`.
    pub fn char_value(&self, x: i64, j: i64) -> u64 {
        self.teich_pow(x, j).unwrap_or(0)
    }

    /// `ω^{(p-1)/2}(x)`, i.e. the Legendre symbol as `±1`.
    pub fn quadratic(&self, x: i64) -> Result<i64> {
        let v = self.teich_pow(x, (self.p as i64 - 1) / 2)?;
        Ok(if v == 1 { 1 } else { -1 })
    }

    pub fn dlog(&self, x: i64) -> Result<u64> {
        let r = x.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.dlog[r])
    }

    /// `ω(g)^k` for the table's primitive root `g`.
    pub fn gen_pow(&self, k: i64) -> u64 {
        self.gpow[k.rem_euclid(self.p as i64 - 1) as usize]
    }
}

/// Gamma and Teichmuller tables for one prime and precision, shared
/// read-only by every evaluation at that prime.
#[derive(Clone, Debug)]
pub struct Session {
    pub gamma: GammaTable,
    pub teich: TeichTable,
}

impl Session {
    pub fn new(p: u64, prec: u32, args: impl IntoIterator<Item = Rat>) -> Result<Session> {
        Ok(Session {
            gamma: GammaTable::build(p, prec, args)?,
            teich: TeichTable::build(p, prec)?,
        })
    }

    pub fn p(&self) -> u64 {
        self.gamma.p
    }

    pub fn prec(&self) -> u32 {
        self.gamma.prec
    }

    pub fn modulus(&self) -> u64 {
        self.teich.modulus
    }

    pub fn gamma_p(&self, x: Rat) -> Result<PadicNum> {
        self.gamma.gamma_p(x)
    }

    /// A `±1` sign at the session precision.
    pub fn sign(&self, s: i64) -> PadicNum {
        let m = self.modulus();
        let u = if s >= 0 { 1 } else { m - 1 };
        PadicNum::new(self.p(), 0, u, self.prec()).expect("unit")
    }

    /// An exact integer at the session precision.
    pub fn int(&self, n: i128) -> PadicNum {
        PadicNum::from_int(self.p(), n, self.prec()).expect("modulus fits")
    }

    /// Teichmuller power as a p-adic unit.
    pub fn omega_pow(&self, x: i64, j: i64) -> Result<PadicNum> {
        PadicNum::new(self.p(), 0, self.teich.teich_pow(x, j)?, self.prec())
    }

    /// `s(p) = Γ_p(1/4) Γ_p(3/4) Γ_p(1/2)^2`.
    pub fn norm_const_s(&self) -> Result<PadicNum> {
        let half = self.gamma_p(Rat::new(1, 2))?;
        Ok(self.gamma_p(Rat::new(1, 4))? * self.gamma_p(Rat::new(3, 4))? * half * half)
    }

    /// `h(p) = Γ_p(1/5) Γ_p(2/5) Γ_p(3/5) Γ_p(4/5)`, for `p ≠ 5`.
    pub fn norm_const_h(&self) -> Result<PadicNum> {
        (1..5).try_fold(PadicNum::one(self.p(), self.prec()), |acc, i| {
            Ok(acc * self.gamma_p(Rat::new(i, 5))?)
        })
    }

    /// `Γ_p(1/d) Γ_p(1-1/d)` for each of two moduli, the normaliser of the
    /// `4G4 ≡ 4F3 + s(p) p` family.
    pub fn norm_const_d(&self, d1: i64, d2: i64) -> Result<PadicNum> {
        let mut acc = PadicNum::one(self.p(), self.prec());
        for d in [d1, d2] {
            acc = acc * self.gamma_p(Rat::new(1, d))? * self.gamma_p(Rat::new(d - 1, d))?;
        }
        Ok(acc)
    }
}

/// Arguments consumed by [`Session::norm_const_s`] and [`Session::norm_const_h`].
pub fn norm_const_args(p: u64) -> Vec<Rat> {
    let mut v = vec![Rat::new(1, 4), Rat::new(3, 4), Rat::new(1, 2)];
    if p != 5 {
        v.extend((1..5).map(|i| Rat::new(i, 5)));
    }
    v
}

/// `(-1)^{⌊(p-1)/d1⌋ + ⌊(p-1)/d2⌋}`.
pub fn floor_sign(p: u64, d1: u64, d2: u64) -> i64 {
    if ((p - 1) / d1 + (p - 1) / d2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `x_0 ∈ {1, …, p}` with `x_0 ≡ x (mod p)`.
pub fn reflection_index(x: Rat, p: u64) -> Result<u64> {
    let r = x.to_residue(p, 1)?;
    Ok(if r == 0 { p } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Straight product, no sweep sharing.
    fn gamma_direct(p: u64, k: u32, x: Rat) -> u64 {
        let m = p.pow(k);
        let r = x.to_residue(p, k).unwrap();
        let n = if r == 0 { m } else { r };
        let mut acc = 1u64;
        for j in 1..n {
            if j % p != 0 {
                acc = (acc as u128 * j as u128 % m as u128) as u64;
            }
        }
        if n % 2 == 1 {
            (m - acc) % m
        } else {
            acc
        }
    }

    #[test]
    fn gamma_examples() {
        for p in [3u64, 5, 7, 11] {
            let t = GammaTable::build(p, 3, [Rat::ZERO, Rat::ONE]).unwrap();
            assert_eq!(t.unit(Rat::ZERO).unwrap(), 1);
            assert_eq!(t.unit(Rat::ONE).unwrap(), p.pow(3) - 1);
        }
        let t = GammaTable::build(7, 1, [Rat::new(1, 2)]).unwrap();
        assert_eq!(t.unit(Rat::new(1, 2)).unwrap(), 6);
        assert!(matches!(
            t.unit(Rat::new(1, 3)),
            Err(Error::MissingArgument(_))
        ));
        assert!(matches!(
            GammaTable::build(3, 2, [Rat::new(1, 3)]),
            Err(Error::DenominatorDivisibleByP(..))
        ));
        assert!(matches!(
            GammaTable::build(9, 2, []),
            Err(Error::InvalidPrime(9))
        ));
        assert!(matches!(
            GammaTable::build(97, 12, []),
            Err(Error::RangeOverflow { .. })
        ));
    }

    #[test]
    fn sweep_matches_direct_product() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
            let k = rng.gen_range(1..4);
            let x = Rat::new(rng.gen_range(-40..40), rng.gen_range(1..12));
            if !x.is_p_integral(p) {
                continue;
            }
            let t = GammaTable::build(p, k, [x, Rat::new(1, 2)]).unwrap();
            assert_eq!(
                t.unit(x).unwrap(),
                gamma_direct(p, k, x),
                "p={p} k={k} x={x}"
            );
        }
    }

    #[test]
    fn teich_examples() {
        let t = TeichTable::build(5, 2).unwrap();
        assert_eq!(t.teich(1).unwrap(), 1);
        assert_eq!(t.teich(4).unwrap(), 24);
        assert_eq!(t.teich(2).unwrap(), 7);
        assert_eq!(t.teich(0), Err(Error::ZeroArgument));
        assert_eq!(t.teich_pow(2, -1).unwrap(), 18); // 7 * 18 = 126 ≡ 1
        assert_eq!(t.quadratic(2).unwrap(), -1);
    }

    #[test]
    fn teich_is_multiplicative_root_of_unity() {
        for p in [3u64, 5, 7, 11, 13] {
            let t = TeichTable::build(p, 4).unwrap();
            let m = t.modulus();
            for x in 1..p as i64 {
                assert_eq!(t.teich(x).unwrap() % p, x as u64);
                assert_eq!(pow_mod(t.teich(x).unwrap(), p - 1, m), 1);
                for y in 1..p as i64 {
                    assert_eq!(
                        t.teich(x * y).unwrap(),
                        mul_mod(t.teich(x).unwrap(), t.teich(y).unwrap(), m)
                    );
                }
                assert_eq!(
                    t.teich_pow(x, 3).unwrap(),
                    pow_mod(t.teich(x).unwrap(), 3, m)
                );
            }
        }
    }

    #[test]
    fn s_product_matches_sign_formula() {
        // s(3) = -1, s(5) = -1, s(13) = -1 from both forms
        for (p, expect) in [(3u64, -1i64), (5, -1), (13, -1), (7, 1), (11, -1), (17, 1)] {
            let s = Session::new(p, 3, norm_const_args(p)).unwrap();
            let v = s.norm_const_s().unwrap();
            assert_eq!(v, s.sign(expect), "p = {p}");
            assert_eq!(floor_sign(p, 4, 2), expect);
        }
    }
}
