//! Single-word modular arithmetic for moduli `p^k < 2^63`.

/// Largest modulus accepted anywhere in the crate. Keeps `a + b` of two
/// reduced residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// `p^k`, or `None` if it exceeds [`MAX_MODULUS`].
pub fn pow_checked(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k).filter(|&m| m <= MAX_MODULUS)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Splits `n != 0` into `(v, u)` with `n = p^v * u`, `p ∤ u`.
pub fn split_p(mut n: u64, p: u64) -> (u32, u64) {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Montgomery multiplication for an odd modulus below 2^63.
///
/// Used by the gamma sweep, where the same modulus sees millions of
/// products in a row.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    m: u64,
    /// `-m^{-1} mod 2^64`
    m_neg_inv: u64,
    /// `2^64 mod m`
    r: u64,
}

impl Montgomery {
    pub fn new(m: u64) -> Montgomery {
        assert!(
            m % 2 == 1 && m < (1 << 63),
            "Montgomery modulus must be odd and < 2^63"
        );
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % m as u128) as u64;
        Montgomery {
            m,
            m_neg_inv: inv.wrapping_neg(),
            r,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// `a * b * 2^{-64} mod m` for `a, b < m`.
    #[inline]
    pub fn mul_redc(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let q = (t as u64).wrapping_mul(self.m_neg_inv);
        let s = ((t + q as u128 * self.m as u128) >> 64) as u64;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    /// `2^{64 c} mod m`, the factor that undoes `c` reductions.
    pub fn r_pow(&self, c: u64) -> u64 {
        pow_mod(self.r, c, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_power() {
        assert_eq!(inv_mod(2, 27), Some(14));
        assert_eq!(inv_mod(3, 27), None);
        assert_eq!(pow_mod(2, 5, 25), 7);
        assert_eq!(pow_checked(3, 40), None);
        assert_eq!(split_p(54, 3), (3, 2));
    }

    #[test]
    fn montgomery_matches_plain() {
        for &m in &[3u64, 27, 125, 7u64.pow(9), 47u64.pow(11)] {
            let mont = Montgomery::new(m);
            let mut acc = 1u64;
            let mut plain = 1u64;
            let mut count = 0;
            for j in (1..2000u64).map(|j| j * 7919 % m) {
                if j == 0 {
                    continue;
                }
                acc = mont.mul_redc(acc, j);
                plain = mul_mod(plain, j, m);
                count += 1;
            }
            assert_eq!(mul_mod(acc, mont.r_pow(count), m), plain, "m = {m}");
        }
    }
}
