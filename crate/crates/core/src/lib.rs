//! p-adic hypergeometric functions and the machinery needed to check
//! identities and supercongruences between them, truncated classical
//! hypergeometric series and weight four newform coefficients.
//!
//! The numeric substrate is [`PadicNum`], a fixed-precision element of Q_p
//! whose unit part lives in a single machine word. Everything a prime needs
//! (Morita gamma values, Teichmuller characters) is precomputed once into a
//! [`Session`] and shared read-only.

pub mod charsums;
mod error;
pub mod gamma;
pub mod gfunction;
pub mod hyperseries;
pub mod modarith;
pub mod padic;
pub mod qseries;
pub mod rat;
pub mod verify;

pub use error::{Error, Result};
pub use gamma::{GammaTable, Session, TeichTable};
pub use gfunction::{GnParams, GnSum};
pub use padic::PadicNum;
pub use qseries::{Newforms, QSeries};
pub use rat::Rat;

/// Deterministic primality test for the small moduli this crate works with.
pub fn is_prime(n: u64) -> bool {
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

/// Odd primes in `lo..=hi`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| is_prime(n)).collect()
}
