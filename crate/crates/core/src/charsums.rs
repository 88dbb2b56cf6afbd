//! Character sums over F_p computed directly from Teichmuller values.
//!
//! These are the brute-force sides of the Gross-Koblitz consequences used by
//! the verifier: Jacobi sums and the two quadratic-character sums whose
//! gamma-side expressions appear in the reduction and main identities.

use crate::gamma::{Session, TeichTable};
use crate::modarith::{add_mod, mul_mod, neg_mod};
use crate::padic::PadicNum;
use crate::rat::Rat;
use crate::{Error, Result};

/// Legendre symbol `(x/p)` as `-1`, `0` or `1`.
pub fn legendre(x: i64, p: u64) -> i64 {
    let r = x.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    match crate::modarith::pow_mod(r, (p - 1) / 2, p) {
        1 => 1,
        _ => -1,
    }
}

/// Kronecker symbol `(-4/n)`.
pub fn kronecker_m4(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Character-sum context for one prime.
#[derive(Clone, Copy, Debug)]
pub struct CharSumCtx<'a> {
    pub teich: &'a TeichTable,
}

impl<'a> CharSumCtx<'a> {
    pub fn new(teich: &'a TeichTable) -> CharSumCtx<'a> {
        CharSumCtx { teich }
    }

    fn p(&self) -> u64 {
        self.teich.p()
    }

    fn unit(&self, r: u64) -> Result<PadicNum> {
        PadicNum::from_scaled(self.p(), 0, r, self.teich.prec())
    }

    /// `J(ω^{j1}, ω^{j2}) = Σ_t ω^{j1}(t) ω^{j2}(1-t)` with `χ(0) = 0`.
    pub fn jacobi_sum(&self, j1: i64, j2: i64) -> Result<PadicNum> {
        let p = self.p() as i64;
        if j1.rem_euclid(p - 1) == 0 && j2.rem_euclid(p - 1) == 0 {
            return Err(Error::BothTrivial);
        }
        let m = self.teich.modulus();
        let mut acc = 0;
        for t in 2..p {
            let v = mul_mod(
                self.teich.char_value(t, j1),
                self.teich.char_value(1 - t, j2),
                m,
            );
            acc = add_mod(acc, v, m);
        }
        self.unit(acc)
    }

    /// `-Σ_{t=2}^{p-1} ω̄^j(4(1-t)/t²)`, for `0 < j < p-1`.
    pub fn lemma_quad_rhs(&self, j: i64) -> Result<PadicNum> {
        let p = self.p();
        if j <= 0 || j >= p as i64 - 1 {
            return Err(Error::JOutOfRange { j, p });
        }
        let m = self.teich.modulus();
        let mut acc = 0;
        for t in 2..p as i64 {
            let tinv = inv_fp(t, p);
            let arg = 4 * (1 - t) % p as i64 * tinv % p as i64 * tinv;
            acc = add_mod(acc, self.teich.char_value(arg, -j), m);
        }
        self.unit(neg_mod(acc, m))
    }

    /// `-Σ_{t=2}^{p-1} ω^j(-t) ω^{(p-1)/2}(t(t-1))`, for `0 ≤ j < p-1`.
    pub fn lemma_nonquad_rhs(&self, j: i64) -> Result<PadicNum> {
        let p = self.p();
        if j < 0 || j >= p as i64 - 1 {
            return Err(Error::JOutOfRange { j, p });
        }
        let m = self.teich.modulus();
        let half = (p as i64 - 1) / 2;
        let mut acc = 0;
        for t in 2..p as i64 {
            let v = mul_mod(
                self.teich.char_value(-t, j),
                self.teich.char_value(t * (t - 1), half),
                m,
            );
            acc = add_mod(acc, v, m);
        }
        self.unit(neg_mod(acc, m))
    }
}

fn inv_fp(t: i64, p: u64) -> i64 {
    crate::modarith::inv_mod(t.rem_euclid(p as i64) as u64, p).expect("t is a unit") as i64
}

/// `J(ω̄^{j1}, ω̄^{j2})` from gamma values via Gross-Koblitz.
///
/// With `a = ⟨j1/(p-1)⟩`, `b = ⟨j2/(p-1)⟩`:
/// `-(-p)^{⌊a+b⌋} Γ_p(a)Γ_p(b)/Γ_p(⟨a+b⟩)` when the product character is
/// nontrivial, and `Γ_p(a)Γ_p(b)` when it is trivial.
pub fn jacobi_via_gamma(session: &Session, j1: i64, j2: i64) -> Result<PadicNum> {
    let p = session.p() as i64;
    let (r1, r2) = (j1.rem_euclid(p - 1), j2.rem_euclid(p - 1));
    if r1 == 0 && r2 == 0 {
        return Err(Error::BothTrivial);
    }
    let a = Rat::new(r1, p - 1);
    let b = Rat::new(r2, p - 1);
    let ga = session.gamma_p(a)?;
    let gb = session.gamma_p(b)?;
    if (r1 + r2) % (p - 1) == 0 {
        return Ok(ga * gb);
    }
    let (c, carry) = (a + b).frac_floor();
    let v = (ga * gb).checked_div(&session.gamma_p(c)?)?;
    let sign = if carry % 2 == 0 { -1 } else { 1 };
    Ok((v * session.sign(sign)).shift(carry))
}

/// Gamma arguments read by [`jacobi_via_gamma`] and the lemma left sides.
pub fn gamma_args(p: u64) -> Vec<Rat> {
    let d = p as i64 - 1;
    let mut v: Vec<Rat> = (0..d).map(|j| Rat::new(j, d)).collect();
    v.extend((0..d).map(|j| (Rat::new(1, 2) - Rat::new(j, d)).frac()));
    v.push(Rat::new(1, 2));
    v
}

/// `Γ_p(⟨1/2 - j/(p-1)⟩) Γ_p(j/(p-1)) / Γ_p(1/2) · (-p)^{-⌊1/2 - j/(p-1)⌋}`,
/// the common left side of both quadratic-sum lemmas.
pub fn lemma_lhs(session: &Session, j: i64) -> Result<PadicNum> {
    let p = session.p();
    if j < 0 || j >= p as i64 - 1 {
        return Err(Error::JOutOfRange { j, p });
    }
    let t = Rat::new(j, p as i64 - 1);
    let half = Rat::new(1, 2);
    let (x, fl) = (half - t).frac_floor();
    let v = (session.gamma_p(x)? * session.gamma_p(t)?).checked_div(&session.gamma_p(half)?)?;
    let e = -fl;
    let sign = if e % 2 == 0 { 1 } else { -1 };
    Ok((v * session.sign(sign)).shift(e))
}

/// Left side of the quadratic-sum lemma, `0 < j < p-1`.
pub fn lemma_quad_lhs(session: &Session, j: i64) -> Result<PadicNum> {
    if j == 0 {
        return Err(Error::JOutOfRange { j, p: session.p() });
    }
    lemma_lhs(session, j)
}

/// Left side of the non-quadratic-sum lemma, `0 ≤ j < p-1`.
pub fn lemma_nonquad_lhs(session: &Session, j: i64) -> Result<PadicNum> {
    lemma_lhs(session, j)
}
