//! The p-adic hypergeometric function `nGn[a; b | s]_p`.
//!
//! ```text
//!   -1/(p-1) Σ_{j=0}^{p-2} (-1)^{jn} ω̄^j(s)
//!       ∏_i Γ_p(⟨a_i - j/(p-1)⟩)/Γ_p(⟨a_i⟩) · Γ_p(⟨-b_i + j/(p-1)⟩)/Γ_p(⟨-b_i⟩)
//!           · (-p)^{-⌊⟨a_i⟩ - j/(p-1)⌋ - ⌊⟨-b_i⟩ + j/(p-1)⌋}
//! ```
//!
//! Only the character factor depends on `s`, so [`GnSum`] folds everything
//! else into one coefficient per `j` and evaluates any `s` in `O(p)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::gamma::Session;
use crate::modarith::{add_mod, inv_mod, mul_mod, neg_mod};
use crate::padic::PadicNum;
use crate::rat::Rat;
use crate::{Error, Result};

/// Upper and lower parameter lists of an `nGn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GnParams {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
}

impl GnParams {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>) -> Result<GnParams> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::Parse(format!(
                "parameter lists must be nonempty and of equal length (got {} and {})",
                a.len(),
                b.len()
            )));
        }
        Ok(GnParams { a, b })
    }

    /// `b = [1, …, 1]`.
    pub fn with_unit_lower(a: Vec<Rat>) -> GnParams {
        let n = a.len();
        GnParams {
            a,
            b: vec![Rat::ONE; n],
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn check_integral(&self, p: u64) -> Result<()> {
        for x in self.a.iter().chain(&self.b) {
            if !x.is_p_integral(p) {
                return Err(Error::DenominatorDivisibleByP(x.to_string(), p));
            }
        }
        Ok(())
    }

    fn pairs(&self) -> impl Iterator<Item = (Rat, Rat)> + '_ {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| (a.frac(), (-*b).frac()))
    }

    /// Every gamma argument the sum touches at prime `p`.
    pub fn gamma_args(&self, p: u64) -> Vec<Rat> {
        let mut out = Vec::with_capacity(4 * self.n() * (p as usize - 1));
        for (fa, fb) in self.pairs() {
            out.push(fa);
            out.push(fb);
            for j in 0..p as i64 - 1 {
                let t = Rat::new(j, p as i64 - 1);
                out.push((fa - t).frac());
                out.push((fb + t).frac());
            }
        }
        out
    }

    /// Exponent of `-p` in the `j`-th term.
    pub fn term_exponent(&self, p: u64, j: i64) -> i64 {
        let t = Rat::new(j, p as i64 - 1);
        self.pairs()
            .map(|(fa, fb)| -(fa - t).floor() - (fb + t).floor())
            .sum()
    }

    /// Smallest term valuation, never above 0.
    pub fn min_valuation(&self, p: u64) -> i64 {
        (0..p as i64 - 1)
            .map(|j| self.term_exponent(p, j))
            .min()
            .unwrap_or(0)
            .min(0)
    }

    /// Relative gamma precision needed so the sum is known mod `p^k`.
    pub fn work_prec(&self, p: u64, k: u32) -> u32 {
        k + (-self.min_valuation(p)) as u32
    }
}

impl fmt::Display for GnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rat]| v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{}G{}[{}; {}]",
            self.n(),
            self.n(),
            join(&self.a),
            join(&self.b)
        )
    }
}

/// `nGn[a; b | ·]_p` with its `s`-independent part precomputed.
#[derive(Clone, Debug)]
pub struct GnSum<'s> {
    session: &'s Session,
    /// Per `j`: `(-p)`-exponent and the signed unit coefficient.
    terms: Vec<(i64, u64)>,
    min_val: i64,
}

impl<'s> GnSum<'s> {
    pub fn new(params: &GnParams, session: &'s Session) -> Result<GnSum<'s>> {
        let p = session.p();
        params.check_integral(p)?;
        let m = session.modulus();
        let g = &session.gamma;
        let n = params.n() as i64;

        let mut denom = 1u64;
        for (fa, fb) in params.pairs() {
            denom = mul_mod(denom, mul_mod(g.unit(fa)?, g.unit(fb)?, m), m);
        }
        let denom_inv = inv_mod(denom, m).ok_or(Error::DivisionByZero)?;

        let mut terms = Vec::with_capacity(p as usize - 1);
        for j in 0..p as i64 - 1 {
            let t = Rat::new(j, p as i64 - 1);
            let mut u = denom_inv;
            let mut e = 0i64;
            for (fa, fb) in params.pairs() {
                let (xa, fla) = (fa - t).frac_floor();
                let (xb, flb) = (fb + t).frac_floor();
                u = mul_mod(u, mul_mod(g.unit(xa)?, g.unit(xb)?, m), m);
                e -= fla + flb;
            }
            // (-1)^{jn} from the sum, (-1)^e from (-p)^e
            if (j * n + e).rem_euclid(2) == 1 {
                u = neg_mod(u, m);
            }
            terms.push((e, u));
        }
        let min_val = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
        Ok(GnSum {
            session,
            terms,
            min_val,
        })
    }

    pub fn session(&self) -> &'s Session {
        self.session
    }

    /// Absolute precision of every value this sum returns.
    pub fn abs_prec(&self) -> i64 {
        self.min_val + self.session.prec() as i64
    }

    /// Value at `s ∈ F_p`; `s ≡ 0` gives zero since `ω̄^j(0) = 0` for all j.
    pub fn at(&self, s: i64) -> Result<PadicNum> {
        let sess = self.session;
        let p = sess.p();
        if s.rem_euclid(p as i64) == 0 {
            return Ok(PadicNum::zero(p, self.abs_prec()));
        }
        let k = sess.prec();
        let m = sess.modulus();
        let ls = sess.teich.dlog(s)? as i64;
        let mut acc = 0u64;
        for (j, &(e, u)) in self.terms.iter().enumerate() {
            let shift = e - self.min_val;
            if shift >= k as i64 {
                continue;
            }
            let w = sess.teich.gen_pow(-(j as i64) * ls);
            let term = mul_mod(mul_mod(u, w, m), p.pow(shift as u32), m);
            acc = add_mod(acc, term, m);
        }
        // prefactor -1/(p-1)
        let pre = neg_mod(inv_mod((p - 1) % m, m).ok_or(Error::DivisionByZero)?, m);
        PadicNum::from_scaled(p, self.min_val, mul_mod(acc, pre, m), k)
    }
}

/// Evaluates one `nGn` against a prepared session.
pub fn evaluate(params: &GnParams, s: i64, session: &Session) -> Result<PadicNum> {
    GnSum::new(params, session)?.at(s)
}

/// Standalone evaluation: builds its own tables at the precision needed for
/// the result to be known mod `p^k_target`.
pub fn evaluate_ngn(params: &GnParams, s: i64, p: u64, k_target: u32) -> Result<PadicNum> {
    params.check_integral(p)?;
    let session = Session::new(p, params.work_prec(p, k_target), params.gamma_args(p))?;
    evaluate(params, s, &session)
}

/// Evaluates under reorderings of the upper and lower lists (independently)
/// and an integer shift of one parameter; true iff every value agrees.
pub fn gn_permutation_check(params: &GnParams, s: i64, p: u64, k: u32, seed: u64) -> Result<bool> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut variants = vec![params.clone()];
    let mut rev = params.clone();
    rev.a.reverse();
    rev.b.reverse();
    variants.push(rev);
    let mut shuffled = params.clone();
    shuffled.a.shuffle(&mut rng);
    shuffled.b.shuffle(&mut rng);
    variants.push(shuffled);
    let mut shifted = params.clone();
    shifted.a[0] = shifted.a[0] + Rat::ONE;
    shifted.b[0] = shifted.b[0] - Rat::int(2);
    variants.push(shifted);

    let mut args = Vec::new();
    for v in &variants {
        args.extend(v.gamma_args(p));
    }
    let session = Session::new(p, params.work_prec(p, k), args)?;
    let base = evaluate(params, s, &session)?;
    for v in &variants[1..] {
        if evaluate(v, s, &session)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}
