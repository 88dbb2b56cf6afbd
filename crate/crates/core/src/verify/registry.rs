//! The identity registry: which primes each claim admits, which gamma
//! arguments and precision it needs, and how both sides are evaluated.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::charsums::{self, CharSumCtx};
use crate::gamma::{floor_sign, norm_const_args, reflection_index, Session};
use crate::gfunction::{GnParams, GnSum};
use crate::hyperseries::{trunc_hyp, TruncSeriesSpec};
use crate::modarith::inv_mod;
use crate::padic::PadicNum;
use crate::qseries::Newforms;
use crate::rat::Rat;
use crate::{Error, Result};

/// How a claim is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// An exact identity, checked as a congruence at the run precision.
    Exact,
    /// A congruence modulo `p^3` involving a truncated series.
    Truncated,
}

#[derive(Clone, Copy, Debug)]
pub struct Identity {
    pub id: &'static str,
    pub kind: Kind,
    pub claim: &'static str,
}

pub const REGISTRY: [Identity; 16] = [
    Identity {
        id: "gamma-reflection",
        kind: Kind::Exact,
        claim: "G(x)G(1-x) = (-1)^x0 for x = r/(p-1)",
    },
    Identity {
        id: "gamma-mult",
        kind: Kind::Exact,
        claim: "gamma multiplication formula, m = 2, 3, 4",
    },
    Identity {
        id: "lemma-quad",
        kind: Kind::Exact,
        claim: "gamma quotient = -sum w^-j(4(1-t)/t^2), 0 < j < p-1",
    },
    Identity {
        id: "lemma-nonquad",
        kind: Kind::Exact,
        claim: "gamma quotient = -sum w^j(-t) phi(t(t-1)), 0 <= j < p-1",
    },
    Identity {
        id: "jacobi-gk",
        kind: Kind::Exact,
        claim: "Jacobi sums from gamma values equal the direct sums",
    },
    Identity {
        id: "thm-quad-transform",
        kind: Kind::Exact,
        claim: "3G3 quadratic transformation, x != 0, 1",
    },
    Identity {
        id: "thm-reduction",
        kind: Kind::Exact,
        claim: "(n+1)G(n+1)[a, 1/2 | s] = -sum_t nGn[a | st] phi(1-t)",
    },
    Identity {
        id: "thm-inversion",
        kind: Kind::Exact,
        claim: "nGn inversion s -> 1/s, n = 2, 3, 4",
    },
    Identity {
        id: "thm-main-id",
        kind: Kind::Exact,
        claim: "4G4[1/2,1/2,1/4,3/4] - s(p)p = phi(-1)(4G4[halves] - p)",
    },
    Identity {
        id: "ao-level8",
        kind: Kind::Exact,
        claim: "4G4[halves | 1] - p = a(p)",
    },
    Identity {
        id: "thm-gtoc-level16",
        kind: Kind::Exact,
        claim: "4G4[1/2,1/2,1/4,3/4 | 1] - s(p)p = c(p)",
    },
    Identity {
        id: "kilbourn-super",
        kind: Kind::Truncated,
        claim: "4F3[halves]_(p-1) = a(p) mod p^3",
    },
    Identity {
        id: "rv3-super",
        kind: Kind::Truncated,
        claim: "4F3[1/2,1/2,1/4,3/4]_(p-1) = c(p) mod p^3",
    },
    Identity {
        id: "thm-4g1",
        kind: Kind::Truncated,
        claim: "4G4[1/d1,1-1/d1,1/d2,1-1/d2] = 4F3[...]_(p-1) + s(p)p mod p^3",
    },
    Identity {
        id: "dmc-level25-g",
        kind: Kind::Exact,
        claim: "4G4[fifths | 1] - h(p)p = b(p), p != 5",
    },
    Identity {
        id: "dmc-level25-f",
        kind: Kind::Truncated,
        claim: "4F3[fifths]_(p-1) = b(p) mod p^3",
    },
];

pub const DEFAULT_D_PAIRS: [(u64, u64); 5] = [(2, 4), (2, 2), (2, 3), (3, 3), (2, 5)];

/// Exhaustive Jacobi pairs up to this prime, random pairs above.
pub const JACOBI_EXHAUSTIVE_MAX: u64 = 13;
pub const JACOBI_RANDOM_PAIRS: usize = 200;

/// Modulus exponent of every truncated-series claim.
pub const TRUNC_PREC: u32 = 3;

pub fn index_of(id: &str) -> Result<usize> {
    REGISTRY
        .iter()
        .position(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub type Case = BTreeMap<String, Value>;

pub(crate) fn case<const N: usize>(fields: [(&str, Value); N]) -> Case {
    fields
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

/// Result of one sweep point before it becomes a report.
#[derive(Clone, Debug)]
pub(crate) enum Verdict {
    Compare {
        lhs: PadicNum,
        rhs: PadicNum,
        k: u32,
        note: Option<String>,
    },
    Skip(&'static str),
    /// Refused before evaluation: the run precision is below the claim's.
    Gate {
        k: u32,
        note: String,
    },
}

pub(crate) struct Outcome {
    pub case: Case,
    pub verdict: Result<Verdict>,
}

impl Outcome {
    fn new(case: Case, verdict: Result<Verdict>) -> Outcome {
        Outcome { case, verdict }
    }
}

/// Shared inputs of one (identity, prime) unit.
pub(crate) struct Ctx<'a> {
    pub p: u64,
    pub k: u32,
    pub session: Option<&'a Session>,
    pub forms: Option<&'a Newforms>,
    pub d_pairs: &'a [(u64, u64)],
}

impl<'a> Ctx<'a> {
    fn sess(&self) -> Result<&'a Session> {
        self.session.ok_or(Error::PrecisionExhausted)
    }

    fn forms(&self) -> Result<&'a Newforms> {
        self.forms
            .ok_or_else(|| Error::MissingArgument("newform coefficients".into()))
    }

    fn phi(&self, x: i64) -> Result<PadicNum> {
        let s = self.sess()?;
        s.omega_pow(x, (self.p as i64 - 1) / 2)
    }

    fn compare(&self, lhs: PadicNum, rhs: PadicNum) -> Verdict {
        Verdict::Compare {
            lhs,
            rhs,
            k: self.k,
            note: None,
        }
    }
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn halves(n: usize) -> Vec<Rat> {
    vec![r(1, 2); n]
}

fn quad_pair() -> Vec<Rat> {
    vec![r(1, 4), r(3, 4), r(1, 2)]
}

fn main_mixed() -> GnParams {
    GnParams::with_unit_lower(vec![r(1, 2), r(1, 2), r(1, 4), r(3, 4)])
}

fn fifths() -> Vec<Rat> {
    (1..5).map(|i| r(i, 5)).collect()
}

fn d_params(d1: u64, d2: u64) -> Vec<Rat> {
    let (d1, d2) = (d1 as i64, d2 as i64);
    vec![r(1, d1), r(d1 - 1, d1), r(1, d2), r(d2 - 1, d2)]
}

fn pm1(p: u64, d: u64) -> bool {
    p % d == 1 % d || p % d == d - 1
}

fn d_admissible(p: u64, d1: u64, d2: u64) -> bool {
    pm1(p, d1) && pm1(p, d2)
}

fn reduction_bases(p: u64) -> Vec<Rat> {
    let mut v = vec![r(1, 2), r(1, 4), r(3, 4)];
    if p != 3 {
        v.push(r(1, 3));
    }
    v
}

/// Multisets of size `n` drawn from `base`, in lexicographic index order.
fn multisets(base: &[Rat], n: usize) -> Vec<Vec<Rat>> {
    fn go(base: &[Rat], n: usize, from: usize, cur: &mut Vec<Rat>, out: &mut Vec<Vec<Rat>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in from..base.len() {
            cur.push(base[i]);
            go(base, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(base, n, 0, &mut Vec::new(), &mut out);
    out
}

fn inversion_params(n: usize) -> (GnParams, GnParams) {
    let mut a = halves(n - 2);
    a.extend([r(1, 4), r(3, 4)]);
    let lhs = GnParams::with_unit_lower(a);
    let mut b = vec![Rat::ONE; n - 2];
    b.extend([r(1, 4), r(3, 4)]);
    let rhs = GnParams::new(halves(n), b).expect("equal lengths");
    (lhs, rhs)
}

fn join(v: &[Rat]) -> String {
    v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")
}

fn inv_fp(x: i64, p: u64) -> i64 {
    inv_mod(x.rem_euclid(p as i64) as u64, p).expect("unit mod p") as i64
}

/// Gamma arguments and relative precision an identity needs at `p`. A
/// precision of 0 means no session is needed.
pub(crate) struct Plan {
    pub args: Vec<Rat>,
    pub prec: u32,
}

fn gn_need(params: &GnParams, p: u64, k: u32, extra_val: i64) -> u32 {
    (k as i64 - extra_val - params.min_valuation(p)).max(1) as u32
}

pub(crate) fn plan(idx: usize, p: u64, k: u32, d_pairs: &[(u64, u64)]) -> Plan {
    let d = p as i64 - 1;
    let steps = || (0..=d).map(move |j| r(j, d));
    let mut args = Vec::new();
    let mut prec = k;
    match REGISTRY[idx].id {
        "gamma-reflection" => {
            for x in steps() {
                args.extend([x, Rat::ONE - x]);
            }
        }
        "gamma-mult" => {
            for m in [2i64, 3, 4] {
                if (m as u64).is_multiple_of(p) {
                    continue;
                }
                for x in steps() {
                    args.push(x);
                    for h in 0..m {
                        args.push(Rat::new(
                            (x + Rat::int(h)).num(),
                            (x + Rat::int(h)).den() * m,
                        ));
                        args.push(r(h, m));
                    }
                }
            }
        }
        "lemma-quad" | "lemma-nonquad" | "jacobi-gk" => args = charsums::gamma_args(p),
        "thm-quad-transform" => {
            args = norm_const_args(p);
            args.extend(GnParams::with_unit_lower(halves(3)).gamma_args(p));
            args.extend(GnParams::with_unit_lower(quad_pair()).gamma_args(p));
        }
        "thm-reduction" => {
            let base = reduction_bases(p);
            for n in 1..=3 {
                for a in multisets(&base, n) {
                    let mut up = a.clone();
                    up.push(r(1, 2));
                    args.extend(GnParams::with_unit_lower(a).gamma_args(p));
                    args.extend(GnParams::with_unit_lower(up).gamma_args(p));
                }
            }
        }
        "thm-inversion" => {
            for n in 2..=4 {
                let (lhs, rhs) = inversion_params(n);
                prec = prec.max(gn_need(&lhs, p, k, 0)).max(gn_need(&rhs, p, k, 1));
                args.extend(lhs.gamma_args(p));
                args.extend(rhs.gamma_args(p));
            }
        }
        "thm-main-id" | "ao-level8" | "thm-gtoc-level16" => {
            args = norm_const_args(p);
            args.extend(main_mixed().gamma_args(p));
            args.extend(GnParams::with_unit_lower(halves(4)).gamma_args(p));
        }
        "dmc-level25-g" => {
            if p == 5 {
                return Plan { args, prec: 0 };
            }
            args = norm_const_args(p);
            args.extend(GnParams::with_unit_lower(fifths()).gamma_args(p));
        }
        "thm-4g1" => {
            if k < TRUNC_PREC {
                return Plan { args, prec: 0 };
            }
            prec = TRUNC_PREC;
            for &(d1, d2) in d_pairs {
                if d_admissible(p, d1, d2) {
                    args.extend(GnParams::with_unit_lower(d_params(d1, d2)).gamma_args(p));
                }
            }
            if args.is_empty() {
                return Plan { args, prec: 0 };
            }
        }
        _ => return Plan { args, prec: 0 },
    }
    Plan { args, prec }
}

/// Evaluates every sweep point of one identity at one prime.
pub(crate) fn run(idx: usize, cx: &Ctx) -> Vec<Outcome> {
    let p = cx.p;
    let pi = p as i64;
    let mut out = Vec::new();
    match REGISTRY[idx].id {
        "gamma-reflection" => {
            for j in 0..pi {
                let v = (|| {
                    let s = cx.sess()?;
                    let x = r(j, pi - 1);
                    let lhs = s.gamma_p(x)? * s.gamma_p(Rat::ONE - x)?;
                    let x0 = reflection_index(x, p)?;
                    Ok(cx.compare(lhs, s.sign(if x0 % 2 == 0 { 1 } else { -1 })))
                })();
                out.push(Outcome::new(case([("r", json!(j))]), v));
            }
        }
        "gamma-mult" => {
            for m in [2i64, 3, 4] {
                for j in 0..pi {
                    let c = case([("m", json!(m)), ("r", json!(j))]);
                    if (m as u64).is_multiple_of(p) {
                        out.push(Outcome::new(c, Ok(Verdict::Skip("filter"))));
                        continue;
                    }
                    let v = (|| {
                        let s = cx.sess()?;
                        let x = r(j, pi - 1);
                        let mut lhs = PadicNum::one(p, s.prec());
                        let mut rhs = s.omega_pow(m, j - (pi - 1))? * s.gamma_p(x)?;
                        for h in 0..m {
                            let y = x + Rat::int(h);
                            lhs = lhs * s.gamma_p(Rat::new(y.num(), y.den() * m))?;
                            if h > 0 {
                                rhs = rhs * s.gamma_p(r(h, m))?;
                            }
                        }
                        Ok(cx.compare(lhs, rhs))
                    })();
                    out.push(Outcome::new(c, v));
                }
            }
        }
        "lemma-quad" => {
            for j in 1..pi - 1 {
                let v = (|| {
                    let s = cx.sess()?;
                    let lhs = charsums::lemma_quad_lhs(s, j)?;
                    let rhs = CharSumCtx::new(&s.teich).lemma_quad_rhs(j)?;
                    Ok(cx.compare(lhs, rhs))
                })();
                out.push(Outcome::new(case([("j", json!(j))]), v));
            }
        }
        "lemma-nonquad" => {
            for j in 0..pi - 1 {
                let v = (|| {
                    let s = cx.sess()?;
                    let lhs = charsums::lemma_nonquad_lhs(s, j)?;
                    let rhs = CharSumCtx::new(&s.teich).lemma_nonquad_rhs(j)?;
                    Ok(cx.compare(lhs, rhs))
                })();
                out.push(Outcome::new(case([("j", json!(j))]), v));
            }
        }
        "jacobi-gk" => {
            for (j1, j2) in jacobi_pairs(p) {
                let v = (|| {
                    let s = cx.sess()?;
                    let lhs = charsums::jacobi_via_gamma(s, j1, j2)?;
                    let rhs = CharSumCtx::new(&s.teich).jacobi_sum(-j1, -j2)?;
                    Ok(cx.compare(lhs, rhs))
                })();
                out.push(Outcome::new(
                    case([("j1", json!(j1)), ("j2", json!(j2))]),
                    v,
                ));
            }
        }
        "thm-quad-transform" => quad_transform(cx, &mut out),
        "thm-reduction" => reduction(cx, &mut out),
        "thm-inversion" => inversion(cx, &mut out),
        "thm-main-id" => {
            let v = (|| {
                let s = cx.sess()?;
                let mixed = GnSum::new(&main_mixed(), s)?.at(1)?;
                let half = GnSum::new(&GnParams::with_unit_lower(halves(4)), s)?.at(1)?;
                let pp = s.int(p as i128);
                let lhs = mixed - s.norm_const_s()? * pp;
                let rhs = cx.phi(-1)? * (half - pp);
                Ok(cx.compare(lhs, rhs))
            })();
            out.push(Outcome::new(Case::new(), v));
        }
        "ao-level8" => {
            let v = (|| {
                let s = cx.sess()?;
                let g = GnSum::new(&GnParams::with_unit_lower(halves(4)), s)?.at(1)?;
                let lhs = g - s.int(p as i128);
                anchor(cx, lhs, cx.forms()?.coeff_a(p as usize)?)
            })();
            out.push(Outcome::new(Case::new(), v));
        }
        "thm-gtoc-level16" => {
            let v = (|| {
                let s = cx.sess()?;
                let g = GnSum::new(&main_mixed(), s)?.at(1)?;
                let lhs = g - s.norm_const_s()? * s.int(p as i128);
                anchor(cx, lhs, cx.forms()?.coeff_c(p as usize)?)
            })();
            out.push(Outcome::new(Case::new(), v));
        }
        "dmc-level25-g" => {
            if p == 5 {
                out.push(Outcome::new(Case::new(), Ok(Verdict::Skip("filter"))));
            } else {
                let v = (|| {
                    let s = cx.sess()?;
                    let g = GnSum::new(&GnParams::with_unit_lower(fifths()), s)?.at(1)?;
                    let lhs = g - s.norm_const_h()? * s.int(p as i128);
                    anchor(cx, lhs, cx.forms()?.coeff_b(p as usize)?)
                })();
                out.push(Outcome::new(Case::new(), v));
            }
        }
        "kilbourn-super" => {
            let v = series_vs_coeff(cx, halves(4), |f| f.coeff_a(p as usize));
            out.push(Outcome::new(Case::new(), v));
        }
        "rv3-super" => {
            let v = series_vs_coeff(cx, main_mixed().a, |f| f.coeff_c(p as usize));
            out.push(Outcome::new(Case::new(), v));
        }
        "dmc-level25-f" => {
            let class = match p % 5 {
                0 => None,
                1 | 4 => Some("pm1"),
                _ => Some("pm2"),
            };
            match class {
                None => out.push(Outcome::new(Case::new(), Ok(Verdict::Skip("filter")))),
                Some(c) => {
                    let v = series_vs_coeff(cx, fifths(), |f| f.coeff_b(p as usize));
                    out.push(Outcome::new(case([("class", json!(c))]), v));
                }
            }
        }
        "thm-4g1" => {
            for &(d1, d2) in cx.d_pairs {
                let c = case([("d1", json!(d1)), ("d2", json!(d2))]);
                let v = if !d_admissible(p, d1, d2) {
                    Ok(Verdict::Skip("filter"))
                } else {
                    four_g_one(cx, d1, d2)
                };
                out.push(Outcome::new(c, v));
            }
        }
        _ => unreachable!("registry ids are exhaustive"),
    }
    out
}

/// Deterministic pair list: every pair up to [`JACOBI_EXHAUSTIVE_MAX`],
/// seeded random pairs beyond.
pub fn jacobi_pairs(p: u64) -> Vec<(i64, i64)> {
    let d = p as i64 - 1;
    if p <= JACOBI_EXHAUSTIVE_MAX {
        return (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .filter(|&pair| pair != (0, 0))
            .collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::with_capacity(JACOBI_RANDOM_PAIRS);
    while out.len() < JACOBI_RANDOM_PAIRS {
        let pair = (rng.gen_range(0..d), rng.gen_range(0..d));
        if pair != (0, 0) {
            out.push(pair);
        }
    }
    out
}

fn quad_transform(cx: &Ctx, out: &mut Vec<Outcome>) {
    let p = cx.p;
    let pi = p as i64;
    let sums = cx.sess().and_then(|s| {
        Ok((
            GnSum::new(&GnParams::with_unit_lower(halves(3)), s)?,
            GnSum::new(&GnParams::with_unit_lower(quad_pair()), s)?,
            s.norm_const_s()?,
        ))
    });
    for x in 2..pi {
        let v = (|| {
            let s = cx.sess()?;
            let (half, quad, sp) = sums.as_ref().map_err(Clone::clone)?;
            let lhs = half.at(inv_fp(x, p))?;
            let z = (-(1 - x) * (1 - x)).rem_euclid(pi) * inv_fp(4 * x, p) % pi;
            let mut rhs = *sp * cx.phi(2 * (1 - x))? * quad.at(z)?;
            if (1 + x) % pi == 0 {
                rhs = rhs + s.int(p as i128) * cx.phi(-1)?;
            }
            Ok(cx.compare(lhs, rhs))
        })();
        out.push(Outcome::new(case([("x", json!(x))]), v));
    }
}

fn reduction(cx: &Ctx, out: &mut Vec<Outcome>) {
    let p = cx.p;
    let pi = p as i64;
    for n in 1..=3 {
        for a in multisets(&reduction_bases(p), n) {
            let mut up = a.clone();
            up.push(r(1, 2));
            let prepared = cx.sess().and_then(|s| {
                let small = GnSum::new(&GnParams::with_unit_lower(a.clone()), s)?;
                let big = GnSum::new(&GnParams::with_unit_lower(up), s)?;
                let vals = (0..pi).map(|u| small.at(u)).collect::<Result<Vec<_>>>()?;
                let phis = (0..pi)
                    .map(|t| {
                        if t == 1 {
                            Ok(PadicNum::zero(p, s.prec() as i64))
                        } else {
                            cx.phi(1 - t)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((big, vals, phis))
            });
            for sv in 1..pi {
                let v = (|| {
                    let s = cx.sess()?;
                    let (big, vals, phis) = prepared.as_ref().map_err(Clone::clone)?;
                    let lhs = big.at(sv)?;
                    let mut acc = PadicNum::zero(p, s.prec() as i64 + 1);
                    for t in 2..pi {
                        acc =
                            acc.checked_add(&(vals[(sv * t % pi) as usize] * phis[t as usize]))?;
                    }
                    Ok(cx.compare(lhs, -acc))
                })();
                let c = case([("a", json!(join(&a))), ("n", json!(n)), ("s", json!(sv))]);
                out.push(Outcome::new(c, v));
            }
        }
    }
}

fn inversion(cx: &Ctx, out: &mut Vec<Outcome>) {
    let p = cx.p;
    let pi = p as i64;
    for n in 2..=4usize {
        let (lp, rp) = inversion_params(n);
        let sums = cx
            .sess()
            .and_then(|s| Ok((GnSum::new(&lp, s)?, GnSum::new(&rp, s)?)));
        for sv in 1..pi {
            let v = (|| {
                let (ls, rs) = sums.as_ref().map_err(Clone::clone)?;
                let lhs = ls.at(sv)?;
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let rhs = (rs.at(inv_fp(sv, p))? * cx.phi(sign * sv)?).shift(1);
                Ok(cx.compare(lhs, rhs))
            })();
            out.push(Outcome::new(case([("n", json!(n)), ("s", json!(sv))]), v));
        }
    }
}

/// An exact identity against a newform coefficient, with the note saying
/// whether the congruence pins down the integer.
fn anchor(cx: &Ctx, lhs: PadicNum, coeff: i128) -> Result<Verdict> {
    let rhs = PadicNum::from_int(cx.p, coeff, cx.k)?;
    let note = certify(&lhs, coeff, cx.p, cx.k);
    Ok(Verdict::Compare {
        lhs,
        rhs,
        k: cx.k,
        note: Some(note),
    })
}

/// Two integers bounded by `2p^{3/2}` that agree mod `p^k` are equal once
/// `4p^{3/2} < p^k`, i.e. `16p^3 < p^{2k}`.
pub fn certify(lhs: &PadicNum, coeff: i128, p: u64, k: u32) -> String {
    let p3 = (p as i128).pow(3);
    let Ok(l) = lhs.symmetric_residue(k) else {
        return "not certified: left side is not a p-adic integer at this precision".into();
    };
    let within = |x: i128| x * x <= 4 * p3;
    let separated = (p as i128)
        .checked_pow(2 * k)
        .is_none_or(|pk2| 16 * p3 < pk2);
    if !within(coeff) {
        format!("not certified: coefficient {coeff} exceeds 2p^(3/2)")
    } else if !within(l) {
        format!("not certified: left side residue {l} exceeds 2p^(3/2)")
    } else if !separated {
        format!("not certified: 4p^(3/2) >= p^{k}")
    } else if l != coeff {
        format!("not certified: residues differ ({l} vs {coeff})")
    } else {
        format!("certified exact: both sides equal {coeff}, |x| <= 2p^(3/2) and 4p^(3/2) < p^{k}")
    }
}

fn gate(cx: &Ctx) -> Option<Verdict> {
    (cx.k < TRUNC_PREC).then(|| Verdict::Gate {
        k: TRUNC_PREC,
        note: format!(
            "claim holds mod p^{TRUNC_PREC}; run precision is p^{}",
            cx.k
        ),
    })
}

fn series_vs_coeff(
    cx: &Ctx,
    upper: Vec<Rat>,
    coeff: impl Fn(&Newforms) -> Result<i128>,
) -> Result<Verdict> {
    if let Some(g) = gate(cx) {
        return Ok(g);
    }
    let p = cx.p;
    let lhs = trunc_hyp(&TruncSeriesSpec::balanced(upper, p, TRUNC_PREC))?;
    Ok(Verdict::Compare {
        lhs: PadicNum::from_int(p, lhs as i128, TRUNC_PREC)?,
        rhs: PadicNum::from_int(p, coeff(cx.forms()?)?, TRUNC_PREC)?,
        k: TRUNC_PREC,
        note: None,
    })
}

fn four_g_one(cx: &Ctx, d1: u64, d2: u64) -> Result<Verdict> {
    if let Some(g) = gate(cx) {
        return Ok(g);
    }
    let s = cx.sess()?;
    let p = cx.p;
    let sp = s.norm_const_d(d1 as i64, d2 as i64)?;
    if sp != s.sign(floor_sign(p, d1, d2)) {
        return Ok(Verdict::Skip("sign-hypothesis"));
    }
    let params = d_params(d1, d2);
    let lhs = GnSum::new(&GnParams::with_unit_lower(params.clone()), s)?.at(1)?;
    let series = trunc_hyp(&TruncSeriesSpec::balanced(params, p, TRUNC_PREC))?;
    let rhs = PadicNum::from_int(p, series as i128, TRUNC_PREC)? + sp * s.int(p as i128);
    Ok(Verdict::Compare {
        lhs,
        rhs,
        k: TRUNC_PREC,
        note: None,
    })
}
