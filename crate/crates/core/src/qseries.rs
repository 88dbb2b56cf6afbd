//! Integer q-series for eta quotients and the three weight four newforms the
//! verifier compares against:
//!
//! * `f1 = η(2z)^4 η(4z)^4 = Σ a(n) q^n`, level 8;
//! * `f2 = Σ c(n) q^n` with `c(n) = (-4/n) a(n)`, level 16 (twist of `f1`);
//! * `g = g1 + 5 g2 + 20 g3 + 25 g4 + 25 g5 = Σ b(n) q^n`, level 25, where
//!   `g_i = η(z)^{5-i} η(5z)^4 η(25z)^{i-1}`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::charsums::kronecker_m4;
use crate::{Error, Result};

/// Exact power series `Σ_{n=0}^{nmax} c_n q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<i128>,
}

impl QSeries {
    pub fn one(nmax: usize) -> QSeries {
        let mut coeffs = vec![0; nmax + 1];
        coeffs[0] = 1;
        QSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<i128>) -> QSeries {
        assert!(!coeffs.is_empty());
        QSeries { coeffs }
    }

    pub fn nmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<i128> {
        self.coeffs.get(n).copied().ok_or(Error::BeyondCache {
            n,
            nmax: self.nmax(),
        })
    }

    /// Multiplies by `q^t`, dropping what falls past `nmax`.
    pub fn shift(&self, t: usize) -> QSeries {
        let n = self.coeffs.len();
        let mut coeffs = vec![0; n];
        coeffs[t.min(n)..].copy_from_slice(&self.coeffs[..n.saturating_sub(t)]);
        QSeries { coeffs }
    }

    pub fn checked_add_scaled(&self, other: &QSeries, scale: i128) -> Result<QSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| b.checked_mul(scale).and_then(|x| x.checked_add(*a)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::IntegerOverflow)?;
        Ok(QSeries { coeffs })
    }

    /// Multiplies in place by a sparse series given as `(exponent, coeff)`.
    fn mul_sparse(&mut self, sparse: &[(usize, i128)]) -> Result<()> {
        let nmax = self.nmax();
        for i in (0..=nmax).rev() {
            let mut acc: i128 = 0;
            for &(d, c) in sparse {
                if d > i {
                    break;
                }
                let t = self.coeffs[i - d]
                    .checked_mul(c)
                    .ok_or(Error::IntegerOverflow)?;
                acc = acc.checked_add(t).ok_or(Error::IntegerOverflow)?;
            }
            self.coeffs[i] = acc;
        }
        Ok(())
    }

    /// Divides in place by a sparse series with constant term 1.
    fn div_sparse(&mut self, sparse: &[(usize, i128)]) -> Result<()> {
        debug_assert_eq!(sparse.first(), Some(&(0, 1)));
        for i in 0..=self.nmax() {
            let mut acc = self.coeffs[i];
            for &(d, c) in &sparse[1..] {
                if d > i {
                    break;
                }
                let t = self.coeffs[i - d]
                    .checked_mul(c)
                    .ok_or(Error::IntegerOverflow)?;
                acc = acc.checked_sub(t).ok_or(Error::IntegerOverflow)?;
            }
            self.coeffs[i] = acc;
        }
        Ok(())
    }
}

fn prefactor(factors: &[(u64, i64)]) -> Result<i64> {
    let total: i64 = factors.iter().map(|&(k, e)| k as i64 * e).sum();
    if total % 24 != 0 {
        return Err(Error::NonIntegralPrefactor(total));
    }
    Ok(total / 24)
}

fn check_prefactor(factors: &[(u64, i64)], t: i64) -> Result<usize> {
    let got = prefactor(factors)?;
    if got != t || t < 0 {
        return Err(Error::NonIntegralPrefactor(24 * t));
    }
    Ok(t as usize)
}

/// `q^t ∏_k ∏_{n≥1} (1 - q^{kn})^{e_k}` up to `q^nmax`, built one binomial
/// factor `(1 - q^{kn})^{±1}` at a time.
pub fn eta_like_product(factors: &[(u64, i64)], t: i64, nmax: usize) -> Result<QSeries> {
    let t = check_prefactor(factors, t)?;
    let mut s = QSeries::one(nmax);
    for &(k, e) in factors {
        let k = k as usize;
        for n in 1..=nmax / k {
            let d = k * n;
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for i in (d..=nmax).rev() {
                        s.coeffs[i] = s.coeffs[i]
                            .checked_sub(s.coeffs[i - d])
                            .ok_or(Error::IntegerOverflow)?;
                    }
                } else {
                    for i in d..=nmax {
                        s.coeffs[i] = s.coeffs[i]
                            .checked_add(s.coeffs[i - d])
                            .ok_or(Error::IntegerOverflow)?;
                    }
                }
            }
        }
    }
    Ok(s.shift(t))
}

/// `∏_{n≥1}(1 - q^{kn}) = Σ_m (-1)^m q^{k m(3m-1)/2}` truncated at `nmax`,
/// as sorted `(exponent, coeff)` pairs.
pub fn pentagonal(k: usize, nmax: usize) -> Vec<(usize, i128)> {
    let mut out = vec![(0usize, 1i128)];
    for m in 1i64.. {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let e1 = (m * (3 * m - 1) / 2) as usize * k;
        let e2 = (m * (3 * m + 1) / 2) as usize * k;
        if e1 > nmax {
            break;
        }
        out.push((e1, sign));
        if e2 <= nmax {
            out.push((e2, sign));
        }
    }
    out
}

/// Same product as [`eta_like_product`], via pentagonal-number series raised
/// to each exponent.
pub fn eta_product_pentagonal(factors: &[(u64, i64)], t: i64, nmax: usize) -> Result<QSeries> {
    let t = check_prefactor(factors, t)?;
    let mut s = QSeries::one(nmax);
    for &(k, e) in factors {
        let pent = pentagonal(k as usize, nmax);
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                s.mul_sparse(&pent)?;
            } else {
                s.div_sparse(&pent)?;
            }
        }
    }
    Ok(s.shift(t))
}

/// Eta quotient `∏ η(kz)^{e_k}`; the `q`-prefactor is derived from the factors.
pub fn eta_quotient(factors: &[(u64, i64)], nmax: usize) -> Result<QSeries> {
    eta_product_pentagonal(factors, prefactor(factors)?, nmax)
}

pub const F1_FACTORS: [(u64, i64); 2] = [(2, 4), (4, 4)];

/// Factors of `g_i = η(z)^{5-i} η(5z)^4 η(25z)^{i-1}`.
pub fn g_factors(i: i64) -> [(u64, i64); 3] {
    [(1, 5 - i), (5, 4), (25, i - 1)]
}

pub const G_WEIGHTS: [i128; 5] = [1, 5, 20, 25, 25];

/// Which newform a coefficient request refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// level 8, coefficients `a(n)`
    F1,
    /// level 16, coefficients `c(n)`
    F2,
    /// level 25, coefficients `b(n)`
    G,
}

impl Form {
    pub fn label(self) -> &'static str {
        match self {
            Form::F1 => "f1",
            Form::F2 => "f2",
            Form::G => "g",
        }
    }

    pub fn parse(s: &str) -> Result<Form> {
        match s {
            "f1" => Ok(Form::F1),
            "f2" => Ok(Form::F2),
            "g" => Ok(Form::G),
            _ => Err(Error::Parse(format!(
                "unknown form {s:?} (expected f1, f2 or g)"
            ))),
        }
    }
}

/// Expansion of `g` from its five eta products.
pub fn level25_form(nmax: usize) -> Result<QSeries> {
    let mut acc = QSeries::from_coeffs(vec![0; nmax + 1]);
    for (i, w) in (1..=5).zip(G_WEIGHTS) {
        let gi = eta_product_pentagonal(&g_factors(i), i, nmax)?;
        acc = acc.checked_add_scaled(&gi, w)?;
    }
    Ok(acc)
}

/// `c(n) = (-4/n) a(n)`.
pub fn twist_m4(f: &QSeries) -> QSeries {
    QSeries {
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| kronecker_m4(n as i64) as i128 * a)
            .collect(),
    }
}

/// Cached expansions of `f1` and `g` up to a common `nmax`.
#[derive(Clone, Debug)]
pub struct Newforms {
    a: QSeries,
    b: QSeries,
    c: QSeries,
}

impl Newforms {
    pub fn compute(nmax: usize) -> Result<Newforms> {
        let a = eta_product_pentagonal(&F1_FACTORS, 1, nmax)?;
        let b = level25_form(nmax)?;
        Ok(Newforms::from_parts(a, b))
    }

    fn from_parts(a: QSeries, b: QSeries) -> Newforms {
        let c = twist_m4(&a);
        Newforms { a, b, c }
    }

    /// Loads `f1` and `g` from `dir` when a cached expansion reaches `nmax`,
    /// otherwise computes and stores them.
    pub fn load_or_compute(nmax: usize, dir: &Path) -> Result<Newforms> {
        let mut parts = Vec::new();
        for form in [Form::F1, Form::G] {
            let path = cache_path(dir, form);
            let cached = cache_load(&path, form.label())
                .ok()
                .filter(|s| s.nmax() >= nmax);
            let series = match cached {
                Some(s) => s,
                None => {
                    let s = match form {
                        Form::F1 => eta_product_pentagonal(&F1_FACTORS, 1, nmax)?,
                        _ => level25_form(nmax)?,
                    };
                    fs::create_dir_all(dir)?;
                    cache_store(&path, form.label(), &s)?;
                    s
                }
            };
            parts.push(series);
        }
        let b = parts.pop().expect("two forms");
        let a = parts.pop().expect("two forms");
        Ok(Newforms::from_parts(a, b))
    }

    pub fn nmax(&self) -> usize {
        self.a.nmax().min(self.b.nmax())
    }

    pub fn series(&self, form: Form) -> &QSeries {
        match form {
            Form::F1 => &self.a,
            Form::F2 => &self.c,
            Form::G => &self.b,
        }
    }

    pub fn coeff_a(&self, n: usize) -> Result<i128> {
        self.a.coeff(n)
    }

    pub fn coeff_b(&self, n: usize) -> Result<i128> {
        self.b.coeff(n)
    }

    pub fn coeff_c(&self, n: usize) -> Result<i128> {
        self.c.coeff(n)
    }
}

pub fn cache_path(dir: &Path, form: Form) -> PathBuf {
    dir.join(format!("{}.qseries", form.label()))
}

/// Serializes a series in the line-oriented cache format.
pub fn cache_render(label: &str, series: &QSeries) -> String {
    let mut body = String::new();
    for (n, c) in series.coeffs.iter().enumerate() {
        writeln!(body, "{n}\t{c}").expect("string write");
    }
    format!(
        "#qseries v1 label={label} nmax={}\n{body}#end crc32={:08x}\n",
        series.nmax(),
        crc32fast::hash(body.as_bytes())
    )
}

pub fn cache_store(path: &Path, label: &str, series: &QSeries) -> Result<()> {
    fs::write(path, cache_render(label, series))?;
    Ok(())
}

pub fn cache_load(path: &Path, label: &str) -> Result<QSeries> {
    cache_parse(&fs::read_to_string(path)?, label)
}

pub fn cache_parse(text: &str, label: &str) -> Result<QSeries> {
    let corrupt = |m: &str| Error::CorruptCache(m.to_string());
    let (header, rest) = text
        .split_once('\n')
        .ok_or_else(|| corrupt("missing header"))?;
    let mut fields = header.split(' ');
    if fields.next() != Some("#qseries") {
        return Err(corrupt("bad magic"));
    }
    match fields.next() {
        Some("v1") => {}
        Some(v) => return Err(Error::VersionMismatch(v.to_string())),
        None => return Err(corrupt("missing version")),
    }
    let got_label = fields
        .next()
        .and_then(|f| f.strip_prefix("label="))
        .ok_or_else(|| corrupt("missing label"))?;
    if got_label != label {
        return Err(corrupt(&format!("label {got_label:?}, expected {label:?}")));
    }
    let nmax: usize = fields
        .next()
        .and_then(|f| f.strip_prefix("nmax="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| corrupt("missing nmax"))?;

    let end = rest
        .rfind("#end crc32=")
        .ok_or_else(|| corrupt("missing end marker"))?;
    let (body, trailer) = rest.split_at(end);
    let crc = trailer
        .trim_end()
        .strip_prefix("#end crc32=")
        .and_then(|h| u32::from_str_radix(h, 16).ok())
        .ok_or_else(|| corrupt("bad checksum line"))?;
    if crc32fast::hash(body.as_bytes()) != crc {
        return Err(corrupt("checksum mismatch"));
    }
    let mut coeffs = Vec::with_capacity(nmax + 1);
    for (expect, line) in body.lines().enumerate() {
        let (n, c) = line
            .split_once('\t')
            .ok_or_else(|| corrupt("malformed line"))?;
        if n.parse::<usize>().ok() != Some(expect) {
            return Err(corrupt("exponents out of order"));
        }
        coeffs.push(c.parse().map_err(|_| corrupt("bad coefficient"))?);
    }
    if coeffs.len() != nmax + 1 {
        return Err(corrupt("coefficient count does not match nmax"));
    }
    Ok(QSeries { coeffs })
}
