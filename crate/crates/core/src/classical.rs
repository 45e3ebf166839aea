//! Archimedean bounds on the coherence of unit-vector families in `R^d`
//! and `C^d`, evaluated in double precision.

use crate::error::{Error, Result};
use crate::symtensor::binomial;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "r")]
    Real,
    #[serde(rename = "c")]
    Complex,
}

impl FieldTag {
    /// `dim_R(K) / 2`: one half for the reals, one for the complexes.
    pub fn half_real_dim(self) -> f64 {
        match self {
            FieldTag::Real => 0.5,
            FieldTag::Complex => 1.0,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Real => "r",
            FieldTag::Complex => "c",
        })
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" | "R" | "real" => Ok(FieldTag::Real),
            "c" | "C" | "complex" => Ok(FieldTag::Complex),
            _ => Err(Error::InvalidArgs(format!(
                "unknown field {s:?}, expected r or c"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self(entries)
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }
}

/// Hermitian inner product, conjugate-linear in the second argument.
pub fn hermitian(x: &ComplexVector, y: &ComplexVector) -> Complex64 {
    x.0.iter().zip(&y.0).map(|(a, b)| a * b.conj()).sum()
}

/// A family of unit vectors; members are normalized on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalConfig {
    vectors: Vec<ComplexVector>,
    field: FieldTag,
}

impl ClassicalConfig {
    pub fn new(vectors: Vec<ComplexVector>, field: FieldTag) -> Result<Self> {
        let d = vectors.first().ok_or(Error::EmptyConfig)?.dim();
        if d == 0 {
            return Err(Error::InvalidArgs(
                "vectors must have positive dimension".into(),
            ));
        }
        let mut out = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
            if v.0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidArgs(format!(
                    "vector {i} has a non-finite entry"
                )));
            }
            if field == FieldTag::Real && v.0.iter().any(|z| z.im != 0.0) {
                return Err(Error::InvalidArgs(format!("vector {i} is not real")));
            }
            let norm = v.norm();
            if norm == 0.0 {
                return Err(Error::InvalidArgs(format!("vector {i} is zero")));
            }
            out.push(ComplexVector(v.0.iter().map(|z| z / norm).collect()));
        }
        Ok(Self {
            vectors: out,
            field,
        })
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.vectors
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn d(&self) -> usize {
        self.vectors[0].dim()
    }
}

/// `max_{j != k} |<tau_j, tau_k>|`.
pub fn coherence(config: &ClassicalConfig) -> Result<f64> {
    if config.n() < 2 {
        return Err(Error::InvalidArgs(
            "coherence needs at least two vectors".into(),
        ));
    }
    Ok(coherence_of(&config.vectors))
}

pub(crate) fn coherence_of(vs: &[ComplexVector]) -> f64 {
    let mut best = 0.0f64;
    for j in 0..vs.len() {
        for k in j + 1..vs.len() {
            best = best.max(hermitian(&vs[j], &vs[k]).norm());
        }
    }
    best
}

/// `sum_{j,k} |<tau_j, tau_k>|^{2m}` over all ordered pairs, diagonal
/// included.
pub fn welch_sum_lhs(config: &ClassicalConfig, m: u32) -> f64 {
    let vs = &config.vectors;
    let mut total = 0.0;
    for x in vs {
        for y in vs {
            total += hermitian(x, y).norm_sqr().powi(m as i32);
        }
    }
    total
}

/// `n^2 / C(d+m-1, m)`.
pub fn welch_sum_rhs(n: usize, d: usize, m: u32) -> f64 {
    let dim = binomial((d + m as usize - 1) as u64, m as u64) as f64;
    (n as f64).powi(2) / dim
}

/// Lower bound on `max_{j != k} |<tau_j, tau_k>|^{2m}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WelchMax {
    pub m: u32,
    /// Clamped at zero.
    pub value: f64,
    /// The raw formula was negative, so the bound says nothing.
    pub vacuous: bool,
}

/// `(1/(n-1)) (n / C(d+m-1, m) - 1)`; for `m = 1` this is
/// `(n-d) / (d(n-1))`.
pub fn welch_max_bound(n: usize, d: usize, m: u32) -> Result<WelchMax> {
    if d == 0 || m == 0 || n <= d {
        return Err(Error::InvalidArgs(format!(
            "welch_max_bound needs n > d >= 1 and m >= 1 (n={n}, d={d}, m={m})"
        )));
    }
    let dim = binomial((d + m as usize - 1) as u64, m as u64) as f64;
    let raw = (n as f64 / dim - 1.0) / (n as f64 - 1.0);
    Ok(WelchMax {
        m,
        value: raw.max(0.0),
        vacuous: raw < 0.0,
    })
}

/// Maximal number of equiangular lines: `d^2` over `C`, `d(d+1)/2` over `R`.
pub fn gerzon(d: usize, field: FieldTag) -> u64 {
    let d = d as u64;
    match field {
        FieldTag::Complex => d * d,
        FieldTag::Real => d * (d + 1) / 2,
    }
}

pub fn bukh_cox(n: usize, d: usize, field: FieldTag) -> Result<f64> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgs(format!(
            "Bukh-Cox bound needs n > d >= 1 (n={n}, d={d})"
        )));
    }
    let m = field.half_real_dim();
    let z = gerzon(n - d, field) as f64;
    let (n, gap) = (n as f64, (n - d) as f64);
    let den = n * (1.0 + m * (gap - 1.0) * (1.0 / m + gap).sqrt()) - z;
    if den <= 0.0 {
        return Err(Error::DomainError(format!(
            "Bukh-Cox denominator {den} is not positive"
        )));
    }
    Ok(z / den)
}

/// Orthoplex (Rankin) bound `1 / sqrt(d)`.
pub fn orthoplex(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidArgs("orthoplex bound needs d >= 1".into()));
    }
    Ok(1.0 / (d as f64).sqrt())
}

pub fn levenstein(n: usize, d: usize, field: FieldTag) -> Result<f64> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgs(format!(
            "Levenstein bound needs n > d >= 1 (n={n}, d={d})"
        )));
    }
    let m = field.half_real_dim();
    let (nf, df) = (n as f64, d as f64);
    let radicand = (nf * (m + 1.0) - df * (m * df + 1.0)) / ((nf - df) * (m * df + 1.0));
    if radicand < 0.0 {
        return Err(Error::DomainError(format!(
            "Levenstein radicand {radicand} is negative"
        )));
    }
    Ok(radicand.sqrt())
}

/// `1 - 2 n^{-1/(d-1)}`, defined for `d >= 2`.
pub fn exponential(n: usize, d: usize) -> Result<f64> {
    if d < 2 || n == 0 {
        return Err(Error::InvalidArgs(format!(
            "exponential bound needs d >= 2, n >= 1 (d={d})"
        )));
    }
    Ok(1.0 - 2.0 * (n as f64).powf(-1.0 / (d as f64 - 1.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub welch_max: bool,
    pub bukh_cox: bool,
    pub orthoplex: bool,
    pub levenstein: bool,
    pub exponential: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsTable {
    pub n: usize,
    pub d: usize,
    pub field: FieldTag,
    pub gerzon: u64,
    pub welch_max: Vec<WelchMax>,
    pub bukh_cox: Option<f64>,
    pub orthoplex: Option<f64>,
    pub levenstein: Option<f64>,
    pub exponential: Option<f64>,
    pub applicable: Applicability,
    /// Largest applicable lower bound on the coherence itself (Welch
    /// entries converted via the `2m`-th root).
    pub best_lower_bound: f64,
    pub best_source: String,
    pub notes: Vec<String>,
}

pub fn bounds_table(n: usize, d: usize, field: FieldTag, orders: &[u32]) -> Result<BoundsTable> {
    if n < 2 || d == 0 {
        return Err(Error::InvalidArgs(format!(
            "bounds table needs n >= 2, d >= 1 (n={n}, d={d})"
        )));
    }
    let z = gerzon(d, field);
    let applicable = Applicability {
        welch_max: n > d,
        bukh_cox: n > d,
        orthoplex: n as u64 > z,
        levenstein: n as u64 > z,
        exponential: d >= 2,
    };
    let mut notes = Vec::new();
    let mut keep = |name: &str, r: Result<f64>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("{name}: {e}"));
            None
        }
    };

    let welch_max: Vec<WelchMax> = if applicable.welch_max {
        orders
            .iter()
            .map(|&m| welch_max_bound(n, d, m))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let bukh = applicable
        .bukh_cox
        .then(|| keep("bukh_cox", bukh_cox(n, d, field)))
        .flatten();
    let ortho = applicable
        .orthoplex
        .then(|| keep("orthoplex", orthoplex(d)))
        .flatten();
    let leven = applicable
        .levenstein
        .then(|| keep("levenstein", levenstein(n, d, field)))
        .flatten();
    let expo = applicable
        .exponential
        .then(|| keep("exponential", exponential(n, d)))
        .flatten();

    let mut best = (0.0f64, String::from("trivial"));
    let mut consider = |v: f64, name: String| {
        if v > best.0 {
            best = (v, name);
        }
    };
    for w in &welch_max {
        consider(
            w.value.powf(1.0 / (2.0 * w.m as f64)),
            format!("welch_max(m={})", w.m),
        );
    }
    for (v, name) in [
        (bukh, "bukh_cox"),
        (ortho, "orthoplex"),
        (leven, "levenstein"),
        (expo, "exponential"),
    ] {
        if let Some(v) = v {
            consider(v, name.to_string());
        }
    }

    Ok(BoundsTable {
        n,
        d,
        field,
        gerzon: z,
        welch_max,
        bukh_cox: bukh,
        orthoplex: ortho,
        levenstein: leven,
        exponential: expo,
        applicable,
        best_lower_bound: best.0,
        best_source: best.1,
        notes,
    })
}
