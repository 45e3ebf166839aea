//! Valuation-level verifiers for the non-Archimedean Welch bounds, the
//! Zauner conditions and the equiangular-line conditions.
//!
//! Every absolute-value statement `|a| >= |b|` is checked as
//! `v(a) <= v(b)`. Nothing is rounded.

use crate::error::{Error, Result};
use crate::field::{Scalar, Valuation};
use crate::linalg::{
    frame_operator, inner, minpoly_squarefree, rank_of_rows, squarefree_probe, trace,
    verify_diag_certificate, Config, DiagCertificate, Matrix, PROBE_POINTS,
};
use crate::symtensor::{binomial, lift, sym_dim, sym_frame_operator, sym_frame_operator_mod};
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

/// How the diagonalizability hypothesis was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagNote {
    /// An exact certificate `S P = P D` with `det P != 0` was verified.
    Certified,
    /// Only the necessary condition (squarefree minimal polynomial) holds.
    SquarefreeProbePassed,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WelchReport {
    pub m: u32,
    pub n: usize,
    pub d: usize,
    pub lhs_valuation: Valuation,
    pub rhs_valuation: Valuation,
    pub holds: bool,
    pub tight: bool,
    /// Valuation of `<tau_j, tau_k>` for `j < k`.
    #[serde(serialize_with = "serialize_pairs")]
    pub pair_valuations: BTreeMap<(usize, usize), Valuation>,
    pub diag_note: DiagNote,
}

fn serialize_pairs<S: serde::Serializer>(
    pairs: &BTreeMap<(usize, usize), Valuation>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pairs.len()))?;
    for (&(j, k), v) in pairs {
        seq.serialize_element(&(j, k, v))?;
    }
    seq.end()
}

/// Valuation of a nonzero integer embedded in `K`, computed from first
/// principles rather than assumed.
fn int_valuation(k: u64) -> Valuation {
    Scalar::from_int(k as i64).valuation()
}

/// Establishes the diagonalizability note for `op`.
///
/// A supplied certificate must verify. Without one, an operator that is
/// already diagonal certifies itself with `P = I`; otherwise the squarefree
/// probe is run.
pub fn diag_note(op: &Matrix, cert: Option<&DiagCertificate>) -> Result<DiagNote> {
    if let Some(cert) = cert {
        return checked_note(op, cert);
    }
    if let Some(note) = self_certified(op)? {
        return Ok(note);
    }
    Ok(probe_note(minpoly_squarefree(op)))
}

/// The order-`m` operator is a sum of `n` rank-one terms built from the
/// lifted vectors, so its rank is at most `n` and at most the rank of the
/// lifts. Without a certificate the operator is first examined through
/// its images mod `p`, which are cheap to form; the exact operator is only
/// built when those are inconclusive.
fn operator_note(config: &Config, m: u32, cert: Option<&DiagCertificate>) -> Result<DiagNote> {
    if let Some(cert) = cert {
        return checked_note(&operator_for(config, m), cert);
    }
    let exact = std::cell::OnceCell::new();
    let op = || exact.get_or_init(|| operator_for(config, m));
    let dim = sym_dim(config.d(), m);
    let specialize = |t0| sym_frame_operator_mod(config, m, t0);
    // a nonzero off-diagonal residue rules out a diagonal operator
    let maybe_diagonal = PROBE_POINTS.iter().all(|&t0| match specialize(t0) {
        Some(a) => (0..dim).all(|i| (0..dim).all(|j| i == j || a[i * dim + j] == 0)),
        None => true,
    });
    if maybe_diagonal {
        if let Some(note) = self_certified(op())? {
            return Ok(note);
        }
    }
    let lifts_rank = || {
        let lifts: Vec<Vec<Scalar>> = config
            .vectors()
            .iter()
            .map(|v| lift(v, m).coords().to_vec())
            .collect();
        rank_of_rows(&lifts)
    };
    let mut bounds = std::iter::once(config.n()).chain(std::iter::once_with(lifts_rank));
    Ok(probe_note(squarefree_probe(
        dim,
        &specialize,
        &mut bounds,
        &|| op().clone(),
    )))
}

fn checked_note(op: &Matrix, cert: &DiagCertificate) -> Result<DiagNote> {
    if verify_diag_certificate(op, cert)? {
        Ok(DiagNote::Certified)
    } else {
        Err(Error::CertificateRejected)
    }
}

/// A diagonal operator is its own certificate with `P = I`.
fn self_certified(op: &Matrix) -> Result<Option<DiagNote>> {
    if !op.is_diagonal() {
        return Ok(None);
    }
    let own = DiagCertificate {
        p: Matrix::identity(op.dim()),
        d: op.diagonal(),
    };
    Ok(verify_diag_certificate(op, &own)?.then_some(DiagNote::Certified))
}

fn probe_note(squarefree: bool) -> DiagNote {
    if squarefree {
        DiagNote::SquarefreeProbePassed
    } else {
        DiagNote::Unverified
    }
}

fn operator_for(config: &Config, m: u32) -> Matrix {
    if m == 1 {
        frame_operator(config)
    } else {
        sym_frame_operator(config, m)
    }
}

fn pair_valuations(config: &Config) -> BTreeMap<(usize, usize), Valuation> {
    let vs = config.vectors();
    let mut out = BTreeMap::new();
    for j in 0..vs.len() {
        for k in j + 1..vs.len() {
            let x = inner(&vs[j], &vs[k]).expect("shared dimension");
            out.insert((j, k), x.valuation());
        }
    }
    out
}

fn ensure_unit_norm(config: &Config) -> Result<()> {
    match config.norms().iter().position(|x| !x.is_one()) {
        Some(index) => Err(Error::NotUnitNorm { index }),
        None => Ok(()),
    }
}

fn ensure_order(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgs("order m must be at least 1".into()));
    }
    Ok(())
}

fn report(
    config: &Config,
    m: u32,
    lhs_valuation: Valuation,
    rhs_valuation: Valuation,
    pairs: BTreeMap<(usize, usize), Valuation>,
    diag_note: DiagNote,
) -> WelchReport {
    WelchReport {
        m,
        n: config.n(),
        d: config.d(),
        lhs_valuation,
        rhs_valuation,
        holds: lhs_valuation <= rhs_valuation,
        tight: lhs_valuation == rhs_valuation,
        pair_valuations: pairs,
        diag_note,
    }
}

fn unit_norm_check(config: &Config, m: u32, cert: Option<&DiagCertificate>) -> Result<WelchReport> {
    ensure_order(m)?;
    if config.n() < 2 {
        return Err(Error::InvalidArgs(
            "at least two vectors are required".into(),
        ));
    }
    ensure_unit_norm(config)?;
    let note = operator_note(config, m, cert)?;
    let pairs = pair_valuations(config);
    let v_n = int_valuation(config.n() as u64);
    let lhs = pairs
        .values()
        .map(|v| v.scale(2 * m as u64))
        .fold(v_n, Valuation::min);
    let v_dim = int_valuation(binomial((config.d() + m as usize - 1) as u64, m as u64));
    let rhs = v_n
        .scale(2)
        .sub_finite(v_dim.finite().expect("nonzero integer"));
    Ok(report(config, m, lhs, rhs, pairs, note))
}

/// First-order bound for unit-norm families:
/// `max{|n|, |<tau_j, tau_k>|^2} >= |n|^2 / |d|`.
pub fn check_first_order(config: &Config, cert: Option<&DiagCertificate>) -> Result<WelchReport> {
    unit_norm_check(config, 1, cert)
}

/// Order-`m` bound for unit-norm families:
/// `max{|n|, |<tau_j, tau_k>|^{2m}} >= |n|^2 / |C(d+m-1, m)|`.
pub fn check_higher_order(
    config: &Config,
    m: u32,
    cert: Option<&DiagCertificate>,
) -> Result<WelchReport> {
    unit_norm_check(config, m, cert)
}

/// General form without the unit-norm hypothesis:
/// `max{|sum_l <tau_l,tau_l>^{2m}|, |<tau_j,tau_k>|^{2m}}
///   >= |sum_j <tau_j,tau_j>^m|^2 / |C(d+m-1, m)|`.
pub fn check_general(
    config: &Config,
    m: u32,
    cert: Option<&DiagCertificate>,
) -> Result<WelchReport> {
    ensure_order(m)?;
    let note = operator_note(config, m, cert)?;
    let pairs = pair_valuations(config);
    let norms = config.norms();
    let diag_sum: Scalar = norms.iter().map(|x| x.pow(2 * m)).sum();
    let lhs = pairs
        .values()
        .map(|v| v.scale(2 * m as u64))
        .fold(diag_sum.valuation(), Valuation::min);
    let trace_sum: Scalar = norms.iter().map(|x| x.pow(m)).sum();
    let v_dim = int_valuation(binomial((config.d() + m as usize - 1) as u64, m as u64));
    let rhs = trace_sum
        .valuation()
        .scale(2)
        .sub_finite(v_dim.finite().expect("nonzero integer"));
    Ok(report(config, m, lhs, rhs, pairs, note))
}

/// The quantities along the trace route of the bound: `v(Tr S)`,
/// `v(Tr S^2)` and `v(dim Sym^m)`, for the order-`m` frame operator `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceChain {
    pub trace_valuation: Valuation,
    pub trace_sq_valuation: Valuation,
    pub dim_valuation: Valuation,
}

impl TraceChain {
    /// `|Tr S|^2 <= |dim| |Tr S^2|`, the Cauchy-Schwarz step.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        self.trace_valuation.scale(2) >= self.dim_valuation + self.trace_sq_valuation
    }
}

pub fn trace_chain(config: &Config, m: u32) -> TraceChain {
    let op = operator_for(config, m);
    let n = op.dim();
    // Tr S^2 = sum_{a,b} S_ab S_ba, without forming S^2
    let trace_sq: Scalar = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| op.get(a, b) * op.get(b, a))
        .sum();
    TraceChain {
        trace_valuation: trace(&op).valuation(),
        trace_sq_valuation: trace_sq.valuation(),
        dim_valuation: int_valuation(binomial((config.d() + m as usize - 1) as u64, m as u64)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZaunerRecord {
    pub unit_norm: bool,
    pub diagonalizable: DiagNote,
    pub condition_iii: bool,
    pub satisfied: bool,
}

/// Checks the three Zauner-type conditions on `d^2` vectors in `K^d`:
/// unit norms, a diagonalizable frame operator, and
/// `|<tau_j, tau_k>|^2 = |n|` for all `j != k` with `n = d^2`.
pub fn zauner_check(config: &Config, cert: Option<&DiagCertificate>) -> Result<ZaunerRecord> {
    let expected = config.d() * config.d();
    if config.n() != expected {
        return Err(Error::WrongCount {
            expected,
            found: config.n(),
        });
    }
    let unit_norm = config.norms().iter().all(Scalar::is_one);
    let diagonalizable = operator_note(config, 1, cert)?;
    let v_n = int_valuation(config.n() as u64);
    let condition_iii = pair_valuations(config).values().all(|v| v.scale(2) == v_n);
    Ok(ZaunerRecord {
        unit_norm,
        diagonalizable,
        condition_iii,
        satisfied: unit_norm && condition_iii && diagonalizable == DiagNote::Certified,
    })
}

/// `<tau_j, tau_j> = a` for all `j` and `2 v(<tau_j, tau_k>) = gamma_v` for
/// all `j != k`. `gamma_v = Infinite` encodes `gamma = 0`.
pub fn equiangular_check(config: &Config, a: &Scalar, gamma_v: Valuation) -> bool {
    config.norms().iter().all(|x| x == a)
        && pair_valuations(config)
            .values()
            .all(|v| v.scale(2) == gamma_v)
}
