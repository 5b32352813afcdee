//! End-to-end verification pipeline.
//!
//! A certificate is the result of recomputing every published figure of the
//! two-representation theorem and comparing it, in certified interval
//! arithmetic, against a registry of claims embedded at compile time. Each
//! claim records what the published text states, how the comparison is to be
//! made, and (where the recomputation showed a printed figure to be off) the
//! corrected value that the certified rerun supports.
//!
//! The registry lives in `claims.json` next to this module. Claims are
//! grouped into stages and a run may restrict itself to a subset; stages
//! that feed others are pulled in automatically (the reduction needs both
//! the continued fractions and the bound chain).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contfrac::{find_convergent_exceeding, CfError};
use crate::field::{build_constants, FieldConstants, FieldError};
use crate::logbounds::{
    bound_chain, envelope_checks, BoundChainReport, EnvelopeCheck, LogBoundsError,
};
use crate::real::{CertifiedReal, RealError};
use crate::reduction::{
    published_campaigns, recomputed_prefactors, reduction_envelope_checks, run_campaign,
    run_full_reduction, CampaignResult, PrefactorCheck, ReductionContext, ReductionError,
};
use crate::search::{verify_theorem, IndexConvention, SearchError, SearchWindow, TheoremComparison};

/// The embedded claims registry.
pub const CLAIMS_JSON: &str = include_str!("claims.json");

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Real(#[from] RealError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    LogBounds(#[from] LogBoundsError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("claims registry: {0}")]
    Registry(String),
    #[error("claim {0}: comparison undecidable at the working precision")]
    PrecisionTooLow(String),
    #[error("certificate serialization: {0}")]
    Serialization(String),
}

impl CertificateError {
    /// Whether the failure is a precision shortfall rather than a wrong
    /// value or a bad configuration.
    pub fn is_precision_related(&self) -> bool {
        matches!(
            self,
            CertificateError::PrecisionTooLow(_)
                | CertificateError::Reduction(ReductionError::PrecisionExhausted { .. })
                | CertificateError::Cf(CfError::PrecisionExhausted { .. })
                | CertificateError::Cf(CfError::AdaptiveLimit { .. })
        )
    }
}

/// Pipeline stages. `Reduce` consumes the continued fractions and the bound
/// chain, so requesting it pulls in `Cf` and `Bounds`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Search,
    Cf,
    Bounds,
    Reduce,
}

impl Stage {
    pub fn all() -> BTreeSet<Stage> {
        [Stage::Search, Stage::Cf, Stage::Bounds, Stage::Reduce].into_iter().collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Stage::Search => "search",
            Stage::Cf => "cf",
            Stage::Bounds => "bounds",
            Stage::Reduce => "reduce",
        }
    }
}

/// Adds the stages a requested stage depends on.
pub fn stage_closure(requested: &BTreeSet<Stage>) -> BTreeSet<Stage> {
    let mut out = requested.clone();
    if out.contains(&Stage::Reduce) {
        out.insert(Stage::Cf);
        out.insert(Stage::Bounds);
    }
    out
}

/// How a claim's recomputed value is compared with its published one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimMode {
    /// Unordered integer set equality.
    SetEq,
    /// Exact string equality of a canonical rendering.
    Exact,
    /// Exact decimal integer equality.
    ExactInt,
    /// A certified inequality or structural check holds.
    Bool,
    /// Enclosure within a relative band around the published value.
    ApproxRel,
    /// Certified lower endpoint at or above the published floor, minus a
    /// print-rounding allowance.
    LowerBound,
    /// Certified upper endpoint at or below the published value (or the
    /// corrected one where the published value is not a true bound).
    UpperBoundValue,
    /// Derived integer bound at most the published one plus two (printed
    /// evaluations round their last step); beyond that it must equal the
    /// registered corrected value.
    IntUpper,
    /// Enclosure within one unit in the last place of the published decimal.
    RoundedDecimal,
    /// Recorded structural assumption; not machine-checked.
    Assumption,
}

/// One entry of the embedded registry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    pub stage: Stage,
    pub mode: ClaimMode,
    pub description: String,
    #[serde(default)]
    pub printed: Option<String>,
    #[serde(default)]
    pub corrected: Option<String>,
    #[serde(default)]
    pub tolerance: Option<String>,
    #[serde(default)]
    pub allowance: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

/// Parses and validates the embedded registry.
pub fn claims_registry() -> Result<Vec<ClaimSpec>, CertificateError> {
    let specs: Vec<ClaimSpec> = serde_json::from_str(CLAIMS_JSON)
        .map_err(|e| CertificateError::Registry(e.to_string()))?;
    let mut seen = BTreeSet::new();
    for spec in &specs {
        if !seen.insert(spec.id.clone()) {
            return Err(CertificateError::Registry(format!("duplicate claim id {}", spec.id)));
        }
        let needs_printed = !matches!(spec.mode, ClaimMode::Bool | ClaimMode::Assumption);
        if needs_printed && spec.printed.is_none() {
            return Err(CertificateError::Registry(format!(
                "claim {} has mode {:?} but no printed value",
                spec.id, spec.mode
            )));
        }
    }
    Ok(specs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimOutcome {
    /// Recomputation agrees with the published figure.
    Verified,
    /// Recomputation contradicts the published figure but matches the
    /// registered corrected value, leaving the argument intact.
    VerifiedWithCorrection,
    /// Recomputation contradicts the claim.
    Mismatch,
    /// Recorded assumption, not machine-checked.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub stage: Stage,
    pub mode: ClaimMode,
    pub description: String,
    pub outcome: ClaimOutcome,
    #[serde(default)]
    pub printed: Option<String>,
    #[serde(default)]
    pub corrected: Option<String>,
    #[serde(default)]
    pub recomputed: Option<String>,
    #[serde(default)]
    pub detail: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    MismatchFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub verified_with_correction: usize,
    pub mismatched: usize,
    pub assumed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub precision_bits: u32,
    pub window: String,
    pub stages_run: Vec<Stage>,
    pub summary: Summary,
    pub claims: Vec<ClaimResult>,
    pub runtime_notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub stages: BTreeSet<Stage>,
    pub precision_bits: u32,
    pub m_max: u32,
    pub n_max: u32,
    pub convention: IndexConvention,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            stages: Stage::all(),
            precision_bits: 192,
            m_max: 189,
            n_max: 300,
            convention: IndexConvention::canonical(),
        }
    }
}

/// Everything the evaluators read. Fields stay `None` when their stage was
/// not requested.
struct Artifacts {
    consts: Option<FieldConstants>,
    search_cmp: Option<TheoremComparison>,
    search_wide: Option<TheoremComparison>,
    ctx: Option<ReductionContext>,
    chain: Option<BoundChainReport>,
    envelopes: Option<Vec<EnvelopeCheck>>,
    campaigns: Option<Vec<CampaignResult>>,
    prefactors: Option<Vec<PrefactorCheck>>,
    reduction_envelopes: Option<Vec<EnvelopeCheck>>,
    /// Convergent indices clearing `6M` under the self-contained caps, when
    /// they exist.
    sound_clear_indices: Option<Option<(usize, usize)>>,
    sound_pos: Option<CampaignResult>,
    sound_neg: Option<CampaignResult>,
    sound_caps: Option<(BigInt, BigInt)>,
    runtime_notes: Vec<String>,
}

impl Artifacts {
    fn consts(&self) -> Result<&FieldConstants, CertificateError> {
        self.consts.as_ref().ok_or_else(|| missing("constants"))
    }
    fn search_cmp(&self) -> Result<&TheoremComparison, CertificateError> {
        self.search_cmp.as_ref().ok_or_else(|| missing("search"))
    }
    fn ctx(&self) -> Result<&ReductionContext, CertificateError> {
        self.ctx.as_ref().ok_or_else(|| missing("continued fractions"))
    }
    fn chain(&self) -> Result<&BoundChainReport, CertificateError> {
        self.chain.as_ref().ok_or_else(|| missing("bound chain"))
    }
    fn campaign(&self, id: &str) -> Result<&CampaignResult, CertificateError> {
        self.campaigns
            .as_ref()
            .and_then(|cs| cs.iter().find(|c| c.id == id))
            .ok_or_else(|| missing(&format!("campaign {id}")))
    }
    fn envelope(&self, id: &str) -> Result<&EnvelopeCheck, CertificateError> {
        self.envelopes
            .as_ref()
            .and_then(|es| es.iter().find(|e| e.id == id))
            .ok_or_else(|| missing(&format!("envelope {id}")))
    }
    fn reduction_envelope(&self, id: &str) -> Result<&EnvelopeCheck, CertificateError> {
        self.reduction_envelopes
            .as_ref()
            .and_then(|es| es.iter().find(|e| e.id == id))
            .ok_or_else(|| missing(&format!("reduction envelope {id}")))
    }
    fn prefactor(&self, id: &str) -> Result<&PrefactorCheck, CertificateError> {
        self.prefactors
            .as_ref()
            .and_then(|ps| ps.iter().find(|p| p.id == id))
            .ok_or_else(|| missing(&format!("prefactor {id}")))
    }
}

fn missing(what: &str) -> CertificateError {
    CertificateError::Registry(format!("artifact {what} was not produced for the requested stages"))
}

/// Smallest integer at or above the enclosure.
fn ceil_hi(x: &CertifiedReal) -> BigInt {
    let p = x.precision_bits();
    (x.hi_scaled() + (BigInt::one() << p) - 1) >> p
}

fn build_artifacts(
    config: &PipelineConfig,
    stages: &BTreeSet<Stage>,
) -> Result<Artifacts, CertificateError> {
    let mut art = Artifacts {
        consts: None,
        search_cmp: None,
        search_wide: None,
        ctx: None,
        chain: None,
        envelopes: None,
        campaigns: None,
        prefactors: None,
        reduction_envelopes: None,
        sound_clear_indices: None,
        sound_pos: None,
        sound_neg: None,
        sound_caps: None,
        runtime_notes: Vec::new(),
    };
    let needs_consts = stages.contains(&Stage::Cf)
        || stages.contains(&Stage::Bounds)
        || stages.contains(&Stage::Reduce);
    if needs_consts {
        art.consts = Some(build_constants(config.precision_bits)?);
    }
    if stages.contains(&Stage::Search) {
        let window = SearchWindow::new(config.convention, config.m_max, config.n_max)?;
        art.search_cmp = Some(verify_theorem(&window)?);
        let wide = SearchWindow::new(config.convention, config.m_max.max(523), config.n_max)?;
        art.search_wide = Some(verify_theorem(&wide)?);
    }
    if stages.contains(&Stage::Cf) {
        let ctx = ReductionContext::new(&ReductionContext::published_cap())?;
        art.runtime_notes.push(format!(
            "continued fractions certified at {} bits (primary slope) and {} bits (reciprocal slope)",
            ctx.cf_bits.0, ctx.cf_bits.1
        ));
        art.ctx = Some(ctx);
    }
    if stages.contains(&Stage::Bounds) {
        let (chain, envelopes) = {
            let consts = art.consts()?;
            (bound_chain(consts)?, envelope_checks(consts)?)
        };
        art.chain = Some(chain);
        art.envelopes = Some(envelopes);
    }
    if stages.contains(&Stage::Reduce) {
        let consts = art.consts()?.clone();
        let ctx = art.ctx()?.clone();
        let campaigns = run_full_reduction(&ctx, config.precision_bits)?;
        for c in &campaigns {
            if c.max_precision_bits > c.base_precision_bits {
                art.runtime_notes.push(format!(
                    "campaign {}: interval precision escalated from {} to {} bits",
                    c.id, c.base_precision_bits, c.max_precision_bits
                ));
            }
            if !c.retried.is_empty() {
                art.runtime_notes.push(format!(
                    "campaign {}: {} of {} members advanced past an exactly nonpositive eps to a later convergent",
                    c.id,
                    c.retried.len(),
                    c.family_size
                ));
            }
        }
        art.prefactors = Some(recomputed_prefactors(&consts)?);
        art.reduction_envelopes = Some(reduction_envelope_checks(&consts)?);

        let chain = art.chain()?;
        let cap_n = ceil_hi(&chain.n_upper_sound);
        let cap_m = &cap_n * 2;
        let six_n = &cap_n * 6;
        let six_m = &cap_m * 6;
        let clear_tau = find_convergent_exceeding(&ctx.tau_cf, &six_n).ok().map(|(i, _)| i);
        let clear_tau_prime =
            find_convergent_exceeding(&ctx.tau_prime_cf, &six_m).ok().map(|(i, _)| i);
        art.sound_clear_indices = Some(match (clear_tau, clear_tau_prime) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        });
        art.runtime_notes.push(format!(
            "self-contained caps: {cap_n} on the n side, {cap_m} on the m side"
        ));
        let specs = published_campaigns();
        let pos_spec = specs
            .iter()
            .find(|s| s.id == "initial_pos_ndiff")
            .ok_or_else(|| missing("initial_pos_ndiff spec"))?;
        let neg_spec = specs
            .iter()
            .find(|s| s.id == "initial_neg_ndiff")
            .ok_or_else(|| missing("initial_neg_ndiff spec"))?;
        let ctx_pos = ctx.with_cap(&cap_n)?;
        let ctx_neg = ctx.with_cap(&cap_m)?;
        art.sound_pos = Some(run_campaign(pos_spec, &ctx_pos, config.precision_bits)?);
        art.sound_neg = Some(run_campaign(neg_spec, &ctx_neg, config.precision_bits)?);
        art.sound_caps = Some((cap_n, cap_m));
        art.campaigns = Some(campaigns);
    }
    Ok(art)
}

/// Enumeration window used by the final argument: a strict bound of `b`
/// means indices up to `b - 1`, which the window covers when
/// `b - 1 <= n_max`.
fn fits_window(strict_bound: u32, n_max: u32) -> bool {
    strict_bound <= n_max + 1
}

fn fmt_mid(x: &CertifiedReal) -> String {
    format!("{:.6e}", x.to_f64())
}

fn fmt_lo(x: &CertifiedReal) -> String {
    format!("{:.8e}", x.lo_f64())
}

/// Three-way certified comparison of `value` against the band
/// `printed * (1 - tol) ..= printed * (1 + tol)`.
fn rel_band_position(
    value: &CertifiedReal,
    printed: &str,
    tolerance: &str,
) -> Result<Option<bool>, CertificateError> {
    let w = value.precision_bits() + 64;
    let p = CertifiedReal::from_decimal_str(printed, w)?;
    let t = CertifiedReal::from_decimal_str(tolerance, w)?;
    let one = CertifiedReal::one(w);
    let lo = p.mul(&one.sub(&t));
    let hi = p.mul(&one.add(&t));
    if value.certainly_ge(&lo) && value.certainly_le(&hi) {
        return Ok(Some(true));
    }
    if value.certainly_lt(&lo) || value.certainly_gt(&hi) {
        return Ok(Some(false));
    }
    Ok(None)
}

type Eval = (Option<String>, ClaimOutcome, Option<String>);

fn eval_approx_rel(
    spec: &ClaimSpec,
    value: &CertifiedReal,
) -> Result<Eval, CertificateError> {
    let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
    let tolerance = spec.tolerance.as_deref().ok_or_else(|| bad_spec(spec, "tolerance"))?;
    let recomputed = Some(fmt_mid(value));
    match rel_band_position(value, printed, tolerance)? {
        Some(true) => Ok((recomputed, ClaimOutcome::Verified, None)),
        Some(false) => {
            if let Some(corrected) = spec.corrected.as_deref() {
                match rel_band_position(value, corrected, tolerance)? {
                    Some(true) => Ok((
                        recomputed,
                        ClaimOutcome::VerifiedWithCorrection,
                        Some(format!(
                            "recomputed value contradicts the published {printed} but matches the corrected {corrected}"
                        )),
                    )),
                    Some(false) => Ok((
                        recomputed,
                        ClaimOutcome::Mismatch,
                        Some(format!(
                            "recomputed value matches neither the published {printed} nor the corrected {corrected}"
                        )),
                    )),
                    None => Err(CertificateError::PrecisionTooLow(spec.id.clone())),
                }
            } else {
                Ok((
                    recomputed,
                    ClaimOutcome::Mismatch,
                    Some(format!("recomputed value falls outside the published {printed} band")),
                ))
            }
        }
        None => Err(CertificateError::PrecisionTooLow(spec.id.clone())),
    }
}

fn eval_lower_bound(spec: &ClaimSpec, value: &CertifiedReal) -> Result<Eval, CertificateError> {
    let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
    let w = value.precision_bits() + 64;
    let p = CertifiedReal::from_decimal_str(printed, w)?;
    let allowance = match spec.allowance.as_deref() {
        Some(a) => CertifiedReal::from_decimal_str(a, w)?,
        None => CertifiedReal::zero(w),
    };
    let floor = p.sub(&allowance);
    let recomputed = Some(fmt_lo(value));
    if value.certainly_ge(&p) {
        return Ok((recomputed, ClaimOutcome::Verified, None));
    }
    if value.certainly_ge(&floor) {
        return Ok((
            recomputed,
            ClaimOutcome::Verified,
            Some(format!(
                "meets the published {printed} only after the print-rounding allowance"
            )),
        ));
    }
    if value.certainly_lt(&floor) {
        return Ok((
            recomputed,
            ClaimOutcome::Mismatch,
            Some(format!("certified value lies below the published floor {printed}")),
        ));
    }
    Err(CertificateError::PrecisionTooLow(spec.id.clone()))
}

fn eval_upper_bound_value(
    spec: &ClaimSpec,
    value: &CertifiedReal,
) -> Result<Eval, CertificateError> {
    let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
    let w = value.precision_bits() + 64;
    let p = CertifiedReal::from_decimal_str(printed, w)?;
    let recomputed = Some(fmt_mid(value));
    if value.certainly_le(&p) {
        return Ok((recomputed, ClaimOutcome::Verified, None));
    }
    if value.certainly_gt(&p) {
        if let Some(corrected) = spec.corrected.as_deref() {
            let c = CertifiedReal::from_decimal_str(corrected, w)?;
            if value.certainly_le(&c) {
                return Ok((
                    recomputed,
                    ClaimOutcome::VerifiedWithCorrection,
                    Some(format!(
                        "exceeds the published {printed}; the corrected {corrected} is a true bound"
                    )),
                ));
            }
        }
        return Ok((
            recomputed,
            ClaimOutcome::Mismatch,
            Some(format!("exceeds the published {printed} and any registered correction")),
        ));
    }
    Err(CertificateError::PrecisionTooLow(spec.id.clone()))
}

fn eval_int_upper(spec: &ClaimSpec, derived: u32) -> Result<Eval, CertificateError> {
    let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
    let p: u32 = printed
        .parse()
        .map_err(|_| CertificateError::Registry(format!("claim {}: bad integer {printed}", spec.id)))?;
    let recomputed = Some(derived.to_string());
    if derived <= p {
        return Ok((recomputed, ClaimOutcome::Verified, None));
    }
    if derived <= p + 2 {
        return Ok((
            recomputed,
            ClaimOutcome::Verified,
            Some(format!(
                "{} above the published {p}; the printed evaluation rounds its last step",
                derived - p
            )),
        ));
    }
    if let Some(corrected) = spec.corrected.as_deref() {
        let c: u32 = corrected.parse().map_err(|_| {
            CertificateError::Registry(format!("claim {}: bad integer {corrected}", spec.id))
        })?;
        if derived == c {
            return Ok((
                recomputed,
                ClaimOutcome::VerifiedWithCorrection,
                Some(format!("published {p}; the certified evaluation gives {c}")),
            ));
        }
    }
    Ok((
        recomputed,
        ClaimOutcome::Mismatch,
        Some(format!("derived {derived} is beyond the published {p} and any registered correction")),
    ))
}

fn eval_rounded_decimal(
    spec: &ClaimSpec,
    value: &CertifiedReal,
) -> Result<Eval, CertificateError> {
    let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
    let frac_digits = printed.split('.').nth(1).map_or(0, str::len) as u32;
    let w = value.precision_bits() + 64;
    let p = CertifiedReal::from_decimal_str(printed, w)?;
    let ulp = CertifiedReal::from_ratio(&BigInt::one(), &BigInt::from(10u32).pow(frac_digits), w)?;
    let lo = p.sub(&ulp);
    let hi = p.add(&ulp);
    let shown = (frac_digits as usize + 2).min(17);
    let recomputed = Some(format!("{:.*}", shown, value.to_f64()));
    if value.certainly_ge(&lo) && value.certainly_le(&hi) {
        return Ok((recomputed, ClaimOutcome::Verified, None));
    }
    if value.certainly_lt(&lo) || value.certainly_gt(&hi) {
        return Ok((
            recomputed,
            ClaimOutcome::Mismatch,
            Some(format!("outside one unit in the last place of the published {printed}")),
        ));
    }
    Err(CertificateError::PrecisionTooLow(spec.id.clone()))
}

fn eval_bool(holds: bool, recomputed: String, fail_detail: &str) -> Eval {
    if holds {
        (Some(recomputed), ClaimOutcome::Verified, None)
    } else {
        (Some(recomputed), ClaimOutcome::Mismatch, Some(fail_detail.to_string()))
    }
}

fn eval_exact(spec: &ClaimSpec, recomputed: String) -> Result<Eval, CertificateError> {
    let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
    if recomputed == printed {
        Ok((Some(recomputed), ClaimOutcome::Verified, None))
    } else {
        Ok((
            Some(recomputed),
            ClaimOutcome::Mismatch,
            Some("recomputed rendering differs from the published one".to_string()),
        ))
    }
}

fn bad_spec(spec: &ClaimSpec, field: &str) -> CertificateError {
    CertificateError::Registry(format!("claim {} is missing its {field} field", spec.id))
}

/// Maps an epsilon claim to the campaign whose family minimum it states.
fn epsilon_campaign(id: &str) -> Option<&'static str> {
    match id {
        "epsilon_initial_pos" => Some("initial_pos_ndiff"),
        "epsilon_initial_neg" => Some("initial_neg_ndiff"),
        "epsilon_gamma1_pos" => Some("gamma1_pos"),
        "epsilon_gamma2_pos" => Some("gamma2_pos"),
        "epsilon_gamma2_neg" => Some("gamma2_neg"),
        "epsilon_gamma3" => Some("gamma3"),
        _ => None,
    }
}

fn evaluate(
    spec: &ClaimSpec,
    art: &Artifacts,
    config: &PipelineConfig,
) -> Result<ClaimResult, CertificateError> {
    let (recomputed, outcome, detail): Eval = match spec.id.as_str() {
        "search_two_representation_set" => {
            let cmp = art.search_cmp()?;
            let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
            let expected: BTreeSet<BigInt> = printed
                .split(',')
                .map(|s| {
                    s.trim().parse::<BigInt>().map_err(|_| {
                        CertificateError::Registry(format!("bad integer in set claim: {s}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let got: BTreeSet<BigInt> = cmp.found.iter().map(|(c, _)| c.clone()).collect();
            let rendering =
                cmp.found.iter().map(|(c, _)| c.to_string()).collect::<Vec<_>>().join(", ");
            if got == expected {
                (Some(rendering), ClaimOutcome::Verified, None)
            } else {
                let missing: Vec<String> =
                    expected.difference(&got).map(|c| c.to_string()).collect();
                let extra: Vec<String> = got.difference(&expected).map(|c| c.to_string()).collect();
                (
                    Some(rendering),
                    ClaimOutcome::Mismatch,
                    Some(format!(
                        "missing from enumeration: [{}]; not published: [{}]",
                        missing.join(", "),
                        extra.join(", ")
                    )),
                )
            }
        }
        "search_found_count" => {
            let cmp = art.search_cmp()?;
            eval_exact(spec, cmp.found.len().to_string())?
        }
        "search_wide_window" => {
            let wide = art.search_wide.as_ref().ok_or_else(|| missing("wide search"))?;
            eval_bool(
                wide.matches,
                format!("{} values with the widened window", wide.found.len()),
                "the widened window changes the set",
            )
        }
        "cf_tau_quotients" | "cf_tau_prime_quotients" => {
            let ctx = art.ctx()?;
            let exp = if spec.id == "cf_tau_quotients" { &ctx.tau_cf } else { &ctx.tau_prime_cf };
            let printed = spec.printed.as_deref().ok_or_else(|| bad_spec(spec, "printed"))?;
            let count = printed.split(',').count();
            if exp.quotients.len() < count {
                return Err(CertificateError::PrecisionTooLow(spec.id.clone()));
            }
            let rendering = exp.quotients[..count]
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            eval_exact(spec, rendering)?
        }
        "cf_tau_prime_decimal" => {
            let value = art.consts()?.tau_inv();
            eval_rounded_decimal(spec, &value)?
        }
        "cf_q98" | "cf_p98" => {
            let ctx = art.ctx()?;
            let (p, q) = ctx
                .tau_cf
                .convergents
                .get(98)
                .ok_or_else(|| CertificateError::PrecisionTooLow(spec.id.clone()))?;
            let digits = if spec.id == "cf_q98" { q } else { p };
            eval_exact(spec, digits.to_string())?
        }
        "cf_tau_start_index" => {
            let ctx = art.ctx()?;
            eval_exact(spec, ctx.tau_start.to_string())?
        }
        "cf_tau_prime_start_index" => {
            let ctx = art.ctx()?;
            eval_exact(spec, ctx.tau_prime_start.to_string())?
        }
        "cf_q98_exceeds" | "cf_q98_prime_exceeds" => {
            let ctx = art.ctx()?;
            let exp = if spec.id == "cf_q98_exceeds" { &ctx.tau_cf } else { &ctx.tau_prime_cf };
            let q = &exp
                .convergents
                .get(98)
                .ok_or_else(|| CertificateError::PrecisionTooLow(spec.id.clone()))?
                .1;
            let six_m = &ctx.cap_m * 6;
            eval_bool(
                q > &six_m,
                format!("{q} > {six_m}"),
                "the 98th convergent denominator does not exceed 6M",
            )
        }
        id if id.starts_with("chain_") => {
            let chain = art.chain()?;
            let stage = chain
                .stage(id)
                .ok_or_else(|| CertificateError::Registry(format!("unknown chain stage {id}")))?;
            eval_approx_rel(spec, &stage.recomputed)?
        }
        id if id.starts_with("envelope_") => {
            let check = art.envelope(id)?;
            eval_bool(
                check.holds,
                format!("{:.4} < {:.4}", check.lhs.to_f64(), check.rhs.to_f64()),
                "the certified inequality fails",
            )
        }
        id if id.starts_with("reduction_") => {
            let check = art.reduction_envelope(id)?;
            eval_bool(
                check.holds,
                format!("{:.4} < {:.4}", check.lhs.to_f64(), check.rhs.to_f64()),
                "the certified inequality fails",
            )
        }
        "bounds_n_upper_certified" => {
            let chain = art.chain()?;
            let cap = CertifiedReal::from_decimal_str("2.45e47", chain.n_upper.precision_bits() + 64)?;
            eval_bool(
                chain.n_upper.certainly_le(&cap),
                fmt_mid(&chain.n_upper),
                "the certified bound exceeds the published cap",
            )
        }
        "bounds_n_upper_sound" => {
            let chain = art.chain()?;
            let cap =
                CertifiedReal::from_decimal_str("5.2e47", chain.n_upper_sound.precision_bits() + 64)?;
            eval_bool(
                chain.n_upper_sound.certainly_lt(&cap),
                fmt_mid(&chain.n_upper_sound),
                "the self-contained bound exceeds 5.2e47",
            )
        }
        id if id.starts_with("bound_") => {
            let campaign = art.campaign(&id["bound_".len()..])?;
            eval_int_upper(spec, campaign.derived_bound)?
        }
        id if epsilon_campaign(id).is_some() => {
            let campaign = art.campaign(epsilon_campaign(id).expect("mapped above"))?;
            let (rec, outcome, mut detail) = eval_lower_bound(spec, &campaign.min_epsilon)?;
            if campaign.family_size > 1 {
                let member_note = format!(
                    "family minimum at member {:?}",
                    campaign.min_epsilon_member
                );
                detail = Some(match detail {
                    Some(d) => format!("{d}; {member_note}"),
                    None => member_note,
                });
            }
            (rec, outcome, detail)
        }
        id if id.starts_with("prefactor_") => {
            let check = art.prefactor(id)?;
            eval_upper_bound_value(spec, &check.recomputed)?
        }
        "final_published_below_window" => {
            let holds = fits_window(271, config.n_max);
            eval_bool(
                holds,
                format!("strict bound 271, window n <= {}", config.n_max),
                "the published bound does not fit the enumeration window",
            )
        }
        "final_derived_below_window" => {
            let campaign = art.campaign("gamma3")?;
            eval_bool(
                fits_window(campaign.derived_bound, config.n_max),
                format!("strict bound {}, window n <= {}", campaign.derived_bound, config.n_max),
                "the certified rerun does not fit the enumeration window",
            )
        }
        "final_sound_below_window" => {
            let campaign = art.campaign("gamma3_sound")?;
            eval_bool(
                fits_window(campaign.derived_bound, config.n_max),
                format!("strict bound {}, window n <= {}", campaign.derived_bound, config.n_max),
                "the self-contained rerun does not fit the enumeration window",
            )
        }
        "sound_cap_clears_convergents" => {
            let indices = art
                .sound_clear_indices
                .as_ref()
                .ok_or_else(|| missing("sound cap convergent search"))?;
            match indices {
                Some((a, b)) => eval_bool(
                    true,
                    format!("convergent indices {a} (primary) and {b} (reciprocal) clear 6M"),
                    "",
                ),
                None => eval_bool(
                    false,
                    "no convergent clears 6M under the self-contained caps".to_string(),
                    "the certified expansions run out before 6M",
                ),
            }
        }
        "sound_cap_initial_pos" | "sound_cap_initial_neg" => {
            let (campaign, cap) = if spec.id == "sound_cap_initial_pos" {
                (
                    art.sound_pos.as_ref().ok_or_else(|| missing("sound positive rerun"))?,
                    art.sound_caps.as_ref().map(|(n, _)| n),
                )
            } else {
                (
                    art.sound_neg.as_ref().ok_or_else(|| missing("sound negative rerun"))?,
                    art.sound_caps.as_ref().map(|(_, m)| m),
                )
            };
            let cap = cap.ok_or_else(|| missing("sound caps"))?;
            eval_bool(
                campaign.derived_bound < 300,
                format!("strict gap bound {} with cap {}", campaign.derived_bound, cap),
                "the rerun under the self-contained cap leaves the window",
            )
        }
        id if id.starts_with("assume_") => (None, ClaimOutcome::Assumed, None),
        other => {
            return Err(CertificateError::Registry(format!("no evaluator for claim {other}")));
        }
    };
    Ok(ClaimResult {
        id: spec.id.clone(),
        stage: spec.stage,
        mode: spec.mode,
        description: spec.description.clone(),
        outcome,
        printed: spec.printed.clone(),
        corrected: spec.corrected.clone(),
        recomputed,
        detail,
        note: spec.note.clone(),
    })
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<Certificate, CertificateError> {
    if !(64..=4096).contains(&config.precision_bits) {
        return Err(CertificateError::Config(format!(
            "precision must lie in 64..=4096 bits, got {}",
            config.precision_bits
        )));
    }
    if config.stages.is_empty() {
        return Err(CertificateError::Config("no stages requested".to_string()));
    }
    let registry = claims_registry()?;
    let stages = stage_closure(&config.stages);
    let art = build_artifacts(config, &stages)?;
    let mut claims = Vec::new();
    for spec in &registry {
        if stages.contains(&spec.stage) {
            claims.push(evaluate(spec, &art, config)?);
        }
    }
    let mut summary = Summary {
        total: claims.len(),
        verified: 0,
        verified_with_correction: 0,
        mismatched: 0,
        assumed: 0,
    };
    for c in &claims {
        match c.outcome {
            ClaimOutcome::Verified => summary.verified += 1,
            ClaimOutcome::VerifiedWithCorrection => summary.verified_with_correction += 1,
            ClaimOutcome::Mismatch => summary.mismatched += 1,
            ClaimOutcome::Assumed => summary.assumed += 1,
        }
    }
    let verdict =
        if summary.mismatched == 0 { Verdict::Verified } else { Verdict::MismatchFound };
    Ok(Certificate {
        verdict,
        precision_bits: config.precision_bits,
        window: format!(
            "{} <= m <= {}, {} <= n <= {}",
            config.convention.padovan_min, config.m_max, config.convention.lucas_min, config.n_max
        ),
        stages_run: stages.into_iter().collect(),
        summary,
        claims,
        runtime_notes: art.runtime_notes,
    })
}

pub fn render_json(cert: &Certificate) -> Result<String, CertificateError> {
    let mut s = serde_json::to_string_pretty(cert)
        .map_err(|e| CertificateError::Serialization(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(s: &str) -> Result<Certificate, CertificateError> {
    serde_json::from_str(s).map_err(|e| CertificateError::Serialization(e.to_string()))
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(cert: &Certificate) -> String {
    let mut out = String::from("id,stage,mode,outcome,printed,corrected,recomputed,detail\n");
    for c in &cert.claims {
        let mode = serde_json::to_value(c.mode)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let outcome = serde_json::to_value(c.outcome)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let row = [
            c.id.as_str(),
            c.stage.name(),
            mode.as_str(),
            outcome.as_str(),
            c.printed.as_deref().unwrap_or(""),
            c.corrected.as_deref().unwrap_or(""),
            c.recomputed.as_deref().unwrap_or(""),
            c.detail.as_deref().unwrap_or(""),
        ];
        let line: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn render_text(cert: &Certificate) -> String {
    let mut out = String::new();
    let verdict = match cert.verdict {
        Verdict::Verified => "VERIFIED",
        Verdict::MismatchFound => "MISMATCH FOUND",
    };
    out.push_str(&format!("verdict: {verdict}\n"));
    out.push_str(&format!("precision: {} bits (base)\n", cert.precision_bits));
    out.push_str(&format!("window: {}\n", cert.window));
    let stages: Vec<&str> = cert.stages_run.iter().map(Stage::name).collect();
    out.push_str(&format!("stages: {}\n", stages.join(", ")));
    out.push_str(&format!(
        "claims: {} total; {} verified, {} verified against corrected values, {} assumed, {} mismatched\n\n",
        cert.summary.total,
        cert.summary.verified,
        cert.summary.verified_with_correction,
        cert.summary.assumed,
        cert.summary.mismatched
    ));
    for c in &cert.claims {
        let tag = match c.outcome {
            ClaimOutcome::Verified => "  ok ",
            ClaimOutcome::VerifiedWithCorrection => " ok* ",
            ClaimOutcome::Mismatch => " FAIL",
            ClaimOutcome::Assumed => " assm",
        };
        out.push_str(&format!("[{tag}] {}\n", c.id));
        if let Some(p) = &c.printed {
            out.push_str(&format!("        published:  {p}\n"));
        }
        if let Some(r) = &c.recomputed {
            out.push_str(&format!("        recomputed: {r}\n"));
        }
        if let Some(d) = &c.detail {
            out.push_str(&format!("        {d}\n"));
        }
    }
    if !cert.runtime_notes.is_empty() {
        out.push_str("\nruntime notes:\n");
        for n in &cert.runtime_notes {
            out.push_str(&format!("  - {n}\n"));
        }
    }
    out
}
