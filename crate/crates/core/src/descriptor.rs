//! Code descriptors: the JSON form of a constructed code, and independent
//! re-verification of everything a descriptor claims.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eaqecc::{eaqecc_from_hull, EaqeccParams};
use crate::exec::Exec;
use crate::families::{Construction, Provenance};
use crate::ffield::{Elem, FieldCtx, FieldDescriptor, FieldError};
use crate::grs::{grs_generator, mds_check_minors, min_distance_bruteforce, GrsError, GrsSpec};
use crate::hull::{hull_compute, HullError, HullReportJson};

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad field: {0}")]
    Field(#[from] FieldError),
    #[error("bad code: {0}")]
    Grs(#[from] GrsError),
    #[error("discrete log {0} out of range")]
    BadLog(u64),
    #[error("level l = {l} outside 0..{e}")]
    BadLevel { l: u32, e: u32 },
    #[error(transparent)]
    Hull(#[from] HullError),
}

/// `{"field", "a", "v", "k", "extended", "l", ...}`; nonzero entries of `a`
/// and `v` are discrete logs base `alpha`, zero is `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CodeDescriptor {
    pub field: FieldDescriptor,
    pub a: Vec<Option<u64>>,
    pub v: Vec<Option<u64>>,
    pub k: usize,
    pub extended: bool,
    pub l: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_hull_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eaqecc: Option<EaqeccParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn to_logs(ctx: &FieldCtx, xs: &[Elem]) -> Vec<Option<u64>> {
    xs.iter()
        .map(|&x| (!x.is_zero()).then(|| ctx.discrete_log(x).expect("nonzero")))
        .collect()
}

fn from_logs(ctx: &FieldCtx, xs: &[Option<u64>]) -> Result<Vec<Elem>, DescriptorError> {
    xs.iter()
        .map(|x| match *x {
            None => Ok(Elem::ZERO),
            Some(t) if t < ctx.group_order() => Ok(ctx.alpha_pow(t as i64)),
            Some(t) => Err(DescriptorError::BadLog(t)),
        })
        .collect()
}

impl CodeDescriptor {
    pub fn from_spec(spec: &GrsSpec, l: u32) -> Self {
        let ctx = spec.ctx();
        Self {
            field: ctx.descriptor(),
            a: to_logs(ctx, spec.points()),
            v: to_logs(ctx, spec.multipliers()),
            k: spec.k(),
            extended: spec.is_extended(),
            l,
            claimed_hull_dim: None,
            eaqecc: None,
            provenance: None,
        }
    }

    pub fn from_construction(c: &Construction, eaqecc: Option<EaqeccParams>) -> Self {
        let mut d = Self::from_spec(&c.spec, c.hull.l);
        d.claimed_hull_dim = Some(c.hull.dim());
        d.eaqecc = eaqecc.map(|mut p| {
            p.provenance = None;
            p
        });
        d.provenance = Some(c.provenance.clone());
        d
    }

    pub fn from_json(text: &str) -> Result<Self, DescriptorError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// Rebuilds the field and the (validated) GRS spec.
    pub fn to_spec(&self) -> Result<GrsSpec, DescriptorError> {
        let ctx = Arc::new(FieldCtx::from_descriptor(&self.field)?);
        self.to_spec_in(ctx)
    }

    /// Like `to_spec`, reusing an existing context (which must match).
    pub fn to_spec_in(&self, ctx: Arc<FieldCtx>) -> Result<GrsSpec, DescriptorError> {
        if self.l >= ctx.e() {
            return Err(DescriptorError::BadLevel {
                l: self.l,
                e: ctx.e(),
            });
        }
        let a = from_logs(&ctx, &self.a)?;
        let v = from_logs(&ctx, &self.v)?;
        Ok(GrsSpec::new(ctx, a, v, self.k, self.extended)?)
    }
}

/// Outcome of re-verifying a descriptor. `None` means skipped (over budget).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub hull: HullReportJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_hull_dim: Option<usize>,
    pub hull_matches_claim: bool,
    pub mds_minors: Option<bool>,
    pub min_distance: Option<usize>,
    pub eaqecc: EaqeccParams,
    pub eaqecc_matches_claim: bool,
    pub ok: bool,
}

impl VerifyReport {
    pub fn render_text(&self) -> String {
        let show = |x: Option<String>| x.unwrap_or_else(|| "skipped".into());
        format!(
            "hull dim (stacked)   {}\nhull dim (rank HH‡)  {}\nclaimed hull dim     {}\nMDS by minors        {}\nmin distance         {}\nEAQECC               {}\nverdict              {}\n",
            self.hull.methods.stacked,
            self.hull.methods.rank_hh,
            show(self.claimed_hull_dim.map(|d| d.to_string())),
            show(self.mds_minors.map(|b| b.to_string())),
            show(self.min_distance.map(|d| d.to_string())),
            self.eaqecc,
            if self.ok { "ok" } else { "FAILED" }
        )
    }
}

/// Recomputes the hull both ways, checks MDS-ness within budget, and
/// compares against the descriptor's claims.
pub fn verify_descriptor(
    desc: &CodeDescriptor,
    exec: Exec,
) -> Result<VerifyReport, DescriptorError> {
    let spec = desc.to_spec()?;
    let ctx = spec.ctx().clone();
    let code = grs_generator(&spec);
    let level = ctx.level(desc.l)?;
    let hull = hull_compute(&code, level)?;
    let n = code.n();
    let k = code.k();
    let mds_minors = mds_check_minors(&code, exec).ok();
    let min_distance = min_distance_bruteforce(&code, exec).ok();
    let eaqecc = eaqecc_from_hull(
        n as u64,
        k as u64,
        hull.dim() as u64,
        (n - k + 1) as u64,
        ctx.q(),
    );
    let hull_matches_claim = desc.claimed_hull_dim.is_none_or(|c| c == hull.dim());
    let eaqecc_matches_claim = desc
        .eaqecc
        .as_ref()
        .is_none_or(|claim| claim.tuple() == eaqecc.tuple());
    let ok = hull_matches_claim
        && eaqecc_matches_claim
        && mds_minors != Some(false)
        && min_distance.is_none_or(|d| d == n - k + 1);
    Ok(VerifyReport {
        hull: hull.to_json(),
        claimed_hull_dim: desc.claimed_hull_dim,
        hull_matches_claim,
        mds_minors,
        min_distance,
        eaqecc,
        eaqecc_matches_claim,
        ok,
    })
}
