//! The nine GRS construction recipes with prescribed Galois hull dimension.
//!
//! Every recipe returns the code together with its measured hull; a
//! measured dimension different from the requested `h` is an error.

mod pointset;

pub use pointset::{
    build_pointset_coset, build_pointset_eq6, lemma5_predicate, lemma7_predicate,
    zero_point_weight, zero_point_weight_subgroups, PointSetProvenance, PredicatePair,
    SubgroupPointSet,
};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divides, gcd};
use crate::ffield::{Elem, FieldCtx, FieldError, GaloisLevel};
use crate::grs::{grs_generator, GrsError, GrsSpec, LinearCode};
use crate::hull::{hull_compute, HullError, HullReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("inadmissible request: {0}")]
    PredicateFailed(String),
    #[error("no beta with beta^(p^l+1) != 1 exists for l = {l}")]
    NoScalingElement { l: u32 },
    #[error("no (p^l+1)-th root for coordinate {index}")]
    NoPreimage { index: usize },
    #[error("measured hull dimension {measured}, requested {expected}")]
    HullMismatch { expected: usize, measured: usize },
    #[error("request is for F_{req_p}^{req_e} but the context is F_{p}^{e}")]
    FieldMismatch {
        req_p: u64,
        req_e: u32,
        p: u64,
        e: u32,
    },
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Hull(#[from] HullError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    T1a,
    T1b,
    T2,
    T3n,
    T3n1,
    T3n2,
    T4n,
    T4n1,
    T4n2,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::T1a,
        Family::T1b,
        Family::T2,
        Family::T3n,
        Family::T3n1,
        Family::T3n2,
        Family::T4n,
        Family::T4n1,
        Family::T4n2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::T1a => "T1a",
            Family::T1b => "T1b",
            Family::T2 => "T2",
            Family::T3n => "T3n",
            Family::T3n1 => "T3n1",
            Family::T3n2 => "T3n2",
            Family::T4n => "T4n",
            Family::T4n1 => "T4n1",
            Family::T4n2 => "T4n2",
        }
    }

    /// Extra coordinates beyond the base `n`: 0, 1 (appended zero point) or
    /// 2 (zero point plus the extended coordinate).
    pub fn extra_length(self) -> u64 {
        match self {
            Family::T3n1 | Family::T4n1 => 1,
            Family::T3n2 | Family::T4n2 => 2,
            _ => 0,
        }
    }

    pub fn uses_subgroups(self) -> bool {
        matches!(self, Family::T3n | Family::T3n1 | Family::T3n2)
    }

    pub fn uses_cosets(self) -> bool {
        matches!(self, Family::T4n | Family::T4n1 | Family::T4n2)
    }

    /// Largest admissible `h` for dimension `k`.
    pub fn max_h(self, k: u64) -> u64 {
        match self {
            Family::T3n | Family::T3n2 | Family::T4n | Family::T4n2 => k.saturating_sub(1),
            _ => k,
        }
    }

    /// Number of scaled (or free) coordinates for hull dimension `h`.
    pub fn z(self, k: u64, h: u64) -> u64 {
        match self {
            Family::T3n | Family::T3n2 | Family::T4n | Family::T4n2 => k - 1 - h,
            _ => k - h,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// One construction request. `n` is the base length: required for the
/// root-of-unity and subfield families, derived (and checked if given) for
/// the subgroup and coset families, whose code length is `n + extra`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyRequest {
    pub family: Family,
    pub p: u64,
    pub e: u32,
    pub l: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub k: u64,
    pub h: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

impl FamilyRequest {
    pub fn new(family: Family, p: u64, e: u32, l: u32, k: u64, h: u64) -> Self {
        Self {
            family,
            p,
            e,
            l,
            n: None,
            k,
            h,
            x1: None,
            x2: None,
            r: None,
            m: None,
        }
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_subgroups(mut self, x1: u64, x2: u64, r: u64) -> Self {
        self.x1 = Some(x1);
        self.x2 = Some(x2);
        self.r = Some(r);
        self
    }

    pub fn with_cosets(mut self, m: u64, r: u64) -> Self {
        self.m = Some(m);
        self.r = Some(r);
        self
    }
}

/// Replay data for a construction: which free elements were chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub family: Family,
    pub request: FamilyRequest,
    pub z: u64,
    /// Exponent `s` of `beta = alpha^s` (or of the free `v_j`), when used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_exponent: Option<u64>,
    /// Zero-based coordinates carrying `beta` (or the free `v_j`).
    pub scaled_positions: Vec<usize>,
    /// Root-of-unity families with `h = k`: `v_i^{p^l+1} = a_i`.
    pub self_orthogonal_multipliers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_set: Option<PointSetProvenance>,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub spec: GrsSpec,
    pub code: LinearCode,
    pub hull: HullReport,
    pub expected_hull_dim: usize,
    pub provenance: Provenance,
    /// Closed-form `u` of the point set, where one exists.
    pub closed_form_u: Option<Vec<Elem>>,
}

impl Construction {
    pub fn length(&self) -> usize {
        self.spec.length()
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(FamilyError::PredicateFailed(msg.into()))
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::PredicateFailed(msg()))
    }
}

/// Builds a fresh field context for the request and constructs.
pub fn construct_new(req: &FamilyRequest) -> Result<Construction> {
    let ctx = Arc::new(FieldCtx::new(req.p, req.e, None)?);
    construct(&ctx, req)
}

/// Checks admissibility, builds the recipe's `(a, v)`, and measures the hull.
pub fn construct(ctx: &Arc<FieldCtx>, req: &FamilyRequest) -> Result<Construction> {
    if ctx.p() != req.p || ctx.e() != req.e {
        return Err(FamilyError::FieldMismatch {
            req_p: req.p,
            req_e: req.e,
            p: ctx.p(),
            e: ctx.e(),
        });
    }
    let level = ctx
        .level(req.l)
        .map_err(|_| FamilyError::PredicateFailed(format!("l = {} outside 0..{}", req.l, req.e)))?;
    require(req.k >= 1, || "k must be at least 1".into())?;
    let max_h = req.family.max_h(req.k);
    require(req.h <= max_h, || {
        format!(
            "h = {} outside 0..={max_h} for {} with k = {}",
            req.h, req.family, req.k
        )
    })?;
    let built = match req.family {
        Family::T1a | Family::T1b => build_roots(ctx, req, level)?,
        Family::T2 => build_subfield(ctx, req, level)?,
        _ => build_multiplicative(ctx, req, level)?,
    };
    let code = grs_generator(&built.spec);
    let hull = hull_compute(&code, level)?;
    let expected = req.h as usize;
    if hull.dim() != expected {
        return Err(FamilyError::HullMismatch {
            expected,
            measured: hull.dim(),
        });
    }
    Ok(Construction {
        spec: built.spec,
        code,
        hull,
        expected_hull_dim: expected,
        provenance: built.provenance,
        closed_form_u: built.closed_form_u,
    })
}

struct Built {
    spec: GrsSpec,
    provenance: Provenance,
    closed_form_u: Option<Vec<Elem>>,
}

fn provenance(req: &FamilyRequest, z: u64) -> Provenance {
    Provenance {
        family: req.family,
        request: req.clone(),
        z,
        beta_exponent: None,
        scaled_positions: Vec::new(),
        self_orthogonal_multipliers: false,
        point_set: None,
    }
}

fn needs_odd_p(ctx: &FieldCtx, family: Family) -> Result<()> {
    require(ctx.p() % 2 == 1, || {
        format!("{family} needs odd p, got p = {}", ctx.p())
    })
}

fn needs_even_split(ctx: &FieldCtx, l: u32) -> Result<()> {
    require(l >= 1 && ctx.e().is_multiple_of(2 * l), || {
        format!("need l >= 1 and 2l | e; l = {l}, e = {}", ctx.e())
    })
}

fn beta(ctx: &FieldCtx, l: u32) -> Result<(u64, Elem)> {
    ctx.smallest_non_norm_one(l)
        .ok_or(FamilyError::NoScalingElement { l })
}

fn norm_preimages(ctx: &FieldCtx, level: GaloisLevel, targets: &[Elem]) -> Result<Vec<Elem>> {
    targets
        .iter()
        .enumerate()
        .map(|(index, &t)| {
            ctx.galois_norm_preimage(t, level).map_err(|err| match err {
                FieldError::NoPreimage | FieldError::NotInSubfield { .. } => {
                    FamilyError::NoPreimage { index }
                }
                other => other.into(),
            })
        })
        .collect()
}

/// `a_i = w^{i-1}` for a primitive `n`-th root `w`; `v = 1` except the last
/// `z - 1` coordinates, which take the smallest `alpha^s` with
/// `(alpha^s)^{p^l+1} != 1`. For `z = 0`, `v_i^{p^l+1} = a_i`.
fn build_roots(ctx: &Arc<FieldCtx>, req: &FamilyRequest, level: GaloisLevel) -> Result<Built> {
    let l = level.get();
    let Some(n) = req.n else {
        return fail(format!("{} needs n", req.family));
    };
    let q1 = ctx.group_order();
    let pl = ctx.p_pow(l);
    let k = req.k;
    match req.family {
        Family::T1a => {
            require(n >= 2 && divides(n, q1), || {
                format!("need n | q-1; n = {n}, q-1 = {q1}")
            })?;
            let bound = (pl + n - 1) / (pl + 1);
            let explicit = (pl as u128) * (k as u128 - 1) + (k as u128) < n as u128;
            if (k <= bound) != explicit {
                return Err(FamilyError::Internal(format!(
                    "dimension bounds disagree for n = {n}, k = {k}, p^l = {pl}"
                )));
            }
            require(k <= bound, || {
                format!("k = {k} exceeds floor((p^l+n-1)/(p^l+1)) = {bound}")
            })?;
        }
        _ => {
            require(l >= 1 && n >= 2 && divides(n, pl - 1), || {
                format!(
                    "need l >= 1 and n | p^l-1; n = {n}, p^l-1 = {}",
                    pl.saturating_sub(1)
                )
            })?;
            require(k <= n / 2, || {
                format!("k = {k} exceeds floor(n/2) = {}", n / 2)
            })?;
        }
    }
    let w = ctx.nth_root_of_unity(n)?;
    let a: Vec<Elem> = (0..n).map(|i| ctx.pow(w, i)).collect();
    let z = req.family.z(k, req.h);
    let mut prov = provenance(req, z);
    let v = if z == 0 {
        let image = q1 / gcd(q1, pl + 1);
        require(divides(n, image), || {
            format!("h = k needs n | (q-1)/gcd(q-1, p^l+1) = {image}; n = {n}")
        })?;
        prov.self_orthogonal_multipliers = true;
        a.iter()
            .map(|&x| ctx.power_root(x, pl + 1))
            .collect::<std::result::Result<Vec<_>, _>>()?
    } else {
        let mut v = vec![Elem::ONE; n as usize];
        if z >= 2 {
            let (s, b) = beta(ctx, l)?;
            prov.beta_exponent = Some(s);
            let start = (n - z + 1) as usize;
            for (j, slot) in v.iter_mut().enumerate().skip(start) {
                *slot = b;
                prov.scaled_positions.push(j);
            }
        }
        v
    };
    Ok(Built {
        spec: GrsSpec::new(ctx.clone(), a, v, k as usize, false)?,
        provenance: prov,
        closed_form_u: None,
    })
}

/// Scale the first `z` multipliers by `beta`.
fn scale_prefix(
    ctx: &FieldCtx,
    l: u32,
    v: &mut [Elem],
    z: u64,
    prov: &mut Provenance,
) -> Result<()> {
    if z == 0 {
        return Ok(());
    }
    let (s, b) = beta(ctx, l)?;
    prov.beta_exponent = Some(s);
    for (j, slot) in v.iter_mut().enumerate().take(z as usize) {
        *slot = ctx.mul(*slot, b);
        prov.scaled_positions.push(j);
    }
    Ok(())
}

/// `n` points of `F_{p^l}`: `0, w^0, w^1, ...` with `w` primitive in the
/// subfield; `v_i^{p^l+1} = u_i`.
fn build_subfield(ctx: &Arc<FieldCtx>, req: &FamilyRequest, level: GaloisLevel) -> Result<Built> {
    let l = level.get();
    needs_odd_p(ctx, req.family)?;
    needs_even_split(ctx, l)?;
    let Some(n) = req.n else {
        return fail("T2 needs n");
    };
    let pl = ctx.p_pow(l);
    require((2..=pl).contains(&n), || {
        format!("need 2 <= n <= p^l = {pl}; n = {n}")
    })?;
    let k = req.k;
    require(k <= n / 2, || {
        format!("k = {k} exceeds floor(n/2) = {}", n / 2)
    })?;
    let w = ctx.alpha_pow((ctx.group_order() / (pl - 1)) as i64);
    let a: Vec<Elem> = std::iter::once(Elem::ZERO)
        .chain((0..n - 1).map(|i| ctx.pow(w, i)))
        .collect();
    let u = crate::grs::compute_u(ctx, &a)?;
    let mut v = norm_preimages(ctx, level, &u)?;
    let z = req.family.z(k, req.h);
    let mut prov = provenance(req, z);
    scale_prefix(ctx, l, &mut v, z, &mut prov)?;
    Ok(Built {
        spec: GrsSpec::new(ctx.clone(), a, v, k as usize, false)?,
        provenance: prov,
        closed_form_u: None,
    })
}

/// Subgroup (T3*) and coset (T4*) families.
fn build_multiplicative(
    ctx: &Arc<FieldCtx>,
    req: &FamilyRequest,
    level: GaloisLevel,
) -> Result<Built> {
    let l = level.get();
    needs_odd_p(ctx, req.family)?;
    needs_even_split(ctx, l)?;
    let set = if req.family.uses_subgroups() {
        let (Some(x1), Some(x2), Some(r)) = (req.x1, req.x2, req.r) else {
            return fail(format!("{} needs x1, x2 and r", req.family));
        };
        build_pointset_eq6(ctx, l, x1, x2, r)?
    } else {
        let (Some(m), Some(r)) = (req.m, req.r) else {
            return fail(format!("{} needs m and r", req.family));
        };
        build_pointset_coset(ctx, l, m, r)?
    };
    let n = set.len() as u64;
    if let Some(given) = req.n {
        require(given == n, || {
            format!("n = {given} but the point set has {n} points")
        })?;
    }
    let pl = ctx.p_pow(l);
    let k = req.k;
    let bound = (pl + n) / (pl + 1);
    require(k <= bound, || {
        format!("k = {k} exceeds floor((p^l+n)/(p^l+1)) = {bound}")
    })?;
    let z = req.family.z(k, req.h);
    let mut prov = provenance(req, z);
    prov.point_set = Some(set.provenance.clone());
    let closed_form_u = Some(set.u.clone());
    let (a, targets, extended) = match req.family.extra_length() {
        0 => (set.points.clone(), set.scaled_u(ctx), false),
        extra => {
            let mut targets = set.scaled_u(ctx);
            targets.push(zero_point_weight(ctx, &set.points));
            let mut a = set.points.clone();
            a.push(Elem::ZERO);
            (a, targets, extra == 2)
        }
    };
    let mut v = norm_preimages(ctx, level, &targets)?;
    scale_prefix(ctx, l, &mut v, z, &mut prov)?;
    Ok(Built {
        spec: GrsSpec::new(ctx.clone(), a, v, k as usize, extended)?,
        provenance: prov,
        closed_form_u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, e: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, e, None).unwrap())
    }

    #[test]
    fn table1_first_row() {
        let ctx = f(2, 6);
        let req = FamilyRequest::new(Family::T1a, 2, 6, 2, 10, 1).with_n(63);
        let c = construct(&ctx, &req).unwrap();
        assert_eq!(c.hull.dim(), 1);
        assert_eq!(c.length(), 63);
    }

    #[test]
    fn t1a_self_orthogonal_row() {
        let ctx = f(2, 6);
        let req = FamilyRequest::new(Family::T1a, 2, 6, 2, 10, 10).with_n(63);
        let c = construct(&ctx, &req).unwrap();
        assert_eq!(c.hull.dim(), 10);
        assert!(c.provenance.self_orthogonal_multipliers);
    }

    #[test]
    fn table4_length41_row() {
        let ctx = f(3, 4);
        let req = FamilyRequest::new(Family::T4n1, 3, 4, 1, 9, 1).with_cosets(40, 1);
        let c = construct(&ctx, &req).unwrap();
        assert_eq!(c.length(), 41);
        assert_eq!(c.hull.dim(), 1);
    }

    #[test]
    fn table3_rows_spot() {
        let ctx = f(3, 4);
        for (fam, h, len) in [
            (Family::T3n, 6, 80),
            (Family::T3n1, 20, 81),
            (Family::T3n2, 19, 82),
        ] {
            let req = FamilyRequest::new(fam, 3, 4, 1, 20, h).with_subgroups(160, 3, 1);
            let c = construct(&ctx, &req).unwrap();
            assert_eq!((c.length(), c.hull.dim()), (len, h as usize));
        }
    }

    #[test]
    fn small_grid_all_families() {
        let cases: Vec<(Arc<FieldCtx>, FamilyRequest)> = {
            let f9 = f(3, 2);
            let f25 = f(5, 2);
            let f81 = f(3, 4);
            let f8 = f(2, 3);
            let mut v = Vec::new();
            for h in 0..=2 {
                v.push((
                    f8.clone(),
                    FamilyRequest::new(Family::T1a, 2, 3, 1, 2, h).with_n(7),
                ));
                v.push((
                    f25.clone(),
                    FamilyRequest::new(Family::T2, 5, 2, 1, 2, h).with_n(5),
                ));
                v.push((
                    f81.clone(),
                    FamilyRequest::new(Family::T1b, 3, 4, 2, 2, h).with_n(8),
                ));
                v.push((
                    f9.clone(),
                    FamilyRequest::new(Family::T3n1, 3, 2, 1, 2, h).with_subgroups(8, 1, 1),
                ));
                v.push((
                    f81.clone(),
                    FamilyRequest::new(Family::T4n1, 3, 4, 1, 2, h).with_cosets(8, 2),
                ));
            }
            for h in 0..=1 {
                v.push((
                    f9.clone(),
                    FamilyRequest::new(Family::T3n, 3, 2, 1, 2, h).with_subgroups(8, 1, 1),
                ));
                v.push((
                    f9.clone(),
                    FamilyRequest::new(Family::T3n2, 3, 2, 1, 2, h).with_subgroups(8, 1, 1),
                ));
                v.push((
                    f81.clone(),
                    FamilyRequest::new(Family::T4n, 3, 4, 1, 2, h).with_cosets(8, 2),
                ));
                v.push((
                    f81.clone(),
                    FamilyRequest::new(Family::T4n2, 3, 4, 1, 2, h).with_cosets(8, 2),
                ));
            }
            v
        };
        for (ctx, req) in cases {
            let c = construct(&ctx, &req).unwrap_or_else(|e| panic!("{req:?}: {e}"));
            assert_eq!(c.hull.dim(), req.h as usize);
        }
    }

    #[test]
    fn rejections() {
        let f64_ = f(2, 6);
        let req = FamilyRequest::new(Family::T1a, 2, 6, 2, 99, 1).with_n(63);
        assert!(matches!(
            construct(&f64_, &req),
            Err(FamilyError::PredicateFailed(_))
        ));
        let req = FamilyRequest::new(Family::T1a, 2, 6, 2, 10, 11).with_n(63);
        assert!(matches!(
            construct(&f64_, &req),
            Err(FamilyError::PredicateFailed(_))
        ));
        let req = FamilyRequest::new(Family::T2, 2, 6, 2, 2, 1).with_n(4);
        assert!(matches!(
            construct(&f64_, &req),
            Err(FamilyError::PredicateFailed(_))
        ));
        let f27 = f(3, 3);
        let req = FamilyRequest::new(Family::T2, 3, 3, 1, 1, 1).with_n(3);
        assert!(matches!(
            construct(&f27, &req),
            Err(FamilyError::PredicateFailed(_))
        ));
        let f81 = f(3, 4);
        let req = FamilyRequest::new(Family::T3n, 3, 4, 1, 20, 20).with_subgroups(160, 3, 1);
        assert!(matches!(
            construct(&f81, &req),
            Err(FamilyError::PredicateFailed(_))
        ));
        let req = FamilyRequest::new(Family::T3n, 3, 4, 1, 21, 1).with_subgroups(160, 3, 1);
        assert!(matches!(
            construct(&f81, &req),
            Err(FamilyError::PredicateFailed(_))
        ));
        let req = FamilyRequest::new(Family::T3n, 3, 2, 1, 2, 1).with_subgroups(160, 3, 1);
        assert!(matches!(
            construct(&f81, &req),
            Err(FamilyError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
            let json = serde_json::to_string(&fam).unwrap();
            assert_eq!(json, format!("\"{}\"", fam.name()));
        }
    }
}
