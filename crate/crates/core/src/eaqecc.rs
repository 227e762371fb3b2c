//! Entanglement-assisted quantum code parameters derived from Galois hulls.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{construct, Construction, FamilyError, FamilyRequest, Provenance};
use crate::ffield::{FieldCtx, GaloisLevel};
use crate::grs::LinearCode;
use crate::hull::{galois_dual, hull_compute, HullError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EaqeccError {
    #[error("quantum Singleton bound violated by {params}: slack {slack}")]
    BoundViolated { params: String, slack: i64 },
    #[error("derived {derived} but the closed form gives {expected}")]
    TheoremMismatch { derived: String, expected: String },
    #[error("entanglement count c = {c} outside 0..={max}")]
    EntanglementRange { c: i64, max: i64 },
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

pub type Result<T> = std::result::Result<T, EaqeccError>;

/// `[[n, k, d; c]]_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub c: u64,
    pub q: u64,
    pub mds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl EaqeccParams {
    /// Builds the tuple and fills `mds` from the Singleton slack.
    pub fn new(n: u64, k: u64, d: u64, c: u64, q: u64) -> Self {
        let mut p = Self {
            n,
            k,
            d,
            c,
            q,
            mds: false,
            provenance: None,
        };
        p.mds = p.slack() == 0;
        p
    }

    /// `n + c - k - 2(d - 1)`.
    pub fn slack(&self) -> i64 {
        self.n as i64 + self.c as i64 - self.k as i64 - 2 * (self.d as i64 - 1)
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64, u64) {
        (self.n, self.k, self.d, self.c, self.q)
    }

    /// `(k - c) / n`.
    pub fn net_rate(&self) -> f64 {
        (self.k as f64 - self.c as f64) / self.n as f64
    }
}

impl fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},{};{}]]_{}",
            self.n, self.k, self.d, self.c, self.q
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonVerdict {
    pub slack: i64,
    pub mds: bool,
}

pub fn singleton_verdict(p: &EaqeccParams) -> Result<SingletonVerdict> {
    let slack = p.slack();
    if slack < 0 {
        return Err(EaqeccError::BoundViolated {
            params: p.to_string(),
            slack,
        });
    }
    let max = p.n as i64 - 1;
    if p.c as i64 > max {
        return Err(EaqeccError::EntanglementRange { c: p.c as i64, max });
    }
    Ok(SingletonVerdict {
        slack,
        mds: slack == 0,
    })
}

/// `[[n, k - h, d; n - k - h]]_q` for an `[n, k, d]` code with hull dimension `h`.
pub fn eaqecc_from_hull(n: u64, k: u64, hull_dim: u64, d: u64, q: u64) -> EaqeccParams {
    EaqeccParams::new(n, k - hull_dim, d, n - k - hull_dim, q)
}

/// Measures the hull of `code` and derives the parameters; `d` must be the
/// code's true minimum distance.
pub fn derive_eaqecc(code: &LinearCode, l: GaloisLevel, d: u64) -> Result<EaqeccParams> {
    let hull = hull_compute(code, l)?;
    Ok(eaqecc_from_hull(
        code.n() as u64,
        code.k() as u64,
        hull.dim() as u64,
        d,
        code.ctx().q(),
    ))
}

/// Closed-form tuple for a family request: length `N = n + extra`,
/// `[[N, k - h, N - k + 1; N - k - h]]_q`.
pub fn closed_form(length: u64, k: u64, h: u64, q: u64) -> EaqeccParams {
    EaqeccParams::new(length, k - h, length - k + 1, length - k - h, q)
}

/// Constructs the family code, derives its parameters from the measured hull
/// and MDS distance, and checks them against the closed form.
pub fn theorem_family_emit(
    ctx: &Arc<FieldCtx>,
    req: &FamilyRequest,
) -> Result<(EaqeccParams, Construction)> {
    let built = construct(ctx, req)?;
    let n = built.length() as u64;
    let k = built.code.k() as u64;
    let mut derived = eaqecc_from_hull(n, k, built.hull.dim() as u64, n - k + 1, ctx.q());
    let expected = closed_form(n, req.k, req.h, ctx.q());
    if derived.tuple() != expected.tuple() {
        return Err(EaqeccError::TheoremMismatch {
            derived: derived.to_string(),
            expected: expected.to_string(),
        });
    }
    singleton_verdict(&derived)?;
    derived.provenance = Some(built.provenance.clone());
    Ok((derived, built))
}

/// Parameters from the Galois dual side together with both hull dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualSide {
    pub params: EaqeccParams,
    pub hull_primal: usize,
    pub hull_dual: usize,
}

/// `[[n, n - k - h', k + 1; k - h']]_q` with `h' = dim Hull_l(C^{⊥_l})`, for
/// an MDS code `C`.
pub fn dual_side_eaqecc(code: &LinearCode, l: GaloisLevel) -> Result<DualSide> {
    let primal = hull_compute(code, l)?;
    let dual = galois_dual(code, l);
    let dual_hull = hull_compute(&dual, l)?;
    let n = code.n() as u64;
    let k = code.k() as u64;
    let hd = dual_hull.dim() as u64;
    Ok(DualSide {
        params: EaqeccParams::new(n, n - k - hd, k + 1, k - hd, code.ctx().q()),
        hull_primal: primal.dim(),
        hull_dual: dual_hull.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;

    fn f(p: u64, e: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, e, None).unwrap())
    }

    #[test]
    fn table1_row() {
        let ctx = f(2, 6);
        let req = FamilyRequest::new(Family::T1a, 2, 6, 2, 10, 1).with_n(63);
        let (p, built) = theorem_family_emit(&ctx, &req).unwrap();
        assert_eq!(p.tuple(), (63, 9, 54, 52, 64));
        assert!(p.mds);
        let direct = derive_eaqecc(&built.code, ctx.level(2).unwrap(), 54).unwrap();
        assert_eq!(direct.tuple(), p.tuple());
    }

    #[test]
    fn table3_row() {
        let ctx = f(3, 4);
        let req = FamilyRequest::new(Family::T3n, 3, 4, 1, 20, 6).with_subgroups(160, 3, 1);
        let (p, _) = theorem_family_emit(&ctx, &req).unwrap();
        assert_eq!(p.tuple(), (80, 14, 61, 54, 81));
        let req = FamilyRequest::new(Family::T3n2, 3, 4, 1, 20, 19).with_subgroups(160, 3, 1);
        let (p, _) = theorem_family_emit(&ctx, &req).unwrap();
        assert_eq!(p.tuple(), (82, 1, 63, 43, 81));
    }

    #[test]
    fn stabilizer_case() {
        let p = eaqecc_from_hull(10, 6, 4, 5, 9);
        assert_eq!(p.c, 0);
    }

    #[test]
    fn singleton_examples() {
        let v = singleton_verdict(&EaqeccParams::new(63, 9, 54, 52, 64)).unwrap();
        assert_eq!(
            v,
            SingletonVerdict {
                slack: 0,
                mds: true
            }
        );
        let v = singleton_verdict(&EaqeccParams::new(25, 8, 17, 15, 390625)).unwrap();
        assert!(v.mds);
        let v = singleton_verdict(&EaqeccParams::new(9, 4, 1, 0, 9)).unwrap();
        assert_eq!(v.slack, 5);
        assert!(matches!(
            singleton_verdict(&EaqeccParams::new(10, 5, 9, 0, 9)),
            Err(EaqeccError::BoundViolated { .. })
        ));
    }

    #[test]
    fn h_equals_k_length_n_plus_1() {
        let ctx = f(3, 4);
        let req = FamilyRequest::new(Family::T4n1, 3, 4, 1, 9, 9).with_cosets(40, 1);
        let (p, _) = theorem_family_emit(&ctx, &req).unwrap();
        assert_eq!(p.tuple(), (41, 0, 33, 23, 81));
    }

    #[test]
    fn dual_side_symmetric_levels() {
        let ctx = f(3, 4);
        for l in 0..3 {
            let req = FamilyRequest::new(Family::T1a, 3, 4, l, 2, 1).with_n(16);
            let built = construct(&ctx, &req).unwrap();
            let side = dual_side_eaqecc(&built.code, ctx.level(l).unwrap()).unwrap();
            if l == 0 || l == 2 {
                assert_eq!(side.hull_primal, side.hull_dual);
            }
            assert_eq!(side.params.d, 3);
            assert!(side.params.mds);
        }
    }

    #[test]
    fn json_shape() {
        let p = EaqeccParams::new(63, 9, 54, 52, 64);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["n"], 63);
        assert_eq!(v["mds"], true);
        assert!(v.get("provenance").is_none());
    }
}
