//! Empirical log of `(dim Hull_l(C), dim Hull_l(C^{⊥_l}))` over root-of-unity
//! family codes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eaqecc::dual_side_eaqecc;
use crate::exec::Exec;
use crate::families::{construct, Family, FamilyError, FamilyRequest};
use crate::ffield::{FieldCtx, FieldError};

pub const CSV_HEADER: &str = "p,e,l,n,k,hullPrimal,hullDual";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    pub p: u64,
    pub e: u32,
    /// Levels to visit; all of `0..e` when `None`.
    pub levels: Option<Vec<u32>>,
    /// Lengths are the divisors of `q - 1` in `n_min..=n_max`.
    pub n_min: u64,
    pub n_max: u64,
    pub k_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub p: u64,
    pub e: u32,
    pub l: u32,
    pub n: u64,
    pub k: u64,
    pub hull_primal: usize,
    pub hull_dual: usize,
}

impl SweepRow {
    /// `l = 0` or `2l = e`, where the two hulls must agree.
    pub fn symmetric_level(&self) -> bool {
        self.l == 0 || 2 * self.l == self.e
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.p, self.e, self.l, self.n, self.k, self.hull_primal, self.hull_dual
        )
    }
}

/// The requests a sweep visits, in output order.
pub fn sweep_requests(ctx: &FieldCtx, cfg: &SweepConfig) -> Vec<FamilyRequest> {
    let q1 = ctx.group_order();
    let levels: Vec<u32> = cfg
        .levels
        .clone()
        .unwrap_or_else(|| (0..cfg.e).collect())
        .into_iter()
        .filter(|&l| l < cfg.e)
        .collect();
    let mut out = Vec::new();
    for l in levels {
        let pl = ctx.p_pow(l);
        for n in cfg.n_min.max(2)..=cfg.n_max.min(q1) {
            if !q1.is_multiple_of(n) {
                continue;
            }
            let k_bound = ((pl + n - 1) / (pl + 1)).min(cfg.k_max.unwrap_or(u64::MAX));
            for k in 1..=k_bound {
                for h in 0..=k {
                    out.push(FamilyRequest::new(Family::T1a, cfg.p, cfg.e, l, k, h).with_n(n));
                }
            }
        }
    }
    out
}

/// Runs every admissible request; inadmissible ones are skipped.
pub fn run_sweep(cfg: &SweepConfig, exec: Exec) -> Result<Vec<SweepRow>, FieldError> {
    let ctx = Arc::new(FieldCtx::new(cfg.p, cfg.e, None)?);
    let requests = sweep_requests(&ctx, cfg);
    let rows = exec.map(&requests, |req| -> Option<SweepRow> {
        let built = match construct(&ctx, req) {
            Ok(b) => b,
            Err(FamilyError::PredicateFailed(_) | FamilyError::NoScalingElement { .. }) => {
                return None
            }
            Err(err) => panic!("sweep construction failed for {req:?}: {err}"),
        };
        let level = ctx.level(req.l).expect("level checked by construct");
        let side = dual_side_eaqecc(&built.code, level).expect("hull methods agree");
        Some(SweepRow {
            p: cfg.p,
            e: cfg.e,
            l: req.l,
            n: built.length() as u64,
            k: req.k,
            hull_primal: side.hull_primal,
            hull_dual: side.hull_dual,
        })
    });
    Ok(rows.into_iter().flatten().collect())
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_gives_header_only() {
        let cfg = SweepConfig {
            p: 3,
            e: 2,
            levels: None,
            n_min: 5,
            n_max: 3,
            k_max: None,
        };
        let rows = run_sweep(&cfg, Exec::Sequential).unwrap();
        assert!(rows.is_empty());
        assert_eq!(to_csv(&rows), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn euclidean_rows_are_symmetric() {
        let cfg = SweepConfig {
            p: 3,
            e: 4,
            levels: Some(vec![0]),
            n_min: 2,
            n_max: 20,
            k_max: Some(4),
        };
        let rows = run_sweep(&cfg, Exec::Parallel).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.hull_primal == r.hull_dual));
    }

    #[test]
    fn level_one_rows_are_logged() {
        let cfg = SweepConfig {
            p: 3,
            e: 4,
            levels: Some(vec![1]),
            n_min: 2,
            n_max: 80,
            k_max: Some(3),
        };
        let rows = run_sweep(&cfg, Exec::Parallel).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.l == 1 && !r.symmetric_level()));
    }
}
