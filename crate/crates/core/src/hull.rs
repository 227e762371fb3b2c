//! l-Galois duals, hull dimensions measured two ways, and polynomial
//! membership witnesses for (extended) GRS codes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{Elem, FieldCtx, FieldError, GaloisLevel};
use crate::grs::{GrsSpec, LinearCode};
use crate::linalg::{intersection_basis, intersection_dim, LinalgError, MatFq, MatrixJson};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HullError {
    #[error("hull methods disagree: stacked {stacked}, rank(HH‡) gives {rank}")]
    MethodDisagreement { stacked: usize, rank: usize },
    #[error("degree violation: {0}")]
    DegreeViolation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, HullError>;

/// `C^{⊥_l}`, the null space of the entrywise `p^{e-l}` power of the generator.
pub fn galois_dual(code: &LinearCode, l: GaloisLevel) -> LinearCode {
    let e = code.ctx().e();
    let twisted = code.gen().entrywise_frobenius(e - l.get());
    LinearCode::from_spanning_rows(&twisted.null_space())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullReport {
    pub l: u32,
    pub dim_stacked: usize,
    pub dim_rank: usize,
    pub basis: MatFq,
}

impl HullReport {
    pub fn dim(&self) -> usize {
        self.dim_stacked
    }

    pub fn to_json(&self) -> HullReportJson {
        HullReportJson {
            l: self.l,
            dim: self.dim(),
            basis: MatrixJson::from_mat(&self.basis),
            methods: HullMethods {
                stacked: self.dim_stacked,
                rank_hh: self.dim_rank,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullMethods {
    pub stacked: usize,
    #[serde(rename = "rankHH")]
    pub rank_hh: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReportJson {
    pub l: u32,
    pub dim: usize,
    pub basis: MatrixJson,
    pub methods: HullMethods,
}

/// `(n - k) - rank(H H‡)` with `H‡ = (H^{(p^{e-l})})^T`.
pub fn hull_dim_rank(code: &LinearCode, l: GaloisLevel) -> Result<usize> {
    let e = code.ctx().e();
    let h = code.parity();
    let h_dag = h.entrywise_frobenius(e - l.get()).transpose();
    let rank = h.matmul(&h_dag)?.rank();
    Ok(code.n() - code.k() - rank)
}

/// Measures `dim Hull_l(C)` by subspace intersection and by the parity-rank
/// identity; the two must agree.
pub fn hull_compute(code: &LinearCode, l: GaloisLevel) -> Result<HullReport> {
    let dual = galois_dual(code, l);
    let dim_stacked = intersection_dim(code.gen(), dual.gen())?;
    let dim_rank = hull_dim_rank(code, l)?;
    if dim_stacked != dim_rank {
        return Err(HullError::MethodDisagreement {
            stacked: dim_stacked,
            rank: dim_rank,
        });
    }
    let basis = intersection_basis(code.gen(), dual.gen())?;
    debug_assert_eq!(basis.rows(), dim_stacked);
    Ok(HullReport {
        l: l.get(),
        dim_stacked,
        dim_rank,
        basis,
    })
}

/// Polynomials certifying that the codeword of `f` lies in the Galois dual.
/// `c` is an optional factor recorded by constructions; it plays no part in
/// the check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullWitness {
    pub f: Poly,
    pub g: Poly,
    pub c: Poly,
}

impl HullWitness {
    pub fn new(f: Poly, g: Poly) -> Self {
        Self {
            f,
            g,
            c: Poly::zero(),
        }
    }

    /// Coefficient-wise Frobenius image of `f`.
    pub fn frobenius_f(&self, ctx: &FieldCtx, l: GaloisLevel) -> Poly {
        self.f.frobenius_coeffs(ctx, l.get())
    }
}

fn g_degree_bound(spec: &GrsSpec) -> i64 {
    let n = spec.num_points() as i64;
    let k = spec.k() as i64;
    if spec.is_extended() {
        n - k
    } else {
        n - k - 1
    }
}

fn check_f_degree(spec: &GrsSpec, f: &Poly) -> Result<()> {
    if !f.degree_at_most(spec.k() as i64 - 1) {
        return Err(HullError::DegreeViolation(format!(
            "deg f = {} exceeds k-1 = {}",
            f.degree().unwrap_or(0),
            spec.k() - 1
        )));
    }
    Ok(())
}

/// `v_i^{p^l+1} f(a_i)^{p^l}` for every point.
fn lhs_values(spec: &GrsSpec, l: GaloisLevel, f: &Poly) -> Vec<Elem> {
    let ctx = spec.ctx();
    let t = ctx.p_pow(l.get());
    spec.points()
        .iter()
        .zip(spec.multipliers())
        .map(|(&a, &v)| {
            let fa = ctx.frobenius(f.eval(ctx, a), l.get());
            ctx.mul(ctx.pow(v, t + 1), fa)
        })
        .collect()
}

fn extended_condition(spec: &GrsSpec, l: GaloisLevel, f: &Poly, g: &Poly) -> bool {
    let ctx = spec.ctx();
    let top = ctx.frobenius(f.coeff(spec.k() - 1), l.get());
    let g_top = g.coeff(spec.num_points() - spec.k());
    top == ctx.neg(g_top)
}

/// Checks `v_i^{p^l+1} f^{p^l}(a_i) = u_i g(a_i)` for all `i`, plus
/// `f_{k-1}^{p^l} = -g_{n-k}` for extended codes.
pub fn membership_witness_check(spec: &GrsSpec, l: GaloisLevel, w: &HullWitness) -> Result<bool> {
    check_f_degree(spec, &w.f)?;
    let bound = g_degree_bound(spec);
    if !w.g.degree_at_most(bound) {
        return Err(HullError::DegreeViolation(format!(
            "deg g = {} exceeds {bound}",
            w.g.degree().unwrap_or(0)
        )));
    }
    let ctx = spec.ctx();
    let u = spec.u();
    let lhs = lhs_values(spec, l, &w.f);
    let values_ok = spec
        .points()
        .iter()
        .zip(&u)
        .zip(&lhs)
        .all(|((&a, &ui), &left)| left == ctx.mul(ui, w.g.eval(ctx, a)));
    Ok(values_ok && (!spec.is_extended() || extended_condition(spec, l, &w.f, &w.g)))
}

/// Interpolates the unique candidate `g` through the forced values and keeps
/// it when it meets the degree bound (and the extended condition).
pub fn witness_solve(spec: &GrsSpec, l: GaloisLevel, f: &Poly) -> Result<Option<Poly>> {
    check_f_degree(spec, f)?;
    let ctx = spec.ctx();
    let u = spec.u();
    let ys: Vec<Elem> = lhs_values(spec, l, f)
        .into_iter()
        .zip(&u)
        .map(|(y, &ui)| ctx.div(y, ui))
        .collect::<std::result::Result<_, _>>()?;
    let g = Poly::interpolate(ctx, spec.points(), &ys)?;
    if !g.degree_at_most(g_degree_bound(spec)) {
        return Ok(None);
    }
    if spec.is_extended() && !extended_condition(spec, l, f, &g) {
        return Ok(None);
    }
    Ok(Some(g))
}
