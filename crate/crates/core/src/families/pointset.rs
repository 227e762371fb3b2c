//! Multiplicative point sets built from two cyclic subgroups of `F_q^*`, with
//! closed-form `u` values and the order/divisibility predicates behind them.

use serde::{Deserialize, Serialize};

use super::{FamilyError, Result};
use crate::arith::{divides, gcd, lcm};
use crate::ffield::{Elem, FieldCtx};

/// Both evaluations of an equivalence that should always agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicatePair {
    pub left: bool,
    pub right: bool,
}

impl PredicatePair {
    pub fn agree(self) -> bool {
        self.left == self.right
    }

    /// The common value; panics when the two sides disagree.
    pub fn value(self) -> bool {
        assert!(self.agree(), "predicate sides disagree: {self:?}");
        self.left
    }
}

/// `gcd(ord(alpha^x1), ord(alpha^x2)) = 1` (left, from actual element orders)
/// versus `(q-1) | lcm(x1, x2)` (right).
pub fn lemma5_predicate(ctx: &FieldCtx, x1: u64, x2: u64) -> PredicatePair {
    let n = ctx.group_order();
    let o1 = ctx
        .element_order(ctx.alpha_pow(x1 as i64))
        .expect("nonzero");
    let o2 = ctx
        .element_order(ctx.alpha_pow(x2 as i64))
        .expect("nonzero");
    PredicatePair {
        left: gcd(o1, o2) == 1,
        right: divides(n, lcm(x1, x2)),
    }
}

/// Two equivalent condition sets on `(x1, x2)` for level `l` (`l >= 1`,
/// `l | e`):
/// left: `(q-1) | lcm(x1,x2)` and `gcd(x2,q-1) | x1 (p^l-1)`;
/// right: `(q-1) | lcm(x1,x2)` and `(q-1)/(p^l-1) | x1`.
pub fn lemma7_predicate(ctx: &FieldCtx, l: u32, x1: u64, x2: u64) -> Result<PredicatePair> {
    if l == 0 || !ctx.e().is_multiple_of(l) {
        return Err(FamilyError::PredicateFailed(format!(
            "level l = {l} must satisfy 1 <= l and l | e = {}",
            ctx.e()
        )));
    }
    let n = ctx.group_order();
    let pl1 = ctx.p_pow(l) - 1;
    let base = divides(n, lcm(x1, x2));
    let left = base && (x1 as u128 * pl1 as u128).is_multiple_of(gcd(x2, n) as u128);
    let right = base && divides(n / pl1, x1);
    Ok(PredicatePair { left, right })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum PointSetProvenance {
    /// Points `xi1^i xi2^j` with `xi1 = alpha^x1`, `xi2 = alpha^x2`.
    Subgroups { x1: u64, x2: u64, r1: u64, r2: u64 },
    /// Points `eta_s theta1^t`, `theta1 = alpha^{(q-1)/m}`,
    /// `theta2 = alpha^{y/m2}`, `eta_s = theta2^{j_s}`.
    Cosets {
        m: u64,
        m1: u64,
        m2: u64,
        y: u64,
        r: u64,
        #[serde(rename = "etaExponents")]
        eta_exponents: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPointSet {
    pub points: Vec<Elem>,
    /// `u_i` from the closed form.
    pub u: Vec<Elem>,
    pub provenance: PointSetProvenance,
}

impl SubgroupPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `a_i^{-1} u_i`.
    pub fn scaled_u(&self, ctx: &FieldCtx) -> Vec<Elem> {
        self.points
            .iter()
            .zip(&self.u)
            .map(|(&a, &u)| ctx.div(u, a).expect("points are nonzero"))
            .collect()
    }
}

/// `(-1)^n / prod a_j`, the weight of an appended zero point.
pub fn zero_point_weight(ctx: &FieldCtx, points: &[Elem]) -> Elem {
    let prod = points.iter().fold(Elem::ONE, |acc, &a| ctx.mul(acc, a));
    let w = ctx.inv(prod).expect("points are nonzero");
    if points.len() % 2 == 1 {
        ctx.neg(w)
    } else {
        w
    }
}

/// Closed form of the zero-point weight on a subgroup point set:
/// `(-1)^n xi1^{-r1(r1+1)r2/2} xi2^{-r2(r2+1)r1/2}`.
pub fn zero_point_weight_subgroups(ctx: &FieldCtx, x1: u64, x2: u64, r1: u64, r2: u64) -> Elem {
    let order = ctx.group_order() as u128;
    let e1 = (r1 as u128 * (r1 as u128 + 1) * r2 as u128 / 2) % order;
    let e2 = (r2 as u128 * (r2 as u128 + 1) * r1 as u128 / 2) % order;
    let exp = (x1 as u128 * e1 + x2 as u128 * e2) % order;
    let w = ctx.alpha_pow(-(exp as i64));
    if (r1 * r2) % 2 == 1 {
        ctx.neg(w)
    } else {
        w
    }
}

/// The `r * ord(xi2)` points `xi1^i xi2^j`, `i = 1..r`, `j = 1..ord(xi2)`.
pub fn build_pointset_eq6(
    ctx: &FieldCtx,
    l: u32,
    x1: u64,
    x2: u64,
    r: u64,
) -> Result<SubgroupPointSet> {
    if x1 == 0 || x2 == 0 {
        return Err(FamilyError::PredicateFailed(
            "x1 and x2 must be positive".into(),
        ));
    }
    let pair = lemma7_predicate(ctx, l, x1, x2)?;
    if !pair.agree() {
        return Err(FamilyError::Internal(format!(
            "subgroup conditions disagree for x1 = {x1}, x2 = {x2}"
        )));
    }
    let n = ctx.group_order();
    if !pair.value() {
        return Err(FamilyError::PredicateFailed(format!(
            "need (q-1) | lcm(x1, x2) and (q-1)/(p^l-1) | x1; q-1 = {n}, x1 = {x1}, x2 = {x2}, p^l-1 = {}",
            ctx.p_pow(l) - 1
        )));
    }
    let ord1 = n / gcd(x1, n);
    if r == 0 || r > ord1 {
        return Err(FamilyError::PredicateFailed(format!(
            "r = {r} outside 1..={ord1} = (q-1)/gcd(x1, q-1)"
        )));
    }
    let r2 = n / gcd(x2, n);
    let xi1 = ctx.alpha_pow(x1 as i64);
    let xi2 = ctx.alpha_pow(x2 as i64);
    let mut points = Vec::with_capacity((r * r2) as usize);
    for i in 1..=r {
        let head = ctx.pow(xi1, i);
        for j in 1..=r2 {
            points.push(ctx.mul(head, ctx.pow(xi2, j)));
        }
    }
    // xi1^{s r2} for each block
    let block: Vec<Elem> = (1..=r).map(|s| ctx.pow(xi1, s * r2)).collect();
    let r2_inv = ctx.inv(ctx.from_int(r2 as i64)).expect("r2 divides q-1");
    let block_u: Vec<Elem> = block_factors(ctx, &block, r2_inv);
    let u = points
        .iter()
        .enumerate()
        .map(|(idx, &a)| ctx.mul(a, block_u[idx / r2 as usize]))
        .collect();
    Ok(SubgroupPointSet {
        points,
        u,
        provenance: PointSetProvenance::Subgroups { x1, x2, r1: r, r2 },
    })
}

/// `b_s^{-1} c prod_{s' != s} (b_s - b_s')^{-1}` for each block value `b_s`.
fn block_factors(ctx: &FieldCtx, block: &[Elem], c: Elem) -> Vec<Elem> {
    block
        .iter()
        .enumerate()
        .map(|(s, &bs)| {
            let prod = block
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != s)
                .fold(bs, |acc, (_, &bt)| ctx.mul(acc, ctx.sub(bs, bt)));
            ctx.mul(c, ctx.inv(prod).expect("block values are distinct"))
        })
        .collect()
}

/// `r` cosets `eta_s H` of `H = <theta1>` (order `m`) inside
/// `G = <theta2>`, points ordered by (coset, exponent of `theta1`).
pub fn build_pointset_coset(ctx: &FieldCtx, l: u32, m: u64, r: u64) -> Result<SubgroupPointSet> {
    let e = ctx.e();
    if l == 0 || !e.is_multiple_of(2 * l) {
        return Err(FamilyError::PredicateFailed(format!(
            "need l >= 1 and 2l | e; l = {l}, e = {e}"
        )));
    }
    let n = ctx.group_order();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(FamilyError::PredicateFailed(format!(
            "need m | q-1; m = {m}, q-1 = {n}"
        )));
    }
    let pl1 = ctx.p_pow(l) - 1;
    let y = n / pl1;
    let m2 = gcd(m, y);
    let m1 = m / m2;
    let cosets = pl1 / m1;
    if r == 0 || r > cosets {
        return Err(FamilyError::PredicateFailed(format!(
            "r = {r} outside 1..={cosets} = (p^l-1)/m1"
        )));
    }
    let theta1 = ctx.alpha_pow((n / m) as i64);
    let theta2 = ctx.alpha_pow((y / m2) as i64);
    let g_order = pl1 * m2;
    let mut eta_exponents: Vec<u64> = Vec::with_capacity(r as usize);
    let mut eta_m: Vec<Elem> = Vec::with_capacity(r as usize);
    for j in 1..=g_order {
        if eta_exponents.len() as u64 == r {
            break;
        }
        let key = ctx.pow(ctx.pow(theta2, j), m);
        if !eta_m.contains(&key) {
            eta_exponents.push(j);
            eta_m.push(key);
        }
    }
    debug_assert_eq!(eta_exponents.len() as u64, r);
    let mut points = Vec::with_capacity((r * m) as usize);
    for &j in &eta_exponents {
        let eta = ctx.pow(theta2, j);
        for t in 1..=m {
            points.push(ctx.mul(eta, ctx.pow(theta1, t)));
        }
    }
    let m_inv = ctx.inv(ctx.from_int(m as i64)).expect("m divides q-1");
    let block_u = block_factors(ctx, &eta_m, m_inv);
    let u = points
        .iter()
        .enumerate()
        .map(|(idx, &a)| ctx.mul(a, block_u[idx / m as usize]))
        .collect();
    Ok(SubgroupPointSet {
        points,
        u,
        provenance: PointSetProvenance::Cosets {
            m,
            m1,
            m2,
            y,
            r,
            eta_exponents,
        },
    })
}
