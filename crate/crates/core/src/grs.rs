//! Generalized Reed-Solomon codes, their extended versions, and the MDS
//! verification oracles.

use std::sync::Arc;

use thiserror::Error;

use crate::arith::{binomial, checked_pow};
use crate::exec::Exec;
use crate::ffield::{Elem, FieldCtx};
use crate::linalg::{LinalgError, MatFq};
use crate::poly::Poly;

/// Largest number of k-column submatrices `mds_check_minors` will visit.
pub const MINOR_BUDGET: u64 = 1_000_000;
/// Largest `q^k` that `min_distance_bruteforce` will enumerate.
pub const BRUTE_FORCE_BUDGET: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrsError {
    #[error("evaluation points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("column multiplier {0} is zero")]
    ZeroMultiplier(usize),
    #[error("{points} evaluation points but {multipliers} multipliers")]
    LengthMismatch { points: usize, multipliers: usize },
    #[error("dimension {k} outside 1..={max}")]
    InvalidDimension { k: usize, max: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("{what}: {count} exceeds budget {budget}")]
    TooLarge {
        what: &'static str,
        count: u64,
        budget: u64,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, GrsError>;

/// One (extended) GRS code: points `a`, multipliers `v`, dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsSpec {
    ctx: Arc<FieldCtx>,
    a: Vec<Elem>,
    v: Vec<Elem>,
    k: usize,
    extended: bool,
}

impl GrsSpec {
    pub fn new(
        ctx: Arc<FieldCtx>,
        a: Vec<Elem>,
        v: Vec<Elem>,
        k: usize,
        extended: bool,
    ) -> Result<Self> {
        if a.len() != v.len() {
            return Err(GrsError::LengthMismatch {
                points: a.len(),
                multipliers: v.len(),
            });
        }
        check_distinct(&a)?;
        if let Some(i) = v.iter().position(|x| x.is_zero()) {
            return Err(GrsError::ZeroMultiplier(i));
        }
        let max = a.len() + usize::from(extended);
        if k == 0 || k > max {
            return Err(GrsError::InvalidDimension { k, max });
        }
        Ok(Self {
            ctx,
            a,
            v,
            k,
            extended,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn points(&self) -> &[Elem] {
        &self.a
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Number of evaluation points.
    pub fn num_points(&self) -> usize {
        self.a.len()
    }

    /// Code length: points plus one for the extended coordinate.
    pub fn length(&self) -> usize {
        self.a.len() + usize::from(self.extended)
    }

    pub fn u(&self) -> Vec<Elem> {
        compute_u(&self.ctx, &self.a).expect("points validated distinct")
    }

    /// Encoding by evaluation: `(v_1 f(a_1), ..., v_n f(a_n) [, f_{k-1}])`
    /// where message coordinate `i` is the coefficient of `x^i`.
    pub fn evaluate(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.k {
            return Err(GrsError::ShapeMismatch(format!(
                "message of length {} for dimension {}",
                message.len(),
                self.k
            )));
        }
        let f = Poly::new(message.to_vec());
        let mut out: Vec<Elem> = self
            .a
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| self.ctx.mul(v, f.eval(&self.ctx, a)))
            .collect();
        if self.extended {
            out.push(message[self.k - 1]);
        }
        Ok(out)
    }
}

fn check_distinct(a: &[Elem]) -> Result<()> {
    let mut seen = std::collections::HashMap::with_capacity(a.len());
    for (j, x) in a.iter().enumerate() {
        if let Some(i) = seen.insert(*x, j) {
            return Err(GrsError::DuplicatePoints(i, j));
        }
    }
    Ok(())
}

/// A linear code given by a full-rank generator, with its Euclidean parity
/// matrix cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: MatFq,
    parity: MatFq,
}

impl LinearCode {
    pub fn from_generator(gen: MatFq) -> Result<Self> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(GrsError::RankDeficient {
                rank,
                k: gen.rows(),
            });
        }
        let parity = gen.null_space();
        Ok(Self { gen, parity })
    }

    /// Code spanned by the rows of `m`, whatever their rank.
    pub fn from_spanning_rows(m: &MatFq) -> Self {
        let gen = m.row_space_basis();
        let parity = gen.null_space();
        Self { gen, parity }
    }

    pub fn gen(&self) -> &MatFq {
        &self.gen
    }

    pub fn parity(&self) -> &MatFq {
        &self.parity
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.gen.ctx()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }
}

/// `G_k(a, v)` or, for extended specs, `G_k(a, v, ∞)`.
pub fn grs_generator(spec: &GrsSpec) -> LinearCode {
    let ctx = &spec.ctx;
    let n = spec.length();
    let mut gen = MatFq::zeros(spec.ctx.clone(), spec.k, n);
    for (j, (&a, &v)) in spec.a.iter().zip(&spec.v).enumerate() {
        let mut entry = v;
        for i in 0..spec.k {
            gen.set(i, j, entry);
            entry = ctx.mul(entry, a);
        }
    }
    if spec.extended {
        gen.set(spec.k - 1, n - 1, Elem::ONE);
    }
    let code = LinearCode::from_generator(gen).expect("GRS generators have full rank");
    debug_assert_eq!(code.k(), spec.k);
    code
}

/// `u_i = prod_{j != i} (a_i - a_j)^{-1}`.
pub fn compute_u(ctx: &FieldCtx, a: &[Elem]) -> Result<Vec<Elem>> {
    check_distinct(a)?;
    Ok(a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = a
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Elem::ONE, |acc, (_, &aj)| ctx.mul(acc, ctx.sub(ai, aj)));
            ctx.inv(prod)
                .expect("distinct points give a nonzero product")
        })
        .collect())
}

/// `message * gen`.
pub fn encode(code: &LinearCode, message: &[Elem]) -> Result<Vec<Elem>> {
    if message.len() != code.k() {
        return Err(GrsError::ShapeMismatch(format!(
            "message of length {} for dimension {}",
            message.len(),
            code.k()
        )));
    }
    Ok(code.gen.left_mul_vec(message)?)
}

/// Lexicographic list of every `k`-subset of `0..n`, flattened.
fn combinations(n: usize, k: usize) -> Vec<u16> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.extend(idx.iter().map(|&i| i as u16));
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// True iff every `k`-column submatrix of the generator is invertible, which
/// is equivalent to `d = n - k + 1`.
pub fn mds_check_minors(code: &LinearCode, exec: Exec) -> Result<bool> {
    let (n, k) = (code.n(), code.k());
    let count = binomial(n as u64, k as u64);
    if count > MINOR_BUDGET {
        return Err(GrsError::TooLarge {
            what: "k-column submatrices",
            count,
            budget: MINOR_BUDGET,
        });
    }
    let combos = combinations(n, k);
    let gen = &code.gen;
    Ok(exec.all_range(count, |i| {
        let cols: Vec<usize> = combos[i as usize * k..(i as usize + 1) * k]
            .iter()
            .map(|&c| c as usize)
            .collect();
        gen.select_columns(&cols).rank() == k
    }))
}

/// Minimum Hamming weight over all nonzero codewords, by enumerating the
/// `q^k - 1` nonzero messages.
pub fn min_distance_bruteforce(code: &LinearCode, exec: Exec) -> Result<usize> {
    let ctx = code.ctx();
    let q = ctx.q();
    let k = code.k();
    let total = checked_pow(q, k as u32)
        .filter(|&t| t <= BRUTE_FORCE_BUDGET)
        .ok_or(GrsError::TooLarge {
            what: "q^k messages",
            count: checked_pow(q, k as u32).unwrap_or(u64::MAX),
            budget: BRUTE_FORCE_BUDGET,
        })?;
    let gen = &code.gen;
    let n = code.n();
    let best = exec.min_over(1..total, |idx| {
        let mut rest = idx;
        let mut word = vec![Elem::ZERO; n];
        for i in 0..k {
            let m = ctx.elem(rest % q).expect("digit below q");
            rest /= q;
            if m.is_zero() {
                continue;
            }
            for (j, w) in word.iter_mut().enumerate() {
                *w = ctx.add(*w, ctx.mul(m, gen.get(i, j)));
            }
        }
        Some(word.iter().filter(|x| !x.is_zero()).count() as u64)
    });
    Ok(best.unwrap_or(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, e: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, e, None).unwrap())
    }

    #[test]
    fn k1_all_ones_row() {
        let ctx = field(2, 3);
        let a: Vec<Elem> = (0..5).map(|i| ctx.alpha_pow(i)).collect();
        let spec = GrsSpec::new(ctx.clone(), a, vec![Elem::ONE; 5], 1, false).unwrap();
        let code = grs_generator(&spec);
        assert_eq!(code.gen().shape(), (1, 5));
        assert!(code.gen().row(0).iter().all(|&x| x == Elem::ONE));
    }

    #[test]
    fn table1_sized_generator() {
        let ctx = field(2, 6);
        let a: Vec<Elem> = (0..63).map(|i| ctx.alpha_pow(i)).collect();
        let spec = GrsSpec::new(ctx, a, vec![Elem::ONE; 63], 10, false).unwrap();
        let code = grs_generator(&spec);
        assert_eq!(code.gen().shape(), (10, 63));
        assert_eq!(code.gen().rank(), 10);
        assert_eq!(code.parity().rows(), 53);
    }

    #[test]
    fn extended_generator_last_column() {
        let ctx = field(5, 1);
        let a: Vec<Elem> = (1..4).map(|i| ctx.from_int(i)).collect();
        let spec = GrsSpec::new(ctx, a, vec![Elem::ONE; 3], 2, true).unwrap();
        let code = grs_generator(&spec);
        assert_eq!(code.gen().shape(), (2, 4));
        assert_eq!(code.gen().get(0, 3), Elem::ZERO);
        assert_eq!(code.gen().get(1, 3), Elem::ONE);
    }

    #[test]
    fn u_values() {
        let f3 = field(3, 1);
        assert_eq!(compute_u(&f3, &[Elem::ONE]).unwrap(), vec![Elem::ONE]);
        let u = compute_u(&f3, &[Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(u, vec![f3.from_int(2), f3.from_int(1)]);
        assert!(matches!(
            compute_u(&f3, &[Elem::ONE, Elem::ONE]),
            Err(GrsError::DuplicatePoints(0, 1))
        ));
    }

    #[test]
    fn u_on_roots_of_unity_closed_form() {
        // u_i = n^{-1} alpha^{i-1} for a = powers of a primitive n-th root
        for (p, e, n) in [
            (2u64, 6u32, 63u64),
            (2, 6, 21),
            (3, 4, 40),
            (3, 4, 16),
            (5, 2, 12),
        ] {
            let ctx = field(p, e);
            let w = ctx.nth_root_of_unity(n).unwrap();
            let a: Vec<Elem> = (0..n).map(|i| ctx.pow(w, i)).collect();
            let u = compute_u(&ctx, &a).unwrap();
            let n_inv = ctx.inv(ctx.from_int(n as i64)).unwrap();
            for (i, &ui) in u.iter().enumerate() {
                assert_eq!(ui, ctx.mul(n_inv, a[i]), "p={p} e={e} n={n} i={i}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        let ctx = field(5, 1);
        let one = Elem::ONE;
        assert!(matches!(
            GrsSpec::new(ctx.clone(), vec![one, one], vec![one, one], 1, false),
            Err(GrsError::DuplicatePoints(0, 1))
        ));
        assert!(matches!(
            GrsSpec::new(
                ctx.clone(),
                vec![one, Elem::ZERO],
                vec![one, Elem::ZERO],
                1,
                false
            ),
            Err(GrsError::ZeroMultiplier(1))
        ));
        assert!(matches!(
            GrsSpec::new(ctx.clone(), vec![one, Elem::ZERO], vec![one, one], 3, false),
            Err(GrsError::InvalidDimension { k: 3, max: 2 })
        ));
        assert!(GrsSpec::new(ctx, vec![one, Elem::ZERO], vec![one, one], 3, true).is_ok());
    }

    #[test]
    fn encode_trivia() {
        let ctx = field(2, 3);
        let a: Vec<Elem> = (0..7).map(|i| ctx.alpha_pow(i)).collect();
        let spec = GrsSpec::new(ctx.clone(), a, vec![Elem::ONE; 7], 3, false).unwrap();
        let code = grs_generator(&spec);
        let zero = encode(&code, &[Elem::ZERO; 3]).unwrap();
        assert!(zero.iter().all(|x| x.is_zero()));
        let ones = encode(&code, &[Elem::ONE, Elem::ZERO, Elem::ZERO]).unwrap();
        assert!(ones.iter().all(|&x| x == Elem::ONE));
        assert!(encode(&code, &[Elem::ONE]).is_err());
    }

    #[test]
    fn mds_and_distance() {
        let ctx = field(2, 3);
        let a: Vec<Elem> = (0..7).map(|i| ctx.alpha_pow(i)).collect();
        let spec = GrsSpec::new(ctx.clone(), a.clone(), vec![Elem::ONE; 7], 3, false).unwrap();
        let code = grs_generator(&spec);
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(mds_check_minors(&code, exec).unwrap());
            assert_eq!(min_distance_bruteforce(&code, exec).unwrap(), 5);
        }
        // repetition code
        let rep = GrsSpec::new(ctx.clone(), a.clone(), vec![Elem::ONE; 7], 1, false).unwrap();
        assert_eq!(
            min_distance_bruteforce(&grs_generator(&rep), Exec::Sequential).unwrap(),
            7
        );
        // full space
        let full = GrsSpec::new(ctx.clone(), a, vec![Elem::ONE; 7], 7, false).unwrap();
        let full = grs_generator(&full);
        assert!(mds_check_minors(&full, Exec::Sequential).unwrap());
        assert!(matches!(
            min_distance_bruteforce(&full, Exec::Sequential),
            Err(GrsError::TooLarge { .. })
        ));
    }

    #[test]
    fn repeated_column_is_not_mds() {
        let ctx = field(3, 1);
        let g = MatFq::from_rows(
            ctx.clone(),
            3,
            &[
                vec![Elem::ONE, Elem::ONE, Elem::ZERO],
                vec![ctx.from_int(2), ctx.from_int(2), Elem::ONE],
            ],
        );
        let code = LinearCode::from_generator(g).unwrap();
        assert!(!mds_check_minors(&code, Exec::Parallel).unwrap());
    }

    #[test]
    fn extended_grs_distance() {
        let ctx = field(5, 1);
        let a: Vec<Elem> = (1..5).map(|i| ctx.from_int(i)).collect();
        let spec = GrsSpec::new(ctx, a, vec![Elem::ONE; 4], 2, true).unwrap();
        let code = grs_generator(&spec);
        assert_eq!(code.n(), 5);
        assert_eq!(min_distance_bruteforce(&code, Exec::Parallel).unwrap(), 4);
        assert!(mds_check_minors(&code, Exec::Parallel).unwrap());
    }

    #[test]
    fn combinations_enumerate_all() {
        let c = combinations(5, 2);
        assert_eq!(c.len() / 2, 10);
        assert_eq!(&c[..4], &[0, 1, 0, 2]);
        assert_eq!(&c[c.len() - 2..], &[3, 4]);
    }
}
