use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use hullforge::grs::{encode, grs_generator, GrsSpec};
use hullforge::hull::{galois_dual, hull_compute};
use hullforge::linalg::{intersection_dim, MatFq};
use hullforge::{Elem, FieldCtx};

const FIELDS: [(u64, u32); 8] = [
    (2, 3),
    (2, 4),
    (3, 2),
    (3, 3),
    (5, 2),
    (2, 6),
    (3, 4),
    (7, 2),
];

fn fields() -> &'static Vec<Arc<FieldCtx>> {
    static CELL: OnceLock<Vec<Arc<FieldCtx>>> = OnceLock::new();
    CELL.get_or_init(|| {
        FIELDS
            .iter()
            .map(|&(p, e)| Arc::new(FieldCtx::new(p, e, None).unwrap()))
            .collect()
    })
}

fn any_field() -> impl Strategy<Value = Arc<FieldCtx>> {
    (0..FIELDS.len()).prop_map(|i| fields()[i].clone())
}

fn elem(ctx: &FieldCtx, raw: u64) -> Elem {
    ctx.elem(raw % ctx.q()).unwrap()
}

/// A GRS spec with distinct points drawn by a seed-driven shuffle.
fn any_spec() -> impl Strategy<Value = (GrsSpec, u32)> {
    (
        any_field(),
        any::<u64>(),
        2usize..=12,
        any::<bool>(),
        0u32..6,
        prop::collection::vec(1u64.., 13),
    )
        .prop_map(|(ctx, seed, n, extended, l, vraw)| {
            let q = ctx.q() as usize;
            let n = n.min(q);
            let mut pool: Vec<Elem> = ctx.elements().collect();
            let mut s = seed;
            for i in (1..pool.len()).rev() {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                pool.swap(i, (s >> 33) as usize % (i + 1));
            }
            let a = pool[..n].to_vec();
            let v = vraw[..n]
                .iter()
                .map(|&r| ctx.elem(1 + r % (ctx.q() - 1)).unwrap())
                .collect();
            let k = 1 + (seed as usize % if extended { n } else { n - 1 });
            let l = l % ctx.e();
            (GrsSpec::new(ctx, a, v, k, extended).unwrap(), l)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(ctx in any_field(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let (a, b, c) = (elem(&ctx, x), elem(&ctx, y), elem(&ctx, z));
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), Elem::ZERO);
        prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(ctx.alpha_pow(ctx.discrete_log(a).unwrap() as i64), a);
            prop_assert_eq!(ctx.pow(a, ctx.group_order()), Elem::ONE);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(ctx in any_field(), x in any::<u64>(), y in any::<u64>(), j in 0u32..6) {
        let (a, b) = (elem(&ctx, x), elem(&ctx, y));
        let j = j % ctx.e();
        let f = |t| ctx.frobenius(t, j);
        prop_assert_eq!(f(ctx.add(a, b)), ctx.add(f(a), f(b)));
        prop_assert_eq!(f(ctx.mul(a, b)), ctx.mul(f(a), f(b)));
        prop_assert_eq!(f(a), ctx.pow(a, ctx.p_pow(j)));
        let back = ctx.frobenius(f(a), ctx.e() - j);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn matrix_encoding_matches_evaluation((spec, _) in any_spec(), raw in prop::collection::vec(any::<u64>(), 12)) {
        let ctx = spec.ctx().clone();
        let msg: Vec<Elem> = raw[..spec.k()].iter().map(|&r| elem(&ctx, r)).collect();
        let code = grs_generator(&spec);
        prop_assert_eq!(code.n(), spec.length());
        prop_assert_eq!(encode(&code, &msg).unwrap(), spec.evaluate(&msg).unwrap());
    }

    #[test]
    fn rank_nullity(ctx in any_field(), rows in 1usize..6, cols in 1usize..8, raw in prop::collection::vec(any::<u64>(), 48)) {
        let data: Vec<Elem> = raw[..rows * cols].iter().map(|&r| elem(&ctx, if r % 3 == 0 { 0 } else { r })).collect();
        let m = MatFq::new(ctx.clone(), rows, cols, data);
        let null = m.null_space();
        prop_assert_eq!(m.rank() + null.rows(), cols);
        prop_assert!(m.matmul(&null.transpose()).unwrap().is_zero());
        prop_assert_eq!(null.rank(), null.rows());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn galois_dual_and_hull((spec, l) in any_spec()) {
        let ctx = spec.ctx().clone();
        let code = grs_generator(&spec);
        let level = ctx.level(l).unwrap();
        let (n, k) = (code.n(), code.k());
        let dual = galois_dual(&code, level);
        prop_assert_eq!(dual.k(), n - k);
        // every dual row is l-orthogonal to every code row
        let pairing = code.gen().matmul(&dual.gen().entrywise_frobenius(l).transpose()).unwrap();
        prop_assert!(pairing.is_zero());
        let back = galois_dual(&dual, ctx.level((ctx.e() - l) % ctx.e()).unwrap());
        prop_assert_eq!(intersection_dim(back.gen(), code.gen()).unwrap(), k);
        let report = hull_compute(&code, level).unwrap();
        prop_assert_eq!(report.dim_stacked, report.dim_rank);
        prop_assert!(report.dim() <= k.min(n - k));
        prop_assert_eq!(report.basis.rows(), report.dim());
        if l == 0 {
            let dual_hull = hull_compute(&dual, level).unwrap();
            prop_assert_eq!(dual_hull.dim(), report.dim());
        }
    }
}
