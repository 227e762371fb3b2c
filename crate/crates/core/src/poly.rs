//! Univariate polynomials over F_q, used for witness polynomials and as the
//! evaluation route of GRS encoding.

use crate::ffield::{Elem, FieldCtx, FieldError};

/// Coefficients constant-first, trailing zeros trimmed (zero polynomial is
/// the empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Elem::ZERO, Elem::ONE])
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when `deg <= bound` (the zero polynomial always qualifies).
    pub fn degree_at_most(&self, bound: i64) -> bool {
        match self.degree() {
            None => true,
            Some(d) => (d as i64) <= bound,
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        self.add(ctx, &other.scale(ctx, ctx.neg(Elem::ONE)))
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// `prod (x - r)` over `roots`.
    pub fn from_roots(ctx: &FieldCtx, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::constant(Elem::ONE), |acc, &r| {
            acc.mul(ctx, &Poly::new(vec![ctx.neg(r), Elem::ONE]))
        })
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Elem::ZERO; k];
        c.extend_from_slice(&self.coeffs);
        Poly::new(c)
    }

    /// Divide by `x^k`, `None` unless `x^k` divides exactly.
    pub fn shift_down(&self, k: usize) -> Option<Poly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(self.coeffs.iter().skip(k).copied().collect()))
    }

    /// Coefficient-wise Frobenius `sum f_i^{p^l} x^i`.
    pub fn frobenius_coeffs(&self, ctx: &FieldCtx, l: u32) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.frobenius(c, l)).collect())
    }

    /// `f(x)^m` by repeated squaring.
    pub fn pow(&self, ctx: &FieldCtx, mut m: u64) -> Poly {
        let mut acc = Poly::constant(Elem::ONE);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(ctx, &base);
            }
        }
        acc
    }

    /// `f(x)^{p^l}`, computed as `F(x^{p^l})` with `F` the coefficient-wise
    /// Frobenius image.
    pub fn frobenius_power(&self, ctx: &FieldCtx, l: u32) -> Poly {
        let step = ctx.p_pow(l % ctx.e()) as usize;
        let mut out = vec![Elem::ZERO; self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * step] = ctx.frobenius(c, l);
        }
        Poly::new(out)
    }

    /// Synthetic division by `(x - r)`; returns quotient and remainder.
    pub fn div_linear(&self, ctx: &FieldCtx, r: Elem) -> (Poly, Elem) {
        if self.is_zero() {
            return (Poly::zero(), Elem::ZERO);
        }
        let n = self.coeffs.len();
        let mut q = vec![Elem::ZERO; n - 1];
        let mut carry = Elem::ZERO;
        for i in (0..n).rev() {
            let v = ctx.add(self.coeffs[i], ctx.mul(carry, r));
            if i == 0 {
                return (Poly::new(q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`; the result has degree
    /// below `xs.len()`.
    pub fn interpolate(ctx: &FieldCtx, xs: &[Elem], ys: &[Elem]) -> Result<Poly, FieldError> {
        assert_eq!(xs.len(), ys.len(), "interpolation needs paired samples");
        let master = Poly::from_roots(ctx, xs);
        let mut acc = Poly::zero();
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let (basis, rem) = master.div_linear(ctx, xi);
            debug_assert!(rem.is_zero(), "x_{i} is a root of the master polynomial");
            let denom = basis.eval(ctx, xi);
            let weight = ctx.div(yi, denom)?;
            acc = acc.add(ctx, &basis.scale(ctx, weight));
        }
        Ok(acc)
    }
}
