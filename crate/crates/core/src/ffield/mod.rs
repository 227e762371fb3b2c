//! Exact arithmetic in F_{p^e}.
//!
//! Elements are stored as the integer code `sum c_i p^i` of their
//! polynomial-basis coordinates `(c_0, ..., c_{e-1})`, so every `u32` below
//! `q` is a valid element and equality is coefficient-wise. Fields with
//! `q <= 2^20` carry log, antilog and Zech tables; larger fields fall back to
//! polynomial multiplication with reduction and baby-step/giant-step logs.

mod fp_poly;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

pub use fp_poly::is_irreducible;

/// Fields up to this size get log/antilog/Zech tables.
pub const TABLE_THRESHOLD: u64 = 1 << 20;
/// Largest accepted field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field exponent must be at least 1")]
    ZeroExponent,
    #[error("field size {p}^{e} exceeds 2^31")]
    TooLarge { p: u64, e: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("coefficient {0} is not a residue mod p")]
    BadCoefficient(u64),
    #[error("element code {0} is outside the field")]
    BadElement(u64),
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("{n} does not divide q-1 = {order}")]
    NotADivisor { n: u64, order: u64 },
    #[error("no v with v^(p^l+1) = u")]
    NoPreimage,
    #[error("element is not in the multiplicative group of F_(p^{l})")]
    NotInSubfield { l: u32 },
    #[error("Galois level {l} outside 0..{e}")]
    InvalidLevel { l: u32, e: u32 },
    #[error("declared primitive element does not match the canonical one")]
    AlphaMismatch,
}

pub type Result<T> = std::result::Result<T, FieldError>;

/// `q = p^e` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let q = arith::checked_pow(p, e)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(FieldError::TooLarge { p, e })?;
        Ok(Self { p, e, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// A field element: canonical polynomial-basis coordinates packed base `p`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The index `l` of the Galois form `sum x_i y_i^{p^l}`, `0 <= l < e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisLevel(u32);

impl GaloisLevel {
    pub fn new(l: u32, ctx: &FieldCtx) -> Result<Self> {
        if l >= ctx.e() {
            return Err(FieldError::InvalidLevel { l, e: ctx.e() });
        }
        Ok(Self(l))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    /// `exp[i] = alpha^i` for `i < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[x]`, with `log[0] = NO_LOG`.
    log: Vec<u32>,
    /// `zech[n] = log(1 + alpha^n)`, `NO_LOG` when the sum vanishes.
    zech: Vec<u32>,
}

/// Wire form of a field: `{"p", "e", "modulus", "alpha"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
    pub alpha: Vec<u64>,
}

/// A concrete model of F_{p^e}: modulus, primitive element, optional tables.
/// Immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    pp: PrimePower,
    modulus: Vec<u64>,
    alpha: Elem,
    group_factors: Vec<u64>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.pp == other.pp && self.modulus == other.modulus && self.alpha == other.alpha
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.pp.p)
            .field("e", &self.pp.e)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl FieldCtx {
    /// Builds F_{p^e}. Without an explicit modulus the lexicographically
    /// smallest monic irreducible is used (coefficients compared from the
    /// constant term up); alpha is the smallest primitive element in the same
    /// order.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        let pp = PrimePower::new(p, e)?;
        let modulus = match modulus {
            Some(m) => {
                validate_modulus(&m, pp)?;
                m
            }
            None => smallest_irreducible(pp),
        };
        let group_factors = arith::prime_factors(pp.q - 1);
        let mut ctx = FieldCtx {
            pp,
            modulus,
            alpha: Elem::ONE,
            group_factors,
            tables: None,
        };
        ctx.alpha = (1..pp.q)
            .map(|key| ctx.elem_at_lex(key))
            .find(|&x| ctx.is_primitive_slow(x))
            .expect("multiplicative group is cyclic");
        if pp.q <= TABLE_THRESHOLD {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Rebuilds a field from its descriptor, checking that the declared
    /// primitive element is the canonical one.
    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let ctx = Self::new(desc.p, desc.e, Some(desc.modulus.clone()))?;
        let alpha = ctx.from_coeffs(&desc.alpha)?;
        if alpha != ctx.alpha {
            return Err(FieldError::AlphaMismatch);
        }
        Ok(ctx)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.pp.p,
            e: self.pp.e,
            modulus: self.modulus.clone(),
            alpha: self.coeffs(self.alpha),
        }
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn p(&self) -> u64 {
        self.pp.p
    }

    pub fn e(&self) -> u32 {
        self.pp.e
    }

    pub fn q(&self) -> u64 {
        self.pp.q
    }

    /// Order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.pp.q - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn level(&self, l: u32) -> Result<GaloisLevel> {
        GaloisLevel::new(l, self)
    }

    /// `p^l` as an integer.
    pub fn p_pow(&self, l: u32) -> u64 {
        self.pp.p.pow(l)
    }

    // ---- element encoding -------------------------------------------------

    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code >= self.pp.q {
            return Err(FieldError::BadElement(code));
        }
        Ok(Elem(code as u32))
    }

    /// Polynomial-basis coordinates, constant term first, length `e`.
    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let p = self.pp.p;
        let mut c = x.0 as u64;
        (0..self.pp.e)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.pp.e as usize {
            return Err(FieldError::DegreeMismatch {
                expected: self.pp.e,
                found: coeffs.len(),
            });
        }
        let p = self.pp.p;
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(FieldError::BadCoefficient(c));
            }
            code = code * p + c;
        }
        Ok(Elem(code as u32))
    }

    /// Element whose coefficient vector, read constant term first as the most
    /// significant digit, spells `key` in base `p`.
    fn elem_at_lex(&self, key: u64) -> Elem {
        let p = self.pp.p;
        let mut k = key;
        let mut code = 0u64;
        for _ in 0..self.pp.e {
            code = code * p + k % p;
            k /= p;
        }
        Elem(code as u32)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.pp.p as i64) as u32)
    }

    /// Every element, in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.pp.q as u32).map(Elem)
    }

    // ---- arithmetic -------------------------------------------------------

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let p = self.pp.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += (x % p + y % p) % p * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out as u32)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) if self.pp.p != 2 => {
                let n = self.pp.q as u32 - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    Elem::ZERO
                } else {
                    Elem(t.exp[(la + z) as usize])
                }
            }
            _ => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.pp.p;
        if p == 2 || a.0 == 0 {
            return a;
        }
        let mut x = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            out += (p - x % p) % p * place;
            x /= p;
            place *= p;
        }
        Elem(out as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let p = self.pp.p;
        let e = self.pp.e as usize;
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            // x^e = -(m_0 + ... + m_{e-1} x^{e-1})
            for j in 0..e {
                let sub = c * self.modulus[j] % p;
                prod[d - e + j] = (prod[d - e + j] + p - sub) % p;
            }
            prod[d] = 0;
        }
        prod.truncate(e);
        let mut code = 0u64;
        for &c in prod.iter().rev() {
            code = code * p + c;
        }
        Elem(code as u32)
    }

    /// `a^n` for `n >= 0`; `0^0 = 1`.
    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if a.0 == 0 {
            return if n == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let order = self.group_order();
        let n = n % order;
        match &self.tables {
            Some(t) => {
                let l = (t.log[a.0 as usize] as u64 * n) % order;
                Elem(t.exp[l as usize])
            }
            None => self.pow_poly(a, n),
        }
    }

    fn pow_poly(&self, a: Elem, mut n: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul_poly(base, base);
            }
        }
        acc
    }

    /// `a^n` for any integer `n`; negative powers need `a != 0`.
    pub fn pow_signed(&self, a: Elem, n: i64) -> Result<Elem> {
        if n >= 0 {
            return Ok(self.pow(a, n as u64));
        }
        let inv = self.inv(a)?;
        Ok(self.pow(inv, n.unsigned_abs()))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(FieldError::ZeroElement);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = self.group_order() as u32;
                let l = t.log[a.0 as usize];
                Elem(t.exp[((n - l) % n) as usize])
            }
            None => self.pow_poly(a, self.group_order() - 1),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `alpha^s` for any integer `s`.
    pub fn alpha_pow(&self, s: i64) -> Elem {
        let order = self.group_order() as i64;
        let s = s.rem_euclid(order) as u64;
        match &self.tables {
            Some(t) => Elem(t.exp[s as usize]),
            None => self.pow_poly(self.alpha, s),
        }
    }

    /// `x^{p^l}`. The exponent is taken modulo `e`, so composing levels adds.
    pub fn frobenius(&self, x: Elem, l: u32) -> Elem {
        let l = l % self.pp.e;
        if l == 0 || x.0 == 0 {
            return x;
        }
        self.pow(x, self.p_pow(l))
    }

    /// `x` lies in the subfield fixed by `x -> x^{p^l}`.
    pub fn in_subfield(&self, x: Elem, l: u32) -> bool {
        self.frobenius(x, l) == x
    }

    // ---- group structure --------------------------------------------------

    fn is_primitive_slow(&self, x: Elem) -> bool {
        if x.0 == 0 {
            return false;
        }
        let n = self.group_order();
        self.group_factors
            .iter()
            .all(|&r| self.pow_poly(x, n / r) != Elem::ONE)
    }

    fn build_tables(&self) -> LogTables {
        let n = self.group_order() as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![NO_LOG; self.pp.q as usize];
        let mut cur = Elem::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            exp[i + n] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_poly(cur, self.alpha);
        }
        debug_assert_eq!(cur, Elem::ONE);
        let zech = (0..n)
            .map(|i| {
                let s = self.add_digits(Elem::ONE, Elem(exp[i]));
                log[s.0 as usize]
            })
            .collect();
        LogTables { exp, log, zech }
    }

    /// Multiplicative order of `x`, by descent over the prime factors of `q-1`.
    pub fn element_order(&self, x: Elem) -> Result<u64> {
        if x.0 == 0 {
            return Err(FieldError::ZeroElement);
        }
        let mut t = self.group_order();
        for &r in &self.group_factors {
            while t.is_multiple_of(r) && self.pow(x, t / r) == Elem::ONE {
                t /= r;
            }
        }
        Ok(t)
    }

    /// `alpha^{(q-1)/n}`, an element of exact order `n`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Elem> {
        let order = self.group_order();
        if n == 0 || !order.is_multiple_of(n) {
            return Err(FieldError::NotADivisor { n, order });
        }
        Ok(self.alpha_pow((order / n) as i64))
    }

    /// The unique `t` in `[0, q-1)` with `alpha^t = x`.
    pub fn discrete_log(&self, x: Elem) -> Result<u64> {
        if x.0 == 0 {
            return Err(FieldError::ZeroElement);
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[x.0 as usize] as u64);
        }
        Ok(self.bsgs(x))
    }

    fn bsgs(&self, x: Elem) -> u64 {
        let n = self.group_order();
        let m = (n as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = Elem::ONE;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = self.mul_poly(cur, self.alpha);
        }
        let giant = self.pow_poly(self.alpha, n - m % n);
        let mut gamma = x;
        for i in 0..=m {
            if let Some(&j) = baby.get(&gamma) {
                return (i * m + j) % n;
            }
            gamma = self.mul_poly(gamma, giant);
        }
        unreachable!("alpha generates the multiplicative group")
    }

    /// Smallest `s >= 0` such that `(alpha^s)^exponent = x`, returned as the
    /// root `alpha^s`.
    pub fn power_root(&self, x: Elem, exponent: u64) -> Result<Elem> {
        let t = self.discrete_log(x)?;
        let s = arith::solve_linear_congruence(exponent, t, self.group_order())
            .ok_or(FieldError::NoPreimage)?;
        Ok(self.alpha_pow(s as i64))
    }

    /// For `u` in `F_{p^l}^*` (with `l | e`), the deterministic `v` with
    /// `v^{p^l+1} = u`: `v = alpha^s` for the smallest `s` solving
    /// `s (p^l+1) ≡ log u (mod q-1)`. Every such `u` has a preimage exactly
    /// when `2l | e`.
    pub fn galois_norm_preimage(&self, u: Elem, l: GaloisLevel) -> Result<Elem> {
        let l = l.get();
        if l == 0 || !self.pp.e.is_multiple_of(l) || u.0 == 0 || !self.in_subfield(u, l) {
            return Err(FieldError::NotInSubfield { l });
        }
        self.power_root(u, self.p_pow(l) + 1)
    }

    /// Smallest `beta = alpha^s`, `s >= 1`, with `beta^{p^l+1} != 1`.
    pub fn smallest_non_norm_one(&self, l: u32) -> Option<(u64, Elem)> {
        let exp = self.p_pow(l) + 1;
        (1..self.group_order().max(2)).find_map(|s| {
            let b = self.alpha_pow(s as i64);
            (self.pow(b, exp) != Elem::ONE).then_some((s, b))
        })
    }
}

fn validate_modulus(m: &[u64], pp: PrimePower) -> Result<()> {
    if m.len() != pp.e as usize + 1 {
        return Err(FieldError::DegreeMismatch {
            expected: pp.e,
            found: m.len().saturating_sub(1),
        });
    }
    if let Some(&c) = m.iter().find(|&&c| c >= pp.p) {
        return Err(FieldError::BadCoefficient(c));
    }
    if m[pp.e as usize] != 1 {
        return Err(FieldError::NotMonic);
    }
    if !fp_poly::is_irreducible(m, pp.p) {
        return Err(FieldError::ReducibleModulus(pp.p));
    }
    Ok(())
}

fn smallest_irreducible(pp: PrimePower) -> Vec<u64> {
    let e = pp.e as usize;
    let p = pp.p;
    (0..pp.q)
        .map(|key| {
            // constant term is the most significant digit of the key
            let mut f = vec![0u64; e + 1];
            let mut k = key;
            for i in (0..e).rev() {
                f[i] = k % p;
                k /= p;
            }
            f[e] = 1;
            f
        })
        .find(|f| fp_poly::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
