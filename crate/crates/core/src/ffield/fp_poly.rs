//! Dense polynomials over the prime field F_p, used only to validate and
//! search for defining moduli. Coefficients are constant-first.

use crate::arith::{inv_mod, prime_factors};

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p).expect("nonzero leading coefficient");
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (j, &fj) in f.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * fj % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, f, p)
}

fn pow_mod(base: &[u64], mut n: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, f, p);
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        n >>= 1;
        if n > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < 2 {
        out.resize(2, 0);
    }
    out[1] = (out[1] + p - 1) % p;
    trim(&mut out);
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `e >= 1`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    // x^{p^i} mod f for i = 0..=e
    let mut frob = vec![rem(&x, f, p)];
    for i in 1..=e {
        let next = pow_mod(&frob[i - 1], p, f, p);
        frob.push(next);
    }
    if sub_x(&frob[e], p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(e as u64).into_iter().all(|r| {
        let d = sub_x(&frob[e / r as usize], p);
        let g = gcd(f, &d, p);
        g.len() == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        // x^2 + x + 1 over F_2
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2: no roots, still reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        // x^2 + 1 over F_3
        assert!(is_irreducible(&[1, 0, 1], 3));
        // x^2 - 3 over F_17 (3 is a non-residue)
        assert!(is_irreducible(&[14, 0, 1], 17));
    }

    #[test]
    fn counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_p:
        // (1/d) sum_{k|d} mu(k) p^{d/k}
        let cases = [
            (2u64, 4usize, 3usize),
            (2, 6, 9),
            (3, 3, 8),
            (3, 4, 18),
            (5, 2, 10),
        ];
        for (p, d, expected) in cases {
            let mut count = 0;
            let total = p.pow(d as u32);
            for code in 0..total {
                let mut f = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    f.push(c % p);
                    c /= p;
                }
                f.push(1);
                if is_irreducible(&f, p) {
                    count += 1;
                }
            }
            assert_eq!(count, expected, "p={p} d={d}");
        }
    }
}
