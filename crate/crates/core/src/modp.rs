//! Arithmetic in `F_p`, `p = 2^61 - 1`, for the specialization probes.

use crate::field::{RatPoly, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub(crate) const P: u64 = (1 << 61) - 1;

pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub(crate) fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub(crate) fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub(crate) fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub(crate) fn int_mod(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P))
        .to_u64()
        .expect("residue fits in u64")
}

/// Image of a rational, or `None` when `p` divides its denominator.
pub(crate) fn rational(q: &BigRational) -> Option<u64> {
    let den = int_mod(q.denom());
    (den != 0).then(|| mul(int_mod(q.numer()), inv(den)))
}

pub(crate) fn eval(p: &RatPoly, x: u64) -> Option<u64> {
    let mut acc = 0;
    for c in p.coeffs().iter().rev() {
        acc = add(mul(acc, x), rational(c)?);
    }
    Some(acc)
}

/// Image of `x` under `t -> t0`, or `None` where its denominator vanishes.
pub(crate) fn scalar(x: &Scalar, t0: u64) -> Option<u64> {
    let den = eval(x.denom(), t0)?;
    (den != 0).then_some(())?;
    Some(mul(eval(x.numer(), t0)?, inv(den)))
}

/// Characteristic polynomial (Faddeev-LeVerrier; needs `n < p`),
/// coefficients lowest degree first.
pub(crate) fn charpoly(a: &[u64], n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut mk = vec![0u64; n * n];
    for k in 1..=n {
        let mut next = vec![0u64; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = a[i * n + l];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] = add(next[i * n + j], mul(x, mk[l * n + j]));
                }
            }
            next[i * n + i] = add(next[i * n + i], c[n - k + 1]);
        }
        mk = next;
        let mut tr = 0;
        for i in 0..n {
            for l in 0..n {
                tr = add(tr, mul(a[i * n + l], mk[l * n + i]));
            }
        }
        c[n - k] = sub(0, mul(tr, inv(k as u64)));
    }
    c
}

fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv(b[db]);
    while r.len() > db {
        let f = mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(f, bc));
        }
        r = trim(r);
    }
    r
}

/// Degree of `gcd(a, b)`, or `None` when both are zero.
pub(crate) fn gcd_degree(a: &[u64], b: &[u64]) -> Option<usize> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().checked_sub(1)
}

/// `gcd(f, f') = 1` for a polynomial of degree below `p`.
pub(crate) fn squarefree(f: &[u64]) -> bool {
    let f = trim(f.to_vec());
    if f.len() <= 2 {
        return true;
    }
    let df: Vec<u64> = (1..f.len()).map(|i| mul(f[i], i as u64)).collect();
    gcd_degree(&f, &df) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(sub(3, 5), P - 2);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(mul(rational(&half).unwrap(), 2), 1);
        assert_eq!(rational(&BigRational::new(1.into(), BigInt::from(P))), None);
    }

    #[test]
    fn charpoly_and_squarefree() {
        // [[0,1],[1,0]]: x^2 - 1
        let c = charpoly(&[0, 1, 1, 0], 2);
        assert_eq!(c, vec![P - 1, 0, 1]);
        assert!(squarefree(&c));
        // (x - 1)^2
        assert!(!squarefree(&[1, P - 2, 1]));
        assert!(squarefree(&[5]));
        // (x - 1)(x + 1) and (x - 1)(x + 2)
        assert_eq!(gcd_degree(&[P - 1, 0, 1], &[P - 2, 1, 1]), Some(1));
        assert_eq!(gcd_degree(&[1, 1], &[2, 1]), Some(0));
        assert_eq!(gcd_degree(&[], &[]), None);
    }
}
