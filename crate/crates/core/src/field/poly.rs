use super::Field;
use crate::modp;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients indexed from degree 0.
///
/// The coefficient vector never carries trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

/// Polynomials over `Q`, the numerators and denominators of a `Scalar`.
pub type RatPoly = Poly<BigRational>;

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = F::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lc = F::one() / divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].clone() * inv_lc.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = rem[idx].clone() - q.clone() * dc.clone();
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Rational gcd via primitive integer remainder sequences. Working with
// primitive parts keeps coefficient growth in check, which the plain
// Euclidean algorithm over Q does not.

/// Clears denominators and divides out the content.
fn primitive_part(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_int(ints)
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
        if content.is_one() {
            break;
        }
    }
    if content.is_zero() {
        return Vec::new();
    }
    let sign = if v.last().unwrap().is_negative() {
        -1
    } else {
        1
    };
    let content = content * sign;
    v.iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b` over `Z`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Degree of the gcd mod `p`, when reduction preserves both degrees.
/// The gcd over `Q` can only be smaller.
fn gcd_degree_bound(x: &[BigInt], y: &[BigInt]) -> Option<usize> {
    let xp: Vec<u64> = x.iter().map(modp::int_mod).collect();
    let yp: Vec<u64> = y.iter().map(modp::int_mod).collect();
    if xp.last() == Some(&0) || yp.last() == Some(&0) {
        return None;
    }
    modp::gcd_degree(&xp, &yp)
}

/// Monic gcd over `Q[t]` computed with the primitive remainder sequence.
pub fn rational_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    if !y.is_empty() {
        match gcd_degree_bound(&x, &y) {
            Some(0) => return RatPoly::one(),
            // the bound is attained only if y | x; one division settles it
            Some(k) if k + 1 == y.len() => {
                let yq = RatPoly::new(y.iter().cloned().map(BigRational::from_integer).collect());
                let xq = RatPoly::new(x.iter().cloned().map(BigRational::from_integer).collect());
                if xq.div_rem(&yq).1.is_zero() {
                    return yq.monic();
                }
            }
            _ => {}
        }
    }
    while !y.is_empty() {
        let r = primitive_int(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    let p = RatPoly::new(x.into_iter().map(BigRational::from_integer).collect());
    p.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::new(
            c.iter()
                .map(|&k| BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    #[test]
    fn trims_trailing_zeros() {
        assert!(rp(&[0, 0]).is_zero());
        assert_eq!(rp(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(rp(&[0, 0, 3]).ord(), Some(2));
        assert_eq!(rp(&[]).ord(), None);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = rp(&[5, -3, 0, 2, 7]);
        let b = rp(&[1, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_of_products() {
        // (t+1)(t-2) and (t+1)(t+3)
        let a = &rp(&[1, 1]) * &rp(&[-2, 1]);
        let b = &rp(&[1, 1]) * &rp(&[3, 1]);
        assert_eq!(rational_gcd(&a, &b), rp(&[1, 1]));
        assert_eq!(a.gcd(&b), rp(&[1, 1]));
        assert_eq!(rational_gcd(&a, &rp(&[])), a.monic());
        assert_eq!(rational_gcd(&rp(&[3]), &a), rp(&[1]));
        // the smaller one divides the larger
        let c = &a * &rp(&[5, 0, 2]);
        assert_eq!(
            rational_gcd(&c, &a.scale(&BigRational::from_integer(4.into()))),
            a.monic()
        );
        // leading coefficient vanishing mod p takes the slow path
        let p = crate::modp::P as i64;
        let d = &rp(&[1, 1]) * &rp(&[1, p]);
        assert_eq!(rational_gcd(&d, &a), rp(&[1, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let p = rp(&[1, 2, 3]);
        assert_eq!(p.derivative(), rp(&[2, 6]));
        assert_eq!(
            p.eval(&BigRational::from_integer(2.into())),
            BigRational::from_integer(17.into())
        );
        assert_eq!(rp(&[1, 1]).pow(3), rp(&[1, 3, 3, 1]));
    }

    proptest::proptest! {
        #[test]
        fn rational_gcd_matches_euclid(
            a in proptest::collection::vec(-6i64..6, 0..6),
            b in proptest::collection::vec(-6i64..6, 0..6),
            c in proptest::collection::vec(-6i64..6, 1..4),
        ) {
            let (a, b, c) = (rp(&a), rp(&b), rp(&c));
            let (ac, bc) = (&a * &c, &b * &c);
            let g = rational_gcd(&ac, &bc);
            proptest::prop_assert_eq!(&g, &ac.gcd(&bc));
            if !g.is_zero() {
                proptest::prop_assert!(ac.div_rem(&g).1.is_zero());
                proptest::prop_assert!(bc.div_rem(&g).1.is_zero());
            }
        }
    }
}
