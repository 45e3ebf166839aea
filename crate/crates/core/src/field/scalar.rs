use super::poly::{rational_gcd, RatPoly};
use super::Valuation;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An element of `Q(t)` in canonical form: `num / den` with `den` monic and
/// `gcd(num, den) = 1`. Zero is `0 / 1`.
///
/// Canonical form makes equality structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: RatPoly,
    den: RatPoly,
}

impl Scalar {
    /// Builds `num / den` and reduces it to canonical form.
    pub fn from_polys(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = rational_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = BigRational::one() / lc;
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        Self {
            num: p,
            den: RatPoly::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(RatPoly::constant(q))
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    /// The transcendental `t`.
    pub fn t() -> Self {
        Self::from_poly(RatPoly::monomial(BigRational::one(), 1))
    }

    /// `c * t^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        Self::from_poly(RatPoly::monomial(c, k))
    }

    pub fn numer(&self) -> &RatPoly {
        &self.num
    }

    pub fn denom(&self) -> &RatPoly {
        &self.den
    }

    pub fn valuation(&self) -> Valuation {
        match (self.num.ord(), self.den.ord()) {
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            _ => Valuation::Infinite,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    fn is_poly(&self) -> bool {
        self.den.is_one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self {
            num: RatPoly::zero(),
            den: RatPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_poly() && rhs.is_poly() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // Henrici: only the cofactor g = gcd(b, d) can cancel.
        let g = rational_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return Scalar::zero();
            }
            return Scalar {
                num,
                den: &self.den * &rhs.den,
            };
        }
        let b = self.den.div_rem(&g).0;
        let d = rhs.den.div_rem(&g).0;
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return Scalar::zero();
        }
        let h = rational_gcd(&t, &g);
        Scalar {
            num: t.div_rem(&h).0,
            den: &b * &rhs.den.div_rem(&h).0,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_poly() && rhs.is_poly() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        // Henrici: cancel numerators against the other denominator only.
        let g1 = rational_gcd(&self.num, &rhs.den);
        let g2 = rational_gcd(&rhs.num, &self.den);
        let quo = |p: &RatPoly, g: &RatPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_rem(g).0
            }
        };
        Scalar {
            num: &quo(&self.num, &g1) * &quo(&rhs.num, &g2),
            den: &quo(&self.den, &g2) * &quo(&rhs.den, &g1),
        }
    }
}

/// Panics on division by zero, like the integer and `BigRational`
/// operators; use [`Scalar::checked_div`] for a fallible form.
impl Div for &Scalar {
    type Output = Scalar;

    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("Scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_scalar_binop!(Add, add);
forward_scalar_binop!(Sub, sub);
forward_scalar_binop!(Mul, mul);
forward_scalar_binop!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Compares `|x|^a` with `|y|^b` through `a*v(x)` against `b*v(y)`.
pub fn abs_cmp(x: &Scalar, a: u64, y: &Scalar, b: u64) -> Ordering {
    let vx = x.valuation().scale(a);
    let vy = y.valuation().scale(b);
    vy.cmp(&vx)
}

/// `|sum l_j^2| == max |l_j|^2`, checked on valuations.
pub fn eq2_check(lambdas: &[Scalar]) -> bool {
    let sum: Scalar = lambdas.iter().map(Scalar::square).sum();
    let min = lambdas
        .iter()
        .map(|l| l.valuation().scale(2))
        .min()
        .unwrap_or(Valuation::Infinite);
    sum.valuation() == min
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn fmt_poly(p: &RatPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if c.is_negative() {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        first = false;
        if k == 0 {
            fmt_rational(&mag, f)?;
            continue;
        }
        if !mag.is_one() {
            fmt_rational(&mag, f)?;
            f.write_str("*")?;
        }
        f.write_str("t")?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Canonical text form: `p` for polynomials, `(p)/(q)` otherwise, with
/// terms in ascending degree, e.g. `(1-t^2)/(1+t^2)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return fmt_poly(&self.num, f);
        }
        f.write_str("(")?;
        fmt_poly(&self.num, f)?;
        f.write_str(")/(")?;
        fmt_poly(&self.den, f)?;
        f.write_str(")")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn field_operation_examples() {
        let t = Scalar::t();
        assert_eq!(&t * &t.inv().unwrap(), Scalar::one());
        assert_eq!(s("(1)/(1+t)") + s("(t)/(1+t)"), Scalar::one());
        assert_eq!(s("3/5").inv().unwrap(), s("5/3"));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form_is_monic_and_reduced() {
        let x = s("(2+2*t)/(4+4*t^2)");
        assert_eq!(x.to_string(), "(1/2+1/2*t)/(1+t^2)");
        let y = s("(t^2-1)/(2*t-2)");
        assert_eq!(y, s("1/2+1/2*t"));
        assert!(y.denom().is_one());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(s("t^2+2t^3").valuation(), Valuation::Finite(2));
        assert_eq!(Scalar::zero().valuation(), Valuation::Infinite);
        assert_eq!(Scalar::from_int(5).valuation(), Valuation::Finite(0));
        assert_eq!(s("(3t)/(1-t)").valuation(), Valuation::Finite(1));
        assert_eq!(
            Scalar::t().inv().unwrap().valuation(),
            Valuation::Finite(-1)
        );
    }

    #[test]
    fn abs_cmp_examples() {
        let t = Scalar::t();
        assert_eq!(abs_cmp(&t, 2, &t, 3), Ordering::Greater);
        assert_eq!(
            abs_cmp(&Scalar::from_int(5), 1, &Scalar::from_int(7), 1),
            Ordering::Equal
        );
        assert_eq!(abs_cmp(&Scalar::zero(), 1, &t, 1), Ordering::Less);
    }

    #[test]
    fn eq2_examples() {
        assert!(eq2_check(&[s("1+t"), s("2t"), s("3t^2")]));
        assert!(eq2_check(&[s("t"), s("2t")]));
        assert!(eq2_check(&[Scalar::zero(), Scalar::zero()]));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for text in [
            "0",
            "1",
            "-3/5",
            "t",
            "-t",
            "1-t^2",
            "(1-t^2)/(1+t^2)",
            "(2*t)/(1+t^2)",
        ] {
            let x = s(text);
            assert_eq!(s(&x.to_string()), x, "{text}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-4i64..5, 1i64..4), 0..4).prop_map(|c| {
            RatPoly::new(
                c.into_iter()
                    .map(|(p, q)| BigRational::new(p.into(), q.into()))
                    .collect(),
            )
        })
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_poly(), arb_poly(), 0usize..3).prop_map(|(n, d, shift)| {
            let d = if d.is_zero() { RatPoly::one() } else { d };
            let d = &d * &RatPoly::monomial(BigRational::one(), shift);
            Scalar::from_polys(n, d).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn ultrametric(a in arb_scalar(), b in arb_scalar()) {
            let (va, vb) = (a.valuation(), b.valuation());
            let vs = (&a + &b).valuation();
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
            prop_assert_eq!((&a * &b).valuation(), va + vb);
        }

        #[test]
        fn text_round_trip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }

        #[test]
        fn eq2_holds_on_random_sequences(v in prop::collection::vec(arb_scalar(), 1..8)) {
            prop_assert!(eq2_check(&v));
        }
    }
}
