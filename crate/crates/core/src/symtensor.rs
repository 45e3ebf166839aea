//! `Sym^m(K^d)` in the multiset basis.
//!
//! A symmetric tensor is stored by one coordinate per multiset index
//! `alpha` (a weak composition of `m` into `d` parts). The inner product
//! carries the multinomial weight `m! / prod alpha_i!`, which is exactly
//! the number of full tensor coordinates folded into `alpha`, so
//! `<x^{(m)}, y^{(m)}> = <x, y>^m`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Config, Matrix, Vector};
use crate::modp;
use num_traits::{One, Zero};

/// Exponent vector `alpha` with `sum alpha_i = m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetIndex(Vec<u32>);

impl MultisetIndex {
    pub fn new(alpha: Vec<u32>) -> Self {
        Self(alpha)
    }

    pub fn alpha(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All weak compositions of `m` into `d` parts, lexicographically
/// descending: `(m,0,..,0)` first, `(0,..,0,m)` last.
pub fn enumerate_multisets(d: usize, m: u32) -> Vec<MultisetIndex> {
    fn rec(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<MultisetIndex>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(MultisetIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=remaining).rev() {
            prefix.push(a);
            rec(prefix, remaining - a, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(&mut Vec::with_capacity(d), m, d, &mut out);
    }
    out
}

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim Sym^m(K^d) = C(d + m - 1, m)`.
pub fn sym_dim(d: usize, m: u32) -> usize {
    binomial((d + m as usize - 1) as u64, m as u64) as usize
}

/// Multinomial coefficient `m! / prod alpha_i!`.
pub fn weight(alpha: &MultisetIndex) -> u64 {
    let mut acc = 1u64;
    let mut total = 0u64;
    for &a in &alpha.0 {
        total += a as u64;
        acc *= binomial(total, a as u64);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymVector {
    d: usize,
    m: u32,
    coords: Vec<Scalar>,
}

impl SymVector {
    pub fn new(d: usize, m: u32, coords: Vec<Scalar>) -> Result<Self> {
        let n = sym_dim(d, m);
        if coords.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: coords.len(),
            });
        }
        Ok(Self { d, m, coords })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }
}

/// `x -> x^{(m)}`, with `coords[alpha] = prod_i x_i^alpha_i`.
pub fn lift(x: &Vector, m: u32) -> SymVector {
    let coords = enumerate_multisets(x.dim(), m)
        .iter()
        .map(|alpha| {
            alpha
                .0
                .iter()
                .zip(x.entries())
                .filter(|(&a, _)| a > 0)
                .fold(Scalar::one(), |acc, (&a, xi)| &acc * &xi.pow(a))
        })
        .collect();
    SymVector {
        d: x.dim(),
        m,
        coords,
    }
}

pub fn sym_inner(u: &SymVector, v: &SymVector) -> Result<Scalar> {
    if u.d != v.d || u.m != v.m {
        return Err(Error::DimensionMismatch {
            expected: u.coords.len(),
            found: v.coords.len(),
        });
    }
    let weights = enumerate_multisets(u.d, u.m)
        .iter()
        .map(weight)
        .collect::<Vec<_>>();
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .zip(weights)
        .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
        .map(|((a, b), w)| &(a * b) * &Scalar::from_int(w as i64))
        .sum())
}

/// Matrix of `x -> sum_j <x, tau_j^{(m)}> tau_j^{(m)}` on `Sym^m(K^d)` in
/// the multiset basis: `M[a][b] = sum_j u_j[a] w(b) u_j[b]`.
///
/// The weights sit on the column side, so the array is not symmetric in
/// general; its trace and the trace of its square are the invariants.
pub fn sym_frame_operator(config: &Config, m: u32) -> Matrix {
    let basis = enumerate_multisets(config.d(), m);
    let weights: Vec<Scalar> = basis
        .iter()
        .map(|a| Scalar::from_int(weight(a) as i64))
        .collect();
    let lifts: Vec<SymVector> = config.vectors().iter().map(|v| lift(v, m)).collect();
    let n = basis.len();
    let mut out = Matrix::zeros(n);
    for a in 0..n {
        for (b, w) in weights.iter().enumerate() {
            let s: Scalar = lifts
                .iter()
                .filter(|u| !u.coords[a].is_zero() && !u.coords[b].is_zero())
                .map(|u| &u.coords[a] * &u.coords[b])
                .sum();
            if !s.is_zero() {
                out.set(a, b, &s * w);
            }
        }
    }
    out
}

/// [`sym_frame_operator`] with `t -> t0` and entries reduced mod `p`,
/// computed from the specialized vectors. `None` if some entry of the
/// configuration is undefined at `t0`.
pub(crate) fn sym_frame_operator_mod(config: &Config, m: u32, t0: u64) -> Option<Vec<u64>> {
    let basis = enumerate_multisets(config.d(), m);
    let n = basis.len();
    let lifts = config
        .vectors()
        .iter()
        .map(|v| {
            let x = v
                .entries()
                .iter()
                .map(|e| modp::scalar(e, t0))
                .collect::<Option<Vec<u64>>>()?;
            Some(
                basis
                    .iter()
                    .map(|alpha| {
                        alpha
                            .0
                            .iter()
                            .zip(&x)
                            .fold(1, |acc, (&a, &xi)| modp::mul(acc, modp::pow(xi, a as u64)))
                    })
                    .collect::<Vec<u64>>(),
            )
        })
        .collect::<Option<Vec<_>>>()?;
    let mut out = vec![0u64; n * n];
    for (b, alpha) in basis.iter().enumerate() {
        let w = weight(alpha) % modp::P;
        for a in 0..n {
            let s = lifts
                .iter()
                .fold(0, |acc, u| modp::add(acc, modp::mul(u[a], u[b])));
            out[a * n + b] = modp::mul(s, w);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frame_operator, inner, trace};

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn v(entries: &[&str]) -> Vector {
        Vector::new(entries.iter().map(|e| s(e)).collect())
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_multisets(2, 2);
        let alphas: Vec<&[u32]> = e.iter().map(|a| a.alpha()).collect();
        assert_eq!(alphas, vec![&[2, 0][..], &[1, 1], &[0, 2]]);
        assert_eq!(enumerate_multisets(3, 2).len(), 6);
        assert_eq!(enumerate_multisets(1, 5), vec![MultisetIndex::new(vec![5])]);
        assert!(e.iter().all(|a| a.order() == 2));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&MultisetIndex::new(vec![1, 1])), 2);
        assert_eq!(weight(&MultisetIndex::new(vec![2, 0])), 1);
        assert_eq!(weight(&MultisetIndex::new(vec![1, 1, 1])), 6);
        assert_eq!(weight(&MultisetIndex::new(vec![2, 1, 1])), 12);
    }

    #[test]
    fn weights_sum_to_d_pow_m() {
        for d in 1..5usize {
            for m in 1..5u32 {
                let total: u64 = enumerate_multisets(d, m).iter().map(weight).sum();
                assert_eq!(total, (d as u64).pow(m));
            }
        }
    }

    #[test]
    fn lift_examples() {
        let l = lift(&v(&["2", "3"]), 2);
        assert_eq!(l.coords(), &[s("4"), s("6"), s("9")]);
        assert_eq!(
            lift(&v(&["1", "0"]), 3).coords(),
            &[s("1"), s("0"), s("0"), s("0")]
        );
        assert_eq!(
            lift(&v(&["1", "t"]), 2).coords(),
            &[s("1"), s("t"), s("t^2")]
        );
    }

    #[test]
    fn sym_inner_examples() {
        let a = lift(&v(&["1", "t"]), 2);
        let b = lift(&v(&["t", "1"]), 2);
        assert_eq!(sym_inner(&a, &b).unwrap(), s("4t^2"));
        for m in 1..4 {
            let e1 = lift(&Vector::basis(2, 0), m);
            let e2 = lift(&Vector::basis(2, 1), m);
            assert_eq!(sym_inner(&e1, &e2).unwrap(), Scalar::zero());
        }
        let p = lift(&v(&["3/5", "4/5"]), 2);
        assert_eq!(sym_inner(&p, &p).unwrap(), Scalar::one());
        assert!(sym_inner(&a, &lift(&v(&["1", "t"]), 3)).is_err());
    }

    #[test]
    fn sym_frame_operator_examples() {
        let basis = Config::new(vec![Vector::basis(2, 0), Vector::basis(2, 1)]).unwrap();
        assert_eq!(trace(&sym_frame_operator(&basis, 2)), s("2"));

        let one = Config::new(vec![v(&["1", "t"])]).unwrap();
        assert_eq!(trace(&sym_frame_operator(&one, 2)), s("1+t^2").pow(2));

        let d1 = Config::new(vec![v(&["1"])]).unwrap();
        for m in 1..5 {
            assert_eq!(sym_frame_operator(&d1, m), Matrix::identity(1));
        }
    }

    #[test]
    fn sym_frame_operator_acts_as_defined() {
        let c = Config::new(vec![v(&["1", "t", "2"]), v(&["3/5", "0", "(1)/(1-t)"])]).unwrap();
        let m = 2;
        let op = sym_frame_operator(&c, m);
        let x =
            SymVector::new(3, m, (0..6).map(|i| Scalar::from_int(i * i - 2)).collect()).unwrap();
        let image = op.apply(&Vector::new(x.coords().to_vec())).unwrap();
        let mut expected = vec![Scalar::zero(); 6];
        for tau in c.vectors() {
            let u = lift(tau, m);
            let coef = sym_inner(&x, &u).unwrap();
            for (e, uc) in expected.iter_mut().zip(u.coords()) {
                *e = &*e + &(&coef * uc);
            }
        }
        assert_eq!(image.entries(), &expected[..]);
    }

    #[test]
    fn order_one_matches_frame_operator() {
        let c = Config::new(vec![
            v(&["1", "t"]),
            v(&["(2t)/(1+t^2)", "(1-t^2)/(1+t^2)"]),
        ])
        .unwrap();
        assert_eq!(sym_frame_operator(&c, 1), frame_operator(&c));
        let x = v(&["1", "t"]);
        let y = v(&["t", "1"]);
        assert_eq!(
            sym_inner(&lift(&x, 1), &lift(&y, 1)).unwrap(),
            inner(&x, &y).unwrap()
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(sym_dim(3, 3), 10);
    }
}
