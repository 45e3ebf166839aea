#![allow(dead_code)]

use nawelch_core::field::Scalar;
use nawelch_core::linalg::{Config, Matrix, Vector};
use nawelch_core::search::na_circle_point;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_ratio(rng: &mut ChaCha8Rng) -> Scalar {
    let p = loop {
        let p: i64 = rng.random_range(-6..=6);
        if p != 0 {
            break p;
        }
    };
    Scalar::from_ratio(p, rng.random_range(1..=5))
}

/// A unit of valuation 0: `(c0 + c1 t + ..)/(1 + b1 t + ..)` with small
/// rational coefficients and `c0 != 0`.
pub fn unit(rng: &mut ChaCha8Rng) -> Scalar {
    let t = Scalar::t();
    let mut num = small_ratio(rng);
    for k in 1..=rng.random_range(0..=2u32) {
        if rng.random_bool(0.6) {
            num = &num + &(&small_ratio(rng) * &t.pow(k));
        }
    }
    let mut den = Scalar::one();
    if rng.random_bool(0.3) {
        den = &den + &(&small_ratio(rng) * &t);
    }
    num.checked_div(&den).expect("den has constant term 1")
}

/// `t^v * unit` for `v` drawn from `lo..=hi`.
pub fn scalar_with_valuation(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Scalar {
    let v = rng.random_range(lo..=hi);
    let tv = Scalar::t().pow(v.unsigned_abs() as u32);
    let tv = if v < 0 { tv.inv().unwrap() } else { tv };
    &tv * &unit(rng)
}

/// Mixed valuations in `-3..=5`, occasionally zero.
pub fn mixed_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    if rng.random_bool(0.08) {
        Scalar::zero()
    } else {
        scalar_with_valuation(rng, -3, 5)
    }
}

/// Entries for trace and tensor tests: small polynomials in `t`.
pub fn light_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    if rng.random_bool(0.15) {
        return Scalar::zero();
    }
    let t = Scalar::t();
    let mut x = small_ratio(rng);
    if rng.random_bool(0.5) {
        x = &x * &t.pow(rng.random_range(1..=2));
    }
    if rng.random_bool(0.3) {
        x = &x + &small_ratio(rng);
    }
    x
}

pub fn light_vector(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    Vector::new((0..d).map(|_| light_scalar(rng)).collect())
}

pub fn light_config(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Config {
    Config::new((0..n).map(|_| light_vector(rng, d)).collect()).unwrap()
}

pub fn light_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    Matrix::from_rows(
        (0..dim)
            .map(|_| (0..dim).map(|_| light_scalar(rng)).collect())
            .collect(),
    )
    .unwrap()
}

/// Parameter for the rational circle map: Pythagorean rationals and
/// monomials `c t^k`.
pub fn circle_parameter(rng: &mut ChaCha8Rng) -> Scalar {
    match rng.random_range(0..3) {
        0 => Scalar::from_ratio(rng.random_range(-7..=7), rng.random_range(1..=7)),
        1 => Scalar::t().pow(rng.random_range(1..=3)),
        _ => &Scalar::from_ratio(rng.random_range(1..=4), rng.random_range(1..=4)) * &Scalar::t(),
    }
}

/// Unit vector in `K^d` built from nested circle points:
/// `(c1, s1 c2, s1 s2 c3, .., s1 .. s_{d-1})`.
pub fn circle_unit_vector(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    if d == 1 {
        return Vector::from_ints(&[if rng.random_bool(0.5) { 1 } else { -1 }]);
    }
    let mut entries = Vec::with_capacity(d);
    let mut tail = Scalar::one();
    for _ in 0..d - 1 {
        let p = na_circle_point(&circle_parameter(rng)).unwrap();
        entries.push(&tail * &p.entries()[0]);
        tail = &tail * &p.entries()[1];
    }
    entries.push(tail);
    Vector::new(entries)
}

pub fn circle_config(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Config {
    Config::new((0..n).map(|_| circle_unit_vector(rng, d)).collect()).unwrap()
}

/// Orthonormal basis `{p, p_perp}` of `K^2` from one circle point.
pub fn rotated_basis(rng: &mut ChaCha8Rng) -> Config {
    let p = na_circle_point(&circle_parameter(rng)).unwrap();
    let (x, y) = (p.entries()[0].clone(), p.entries()[1].clone());
    Config::new(vec![p, Vector::new(vec![-y, x])]).unwrap()
}

/// Gauss-Jordan inverse, `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.dim();
    let mut a = m.rows();
    let mut inv = Matrix::identity(n).rows();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv().unwrap();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
    }
    Some(Matrix::from_rows(inv).unwrap())
}
