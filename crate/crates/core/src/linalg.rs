//! Vectors, the bilinear form `<x, y> = sum x_j y_j`, frame operators and
//! exact matrix algebra over `Q(t)`.

use crate::error::{Error, Result};
use crate::field::{rational_gcd, Poly, RatPoly, Scalar};
use crate::modp;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::Index;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Self(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&k| Scalar::from_int(k)).collect())
    }

    /// The `i`-th standard basis vector of dimension `d`.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

/// Symmetric bilinear inner product; there is no conjugation.
pub fn inner(x: &Vector, y: &Vector) -> Result<Scalar> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum())
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![Scalar::one(); dim])
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| Scalar::from_int(k)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.dim + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data
            .chunks(self.dim.max(1))
            .map(<[Scalar]>::to_vec)
            .take(self.dim)
            .collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Self> {
        check_dims(self, other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(Vector::new(
            (0..self.dim)
                .map(|i| (0..self.dim).map(|j| self.get(i, j) * &x[j]).sum())
                .collect(),
        ))
    }
}

fn check_dims(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

pub fn trace(m: &Matrix) -> Scalar {
    (0..m.dim).map(|i| m.get(i, i).clone()).sum()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_dims(a, b)?;
    let n = a.dim;
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let s: Scalar = (0..n)
                .filter(|&k| !a.get(i, k).is_zero() && !b.get(k, j).is_zero())
                .map(|k| a.get(i, k) * b.get(k, j))
                .sum();
            out.set(i, j, s);
        }
    }
    Ok(out)
}

/// Determinant by Gaussian elimination, pivoting on the entry of minimal
/// valuation in each column.
pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.dim;
    let mut a = m.rows();
    let mut det = Scalar::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].valuation());
        let Some(p) = pivot else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det = &det * &pv;
        let inv = pv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = &*x - &(&f * y);
            }
        }
    }
    det
}

/// A common denominator `delta` of the entries and the flattened
/// polynomial matrix `delta * M`.
fn clear_denominators(m: &Matrix) -> (RatPoly, Vec<RatPoly>) {
    let mut delta = RatPoly::one();
    for x in &m.data {
        let den = x.denom();
        if den.is_one() || delta.div_rem(den).1.is_zero() {
            continue;
        }
        let g = rational_gcd(&delta, den);
        delta = &delta * &den.div_rem(&g).0;
    }
    let entries = m
        .data
        .iter()
        .map(|x| x.numer() * &delta.div_rem(x.denom()).0)
        .collect();
    (delta, entries)
}

fn poly_matmul(a: &[RatPoly], b: &[RatPoly], n: usize) -> Vec<RatPoly> {
    let mut out = vec![RatPoly::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] = &out[i * n + j] + &(x * y);
                }
            }
        }
    }
    out
}

fn exact_div(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Minimal polynomial of `N = delta * M` as polynomial coefficients
/// `c_0..c_k` in `t` (not normalized), together with `delta`.
///
/// Flattened powers `I, N, N^2, ..` augmented with unit vectors are
/// reduced by fraction-free (Bareiss) elimination, so every division is
/// exact and no gcds are needed after clearing denominators.
fn minpoly_cleared(m: &Matrix) -> (RatPoly, Vec<RatPoly>) {
    let n = m.dim;
    let (delta, nm) = clear_denominators(m);
    let flat = n * n;
    let width = flat + n + 1;
    let mut rows: Vec<(usize, Vec<RatPoly>)> = Vec::new();
    let mut power: Vec<RatPoly> = Matrix::identity(n)
        .data
        .iter()
        .map(|x| x.numer().clone())
        .collect();
    for k in 0..=n {
        let mut t = power.clone();
        t.extend((0..=n).map(|i| {
            if i == k {
                RatPoly::one()
            } else {
                RatPoly::zero()
            }
        }));
        let mut prev = RatPoly::one();
        for (c, s) in &rows {
            let p = &s[*c];
            let f = t[*c].clone();
            for j in 0..width {
                let scaled = p * &t[j];
                let num = if f.is_zero() || s[j].is_zero() {
                    scaled
                } else {
                    &scaled - &(&f * &s[j])
                };
                t[j] = exact_div(&num, &prev);
            }
            prev = p.clone();
        }
        let pivot = (0..flat)
            .filter(|&j| !t[j].is_zero())
            .min_by_key(|&j| t[j].degree());
        match pivot {
            None => return (delta, t[flat..flat + k + 1].to_vec()),
            Some(c) => rows.push((c, t)),
        }
        power = poly_matmul(&power, &nm, n);
    }
    unreachable!("Cayley-Hamilton bounds the degree of the minimal polynomial by n")
}

/// Determinant over `Q[t]` by Bareiss elimination.
fn bareiss_det(mut a: Vec<Vec<RatPoly>>) -> RatPoly {
    let n = a.len();
    let mut prev = RatPoly::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return RatPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&num, &prev);
            }
            a[i][k] = RatPoly::zero();
        }
        prev = a[k][k].clone();
    }
    if negate {
        prev.scale(&-BigRational::one())
    } else {
        prev
    }
}

/// Sylvester matrix of `f` and `g` (coefficients lowest degree first).
fn sylvester(f: &[RatPoly], g: &[RatPoly]) -> Vec<Vec<RatPoly>> {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let size = df + dg;
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts) in [(f, dg), (g, df)] {
        for s in 0..shifts {
            let mut row = vec![RatPoly::zero(); size];
            for (i, c) in poly.iter().rev().enumerate() {
                row[s + i] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Monic minimal polynomial: the first linear dependence among
/// `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &Matrix) -> Poly<Scalar> {
    if m.dim == 0 {
        return Poly::one();
    }
    let (delta, c) = minpoly_cleared(m);
    // mu_M(x) = delta^{-k} mu_N(delta x)
    let k = c.len() - 1;
    let lead = &c[k] * &delta.pow(k as u32);
    let mut dpow = RatPoly::one();
    let mut coeffs = Vec::with_capacity(k + 1);
    for ci in &c {
        coeffs.push(
            Scalar::from_polys(ci * &dpow, lead.clone()).expect("nonzero leading coefficient"),
        );
        dpow = &dpow * &delta;
    }
    Poly::new(coeffs)
}
/// Evaluates a polynomial with scalar coefficients at a matrix (Horner).
pub fn eval_poly_at(p: &Poly<Scalar>, m: &Matrix) -> Matrix {
    let n = m.dim;
    let mut acc = Matrix::zeros(n);
    for c in p.coeffs().iter().rev() {
        acc = matmul(&acc, m).expect("square");
        acc = acc.add(&Matrix::identity(n).scale(c)).expect("square");
    }
    acc
}

/// Rank over `Q(t)`: each row is scaled to polynomial entries, then
/// fraction-free elimination.
fn rank_exact(m: &Matrix) -> usize {
    let n = m.dim;
    let mut a: Vec<Vec<RatPoly>> = (0..n)
        .map(|i| {
            let row = &m.data[i * n..(i + 1) * n];
            let mut l = RatPoly::one();
            for x in row {
                if !x.denom().is_one() && !l.div_rem(x.denom()).1.is_zero() {
                    let g = rational_gcd(&l, x.denom());
                    l = &l * &x.denom().div_rem(&g).0;
                }
            }
            row.iter()
                .map(|x| x.numer() * &l.div_rem(x.denom()).0)
                .collect()
        })
        .collect();
    let mut prev = RatPoly::one();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].degree())
        else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n {
            for j in col + 1..n {
                let num = &(&a[r][col] * &a[i][j]) - &(&a[i][col] * &a[r][j]);
                a[i][j] = exact_div(&num, &prev);
            }
            a[i][col] = RatPoly::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Rank over `Q(t)` of a list of rows, by elimination with
/// minimal-valuation pivots.
pub fn rank_of_rows(rows: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..a.len())
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].valuation())
        else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().expect("nonzero pivot");
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[r][col..]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}

/// Sample points for the specialization test, as residues mod `p`.
pub(crate) const PROBE_POINTS: [u64; 4] = [
    1_234_567_891,
    987_654_321_987,
    31_415_926_535_897,
    271_828_182_845,
];

/// Sufficient test for a squarefree minimal polynomial.
///
/// Let `phi` send `t` to `t0` and reduce mod `p`, defined on the entries
/// of `M`. The characteristic polynomial commutes with `phi`. Write
/// `chi(phi(M)) = x^z0 g0` with `g0(0) != 0`. If `g0` is squarefree and
/// `rank M <= dim - z0` over `Q(t)`, then the zero eigenvalue of `M` has
/// equal algebraic and geometric multiplicity `z0`, and the rest of
/// `chi_M` maps onto `g0`, so it has nonzero discriminant. Upper bounds on
/// the rank are taken from `rank_bounds` in order, then computed exactly.
fn squarefree_by_specialization(
    dim: usize,
    specialize: &dyn Fn(u64) -> Option<Vec<u64>>,
    rank_bounds: &mut dyn Iterator<Item = usize>,
    exact_rank: &mut dyn FnMut() -> usize,
) -> bool {
    let mut z_min: Option<usize> = None;
    for &t0 in &PROBE_POINTS {
        let Some(a) = specialize(t0) else { continue };
        let chi = modp::charpoly(&a, dim);
        let z0 = chi.iter().position(|&c| c != 0).unwrap_or(dim);
        if modp::squarefree(&chi[z0..]) {
            z_min = Some(z_min.map_or(z0, |z| z.min(z0)));
        }
        if z_min == Some(0) {
            return true;
        }
    }
    let Some(z) = z_min else {
        return false;
    };
    let room = dim - z;
    for b in rank_bounds {
        if b <= room {
            return true;
        }
    }
    exact_rank() <= room
}

/// `phi(M)` for the specialization test.
pub(crate) fn specialize_mod(m: &Matrix, t0: u64) -> Option<Vec<u64>> {
    m.data.iter().map(|x| modp::scalar(x, t0)).collect()
}

/// `gcd(mu, mu')` is a unit: necessary for diagonalizability over any
/// extension field. Tries the specialization test first and otherwise
/// decides `Res(mu, mu') != 0` exactly.
pub fn minpoly_squarefree(m: &Matrix) -> bool {
    minpoly_squarefree_rank_bounded(m, [])
}

/// [`minpoly_squarefree`] for a matrix with known upper bounds on its
/// rank, e.g. the number of rank-one terms it is a sum of. Bounds are
/// consumed lazily, so expensive ones can come last; loose bounds are
/// still correct but may force an exact rank computation.
pub fn minpoly_squarefree_rank_bounded(
    m: &Matrix,
    rank_bounds: impl IntoIterator<Item = usize>,
) -> bool {
    squarefree_probe(
        m.dim,
        &|t0| specialize_mod(m, t0),
        &mut rank_bounds.into_iter(),
        &|| m.clone(),
    )
}

/// The probe for a matrix given through its specializations, formed
/// exactly (by `exact`) only if the specializations are inconclusive.
pub(crate) fn squarefree_probe(
    dim: usize,
    specialize: &dyn Fn(u64) -> Option<Vec<u64>>,
    rank_bounds: &mut dyn Iterator<Item = usize>,
    exact: &dyn Fn() -> Matrix,
) -> bool {
    if dim == 0 {
        return true;
    }
    let cell = std::cell::OnceCell::new();
    let matrix = || cell.get_or_init(exact);
    if squarefree_by_specialization(dim, specialize, rank_bounds, &mut || rank_exact(matrix())) {
        return true;
    }
    let (_, c) = minpoly_cleared(matrix());
    if c.len() <= 2 {
        return true;
    }
    let dc: Vec<RatPoly> = c[1..]
        .iter()
        .enumerate()
        .map(|(i, x)| x.scale(&BigRational::from_integer(((i + 1) as i64).into())))
        .collect();
    !bareiss_det(sylvester(&c, &dc)).is_zero()
}

/// Claimed eigen-decomposition `M P = P diag(D)` with `P` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagCertificate {
    pub p: Matrix,
    pub d: Vec<Scalar>,
}

impl DiagCertificate {
    pub fn dim(&self) -> usize {
        self.p.dim()
    }
}

pub fn verify_diag_certificate(m: &Matrix, cert: &DiagCertificate) -> Result<bool> {
    check_dims(m, &cert.p)?;
    if cert.d.len() != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            found: cert.d.len(),
        });
    }
    if determinant(&cert.p).is_zero() {
        return Ok(false);
    }
    let lhs = matmul(m, &cert.p)?;
    let rhs = matmul(&cert.p, &Matrix::diag(&cert.d))?;
    Ok(lhs == rhs)
}

/// A nonempty family of vectors in `K^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    vectors: Vec<Vector>,
    d: usize,
}

impl Config {
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let d = vectors.first().ok_or(Error::EmptyConfig)?.dim();
        if d == 0 {
            return Err(Error::InvalidArgs(
                "vectors must have positive dimension".into(),
            ));
        }
        if let Some(bad) = vectors.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        Ok(Self { vectors, d })
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `<tau_j, tau_j>` for every member.
    pub fn norms(&self) -> Vec<Scalar> {
        self.vectors
            .iter()
            .map(|v| inner(v, v).expect("shared dimension"))
            .collect()
    }
}

pub fn gram(config: &Config) -> Matrix {
    let n = config.n();
    let mut g = Matrix::zeros(n);
    for j in 0..n {
        for k in j..n {
            let x = inner(&config.vectors[j], &config.vectors[k]).expect("shared dimension");
            g.set(k, j, x.clone());
            g.set(j, k, x);
        }
    }
    g
}

/// `S = sum_j tau_j tau_j^T`, the matrix of `x -> sum_j <x, tau_j> tau_j`.
pub fn frame_operator(config: &Config) -> Matrix {
    let d = config.d();
    let mut s = Matrix::zeros(d);
    for a in 0..d {
        for b in a..d {
            let x: Scalar = config.vectors.iter().map(|v| &v[a] * &v[b]).sum();
            s.set(b, a, x.clone());
            s.set(a, b, x);
        }
    }
    s
}
