use crate::error::{Error, Result};
use crate::field::{Scalar, Valuation};
use crate::linalg::{inner, Config, Vector};
use crate::welch::{zauner_check, ZaunerRecord};
use num_traits::One;

/// Candidate alphabet for the exact enumerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet(Vec<Scalar>);

impl GeneratorSet {
    pub fn new(scalars: Vec<Scalar>) -> Result<Self> {
        if scalars.is_empty() {
            return Err(Error::InvalidArgs("generator set is empty".into()));
        }
        for (i, s) in scalars.iter().enumerate() {
            if scalars[..i].contains(s) {
                return Err(Error::InvalidArgs(format!("generator {s} appears twice")));
            }
        }
        Ok(Self(scalars))
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.0
    }
}

/// Rational parametrization of the unit circle:
/// `s -> ((1 - s^2)/(1 + s^2), 2s/(1 + s^2))`.
pub fn na_circle_point(s: &Scalar) -> Result<Vector> {
    let den = &Scalar::one() + &s.square();
    let inv = den.inv().map_err(|_| Error::DegenerateParameter)?;
    let x = &(&Scalar::one() - &s.square()) * &inv;
    let y = &(s * &Scalar::from_int(2)) * &inv;
    Ok(Vector::new(vec![x, y]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaSearchHit {
    pub config: Config,
    /// Present when the hit has exactly `d^2` vectors.
    pub zauner: Option<ZaunerRecord>,
}

fn push_unique(out: &mut Vec<Vector>, v: Vector) {
    if !out.contains(&v) {
        out.push(v);
    }
}

/// Candidate vectors of norm `a`, in generator order.
fn candidates(d: usize, gen: &GeneratorSet, a: &Scalar) -> Vec<Vector> {
    let mut out = Vec::new();
    if d == 1 && a.is_one() {
        push_unique(&mut out, Vector::from_ints(&[1]));
        push_unique(&mut out, Vector::from_ints(&[-1]));
    }
    if d == 2 && a.is_one() {
        for s in gen.scalars() {
            if let Ok(v) = na_circle_point(s) {
                push_unique(&mut out, v);
            }
        }
        return out;
    }
    // Raw entry tuples, odometer order over the generator sequence.
    let k = gen.scalars().len();
    let mut idx = vec![0usize; d];
    loop {
        let v = Vector::new(idx.iter().map(|&i| gen.scalars()[i].clone()).collect());
        if inner(&v, &v).expect("same dimension") == *a {
            push_unique(&mut out, v);
        }
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Backtracking enumeration of equiangular families with norm `a` and
/// `2 v(<tau_j, tau_k>) = gamma_v`.
///
/// Unit vectors in dimension 2 come from [`na_circle_point`] over the
/// generators; otherwise candidates are entry tuples over the generators
/// with `<v, v> = a`. Families are index-increasing subsets of the
/// candidate list, emitted in lexicographic order. Families of every size
/// from 2 to `n_max` are reported (singletons only when `n_max = 1`).
pub fn na_search(
    d: usize,
    n_max: usize,
    gen: &GeneratorSet,
    a: &Scalar,
    gamma_v: Valuation,
) -> Vec<NaSearchHit> {
    if d == 0 || n_max == 0 {
        return Vec::new();
    }
    let cands = candidates(d, gen, a);
    let nc = cands.len();
    // Pairwise compatibility is all that matters, so precompute it.
    let mut ok = vec![false; nc * nc];
    for i in 0..nc {
        for j in i + 1..nc {
            let v = inner(&cands[i], &cands[j])
                .expect("same dimension")
                .valuation();
            let fits = v.scale(2) == gamma_v;
            ok[i * nc + j] = fits;
            ok[j * nc + i] = fits;
        }
    }
    let min_size = n_max.min(2);
    let mut hits = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn dfs(
        start: usize,
        chosen: &mut Vec<usize>,
        ctx: (&[Vector], &[bool], usize, usize, usize),
        hits: &mut Vec<NaSearchHit>,
    ) {
        let (cands, ok, nc, n_max, min_size) = ctx;
        for i in start..nc {
            if chosen.iter().any(|&c| !ok[c * nc + i]) {
                continue;
            }
            chosen.push(i);
            if chosen.len() >= min_size {
                let config = Config::new(chosen.iter().map(|&c| cands[c].clone()).collect())
                    .expect("nonempty, same dimension");
                let d = config.d();
                let zauner = (config.n() == d * d)
                    .then(|| zauner_check(&config, None).ok())
                    .flatten();
                hits.push(NaSearchHit { config, zauner });
            }
            if chosen.len() < n_max {
                dfs(i + 1, chosen, ctx, hits);
            }
            chosen.pop();
        }
    }

    dfs(
        0,
        &mut chosen,
        (&cands, &ok, nc, n_max, min_size),
        &mut hits,
    );
    hits
}
