use crate::classical::{bounds_table, coherence_of, ClassicalConfig, ComplexVector, FieldTag};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchParams {
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    pub steps: usize,
    pub initial_step: f64,
    /// Step-size multiplier applied after every rejected proposal.
    pub shrink: f64,
    pub seed: u64,
}

impl SearchParams {
    pub fn new(d: usize, n: usize) -> Self {
        Self {
            d,
            n,
            trials: 32,
            steps: 2000,
            initial_step: 0.3,
            shrink: 0.99,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n <= self.d {
            return Err(Error::InvalidArgs(format!(
                "search needs n > d >= 1 (n={}, d={})",
                self.n, self.d
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgs("trials must be at least 1".into()));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::InvalidArgs(
                "shrink factor must lie in (0, 1)".into(),
            ));
        }
        if !(self.initial_step.is_finite() && self.initial_step > 0.0) {
            return Err(Error::InvalidArgs("initial step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub best: ClassicalConfig,
    pub coherence: f64,
    pub best_bound: f64,
    pub gap: f64,
}

/// Regular tetrahedron on the Bloch sphere lifted to four state vectors
/// in `C^2`: pairwise `|<tau_j, tau_k>|^2 = 1/3`.
pub fn sic_construct_d2() -> ClassicalConfig {
    let a = (1.0f64 / 3.0).sqrt();
    let b = (2.0f64 / 3.0).sqrt();
    let mut vs = vec![ComplexVector::new(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ])];
    for k in 0..3 {
        let phase = Complex64::from_polar(b, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
        vs.push(ComplexVector::new(vec![Complex64::new(a, 0.0), phase]));
    }
    ClassicalConfig::new(vs, FieldTag::Complex).expect("fixed construction")
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
}

fn gaussian(rng: &mut ChaCha8Rng, field: FieldTag) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = match field {
        FieldTag::Real => 0.0,
        FieldTag::Complex => rng.sample(StandardNormal),
    };
    Complex64::new(re, im)
}

fn random_family(
    rng: &mut ChaCha8Rng,
    params: &SearchParams,
    field: FieldTag,
) -> Vec<Vec<Complex64>> {
    (0..params.n)
        .map(|_| {
            let mut v: Vec<Complex64> = (0..params.d).map(|_| gaussian(rng, field)).collect();
            normalize(&mut v);
            v
        })
        .collect()
}

fn to_vectors(family: &[Vec<Complex64>]) -> Vec<ComplexVector> {
    family.iter().cloned().map(ComplexVector::new).collect()
}

/// One restart: Gaussian perturbation of every coordinate, accepted when
/// the coherence strictly decreases; the step shrinks geometrically on
/// each rejection.
fn run_trial(params: &SearchParams, field: FieldTag, trial: usize) -> (f64, Vec<Vec<Complex64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(trial as u64);

    let mut current = random_family(&mut rng, params, field);
    let mut score = coherence_of(&to_vectors(&current));
    let mut step = params.initial_step;
    for _ in 0..params.steps {
        let mut proposal = current.clone();
        for v in proposal.iter_mut() {
            for z in v.iter_mut() {
                *z += gaussian(&mut rng, field) * step;
            }
            normalize(v);
        }
        let s = coherence_of(&to_vectors(&proposal));
        if s < score {
            current = proposal;
            score = s;
        } else {
            step = (step * params.shrink).max(1e-12);
        }
    }
    (score, current)
}

/// Random-restart coherence minimization. Trials run in parallel, each on
/// its own ChaCha stream `(seed, trial)`, and the best trial (lowest
/// coherence, then lowest index) wins, so the result depends only on
/// `params`.
pub fn classical_search(params: &SearchParams, field: FieldTag) -> Result<SearchResult> {
    params.validate()?;
    let results: Vec<(f64, Vec<Vec<Complex64>>)> = (0..params.trials)
        .into_par_iter()
        .map(|t| run_trial(params, field, t))
        .collect();
    let (_, family) = results
        .into_iter()
        .reduce(|best, r| if r.0 < best.0 { r } else { best })
        .expect("at least one trial");
    let best = ClassicalConfig::new(to_vectors(&family), field)?;
    let coherence = coherence_of(best.vectors());
    let table = bounds_table(params.n, params.d, field, &[1])?;
    Ok(SearchResult {
        best,
        coherence,
        best_bound: table.best_lower_bound,
        gap: coherence - table.best_lower_bound,
    })
}
