//! Brute-force information matrices over all `2^n` treatments.
//!
//! Nothing here looks at pair types: `Lambda` is assembled from the set
//! indicators, the contrast matrices are written out treatment by treatment,
//! and `C` comes from dense matrix products. This is the oracle the counting
//! engine is checked against, so it is limited to small `n`.

use nalgebra::DMatrix;

use crate::design::{PartialDesign, Profile};
use crate::error::{Error, Result};
use crate::verify::counts::{interaction_count, interaction_index};

/// Largest factor count accepted by the brute-force engine.
pub const MAX_BRUTE_FORCE_FACTORS: usize = 12;

/// Eigenvalues at or below this are treated as zero in generalized inverses.
pub const GINVERSE_TOLERANCE: f64 = 1e-9;

/// A factorial effect of interest. Factor indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Effect {
    Main(usize),
    Interaction(usize, usize),
}

impl Effect {
    /// Contrast coefficient of this effect at a treatment: `b_h = -1` when
    /// the level of `h` is 0 and `+1` otherwise; `b_kl = b_k b_l`.
    pub fn contrast(&self, t: &Profile) -> i64 {
        let b = |h: usize| if t.level(h) == 0 { -1 } else { 1 };
        match *self {
            Effect::Main(h) => b(h),
            Effect::Interaction(k, l) => b(k) * b(l),
        }
    }
}

/// `B_x M^(ij) B_y' = (x_i - x_j)(y_i - y_j)` for one component pair.
pub fn pair_contrast_product(x: Effect, y: Effect, ti: &Profile, tj: &Profile) -> i64 {
    (x.contrast(ti) - x.contrast(tj)) * (y.contrast(ti) - y.contrast(tj))
}

/// Sum of [`pair_contrast_product`] over all component pairs of `d`, which is
/// the `(x, y)` entry of `B Lambda* B'` with `Lambda* = N m^2 Lambda`.
pub fn contrast_product(x: Effect, y: Effect, d: &PartialDesign) -> i64 {
    d.component_pairs().map(|(_, a, b)| pair_contrast_product(x, y, a, b)).sum()
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_BRUTE_FORCE_FACTORS {
        return Err(Error::SizeGuard { n, max: MAX_BRUTE_FORCE_FACTORS });
    }
    Ok(())
}

fn treatment_bit(index: usize, n: usize, h: usize) -> usize {
    (index >> (n - 1 - h)) & 1
}

/// The `2^n x 2^n` treatment information matrix: `(m - 1) / (N m^2)` times
/// the number of sets containing `s` on the diagonal, `-1 / (N m^2)` times
/// the number of sets containing both `s` and `t` off it. Treatments are in
/// lexicographic order.
pub fn brute_force_lambda(d: &PartialDesign) -> Result<DMatrix<f64>> {
    let n = d.n();
    guard(n)?;
    let size = 1usize << n;
    let m = d.m() as f64;
    let unit = 1.0 / (d.n_sets() as f64 * m * m);
    let mut lambda = DMatrix::<f64>::zeros(size, size);
    for set in d.sets() {
        let idx: Vec<usize> = set.profiles().iter().map(Profile::treatment_index).collect();
        for &s in &idx {
            for &t in &idx {
                if s == t {
                    lambda[(s, t)] += (m - 1.0) * unit;
                } else {
                    lambda[(s, t)] -= unit;
                }
            }
        }
    }
    Ok(lambda)
}

/// `B_(1)`: row `h` holds `b_h` for every treatment.
pub fn main_effect_contrasts(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, 1 << n, |h, s| if treatment_bit(s, n, h) == 0 { -1.0 } else { 1.0 })
}

/// `B_(2)`: row `interaction_index(k, l)` holds `b_k b_l`.
pub fn interaction_contrasts(n: usize) -> DMatrix<f64> {
    let mut b2 = DMatrix::<f64>::zeros(interaction_count(n), 1 << n);
    for k in 0..n {
        for l in (k + 1)..n {
            let r = interaction_index(n, k, l);
            for s in 0..(1 << n) {
                let same = treatment_bit(s, n, k) == treatment_bit(s, n, l);
                b2[(r, s)] = if same { 1.0 } else { -1.0 };
            }
        }
    }
    b2
}

/// The blocks `B1 Lambda B1'`, `B1 Lambda B2'` and `B2 Lambda B2'` of one design.
#[derive(Debug, Clone)]
pub struct BruteForce {
    n: usize,
    pub main: DMatrix<f64>,
    pub cross: DMatrix<f64>,
    pub interactions: DMatrix<f64>,
}

impl BruteForce {
    pub fn new(d: &PartialDesign) -> Result<Self> {
        let lambda = brute_force_lambda(d)?;
        let n = d.n();
        let b1 = main_effect_contrasts(n);
        let b2 = interaction_contrasts(n);
        let b1_lambda = &b1 * &lambda;
        let b2_lambda = &b2 * &lambda;
        Ok(Self {
            n,
            main: &b1_lambda * b1.transpose(),
            cross: &b1_lambda * b2.transpose(),
            interactions: &b2_lambda * b2.transpose(),
        })
    }

    fn scale(&self) -> f64 {
        1.0 / (1u64 << self.n) as f64
    }

    /// Main-effects information matrix `B1 Lambda B1' / 2^n`.
    pub fn main_c(&self) -> DMatrix<f64> {
        &self.main * self.scale()
    }

    /// Main-effects information under the broader model, with the given
    /// generalized inverse of `B2 Lambda B2'`.
    pub fn broader_c(&self, method: GInverse) -> DMatrix<f64> {
        if self.cross.ncols() == 0 {
            return self.main_c();
        }
        let g = generalized_inverse(&self.interactions, method);
        let adjusted = &self.main - &self.cross * g * self.cross.transpose();
        adjusted * self.scale()
    }
}

/// Brute-force main-effects `C`.
pub fn brute_force_c_matrix(d: &PartialDesign) -> Result<DMatrix<f64>> {
    let lambda = brute_force_lambda(d)?;
    let b1 = main_effect_contrasts(d.n());
    Ok(&b1 * lambda * b1.transpose() / (1u64 << d.n()) as f64)
}

/// Main-effects information under the broader main-effects model,
/// `(1/2^n) {B1 L B1' - B1 L B2' [B2 L B2']^- B2 L B1'}`.
pub fn broader_c_matrix(d: &PartialDesign, method: GInverse) -> Result<DMatrix<f64>> {
    Ok(BruteForce::new(d)?.broader_c(method))
}

/// How to form a generalized inverse of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GInverse {
    /// Moore-Penrose inverse from the symmetric eigendecomposition.
    Eigen,
    /// `G + (I - G A) U + V (I - A G)` for fixed non-zero `U`, `V`: still a
    /// g-inverse of `A`, but neither symmetric nor reflexive.
    Perturbed,
}

/// A matrix `G` with `A G A = A` for symmetric `A`.
pub fn generalized_inverse(a: &DMatrix<f64>, method: GInverse) -> DMatrix<f64> {
    let size = a.nrows();
    let eig = a.clone().symmetric_eigen();
    let mut inv_vals = eig.eigenvalues.clone();
    for v in inv_vals.iter_mut() {
        *v = if v.abs() > GINVERSE_TOLERANCE { 1.0 / *v } else { 0.0 };
    }
    let q = &eig.eigenvectors;
    let g = q * DMatrix::from_diagonal(&inv_vals) * q.transpose();
    match method {
        GInverse::Eigen => g,
        GInverse::Perturbed => {
            let u = DMatrix::from_fn(size, size, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
            let v = DMatrix::from_fn(size, size, |i, j| ((i + 2 * j) % 3) as f64 - 1.0);
            let id = DMatrix::<f64>::identity(size, size);
            &g + (&id - &g * a) * u + v * (&id - a * &g)
        }
    }
}

/// Smallest eigenvalue of the symmetrized matrix above the g-inverse tolerance.
pub fn is_positive_definite(c: &DMatrix<f64>) -> bool {
    let sym = (c + c.transpose()) * 0.5;
    sym.symmetric_eigen().eigenvalues.iter().all(|&v| v > GINVERSE_TOLERANCE)
}
