//! Component-pair tallies and the information matrices they determine.

use nalgebra::DMatrix;
use num_rational::Ratio;

use crate::design::{DesignParams, PartialDesign, Profile};

/// 0-based row of `F_kl` (`k < l`) among the two-factor interactions, which
/// are ordered `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
pub fn interaction_index(n: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < n);
    k * (2 * n - k - 1) / 2 + (l - k - 1)
}

/// Number of two-factor interactions, `n (n - 1) / 2`.
pub fn interaction_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Tallies of component-pair types over a whole design.
///
/// * `eta1(h, k)`: pairs of type `(00,11)` (plus) and `(01,10)` (minus) on
///   factors `h, k`, counted up to swapping the two members.
/// * `eta2(h, k)`: pairs differing on `h` with `k` constant at 1 (plus,
///   `(01,11)`) or at 0 (minus, `(00,10)`).
/// * `eta3(h, k, l)`: pairs differing on `h` where the member with `h = 0`
///   has `k != l` and the other `k = l` (plus), or the reverse (minus).
/// * `zeros(p, h)`: number of profiles of set `p` with level 0 on factor `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceCounts {
    params: DesignParams,
    eta1_plus: Vec<u64>,
    eta1_minus: Vec<u64>,
    eta2_plus: Vec<u64>,
    eta2_minus: Vec<u64>,
    eta3_plus: Vec<u64>,
    eta3_minus: Vec<u64>,
    zeros: Vec<usize>,
}

impl BalanceCounts {
    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn eta1(&self, h: usize, k: usize) -> (u64, u64) {
        let idx = h * self.params.n + k;
        (self.eta1_plus[idx], self.eta1_minus[idx])
    }

    pub fn eta2(&self, h: usize, k: usize) -> (u64, u64) {
        let idx = h * self.params.n + k;
        (self.eta2_plus[idx], self.eta2_minus[idx])
    }

    /// `h` must differ from both `k` and `l`; `k` and `l` may come in any order.
    pub fn eta3(&self, h: usize, k: usize, l: usize) -> (u64, u64) {
        let (k, l) = if k < l { (k, l) } else { (l, k) };
        let idx = h * interaction_count(self.params.n) + interaction_index(self.params.n, k, l);
        (self.eta3_plus[idx], self.eta3_minus[idx])
    }

    pub fn zeros(&self, set: usize, h: usize) -> usize {
        self.zeros[set * self.params.n + h]
    }
}

/// Walks all `N m (m - 1) / 2` component pairs and classifies each against
/// every factor pair and triple.
pub fn tally_counts(d: &PartialDesign) -> BalanceCounts {
    let params = d.params();
    let n = params.n;
    let pairs = interaction_count(n);
    let mut c = BalanceCounts {
        params,
        eta1_plus: vec![0; n * n],
        eta1_minus: vec![0; n * n],
        eta2_plus: vec![0; n * n],
        eta2_minus: vec![0; n * n],
        eta3_plus: vec![0; n * pairs],
        eta3_minus: vec![0; n * pairs],
        zeros: vec![0; params.n_sets * n],
    };

    for (p, set) in d.sets().iter().enumerate() {
        for prof in set.profiles() {
            for h in 0..n {
                if prof.level(h) == 0 {
                    c.zeros[p * n + h] += 1;
                }
            }
        }
    }

    let mut differs = vec![false; n];
    for (_, a, b) in d.component_pairs() {
        for (h, slot) in differs.iter_mut().enumerate() {
            *slot = a.level(h) != b.level(h);
        }
        for h in (0..n).filter(|&h| differs[h]) {
            // member carrying level 0 on h
            let (u, v): (&Profile, &Profile) = if a.level(h) == 0 { (a, b) } else { (b, a) };
            for (k, &differs_k) in differs.iter().enumerate() {
                if k == h {
                    continue;
                }
                let idx = h * n + k;
                if differs_k {
                    if a.level(h) == a.level(k) {
                        c.eta1_plus[idx] += 1;
                    } else {
                        c.eta1_minus[idx] += 1;
                    }
                } else if a.level(k) == 1 {
                    c.eta2_plus[idx] += 1;
                } else {
                    c.eta2_minus[idx] += 1;
                }
            }
            for k in 0..n {
                for l in (k + 1)..n {
                    if k == h || l == h {
                        continue;
                    }
                    let u_split = u.level(k) != u.level(l);
                    let v_split = v.level(k) != v.level(l);
                    let idx = h * pairs + interaction_index(n, k, l);
                    match (u_split, v_split) {
                        (true, false) => c.eta3_plus[idx] += 1,
                        (false, true) => c.eta3_minus[idx] += 1,
                        _ => {}
                    }
                }
            }
        }
    }
    c
}

/// An exact information matrix stored as integer numerators over the shared
/// denominator `2^pow2 N m^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationMatrix {
    rows: usize,
    cols: usize,
    numerators: Vec<i64>,
    pow2: u32,
    n_sets: usize,
    m: usize,
}

impl InformationMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn numerator(&self, r: usize, c: usize) -> i64 {
        self.numerators[r * self.cols + c]
    }

    /// `1 / (2^pow2 N m^2)`.
    pub fn scale(&self) -> f64 {
        1.0 / (2f64.powi(self.pow2 as i32) * self.n_sets as f64 * (self.m * self.m) as f64)
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.numerator(r, c) as f64 * self.scale()
    }

    fn denominator(&self) -> Option<i128> {
        1i128
            .checked_shl(self.pow2)
            .filter(|_| self.pow2 < 126)
            .and_then(|p| p.checked_mul((self.n_sets * self.m * self.m) as i128))
    }

    /// Exact entry, when the denominator fits in 128 bits.
    pub fn ratio(&self, r: usize, c: usize) -> Option<Ratio<i128>> {
        self.denominator().map(|den| Ratio::new(self.numerator(r, c) as i128, den))
    }

    pub fn trace_numerator(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.numerator(i, i)).sum()
    }

    pub fn trace_ratio(&self) -> Option<Ratio<i128>> {
        self.denominator().map(|den| Ratio::new(self.trace_numerator() as i128, den))
    }

    pub fn trace(&self) -> f64 {
        self.trace_numerator() as f64 * self.scale()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.numerator(r, c) == 0))
    }

    pub fn is_null(&self) -> bool {
        self.numerators.iter().all(|&v| v == 0)
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c))
    }
}

/// Main-effects `C = B1 Lambda B1' / 2^n` from the tallies: off-diagonal
/// `4 (eta1+ - eta1-)`, diagonal `sum_p 4 n_ph (m - n_ph)`, all over `2^n N m^2`.
pub fn c_matrix_from_counts(counts: &BalanceCounts) -> InformationMatrix {
    let DesignParams { n, m, n_sets, .. } = counts.params;
    let mut numerators = vec![0i64; n * n];
    for h in 0..n {
        for k in 0..n {
            numerators[h * n + k] = if h == k {
                (0..n_sets)
                    .map(|p| {
                        let z = counts.zeros(p, h) as i64;
                        4 * z * (m as i64 - z)
                    })
                    .sum()
            } else {
                let (plus, minus) = counts.eta1(h, k);
                4 * (plus as i64 - minus as i64)
            };
        }
    }
    InformationMatrix { rows: n, cols: n, numerators, pow2: n as u32, n_sets, m }
}

/// Cross block `B1 Lambda B2'` (no `2^-n` factor) from the tallies: column
/// `F_hk` of row `F_h` is `4 (eta2+ - eta2-)`, column `F_kl` with `h` outside
/// is `4 (eta3+ - eta3-)`, all over `N m^2`.
pub fn cross_matrix_from_counts(counts: &BalanceCounts) -> InformationMatrix {
    let DesignParams { n, m, n_sets, .. } = counts.params;
    let cols = interaction_count(n);
    let mut numerators = vec![0i64; n * cols];
    for h in 0..n {
        for k in 0..n {
            for l in (k + 1)..n {
                let (plus, minus) = if h == k {
                    counts.eta2(h, l)
                } else if h == l {
                    counts.eta2(h, k)
                } else {
                    counts.eta3(h, k, l)
                };
                numerators[h * cols + interaction_index(n, k, l)] = 4 * (plus as i64 - minus as i64);
            }
        }
    }
    InformationMatrix { rows: n, cols, numerators, pow2: 0, n_sets, m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{ChoiceSet, Profile};

    fn single(a: &str, b: &str) -> PartialDesign {
        let n = a.len();
        let set = ChoiceSet::new(vec![Profile::parse(a).unwrap(), Profile::parse(b).unwrap()], vec![true; n]).unwrap();
        PartialDesign::new(n, 2, n, vec![set]).unwrap()
    }

    #[test]
    fn interaction_indices_are_dense() {
        let n = 6;
        let mut seen = Vec::new();
        for k in 0..n {
            for l in (k + 1)..n {
                seen.push(interaction_index(n, k, l));
            }
        }
        assert_eq!(seen, (0..interaction_count(n)).collect::<Vec<_>>());
    }

    #[test]
    fn single_pair_types() {
        let c = tally_counts(&single("00", "11"));
        assert_eq!(c.eta1(0, 1), (1, 0));
        let c = tally_counts(&single("01", "10"));
        assert_eq!(c.eta1(0, 1), (0, 1));
        assert_eq!(c.eta1(1, 0), (0, 1));
    }

    #[test]
    fn eta2_and_eta3_types() {
        // (01,11) on (h,k) = (0,1)
        let c = tally_counts(&single("01", "11"));
        assert_eq!(c.eta2(0, 1), (1, 0));
        let c = tally_counts(&single("00", "10"));
        assert_eq!(c.eta2(0, 1), (0, 1));
        // 0(10) vs 1(00): plus; 0(00) vs 1(10): minus
        let c = tally_counts(&single("010", "100"));
        assert_eq!(c.eta3(0, 1, 2), (1, 0));
        let c = tally_counts(&single("000", "110"));
        assert_eq!(c.eta3(0, 1, 2), (0, 1));
        // swapping members changes nothing
        assert_eq!(tally_counts(&single("110", "000")), tally_counts(&single("000", "110")));
    }

    #[test]
    fn unbalanced_single_set_is_not_diagonal() {
        let c = c_matrix_from_counts(&tally_counts(&single("00", "11")));
        assert!(!c.is_diagonal());
        assert_eq!(c.ratio(0, 1), Some(Ratio::new(4, 16)));
        assert_eq!(c.ratio(0, 0), Some(Ratio::new(4, 16)));
    }
}
