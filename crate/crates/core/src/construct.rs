//! Constructions of optimal designs.
//!
//! Paired designs come from difference matrices: a weighing matrix `W(n, rho)`
//! gives a saturated design in `n` sets; otherwise a cyclic incidence pattern
//! is expanded by the columns of a smaller `W(nu, rho)` (Method-W) or of a
//! Hadamard matrix of order `h(rho)` (Method-H). Generators turn a paired
//! design into `m`-option sets, and stacking a design over its complement
//! gives optimality under the broader main-effects model.

use std::collections::HashSet;
use std::fmt;

use num_integer::{gcd, lcm};

use crate::catalog::{self, WeighingMatrix};
use crate::design::{
    complement, paired_design_from_difference, stack, validate_structure, ChoiceSet, DesignParams,
    DifferenceMatrix, PartialDesign, Profile,
};
use crate::error::{Error, Result};
use crate::verify::{certify, Model};

/// `n / gcd(n, k)` rows; row `b` has ones at `b k, ..., b k + k - 1 (mod n)`.
pub fn cyclic_incidence(n: usize, k: usize) -> Result<Vec<Vec<u8>>> {
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("block size {k} outside 1..={n}")));
    }
    let rows = n / gcd(n, k);
    Ok((0..rows)
        .map(|b| {
            let mut row = vec![0u8; n];
            for i in 0..k {
                row[(b * k + i) % n] = 1;
            }
            row
        })
        .collect())
}

/// Replaces the ones of each incidence row, left to right, by the first
/// columns of `matrix` and each zero by a zero column.
fn expand_incidence(incidence: &[Vec<u8>], matrix: &WeighingMatrix) -> Result<DifferenceMatrix> {
    let mut rows = Vec::with_capacity(incidence.len() * matrix.order());
    for inc in incidence {
        let positions: Vec<usize> = (0..inc.len()).filter(|&i| inc[i] == 1).collect();
        for r in 0..matrix.order() {
            let mut row = vec![0i8; inc.len()];
            for (c, &pos) in positions.iter().enumerate() {
                row[pos] = matrix.get(r, c);
            }
            rows.push(row);
        }
    }
    DifferenceMatrix::new(rows)
}

fn paired_from(x: &DifferenceMatrix, rho: usize, fixed_level: u8) -> Result<PartialDesign> {
    let params = DesignParams::new(x.cols(), 2, rho, x.rows())?;
    paired_design_from_difference(x, params, fixed_level)
}

/// `X = W(n, rho)`: an optimal paired design in `n` sets.
pub fn construct_saturated(n: usize, rho: usize, fixed_level: u8) -> Result<PartialDesign> {
    let w = catalog::weighing(n, rho)?
        .ok_or_else(|| Error::NotAvailable(format!("no W({n}, {rho}) in the catalog")))?;
    let rows = (0..n).map(|r| w.row(r).to_vec()).collect();
    paired_from(&DifferenceMatrix::new(rows)?, rho, fixed_level)
}

/// Method-W with `W(nu, rho)`: `N = n nu / gcd(n, nu)` sets, `X'X = (N rho / n) I`.
pub fn construct_method_w(n: usize, rho: usize, nu: usize, fixed_level: u8) -> Result<PartialDesign> {
    if nu > n {
        return Err(Error::InvalidParams(format!("Method-W needs nu <= n, got nu = {nu}, n = {n}")));
    }
    let w = catalog::weighing(nu, rho)?
        .ok_or_else(|| Error::NotAvailable(format!("no W({nu}, {rho}) in the catalog")))?;
    let x = expand_incidence(&cyclic_incidence(n, nu)?, &w)?;
    paired_from(&x, rho, fixed_level)
}

/// Method-H with `H_{h(rho)}`: `N = n h(rho) / gcd(n, rho)` sets.
pub fn construct_method_h(n: usize, rho: usize, fixed_level: u8) -> Result<PartialDesign> {
    if rho == 0 || rho > n {
        return Err(Error::InvalidParams(format!("rho must satisfy 1 <= rho <= n = {n}, got {rho}")));
    }
    let h = catalog::h_of(rho);
    let hm = catalog::hadamard(h).ok_or_else(|| Error::NotAvailable(format!("no H({h})")))?;
    let x = expand_incidence(&cyclic_incidence(n, rho)?, &hm)?;
    paired_from(&x, rho, fixed_level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// `X = W(n, rho)` itself.
    Saturated,
    MethodW { nu: usize },
    MethodH { h: usize },
}

/// Outcome of the minimum-`N` search for paired designs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub n: usize,
    pub rho: usize,
    pub method: Method,
    pub n_sets: usize,
    /// `(nu, K)` for every `nu < n` with `W(nu, rho)` available.
    pub candidates: Vec<(usize, usize)>,
    /// Best Method-W option `(N1, nu)`.
    pub method_w: Option<(usize, usize)>,
    /// `h(rho)` and the Method-H count `N2`.
    pub h: usize,
    pub method_h_sets: usize,
}

impl ConstructionPlan {
    /// Method-W chosen with strictly fewer sets than Method-H.
    pub fn improves_on_method_h(&self) -> bool {
        matches!(self.method, Method::MethodW { .. }) && self.n_sets < self.method_h_sets
    }

    /// Short cell text, e.g. `20*, W(4,3)`, `4, W` or `8, H4`.
    pub fn table_cell(&self) -> String {
        let star = if self.improves_on_method_h() { "*" } else { "" };
        let tag = match self.method {
            Method::Saturated => "W".to_string(),
            Method::MethodW { nu } => format!("W({nu},{})", self.rho),
            Method::MethodH { h } => format!("H{h}"),
        };
        format!("{}{star}, {tag}", self.n_sets)
    }

    /// Builds the planned paired design.
    pub fn build(&self, fixed_level: u8) -> Result<PartialDesign> {
        match self.method {
            Method::Saturated => construct_saturated(self.n, self.rho, fixed_level),
            Method::MethodW { nu } => construct_method_w(self.n, self.rho, nu, fixed_level),
            Method::MethodH { .. } => construct_method_h(self.n, self.rho, fixed_level),
        }
    }
}

impl fmt::Display for ConstructionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.method {
            Method::Saturated => write!(f, "N={}, saturated W({},{})", self.n_sets, self.n, self.rho),
            Method::MethodW { nu } => write!(f, "N={}, Method-W with W({nu},{})", self.n_sets, self.rho),
            Method::MethodH { h } => write!(f, "N={}, Method-H with H{h}", self.n_sets),
        }
    }
}

/// Minimum number of sets for an optimal paired design.
///
/// 1. `W(n, rho)` available: saturated, `N = n`.
/// 2. Collect `nu < n` with `W(nu, rho)` available.
/// 3. `K = n nu / gcd(n, nu)` for each.
/// 4. `N1 = min K`.
/// 5. `N2 = n h(rho) / gcd(n, rho)`.
/// 6. `N = min(N1, N2)`.
///
/// Among equal `K` the smallest `nu` is kept. Ties between `N1` and `N2` go
/// to Method-W, except when that `W(nu, rho)` is itself the Hadamard matrix
/// `H_rho`: Method-W then builds exactly the Method-H design and the plan
/// reports Method-H.
pub fn plan_minimum_n(n: usize, rho: usize) -> Result<ConstructionPlan> {
    if rho == 0 || rho > n {
        return Err(Error::InvalidParams(format!("rho must satisfy 1 <= rho <= n = {n}, got {rho}")));
    }
    let h = catalog::h_of(rho);
    let method_h_sets = n * h / gcd(n, rho);
    let candidates: Vec<(usize, usize)> = catalog::smallest_weighing_orders(rho, n - 1)
        .into_iter()
        .map(|nu| (nu, lcm(n, nu)))
        .collect();
    let best_k = candidates.iter().map(|&(_, k)| k).min();
    // smallest nu among the minimizers
    let method_w = best_k.and_then(|k| candidates.iter().find(|c| c.1 == k).map(|&(nu, _)| (k, nu)));

    let plan = |method, n_sets| ConstructionPlan {
        n,
        rho,
        method,
        n_sets,
        candidates: candidates.clone(),
        method_w,
        h,
        method_h_sets,
    };

    if catalog::weighing(n, rho)?.is_some() {
        return Ok(plan(Method::Saturated, n));
    }
    Ok(match method_w {
        Some((n1, nu)) if n1 < method_h_sets || (n1 == method_h_sets && nu != rho) => {
            plan(Method::MethodW { nu }, n1)
        }
        _ => plan(Method::MethodH { h }, method_h_sets),
    })
}

/// A binary vector added modulo 2 on the active positions of a profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator(Vec<u8>);

impl Generator {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Generator("generator bits must be 0 or 1".into()));
        }
        Ok(Self(bits))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Profile::parse(s)
            .map(|p| Self(p.levels().to_vec()))
            .map_err(|_| Error::Generator(format!("invalid generator {s:?}")))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|&b| 1 - b).collect())
    }

    /// Adds the generator to `profile` on positions where `active` is set.
    pub fn apply(&self, profile: &Profile, active: &[bool]) -> Result<Profile> {
        if self.len() != profile.len() || active.len() != profile.len() {
            return Err(Error::Generator(format!(
                "generator of length {} applied to a profile of length {}",
                self.len(),
                profile.len()
            )));
        }
        let levels = profile
            .levels()
            .iter()
            .zip(&self.0)
            .zip(active)
            .map(|((&l, &g), &a)| if a { l ^ g } else { l })
            .collect();
        Profile::new(levels)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Open interval of admissible generator weights, `min(rho, n - rho) < w <
/// max(rho, n - rho)`, as an inclusive range, or `None` when it is empty.
pub fn generator_weight_range(n: usize, rho: usize) -> Option<std::ops::RangeInclusive<usize>> {
    let other = n.saturating_sub(rho);
    let (lo, hi) = (rho.min(other), rho.max(other));
    (hi >= lo + 2).then(|| (lo + 1)..=(hi - 1))
}

/// Distinct generators with admissible weights, no generator paired with its
/// complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    rho: usize,
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Generator>, n: usize, rho: usize) -> Result<Self> {
        if !generators.is_empty() {
            let range = generator_weight_range(n, rho).ok_or_else(|| {
                Error::Generator(format!("empty generator weight range for n = {n}, rho = {rho}"))
            })?;
            for (i, g) in generators.iter().enumerate() {
                if g.len() != n {
                    return Err(Error::Generator(format!("generator {g} has length {}, expected {n}", g.len())));
                }
                if !range.contains(&g.weight()) {
                    return Err(Error::Generator(format!(
                        "generator {g} has weight {}, outside {}..={}",
                        g.weight(),
                        range.start(),
                        range.end()
                    )));
                }
                for h in &generators[..i] {
                    if h == g {
                        return Err(Error::Generator(format!("generator {g} appears twice")));
                    }
                    if h.complement() == *g {
                        return Err(Error::Generator(format!("generators {h} and {g} are complements")));
                    }
                }
            }
        }
        Ok(Self { n, rho, generators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Largest set size reachable, `2 alpha + 2`.
    pub fn max_options(&self) -> usize {
        2 * self.generators.len() + 2
    }
}

/// Option matrix `A_option + g` of a design (0-based option index).
pub fn apply_generator(d: &PartialDesign, option: usize, g: &Generator) -> Result<Vec<Profile>> {
    if option >= d.m() {
        return Err(Error::InvalidParams(format!("option {} out of range 1..={}", option + 1, d.m())));
    }
    d.sets().iter().map(|set| g.apply(&set.profiles()[option], set.active())).collect()
}

fn extended_sets(d2: &PartialDesign, generators: &[Generator], m: usize) -> Result<Vec<ChoiceSet>> {
    d2.sets()
        .iter()
        .map(|set| {
            let (a1, a2) = (&set.profiles()[0], &set.profiles()[1]);
            let mut options = vec![a1.clone(), a2.clone()];
            for g in generators {
                options.push(g.apply(a1, set.active())?);
                options.push(g.apply(a2, set.active())?);
            }
            options.truncate(m);
            ChoiceSet::new(options, set.active().to_vec())
        })
        .collect()
}

/// Options `A1, A2, A1 + g1, A2 + g1, A1 + g2, ...`, truncated to `m`.
///
/// The paired design must pass the main-effects certificate. The result is
/// checked for repeated profiles and re-certified.
pub fn extend_to_m(d2: &PartialDesign, generators: &GeneratorSet, m: usize) -> Result<PartialDesign> {
    if d2.m() != 2 {
        return Err(Error::NotPaired(d2.m()));
    }
    if generators.n != d2.n() || generators.rho != d2.rho() {
        return Err(Error::ParamMismatch(format!(
            "generators built for (n, rho) = ({}, {}), design has ({}, {})",
            generators.n,
            generators.rho,
            d2.n(),
            d2.rho()
        )));
    }
    if m < 2 || m > generators.max_options() {
        return Err(Error::InvalidParams(format!(
            "m = {m} needs 2 <= m <= {} with {} generators",
            generators.max_options(),
            generators.len()
        )));
    }
    if !certify(d2, Model::Main).passed {
        return Err(Error::NotOptimal("main"));
    }
    let d = extend_unchecked(d2, generators.generators(), m)?;
    let dups = validate_structure(&d).duplicate_sets();
    if !dups.is_empty() {
        return Err(Error::DuplicateProfiles { sets: dups });
    }
    if !certify(&d, Model::Main).passed {
        return Err(Error::NotOptimal("main"));
    }
    Ok(d)
}

/// Applies generators without any admissibility or optimality checks.
pub fn extend_unchecked(d2: &PartialDesign, generators: &[Generator], m: usize) -> Result<PartialDesign> {
    if d2.m() != 2 {
        return Err(Error::NotPaired(d2.m()));
    }
    if m < 2 || m > 2 * generators.len() + 2 {
        return Err(Error::InvalidParams(format!("m = {m} not reachable with {} generators", generators.len())));
    }
    PartialDesign::new(d2.n(), m, d2.rho(), extended_sets(d2, generators, m)?)
}

/// Greedy lexicographic search for `alpha` admissible generators (weights
/// ascending, then bit patterns with earlier positions set first) whose
/// options stay distinct in every set of `base`.
pub fn auto_generators(base: &PartialDesign, alpha: usize) -> Result<GeneratorSet> {
    let (n, rho) = (base.n(), base.rho());
    if base.m() != 2 {
        return Err(Error::NotPaired(base.m()));
    }
    if alpha == 0 {
        return GeneratorSet::new(Vec::new(), n, rho);
    }
    let range = generator_weight_range(n, rho).ok_or_else(|| {
        Error::NotAvailable(format!(
            "empty generator weight range: need min(rho, n - rho) < w < max(rho, n - rho) with n = {n}, rho = {rho}"
        ))
    })?;

    let mut seen: Vec<HashSet<Profile>> = base.sets().iter().map(|s| s.profiles().iter().cloned().collect()).collect();
    let mut chosen: Vec<Generator> = Vec::new();
    'weights: for w in range {
        for positions in combinations(n, w) {
            let mut bits = vec![0u8; n];
            for p in positions {
                bits[p] = 1;
            }
            let g = Generator(bits);
            if chosen.iter().any(|c| *c == g || c.complement() == g) {
                continue;
            }
            let mut fresh = Vec::with_capacity(base.n_sets());
            let ok = base.sets().iter().zip(&seen).all(|(set, seen)| {
                let (a1, a2) = (&set.profiles()[0], &set.profiles()[1]);
                let b1 = g.apply(a1, set.active()).expect("lengths match");
                let b2 = g.apply(a2, set.active()).expect("lengths match");
                let distinct = b1 != b2 && !seen.contains(&b1) && !seen.contains(&b2);
                fresh.push((b1, b2));
                distinct
            });
            if !ok {
                continue;
            }
            for (s, (b1, b2)) in seen.iter_mut().zip(fresh) {
                s.insert(b1);
                s.insert(b2);
            }
            chosen.push(g);
            if chosen.len() == alpha {
                break 'weights;
            }
        }
    }
    if chosen.len() < alpha {
        return Err(Error::NotAvailable(format!(
            "only {} of {alpha} admissible generators keep the options distinct",
            chosen.len()
        )));
    }
    GeneratorSet::new(chosen, n, rho)
}

/// Generators needed for sets of size `m`: `ceil((m - 2) / 2)`.
pub fn generators_needed(m: usize) -> usize {
    m.saturating_sub(1) / 2
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in (i + 1)..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        current = next;
        Some(out)
    })
}

/// `stack(d, complement(d))`, optimal under the broader model when `d` is
/// optimal under the main-effects model.
pub fn construct_broader(d: &PartialDesign) -> Result<PartialDesign> {
    if !certify(d, Model::Main).passed {
        return Err(Error::NotOptimal("main"));
    }
    stack(d, &complement(d))
}
