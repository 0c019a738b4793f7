//! Profiles, choice sets and partial-profile designs.
//!
//! A design `d(N, n, m, rho)` holds `N` choice sets, each made of `m` profiles
//! over `n` two-level factors. In every set exactly `rho` factors are active;
//! the remaining factors are held at a constant level that is stored
//! explicitly so that every profile is a complete treatment combination.
//!
//! Constructors here only check shape (lengths and counts). The semantic
//! invariants (mask cardinality, constancy on inactive positions, distinct
//! profiles) are reported by [`validate_structure`], which lets degenerate
//! designs be built and inspected instead of being unrepresentable.

use std::fmt;

use crate::error::{Error, Result};

/// The four numbers that index a design class `D(N, n, m, rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    /// Number of two-level factors.
    pub n: usize,
    /// Profiles per choice set.
    pub m: usize,
    /// Profile strength: active factors per choice set.
    pub rho: usize,
    /// Number of choice sets.
    pub n_sets: usize,
}

impl DesignParams {
    pub fn new(n: usize, m: usize, rho: usize, n_sets: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
        }
        if rho == 0 || rho > n {
            return Err(Error::InvalidParams(format!(
                "rho must satisfy 1 <= rho <= n = {n}, got {rho}"
            )));
        }
        if n_sets == 0 {
            return Err(Error::InvalidParams("a design needs at least one choice set".into()));
        }
        Ok(Self { n, m, rho, n_sets })
    }

    /// Total number of component pairs, `N m (m - 1) / 2`.
    pub fn component_pairs(&self) -> usize {
        self.n_sets * self.m * (self.m - 1) / 2
    }
}

/// One treatment combination: a level in `{0, 1}` for each factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Vec<u8>);

impl Profile {
    pub fn new(levels: Vec<u8>) -> Result<Self> {
        if let Some(pos) = levels.iter().position(|&l| l > 1) {
            return Err(Error::Shape(format!(
                "profile level at position {} is {}, expected 0 or 1",
                pos + 1,
                levels[pos]
            )));
        }
        Ok(Self(levels))
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Shape(format!("invalid profile character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }

    pub fn levels(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(&self, factor: usize) -> u8 {
        self.0[factor]
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|&l| 1 - l).collect())
    }

    /// Position of this treatment in lexicographic order, factor 1 being the
    /// most significant digit.
    pub fn treatment_index(&self) -> usize {
        self.0.iter().fold(0usize, |acc, &l| (acc << 1) | l as usize)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            f.write_str(if l == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

/// A group of profiles shown together, with the mask of factors that vary in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceSet {
    profiles: Vec<Profile>,
    active: Vec<bool>,
}

impl ChoiceSet {
    pub fn new(profiles: Vec<Profile>, active: Vec<bool>) -> Result<Self> {
        if profiles.is_empty() {
            return Err(Error::Shape("choice set has no profiles".into()));
        }
        if let Some(p) = profiles.iter().find(|p| p.len() != active.len()) {
            return Err(Error::Shape(format!(
                "profile {p} has length {}, active mask has length {}",
                p.len(),
                active.len()
            )));
        }
        Ok(Self { profiles, active })
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn is_active(&self, factor: usize) -> bool {
        self.active[factor]
    }

    pub fn m(&self) -> usize {
        self.profiles.len()
    }

    pub fn n(&self) -> usize {
        self.active.len()
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Levels carried by the first profile at the inactive positions, in
    /// position order.
    pub fn fixed_levels(&self) -> Vec<u8> {
        let first = &self.profiles[0];
        (0..self.n())
            .filter(|&w| !self.active[w])
            .map(|w| first.level(w))
            .collect()
    }

    /// Profiles rendered with `*` on inactive positions.
    pub fn render(&self) -> Vec<String> {
        self.profiles
            .iter()
            .map(|p| {
                p.levels()
                    .iter()
                    .zip(&self.active)
                    .map(|(&l, &a)| match (a, l) {
                        (false, _) => '*',
                        (true, 0) => '0',
                        (true, _) => '1',
                    })
                    .collect()
            })
            .collect()
    }

    fn map_profiles(&self, f: impl Fn(&Profile) -> Profile) -> Self {
        Self {
            profiles: self.profiles.iter().map(f).collect(),
            active: self.active.clone(),
        }
    }
}

/// A partial-profile choice design `d(N, n, m, rho)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialDesign {
    params: DesignParams,
    sets: Vec<ChoiceSet>,
}

impl PartialDesign {
    /// Builds a design after checking that every set has `m` profiles of
    /// length `n`. `N` is taken from `sets.len()`.
    pub fn new(n: usize, m: usize, rho: usize, sets: Vec<ChoiceSet>) -> Result<Self> {
        let params = DesignParams::new(n, m, rho, sets.len())?;
        for (p, set) in sets.iter().enumerate() {
            if set.m() != m {
                return Err(Error::Shape(format!(
                    "choice set {} has {} profiles, expected {m}",
                    p + 1,
                    set.m()
                )));
            }
            if set.n() != n {
                return Err(Error::Shape(format!(
                    "choice set {} has {} factors, expected {n}",
                    p + 1,
                    set.n()
                )));
            }
        }
        Ok(Self { params, sets })
    }

    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn sets(&self) -> &[ChoiceSet] {
        &self.sets
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn rho(&self) -> usize {
        self.params.rho
    }

    pub fn n_sets(&self) -> usize {
        self.params.n_sets
    }

    /// Option matrix `A_i` (0-based `option`): row `p` is profile `option` of set `p`.
    pub fn option_matrix(&self, option: usize) -> Vec<&Profile> {
        self.sets.iter().map(|s| &s.profiles[option]).collect()
    }

    /// Every unordered pair of profiles within a set, as `(set, first, second)`.
    pub fn component_pairs(&self) -> impl Iterator<Item = (usize, &Profile, &Profile)> + '_ {
        self.sets.iter().enumerate().flat_map(|(p, set)| {
            let ps = &set.profiles;
            (0..ps.len()).flat_map(move |i| ((i + 1)..ps.len()).map(move |j| (p, &ps[i], &ps[j])))
        })
    }
}

/// The `N x n` matrix `X = A_1 - A_2` of a paired design.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl DifferenceMatrix {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::Shape("difference matrix must be non-empty".into()));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "difference matrix row {} has {} columns, expected {cols}",
                    r + 1,
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|v| !(-1..=1).contains(*v)) {
                return Err(Error::Shape(format!("difference matrix entry {v} outside {{-1, 0, 1}}")));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    /// Parses rows written over `1`, `0` and `u` (or `-`) for -1.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '1' | '+' => Ok(1),
                        '0' => Ok(0),
                        'u' | '-' => Ok(-1),
                        other => Err(Error::Shape(format!("invalid difference entry {other:?}"))),
                    })
                    .collect::<Result<Vec<i8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[i8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `X'X` in exact integer arithmetic, row-major `n x n`.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.cols;
        let mut g = vec![0i64; n * n];
        for r in 0..self.rows {
            let row = self.row(r);
            for h in 0..n {
                if row[h] == 0 {
                    continue;
                }
                for k in 0..n {
                    g[h * n + k] += (row[h] * row[k]) as i64;
                }
            }
        }
        g
    }

    /// True when `X'X = scale * I`.
    pub fn gram_is_scalar(&self, scale: i64) -> bool {
        let n = self.cols;
        self.gram()
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == if idx / n == idx % n { scale } else { 0 })
    }
}

/// Builds the paired design whose difference matrix is `x`.
///
/// `+1` becomes `(1, 0)`, `-1` becomes `(0, 1)` and `0` marks an inactive
/// factor carrying `fixed_level` in both profiles.
pub fn paired_design_from_difference(
    x: &DifferenceMatrix,
    params: DesignParams,
    fixed_level: u8,
) -> Result<PartialDesign> {
    if params.m != 2 {
        return Err(Error::NotPaired(params.m));
    }
    if fixed_level > 1 {
        return Err(Error::InvalidParams(format!("fixed level must be 0 or 1, got {fixed_level}")));
    }
    if x.rows() != params.n_sets || x.cols() != params.n {
        return Err(Error::Shape(format!(
            "difference matrix is {}x{}, parameters require {}x{}",
            x.rows(),
            x.cols(),
            params.n_sets,
            params.n
        )));
    }
    let mut sets = Vec::with_capacity(x.rows());
    for r in 0..x.rows() {
        let row = x.row(r);
        let nonzero = row.iter().filter(|&&v| v != 0).count();
        if nonzero != params.rho {
            return Err(Error::MalformedDifference { row: r + 1, found: nonzero, expected: params.rho });
        }
        let mut first = Vec::with_capacity(row.len());
        let mut second = Vec::with_capacity(row.len());
        for &v in row {
            let (a, b) = match v {
                1 => (1, 0),
                -1 => (0, 1),
                _ => (fixed_level, fixed_level),
            };
            first.push(a);
            second.push(b);
        }
        let active = row.iter().map(|&v| v != 0).collect();
        sets.push(ChoiceSet::new(vec![Profile(first), Profile(second)], active)?);
    }
    PartialDesign::new(params.n, 2, params.rho, sets)
}

/// `X = A_1 - A_2`, with zeros on inactive positions.
pub fn difference_from_paired_design(d: &PartialDesign) -> Result<DifferenceMatrix> {
    if d.m() != 2 {
        return Err(Error::NotPaired(d.m()));
    }
    let rows = d
        .sets()
        .iter()
        .map(|set| {
            let (a, b) = (&set.profiles[0], &set.profiles[1]);
            (0..d.n())
                .map(|r| if set.active[r] { a.level(r) as i8 - b.level(r) as i8 } else { 0 })
                .collect()
        })
        .collect();
    DifferenceMatrix::new(rows)
}

/// Interchanges 0 and 1 everywhere, inactive positions included.
pub fn complement(d: &PartialDesign) -> PartialDesign {
    PartialDesign {
        params: d.params,
        sets: d.sets.iter().map(|s| s.map_profiles(Profile::complement)).collect(),
    }
}

/// Concatenates the choice sets of two designs over the same `(n, m, rho)`.
pub fn stack(d1: &PartialDesign, d2: &PartialDesign) -> Result<PartialDesign> {
    let (a, b) = (d1.params, d2.params);
    if (a.n, a.m, a.rho) != (b.n, b.m, b.rho) {
        return Err(Error::ParamMismatch(format!(
            "cannot stack (n, m, rho) = ({}, {}, {}) with ({}, {}, {})",
            a.n, a.m, a.rho, b.n, b.m, b.rho
        )));
    }
    let sets = d1.sets.iter().chain(&d2.sets).cloned().collect();
    PartialDesign::new(a.n, a.m, a.rho, sets)
}

/// `A_i -> I_t (x) A_i`: block `b` repeats the sets of `d` on factors
/// `b n .. (b + 1) n`, every other factor inactive at `fixed_level`.
pub fn kronecker_inflate(d: &PartialDesign, t: usize, fixed_level: u8) -> Result<PartialDesign> {
    if fixed_level > 1 {
        return Err(Error::InvalidParams(format!("fixed level must be 0 or 1, got {fixed_level}")));
    }
    inflate_with(d, t, |_| fixed_level)
}

/// Kronecker inflation for a design of the form `stack(e, complement(e))`.
///
/// Sets from the first half are padded with 0 and sets from the second half
/// with 1, so the result equals `stack(I_t (x) e, complement(I_t (x) e))` up
/// to set order.
pub fn kronecker_inflate_balanced(d: &PartialDesign, t: usize) -> Result<PartialDesign> {
    let half = d.n_sets() / 2;
    let mirrored = d.n_sets().is_multiple_of(2)
        && (0..half).all(|p| d.sets[p].map_profiles(Profile::complement) == d.sets[p + half]);
    if !mirrored {
        return Err(Error::InvalidParams(
            "balanced inflation needs a design stacked over its own complement".into(),
        ));
    }
    inflate_with(d, t, |p| u8::from(p >= half))
}

fn inflate_with(d: &PartialDesign, t: usize, fill: impl Fn(usize) -> u8) -> Result<PartialDesign> {
    if t == 0 {
        return Err(Error::InvalidParams("inflation factor t must be at least 1".into()));
    }
    let n = d.n();
    let mut sets = Vec::with_capacity(d.n_sets() * t);
    for block in 0..t {
        for (p, set) in d.sets.iter().enumerate() {
            let pad = fill(p);
            let mut active = vec![false; n * t];
            active[block * n..(block + 1) * n].copy_from_slice(&set.active);
            let profiles = set
                .profiles
                .iter()
                .map(|prof| {
                    let mut levels = vec![pad; n * t];
                    levels[block * n..(block + 1) * n].copy_from_slice(prof.levels());
                    Profile(levels)
                })
                .collect();
            sets.push(ChoiceSet { profiles, active });
        }
    }
    PartialDesign::new(n * t, d.m(), d.rho(), sets)
}

/// One breach of a choice-set invariant. Set and position indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ActiveCount { set: usize, found: usize, expected: usize },
    InactiveNotConstant { set: usize, position: usize },
    DuplicateProfiles { set: usize, first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ActiveCount { set, found, expected } => {
                write!(f, "set {set}: {found} active factors, expected {expected}")
            }
            Self::InactiveNotConstant { set, position } => {
                write!(f, "set {set}: inactive factor {position} is not constant")
            }
            Self::DuplicateProfiles { set, first, second } => {
                write!(f, "set {set}: profiles {first} and {second} are identical")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// 1-based indices of sets holding repeated profiles.
    pub fn duplicate_sets(&self) -> Vec<usize> {
        let mut sets: Vec<usize> = self
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::DuplicateProfiles { set, .. } => Some(*set),
                _ => None,
            })
            .collect();
        sets.dedup();
        sets
    }
}

/// Checks mask cardinality, constancy on inactive positions and profile
/// distinctness for every set.
pub fn validate_structure(d: &PartialDesign) -> ValidationReport {
    let mut violations = Vec::new();
    for (p, set) in d.sets.iter().enumerate() {
        let found = set.active_count();
        if found != d.rho() {
            violations.push(Violation::ActiveCount { set: p + 1, found, expected: d.rho() });
        }
        for w in (0..d.n()).filter(|&w| !set.active[w]) {
            let level = set.profiles[0].level(w);
            if set.profiles.iter().any(|prof| prof.level(w) != level) {
                violations.push(Violation::InactiveNotConstant { set: p + 1, position: w + 1 });
            }
        }
        for i in 0..set.m() {
            for j in (i + 1)..set.m() {
                if set.profiles[i] == set.profiles[j] {
                    violations.push(Violation::DuplicateProfiles { set: p + 1, first: i + 1, second: j + 1 });
                }
            }
        }
    }
    ValidationReport { violations }
}
