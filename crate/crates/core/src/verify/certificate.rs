//! Optimality certificates built from the component-pair tallies.

use std::fmt;

use num_rational::Ratio;

use crate::design::PartialDesign;
use crate::verify::counts::{c_matrix_from_counts, tally_counts, BalanceCounts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// All interactions assumed zero.
    Main,
    /// Two-factor interactions present, main effects of interest.
    Broader,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Main => "main",
            Model::Broader => "broader",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "main" => Ok(Model::Main),
            "broader" => Ok(Model::Broader),
            other => Err(format!("unknown model {other:?}, expected \"main\" or \"broader\"")),
        }
    }
}

/// An unbalanced factor pair. Indices are 0-based; `Display` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairImbalance {
    pub h: usize,
    pub k: usize,
    pub plus: u64,
    pub minus: u64,
}

/// An unbalanced `(h, {k, l})` triple, `k < l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleImbalance {
    pub h: usize,
    pub k: usize,
    pub l: usize,
    pub plus: u64,
    pub minus: u64,
}

/// An active factor whose zero count in a set misses the trace-maximizing value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelImbalance {
    pub set: usize,
    pub factor: usize,
    pub zeros: usize,
}

/// Evidence that a design meets (or misses) the optimality conditions:
/// diagonal `C`, maximal trace, and for the broader model a null
/// `B1 Lambda B2'`. Every failing tuple is listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityCertificate {
    pub model: Model,
    pub passed: bool,
    pub eta1_failures: Vec<PairImbalance>,
    pub level_failures: Vec<LevelImbalance>,
    /// `trace(C)` numerator over `2^n N m^2`.
    pub trace_numerator: i64,
    /// Numerator of the largest attainable trace over the same denominator.
    pub trace_bound_numerator: i64,
    pub connected: bool,
    pub eta2_failures: Vec<PairImbalance>,
    pub eta3_failures: Vec<TripleImbalance>,
    pub n: usize,
    pub m: usize,
    pub n_sets: usize,
}

impl OptimalityCertificate {
    pub fn diagonal(&self) -> bool {
        self.eta1_failures.is_empty()
    }

    pub fn trace_is_maximal(&self) -> bool {
        self.trace_numerator == self.trace_bound_numerator
    }

    pub fn interactions_orthogonal(&self) -> bool {
        self.eta2_failures.is_empty() && self.eta3_failures.is_empty()
    }

    fn ratio(&self, numerator: i64) -> Option<Ratio<i128>> {
        let den = 1i128
            .checked_shl(self.n as u32)
            .filter(|_| self.n < 120)?
            .checked_mul((self.n_sets * self.m * self.m) as i128)?;
        Some(Ratio::new(numerator as i128, den))
    }

    pub fn trace(&self) -> Option<Ratio<i128>> {
        self.ratio(self.trace_numerator)
    }

    pub fn trace_bound(&self) -> Option<Ratio<i128>> {
        self.ratio(self.trace_bound_numerator)
    }

    /// Summary lines in `key value` form.
    pub fn summary(&self) -> Vec<(String, String)> {
        let verdict = |ok: bool| if ok { "ok".to_string() } else { "FAIL".to_string() };
        let show = |r: Option<Ratio<i128>>, num: i64| match r {
            Some(r) => r.to_string(),
            None => format!("{num}/(2^{} * {} * {}^2)", self.n, self.n_sets, self.m),
        };
        let mut lines = vec![
            ("model".into(), self.model.to_string()),
            ("status".into(), if self.passed { "PASS".into() } else { "FAIL".into() }),
            ("diagonal".into(), verdict(self.diagonal())),
            ("level-balance".into(), verdict(self.level_failures.is_empty())),
            ("trace".into(), show(self.trace(), self.trace_numerator)),
            ("trace-bound".into(), show(self.trace_bound(), self.trace_bound_numerator)),
            ("connected".into(), if self.connected { "yes".into() } else { "no".into() }),
        ];
        if self.model == Model::Broader {
            lines.push(("eta2-balance".into(), verdict(self.eta2_failures.is_empty())));
            lines.push(("eta3-balance".into(), verdict(self.eta3_failures.is_empty())));
        }
        lines
    }
}

impl fmt::Display for PairImbalance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): plus {} minus {}", self.h + 1, self.k + 1, self.plus, self.minus)
    }
}

impl fmt::Display for TripleImbalance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {{{}, {}}}): plus {} minus {}",
            self.h + 1,
            self.k + 1,
            self.l + 1,
            self.plus,
            self.minus
        )
    }
}

impl fmt::Display for LevelImbalance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "set {} factor {}: {} zeros", self.set + 1, self.factor + 1, self.zeros)
    }
}

impl fmt::Display for OptimalityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.summary() {
            writeln!(f, "{k:<14} {v}")?;
        }
        for e in &self.eta1_failures {
            writeln!(f, "unbalanced eta1 {e}")?;
        }
        for e in &self.level_failures {
            writeln!(f, "unbalanced levels {e}")?;
        }
        for e in &self.eta2_failures {
            writeln!(f, "unbalanced eta2 {e}")?;
        }
        for e in &self.eta3_failures {
            writeln!(f, "unbalanced eta3 {e}")?;
        }
        Ok(())
    }
}

/// Certifies `d` under `model` using the counting engine.
pub fn certify(d: &PartialDesign, model: Model) -> OptimalityCertificate {
    certify_counts(&tally_counts(d), d, model)
}

/// Same as [`certify`] for tallies that were already computed.
pub fn certify_counts(counts: &BalanceCounts, d: &PartialDesign, model: Model) -> OptimalityCertificate {
    let (n, m, rho, n_sets) = (d.n(), d.m(), d.rho(), d.n_sets());

    let mut eta1_failures = Vec::new();
    for h in 0..n {
        for k in (h + 1)..n {
            let (plus, minus) = counts.eta1(h, k);
            if plus != minus {
                eta1_failures.push(PairImbalance { h, k, plus, minus });
            }
        }
    }

    let mut level_failures = Vec::new();
    for (p, set) in d.sets().iter().enumerate() {
        for h in (0..n).filter(|&h| set.is_active(h)) {
            let zeros = counts.zeros(p, h);
            let ok = if m % 2 == 0 { 2 * zeros == m } else { 2 * zeros + 1 == m || 2 * zeros == m + 1 };
            if !ok {
                level_failures.push(LevelImbalance { set: p, factor: h, zeros });
            }
        }
    }

    let c = c_matrix_from_counts(counts);
    let trace_numerator = c.trace_numerator();
    // per active factor and set: 4 n_ph (m - n_ph) at most m^2 (even) or m^2 - 1 (odd)
    let per_factor = if m % 2 == 0 { m * m } else { m * m - 1 } as i64;
    let trace_bound_numerator = (n_sets * rho) as i64 * per_factor;
    let connected = c.is_diagonal() && (0..n).all(|h| c.numerator(h, h) > 0);

    let mut eta2_failures = Vec::new();
    let mut eta3_failures = Vec::new();
    if model == Model::Broader {
        for h in 0..n {
            for k in (0..n).filter(|&k| k != h) {
                let (plus, minus) = counts.eta2(h, k);
                if plus != minus {
                    eta2_failures.push(PairImbalance { h, k, plus, minus });
                }
            }
            for k in 0..n {
                for l in (k + 1)..n {
                    if k == h || l == h {
                        continue;
                    }
                    let (plus, minus) = counts.eta3(h, k, l);
                    if plus != minus {
                        eta3_failures.push(TripleImbalance { h, k, l, plus, minus });
                    }
                }
            }
        }
    }

    let passed = eta1_failures.is_empty()
        && level_failures.is_empty()
        && trace_numerator == trace_bound_numerator
        && connected
        && eta2_failures.is_empty()
        && eta3_failures.is_empty();

    OptimalityCertificate {
        model,
        passed,
        eta1_failures,
        level_failures,
        trace_numerator,
        trace_bound_numerator,
        connected,
        eta2_failures,
        eta3_failures,
        n,
        m,
        n_sets,
    }
}
