//! The plain-text design file.
//!
//! ```text
//! # comment
//! n 8
//! m 2
//! rho 5
//! N 8
//! model main
//! fixed 0
//! sets
//! 11111*** 00000*** | 000
//! 1010*1** 0101*0** | 000
//! ...
//! end
//! certificate
//! status PASS
//! ...
//! end
//! ```
//!
//! Header keys may appear in any order; `model` defaults to `main` and
//! `fixed` to `0`. Each set line lists its `m` profiles over `{0, 1, *}`,
//! then optionally `|` and the levels held by the `*` columns, left to
//! right. Without `|` every `*` column takes the `fixed` level. The
//! certificate block is informational and is recomputed by `verify`.

use std::fmt::{self, Write as _};

use partial_profile::design::{ChoiceSet, PartialDesign, Profile};
use partial_profile::verify::{Model, OptimalityCertificate};

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFile {
    pub n: usize,
    pub m: usize,
    pub rho: usize,
    pub model: Model,
    pub fixed_level: u8,
    pub sets: Vec<ChoiceSet>,
    /// `key value` lines of a stored certificate, if any.
    pub certificate: Option<Vec<(String, String)>>,
}

impl DesignFile {
    pub fn from_design(d: &PartialDesign, model: Model, fixed_level: u8) -> Self {
        Self {
            n: d.n(),
            m: d.m(),
            rho: d.rho(),
            model,
            fixed_level,
            sets: d.sets().to_vec(),
            certificate: None,
        }
    }

    pub fn with_certificate(mut self, cert: &OptimalityCertificate) -> Self {
        self.certificate = Some(cert.summary());
        self
    }

    /// The design proper; fails for a file without choice sets.
    pub fn design(&self) -> partial_profile::Result<PartialDesign> {
        PartialDesign::new(self.n, self.m, self.rho, self.sets.clone())
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Parser::default().run(text)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "m {}", self.m);
        let _ = writeln!(out, "rho {}", self.rho);
        let _ = writeln!(out, "N {}", self.sets.len());
        let _ = writeln!(out, "model {}", self.model);
        let _ = writeln!(out, "fixed {}", self.fixed_level);
        out.push_str("sets\n");
        for set in &self.sets {
            out.push_str(&set.render().join(" "));
            let levels: String = set.fixed_levels().iter().map(|l| char::from(b'0' + l)).collect();
            if !levels.is_empty() {
                let _ = write!(out, " | {levels}");
            }
            out.push('\n');
        }
        out.push_str("end\n");
        if let Some(cert) = &self.certificate {
            out.push_str("certificate\n");
            for (k, v) in cert {
                let _ = writeln!(out, "{k} {v}");
            }
            out.push_str("end\n");
        }
        out
    }
}

impl fmt::Display for DesignFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Default)]
struct Parser {
    n: Option<usize>,
    m: Option<usize>,
    rho: Option<usize>,
    n_sets: Option<(usize, usize)>,
    model: Option<Model>,
    fixed: Option<u8>,
}

enum Section {
    Header,
    Sets,
    Certificate,
    Done,
}

fn column_of(line: &str, token: &str) -> usize {
    let offset = token.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

impl Parser {
    fn run(mut self, text: &str) -> Result<DesignFile, FormatError> {
        let mut section = Section::Header;
        let mut raw_sets: Vec<(usize, &str)> = Vec::new();
        let mut certificate: Option<Vec<(String, String)>> = None;
        let mut last_line = 0;

        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match section {
                Section::Header => {
                    if trimmed == "sets" {
                        section = Section::Sets;
                        continue;
                    }
                    self.header_line(lineno, line)?;
                }
                Section::Sets => {
                    if trimmed == "end" {
                        section = Section::Done;
                    } else {
                        raw_sets.push((lineno, line));
                    }
                }
                Section::Done => {
                    if trimmed == "certificate" && certificate.is_none() {
                        certificate = Some(Vec::new());
                        section = Section::Certificate;
                    } else {
                        let col = column_of(line, trimmed);
                        return Err(FormatError::new(lineno, col, format!("unexpected {trimmed:?} after the sets block")));
                    }
                }
                Section::Certificate => {
                    if trimmed == "end" {
                        section = Section::Done;
                    } else {
                        let (k, v) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
                        certificate.get_or_insert_with(Vec::new).push((k.to_string(), v.trim().to_string()));
                    }
                }
            }
        }
        match section {
            Section::Done => {}
            Section::Header => return Err(FormatError::new(last_line + 1, 1, "missing \"sets\" block")),
            Section::Sets | Section::Certificate => {
                return Err(FormatError::new(last_line + 1, 1, "missing \"end\""))
            }
        }

        let header_err = |key: &str| FormatError::new(1, 1, format!("missing header key {key:?}"));
        let n = self.n.ok_or_else(|| header_err("n"))?;
        let m = self.m.ok_or_else(|| header_err("m"))?;
        let rho = self.rho.ok_or_else(|| header_err("rho"))?;
        let (n_sets, n_line) = self.n_sets.ok_or_else(|| header_err("N"))?;
        if n_sets != raw_sets.len() {
            return Err(FormatError::new(
                n_line,
                1,
                format!("header declares N = {n_sets} but the file has {} choice sets", raw_sets.len()),
            ));
        }
        let fixed = self.fixed.unwrap_or(0);
        let sets = raw_sets
            .into_iter()
            .map(|(lineno, line)| parse_set(lineno, line, n, m, fixed))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DesignFile { n, m, rho, model: self.model.unwrap_or(Model::Main), fixed_level: fixed, sets, certificate })
    }

    fn header_line(&mut self, lineno: usize, line: &str) -> Result<(), FormatError> {
        let mut tokens = line.split_whitespace();
        let key = tokens.next().expect("line is not blank");
        let value = tokens
            .next()
            .ok_or_else(|| FormatError::new(lineno, column_of(line, key), format!("header key {key:?} has no value")))?;
        if let Some(extra) = tokens.next() {
            return Err(FormatError::new(lineno, column_of(line, extra), format!("unexpected {extra:?}")));
        }
        let col = column_of(line, value);
        let number = || {
            value
                .parse::<usize>()
                .map_err(|_| FormatError::new(lineno, col, format!("{key} must be a non-negative integer, got {value:?}")))
        };
        let duplicate = || FormatError::new(lineno, 1, format!("header key {key:?} given twice"));
        match key {
            "n" => {
                let v = number()?;
                if v == 0 {
                    return Err(FormatError::new(lineno, col, "n must be positive"));
                }
                self.n.replace(v).map_or(Ok(()), |_| Err(duplicate()))
            }
            "m" => {
                let v = number()?;
                if v < 2 {
                    return Err(FormatError::new(lineno, col, "m must be at least 2"));
                }
                self.m.replace(v).map_or(Ok(()), |_| Err(duplicate()))
            }
            "rho" => {
                let v = number()?;
                if v == 0 {
                    return Err(FormatError::new(lineno, col, "rho must be positive"));
                }
                self.rho.replace(v).map_or(Ok(()), |_| Err(duplicate()))
            }
            "N" => {
                let v = number()?;
                self.n_sets.replace((v, lineno)).map_or(Ok(()), |_| Err(duplicate()))
            }
            "model" => {
                let v: Model = value.parse().map_err(|e: String| FormatError::new(lineno, col, e))?;
                self.model.replace(v).map_or(Ok(()), |_| Err(duplicate()))
            }
            "fixed" => {
                let v = match value {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(FormatError::new(lineno, col, format!("fixed must be 0 or 1, got {value:?}"))),
                };
                self.fixed.replace(v).map_or(Ok(()), |_| Err(duplicate()))
            }
            other => Err(FormatError::new(lineno, column_of(line, other), format!("unknown header key {other:?}"))),
        }
    }
}

fn parse_set(lineno: usize, line: &str, n: usize, m: usize, fixed: u8) -> Result<ChoiceSet, FormatError> {
    let (profiles_part, levels_part) = match line.split_once('|') {
        Some((a, b)) => (a, Some(b)),
        None => (line, None),
    };
    let tokens: Vec<&str> = profiles_part.split_whitespace().collect();
    if tokens.len() != m {
        let col = tokens.get(m).map_or(1, |t| column_of(line, t));
        return Err(FormatError::new(lineno, col, format!("expected {m} profiles, found {}", tokens.len())));
    }

    let mut active: Option<Vec<bool>> = None;
    for token in &tokens {
        if token.chars().count() != n {
            return Err(FormatError::new(
                lineno,
                column_of(line, token),
                format!("profile {token:?} has {} positions, expected {n}", token.chars().count()),
            ));
        }
        for (i, c) in token.chars().enumerate() {
            if !matches!(c, '0' | '1' | '*') {
                return Err(FormatError::new(lineno, column_of(line, token) + i, format!("invalid level {c:?}")));
            }
        }
        let mask: Vec<bool> = token.chars().map(|c| c != '*').collect();
        match &active {
            None => active = Some(mask),
            Some(first) => {
                if let Some(i) = (0..n).find(|&i| first[i] != mask[i]) {
                    return Err(FormatError::new(
                        lineno,
                        column_of(line, token) + i,
                        "'*' positions differ between profiles of one set",
                    ));
                }
            }
        }
    }
    let active = active.expect("m >= 2 profiles");
    let inactive = active.iter().filter(|a| !**a).count();

    let levels: Vec<u8> = match levels_part {
        None => vec![fixed; inactive],
        Some(part) => {
            let token = part.trim();
            let start = column_of(line, part) + (part.len() - part.trim_start().len());
            if token.chars().count() != inactive || token.contains(char::is_whitespace) {
                return Err(FormatError::new(
                    lineno,
                    start,
                    format!("expected {inactive} levels for the '*' columns, found {token:?}"),
                ));
            }
            token
                .chars()
                .enumerate()
                .map(|(i, c)| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(FormatError::new(lineno, start + i, format!("invalid level {other:?}"))),
                })
                .collect::<Result<_, _>>()?
        }
    };

    let profiles = tokens
        .iter()
        .map(|token| {
            let mut fill = levels.iter();
            let bits = token
                .chars()
                .map(|c| match c {
                    '1' => 1,
                    '0' => 0,
                    _ => *fill.next().expect("one level per '*' column"),
                })
                .collect();
            Profile::new(bits).expect("levels are binary")
        })
        .collect();
    ChoiceSet::new(profiles, active).map_err(|e| FormatError::new(lineno, 1, e.to_string()))
}
