//! Hadamard and weighing matrices.
//!
//! Hadamard matrices are generated (Sylvester doubling, Paley type I for
//! primes `q = 3 mod 4`, Kronecker products). Weighing matrices come from a
//! literal catalog shipped in `catalog/weighing.txt` plus a few generative
//! families (identity, block-diagonal `H_2`, Hadamard). Every matrix is checked
//! for `W W' = W' W = rho I` before it is handed out.
//!
//! Availability is relative to this catalog: "not available" means the
//! catalog holds no such matrix, not that none exists.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("catalog/weighing.txt");

/// A square matrix over `{-1, 0, +1}` with `W W' = W' W = weight * I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeighingMatrix {
    order: usize,
    weight: usize,
    entries: Vec<i8>,
}

impl WeighingMatrix {
    /// Verifies the entries (row-major) and builds the matrix.
    pub fn new(order: usize, weight: usize, entries: Vec<i8>) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::InvalidMatrix(format!(
                "{} entries do not form a square matrix of order {order}",
                entries.len()
            )));
        }
        if entries.iter().any(|v| !(-1..=1).contains(v)) {
            return Err(Error::InvalidMatrix("entries must lie in {-1, 0, 1}".into()));
        }
        let w = Self { order, weight, entries };
        for i in 0..order {
            for j in 0..order {
                let expected = if i == j { weight as i64 } else { 0 };
                let rows: i64 = (0..order).map(|k| (w.get(i, k) * w.get(j, k)) as i64).sum();
                let cols: i64 = (0..order).map(|k| (w.get(k, i) * w.get(k, j)) as i64).sum();
                if rows != expected || cols != expected {
                    return Err(Error::InvalidMatrix(format!(
                        "W W' or W' W differs from {weight} I at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(w)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_hadamard(&self) -> bool {
        self.order == self.weight
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.order + c]
    }

    pub fn row(&self, r: usize) -> &[i8] {
        &self.entries[r * self.order..(r + 1) * self.order]
    }

    pub fn column(&self, c: usize) -> Vec<i8> {
        (0..self.order).map(|r| self.get(r, c)).collect()
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1;
        }
        Self { order, weight: 1, entries }
    }

    /// `diag(parts[0], parts[1], ...)`; all parts must share one weight.
    pub fn block_diagonal(parts: &[&WeighingMatrix]) -> Result<Self> {
        let weight = parts.first().map(|p| p.weight).ok_or_else(|| {
            Error::InvalidMatrix("block-diagonal composition needs at least one block".into())
        })?;
        if parts.iter().any(|p| p.weight != weight) {
            return Err(Error::InvalidMatrix("blocks have different weights".into()));
        }
        let order: usize = parts.iter().map(|p| p.order).sum();
        let mut entries = vec![0; order * order];
        let mut offset = 0;
        for p in parts {
            for r in 0..p.order {
                for c in 0..p.order {
                    entries[(offset + r) * order + offset + c] = p.get(r, c);
                }
            }
            offset += p.order;
        }
        Self::new(order, weight, entries)
    }

    /// Kronecker product `a (x) b`.
    pub fn kronecker(a: &WeighingMatrix, b: &WeighingMatrix) -> Result<Self> {
        let order = a.order * b.order;
        let mut entries = vec![0; order * order];
        for (i, j) in (0..a.order).flat_map(|i| (0..a.order).map(move |j| (i, j))) {
            let s = a.get(i, j);
            for r in 0..b.order {
                for c in 0..b.order {
                    entries[(i * b.order + r) * order + j * b.order + c] = s * b.get(r, c);
                }
            }
        }
        Self::new(order, a.weight * b.weight, entries)
    }
}

impl fmt::Display for WeighingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.order {
            let line: String = self
                .row(r)
                .iter()
                .map(|&v| match v {
                    1 => '+',
                    -1 => '-',
                    _ => '0',
                })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub matrix: WeighingMatrix,
    pub provenance: String,
}

impl CatalogEntry {
    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn weight(&self) -> usize {
        self.matrix.weight()
    }
}

/// An immutable, verified collection of literal weighing matrices together
/// with the generative constructions.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Parses catalog text. Any malformed or unverifiable record rejects the
    /// whole catalog; the error names the line of the offending record.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        while let Some((lineno, header)) = lines.next() {
            let bad = |msg: String| Error::InvalidMatrix(format!("catalog line {lineno}: {msg}"));
            let mut parts = header.splitn(4, ' ');
            if parts.next() != Some("W") {
                return Err(bad(format!("expected a record header, found {header:?}")));
            }
            let order: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("missing or invalid order".into()))?;
            let weight: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("missing or invalid weight".into()))?;
            let provenance = parts.next().unwrap_or("").trim().to_string();
            let mut data = Vec::with_capacity(order * order);
            for _ in 0..order {
                let (rowno, row) = lines.next().ok_or_else(|| bad("record ends early".into()))?;
                if row.chars().count() != order {
                    return Err(bad(format!("row on line {rowno} does not have {order} entries")));
                }
                for c in row.chars() {
                    data.push(match c {
                        '+' => 1,
                        '-' => -1,
                        '0' => 0,
                        other => return Err(bad(format!("invalid entry {other:?} on line {rowno}"))),
                    });
                }
            }
            let matrix = WeighingMatrix::new(order, weight, data).map_err(|e| bad(e.to_string()))?;
            entries.push(CatalogEntry { matrix, provenance });
        }
        Ok(Self { entries })
    }

    /// The catalog compiled into the crate.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("builtin weighing catalog failed verification"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    fn literal(&self, order: usize, weight: usize) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.order() == order && e.weight() == weight)
    }

    /// `H_r`, when one of the constructions or the literal catalog provides it.
    pub fn hadamard(&self, r: usize) -> Option<WeighingMatrix> {
        match r {
            0 => return None,
            1 => return Some(WeighingMatrix::identity(1)),
            2 => return WeighingMatrix::new(2, 2, vec![1, 1, 1, -1]).ok(),
            _ => {}
        }
        if r.is_multiple_of(2) {
            if let Some(half) = self.hadamard(r / 2) {
                let h2 = self.hadamard(2)?;
                return WeighingMatrix::kronecker(&h2, &half).ok();
            }
        }
        if r.is_multiple_of(4) && is_prime(r - 1) {
            return paley(r - 1).ok();
        }
        for a in (3..r).take_while(|a| a * a <= r).filter(|a| r.is_multiple_of(*a)) {
            if let (Some(x), Some(y)) = (self.hadamard(a), self.hadamard(r / a)) {
                return WeighingMatrix::kronecker(&x, &y).ok();
            }
        }
        self.literal(r, r).map(|e| e.matrix.clone())
    }

    /// `W(n, rho)`, or `None` when the catalog holds no such matrix.
    pub fn weighing(&self, n: usize, rho: usize) -> Result<Option<WeighingMatrix>> {
        if rho == 0 || rho > n {
            return Err(Error::InvalidQuery(format!("no weighing matrix of order {n} and weight {rho}")));
        }
        if rho == n {
            return Ok(self.hadamard(n));
        }
        if rho == 1 {
            return Ok(Some(WeighingMatrix::identity(n)));
        }
        if rho == 2 && n.is_multiple_of(2) {
            let h2 = self.hadamard(2).expect("H_2 is always available");
            let blocks = vec![&h2; n / 2];
            return WeighingMatrix::block_diagonal(&blocks).map(Some);
        }
        Ok(self.literal(n, rho).map(|e| e.matrix.clone()))
    }

    /// Least `r >= rho` with `H_r` available.
    pub fn h_of(&self, rho: usize) -> usize {
        // powers of two always terminate the search
        (rho.max(1)..).find(|&r| self.hadamard(r).is_some()).expect("Sylvester orders are unbounded")
    }

    /// Orders `nu <= n_max` with `W(nu, rho)` available, ascending.
    pub fn smallest_weighing_orders(&self, rho: usize, n_max: usize) -> Vec<usize> {
        if rho == 0 {
            return Vec::new();
        }
        (rho..=n_max)
            .filter(|&nu| matches!(self.weighing(nu, rho), Ok(Some(_))))
            .collect()
    }
}

/// Paley type I: `H = I + S` with `S` the skew core built from quadratic
/// residues modulo a prime `q = 3 (mod 4)`.
fn paley(q: usize) -> Result<WeighingMatrix> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidQuery(format!("Paley type I needs a prime q = 3 mod 4, got {q}")));
    }
    let chi = |a: usize| -> i8 {
        let a = a % q;
        if a == 0 {
            0
        } else if (1..q).any(|x| x * x % q == a) {
            1
        } else {
            -1
        }
    };
    let order = q + 1;
    let mut entries = vec![0i8; order * order];
    for i in 0..order {
        for j in 0..order {
            let s = match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => chi(j + q - i),
            };
            entries[i * order + j] = s + i8::from(i == j);
        }
    }
    WeighingMatrix::new(order, order, entries)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// `H_r` from the builtin catalog.
pub fn hadamard(r: usize) -> Option<WeighingMatrix> {
    Catalog::builtin().hadamard(r)
}

/// `W(n, rho)` from the builtin catalog.
pub fn weighing(n: usize, rho: usize) -> Result<Option<WeighingMatrix>> {
    Catalog::builtin().weighing(n, rho)
}

/// Least Hadamard order not below `rho`.
pub fn h_of(rho: usize) -> usize {
    Catalog::builtin().h_of(rho)
}

pub fn smallest_weighing_orders(rho: usize, n_max: usize) -> Vec<usize> {
    Catalog::builtin().smallest_weighing_orders(rho, n_max)
}
