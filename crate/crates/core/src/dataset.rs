//! Discrete sample storage, CSV ingestion and empirical probability queries.
//!
//! Samples are stored column-major as alphabet indices. Ingestion handles the
//! voting-record style pipeline: optional participation filtering on a
//! missing-value token, then ordered token remapping, then alphabet inference.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::contingency::{bits_per_symbol, check_key_width, Contingency};
use crate::error::{Error, Result};

/// Finite, ordered set of symbols with a token-to-index lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, u16>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::argument(format!(
                "an alphabet needs at least two symbols, got {symbols:?}"
            )));
        }
        if symbols.len() > usize::from(u16::MAX) {
            return Err(Error::Capacity(format!(
                "alphabet of {} symbols",
                symbols.len()
            )));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i as u16).is_some() {
                return Err(Error::argument(format!("duplicate alphabet symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// The `{0, 1}` alphabet written as `-1`, `+1`: index 0 is spin -1.
    pub fn spins() -> Self {
        Alphabet::new(["-1", "+1"]).expect("two distinct symbols")
    }

    /// Alphabet `0..size` written as decimal integers.
    pub fn numeric(size: usize) -> Result<Self> {
        Alphabet::new((0..size).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, idx: u16) -> Option<&str> {
        self.symbols.get(usize::from(idx)).map(String::as_str)
    }

    pub fn index_of(&self, token: &str) -> Option<u16> {
        self.index.get(token).copied()
    }

    pub fn bits_per_symbol(&self) -> u32 {
        bits_per_symbol(self.len())
    }
}

/// A partial assignment `x_A`: distinct variables in ascending order with one
/// alphabet index each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    vars: Vec<usize>,
    vals: Vec<u16>,
}

impl Assignment {
    pub fn empty() -> Self {
        Assignment {
            vars: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Builds an assignment from `(variable, value)` pairs in any order.
    pub fn new(pairs: impl IntoIterator<Item = (usize, u16)>) -> Result<Self> {
        let mut pairs: Vec<(usize, u16)> = pairs.into_iter().collect();
        pairs.sort_unstable_by_key(|(v, _)| *v);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::argument("assignment repeats a variable"));
        }
        let (vars, vals) = pairs.into_iter().unzip();
        Ok(Assignment { vars, vals })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn vals(&self) -> &[u16] {
        &self.vals
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// `n` samples of `p` discrete variables over a shared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDataset {
    names: Vec<String>,
    alphabet: Alphabet,
    columns: Vec<Vec<u16>>,
    n: usize,
}

impl DiscreteDataset {
    /// Builds a dataset from row-major alphabet indices.
    pub fn from_rows(names: Vec<String>, alphabet: Alphabet, rows: &[Vec<u16>]) -> Result<Self> {
        let p = names.len();
        let mut columns = vec![Vec::with_capacity(rows.len()); p];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(Error::Parse {
                    row: r + 1,
                    message: format!("expected {p} values, found {}", row.len()),
                });
            }
            for (c, v) in row.iter().enumerate() {
                columns[c].push(*v);
            }
        }
        Self::from_columns(names, alphabet, columns)
    }

    /// Builds a dataset from column-major alphabet indices.
    pub fn from_columns(
        names: Vec<String>,
        alphabet: Alphabet,
        columns: Vec<Vec<u16>>,
    ) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::argument(format!(
                "{} names for {} columns",
                names.len(),
                columns.len()
            )));
        }
        if columns.is_empty() {
            return Err(Error::EmptyDataset("no variables".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::argument(format!("duplicate variable name {name:?}")));
            }
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(Error::EmptyDataset("no samples".into()));
        }
        let k = alphabet.len() as u16;
        for (c, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::argument(format!(
                    "column {c} has {} samples, expected {n}",
                    col.len()
                )));
            }
            if let Some(v) = col.iter().find(|v| **v >= k) {
                return Err(Error::Domain {
                    token: format!("index {v} in column {c}"),
                });
            }
        }
        Ok(DiscreteDataset {
            names,
            alphabet,
            columns,
            n,
        })
    }

    /// Default variable labels `X0, X1, ...`.
    pub fn default_names(p: usize) -> Vec<String> {
        (0..p).map(|i| format!("X{i}")).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.columns.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn column(&self, var: usize) -> &[u16] {
        &self.columns[var]
    }

    pub fn value(&self, row: usize, var: usize) -> u16 {
        self.columns[var][row]
    }

    pub fn row(&self, row: usize) -> Vec<u16> {
        self.columns.iter().map(|c| c[row]).collect()
    }

    fn check_vars(&self, vars: &[usize]) -> Result<()> {
        match vars.iter().find(|v| **v >= self.p()) {
            Some(v) => Err(Error::Bounds {
                index: *v,
                p: self.p(),
            }),
            None => Ok(()),
        }
    }

    /// Sample counts of the marginal over `vars` (query order defines key packing).
    pub fn counts(&self, vars: &[usize]) -> Result<Contingency> {
        self.check_vars(vars)?;
        let bits = self.alphabet.bits_per_symbol();
        check_key_width(bits, vars.len())?;
        let cols: Vec<&[u16]> = vars.iter().map(|v| self.columns[*v].as_slice()).collect();
        Contingency::build(vars, bits, self.n as f64, |add| {
            let mut keys = vec![0u64; self.n];
            for (k, col) in cols.iter().enumerate() {
                let shift = k as u32 * bits;
                for (key, v) in keys.iter_mut().zip(col.iter()) {
                    *key |= u64::from(*v) << shift;
                }
            }
            for key in keys {
                add(key, 1.0);
            }
        })
    }

    /// Number of rows matching `a` on all of its variables.
    pub fn empirical_count(&self, a: &Assignment) -> Result<usize> {
        self.check_vars(a.vars())?;
        Ok((0..self.n)
            .filter(|&r| {
                a.vars()
                    .iter()
                    .zip(a.vals())
                    .all(|(v, x)| self.columns[*v][r] == *x)
            })
            .count())
    }

    /// Empirical probability `P̂(x_A)`; the empty assignment has probability 1.
    pub fn empirical_prob(&self, a: &Assignment) -> Result<f64> {
        Ok(self.empirical_count(a)? as f64 / self.n as f64)
    }

    /// Keeps the columns whose fraction of non-`missing` entries is at least
    /// `threshold`. Rows are untouched.
    pub fn filter_participation(&self, missing: &str, threshold: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::argument(format!(
                "participation threshold {threshold} not in [0, 1]"
            )));
        }
        let miss = self
            .alphabet
            .index_of(missing)
            .ok_or_else(|| Error::Domain {
                token: missing.to_string(),
            })?;
        let keep: Vec<usize> = (0..self.p())
            .filter(|&c| {
                let present = self.columns[c].iter().filter(|v| **v != miss).count();
                participation_ok(present, self.n, threshold)
            })
            .collect();
        if keep.is_empty() {
            return Err(Error::EmptyDataset(format!(
                "no column reaches participation {threshold}"
            )));
        }
        Ok(DiscreteDataset {
            names: keep.iter().map(|c| self.names[*c].clone()).collect(),
            alphabet: self.alphabet.clone(),
            columns: keep.iter().map(|c| self.columns[*c].clone()).collect(),
            n: self.n,
        })
    }

    /// Serialises to the CSV ingestion format (header row plus symbol tokens).
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.names.join(","));
        out.push('\n');
        for r in 0..self.n {
            for c in 0..self.p() {
                if c > 0 {
                    out.push(',');
                }
                let _ = write!(
                    out,
                    "{}",
                    self.alphabet.symbols[usize::from(self.columns[c][r])]
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }
}

// present/n >= threshold, compared without rounding
fn participation_ok(present: usize, n: usize, threshold: f64) -> bool {
    present as f64 >= threshold * n as f64
}

/// CSV ingestion options. Mapping rules are applied in order (the first rule
/// matching a token wins) before alphabet inference.
#[derive(Debug, Clone, Default)]
pub struct IngestOptions {
    pub map: Vec<(String, String)>,
    pub alphabet: Option<Vec<String>>,
    pub missing: Option<String>,
    pub participation: Option<f64>,
}

impl IngestOptions {
    /// Parses a `from=to` rule.
    pub fn parse_rule(rule: &str) -> Result<(String, String)> {
        let (from, to) = rule
            .split_once('=')
            .ok_or_else(|| Error::argument(format!("mapping rule {rule:?} is not token=token")))?;
        let (from, to) = (from.trim(), to.trim());
        if from.is_empty() || to.is_empty() {
            return Err(Error::argument(format!(
                "mapping rule {rule:?} has an empty side"
            )));
        }
        Ok((from.to_string(), to.to_string()))
    }

    /// Appends the rules of a mapping file: one `token=token` per line, blank
    /// lines and `#` comments ignored.
    pub fn add_map_file(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.map.push(Self::parse_rule(line)?);
        }
        Ok(())
    }

    fn apply_map<'a>(&'a self, token: &'a str) -> &'a str {
        self.map
            .iter()
            .find(|(from, _)| from == token)
            .map(|(_, to)| to.as_str())
            .unwrap_or(token)
    }
}

pub fn load_csv(path: impl AsRef<Path>, options: &IngestOptions) -> Result<DiscreteDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, options)
}

/// Parses CSV text: header row of variable names, then one sample per row.
pub fn parse_csv(text: &str, options: &IngestOptions) -> Result<DiscreteDataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::EmptyDataset("missing header row".into()))?;
    let mut names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let p = names.len();
    let mut columns: Vec<Vec<String>> = vec![Vec::new(); p];
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split(',').map(str::trim).collect();
        if tokens.len() != p {
            return Err(Error::Parse {
                row: line_no,
                message: format!("expected {p} tokens, found {}", tokens.len()),
            });
        }
        for (c, t) in tokens.into_iter().enumerate() {
            columns[c].push(t.to_string());
        }
    }
    let n = columns[0].len();
    if n == 0 {
        return Err(Error::EmptyDataset("no data rows".into()));
    }

    if let Some(threshold) = options.participation {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::argument(format!(
                "participation threshold {threshold} not in [0, 1]"
            )));
        }
        let missing = options.missing.as_deref().ok_or_else(|| {
            Error::argument("participation filtering needs a missing-value token")
        })?;
        let keep: Vec<bool> = columns
            .iter()
            .map(|col| participation_ok(col.iter().filter(|t| *t != missing).count(), n, threshold))
            .collect();
        if !keep.iter().any(|k| *k) {
            return Err(Error::EmptyDataset(format!(
                "no column reaches participation {threshold}"
            )));
        }
        let mut k = keep.iter();
        names.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        columns.retain(|_| *k.next().unwrap());
    }

    let alphabet = match &options.alphabet {
        Some(symbols) => Alphabet::new(symbols.iter().cloned())?,
        None => {
            let distinct: BTreeSet<&str> = columns
                .iter()
                .flatten()
                .map(|t| options.apply_map(t))
                .collect();
            Alphabet::new(distinct)?
        }
    };
    let columns = columns
        .iter()
        .map(|col| {
            col.iter()
                .map(|t| {
                    let t = options.apply_map(t);
                    alphabet.index_of(t).ok_or_else(|| Error::Domain {
                        token: t.to_string(),
                    })
                })
                .collect::<Result<Vec<u16>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteDataset::from_columns(names, alphabet, columns)
}
