//! Sparse/dense contingency tables keyed by packed assignments.
//!
//! A query over variables `[v0, v1, ..]` packs the value of `v_k` into bits
//! `[k*b, (k+1)*b)` of a `u64`, with `b = ceil(log2 |X|)`. Small key spaces are
//! counted into a dense vector, larger ones into a hash map.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Key spaces up to this many bits are stored densely.
const DENSE_BITS: u32 = 16;

#[derive(Debug, Clone)]
enum Cells {
    Dense(Vec<f64>),
    Sparse(HashMap<u64, f64>),
}

/// Weighted cells of a marginal over an ordered variable list.
///
/// Weights are raw counts for empirical sources and probabilities for exact
/// ones; `total` is the normaliser.
#[derive(Debug, Clone)]
pub struct Contingency {
    vars: Vec<usize>,
    bits: u32,
    cells: Cells,
    total: f64,
}

/// Bits needed per variable for an alphabet of `size` symbols.
pub fn bits_per_symbol(size: usize) -> u32 {
    let mut bits = 1;
    while (1usize << bits) < size {
        bits += 1;
    }
    bits
}

pub(crate) fn check_key_width(bits: u32, arity: usize) -> Result<()> {
    if bits as usize * arity > 64 {
        return Err(Error::Capacity(format!(
            "a query over {arity} variables needs {} key bits (max 64)",
            bits as usize * arity
        )));
    }
    Ok(())
}

impl Contingency {
    /// Builds a table by feeding `(key, weight)` pairs from `fill`.
    pub(crate) fn build(
        vars: &[usize],
        bits: u32,
        total: f64,
        fill: impl FnOnce(&mut dyn FnMut(u64, f64)),
    ) -> Result<Self> {
        check_key_width(bits, vars.len())?;
        let key_bits = bits * vars.len() as u32;
        let cells = if key_bits <= DENSE_BITS {
            let mut dense = vec![0.0; 1usize << key_bits];
            fill(&mut |k, w| dense[k as usize] += w);
            Cells::Dense(dense)
        } else {
            let mut sparse: HashMap<u64, f64> = HashMap::new();
            fill(&mut |k, w| *sparse.entry(k).or_insert(0.0) += w);
            Cells::Sparse(sparse)
        };
        Ok(Contingency {
            vars: vars.to_vec(),
            bits,
            cells,
            total,
        })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn bits_per_var(&self) -> u32 {
        self.bits
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// Weight of the cell with the given packed key.
    pub fn weight(&self, key: u64) -> f64 {
        match &self.cells {
            Cells::Dense(d) => d.get(key as usize).copied().unwrap_or(0.0),
            Cells::Sparse(s) => s.get(&key).copied().unwrap_or(0.0),
        }
    }

    /// Nonzero cells as `(key, weight)`, in ascending key order.
    pub fn nonzero(&self) -> Vec<(u64, f64)> {
        let mut out: Vec<(u64, f64)> = match &self.cells {
            Cells::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, w)| **w > 0.0)
                .map(|(k, w)| (k as u64, *w))
                .collect(),
            Cells::Sparse(s) => s
                .iter()
                .filter(|(_, w)| **w > 0.0)
                .map(|(k, w)| (*k, *w))
                .collect(),
        };
        out.sort_unstable_by_key(|(k, _)| *k);
        out
    }

    /// Normalised probability of each nonzero cell, ascending key order.
    pub fn probabilities(&self) -> Vec<(u64, f64)> {
        self.nonzero()
            .into_iter()
            .map(|(k, w)| (k, w / self.total))
            .collect()
    }

    /// Shannon entropy in bits. Zero cells are skipped (0 log 0 = 0).
    pub fn entropy_bits(&self) -> f64 {
        let t = self.total;
        let term = |w: f64| {
            if w > 0.0 {
                let q = w / t;
                -q * q.log2()
            } else {
                0.0
            }
        };
        match &self.cells {
            Cells::Dense(d) => d.iter().map(|w| term(*w)).sum(),
            Cells::Sparse(s) => {
                // HashMap order is unstable; sum in key order for reproducibility.
                let mut cells: Vec<(u64, f64)> = s.iter().map(|(k, w)| (*k, *w)).collect();
                cells.sort_unstable_by_key(|(k, _)| *k);
                cells.into_iter().map(|(_, w)| term(w)).sum()
            }
        }
    }

    /// Sums out the variable at position 0 (the lowest key bits).
    pub fn marginalize_first(&self) -> Contingency {
        let shift = self.bits;
        let vars = self.vars[1..].to_vec();
        let key_bits = self.bits * vars.len() as u32;
        let cells = match &self.cells {
            Cells::Dense(d) => {
                let mut out = vec![0.0; 1usize << key_bits];
                for (k, w) in d.iter().enumerate() {
                    if *w > 0.0 {
                        out[k >> shift] += *w;
                    }
                }
                Cells::Dense(out)
            }
            Cells::Sparse(s) => {
                let mut keys: Vec<(u64, f64)> = s.iter().map(|(k, w)| (*k, *w)).collect();
                keys.sort_unstable_by_key(|(k, _)| *k);
                if key_bits <= DENSE_BITS {
                    let mut out = vec![0.0; 1usize << key_bits];
                    for (k, w) in keys {
                        out[(k >> shift) as usize] += w;
                    }
                    Cells::Dense(out)
                } else {
                    let mut out: HashMap<u64, f64> = HashMap::new();
                    for (k, w) in keys {
                        *out.entry(k >> shift).or_insert(0.0) += w;
                    }
                    Cells::Sparse(out)
                }
            }
        };
        Contingency {
            vars,
            bits: self.bits,
            cells,
            total: self.total,
        }
    }
}

/// Packs `vals` (one per variable, in query order) into a key.
pub fn pack_key(vals: &[u16], bits: u32) -> u64 {
    vals.iter().enumerate().fold(0u64, |acc, (k, v)| {
        acc | (u64::from(*v) << (k as u32 * bits))
    })
}

/// Inverse of [`pack_key`].
pub fn unpack_key(key: u64, arity: usize, bits: u32) -> Vec<u16> {
    let mask = (1u64 << bits) - 1;
    (0..arity)
        .map(|k| ((key >> (k as u32 * bits)) & mask) as u16)
        .collect()
}
