use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contingency::{check_key_width, Contingency};
use crate::dataset::{Alphabet, DiscreteDataset};
use crate::error::{Error, Result};

/// Largest variable count for which dense joint tables are built.
pub const ENUMERATION_CAP: usize = 24;

/// Dense probability table over all `|X|^p` assignments.
///
/// Cell `idx` holds the assignment whose variable `v` takes digit
/// `(idx / |X|^v) % |X|`, so variable 0 is the least significant digit.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    p: usize,
    alphabet: Alphabet,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(p: usize, alphabet: Alphabet, probs: Vec<f64>) -> Result<Self> {
        let k = alphabet.len();
        let cells = checked_cells(k, p)?;
        if probs.len() != cells {
            return Err(Error::argument(format!(
                "{} probabilities for {cells} cells",
                probs.len()
            )));
        }
        if let Some(bad) = probs.iter().find(|q| !(q.is_finite() && **q >= 0.0)) {
            return Err(Error::argument(format!("invalid probability {bad}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::argument(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(JointDistribution { p, alphabet, probs })
    }

    /// Normalises nonnegative weights into a distribution.
    pub fn from_weights(p: usize, alphabet: Alphabet, mut weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::argument("weights must have a positive finite sum"));
        }
        weights.iter_mut().for_each(|w| *w /= total);
        Self::new(p, alphabet, weights)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Digit of variable `var` in cell `idx`.
    #[inline]
    pub fn digit(&self, idx: usize, var: usize) -> u16 {
        let k = self.alphabet.len();
        if k == 2 {
            ((idx >> var) & 1) as u16
        } else {
            ((idx / k.pow(var as u32)) % k) as u16
        }
    }

    /// Cell index of a full assignment.
    pub fn index_of(&self, values: &[u16]) -> usize {
        let k = self.alphabet.len();
        values
            .iter()
            .rev()
            .fold(0usize, |acc, v| acc * k + usize::from(*v))
    }

    /// Full assignment of cell `idx`.
    pub fn assignment(&self, idx: usize) -> Vec<u16> {
        (0..self.p).map(|v| self.digit(idx, v)).collect()
    }

    fn check_vars(&self, vars: &[usize]) -> Result<()> {
        match vars.iter().find(|v| **v >= self.p) {
            Some(v) => Err(Error::Bounds {
                index: *v,
                p: self.p,
            }),
            None => Ok(()),
        }
    }

    /// Marginal over `vars` as a contingency table with probability weights.
    pub fn contingency(&self, vars: &[usize]) -> Result<Contingency> {
        self.check_vars(vars)?;
        let bits = self.alphabet.bits_per_symbol();
        check_key_width(bits, vars.len())?;
        Contingency::build(vars, bits, 1.0, |add| {
            for (idx, q) in self.probs.iter().enumerate() {
                if *q == 0.0 {
                    continue;
                }
                let key = vars.iter().enumerate().fold(0u64, |acc, (k, v)| {
                    acc | (u64::from(self.digit(idx, *v)) << (k as u32 * bits))
                });
                add(key, *q);
            }
        })
    }

    /// Dense marginal over `vars`, indexed like the joint (first listed
    /// variable is the least significant digit).
    pub fn marginal(&self, vars: &[usize]) -> Result<Vec<f64>> {
        self.check_vars(vars)?;
        let k = self.alphabet.len();
        let mut out = vec![0.0; checked_cells(k, vars.len())?];
        for (idx, q) in self.probs.iter().enumerate() {
            let m = vars
                .iter()
                .rev()
                .fold(0usize, |acc, v| acc * k + usize::from(self.digit(idx, *v)));
            out[m] += *q;
        }
        Ok(out)
    }

    /// `n` i.i.d. draws by inverse-CDF lookup, reproducible from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<DiscreteDataset> {
        if n == 0 {
            return Err(Error::argument("sample count must be positive"));
        }
        let mut cdf = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0;
        for q in &self.probs {
            acc += q;
            cdf.push(acc);
        }
        let total = acc;
        let last_positive = self.probs.iter().rposition(|q| *q > 0.0).unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut columns = vec![Vec::with_capacity(n); self.p];
        for _ in 0..n {
            let u: f64 = rng.random::<f64>() * total;
            let idx = cdf.partition_point(|c| *c <= u).min(last_positive);
            for (v, col) in columns.iter_mut().enumerate() {
                col.push(self.digit(idx, v));
            }
        }
        DiscreteDataset::from_columns(
            DiscreteDataset::default_names(self.p),
            self.alphabet.clone(),
            columns,
        )
    }
}

fn checked_cells(k: usize, p: usize) -> Result<usize> {
    k.checked_pow(p as u32)
        .filter(|c| *c <= 1usize << ENUMERATION_CAP)
        .ok_or_else(|| Error::Capacity(format!("{k}^{p} cells exceed the enumeration cap")))
}

/// `n` i.i.d. samples from a dense joint.
pub fn exact_sample(joint: &JointDistribution, n: usize, seed: u64) -> Result<DiscreteDataset> {
    joint.sample(n, seed)
}
