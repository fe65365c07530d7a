//! The category Δ of finite totally ordered sets `{1, …, n}` and weakly
//! increasing maps, with its coface/codegeneracy presentation.

use serde::{Deserialize, Serialize};

use super::IndexError;

/// A weakly increasing map `{1..n} → {1..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaMap {
    n: usize,
    k: usize,
    values: Vec<usize>,
}

/// A generator of Δ. The source size is implicit and supplied when a word
/// is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaGen {
    /// `d^i : m-1 → m`, skipping `i`.
    Coface(usize),
    /// `s^i : m+1 → m`, hitting `i` twice.
    Codegeneracy(usize),
}

impl DeltaMap {
    pub fn new(n: usize, k: usize, values: Vec<usize>) -> Result<Self, IndexError> {
        if values.len() != n {
            return Err(IndexError::InvalidMap(format!("expected {n} values, got {}", values.len())));
        }
        if values.iter().any(|&v| v == 0 || v > k) {
            return Err(IndexError::InvalidMap(format!("values {values:?} not in 1..={k}")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(IndexError::InvalidMap(format!("values {values:?} not weakly increasing")));
        }
        Ok(DeltaMap { n, k, values })
    }

    pub fn identity(n: usize) -> Self {
        DeltaMap { n, k: n, values: (1..=n).collect() }
    }

    /// `d^i : target-1 → target`.
    pub fn coface(target: usize, i: usize) -> Result<Self, IndexError> {
        if i == 0 || i > target {
            return Err(IndexError::InvalidMap(format!("coface d^{i} into {target}")));
        }
        let values = (1..target).map(|j| if j < i { j } else { j + 1 }).collect();
        Ok(DeltaMap { n: target - 1, k: target, values })
    }

    /// `s^i : target+1 → target`.
    pub fn codegeneracy(target: usize, i: usize) -> Result<Self, IndexError> {
        if i == 0 || i > target {
            return Err(IndexError::InvalidMap(format!("codegeneracy s^{i} onto {target}")));
        }
        let values = (1..=target + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        Ok(DeltaMap { n: target + 1, k: target, values })
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    /// `g ∘ f`.
    pub fn compose(g: &DeltaMap, f: &DeltaMap) -> Result<DeltaMap, IndexError> {
        if f.k != g.n {
            return Err(IndexError::DomainMismatch { expected: g.n.to_string(), found: f.k.to_string() });
        }
        Ok(DeltaMap { n: f.n, k: g.k, values: f.values.iter().map(|&x| g.apply(x)).collect() })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.k];
        for &v in &self.values {
            hit[v - 1] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Epi-mono factorization `self = mono ∘ epi`.
    pub fn image_factor(&self) -> (DeltaMap, DeltaMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let m = image.len();
        let epi = self.values.iter().map(|v| image.iter().position(|w| w == v).unwrap() + 1).collect();
        (DeltaMap { n: self.n, k: m, values: epi }, DeltaMap { n: m, k: self.k, values: image })
    }

    /// Every map `n → k`, in lexicographic order of values.
    pub fn all(n: usize, k: usize) -> Vec<DeltaMap> {
        let mut out = Vec::new();
        let mut values = Vec::with_capacity(n);
        fn go(n: usize, k: usize, lo: usize, values: &mut Vec<usize>, out: &mut Vec<DeltaMap>) {
            if values.len() == n {
                out.push(DeltaMap { n, k, values: values.clone() });
                return;
            }
            for v in lo..=k {
                values.push(v);
                go(n, k, v, values, out);
                values.pop();
            }
        }
        go(n, k, 1, &mut values, &mut out);
        out
    }
}

impl DeltaGen {
    /// The generator as a map out of an object of size `source`.
    pub fn at(self, source: usize) -> Result<DeltaMap, IndexError> {
        match self {
            DeltaGen::Coface(i) => DeltaMap::coface(source + 1, i),
            DeltaGen::Codegeneracy(i) => {
                if source == 0 {
                    return Err(IndexError::InvalidMap("codegeneracy out of the empty set".into()));
                }
                DeltaMap::codegeneracy(source - 1, i)
            }
        }
    }
}

/// Evaluates a word written in composition order (the last generator acts first).
pub fn eval_word(source: usize, word: &[DeltaGen]) -> Result<DeltaMap, IndexError> {
    let mut acc = DeltaMap::identity(source);
    for g in word.iter().rev() {
        let step = g.at(acc.target())?;
        acc = DeltaMap::compose(&step, &acc)?;
    }
    Ok(acc)
}

/// The canonical word `d^{i_p} … d^{i_1} s^{j_1} … s^{j_q}` with
/// `i_p > … > i_1` and `j_1 < … < j_q`, in composition order.
pub fn factor_delta(f: &DeltaMap) -> Vec<DeltaGen> {
    let missing: Vec<usize> = (1..=f.k).filter(|v| !f.values.contains(v)).collect();
    let repeats: Vec<usize> = (1..f.n).filter(|&j| f.apply(j) == f.apply(j + 1)).collect();
    let mut word: Vec<DeltaGen> = missing.into_iter().rev().map(DeltaGen::Coface).collect();
    word.extend(repeats.into_iter().map(DeltaGen::Codegeneracy));
    word
}
