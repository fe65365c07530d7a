//! The category Fin of finite sets `{1, …, n}` and all functions.

use serde::{Deserialize, Serialize};

use super::delta::DeltaMap;
use super::perm::Perm;
use super::IndexError;

/// A function `{1..n} → {1..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinMap {
    n: usize,
    k: usize,
    values: Vec<usize>,
}

/// Generators of Fin: the Δ generators plus adjacent transpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FinGen {
    Coface(usize),
    Codegeneracy(usize),
    /// Exchanges `i` and `i + 1`.
    Transposition(usize),
}

impl FinMap {
    pub fn new(n: usize, k: usize, values: Vec<usize>) -> Result<Self, IndexError> {
        if values.len() != n {
            return Err(IndexError::InvalidMap(format!("expected {n} values, got {}", values.len())));
        }
        if values.iter().any(|&v| v == 0 || v > k) {
            return Err(IndexError::InvalidMap(format!("values {values:?} not in 1..={k}")));
        }
        Ok(FinMap { n, k, values })
    }

    pub fn identity(n: usize) -> Self {
        FinMap { n, k: n, values: (1..=n).collect() }
    }

    pub fn from_perm(p: &Perm) -> Self {
        FinMap { n: p.len(), k: p.len(), values: p.images().to_vec() }
    }

    pub fn from_delta(d: &DeltaMap) -> Self {
        FinMap { n: d.source(), k: d.target(), values: d.values().to_vec() }
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
    pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap, IndexError> {
        if f.k != g.n {
            return Err(IndexError::DomainMismatch { expected: g.n.to_string(), found: f.k.to_string() });
        }
        Ok(FinMap { n: f.n, k: g.k, values: f.values.iter().map(|&x| g.apply(x)).collect() })
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.k];
        for &v in &self.values {
            if hit[v - 1] {
                return false;
            }
            hit[v - 1] = true;
        }
        true
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn as_perm(&self) -> Option<Perm> {
        if self.n == self.k {
            Perm::from_images(self.values.clone()).ok()
        } else {
            None
        }
    }

    pub fn as_delta(&self) -> Option<DeltaMap> {
        DeltaMap::new(self.n, self.k, self.values.clone()).ok()
    }

    /// Every function `n → k`, in lexicographic order of values.
    pub fn all(n: usize, k: usize) -> Vec<FinMap> {
        if k == 0 {
            return if n == 0 { vec![FinMap::identity(0)] } else { Vec::new() };
        }
        let total = k.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut values = vec![0; n];
                for slot in values.iter_mut().rev() {
                    *slot = code % k + 1;
                    code /= k;
                }
                FinMap { n, k, values }
            })
            .collect()
    }
}

impl FinGen {
    pub fn at(self, source: usize) -> Result<FinMap, IndexError> {
        match self {
            FinGen::Coface(i) => DeltaMap::coface(source + 1, i).map(|d| FinMap::from_delta(&d)),
            FinGen::Codegeneracy(i) => {
                if source == 0 {
                    return Err(IndexError::InvalidMap("codegeneracy out of the empty set".into()));
                }
                DeltaMap::codegeneracy(source - 1, i).map(|d| FinMap::from_delta(&d))
            }
            FinGen::Transposition(i) => {
                if i == 0 || i >= source {
                    return Err(IndexError::InvalidMap(format!("transposition {i} on {source}")));
                }
                Ok(FinMap::from_perm(&Perm::adjacent(source, i)))
            }
        }
    }
}

/// `f = δ ∘ σ` with `σ` the stable sort of the domain by value (the
/// permutation with fewest inversions) and `δ` weakly increasing.
pub fn factor_fin(f: &FinMap) -> (Perm, DeltaMap) {
    let mut order: Vec<usize> = (1..=f.n).collect();
    order.sort_by_key(|&i| f.apply(i));
    let mut images = vec![0; f.n];
    for (pos, &i) in order.iter().enumerate() {
        images[i - 1] = pos + 1;
    }
    let delta_values = order.iter().map(|&i| f.apply(i)).collect();
    let sigma = Perm::from_images(images).expect("stable sort is a bijection");
    (sigma, DeltaMap::new(f.n, f.k, delta_values).expect("sorted values are monotone"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_example() {
        let f = FinMap::new(3, 2, vec![2, 1, 1]).unwrap();
        let (sigma, delta) = factor_fin(&f);
        assert_eq!(sigma.images(), &[3, 1, 2]);
        assert_eq!(delta.values(), &[1, 1, 2]);
    }

    #[test]
    fn hom_sizes() {
        assert_eq!(FinMap::all(3, 2).len(), 8);
        assert_eq!(FinMap::all(0, 0).len(), 1);
        assert_eq!(FinMap::all(2, 0).len(), 0);
    }
}
