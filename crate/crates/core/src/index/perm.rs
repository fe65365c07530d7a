use serde::{Deserialize, Serialize};

use super::IndexError;

/// A permutation of `1..=n`. `images[i - 1]` is the point that `i` is sent to.
///
/// When a permutation describes a formal morphism, point `i` is the `i`-th
/// occurrence of the domain frontier and its image is that occurrence's
/// position in the codomain frontier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = IndexError;
    fn try_from(images: Vec<usize>) -> Result<Self, IndexError> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.images
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, IndexError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(IndexError::InvalidMap(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    /// The adjacent transposition exchanging `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "adjacent transposition {i} out of range for n = {n}");
        let mut p = Perm::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    /// Exchanges the consecutive blocks `offset+1 ..= offset+a` and
    /// `offset+a+1 ..= offset+a+b`, keeping the order inside each block.
    pub fn block_swap(n: usize, offset: usize, a: usize, b: usize) -> Self {
        assert!(offset + a + b <= n);
        let mut images: Vec<usize> = (1..=n).collect();
        for i in 0..a {
            images[offset + i] = offset + b + i + 1;
        }
        for i in 0..b {
            images[offset + a + i] = offset + i + 1;
        }
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `g ∘ f`: apply `f` first.
    pub fn compose(g: &Perm, f: &Perm) -> Result<Perm, IndexError> {
        if g.len() != f.len() {
            return Err(IndexError::DomainMismatch { expected: g.len().to_string(), found: f.len().to_string() });
        }
        Ok(Perm { images: f.images.iter().map(|&x| g.apply(x)).collect() })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Perm) -> Perm {
        Perm::compose(next, self).expect("permutations of equal size")
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// All permutations of `1..=n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm { images: current.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// An element of the cyclic group `C_n`, written additively.
///
/// For a formal morphism of shadows, the amount `r` means that the occurrence
/// at domain position `i` sits at codomain position `i - r` (mod `n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rot {
    pub n: usize,
    pub amount: usize,
}

impl Rot {
    pub fn new(n: usize, amount: i64) -> Self {
        if n == 0 {
            return Rot { n, amount: 0 };
        }
        Rot { n, amount: amount.rem_euclid(n as i64) as usize }
    }

    pub fn identity(n: usize) -> Self {
        Rot { n, amount: 0 }
    }

    pub fn then(self, next: Rot) -> Rot {
        debug_assert_eq!(self.n, next.n);
        Rot::new(self.n, self.amount as i64 + next.amount as i64)
    }

    pub fn inverse(self) -> Rot {
        Rot::new(self.n, -(self.amount as i64))
    }

    pub fn is_identity(self) -> bool {
        self.amount == 0
    }

    /// The position permutation this rotation induces.
    pub fn to_perm(self) -> Perm {
        let n = self.n as i64;
        let images = (1..=n).map(|i| ((i - 1 - self.amount as i64).rem_euclid(n) + 1) as usize).collect();
        Perm { images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_counts_factorials() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn block_swap_moves_blocks() {
        let p = Perm::block_swap(5, 1, 1, 2);
        assert_eq!(p.images(), &[1, 4, 2, 3, 5]);
    }

    #[test]
    fn rotation_perm() {
        assert_eq!(Rot::new(3, 1).to_perm().images(), &[3, 1, 2]);
        assert_eq!(Rot::new(3, -1), Rot::new(3, 2));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![1, 1]).is_err());
        assert!(Perm::from_images(vec![0]).is_err());
    }
}
