//! The cyclic category Λ and its augmentation Λ′ by an initial object `0`
//! and a terminal object `*`.
//!
//! A morphism `n → k` of Λ (with `n, k ≥ 1`) is stored as a lift: the values
//! `f(1), …, f(n)` of a weakly increasing `f: ℤ → ℤ` satisfying
//! `f(x + n) = f(x) + k` and `f(n) ≤ f(1) + k`. Two lifts differing by a
//! multiple of `k` are the same morphism; the stored lift has `f(1) ∈ 1..=k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::delta::DeltaMap;
use super::perm::Rot;
use super::IndexError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicMap {
    n: usize,
    k: usize,
    lift: Vec<i64>,
}

impl CyclicMap {
    pub fn new(n: usize, k: usize, lift: Vec<i64>) -> Result<Self, IndexError> {
        if n == 0 || k == 0 {
            return Err(IndexError::InvalidMap("cyclic maps need nonempty source and target".into()));
        }
        if lift.len() != n {
            return Err(IndexError::InvalidMap(format!("expected {n} lift values, got {}", lift.len())));
        }
        if lift.windows(2).any(|w| w[0] > w[1]) || lift[n - 1] > lift[0] + k as i64 {
            return Err(IndexError::InvalidMap(format!("lift {lift:?} is not a cyclic map {n} → {k}")));
        }
        Ok(CyclicMap { n, k, lift }.normalized())
    }

    fn normalized(mut self) -> Self {
        let k = self.k as i64;
        let shift = (self.lift[0] - 1).div_euclid(k) * k;
        for v in &mut self.lift {
            *v -= shift;
        }
        self
    }

    pub fn identity(n: usize) -> Self {
        CyclicMap { n, k: n, lift: (1..=n as i64).collect() }
    }

    /// `τ_(n)`, the cycle to the left: `x ↦ x - 1`.
    pub fn tau(n: usize) -> Self {
        CyclicMap { n, k: n, lift: (0..n as i64).collect() }.normalized()
    }

    /// `τ_(n)^r`, i.e. `x ↦ x - r`.
    pub fn rotation(rot: Rot) -> Self {
        let r = rot.amount as i64;
        CyclicMap { n: rot.n, k: rot.n, lift: (1..=rot.n as i64).map(|x| x - r).collect() }.normalized()
    }

    pub fn from_delta(d: &DeltaMap) -> Result<Self, IndexError> {
        CyclicMap::new(d.source(), d.target(), d.values().iter().map(|&v| v as i64).collect())
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.k
    }

    pub fn lift(&self) -> &[i64] {
        &self.lift
    }

    /// The value of the periodic extension at any integer.
    pub fn extend(&self, x: i64) -> i64 {
        let n = self.n as i64;
        let q = (x - 1).div_euclid(n);
        let r = (x - 1).rem_euclid(n);
        self.lift[r as usize] + q * self.k as i64
    }

    /// The underlying function `{1..n} → {1..k}`.
    pub fn apply(&self, x: usize) -> usize {
        ((self.lift[x - 1] - 1).rem_euclid(self.k as i64) + 1) as usize
    }

    /// `g ∘ f`.
    pub fn compose(g: &CyclicMap, f: &CyclicMap) -> Result<CyclicMap, IndexError> {
        if f.k != g.n {
            return Err(IndexError::DomainMismatch { expected: g.n.to_string(), found: f.k.to_string() });
        }
        Ok(CyclicMap { n: f.n, k: g.k, lift: f.lift.iter().map(|&y| g.extend(y)).collect() }.normalized())
    }

    pub fn is_injective(&self) -> bool {
        self.lift.windows(2).all(|w| w[0] < w[1]) && self.lift[self.n - 1] < self.lift[0] + self.k as i64
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.k];
        for x in 1..=self.n {
            hit[self.apply(x) - 1] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Factorization `self = mono ∘ epi` through the image.
    pub fn image_factor(&self) -> (CyclicMap, CyclicMap) {
        let k = self.k as i64;
        let base = self.lift[0];
        let mut distinct: Vec<i64> = self.lift.clone();
        distinct.dedup();
        if distinct.len() > 1 && *distinct.last().unwrap() == base + k {
            distinct.pop();
        }
        let m = distinct.len();
        let epi = self
            .lift
            .iter()
            .map(|&v| {
                if v == base + k {
                    m as i64 + 1
                } else {
                    distinct.iter().position(|&w| w == v).unwrap() as i64 + 1
                }
            })
            .collect();
        (
            CyclicMap { n: self.n, k: m, lift: epi }.normalized(),
            CyclicMap { n: m, k: self.k, lift: distinct }.normalized(),
        )
    }

    /// Every morphism `n → k`, in lexicographic order of normalized lifts.
    pub fn all(n: usize, k: usize) -> Vec<CyclicMap> {
        let mut out = Vec::new();
        if n == 0 || k == 0 {
            return out;
        }
        fn go(n: usize, cap: i64, lo: i64, lift: &mut Vec<i64>, k: usize, out: &mut Vec<CyclicMap>) {
            if lift.len() == n {
                out.push(CyclicMap { n, k, lift: lift.clone() });
                return;
            }
            for v in lo..=cap {
                lift.push(v);
                go(n, cap, v, lift, k, out);
                lift.pop();
            }
        }
        for first in 1..=k as i64 {
            let mut lift = vec![first];
            go(n, first + k as i64, first, &mut lift, k, &mut out);
        }
        out
    }
}

/// `f = δ ∘ τ^r` with `δ` weakly increasing. Unique for every cyclic map.
pub fn factor_lambda(f: &CyclicMap) -> (Rot, DeltaMap) {
    let k = f.k as i64;
    for r in 0..f.n as i64 {
        let raw: Vec<i64> = (1..=f.n as i64).map(|y| f.extend(y + r)).collect();
        let shift = (raw[0] - 1).div_euclid(k) * k;
        let values: Vec<i64> = raw.iter().map(|v| v - shift).collect();
        if *values.last().unwrap() <= k {
            let delta = DeltaMap::new(f.n, f.k, values.iter().map(|&v| v as usize).collect())
                .expect("shifted lift is monotone within 1..=k");
            return (Rot::new(f.n, r), delta);
        }
    }
    unreachable!("every cyclic map factors through a rotation")
}

/// An object of Λ′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LambdaObj {
    Finite(usize),
    Star,
}

impl fmt::Display for LambdaObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaObj::Finite(n) => write!(f, "{n}"),
            LambdaObj::Star => write!(f, "*"),
        }
    }
}

/// A morphism of Λ′.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LambdaPrimeMor {
    /// The unique map out of the initial object `0`.
    FromEmpty(LambdaObj),
    /// The unique map `n → *` for `n ≥ 1`; `t` is `ToStar(1)`.
    ToStar(usize),
    StarId,
    Cyclic(CyclicMap),
}

/// Generators of Λ′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LambdaGen {
    Coface(usize),
    Codegeneracy(usize),
    /// `τ_(n)` on the current object.
    Cycle,
    /// `t : 1 → *`.
    Terminal,
}

impl LambdaPrimeMor {
    pub fn source(&self) -> LambdaObj {
        match self {
            LambdaPrimeMor::FromEmpty(_) => LambdaObj::Finite(0),
            LambdaPrimeMor::ToStar(n) => LambdaObj::Finite(*n),
            LambdaPrimeMor::StarId => LambdaObj::Star,
            LambdaPrimeMor::Cyclic(c) => LambdaObj::Finite(c.n),
        }
    }

    pub fn target(&self) -> LambdaObj {
        match self {
            LambdaPrimeMor::FromEmpty(o) => *o,
            LambdaPrimeMor::ToStar(_) | LambdaPrimeMor::StarId => LambdaObj::Star,
            LambdaPrimeMor::Cyclic(c) => LambdaObj::Finite(c.k),
        }
    }

    pub fn identity(obj: LambdaObj) -> Self {
        match obj {
            LambdaObj::Finite(0) => LambdaPrimeMor::FromEmpty(LambdaObj::Finite(0)),
            LambdaObj::Finite(n) => LambdaPrimeMor::Cyclic(CyclicMap::identity(n)),
            LambdaObj::Star => LambdaPrimeMor::StarId,
        }
    }

    /// The unique map `obj → *`.
    pub fn terminal(obj: LambdaObj) -> Self {
        match obj {
            LambdaObj::Finite(0) => LambdaPrimeMor::FromEmpty(LambdaObj::Star),
            LambdaObj::Finite(n) => LambdaPrimeMor::ToStar(n),
            LambdaObj::Star => LambdaPrimeMor::StarId,
        }
    }

    pub fn from_delta(d: &DeltaMap) -> Self {
        if d.source() == 0 {
            LambdaPrimeMor::FromEmpty(LambdaObj::Finite(d.target()))
        } else {
            LambdaPrimeMor::Cyclic(CyclicMap::from_delta(d).expect("Δ maps are cyclic maps"))
        }
    }

    pub fn rotation(rot: Rot) -> Self {
        if rot.n == 0 {
            LambdaPrimeMor::identity(LambdaObj::Finite(0))
        } else {
            LambdaPrimeMor::Cyclic(CyclicMap::rotation(rot))
        }
    }

    /// `g ∘ f`.
    pub fn compose(g: &LambdaPrimeMor, f: &LambdaPrimeMor) -> Result<LambdaPrimeMor, IndexError> {
        if g.source() != f.target() {
            return Err(IndexError::DomainMismatch { expected: g.source().to_string(), found: f.target().to_string() });
        }
        Ok(match (g, f) {
            (_, LambdaPrimeMor::FromEmpty(_)) => LambdaPrimeMor::FromEmpty(g.target()),
            (LambdaPrimeMor::StarId, f) => f.clone(),
            (LambdaPrimeMor::ToStar(_), LambdaPrimeMor::Cyclic(c)) => LambdaPrimeMor::ToStar(c.n),
            (LambdaPrimeMor::Cyclic(g), LambdaPrimeMor::Cyclic(f)) => LambdaPrimeMor::Cyclic(CyclicMap::compose(g, f)?),
            _ => unreachable!("source/target check rules out the remaining cases"),
        })
    }

    /// Membership in the class `𝓘` of injective maps.
    pub fn is_injective(&self) -> bool {
        match self {
            LambdaPrimeMor::FromEmpty(o) => *o != LambdaObj::Star,
            LambdaPrimeMor::ToStar(_) => false,
            LambdaPrimeMor::StarId => true,
            LambdaPrimeMor::Cyclic(c) => c.is_injective(),
        }
    }

    /// The hom-set `a → b` in lexicographic order.
    pub fn all(a: LambdaObj, b: LambdaObj) -> Vec<LambdaPrimeMor> {
        match (a, b) {
            (LambdaObj::Finite(0), b) => vec![LambdaPrimeMor::FromEmpty(b)],
            (LambdaObj::Finite(_), LambdaObj::Finite(0)) => Vec::new(),
            (LambdaObj::Finite(n), LambdaObj::Star) => vec![LambdaPrimeMor::ToStar(n)],
            (LambdaObj::Star, LambdaObj::Star) => vec![LambdaPrimeMor::StarId],
            (LambdaObj::Star, LambdaObj::Finite(_)) => Vec::new(),
            (LambdaObj::Finite(n), LambdaObj::Finite(k)) => {
                CyclicMap::all(n, k).into_iter().map(LambdaPrimeMor::Cyclic).collect()
            }
        }
    }
}

impl LambdaGen {
    pub fn at(self, source: LambdaObj) -> Result<LambdaPrimeMor, IndexError> {
        let bad = || IndexError::InvalidMap(format!("{self:?} does not act on {source}"));
        let LambdaObj::Finite(m) = source else {
            return Err(bad());
        };
        match self {
            LambdaGen::Coface(i) => Ok(LambdaPrimeMor::from_delta(&DeltaMap::coface(m + 1, i)?)),
            LambdaGen::Codegeneracy(i) if m >= 2 => Ok(LambdaPrimeMor::from_delta(&DeltaMap::codegeneracy(m - 1, i)?)),
            LambdaGen::Cycle if m >= 1 => Ok(LambdaPrimeMor::Cyclic(CyclicMap::tau(m))),
            LambdaGen::Terminal if m == 1 => Ok(LambdaPrimeMor::ToStar(1)),
            _ => Err(bad()),
        }
    }
}

/// Evaluates a word written in composition order (the last generator acts first).
pub fn eval_lambda_word(source: LambdaObj, word: &[LambdaGen]) -> Result<LambdaPrimeMor, IndexError> {
    let mut acc = LambdaPrimeMor::identity(source);
    for g in word.iter().rev() {
        let step = g.at(acc.target())?;
        acc = LambdaPrimeMor::compose(&step, &acc)?;
    }
    Ok(acc)
}
