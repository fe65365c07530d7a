//! Index categories: Δ, Fin, Λ′, the groups Σ_n and C_n, the comma categories
//! `(n↓C)` over them, and their thin localizations.

pub mod cyclic;
pub mod delta;
pub mod fin;
pub mod perm;
pub mod thin;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyclic::{eval_lambda_word, factor_lambda, CyclicMap, LambdaGen, LambdaObj, LambdaPrimeMor};
pub use delta::{eval_word, factor_delta, DeltaGen, DeltaMap};
pub use fin::{factor_fin, FinGen, FinMap};
pub use perm::{Perm, Rot};
pub use thin::{thin_reachable, InvertedClass, ThinLocalization};

/// Largest hom-set `hom_set` will materialize.
pub const HOM_SET_LIMIT: u128 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("cannot mix {0:?} and {1:?} morphisms")]
    FamilyMismatch(Family, Family),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("hom-set of estimated size {0} exceeds the enumeration bound")]
    BoundExceeded(u128),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Delta,
    Fin,
    Lambda,
}

/// A morphism in one of the index categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IndexMorRepr", into = "IndexMorRepr")]
pub enum IndexMor {
    Delta(DeltaMap),
    Fin(FinMap),
    Lambda(LambdaPrimeMor),
}

impl IndexMor {
    pub fn family(&self) -> Family {
        match self {
            IndexMor::Delta(_) => Family::Delta,
            IndexMor::Fin(_) => Family::Fin,
            IndexMor::Lambda(_) => Family::Lambda,
        }
    }

    pub fn source(&self) -> LambdaObj {
        match self {
            IndexMor::Delta(d) => LambdaObj::Finite(d.source()),
            IndexMor::Fin(f) => LambdaObj::Finite(f.source()),
            IndexMor::Lambda(l) => l.source(),
        }
    }

    pub fn target(&self) -> LambdaObj {
        match self {
            IndexMor::Delta(d) => LambdaObj::Finite(d.target()),
            IndexMor::Fin(f) => LambdaObj::Finite(f.target()),
            IndexMor::Lambda(l) => l.target(),
        }
    }

    pub fn identity(family: Family, obj: LambdaObj) -> Result<IndexMor, IndexError> {
        match (family, obj) {
            (Family::Lambda, o) => Ok(IndexMor::Lambda(LambdaPrimeMor::identity(o))),
            (Family::Delta, LambdaObj::Finite(n)) => Ok(IndexMor::Delta(DeltaMap::identity(n))),
            (Family::Fin, LambdaObj::Finite(n)) => Ok(IndexMor::Fin(FinMap::identity(n))),
            (f, o) => Err(IndexError::InvalidMap(format!("{f:?} has no object {o}"))),
        }
    }

    /// Embeds a Δ map into the given family.
    pub fn from_delta(family: Family, d: &DeltaMap) -> IndexMor {
        match family {
            Family::Delta => IndexMor::Delta(d.clone()),
            Family::Fin => IndexMor::Fin(FinMap::from_delta(d)),
            Family::Lambda => IndexMor::Lambda(LambdaPrimeMor::from_delta(d)),
        }
    }

    pub fn is_identity(&self) -> bool {
        IndexMor::identity(self.family(), self.source()).map(|id| &id == self).unwrap_or(false)
    }

    /// Membership in the class `𝓘` of injective maps.
    pub fn is_injective(&self) -> bool {
        match self {
            IndexMor::Delta(d) => d.is_injective(),
            IndexMor::Fin(f) => f.is_injective(),
            IndexMor::Lambda(l) => l.is_injective(),
        }
    }
}

/// `g ∘ f`.
pub fn compose_index(g: &IndexMor, f: &IndexMor) -> Result<IndexMor, IndexError> {
    match (g, f) {
        (IndexMor::Delta(g), IndexMor::Delta(f)) => DeltaMap::compose(g, f).map(IndexMor::Delta),
        (IndexMor::Fin(g), IndexMor::Fin(f)) => FinMap::compose(g, f).map(IndexMor::Fin),
        (IndexMor::Lambda(g), IndexMor::Lambda(f)) => LambdaPrimeMor::compose(g, f).map(IndexMor::Lambda),
        _ => Err(IndexError::FamilyMismatch(g.family(), f.family())),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Size of the hom-set `a → b`, computed without enumeration.
pub fn hom_set_size(family: Family, a: LambdaObj, b: LambdaObj) -> u128 {
    use LambdaObj::*;
    match (family, a, b) {
        (Family::Lambda, Finite(0), _) => 1,
        (Family::Lambda, Finite(_), Finite(0)) => 0,
        (Family::Lambda, Finite(_), Star) | (Family::Lambda, Star, Star) => 1,
        (Family::Lambda, Star, Finite(_)) => 0,
        (Family::Lambda, Finite(n), Finite(k)) => {
            // (n+k-1)! / ((n-1)! (k-1)!) = n * C(n+k-1, n)
            (n as u128).saturating_mul(binomial((n + k - 1) as u128, n as u128))
        }
        (_, Star, _) | (_, _, Star) => 0,
        (Family::Delta, Finite(n), Finite(k)) => {
            if k == 0 {
                u128::from(n == 0)
            } else {
                binomial((n + k - 1) as u128, n as u128)
            }
        }
        (Family::Fin, Finite(n), Finite(k)) => (k as u128).saturating_pow(n as u32),
    }
}

/// Every morphism `a → b`, in a fixed lexicographic order.
pub fn hom_set(family: Family, a: LambdaObj, b: LambdaObj) -> Result<Vec<IndexMor>, IndexError> {
    let size = hom_set_size(family, a, b);
    if size > HOM_SET_LIMIT {
        return Err(IndexError::BoundExceeded(size));
    }
    Ok(match (family, a, b) {
        (Family::Lambda, a, b) => LambdaPrimeMor::all(a, b).into_iter().map(IndexMor::Lambda).collect(),
        (Family::Delta, LambdaObj::Finite(n), LambdaObj::Finite(k)) => {
            DeltaMap::all(n, k).into_iter().map(IndexMor::Delta).collect()
        }
        (Family::Fin, LambdaObj::Finite(n), LambdaObj::Finite(k)) => {
            FinMap::all(n, k).into_iter().map(IndexMor::Fin).collect()
        }
        _ => Vec::new(),
    })
}

/// An object of a comma category `(n↓C)`: a morphism `α : n → k` of `C`.
pub type CommaObject = IndexMor;

/// A morphism `β : α → α'` of `(n↓C)`, i.e. `β ∘ α = α'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CommaMor {
    pub dom: CommaObject,
    pub cod: CommaObject,
    pub map: IndexMor,
}

impl CommaMor {
    pub fn new(dom: CommaObject, map: IndexMor) -> Result<Self, IndexError> {
        let cod = compose_index(&map, &dom)?;
        Ok(CommaMor { dom, cod, map })
    }

    pub fn identity(obj: CommaObject) -> Self {
        let map = IndexMor::identity(obj.family(), obj.target()).expect("target is an object of the family");
        CommaMor { dom: obj.clone(), cod: obj, map }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CommaMor) -> Result<CommaMor, IndexError> {
        if next.dom != self.cod {
            return Err(IndexError::DomainMismatch {
                expected: format!("{:?}", next.dom),
                found: format!("{:?}", self.cod),
            });
        }
        Ok(CommaMor { dom: self.dom.clone(), cod: next.cod.clone(), map: compose_index(&next.map, &self.map)? })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ObjRepr {
    Num(usize),
    Text(String),
}

impl ObjRepr {
    fn parse(&self) -> Result<LambdaObj, IndexError> {
        match self {
            ObjRepr::Num(n) => Ok(LambdaObj::Finite(*n)),
            ObjRepr::Text(s) if s == "*" => Ok(LambdaObj::Star),
            ObjRepr::Text(s) => s
                .parse()
                .map(LambdaObj::Finite)
                .map_err(|_| IndexError::InvalidMap(format!("bad object {s:?}"))),
        }
    }

    fn from_obj(o: LambdaObj) -> Self {
        match o {
            LambdaObj::Finite(n) => ObjRepr::Num(n),
            LambdaObj::Star => ObjRepr::Text("*".into()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IndexMorRepr {
    family: Family,
    n: ObjRepr,
    k: ObjRepr,
    values: Vec<i64>,
}

impl From<IndexMor> for IndexMorRepr {
    fn from(m: IndexMor) -> Self {
        let values: Vec<i64> = match &m {
            IndexMor::Delta(d) => d.values().iter().map(|&v| v as i64).collect(),
            IndexMor::Fin(f) => f.values().iter().map(|&v| v as i64).collect(),
            IndexMor::Lambda(LambdaPrimeMor::Cyclic(c)) => c.lift().to_vec(),
            IndexMor::Lambda(_) => Vec::new(),
        };
        IndexMorRepr { family: m.family(), n: ObjRepr::from_obj(m.source()), k: ObjRepr::from_obj(m.target()), values }
    }
}

impl TryFrom<IndexMorRepr> for IndexMor {
    type Error = IndexError;
    fn try_from(r: IndexMorRepr) -> Result<Self, IndexError> {
        let (n, k) = (r.n.parse()?, r.k.parse()?);
        let finite = |o: LambdaObj| match o {
            LambdaObj::Finite(x) => Ok(x),
            LambdaObj::Star => Err(IndexError::InvalidMap(format!("{:?} has no object *", r.family))),
        };
        let unsigned = || -> Result<Vec<usize>, IndexError> {
            r.values
                .iter()
                .map(|&v| usize::try_from(v).map_err(|_| IndexError::InvalidMap(format!("negative value {v}"))))
                .collect()
        };
        match r.family {
            Family::Delta => Ok(IndexMor::Delta(DeltaMap::new(finite(n)?, finite(k)?, unsigned()?)?)),
            Family::Fin => Ok(IndexMor::Fin(FinMap::new(finite(n)?, finite(k)?, unsigned()?)?)),
            Family::Lambda => Ok(IndexMor::Lambda(match (n, k) {
                (LambdaObj::Finite(0), k) => LambdaPrimeMor::FromEmpty(k),
                (LambdaObj::Finite(n), LambdaObj::Star) => LambdaPrimeMor::ToStar(n),
                (LambdaObj::Star, LambdaObj::Star) => LambdaPrimeMor::StarId,
                (LambdaObj::Finite(n), LambdaObj::Finite(k)) => LambdaPrimeMor::Cyclic(CyclicMap::new(n, k, r.values)?),
                (LambdaObj::Star, _) => return Err(IndexError::InvalidMap("no maps out of * except the identity".into())),
            })),
        }
    }
}
