//! Localizations of the comma categories `(n↓C)` at a class of maps.
//!
//! Inverting the injective maps leaves a thin category, so the only question
//! about a pair of objects is whether a zig-zag connects them. Inverting
//! everything makes each comma category contractible.

use serde::{Deserialize, Serialize};

use super::{compose_index, CommaObject, CyclicMap, Family, IndexError, IndexMor, LambdaObj, LambdaPrimeMor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvertedClass {
    /// Injective maps (normal lax variants).
    Injections,
    /// All of Δ (pseudofunctors).
    AllDelta,
    /// All maps of Fin (strong symmetric functors).
    AllMaps,
    /// Δ together with `t : 1 → *` (strong shadow functors).
    DeltaAndTerminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThinLocalization {
    pub family: Family,
    pub inverted: InvertedClass,
}

/// Whether `a` and `b` are joined by a zig-zag whose backward legs lie in the
/// inverted class.
pub fn thin_reachable(loc: ThinLocalization, a: &CommaObject, b: &CommaObject) -> Result<bool, IndexError> {
    for obj in [a, b] {
        if obj.family() != loc.family {
            return Err(IndexError::FamilyMismatch(loc.family, obj.family()));
        }
    }
    if a.source() != b.source() {
        return Err(IndexError::DomainMismatch { expected: a.source().to_string(), found: b.source().to_string() });
    }
    if loc.inverted != InvertedClass::Injections {
        return Ok(true);
    }
    match (a, b) {
        (IndexMor::Delta(_), IndexMor::Delta(_)) | (IndexMor::Fin(_), IndexMor::Fin(_)) => Ok(kernel_refines(a, b)),
        (IndexMor::Lambda(x), IndexMor::Lambda(y)) => lambda_reachable(x, y),
        _ => unreachable!("families checked above"),
    }
}

fn values(m: &IndexMor) -> Vec<usize> {
    match m {
        IndexMor::Delta(d) => d.values().to_vec(),
        IndexMor::Fin(f) => f.values().to_vec(),
        IndexMor::Lambda(LambdaPrimeMor::Cyclic(c)) => (1..=c.source()).map(|x| c.apply(x)).collect(),
        IndexMor::Lambda(_) => Vec::new(),
    }
}

/// `a(x) = a(y)` implies `b(x) = b(y)`.
fn kernel_refines(a: &IndexMor, b: &IndexMor) -> bool {
    let (va, vb) = (values(a), values(b));
    (0..va.len()).all(|x| (x + 1..va.len()).all(|y| va[x] != va[y] || vb[x] == vb[y]))
}

fn lambda_reachable(a: &LambdaPrimeMor, b: &LambdaPrimeMor) -> Result<bool, IndexError> {
    if b.target() == LambdaObj::Star {
        return Ok(true);
    }
    if a.target() == LambdaObj::Star {
        return Ok(false);
    }
    match (a, b) {
        (LambdaPrimeMor::Cyclic(a), LambdaPrimeMor::Cyclic(b)) => {
            let (ea, _) = a.image_factor();
            let (eb, _) = b.image_factor();
            for beta in CyclicMap::all(ea.target(), eb.target()) {
                let via = compose_index(
                    &IndexMor::Lambda(LambdaPrimeMor::Cyclic(beta)),
                    &IndexMor::Lambda(LambdaPrimeMor::Cyclic(ea.clone())),
                )?;
                if via == IndexMor::Lambda(LambdaPrimeMor::Cyclic(eb.clone())) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        // Over the empty set every finite object is isomorphic to the identity.
        _ => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::DeltaMap;

    #[test]
    fn identity_reaches_everything_in_delta() {
        let loc = ThinLocalization { family: Family::Delta, inverted: InvertedClass::Injections };
        let id = IndexMor::Delta(DeltaMap::identity(3));
        for k in 0..=4 {
            for m in DeltaMap::all(3, k) {
                assert!(thin_reachable(loc, &id, &IndexMor::Delta(m)).unwrap());
            }
        }
        let fold = IndexMor::Delta(DeltaMap::new(3, 1, vec![1, 1, 1]).unwrap());
        assert!(!thin_reachable(loc, &fold, &id).unwrap());
    }

    #[test]
    fn terminal_is_forward_reachable() {
        let loc = ThinLocalization { family: Family::Lambda, inverted: InvertedClass::Injections };
        let a = IndexMor::Lambda(LambdaPrimeMor::Cyclic(CyclicMap::tau(2)));
        let star = IndexMor::Lambda(LambdaPrimeMor::ToStar(2));
        assert!(thin_reachable(loc, &a, &star).unwrap());
        assert!(!thin_reachable(loc, &star, &a).unwrap());
        let strong = ThinLocalization { family: Family::Lambda, inverted: InvertedClass::DeltaAndTerminal };
        assert!(thin_reachable(strong, &star, &a).unwrap());
    }
}
