//! Deciding equality of parallel formal morphisms by comparing the invariants
//! each doctrine makes complete.

use serde::Serialize;
use thiserror::Error;

use crate::dsl::print_object;
use crate::expr::{Doctrine, DoctrineKind};
use crate::invariant::{invariant, Invariant, InvariantError};
use crate::morph::{MorphError, MorphTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Morph(#[from] MorphError),
}

/// Which parts of the invariant decide equality in a doctrine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Compared {
    pub perm: bool,
    pub rot: bool,
    pub support: bool,
}

pub fn compared_components(doctrine: Doctrine) -> Compared {
    use DoctrineKind::*;
    let (perm, rot, support) = match doctrine.kind {
        Monoidal | Bicategory | NormalLaxFunctor | Pseudofunctor => (false, false, false),
        Symmetric | NormalLaxSymmetricFunctor | StrongSymmetricFunctor => (true, false, false),
        Shadow | NormalLaxShadowFunctor | StrongShadowFunctor => (false, true, false),
        LaxFunctor => (false, false, true),
        LaxSymmetricFunctor => (true, false, true),
        LaxShadowFunctor => (false, true, true),
    };
    Compared { perm, rot, support }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    NotEqual { differs: Vec<&'static str> },
    NotParallel { f_domain: String, f_codomain: String, g_domain: String, g_codomain: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub doctrine: String,
    pub f: Invariant,
    pub g: Invariant,
}

impl Decision {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

/// Same domain and same codomain.
pub fn parallel(f: &MorphTerm, g: &MorphTerm, doctrine: Doctrine) -> Result<bool, MorphError> {
    Ok(f.domain == g.domain && f.codomain(doctrine)? == g.codomain(doctrine)?)
}

pub fn decide_equal(f: &MorphTerm, g: &MorphTerm, doctrine: Doctrine) -> Result<Decision, DecideError> {
    let (fi, gi) = (invariant(f, doctrine)?, invariant(g, doctrine)?);
    let (fc, gc) = (f.codomain(doctrine)?, g.codomain(doctrine)?);
    let verdict = if f.domain != g.domain || fc != gc {
        Verdict::NotParallel {
            f_domain: print_object(&f.domain),
            f_codomain: print_object(&fc),
            g_domain: print_object(&g.domain),
            g_codomain: print_object(&gc),
        }
    } else {
        let c = compared_components(doctrine);
        let mut differs = Vec::new();
        if c.perm && fi.perm != gi.perm {
            differs.push("perm");
        }
        if c.rot && fi.rot != gi.rot {
            differs.push("rot");
        }
        if c.support && fi.support != gi.support {
            differs.push("support");
        }
        if differs.is_empty() {
            Verdict::Equal
        } else {
            Verdict::NotEqual { differs }
        }
    };
    Ok(Decision { verdict, doctrine: doctrine.to_string(), f: fi, g: gi })
}

#[derive(Debug, Clone, Serialize)]
pub struct BlackTieReport {
    pub black_tie: bool,
    /// Index pairs of parallel composites whose invariants differ.
    pub failures: Vec<(usize, usize)>,
    pub parallel_pairs: usize,
}

/// Whether every pair of parallel composites among the given ones is equal.
pub fn black_tie(composites: &[MorphTerm], doctrine: Doctrine) -> Result<BlackTieReport, DecideError> {
    let mut failures = Vec::new();
    let mut parallel_pairs = 0;
    for i in 0..composites.len() {
        for j in i + 1..composites.len() {
            let d = decide_equal(&composites[i], &composites[j], doctrine)?;
            match d.verdict {
                Verdict::NotParallel { .. } => {}
                Verdict::Equal => parallel_pairs += 1,
                Verdict::NotEqual { .. } => {
                    parallel_pairs += 1;
                    failures.push((i, j));
                }
            }
        }
    }
    Ok(BlackTieReport { black_tie: failures.is_empty(), failures, parallel_pairs })
}
