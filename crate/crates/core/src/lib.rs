//! Free coherence categories for monoidal, bicategorical, symmetric and shadow
//! structures and for lax functors between them, together with the
//! index-category invariants that decide when two formal diagrams commute.

pub mod decide;
pub mod dsl;
pub mod expr;
pub mod index;
pub mod invariant;
pub mod morph;
pub mod oracle;
pub mod witness;

pub use decide::{black_tie, decide_equal, parallel, Decision, Verdict};
pub use dsl::{parse_graph, parse_moves, parse_object, print_object, ParseError};
pub use expr::{
    supporting_object, validate, Doctrine, DoctrineKind, EdgeId, ExprError, Frontier, Graph, ObjectExpr, Orientation,
    Path, Step,
};
pub use invariant::{invariant, Invariant, InvariantError, Support};
pub use morph::{apply_move, compose, Direction, Move, MoveKind, MorphError, MorphTerm};
