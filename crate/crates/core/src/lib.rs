//! Finite crossed modules and the structures they generate.
//!
//! This crate works with groups small enough that every object can be held
//! as an explicit table: groups are multiplication tables over indices
//! `0..n` (index `0` is always the identity), homomorphisms are index maps,
//! actions are tables of automorphisms, and cochains are value tables over
//! tuples. Everything is exact integer arithmetic — no floats, no hashing
//! nondeterminism — so any two runs of any operation produce identical
//! results.
//!
//! The modules build on each other in one direction:
//!
//! * [`group`] — finite groups, homomorphisms, actions, cosets, quotients.
//! * [`cohomology`] — normalized cochains of degree ≤ 4, the coboundary
//!   operator, and cohomology class counting by two independent backends.
//! * [`crossed_module`] — crossed modules, their axioms, and derived data
//!   (kernel, cokernel, induced action).
//! * [`catgroup`] — strict categorical groups, the associated categorical
//!   group of a crossed module, reduction to a 3-cocycle, and monoidal
//!   functors between reductions.
//! * [`extension`] — central extensions with a prescribed kernel map,
//!   their obstruction in degree-3 cohomology, and classification against
//!   degree-2 cohomology.
//! * [`prolongation`] — covering diagrams built over a quotient map, solved
//!   by delegation to the extension machinery.
//!
//! [`fixtures`] provides the small worked examples used throughout the test
//! suite and the command-line frontend.

pub mod catgroup;
pub mod cohomology;
pub mod crossed_module;
pub mod extension;
pub mod fixtures;
pub mod group;
pub mod prolongation;

pub(crate) mod snf;

/// Size bounds for the brute-force searches.
///
/// Every search in this crate is exhaustive; these bounds keep them from
/// being launched on inputs where exhaustion is hopeless. Operations that
/// hit a bound return a `BoundExceeded`/`BudgetExceeded` error rather than
/// running forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for which automorphism groups are enumerated.
    pub aut_order: usize,
    /// Largest extension order `|A| * |D|` for which the brute-force
    /// extension enumeration oracle will run.
    pub oracle_order: usize,
    /// Cochain enumeration is allowed while the candidate space holds at
    /// most `2^enumeration_bits` cochains.
    pub enumeration_bits: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            aut_order: 16,
            oracle_order: 12,
            enumeration_bits: 28,
        }
    }
}

impl Limits {
    /// Default limits, scaled so that brute-force searches accept objects
    /// of order up to `budget` where they would normally stop at their
    /// defaults. Smaller budgets tighten, larger budgets loosen.
    pub fn with_budget(budget: usize) -> Self {
        let d = Limits::default();
        Limits {
            aut_order: budget.max(d.aut_order),
            oracle_order: budget,
            enumeration_bits: d.enumeration_bits,
        }
    }
}
