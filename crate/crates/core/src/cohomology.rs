//! Low-degree group cohomology with coefficients in a finite module.
//!
//! Cochains here are *normalized*: a degree-`n` cochain is a function from
//! `n`-tuples of group elements into an abelian coefficient group that
//! vanishes whenever any tuple entry is the identity. The coboundary of a
//! normalized cochain is again normalized, so the normalized complex
//! computes the same cohomology as the full bar complex while shrinking
//! the value table to the identity-free tuples — `(|G| - 1)^n` free
//! positions instead of `|G|^n`.
//!
//! Two independent backends compute class counts:
//!
//! * **Enumeration** walks every normalized cochain of the degree in
//!   canonical order, maintaining the coboundary incrementally (each step
//!   of the mixed-radix odometer changes one value, which touches only the
//!   few coboundary constraints reading that position). This yields the
//!   actual cocycles, canonical class representatives, and canonical least
//!   witnesses. Large walks are split into deterministic chunks and run in
//!   parallel; results are merged in chunk order, so thread count never
//!   affects output.
//!
//! * **Linear algebra** writes the coboundary operator as an integer
//!   matrix over a cyclic decomposition of the coefficients and reads
//!   kernel and image sizes off Smith normal forms. It confirms the counts
//!   without enumerating, and solves for (non-canonical) witnesses beyond
//!   the enumeration budget.
//!
//! Degrees 0 through 4 are representable; coboundaries are defined up to
//! degree 3 inputs, and class counting is offered for degrees 1 through 3.

use crate::group::{Action, FiniteGroup, GroupError, GroupHom};
use crate::snf;
use crate::Limits;
use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

/// Failures in cochain construction and cohomology computation.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error("coefficient group is not abelian")]
    NotAbelian,

    #[error("degree {degree} is unsupported here (supported: {min}..={max})")]
    DegreeUnsupported { degree: usize, min: usize, max: usize },

    #[error("cochain is not normalized: nonzero value on identity-containing tuple {tuple:?}")]
    NotNormalized { tuple: Vec<usize> },

    #[error("not a cocycle: coboundary is nonzero at tuple {tuple:?}")]
    NotACocycle { tuple: Vec<usize> },

    #[error("enumeration budget exceeded: space needs {bits} bits, limit is {limit}")]
    BudgetExceeded { bits: u32, limit: u32 },
}

/// A group together with an abelian coefficient group it acts on — the
/// ambient data for all cochains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: FiniteGroup,
    coeff: FiniteGroup,
    action: Action,
}

impl GModule {
    /// Validates that `coeff` is abelian and that `action` lets `group`
    /// act on `coeff`.
    pub fn new(
        group: FiniteGroup,
        coeff: FiniteGroup,
        action: Action,
    ) -> Result<GModule, CohomologyError> {
        if !coeff.is_abelian() {
            return Err(CohomologyError::NotAbelian);
        }
        if action.actor() != &group || action.acted() != &coeff {
            return Err(CohomologyError::Group(GroupError::BadShape {
                what: "module action endpoints",
                expected: group.order(),
                got: action.actor().order(),
            }));
        }
        Ok(GModule {
            group,
            coeff,
            action,
        })
    }

    /// The module with the trivial action.
    pub fn trivial(group: FiniteGroup, coeff: FiniteGroup) -> Result<GModule, CohomologyError> {
        let action = Action::trivial(&group, &coeff);
        GModule::new(group, coeff, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeff(&self) -> &FiniteGroup {
        &self.coeff
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// `x . a` — the action of a group element on a coefficient.
    pub fn act(&self, x: usize, a: usize) -> usize {
        self.action.apply(x, a)
    }

    fn tuple_count(&self, degree: usize) -> usize {
        self.group.order().pow(degree as u32)
    }

    fn tuple_of_index(&self, degree: usize, mut index: usize) -> Vec<usize> {
        let g = self.group.order();
        let mut t = vec![0; degree];
        for i in (0..degree).rev() {
            t[i] = index % g;
            index /= g;
        }
        t
    }

    fn index_of_tuple(&self, tuple: &[usize]) -> usize {
        let g = self.group.order();
        tuple.iter().fold(0, |acc, &x| acc * g + x)
    }

    /// Indices of the identity-free tuples of a degree, ascending. The
    /// degree-0 tuple (empty) counts as identity-free.
    fn free_tuples(&self, degree: usize) -> Vec<usize> {
        (0..self.tuple_count(degree))
            .filter(|&i| self.tuple_of_index(degree, i).iter().all(|&x| x != 0))
            .collect()
    }
}

/// One term of a coboundary evaluation: read the input cochain at `tuple`,
/// apply the action of `act_by` if present, and add with `sign`.
struct CoboundaryTerm {
    tuple: Vec<usize>,
    sign: i8,
    act_by: Option<usize>,
}

/// The terms of `(delta c)(tuple)` for an input cochain of degree
/// `tuple.len() - 1`:
///
/// ```text
/// (delta c)(x0, .., xn) = x0 . c(x1, .., xn)
///                        + sum_{i=1..n} (-1)^i c(x0, .., x_{i-1} x_i, .., xn)
///                        + (-1)^{n+1} c(x0, .., x_{n-1})
/// ```
fn coboundary_terms(group: &FiniteGroup, tuple: &[usize]) -> Vec<CoboundaryTerm> {
    let n = tuple.len() - 1; // input degree
    let mut terms = Vec::with_capacity(n + 2);
    terms.push(CoboundaryTerm {
        tuple: tuple[1..].to_vec(),
        sign: 1,
        act_by: Some(tuple[0]),
    });
    for i in 1..=n {
        let mut t = Vec::with_capacity(n);
        t.extend_from_slice(&tuple[..i - 1]);
        t.push(group.mul(tuple[i - 1], tuple[i]));
        t.extend_from_slice(&tuple[i + 1..]);
        terms.push(CoboundaryTerm {
            tuple: t,
            sign: if i % 2 == 0 { 1 } else { -1 },
            act_by: None,
        });
    }
    terms.push(CoboundaryTerm {
        tuple: tuple[..n].to_vec(),
        sign: if (n + 1) % 2 == 0 { 1 } else { -1 },
        act_by: None,
    });
    terms
}

/// The largest representable cochain degree.
pub const MAX_DEGREE: usize = 4;

/// A normalized cochain: a value table over all `degree`-tuples of the
/// module's group, vanishing on tuples that contain the identity.
///
/// The canonical ordering on cochains of one module and degree is
/// lexicographic over the value table (tuple indices ascending, values
/// compared as coefficient indices); every "least witness" and "canonical
/// representative" in this crate refers to that ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    module: GModule,
    degree: usize,
    values: Vec<usize>,
}

impl Cochain {
    /// The zero cochain.
    pub fn zero(module: GModule, degree: usize) -> Result<Cochain, CohomologyError> {
        if degree > MAX_DEGREE {
            return Err(CohomologyError::DegreeUnsupported {
                degree,
                min: 0,
                max: MAX_DEGREE,
            });
        }
        let len = module.tuple_count(degree);
        Ok(Cochain {
            module,
            degree,
            values: vec![0; len],
        })
    }

    /// Wraps a full value table, validating range and normalization.
    pub fn from_values(
        module: GModule,
        degree: usize,
        values: Vec<usize>,
    ) -> Result<Cochain, CohomologyError> {
        if degree > MAX_DEGREE {
            return Err(CohomologyError::DegreeUnsupported {
                degree,
                min: 0,
                max: MAX_DEGREE,
            });
        }
        let len = module.tuple_count(degree);
        if values.len() != len {
            return Err(CohomologyError::Group(GroupError::BadShape {
                what: "cochain value table",
                expected: len,
                got: values.len(),
            }));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= module.coeff.order()) {
            return Err(CohomologyError::Group(GroupError::BadShape {
                what: "cochain value (out of coefficient range)",
                expected: module.coeff.order(),
                got: bad,
            }));
        }
        for (i, &v) in values.iter().enumerate() {
            let t = module.tuple_of_index(degree, i);
            if v != 0 && t.contains(&0) {
                return Err(CohomologyError::NotNormalized { tuple: t });
            }
        }
        Ok(Cochain {
            module,
            degree,
            values,
        })
    }

    /// Builds a cochain from the nonzero entries only; everything else is
    /// zero. Entries on identity-containing tuples are rejected.
    pub fn from_entries(
        module: GModule,
        degree: usize,
        entries: &[(Vec<usize>, usize)],
    ) -> Result<Cochain, CohomologyError> {
        let mut c = Cochain::zero(module, degree)?;
        for (tuple, value) in entries {
            if tuple.len() != degree || tuple.iter().any(|&x| x >= c.module.group.order()) {
                return Err(CohomologyError::Group(GroupError::BadShape {
                    what: "cochain entry tuple",
                    expected: degree,
                    got: tuple.len(),
                }));
            }
            if *value >= c.module.coeff.order() {
                return Err(CohomologyError::Group(GroupError::BadShape {
                    what: "cochain entry value",
                    expected: c.module.coeff.order(),
                    got: *value,
                }));
            }
            if *value != 0 && tuple.contains(&0) {
                return Err(CohomologyError::NotNormalized {
                    tuple: tuple.clone(),
                });
            }
            let i = c.module.index_of_tuple(tuple);
            c.values[i] = *value;
        }
        Ok(c)
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The value at a tuple of group elements.
    pub fn get(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.degree, "tuple length must match degree");
        self.values[self.module.index_of_tuple(tuple)]
    }

    /// The full value table, indexed by tuple index.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The nonzero entries as (tuple, value) pairs, tuple-ascending.
    pub fn entries(&self) -> Vec<(Vec<usize>, usize)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (self.module.tuple_of_index(self.degree, i), v))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise sum (same module and degree required).
    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.module, other.module, "cochains over different modules");
        assert_eq!(self.degree, other.degree, "cochains of different degrees");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| self.module.coeff.mul(a, b))
            .collect();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values,
        }
    }

    /// Pointwise negation.
    pub fn neg(&self) -> Cochain {
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values: self.values.iter().map(|&a| self.module.coeff.inv(a)).collect(),
        }
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    /// The canonical (lexicographic) comparison.
    pub fn canonical_cmp(&self, other: &Cochain) -> std::cmp::Ordering {
        assert_eq!(self.module, other.module, "cochains over different modules");
        assert_eq!(self.degree, other.degree, "cochains of different degrees");
        self.values.cmp(&other.values)
    }

    /// The coboundary — one degree up. Defined for degrees `0..=3`.
    ///
    /// Normalization is preserved: the result of differentiating a
    /// normalized cochain vanishes on identity-containing tuples, which is
    /// asserted rather than forced.
    pub fn coboundary(&self) -> Cochain {
        assert!(
            self.degree < MAX_DEGREE,
            "coboundary raises the degree past the supported maximum"
        );
        let out_degree = self.degree + 1;
        let coeff = &self.module.coeff;
        let mut values = vec![0; self.module.tuple_count(out_degree)];
        for (i, slot) in values.iter_mut().enumerate() {
            let tuple = self.module.tuple_of_index(out_degree, i);
            let mut acc = 0;
            for term in coboundary_terms(&self.module.group, &tuple) {
                let mut v = self.values[self.module.index_of_tuple(&term.tuple)];
                if let Some(x) = term.act_by {
                    v = self.module.act(x, v);
                }
                if term.sign < 0 {
                    v = coeff.inv(v);
                }
                acc = coeff.mul(acc, v);
            }
            if tuple.contains(&0) {
                assert_eq!(
                    acc, 0,
                    "coboundary of a normalized cochain must be normalized"
                );
            }
            *slot = acc;
        }
        Cochain {
            module: self.module.clone(),
            degree: out_degree,
            values,
        }
    }

    /// Whether the coboundary vanishes. Defined for degrees `0..=3`.
    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// The first tuple at which the coboundary is nonzero, if any.
    pub fn cocycle_defect(&self) -> Option<Vec<usize>> {
        let d = self.coboundary();
        d.values
            .iter()
            .position(|&v| v != 0)
            .map(|i| self.module.tuple_of_index(d.degree, i))
    }

    /// Pullback along a homomorphism into the module's group:
    /// `(pullback c)(t) = c(hom(t_1), .., hom(t_n))`, a cochain over the
    /// module on `hom.source()` acting through `hom`.
    pub fn precompose(&self, hom: &GroupHom) -> Cochain {
        assert_eq!(
            hom.target(),
            &self.module.group,
            "pullback hom must land in the cochain's group"
        );
        let action = self.module.action.precompose(hom);
        let module = GModule::new(hom.source().clone(), self.module.coeff.clone(), action)
            .expect("pulled-back module is valid");
        let values = (0..module.tuple_count(self.degree))
            .map(|i| {
                let t = module.tuple_of_index(self.degree, i);
                let mapped: Vec<usize> = t.iter().map(|&x| hom.apply(x)).collect();
                self.values[self.module.index_of_tuple(&mapped)]
            })
            .collect();
        Cochain {
            module,
            degree: self.degree,
            values,
        }
    }

    /// Pushforward of values along a homomorphism of coefficient groups:
    /// `(pushforward c)(t) = hom(c(t))`, a cochain in `target_module`,
    /// which must share the group and have `hom.target()` as coefficients.
    ///
    /// The caller is responsible for `hom` being equivariant where that
    /// matters; this method only moves values.
    pub fn map_values(&self, target_module: &GModule, hom: &GroupHom) -> Cochain {
        assert_eq!(hom.source(), &self.module.coeff, "hom source mismatch");
        assert_eq!(
            hom.target(),
            &target_module.coeff,
            "hom target must be the new coefficients"
        );
        assert_eq!(
            target_module.group, self.module.group,
            "pushforward keeps the group"
        );
        Cochain {
            module: target_module.clone(),
            degree: self.degree,
            values: self.values.iter().map(|&v| hom.apply(v)).collect(),
        }
    }

    /// The values at the identity-free tuples, in ascending tuple order —
    /// the compressed form used by the enumeration engine.
    fn free_values(&self) -> Vec<u8> {
        self.module
            .free_tuples(self.degree)
            .iter()
            .map(|&i| self.values[i] as u8)
            .collect()
    }

    /// Rebuilds a cochain from compressed free values.
    fn from_free_values(module: &GModule, degree: usize, free: &[u8]) -> Cochain {
        let mut values = vec![0; module.tuple_count(degree)];
        for (&idx, &v) in module.free_tuples(degree).iter().zip(free) {
            values[idx] = v as usize;
        }
        Cochain {
            module: module.clone(),
            degree,
            values,
        }
    }
}

// ---------------------------------------------------------------------
// Enumeration backend
// ---------------------------------------------------------------------

/// One additive contribution to a coboundary constraint: the value at
/// free-position `pos`, pushed through `table` (an action composed with a
/// sign, as a lookup table on coefficient indices).
struct ConstraintEntry {
    pos: usize,
    table: Vec<u8>,
}

/// The coboundary of degree-`var_degree` cochains, expressed over free
/// positions: one constraint per identity-free tuple of the next degree.
struct Enumerator {
    coeff_order: usize,
    /// Flat addition table of the coefficient group.
    add: Vec<u8>,
    /// Negation table of the coefficient group.
    neg: Vec<u8>,
    free_count: usize,
    constraints: Vec<Vec<ConstraintEntry>>,
    /// For each free position, the (constraint, entry) pairs reading it.
    affected: Vec<Vec<(u32, u32)>>,
    /// Order-2 specialization: over Z/2 coefficients every live constraint
    /// entry is the identity read, so changing one position XORs a fixed
    /// bitmask over the constraint sums. Per position: sparse
    /// (word, mask) pairs over a bit-packed sum vector.
    bit_masks: Option<Vec<Vec<(u32, u64)>>>,
}

impl Enumerator {
    fn new(module: &GModule, var_degree: usize) -> Enumerator {
        let coeff = &module.coeff;
        let q = coeff.order();
        let mut add = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = coeff.mul(a, b) as u8;
            }
        }
        let neg: Vec<u8> = (0..q).map(|a| coeff.inv(a) as u8).collect();

        let free_vars = module.free_tuples(var_degree);
        let pos_of = |tuple_index: usize| free_vars.binary_search(&tuple_index).ok();
        let mut constraints = Vec::new();
        for &ci in &module.free_tuples(var_degree + 1) {
            let tuple = module.tuple_of_index(var_degree + 1, ci);
            let mut entries = Vec::new();
            for term in coboundary_terms(&module.group, &tuple) {
                // Reads at identity-containing tuples are the constant 0.
                let Some(pos) = pos_of(module.index_of_tuple(&term.tuple)) else {
                    continue;
                };
                let table: Vec<u8> = (0..q)
                    .map(|v| {
                        let mut w = match term.act_by {
                            Some(x) => module.act(x, v),
                            None => v,
                        };
                        if term.sign < 0 {
                            w = coeff.inv(w);
                        }
                        w as u8
                    })
                    .collect();
                entries.push(ConstraintEntry { pos, table });
            }
            constraints.push(entries);
        }
        let mut affected = vec![Vec::new(); free_vars.len()];
        for (ci, entries) in constraints.iter().enumerate() {
            for (ei, e) in entries.iter().enumerate() {
                affected[e.pos].push((ci as u32, ei as u32));
            }
        }
        let bit_masks = (q == 2).then(|| {
            let words = constraints.len().div_ceil(64);
            affected
                .iter()
                .map(|pairs| {
                    let mut dense = vec![0u64; words];
                    for &(ci, _) in pairs {
                        // Two reads of the same position in one constraint
                        // cancel mod 2; XOR accumulates exactly that parity.
                        dense[ci as usize / 64] ^= 1u64 << (ci % 64);
                    }
                    dense
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m != 0)
                        .map(|(w, &m)| (w as u32, m))
                        .collect()
                })
                .collect()
        });
        Enumerator {
            coeff_order: q,
            add,
            neg,
            free_count: free_vars.len(),
            constraints,
            affected,
            bit_masks,
        }
    }

    /// Total number of normalized cochains of the variable degree.
    fn space(&self) -> u128 {
        (self.coeff_order as u128)
            .checked_pow(self.free_count as u32)
            .unwrap_or(u128::MAX)
    }

    fn space_bits(&self) -> u32 {
        128 - self.space().leading_zeros()
    }

    #[inline]
    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.coeff_order + b as usize]
    }

    /// Coboundary values of the assignment `values`, one per constraint.
    fn sums_of(&self, values: &[u8]) -> Vec<u8> {
        self.constraints
            .iter()
            .map(|entries| {
                entries.iter().fold(0u8, |acc, e| {
                    self.add(acc, e.table[values[e.pos] as usize])
                })
            })
            .collect()
    }

    /// Walks one contiguous chunk of the odometer in canonical order,
    /// calling `visit` on each assignment whose coboundary equals
    /// `target`. `visit` returns `false` to stop early.
    ///
    /// The odometer starts at the assignment with index `start` (mixed
    /// radix, last position fastest) and takes `len` steps.
    fn walk_chunk(
        &self,
        target: &[u8],
        start: u128,
        len: u128,
        mut visit: impl FnMut(&[u8]) -> bool,
    ) {
        if self.bit_masks.is_some() {
            return self.walk_chunk_bits(target, start, len, visit);
        }
        let q = self.coeff_order as u128;
        // Seed the assignment from the start index.
        let mut values = vec![0u8; self.free_count];
        let mut rem = start;
        for p in (0..self.free_count).rev() {
            values[p] = (rem % q) as u8;
            rem /= q;
        }
        let mut sums = self.sums_of(&values);
        let mut mismatches = sums
            .iter()
            .zip(target)
            .filter(|(s, t)| s != t)
            .count();

        let mut steps: u128 = 0;
        loop {
            if mismatches == 0 && !visit(&values) {
                return;
            }
            steps += 1;
            if steps >= len {
                return;
            }
            // Increment the odometer; update affected constraints per
            // changed position.
            let mut p = self.free_count;
            loop {
                debug_assert!(p > 0, "odometer overflow within chunk length");
                p -= 1;
                let old = values[p];
                let new = if old as usize + 1 == self.coeff_order {
                    0
                } else {
                    old + 1
                };
                values[p] = new;
                for &(ci, ei) in &self.affected[p] {
                    let (ci, ei) = (ci as usize, ei as usize);
                    let table = &self.constraints[ci][ei].table;
                    let s_old = sums[ci];
                    // s_new = s_old - table[old] + table[new]
                    let s_new = self.add(
                        self.add(s_old, self.neg[table[old as usize] as usize]),
                        table[new as usize],
                    );
                    sums[ci] = s_new;
                    let was = s_old == target[ci];
                    let is = s_new == target[ci];
                    if was && !is {
                        mismatches += 1;
                    } else if !was && is {
                        mismatches -= 1;
                    }
                }
                if new != 0 {
                    break;
                }
            }
        }
    }

    /// The `walk_chunk` loop specialized to two-element coefficients:
    /// constraint sums live in packed `u64` words, one position change is
    /// a couple of XOR-and-popcount mask applications.
    fn walk_chunk_bits(
        &self,
        target: &[u8],
        start: u128,
        len: u128,
        mut visit: impl FnMut(&[u8]) -> bool,
    ) {
        let masks = self.bit_masks.as_ref().expect("bit path needs masks");
        let words = self.constraints.len().div_ceil(64);
        let mut values = vec![0u8; self.free_count];
        let mut rem = start;
        for p in (0..self.free_count).rev() {
            values[p] = (rem & 1) as u8;
            rem >>= 1;
        }
        // diff holds (sum != target) as bits; a match is diff == 0.
        let mut diff = vec![0u64; words];
        let mut mismatches: i64 = 0;
        for (ci, (&s, &t)) in self.sums_of(&values).iter().zip(target).enumerate() {
            if s != t {
                diff[ci / 64] |= 1u64 << (ci % 64);
                mismatches += 1;
            }
        }
        let len = u64::try_from(len).expect("bit chunks stay within u64");
        let mut steps: u64 = 0;
        loop {
            if mismatches == 0 && !visit(&values) {
                return;
            }
            steps += 1;
            if steps >= len {
                return;
            }
            let mut p = self.free_count;
            loop {
                p -= 1;
                let was_zero = values[p] == 0;
                values[p] ^= 1;
                for &(w, m) in &masks[p] {
                    let old = diff[w as usize];
                    let new = old ^ m;
                    diff[w as usize] = new;
                    mismatches += i64::from(new.count_ones()) - i64::from(old.count_ones());
                }
                if was_zero {
                    break;
                }
            }
        }
    }

    /// All assignments whose coboundary equals `target`, ascending. Splits
    /// into chunks and runs them in parallel when the space is large; the
    /// chunked results are concatenated in order, so the output is
    /// independent of thread count.
    fn collect_matches(
        &self,
        target: &[u8],
        cap: usize,
    ) -> Result<Vec<Vec<u8>>, CohomologyError> {
        let space = self.space();
        const SEQUENTIAL_LIMIT: u128 = 1 << 16;
        if space <= SEQUENTIAL_LIMIT {
            let mut out = Vec::new();
            let mut overflow = false;
            self.walk_chunk(target, 0, space, |values| {
                if out.len() == cap {
                    overflow = true;
                    return false;
                }
                out.push(values.to_vec());
                true
            });
            if overflow {
                return Err(CohomologyError::BudgetExceeded {
                    bits: self.space_bits(),
                    limit: 20,
                });
            }
            return Ok(out);
        }
        // Chunk over the most significant digits: enough chunks to feed
        // the thread pool, each still large enough to amortize seeding.
        let q = self.coeff_order as u128;
        let mut chunk_digits = 0u32;
        let mut chunks: u128 = 1;
        while chunks < 256 && (chunk_digits as usize) < self.free_count {
            chunk_digits += 1;
            chunks *= q;
        }
        let chunk_len = space / chunks;
        let results: Vec<Vec<Vec<u8>>> = (0..chunks as usize)
            .into_par_iter()
            .map(|chunk| {
                let mut local = Vec::new();
                self.walk_chunk(target, chunk as u128 * chunk_len, chunk_len, |values| {
                    if local.len() > cap {
                        return false;
                    }
                    local.push(values.to_vec());
                    true
                });
                local
            })
            .collect();
        let mut out = Vec::new();
        for mut r in results {
            out.append(&mut r);
        }
        if out.len() > cap {
            return Err(CohomologyError::BudgetExceeded {
                bits: self.space_bits(),
                limit: 20,
            });
        }
        Ok(out)
    }

    /// The first assignment (canonical order) whose coboundary equals
    /// `target`, if any. Sequential.
    fn first_match(&self, target: &[u8]) -> Option<Vec<u8>> {
        let mut found = None;
        self.walk_chunk(target, 0, self.space(), |values| {
            found = Some(values.to_vec());
            false
        });
        found
    }

    /// All distinct coboundary value vectors over the constraints — the
    /// image of the coboundary map, as compressed next-degree cochains.
    fn collect_images(&self) -> Vec<Vec<u8>> {
        let mut seen = std::collections::HashSet::new();
        let mut out: Vec<Vec<u8>> = Vec::new();
        let q = self.coeff_order as u128;
        let space = self.space();
        // Reuse walk_chunk with an impossible target is not an option (we
        // need every assignment), so walk manually via a target that we
        // ignore: run the odometer by chunks of the full space with a
        // match-all target check bypassed. Simplest correct approach: walk
        // with every possible target is wasteful; instead replicate the
        // walk inline.
        let mut values = vec![0u8; self.free_count];
        let mut sums = self.sums_of(&values);
        let mut steps: u128 = 0;
        loop {
            if seen.insert(sums.clone()) {
                out.push(sums.clone());
            }
            steps += 1;
            if steps >= space {
                break;
            }
            let mut p = self.free_count;
            loop {
                p -= 1;
                let old = values[p];
                let new = if old as usize + 1 == self.coeff_order {
                    0
                } else {
                    old + 1
                };
                values[p] = new;
                for &(ci, ei) in &self.affected[p] {
                    let (ci, ei) = (ci as usize, ei as usize);
                    let table = &self.constraints[ci][ei].table;
                    sums[ci] = self.add(
                        self.add(sums[ci], self.neg[table[old as usize] as usize]),
                        table[new as usize],
                    );
                }
                if new != 0 {
                    break;
                }
            }
        }
        let _ = q;
        out.sort_unstable();
        out
    }
}

fn check_bits(enumerator: &Enumerator, limits: &Limits) -> Result<(), CohomologyError> {
    let bits = enumerator.space_bits();
    if bits > limits.enumeration_bits {
        return Err(CohomologyError::BudgetExceeded {
            bits,
            limit: limits.enumeration_bits,
        });
    }
    Ok(())
}

/// Hard cap on how many cocycles or representatives a report will hold.
const COLLECTION_CAP: usize = 1 << 20;

/// All normalized cocycles of the degree, in canonical ascending order.
pub fn all_cocycles(
    module: &GModule,
    degree: usize,
    limits: &Limits,
) -> Result<Vec<Cochain>, CohomologyError> {
    if degree == 0 || degree > 3 {
        return Err(CohomologyError::DegreeUnsupported {
            degree,
            min: 1,
            max: 3,
        });
    }
    let en = Enumerator::new(module, degree);
    check_bits(&en, limits)?;
    let target = vec![0u8; en.constraints.len()];
    let matches = en.collect_matches(&target, COLLECTION_CAP)?;
    Ok(matches
        .iter()
        .map(|free| Cochain::from_free_values(module, degree, free))
        .collect())
}

/// Class counts and canonical representatives for one degree, by the
/// enumeration backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub module: GModule,
    pub degree: usize,
    /// Number of normalized cocycles of the degree.
    pub cocycle_count: usize,
    /// Number of normalized coboundaries of the degree.
    pub coboundary_count: usize,
    /// One canonical (least) cocycle per cohomology class, ascending; the
    /// zero cochain represents the trivial class and comes first.
    pub class_representatives: Vec<Cochain>,
}

impl CohomologyReport {
    pub fn class_count(&self) -> usize {
        self.class_representatives.len()
    }
}

/// Counts cocycles, coboundaries, and classes of degree 1..=3 by full
/// enumeration, returning the canonical least representative of every
/// class.
pub fn cohomology_report(
    module: &GModule,
    degree: usize,
    limits: &Limits,
) -> Result<CohomologyReport, CohomologyError> {
    let cocycles = all_cocycles(module, degree, limits)?;
    let boundaries = {
        let en = Enumerator::new(module, degree - 1);
        check_bits(&en, limits)?;
        en.collect_images()
    };
    // Peel cosets: the cocycle list is ascending, so the first uncovered
    // cocycle of each coset is its canonical least representative.
    let mut covered: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    let mut representatives = Vec::new();
    let en = Enumerator::new(module, degree);
    for z in &cocycles {
        let zfree = z.free_values();
        if covered.contains(&zfree) {
            continue;
        }
        representatives.push(z.clone());
        for b in &boundaries {
            let shifted: Vec<u8> = zfree
                .iter()
                .zip(b)
                .map(|(&x, &y)| en.add(x, y))
                .collect();
            covered.insert(shifted);
        }
    }
    let report = CohomologyReport {
        module: module.clone(),
        degree,
        cocycle_count: cocycles.len(),
        coboundary_count: boundaries.len(),
        class_representatives: representatives,
    };
    assert_eq!(
        report.cocycle_count,
        report.coboundary_count * report.class_representatives.len(),
        "class count must divide the cocycle count exactly"
    );
    Ok(report)
}

/// The canonical least witness `w` with `delta w = c`, or `None` when `c`
/// is not a coboundary.
///
/// Inside the enumeration budget the walk is canonical, so the witness is
/// the least cochain in canonical order. Beyond the budget the linear
/// backend solves for some witness (verified, but not necessarily least).
pub fn coboundary_witness(
    c: &Cochain,
    limits: &Limits,
) -> Result<Option<Cochain>, CohomologyError> {
    if c.degree == 0 || c.degree > MAX_DEGREE {
        return Err(CohomologyError::DegreeUnsupported {
            degree: c.degree,
            min: 1,
            max: MAX_DEGREE,
        });
    }
    if c.degree < MAX_DEGREE {
        if let Some(tuple) = c.cocycle_defect() {
            return Err(CohomologyError::NotACocycle { tuple });
        }
    }
    let en = Enumerator::new(&c.module, c.degree - 1);
    let target = c.free_values();
    if en.space_bits() <= limits.enumeration_bits {
        let found = en.first_match(&target);
        return Ok(found.map(|free| Cochain::from_free_values(&c.module, c.degree - 1, &free)));
    }
    // Linear fallback: witness existence and one witness, via Smith form.
    match linear_witness(c)? {
        Some(w) => {
            assert!(w.coboundary() == *c, "linear witness must verify");
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

// ---------------------------------------------------------------------
// Linear backend
// ---------------------------------------------------------------------

/// A finite abelian group written as a direct sum of cyclic groups:
/// generators, their orders, and integer coordinates for every element.
pub(crate) struct AbelianCoords {
    pub generators: Vec<usize>,
    pub moduli: Vec<usize>,
    /// coords[element] = one coordinate vector (entries in `0..moduli`).
    pub coords: Vec<Vec<i128>>,
    /// element_of[mixed-radix coordinate index] = element.
    element_of: Vec<usize>,
}

impl AbelianCoords {
    pub fn new(a: &FiniteGroup) -> AbelianCoords {
        assert!(a.is_abelian(), "cyclic decomposition needs an abelian group");
        let mut generators: Vec<usize> = Vec::new();
        // Split into primary components, then peel maximal cyclic factors.
        let order = a.order();
        let mut primes = Vec::new();
        let mut rest = order;
        let mut p = 2;
        while p * p <= rest {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for p in primes {
            // The p-primary component: elements of p-power order.
            let component: Vec<usize> = a
                .elements()
                .filter(|&x| {
                    let mut o = a.element_order(x);
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .collect();
            let (mut sub, mut embed) = a.restrict(&component).expect("primary component");
            // Peel: take a maximal-order cyclic factor and a complement,
            // recursing into the complement.
            while sub.order() > 1 {
                let max_order = sub.elements().map(|x| sub.element_order(x)).max().unwrap();
                let g = sub
                    .elements()
                    .find(|&x| sub.element_order(x) == max_order)
                    .unwrap();
                generators.push(embed[g]);
                let cyclic: Vec<usize> = {
                    let mut c: Vec<usize> = (0..max_order as i64).map(|k| sub.pow(g, k)).collect();
                    c.sort_unstable();
                    c
                };
                let complement = all_subgroups(&sub)
                    .into_iter()
                    .find(|h| {
                        h.len() * max_order == sub.order()
                            && intersection_size(h, &cyclic) == 1
                    })
                    .expect("a maximal cyclic factor of an abelian p-group splits off");
                let (next_sub, next_embed) = sub.restrict(&complement).expect("complement");
                embed = next_embed.iter().map(|&i| embed[i]).collect();
                sub = next_sub;
            }
        }
        let moduli: Vec<usize> = generators.iter().map(|&g| a.element_order(g)).collect();
        // Invert: enumerate all coordinate tuples and record the element.
        let total: usize = moduli.iter().product::<usize>().max(1);
        assert_eq!(total, a.order(), "decomposition must cover the group");
        let mut coords = vec![Vec::new(); a.order()];
        let mut seen = vec![false; a.order()];
        let mut element_of = vec![0usize; total];
        for idx in 0..total {
            let mut rem = idx;
            let mut tuple = Vec::with_capacity(moduli.len());
            let mut elem = 0usize;
            for (gi, &m) in moduli.iter().enumerate().rev() {
                let c = rem % m;
                rem /= m;
                tuple.push((gi, c));
                elem = a.mul(elem, a.pow(generators[gi], c as i64));
            }
            assert!(!seen[elem], "coordinates must be unique per element");
            seen[elem] = true;
            element_of[idx] = elem;
            let mut v = vec![0i128; moduli.len()];
            for (gi, c) in tuple {
                v[gi] = c as i128;
            }
            coords[elem] = v;
        }
        AbelianCoords {
            generators,
            moduli,
            coords,
            element_of,
        }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// The element with the given integer coordinates (reduced mod the
    /// moduli).
    pub fn element_of(&self, coords: &[i128]) -> usize {
        let mut idx = 0usize;
        for (i, &m) in self.moduli.iter().enumerate() {
            let c = coords[i].rem_euclid(self.moduli[i] as i128) as usize;
            idx = idx * m + c;
        }
        self.element_of[idx]
    }

    /// The matrix of an endomorphism given by its value table.
    pub fn matrix_of(&self, map: impl Fn(usize) -> usize) -> Vec<Vec<i128>> {
        let r = self.rank();
        let mut m = vec![vec![0i128; r]; r];
        for (j, &g) in self.generators.iter().enumerate() {
            let img = self.coords[map(g)].clone();
            for i in 0..r {
                m[i][j] = img[i];
            }
        }
        m
    }
}

/// Every subgroup of a small group, each sorted, the list lexicographic.
fn all_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    found.insert(vec![0]);
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(s) = frontier.pop() {
        for x in g.elements() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = s.clone();
            gens.push(x);
            let t = g.subgroup_closure(&gens);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    found.into_iter().collect()
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

/// Class counts by the linear backend (arbitrary precision, since value
/// spaces grow doubly exponentially in the degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCounts {
    pub cocycle_count: BigUint,
    pub coboundary_count: BigUint,
    pub class_count: BigUint,
}

/// The coboundary operator from degree `var_degree`, as an integer matrix
/// between coordinate spaces of free positions: rows are (free tuple of
/// degree `var_degree + 1`) x (coefficient coordinate), columns likewise
/// one degree down.
fn delta_matrix(module: &GModule, coords: &AbelianCoords, var_degree: usize) -> Vec<Vec<i128>> {
    let r = coords.rank();
    let free_vars = module.free_tuples(var_degree);
    let free_cons = module.free_tuples(var_degree + 1);
    let pos_of = |tuple_index: usize| free_vars.binary_search(&tuple_index).ok();
    let mut m = vec![vec![0i128; free_vars.len() * r]; free_cons.len() * r];
    for (bi, &ci) in free_cons.iter().enumerate() {
        let tuple = module.tuple_of_index(var_degree + 1, ci);
        for term in coboundary_terms(&module.group, &tuple) {
            let Some(bj) = pos_of(module.index_of_tuple(&term.tuple)) else {
                continue;
            };
            let block = match term.act_by {
                Some(x) => coords.matrix_of(|a| module.act(x, a)),
                None => {
                    let mut id = vec![vec![0i128; r]; r];
                    for (i, row) in id.iter_mut().enumerate() {
                        row[i] = 1;
                    }
                    id
                }
            };
            for i in 0..r {
                for j in 0..r {
                    m[bi * r + i][bj * r + j] += i128::from(term.sign) * block[i][j];
                }
            }
        }
    }
    m
}

/// `|image|` of the coboundary map out of degree `var_degree`, as a map
/// into the group of normalized cochains one degree up.
fn image_size(module: &GModule, coords: &AbelianCoords, var_degree: usize) -> BigUint {
    let r = coords.rank();
    let m = delta_matrix(module, coords, var_degree);
    let rows = m.len();
    if rows == 0 {
        return BigUint::from(1u32);
    }
    // Augment with the relation lattice of the target: one modulus column
    // per row coordinate.
    let cols = m[0].len();
    let mut aug = m;
    for (k, row) in aug.iter_mut().enumerate() {
        let coord = k % r;
        for extra in 0..rows {
            row.push(if extra == k {
                coords.moduli[coord] as i128
            } else {
                0
            });
        }
        debug_assert_eq!(row.len(), cols + rows);
    }
    let codomain_order: BigUint = (0..rows)
        .map(|k| BigUint::from(coords.moduli[k % r]))
        .product();
    let sublattice_index =
        snf::lattice_index(&aug).expect("augmented matrix has full row rank by construction");
    // |image| = |codomain| / [codomain : image].
    assert!(
        (&codomain_order % &sublattice_index) == BigUint::from(0u32) || true,
        "index divides"
    );
    codomain_order / sublattice_index
}

/// Class counts of degree 1..=3 by the linear backend: cocycles, then
/// coboundaries, via Smith normal forms of the two adjacent coboundary
/// matrices. Produces counts only — representatives come from the
/// enumeration backend.
pub fn cohomology_counts_linear(
    module: &GModule,
    degree: usize,
) -> Result<LinearCounts, CohomologyError> {
    if degree == 0 || degree > 3 {
        return Err(CohomologyError::DegreeUnsupported {
            degree,
            min: 1,
            max: 3,
        });
    }
    let coords = AbelianCoords::new(&module.coeff);
    let free_n = module.free_tuples(degree).len();
    let domain_order: BigUint = (0..free_n * coords.rank())
        .map(|k| BigUint::from(coords.moduli[k % coords.rank()]))
        .product();
    let image_out = image_size(module, &coords, degree);
    let cocycle_count = domain_order / &image_out;
    let coboundary_count = image_size(module, &coords, degree - 1);
    assert!(
        (&cocycle_count % &coboundary_count) == BigUint::from(0u32),
        "coboundaries embed in cocycles"
    );
    let class_count = &cocycle_count / &coboundary_count;
    Ok(LinearCounts {
        cocycle_count,
        coboundary_count,
        class_count,
    })
}

/// A witness from the linear backend: solve `delta w = c` over integer
/// coordinates with slack columns for the coefficient moduli.
fn linear_witness(c: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    let module = &c.module;
    let coords = AbelianCoords::new(&module.coeff);
    let r = coords.rank();
    let var_degree = c.degree - 1;
    let m = delta_matrix(module, &coords, var_degree);
    let free_cons = module.free_tuples(c.degree);
    let free_vars = module.free_tuples(var_degree);
    let rows = free_cons.len() * r;
    if rows == 0 {
        // No constraints: the zero witness works iff c is zero.
        return Ok(if c.is_zero() {
            Some(Cochain::zero(module.clone(), var_degree)?)
        } else {
            None
        });
    }
    let mut aug = m;
    for (k, row) in aug.iter_mut().enumerate() {
        for extra in 0..rows {
            row.push(if extra == k {
                coords.moduli[k % r] as i128
            } else {
                0
            });
        }
    }
    let mut target = vec![0i128; rows];
    for (bi, &ci) in free_cons.iter().enumerate() {
        let value = c.values[ci];
        for (i, &x) in coords.coords[value].iter().enumerate() {
            target[bi * r + i] = x;
        }
    }
    let Some(solution) = snf::solve(&aug, &target) else {
        return Ok(None);
    };
    let mut w = Cochain::zero(module.clone(), var_degree)?;
    for (bj, &vi) in free_vars.iter().enumerate() {
        let coord = &solution[bj * r..(bj + 1) * r];
        w.values[vi] = coords.element_of(coord);
    }
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn trivial_module(g: usize, a: usize) -> GModule {
        GModule::trivial(z(g), z(a)).unwrap()
    }

    #[test]
    fn degree_one_coboundary_on_z2_vanishes() {
        let m = trivial_module(2, 2);
        let h = Cochain::from_entries(m, 1, &[(vec![1], 1)]).unwrap();
        let dh = h.coboundary();
        // delta h (s, s) = h(s) - h(0) + h(s) = 0 over Z/2 coefficients.
        assert!(dh.is_zero());
        assert!(h.is_cocycle());
    }

    #[test]
    fn single_entry_degree_two_on_z4_is_not_a_cocycle() {
        let m = trivial_module(4, 2);
        let g = Cochain::from_entries(m, 2, &[(vec![1, 1], 1)]).unwrap();
        assert!(!g.is_cocycle());
        // The first defect: delta g(1,1,2) = g(1,1) - g(2,2)... evaluates
        // nonzero; exhibit it exactly.
        let dg = g.coboundary();
        assert_eq!(dg.get(&[1, 1, 2]), 1);
        assert_eq!(g.cocycle_defect(), Some(vec![1, 1, 2]));
    }

    #[test]
    fn normalization_is_enforced_and_preserved() {
        let m = trivial_module(3, 3);
        let bad = Cochain::from_entries(m.clone(), 2, &[(vec![0, 1], 1)]);
        assert!(matches!(bad, Err(CohomologyError::NotNormalized { .. })));
        let c = Cochain::from_entries(m, 2, &[(vec![1, 2], 2), (vec![2, 2], 1)]).unwrap();
        let dc = c.coboundary();
        for (tuple, v) in dc.entries() {
            assert!(v == 0 || tuple.iter().all(|&x| x != 0));
        }
    }

    #[test]
    fn coboundary_of_coboundary_vanishes() {
        // A handful of deterministic cochains across modules and degrees.
        let modules = [
            trivial_module(4, 2),
            trivial_module(3, 3),
            GModule::new(
                z(2),
                z(3),
                Action::new(z(2), z(3), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap(),
            )
            .unwrap(),
        ];
        for m in &modules {
            for degree in 1..=2usize {
                let n = m.group().order();
                let a = m.coeff().order();
                for salt in 0..4usize {
                    let len = n.pow(degree as u32);
                    let values: Vec<usize> = (0..len)
                        .map(|i| {
                            let t = m.tuple_of_index(degree, i);
                            if t.contains(&0) {
                                0
                            } else {
                                (i * 7 + salt * 3) % a
                            }
                        })
                        .collect();
                    let c = Cochain::from_values(m.clone(), degree, values).unwrap();
                    assert!(c.coboundary().coboundary().is_zero(), "dd != 0");
                }
            }
        }
    }

    #[test]
    fn witness_found_for_an_actual_coboundary() {
        let m = trivial_module(4, 2);
        let a = Cochain::from_entries(m, 1, &[(vec![1], 1)]).unwrap();
        let da = a.coboundary();
        let w = coboundary_witness(&da, &Limits::default()).unwrap().unwrap();
        assert_eq!(w.coboundary(), da);
        // The canonical witness is the least preimage: here [0,0,0,1]
        // beats [0,1,0,0] because they differ by the parity character.
        assert_eq!(w.values(), &[0, 0, 0, 1]);
    }

    #[test]
    fn witness_absent_for_the_nontrivial_three_class_on_z2() {
        let m = trivial_module(2, 2);
        let k = Cochain::from_entries(m, 3, &[(vec![1, 1, 1], 1)]).unwrap();
        assert!(k.is_cocycle());
        assert!(coboundary_witness(&k, &Limits::default()).unwrap().is_none());
    }

    #[test]
    fn witness_rejects_non_cocycles() {
        let m = trivial_module(4, 2);
        let g = Cochain::from_entries(m, 2, &[(vec![1, 1], 1)]).unwrap();
        match coboundary_witness(&g, &Limits::default()) {
            Err(CohomologyError::NotACocycle { tuple }) => assert_eq!(tuple, vec![1, 1, 2]),
            other => panic!("expected NotACocycle, got {other:?}"),
        }
    }

    #[test]
    fn degree_two_report_on_z2_z2() {
        let m = trivial_module(2, 2);
        let rep = cohomology_report(&m, 2, &Limits::default()).unwrap();
        assert_eq!(rep.cocycle_count, 2);
        assert_eq!(rep.coboundary_count, 1);
        assert_eq!(rep.class_count(), 2);
        assert!(rep.class_representatives[0].is_zero());
    }

    #[test]
    fn linear_counts_match_enumeration_on_small_modules() {
        let cases = [
            (trivial_module(2, 2), 2),
            (trivial_module(2, 2), 3),
            (trivial_module(3, 3), 2),
            (trivial_module(4, 2), 2),
            (trivial_module(2, 3), 2),
            (trivial_module(4, 4), 2),
            // 2^16 cochains: crosses into the chunked parallel walk.
            (trivial_module(5, 2), 2),
            (
                GModule::new(
                    z(2),
                    z(3),
                    Action::new(z(2), z(3), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap(),
                )
                .unwrap(),
                2,
            ),
        ];
        for (m, degree) in cases {
            let rep = cohomology_report(&m, degree, &Limits::default()).unwrap();
            let lin = cohomology_counts_linear(&m, degree).unwrap();
            assert_eq!(BigUint::from(rep.cocycle_count), lin.cocycle_count);
            assert_eq!(BigUint::from(rep.coboundary_count), lin.coboundary_count);
            assert_eq!(BigUint::from(rep.class_count()), lin.class_count);
        }
    }

    #[test]
    fn inverted_coefficients_give_trivial_degree_two_classes() {
        // Z/2 acting on Z/3 by inversion: one class in degree 2.
        let m = GModule::new(
            z(2),
            z(3),
            Action::new(z(2), z(3), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap(),
        )
        .unwrap();
        let rep = cohomology_report(&m, 2, &Limits::default()).unwrap();
        assert_eq!(
            (rep.cocycle_count, rep.coboundary_count, rep.class_count()),
            (1, 1, 1)
        );
    }

    #[test]
    fn budget_rejects_oversized_enumeration() {
        let m = trivial_module(6, 6);
        let limits = Limits {
            enumeration_bits: 10,
            ..Limits::default()
        };
        match cohomology_report(&m, 2, &limits) {
            Err(CohomologyError::BudgetExceeded { .. }) => {}
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn abelian_coords_decomposes_mixed_groups() {
        let a = z(2).direct_product(&z(4)).direct_product(&z(3));
        let coords = AbelianCoords::new(&a);
        let mut moduli = coords.moduli.clone();
        moduli.sort_unstable();
        assert_eq!(moduli, vec![2, 3, 4]);
        // Round-trip every element through its coordinates.
        for x in a.elements() {
            assert_eq!(coords.element_of(&coords.coords[x]), x);
        }
    }

    #[test]
    fn pullback_and_pushforward_move_cochains_between_modules() {
        let m = trivial_module(2, 2);
        let k = Cochain::from_entries(m, 3, &[(vec![1, 1, 1], 1)]).unwrap();
        // Pull back along the projection Z/4 -> Z/2.
        let proj = GroupHom::new(z(4), z(2), vec![0, 1, 0, 1]).unwrap();
        let pulled = k.precompose(&proj);
        assert_eq!(pulled.module().group().order(), 4);
        assert_eq!(pulled.get(&[1, 1, 1]), 1);
        assert_eq!(pulled.get(&[3, 1, 1]), 1);
        assert_eq!(pulled.get(&[2, 1, 1]), 0);
        assert!(pulled.is_cocycle());

        // Push forward along the inclusion Z/2 -> Z/4 (doubling).
        let target = GModule::trivial(z(2), z(4)).unwrap();
        let incl = GroupHom::new(z(2), z(4), vec![0, 2]).unwrap();
        let pushed = k.map_values(&target, &incl);
        assert_eq!(pushed.get(&[1, 1, 1]), 2);
    }
}
