//! Finite groups as explicit multiplication tables.
//!
//! A [`FiniteGroup`] of order `n` lives on the index set `0..n`, with index
//! `0` reserved for the identity. All structure — multiplication, inverses,
//! centers, cosets — is computed by direct table lookups and exhaustive
//! loops, which is exactly right for the group orders this crate targets
//! (a few dozen elements at most).
//!
//! Derived objects follow two canonicality conventions used throughout the
//! crate:
//!
//! * subsets of a group (subgroups, kernels, images, centers) are sorted
//!   ascending;
//! * constructed groups (quotients, restrictions, products) index their
//!   elements by an ascending canonical key, so the identity always lands
//!   on index `0` and repeated runs produce identical tables.

use thiserror::Error;

/// Validation failures for groups, homomorphisms, actions, and the
/// searches built on them. Each variant carries a minimal witness: the
/// smallest (in iteration order) tuple of element indices at which the
/// property fails.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// A multiplication table is not a group table. `axiom` names the
    /// failing axiom (`closure`, `identity`, `associativity`, `inverses`)
    /// and `witness` holds the offending indices (unused slots are 0).
    #[error("not a group: {axiom} fails at witness ({}, {}, {})", witness.0, witness.1, witness.2)]
    NotAGroup {
        axiom: &'static str,
        witness: (usize, usize, usize),
    },

    /// A map is not multiplicative: `f(x*y) != f(x)*f(y)`.
    #[error("not a homomorphism: fails at witness pair ({x}, {y})")]
    NotAHom { x: usize, y: usize },

    /// An assignment of maps is not an action by automorphisms.
    #[error("not an action by automorphisms: {why}; witness pair ({}, {})", witness.0, witness.1)]
    NotAnAction {
        why: &'static str,
        witness: (usize, usize),
    },

    /// A subset is not a subgroup; `witness` is an element demonstrating
    /// the failure (a missing identity, inverse, or product).
    #[error("not a subgroup: witness element {witness}")]
    NotASubgroup { witness: usize },

    /// A subgroup is not normal: conjugating `member` by `conjugator`
    /// lands on `conjugate`, which is outside the subgroup.
    #[error("not normal: {conjugator} * {member} * {conjugator}^-1 = {conjugate} is outside the subgroup")]
    NotNormal {
        conjugator: usize,
        member: usize,
        conjugate: usize,
    },

    /// Structural problems: wrong lengths, indices out of range.
    #[error("malformed {what}: expected size {expected}, got {got}")]
    BadShape {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// An exhaustive search was asked to run beyond its configured bound.
    #[error("{what}: size {size} exceeds bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
}

/// A finite group presented by its full multiplication table.
///
/// Elements are the indices `0..order`, with `0` the identity. Optional
/// labels are carried for display only; they take no part in equality.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>, // row-major: table[x * order + y] = x * y
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl std::hash::Hash for FiniteGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and wraps it as a group.
    ///
    /// The checks run in the order closure (all entries in range), identity
    /// (index 0 is two-sided), associativity (all triples), inverses; the
    /// first failure is reported with its witness.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::BadShape {
                what: "multiplication table",
                expected: 1,
                got: 0,
            });
        }
        for row in rows {
            if row.len() != n {
                return Err(GroupError::BadShape {
                    what: "multiplication table row",
                    expected: n,
                    got: row.len(),
                });
            }
        }
        let at = |x: usize, y: usize| rows[x][y];
        for x in 0..n {
            for y in 0..n {
                if at(x, y) >= n {
                    return Err(GroupError::NotAGroup {
                        axiom: "closure",
                        witness: (x, y, at(x, y)),
                    });
                }
            }
        }
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::NotAGroup {
                    axiom: "identity",
                    witness: (x, 0, 0),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return Err(GroupError::NotAGroup {
                            axiom: "associativity",
                            witness: (x, y, z),
                        });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => inverse[x] = y,
                None => {
                    return Err(GroupError::NotAGroup {
                        axiom: "inverses",
                        witness: (x, 0, 0),
                    })
                }
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            table.extend_from_slice(row);
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            labels: None,
        })
    }

    /// Builds and validates a table from a multiplication closure.
    fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        FiniteGroup::from_table(&rows)
    }

    /// The one-element group.
    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// The cyclic group of order `n`, written additively: `x * y = x + y mod n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1, "cyclic group order must be at least 1");
        let g = FiniteGroup::from_fn(n, |x, y| (x + y) % n).expect("cyclic table is a group");
        g.with_labels((0..n).map(|i| i.to_string()).collect())
            .expect("label count matches")
    }

    /// The dihedral group of order `2n` (symmetries of the regular
    /// `n`-gon). Element `r + n*f` is the rotation by `r` composed with
    /// `f` reflections, so indices `0..n` are the rotations.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 1, "dihedral parameter must be at least 1");
        let mul = |a: usize, b: usize| {
            let (r1, f1) = (a % n, a / n);
            let (r2, f2) = (b % n, b / n);
            let r = if f1 == 0 { (r1 + r2) % n } else { (r1 + n - r2) % n };
            r + n * ((f1 + f2) % 2)
        };
        let labels = (0..2 * n)
            .map(|i| {
                let (r, f) = (i % n, i / n);
                if f == 0 {
                    format!("r{r}")
                } else {
                    format!("sr{r}")
                }
            })
            .collect();
        FiniteGroup::from_fn(2 * n, mul)
            .expect("dihedral table is a group")
            .with_labels(labels)
            .expect("label count matches")
    }

    /// The direct product `self x other`, with `(a, b)` on index
    /// `a * |other| + b`. The identity `(0, 0)` lands on index 0.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let g = FiniteGroup::from_fn(n * m, |x, y| {
            let (a1, b1) = (x / m, x % m);
            let (a2, b2) = (y / m, y % m);
            self.mul(a1, a2) * m + other.mul(b1, b2)
        })
        .expect("product table is a group");
        let labels = (0..n * m)
            .map(|x| format!("({}, {})", self.label(x / m), other.label(x % m)))
            .collect();
        g.with_labels(labels).expect("label count matches")
    }

    /// Attaches display labels (one per element).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteGroup, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::BadShape {
                what: "label list",
                expected: self.order,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The identity element — always index 0.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `x^k` for any integer `k` (negative powers via the inverse).
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let (mut base, mut k) = if k < 0 { (self.inv(x), -k) } else { (x, k) };
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Conjugation `x * y * x^-1`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// The multiplicative order of an element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The center, as a sorted element list.
    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    /// Display label for an element (falls back to the index).
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// The multiplication table as rows (for serialization).
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.table[x * self.order..(x + 1) * self.order].to_vec())
            .collect()
    }

    /// Checks that a sorted, duplicate-free element list is a subgroup.
    pub fn check_subgroup(&self, subset: &[usize]) -> Result<(), GroupError> {
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GroupError::BadShape {
                what: "subgroup list (must be sorted and duplicate-free)",
                expected: subset.len(),
                got: subset.len(),
            });
        }
        if subset.iter().any(|&x| x >= self.order) {
            return Err(GroupError::BadShape {
                what: "subgroup list (element out of range)",
                expected: self.order,
                got: *subset.iter().max().unwrap(),
            });
        }
        if !subset.contains(&0) {
            return Err(GroupError::NotASubgroup { witness: 0 });
        }
        for &x in subset {
            for &y in subset {
                let p = self.mul(x, y);
                if subset.binary_search(&p).is_err() {
                    return Err(GroupError::NotASubgroup { witness: p });
                }
            }
        }
        // Closure under multiplication implies closure under inverses in a
        // finite group, so there is nothing further to check.
        Ok(())
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily: repeatedly adjoin the least
    /// element not yet generated. Deterministic, and small enough for the
    /// generator-image searches built on it.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut generated = vec![0];
        while generated.len() < self.order {
            let next = (0..self.order)
                .find(|x| generated.binary_search(x).is_err())
                .expect("closure is not yet the whole group");
            gens.push(next);
            generated = self.subgroup_closure(&gens);
        }
        gens
    }

    /// Checks that a subgroup is normal, reporting the first failing
    /// conjugation otherwise.
    pub fn check_normal(&self, subgroup: &[usize]) -> Result<(), GroupError> {
        self.check_subgroup(subgroup)?;
        for x in self.elements() {
            for &h in subgroup {
                let c = self.conj(x, h);
                if subgroup.binary_search(&c).is_err() {
                    return Err(GroupError::NotNormal {
                        conjugator: x,
                        member: h,
                        conjugate: c,
                    });
                }
            }
        }
        Ok(())
    }

    /// Restricts the group structure to a subgroup, producing a standalone
    /// group on local indices plus the embedding (local index -> ambient
    /// element). Local indices follow ascending ambient order, so the
    /// identity is local index 0.
    pub fn restrict(&self, subgroup: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        self.check_subgroup(subgroup)?;
        let embedding: Vec<usize> = subgroup.to_vec();
        let local = |g: usize| embedding.binary_search(&g).expect("closed subset");
        let n = embedding.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| local(self.mul(embedding[i], embedding[j]))).collect())
            .collect();
        let group = FiniteGroup::from_table(&rows)?
            .with_labels(embedding.iter().map(|&g| self.label(g)).collect())?;
        Ok((group, embedding))
    }
}

/// The partition of a group by a normal subgroup, together with the
/// quotient group it carries.
///
/// Cosets are sorted internally and listed in ascending order of their
/// least element, so the identity coset is always coset 0 and quotient
/// indices are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    group: FiniteGroup,
    subgroup: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    quotient: FiniteGroup,
    projection: GroupHom,
}

impl CosetDecomposition {
    /// Decomposes `group` by the normal subgroup `subgroup`.
    pub fn new(group: &FiniteGroup, subgroup: &[usize]) -> Result<CosetDecomposition, GroupError> {
        group.check_normal(subgroup)?;
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            // x is the least element of a fresh coset x * N.
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| group.mul(x, h)).collect();
            coset.sort_unstable();
            let idx = cosets.len();
            for &m in &coset {
                coset_of[m] = idx;
            }
            cosets.push(coset);
        }
        let k = cosets.len();
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| coset_of[group.mul(cosets[i][0], cosets[j][0])])
                    .collect()
            })
            .collect();
        let quotient = FiniteGroup::from_table(&rows)?.with_labels(
            cosets.iter().map(|c| format!("[{}]", group.label(c[0]))).collect(),
        )?;
        let projection = GroupHom::new(group.clone(), quotient.clone(), coset_of.clone())?;
        Ok(CosetDecomposition {
            group: group.clone(),
            subgroup: subgroup.to_vec(),
            cosets,
            coset_of,
            quotient,
            projection,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// The coset index of an ambient element.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// The least element of a coset — its canonical representative.
    pub fn representative(&self, coset: usize) -> usize {
        self.cosets[coset][0]
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    /// The projection homomorphism `group -> quotient`.
    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }
}

/// A homomorphism between two table groups, stored as the full image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    /// Validates multiplicativity (`f(x*y) = f(x)*f(y)` for all pairs) and
    /// wraps the map. `f(identity) = identity` is then automatic.
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        map: Vec<usize>,
    ) -> Result<GroupHom, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::BadShape {
                what: "homomorphism map",
                expected: source.order(),
                got: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(GroupError::BadShape {
                what: "homomorphism map (image out of range)",
                expected: target.order(),
                got: bad,
            });
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(GroupError::NotAHom { x, y });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.order()).collect(),
        }
    }

    /// The map sending everything to the identity.
    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Composition `other . self` (apply `self` first).
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(
            self.target, other.source,
            "composition endpoints do not match"
        );
        GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    /// The kernel, as a sorted element list.
    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&x| self.map[x] == 0).collect()
    }

    /// The image, as a sorted element list.
    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective() && self.is_surjective()
    }

    /// The inverse homomorphism, when this one is bijective.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.order()];
        for x in self.source.elements() {
            inv[self.map[x]] = x;
        }
        Some(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// An action of one group on another by automorphisms: a homomorphism
/// `actor -> Aut(acted)`, stored as one automorphism table per actor
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    actor: FiniteGroup,
    acted: FiniteGroup,
    assign: Vec<Vec<usize>>,
}

impl Action {
    /// Validates that every assigned map is a bijective endomorphism, that
    /// the identity acts trivially, and that the assignment is
    /// multiplicative: `assign[x*y] = assign[x] . assign[y]`.
    pub fn new(
        actor: FiniteGroup,
        acted: FiniteGroup,
        assign: Vec<Vec<usize>>,
    ) -> Result<Action, GroupError> {
        if assign.len() != actor.order() {
            return Err(GroupError::BadShape {
                what: "action table",
                expected: actor.order(),
                got: assign.len(),
            });
        }
        let n = acted.order();
        for (x, m) in assign.iter().enumerate() {
            if m.len() != n {
                return Err(GroupError::BadShape {
                    what: "action table row",
                    expected: n,
                    got: m.len(),
                });
            }
            if let Some(&bad) = m.iter().find(|&&v| v >= n) {
                return Err(GroupError::BadShape {
                    what: "action table row (image out of range)",
                    expected: n,
                    got: bad,
                });
            }
            let mut seen = vec![false; n];
            for &v in m {
                if seen[v] {
                    return Err(GroupError::NotAnAction {
                        why: "assigned map is not bijective",
                        witness: (x, v),
                    });
                }
                seen[v] = true;
            }
            for b in 0..n {
                for c in 0..n {
                    if m[acted.mul(b, c)] != acted.mul(m[b], m[c]) {
                        return Err(GroupError::NotAnAction {
                            why: "assigned map is not a homomorphism",
                            witness: (x, b),
                        });
                    }
                }
            }
        }
        for b in 0..n {
            if assign[0][b] != b {
                return Err(GroupError::NotAnAction {
                    why: "identity must act trivially",
                    witness: (0, b),
                });
            }
        }
        for x in actor.elements() {
            for y in actor.elements() {
                let xy = actor.mul(x, y);
                if (0..n).any(|b| assign[xy][b] != assign[x][assign[y][b]]) {
                    return Err(GroupError::NotAnAction {
                        why: "assignment is not multiplicative",
                        witness: (x, y),
                    });
                }
            }
        }
        Ok(Action {
            actor,
            acted,
            assign,
        })
    }

    /// The trivial action: everything acts as the identity map.
    pub fn trivial(actor: &FiniteGroup, acted: &FiniteGroup) -> Action {
        Action {
            actor: actor.clone(),
            acted: acted.clone(),
            assign: vec![(0..acted.order()).collect(); actor.order()],
        }
    }

    /// The conjugation action of a group on itself.
    pub fn conjugation(g: &FiniteGroup) -> Action {
        Action {
            actor: g.clone(),
            acted: g.clone(),
            assign: g
                .elements()
                .map(|x| g.elements().map(|y| g.conj(x, y)).collect())
                .collect(),
        }
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn acted(&self) -> &FiniteGroup {
        &self.acted
    }

    /// `x` acting on `b`.
    pub fn apply(&self, x: usize, b: usize) -> usize {
        self.assign[x][b]
    }

    /// The automorphism assigned to one actor element, as a map table.
    pub fn automorphism(&self, x: usize) -> &[usize] {
        &self.assign[x]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.assign
    }

    pub fn is_trivial(&self) -> bool {
        self.assign
            .iter()
            .all(|m| m.iter().enumerate().all(|(b, &v)| v == b))
    }

    /// Pulls the action back along a homomorphism into the actor: the
    /// result lets `hom.source()` act through its image.
    pub fn precompose(&self, hom: &GroupHom) -> Action {
        assert_eq!(
            hom.target(),
            &self.actor,
            "hom target must be the actor of the action"
        );
        Action {
            actor: hom.source().clone(),
            acted: self.acted.clone(),
            assign: hom
                .source()
                .elements()
                .map(|h| self.assign[hom.apply(h)].clone())
                .collect(),
        }
    }

    /// Restricts the acted group to a subgroup, given as the pair produced
    /// by [`FiniteGroup::restrict`]. Fails if some actor element moves the
    /// subgroup off itself.
    pub fn restrict_acted(
        &self,
        subgroup: &FiniteGroup,
        embedding: &[usize],
    ) -> Result<Action, GroupError> {
        let mut assign = Vec::with_capacity(self.actor.order());
        for x in self.actor.elements() {
            let mut row = Vec::with_capacity(embedding.len());
            for &b in embedding {
                let image = self.assign[x][b];
                match embedding.binary_search(&image) {
                    Ok(local) => row.push(local),
                    Err(_) => {
                        return Err(GroupError::NotAnAction {
                            why: "subgroup is not invariant under the action",
                            witness: (x, b),
                        })
                    }
                }
            }
            assign.push(row);
        }
        Action::new(self.actor.clone(), subgroup.clone(), assign)
    }

    /// Descends the action to a quotient of the acted group. Fails if the
    /// action does not respect the coset partition.
    pub fn on_quotient(&self, dec: &CosetDecomposition) -> Result<Action, GroupError> {
        assert_eq!(dec.group(), &self.acted, "decomposition is of another group");
        let mut assign = Vec::with_capacity(self.actor.order());
        for x in self.actor.elements() {
            let mut row = Vec::with_capacity(dec.cosets().len());
            for coset in dec.cosets() {
                let image = dec.coset_of(self.assign[x][coset[0]]);
                for &m in coset {
                    if dec.coset_of(self.assign[x][m]) != image {
                        return Err(GroupError::NotAnAction {
                            why: "action does not respect the coset partition",
                            witness: (x, m),
                        });
                    }
                }
                row.push(image);
            }
            assign.push(row);
        }
        Action::new(self.actor.clone(), dec.quotient().clone(), assign)
    }
}

/// The inner automorphism `y -> x * y * x^-1`.
pub fn inner_automorphism(g: &FiniteGroup, x: usize) -> GroupHom {
    GroupHom::new(
        g.clone(),
        g.clone(),
        g.elements().map(|y| g.conj(x, y)).collect(),
    )
    .expect("conjugation is always an automorphism")
}

/// All homomorphisms `source -> target`, canonically ordered by their map
/// vectors.
///
/// The search assigns images to a greedy generating set of the source
/// (pruned by element orders: `ord(f(g))` must divide `ord(g)`), extends
/// each assignment along a breadth-first word table, and keeps the
/// candidates that verify as homomorphisms. Exhaustive over the pruned
/// space, so the result is complete.
pub fn all_homs(source: &FiniteGroup, target: &FiniteGroup) -> Result<Vec<GroupHom>, GroupError> {
    let gens = source.generating_set();
    // Word table: expressions[e] = (prior element, generator index) with
    // e = prior * gens[gi], discovered breadth-first from the identity.
    let expressions = word_table(source, &gens);
    let mut candidate_images: Vec<Vec<usize>> = Vec::new();
    let mut space: u128 = 1;
    for &g in &gens {
        let og = source.element_order(g);
        let cands: Vec<usize> = target
            .elements()
            .filter(|&t| og % target.element_order(t) == 0)
            .collect();
        space = space.saturating_mul(cands.len() as u128);
        candidate_images.push(cands);
    }
    if space > 1 << 24 {
        return Err(GroupError::BoundExceeded {
            what: "homomorphism enumeration",
            size: space.min(usize::MAX as u128) as usize,
            bound: 1 << 24,
        });
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidate_images)
            .map(|(&c, cands)| cands[c])
            .collect();
        if let Some(map) = extend_by_words(source, target, &expressions, &images) {
            if let Ok(hom) = GroupHom::new(source.clone(), target.clone(), map) {
                out.push(hom);
            }
        }
        // Advance the mixed-radix counter over candidate choices.
        let mut i = gens.len();
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.map.cmp(&b.map));
                out.dedup_by(|a, b| a.map == b.map);
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidate_images[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Breadth-first word table over a generating set: for each element other
/// than the identity, one way to reach it as `prior * gens[gi]`.
fn word_table(g: &FiniteGroup, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
    let mut expr: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if !seen[y] {
                seen[y] = true;
                expr[y] = Some((x, gi));
                queue.push_back(y);
            }
        }
    }
    expr
}

/// Extends generator images to a full map along a word table. Returns
/// `None` only if the table does not cover the source (impossible for a
/// generating set).
fn extend_by_words(
    source: &FiniteGroup,
    target: &FiniteGroup,
    expressions: &[Option<(usize, usize)>],
    gen_images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    // The word table is breadth-first, so scanning by discovery order via
    // repeated passes terminates quickly; with tables this small a simple
    // fixpoint loop is clearest.
    let mut remaining = source.order() - 1;
    while remaining > 0 {
        let before = remaining;
        for e in source.elements() {
            if map[e] != usize::MAX {
                continue;
            }
            if let Some((prior, gi)) = expressions[e] {
                if map[prior] != usize::MAX {
                    map[e] = target.mul(map[prior], gen_images[gi]);
                    remaining -= 1;
                }
            }
        }
        if remaining == before {
            return None;
        }
    }
    Some(map)
}

/// The automorphism group of `g`, as a canonically ordered list of
/// bijective homomorphisms (the identity is always first).
///
/// Enumeration is by generator-image assignment with order-preservation
/// pruning and multiplicative closure, never by raw permutation search.
/// Groups larger than `limit` are rejected with `BoundExceeded`.
pub fn automorphism_group(
    g: &FiniteGroup,
    limit: usize,
) -> Result<Vec<GroupHom>, GroupError> {
    if g.order() > limit {
        return Err(GroupError::BoundExceeded {
            what: "automorphism enumeration",
            size: g.order(),
            bound: limit,
        });
    }
    let gens = g.generating_set();
    let expressions = word_table(g, &gens);
    let mut out = Vec::new();
    let mut candidate_images: Vec<Vec<usize>> = Vec::new();
    for &gen in &gens {
        let og = g.element_order(gen);
        candidate_images.push(g.elements().filter(|&t| g.element_order(t) == og).collect());
    }
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidate_images)
            .map(|(&c, cands)| cands[c])
            .collect();
        if let Some(map) = extend_by_words(g, g, &expressions, &images) {
            let mut seen = vec![false; g.order()];
            let bijective = map.iter().all(|&v| {
                let fresh = !seen[v];
                seen[v] = true;
                fresh
            });
            if bijective {
                if let Ok(hom) = GroupHom::new(g.clone(), g.clone(), map) {
                    out.push(hom);
                }
            }
        }
        let mut i = gens.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidate_images[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out.dedup_by(|a, b| a.map == b.map);
    Ok(out)
}

/// The automorphism group of `g` with its own group structure: a table
/// group over the canonical automorphism list, multiplied by composition
/// (`a * b` applies `b` first). Index 0 is the identity automorphism.
pub fn automorphism_group_structure(
    g: &FiniteGroup,
    limit: usize,
) -> Result<(FiniteGroup, Vec<GroupHom>), GroupError> {
    let auts = automorphism_group(g, limit)?;
    let index_of = |map: &[usize]| {
        auts.binary_search_by(|a| a.map().cmp(map))
            .expect("automorphisms are closed under composition")
    };
    let rows: Vec<Vec<usize>> = auts
        .iter()
        .map(|a| auts.iter().map(|b| index_of(b.then(a).map())).collect())
        .collect();
    let group = FiniteGroup::from_table(&rows)?;
    Ok((group, auts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=12 {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(g.identity(), 0);
            assert!(g.is_abelian());
        }
    }

    #[test]
    fn broken_tables_report_the_right_axiom() {
        // Constant row: 1*x = 0 for all x, so index 0 is not an identity.
        let rows = vec![vec![0, 1], vec![0, 0]];
        match FiniteGroup::from_table(&rows) {
            Err(GroupError::NotAGroup { axiom, .. }) => assert_eq!(axiom, "identity"),
            other => panic!("expected identity failure, got {other:?}"),
        }

        // Out-of-range entry.
        let rows = vec![vec![0, 1], vec![1, 7]];
        match FiniteGroup::from_table(&rows) {
            Err(GroupError::NotAGroup { axiom, witness }) => {
                assert_eq!(axiom, "closure");
                assert_eq!(witness, (1, 1, 7));
            }
            other => panic!("expected closure failure, got {other:?}"),
        }

        // A non-associative quasigroup on 5 elements: x*y = 2x+y mod 5 has
        // identity failures first; instead use the rock-paper-scissors-ish
        // table below, which keeps 0 as identity but breaks associativity.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(&rows) {
            Err(GroupError::NotAGroup { axiom, .. }) => assert_eq!(axiom, "associativity"),
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn dihedral_four_center_is_identity_and_half_turn() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        // The half-turn r^2 sits on index 2 in the rotation block.
        assert_eq!(d4.center(), vec![0, 2]);
    }

    #[test]
    fn dihedral_reflection_conjugation_inverts_rotations() {
        let d4 = FiniteGroup::dihedral(4);
        let s = 4; // the base reflection
        let conj = inner_automorphism(&d4, s);
        // Conjugating by a reflection inverts every rotation, exchanging
        // the two odd powers r and r^3.
        assert_eq!(conj.apply(1), 3);
        assert_eq!(conj.apply(3), 1);
        assert_eq!(conj.apply(2), 2);
    }

    #[test]
    fn hom_validation_on_cyclic_four_to_two() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        match GroupHom::new(z4, z2, vec![0, 1, 1, 0]) {
            Err(GroupError::NotAHom { .. }) => {}
            other => panic!("expected NotAHom, got {other:?}"),
        }
    }

    #[test]
    fn kernel_and_image_of_doubling_on_cyclic_four() {
        let z4 = FiniteGroup::cyclic(4);
        let d = GroupHom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        assert_eq!(d.kernel(), vec![0, 2]);
        assert_eq!(d.image(), vec![0, 2]);
        assert!(!d.is_injective());
        assert!(!d.is_surjective());
    }

    #[test]
    fn quotient_of_cyclic_four_by_half() {
        let z4 = FiniteGroup::cyclic(4);
        let dec = CosetDecomposition::new(&z4, &[0, 2]).unwrap();
        assert_eq!(dec.quotient().order(), 2);
        assert_eq!(dec.cosets(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(dec.coset_of(3), 1);
        assert_eq!(dec.representative(1), 1);
    }

    #[test]
    fn non_normal_subgroup_is_rejected_with_witness() {
        let d4 = FiniteGroup::dihedral(4);
        // The two-element subgroup generated by the base reflection is not
        // normal in the dihedral group of the square.
        match CosetDecomposition::new(&d4, &[0, 4]) {
            Err(GroupError::NotNormal { member, .. }) => assert_eq!(member, 4),
            other => panic!("expected NotNormal, got {other:?}"),
        }
    }

    #[test]
    fn restrict_relabels_a_subgroup_canonically() {
        let z4 = FiniteGroup::cyclic(4);
        let (half, embedding) = z4.restrict(&[0, 2]).unwrap();
        assert_eq!(half.order(), 2);
        assert_eq!(embedding, vec![0, 2]);
        assert_eq!(half.mul(1, 1), 0); // 2 + 2 = 0 in the ambient group
    }

    #[test]
    fn action_validation_catches_non_multiplicative_assignments() {
        let z4 = FiniteGroup::cyclic(4);
        // Identity on 1, inversion on 2: violates assign[1+1] = assign[1]^2.
        let assign = vec![
            vec![0, 1, 2, 3],
            vec![0, 1, 2, 3],
            vec![0, 3, 2, 1],
            vec![0, 1, 2, 3],
        ];
        match Action::new(z4.clone(), z4, assign) {
            Err(GroupError::NotAnAction { witness, .. }) => assert_eq!(witness, (1, 1)),
            other => panic!("expected NotAnAction, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_action_validates_on_dihedral() {
        let d4 = FiniteGroup::dihedral(4);
        let conj = Action::conjugation(&d4);
        // Round-trip through the validating constructor.
        let revalidated = Action::new(d4.clone(), d4, conj.tables().to_vec());
        assert!(revalidated.is_ok());
    }

    #[test]
    fn automorphisms_of_small_groups_have_known_counts() {
        let limit = crate::Limits::default().aut_order;
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(automorphism_group(&z4, limit).unwrap().len(), 2);

        let z2 = FiniteGroup::cyclic(2);
        let klein = z2.direct_product(&z2);
        let auts = automorphism_group(&klein, limit).unwrap();
        assert_eq!(auts.len(), 6);
        // Identity first, and the list is closed under composition.
        assert_eq!(auts[0].map(), &[0, 1, 2, 3]);
        let (aut_group, _) = automorphism_group_structure(&klein, limit).unwrap();
        assert_eq!(aut_group.order(), 6);
        assert!(!aut_group.is_abelian()); // Aut(Z/2 x Z/2) is symmetric on 3 letters
    }

    #[test]
    fn automorphism_bound_is_enforced() {
        let big = FiniteGroup::cyclic(17);
        match automorphism_group(&big, 16) {
            Err(GroupError::BoundExceeded { size, bound, .. }) => {
                assert_eq!((size, bound), (17, 16));
            }
            other => panic!("expected BoundExceeded, got {other:?}"),
        }
    }

    #[test]
    fn all_homs_from_cyclic_four_to_cyclic_two() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let homs = all_homs(&z4, &z2).unwrap();
        let maps: Vec<&[usize]> = homs.iter().map(|h| h.map()).collect();
        assert_eq!(maps, vec![&[0, 0, 0, 0][..], &[0, 1, 0, 1][..]]);
    }

    #[test]
    fn hom_composition_and_inverse() {
        let z4 = FiniteGroup::cyclic(4);
        let neg = GroupHom::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        assert!(neg.is_bijective());
        let id = neg.then(&neg);
        assert_eq!(id.map(), GroupHom::identity(&z4).map());
        assert_eq!(neg.inverse().unwrap().map(), neg.map());
    }

    #[test]
    fn element_orders_and_powers() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.pow(5, -1), 1);
        assert_eq!(z6.pow(2, 10), 2);
    }

    #[test]
    fn generating_sets_are_small_and_generate() {
        for g in [
            FiniteGroup::cyclic(8),
            FiniteGroup::dihedral(4),
            FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(4)),
        ] {
            let gens = g.generating_set();
            assert!(gens.len() <= 3);
            assert_eq!(g.subgroup_closure(&gens).len(), g.order());
        }
    }
}
