//! Crossed modules of finite groups.
//!
//! A crossed module is a homomorphism `d : B -> D` (here: `boundary`, from
//! the `source` group into the `range` group) together with an action of
//! `D` on `B` by automorphisms, subject to two axioms. Writing the source
//! additively, the range multiplicatively, and the action as `x . b`:
//!
//! * **C1** (Peiffer): `d(b) . c = b + c - b` — the action of a boundary
//!   image is conjugation by its preimage;
//! * **C2** (equivariance): `d(x . b) = x d(b) x^-1`.
//!
//! The axioms force a familiar shape: `Ker d` is central in the source,
//! `Im d` is normal in the range, and the range action descends to an
//! action of the cokernel on the kernel. [`derive`] computes that package;
//! the facts themselves are theorems, so `derive` asserts them rather than
//! returning errors.

use crate::group::{Action, CosetDecomposition, FiniteGroup, GroupError, GroupHom};
use thiserror::Error;

/// Validation failures for crossed modules, their morphisms, and their
/// quotients.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum XModError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error("component mismatch: {what}")]
    ComponentMismatch { what: &'static str },

    #[error("axiom C1 fails: the boundary image of {b} does not act as conjugation by {b} (moves {c})")]
    AxiomC1 { b: usize, c: usize },

    #[error("axiom C2 fails: the boundary is not equivariant at x = {x}, b = {b}")]
    AxiomC2 { x: usize, b: usize },

    #[error("morphism square fails: the boundaries do not commute with the maps at source element {b}")]
    HomSquare { b: usize },

    #[error("morphism is not equivariant at x = {x}, b = {b}")]
    HomEquivariance { x: usize, b: usize },

    #[error("subgroup is not inside the boundary kernel: witness {witness}")]
    NotInKernel { witness: usize },

    #[error("subgroup is not invariant under the range action: witness x = {x}, b = {b}")]
    NotThetaInvariant { x: usize, b: usize },
}

/// A validated crossed module. Construction checks both axioms, so every
/// value of this type satisfies them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    boundary: GroupHom,
    action: Action,
}

impl CrossedModule {
    /// Validates the two crossed module axioms over the given boundary and
    /// action. The action's actor must be the boundary's target and its
    /// acted group the boundary's source.
    pub fn new(boundary: GroupHom, action: Action) -> Result<CrossedModule, XModError> {
        if action.actor() != boundary.target() {
            return Err(XModError::ComponentMismatch {
                what: "the action's actor must be the boundary's range",
            });
        }
        if action.acted() != boundary.source() {
            return Err(XModError::ComponentMismatch {
                what: "the action's acted group must be the boundary's source",
            });
        }
        let b_group = boundary.source();
        for b in b_group.elements() {
            let db = boundary.apply(b);
            for c in b_group.elements() {
                if action.apply(db, c) != b_group.conj(b, c) {
                    return Err(XModError::AxiomC1 { b, c });
                }
            }
        }
        let d_group = boundary.target();
        for x in d_group.elements() {
            for b in b_group.elements() {
                if boundary.apply(action.apply(x, b)) != d_group.conj(x, boundary.apply(b)) {
                    return Err(XModError::AxiomC2 { x, b });
                }
            }
        }
        Ok(CrossedModule { boundary, action })
    }

    /// The additive group upstairs.
    pub fn source(&self) -> &FiniteGroup {
        self.boundary.source()
    }

    /// The multiplicative group downstairs.
    pub fn range(&self) -> &FiniteGroup {
        self.boundary.target()
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// `x . b`.
    pub fn act(&self, x: usize, b: usize) -> usize {
        self.action.apply(x, b)
    }

    /// The conjugation crossed module `G -> G` of a group: identity
    /// boundary, conjugation action.
    pub fn conjugation(g: &FiniteGroup) -> CrossedModule {
        CrossedModule::new(GroupHom::identity(g), Action::conjugation(g))
            .expect("conjugation satisfies both axioms")
    }
}

/// The derived package of a crossed module: kernel, image, cokernel, and
/// the induced action of the cokernel on the kernel.
#[derive(Debug, Clone)]
pub struct DerivedData {
    /// `Ker d` as ambient source elements, sorted.
    pub kernel_elements: Vec<usize>,
    /// `Ker d` as a standalone group (local indices follow ascending
    /// ambient order; the embedding is `kernel_elements`).
    pub kernel: FiniteGroup,
    /// `Im d` as ambient range elements, sorted.
    pub image_elements: Vec<usize>,
    /// The cokernel decomposition of the range by the image.
    pub cokernel: CosetDecomposition,
    /// The induced action of the cokernel on the kernel.
    pub induced: Action,
}

/// Computes kernel, image, cokernel, and induced action. The structural
/// facts used along the way (kernel centrality, image normality,
/// representative independence) are consequences of the axioms, so any
/// failure is a defect and panics.
pub fn derive(xm: &CrossedModule) -> DerivedData {
    let kernel_elements = xm.boundary().kernel();
    let (kernel, embedding) = xm
        .source()
        .restrict(&kernel_elements)
        .expect("a kernel is a subgroup");
    let center = xm.source().center();
    assert!(
        kernel_elements.iter().all(|k| center.binary_search(k).is_ok()),
        "the boundary kernel must be central in the source"
    );

    let image_elements = xm.boundary().image();
    xm.range()
        .check_normal(&image_elements)
        .expect("a boundary image is normal in the range");
    let cokernel =
        CosetDecomposition::new(xm.range(), &image_elements).expect("image is normal");

    let restricted = xm
        .action()
        .restrict_acted(&kernel, &embedding)
        .expect("the kernel is invariant under the range action");
    // Representative independence: two range elements in one coset act
    // identically on the kernel, so acting through representatives is
    // well defined.
    for (s, coset) in cokernel.cosets().iter().enumerate() {
        let rep = cokernel.representative(s);
        for &x in coset {
            for local in kernel.elements() {
                assert_eq!(
                    xm.act(x, embedding[local]),
                    xm.act(rep, embedding[local]),
                    "coset members must act identically on the kernel"
                );
            }
        }
    }
    let tables: Vec<Vec<usize>> = cokernel
        .cosets()
        .iter()
        .enumerate()
        .map(|(s, _)| {
            let rep = cokernel.representative(s);
            restricted.automorphism(rep).to_vec()
        })
        .collect();
    let induced = Action::new(cokernel.quotient().clone(), kernel.clone(), tables)
        .expect("induced cokernel action is an action");
    DerivedData {
        kernel_elements,
        kernel,
        image_elements,
        cokernel,
        induced,
    }
}

/// A morphism of crossed modules: a map of sources and a map of ranges
/// that commute with the boundaries and respect the actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModHom {
    source_xm: CrossedModule,
    target_xm: CrossedModule,
    on_source: GroupHom,
    on_range: GroupHom,
}

impl XModHom {
    /// Validates the commuting square (`on_range . d = d' . on_source`)
    /// and equivariance (`on_source(x . b) = on_range(x) . on_source(b)`).
    pub fn new(
        source_xm: &CrossedModule,
        target_xm: &CrossedModule,
        on_source: GroupHom,
        on_range: GroupHom,
    ) -> Result<XModHom, XModError> {
        if on_source.source() != source_xm.source() || on_source.target() != target_xm.source() {
            return Err(XModError::ComponentMismatch {
                what: "source map endpoints",
            });
        }
        if on_range.source() != source_xm.range() || on_range.target() != target_xm.range() {
            return Err(XModError::ComponentMismatch {
                what: "range map endpoints",
            });
        }
        for b in source_xm.source().elements() {
            if on_range.apply(source_xm.boundary().apply(b))
                != target_xm.boundary().apply(on_source.apply(b))
            {
                return Err(XModError::HomSquare { b });
            }
        }
        for x in source_xm.range().elements() {
            for b in source_xm.source().elements() {
                if on_source.apply(source_xm.act(x, b))
                    != target_xm.act(on_range.apply(x), on_source.apply(b))
                {
                    return Err(XModError::HomEquivariance { x, b });
                }
            }
        }
        Ok(XModHom {
            source_xm: source_xm.clone(),
            target_xm: target_xm.clone(),
            on_source,
            on_range,
        })
    }

    pub fn identity(xm: &CrossedModule) -> XModHom {
        XModHom::new(
            xm,
            xm,
            GroupHom::identity(xm.source()),
            GroupHom::identity(xm.range()),
        )
        .expect("identity is a morphism")
    }

    pub fn source_xm(&self) -> &CrossedModule {
        &self.source_xm
    }

    pub fn target_xm(&self) -> &CrossedModule {
        &self.target_xm
    }

    /// The component on the additive groups.
    pub fn on_source(&self) -> &GroupHom {
        &self.on_source
    }

    /// The component on the multiplicative groups.
    pub fn on_range(&self) -> &GroupHom {
        &self.on_range
    }
}

/// Quotients a crossed module by a central subgroup of its source that is
/// contained in the boundary kernel and invariant under the range action,
/// returning the quotient crossed module and the projection morphism.
pub fn quotient_xmod(
    xm: &CrossedModule,
    n: &[usize],
) -> Result<(CrossedModule, XModHom), XModError> {
    xm.source().check_subgroup(n)?;
    let kernel = xm.boundary().kernel();
    if let Some(&w) = n.iter().find(|&&x| kernel.binary_search(&x).is_err()) {
        return Err(XModError::NotInKernel { witness: w });
    }
    for x in xm.range().elements() {
        for &b in n {
            if n.binary_search(&xm.act(x, b)).is_err() {
                return Err(XModError::NotThetaInvariant { x, b });
            }
        }
    }
    // n sits inside the kernel, hence in the center, hence is normal.
    let dec = CosetDecomposition::new(xm.source(), n)?;
    let boundary_map: Vec<usize> = dec
        .cosets()
        .iter()
        .map(|coset| xm.boundary().apply(coset[0]))
        .collect();
    let boundary = GroupHom::new(dec.quotient().clone(), xm.range().clone(), boundary_map)?;
    let action = xm.action().on_quotient(&dec)?;
    let quotient = CrossedModule::new(boundary, action)?;
    let projection = XModHom::new(
        xm,
        &quotient,
        dec.projection().clone(),
        GroupHom::identity(xm.range()),
    )?;
    Ok((quotient, projection))
}
