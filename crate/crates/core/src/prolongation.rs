//! Prolongations: extending a group extension along a ζ-kernel.
//!
//! A pre-prolongation starts from a central extension datum
//! `π : B → Π` (with `Ker π` central), a surjection `ζ : Ker π → A`,
//! a normal monomorphism `η : Π → D`, and an action θ of `D` on
//! `B̄ = B / Ker ζ`. These induce a crossed module
//!
//! ```text
//! d̄ : B̄ → D,   d̄(b̄) = η(π(b)),
//! ```
//!
//! together with `ζ̄ : Ker d̄ → A` — an abstract ζ-kernel in the sense of
//! [`extension`](crate::extension). A *covering* of the pre-prolongation
//! is a ζ̄-extension of that kernel, packaged as a
//! [`ProlongationDiagram`] with the top map `β : B → E`:
//!
//! ```text
//! Ker π ──i──▶ B ──π──▶ Π
//!   │ζ         │β        │η
//!   ▼          ▼          ▼
//!   A ──j──▶  E ──p──▶  D
//! ```
//!
//! Existence of coverings is governed by the obstruction of the induced
//! kernel ([`covering_obstruction`]); when it vanishes the covering
//! classes correspond to `H²(Coker d̄, A)` ([`classify_coverings`]).

use crate::crossed_module::{derive, CrossedModule, XModError};
use crate::extension::{classify, obstruction, AbstractZetaKernel, ClassificationReport,
    ExtensionError, Obstruction, ZetaExtension};
use crate::group::{Action, CosetDecomposition, FiniteGroup, GroupError, GroupHom};
use crate::Limits;
use thiserror::Error;

/// Validation failures for pre-prolongations and prolongation diagrams.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProlongationError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Extension(#[from] ExtensionError),

    #[error("component mismatch: {what}")]
    ComponentMismatch { what: &'static str },

    #[error("pi is not surjective: {missed} has no preimage")]
    PiNotSurjective { missed: usize },

    #[error("Ker pi is not central: {k} does not commute with {x}")]
    KernelNotCentral { k: usize, x: usize },

    #[error("eta is not injective: {witness} maps to the identity")]
    EtaNotInjective { witness: usize },

    #[error("the image of eta is not normal: conjugating {h} by {x} leaves the image")]
    EtaImageNotNormal { x: usize, h: usize },

    #[error("zeta is not surjective: {missed} has no preimage")]
    ZetaNotSurjective { missed: usize },

    #[error("the induced data is not a crossed module: {0}")]
    NotACrossedModule(XModError),

    #[error("the induced zeta is ill-defined on coset {coset}")]
    ZetaBarIllDefined { coset: usize },

    #[error("diagram square {square} fails at element {witness}")]
    SquareFails { square: &'static str, witness: usize },
}

/// The coset decomposition `B / Ker ζ` underlying a pre-prolongation.
/// Exposed standalone so that θ — an action on the quotient — can be
/// written down before the [`PreProlongation`] exists.
pub fn bar_decomposition(
    pi: &GroupHom,
    zeta: &GroupHom,
) -> Result<CosetDecomposition, ProlongationError> {
    let (kernel_group, kernel_embedding) = pi.source().restrict(&pi.kernel())?;
    if zeta.source() != &kernel_group {
        return Err(ProlongationError::ComponentMismatch {
            what: "zeta must be defined on the kernel of pi",
        });
    }
    let ker_zeta_global: Vec<usize> = zeta
        .kernel()
        .into_iter()
        .map(|c| kernel_embedding[c])
        .collect();
    Ok(CosetDecomposition::new(pi.source(), &ker_zeta_global)?)
}

/// A pre-prolongation `(π, ζ, η, θ)`. Construction validates:
///
/// * π surjective with central kernel,
/// * ζ surjective out of `Ker π` onto an abelian `A`,
/// * η injective with normal image,
/// * θ an action of `D = target(η)` on `B̄ = B / Ker ζ` making
///   `(B̄, D, d̄, θ)` a crossed module,
/// * the induced `ζ̄ : Ker d̄ → A` a ζ-kernel over that crossed module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreProlongation {
    pi: GroupHom,
    zeta: GroupHom,
    eta: GroupHom,
    theta: Action,
    kernel_group: FiniteGroup,
    kernel_embedding: Vec<usize>,
    bar: CosetDecomposition,
    induced: AbstractZetaKernel,
}

impl PreProlongation {
    pub fn new(
        pi: GroupHom,
        zeta: GroupHom,
        eta: GroupHom,
        theta: Action,
    ) -> Result<PreProlongation, ProlongationError> {
        let b = pi.source();
        if let Some(missed) = pi.target().elements().find(|x| !pi.map().contains(x)) {
            return Err(ProlongationError::PiNotSurjective { missed });
        }
        let ker_pi = pi.kernel();
        for &k in &ker_pi {
            for x in b.elements() {
                if b.mul(k, x) != b.mul(x, k) {
                    return Err(ProlongationError::KernelNotCentral { k, x });
                }
            }
        }
        let (kernel_group, kernel_embedding) = b.restrict(&ker_pi)?;
        if zeta.source() != &kernel_group {
            return Err(ProlongationError::ComponentMismatch {
                what: "zeta must be defined on the kernel of pi",
            });
        }
        let a = zeta.target().clone();
        if !a.is_abelian() {
            return Err(ProlongationError::ComponentMismatch {
                what: "the coefficient group must be abelian",
            });
        }
        if let Some(missed) = a.elements().find(|al| !zeta.map().contains(al)) {
            return Err(ProlongationError::ZetaNotSurjective { missed });
        }
        if eta.source() != pi.target() {
            return Err(ProlongationError::ComponentMismatch {
                what: "eta must start at the target of pi",
            });
        }
        if !eta.is_injective() {
            let witness = eta
                .source()
                .elements()
                .find(|&x| x != 0 && eta.apply(x) == 0)
                .unwrap_or(0);
            return Err(ProlongationError::EtaNotInjective { witness });
        }
        let d_group = eta.target();
        let image = eta.image();
        for x in d_group.elements() {
            for &h in &image {
                let c = d_group.conj(x, h);
                if image.binary_search(&c).is_err() {
                    return Err(ProlongationError::EtaImageNotNormal { x, h });
                }
            }
        }

        let ker_zeta_global: Vec<usize> = zeta
            .kernel()
            .into_iter()
            .map(|c| kernel_embedding[c])
            .collect();
        let bar = CosetDecomposition::new(b, &ker_zeta_global)?;
        if theta.actor() != d_group {
            return Err(ProlongationError::ComponentMismatch {
                what: "theta must be an action of the target of eta",
            });
        }
        if theta.acted() != bar.quotient() {
            return Err(ProlongationError::ComponentMismatch {
                what: "theta must act on B modulo Ker zeta",
            });
        }

        let dbar_map: Vec<usize> = bar
            .cosets()
            .iter()
            .map(|coset| {
                let value = eta.apply(pi.apply(coset[0]));
                for &m in coset {
                    assert_eq!(
                        eta.apply(pi.apply(m)),
                        value,
                        "Ker ζ ⊆ Ker π makes the boundary well-defined"
                    );
                }
                value
            })
            .collect();
        let dbar = GroupHom::new(bar.quotient().clone(), d_group.clone(), dbar_map)?;
        let xm = CrossedModule::new(dbar, theta.clone())
            .map_err(ProlongationError::NotACrossedModule)?;

        let derived = derive(&xm);
        let mut zbar_map = Vec::with_capacity(derived.kernel.order());
        for c in derived.kernel.elements() {
            let coset = derived.kernel_elements[c];
            let mut values = bar.cosets()[coset].iter().map(|&m| {
                ker_pi
                    .binary_search(&m)
                    .ok()
                    .map(|local| zeta.apply(local))
            });
            let Some(Some(first)) = values.next() else {
                return Err(ProlongationError::ZetaBarIllDefined { coset });
            };
            if values.any(|v| v != Some(first)) {
                return Err(ProlongationError::ZetaBarIllDefined { coset });
            }
            zbar_map.push(first);
        }
        let zbar = GroupHom::new(derived.kernel.clone(), a.clone(), zbar_map)?;
        let induced = AbstractZetaKernel::new(xm, a, zbar)?;

        Ok(PreProlongation {
            pi,
            zeta,
            eta,
            theta,
            kernel_group,
            kernel_embedding,
            bar,
            induced,
        })
    }

    /// The base group `B`.
    pub fn base(&self) -> &FiniteGroup {
        self.pi.source()
    }

    /// The coefficient group `A`.
    pub fn coefficients(&self) -> &FiniteGroup {
        self.zeta.target()
    }

    pub fn pi(&self) -> &GroupHom {
        &self.pi
    }

    pub fn zeta(&self) -> &GroupHom {
        &self.zeta
    }

    pub fn eta(&self) -> &GroupHom {
        &self.eta
    }

    pub fn theta(&self) -> &Action {
        &self.theta
    }

    /// `Ker π` as a group in its own right.
    pub fn kernel_group(&self) -> &FiniteGroup {
        &self.kernel_group
    }

    /// The inclusion `Ker π ↪ B` as an index table.
    pub fn kernel_embedding(&self) -> &[usize] {
        &self.kernel_embedding
    }

    /// The decomposition of `B` by `Ker ζ`, whose quotient is `B̄`.
    pub fn bar(&self) -> &CosetDecomposition {
        &self.bar
    }

    /// The induced ζ-kernel `(B̄ → D, θ, ζ̄)`.
    pub fn induced_kernel(&self) -> &AbstractZetaKernel {
        &self.induced
    }
}

/// The crossed module `(B̄, D, d̄, θ)` induced by a pre-prolongation,
/// together with `ζ̄`, packaged as an abstract ζ-kernel. The construction
/// itself runs — and can fail — inside [`PreProlongation::new`]; this
/// accessor returns the validated result.
pub fn induced_crossed_module(pre: &PreProlongation) -> AbstractZetaKernel {
    pre.induced.clone()
}

/// A candidate covering: an extension of the induced kernel together
/// with the top map `β : B → E`. Assemble freely and check with
/// [`verify_prolongation`]; everything [`classify_coverings`] returns is
/// already checked.
#[derive(Debug, Clone)]
pub struct ProlongationDiagram {
    pub pre: PreProlongation,
    pub ext: ZetaExtension,
    pub beta_top: GroupHom,
}

/// Checks every square of the prolongation diagram exhaustively:
///
/// * the embedded extension extends the induced kernel,
/// * `β∘i = j∘ζ` on `Ker π` (left square),
/// * `p∘β = η∘π` on `B` (right square),
/// * `β` factors through `B̄` as the extension's own `β̄` (bottom row).
pub fn verify_prolongation(
    diag: ProlongationDiagram,
) -> Result<ProlongationDiagram, ProlongationError> {
    let pre = &diag.pre;
    if diag.ext.kernel() != pre.induced_kernel() {
        return Err(ProlongationError::ComponentMismatch {
            what: "the extension must be over the induced kernel",
        });
    }
    if diag.beta_top.source() != pre.base() || diag.beta_top.target() != diag.ext.group() {
        return Err(ProlongationError::ComponentMismatch {
            what: "beta must map the base group into the extension group",
        });
    }
    for c in pre.kernel_group().elements() {
        let global = pre.kernel_embedding()[c];
        if diag.beta_top.apply(global) != diag.ext.j().apply(pre.zeta().apply(c)) {
            return Err(ProlongationError::SquareFails {
                square: "beta∘i = j∘zeta",
                witness: global,
            });
        }
    }
    for b in pre.base().elements() {
        if diag.ext.p().apply(diag.beta_top.apply(b)) != pre.eta().apply(pre.pi().apply(b)) {
            return Err(ProlongationError::SquareFails {
                square: "p∘beta = eta∘pi",
                witness: b,
            });
        }
    }
    for b in pre.base().elements() {
        let through_bar = diag.ext.beta().apply(pre.bar().coset_of(b));
        if diag.beta_top.apply(b) != through_bar {
            return Err(ProlongationError::SquareFails {
                square: "beta = beta-bar∘projection",
                witness: b,
            });
        }
    }
    Ok(diag)
}

/// The obstruction to the existence of coverings: the obstruction of the
/// induced ζ-kernel in `H³(Coker d̄, A)`.
pub fn covering_obstruction(
    pre: &PreProlongation,
    limits: &Limits,
) -> Result<Obstruction, ProlongationError> {
    Ok(obstruction(pre.induced_kernel(), limits)?)
}

/// The coverings of a pre-prolongation: the classification of the
/// induced kernel, with each representative wrapped — and verified — as
/// a full prolongation diagram.
#[derive(Debug, Clone)]
pub struct CoveringReport {
    pub pre: PreProlongation,
    pub classification: ClassificationReport,
    pub coverings: Vec<ProlongationDiagram>,
}

impl CoveringReport {
    pub fn class_count(&self) -> usize {
        self.coverings.len()
    }
}

/// Classifies the coverings of a pre-prolongation against
/// `H²(Coker d̄, A)`: empty when the covering obstruction does not
/// vanish, otherwise one verified diagram per class.
pub fn classify_coverings(
    pre: &PreProlongation,
    limits: &Limits,
) -> Result<CoveringReport, ProlongationError> {
    let classification = classify(pre.induced_kernel(), limits)?;
    let coverings = classification
        .representatives
        .iter()
        .map(|ext| {
            let beta_top = pre.bar().projection().then(ext.beta());
            verify_prolongation(ProlongationDiagram {
                pre: pre.clone(),
                ext: ext.clone(),
                beta_top,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CoveringReport {
        pre: pre.clone(),
        classification,
        coverings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{enumerate_extensions_oracle, induced_zeta};
    use crate::fixtures;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn the_preprolongation_fixtures_validate() {
        fixtures::pre_mod2_z4();
        fixtures::pre_mod2_z4_twisted();
    }

    #[test]
    fn induced_kernels_match_the_doubling_kernels() {
        assert_eq!(
            induced_crossed_module(&fixtures::pre_mod2_z4()),
            fixtures::kernel_double_z4()
        );
        assert_eq!(
            induced_crossed_module(&fixtures::pre_mod2_z4_twisted()),
            fixtures::kernel_double_z4_twisted()
        );
    }

    /// `A = 1`: collapsing the whole kernel gives `B̄ ≅ Π`, `d̄ = η`.
    fn pre_collapsed() -> PreProlongation {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let pi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let trivial = FiniteGroup::trivial();
        let (kernel_group, _) = z4.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::trivial(&kernel_group, &trivial);
        let eta = GroupHom::new(z2, z4.clone(), vec![0, 2]).unwrap();
        let bar = bar_decomposition(&pi, &zeta).unwrap();
        let theta = Action::trivial(&z4, bar.quotient());
        PreProlongation::new(pi, zeta, eta, theta).unwrap()
    }

    #[test]
    fn collapsing_the_kernel_induces_an_injective_boundary() {
        let pre = pre_collapsed();
        let induced = pre.induced_kernel();
        assert_eq!(induced.xm().source().order(), 2);
        assert!(induced.xm().boundary().is_injective());
        assert_eq!(induced.coefficients().order(), 1);
    }

    #[test]
    fn covering_obstructions_follow_the_induced_kernels() {
        assert!(covering_obstruction(&fixtures::pre_mod2_z4(), &limits())
            .unwrap()
            .vanished);
        assert!(!covering_obstruction(&fixtures::pre_mod2_z4_twisted(), &limits())
            .unwrap()
            .vanished);
        assert!(covering_obstruction(&pre_collapsed(), &limits())
            .unwrap()
            .vanished);
    }

    #[test]
    fn classify_coverings_counts_two_zero_and_one() {
        let plain = classify_coverings(&fixtures::pre_mod2_z4(), &limits()).unwrap();
        assert_eq!(plain.class_count(), 2);
        let twisted = classify_coverings(&fixtures::pre_mod2_z4_twisted(), &limits()).unwrap();
        assert_eq!(twisted.class_count(), 0);
        let collapsed = classify_coverings(&pre_collapsed(), &limits()).unwrap();
        assert_eq!(collapsed.class_count(), 1);
    }

    #[test]
    fn covering_existence_agrees_with_the_extension_oracle() {
        for pre in [
            fixtures::pre_mod2_z4(),
            fixtures::pre_mod2_z4_twisted(),
            pre_collapsed(),
        ] {
            let report = classify_coverings(&pre, &limits()).unwrap();
            let oracle =
                enumerate_extensions_oracle(pre.induced_kernel(), &limits()).unwrap();
            assert_eq!(report.class_count(), oracle.len());
            assert_eq!(
                covering_obstruction(&pre, &limits()).unwrap().vanished,
                !report.coverings.is_empty()
            );
        }
    }

    #[test]
    fn coverings_induce_the_expected_zeta() {
        let report = classify_coverings(&fixtures::pre_mod2_z4(), &limits()).unwrap();
        for diag in &report.coverings {
            let recovered = induced_zeta(
                diag.ext.kernel().xm(),
                diag.ext.kernel().coefficients(),
                diag.ext.group(),
                diag.ext.j(),
                diag.ext.p(),
                diag.ext.beta(),
            )
            .unwrap();
            assert_eq!(&recovered, diag.pre.induced_kernel());
        }
    }

    #[test]
    fn zeroed_beta_fails_the_left_square() {
        let report = classify_coverings(&fixtures::pre_mod2_z4(), &limits()).unwrap();
        let good = report.coverings[0].clone();
        let broken = ProlongationDiagram {
            beta_top: GroupHom::trivial(good.pre.base(), good.ext.group()),
            ..good
        };
        match verify_prolongation(broken) {
            Err(ProlongationError::SquareFails { square, witness }) => {
                assert_eq!(square, "beta∘i = j∘zeta");
                assert_eq!(witness, 2);
            }
            other => panic!("expected SquareFails, got {other:?}"),
        }
    }

    #[test]
    fn non_surjective_pi_is_rejected() {
        let z4 = FiniteGroup::cyclic(4);
        let pi = GroupHom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let (kernel_group, _) = z4.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::identity(&kernel_group);
        let eta = GroupHom::identity(&z4);
        let theta = Action::trivial(&z4, &z4);
        match PreProlongation::new(pi, zeta, eta, theta) {
            Err(ProlongationError::PiNotSurjective { missed }) => assert_eq!(missed, 1),
            other => panic!("expected PiNotSurjective, got {other:?}"),
        }
    }

    #[test]
    fn noncentral_kernel_is_rejected() {
        let s3 = FiniteGroup::dihedral(3);
        let trivial = FiniteGroup::trivial();
        let pi = GroupHom::trivial(&s3, &trivial);
        let (kernel_group, _) = s3.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::trivial(&kernel_group, &trivial);
        let eta = GroupHom::identity(&trivial);
        let theta = Action::trivial(&trivial, &trivial);
        match PreProlongation::new(pi, zeta, eta, theta) {
            Err(ProlongationError::KernelNotCentral { .. }) => {}
            other => panic!("expected KernelNotCentral, got {other:?}"),
        }
    }

    #[test]
    fn non_injective_eta_is_rejected() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let pi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let (kernel_group, _) = z4.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::identity(&kernel_group);
        let eta = GroupHom::trivial(&z2, &z4);
        let bar = bar_decomposition(&pi, &zeta).unwrap();
        let theta = Action::trivial(&z4, bar.quotient());
        match PreProlongation::new(pi, zeta, eta, theta) {
            Err(ProlongationError::EtaNotInjective { witness }) => assert_eq!(witness, 1),
            other => panic!("expected EtaNotInjective, got {other:?}"),
        }
    }

    #[test]
    fn non_normal_eta_image_is_rejected() {
        let z2 = FiniteGroup::cyclic(2);
        let s3 = FiniteGroup::dihedral(3);
        let pi = GroupHom::identity(&z2);
        let (kernel_group, _) = z2.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::identity(&kernel_group);
        let reflection = s3.elements().find(|&x| x != 0 && s3.element_order(x) == 2).unwrap();
        let eta = GroupHom::new(z2.clone(), s3.clone(), vec![0, reflection]).unwrap();
        let bar = bar_decomposition(&pi, &zeta).unwrap();
        let theta = Action::trivial(&s3, bar.quotient());
        match PreProlongation::new(pi, zeta, eta, theta) {
            Err(ProlongationError::EtaImageNotNormal { h, .. }) => assert_eq!(h, reflection),
            other => panic!("expected EtaImageNotNormal, got {other:?}"),
        }
    }

    #[test]
    fn non_surjective_zeta_is_rejected() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let pi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let (kernel_group, _) = z4.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::trivial(&kernel_group, &z2);
        let eta = GroupHom::new(z2, z4.clone(), vec![0, 2]).unwrap();
        let theta = Action::trivial(&z4, &z4);
        match PreProlongation::new(pi, zeta, eta, theta) {
            Err(ProlongationError::ZetaNotSurjective { missed }) => assert_eq!(missed, 1),
            other => panic!("expected ZetaNotSurjective, got {other:?}"),
        }
    }

    #[test]
    fn theta_violating_the_axioms_is_rejected() {
        // With η = id : Z/2 → Z/2 the induced boundary is b mod 2, and
        // letting the generator act by inversion breaks the conjugation
        // axiom at b = 1.
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let pi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let (kernel_group, _) = z4.restrict(&pi.kernel()).unwrap();
        let zeta = GroupHom::identity(&kernel_group);
        let eta = GroupHom::identity(&z2);
        let bar = bar_decomposition(&pi, &zeta).unwrap();
        let theta = Action::new(
            z2,
            bar.quotient().clone(),
            vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
        )
        .unwrap();
        match PreProlongation::new(pi, zeta, eta, theta) {
            Err(ProlongationError::NotACrossedModule(_)) => {}
            other => panic!("expected NotACrossedModule, got {other:?}"),
        }
    }
}
