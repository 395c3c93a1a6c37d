//! Group extensions of the co-type of a crossed module.
//!
//! Fix a crossed module `(B, D, d, θ)` and a surjection `ζ : Ker d → A`
//! onto an abelian group, invariant under the induced cokernel action
//! ([`AbstractZetaKernel`]). A ζ-extension of this co-type
//! ([`ZetaExtension`]) is a diagram
//!
//! ```text
//! 0 → A →j→ E →p→ D → 1        (exact, j(A) central in E)
//! ```
//!
//! together with `β : B → E` such that `(β, id_D)` is a morphism into the
//! conjugation crossed module of the extension, and `j∘ζ = β` on `Ker d`.
//!
//! The theory mirrors classical Schreier theory one level up:
//!
//! * the [`obstruction`] of an abstract ζ-kernel is the class of `ζ⋆k` in
//!   `H³(Coker d, A)`, where `k` is the reduction cocycle of the crossed
//!   module — extensions exist iff it vanishes;
//! * when it vanishes, every witness `a` (a 2-cochain with `δa = ζ⋆k`)
//!   yields a crossed product extension on `B̄ × Coker d`, where
//!   `B̄ = B / Ker ζ` ([`build_crossed_product`]);
//! * every extension is equivalent to such a crossed product
//!   ([`normalize`]), two crossed products are equivalent iff their
//!   cochains differ by a coboundary ([`are_equivalent`]), and the
//!   equivalence classes are a torsor over `H²(Coker d, A)`
//!   ([`classify`]).
//!
//! [`enumerate_extensions_oracle`] re-derives the classification by brute
//! force — enumerating central extensions of `A` by `D` and all candidate
//! `β` — and is used to cross-check the cohomological route.

use crate::catgroup::{reduction_cocycle, CatGroupError, Stick};
use crate::cohomology::{
    all_cocycles, coboundary_witness, cohomology_report, Cochain, CohomologyError,
    CohomologyReport, GModule,
};
use crate::crossed_module::{derive, quotient_xmod, CrossedModule, XModError, XModHom};
use crate::group::{Action, FiniteGroup, GroupError, GroupHom};
use crate::Limits;
use thiserror::Error;

/// Validation failures for ζ-kernels and ζ-extensions.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Cohomology(#[from] CohomologyError),

    #[error(transparent)]
    CatGroup(#[from] CatGroupError),

    #[error("component mismatch: {what}")]
    ComponentMismatch { what: &'static str },

    #[error("zeta is not surjective: {missed} has no preimage")]
    ZetaNotSurjective { missed: usize },

    #[error("zeta is not invariant under the cokernel action at coset {coset}, kernel element {c}")]
    ZetaNotInvariant { coset: usize, c: usize },

    #[error("sequence is not exact: {why} (witness {witness})")]
    NotExact { why: &'static str, witness: usize },

    #[error("j image is not central: j of {a} does not commute with {e}")]
    NotCentral { a: usize, e: usize },

    #[error("(beta, id) is not a morphism into the conjugation crossed module: {0}")]
    BetaNotXModHom(XModError),

    #[error("stored zeta disagrees with the induced one at kernel element {c}")]
    ZetaMismatch { c: usize },

    #[error("factor set condition fails: the cochain's coboundary differs from the pushed reduction cocycle at {tuple:?}")]
    FactorSetCondition { tuple: Vec<usize> },

    #[error("extensions have different abstract kernels")]
    KernelMismatch,

    #[error("stick belongs to a different crossed module")]
    StickMismatch,

    #[error("budget exceeded for {what}: size {size} > limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

/// An abstract ζ-kernel: a crossed module, an abelian group `A`, and a
/// surjection `ζ : Ker d → A` invariant under the induced cokernel
/// action. `zeta`'s source is the kernel group produced by
/// [`derive`](crate::crossed_module::derive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractZetaKernel {
    xm: CrossedModule,
    a: FiniteGroup,
    zeta: GroupHom,
}

impl AbstractZetaKernel {
    pub fn new(
        xm: CrossedModule,
        a: FiniteGroup,
        zeta: GroupHom,
    ) -> Result<AbstractZetaKernel, ExtensionError> {
        if !a.is_abelian() {
            return Err(ExtensionError::ComponentMismatch {
                what: "the coefficient group must be abelian",
            });
        }
        let derived = derive(&xm);
        if zeta.source() != &derived.kernel {
            return Err(ExtensionError::ComponentMismatch {
                what: "zeta must be defined on the boundary kernel",
            });
        }
        if zeta.target() != &a {
            return Err(ExtensionError::ComponentMismatch {
                what: "zeta must land in the coefficient group",
            });
        }
        if let Some(missed) = a.elements().find(|&al| !zeta.map().contains(&al)) {
            return Err(ExtensionError::ZetaNotSurjective { missed });
        }
        for s in 0..derived.cokernel.cosets().len() {
            for c in derived.kernel.elements() {
                if zeta.apply(derived.induced.apply(s, c)) != zeta.apply(c) {
                    return Err(ExtensionError::ZetaNotInvariant { coset: s, c });
                }
            }
        }
        Ok(AbstractZetaKernel { xm, a, zeta })
    }

    pub fn xm(&self) -> &CrossedModule {
        &self.xm
    }

    pub fn coefficients(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn zeta(&self) -> &GroupHom {
        &self.zeta
    }

    /// The module `(Coker d, A, trivial action)` housing obstruction and
    /// classification cochains. The action is trivial precisely because ζ
    /// is invariant.
    pub fn coefficient_module(&self) -> GModule {
        let derived = derive(&self.xm);
        GModule::trivial(derived.cokernel.quotient().clone(), self.a.clone())
            .expect("coefficients are abelian")
    }
}

/// A ζ-extension `0 → A → E → D → 1` with the compatible `β : B → E`.
/// Construction runs the full validation of [`validate_extension`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaExtension {
    kernel: AbstractZetaKernel,
    e: FiniteGroup,
    j: GroupHom,
    p: GroupHom,
    beta: GroupHom,
}

impl ZetaExtension {
    pub fn new(
        kernel: AbstractZetaKernel,
        e: FiniteGroup,
        j: GroupHom,
        p: GroupHom,
        beta: GroupHom,
    ) -> Result<ZetaExtension, ExtensionError> {
        validate_diagram(kernel.xm(), kernel.coefficients(), &e, &j, &p, &beta)?;
        // Compatibility with the stored ζ: j(ζ(c)) = β(c) on Ker d.
        let derived = derive(kernel.xm());
        for c in derived.kernel.elements() {
            let global = derived.kernel_elements[c];
            if j.apply(kernel.zeta().apply(c)) != beta.apply(global) {
                return Err(ExtensionError::ZetaMismatch { c });
            }
        }
        Ok(ZetaExtension {
            kernel,
            e,
            j,
            p,
            beta,
        })
    }

    pub fn kernel(&self) -> &AbstractZetaKernel {
        &self.kernel
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.e
    }

    pub fn j(&self) -> &GroupHom {
        &self.j
    }

    pub fn p(&self) -> &GroupHom {
        &self.p
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }
}

/// The conjugation crossed module of an extension: boundary `p : E → D`,
/// with `x ∈ D` acting by conjugation by the least-index preimage. The
/// action is independent of the choice because `Ker p` is central.
fn conjugation_extension_xmod(e: &FiniteGroup, p: &GroupHom) -> CrossedModule {
    let d = p.target();
    let transversal: Vec<usize> = d
        .elements()
        .map(|x| {
            e.elements()
                .find(|&f| p.apply(f) == x)
                .expect("p is surjective")
        })
        .collect();
    let tables: Vec<Vec<usize>> = transversal
        .iter()
        .map(|&ex| e.elements().map(|f| e.conj(ex, f)).collect())
        .collect();
    let action = Action::new(d.clone(), e.clone(), tables)
        .expect("conjugation through a transversal acts");
    CrossedModule::new(p.clone(), action).expect("an extension's conjugation data is crossed")
}

/// The shared part of extension validation: endpoints, exactness,
/// centrality, and the morphism conditions on β (everything except the
/// comparison with a stored ζ).
fn validate_diagram(
    xm: &CrossedModule,
    a: &FiniteGroup,
    e: &FiniteGroup,
    j: &GroupHom,
    p: &GroupHom,
    beta: &GroupHom,
) -> Result<(), ExtensionError> {
    if j.source() != a || j.target() != e {
        return Err(ExtensionError::ComponentMismatch {
            what: "j must map the coefficients into the extension group",
        });
    }
    if p.source() != e || p.target() != xm.range() {
        return Err(ExtensionError::ComponentMismatch {
            what: "p must map the extension group onto the range",
        });
    }
    if beta.source() != xm.source() || beta.target() != e {
        return Err(ExtensionError::ComponentMismatch {
            what: "beta must map the source into the extension group",
        });
    }
    if !j.is_injective() {
        let witness = j
            .source()
            .elements()
            .find(|&x| x != 0 && j.apply(x) == 0)
            .unwrap_or(0);
        return Err(ExtensionError::NotExact {
            why: "j is not injective",
            witness,
        });
    }
    if let Some(missed) = xm
        .range()
        .elements()
        .find(|&x| !p.map().contains(&x))
    {
        return Err(ExtensionError::NotExact {
            why: "p is not surjective",
            witness: missed,
        });
    }
    let image = j.image();
    let ker_p = p.kernel();
    if image != ker_p {
        let witness = image
            .iter()
            .chain(ker_p.iter())
            .copied()
            .find(|x| image.binary_search(x).is_ok() != ker_p.binary_search(x).is_ok())
            .unwrap_or(0);
        return Err(ExtensionError::NotExact {
            why: "image of j differs from kernel of p",
            witness,
        });
    }
    for al in a.elements() {
        let ja = j.apply(al);
        for f in e.elements() {
            if e.mul(ja, f) != e.mul(f, ja) {
                return Err(ExtensionError::NotCentral { a: al, e: f });
            }
        }
    }
    let conj_xm = conjugation_extension_xmod(e, p);
    XModHom::new(xm, &conj_xm, beta.clone(), GroupHom::identity(xm.range()))
        .map_err(ExtensionError::BetaNotXModHom)?;
    Ok(())
}

/// Full validation of a raw extension diagram against its stored kernel.
/// This is the constructor's logic exposed as a standalone check.
pub fn validate_extension(
    kernel: &AbstractZetaKernel,
    e: &FiniteGroup,
    j: &GroupHom,
    p: &GroupHom,
    beta: &GroupHom,
) -> Result<ZetaExtension, ExtensionError> {
    ZetaExtension::new(kernel.clone(), e.clone(), j.clone(), p.clone(), beta.clone())
}

/// Computes the ζ-kernel induced by a valid extension diagram:
/// `ζ(c) = j⁻¹(β(c))`. Reports [`ExtensionError::ZetaNotSurjective`] when
/// the diagram is an extension but not a ζ-extension in the surjective
/// sense; invariance of the induced ζ is automatic and asserted.
pub fn induced_zeta(
    xm: &CrossedModule,
    a: &FiniteGroup,
    e: &FiniteGroup,
    j: &GroupHom,
    p: &GroupHom,
    beta: &GroupHom,
) -> Result<AbstractZetaKernel, ExtensionError> {
    validate_diagram(xm, a, e, j, p, beta)?;
    let derived = derive(xm);
    let mut j_inverse = vec![usize::MAX; e.order()];
    for al in a.elements() {
        j_inverse[j.apply(al)] = al;
    }
    let zeta_map: Vec<usize> = derived
        .kernel
        .elements()
        .map(|c| {
            let image = beta.apply(derived.kernel_elements[c]);
            assert!(
                j_inverse[image] != usize::MAX,
                "beta sends the boundary kernel into j(A) in a valid diagram"
            );
            j_inverse[image]
        })
        .collect();
    let zeta = GroupHom::new(derived.kernel.clone(), a.clone(), zeta_map)
        .expect("the induced zeta is a homomorphism");
    match AbstractZetaKernel::new(xm.clone(), a.clone(), zeta) {
        Ok(kernel) => Ok(kernel),
        Err(err @ ExtensionError::ZetaNotSurjective { .. }) => Err(err),
        Err(other) => panic!("induced zeta must be invariant: {other}"),
    }
}

/// The obstruction of an abstract ζ-kernel: the push of the reduction
/// cocycle along ζ, its vanishing status in `H³(Coker d, A)`, and the
/// canonical least witness when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    /// `ζ⋆k` over `(Coker d, A, trivial action)`.
    pub cochain: Cochain,
    /// Whether the class of `cochain` is trivial.
    pub vanished: bool,
    /// A 2-cochain `a` with `δa = ζ⋆k`, when one exists.
    pub witness: Option<Cochain>,
}

/// Pushes a reduction cocycle along ζ into the coefficient module.
fn push_cocycle(kernel: &AbstractZetaKernel, k: &Cochain) -> Cochain {
    let module = kernel.coefficient_module();
    let pushed = k.map_values(&module, kernel.zeta());
    assert!(pushed.is_cocycle(), "the pushed cocycle stays a cocycle");
    pushed
}

/// Obstruction of a ζ-kernel relative to a chosen stick.
pub fn obstruction_with_stick(
    kernel: &AbstractZetaKernel,
    stick: &Stick,
    limits: &Limits,
) -> Result<Obstruction, ExtensionError> {
    let k = reduction_cocycle(kernel.xm(), stick)?;
    let cochain = push_cocycle(kernel, &k);
    let witness = coboundary_witness(&cochain, limits)?;
    Ok(Obstruction {
        vanished: witness.is_some(),
        cochain,
        witness,
    })
}

/// Obstruction of a ζ-kernel: `[ζ⋆k] ∈ H³(Coker d, A)` for the canonical
/// stick. Extensions of this co-type exist iff it vanishes.
pub fn obstruction(
    kernel: &AbstractZetaKernel,
    limits: &Limits,
) -> Result<Obstruction, ExtensionError> {
    obstruction_with_stick(kernel, &Stick::canonical(kernel.xm()), limits)
}

/// The quotient data underlying crossed products: `B̄ = B / Ker ζ`, the
/// projection morphism, and `ι : A ≅ Ker d̄ ⊆ B̄` with its readback.
struct BarData {
    xm_bar: CrossedModule,
    projection: XModHom,
    iota: GroupHom,
    /// iota_inverse[b̄] = Some(α) iff `b̄ = ι(α)`.
    iota_inverse: Vec<Option<usize>>,
}

fn bar_data(kernel: &AbstractZetaKernel) -> BarData {
    let derived = derive(kernel.xm());
    let ker_zeta_global: Vec<usize> = kernel
        .zeta()
        .kernel()
        .into_iter()
        .map(|c| derived.kernel_elements[c])
        .collect();
    let (xm_bar, projection) =
        quotient_xmod(kernel.xm(), &ker_zeta_global).expect("Ker ζ is a valid quotient kernel");
    let a = kernel.coefficients();
    let iota_map: Vec<usize> = a
        .elements()
        .map(|al| {
            let c = derived
                .kernel
                .elements()
                .find(|&c| kernel.zeta().apply(c) == al)
                .expect("zeta is surjective");
            projection.on_source().apply(derived.kernel_elements[c])
        })
        .collect();
    let iota = GroupHom::new(a.clone(), xm_bar.source().clone(), iota_map)
        .expect("iota is a homomorphism");
    let mut iota_inverse = vec![None; xm_bar.source().order()];
    for al in a.elements() {
        iota_inverse[iota.apply(al)] = Some(al);
    }
    BarData {
        xm_bar,
        projection,
        iota,
        iota_inverse,
    }
}

/// Builds the crossed product ζ-extension on `B̄ × Coker d` from a
/// 2-cochain `a` with `δa = ζ⋆k` (checked first; the failure is
/// [`ExtensionError::FactorSetCondition`]):
///
/// ```text
/// (b̄, s) + (c̄, r) = (b̄ + θ̄_{x_s}(c̄) + h(s, r), sr),
///     h(s, r) = H̄̃(s, r) + ι(a(s, r)),
/// ```
///
/// with `H̄̃` the stick defect pushed to `B̄`. Elements are indexed as
/// `s·|B̄| + b̄`. The output passes the full extension validation,
/// including the group axioms of `E`.
pub fn build_crossed_product(
    kernel: &AbstractZetaKernel,
    stick: &Stick,
    a: &Cochain,
) -> Result<ZetaExtension, ExtensionError> {
    if stick.xm() != kernel.xm() {
        return Err(ExtensionError::StickMismatch);
    }
    let k = reduction_cocycle(kernel.xm(), stick)?;
    let pushed = push_cocycle(kernel, &k);
    if a.module() != pushed.module() || a.degree() != 2 {
        return Err(ExtensionError::ComponentMismatch {
            what: "the factor cochain must have degree 2 over (Coker d, A)",
        });
    }
    let delta = a.coboundary();
    if delta != pushed {
        let tuple = delta
            .sub(&pushed)
            .entries()
            .into_iter()
            .next()
            .map(|(t, _)| t)
            .unwrap_or_default();
        return Err(ExtensionError::FactorSetCondition { tuple });
    }

    let bar = bar_data(kernel);
    let b_bar = bar.xm_bar.source();
    let coker = &stick.derived().cokernel;
    let q = coker.quotient();
    let nb = b_bar.order();
    let ns = q.order();

    let h_bar = |s: usize, r: usize| -> usize {
        let defect = kernel.xm().source().inv(
            stick.lifts()[kernel.xm().range().mul(stick.reps()[s], stick.reps()[r])],
        );
        let pushed_defect = bar.projection.on_source().apply(defect);
        b_bar.mul(pushed_defect, bar.iota.apply(a.get(&[s, r])))
    };

    let mut rows = Vec::with_capacity(nb * ns);
    for s in 0..ns {
        for b in 0..nb {
            let mut row = Vec::with_capacity(nb * ns);
            for r in 0..ns {
                for c in 0..nb {
                    let acted = bar.xm_bar.act(stick.reps()[s], c);
                    let value = b_bar.mul(b_bar.mul(b, acted), h_bar(s, r));
                    row.push(q.mul(s, r) * nb + value);
                }
            }
            rows.push(row);
        }
    }
    let labels: Vec<String> = (0..ns)
        .flat_map(|s| {
            (0..nb).map(move |b| (s, b))
        })
        .map(|(s, b)| format!("({}, {})", b_bar.label(b), q.label(s)))
        .collect();
    let e = FiniteGroup::from_table(&rows)
        .expect("the factor set condition makes the crossed product a group")
        .with_labels(labels)
        .expect("one label per element");

    let j_map: Vec<usize> = kernel
        .coefficients()
        .elements()
        .map(|al| bar.iota.apply(al))
        .collect();
    let j = GroupHom::new(kernel.coefficients().clone(), e.clone(), j_map)
        .expect("j embeds the coefficients");
    let p_map: Vec<usize> = (0..ns)
        .flat_map(|s| (0..nb).map(move |b| (s, b)))
        .map(|(s, b)| {
            kernel
                .xm()
                .range()
                .mul(bar.xm_bar.boundary().apply(b), stick.reps()[s])
        })
        .collect();
    let p = GroupHom::new(e.clone(), kernel.xm().range().clone(), p_map)
        .expect("p projects onto the range");
    let beta_map: Vec<usize> = kernel
        .xm()
        .source()
        .elements()
        .map(|b| bar.projection.on_source().apply(b))
        .collect();
    let beta = GroupHom::new(kernel.xm().source().clone(), e.clone(), beta_map)
        .expect("beta factors through the quotient");
    Ok(ZetaExtension::new(kernel.clone(), e, j, p, beta)
        .expect("a crossed product is a valid ζ-extension"))
}

/// The short exact sequence `0 → B̄ → E → Coker d → 1` in the middle of a
/// ζ-extension: `ε(b̄) = β(b)` and `σp = (coset projection) ∘ p`.
/// Exactness and the size identity `|E| = |A|·|D|` are verified.
pub fn middle_sequence(ext: &ZetaExtension) -> (GroupHom, GroupHom) {
    let bar = bar_data(ext.kernel());
    let b_bar = bar.xm_bar.source();
    let mut eps_map = vec![usize::MAX; b_bar.order()];
    for b in ext.kernel().xm().source().elements() {
        let target = ext.beta().apply(b);
        let slot = &mut eps_map[bar.projection.on_source().apply(b)];
        assert!(
            *slot == usize::MAX || *slot == target,
            "beta is constant on Ker ζ cosets"
        );
        *slot = target;
    }
    let epsilon = GroupHom::new(b_bar.clone(), ext.group().clone(), eps_map)
        .expect("epsilon is a homomorphism");
    assert!(epsilon.is_injective(), "epsilon embeds B̄ into E");

    let derived = derive(ext.kernel().xm());
    let sigma_p = ext.p().then(derived.cokernel.projection());
    assert!(
        derived
            .cokernel
            .quotient()
            .elements()
            .all(|s| sigma_p.map().contains(&s)),
        "sigma_p is surjective"
    );
    let mut image = epsilon.image();
    image.sort_unstable();
    assert_eq!(
        image,
        sigma_p.kernel(),
        "the middle sequence is exact at E"
    );
    assert_eq!(
        ext.group().order(),
        ext.kernel().coefficients().order() * ext.kernel().xm().range().order(),
        "|E| = |A| · |D|"
    );
    (epsilon, sigma_p)
}

/// Renormalizes an extension against a stick: returns the factor cochain
/// `a` and an equivalence `ω : E → E_a` onto the corresponding crossed
/// product. The transversal element over each representative is the
/// least-index one, so the output is canonical given the stick.
pub fn normalize(
    ext: &ZetaExtension,
    stick: &Stick,
) -> Result<(Cochain, GroupHom), ExtensionError> {
    if stick.xm() != ext.kernel().xm() {
        return Err(ExtensionError::StickMismatch);
    }
    let kernel = ext.kernel();
    let bar = bar_data(kernel);
    let b_bar = bar.xm_bar.source();
    let (epsilon, sigma_p) = middle_sequence(ext);
    let e = ext.group();
    let q = stick.derived().cokernel.quotient().clone();
    let ns = q.order();

    // Least-index transversal over the representatives; the identity
    // fiber is represented by the identity of E.
    let transversal: Vec<usize> = (0..ns)
        .map(|s| {
            e.elements()
                .find(|&f| ext.p().apply(f) == stick.reps()[s])
                .expect("p is surjective")
        })
        .collect();
    assert_eq!(transversal[0], e.identity(), "identity lifts to identity");

    let mut eps_inverse = vec![usize::MAX; e.order()];
    for b in b_bar.elements() {
        eps_inverse[epsilon.apply(b)] = b;
    }

    // Factor set h(s, r) = ε⁻¹(e_s e_r e_{sr}⁻¹), its stick part, and the
    // A-valued remainder.
    let module = kernel.coefficient_module();
    let mut entries = Vec::with_capacity(ns * ns);
    for s in 0..ns {
        for r in 0..ns {
            let combo = e.mul(
                e.mul(transversal[s], transversal[r]),
                e.inv(transversal[q.mul(s, r)]),
            );
            let h = eps_inverse[combo];
            assert!(h != usize::MAX, "transversal defects land in ε(B̄)");
            let defect = kernel.xm().source().inv(
                stick.lifts()[kernel.xm().range().mul(stick.reps()[s], stick.reps()[r])],
            );
            let h_stick = bar.projection.on_source().apply(defect);
            let remainder = b_bar.mul(b_bar.inv(h_stick), h);
            let al = bar.iota_inverse[remainder]
                .expect("h − H̄̃ takes values in ι(A)");
            entries.push((vec![s, r], al));
        }
    }
    let a = Cochain::from_entries(module, 2, &entries)
        .expect("normalized factor cochains are normalized");
    let k = reduction_cocycle(kernel.xm(), stick)?;
    assert_eq!(
        a.coboundary(),
        push_cocycle(kernel, &k),
        "extracted cochain satisfies the factor set condition"
    );

    let product = build_crossed_product(kernel, stick, &a)
        .expect("the extracted cochain rebuilds a crossed product");
    let nb = b_bar.order();
    let omega_map: Vec<usize> = e
        .elements()
        .map(|x| {
            let s = sigma_p.apply(x);
            let b = eps_inverse[e.mul(x, e.inv(transversal[s]))];
            assert!(b != usize::MAX, "x e_s⁻¹ lands in ε(B̄)");
            s * nb + b
        })
        .collect();
    let omega = GroupHom::new(e.clone(), product.group().clone(), omega_map)
        .expect("normalization is a homomorphism");
    assert!(omega.is_bijective(), "normalization is an isomorphism");
    for al in kernel.coefficients().elements() {
        assert_eq!(
            omega.apply(ext.j().apply(al)),
            product.j().apply(al),
            "normalization commutes with j"
        );
    }
    for x in e.elements() {
        assert_eq!(
            product.p().apply(omega.apply(x)),
            ext.p().apply(x),
            "normalization commutes with p"
        );
    }
    for b in kernel.xm().source().elements() {
        assert_eq!(
            omega.apply(ext.beta().apply(b)),
            product.beta().apply(b),
            "normalization commutes with beta"
        );
    }
    Ok((a, omega))
}

/// Decides equivalence of two extensions of the same kernel. Both are
/// normalized against the canonical stick; they are equivalent iff the
/// factor cochains differ by a coboundary, in which case the composite
/// isomorphism `ω : E₁ → E₂` (commuting with `j`, `p`, `β`) is returned
/// after re-verification.
pub fn are_equivalent(
    e1: &ZetaExtension,
    e2: &ZetaExtension,
    limits: &Limits,
) -> Result<Option<GroupHom>, ExtensionError> {
    if e1.kernel() != e2.kernel() {
        return Err(ExtensionError::KernelMismatch);
    }
    let kernel = e1.kernel();
    let stick = Stick::canonical(kernel.xm());
    let (a1, omega1) = normalize(e1, &stick)?;
    let (a2, omega2) = normalize(e2, &stick)?;
    let Some(z) = coboundary_witness(&a1.sub(&a2), limits)? else {
        return Ok(None);
    };

    // The shift (b̄, s) ↦ (b̄ + ι(z(s)), s) maps the first crossed product
    // onto the second.
    let bar = bar_data(kernel);
    let b_bar = bar.xm_bar.source();
    let nb = b_bar.order();
    let ns = omega1.target().order() / nb;
    let nu_map: Vec<usize> = (0..ns)
        .flat_map(|s| (0..nb).map(move |b| (s, b)))
        .map(|(s, b)| s * nb + b_bar.mul(b, bar.iota.apply(z.get(&[s]))))
        .collect();
    let nu = GroupHom::new(omega1.target().clone(), omega2.target().clone(), nu_map)
        .expect("the coboundary witness shifts one product onto the other");
    let omega = omega1
        .then(&nu)
        .then(&omega2.inverse().expect("normalizations are isomorphisms"));
    for al in kernel.coefficients().elements() {
        assert_eq!(
            omega.apply(e1.j().apply(al)),
            e2.j().apply(al),
            "equivalence commutes with j"
        );
    }
    for x in e1.group().elements() {
        assert_eq!(
            e2.p().apply(omega.apply(x)),
            e1.p().apply(x),
            "equivalence commutes with p"
        );
    }
    for b in kernel.xm().source().elements() {
        assert_eq!(
            omega.apply(e1.beta().apply(b)),
            e2.beta().apply(b),
            "equivalence commutes with beta"
        );
    }
    Ok(Some(omega))
}

/// The classification of a ζ-kernel: its obstruction, the `H²` report of
/// the coefficient module, and — when the obstruction vanishes — one
/// crossed product per `H²(Coker d, A)` class, pairwise inequivalent.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub kernel: AbstractZetaKernel,
    pub obstruction: Obstruction,
    pub representatives: Vec<ZetaExtension>,
    pub h2_report: CohomologyReport,
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

/// Classifies the ζ-extensions of a kernel's co-type against
/// `H²(Coker d, A)`: empty when the obstruction does not vanish,
/// otherwise one representative per class, verified pairwise
/// inequivalent.
pub fn classify(
    kernel: &AbstractZetaKernel,
    limits: &Limits,
) -> Result<ClassificationReport, ExtensionError> {
    let stick = Stick::canonical(kernel.xm());
    let obstruction = obstruction_with_stick(kernel, &stick, limits)?;
    let h2_report = cohomology_report(&kernel.coefficient_module(), 2, limits)?;
    let representatives = match &obstruction.witness {
        None => Vec::new(),
        Some(a0) => h2_report
            .class_representatives
            .iter()
            .map(|z| build_crossed_product(kernel, &stick, &a0.add(z)))
            .collect::<Result<Vec<_>, _>>()?,
    };
    for (i, left) in representatives.iter().enumerate() {
        for right in representatives.iter().skip(i + 1) {
            assert!(
                are_equivalent(left, right, limits)?.is_none(),
                "classification representatives are pairwise inequivalent"
            );
        }
    }
    if obstruction.vanished {
        assert_eq!(
            representatives.len(),
            h2_report.class_count(),
            "one representative per class"
        );
    }
    Ok(ClassificationReport {
        kernel: kernel.clone(),
        obstruction,
        representatives,
        h2_report,
    })
}

/// Brute-force oracle: enumerates every central extension `E_f` of `A` by
/// `D` (one per normalized 2-cocycle `f ∈ Z²(D, A)`) and every compatible
/// `β : B → E_f`, validates each candidate diagram, and deduplicates by
/// [`are_equivalent`]. Independent of the crossed-product route.
pub fn enumerate_extensions_oracle(
    kernel: &AbstractZetaKernel,
    limits: &Limits,
) -> Result<Vec<ZetaExtension>, ExtensionError> {
    let d = kernel.xm().range();
    let a = kernel.coefficients();
    let size = a.order() * d.order();
    if size > limits.oracle_order {
        return Err(ExtensionError::BudgetExceeded {
            what: "oracle extension order",
            size,
            limit: limits.oracle_order,
        });
    }
    let central = GModule::trivial(d.clone(), a.clone()).expect("A is abelian");
    let factor_sets = all_cocycles(&central, 2, limits)?;
    let na = a.order();
    let nd = d.order();
    let mut found: Vec<ZetaExtension> = Vec::new();
    for f in &factor_sets {
        // E_f = A × D with (α, x)(α', x') = (α + α' + f(x, x'), xx'),
        // indexed as α·|D| + x.
        let rows: Vec<Vec<usize>> = (0..na)
            .flat_map(|al| (0..nd).map(move |x| (al, x)))
            .map(|(al, x)| {
                (0..na)
                    .flat_map(|al2| (0..nd).map(move |x2| (al2, x2)))
                    .map(|(al2, x2)| {
                        let alpha = a.mul(a.mul(al, al2), f.get(&[x, x2]));
                        alpha * nd + d.mul(x, x2)
                    })
                    .collect()
            })
            .collect();
        let e = FiniteGroup::from_table(&rows).expect("a 2-cocycle defines a group");
        let j_map: Vec<usize> = a.elements().map(|al| al * nd).collect();
        let j = GroupHom::new(a.clone(), e.clone(), j_map).expect("j is a homomorphism");
        let p_map: Vec<usize> = (0..na)
            .flat_map(|_| 0..nd)
            .collect();
        let p = GroupHom::new(e.clone(), d.clone(), p_map).expect("p is a homomorphism");
        for beta in crate::group::all_homs(kernel.xm().source(), &e)? {
            let Ok(candidate) =
                ZetaExtension::new(kernel.clone(), e.clone(), j.clone(), p.clone(), beta)
            else {
                continue;
            };
            let mut duplicate = false;
            for known in &found {
                if are_equivalent(known, &candidate, limits)?.is_some() {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                found.push(candidate);
            }
        }
    }
    Ok(found)
}
