//! Typed payloads for report bodies. Everything here serializes to
//! plain JSON and parses back, so downstream tools can re-validate a
//! report against the manifest it came from.
//!
//! Cochains are serialized sparsely: only nonzero entries appear, in
//! ascending tuple order.

use serde::{Deserialize, Serialize};

use xmodkit_core::catgroup::{ReducedCatGroup, Stick};
use xmodkit_core::cohomology::{Cochain, CohomologyReport};
use xmodkit_core::extension::{ClassificationReport, Obstruction, ZetaExtension};
use xmodkit_core::group::{FiniteGroup, GroupHom};
use xmodkit_core::prolongation::{CoveringReport, PreProlongation, ProlongationDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPayload {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

impl GroupPayload {
    pub fn of(g: &FiniteGroup) -> GroupPayload {
        GroupPayload {
            order: g.order(),
            table: g.table_rows(),
            labels: g.elements().map(|x| g.label(x)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainEntry {
    pub tuple: Vec<usize>,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainPayload {
    pub degree: usize,
    pub entries: Vec<CochainEntry>,
}

impl CochainPayload {
    pub fn of(c: &Cochain) -> CochainPayload {
        CochainPayload {
            degree: c.degree(),
            entries: c
                .entries()
                .into_iter()
                .map(|(tuple, value)| CochainEntry { tuple, value })
                .collect(),
        }
    }

    /// Rebuilds the cochain over a module (for re-validation).
    pub fn rebuild(
        &self,
        module: &xmodkit_core::cohomology::GModule,
    ) -> Result<Cochain, xmodkit_core::cohomology::CohomologyError> {
        let entries: Vec<(Vec<usize>, usize)> = self
            .entries
            .iter()
            .map(|e| (e.tuple.clone(), e.value))
            .collect();
        Cochain::from_entries(module.clone(), self.degree, &entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckPayload {
    pub kind: String,
    pub name: String,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StickPayload {
    /// Coset representatives in the range, one per cokernel element.
    pub reps: Vec<usize>,
    /// Source lifts, one per range element.
    pub lifts: Vec<usize>,
}

impl StickPayload {
    pub fn of(stick: &Stick) -> StickPayload {
        StickPayload {
            reps: stick.reps().to_vec(),
            lifts: stick.lifts().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducePayload {
    pub pi0: GroupPayload,
    pub pi1: GroupPayload,
    /// Action tables of `π0` on `π1`, one automorphism per `π0` element.
    pub action: Vec<Vec<usize>>,
    pub stick: StickPayload,
    /// The reduction 3-cocycle, sparse.
    pub k: CochainPayload,
    pub is_cocycle: bool,
    /// Canonical least representative of `[k]` in `H³(π0, π1)`.
    pub k_class_representative: CochainPayload,
}

impl ReducePayload {
    pub fn of(red: &ReducedCatGroup, stick: &Stick, representative: &Cochain) -> ReducePayload {
        ReducePayload {
            pi0: GroupPayload::of(red.pi0()),
            pi1: GroupPayload::of(red.pi1()),
            action: red.module().action().tables().to_vec(),
            stick: StickPayload::of(stick),
            k: CochainPayload::of(red.cocycle()),
            is_cocycle: red.cocycle().is_cocycle(),
            k_class_representative: CochainPayload::of(representative),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReportPayload {
    pub degree: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub classes: usize,
    pub representatives: Vec<CochainPayload>,
}

impl DegreeReportPayload {
    pub fn of(report: &CohomologyReport) -> DegreeReportPayload {
        DegreeReportPayload {
            degree: report.degree,
            cocycles: report.cocycle_count,
            coboundaries: report.coboundary_count,
            classes: report.class_count(),
            representatives: report
                .class_representatives
                .iter()
                .map(CochainPayload::of)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyPayload {
    pub group_order: usize,
    pub coefficient_order: usize,
    pub degrees: Vec<DegreeReportPayload>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionPayload {
    /// `ζ⋆k`, a 3-cochain over the cokernel with trivial coefficients.
    pub cochain: CochainPayload,
    pub vanished: bool,
    /// A 2-cochain trivializing the obstruction, when it vanishes.
    pub witness: Option<CochainPayload>,
}

impl ObstructionPayload {
    pub fn of(o: &Obstruction) -> ObstructionPayload {
        ObstructionPayload {
            cochain: CochainPayload::of(&o.cochain),
            vanished: o.vanished,
            witness: o.witness.as_ref().map(CochainPayload::of),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionPayload {
    pub group: GroupPayload,
    pub j: Vec<usize>,
    pub p: Vec<usize>,
    pub beta: Vec<usize>,
}

impl ExtensionPayload {
    pub fn of(ext: &ZetaExtension) -> ExtensionPayload {
        ExtensionPayload {
            group: GroupPayload::of(ext.group()),
            j: ext.j().map().to_vec(),
            p: ext.p().map().to_vec(),
            beta: ext.beta().map().to_vec(),
        }
    }

    /// Rebuilds and re-validates the extension against its kernel.
    pub fn rebuild(
        &self,
        kernel: &xmodkit_core::extension::AbstractZetaKernel,
    ) -> Result<ZetaExtension, xmodkit_core::extension::ExtensionError> {
        let e = FiniteGroup::from_table(&self.group.table)?;
        let j = GroupHom::new(kernel.coefficients().clone(), e.clone(), self.j.clone())?;
        let p = GroupHom::new(e.clone(), kernel.xm().range().clone(), self.p.clone())?;
        let beta = GroupHom::new(kernel.xm().source().clone(), e.clone(), self.beta.clone())?;
        ZetaExtension::new(kernel.clone(), e, j, p, beta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyPayload {
    pub obstruction: ObstructionPayload,
    /// `|H²(Coker d, A)|` with trivial coefficients.
    pub h2_classes: usize,
    pub representatives: Vec<ExtensionPayload>,
    /// Index pairs `i < j` of representatives verified inequivalent.
    pub inequivalent_pairs: Vec<(usize, usize)>,
}

impl ClassifyPayload {
    pub fn of(report: &ClassificationReport, inequivalent_pairs: Vec<(usize, usize)>) -> ClassifyPayload {
        ClassifyPayload {
            obstruction: ObstructionPayload::of(&report.obstruction),
            h2_classes: report.h2_report.class_count(),
            representatives: report
                .representatives
                .iter()
                .map(ExtensionPayload::of)
                .collect(),
            inequivalent_pairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedPayload {
    /// Order of `B̄ = B / Ker ζ`.
    pub source_order: usize,
    /// Order of the range `D`.
    pub range_order: usize,
    /// The induced boundary `d̄ : B̄ → D`.
    pub boundary: Vec<usize>,
    /// Order of `Ker d̄`.
    pub kernel_order: usize,
    pub coefficient_order: usize,
}

impl InducedPayload {
    pub fn of(pre: &PreProlongation) -> InducedPayload {
        let induced = pre.induced_kernel();
        let boundary = induced.xm().boundary();
        InducedPayload {
            source_order: boundary.source().order(),
            range_order: boundary.target().order(),
            boundary: boundary.map().to_vec(),
            kernel_order: xmodkit_core::crossed_module::derive(induced.xm())
                .kernel
                .order(),
            coefficient_order: induced.coefficients().order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringPayload {
    pub extension: ExtensionPayload,
    /// `β : B → E` witnessing the top square of the diagram.
    pub beta_top: Vec<usize>,
}

impl CoveringPayload {
    pub fn of(diag: &ProlongationDiagram) -> CoveringPayload {
        CoveringPayload {
            extension: ExtensionPayload::of(&diag.ext),
            beta_top: diag.beta_top.map().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProlongPayload {
    pub induced: InducedPayload,
    pub obstruction: ObstructionPayload,
    pub covering_classes: usize,
    pub coverings: Vec<CoveringPayload>,
}

impl ProlongPayload {
    pub fn of(report: &CoveringReport) -> ProlongPayload {
        ProlongPayload {
            induced: InducedPayload::of(&report.pre),
            obstruction: ObstructionPayload::of(&report.classification.obstruction),
            covering_classes: report.class_count(),
            coverings: report.coverings.iter().map(CoveringPayload::of).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use xmodkit_core::fixtures;

    #[test]
    fn cochain_payloads_round_trip() {
        let xm = fixtures::xm_double_z4_twisted();
        let red = xmodkit_core::catgroup::reduce(&xmodkit_core::catgroup::associated_catgroup(&xm));
        let payload = CochainPayload::of(red.cocycle());
        let text = serde_json::to_string(&payload).unwrap();
        let back: CochainPayload = serde_json::from_str(&text).unwrap();
        assert_eq!(back, payload);
        let rebuilt = back.rebuild(red.module()).unwrap();
        assert_eq!(&rebuilt, red.cocycle());
        assert!(rebuilt.is_cocycle());
    }

    #[test]
    fn extension_payloads_rebuild_and_revalidate() {
        let kernel = fixtures::kernel_double_z4();
        let report =
            xmodkit_core::extension::classify(&kernel, &xmodkit_core::Limits::default()).unwrap();
        for rep in &report.representatives {
            let payload = ExtensionPayload::of(rep);
            let text = serde_json::to_string(&payload).unwrap();
            let back: ExtensionPayload = serde_json::from_str(&text).unwrap();
            let rebuilt = back.rebuild(&kernel).unwrap();
            assert_eq!(rebuilt.group().order(), rep.group().order());
        }
    }
}
