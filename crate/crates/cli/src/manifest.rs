//! The manifest format: named groups, homomorphisms, crossed modules,
//! ζ-kernels, and pre-prolongations, with reference resolution.
//!
//! ```json
//! {
//!   "version": "1",
//!   "groups": {
//!     "Z4": { "cyclic": 4 },
//!     "D3": { "dihedral": 3 },
//!     "V":  { "product": ["Z2", "Z2"] },
//!     "Q":  { "table": [[0, 1], [1, 0]] }
//!   },
//!   "homs": {
//!     "double": { "source": "Z4", "target": "Z4", "map": [0, 2, 0, 2] }
//!   },
//!   "crossed_modules": {
//!     "plain":   { "boundary": "double", "action": "trivial" },
//!     "twisted": { "boundary": "double", "action": { "tables": [[0,1,2,3], [0,3,2,1], [0,1,2,3], [0,3,2,1]] } }
//!   },
//!   "kernels": {
//!     "k": { "xmod": "plain", "coefficients": "Z2", "zeta": [0, 1] }
//!   },
//!   "preprolongations": {
//!     "p": { "pi": "mod2", "coefficients": "Z2", "zeta": [0, 1], "eta": "embed", "theta": "trivial" }
//!   }
//! }
//! ```
//!
//! Integers index group elements (0 is the identity). A kernel's `zeta`
//! maps the boundary kernel — indexed by the ascending order of its
//! elements in the source group — into the coefficient group; a
//! pre-prolongation's `zeta` does the same for `Ker π`. A
//! pre-prolongation's `theta` acts on `B̄ = B / Ker ζ`, whose elements
//! are cosets indexed ascending by least member.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::CliError;
use crate::FORMAT_VERSION;
use xmodkit_core::crossed_module::{derive, CrossedModule};
use xmodkit_core::extension::AbstractZetaKernel;
use xmodkit_core::group::{Action, FiniteGroup, GroupHom};
use xmodkit_core::prolongation::{bar_decomposition, PreProlongation};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: String,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub homs: BTreeMap<String, HomSpec>,
    #[serde(default)]
    pub crossed_modules: BTreeMap<String, XModSpec>,
    #[serde(default)]
    pub kernels: BTreeMap<String, KernelSpec>,
    #[serde(default)]
    pub preprolongations: BTreeMap<String, PreSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum GroupSpec {
    /// `Z/n`, elements `0..n` under addition.
    Cyclic(usize),
    /// The dihedral group of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    /// Direct product of previously named groups, in order.
    Product(Vec<String>),
    /// An explicit Cayley table; row `x`, column `y` holds `x * y`.
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum ActionSpec {
    /// Everything acts as the identity.
    Trivial,
    /// One automorphism table per acting element.
    Tables(Vec<Vec<usize>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XModSpec {
    /// Name of the boundary homomorphism.
    pub boundary: String,
    /// Action of the boundary's target on its source.
    pub action: ActionSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    /// Name of the underlying crossed module.
    pub xmod: String,
    /// Name of the abelian coefficient group.
    pub coefficients: String,
    /// ζ on the boundary kernel, by ascending kernel element.
    pub zeta: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreSpec {
    /// Name of the surjection π.
    pub pi: String,
    /// Name of the abelian coefficient group.
    pub coefficients: String,
    /// ζ on `Ker π`, by ascending kernel element.
    pub zeta: Vec<usize>,
    /// Name of the normal monomorphism η out of π's target.
    pub eta: String,
    /// Action of η's target on `B̄ = B / Ker ζ`.
    pub theta: ActionSpec,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::reference(format!("cannot read {}: {e}", path.display()))
        })?;
        let manifest: Manifest = serde_json::from_str(&text)
            .map_err(|e| CliError::reference(format!("malformed manifest: {e}")))?;
        if manifest.version != FORMAT_VERSION {
            return Err(CliError::reference(format!(
                "unsupported manifest version {:?} (expected {:?})",
                manifest.version, FORMAT_VERSION
            )));
        }
        Ok(manifest)
    }

    /// Resolves a named group, following product references.
    pub fn group(&self, name: &str) -> Result<FiniteGroup, CliError> {
        self.group_inner(name, &mut Vec::new())
    }

    fn group_inner(&self, name: &str, stack: &mut Vec<String>) -> Result<FiniteGroup, CliError> {
        if stack.iter().any(|s| s == name) {
            return Err(CliError::reference(format!(
                "group {name:?} references itself through {stack:?}"
            )));
        }
        let spec = self
            .groups
            .get(name)
            .ok_or_else(|| CliError::reference(format!("no group named {name:?}")))?;
        match spec {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(CliError::reference(format!(
                        "group {name:?}: order must be positive"
                    )));
                }
                Ok(FiniteGroup::cyclic(*n))
            }
            GroupSpec::Dihedral(n) => {
                if *n == 0 {
                    return Err(CliError::reference(format!(
                        "group {name:?}: order must be positive"
                    )));
                }
                Ok(FiniteGroup::dihedral(*n))
            }
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(CliError::reference(format!(
                        "group {name:?}: empty product"
                    )));
                }
                stack.push(name.to_string());
                let mut factors = Vec::new();
                for part in parts {
                    factors.push(self.group_inner(part, stack)?);
                }
                stack.pop();
                let mut out = factors[0].clone();
                for factor in &factors[1..] {
                    out = out.direct_product(factor);
                }
                Ok(out)
            }
            GroupSpec::Table(rows) => {
                FiniteGroup::from_table(rows).map_err(CliError::semantic)
            }
        }
    }

    pub fn hom(&self, name: &str) -> Result<GroupHom, CliError> {
        let spec = self
            .homs
            .get(name)
            .ok_or_else(|| CliError::reference(format!("no homomorphism named {name:?}")))?;
        let source = self.group(&spec.source)?;
        let target = self.group(&spec.target)?;
        GroupHom::new(source, target, spec.map.clone()).map_err(CliError::semantic)
    }

    pub fn crossed_module(&self, name: &str) -> Result<CrossedModule, CliError> {
        let spec = self.crossed_modules.get(name).ok_or_else(|| {
            CliError::reference(format!("no crossed module named {name:?}"))
        })?;
        let boundary = self.hom(&spec.boundary)?;
        let action = match &spec.action {
            ActionSpec::Trivial => Action::trivial(boundary.target(), boundary.source()),
            ActionSpec::Tables(tables) => {
                Action::new(boundary.target().clone(), boundary.source().clone(), tables.clone())
                    .map_err(CliError::semantic)?
            }
        };
        CrossedModule::new(boundary, action).map_err(CliError::semantic)
    }

    pub fn kernel(&self, name: &str) -> Result<AbstractZetaKernel, CliError> {
        let spec = self
            .kernels
            .get(name)
            .ok_or_else(|| CliError::reference(format!("no kernel named {name:?}")))?;
        let xm = self.crossed_module(&spec.xmod)?;
        let coefficients = self.group(&spec.coefficients)?;
        let derived = derive(&xm);
        let zeta = GroupHom::new(derived.kernel.clone(), coefficients.clone(), spec.zeta.clone())
            .map_err(CliError::semantic)?;
        AbstractZetaKernel::new(xm, coefficients, zeta).map_err(CliError::semantic)
    }

    pub fn preprolongation(&self, name: &str) -> Result<PreProlongation, CliError> {
        let spec = self.preprolongations.get(name).ok_or_else(|| {
            CliError::reference(format!("no pre-prolongation named {name:?}"))
        })?;
        let pi = self.hom(&spec.pi)?;
        let eta = self.hom(&spec.eta)?;
        let coefficients = self.group(&spec.coefficients)?;
        let (kernel_group, _) = pi
            .source()
            .restrict(&pi.kernel())
            .map_err(CliError::semantic)?;
        let zeta = GroupHom::new(kernel_group, coefficients, spec.zeta.clone())
            .map_err(CliError::semantic)?;
        let theta = match &spec.theta {
            ActionSpec::Trivial => {
                let bar = bar_decomposition(&pi, &zeta).map_err(CliError::semantic)?;
                Action::trivial(eta.target(), bar.quotient())
            }
            ActionSpec::Tables(tables) => {
                let bar = bar_decomposition(&pi, &zeta).map_err(CliError::semantic)?;
                Action::new(eta.target().clone(), bar.quotient().clone(), tables.clone())
                    .map_err(CliError::semantic)?
            }
        };
        PreProlongation::new(pi, zeta, eta, theta).map_err(CliError::semantic)
    }

    /// The unique section containing `name`, for `check` and the
    /// commands that accept more than one object kind.
    pub fn kind_of(&self, name: &str) -> Result<ObjectKind, CliError> {
        let mut kinds = Vec::new();
        if self.groups.contains_key(name) {
            kinds.push(ObjectKind::Group);
        }
        if self.homs.contains_key(name) {
            kinds.push(ObjectKind::Hom);
        }
        if self.crossed_modules.contains_key(name) {
            kinds.push(ObjectKind::CrossedModule);
        }
        if self.kernels.contains_key(name) {
            kinds.push(ObjectKind::Kernel);
        }
        if self.preprolongations.contains_key(name) {
            kinds.push(ObjectKind::PreProlongation);
        }
        match kinds.len() {
            0 => Err(CliError::reference(format!("no object named {name:?}"))),
            1 => Ok(kinds[0]),
            _ => Err(CliError::reference(format!(
                "name {name:?} is ambiguous across sections: {:?}",
                kinds.iter().map(|k| k.label()).collect::<Vec<_>>()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectKind {
    Group,
    Hom,
    CrossedModule,
    Kernel,
    PreProlongation,
}

impl ObjectKind {
    pub fn label(self) -> &'static str {
        match self {
            ObjectKind::Group => "group",
            ObjectKind::Hom => "hom",
            ObjectKind::CrossedModule => "crossed_module",
            ObjectKind::Kernel => "kernel",
            ObjectKind::PreProlongation => "preprolongation",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Manifest {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn groups_resolve_through_products() {
        let m = parse(
            r#"{"version":"1","groups":{"Z2":{"cyclic":2},"V":{"product":["Z2","Z2"]}}}"#,
        );
        assert_eq!(m.group("V").unwrap().order(), 4);
    }

    #[test]
    fn cyclic_product_references_are_reported() {
        let m = parse(
            r#"{"version":"1","groups":{"A":{"product":["B"]},"B":{"product":["A"]}}}"#,
        );
        match m.group("A") {
            Err(CliError::Reference(msg)) => assert!(msg.contains("references itself")),
            other => panic!("expected a reference error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = serde_json::from_str::<Manifest>(
            r#"{"version":"1","groups":{},"unknown":{}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown"));
    }

    #[test]
    fn bad_hom_maps_are_semantic_failures() {
        let m = parse(
            r#"{"version":"1","groups":{"Z2":{"cyclic":2},"Z3":{"cyclic":3}},
                "homs":{"bad":{"source":"Z2","target":"Z3","map":[0,1]}}}"#,
        );
        match m.hom("bad") {
            Err(CliError::Semantic(msg)) => assert!(msg.contains("(1, 1)")),
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn ambiguous_names_are_reference_errors() {
        let m = parse(
            r#"{"version":"1","groups":{"x":{"cyclic":2}},
                "homs":{"x":{"source":"x","target":"x","map":[0,1]}}}"#,
        );
        match m.kind_of("x") {
            Err(CliError::Reference(msg)) => assert!(msg.contains("ambiguous")),
            other => panic!("expected a reference error, got {other:?}"),
        }
    }
}
