//! Command implementations, shared by the binary and the test suite.
//! Each command resolves named objects from a manifest, runs the core
//! computation, and returns a JSON payload.

use serde_json::Value;

use crate::error::CliError;
use crate::manifest::{Manifest, ObjectKind};
use crate::payload::{
    CheckPayload, ClassifyPayload, CohomologyPayload, DegreeReportPayload, ObstructionPayload,
    ProlongPayload, ReducePayload,
};
use xmodkit_core::catgroup::{reduce_with_stick, Stick};
use xmodkit_core::cohomology::{coboundary_witness, cohomology_report, GModule};
use xmodkit_core::crossed_module::{derive, CrossedModule};
use xmodkit_core::extension::{classify, obstruction_with_stick, AbstractZetaKernel};
use xmodkit_core::prolongation::classify_coverings;
use xmodkit_core::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Reduce,
    Cohomology,
    Obstruction,
    Classify,
    Prolong,
}

impl CommandKind {
    pub fn label(self) -> &'static str {
        match self {
            CommandKind::Check => "check",
            CommandKind::Reduce => "reduce",
            CommandKind::Cohomology => "cohomology",
            CommandKind::Obstruction => "obstruction",
            CommandKind::Classify => "classify",
            CommandKind::Prolong => "prolong",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StickChoice {
    Canonical,
    Seed(u64),
}

impl StickChoice {
    pub fn parse(text: &str) -> Result<StickChoice, String> {
        if text == "canonical" {
            return Ok(StickChoice::Canonical);
        }
        if let Some(rest) = text.strip_prefix("seed:") {
            return rest
                .parse::<u64>()
                .map(StickChoice::Seed)
                .map_err(|e| format!("bad stick seed {rest:?}: {e}"));
        }
        Err(format!(
            "unknown stick choice {text:?} (expected \"canonical\" or \"seed:<n>\")"
        ))
    }

    fn build(&self, xm: &CrossedModule) -> Stick {
        match self {
            StickChoice::Canonical => Stick::canonical(xm),
            StickChoice::Seed(n) => Stick::seeded(xm, *n),
        }
    }
}

/// Runs one command against a loaded manifest and returns its payload.
pub fn run(
    kind: CommandKind,
    manifest: &Manifest,
    name: &str,
    stick: &StickChoice,
    limits: &Limits,
) -> Result<Value, CliError> {
    match kind {
        CommandKind::Check => cmd_check(manifest, name),
        CommandKind::Reduce => cmd_reduce(manifest, name, stick, limits),
        CommandKind::Cohomology => cmd_cohomology(manifest, name, limits),
        CommandKind::Obstruction => cmd_obstruction(manifest, name, stick, limits),
        CommandKind::Classify => cmd_classify(manifest, name, limits),
        CommandKind::Prolong => cmd_prolong(manifest, name, limits),
    }
}

fn to_value<T: serde::Serialize>(payload: &T) -> Result<Value, CliError> {
    serde_json::to_value(payload).map_err(CliError::semantic)
}

/// Resolves the named object in its unique section, running all
/// validation on the way; a clean resolution is the "valid" verdict.
fn cmd_check(manifest: &Manifest, name: &str) -> Result<Value, CliError> {
    let kind = manifest.kind_of(name)?;
    match kind {
        ObjectKind::Group => {
            manifest.group(name)?;
        }
        ObjectKind::Hom => {
            manifest.hom(name)?;
        }
        ObjectKind::CrossedModule => {
            manifest.crossed_module(name)?;
        }
        ObjectKind::Kernel => {
            manifest.kernel(name)?;
        }
        ObjectKind::PreProlongation => {
            manifest.preprolongation(name)?;
        }
    }
    to_value(&CheckPayload {
        kind: kind.label().to_string(),
        name: name.to_string(),
        valid: true,
    })
}

fn cmd_reduce(
    manifest: &Manifest,
    name: &str,
    choice: &StickChoice,
    limits: &Limits,
) -> Result<Value, CliError> {
    let xm = manifest.crossed_module(name)?;
    let stick = choice.build(&xm);
    let red = reduce_with_stick(&xm, &stick).map_err(CliError::semantic)?;
    let representative = class_representative(red.cocycle(), limits)?;
    to_value(&ReducePayload::of(&red, &stick, &representative))
}

/// The canonical least representative of a cocycle's class.
fn class_representative(
    k: &xmodkit_core::cohomology::Cochain,
    limits: &Limits,
) -> Result<xmodkit_core::cohomology::Cochain, CliError> {
    let report =
        cohomology_report(k.module(), k.degree(), limits).map_err(CliError::semantic)?;
    for rep in &report.class_representatives {
        if coboundary_witness(&k.sub(rep), limits)
            .map_err(CliError::semantic)?
            .is_some()
        {
            return Ok(rep.clone());
        }
    }
    unreachable!("every cocycle lies in some class of the full report");
}

/// The coefficient module a named object carries: the induced module
/// of a crossed module, or the ζ-target module of a kernel.
fn module_of(manifest: &Manifest, name: &str) -> Result<GModule, CliError> {
    match manifest.kind_of(name)? {
        ObjectKind::CrossedModule => {
            let xm = manifest.crossed_module(name)?;
            let derived = derive(&xm);
            GModule::new(
                derived.cokernel.quotient().clone(),
                derived.kernel.clone(),
                derived.induced.clone(),
            )
            .map_err(CliError::semantic)
        }
        ObjectKind::Kernel => Ok(manifest.kernel(name)?.coefficient_module()),
        other => Err(CliError::reference(format!(
            "{name:?} is a {}; cohomology needs a crossed module or kernel",
            other.label()
        ))),
    }
}

fn cmd_cohomology(manifest: &Manifest, name: &str, limits: &Limits) -> Result<Value, CliError> {
    let module = module_of(manifest, name)?;
    let mut degrees = Vec::new();
    for degree in 1..=3 {
        let report = cohomology_report(&module, degree, limits).map_err(CliError::semantic)?;
        degrees.push(DegreeReportPayload::of(&report));
    }
    to_value(&CohomologyPayload {
        group_order: module.group().order(),
        coefficient_order: module.coeff().order(),
        degrees,
    })
}

/// The ζ-kernel a named object determines: itself for a kernel, the
/// induced kernel for a pre-prolongation.
fn kernel_of(manifest: &Manifest, name: &str) -> Result<AbstractZetaKernel, CliError> {
    match manifest.kind_of(name)? {
        ObjectKind::Kernel => manifest.kernel(name),
        ObjectKind::PreProlongation => {
            Ok(manifest.preprolongation(name)?.induced_kernel().clone())
        }
        other => Err(CliError::reference(format!(
            "{name:?} is a {}; obstruction needs a kernel or pre-prolongation",
            other.label()
        ))),
    }
}

fn cmd_obstruction(
    manifest: &Manifest,
    name: &str,
    choice: &StickChoice,
    limits: &Limits,
) -> Result<Value, CliError> {
    let kernel = kernel_of(manifest, name)?;
    let stick = choice.build(kernel.xm());
    let obstruction =
        obstruction_with_stick(&kernel, &stick, limits).map_err(CliError::semantic)?;
    to_value(&ObstructionPayload::of(&obstruction))
}

fn cmd_classify(manifest: &Manifest, name: &str, limits: &Limits) -> Result<Value, CliError> {
    let kernel = manifest.kernel(name)?;
    let report = classify(&kernel, limits).map_err(CliError::semantic)?;
    let mut pairs = Vec::new();
    for i in 0..report.representatives.len() {
        for jj in i + 1..report.representatives.len() {
            pairs.push((i, jj));
        }
    }
    to_value(&ClassifyPayload::of(&report, pairs))
}

fn cmd_prolong(manifest: &Manifest, name: &str, limits: &Limits) -> Result<Value, CliError> {
    let pre = manifest.preprolongation(name)?;
    let report = classify_coverings(&pre, limits).map_err(CliError::semantic)?;
    to_value(&ProlongPayload::of(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stick_choices_parse() {
        assert_eq!(StickChoice::parse("canonical"), Ok(StickChoice::Canonical));
        assert_eq!(StickChoice::parse("seed:7"), Ok(StickChoice::Seed(7)));
        assert!(StickChoice::parse("seed:x").is_err());
        assert!(StickChoice::parse("random").is_err());
    }
}
