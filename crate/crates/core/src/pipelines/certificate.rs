use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cohom::{relator_tails, Cocycle2, SystemRecord};
use crate::error::Result;
use crate::ext::{FaithfulCertificate, NonsplitCertificate, OrbitRecord, StabilizerSection, SubgroupKind};
use crate::gmod::{GModule, StructureReport};
use crate::perm::{word_to_string, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub k: usize,
    pub p: u8,
    /// Degree of the ambient alternating group when built by restriction.
    pub j: Option<usize>,
    pub within_hypotheses: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub degree: usize,
    pub formula: String,
    pub closed_form: usize,
    /// `k(k-1)`, recorded as a sanity line only.
    pub sanity_lower: usize,
}

/// The Carmichael presentation of `A_n` the certificate's data refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRecord {
    pub n: usize,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub p: u8,
    pub dim: usize,
    pub factor_dims: Vec<usize>,
    /// Generator matrices in text form.
    pub action: Vec<String>,
    pub structure: Option<StructureReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleRecord {
    pub kind: String,
    pub relator_tails: Vec<String>,
    /// `(g, h, δ(g,h))` on pairs of generators.
    pub generator_pairs: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerRecord {
    pub subgroup: SubgroupKind,
    /// `φ` with `M₀ = ker φ`.
    pub functional: String,
    pub system: SystemRecord,
    pub section: Vec<String>,
    /// Whether the subgroup acts trivially on `M/M₀`.
    pub central_fiber: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImages {
    pub degree: usize,
    /// Images of lifts of the presentation generators.
    pub lifts: Vec<String>,
    /// Images of a basis of the module.
    pub module: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionRecord {
    pub j: usize,
    pub orbits: Vec<OrbitRecord>,
    pub kernel_dim: usize,
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub degree_matches: bool,
    pub transitive: bool,
    pub faithful: bool,
    pub nonsplit: bool,
    pub all_positive: bool,
}

/// A self-contained record of one construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub construction: Construction,
    pub degrees: Degrees,
    pub presentation: PresentationRecord,
    pub module: ModuleRecord,
    pub cocycle: CocycleRecord,
    pub stabilizer: Option<StabilizerRecord>,
    pub generator_images: GeneratorImages,
    pub nonsplit: NonsplitCertificate,
    pub faithful: FaithfulCertificate,
    pub transitive: bool,
    pub details: serde_json::Value,
    pub restriction: Option<RestrictionRecord>,
    pub seed: u64,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn is_positive(&self) -> bool {
        self.verdict.all_positive
    }
}

pub(crate) fn presentation_record(module: &GModule) -> PresentationRecord {
    let pres = module.presentation();
    PresentationRecord {
        n: pres.points().len(),
        generators: pres.realization().iter().map(|g| g.to_cycle_string()).collect(),
        relators: pres.relators().iter().map(|r| word_to_string(r)).collect(),
    }
}

pub(crate) fn module_record(
    module: &GModule,
    factor_dims: Vec<usize>,
    structure: Option<StructureReport>,
) -> ModuleRecord {
    ModuleRecord {
        p: module.field().p(),
        dim: module.dim(),
        factor_dims,
        action: module.action().iter().map(|a| a.to_text()).collect(),
        structure,
    }
}

pub(crate) fn cocycle_record(delta: &dyn Cocycle2, kind: &str) -> Result<CocycleRecord> {
    let gens = delta.module().presentation().realization();
    let mut pairs = Vec::new();
    for g in gens {
        for h in gens {
            pairs.push((
                g.to_cycle_string(),
                h.to_cycle_string(),
                delta.eval(g, h)?.to_digit_string(),
            ));
        }
    }
    Ok(CocycleRecord {
        kind: kind.to_string(),
        relator_tails: relator_tails(delta)?.iter().map(|t| t.to_digit_string()).collect(),
        generator_pairs: pairs,
    })
}

pub(crate) fn stabilizer_record(stab: &StabilizerSection) -> StabilizerRecord {
    StabilizerRecord {
        subgroup: stab.kind(),
        functional: stab.functional().to_digit_string(),
        system: stab.system().clone(),
        section: stab.section().iter().map(|v| v.to_digit_string()).collect(),
        central_fiber: stab.quotient_module().action().iter().all(|a| a.is_identity()),
    }
}

pub(crate) fn images_record(degree: usize, lifts: &[Permutation], module: &[Permutation]) -> GeneratorImages {
    GeneratorImages {
        degree,
        lifts: lifts.iter().map(|g| g.to_cycle_string()).collect(),
        module: module.iter().map(|g| g.to_cycle_string()).collect(),
    }
}

pub(crate) fn verdict(degree_matches: bool, transitive: bool, faithful: bool, nonsplit: bool) -> Verdict {
    Verdict {
        degree_matches,
        transitive,
        faithful,
        nonsplit,
        all_positive: degree_matches && transitive && faithful && nonsplit,
    }
}
