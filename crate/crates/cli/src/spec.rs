//! Instance specifications: the JSON format consumed by every subcommand.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use zakframes_group::{Group, Subgroup};

use crate::error::{CliError, Result};

/// Group description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Product { orders: Vec<usize> },
    Cayley { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Arc<Group>> {
        let g = match self {
            GroupSpec::Product { orders } => Group::product(orders)?,
            GroupSpec::Cayley { table } => Group::cayley(table)?,
        };
        Ok(Arc::new(g))
    }
}

/// Subgroup description: stride sublattice or generator closure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Strides { strides: Vec<usize> },
    Generators { generators: Vec<usize> },
}

impl SubgroupSpec {
    pub fn build(&self, group: &Arc<Group>) -> Result<Arc<Subgroup>> {
        let s = match self {
            SubgroupSpec::Strides { strides } => {
                Subgroup::from_strides(Arc::clone(group), strides)?
            }
            SubgroupSpec::Generators { generators } => {
                Subgroup::from_generators(Arc::clone(group), generators)?
            }
        };
        Ok(Arc::new(s))
    }
}

/// A full instance: group, subgroup, family file references, optional
/// second family, command-specific parameters, tolerance overrides, and
/// the random seed. Serialization round-trips exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub group: GroupSpec,
    pub subgroup: SubgroupSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub family: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub family2: Vec<String>,
    /// Modulation subgroup for Gabor commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<SubgroupSpec>,
    /// Copy count for super commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_copies: Option<usize>,
    /// Component family files for super commands, one list per copy.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components2: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supp_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceSpec {
    pub fn minimal(group: GroupSpec, subgroup: SubgroupSpec) -> InstanceSpec {
        InstanceSpec {
            group,
            subgroup,
            family: Vec::new(),
            family2: Vec::new(),
            lambda: None,
            n_copies: None,
            components: Vec::new(),
            components2: Vec::new(),
            tol: None,
            supp_tol: None,
            seed: None,
        }
    }

    pub fn load(path: &Path) -> Result<InstanceSpec> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let spec: InstanceSpec = serde_json::from_str(&text)?;
        Ok(spec)
    }

    /// Resolves a referenced file relative to the spec's own directory.
    pub fn resolve(&self, spec_path: &Path, reference: &str) -> PathBuf {
        let p = Path::new(reference);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            spec_path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(p)
        }
    }
}
