// SPDX-License-Identifier: Apache-2.0

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::techmodel::Violation;

/// Everything that can go wrong while evaluating the model.
///
/// Variants split into two families: configuration errors (bad inputs) and
/// model infeasibility (inputs are well formed but the physics says no).
/// [`ModelError::is_infeasible`] tells them apart.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// A technology profile broke one or more invariants.
    InvalidProfile(Vec<Violation>),
    /// A scalar argument was outside its domain.
    InvalidArgument {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// The fin's raw height does not clear the STI surface.
    Submerged { raw_height_nm: f64, sti_depth_nm: f64 },
    /// Area ratios need both technologies drawn at the same gate pitch.
    GatePitchMismatch { candidate_nm: f64, reference_nm: f64 },
    /// The baseline technology delivers no current, so no ratio exists.
    ZeroBaselineCurrent,
    /// These W/L multiples need more height than a single fin offers.
    ExceedsSingleFinBudget(Vec<u32>),
    /// A sweep grid produced no sample points.
    EmptySampling { step: f64, span: f64 },
    /// Referenced a profile that is not in the set.
    UnknownProfile(String),
    /// An error raised while processing one named profile.
    InProfile { name: String, source: Box<ModelError> },
}

impl ModelError {
    pub(crate) fn argument(name: &'static str, value: f64, expected: &'static str) -> Self {
        ModelError::InvalidArgument { name, value, expected }
    }

    pub(crate) fn in_profile(self, name: &str) -> Self {
        ModelError::InProfile {
            name: name.into(),
            source: Box::new(self),
        }
    }

    /// True when the inputs were valid but the modeled structure cannot exist.
    pub fn is_infeasible(&self) -> bool {
        match self {
            ModelError::Submerged { .. } | ModelError::ExceedsSingleFinBudget(_) => true,
            ModelError::InProfile { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidProfile(violations) => {
                f.write_str("invalid technology profile: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            ModelError::InvalidArgument { name, value, expected } => {
                write!(f, "{name} = {value} is invalid, expected {expected}")
            }
            ModelError::Submerged { raw_height_nm, sti_depth_nm } => write!(
                f,
                "fin fully submerged in STI: raw height {raw_height_nm:.3} nm does not exceed STI depth {sti_depth_nm} nm"
            ),
            ModelError::GatePitchMismatch { candidate_nm, reference_nm } => write!(
                f,
                "gate pitch mismatch: {candidate_nm} nm vs reference {reference_nm} nm"
            ),
            ModelError::ZeroBaselineCurrent => f.write_str("baseline technology delivers zero current per fin"),
            ModelError::ExceedsSingleFinBudget(multiples) => {
                write!(f, "W/L multiples {multiples:?} exceed the single-fin height budget")
            }
            ModelError::EmptySampling { step, span } => {
                write!(f, "sweep step {step} leaves no samples inside an interval of width {span}")
            }
            ModelError::UnknownProfile(name) => write!(f, "no profile named `{name}`"),
            ModelError::InProfile { name, source } => write!(f, "profile `{name}`: {source}"),
        }
    }
}

impl core::error::Error for ModelError {}
