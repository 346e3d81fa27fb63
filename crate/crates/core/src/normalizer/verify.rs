use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::Rational;

use super::gnf::Slot;
use super::system::{HamiltonianSystem, Transformation};

/// Mismatching coefficients in one generalized degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResidual {
    pub gdeg: u32,
    pub slots: Vec<(Slot, Rational)>,
}

impl DegreeResidual {
    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Per-degree comparison of the pushed-forward original against a result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub truncation: u32,
    pub residuals: Vec<DegreeResidual>,
}

impl ConjugacyReport {
    pub fn is_success(&self) -> bool {
        self.residuals.iter().all(DegreeResidual::is_zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DegreeResidual> {
        self.residuals.iter().filter(|r| !r.is_zero())
    }
}

/// Pushes `original` through every generator of `t` and compares the result
/// with `result` coefficient by coefficient.
pub fn verify_conjugacy(
    original: &HamiltonianSystem,
    t: &Transformation,
    result: &HamiltonianSystem,
) -> Result<ConjugacyReport> {
    if original.weight() != result.weight() || t.weight() != original.weight() {
        return Err(Error::InvalidParams("systems use different weights".into()));
    }
    if original.truncation() != result.truncation() {
        return Err(Error::InvalidParams(format!(
            "truncations differ: {} and {}",
            original.truncation(),
            result.truncation()
        )));
    }
    if original.hamiltonian() != result.hamiltonian() {
        return Err(Error::InvalidParams("unperturbed parts differ".into()));
    }
    let pushed = t.apply(original)?;
    let residuals = (original.chi() + 1..=original.truncation())
        .map(|k| {
            let a = pushed.term(k);
            let b = result.term(k);
            let diff = a.sub(&b).expect("same degree");
            DegreeResidual {
                gdeg: k,
                slots: diff
                    .slots()
                    .filter(|(_, _, c)| !c.is_zero())
                    .map(|(c, m, v)| {
                        (
                            Slot {
                                component: c,
                                monomial: m,
                            },
                            v.clone(),
                        )
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(ConjugacyReport {
        truncation: original.truncation(),
        residuals,
    })
}
