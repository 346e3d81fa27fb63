//! Counting resonance equations directly from the bracket operator.

use crate::error::Result;
use crate::euler::ham_field;
use crate::grading::{lie_bracket, Qhp, Rational, Vqhp};
use crate::linalg::Matrix;
use crate::resonance::{chi_of, reduced_resonant_basis, resonant_basis};

/// Matrix of `Q -> [X_H, Q]` from degree `k` to degree `k + chi`, over the
/// standard slot bases.
pub fn bracket_matrix(h: &Qhp, k: u32) -> Result<Matrix> {
    let w = h.weight();
    let chi = chi_of(h)?;
    let hf = ham_field(h)?;
    let one = Rational::from_integer(1.into());
    let cols: Vec<Vec<Rational>> = Vqhp::basis_slots(w, k)
        .into_iter()
        .map(|s| lie_bracket(&hf, &Vqhp::from_slot(w, k, s, one.clone())).coords())
        .collect();
    Ok(Matrix::from_columns(&cols, Vqhp::basis_slots(w, k + chi).len()))
}

/// Number of independent resonance equations in degree `k + chi`:
/// `dim V^[k+chi] - rank [X_H, .]`.
pub fn resonance_equation_count(h: &Qhp, k: u32) -> Result<usize> {
    let m = bracket_matrix(h, k)?;
    Ok(m.rows() - m.rank())
}

/// `dim R^[k+chi] + dim reduced R^[k+chi+delta]`.
pub fn resonant_set_count(h: &Qhp, k: u32) -> Result<usize> {
    let chi = chi_of(h)?;
    let delta = h.weight().delta();
    Ok(resonant_basis(h, k + chi)?.dim() + reduced_resonant_basis(h, k + chi + delta)?.dim())
}
