//! Resonant polynomials of a quasi-homogeneous Hamiltonian.
//!
//! With `H` of degree `chi + delta` and unperturbed field `X_H = (-d2 H, d1 H)`,
//! the operator adjoint to `X_H` under the apolar product is
//! `x2 * (d1 H)(D) - x1 * (d2 H)(D)`. Its kernel in degree `k` is the resonant
//! space; intersecting with its image from degree `k + chi` gives the reduced
//! resonant space, i.e. resonant polynomials orthogonal to the first
//! integrals of degree `k`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::ham_field;
use crate::grading::{apply_field, inner, Monomial, Polynomial, Qhp, Rational, Var, Weight};
use crate::linalg::{intersect, span_basis, Matrix};

/// Basis of the (reduced) resonant space in one generalized degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantBasis {
    pub gdeg: u32,
    pub basis: Vec<Qhp>,
    pub reduced: bool,
}

impl ResonantBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn weight(&self) -> Option<Weight> {
        self.basis.first().map(Qhp::weight)
    }
}

/// Monomials forming a minimal (reduced) resonant set, with the nonzero
/// pairing determinant that certifies them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantSetChoice {
    pub gdeg: u32,
    pub monomials: Vec<Monomial>,
    pub reduced: bool,
    pub certificate: Rational,
}

/// Scan order of the greedy monomial selection in [`minimal_resonant_set`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SetOrder {
    /// Lexicographically greatest `(p1, p2)` first: prefers large powers of `x1`.
    #[default]
    HighFirst,
    /// Lexicographically least `(p1, p2)` first.
    LowFirst,
}

/// Degree `chi` of the unperturbed field of `h`.
pub fn chi_of(h: &Qhp) -> Result<u32> {
    let delta = h.weight().delta();
    h.gdeg().checked_sub(delta).ok_or(Error::DegreeTooSmall {
        gdeg: h.gdeg(),
        delta,
    })
}

/// `x2 * (d1 h)(D) p - x1 * (d2 h)(D) p`.
pub fn conj_apply(h: &Qhp, p: &Polynomial) -> Polynomial {
    let a = h.poly().derivative(Var::X1).apply_as_operator(p);
    let b = h.poly().derivative(Var::X2).apply_as_operator(p);
    &a.shift(Monomial::new(0, 1)) - &b.shift(Monomial::new(1, 0))
}

/// Matrix of the conjugate operator from degree `k` to degree `k - chi`.
pub fn conj_matrix(h: &Qhp, k: u32) -> Result<Matrix> {
    let chi = chi_of(h)?;
    let w = h.weight();
    let src = w.monomials(k);
    let dst = if k >= chi { w.monomials(k - chi) } else { Vec::new() };
    let cols: Vec<Vec<Rational>> = src
        .iter()
        .map(|m| conj_apply(h, &Polynomial::monomial(*m, Rational::from_integer(1.into()))).coords(&dst))
        .collect();
    Ok(Matrix::from_columns(&cols, dst.len()))
}

/// Matrix of the derivation `p -> X_H(p)` from degree `k` to degree `k + chi`.
pub fn derivation_matrix(h: &Qhp, k: u32) -> Result<Matrix> {
    let chi = chi_of(h)?;
    let w = h.weight();
    let field = ham_field(h)?;
    let src = w.monomials(k);
    let dst = w.monomials(k + chi);
    let cols: Vec<Vec<Rational>> = src
        .iter()
        .map(|m| apply_field(&field, &Polynomial::monomial(*m, Rational::from_integer(1.into()))).coords(&dst))
        .collect();
    Ok(Matrix::from_columns(&cols, dst.len()))
}

fn to_qhps(w: Weight, k: u32, vectors: Vec<Vec<Rational>>) -> Vec<Qhp> {
    vectors.iter().map(|v| Qhp::from_coords(w, k, v)).collect()
}

pub fn resonant_basis(h: &Qhp, k: u32) -> Result<ResonantBasis> {
    let w = h.weight();
    let n = w.dim(k);
    let kernel = span_basis(&conj_matrix(h, k)?.nullspace(), n);
    Ok(ResonantBasis {
        gdeg: k,
        basis: to_qhps(w, k, kernel),
        reduced: false,
    })
}

/// Resonant polynomials of degree `k` that also lie in the image of the
/// conjugate operator on degree `k + chi`.
pub fn reduced_resonant_basis(h: &Qhp, k: u32) -> Result<ResonantBasis> {
    let w = h.weight();
    let chi = chi_of(h)?;
    let n = w.dim(k);
    let kernel = conj_matrix(h, k)?.nullspace();
    let image_map = conj_matrix(h, k + chi)?;
    let image: Vec<Vec<Rational>> = (0..image_map.cols()).map(|j| image_map.column(j)).collect();
    let common = intersect(&kernel, &image, n);
    Ok(ResonantBasis {
        gdeg: k,
        basis: to_qhps(w, k, common),
        reduced: true,
    })
}

/// First integrals of `X_H` of degree `k`.
pub fn integral_basis(h: &Qhp, k: u32) -> Result<Vec<Qhp>> {
    let w = h.weight();
    let n = w.dim(k);
    let ker = span_basis(&derivation_matrix(h, k)?.nullspace(), n);
    Ok(to_qhps(w, k, ker))
}

/// `{<<R_i, S_j>>}` for a basis `R` and a candidate set `S`.
pub fn pairing_matrix(basis: &[Qhp], set: &[Qhp]) -> Matrix {
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|r| set.iter().map(|s| inner(r.poly(), s.poly())).collect())
        .collect();
    Matrix::from_rows(&rows, set.len())
}

/// Validates a candidate set of QHPs against a basis; returns the pairing
/// determinant when it is nonzero.
pub fn check_resonant_qhps(basis: &ResonantBasis, set: &[Qhp]) -> Result<Rational> {
    if set.len() != basis.dim() {
        return Err(Error::SizeMismatch {
            expected: basis.dim(),
            found: set.len(),
        });
    }
    if let Some(bad) = set.iter().find(|s| s.gdeg() != basis.gdeg) {
        return Err(Error::DegreeMismatch {
            expected: basis.gdeg as i64,
            found: bad.gdeg() as i64,
        });
    }
    let det = pairing_matrix(&basis.basis, set).determinant();
    if det.is_zero() {
        return Err(Error::SingularPairing { gdeg: basis.gdeg });
    }
    Ok(det)
}

pub fn check_resonant_set(basis: &ResonantBasis, mons: &[Monomial]) -> Result<Rational> {
    if mons.len() != basis.dim() {
        return Err(Error::SizeMismatch {
            expected: basis.dim(),
            found: mons.len(),
        });
    }
    let Some(w) = basis.weight() else {
        return Ok(Rational::from_integer(1.into()));
    };
    if let Some(bad) = mons.iter().find(|m| w.gdeg(**m) != basis.gdeg) {
        return Err(Error::DegreeMismatch {
            expected: basis.gdeg as i64,
            found: w.gdeg(*bad) as i64,
        });
    }
    let set: Vec<Qhp> = mons
        .iter()
        .map(|m| Qhp::from_monomial(w, *m, Rational::from_integer(1.into())))
        .collect();
    check_resonant_qhps(basis, &set)
}

/// Greedy choice of monomials whose pairing with the basis is nonsingular.
pub fn minimal_resonant_set(basis: &ResonantBasis, order: SetOrder) -> ResonantSetChoice {
    let mut chosen: Vec<Monomial> = Vec::new();
    if let Some(w) = basis.weight() {
        let mut candidates = w.monomials(basis.gdeg);
        if order == SetOrder::HighFirst {
            candidates.reverse();
        }
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for m in candidates {
            if chosen.len() == basis.dim() {
                break;
            }
            let col: Vec<Rational> = basis.basis.iter().map(|r| r.coeff(m)).collect();
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            cols.push(col);
            if Matrix::from_columns(&cols, basis.dim()).rank() == cols.len() {
                chosen.push(m);
            } else {
                cols.pop();
            }
        }
    }
    let certificate =
        check_resonant_set(basis, &chosen).expect("greedy selection has full rank by construction");
    ResonantSetChoice {
        gdeg: basis.gdeg,
        monomials: chosen,
        reduced: basis.reduced,
        certificate,
    }
}
