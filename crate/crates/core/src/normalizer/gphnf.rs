//! Degree-by-degree reduction to the pseudo-Hamiltonian normal form.
//!
//! In degree `m + chi` the perturbation is `ham_field(F) + G * E`. A generator
//! `Q = ham_field(I) + J * E` of degree `m` changes it by `-[X_H, Q]`, whose
//! Euler part is `c_m * X_H(J) * E` with `c_m = (m + delta) / (m + chi + delta)`
//! and whose Hamiltonian part is `X_H(I) + K(J)`. `G` is projected onto the
//! span of the resonant set along the image of `X_H`, then `F` is projected
//! onto the span of the reduced set along the image of `X_H` plus the first
//! integrals reachable through `K`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::euler::{decompose, euler_multiple, ham_or_zero};
use crate::grading::{inner, lie_bracket, Monomial, Qhp, Rational, Vqhp, Weight};
use crate::linalg::Matrix;
use crate::resonance::{
    check_resonant_set, derivation_matrix, integral_basis, minimal_resonant_set, pairing_matrix, reduced_resonant_basis,
    resonant_basis, ResonantBasis, ResonantSetChoice, SetOrder,
};

use super::pushforward::push_forward;
use super::system::{HamiltonianSystem, Transformation};

/// The resonant set in degree `m + chi` and the reduced set in degree
/// `m + chi + delta` used by one normalization step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSets {
    pub resonant: Vec<Qhp>,
    pub reduced: Vec<Qhp>,
}

impl DegreeSets {
    pub fn from_choices(w: Weight, s: &ResonantSetChoice, st: &ResonantSetChoice) -> Self {
        let one = Rational::from_integer(1.into());
        DegreeSets {
            resonant: s.monomials.iter().map(|m| Qhp::from_monomial(w, *m, one.clone())).collect(),
            reduced: st.monomials.iter().map(|m| Qhp::from_monomial(w, *m, one.clone())).collect(),
        }
    }
}

/// Supplies the sets for every generator degree `m`.
pub trait SetProvider {
    fn sets(&self, h: &Qhp, m: u32) -> Result<DegreeSets>;
}

/// Minimal monomial sets chosen greedily in the given order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinimalSets {
    pub order: SetOrder,
}

impl MinimalSets {
    pub fn new(order: SetOrder) -> Self {
        MinimalSets { order }
    }

    /// The resonant choice in degree `m + chi` and the reduced choice in
    /// degree `m + chi + delta`.
    pub fn choices(&self, h: &Qhp, m: u32) -> Result<(ResonantSetChoice, ResonantSetChoice)> {
        let chi = crate::resonance::chi_of(h)?;
        let delta = h.weight().delta();
        let s = minimal_resonant_set(&resonant_basis(h, m + chi)?, self.order);
        let st = minimal_resonant_set(&reduced_resonant_basis(h, m + chi + delta)?, self.order);
        Ok((s, st))
    }
}

impl SetProvider for MinimalSets {
    fn sets(&self, h: &Qhp, m: u32) -> Result<DegreeSets> {
        let (s, st) = self.choices(h, m)?;
        Ok(DegreeSets::from_choices(h.weight(), &s, &st))
    }
}

/// Monomial sets given per generalized degree; degrees without an entry use
/// the fallback choice. Every given set is checked against the basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UserSets {
    pub resonant: BTreeMap<u32, Vec<Monomial>>,
    pub reduced: BTreeMap<u32, Vec<Monomial>>,
    pub fallback: MinimalSets,
}

impl UserSets {
    /// The given set for the basis degree, or the fallback choice.
    pub fn choice_for(&self, basis: &ResonantBasis) -> Result<ResonantSetChoice> {
        let map = if basis.reduced { &self.reduced } else { &self.resonant };
        match map.get(&basis.gdeg) {
            Some(mons) => Ok(ResonantSetChoice {
                gdeg: basis.gdeg,
                monomials: mons.clone(),
                reduced: basis.reduced,
                certificate: check_resonant_set(basis, mons)?,
            }),
            None => Ok(minimal_resonant_set(basis, self.fallback.order)),
        }
    }
}

impl SetProvider for UserSets {
    fn sets(&self, h: &Qhp, m: u32) -> Result<DegreeSets> {
        let k = m + crate::resonance::chi_of(h)?;
        let s = self.choice_for(&resonant_basis(h, k)?)?;
        let st = self.choice_for(&reduced_resonant_basis(h, k + h.weight().delta())?)?;
        Ok(DegreeSets::from_choices(h.weight(), &s, &st))
    }
}

/// Output of one step: the generator and the normalized parts of degree `m + chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub generator: Vqhp,
    pub f_tilde: Qhp,
    pub g_tilde: Qhp,
}

/// `b = A^{-1} c` with `A = <<R_i, S_j>>`, `c = <<R_i, target>>`; returns
/// `sum b_j S_j`.
fn project(basis: &ResonantBasis, set: &[Qhp], target: &Qhp) -> Result<Qhp> {
    if set.len() != basis.dim() {
        return Err(Error::SizeMismatch {
            expected: basis.dim(),
            found: set.len(),
        });
    }
    if let Some(s) = set.iter().find(|s| s.gdeg() != basis.gdeg) {
        return Err(Error::DegreeMismatch {
            expected: basis.gdeg as i64,
            found: s.gdeg() as i64,
        });
    }
    let zero = Qhp::zero(target.weight(), target.gdeg());
    if set.is_empty() {
        return Ok(zero);
    }
    let a = pairing_matrix(&basis.basis, set);
    let c: Vec<Rational> = basis.basis.iter().map(|r| inner(r.poly(), target.poly())).collect();
    let b = a
        .inverse()
        .ok_or(Error::SingularPairing { gdeg: basis.gdeg })?
        .mul_vec(&c);
    b.iter().zip(set).try_fold(zero, |acc, (bj, sj)| acc.add(&sj.scale(bj)))
}

/// Hamiltonian part `K` of `[X_H, J * E]`.
fn k_of(hf: &Vqhp, j: &Qhp) -> Qhp {
    decompose(&lie_bracket(hf, &euler_multiple(j))).ham_part
}

pub fn gphnf_step(sys: &HamiltonianSystem, m: u32, sets: &DegreeSets) -> Result<StepResult> {
    let h = sys.hamiltonian();
    let w = sys.weight();
    let chi = sys.chi();
    let delta = w.delta();
    let hf = sys.unperturbed();
    let x = sys.term(m + chi);
    let split = decompose(&x);
    let (f, g) = (split.ham_part, split.scalar_part);

    let g_tilde = project(&resonant_basis(h, m + chi)?, &sets.resonant, &g)?;
    let c_m = Rational::new((m + delta).into(), (m + chi + delta).into());
    let rhs: Vec<Rational> = g.sub(&g_tilde)?.coords().iter().map(|v| v / &c_m).collect();
    let j0 = derivation_matrix(h, m)?
        .solve(&rhs)
        .ok_or_else(|| Error::InconsistentSolve {
            m,
            detail: "Euler part is not orthogonal to the resonant space".into(),
        })?;
    let j0 = Qhp::from_coords(w, m, &j0);

    let f_rest = f.sub(&k_of(&hf, &j0))?;
    let f_tilde = project(&reduced_resonant_basis(h, m + chi + delta)?, &sets.reduced, &f_rest)?;

    // X_H(I) + K(J_int) = F - K(J0) - F~ with J_int a first integral
    let integrals = integral_basis(h, m)?;
    let target = f_rest.sub(&f_tilde)?;
    let dh = derivation_matrix(h, m + delta)?;
    let mut cols: Vec<Vec<Rational>> = (0..dh.cols()).map(|c| dh.column(c)).collect();
    cols.extend(integrals.iter().map(|j| k_of(&hf, j).coords()));
    let sol = Matrix::from_columns(&cols, w.dim(m + chi + delta))
        .solve(&target.coords())
        .ok_or_else(|| Error::InconsistentSolve {
            m,
            detail: "Hamiltonian part has a first-integral component that no generator removes".into(),
        })?;
    let n_i = dh.cols();
    let i = Qhp::from_coords(w, m + delta, &sol[..n_i]);
    let j = integrals
        .iter()
        .zip(&sol[n_i..])
        .try_fold(j0, |acc, (q, c)| acc.add(&q.scale(c)))?;

    let generator = ham_or_zero(&i, m).add(&euler_multiple(&j))?;
    let residual = x.sub(&lie_bracket(&hf, &generator))?;
    let check = decompose(&residual);
    if check.ham_part != f_tilde || check.scalar_part != g_tilde {
        return Err(Error::InconsistentSolve {
            m,
            detail: "normalized term does not match its projection".into(),
        });
    }
    Ok(StepResult {
        generator,
        f_tilde,
        g_tilde,
    })
}

/// Runs the step for `m = 1 ..= N - chi`, pushing the system forward after each.
pub fn compute_gphnf(
    sys: &HamiltonianSystem,
    provider: &dyn SetProvider,
) -> Result<(HamiltonianSystem, Transformation)> {
    let mut cur = sys.clone();
    let mut t = Transformation::identity(sys.weight());
    for m in 1..=sys.truncation() - sys.chi() {
        let sets = provider.sets(sys.hamiltonian(), m)?;
        let step = gphnf_step(&cur, m, &sets)?;
        cur = push_forward(&cur, &step.generator)?;
        t.push(step.generator)?;
    }
    Ok((cur, t))
}

/// `true` when `F_k` and `G_k` of every degree lie in the spans of the sets.
pub fn is_gphnf(sys: &HamiltonianSystem, provider: &dyn SetProvider) -> Result<bool> {
    for m in 1..=sys.truncation() - sys.chi() {
        let sets = provider.sets(sys.hamiltonian(), m)?;
        let s = decompose(&sys.term(m + sys.chi()));
        if !in_span(&s.ham_part, &sets.reduced) || !in_span(&s.scalar_part, &sets.resonant) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn in_span(p: &Qhp, set: &[Qhp]) -> bool {
    if p.is_zero() {
        return true;
    }
    let n = p.weight().dim(p.gdeg());
    let cols: Vec<Vec<Rational>> = set.iter().map(Qhp::coords).collect();
    if cols.is_empty() {
        return false;
    }
    Matrix::from_columns(&cols, n).solve(&p.coords()).is_some()
}
