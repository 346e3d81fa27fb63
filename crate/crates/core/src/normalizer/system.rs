use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::euler::{decompose, ham_field, EulerSplit};
use crate::grading::{int, Monomial, Polynomial, Qhp, VectorSeries, Vqhp, Weight};
use crate::resonance::chi_of;

/// A quasi-homogeneous Hamiltonian field plus a truncated perturbation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianSystem {
    hamiltonian: Qhp,
    chi: u32,
    perturbation: VectorSeries,
}

impl HamiltonianSystem {
    pub fn new(hamiltonian: Qhp, perturbation: VectorSeries) -> Result<Self> {
        let w = hamiltonian.weight();
        if perturbation.weight() != w {
            return Err(Error::InvalidParams(
                "hamiltonian and perturbation use different weights".into(),
            ));
        }
        if hamiltonian.is_zero() {
            return Err(Error::HamiltonianNotQuasiHomogeneous(
                "the hamiltonian is zero".into(),
            ));
        }
        let chi = chi_of(&hamiltonian)?;
        if perturbation.truncation() <= chi {
            return Err(Error::InvalidParams(format!(
                "truncation {} must exceed chi = {chi}",
                perturbation.truncation()
            )));
        }
        if let Some(k) = perturbation.order() {
            if k <= chi {
                return Err(Error::PerturbationOrderTooLow {
                    found: k as i64,
                    min: chi + 1,
                });
            }
        }
        Ok(HamiltonianSystem {
            hamiltonian,
            chi,
            perturbation,
        })
    }

    /// Rebuilds a system from its full field; the degree-`chi` term must be
    /// the Hamiltonian field of `hamiltonian`.
    pub fn from_full_field(hamiltonian: Qhp, field: &VectorSeries) -> Result<Self> {
        let chi = chi_of(&hamiltonian)?;
        let unperturbed = ham_field(&hamiltonian)?;
        if field.get(chi) != unperturbed {
            return Err(Error::InvalidParams(
                "degree-chi term differs from the unperturbed field".into(),
            ));
        }
        let mut pert = VectorSeries::new(field.weight(), field.truncation());
        for t in field.terms().filter(|t| t.gdeg() != chi) {
            pert.set(t.clone())?;
        }
        HamiltonianSystem::new(hamiltonian, pert)
    }

    pub fn weight(&self) -> Weight {
        self.hamiltonian.weight()
    }

    pub fn hamiltonian(&self) -> &Qhp {
        &self.hamiltonian
    }

    pub fn chi(&self) -> u32 {
        self.chi
    }

    pub fn truncation(&self) -> u32 {
        self.perturbation.truncation()
    }

    pub fn perturbation(&self) -> &VectorSeries {
        &self.perturbation
    }

    pub fn unperturbed(&self) -> Vqhp {
        ham_field(&self.hamiltonian).expect("validated at construction")
    }

    /// Perturbation term of generalized degree `k`.
    pub fn term(&self, k: u32) -> Vqhp {
        self.perturbation.get(k)
    }

    /// Unperturbed field plus perturbation as one series.
    pub fn full_field(&self) -> VectorSeries {
        let mut s = self.perturbation.clone();
        s.set(self.unperturbed()).expect("same weight");
        s
    }

    pub fn with_perturbation(&self, perturbation: VectorSeries) -> Result<Self> {
        HamiltonianSystem::new(self.hamiltonian.clone(), perturbation)
    }

    /// Replaces the perturbation term of degree `f.gdeg()`.
    pub fn with_term(&self, f: Vqhp) -> Result<Self> {
        let mut p = self.perturbation.clone();
        p.set(f)?;
        self.with_perturbation(p)
    }
}

/// Per-degree `(F_k, G_k)` with `X^{[k+chi]} = ham_field(F_k) + G_k * E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgSplit {
    pub chi: u32,
    pub terms: BTreeMap<u32, EulerSplit>,
}

impl FgSplit {
    /// `(F_k, G_k)` for the perturbation degree `k + chi`.
    pub fn get(&self, k: u32) -> Option<(&Qhp, &Qhp)> {
        self.terms.get(&k).map(|s| (&s.ham_part, &s.scalar_part))
    }
}

pub fn split_perturbation(sys: &HamiltonianSystem) -> FgSplit {
    let chi = sys.chi();
    let terms = (chi + 1..=sys.truncation())
        .map(|d| (d - chi, decompose(&sys.term(d))))
        .collect();
    FgSplit { chi, terms }
}

/// Field coefficients in terms of `F` and `G`, monomial by monomial:
/// `Y1^(p1+1,p2) = -(p2+1) F^(p1+1,p2+1) + g1 G^(p)` and
/// `Y2^(p1,p2+1) = (p1+1) F^(p1+1,p2+1) + g2 G^(p)`, plus the pure powers
/// `x1^a`, `x2^b` of `F`, which reach one component only.
pub fn coeffs_from_fg(f: &Qhp, g: &Qhp, w: Weight) -> Result<Vqhp> {
    if f.gdeg() != g.gdeg() + w.delta() {
        return Err(Error::DegreeMismatch {
            expected: (g.gdeg() + w.delta()) as i64,
            found: f.gdeg() as i64,
        });
    }
    let k = g.gdeg();
    let mut c1 = Polynomial::zero();
    let mut c2 = Polynomial::zero();
    for p in w.monomials(k) {
        let fp = f.coeff(Monomial::new(p.p1 + 1, p.p2 + 1));
        let gp = g.coeff(p);
        c1.add_term(
            Monomial::new(p.p1 + 1, p.p2),
            -int(p.p2 as i64 + 1) * &fp + int(w.gamma1() as i64) * &gp,
        );
        c2.add_term(
            Monomial::new(p.p1, p.p2 + 1),
            int(p.p1 as i64 + 1) * &fp + int(w.gamma2() as i64) * &gp,
        );
    }
    for (m, c) in f.poly().terms() {
        if m.p2 == 0 {
            c2.add_term(Monomial::new(m.p1 - 1, 0), int(m.p1 as i64) * c);
        } else if m.p1 == 0 {
            c1.add_term(Monomial::new(0, m.p2 - 1), -int(m.p2 as i64) * c);
        }
    }
    Vqhp::from_polys(w, k, c1, c2)
}

/// Near-identity change of variables as a list of generators, applied in
/// order: each step is `x = y + Q(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    weight: Weight,
    generators: Vec<Vqhp>,
}

impl Transformation {
    pub fn identity(weight: Weight) -> Self {
        Transformation {
            weight,
            generators: Vec::new(),
        }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    /// Appends a generator; zero generators are not recorded.
    pub fn push(&mut self, q: Vqhp) -> Result<()> {
        if q.weight() != self.weight {
            return Err(Error::InvalidParams("generator has a foreign weight".into()));
        }
        if q.gdeg() == 0 {
            return Err(Error::InvalidParams(
                "generators must have generalized degree at least 1".into(),
            ));
        }
        if !q.is_zero() {
            self.generators.push(q);
        }
        Ok(())
    }

    pub fn extend(&mut self, other: &Transformation) -> Result<()> {
        for q in &other.generators {
            self.push(q.clone())?;
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Vqhp] {
        &self.generators
    }

    pub fn is_identity(&self) -> bool {
        self.generators.is_empty()
    }

    /// Pushes `sys` through every generator in order.
    pub fn apply(&self, sys: &HamiltonianSystem) -> Result<HamiltonianSystem> {
        let mut cur = sys.clone();
        for q in &self.generators {
            cur = super::pushforward::push_forward(&cur, q)?;
        }
        Ok(cur)
    }
}
