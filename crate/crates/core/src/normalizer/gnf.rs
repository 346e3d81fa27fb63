//! From the pseudo-Hamiltonian normal form to a generalized normal form.
//!
//! For each exponent `p` of degree `k + chi` the coefficients
//! `Y1^(p1+1,p2)` and `Y2^(p1,p2+1)` are both driven by `F^(p+1)` and `G^(p)`.
//! Which of them survive depends on whether `x^p` is in the resonant set
//! and `x^(p+1)` is in the reduced set; the pure powers of `F` feed a single
//! slot each.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::{euler_multiple, ham_field};
use crate::grading::{lie_bracket, Monomial, Qhp, Rational, Vqhp, Weight};
use crate::linalg::Matrix;
use crate::resonance::{chi_of, SetOrder};

use super::counting::bracket_matrix;
use super::gphnf::{compute_gphnf, gphnf_step, MinimalSets, SetProvider};
use super::pushforward::push_forward;
use super::system::{HamiltonianSystem, Transformation};

/// One coefficient of a field: component (1 or 2) and exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub component: usize,
    pub monomial: Monomial,
}

impl Slot {
    pub fn new(component: usize, p1: u32, p2: u32) -> Self {
        Slot {
            component,
            monomial: Monomial::new(p1, p2),
        }
    }

    /// Generalized degree of the field term this coefficient belongs to;
    /// `None` if the monomial is too small to appear in that component.
    pub fn field_gdeg(&self, w: Weight) -> Option<u32> {
        w.gdeg(self.monomial).checked_sub(w.gamma(self.component))
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{}^({},{})", self.component, self.monomial.p1, self.monomial.p2)
    }
}

/// Which coefficient of an either/or pair is eliminated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairPolicy {
    /// Zero the first-component coefficient, keep the second.
    #[default]
    ZeroFirst,
    /// Zero the second-component coefficient, keep the first.
    ZeroSecond,
}

/// Pair policy per exponent `p`, with a default for exponents not listed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairChoice {
    pub default: PairPolicy,
    pub overrides: BTreeMap<Monomial, PairPolicy>,
}

impl PairChoice {
    pub fn for_exponent(&self, p: Monomial) -> PairPolicy {
        self.overrides.get(&p).copied().unwrap_or(self.default)
    }
}

impl From<PairPolicy> for PairChoice {
    fn from(default: PairPolicy) -> Self {
        PairChoice {
            default,
            overrides: BTreeMap::new(),
        }
    }
}

/// Why a slot is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `x^p` resonant and `x^(p+1)` reduced-resonant: both coefficients kept.
    Both,
    /// Only `x^p` resonant: one of the pair kept, the other absorbed into `F`.
    Euler,
    /// Only `x^(p+1)` reduced-resonant: one of the pair kept, the other removed
    /// by a generator `y^q E`.
    Witness { q: Monomial },
    /// A pure power in the reduced set, reaching a single component.
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YSlot {
    pub slot: Slot,
    pub rule: Rule,
    /// The eliminated member of the pair, if any.
    pub partner: Option<Slot>,
}

/// Coefficients allowed to stay nonzero, grouped by field degree `k + chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSet {
    pub weight: Weight,
    pub chi: u32,
    pub truncation: u32,
    pub policy: PairChoice,
    pub degrees: BTreeMap<u32, Vec<YSlot>>,
}

impl YSet {
    pub fn slots_at(&self, gdeg: u32) -> &[YSlot] {
        self.degrees.get(&gdeg).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, s: Slot) -> bool {
        s.field_gdeg(self.weight)
            .map(|d| self.slots_at(d).iter().any(|y| y.slot == s))
            .unwrap_or(false)
    }

    pub fn all(&self) -> impl Iterator<Item = &YSlot> {
        self.degrees.values().flatten()
    }

    pub fn slot_set(&self) -> BTreeSet<Slot> {
        self.all().map(|y| y.slot).collect()
    }
}

fn monomials_of(set: &[Qhp]) -> Result<Vec<Monomial>> {
    set.iter()
        .map(|q| {
            let mut it = q.poly().monomials();
            match (it.next(), it.next()) {
                (Some(m), None) => Ok(m),
                _ => Err(Error::InvalidConfig(
                    "reduction to a generalized normal form needs monomial sets".into(),
                )),
            }
        })
        .collect()
}

/// An either/or pair before a member is chosen.
struct OpenPair {
    kept: Slot,
    zeroed: Slot,
    witness: bool,
}

/// `true` when the kept slots together with the image of the bracket span
/// every coefficient of the degree, so that the rest can be eliminated.
fn complements(image: &Matrix, all: &[Slot], kept: &[Slot]) -> bool {
    let mut cols: Vec<Vec<Rational>> = (0..image.cols()).map(|c| image.column(c)).collect();
    let one = Rational::from_integer(1.into());
    for s in kept {
        cols.push(all.iter().map(|t| if t == s { one.clone() } else { Rational::zero() }).collect());
    }
    all.is_empty() || Matrix::from_columns(&cols, all.len()).rank() == all.len()
}

/// Builds the slot set for field degrees `chi + 1 ..= n`.
///
/// Each either/or pair keeps the member preferred by `policy` unless the
/// kept slots would then fail to complement the image of the bracket; in
/// that case the fewest pairs are flipped. A pair removed through `y^q E`
/// also needs a witness `q` whose bracket reaches the zeroed slot.
pub fn build_y_set(h: &Qhp, provider: &dyn SetProvider, n: u32, policy: &PairChoice) -> Result<YSet> {
    let w = h.weight();
    let chi = chi_of(h)?;
    let hf = ham_field(h)?;
    let mut degrees = BTreeMap::new();
    for k in 1..=n.saturating_sub(chi) {
        let sets = provider.sets(h, k)?;
        let s: BTreeSet<Monomial> = monomials_of(&sets.resonant)?.into_iter().collect();
        let st: BTreeSet<Monomial> = monomials_of(&sets.reduced)?.into_iter().collect();
        let brackets: Vec<(Monomial, Vqhp)> = w
            .monomials(k)
            .into_iter()
            .map(|q| {
                let e = euler_multiple(&Qhp::from_monomial(w, q, Rational::from_integer(1.into())));
                (q, lie_bracket(&hf, &e))
            })
            .collect();
        let witness = |slot: Slot| {
            brackets
                .iter()
                .find(|(_, b)| !b.coeff(slot.component, slot.monomial).is_zero())
                .map(|(q, _)| *q)
        };
        let mut fixed = Vec::new();
        let mut open = Vec::new();
        for p in w.monomials(k + chi) {
            let y1 = Slot::new(1, p.p1 + 1, p.p2);
            let y2 = Slot::new(2, p.p1, p.p2 + 1);
            let (zeroed, kept) = match policy.for_exponent(p) {
                PairPolicy::ZeroFirst => (y1, y2),
                PairPolicy::ZeroSecond => (y2, y1),
            };
            match (s.contains(&p), st.contains(&Monomial::new(p.p1 + 1, p.p2 + 1))) {
                (true, true) => {
                    for slot in [y1, y2] {
                        fixed.push(YSlot {
                            slot,
                            rule: Rule::Both,
                            partner: None,
                        });
                    }
                }
                (true, false) => open.push(OpenPair {
                    kept,
                    zeroed,
                    witness: false,
                }),
                (false, true) => open.push(OpenPair {
                    kept,
                    zeroed,
                    witness: true,
                }),
                (false, false) => {}
            }
        }
        for m in &st {
            let slot = match (m.p1, m.p2) {
                (a, 0) if a > 0 => Slot::new(2, a - 1, 0),
                (0, b) if b > 0 => Slot::new(1, 0, b - 1),
                _ => continue,
            };
            fixed.push(YSlot {
                slot,
                rule: Rule::Boundary,
                partner: None,
            });
        }

        let all: Vec<Slot> = Vqhp::basis_slots(w, k + chi)
            .into_iter()
            .map(|(c, mo)| Slot {
                component: c,
                monomial: mo,
            })
            .collect();
        let image = bracket_matrix(h, k)?;
        let mut masks: Vec<u64> = (0..1u64 << open.len().min(16)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut chosen = None;
        let mut missing = None;
        for mask in masks {
            let mut slots = fixed.clone();
            let mut ok = true;
            for (i, pair) in open.iter().enumerate() {
                let (kept, zeroed) = if mask >> i & 1 == 1 {
                    (pair.zeroed, pair.kept)
                } else {
                    (pair.kept, pair.zeroed)
                };
                let rule = if pair.witness {
                    match witness(zeroed) {
                        Some(q) => Rule::Witness { q },
                        None => {
                            missing.get_or_insert(zeroed);
                            ok = false;
                            break;
                        }
                    }
                } else {
                    Rule::Euler
                };
                slots.push(YSlot {
                    slot: kept,
                    rule,
                    partner: Some(zeroed),
                });
            }
            let kept: Vec<Slot> = slots.iter().map(|y| y.slot).collect();
            if ok && complements(&image, &all, &kept) {
                chosen = Some(slots);
                break;
            }
        }
        let mut out = match (chosen, missing) {
            (Some(out), _) => out,
            (None, Some(slot)) => {
                return Err(Error::WitnessNotFound {
                    gdeg: k + chi,
                    slot: slot.to_string(),
                })
            }
            (None, None) => return Err(Error::NoComplement { gdeg: k + chi }),
        };
        out.sort_by_key(|y| y.slot);
        degrees.insert(k + chi, out);
    }
    Ok(YSet {
        weight: w,
        chi,
        truncation: n,
        policy: policy.clone(),
        degrees,
    })
}

/// Generator of degree `m` zeroing every coefficient of degree `m + chi`
/// outside the slot set, solved jointly over `ham_field(I) + J * E`.
fn correction(sys: &HamiltonianSystem, m: u32, yset: &YSet) -> Result<Vqhp> {
    let w = sys.weight();
    let chi = sys.chi();
    let hf = sys.unperturbed();
    let y = sys.term(m + chi);
    let kept: BTreeSet<Slot> = yset.slots_at(m + chi).iter().map(|s| s.slot).collect();
    let rows: Vec<Slot> = Vqhp::basis_slots(w, m + chi)
        .into_iter()
        .map(|(c, mo)| Slot {
            component: c,
            monomial: mo,
        })
        .filter(|s| !kept.contains(s))
        .collect();
    if rows.iter().all(|s| y.coeff(s.component, s.monomial).is_zero()) {
        return Ok(Vqhp::zero(w, m));
    }
    let one = Rational::from_integer(1.into());
    let mut gens: Vec<Vqhp> = w
        .monomials(m + w.delta())
        .into_iter()
        .map(|i| ham_field(&Qhp::from_monomial(w, i, one.clone())).expect("degree above delta"))
        .collect();
    gens.extend(
        w.monomials(m)
            .into_iter()
            .map(|j| euler_multiple(&Qhp::from_monomial(w, j, one.clone()))),
    );
    let cols: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| {
            let b = lie_bracket(&hf, g);
            rows.iter().map(|s| b.coeff(s.component, s.monomial)).collect()
        })
        .collect();
    let rhs: Vec<Rational> = rows.iter().map(|s| y.coeff(s.component, s.monomial)).collect();
    let c = Matrix::from_columns(&cols, rows.len())
        .solve(&rhs)
        .ok_or(Error::SingularJointSystem { m })?;
    gens.iter()
        .zip(&c)
        .try_fold(Vqhp::zero(w, m), |acc, (g, ci)| acc.add(&g.scale(ci)))
}

/// Restores the pseudo-Hamiltonian form degree by degree and removes every
/// coefficient outside `yset`.
pub fn reduce_to_gnf(
    gphnf: &HamiltonianSystem,
    yset: &YSet,
    provider: &dyn SetProvider,
) -> Result<(HamiltonianSystem, Transformation)> {
    let mut cur = gphnf.clone();
    let mut t = Transformation::identity(gphnf.weight());
    for m in 1..=gphnf.truncation() - gphnf.chi() {
        let sets = provider.sets(gphnf.hamiltonian(), m)?;
        let step = gphnf_step(&cur, m, &sets)?;
        cur = push_forward(&cur, &step.generator)?;
        t.push(step.generator)?;
        let q = correction(&cur, m, yset)?;
        cur = push_forward(&cur, &q)?;
        t.push(q)?;
    }
    Ok((cur, t))
}

/// Result of the full pipeline.
#[derive(Clone, Debug)]
pub struct GnfOutcome {
    pub system: HamiltonianSystem,
    pub transformation: Transformation,
    pub yset: YSet,
}

pub fn compute_gnf(sys: &HamiltonianSystem, order: SetOrder, policy: PairPolicy) -> Result<GnfOutcome> {
    compute_gnf_with(sys, &MinimalSets::new(order), &policy.into())
}

pub fn compute_gnf_with(
    sys: &HamiltonianSystem,
    provider: &dyn SetProvider,
    policy: &PairChoice,
) -> Result<GnfOutcome> {
    let (g, mut t) = compute_gphnf(sys, provider)?;
    let yset = build_y_set(sys.hamiltonian(), provider, sys.truncation(), policy)?;
    let (r, t2) = reduce_to_gnf(&g, &yset, provider)?;
    t.extend(&t2)?;
    Ok(GnfOutcome {
        system: r,
        transformation: t,
        yset,
    })
}

/// Nonzero perturbation coefficients of a system.
pub fn support(sys: &HamiltonianSystem) -> BTreeSet<Slot> {
    sys.perturbation()
        .terms()
        .flat_map(|t| {
            t.slots()
                .map(|(c, m, _)| Slot {
                    component: c,
                    monomial: m,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}
