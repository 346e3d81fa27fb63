//! Closed-form resonant sets and normal-form supports for four families of
//! monomial unperturbed fields.
//!
//! The formulas here are written out independently of the engine so they can
//! serve as reference values for it.
//!
//! | family    | field                                   | weight           | chi              |
//! |-----------|-----------------------------------------|------------------|------------------|
//! | takens m  | `(x2^(m-1), 0)`                         | `(1, 1)`         | `m - 2`          |
//! | lm l,m    | `(-m x1^l x2^(m-1), l x1^(l-1) x2^m)`   | `(1, 1)`         | `l + m - 2`      |
//! | diag m    | `(-x1^m x2^(m-1), x1^(m-1) x2^m)`       | `(1, 1)`         | `2m - 2`         |
//! | binom l,m | `(+-x2^(m-1), x1^(l-1))`                | `(m/d, l/d)`     | `(lm - l - m)/d` |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grading::{rat, Monomial, Polynomial, Qhp, Rational, VectorSeries, Vqhp, Weight};
use crate::normalizer::{HamiltonianSystem, PairPolicy, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// `H = -x2^m / m`, `m >= 2`.
    Takens { m: u32 },
    /// `H = x1^l x2^m`, `l > m >= 1`.
    LmMonomial { l: u32, m: u32 },
    /// `H = x1^m x2^m / m`, `m >= 1`.
    Diagonal { m: u32 },
    /// `H = x1^l / l - sign * x2^m / m`, `l >= m >= 2`, `sign = +-1`.
    Binomial { l: u32, m: u32, sign: i8 },
}

/// `0` for negative arguments, `1` otherwise.
pub fn theta(k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        1
    }
}

impl CaseId {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidParams(s.to_string()));
        match *self {
            CaseId::Takens { m } if m < 2 => bad("takens case needs m >= 2"),
            CaseId::LmMonomial { l, m } if !(l > m && m >= 1) => bad("lm case needs l > m >= 1"),
            CaseId::Diagonal { m } if m < 1 => bad("diagonal case needs m >= 1"),
            CaseId::Binomial { l, m, sign } => {
                if !(l >= m && m >= 2) {
                    bad("binomial case needs l >= m >= 2")
                } else if sign != 1 && sign != -1 {
                    bad("binomial sign must be +1 or -1")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// `gcd(l, m)` for the two-parameter families, 1 otherwise.
    pub fn d(&self) -> u32 {
        match *self {
            CaseId::LmMonomial { l, m } | CaseId::Binomial { l, m, .. } => l.gcd(&m),
            _ => 1,
        }
    }

    pub fn weight(&self) -> Weight {
        match *self {
            CaseId::Binomial { l, m, .. } => {
                let d = l.gcd(&m);
                Weight::new(m / d, l / d).expect("coprime after dividing by gcd")
            }
            _ => Weight::unit(),
        }
    }

    pub fn chi(&self) -> u32 {
        match *self {
            CaseId::Takens { m } => m - 2,
            CaseId::LmMonomial { l, m } => l + m - 2,
            CaseId::Diagonal { m } => 2 * m - 2,
            CaseId::Binomial { l, m, .. } => (l * m - l - m) / l.gcd(&m),
        }
    }

    /// Degree above which the closed-form sets are stated.
    pub fn threshold(&self) -> u32 {
        match *self {
            CaseId::Takens { m } => m,
            CaseId::LmMonomial { l, m } => l + m,
            CaseId::Diagonal { m } => 2 * m,
            CaseId::Binomial { l, m, .. } => l * m / l.gcd(&m),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CaseId::Takens { m } => write!(f, "takens:{m}"),
            CaseId::LmMonomial { l, m } => write!(f, "lm:{l},{m}"),
            CaseId::Diagonal { m } => write!(f, "diag:{m}"),
            CaseId::Binomial { l, m, sign } => {
                write!(f, "binom:{l},{m},{}", if sign > 0 { "+" } else { "-" })
            }
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    /// `takens:M`, `lm:L,M`, `diag:M`, `binom:L,M[,SIGN]` with `SIGN` one of
    /// `+`, `-`, `1`, `-1` (default `+`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("unknown preset '{s}'"));
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let num = |i: usize| -> Result<u32> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let case = match (tag.trim(), parts.len()) {
            ("takens", 1) => CaseId::Takens { m: num(0)? },
            ("lm", 2) => CaseId::LmMonomial {
                l: num(0)?,
                m: num(1)?,
            },
            ("diag", 1) => CaseId::Diagonal { m: num(0)? },
            ("binom", 2 | 3) => {
                let sign = match parts.get(2).copied() {
                    None | Some("+") | Some("1") | Some("+1") => 1,
                    Some("-") | Some("-1") => -1,
                    _ => return Err(bad()),
                };
                CaseId::Binomial {
                    l: num(0)?,
                    m: num(1)?,
                    sign,
                }
            }
            _ => return Err(bad()),
        };
        case.validate()?;
        Ok(case)
    }
}

/// Hamiltonian, weight and `chi` of the family.
pub fn unperturbed(case: CaseId) -> Result<(Qhp, Weight, u32)> {
    case.validate()?;
    let w = case.weight();
    let poly = match case {
        CaseId::Takens { m } => Polynomial::monomial(Monomial::new(0, m), rat(-1, m as i64)),
        CaseId::LmMonomial { l, m } => Polynomial::monomial(Monomial::new(l, m), rat(1, 1)),
        CaseId::Diagonal { m } => Polynomial::monomial(Monomial::new(m, m), rat(1, m as i64)),
        CaseId::Binomial { l, m, sign } => Polynomial::from_terms([
            (Monomial::new(l, 0), rat(1, l as i64)),
            (Monomial::new(0, m), rat(-(sign as i64), m as i64)),
        ]),
    };
    let gdeg = poly.quasi_degree(w).expect("family hamiltonians are quasi-homogeneous");
    Ok((Qhp::new(poly, gdeg, w)?, w, case.chi()))
}

fn degree_monomials(w: Weight, k: u32) -> impl Iterator<Item = (i64, i64)> {
    let (g1, g2) = (w.gamma1(), w.gamma2());
    (0..=k / g1).filter_map(move |p1| {
        let rest = k - p1 * g1;
        rest.is_multiple_of(g2).then_some((p1 as i64, (rest / g2) as i64))
    })
}

fn to_set(items: impl Iterator<Item = (i64, i64)>) -> BTreeSet<Monomial> {
    items.map(|(a, b)| Monomial::new(a as u32, b as u32)).collect()
}

/// The displayed resonant set in degree `k`. For the binomial family this is
/// the minimal set with every shift `r_p = 0`, stated only for `k > lm/d`.
pub fn predict_resonant(case: CaseId, k: u32) -> Result<BTreeSet<Monomial>> {
    case.validate()?;
    let w = case.weight();
    let d = case.d() as i64;
    let all = degree_monomials(w, k);
    Ok(match case {
        CaseId::Takens { m } => to_set(all.filter(|&(_, p2)| p2 <= m as i64 - 2)),
        CaseId::LmMonomial { l, m } => {
            let (l, m) = (l as i64, m as i64);
            to_set(all.filter(|&(p1, p2)| {
                let diag = (p1 + 1) * d % l == 0 && {
                    let r = (p1 + 1) * d / l;
                    r >= d && p2 == r * m / d - 1
                };
                p1 <= l - 2 || p2 <= m - 2 || diag
            }))
        }
        CaseId::Diagonal { m } => {
            let m = m as i64;
            to_set(all.filter(|&(p1, p2)| p1 <= m - 2 || p2 <= m - 2 || p1 == p2))
        }
        CaseId::Binomial { l, m, .. } => {
            if k <= case.threshold() {
                return Err(Error::OutOfRange {
                    k,
                    reason: format!("closed form holds above {}", case.threshold()),
                });
            }
            let (l, m) = (l as i64, m as i64);
            to_set(all.filter(|&(p1, p2)| (p1 + 1) % l != 0 && p2 <= m - 2))
        }
    })
}

/// The displayed reduced resonant set in degree `k`, stated above the
/// family's threshold degree.
pub fn predict_reduced(case: CaseId, k: u32) -> Result<BTreeSet<Monomial>> {
    case.validate()?;
    if k <= case.threshold() {
        return Err(Error::OutOfRange {
            k,
            reason: format!("closed form holds above {}", case.threshold()),
        });
    }
    let w = case.weight();
    Ok(match case {
        CaseId::Takens { .. } | CaseId::LmMonomial { .. } => predict_resonant(case, k)?,
        CaseId::Diagonal { m } => {
            let m = m as i64;
            to_set(degree_monomials(w, k).filter(|&(p1, p2)| p1 <= m - 2 || p2 <= m - 2))
        }
        CaseId::Binomial { l, m, .. } => {
            let (l, m) = (l as i64, m as i64);
            to_set(degree_monomials(w, k).filter(|&(p1, p2)| {
                let r = p1 % l;
                (p2 == 0 && r != l - 1 && r != 0) || ((1..=m - 2).contains(&p2) && r != l - 1)
            }))
        }
    })
}

/// Slots allowed to be nonzero: unconditional ones plus either/or pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredictedSupport {
    pub singles: BTreeSet<Slot>,
    pub pairs: BTreeSet<(Slot, Slot)>,
}

impl PredictedSupport {
    /// Every slot that may be nonzero.
    pub fn allowed(&self) -> BTreeSet<Slot> {
        let mut out = self.singles.clone();
        for (a, b) in &self.pairs {
            out.insert(*a);
            out.insert(*b);
        }
        out
    }

    /// The slots that stay when each pair keeps the member the policy keeps.
    pub fn resolve(&self, policy: PairPolicy) -> BTreeSet<Slot> {
        let mut out = self.singles.clone();
        for (a, b) in &self.pairs {
            let (first, second) = if a.component == 1 { (a, b) } else { (b, a) };
            out.insert(match policy {
                PairPolicy::ZeroFirst => *second,
                PairPolicy::ZeroSecond => *first,
            });
        }
        out
    }
}

struct Collector {
    w: Weight,
    lo: i64,
    hi: i64,
    out: PredictedSupport,
}

impl Collector {
    fn slot(&self, c: usize, a: i64, b: i64) -> Option<Slot> {
        if a < 0 || b < 0 {
            return None;
        }
        let g = a * self.w.gamma1() as i64 + b * self.w.gamma2() as i64 - self.w.gamma(c) as i64;
        (self.lo..=self.hi)
            .contains(&g)
            .then(|| Slot::new(c, a as u32, b as u32))
    }

    fn single(&mut self, c: usize, a: i64, b: i64) {
        if let Some(s) = self.slot(c, a, b) {
            self.out.singles.insert(s);
        }
    }

    /// Pairs with an invalid member do not exist; pairs with one member above
    /// the truncation keep only the other member as a candidate.
    fn pair(&mut self, a: (i64, i64), b: (i64, i64)) {
        if a.0 < 0 || a.1 < 0 || b.0 < 0 || b.1 < 0 {
            return;
        }
        match (self.slot(1, a.0, a.1), self.slot(2, b.0, b.1)) {
            (Some(x), Some(y)) => {
                self.out.pairs.insert((x, y));
            }
            (Some(x), None) | (None, Some(x)) => {
                self.out.singles.insert(x);
            }
            (None, None) => {}
        }
    }
}

/// Coefficient slots of the closed-form normal form, field degrees
/// `chi + 1 ..= n`.
pub fn predict_support(case: CaseId, n: u32) -> Result<PredictedSupport> {
    case.validate()?;
    let w = case.weight();
    let chi = case.chi() as i64;
    let mut c = Collector {
        w,
        lo: chi + 1,
        hi: n as i64,
        out: PredictedSupport::default(),
    };
    // generous index bound: every exponent above this exceeds the truncation
    let big = (n as i64 + 2) * (w.gamma1().max(w.gamma2()) as i64) + 4;
    match case {
        CaseId::Takens { m } => {
            let m = m as i64;
            for i in m..=big {
                for j in 0..=m - 3 {
                    c.single(1, i - j, j);
                }
                for j in 0..=m - 2 {
                    c.single(2, i - j, j);
                }
            }
            for i in 0..=big {
                c.pair((i + 2, m - 2), (i + 1, m - 1));
            }
        }
        CaseId::LmMonomial { l, m } => {
            let (l, m, d) = (l as i64, m as i64, case.d() as i64);
            for k in l + m..=big {
                for i in 0..=l - 2 {
                    c.single(1, i, k - i);
                }
                for j in 0..=m - 3 {
                    c.single(1, k - j, j);
                }
                for i in 0..=l - 3 {
                    c.single(2, i, k - i);
                }
                for j in 0..=m - 2 {
                    c.single(2, k - j, j);
                }
            }
            for i in 0..=big {
                c.pair((i + l + 2, m - 2), (i + l + 1, m - 1));
            }
            for j in 0..=big {
                c.pair((l - 1, m + j + 1), (l - 2, m + j + 2));
            }
            for r in d + 1..=big {
                c.pair((r * l / d, r * m / d - 1), (r * l / d - 1, r * m / d));
            }
            let s0 = d + 1 + (3 * d - 1).div_euclid(l + m);
            for s in s0..=big {
                if m == 1 {
                    c.single(1, s * l / d - 1, s * m / d - 2);
                } else {
                    c.pair((s * l / d - 1, s * m / d - 2), (s * l / d - 2, s * m / d - 1));
                }
            }
        }
        CaseId::Diagonal { m } => {
            let m = m as i64;
            for k in 2 * m..=big {
                for i in 0..=m - 2 {
                    c.single(1, i, k - i);
                }
                for j in 0..=m - 3 {
                    c.single(1, k - j, j);
                }
                for i in 0..=m - 3 {
                    c.single(2, i, k - i);
                }
                for j in 0..=m - 2 {
                    c.single(2, k - j, j);
                }
            }
            for i in 0..=big {
                c.pair((i + m + 2, m - 2), (i + m + 1, m - 1));
            }
            for j in 0..=big {
                c.pair((m - 1, m + j + 1), (m - 2, m + j + 2));
            }
            for r in 0..=big {
                c.pair((r + m + 1, r + m), (r + m, r + m + 1));
            }
        }
        CaseId::Binomial { l, m, .. } => {
            let (l, m) = (l as i64, m as i64);
            let not_0_or_m1 = |i: i64| i % l != 0 && (i + 1) % l != 0;
            for j in 1..=m - 2 {
                for i in 0..=big {
                    // i > l (1 - j/m)
                    if not_0_or_m1(i) && i * m > l * (m - j) {
                        c.single(1, i, j - 1);
                        c.single(2, i - 1, j);
                    }
                }
                for r in 1 + theta(m - j * l)..=big {
                    c.pair((r * l - 1, j - 1), (r * l - 2, j));
                }
                for s in 1..=big {
                    if l == m && j == m - 2 {
                        c.single(2, s * l - 1, j);
                    } else {
                        c.pair((s * l, j - 1), (s * l - 1, j));
                    }
                }
            }
            for i in 0..=big {
                // i > l / m
                if i % l != 0 && i * m > l {
                    c.pair((i, m - 2), (i - 1, m - 1));
                }
                if not_0_or_m1(i) && i > l {
                    c.single(2, i - 1, 0);
                }
            }
        }
    }
    Ok(c.out)
}

/// Dense perturbation with every coefficient of degrees `chi + 1 ..= n` set to
/// a random nonzero rational (numerator in `-9..=9`, denominator in `1..=5`).
pub fn dense_perturbation(w: Weight, chi: u32, n: u32, seed: u64) -> VectorSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = VectorSeries::new(w, n);
    for k in chi + 1..=n {
        let coords: Vec<Rational> = Vqhp::basis_slots(w, k)
            .iter()
            .map(|_| {
                let mut num = 0;
                while num == 0 {
                    num = rng.gen_range(-9..=9);
                }
                rat(num, rng.gen_range(1..=5))
            })
            .collect();
        s.set(Vqhp::from_coords(w, k, &coords)).expect("same weight");
    }
    s
}

/// The family's unperturbed field with a dense random perturbation up to `n`.
pub fn preset_system(case: CaseId, n: u32, seed: u64) -> Result<HamiltonianSystem> {
    let (h, w, chi) = unperturbed(case)?;
    HamiltonianSystem::new(h, dense_perturbation(w, chi, n, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mons(v: &[(u32, u32)]) -> BTreeSet<Monomial> {
        v.iter().map(|&(a, b)| Monomial::new(a, b)).collect()
    }

    #[test]
    fn parses_presets() {
        assert_eq!("takens:2".parse::<CaseId>().unwrap(), CaseId::Takens { m: 2 });
        assert_eq!(
            "binom:3,2,-".parse::<CaseId>().unwrap(),
            CaseId::Binomial { l: 3, m: 2, sign: -1 }
        );
        assert!("lm:1,2".parse::<CaseId>().is_err());
        assert!("nope:1".parse::<CaseId>().is_err());
    }

    #[test]
    fn family_data() {
        let (h, w, chi) = unperturbed(CaseId::Takens { m: 2 }).unwrap();
        assert_eq!(h.poly(), &Polynomial::monomial(Monomial::new(0, 2), rat(-1, 2)));
        assert_eq!((w, chi), (Weight::unit(), 0));
        let (h, w, chi) = unperturbed(CaseId::Binomial { l: 3, m: 2, sign: 1 }).unwrap();
        assert_eq!(h.gdeg(), 6);
        assert_eq!((w, chi), (Weight::new(2, 3).unwrap(), 1));
        let (h, _, chi) = unperturbed(CaseId::Diagonal { m: 1 }).unwrap();
        assert_eq!(h.poly(), &Polynomial::monomial(Monomial::new(1, 1), rat(1, 1)));
        assert_eq!(chi, 0);
    }

    #[test]
    fn displayed_sets() {
        assert_eq!(predict_resonant(CaseId::Takens { m: 3 }, 5).unwrap(), mons(&[(5, 0), (4, 1)]));
        assert_eq!(
            predict_resonant(CaseId::LmMonomial { l: 2, m: 1 }, 4).unwrap(),
            mons(&[(0, 4), (3, 1)])
        );
        assert_eq!(predict_resonant(CaseId::Diagonal { m: 2 }, 3).unwrap(), mons(&[(0, 3), (3, 0)]));
        assert!(predict_resonant(CaseId::Binomial { l: 3, m: 2, sign: 1 }, 6).is_err());
        assert_eq!(
            predict_resonant(CaseId::Binomial { l: 3, m: 2, sign: 1 }, 8).unwrap(),
            mons(&[(4, 0)])
        );
        assert_eq!(
            predict_reduced(CaseId::Diagonal { m: 1 }, 4).unwrap(),
            BTreeSet::new()
        );
    }

    #[test]
    fn takens_support_for_m_2() {
        let s = predict_support(CaseId::Takens { m: 2 }, 5).unwrap();
        let singles: BTreeSet<Slot> = (2..=6).map(|i| Slot::new(2, i, 0)).collect();
        assert_eq!(s.singles, singles);
        let pairs: BTreeSet<(Slot, Slot)> = (0..=4)
            .map(|i| (Slot::new(1, i + 2, 0), Slot::new(2, i + 1, 1)))
            .collect();
        assert_eq!(s.pairs, pairs);
    }

    #[test]
    fn diagonal_m_1_has_only_diagonal_pairs() {
        let s = predict_support(CaseId::Diagonal { m: 1 }, 5).unwrap();
        assert!(s.singles.is_empty());
        assert!(s
            .pairs
            .iter()
            .all(|(a, b)| a.monomial.p1 == a.monomial.p2 + 1 && b.monomial.p2 == b.monomial.p1 + 1));
    }

    #[test]
    fn theta_steps_at_zero() {
        assert_eq!(theta(-1), 0);
        assert_eq!(theta(0), 1);
        assert_eq!(theta(4), 1);
    }
}
