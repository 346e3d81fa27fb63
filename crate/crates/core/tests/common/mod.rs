//! Helpers shared by the integration tests: random graded data and a naive
//! pushforward written without the engine's polynomial type.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hamnf::catalog::CaseId;
use hamnf::grading::{Monomial, Polynomial, Qhp, Rational, VectorSeries, Vqhp, Weight};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    Rational::new(r.gen_range(-12i64..=12).into(), r.gen_range(1i64..=7).into())
}

/// Every coordinate is zero with probability `1 - density`.
pub fn random_coords(r: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<Rational> {
    (0..n)
        .map(|_| if r.gen_bool(density) { random_rational(r) } else { Rational::zero() })
        .collect()
}

pub fn random_qhp(r: &mut ChaCha8Rng, w: Weight, k: u32) -> Qhp {
    let c = random_coords(r, w.dim(k), 0.8);
    Qhp::from_coords(w, k, &c)
}

pub fn random_vqhp(r: &mut ChaCha8Rng, w: Weight, k: u32, density: f64) -> Vqhp {
    let c = random_coords(r, Vqhp::basis_slots(w, k).len(), density);
    Vqhp::from_coords(w, k, &c)
}

pub fn random_series(r: &mut ChaCha8Rng, w: Weight, n: u32, density: f64) -> VectorSeries {
    let mut s = VectorSeries::new(w, n);
    for k in 0..=n {
        s.set(random_vqhp(r, w, k, density)).unwrap();
    }
    s
}

/// The families and parameters used throughout the acceptance runs.
pub fn catalog_cases() -> Vec<CaseId> {
    [
        "takens:2", "takens:3", "takens:4", "lm:2,1", "lm:3,1", "lm:3,2", "diag:1", "diag:2", "binom:3,2",
        "binom:4,2", "binom:2,2", "binom:3,3",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

/// A plain sparse polynomial: exponent pair to coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Naive(pub BTreeMap<(u32, u32), Rational>);

impl Naive {
    pub fn from_poly(p: &Polynomial) -> Self {
        Naive(p.terms().map(|(m, c)| ((m.p1, m.p2), c.clone())).collect())
    }

    pub fn var(i: usize) -> Self {
        let e = if i == 0 { (1, 0) } else { (0, 1) };
        Naive([(e, Rational::from_integer(1.into()))].into_iter().collect())
    }

    pub fn one() -> Self {
        Naive([((0, 0), Rational::from_integer(1.into()))].into_iter().collect())
    }

    fn insert(&mut self, e: (u32, u32), c: Rational) {
        let v = self.0.entry(e).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Naive) -> Naive {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Naive) -> Naive {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Naive) -> Naive {
        let mut out = Naive::default();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                out.insert((a.0 + b.0, a.1 + b.1), x * y);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Naive {
        let mut out = Naive::default();
        for (e, x) in &self.0 {
            out.insert(*e, x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Naive {
        (0..n).fold(Naive::one(), |acc, _| acc.mul(self))
    }

    pub fn diff(&self, i: usize) -> Naive {
        let mut out = Naive::default();
        for (&(a, b), c) in &self.0 {
            let (k, e) = if i == 0 { (a, (a.wrapping_sub(1), b)) } else { (b, (a, b.wrapping_sub(1))) };
            if k > 0 {
                out.insert(e, c * Rational::from_integer(k.into()));
            }
        }
        out
    }

    /// Terms of generalized degree exactly `d`.
    pub fn part(&self, w: Weight, d: u32) -> Naive {
        Naive(
            self.0
                .iter()
                .filter(|(&(a, b), _)| w.gdeg(Monomial::new(a, b)) == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        )
    }
}

/// Pushes a field through `x = y + Q(y)`: full substitution without any
/// truncation, then the Jacobian system `(I + DQ) Y = Z(y + Q)` solved one
/// degree at a time from the lowest up.
pub fn naive_push_forward(z: &VectorSeries, q: &Vqhp) -> VectorSeries {
    let w = z.weight();
    let n = z.truncation();
    let (z1, z2) = z.to_polys();
    let zs = [Naive::from_poly(&z1), Naive::from_poly(&z2)];
    let qs = [Naive::from_poly(q.comp1().poly()), Naive::from_poly(q.comp2().poly())];
    let subs = [Naive::var(0).add(&qs[0]), Naive::var(1).add(&qs[1])];
    let composed: Vec<Naive> = zs
        .iter()
        .map(|zi| {
            zi.0.iter().fold(Naive::default(), |acc, (&(a, b), c)| {
                acc.add(&subs[0].pow(a).mul(&subs[1].pow(b)).scale(c))
            })
        })
        .collect();
    let dq: Vec<[Naive; 2]> = qs.iter().map(|qi| [qi.diff(0), qi.diff(1)]).collect();
    let gamma = [w.gamma1(), w.gamma2()];
    let mut y = [Naive::default(), Naive::default()];
    let mut out = VectorSeries::new(w, n);
    for k in 0..=n {
        let mut comps = Vec::new();
        for i in 0..2 {
            let lhs = dq[i][0].mul(&y[0]).add(&dq[i][1].mul(&y[1]));
            comps.push(composed[i].sub(&lhs).part(w, k + gamma[i]));
        }
        for i in 0..2 {
            y[i] = y[i].add(&comps[i]);
        }
        let to_poly = |p: &Naive| Polynomial::from_terms(p.0.iter().map(|(&(a, b), c)| (Monomial::new(a, b), c.clone())));
        out.set(Vqhp::from_polys(w, k, to_poly(&comps[0]), to_poly(&comps[1])).unwrap())
            .unwrap();
    }
    out
}
