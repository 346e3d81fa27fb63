//! Transforming a field under `x = y + Q(y)`.
//!
//! The new field is `(I + DQ(y))^{-1} Z(y + Q(y))`. Composition uses graded
//! truncated powers of `y_i + Q_i`; the Jacobian factor is inverted by the
//! Neumann series `sum (-DQ)^j`, which terminates below the truncation since
//! every application of `DQ` raises the degree by `Q.gdeg() >= 1`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::grading::{Polynomial, Rational, VectorSeries, Var, Vqhp, Weight};

use super::system::HamiltonianSystem;

/// Component polynomials of a field, component `i` truncated at `N + g_i`.
#[derive(Clone)]
struct Pair {
    c: [Polynomial; 2],
}

impl Pair {
    fn zero() -> Self {
        Pair {
            c: [Polynomial::zero(), Polynomial::zero()],
        }
    }

    fn is_zero(&self) -> bool {
        self.c[0].is_zero() && self.c[1].is_zero()
    }
}

fn powers(base: &Polynomial, max_exp: u32, w: Weight, bound: u32) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::constant(Rational::one())];
    for _ in 0..max_exp {
        let next = out.last().unwrap().mul_truncated(base, w, bound);
        out.push(next);
    }
    out
}

fn compose(z: &VectorSeries, q: &Vqhp) -> Pair {
    let w = z.weight();
    let n = z.truncation();
    let bounds = [n + w.gamma1(), n + w.gamma2()];
    let top = bounds[0].max(bounds[1]);
    let (z1, z2) = z.to_polys();
    let max_a = z1.monomials().chain(z2.monomials()).map(|m| m.p1).max().unwrap_or(0);
    let max_b = z1.monomials().chain(z2.monomials()).map(|m| m.p2).max().unwrap_or(0);
    let u1 = &Polynomial::x1() + q.comp1().poly();
    let u2 = &Polynomial::x2() + q.comp2().poly();
    let p1 = powers(&u1, max_a, w, top);
    let p2 = powers(&u2, max_b, w, top);
    let mut out = Pair::zero();
    for (i, zi) in [z1, z2].iter().enumerate() {
        for (m, c) in zi.terms() {
            let prod = p1[m.p1 as usize].mul_truncated(&p2[m.p2 as usize], w, bounds[i]);
            out.c[i] = &out.c[i] + &prod.scale(c);
        }
    }
    out
}

/// `-(DQ . v)`, component `i` being `-(d1 Q_i v_1 + d2 Q_i v_2)`.
fn minus_dq(q: &Vqhp, v: &Pair, w: Weight, n: u32) -> Pair {
    let mut out = Pair::zero();
    for i in 0..2 {
        let qi = q.component(i + 1).poly();
        let a = &v.c[0] * &qi.derivative(Var::X1);
        let b = &v.c[1] * &qi.derivative(Var::X2);
        out.c[i] = (-&(&a + &b)).truncate(w, n + w.gamma(i + 1));
    }
    out
}

/// Pushes a full field series (unperturbed part included) through `x = y + Q(y)`.
pub fn push_forward_field(z: &VectorSeries, q: &Vqhp) -> Result<VectorSeries> {
    let w = z.weight();
    if q.weight() != w {
        return Err(Error::InvalidParams("generator has a foreign weight".into()));
    }
    if q.gdeg() == 0 {
        return Err(Error::InvalidParams(
            "generator must have generalized degree at least 1".into(),
        ));
    }
    if q.is_zero() {
        return Ok(z.clone());
    }
    let n = z.truncation();
    let composed = compose(z, q);
    let mut acc = composed.clone();
    let mut cur = composed;
    loop {
        cur = minus_dq(q, &cur, w, n);
        if cur.is_zero() {
            break;
        }
        for i in 0..2 {
            acc.c[i] = &acc.c[i] + &cur.c[i];
        }
    }
    let mut out = VectorSeries::new(w, n);
    for k in 0..=n {
        let t = Vqhp::from_polys(
            w,
            k,
            acc.c[0].homogeneous_part(w, k + w.gamma1()),
            acc.c[1].homogeneous_part(w, k + w.gamma2()),
        )?;
        out.set(t)?;
    }
    Ok(out)
}

pub fn push_forward(sys: &HamiltonianSystem, q: &Vqhp) -> Result<HamiltonianSystem> {
    if q.is_zero() {
        return Ok(sys.clone());
    }
    let field = push_forward_field(&sys.full_field(), q)?;
    HamiltonianSystem::from_full_field(sys.hamiltonian().clone(), &field)
}
