//! Splitting a vector field into a Hamiltonian part plus a multiple of the
//! Euler field.
//!
//! Every VQHP `Q` of degree `k` is uniquely `(-d2 I, d1 I) + J * E` with `I`
//! of degree `k + delta`, `J` of degree `k`, and `J = div(Q) / (k + delta)`.

use crate::error::{Error, Result};
use crate::grading::{divergence, int, Monomial, Polynomial, Qhp, Rational, Var, Vqhp};

/// The two parts of a decomposed VQHP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSplit {
    /// Stream function `I`, of degree `gdeg + delta`.
    pub ham_part: Qhp,
    /// Euler coefficient `J`, of degree `gdeg`.
    pub scalar_part: Qhp,
    pub gdeg: u32,
}

/// The Hamiltonian field `(-d2 h, d1 h)` of a QHP `h`.
pub fn ham_field(h: &Qhp) -> Result<Vqhp> {
    let w = h.weight();
    if h.gdeg() < w.delta() {
        if h.is_zero() {
            return Ok(Vqhp::zero(w, 0));
        }
        return Err(Error::DegreeTooSmall {
            gdeg: h.gdeg(),
            delta: w.delta(),
        });
    }
    let k = h.gdeg() - w.delta();
    let c1 = -&h.poly().derivative(Var::X2);
    let c2 = h.poly().derivative(Var::X1);
    Vqhp::from_polys(w, k, c1, c2)
}

/// `J * E`, the Euler field scaled by a QHP.
pub fn euler_multiple(j: &Qhp) -> Vqhp {
    j.weight().euler_field().mul_qhp(j)
}

/// Recovers `I` from the divergence-free field `(r1, r2) = (-d2 I, d1 I)`.
///
/// Monomials of `I` with `p1 > 0` come from `r2` by integrating in `x1`; the
/// ones with `p1 = 0` come from `r1` by integrating in `x2`. The constant term
/// is zero.
fn stream_function(r1: &Polynomial, r2: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in r2.terms() {
        out.add_term(Monomial::new(m.p1 + 1, m.p2), c / int(m.p1 as i64 + 1));
    }
    for (m, c) in r1.terms() {
        if m.p1 == 0 {
            out.add_term(Monomial::new(0, m.p2 + 1), -c / int(m.p2 as i64 + 1));
        }
    }
    out
}

pub fn decompose(f: &Vqhp) -> EulerSplit {
    let w = f.weight();
    let k = f.gdeg();
    let j = divergence(f).scale(&(Rational::from_integer((k + w.delta()).into()).recip()));
    let e = euler_multiple(&j);
    let r1 = f.comp1().poly() - e.comp1().poly();
    let r2 = f.comp2().poly() - e.comp2().poly();
    let i = Qhp::new(stream_function(&r1, &r2), k + w.delta(), w)
        .expect("stream function of a graded field is graded");
    EulerSplit {
        ham_part: i,
        scalar_part: j,
        gdeg: k,
    }
}

pub fn recompose(s: &EulerSplit) -> Result<Vqhp> {
    let w = s.scalar_part.weight();
    if s.ham_part.gdeg() != s.gdeg + w.delta() {
        return Err(Error::DegreeMismatch {
            expected: (s.gdeg + w.delta()) as i64,
            found: s.ham_part.gdeg() as i64,
        });
    }
    if s.scalar_part.gdeg() != s.gdeg {
        return Err(Error::DegreeMismatch {
            expected: s.gdeg as i64,
            found: s.scalar_part.gdeg() as i64,
        });
    }
    let h = if s.ham_part.is_zero() {
        Vqhp::zero(w, s.gdeg)
    } else {
        ham_field(&s.ham_part)?
    };
    h.add(&euler_multiple(&s.scalar_part))
}

/// `true` if `f` is the Hamiltonian field of some QHP (zero divergence).
pub fn is_hamiltonian(f: &Vqhp) -> bool {
    divergence(f).is_zero()
}

pub(crate) fn ham_or_zero(i: &Qhp, k: u32) -> Vqhp {
    if i.is_zero() {
        Vqhp::zero(i.weight(), k)
    } else {
        ham_field(i).expect("stream degree is at least delta")
    }
}
