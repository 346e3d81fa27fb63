//! Output documents.
//!
//! `text` is for reading. `records` is line-oriented: one `key values...`
//! line per item, grouped in `begin NAME` / `end NAME` blocks, with every
//! coefficient written as `component p1 p2 numerator denominator`.
//! `document` writes a system in the input language.

use std::fmt::Write;

use crate::cli::{Mode, Outcome, Report, ResonanceDegree};
use crate::grading::{Monomial, Rational, Vqhp};
use crate::normalizer::{support, ConjugacyReport, HamiltonianSystem, Rule, YSet};
use crate::resonance::ResonantBasis;

/// Writes a system in the input language; parsing it gives the same system.
pub fn document(sys: &HamiltonianSystem) -> String {
    let w = sys.weight();
    let (p1, p2) = sys.perturbation().to_polys();
    format!(
        "weight {} {}\nchi {}\nN = {}\nH = {}\nP1 = {}\nP2 = {}\n",
        w.gamma1(),
        w.gamma2(),
        sys.chi(),
        sys.truncation(),
        sys.hamiltonian(),
        p1,
        p2
    )
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Resonance => "resonance",
        Mode::Gphnf => "gphnf",
        Mode::Gnf => "gnf",
    }
}

fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::Both => "both",
        Rule::Euler => "euler",
        Rule::Witness { .. } => "witness",
        Rule::Boundary => "boundary",
    }
}

fn fraction(c: &Rational) -> String {
    format!("{} {}", c.numer(), c.denom())
}

fn basis_text(out: &mut String, label: &str, b: &ResonantBasis, set: &[Monomial]) {
    let _ = write!(out, "  {label} dim {}:", b.dim());
    for q in &b.basis {
        let _ = write!(out, " [{q}]");
    }
    out.push_str("\n    set:");
    for m in set {
        let _ = write!(out, " {m}");
    }
    out.push('\n');
}

fn yset_text(out: &mut String, y: &YSet) {
    out.push_str("slot set\n");
    for (d, slots) in &y.degrees {
        let _ = write!(out, "  degree {d}:");
        for s in slots {
            let _ = write!(out, " {} ({}", s.slot, rule_name(s.rule));
            if let Rule::Witness { q } = s.rule {
                let _ = write!(out, " via {q}");
            }
            if let Some(p) = s.partner {
                let _ = write!(out, ", removes {p}");
            }
            out.push(')');
        }
        out.push('\n');
    }
}

fn verify_text(out: &mut String, v: &ConjugacyReport) {
    out.push_str("verification\n");
    if v.is_success() {
        let _ = writeln!(out, "  all residuals zero up to degree {}", v.truncation);
        return;
    }
    for r in v.failures() {
        for (s, c) in &r.slots {
            let _ = writeln!(out, "  degree {}: {s} residual {c}", r.gdeg);
        }
    }
}

pub fn text(report: &Report) -> String {
    let sys = &report.input;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "weight {}, chi {}, truncation {}\nH = {}",
        sys.weight(),
        sys.chi(),
        sys.truncation(),
        sys.hamiltonian()
    );
    match &report.outcome {
        Outcome::Resonance(degrees) => {
            for ResonanceDegree {
                gdeg,
                resonant,
                resonant_set,
                reduced,
            } in degrees
            {
                let _ = writeln!(out, "degree {gdeg}");
                basis_text(&mut out, "resonant", resonant, &resonant_set.monomials);
                if let Some((b, c)) = reduced {
                    basis_text(&mut out, "reduced", b, &c.monomials);
                }
            }
        }
        Outcome::Normal {
            mode,
            system,
            transformation,
            yset,
        } => {
            let _ = writeln!(out, "{} normal form", mode_name(*mode));
            for t in system.perturbation().terms() {
                let _ = writeln!(out, "  degree {}: {t}", t.gdeg());
            }
            let _ = writeln!(out, "transformation ({} generators)", transformation.generators().len());
            for (i, q) in transformation.generators().iter().enumerate() {
                let _ = writeln!(out, "  {}. degree {}: {q}", i + 1, q.gdeg());
            }
            if let Some(y) = yset {
                yset_text(&mut out, y);
            }
            out.push_str("support\n");
            for s in support(system) {
                let d = s.field_gdeg(system.weight()).expect("slot of a field term");
                let _ = writeln!(out, "  {s} = {}", system.term(d).coeff(s.component, s.monomial));
            }
        }
    }
    if let Some(v) = &report.verification {
        verify_text(&mut out, v);
    }
    out
}

fn coef_lines(out: &mut String, f: &Vqhp) {
    for (c, m, v) in f.slots() {
        let _ = writeln!(out, "coef {c} {} {} {}", m.p1, m.p2, fraction(v));
    }
}

fn basis_records(out: &mut String, name: &str, b: &ResonantBasis, set: &[Monomial], cert: &Rational) {
    let _ = writeln!(out, "begin {name} {}", b.gdeg);
    let _ = writeln!(out, "dim {}", b.dim());
    for (i, q) in b.basis.iter().enumerate() {
        for (m, c) in q.poly().terms() {
            let _ = writeln!(out, "basis {i} {} {} {}", m.p1, m.p2, fraction(c));
        }
    }
    for m in set {
        let _ = writeln!(out, "set {} {}", m.p1, m.p2);
    }
    let _ = writeln!(out, "certificate {}", fraction(cert));
    let _ = writeln!(out, "end {name}");
}

pub fn records(report: &Report) -> String {
    let sys = &report.input;
    let w = sys.weight();
    let mut out = String::from("hamnf-records 1\n");
    let _ = writeln!(out, "weight {} {}", w.gamma1(), w.gamma2());
    let _ = writeln!(out, "chi {}", sys.chi());
    let _ = writeln!(out, "truncation {}", sys.truncation());
    for (m, c) in sys.hamiltonian().poly().terms() {
        let _ = writeln!(out, "hamiltonian {} {} {}", m.p1, m.p2, fraction(c));
    }
    match &report.outcome {
        Outcome::Resonance(degrees) => {
            out.push_str("mode resonance\n");
            for d in degrees {
                basis_records(
                    &mut out,
                    "resonant",
                    &d.resonant,
                    &d.resonant_set.monomials,
                    &d.resonant_set.certificate,
                );
                if let Some((b, c)) = &d.reduced {
                    basis_records(&mut out, "reduced", b, &c.monomials, &c.certificate);
                }
            }
        }
        Outcome::Normal {
            mode,
            system,
            transformation,
            yset,
        } => {
            let _ = writeln!(out, "mode {}", mode_name(*mode));
            out.push_str("begin normal_form\n");
            for t in system.perturbation().terms() {
                coef_lines(&mut out, t);
            }
            out.push_str("end normal_form\n");
            for (i, q) in transformation.generators().iter().enumerate() {
                let _ = writeln!(out, "begin generator {} {}", i + 1, q.gdeg());
                coef_lines(&mut out, q);
                out.push_str("end generator\n");
            }
            if let Some(y) = yset {
                out.push_str("begin slot_set\n");
                for s in y.all() {
                    let _ = write!(
                        out,
                        "slot {} {} {} {}",
                        s.slot.component,
                        s.slot.monomial.p1,
                        s.slot.monomial.p2,
                        rule_name(s.rule)
                    );
                    if let Rule::Witness { q } = s.rule {
                        let _ = write!(out, " via {} {}", q.p1, q.p2);
                    }
                    if let Some(p) = s.partner {
                        let _ = write!(out, " removes {} {} {}", p.component, p.monomial.p1, p.monomial.p2);
                    }
                    out.push('\n');
                }
                out.push_str("end slot_set\n");
            }
            out.push_str("begin support\n");
            for s in support(system) {
                let _ = writeln!(out, "slot {} {} {}", s.component, s.monomial.p1, s.monomial.p2);
            }
            out.push_str("end support\n");
        }
    }
    if let Some(v) = &report.verification {
        out.push_str("begin verify\n");
        let _ = writeln!(out, "status {}", if v.is_success() { "ok" } else { "mismatch" });
        for r in v.failures() {
            for (s, c) in &r.slots {
                let _ = writeln!(
                    out,
                    "residual {} {} {} {} {}",
                    r.gdeg,
                    s.component,
                    s.monomial.p1,
                    s.monomial.p2,
                    fraction(c)
                );
            }
        }
        out.push_str("end verify\n");
    }
    out
}
