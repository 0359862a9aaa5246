use std::fmt::Write as _;

use ansatz_core::exact::{CertifiedInterval, GradedRatio, Rational};
use ansatz_core::poly::Verdict;
use ansatz_core::profile::{Outcome, SolvabilityReport};
use ansatz_core::scenario::ConstantSet;
use ansatz_core::verify::CheckOutcome;

/// `name = symbolic`, followed by an outward-rounded enclosure unless the value is rational.
pub fn graded_line(name: &str, g: &GradedRatio, width: &Rational, digits: usize) -> String {
    let exact = if g.two_pi_pow == 0 { g.value.as_rational() } else { None };
    match exact {
        Some(r) => format!("{name} = {r}"),
        None => {
            let (lo, hi) = g.enclose(width).decimal_bounds(digits);
            format!("{name} = {} in [{lo}, {hi}]", symbolic(g))
        }
    }
}

/// Symbolic form, preferring a multiple of π when the grade allows it.
pub fn symbolic(g: &GradedRatio) -> String {
    g.to_pi_graded().and_then(|p| p.as_pi_multiple()).unwrap_or_else(|| g.symbolic())
}

pub fn constants(c: &ConstantSet, scenario: &str, width: &Rational, digits: usize) -> String {
    let mut out = format!("scenario: {scenario}\n");
    let line = |out: &mut String, name: &str, g: &GradedRatio| {
        out.push_str(&graded_line(name, g, width, digits));
        out.push('\n');
    };
    line(&mut out, "C_k", &c.c_k.clone().into());
    line(&mut out, "lambda", &c.lambda);
    line(&mut out, "C~_k", &c.c_tilde);
    line(&mut out, "R_k", &ansatz_core::exact::PiGraded::new(c.r_k.clone(), 0).into());
    if let Some(ab) = &c.ab {
        line(&mut out, "a_k", &GradedRatio::new(ab.a.clone(), 0));
        line(&mut out, "b_k", &GradedRatio::new(ab.b.clone(), 0));
    }
    match &c.constraint {
        Some(r) => line(&mut out, "alpha0/alpha1", r),
        None => out.push_str("alpha0/alpha1: unconstrained (trivial twist)\n"),
    }
    out
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::PositiveOn => "Q > 0 on u in [1, 3]".into(),
        Verdict::NegativeOn => "Q < 0 on u in [1, 3]".into(),
        Verdict::SignChange { lo, hi } => format!("Q changes sign between u = {lo} and u = {hi}"),
        Verdict::TouchesZero { lo, hi } => format!("Q vanishes in u in [{lo}, {hi}]"),
    }
}

pub fn witness(r: &SolvabilityReport) -> Option<String> {
    r.witness().map(|(lo, hi)| {
        let (a, b) = CertifiedInterval::new(lo.clone(), hi.clone())
            .map(|iv| iv.decimal_bounds(12))
            .unwrap_or_default();
        format!("witness: Q changes sign for u = 1 + tau in [{lo}, {hi}] = [{a}, {b}]")
    })
}

pub fn report(r: &SolvabilityReport, width: &Rational, digits: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", r.scenario);
    match &r.outcome {
        Outcome::Solvable { .. } => out.push_str("verdict: Solvable\n"),
        Outcome::NoSolution { reason } => {
            let _ = writeln!(out, "verdict: NoSolution ({reason})");
        }
    }
    let name = if r.is_solvable() { "alpha0/alpha1" } else { "forced alpha0/alpha1" };
    let _ = writeln!(out, "{}", graded_line(name, &r.constraint, width, digits));
    let _ = writeln!(out, "Q = [{}] * ({}), u = 1 + tau", symbolic(&r.q.scale), r.q.poly);
    let _ = writeln!(out, "positivity: {}", verdict_text(&r.positivity.verdict));
    if let Some(w) = witness(r) {
        let _ = writeln!(out, "{w}");
    }
    for b in &r.boundary {
        let _ = writeln!(out, "boundary {}: {} ({})", b.condition, if b.pass { "pass" } else { "FAIL" }, b.value);
    }
    if let Some(ok) = r.interior_positive {
        let _ = writeln!(out, "interior phi > 0: {}", if ok { "yes" } else { "no" });
    }
    if let Some(p) = &r.profile {
        match p.phi_tau_coeffs() {
            Some(c) => {
                let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "phi tau-coeffs: [{}]", c.join(", "));
            }
            None => {
                let _ = writeln!(
                    out,
                    "phi = N/Q with N = {} + ({})*ln(u)",
                    p.numerator.poly, p.numerator.log_coeff
                );
            }
        }
    }
    out
}

pub fn check_line(c: &CheckOutcome) -> String {
    let over = if c.within_budget() { String::new() } else { format!(", over {:.0} s budget", c.budget.as_secs_f64()) };
    format!("{} {} ({:.3} s{over})", if c.pass { "PASS" } else { "FAIL" }, c.id, c.elapsed.as_secs_f64())
}
