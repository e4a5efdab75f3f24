use std::fmt::Write;

use super::{Model, Sense, Var};

const TERMS_PER_LINE: usize = 12;

fn write_terms(out: &mut String, terms: impl Iterator<Item = (Var, i64)>) {
    for (k, (var, c)) in terms.enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0 { "-" } else { "+" };
        let mag = c.abs();
        match (k, mag) {
            (0, 1) if c > 0 => write!(out, "{var}"),
            (0, _) if c > 0 => write!(out, "{mag} {var}"),
            (_, 1) => write!(out, "{sign} {var}").map(|_| ()),
            _ => write!(out, "{sign} {mag} {var}"),
        }
        .expect("writing to a String cannot fail");
        out.push(' ');
    }
}

/// CPLEX LP text: maximize the number of chosen vertices subject to every row,
/// all variables binary. Output is deterministic.
pub fn export_lp(model: &Model) -> String {
    let layout = model.layout();
    let mut out = String::new();
    writeln!(
        out,
        "\\ {} n={} m={} lb={}",
        model.formulation(),
        layout.n,
        layout.m,
        model.lb()
    )
    .unwrap();
    out.push_str("Maximize\n obj: ");
    let block = layout.n * layout.m;
    write_terms(&mut out, (block..layout.len()).map(|j| (layout.var(j), 1)));
    out.push_str("\nSubject To\n");
    for row in model.constraints() {
        write!(out, " {}: ", row.name).unwrap();
        write_terms(&mut out, row.terms.iter().map(|&(j, c)| (layout.var(j), c)));
        let op = match row.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
        };
        writeln!(out, "{op} {}", row.rhs).unwrap();
    }
    out.push_str("Binary\n");
    for j in 0..layout.len() {
        writeln!(out, " {}", layout.var(j)).unwrap();
    }
    out.push_str("End\n");
    out
}
