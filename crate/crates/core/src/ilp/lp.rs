//! CPLEX LP text format.
//!
//! The exporter lists every variable in the `Bounds` section in declaration
//! order (binaries as `0 <= x <= 1`) so that [`parse_lp`] can rebuild the
//! model with identical indices.

use std::fmt::Write as _;

use super::{IlpModel, Relation, Sense};
use crate::error::{Error, Result};

fn write_expr(out: &mut String, model: &IlpModel, terms: &[(usize, i64)]) {
    if terms.is_empty() {
        match model.variables().first() {
            Some(v) => write!(out, "0 {}", v.name).unwrap(),
            None => out.push('0'),
        }
        return;
    }
    for (i, &(v, a)) in terms.iter().enumerate() {
        let name = &model.variables()[v].name;
        let sign = if a < 0 { "-" } else { "+" };
        if i == 0 {
            let lead = if a < 0 { "- " } else { "" };
            write!(out, "{lead}{} {name}", a.unsigned_abs()).unwrap();
        } else {
            write!(out, " {sign} {} {name}", a.unsigned_abs()).unwrap();
        }
    }
}

/// Renders the model; identical models give byte-identical text.
pub fn export_lp(model: &IlpModel) -> String {
    let mut out = String::new();
    let (sense, terms): (&str, &[(usize, i64)]) = match model.objective() {
        Some(o) if o.sense == Sense::Maximize => ("Maximize", &o.terms),
        Some(o) => ("Minimize", &o.terms),
        None => ("Minimize", &[]),
    };
    out.push_str(sense);
    out.push_str("\n obj: ");
    write_expr(&mut out, model, terms);
    out.push_str("\nSubject To\n");
    for (i, c) in model.constraints().iter().enumerate() {
        write!(out, " c{}: ", i + 1).unwrap();
        write_expr(&mut out, model, &c.terms);
        writeln!(out, " {} {}", c.relation.symbol(), c.rhs).unwrap();
    }
    out.push_str("Bounds\n");
    for v in model.variables() {
        writeln!(out, " {} <= {} <= {}", v.lower, v.name, v.upper).unwrap();
    }
    let general: Vec<&str> = model
        .variables()
        .iter()
        .filter(|v| !v.is_binary())
        .map(|v| v.name.as_str())
        .collect();
    let binary: Vec<&str> = model
        .variables()
        .iter()
        .filter(|v| v.is_binary())
        .map(|v| v.name.as_str())
        .collect();
    for (header, names) in [("General", general), ("Binary", binary)] {
        if !names.is_empty() {
            writeln!(out, "{header}\n {}", names.join(" ")).unwrap();
        }
    }
    out.push_str("End\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    Objective,
    Constraints,
    Bounds,
    Integers,
    End,
}

fn parse_int(tok: &str, line: usize) -> Result<i64> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected an integer, found {tok:?}")))
}

/// Parses `[+|-] [coef] name ...` into named terms. A lone `0` is the empty
/// expression.
fn parse_expr(tokens: &[&str], line: usize) -> Result<Vec<(String, i64)>> {
    if tokens == ["0"] {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut sign = 1;
        if tokens[i] == "+" || tokens[i] == "-" {
            if tokens[i] == "-" {
                sign = -1;
            }
            i += 1;
        }
        let mut coef = 1;
        if let Some(tok) = tokens.get(i) {
            if tok.starts_with(|c: char| c.is_ascii_digit()) {
                coef = parse_int(tok, line)?;
                i += 1;
            }
        }
        let name = tokens
            .get(i)
            .ok_or_else(|| Error::parse(line, "expression ends without a variable"))?;
        terms.push((name.to_string(), sign * coef));
        i += 1;
    }
    Ok(terms)
}

fn strip_label(body: &str) -> &str {
    match body.split_once(':') {
        Some((_, rest)) => rest,
        None => body,
    }
}

/// Reads text produced by [`export_lp`] back into a model. Only the subset of
/// the format the exporter writes is accepted; every variable must appear in
/// the `Bounds` section.
pub fn parse_lp(text: &str) -> Result<IlpModel> {
    let mut section = Section::Start;
    let mut sense = Sense::Minimize;
    let mut objective: Vec<(String, i64)> = Vec::new();
    let mut constraints: Vec<(Vec<(String, i64)>, Relation, i64, usize)> = Vec::new();
    let mut model = IlpModel::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('\\') {
            continue;
        }
        let keyword = trimmed.to_ascii_lowercase();
        let next = match keyword.as_str() {
            "minimize" | "min" => {
                sense = Sense::Minimize;
                Some(Section::Objective)
            }
            "maximize" | "max" => {
                sense = Sense::Maximize;
                Some(Section::Objective)
            }
            "subject to" | "st" | "s.t." => Some(Section::Constraints),
            "bounds" => Some(Section::Bounds),
            "general" | "generals" | "binary" | "binaries" => Some(Section::Integers),
            "end" => Some(Section::End),
            _ => None,
        };
        if let Some(s) = next {
            section = s;
            continue;
        }
        let tokens: Vec<&str> = strip_label(trimmed).split_whitespace().collect();
        match section {
            Section::Start | Section::End => {
                return Err(Error::parse(line, format!("unexpected line {trimmed:?}")))
            }
            Section::Objective => objective.extend(parse_expr(&tokens, line)?),
            Section::Constraints => {
                let [expr @ .., rel, rhs] = tokens.as_slice() else {
                    return Err(Error::parse(line, "constraint needs a relation and a right-hand side"));
                };
                let relation = match *rel {
                    "<=" | "=<" => Relation::Le,
                    ">=" | "=>" => Relation::Ge,
                    "=" => Relation::Eq,
                    other => return Err(Error::parse(line, format!("unknown relation {other:?}"))),
                };
                constraints.push((parse_expr(expr, line)?, relation, parse_int(rhs, line)?, line));
            }
            Section::Bounds => {
                let [lo, "<=", name, "<=", hi] = tokens.as_slice() else {
                    return Err(Error::parse(line, "bounds must read `lower <= name <= upper`"));
                };
                model
                    .add_variable(*name, parse_int(lo, line)?, parse_int(hi, line)?)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            Section::Integers => {
                if let Some(name) = tokens.iter().find(|n| model.variable_index(n).is_none()) {
                    return Err(Error::parse(line, format!("integer variable {name} has no bounds")));
                }
            }
        }
    }
    let resolve = |terms: Vec<(String, i64)>, line: usize| -> Result<Vec<(usize, i64)>> {
        terms
            .into_iter()
            .map(|(name, a)| {
                model
                    .variable_index(&name)
                    .map(|v| (v, a))
                    .ok_or_else(|| Error::parse(line, format!("unknown variable {name}")))
            })
            .collect()
    };
    let objective = resolve(objective, 0)?;
    let mut rows = Vec::with_capacity(constraints.len());
    for (terms, relation, rhs, line) in constraints {
        rows.push((resolve(terms, line)?, relation, rhs));
    }
    for (terms, relation, rhs) in rows {
        model.add_constraint(&terms, relation, rhs)?;
    }
    if objective.iter().any(|&(_, a)| a != 0) {
        model.set_objective(sense, &objective)?;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> IlpModel {
        let mut m = IlpModel::new();
        let x = m.add_variable("x", 0, 1).unwrap();
        let y = m.add_variable("y_2", -3, 4).unwrap();
        let z = m.add_variable("z", 0, 1).unwrap();
        m.add_constraint(&[(x, 1), (y, -2), (z, 3)], Relation::Ge, -1).unwrap();
        m.add_constraint(&[(y, 1)], Relation::Le, 2).unwrap();
        m.add_constraint(&[(x, -1), (z, 1)], Relation::Eq, 0).unwrap();
        m
    }

    #[test]
    fn trivial_model_sections() {
        let mut m = IlpModel::new();
        let x = m.add_variable("x", 0, 1).unwrap();
        m.add_constraint(&[(x, 1)], Relation::Ge, 1).unwrap();
        let text = export_lp(&m);
        assert_eq!(
            text,
            "Minimize\n obj: 0 x\nSubject To\n c1: 1 x >= 1\nBounds\n 0 <= x <= 1\nBinary\n x\nEnd\n"
        );
    }

    #[test]
    fn round_trip() {
        let m = sample();
        let text = export_lp(&m);
        assert!(text.contains(" c1: 1 x - 2 y_2 + 3 z >= -1\n"));
        assert!(text.contains("General\n y_2\nBinary\n x z\n"));
        assert_eq!(parse_lp(&text).unwrap(), m);

        let mut with_obj = sample();
        with_obj.set_objective(Sense::Maximize, &[(1, -1), (2, 5)]).unwrap();
        let text = export_lp(&with_obj);
        assert!(text.starts_with("Maximize\n obj: - 1 y_2 + 5 z\n"));
        assert_eq!(parse_lp(&text).unwrap(), with_obj);
    }

    #[test]
    fn export_is_deterministic() {
        assert_eq!(export_lp(&sample()), export_lp(&sample()));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_lp("Minimize\n obj: 0 x\nSubject To\n c1: 1 x >= 1\nEnd\n").is_err());
        assert!(parse_lp("Subject To\n c1: 1 x ?? 1\nEnd\n").is_err());
        assert!(parse_lp("Bounds\n 0 <= x\nEnd\n").is_err());
    }
}
