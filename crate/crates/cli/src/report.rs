//! Command reports and their text, JSON and CSV renderings.
//!
//! Indices in reports are 1-based and rationals are always `p/q` strings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub level: usize,
    pub voters: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub level: usize,
    pub voters: Vec<usize>,
    pub witness: Vec<usize>,
    pub total_satisfaction: usize,
    pub average: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileLevel {
    pub level: usize,
    /// `None` when the election has no cohesive group at this level.
    pub min_average: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub committee: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Group {
        group: Option<Group>,
    },
    Count {
        level: usize,
        size: Option<usize>,
        value: String,
    },
    Profile {
        levels: Vec<ProfileLevel>,
    },
    Verification {
        holds: bool,
        counterexample: Option<Failure>,
    },
    Failure {
        level: usize,
        threshold: String,
        witness: Option<Failure>,
    },
    LpExport {
        path: String,
        variables: usize,
        constraints: usize,
    },
    Committee {
        committee: Option<Vec<usize>>,
    },
    Winners {
        rule: String,
        score: String,
        winners: Vec<Vec<usize>>,
        checks: Vec<AxiomCheck>,
    },
    Generated {
        election: String,
        order: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub method: Option<String>,
    pub result: Payload,
    pub wall_time_us: u64,
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn failure_rows(prefix: &str, f: &Failure, rows: &mut Vec<(String, String)>) {
    rows.push((format!("{prefix}level"), f.level.to_string()));
    rows.push((format!("{prefix}voters"), list(&f.voters)));
    rows.push((format!("{prefix}witness"), list(&f.witness)));
    rows.push((format!("{prefix}total_satisfaction"), f.total_satisfaction.to_string()));
    rows.push((format!("{prefix}average"), f.average.clone()));
}

impl Report {
    /// Flat `(field, value)` rows shared by the text and CSV renderings.
    fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![("command".to_string(), self.command.join(" "))];
        for input in &self.inputs {
            rows.push((format!("input {}", input.path), format!("sha256:{}", input.sha256)));
        }
        if let Some(method) = &self.method {
            rows.push(("method".into(), method.clone()));
        }
        let mut push = |k: &str, v: String| rows.push((k.to_string(), v));
        match &self.result {
            Payload::Group { group: Some(g) } => {
                push("result", "found".into());
                push("level", g.level.to_string());
                push("voters", list(&g.voters));
                push("witness", list(&g.witness));
            }
            Payload::Group { group: None } => push("result", "none".into()),
            Payload::Count { level, size, value } => {
                push("level", level.to_string());
                push("size", size.map_or("all".into(), |x| x.to_string()));
                push("count", value.clone());
            }
            Payload::Profile { levels } => {
                for l in levels {
                    push(&format!("level {}", l.level), l.min_average.clone().unwrap_or_else(|| "no-groups".into()));
                }
            }
            Payload::Verification { holds, counterexample } => {
                push("holds", holds.to_string());
                if let Some(f) = counterexample {
                    failure_rows("counterexample ", f, &mut rows);
                }
            }
            Payload::Failure { level, threshold, witness } => {
                push("level", level.to_string());
                push("threshold", threshold.clone());
                match witness {
                    Some(f) => {
                        rows.push(("result".into(), "failure".into()));
                        failure_rows("witness ", f, &mut rows);
                    }
                    None => rows.push(("result".into(), "none".into())),
                }
            }
            Payload::LpExport { path, variables, constraints } => {
                push("lp", path.clone());
                push("variables", variables.to_string());
                push("constraints", constraints.to_string());
            }
            Payload::Committee { committee } => {
                push("committee", committee.as_ref().map_or("none".into(), |c| list(c)));
            }
            Payload::Winners { rule, score, winners, checks } => {
                push("rule", rule.clone());
                push("score", score.clone());
                for w in winners {
                    push("winner", list(w));
                }
                for c in checks {
                    rows.push((format!("{} {}", c.axiom, list(&c.committee)), c.holds.to_string()));
                }
            }
            Payload::Generated { election, order } => {
                push("election", election.clone());
                if let Some(o) = order {
                    push("order", o.clone());
                }
            }
        }
        rows.push(("wall_time_us".into(), self.wall_time_us.to_string()));
        rows
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.rows() {
            writeln!(out, "{k}: {v}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["field", "value"]).unwrap();
        for (k, v) in self.rows() {
            w.write_record([k, v]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}
