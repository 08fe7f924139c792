//! `propdeg`: proportionality analysis of approval elections from the shell.
//!
//! Exit codes: 0 yes/found, 1 no/none, 2 error.

mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use propdeg::cohesive::{count_fixed_size, count_groups, find_cohesive_group, find_one_cohesive_group_poly, CountMethod};
use propdeg::election::format::{parse_committee, parse_election, parse_order, serialize_election, serialize_order};
use propdeg::election::generate::{generate_election, Model};
use propdeg::ilp::export_lp;
use propdeg::pd::{
    build_pd_failure_ilp, pd_committee_exists, pd_counterexample, pd_failure, pd_profile, CommitteeMethod,
    FailureMethod, LevelMinimum, PdFailureWitness,
};
use propdeg::rules::{provides_ejr, provides_jr, rule_winners, Rule};
use propdeg::{verify_interval_order, Committee, Election, IntervalOrder, Limits, OrderKind, PdFunction, Rational};

use report::{AxiomCheck, Failure, Group, InputDigest, Payload, ProfileLevel, Report};

#[derive(Parser)]
#[command(name = "propdeg", version, about = "Cohesive groups, proportionality degree and JR/EJR for approval elections")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Look for an ℓ-cohesive voter group.
    FindGroup(FindGroupArgs),
    /// Count ℓ-cohesive groups, of all sizes or of exactly --x voters.
    CountGroups(CountArgs),
    /// Analyse the proportionality degree of a committee.
    Pd(PdArgs),
    /// Search for a committee with a given proportionality degree.
    PdCommittee(PdCommitteeArgs),
    /// Compute AV, CC or PAV winners and check JR/EJR.
    Rules(RulesArgs),
    /// Generate a random election.
    Gen(GenArgs),
}

#[derive(Args)]
struct ElectionArgs {
    /// Election file.
    #[arg(long)]
    election: String,
    /// Committee size.
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FindMethod {
    Auto,
    Enumerate,
    Poly,
}

#[derive(Args)]
struct FindGroupArgs {
    #[command(flatten)]
    base: ElectionArgs,
    #[arg(long)]
    ell: usize,
    #[arg(long, value_enum, default_value_t = FindMethod::Auto)]
    method: FindMethod,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethodArg {
    Auto,
    Brute,
    InclusionExclusion,
    Ci,
    Vi,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    base: ElectionArgs,
    #[arg(long)]
    ell: usize,
    /// Count only groups of exactly this many voters.
    #[arg(long)]
    x: Option<usize>,
    #[arg(long, value_enum, default_value_t = CountMethodArg::Auto)]
    method: CountMethodArg,
    /// Order file (1-based permutation) or `identity`.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PdMethodArg {
    Auto,
    Enumerate,
    Ilp,
    Ci,
    Vi,
}

#[derive(Args)]
#[group(id = "mode", required = true, multiple = false, args = ["profile", "verify", "fail", "export_lp"])]
struct PdArgs {
    #[command(flatten)]
    base: ElectionArgs,
    /// Committee file, or an inline list such as `1,2,3`.
    #[arg(long)]
    committee: String,
    /// Print the minimum average satisfaction per level.
    #[arg(long)]
    profile: bool,
    /// Check a PD function (file or unit|zero|nearly-perfect|perfect).
    #[arg(long, value_name = "PD")]
    verify: Option<String>,
    /// Look for a group at level --ell averaging below --threshold.
    #[arg(long)]
    fail: bool,
    /// Write the PD-failure ILP for --ell/--threshold to a file.
    #[arg(long, value_name = "PATH")]
    export_lp: Option<String>,
    #[arg(long)]
    ell: Option<usize>,
    /// Rational threshold `p/q`.
    #[arg(long)]
    threshold: Option<String>,
    #[arg(long, value_enum, default_value_t = PdMethodArg::Auto)]
    method: PdMethodArg,
    #[arg(long)]
    order: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommitteeMethodArg {
    Auto,
    Exhaustive,
    Ilp,
}

#[derive(Args)]
struct PdCommitteeArgs {
    #[command(flatten)]
    base: ElectionArgs,
    /// PD function file or unit|zero|nearly-perfect|perfect.
    #[arg(long)]
    pd: String,
    #[arg(long, value_enum, default_value_t = CommitteeMethodArg::Auto)]
    method: CommitteeMethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Av,
    Cc,
    Pav,
}

#[derive(Args)]
struct RulesArgs {
    #[command(flatten)]
    base: ElectionArgs,
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Check JR for the given committee, or for every winner.
    #[arg(long, value_name = "COMMITTEE", num_args = 0..=1, default_missing_value = "")]
    check_jr: Option<String>,
    /// Check EJR for the given committee, or for every winner.
    #[arg(long, value_name = "COMMITTEE", num_args = 0..=1, default_missing_value = "")]
    check_ejr: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Impartial,
    Ci,
    Vi,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Approval probability for the impartial model.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    seed: u64,
    /// Election output path; structured models also write `<out>.order`.
    #[arg(long)]
    out: String,
}

/// Decision bit carried to the exit code.
enum Answer {
    Yes,
    No,
}

impl Answer {
    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

struct Outcome {
    method: Option<String>,
    payload: Payload,
    answer: Answer,
}

#[derive(Default)]
struct Inputs {
    digests: Vec<InputDigest>,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {path}"))?;
        self.digests.push(InputDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).with_context(|| format!("{path} is not UTF-8"))
    }

    fn election(&mut self, path: &str) -> Result<Election> {
        let text = self.read(path)?;
        parse_election(&text).with_context(|| format!("in {path}"))
    }

    fn committee(&mut self, spec: &str, e: &Election, k: usize) -> Result<Committee> {
        let w = if Path::new(spec).is_file() {
            let text = self.read(spec)?;
            parse_committee(&text, e.num_candidates()).with_context(|| format!("in {spec}"))?
        } else {
            parse_committee(spec, e.num_candidates()).with_context(|| format!("committee {spec:?}"))?
        };
        if w.size() != k {
            bail!("committee has {} members but --k is {k}", w.size());
        }
        Ok(w)
    }

    fn pd_function(&mut self, spec: &str, k: usize) -> Result<PdFunction> {
        let f = match spec {
            "unit" => PdFunction::unit(k)?,
            "zero" => PdFunction::zero(k)?,
            "nearly-perfect" => PdFunction::nearly_perfect(k)?,
            "perfect" => PdFunction::perfect(k)?,
            path => {
                let text = self.read(path)?;
                PdFunction::parse(&text).with_context(|| format!("in {path}"))?
            }
        };
        if f.k() != k {
            bail!("PD function has {} values but --k is {k}", f.k());
        }
        Ok(f)
    }

    /// Reads an order of the given kind, or the identity.
    fn order(&mut self, spec: &str, kind: OrderKind, e: &Election) -> Result<IntervalOrder> {
        if spec == "identity" {
            let len = match kind {
                OrderKind::Ci => e.num_candidates(),
                OrderKind::Vi => e.num_voters(),
            };
            return Ok(IntervalOrder::identity(kind, len));
        }
        let text = self.read(spec)?;
        parse_order(&text, kind).with_context(|| format!("in {spec}"))
    }

    /// An order given without a kind: CI if it verifies as one, else VI.
    fn any_order(&mut self, spec: &str, e: &Election) -> Result<IntervalOrder> {
        for kind in [OrderKind::Ci, OrderKind::Vi] {
            if let Ok(order) = self.order(spec, kind, e) {
                if verify_interval_order(e, &order).unwrap_or(false) {
                    return Ok(order);
                }
            }
        }
        bail!("order {spec} makes the election neither CI nor VI")
    }
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}

fn failure_out(level: usize, w: &PdFailureWitness) -> Failure {
    Failure {
        level,
        voters: one_based(&w.group.voters),
        witness: one_based(&w.group.witness),
        total_satisfaction: w.total_satisfaction,
        average: w.average.to_string(),
    }
}

fn find_group(args: &FindGroupArgs, inputs: &mut Inputs) -> Result<Outcome> {
    let e = inputs.election(&args.base.election)?;
    let k = args.base.k;
    let (name, group) = match args.method {
        FindMethod::Poly => {
            if args.ell != 1 {
                bail!("the polynomial method only handles --ell 1");
            }
            ("poly", find_one_cohesive_group_poly(&e, k)?)
        }
        FindMethod::Auto if args.ell == 1 => ("poly", find_one_cohesive_group_poly(&e, k)?),
        _ => ("enumerate", find_cohesive_group(&e, k, args.ell)?),
    };
    Ok(Outcome {
        method: Some(name.into()),
        answer: Answer::from_bool(group.is_some()),
        payload: Payload::Group {
            group: group.map(|g| Group {
                level: g.level,
                voters: one_based(&g.voters),
                witness: one_based(&g.witness),
            }),
        },
    })
}

fn count(args: &CountArgs, inputs: &mut Inputs, limits: &Limits) -> Result<Outcome> {
    let e = inputs.election(&args.base.election)?;
    let order_spec = args.order.as_deref();
    let needs_order = |kind: OrderKind| order_spec.ok_or_else(|| anyhow!("--method {} needs --order", kind.name().to_lowercase()));
    let method = match args.method {
        CountMethodArg::Brute => CountMethod::Brute,
        CountMethodArg::InclusionExclusion => CountMethod::InclusionExclusion,
        CountMethodArg::Ci => CountMethod::Ci(inputs.order(needs_order(OrderKind::Ci)?, OrderKind::Ci, &e)?),
        CountMethodArg::Vi => CountMethod::Vi(inputs.order(needs_order(OrderKind::Vi)?, OrderKind::Vi, &e)?),
        CountMethodArg::Auto => match order_spec {
            Some(spec) => {
                let order = inputs.any_order(spec, &e)?;
                match order.kind() {
                    OrderKind::Ci => CountMethod::Ci(order),
                    OrderKind::Vi => CountMethod::Vi(order),
                }
            }
            None if e.num_voters() <= limits.brute_voters => CountMethod::Brute,
            None => CountMethod::InclusionExclusion,
        },
    };
    let k = args.base.k;
    let result = match args.x {
        Some(x) => count_fixed_size(&e, k, args.ell, x, &method, limits)?,
        None => count_groups(&e, k, args.ell, &method, limits)?,
    };
    Ok(Outcome {
        method: Some(result.method.name().into()),
        answer: Answer::Yes,
        payload: Payload::Count {
            level: args.ell,
            size: args.x,
            value: result.value.to_string(),
        },
    })
}

fn pd(args: &PdArgs, inputs: &mut Inputs, limits: &Limits) -> Result<Outcome> {
    let e = inputs.election(&args.base.election)?;
    let k = args.base.k;
    let w = inputs.committee(&args.committee, &e, k)?;
    let level_and_threshold = || -> Result<(usize, Rational)> {
        let ell = args.ell.ok_or_else(|| anyhow!("--ell is required"))?;
        let y = args
            .threshold
            .as_deref()
            .ok_or_else(|| anyhow!("--threshold is required"))?
            .parse::<Rational>()?;
        Ok((ell, y))
    };

    if let Some(path) = &args.export_lp {
        let (ell, y) = level_and_threshold()?;
        let model = build_pd_failure_ilp(&e, &w, ell, &y)?;
        std::fs::write(path, export_lp(&model)).with_context(|| format!("cannot write {path}"))?;
        return Ok(Outcome {
            method: None,
            answer: Answer::Yes,
            payload: Payload::LpExport {
                path: path.clone(),
                variables: model.variables().len(),
                constraints: model.constraints().len(),
            },
        });
    }

    let method = match args.method {
        PdMethodArg::Enumerate => FailureMethod::Enumerate,
        PdMethodArg::Ilp => FailureMethod::Ilp,
        PdMethodArg::Ci | PdMethodArg::Vi => {
            let kind = if args.method == PdMethodArg::Ci { OrderKind::Ci } else { OrderKind::Vi };
            let spec = args.order.as_deref().ok_or_else(|| anyhow!("this method needs --order"))?;
            let order = inputs.order(spec, kind, &e)?;
            match kind {
                OrderKind::Ci => FailureMethod::Ci(order),
                OrderKind::Vi => FailureMethod::Vi(order),
            }
        }
        PdMethodArg::Auto => match args.order.as_deref() {
            Some(spec) => {
                let order = inputs.any_order(spec, &e)?;
                match order.kind() {
                    OrderKind::Ci => FailureMethod::Ci(order),
                    OrderKind::Vi => FailureMethod::Vi(order),
                }
            }
            None => FailureMethod::Enumerate,
        },
    };
    let name = Some(method.name().to_string());

    if args.profile {
        let profile = pd_profile(&e, &w, &method, limits)?;
        let levels = profile
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| ProfileLevel {
                level: i + 1,
                min_average: match l {
                    LevelMinimum::NoGroups => None,
                    LevelMinimum::MinAverage(a) => Some(a.to_string()),
                },
            })
            .collect();
        return Ok(Outcome { method: name, answer: Answer::Yes, payload: Payload::Profile { levels } });
    }
    if let Some(spec) = &args.verify {
        let f = inputs.pd_function(spec, k)?;
        let counter = pd_counterexample(&e, &w, &f, &method, limits)?;
        return Ok(Outcome {
            method: name,
            answer: Answer::from_bool(counter.is_none()),
            payload: Payload::Verification {
                holds: counter.is_none(),
                counterexample: counter.map(|(ell, wit)| failure_out(ell, &wit)),
            },
        });
    }
    let (ell, y) = level_and_threshold()?;
    let witness = pd_failure(&e, &w, ell, &y, &method, limits)?;
    Ok(Outcome {
        method: name,
        answer: Answer::from_bool(witness.is_some()),
        payload: Payload::Failure {
            level: ell,
            threshold: y.to_string(),
            witness: witness.map(|wit| failure_out(ell, &wit)),
        },
    })
}

fn pd_committee(args: &PdCommitteeArgs, inputs: &mut Inputs, limits: &Limits) -> Result<Outcome> {
    let e = inputs.election(&args.base.election)?;
    let k = args.base.k;
    let f = inputs.pd_function(&args.pd, k)?;
    let method = match args.method {
        CommitteeMethodArg::Exhaustive => CommitteeMethod::Exhaustive,
        CommitteeMethodArg::Ilp => CommitteeMethod::IlpVoterTypes,
        CommitteeMethodArg::Auto => {
            let committees = propdeg::combinatorics::binomial_u128(e.num_candidates() as u128, k as u128);
            if committees <= limits.max_committees {
                CommitteeMethod::Exhaustive
            } else {
                CommitteeMethod::IlpVoterTypes
            }
        }
    };
    let found = pd_committee_exists(&e, k, &f, method, limits)?;
    Ok(Outcome {
        method: Some(method.name().into()),
        answer: Answer::from_bool(found.is_some()),
        payload: Payload::Committee {
            committee: found.map(|w| one_based(w.members())),
        },
    })
}

fn rules(args: &RulesArgs, inputs: &mut Inputs, limits: &Limits) -> Result<Outcome> {
    let e = inputs.election(&args.base.election)?;
    let k = args.base.k;
    let rule = match args.rule {
        RuleArg::Av => Rule::Av,
        RuleArg::Cc => Rule::Cc,
        RuleArg::Pav => Rule::Pav,
    };
    let result = rule_winners(&e, k, rule, limits)?;
    let mut checks = Vec::new();
    for (axiom, spec) in [("JR", &args.check_jr), ("EJR", &args.check_ejr)] {
        let Some(spec) = spec else { continue };
        let committees = if spec.is_empty() {
            result.winners.clone()
        } else {
            vec![inputs.committee(spec, &e, k)?]
        };
        for w in committees {
            let holds = match axiom {
                "JR" => provides_jr(&e, k, &w)?,
                _ => provides_ejr(&e, k, &w, limits)?,
            };
            checks.push(AxiomCheck { axiom: axiom.into(), committee: one_based(w.members()), holds });
        }
    }
    Ok(Outcome {
        method: Some("exhaustive".into()),
        answer: Answer::from_bool(checks.iter().all(|c| c.holds)),
        payload: Payload::Winners {
            rule: rule.name().into(),
            score: result.score.to_string(),
            winners: result.winners.iter().map(|w| one_based(w.members())).collect(),
            checks,
        },
    })
}

fn gen(args: &GenArgs) -> Result<Outcome> {
    let model = match args.model {
        ModelArg::Impartial => Model::Impartial { p: args.p },
        ModelArg::Ci => Model::CiIntervals,
        ModelArg::Vi => Model::ViIntervals,
    };
    let g = generate_election(args.m, args.n, model, args.seed)?;
    std::fs::write(&args.out, serialize_election(&g.election)).with_context(|| format!("cannot write {}", args.out))?;
    let order = match &g.order {
        Some(o) => {
            let path = format!("{}.order", args.out);
            std::fs::write(&path, serialize_order(o)).with_context(|| format!("cannot write {path}"))?;
            Some(path)
        }
        None => None,
    };
    Ok(Outcome {
        method: None,
        answer: Answer::Yes,
        payload: Payload::Generated { election: args.out.clone(), order },
    })
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome> {
    let limits = Limits::default();
    match &cli.command {
        Command::FindGroup(a) => find_group(a, inputs),
        Command::CountGroups(a) => count(a, inputs, &limits),
        Command::Pd(a) => pd(a, inputs, &limits),
        Command::PdCommittee(a) => pd_committee(a, inputs, &limits),
        Command::Rules(a) => rules(a, inputs, &limits),
        Command::Gen(a) => gen(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = match run(&cli, &mut inputs) {
        Ok(o) => o,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    let report = Report {
        command: std::env::args().collect(),
        inputs: inputs.digests,
        method: outcome.method,
        result: outcome.payload,
        wall_time_us: start.elapsed().as_micros() as u64,
    };
    let rendered = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    print!("{rendered}");
    match outcome.answer {
        Answer::Yes => ExitCode::SUCCESS,
        Answer::No => ExitCode::from(1),
    }
}
