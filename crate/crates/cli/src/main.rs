use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use monogamy_core::bell::{self, BellExpression};
use monogamy_core::graph::{clique_cover_number, independence_number, is_chordal, CommutationGraph};
use monogamy_core::jpd::{construct_jpd, find_jpd_lp, verify_marginals, Behavior};
use monogamy_core::monogamy::{check_monogamy, minimality_scan, two_kcbs_specs, InequalitySpec};
use monogamy_core::nd::{build_nd_lp, classical_max, lp_maximize, LinearObjective};
use monogamy_core::quantum::{
    build_family, operator_max_eigenvalue, orthogonality_graph, parameter_scan, ParameterSet, ORTHOGONALITY_TOL,
};
use monogamy_core::rational::format as fmt;
use monogamy_core::{fixtures, Error, Limits};

#[derive(Parser)]
#[command(
    name = "monogamy",
    version,
    about = "Monogamy analysis of contextual and Bell inequalities"
)]
struct Cli {
    /// Indent the JSON and add a human-readable `summary` field.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chordality with an elimination ordering or an induced cycle.
    Chordal { graph: String },
    /// Independence number.
    Alpha { graph: String },
    /// Minimum clique cover.
    CliqueCover { graph: String },
    /// Exact no-disturbance maximum of a linear objective (`unit` for all ones).
    NdMax { graph: String, objective: String },
    /// Maximum over exclusivity-respecting deterministic assignments.
    ClassicalMax { graph: String, objective: String },
    /// Global joint distribution reproducing a behavior.
    Jpd { graph: String, behavior: String },
    /// Clique cover test for a set of inequalities (`two-kcbs` for the two pentagons).
    Monogamy { graph: String, specs: String },
    /// Clique cover numbers of two pentagons joined by k cross edges.
    MinimalityScan {
        #[arg(long)]
        k: usize,
        /// Mark the cross edges as compatible only.
        #[arg(long)]
        non_exclusive: bool,
    },
    /// The 4D projector family at given angles or over a Halton scan.
    Quantum {
        /// theta,alpha,beta,gamma,epsilon (delta solved) or
        /// theta,alpha,beta,gamma,delta,epsilon.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "scan")]
        angles: Option<Vec<f64>>,
        #[arg(long)]
        scan: Option<usize>,
    },
    /// CHSH(A,B) + CHSH(A,C) over no-signaling behaviors.
    BellMonogamy {
        #[arg(long, action = clap::ArgAction::Set)]
        shared_settings: bool,
    },
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, Value, String), Failure>;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read `{path}`: {e}")))
}

fn load_graph(arg: &str) -> Result<CommutationGraph, Failure> {
    if Path::new(arg).exists() {
        return Ok(CommutationGraph::from_json(&read(arg)?)?);
    }
    fixtures::by_name(arg).ok_or_else(|| {
        Failure::Io(format!(
            "`{arg}` is neither a file nor a built-in graph ({})",
            fixtures::NAMES.join(", ")
        ))
    })
}

fn load_objective(g: &CommutationGraph, arg: &str) -> Result<LinearObjective, Failure> {
    if arg == "unit" && !Path::new(arg).exists() {
        return Ok(LinearObjective::unit(g));
    }
    Ok(LinearObjective::from_json(g, &read(arg)?)?)
}

fn load_specs(g: &CommutationGraph, arg: &str) -> Result<Vec<InequalitySpec>, Failure> {
    if arg == "two-kcbs" && !Path::new(arg).exists() {
        return Ok(two_kcbs_specs());
    }
    Ok(InequalitySpec::from_json(g, &read(arg)?)?)
}

fn labels(g: &CommutationGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn ones(g: &CommutationGraph, mask: u64) -> Vec<String> {
    g.labels_of(mask)
}

fn run(cmd: &Command, limits: &Limits) -> Outcome {
    match cmd {
        Command::Chordal { graph } => {
            let g = load_graph(graph)?;
            let r = is_chordal(&g);
            let summary = match &r.witness_cycle {
                None => "chordal".to_string(),
                Some(c) => format!("not chordal; induced cycle of length {}", c.len()),
            };
            Ok((
                json!({ "graph": graph }),
                json!({
                    "chordal": r.chordal,
                    "elimination_order": r.elimination_order.as_ref().map(|o| labels(&g, o)),
                    "witness_cycle": r.witness_cycle.as_ref().map(|c| labels(&g, c)),
                }),
                summary,
            ))
        }
        Command::Alpha { graph } => {
            let g = load_graph(graph)?;
            let (value, set) = independence_number(&g, limits)?;
            Ok((
                json!({ "graph": graph }),
                json!({ "value": value, "witness": labels(&g, &set) }),
                format!("independence number {value}"),
            ))
        }
        Command::CliqueCover { graph } => {
            let g = load_graph(graph)?;
            let (value, cover) = clique_cover_number(&g, limits)?;
            Ok((
                json!({ "graph": graph }),
                json!({ "value": value, "cover": cover.labelled(&g) }),
                format!("clique cover number {value}"),
            ))
        }
        Command::NdMax { graph, objective } => {
            let g = load_graph(graph)?;
            let obj = load_objective(&g, objective)?;
            let model = build_nd_lp(&g, &obj);
            let out = lp_maximize(&model);
            Ok((
                json!({ "graph": graph, "objective": obj.to_json_value(&g) }),
                json!({
                    "value": fmt(&out.value),
                    "witness": out.witness.to_json_value(&g),
                    "contexts": model.contexts().iter().map(|&c| g.labels_of(c)).collect::<Vec<_>>(),
                    "lp_variables": model.num_variables(),
                    "lp_constraints": model.num_constraints(),
                }),
                format!("no-disturbance maximum {}", fmt(&out.value)),
            ))
        }
        Command::ClassicalMax { graph, objective } => {
            let g = load_graph(graph)?;
            let obj = load_objective(&g, objective)?;
            let (value, witness) = classical_max(&g, &obj, limits)?;
            Ok((
                json!({ "graph": graph, "objective": obj.to_json_value(&g) }),
                json!({ "value": fmt(&value), "witness_ones": ones(&g, witness) }),
                format!("classical maximum {}", fmt(&value)),
            ))
        }
        Command::Jpd { graph, behavior } => {
            let g = load_graph(graph)?;
            let b = Behavior::from_json(&g, &read(behavior)?)?;
            b.validate(&g)?;
            let chordal = is_chordal(&g).chordal;
            let (method, jpd) = if chordal {
                ("clique-tree", Some(construct_jpd(&g, &b)?))
            } else {
                ("lp", find_jpd_lp(&g, &b, limits)?)
            };
            let report = jpd.as_ref().map(|j| verify_marginals(j, &b)).transpose()?;
            let summary = match (&jpd, &report) {
                (Some(_), Some(r)) if r.all_passed() => {
                    format!("joint distribution found ({method}); all marginals reproduced")
                }
                (Some(_), _) => "joint distribution found but marginals differ".to_string(),
                (None, _) => "no joint distribution reproduces the behavior".to_string(),
            };
            Ok((
                json!({ "graph": graph, "behavior": behavior, "vertices": g.labels() }),
                json!({
                    "chordal": chordal,
                    "method": method,
                    "exists": jpd.is_some(),
                    "jpd": jpd.as_ref().map(|j| j.to_json_value()),
                    "verification": report.map(|r| json!({
                        "all_passed": r.all_passed(),
                        "contexts": r.contexts.iter().map(|c| json!({
                            "vertices": labels(&g, &c.vertices),
                            "passed": c.passed,
                            "mismatches": c.mismatches,
                        })).collect::<Vec<_>>(),
                    })),
                }),
                summary,
            ))
        }
        Command::Monogamy { graph, specs } => {
            let g = load_graph(graph)?;
            let s = load_specs(&g, specs)?;
            let v = check_monogamy(&g, &s, limits)?;
            let summary = format!(
                "{} (clique cover {} vs target {}; nd max {}, classical max {})",
                v.classification.as_str(),
                v.clique_cover_number,
                v.target,
                fmt(&v.nd_max),
                fmt(&v.classical_max)
            );
            Ok((
                json!({
                    "graph": graph,
                    "specs": s.iter().map(|x| x.to_json_value(&g)).collect::<Vec<_>>(),
                }),
                v.to_json_value(&g),
                summary,
            ))
        }
        Command::MinimalityScan { k, non_exclusive } => {
            let report = minimality_scan(*k, !non_exclusive)?;
            let summary = match report.minimal_k() {
                Some(m) => format!("clique cover 4 first reached with {m} cross edges"),
                None => format!("no configuration with at most {k} cross edges reaches clique cover 4"),
            };
            let mut results = serde_json::to_value(&report).expect("report serializes");
            results["minimal_k"] = json!(report.minimal_k());
            Ok((json!({ "k": k, "exclusive": !non_exclusive }), results, summary))
        }
        Command::Quantum { angles, scan } => match (angles, scan) {
            (Some(a), None) => {
                let p = match *a.as_slice() {
                    [t, al, b, g, e] => ParameterSet::solved(t, al, b, g, e)?,
                    [t, al, b, g, d, e] => ParameterSet::new(t, al, b, g, d, e)?,
                    _ => {
                        return Err(Error::InvalidParameters(format!("expected 5 or 6 angles, got {}", a.len())).into())
                    }
                };
                let f = build_family(&p)?;
                let g = orthogonality_graph(&f, ORTHOGONALITY_TOL)?;
                let all = operator_max_eigenvalue(&f, &[1.0; 10])?;
                let first = operator_max_eigenvalue(&f, &[1., 1., 1., 1., 1., 0., 0., 0., 0., 0.])?;
                let second = operator_max_eigenvalue(&f, &[0., 0., 0., 0., 0., 1., 1., 1., 1., 1.])?;
                let summary = format!("largest eigenvalue {:.12} (bound 4)", all.value);
                Ok((
                    json!({ "angles": a }),
                    json!({
                        "parameters": p,
                        "constraint_residual": p.constraint_residual(),
                        "vectors": f.labels.iter().zip(&f.vectors).map(|(l, v)| json!({ "label": l, "vector": v })).collect::<Vec<_>>(),
                        "orthogonality_tolerance": ORTHOGONALITY_TOL,
                        "edges": g.edges().map(|(u, v, _)| [g.label(u), g.label(v)]).collect::<Vec<_>>(),
                        "matches_fig3b": g.edges().eq(fixtures::fig3b().edges()),
                        "all": all,
                        "first_pentagon": first,
                        "second_pentagon": second,
                        "bound_holds": all.value <= 4.0 + monogamy_core::quantum::BOUND_SLACK,
                        "bound_slack": monogamy_core::quantum::BOUND_SLACK,
                    }),
                    summary,
                ))
            }
            (None, Some(n)) => {
                let s = parameter_scan(*n);
                let summary = format!(
                    "{} valid points, max {:.12}, topology constant: {}",
                    s.valid,
                    s.max_all.as_ref().map_or(f64::NAN, |m| m.value),
                    s.topology_constant
                );
                Ok((
                    json!({ "scan": n }),
                    serde_json::to_value(&s).expect("scan serializes"),
                    summary,
                ))
            }
            _ => Err(Error::InvalidParameters("give exactly one of --angles or --scan".into()).into()),
        },
        Command::BellMonogamy { shared_settings } => {
            let (s, exprs) = bell::two_chsh(*shared_settings);
            let g = s.graph();
            let ns = bell::ns_lp_max(&s, &exprs)?;
            let classical = bell::classical_max(&s, &exprs)?;
            let describe = |e: &BellExpression| e.describe();
            let mut results = json!({
                "measurements": g.labels(),
                "expressions": exprs.iter().map(describe).collect::<Vec<_>>(),
                "ns_max": fmt(&ns.value),
                "classical_max": fmt(&classical),
                "witness": ns.witness.to_json_value(&g),
            });
            if *shared_settings {
                let rearranged = bell::rearranged_chsh()
                    .iter()
                    .map(|e| {
                        let sub = bell::expression_vertices(&g, e)?;
                        let value = bell::ns_lp_max(&s, std::slice::from_ref(e))?.value;
                        Ok(json!({
                            "expression": e.describe(),
                            "chordal": is_chordal(&g.induced_by_mask(sub)).chordal,
                            "ns_max": fmt(&value),
                        }))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                results["rearranged"] = json!(rearranged);
            }
            Ok((
                json!({ "shared_settings": shared_settings }),
                results,
                format!(
                    "no-signaling maximum {} (classical {})",
                    fmt(&ns.value),
                    fmt(&classical)
                ),
            ))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Chordal { .. } => "chordal",
        Command::Alpha { .. } => "alpha",
        Command::CliqueCover { .. } => "clique-cover",
        Command::NdMax { .. } => "nd-max",
        Command::ClassicalMax { .. } => "classical-max",
        Command::Jpd { .. } => "jpd",
        Command::Monogamy { .. } => "monogamy",
        Command::MinimalityScan { .. } => "minimality-scan",
        Command::Quantum { .. } => "quantum",
        Command::BellMonogamy { .. } => "bell-monogamy",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = Limits::from_env()
        .map_err(Failure::from)
        .and_then(|l| run(&cli.command, &l));
    match outcome {
        Ok((inputs, results, summary)) => {
            let mut report = json!({
                "command": command_name(&cli.command),
                "inputs": inputs,
                "results": results,
            });
            let text = if cli.pretty {
                report["summary"] = json!(summary);
                serde_json::to_string_pretty(&report)
            } else {
                serde_json::to_string(&report)
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("report serializes"));
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_size_limit() { 2 } else { 1 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
