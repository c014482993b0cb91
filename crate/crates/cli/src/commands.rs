use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use netctrl_core::control::{state_nodes, state_paths, StructuralSummary};
use netctrl_core::numeric::{instantiate, track_trajectory, verify, TrajectoryTask, ValueRange, VerifyOptions};
use netctrl_core::{
    build_graph, classify_nodes, is_functional_target_controllable, is_structurally_controllable, parse_system,
    serialize_dot, solve_mtcp_with, ControlError, ControlReport, LinkingAnalysis, MtcpOutcome, Node, NumericError,
    StartPreference, StructuredSystem,
};
use serde::Serialize;

use crate::Command;

const NEGATIVE: u8 = 1;

fn load(path: &Path) -> Result<StructuredSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_system(&text).with_context(|| format!("invalid system in {}", path.display()))
}

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(NEGATIVE)
    }
}

fn join(nodes: &[Node], sep: &str) -> String {
    nodes.iter().map(Node::to_string).collect::<Vec<_>>().join(sep)
}

fn print_paths(paths: &[Vec<Node>]) {
    for p in paths {
        println!("  {}", join(p, " -> "));
    }
}

#[derive(Serialize)]
struct CheckJson {
    controllable: bool,
    linking_size: usize,
    required: usize,
    steering_set: Vec<Node>,
    targets: Vec<Node>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_paths: Option<Vec<Vec<Node>>>,
}

#[derive(Serialize)]
struct PathsJson {
    size: usize,
    paths: Vec<Vec<Node>>,
}

#[derive(Serialize)]
struct SeparatorJson {
    size: usize,
    nodes: Vec<Node>,
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Check {
            input,
            steering,
            targets,
            json,
        } => {
            let sys = load(&input.file)?;
            let steering = steering.unwrap_or_else(|| sys.available().to_vec());
            let targets = targets.unwrap_or_else(|| sys.targets().to_vec());
            let v = is_functional_target_controllable(&sys, &steering, &targets)?;
            if json {
                emit_json(&CheckJson {
                    controllable: v.controllable,
                    linking_size: v.linking_size,
                    required: v.required,
                    steering_set: state_nodes(&steering),
                    targets: state_nodes(&targets),
                    witness_paths: v.witness.as_deref().map(state_paths),
                })?;
            } else if v.controllable {
                println!(
                    "functionally target controllable (max linking {} = {})",
                    v.linking_size, v.required
                );
                print_paths(&state_paths(v.witness.as_deref().unwrap_or_default()));
            } else {
                println!(
                    "NOT functionally target controllable (max linking {} < {})",
                    v.linking_size, v.required
                );
            }
            Ok(verdict(v.controllable))
        }

        Command::Solve {
            input,
            lowest_index,
            json,
        } => {
            let sys = load(&input.file)?;
            let preference = if lowest_index {
                StartPreference::LowestIndex
            } else {
                StartPreference::Canonical
            };
            match solve_mtcp_with(&sys, preference) {
                MtcpOutcome::Solved(sol) => {
                    let steering = state_nodes(&sol.steering);
                    let witness = state_paths(&sol.witness);
                    if json {
                        emit_json(&ControlReport {
                            solvable: Some(true),
                            steering_set: Some(steering),
                            witness_paths: Some(witness),
                            ..ControlReport::default()
                        })?;
                    } else {
                        println!("steering set ({}): {}", steering.len(), join(&steering, " "));
                        println!("witness paths:");
                        print_paths(&witness);
                    }
                    Ok(ExitCode::SUCCESS)
                }
                MtcpOutcome::Unsolvable { achieved, required } => {
                    if json {
                        emit_json(&ControlReport {
                            solvable: Some(false),
                            ..ControlReport::default()
                        })?;
                    } else {
                        println!("unsolvable: max linking {achieved} < {required} targets");
                    }
                    Ok(ExitCode::from(NEGATIVE))
                }
            }
        }

        Command::Classify { input, json } => {
            let sys = load(&input.file)?;
            match classify_nodes(&sys) {
                Ok(classes) => {
                    if json {
                        emit_json(&classes)?;
                    } else {
                        for (v, class) in classes.iter() {
                            println!("{} {class}", Node::State(v));
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ ControlError::Unsolvable { .. }) => {
                    eprintln!("netctrl: {e}");
                    Ok(ExitCode::from(NEGATIVE))
                }
                Err(e) => Err(e.into()),
            }
        }

        Command::Linking { input, json } => {
            let sys = load(&input.file)?;
            let linking = analysis(&sys).linking();
            let paths = state_paths(&linking.labelled());
            if json {
                emit_json(&PathsJson {
                    size: paths.len(),
                    paths,
                })?;
            } else {
                println!("maximum linking size {}", paths.len());
                print_paths(&paths);
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Separator { input, json } => {
            let sys = load(&input.file)?;
            let nodes = state_nodes(&analysis(&sys).separator().labelled());
            if json {
                emit_json(&SeparatorJson {
                    size: nodes.len(),
                    nodes,
                })?;
            } else {
                println!("minimal left separator ({}): {}", nodes.len(), join(&nodes, " "));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Structural { input, json } => {
            let sys = load(&input.file)?;
            if sys.explicit_inputs().is_empty() {
                eprintln!("netctrl: no input columns given, using one input per available node");
            }
            let report = is_structurally_controllable(&sys);
            if json {
                emit_json(&ControlReport {
                    structural_controllability: Some(StructuralSummary::from(&report)),
                    ..ControlReport::default()
                })?;
            } else if report.controllable {
                println!("structurally controllable (generic rank {} = {})", report.generic_rank, report.state_count);
            } else {
                println!("NOT structurally controllable");
                if !report.reachable {
                    println!("  not reachable from any input: {}", join(&state_nodes(&report.unreachable), " "));
                }
                if report.generic_rank < report.state_count {
                    println!(
                        "  generic rank of [A B] is {} < {}; unmatched: {}",
                        report.generic_rank,
                        report.state_count,
                        join(&state_nodes(&report.uncovered), " ")
                    );
                }
            }
            Ok(verdict(report.controllable))
        }

        Command::Verify {
            input,
            seed,
            trials,
            tol,
            json,
        } => {
            let sys = load(&input.file)?;
            let opts = VerifyOptions {
                seed,
                trials,
                rel_tol: tol,
                ..VerifyOptions::default()
            };
            let report = verify(&sys, &opts)?;
            if json {
                emit_json(&report)?;
            } else {
                println!("seed  structural  transfer  pointwise  agree");
                for t in &report.trials {
                    println!(
                        "{:>4}  {:>10}  {:>8}  {:>9}  {}",
                        t.seed, t.structural_rank, t.transfer_rank, t.pointwise_rank, t.agree
                    );
                }
                println!(
                    "{} of {} trials agree",
                    report.trials.len() - report.disagreements,
                    report.trials.len()
                );
            }
            Ok(verdict(report.all_agree()))
        }

        Command::Track {
            input,
            horizon,
            dt,
            seed,
            out,
            json,
        } => {
            let sys = load(&input.file)?;
            let inst = instantiate(&sys, seed, ValueRange::default());
            let task = TrajectoryTask::default_reference(inst.output_count(), horizon, dt)?;
            let done = match track_trajectory(&inst, &task) {
                Ok(done) => done,
                Err(e @ NumericError::NotRightInvertible { .. }) => {
                    eprintln!("netctrl: {e}");
                    return Ok(ExitCode::from(NEGATIVE));
                }
                Err(e) => return Err(e.into()),
            };
            let report = done.report.expect("tracked task carries a report");
            if let Some(path) = out {
                let mut file = fs::File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
                done.write_csv(&mut file)?;
                file.flush()?;
            }
            if json {
                emit_json(&report)?;
            } else {
                println!(
                    "{} steps, relative degree {}, solver {:?}",
                    report.steps, report.relative_degree, report.solver
                );
                println!("max grid error after startup: {:e}", report.max_error);
                if let Some(e) = report.max_intersample_error {
                    println!("max intersample error after startup: {e:e}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::ExportDot { input, classify, out } => {
            let sys = load(&input.file)?;
            let classes = if classify {
                match classify_nodes(&sys) {
                    Ok(c) => Some(c),
                    Err(e @ ControlError::Unsolvable { .. }) => {
                        eprintln!("netctrl: {e}");
                        return Ok(ExitCode::from(NEGATIVE));
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let dot = serialize_dot(&build_graph(&sys), classes.as_ref());
            match out {
                Some(path) => fs::write(&path, dot).with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{dot}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn analysis(sys: &StructuredSystem) -> LinkingAnalysis {
    let zero = |v: &[usize]| v.iter().map(|x| x - 1).collect::<Vec<_>>();
    LinkingAnalysis::new(&sys.state_digraph(), &zero(sys.available()), &zero(sys.targets()))
}
