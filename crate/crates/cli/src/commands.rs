use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lqmatch::fpt::{alg_efm, alg_rsm, extend, FptError, SolveOptions, SolveOutcome};
use lqmatch::gen::{gen_fig1, gen_indset_reduction, gen_random, RandomParams, SimpleGraph};
use lqmatch::kernel::{efm_kernelize, rsm_kernelize, KernelError, KernelResult};
use lqmatch::optimality::{is_envy_free, report};
use lqmatch::oracle::{max_efm_bruteforce, max_rsm_bruteforce};
use lqmatch::{clone_to_one_one, compute_params, parse_instance, serialize_instance, Instance, Matching};
use serde_json::json;

use crate::report::{Report, Violations};
use crate::{Command, Gen, Solver};

pub const NO_SOLUTION: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Budget(_) => 3,
            CliError::Input(_) => 4,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_matching(inst: &Instance, path: &Path) -> Result<Matching, CliError> {
    Matching::parse(inst, &read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn fpt_error(e: FptError) -> CliError {
    match e {
        FptError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        e => CliError::Input(e.to_string()),
    }
}

type Outcome = Result<(Report, u8), CliError>;

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Check { instance, matching } => {
            let inst = load(instance)?;
            let m = load_matching(&inst, matching)?;
            let checks = report(&inst, &m);
            let verdict = json!({
                "feasible": checks.feasible,
                "stable": checks.stable,
                "envy_free": checks.envy_free,
                "relaxed_stable": checks.relaxed_stable,
            });
            let mut r = Report::new("check", verdict).with_matching(&inst, &m);
            r.violations = Some(Violations::new(&inst, &checks));
            Ok((r, 0))
        }
        Command::Params { instance } => {
            let inst = load(instance)?;
            let mut r = Report::new("params", "OK");
            r.params = Some(compute_params(&inst).into());
            Ok((r, 0))
        }
        Command::SolveEfm { instance, solver } => {
            let inst = load(instance)?;
            solved("solve-efm", &inst, alg_efm(&inst, &options(solver)))
        }
        Command::SolveRsm { instance, solver } => {
            let inst = load(instance)?;
            solved("solve-rsm", &inst, alg_rsm(&inst, &options(solver)))
        }
        Command::KernelEfm { instance, k, out, marks } => {
            let inst = load(instance)?;
            kernel("kernel-efm", &inst, efm_kernelize(&inst, *k), out, marks.as_deref())
        }
        Command::KernelRsm { instance, k, out, marks } => {
            let inst = load(instance)?;
            kernel("kernel-rsm", &inst, rsm_kernelize(&inst, *k), out, marks.as_deref())
        }
        Command::Extend { instance, matching } => {
            let inst = load(instance)?;
            let m = load_matching(&inst, matching)?;
            let out = extend(&inst, &m).map_err(fpt_error)?;
            let r = Report::new("extend", "OK")
                .with_matching(&inst, &out)
                .extra("envy_free", is_envy_free(&inst, &out));
            Ok((r, 0))
        }
        Command::Oracle { instance, rsm, cap, .. } => {
            let inst = load(instance)?;
            let best = if *rsm {
                max_rsm_bruteforce(&inst, *cap)
            } else {
                max_efm_bruteforce(&inst, *cap)
            }
            .map_err(input)?;
            Ok(found("oracle", &inst, best.as_ref()))
        }
        Command::Gen(g) => {
            let inst = generate(g)?;
            Ok((instance_report("gen", &inst), 0))
        }
        Command::Clone { instance, map } => {
            let inst = load(instance)?;
            let (clone, copies) = clone_to_one_one(&inst).map_err(input)?;
            if let Some(path) = map {
                let mut text = String::new();
                for (b, list) in copies.copies.iter().enumerate() {
                    write!(text, "{}", inst.resource_id(lqmatch::ResourceIdx(b))).unwrap();
                    for &c in list {
                        write!(text, " {}", clone.resource_id(c)).unwrap();
                    }
                    text.push('\n');
                }
                write(path, &text)?;
            }
            Ok((instance_report("clone", &clone), 0))
        }
    }
}

fn options(s: &Solver) -> SolveOptions {
    SolveOptions {
        threads: s.threads,
        budget: s.budget,
    }
}

fn found(command: &'static str, inst: &Instance, best: Option<&Matching>) -> (Report, u8) {
    match best {
        Some(m) => (Report::new(command, "OK").with_matching(inst, m), 0),
        None => (Report::new(command, "NONE"), NO_SOLUTION),
    }
}

fn solved(command: &'static str, inst: &Instance, out: Result<SolveOutcome, FptError>) -> Outcome {
    let out = match out {
        Err(FptError::NoFeasibleMatching) => return Ok((Report::new(command, "NONE"), NO_SOLUTION)),
        r => r.map_err(fpt_error)?,
    };
    let (mut r, code) = found(command, inst, out.best.as_ref());
    r.stats.assignments_enumerated = out.stats.assignments_enumerated;
    Ok((r, code))
}

fn kernel(
    command: &'static str,
    inst: &Instance,
    result: Result<KernelResult, KernelError>,
    out: &Path,
    marks: Option<&Path>,
) -> Outcome {
    let result = match result {
        Err(KernelError::NoFeasibleMatching) => {
            return Ok((Report::new(command, "TRIVIAL_NO").extra("reason", "no feasible matching"), NO_SOLUTION))
        }
        r => r.map_err(input)?,
    };
    match result {
        KernelResult::TrivialYes(m) => Ok((Report::new(command, "TRIVIAL_YES").with_matching(inst, &m), 0)),
        KernelResult::TrivialNo(reason) => {
            Ok((Report::new(command, "TRIVIAL_NO").extra("reason", reason), NO_SOLUTION))
        }
        KernelResult::Kernel(k) => {
            write(out, &serialize_instance(k.instance()))?;
            if let Some(path) = marks {
                write(path, &k.marks_text(inst))?;
            }
            let r = Report::new(command, "KERNEL")
                .extra("s", k.s())
                .extra("kernel_agents", k.instance().num_agents())
                .extra("kernel_resources", k.instance().num_resources())
                .extra("kernel_edges", k.num_edges());
            Ok((r, 0))
        }
    }
}

fn generate(g: &Gen) -> Result<Instance, CliError> {
    match g {
        Gen::Fig1 { variant } => Ok(gen_fig1(*variant)),
        Gen::Indset { graph, k } => {
            let g = SimpleGraph::parse(&read(graph)?).map_err(input)?;
            gen_indset_reduction(&g, *k).map_err(input)
        }
        Gen::Random { agents, resources, lq, maxlen, seed, max_upper } => gen_random(&RandomParams {
            agents: *agents,
            resources: *resources,
            lq: *lq,
            max_list_len: *maxlen,
            max_upper: *max_upper,
            seed: *seed,
        })
        .map_err(input),
    }
}

fn instance_report(command: &'static str, inst: &Instance) -> Report {
    let text = serialize_instance(inst);
    let mut r = Report::new(command, "OK").extra("instance", text.clone());
    r.body = Some(text);
    r
}
