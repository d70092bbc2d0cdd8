//! `cohdiff`: batch front end for the law checker, the derivative of
//! relations and the coherent differential calculus.
//!
//! Exit codes: `0` when every check passes, `1` when a check fails (a law,
//! a type, a reduction running out of fuel), `2` for usage errors and
//! unreadable input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cohdiff::differential::dhat;
use cohdiff::lawcheck::{run_all, RunConfig};
use cohdiff::text::{parse_rel, parse_space_expr, parse_space_file, SpaceEnv};
use cohdiff::{Atom, Budget, Kind, Rel, Space};
use cohdiff_calculus::denot::interp_with_slack;
use cohdiff_calculus::parse::show_context;
use cohdiff_calculus::{parse_judgment, soundness_check, trace, typecheck, Reducer, SemEnv};

#[derive(Parser)]
#[command(name = "cohdiff", version, about = "Coherent differentiation: law checker, derivatives and calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Coh,
    Nucs,
    Rel,
    All,
}

impl Model {
    fn kinds(self) -> Vec<Kind> {
        match self {
            Model::Coh => vec![Kind::Coh],
            Model::Nucs => vec![Kind::Nucs],
            Model::Rel => vec![Kind::Rel],
            Model::All => Kind::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Coh,
    Nucs,
    Rel,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Coh => Kind::Coh,
            KindArg::Nucs => Kind::Nucs,
            KindArg::Rel => Kind::Rel,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the registered commuting diagrams on random instances.
    CheckLaws {
        /// Model to check.
        #[arg(long, value_enum, default_value = "all")]
        model: Model,
        /// Trials per diagram.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Base seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximal multiset degree of enumerated atoms.
        #[arg(long, default_value_t = 3)]
        budget: u32,
        /// Maximal web size of generated spaces.
        #[arg(long, default_value_t = 4)]
        web: usize,
        /// Only run the diagram (or law family) with this name.
        #[arg(long)]
        only: Option<String>,
        /// Write a JSON summary to this file.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// List the registered diagrams and exit.
        #[arg(long)]
        list: bool,
    },
    /// Infer the type of a `.cdl` term.
    Typecheck {
        /// The `.cdl` file.
        file: PathBuf,
    },
    /// Reduce a `.cdl` term to normal form.
    Reduce {
        /// The `.cdl` file.
        file: PathBuf,
        /// Maximal number of steps.
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
        /// Print every step with the rule that fired.
        #[arg(long)]
        trace: bool,
    },
    /// Print the relational interpretation of a `.cdl` term.
    Eval {
        /// The `.cdl` file.
        file: PathBuf,
        /// Degree bound on the printed elements.
        #[arg(long, default_value_t = 3)]
        budget: u32,
        /// Largest numeral in the webs of the ground types.
        #[arg(long, default_value_t = 3)]
        max_nat: u64,
        /// Model of the ground types.
        #[arg(long, value_enum, default_value = "rel")]
        kind: KindArg,
        /// Also check that every reduction step preserves the interpretation.
        #[arg(long)]
        sound: bool,
        /// Step bound for `--sound`.
        #[arg(long, default_value_t = 300)]
        fuel: usize,
    },
    /// Compute the derivative `D̂s : !S E → S F` of a relation `s : !E → F`.
    Derive {
        /// The `.rel` file.
        file: PathBuf,
        /// A `.space` file defining the names used by the headers.
        #[arg(long)]
        spaces: Option<PathBuf>,
        /// The space `E` (overrides the `source = !E` header).
        #[arg(long)]
        over: Option<String>,
        /// Model, when no `.space` file fixes it.
        #[arg(long, value_enum, default_value = "coh")]
        kind: KindArg,
    },
    /// Built-in demonstrations.
    Demo {
        /// Which demonstration.
        #[arg(value_enum)]
        which: Demo,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Demo {
    /// Derivatives of `[a] ↦ b` and `[a, a] ↦ b` in COH and NUCS.
    Taylor,
}

/// A failed command: the message and the exit code.
struct Failure(String, u8);

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(msg.to_string(), 2)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// `Γ |- ` in concrete syntax, or nothing for the empty context.
fn judgment_prefix(ctx: &[(String, cohdiff_calculus::Ty)]) -> String {
    if ctx.is_empty() {
        String::new()
    } else {
        format!("{} |- ", show_context(ctx))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

/// Runs a command, appending its report to `out`; `Ok(false)` means a check
/// failed.
fn run(cmd: Command, out: &mut String) -> Result<bool, Failure> {
    match cmd {
        Command::CheckLaws { model, trials, seed, budget, web, only, summary, list } => {
            if list {
                for s in cohdiff::lawcheck::registry() {
                    let kinds: Vec<&str> = s.kinds.iter().map(|k| k.name()).collect();
                    let _ = writeln!(out, "{:<28} {:<18} [{}] {}", s.name, s.topic, kinds.join(","), s.about);
                }
                return Ok(true);
            }
            check_laws(model, trials, seed, budget, web, only.as_deref(), summary.as_deref(), out)
        }
        Command::Typecheck { file } => {
            let (ctx, m) = parse_judgment(&read(&file)?).map_err(usage)?;
            match typecheck(&ctx, &m) {
                Ok(ty) => {
                    let _ = writeln!(out, "{}{m} : {ty}", judgment_prefix(&ctx));
                    Ok(true)
                }
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    Ok(false)
                }
            }
        }
        Command::Reduce { file, fuel, trace: show } => {
            let (ctx, m) = parse_judgment(&read(&file)?).map_err(usage)?;
            if let Err(e) = typecheck(&ctx, &m) {
                let _ = writeln!(out, "{e}");
                return Ok(false);
            }
            let (steps, done) = trace(&Reducer::default(), &m, fuel);
            if show {
                let _ = writeln!(out, "    {m}");
                for (rule, t) in &steps {
                    let _ = writeln!(out, "--> {t}    [{rule}]");
                }
            } else {
                let last = steps.last().map_or(&m, |(_, t)| t);
                let _ = writeln!(out, "{last}");
            }
            if !done {
                let _ = writeln!(out, "no normal form within {fuel} steps");
            }
            Ok(done)
        }
        Command::Eval { file, budget, max_nat, kind, sound, fuel } => {
            let (ctx, m) = parse_judgment(&read(&file)?).map_err(usage)?;
            let env = SemEnv { max_nat, degree: budget, kind: kind.into(), ..SemEnv::with_degree(budget) };
            let ty = match typecheck(&ctx, &m) {
                Ok(ty) => ty,
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    return Ok(false);
                }
            };
            let r = interp_with_slack(&ctx, &m, &env, env.slack).map_err(|e| Failure(e.to_string(), 1))?;
            let _ = writeln!(out, "# {}{m} : {ty}", judgment_prefix(&ctx));
            let _ = writeln!(out, "# {} elements of degree <= {budget}", r.len());
            let _ = write!(out, "{r}");
            if !sound {
                return Ok(true);
            }
            let report =
                soundness_check(&Reducer::default(), &ctx, &m, &env, fuel).map_err(|e| Failure(e.to_string(), 1))?;
            let _ = writeln!(
                out,
                "# soundness: {} steps, {} compared, {} skipped, {} violations",
                report.steps,
                report.checked,
                report.skipped,
                report.violations.len()
            );
            for v in &report.violations {
                let _ = writeln!(out, "# step {} [{}]: {}", v.step, v.rule, v.detail);
            }
            Ok(report.sound())
        }
        Command::Derive { file, spaces, over, kind } => {
            derive(&file, spaces.as_deref(), over.as_deref(), kind.into(), out)
        }
        Command::Demo { which: Demo::Taylor } => Ok(taylor(out)),
    }
}

#[allow(clippy::too_many_arguments)]
fn check_laws(
    model: Model,
    trials: usize,
    seed: u64,
    budget: u32,
    web: usize,
    only: Option<&str>,
    summary: Option<&Path>,
    out: &mut String,
) -> Result<bool, Failure> {
    let cfg = RunConfig { trials, seed, budget: Budget::degree(budget), web_size: web };
    let mut all = Vec::new();
    for kind in model.kinds() {
        let mut reports = match run_all(kind, cfg, only) {
            Ok(r) => r,
            // A diagram restricted to other models is not an error when
            // several models are requested.
            Err(_) if model == Model::All => continue,
            Err(e) => return Err(usage(e)),
        };
        reports.sort_by(|a, b| a.diagram.cmp(&b.diagram));
        for r in &reports {
            let _ = writeln!(out, "{}", r.line());
        }
        all.extend(reports);
    }
    if all.is_empty() {
        return Err(usage(format!("no diagram named `{}`", only.unwrap_or(""))));
    }
    let failed = all.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} diagrams run, {} passed, {} failed", all.len(), all.len() - failed, failed);
    if let Some(path) = summary {
        let json = serde_json::json!({
            "seed": seed,
            "trials": trials,
            "budget": budget,
            "web": web,
            "passed": failed == 0,
            "reports": all,
        });
        let text = serde_json::to_string_pretty(&json).expect("reports serialize");
        std::fs::write(path, text + "\n").map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(failed == 0)
}

fn derive(
    file: &Path,
    spaces: Option<&Path>,
    over: Option<&str>,
    kind: Kind,
    out: &mut String,
) -> Result<bool, Failure> {
    let rf = parse_rel(&read(file)?).map_err(usage)?;
    let env = match spaces {
        Some(p) => parse_space_file(&read(p)?).map_err(usage)?,
        None => SpaceEnv::new(),
    };
    let source = match (over, &rf.source) {
        (Some(e), _) => Some(parse_space_expr(e, &env, kind).map_err(usage)?.bang()),
        (None, Some(src)) => Some(parse_space_expr(src, &env, kind).map_err(usage)?),
        (None, None) => None,
    };
    let e = match &source {
        Some(s) => s.bang_arg().cloned().ok_or_else(|| usage(format!("the source {s} is not of the form !E")))?,
        None => Space::flat("E", env.kind().unwrap_or(kind), Vec::new()),
    };
    let mut ok = true;
    if let (Some(src), Some(tgt)) = (&source, &rf.target) {
        let tgt = parse_space_expr(tgt, &env, kind).map_err(usage)?;
        if let Some((x, y)) = src.morphism_violation(&tgt, &rf.rel) {
            let _ = writeln!(out, "# not a morphism {src} → {tgt}: {} ↦ {} against {} ↦ {}", x.0, x.1, y.0, y.1);
            ok = false;
        }
    }
    let d = dhat(&rf.rel, &e);
    let _ = writeln!(out, "# D̂s over {e} ({}), {} pairs", e.kind(), d.len());
    let _ = write!(out, "{d}");
    Ok(ok)
}

/// Derivatives of `[a] ↦ b` and `[a, a] ↦ b`: in COH the second vanishes
/// on its linear part, in NUCS it does not.
fn taylor(out: &mut String) -> bool {
    let (a, b) = (Atom::base("a"), Atom::base("b"));
    let ms = |xs: &[Atom]| Atom::mset(xs.iter().cloned().collect());
    let s: Rel = [(ms(std::slice::from_ref(&a)), b.clone())].into_iter().collect();
    let s2: Rel = [(ms(&[a.clone(), a.clone()]), b.clone())].into_iter().collect();
    let mut ok = true;
    let mut linear = Vec::new();
    for kind in [Kind::Coh, Kind::Nucs] {
        let e = Space::flat("E", kind, vec![a.clone()]);
        for (name, f) in [("s  = {[a] ↦ b}", &s), ("s' = {[a, a] ↦ b}", &s2)] {
            let d = dhat(f, &e);
            let _ = writeln!(out, "{kind}: D̂ of {name}");
            for (x, y) in d.pairs() {
                let _ = writeln!(out, "    {x} ↦ {y}");
            }
            linear.push(d.pairs().iter().any(|(_, y)| y.as_tag().is_some_and(|(t, _)| t == 1)));
        }
    }
    // Expected: s has a linear part everywhere; s' only in NUCS.
    ok &= linear == [true, false, true, true];
    let _ = writeln!(
        out,
        "{}",
        if ok { "the derivative of s' vanishes in COH whereas it does not in NUCS" } else { "unexpected derivatives" }
    );
    ok
}
