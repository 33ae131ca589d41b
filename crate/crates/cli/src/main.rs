use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};

use fool::cnf::{clausify, print_clause, ClauseSet};
use fool::logic::Problem;
use fool::oracle::{satisfiable_within, OracleConfig, Verdict};
use fool::program::vc_from_text;
use fool::prover::{
    check_proof, prove_clauses_with, show_clause, Limits, Outcome, ProveResult, SaturationOptions,
    SzsStatus,
};
use fool::tptp::thf::thf_to_tff;
use fool::tptp::{parse_problem_with, print_problem, print_unit, ParseOptions, PrintOptions};
use fool::translate::{translate_problem, BoolSemantics, TranslateOptions, TranslationTrace};

const EXIT_GAVE_UP: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_FAILURE: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Preprocess,
    Clausify,
    Prove,
    #[value(name = "prove_sat")]
    ProveSat,
    Casc,
    #[value(name = "casc_sat")]
    CascSat,
    Encode,
    Oracle,
    Thf2tff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

impl OnOff {
    fn on(self) -> bool {
        self == OnOff::On
    }
}

/// FOOL preprocessing, clausification, proving and finite-model checking.
#[derive(Debug, Parser)]
#[command(name = "fool", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "prove")]
    mode: Mode,
    /// Use the boolean paramodulation rule instead of the `$o` domain axiom.
    #[arg(long = "fool_paramodulation", value_enum, default_value = "on")]
    fool_paramodulation: OnOff,
    /// Print `$o` as the declared sort `$$bool` with constants `$$true`/`$$false`.
    #[arg(long = "show_fool", value_enum, default_value = "off")]
    show_fool: OnOff,
    /// Add the array axioms for every array sort used.
    #[arg(long = "theory_axioms", value_enum, default_value = "on")]
    theory_axioms: OnOff,
    /// Print each translation step as a comment.
    #[arg(long = "show_preprocessing", value_enum, default_value = "off")]
    show_preprocessing: OnOff,
    /// Seconds per problem.
    #[arg(long = "time_limit", short = 't', default_value_t = 60)]
    time_limit: u64,
    /// Largest domain size tried in `oracle` mode.
    #[arg(long = "domain_bound", default_value_t = 2)]
    domain_bound: usize,
    /// Input files; standard input when absent. `encode` takes a program and a specification.
    files: Vec<PathBuf>,
}

impl Cli {
    fn bool_semantics(&self) -> BoolSemantics {
        if self.fool_paramodulation.on() {
            BoolSemantics::ParamodulationReady
        } else {
            BoolSemantics::Axiomatized
        }
    }

    fn translate_options(&self) -> TranslateOptions {
        TranslateOptions {
            mode: self.bool_semantics(),
            theory_axioms: self.theory_axioms.on(),
        }
    }

    fn print_options(&self) -> PrintOptions {
        PrintOptions {
            show_fool: self.show_fool.on(),
        }
    }
}

/// An error with its exit code.
struct Failure(u8, String);

impl Failure {
    fn parse(e: impl std::fmt::Display) -> Failure {
        Failure(EXIT_PARSE, e.to_string())
    }

    fn other(e: impl std::fmt::Display) -> Failure {
        Failure(EXIT_FAILURE, e.to_string())
    }
}

/// One input: its name for SZS lines, its text and its directory for includes.
struct Input {
    name: String,
    text: String,
    dir: Option<PathBuf>,
}

fn read_input(path: Option<&Path>) -> Result<Input, Failure> {
    match path {
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::other(format!("cannot read standard input: {e}")))?;
            Ok(Input {
                name: "stdin".into(),
                text,
                dir: None,
            })
        }
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::other(format!("cannot read {}: {e}", p.display())))?;
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string());
            Ok(Input {
                name,
                text,
                dir: p.parent().map(Path::to_path_buf),
            })
        }
    }
}

fn parse(input: &Input) -> Result<Problem, Failure> {
    let opts = ParseOptions {
        base_dir: input.dir.clone(),
        ..ParseOptions::default()
    };
    parse_problem_with(&input.text, &opts).map_err(Failure::parse)
}

fn show_trace(trace: &TranslationTrace, out: &mut String) {
    for s in &trace.steps {
        let _ = write!(out, "% [{}]", s.pass.name());
        if !s.unit.is_empty() {
            let _ = write!(out, " {}", s.unit);
        }
        out.push('\n');
        if let Some(e) = &s.after {
            let _ = writeln!(out, "%   {e}");
        }
        for u in &s.introduced {
            let _ = writeln!(out, "%   + {}", print_unit(u));
        }
    }
}

fn translate(cli: &Cli, p: &Problem, out: &mut String) -> Result<Problem, Failure> {
    let (t, trace) = translate_problem(p, cli.translate_options()).map_err(Failure::other)?;
    if cli.show_preprocessing.on() {
        show_trace(&trace, out);
    }
    Ok(t)
}

fn clauses(cli: &Cli, p: &Problem, out: &mut String) -> Result<ClauseSet, Failure> {
    let t = translate(cli, p, out)?;
    clausify(&t).map_err(Failure::other)
}

/// Strategies tried in order; each gets an even share of the time left.
fn strategies(cli: &Cli, cs: &ClauseSet) -> Vec<SaturationOptions> {
    let base = SaturationOptions {
        fool_paramodulation: cli.fool_paramodulation.on(),
        ..SaturationOptions::default()
    };
    let second = match cli.mode {
        Mode::Casc => SaturationOptions {
            age_weight_ratio: (1, 1),
            set_of_support: cs.has_conjecture,
            ..base.clone()
        },
        Mode::CascSat => SaturationOptions {
            age_weight_ratio: (1, 1),
            ..base.clone()
        },
        _ => return vec![base],
    };
    vec![base, second]
}

fn saturate_problem(cli: &Cli, cs: &ClauseSet) -> ProveResult {
    let total = Duration::from_secs(cli.time_limit);
    let start = Instant::now();
    let strategies = strategies(cli, cs);
    let n = strategies.len() as u32;
    let mut last = None;
    for (k, mut s) in strategies.into_iter().enumerate() {
        let left = total.saturating_sub(start.elapsed());
        s.limits = Limits {
            time: left / (n - k as u32),
            ..Limits::default()
        };
        let r = prove_clauses_with(cs, &s);
        if r.status != SzsStatus::GaveUp {
            return r;
        }
        last = Some(r);
    }
    last.expect("at least one strategy")
}

fn prove(cli: &Cli, input: &Input, out: &mut String) -> Result<u8, Failure> {
    let p = parse(input)?;
    let cs = clauses(cli, &p, out)?;
    let r = saturate_problem(cli, &cs);
    let name = &input.name;
    let _ = writeln!(out, "% SZS status {} for {name}", r.status);
    match &r.saturation.outcome {
        Outcome::Refutation(proof) => {
            if check_proof(proof) != Ok(true) {
                return Err(Failure::other("internal error: proof check failed"));
            }
            let _ = writeln!(out, "% SZS output start CNFRefutation for {name}");
            out.push_str(&proof.to_tptp());
            let _ = writeln!(out, "% SZS output end CNFRefutation for {name}");
        }
        Outcome::Saturated(cs) if r.status != SzsStatus::GaveUp => {
            let _ = writeln!(out, "% SZS output start Saturation for {name}");
            for (k, c) in cs.iter().enumerate() {
                let _ = writeln!(out, "cnf(s{k}, plain, {}).", show_clause(c, &r.table));
            }
            let _ = writeln!(out, "% SZS output end Saturation for {name}");
        }
        _ => {}
    }
    let s = &r.saturation.stats;
    let _ = writeln!(
        out,
        "% generated {} kept {} given {} fool_paramodulations {}",
        s.generated, s.kept, s.given, s.fool_paramodulations
    );
    Ok(if r.status == SzsStatus::GaveUp {
        EXIT_GAVE_UP
    } else {
        0
    })
}

fn oracle(cli: &Cli, input: &Input, out: &mut String) -> Result<u8, Failure> {
    let p = parse(input)?;
    let v = satisfiable_within(&p, cli.domain_bound, &OracleConfig::default())
        .map_err(Failure::other)?;
    match v {
        Verdict::Sat(m) => {
            let _ = writeln!(out, "% oracle: Sat for {}", input.name);
            for line in m.to_string().lines() {
                let _ = writeln!(out, "%   {line}");
            }
        }
        Verdict::UnsatUpTo(k) => {
            let _ = writeln!(
                out,
                "% oracle: Unsat for {} (no model with domains of size at most {k})",
                input.name
            );
        }
    }
    Ok(0)
}

fn run_one(cli: &Cli, input: &Input, out: &mut String) -> Result<u8, Failure> {
    match cli.mode {
        Mode::Preprocess => {
            let p = parse(input)?;
            let t = translate(cli, &p, out)?;
            out.push_str(&print_problem(&t, cli.print_options()));
            Ok(0)
        }
        Mode::Clausify => {
            let p = parse(input)?;
            let cs = clauses(cli, &p, out)?;
            for (k, c) in cs.clauses.iter().enumerate() {
                out.push_str(&print_clause(&format!("c{k}"), c));
                out.push('\n');
            }
            Ok(0)
        }
        Mode::Prove | Mode::ProveSat | Mode::Casc | Mode::CascSat => prove(cli, input, out),
        Mode::Oracle => oracle(cli, input, out),
        Mode::Thf2tff => {
            out.push_str(&thf_to_tff(&input.text).map_err(Failure::parse)?);
            Ok(0)
        }
        Mode::Encode => unreachable!("handled by run"),
    }
}

fn encode(cli: &Cli, out: &mut String) -> Result<u8, Failure> {
    let [program, spec] = cli.files.as_slice() else {
        return Err(Failure(
            EXIT_USAGE,
            "--mode encode takes a program file and a specification file".into(),
        ));
    };
    let program = read_input(Some(program))?;
    let spec = read_input(Some(spec))?;
    let vc = vc_from_text(&program.text, &spec.text).map_err(Failure::parse)?;
    out.push_str(&print_problem(&vc, cli.print_options()));
    Ok(0)
}

fn run(cli: &Cli, out: &mut String) -> Result<u8, Failure> {
    if cli.mode == Mode::Encode {
        return encode(cli, out);
    }
    if cli.files.is_empty() {
        return run_one(cli, &read_input(None)?, out);
    }
    let mut code = 0;
    for f in &cli.files {
        if cli.files.len() > 1 {
            let _ = writeln!(out, "% {}", f.display());
        }
        code = code.max(run_one(cli, &read_input(Some(f))?, out)?);
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("fool: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from(["fool"]).unwrap();
        assert_eq!(cli.mode, Mode::Prove);
        assert_eq!(cli.fool_paramodulation, OnOff::On);
        assert_eq!(cli.show_fool, OnOff::Off);
        assert_eq!(cli.theory_axioms, OnOff::On);
        assert_eq!(cli.show_preprocessing, OnOff::Off);
        assert_eq!(cli.time_limit, 60);
        assert_eq!(cli.bool_semantics(), BoolSemantics::ParamodulationReady);
    }

    #[test]
    fn flag_spellings() {
        let cli = Cli::try_parse_from([
            "fool",
            "--mode",
            "casc_sat",
            "--fool_paramodulation",
            "off",
            "--show_fool",
            "on",
            "--theory_axioms",
            "off",
            "--show_preprocessing",
            "on",
            "-t",
            "5",
            "a.p",
        ])
        .unwrap();
        assert_eq!(cli.mode, Mode::CascSat);
        assert_eq!(cli.bool_semantics(), BoolSemantics::Axiomatized);
        assert!(cli.show_fool.on() && cli.show_preprocessing.on());
        assert!(!cli.theory_axioms.on());
        assert_eq!(cli.time_limit, 5);
        assert_eq!(cli.files, [PathBuf::from("a.p")]);
    }

    #[test]
    fn bad_flag_value_is_a_usage_error() {
        let e = Cli::try_parse_from(["fool", "--show_fool", "yes"]).unwrap_err();
        assert_eq!(e.exit_code(), i32::from(EXIT_USAGE));
    }
}
