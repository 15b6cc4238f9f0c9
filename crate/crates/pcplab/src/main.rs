use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcplab::json::report_to_string;
use pcplab::{parse_expr, run_suite, serialize, Format, SessionConfig, Suite};
use pcplab_core::{cocycle, Base, GElem, GroupoidElement, RelationReport, Session, Witness, Word};

#[derive(Parser)]
#[command(name = "pcplab", version, about = "Exact arithmetic in partial crossed product models of O_n and M_k(O_n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a relation suite: cuntz, groupoid, nest, matrix, algebra-axioms or all.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, env = "PCPLAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
        #[arg(long, default_value_t = 3)]
        max_k: u32,
        #[arg(long, default_value_t = 4)]
        max_exp: u32,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an expression and print its canonical form.
    Eval {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        json: bool,
        expr: String,
    },
    /// Print the cocycle (r,k) of the groupoid element (lambda z, mu z).
    Cocycle {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        mu: String,
    },
}

const USAGE: u8 = 2;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn digits(s: &str, base: Base) -> Result<Word, String> {
    let d = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| format!("bad digit `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    Word::new(d, base).map_err(|e| e.to_string())
}

fn print_text(report: &RelationReport) {
    for o in &report.outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} ({} checked)", o.label, o.checked);
        match (&o.witness, o.passed) {
            (Some(Witness::Element(a)), false) => println!("     witness: {a}"),
            (Some(Witness::Groups(gs)), false) => {
                let gs: Vec<String> = gs.iter().map(GElem::to_string).collect();
                println!("     witness: {}", gs.join(" "));
            }
            (Some(Witness::Note(s)), false) => println!("     witness: {s}"),
            _ => {}
        }
    }
    let failed = report.failures().count();
    println!("{}: {} relations, {} failed", report.suite, report.outcomes.len(), failed);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify { suite, n, k, seed, samples, max_word_len, max_k, max_exp, json } => {
            let cfg = SessionConfig { n, k, seed, samples, max_word_len, max_k, max_exp };
            let report = match suite.parse::<Suite>().and_then(|s| run_suite(s, &cfg)) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            if json {
                println!("{}", report_to_string(&report));
            } else {
                print_text(&report);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Eval { n, k, json, expr } => {
            let session = match Session::new(n, k) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            match parse_expr(&expr, session) {
                Ok(a) => {
                    println!("{}", serialize(&a, if json { Format::Json } else { Format::Text }));
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Cmd::Cocycle { n, lambda, mu } => {
            let base = match Base::new(n) {
                Ok(b) => b,
                Err(e) => return usage(e),
            };
            let (l, m) = match (digits(&lambda, base), digits(&mu, base)) {
                (Ok(l), Ok(m)) => (l, m),
                (Err(e), _) | (_, Err(e)) => return usage(e),
            };
            println!("{}", cocycle(&GroupoidElement::new(l, m, "z0")));
            ExitCode::SUCCESS
        }
    }
}
