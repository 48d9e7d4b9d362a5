mod args;
mod commands;
mod report;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use ddseq::Error;
use ddseq::problem::{Problem, parse_problem_str};
use serde_json::json;

use args::{Cli, Command, Common, Output};
use commands::Ctx;
use report::Outcome;

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_VERIFY: u8 = 5;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Inhomogeneous(_) | Error::InvalidInput(_) => EXIT_PARSE,
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Precondition(_) | Error::InfiniteLength(_) | Error::SopSearch(_) | Error::RingMismatch(_) => {
            EXIT_PRECONDITION
        }
    }
}

fn fail(context: &str, e: &Error) -> ExitCode {
    eprintln!("kz: {context}: {e}");
    ExitCode::from(exit_code(e))
}

fn load(path: &std::path::Path) -> Result<(Vec<u8>, Problem), Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let src = String::from_utf8(bytes.clone()).map_err(|_| Error::InvalidInput(format!("{}: not UTF-8", path.display())))?;
    Ok((bytes, parse_problem_str(&src)?))
}

fn dispatch(cmd: &Command, cx: &Ctx) -> ddseq::Result<Outcome> {
    match cmd {
        Command::Chi(_) => commands::chi(cx),
        Command::ChiTable(_) => commands::chi_table(cx),
        Command::Homology(_) => commands::homology(cx),
        Command::SeqCheck { level, .. } => commands::seq_check(cx, *level),
        Command::Fit(_) => commands::fit(cx),
        Command::Pk(_) => commands::pk(cx),
        Command::H0(_) => commands::h0(cx),
        Command::Lc { i, .. } => commands::lc(cx, *i),
        Command::Filtration(_) => commands::filtration(cx),
        Command::Seqcm(_) => commands::seqcm(cx),
        Command::Distinguished(_) => commands::distinguished(cx),
        Command::Verify { target, .. } => verify::run(cx, *target),
        Command::Fmt { .. } => unreachable!("handled before dispatch"),
    }
}

fn name(cmd: &Command) -> String {
    match cmd {
        Command::Chi(_) => "chi".into(),
        Command::ChiTable(_) => "chi-table".into(),
        Command::Homology(_) => "homology".into(),
        Command::SeqCheck { .. } => "seq-check".into(),
        Command::Fit(_) => "fit".into(),
        Command::Pk(_) => "pk".into(),
        Command::H0(_) => "h0".into(),
        Command::Lc { .. } => "lc".into(),
        Command::Filtration(_) => "filtration".into(),
        Command::Seqcm(_) => "seqcm".into(),
        Command::Distinguished(_) => "distinguished".into(),
        Command::Verify { target, .. } => format!("verify {}", verify::target_name(*target)),
        Command::Fmt { .. } => "fmt".into(),
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Chi(c)
        | Command::ChiTable(c)
        | Command::Homology(c)
        | Command::Fit(c)
        | Command::Pk(c)
        | Command::H0(c)
        | Command::Filtration(c)
        | Command::Seqcm(c)
        | Command::Distinguished(c) => c,
        Command::SeqCheck { common, .. } | Command::Lc { common, .. } | Command::Verify { common, .. } => common,
        Command::Fmt { .. } => unreachable!("fmt has no common flags"),
    }
}

/// The command echo: its name and every flag that affects the result.
fn echo(cmd: &Command, c: &Common) -> serde_json::Value {
    let mut v = json!({ "name": name(cmd), "k": c.k, "n": c.n, "grid": c.grid, "nmax": c.nmax });
    match cmd {
        Command::SeqCheck { level, .. } => v["level"] = json!(level.to_possible_value().map(|p| p.get_name().to_string())),
        Command::Lc { i, .. } => v["i"] = json!(i),
        _ => {}
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Fmt { problem } = &cli.command {
        return match load(problem) {
            Ok((_, p)) => {
                print!("{}", p.render());
                ExitCode::SUCCESS
            }
            Err(e) => fail(&problem.display().to_string(), &e),
        };
    }
    let c = common(&cli.command);
    let path = c.problem.display().to_string();
    let (bytes, problem) = match load(&c.problem) {
        Ok(v) => v,
        Err(e) => return fail(&path, &e),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = c.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return fail("worker pool", &Error::Resource(e.to_string())),
    };
    let start = Instant::now();
    let cx = Ctx { p: &problem, c };
    let outcome = match pool.install(|| dispatch(&cli.command, &cx)) {
        Ok(o) => o,
        Err(e) => return fail(&name(&cli.command), &e),
    };
    let millis = start.elapsed().as_millis();
    match c.out {
        Output::Json => {
            let doc = report::envelope(echo(&cli.command, c), &path, &bytes, &problem, outcome.result, millis);
            println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
        }
        Output::Table => {
            let title = problem.title.as_deref().unwrap_or(&path);
            let header = format!("kz {} | {title} | sha256 {}", name(&cli.command), &report::digest(&bytes)[..16]);
            print!("{}", report::render_text(&header, &outcome.text));
        }
    }
    if outcome.failed {
        return ExitCode::from(EXIT_VERIFY);
    }
    ExitCode::SUCCESS
}
