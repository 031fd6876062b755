mod args;
mod cache;
mod input;
mod render;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use csm_core::harness::{self, SweepOptions, SweepReport};
use csm_core::{Error, WeylGroup};

use args::{Cli, Command, CsmArgs, Output, SweepArgs};
use cache::ResultCache;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Csm(a) => cmd_csm(&a),
        Command::Verify { identity, sweep } => {
            let identity: harness::Identity = identity.parse()?;
            let group = sweep_group(&sweep)?;
            let report = harness::verify(&group, identity, &sweep_options(&sweep))?;
            emit_report(&report, &sweep.output)?;
            Ok(if report.passed() { 0 } else { EXIT_FAILURE })
        }
        Command::Conjecture { name, sweep } => {
            let conj: harness::Conjecture = name.parse()?;
            let group = sweep_group(&sweep)?;
            let report = harness::conjecture(&group, conj, &sweep_options(&sweep))?;
            emit_report(&report, &sweep.output)?;
            if !report.passed() {
                eprintln!(
                    "warning: {} counterexample(s) to `{}`; see the report",
                    report.violations.len(),
                    report.identity
                );
            }
            Ok(0)
        }
    }
}

fn sweep_group(a: &SweepArgs) -> Result<WeylGroup, Error> {
    if let Some(n) = a.n {
        harness::check_order(harness::symmetric_order(n), a.force)?;
    }
    let cartan = input::cartan(a.cartan_type.as_deref(), a.n)?;
    WeylGroup::new(cartan)
}

fn sweep_options(a: &SweepArgs) -> SweepOptions {
    SweepOptions {
        force: a.force,
        sample: a.sample,
        seed: a.seed,
    }
}

fn cmd_csm(a: &CsmArgs) -> Result<u8, Error> {
    let cartan = input::cartan(a.cartan_type.as_deref(), a.n)?;
    let group = WeylGroup::new(cartan)?;
    let w = input::element(&group, &a.w)?;
    let v = a.v.as_deref().map(|v| input::element(&group, v)).transpose()?;
    let format = a.output.format();
    let cache = ResultCache::from_flag(a.cache);
    let key = cache::Key {
        kind: if a.equivariant { "csm-equivariant" } else { "csm" },
        cartan: group.cartan(),
        w: group.name(w),
        v: v.map(|v| group.name(v)),
        format: format.extension(),
    };
    let text = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(hit) => hit,
        None => {
            let table = render::csm_table(&group, w, v, a.equivariant);
            let text = render::table_text(&table, format, a.equivariant);
            if let Some(c) = &cache {
                c.put(&key, &text)?;
            }
            text
        }
    };
    write_output(&text, &a.output)?;
    Ok(0)
}

fn emit_report(report: &SweepReport, out: &Output) -> Result<(), Error> {
    write_output(&render::report_text(report, out.format()), out)
}

fn write_output(text: &str, out: &Output) -> Result<(), Error> {
    match &out.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Parse(format!("stdout: {e}")))
        }
    }
}
