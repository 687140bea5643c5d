use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use vf_core::ci::{exit_code, list_rules, EXIT_ERROR};
use vf_core::pipeline::{collect_inputs, frontend, Pipeline};
use vf_core::report::{render_html, summarize, to_xml};
use vf_core::{default_configs, load_config};

/// Validates source files against configurable coding guidelines.
#[derive(Debug, Parser)]
#[command(name = "vf", version)]
struct Cli {
    /// Input language: minicpp or seqdiag.
    #[arg(long)]
    lang: String,

    /// Rule configuration file.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Where to write the XML results.
    #[arg(long, default_value = "vfresults.xml")]
    xml_out: PathBuf,

    /// Where to write the HTML report.
    #[arg(long)]
    html_out: Option<PathBuf>,

    /// Creation time recorded in the results (ISO-8601); defaults to the current UTC time.
    #[arg(long)]
    timestamp: Option<String>,

    /// Let SHOULD findings fail the run as well.
    #[arg(long)]
    strict: bool,

    /// Print the language's rules and exit.
    #[arg(long)]
    list_rules: bool,

    /// Files, or directories scanned by extension.
    paths: Vec<PathBuf>,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("vf: {message}");
    ExitCode::from(EXIT_ERROR as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let frontend = match frontend(&cli.lang) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    if cli.list_rules {
        return match list_rules(&cli.lang) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        };
    }

    let registry = frontend.registry();
    let configs = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match load_config(&text, &registry) {
                Ok(c) => c,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            },
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
        None => default_configs(&registry),
    };
    if cli.paths.is_empty() {
        return fail("no input paths given");
    }
    let pipeline = match Pipeline::new(frontend, registry, configs) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };

    let created = cli.timestamp.clone().unwrap_or_else(|| chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string());
    let inputs = collect_inputs(&cli.paths, frontend);
    let results = pipeline.run(&inputs, &created);

    for d in &results.diagnostics {
        eprintln!("{d}");
    }
    if let Err(e) = std::fs::write(&cli.xml_out, to_xml(&results)) {
        return fail(format!("{}: {e}", cli.xml_out.display()));
    }
    let summary = summarize(&results);
    if let Some(path) = &cli.html_out {
        if let Err(e) = std::fs::write(path, render_html(&results, &summary)) {
            return fail(format!("{}: {e}", path.display()));
        }
    }

    for report in results.reports.iter().filter(|r| !r.findings.is_empty()) {
        println!("{} [{}]: {} findings", report.rule.id, report.rule.priority, report.findings.len());
    }
    println!("{} files, {summary}", results.files.len());
    ExitCode::from(exit_code(&results, cli.strict) as u8)
}
