mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
    Input(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Input(_) => 4,
            Failure::Domain(_) => 5,
        }
    }
}

impl From<framelab::Error> for Failure {
    fn from(e: framelab::Error) -> Self {
        use framelab::Error as E;
        match e {
            E::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            E::Malformed(_) | E::EntryOutOfRange { .. } => Failure::Input(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => format!("usage: {m}"),
                Failure::Budget(m) => format!("budget exhausted: {m}"),
                Failure::Input(m) => format!("malformed input: {m}"),
                Failure::Domain(m) => m.clone(),
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
