mod args;
mod commands;
mod record;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::record::{write_records, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let records = match commands::run(cli.command, &cli.flags) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if let Err(e) = write_records(&mut out, &records, cli.flags.format).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    let bad: Vec<_> = records.iter().filter(|r| r.status != Status::Ok).collect();
    if bad.is_empty() {
        return ExitCode::SUCCESS;
    }
    eprintln!("{} of {} records did not pass:", bad.len(), records.len());
    for rec in bad {
        eprintln!("{}", rec.to_json());
    }
    ExitCode::from(1)
}
