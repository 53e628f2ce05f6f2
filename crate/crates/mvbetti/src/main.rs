use clap::Parser;
use mvbetti::cli::{run, JobSpec};
use std::process::ExitCode;

fn main() -> ExitCode {
    let job = JobSpec::parse();
    ExitCode::from(run(&job))
}
