use std::io::Write;
use std::process;

use clap::Parser;

use catalan_cli::{run, Cli, ExitStatus};

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(output) => {
            let text = output.render(cli.command.format());
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                process::exit(ExitStatus::CheckFailed.code());
            }
            process::exit(output.status.code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(ExitStatus::Usage.code());
        }
    }
}
