use clap::error::ErrorKind;
use clap::Parser;
use porism_cli::{run, Cli, ExitCode};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own usage code (2) would collide with the infertile exit code.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::Success,
                _ => ExitCode::Error,
            };
            std::process::exit(code as i32);
        }
    };
    let code = run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code as i32);
}
