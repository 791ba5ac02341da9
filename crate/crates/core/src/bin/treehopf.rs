use std::process::ExitCode;

use treehopf::cli::{run, Status};

fn main() -> ExitCode {
    let result = run(std::env::args().skip(1));
    match result.status {
        Status::Ok => println!("{}", result.payload),
        Status::Error if result.exit_code == 1 => println!("{}", result.payload),
        Status::Error => eprintln!("{}", result.payload),
    }
    ExitCode::from(result.exit_code as u8)
}
