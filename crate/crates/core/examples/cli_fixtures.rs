//! Runs every batch command on one built-in fixture, as the CLI does, and
//! prints the exit codes and written tables.

use cicalc::cli::{fixtures, run, Command};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "a2-line-maximal".into());
    let spec = fixtures::spec(&name).unwrap_or_else(|| panic!("unknown fixture {}", name));
    for command in Command::ALL {
        match run(command, &spec, 0) {
            Ok(out) => {
                let tables: Vec<&str> = out.tables.iter().map(|(n, _)| n.as_str()).collect();
                println!("{:<13} exit {} tables {:?}", command.name(), out.exit_code(), tables);
            }
            Err(e) => println!("{:<13} exit {} ({})", command.name(), e.exit_code(), e),
        }
    }
}
