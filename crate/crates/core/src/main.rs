use clap::Parser;

use hamnf::cli::{execute, Args};

fn main() {
    std::process::exit(execute(&Args::parse()));
}
