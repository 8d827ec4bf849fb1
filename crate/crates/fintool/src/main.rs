// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(fintool::cli::run(std::env::args_os()));
}
