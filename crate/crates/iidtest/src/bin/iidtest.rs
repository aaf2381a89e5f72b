use iidtest::cli;

fn main() {
    std::process::exit(cli::execute(std::env::args_os()));
}
