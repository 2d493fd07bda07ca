use std::io::Write;

fn main() {
    let capacity = std::env::var(cartprod_cli::CAPACITY_ENV).ok();
    let result = cartprod_cli::run(std::env::args_os(), capacity.as_deref());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(result.exit_code);
}
