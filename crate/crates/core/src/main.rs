fn main() {
    let (code, out) = extpow::cli::run(std::env::args_os());
    if code == 0 {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    std::process::exit(code);
}
