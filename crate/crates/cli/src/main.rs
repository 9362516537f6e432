fn main() {
    let (code, stdout, stderr) = subdirect_cli::run(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    std::process::exit(code);
}
