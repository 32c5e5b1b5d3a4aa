fn main() {
    eprintln!("plhomeo: command-line interface not wired up yet");
    std::process::exit(2);
}
