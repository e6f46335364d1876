//! Drive the command-line interface in process.

use dwyerkit::cli::execute;

fn main() {
    for args in [["dwyerkit", "list-builtins"].as_slice(), &["dwyerkit", "run", "glue-two"], &["dwyerkit", "run", "poset-s2"]] {
        let ex = execute(args.iter().copied());
        print!("{}", ex.stdout);
        println!("exit code {}", ex.code);
    }
}
