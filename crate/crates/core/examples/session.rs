//! Runs a session in the command language, in both output formats.
//!
//!     cargo run --example session -- path/to/file.pol

use polaris::cli::{run_source, Format, Options};

const DEMO: &str = "\
space S = P1xP1
orient S with 1/(x*y)*dx^dy
chain a in S = (hyp(x - 2), 1/y*dy)
chain b in S = (hyp(y - 3), 1/x*dx)
boundary a
intersect a b in S
product a b in S
property residue_sum 5
";

fn main() {
    let src = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable session"),
        None => DEMO.to_string(),
    };
    for format in [Format::Text, Format::Machine] {
        let t = run_source(&src, &Options { format, seed: 0 });
        print!("{}", t.text());
        println!("--");
    }
}
