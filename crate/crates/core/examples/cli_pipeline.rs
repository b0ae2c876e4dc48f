// fit, generate, measure and compare through the command-line layer.

use std::error::Error;
use std::path::Path;

use bter::cli;

fn bter(args: &[&str]) -> Result<String, Box<dyn Error>> {
    let mut out = Vec::new();
    cli::run(std::iter::once("bter").chain(args.iter().copied()), &mut out)?;
    Ok(String::from_utf8(out)?)
}

pub fn run_in(dir: &Path) -> Result<String, Box<dyn Error>> {
    let d = |name: &str| dir.join(name).to_string_lossy().into_owned();
    bter(&[
        "fit", "--family", "dgln", "--dbar", "12", "--dstar", "500", "--n", "5000", "--cmax", "0.5", "--gcc", "0.1",
        "--seed", "1", "--out-dir", &d("target"),
    ])?;
    let report = bter(&[
        "generate", "--dd", &d("target/dd.txt"), "--ccd", &d("target/ccd.txt"), "--seed", "2", "--partitions", "2",
        "--out", &d("edges.txt"),
    ])?;
    bter(&["measure", "--edges", &d("edges.txt"), "--out-dir", &d("measured"), "--csv"])?;
    let cmp = bter(&[
        "compare", "--dd-a", &d("target/dd.txt"), "--ccd-a", &d("target/ccd.txt"), "--dd-b", &d("measured/dd.txt"),
        "--ccd-b", &d("measured/ccd.txt"), "--out", &d("compare.csv"),
    ])?;
    print!("{report}{cmp}");
    Ok(cmp)
}

pub fn run() -> Result<String, Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    run_in(dir.path())
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
