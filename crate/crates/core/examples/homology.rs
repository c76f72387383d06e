//! Polar homology dimensions and Euler characteristics of catalog spaces.

use polaris::chains::hp_report;

fn main() -> polaris::Result<()> {
    for name in ["P1", "P2", "P3", "P1xP1", "P1xP1xP1", "curve(1)", "curve(4)"] {
        let r = hp_report(name)?;
        let euler = r.euler().map(|e| e.to_string()).unwrap_or_else(|| "?".into());
        println!("{name:>10}  {}  euler {euler}", r.render());
    }
    Ok(())
}
