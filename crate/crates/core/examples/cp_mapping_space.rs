//! Rational homotopy groups of map(CP^inf x CP^n, CP^inf x CP^m; f).
//!
//! Usage: cargo run --example cp_mapping_space -- [n m q1 q2 q3]

use aq_core::aq::aq_cohomology;
use aq_core::der::DerContext;
use aq_core::gca::Rational;
use aq_core::models;

fn main() -> aq_core::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let args = if args.is_empty() {
        ["2", "1", "0", "0", "1"].map(String::from).to_vec()
    } else {
        args
    };
    let n: u32 = args[0].parse().expect("n");
    let m: u32 = args[1].parse().expect("m");
    let q: Vec<Rational> = args[2..5]
        .iter()
        .map(|s| s.parse().expect("rational"))
        .collect();

    let f = models::cp_map(n, m, q[0].clone(), q[1].clone(), q[2].clone())?;
    let ctx = DerContext::new(f, false)?;
    for defect in ctx.chain_defects() {
        println!("note: {defect}");
    }
    let top = 2 * i64::from(n) + 2;
    let report = aq_cohomology(&ctx, 1..=top);
    println!("n={n} m={m} q=({}, {}, {})", q[0], q[1], q[2]);
    for d in &report.degrees {
        let flag = if d.is_homotopy_interpretable() {
            ""
        } else {
            "  (not a homotopy group)"
        };
        println!("pi_{} : rank {}{flag}", d.k, d.rank);
        for r in &d.representatives {
            let values: Vec<String> = r
                .describe(&ctx)
                .into_iter()
                .filter(|(_, v)| v != "0")
                .map(|(g, v)| format!("{g} -> {v}"))
                .collect();
            println!("    {}", values.join(", "));
        }
    }
    Ok(())
}
