//! Structural invariants of the library models.

use aq_core::models;

fn main() -> aq_core::Result<()> {
    let mut algebras = Vec::new();
    for n in 2..=5 {
        algebras.push(models::sphere(n)?);
    }
    for n in 1..=3 {
        algebras.push(models::cpn(n)?);
    }
    algebras.push(models::cp_infinity());
    algebras.push(models::truncated_cp(3)?);

    println!(
        "{:<8} {:>8} {:>8} {:>9} {:>4}",
        "algebra", "omega", "nil", "d1-depth", "WL"
    );
    for a in &algebras {
        let depth = a.d1_depth().map_or("-".to_string(), |d| d.to_string());
        let wl = a.wl_space().map_or("-".to_string(), |d| d.to_string());
        println!(
            "{:<8} {:>8} {:>8} {:>9} {:>4}",
            a.name(),
            a.omega().to_string(),
            a.nil().to_string(),
            depth,
            wl
        );
    }
    Ok(())
}
