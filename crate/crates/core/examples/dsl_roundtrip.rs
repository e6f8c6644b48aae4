//! Parsing, printing and diagnostics of the `.aq` language.

use aq_core::dsl;

const SOURCE: &str = "
# CP^2 and the cohomology of CP^inf x CP^1
algebra Y { gen z : 2; gen x : 2; gen xp : 5; d xp = x^3; }
algebra B { gen w : 2; gen y : 2; rel y^2; }
morphism f : Y -> B { z |-> 1/2 w; x |-> y; xp |-> 0; }
";

fn main() {
    let file = dsl::parse(SOURCE).expect("valid input");
    let printed = dsl::print(&file);
    print!("{printed}");
    assert_eq!(dsl::parse(&printed).unwrap(), file);

    let f = file.morphism("f").unwrap();
    println!("\nf is a chain map: {}", f.is_chain_map());

    for bad in [
        "algebra Y { gen x : 2; gen xp : 5; d xp = x^2; }",
        "algebra Y { gen x : 2; gen x : 4; }",
        "algebra Y { gen x 2; }",
        "algebra A { gen x : 2; }\nalgebra B { gen y : 2; }\nmorphism f : A -> B { x |-> q; }",
    ] {
        println!("{}", dsl::parse(bad).unwrap_err());
    }
}
