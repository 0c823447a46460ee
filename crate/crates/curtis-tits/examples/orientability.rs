//! The orientability dichotomy: the root-group orientation search succeeds
//! exactly when the invariant lands inside the Frobenius factor.
//!
//! Run with: cargo run --example orientability

use curtis_tits::amalgam::{build_amalgam, orientation_search, Sign};
use curtis_tits::classify::enumerate_classes;
use curtis_tits::diagram::{spanning_structure, Diagram};
use curtis_tits::field::FieldCtx;

fn main() {
    let ctx = FieldCtx::new(2, 2).unwrap();
    for n in [4usize, 5] {
        let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let d = Diagram::cycle(&refs);
        let sd = spanning_structure(&d, 0).unwrap();
        println!("=== C{n} over GF(4) ===");
        for class in enumerate_classes(&d, &ctx, &sd).unwrap() {
            let a = build_amalgam(&d, &class.canonical, &ctx).unwrap();
            let outcome = orientation_search(&a).unwrap();
            match &outcome.witness {
                Some(w) => {
                    let signs: String = w
                        .signs
                        .iter()
                        .map(|s| if *s == Sign::Plus { '+' } else { '-' })
                        .collect();
                    println!(
                        "class {}: orientable, witness signs {}, closures all order {}",
                        class.key(&sd),
                        signs,
                        w.certificates[0].closure.len()
                    );
                }
                None => {
                    println!(
                        "class {}: not orientable ({} sign assignments exhausted)",
                        class.key(&sd),
                        outcome.assignments_tried
                    );
                }
            }
            assert_eq!(outcome.witness.is_some(), class.orientable);
        }
    }
}
