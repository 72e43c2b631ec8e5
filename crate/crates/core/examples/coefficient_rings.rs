//! Building finite coefficient rings from specs and inspecting their elements.

use orekit::{build_finite, Side};

fn main() -> orekit::Result<()> {
    for spec in ["zmod:12", "product:zmod:2,zmod:3", "tri2:zmod:2"] {
        let r = build_finite(spec)?;
        r.validate_axioms()?;
        println!("{spec}: {} elements, characteristic {}, commutative {}", r.size(), r.characteristic(), r.is_commutative());
        for a in r.elements() {
            let ann: Vec<String> = r.left_annihilator(a).iter().map(|b| r.format(b)).collect();
            let kind = if r.is_unit(a) {
                "unit"
            } else if r.is_regular(a, Side::Left) {
                "left regular"
            } else {
                "zero divisor"
            };
            println!("  {:>10}  {kind:<12} ann = {{{}}}", r.format(a), ann.join(", "));
        }
    }
    Ok(())
}
