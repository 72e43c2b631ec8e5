//! Left ideals of a finite ring: the lattice, uniform dimension, the singular
//! ideal and primeness.

use orekit::build_finite;
use orekit::modlattice::{primeness, ModuleInstance};

fn main() -> orekit::Result<()> {
    for spec in ["zmod:12", "zmod:30", "product:zmod:4,zmod:2", "tri2:zmod:2"] {
        let r = build_finite(spec)?;
        let m = ModuleInstance::regular(&r);
        let lattice = m.enumerate_submodules(64)?;
        let u = m.uniform_dimension(64)?;
        let p = primeness(&r)?;
        let show = |b: &orekit::bitset::Bits| format!("{{{}}}", b.iter().map(|x| r.format(x)).collect::<Vec<_>>().join(","));
        println!("{spec}");
        println!("  {} left ideals, udim {}", lattice.len(), u.dim);
        for l in &u.family {
            println!("    uniform summand {}", show(l));
        }
        println!("  singular ideal {}", show(&m.singular_submodule()));
        println!("  prime {}, semiprime {}", p.prime, p.semiprime);
    }
    Ok(())
}
