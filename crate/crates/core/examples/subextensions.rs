//! Term-spanned subrings of R[x]: closure, the special certificate, lifting of
//! left ideals and the singular slice, over Z/12.

use std::sync::Arc;

use orekit::modlattice::ModuleInstance;
use orekit::orecore::SkewPolyRing;
use orekit::subext::{
    certify_special, closure_check, lift_ideal_check, singular_slice_check, Closure, LiftKind, SpecialData,
    Subextension,
};
use orekit::{FiniteRing, Term};

fn main() -> orekit::Result<()> {
    let r = FiniteRing::zmod(12)?;
    let s = Arc::new(SkewPolyRing::commutative(r.clone(), 1)?);
    let whole = Subextension::whole(s.clone());
    let even = Subextension::monoid("R[x^2]", s.clone(), vec![Term::from_exps(vec![2])])?;
    let broken = Subextension::explicit("span{1, x^2, x^3}", s.clone(), ["1", "x0^2", "x0^3"].iter().map(|t| Term::parse(t, 1)).collect::<orekit::Result<Vec<Term>>>()?, 4)?;

    for a in [&whole, &even, &broken] {
        match closure_check(a, 4)? {
            Closure::Pass { pairs } => println!("{}: closed ({pairs} pairs to degree 4)", a.name()),
            Closure::Violation { left, right, offending, .. } => {
                println!("{}: {left:?}·{right:?} reaches {offending:?}", a.name())
            }
        }
    }
    println!("special certificate for R[x]: {:?}", certify_special(&whole, &SpecialData::ambient(&s, 4), 4)?);

    let m = ModuleInstance::regular(&r);
    for l in m.enumerate_submodules(64)?.nonzero() {
        let class = m.classify_submodule(l)?;
        let kind = match (class.uniform, class.essential) {
            (true, _) => LiftKind::Uniform,
            (false, true) => LiftKind::Essential,
            _ => continue,
        };
        let v = lift_ideal_check(&even, l, kind, 2, 4, 1 << 16)?;
        println!("  L = {:?} ({kind:?}) in R[x^2]: {:?}", l.to_vec(), v.status());
    }
    let sing = singular_slice_check(&even, 4, 2, 4, 1 << 16)?;
    println!("singular slice of R[x^2] to degree 4: {:?}, sing(R) = {:?}, {} elements", sing.status, sing.sing_ring, sing.formula_size);
    Ok(())
}
