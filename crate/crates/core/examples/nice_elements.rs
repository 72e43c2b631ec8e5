//! Scaling finite sets and polynomials to nice ones: after multiplying by c
//! every nonzero element has the same left annihilator.

use orekit::bitset::Bits;
use orekit::orecore::SkewPolyRing;
use orekit::subext::{nice_annihilator_slice, nicify, nicify_poly, AnnihilatorSlice};
use orekit::FiniteRing;

fn main() -> orekit::Result<()> {
    let r = FiniteRing::zmod(12)?;
    let e = [2, 3, 4];
    let cert = nicify(&r, &e, None)?;
    println!("Z/12, E = {e:?}: c = {}, cE = {:?}, ann = {:?}", cert.c, cert.set, cert.annihilator);

    let l = r.left_ideal(&Bits::singleton(2));
    let cert = nicify(&r, &[1, 5, 7], Some(&l))?;
    println!("Z/12, E = [1, 5, 7] into the essential ideal L = {:?}: c = {}, cE = {:?}", l.to_vec(), cert.c, cert.set);

    let s = SkewPolyRing::commutative(r.clone(), 1)?;
    let f = s.parse("3*x0^2 + 6*x0 + 9")?;
    let (c, g) = nicify_poly(&r, &f)?;
    println!("{} scaled by {c}: {}", s.format(&f), s.format(&g));
    match nice_annihilator_slice(&s, &g, 3)? {
        AnnihilatorSlice::Pass { size } => println!("  ann(g) = S·ann_R(g) up to degree 3 ({size} elements)"),
        AnnihilatorSlice::Violation { witness, .. } => println!("  mismatch at {}", s.format(&witness)),
    }
    Ok(())
}
