//! Inverting the terms of a subextension: the group they generate and
//! arithmetic in the skew Laurent ring over Z/3×Z/3.

use orekit::orecore::{laurent_localize, LaurentRing};
use orekit::termorder::LaurentTerm;
use orekit::{build_finite, CoeffMap};

fn main() -> orekit::Result<()> {
    let gens: Vec<LaurentTerm> = ["x0^2", "x0*x1", "x1^3"].iter().map(|t| LaurentTerm::parse(t, 2)).collect::<orekit::Result<_>>()?;
    let g = laurent_localize(&gens)?;
    println!("terms x^2, xy, y^3 generate a group of rank {} with basis {:?}", g.rank(), g.basis);
    for t in ["x0", "x0^-1*x1", "x1"] {
        let t = LaurentTerm::parse(t, 2)?;
        println!("  {t:?} in the group: {}", g.contains(&t));
    }

    let r = build_finite("product:zmod:3,zmod:3")?;
    let swap: Vec<usize> = r
        .elements()
        .map(|a| {
            let t = r.format(a);
            let (u, v) = t.trim_matches(|c| c == '(' || c == ')').split_once(',').unwrap();
            r.parse(&format!("({v},{u})"))
        })
        .collect::<orekit::Result<_>>()?;
    // x0 swaps the factors, x1 commutes with coefficients
    let l = LaurentRing::new(r.clone(), vec![CoeffMap::Table(swap), CoeffMap::Identity])?;
    let x = l.monomial(r.one(), LaurentTerm::parse("x0", 2)?);
    let xi = l.monomial(r.one(), LaurentTerm::parse("x0^-1", 2)?);
    let a = l.monomial(r.parse("(1,2)")?, LaurentTerm::one(2));
    let show = |f| l.to_standard(&f).map(|g| g.format(&r)).unwrap_or_else(|| format!("{f:?}"));
    println!("x·x^-1 = {}", show(l.mul(&x, &xi)));
    println!("x·(1,2) = {}, (1,2)·x = {}", show(l.mul(&x, &a)), show(l.mul(&a, &x)));
    println!("x^-1·(1,2)·x = {}", show(l.mul(&l.mul(&xi, &a), &x)));
    Ok(())
}
