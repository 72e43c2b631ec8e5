//! Skew multiplication: the ring over Z/2×Z/2 twisted by swapping factors, and the
//! integer ring z·x = y·z, z·y = (x + y)·z whose words in xz, x²z never collide.

use std::sync::Arc;

use orekit::orecore::SkewPolyRing;
use orekit::subext::named::{pretty, NamedRing};
use orekit::subext::{build_named_example, free_words_distinct, NamedParams};
use orekit::{build_finite, CoeffMap, FiniteRing};

fn swap_table(r: &FiniteRing) -> orekit::Result<Vec<usize>> {
    r.elements()
        .map(|a| {
            let t = r.format(a);
            let (u, v) = t.trim_matches(|c| c == '(' || c == ')').split_once(',').unwrap();
            r.parse(&format!("({v},{u})"))
        })
        .collect()
}

fn main() -> orekit::Result<()> {
    let r = build_finite("product:zmod:2,zmod:2")?;
    let swap = swap_table(&r)?;
    let s = SkewPolyRing::univariate(r, CoeffMap::Table(swap), CoeffMap::Zero)?;
    let f = s.parse("x0 + (1,0)")?;
    let g = s.parse("(0,1)*x0^2 + (1,1)")?;
    println!("over Z/2×Z/2 with x·(a,b) = (b,a)·x:");
    println!("  ({}) * ({}) = {}", s.format(&f), s.format(&g), s.format(&s.mul(&f, &g)?));
    println!("  ({}) * ({}) = {}", s.format(&g), s.format(&f), s.format(&s.mul(&g, &f)?));
    println!("  ({})^3 = {}", s.format(&f), s.format(&s.pow(&f, 3)?));

    let ex = build_named_example(&NamedParams::Example2)?;
    let NamedRing::Integer(s) = &ex.ring else { unreachable!() };
    let s: Arc<_> = s.clone();
    let gens = [("u", s.parse("x0*x2")?), ("v", s.parse("x0^2*x2")?)];
    let rep = free_words_distinct(&s, &gens, 6)?;
    println!("over Z with z·x = y·z, z·y = (x + y)·z:");
    for (w, p) in &rep.length_two {
        println!("  {w} = {}", pretty(p, &["x", "y", "z"]));
    }
    println!("  words per length {:?}, all distinct: {}", rep.counts, rep.distinct());
    Ok(())
}
