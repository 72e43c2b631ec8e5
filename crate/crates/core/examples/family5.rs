//! The parametrized family over Z/p^{r+1} with α(x) = x + p·x^e: the order of
//! α, the bounds S_m and S̄_m, closure of span(sT) and the witnesses that move
//! terms of T̃ into sT.

use orekit::family5::{
    bar_terms, bounds, build_family5, central_check, closure_sweep, ne_witness, set_witness, tilde_terms,
    Family5Params,
};

fn main() -> orekit::Result<()> {
    for (p, r, e, c, d) in [(2, 2, 2, 1, 1), (2, 2, 3, 1, 2), (3, 1, 3, 2, 1)] {
        let params = Family5Params::new(p, r, e, c, d)?;
        let f = build_family5(&params)?;
        println!("p = {p}, r = {r}, e = {e}, c = {c}, d = {d} over Z/{}", params.modulus());
        for w in params.warnings() {
            println!("  warning: {w}");
        }
        println!("  α has order {} ({:?})", f.order.order, f.order);
        let b = bounds(&params, 5);
        println!("  S = {:?}, r̂ = {}, S̄ = {:?}", b.s, b.r_hat, b.s_bar);
        println!("  central powers: {:?}", central_check(&f, 6)?);
        println!("  first sT terms: {:?}", bar_terms(&params, 2).iter().map(|t| f.ring.format(&f.ring.monomial(1, t.clone()))).collect::<Vec<_>>());
        match closure_sweep(&f, 6)? {
            Ok(n) => println!("  {n} products of sT pairs stay in span(sT)"),
            Err(bad) => println!("  {}·{} = {} leaves sT", bad.left, bad.right, bad.product),
        }
        let taus = tilde_terms(&params, 6);
        for t in taus.iter().take(4) {
            let w = ne_witness(&f, t)?;
            println!("  τ = x^{}y^{}: υ = x^{}y^{}, υτ = x^{}y^{} ({:?})", w.tau.0, w.tau.1, w.upsilon.0, w.upsilon.1, w.product.0, w.product.1, w.case);
        }
        println!("  one υ for the first 6 T̃ terms: {:?}", set_witness(&f, &taus[..6.min(taus.len())])?);
    }
    Ok(())
}
