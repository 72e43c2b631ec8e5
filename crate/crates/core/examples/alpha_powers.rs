//! Closed forms behind the family: p-adic margins of C(p^r, n)·p^n, the
//! coefficients of α^m(x^n), and Pisano periods as orders of the Fibonacci twist.

use orekit::family5::{build_family5, Family5Params};
use orekit::orecore::{alpha_power_closed, fib_power, order_of_alpha, padic_margin, BcoefTable};

fn main() -> orekit::Result<()> {
    println!("v_p(C(p^r, n)·p^n) for p = 3, r = 2:");
    for n in 1..=9 {
        let m = padic_margin(3, 2, n)?;
        println!("  n = {n}: v = {}, s_p(n) = {}, v_p(n!) = {}", m.v_term, m.digit_sum, m.v_fact);
    }

    let params = Family5Params::new(2, 2, 2, 1, 1)?;
    let f = build_family5(&params)?;
    let table = BcoefTable::new(2)?;
    println!("α^m(x) over Z/8 with α(x) = x + 2x^2:");
    for m in 0..=4 {
        let (_, closed) = alpha_power_closed(&table, 1, m, 2, 2, 2)?;
        let direct = f.ring.apply_power_endo(1, m, &f.term(1, 0))?;
        println!("  m = {m}: {}  (substitution agrees: {})", f.ring.format(&closed), closed == direct);
    }

    println!("order of α(x) = y, α(y) = x + y over Z/m:");
    for m in [2, 3, 4, 5, 10, 0] {
        println!("  m = {m}: {:?}", order_of_alpha(m));
    }
    let (a, b) = fib_power(10, 0);
    println!("α^10(x) = {a}·x + {b}·y over Z");
    Ok(())
}
