//! Acceptance run: every criterion prints one `[PASS]`/`[FAIL]` line and the
//! binary exits nonzero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orekit::bitset::Bits;
use orekit::coeffring::zoo;
use orekit::family5::{
    build_family5, closure_sweep, formula_check, ne_witness, tilde_terms, valuation_sweep, Family5Params,
};
use orekit::modlattice::{nicely_essential_subrings, ModuleInstance};
use orekit::orecore::{order_of_alpha, Order, SkewPolyRing};
use orekit::subext::{
    build_named_example, free_words_distinct, lift_ideal_check, named::{pretty, NamedRing}, nicify,
    singular_slice_check, LiftKind, LiftVerdict, NamedParams, Subextension,
};
use orekit::suite::{run_suite, SubextConfig, SuiteConfig};
use orekit::verdict::Status;
use orekit::{FiniteRing, Term};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn z(n: u64) -> FiniteRing {
    FiniteRing::zmod(n).unwrap()
}

fn distinct_primes(mut n: u64) -> usize {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            count += 1;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    count + usize::from(n > 1)
}

fn v_p(mut n: u64, p: u64) -> u64 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn v_fact(n: u64, p: u64) -> u64 {
    (1..=n).map(|i| v_p(i, p)).sum()
}

fn valuations() -> Outcome {
    let start = Instant::now();
    let checked = valuation_sweep(&[2, 3, 5], &[1, 2, 3]).map_err(|e| e.to_string())?;
    let checked = checked.map_err(|(p, r, n)| format!("p = {p}, r = {r}, n = {n}"))?;
    for p in [2u64, 3, 5] {
        for r in 1..=3u32 {
            let big = p.pow(r);
            for n in 1..=big {
                // v_p(C(N, n)) from factorial valuations summed term by term
                let v = v_fact(big, p) - v_fact(n, p) - v_fact(big - n, p) + n;
                ensure(v > r as u64, || format!("oracle: v_p(C({big},{n})·{p}^{n}) = {v}"))?;
                let digits = {
                    let (mut m, mut s) = (n, 0);
                    while m > 0 {
                        s += m % p;
                        m /= p;
                    }
                    s
                };
                ensure(v_fact(n, p) * (p - 1) == n - digits, || format!("Legendre fails at {p}, {n}"))?;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{checked} triples"))
}

fn order_triples() -> Outcome {
    let start = Instant::now();
    for (p, r, e) in [(2, 2, 2), (2, 2, 3), (3, 2, 2)] {
        let f = build_family5(&Family5Params::new(p, r, e, 1, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let s = &f.ring;
        let x = s.var(0);
        let pr = p.pow(r as u32);
        let mut g = x.clone();
        let mut fixed_at = None;
        for k in 1..=pr {
            g = s.apply_alpha(1, &g).map_err(|e| e.to_string())?;
            if g == x && fixed_at.is_none() {
                fixed_at = Some(k);
            }
        }
        ensure(g == x, || format!("({p},{r},{e}): α^{pr}(x) ≠ x"))?;
        ensure(fixed_at == Some(pr), || format!("({p},{r},{e}): first fixed at {fixed_at:?}"))?;
        ensure(f.order.holds(), || format!("({p},{r},{e}): certificate {:?}", f.order))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok("order p^r at all three".into())
}

fn closed_formula() -> Outcome {
    let mut total = 0;
    for (p, r, e) in [(2, 2, 2), (2, 2, 3), (3, 2, 2)] {
        let f = build_family5(&Family5Params::new(p, r, e, 1, 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        total += formula_check(&f, 5).map_err(|e| e.to_string())?.map_err(|(n, m)| format!("({p},{r},{e}) n = {n}, m = {m}"))?;
    }
    ensure(total == 3 * 36, || format!("{total} comparisons"))?;
    Ok(format!("{total} exact comparisons"))
}

fn closure_and_witnesses() -> Outcome {
    let start = Instant::now();
    let (mut pairs, mut witnesses) = (0, 0);
    for (p, r, e, c, d) in [(2, 2, 2, 1, 1), (2, 2, 3, 1, 2)] {
        let f = build_family5(&Family5Params::new(p, r, e, c, d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        pairs += closure_sweep(&f, 6)
            .map_err(|e| e.to_string())?
            .map_err(|bad| format!("{}·{} = {} leaves sT", bad.left, bad.right, bad.product))?;
        for t in tilde_terms(&f.params, 20) {
            let w = ne_witness(&f, &t).map_err(|e| e.to_string())?;
            ensure(w.verified, || format!("no witness for {:?}: {w:?}", w.tau))?;
            witnesses += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{pairs} pairs, {witnesses} witnesses"))
}

fn uniform_dimension_zoo() -> Outcome {
    let rings = zoo(60);
    for r in &rings {
        let m = ModuleInstance::regular(r);
        let u = m.uniform_dimension(64).map_err(|e| format!("{}: {e}", r.spec()))?;
        ensure(u.family.len() == u.max_independent.len(), || {
            format!("{}: certificate {} vs family {}", r.spec(), u.family.len(), u.max_independent.len())
        })?;
        ensure(m.is_independent(&u.family) && m.is_essential(&m.sum_all(&u.family)), || format!("{}: bad certificate", r.spec()))?;
        ensure(u.family.iter().all(|l| m.is_uniform(l)), || format!("{}: non-uniform summand", r.spec()))?;
        if let Some(n) = r.spec().strip_prefix("zmod:").and_then(|n| n.parse::<u64>().ok()) {
            ensure(u.dim == distinct_primes(n), || format!("Z/{n}: udim {} vs {}", u.dim, distinct_primes(n)))?;
        }
    }
    Ok(format!("{} rings", rings.len()))
}

fn polynomial_ring(r: &FiniteRing) -> Arc<SkewPolyRing<FiniteRing>> {
    Arc::new(SkewPolyRing::commutative(r.clone(), 1).unwrap())
}

fn subextensions(r: &FiniteRing) -> Vec<Subextension> {
    let s = polynomial_ring(r);
    vec![
        Subextension::whole(s.clone()),
        Subextension::monoid("T(x^2)", s, vec![Term::from_exps(vec![2])]).unwrap(),
    ]
}

fn lifting() -> Outcome {
    let mut checked = 0;
    for n in [4, 6, 12] {
        let r = z(n);
        let m = ModuleInstance::regular(&r);
        let lattice = m.enumerate_submodules(64).map_err(|e| e.to_string())?;
        for a in subextensions(&r) {
            for l in lattice.nonzero() {
                for (kind, applies) in [(LiftKind::Uniform, m.is_uniform(l)), (LiftKind::Essential, m.is_essential(l))] {
                    if !applies {
                        continue;
                    }
                    let v = lift_ideal_check(&a, l, kind, 2, 4, 1 << 16).map_err(|e| e.to_string())?;
                    let ctx = || format!("Z/{n} {} {kind:?} {:?}", a.name(), l.to_vec());
                    match v {
                        LiftVerdict::Pass { .. } => checked += 1,
                        other => return Err(format!("{}: {other:?}", ctx())),
                    }
                }
            }
        }
    }
    Ok(format!("{checked} lifts"))
}

fn singular_slices() -> Outcome {
    let mut out = Vec::new();
    for (n, d) in [(6, 4), (30, 4), (4, 3)] {
        let r = z(n);
        for a in subextensions(&r) {
            let s = singular_slice_check(&a, d, 2, 4, 1 << 16).map_err(|e| e.to_string())?;
            ensure(s.status == Status::Pass, || format!("Z/{n} {}: {:?}", a.name(), s.failure))?;
            let sing = ModuleInstance::regular(&r).singular_submodule().to_vec();
            ensure(s.sing_ring == sing, || format!("Z/{n}: sing {:?}", s.sing_ring))?;
            if n != 4 {
                ensure(s.sing_ring == vec![0] && s.formula_size == 1, || format!("Z/{n}: slice not zero"))?;
            } else {
                ensure(s.sing_ring == vec![0, 2], || format!("Z/4: sing {:?}", s.sing_ring))?;
            }
            out.push(format!("Z/{n} {}: {}", a.name(), s.formula_size));
        }
    }
    Ok(out.join(", "))
}

fn nicify_random() -> Outcome {
    let rings: Vec<FiniteRing> = zoo(32).into_iter().filter(|r| r.size() <= 32).collect();
    let lattices: Vec<Vec<Bits>> = rings
        .iter()
        .map(|r| {
            let m = ModuleInstance::regular(r);
            m.enumerate_submodules(64).unwrap().nonzero().filter(|l| m.is_essential(l)).copied().collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut anchored = 0;
    for case in 0..500 {
        let i = rng.gen_range(0..rings.len());
        let r = &rings[i];
        let l = &lattices[i][rng.gen_range(0..lattices[i].len())];
        let k = rng.gen_range(1..=4);
        let e: Vec<usize> = (0..k).map(|_| rng.gen_range(1..r.size())).collect();
        let cert = nicify(r, &e, Some(l)).map_err(|err| format!("case {case} {} {e:?}: {err}", r.spec()))?;
        let ctx = || format!("case {case}: {} E = {e:?} L = {:?}", r.spec(), l.to_vec());
        let image: Vec<usize> = e.iter().map(|&x| r.mul(cert.c, x)).filter(|&x| x != 0).collect();
        ensure(!image.is_empty(), || format!("{}: empty", ctx()))?;
        let ann = |x: usize| -> Vec<usize> { r.elements().filter(|&y| r.mul(y, x) == 0).collect() };
        let ann0 = ann(image[0]);
        ensure(image.iter().all(|&x| ann(x) == ann0), || format!("{}: not nice", ctx()))?;
        ensure(image.iter().all(|&x| l.contains(x)), || format!("{}: outside L", ctx()))?;
        let ann_e: Vec<usize> = r.elements().filter(|&y| e.iter().all(|&x| r.mul(y, x) == 0)).collect();
        if let Some(&a) = e.iter().find(|&&a| ann(a).iter().all(|y| ann_e.contains(y))) {
            anchored += 1;
            let ann_out: Vec<usize> = r.elements().filter(|&y| image.iter().all(|&x| r.mul(y, x) == 0)).collect();
            ensure(ann_out == ann(r.mul(cert.c, a)), || format!("{}: ann(cE) ≠ ann(ca)", ctx()))?;
        }
    }
    Ok(format!("500 cases, {anchored} with an anchor"))
}

fn free_words() -> Outcome {
    let start = Instant::now();
    let ex = build_named_example(&NamedParams::Example2).map_err(|e| e.to_string())?;
    let NamedRing::Integer(s) = &ex.ring else { return Err("example2 is over the integers".into()) };
    let u = s.parse("x0*x2").unwrap();
    let v = s.parse("x0^2*x2").unwrap();
    let rep = free_words_distinct(s.as_ref(), &[("u", u), ("v", v)], 4).map_err(|e| e.to_string())?;
    let table: Vec<(String, String)> = rep.length_two.iter().map(|(w, p)| (w.clone(), pretty(p, &["x", "y", "z"]))).collect();
    let want = [("u·u", "xyz^2"), ("u·v", "xy^2z^2"), ("v·u", "x^2yz^2"), ("v·v", "x^2y^2z^2")];
    ensure(table.iter().map(|(a, b)| (a.as_str(), b.as_str())).eq(want), || format!("table {table:?}"))?;
    ensure(rep.distinct() && rep.counts == vec![2, 4, 8, 16], || format!("words {:?} {:?}", rep.collision, rep.counts))?;
    for e in [2, 3] {
        let ex = build_named_example(&NamedParams::Example3 { modulus: 4, e }).map_err(|e| e.to_string())?;
        let NamedRing::Finite(s) = &ex.ring else { return Err("example3 is finite".into()) };
        let gens = [("u1", s.parse("x0*x1").unwrap()), ("u2", s.parse("x0^2*x1").unwrap())];
        let rep = free_words_distinct(s.as_ref(), &gens, 5).map_err(|e| e.to_string())?;
        ensure(rep.distinct() && rep.counts.len() == 5, || format!("e = {e}: {:?}", rep.collision))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok("table verbatim, words distinct".into())
}

/// Smallest n ≥ 1 with [[0,1],[1,1]]^n ≡ I (mod m), by stepping the matrix.
fn matrix_order(m: u64) -> u64 {
    let step = |a: [u64; 4]| [a[1] % m, (a[0] + a[1]) % m, a[3] % m, (a[2] + a[3]) % m];
    let id = [1 % m, 0, 0, 1 % m];
    let mut a = step(id);
    let mut n = 1;
    while a != id {
        a = step(a);
        n += 1;
    }
    n
}

fn pisano() -> Outcome {
    for (m, want) in [(2, 3), (3, 8), (5, 20), (10, 60)] {
        let got = order_of_alpha(m);
        ensure(got == Order::Finite(want) && matrix_order(m) == want, || format!("m = {m}: {got:?}, oracle {}", matrix_order(m)))?;
    }
    ensure(order_of_alpha(0) == Order::Infinite, || "m = 0 not flagged infinite".into())?;
    Ok("3, 8, 20, 60 and infinite".into())
}

fn singular_by_scan(s: &FiniteRing, carrier: &[usize]) -> Vec<usize> {
    // x is singular iff its annihilator in the carrier meets every nonzero cyclic left ideal
    carrier
        .iter()
        .copied()
        .filter(|&x| {
            let ann: Vec<usize> = carrier.iter().copied().filter(|&y| s.mul(y, x) == 0).collect();
            carrier.iter().filter(|&&c| c != 0).all(|&c| {
                carrier.iter().any(|&t| {
                    let tc = s.mul(t, c);
                    tc != 0 && ann.contains(&tc)
                })
            })
        })
        .collect()
}

fn essential_subrings() -> Outcome {
    let (mut rings, mut pairs, mut proper) = (0, 0, 0);
    for s in zoo(16) {
        rings += 1;
        let found = nicely_essential_subrings(&s).map_err(|e| e.to_string())?;
        let all: Vec<usize> = s.elements().collect();
        let sing_s = singular_by_scan(&s, &all);
        // Left multiplication that is injective on a finite S is onto, so only A = S can qualify.
        for a_set in s.subrings() {
            let a: Vec<usize> = a_set.to_vec();
            let qualifies = a.iter().any(|&c| all[1..].iter().all(|&x| s.mul(c, x) != 0 && a.contains(&s.mul(c, x))));
            ensure(qualifies == (a.len() == s.size()), || format!("{} ⊇ {a:?}: scan says {qualifies}", s.spec()))?;
        }
        for t in found {
            pairs += 1;
            proper += usize::from(t.subring.len() < s.size());
            let v = t.violations();
            ensure(v.is_empty(), || format!("{} ⊇ {:?}: {v:?}", s.spec(), t.subring))?;
            let sing_a = singular_by_scan(&s, &t.subring);
            let cap: Vec<usize> = t.subring.iter().copied().filter(|x| sing_s.contains(x)).collect();
            ensure(sing_a == cap, || format!("{} ⊇ {:?}: scan {sing_a:?} vs {cap:?}", s.spec(), t.subring))?;
        }
    }
    Ok(format!("{pairs} pairs over {rings} rings, {proper} proper"))
}

fn determinism() -> Outcome {
    for suite in ["lattice", "family5", "examples", "laurent", "special"] {
        let mut cfg = SuiteConfig::new(suite);
        cfg.seed = 7;
        let a = run_suite(&cfg).map_err(|e| e.to_string())?.without_timing().to_json();
        let b = run_suite(&cfg).map_err(|e| e.to_string())?.without_timing().to_json();
        ensure(a == b, || format!("{suite}: runs differ"))?;
    }
    let mut cfg = SuiteConfig::new("special");
    cfg.subext = Some(SubextConfig::Explicit { terms: vec!["1".into(), "x0^2".into()], complete_to: 4 });
    let rep = run_suite(&cfg).map_err(|e| e.to_string())?;
    ensure(rep.exit_code() == 1, || "corrupted closure passed".into())?;
    let w = &rep.checks[0].witness;
    ensure(w["left"].is_string() && w["right"].is_string(), || format!("witness {w}"))?;
    Ok(format!("5 suites stable, corrupted closure: {}·{}", w["left"], w["right"]))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("binomial valuation sweep", valuations),
        ("order of the conjugation", order_triples),
        ("closed formula for alpha powers", closed_formula),
        ("closure and witnesses", closure_and_witnesses),
        ("uniform dimension over the zoo", uniform_dimension_zoo),
        ("lifting uniform and essential ideals", lifting),
        ("singular slices", singular_slices),
        ("nicify random cases", nicify_random),
        ("free monoid words", free_words),
        ("Pisano orders", pisano),
        ("nicely essential subrings", essential_subrings),
        ("determinism and exit codes", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("[PASS] {:02} {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:02} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
