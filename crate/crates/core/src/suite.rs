//! Named verification suites driven by a declarative config.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bitset::Bits;
use crate::coeffring::{build_finite, CoeffMap, FiniteRing};
use crate::error::{OreError, Result};
use crate::family5::{
    build_family5, central_check, closure_sweep, formula_check, inequality_sweep, ne_witness, set_witness,
    tilde_terms, valuation_sweep, CentralVerdict, Family5, Family5Params,
};
use crate::modlattice::{is_essential_left_ideal, nicely_essential_subrings, primeness, ModuleInstance};
use crate::orecore::laurent::{laurent_localize, LaurentRing};
use crate::orecore::{SkewPoly, SkewPolyRing, VarData};
use crate::report::VerificationReport;
use crate::subext::special::slice_chain;
use crate::subext::{
    attainable_degrees, build_named_example, certify_special, closure_check, find_nice_degree, goldie_check,
    lift_directsum_check, lift_ideal_check, nice_annihilator_slice, nicify, nicify_poly, singular_slice_check,
    Ambient, AnnihilatorSlice, Closure, DirectSumVerdict, LiftKind, LiftVerdict, NamedParams,
    NiceDegree, SpecialData, SpecialVerdict, Subextension,
};
use crate::termorder::{LaurentTerm, Term};
use crate::verdict::Status;

pub const SUITES: [&str; 5] = ["lattice", "family5", "examples", "laurent", "special"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Degree bound D.
    pub d: u64,
    /// Window for the elements being lifted.
    pub d1: u64,
    /// Window for the multipliers.
    pub d2: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { d: 4, d1: 2, d2: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SubextConfig {
    Whole,
    Monoid { gens: Vec<String> },
    Explicit { terms: Vec<String>, complete_to: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    pub ring: Option<String>,
    /// Number of polynomial variables over the ring (commuting, untwisted unless `twist` is set).
    pub vars: usize,
    /// Coefficient automorphism of x0 as a table, for the laurent suite.
    pub twist: Option<Vec<usize>>,
    pub subext: Option<SubextConfig>,
    pub example: Option<NamedParams>,
    pub family5: Option<Family5Params>,
    pub bounds: Bounds,
    /// Maximal word length for monoid checks.
    pub length: usize,
    pub budget: usize,
    /// Checks to run; empty means all.
    pub checks: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: String::new(),
            seed: 0,
            ring: None,
            vars: 1,
            twist: None,
            subext: None,
            example: None,
            family5: None,
            bounds: Bounds::default(),
            length: 4,
            budget: 1 << 16,
            checks: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn new(suite: &str) -> SuiteConfig {
        SuiteConfig { suite: suite.into(), ..Default::default() }
    }

    pub fn from_toml(text: &str) -> Result<SuiteConfig> {
        toml::from_str(text).map_err(|e| OreError::Parse { input: "suite config".into(), reason: e.to_string() })
    }

    fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(OreError::InvalidParams(format!("unknown suite `{}`; expected one of {SUITES:?}", self.suite)));
        }
        let b = &self.bounds;
        if b.d == 0 || b.d1 == 0 || b.d2 == 0 || self.length == 0 || self.budget == 0 || self.vars == 0 {
            return Err(OreError::InvalidParams("bounds, length, budget and vars must be positive".into()));
        }
        Ok(())
    }

    fn wants(&self, check: &str) -> bool {
        self.checks.is_empty() || self.checks.iter().any(|c| c == check)
    }
}

/// Runs the configured suite. Errors are input errors; budget exhaustion inside
/// a check is reported as bounded-inconclusive.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let params = serde_json::to_value(cfg).expect("config serializes");
    let mut rep = VerificationReport::new(&cfg.suite, params);
    match cfg.suite.as_str() {
        "lattice" => lattice_suite(cfg, &mut rep)?,
        "family5" => family5_suite(cfg, &mut rep)?,
        "examples" => examples_suite(cfg, &mut rep)?,
        "laurent" => laurent_suite(cfg, &mut rep)?,
        "special" => special_suite(cfg, &mut rep)?,
        _ => unreachable!("validated"),
    }
    Ok(rep)
}

fn outcome<T>(r: Result<T>, f: impl FnOnce(T) -> (Status, Value)) -> (Status, Value) {
    match r {
        Ok(v) => f(v),
        Err(OreError::Budget(msg)) => (Status::BoundedInconclusive, json!({ "budget": msg })),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
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

fn lattice_suite(cfg: &SuiteConfig, rep: &mut VerificationReport) -> Result<()> {
    let spec = cfg.ring.clone().unwrap_or_else(|| "zmod:12".into());
    let r = build_finite(&spec)?;
    let module = ModuleInstance::regular(&r);
    let lattice_budget = 4096;
    if cfg.wants("submodules") {
        rep.run("submodule lattice", "left ideals are closed under sums and intersections", json!(lattice_budget), || {
            outcome(module.enumerate_submodules(lattice_budget), |l| {
                (pass_if(l.is_closed(&module)), json!({ "left_ideals": l.len() }))
            })
        });
    }
    if cfg.wants("udim") {
        rep.run("uniform dimension", "an essential direct sum of uniform left ideals realizes the largest independent family", Value::Null, || {
            outcome(module.uniform_dimension(lattice_budget), |u| {
                let oracle = spec.strip_prefix("zmod:").and_then(|n| n.parse::<u64>().ok()).map(distinct_primes);
                let ok = u.dim == u.max_independent.len() && oracle.is_none_or(|k| k == u.dim);
                let family: Vec<Vec<String>> = u.family.iter().map(|b| b.iter().map(|x| r.format(x)).collect()).collect();
                (pass_if(ok), json!({ "udim": u.dim, "family": family, "prime_factor_oracle": oracle }))
            })
        });
    }
    if cfg.wants("primeness") {
        rep.run("primeness and singular ideal", "semiprime finite rings have zero singular ideal", Value::Null, || {
            outcome(primeness(&r), |p| {
                let sing = module.singular_submodule();
                let ok = r.two_sided_ideal(&sing) == sing && (!p.semiprime || sing.len() == 1) && p.goldie;
                let sing: Vec<String> = sing.iter().map(|x| r.format(x)).collect();
                (pass_if(ok), json!({ "prime": p.prime, "semiprime": p.semiprime, "goldie": p.goldie, "udim": p.udim, "singular": sing }))
            })
        });
    }
    if cfg.wants("nicify") {
        let seed = cfg.seed;
        rep.run("nicify sample", "some multiple of a finite set is nonempty, nice and inside an essential left ideal", json!({ "cases": 100, "seed": seed }), || {
            outcome(module.enumerate_submodules(lattice_budget), |l| {
                let ess: Vec<Bits> = l.iter().copied().filter(|b| is_essential_left_ideal(&r, b)).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..100 {
                    if r.size() < 2 {
                        break;
                    }
                    let e: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..r.size())).collect();
                    let lid = ess[rng.gen_range(0..ess.len())];
                    let ok = nicify(&r, &e, Some(&lid)).is_ok_and(|c| {
                        let ce: Vec<usize> = e.iter().map(|&x| r.mul(c.c, x)).filter(|&x| x != 0).collect();
                        !ce.is_empty() && crate::subext::is_nice(&r, &ce) && ce.iter().all(|&x| lid.contains(x))
                    });
                    if !ok {
                        return (Status::Fail, json!({ "set": e, "ideal": lid.to_vec() }));
                    }
                }
                (Status::Pass, Value::Null)
            })
        });
    }
    if cfg.wants("essential-subrings") && r.size() <= 16 {
        rep.run("nicely essential subrings", "udim, singular ideals and primeness transfer to nicely essential subrings", Value::Null, || {
            outcome(nicely_essential_subrings(&r), |pairs| {
                let bad: Vec<Vec<String>> = pairs.iter().map(|p| p.violations()).filter(|v| !v.is_empty()).collect();
                (pass_if(bad.is_empty()), json!({ "pairs": pairs.len(), "violations": bad }))
            })
        });
    }
    Ok(())
}

fn family5_of(cfg: &SuiteConfig) -> Result<Family5> {
    let p = cfg.family5.unwrap_or(Family5Params { p: 2, r: 2, e: 2, c: 1, d: 1 });
    build_family5(&Family5Params::new(p.p, p.r, p.e, p.c, p.d)?)
}

fn family5_suite(cfg: &SuiteConfig, rep: &mut VerificationReport) -> Result<()> {
    let f = family5_of(cfg)?;
    let d = cfg.bounds.d;
    let s = f.ring.clone();
    for w in f.params.warnings() {
        rep.run("parameter warning", "the family is stated for r ≥ 2", Value::Null, || (Status::SkippedHypothesis, json!(w)));
    }
    if cfg.wants("order") {
        rep.run("order of alpha", "α(x) = x + p·x^e has order exactly p^r", Value::Null, || {
            (pass_if(f.order.holds()), serde_json::to_value(&f.order).unwrap())
        });
    }
    if cfg.wants("valuation") {
        rep.run("binomial valuation sweep", "v_p(C(p^r, n)·p^n) ≥ r + 1 for 1 ≤ n ≤ p^r", json!({ "p": [2, 3, 5], "r": [1, 2, 3] }), || {
            outcome(valuation_sweep(&[2, 3, 5], &[1, 2, 3]), |v| match v {
                Ok(n) => (Status::Pass, json!({ "checked": n })),
                Err((p, r, n)) => (Status::Fail, json!({ "p": p, "r": r, "n": n })),
            })
        });
    }
    if cfg.wants("formula") {
        rep.run("closed formula for alpha powers", "α^m(x^n) = Σ_k B(n,m,k)·p^k·x^{n+k(e−1)}", json!(5), || {
            outcome(formula_check(&f, 5), |v| match v {
                Ok(n) => (Status::Pass, json!({ "checked": n })),
                Err((n, m)) => (Status::Fail, json!({ "n": n, "m": m })),
            })
        });
    }
    if cfg.wants("inequality") {
        rep.run("degree bound inequality", "S̄ is increasing and S̄_m + S̄_{m′} + min(r, S_m·S̄_{m′})(e−1) ≤ S̄_{m+m′}", json!(10), || {
            let grid: Vec<(u64, u64, u64)> =
                [2, 3].iter().flat_map(|&e| [1, 2].iter().flat_map(move |&c| [2, 3].iter().map(move |&r| (e, c, r)))).collect();
            match inequality_sweep(&grid, 10) {
                Ok(n) => (Status::Pass, json!({ "checked": n })),
                Err(fail) => (Status::Fail, serde_json::to_value(fail).unwrap()),
            }
        });
    }
    if cfg.wants("central") {
        rep.run("central powers", "x^{p^r} and y^{p^r} are central", json!(d), || {
            outcome(central_check(&f, d), |v| match v {
                CentralVerdict::Pass { checked } => (Status::Pass, json!({ "checked": checked })),
                CentralVerdict::Violation { central, against } => (Status::Fail, json!({ "central": central, "against": against })),
            })
        });
    }
    if cfg.wants("closure") {
        let a = f.bar_subext();
        rep.run("closure of span(sT)", "span(sT) is a subring", json!(d), || closure_outcome(&s, closure_check(&a, d)));
        let m = d.min(6);
        rep.run("pairwise exponent bound", "products of sT terms stay in sT within the analytic exponent bound", json!({ "m_plus_m2": m }), || {
            outcome(closure_sweep(&f, m), |v| match v {
                Ok(n) => (Status::Pass, json!({ "pairs": n })),
                Err(bad) => (Status::Fail, serde_json::to_value(bad).unwrap()),
            })
        });
    }
    if cfg.wants("witness") {
        rep.run("nicely essential witnesses", "every T̃ term τ has a central υ ∈ sT with υ·τ ∈ sT", json!({ "max_exponent": 20 }), || {
            let terms = tilde_terms(&f.params, 20);
            let mut bad = None;
            for t in &terms {
                match ne_witness(&f, t) {
                    Ok(w) if w.verified => {}
                    Ok(w) => {
                        bad = Some(serde_json::to_value(w).unwrap());
                        break;
                    }
                    Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
                }
            }
            if let Some(b) = bad {
                return (Status::Fail, b);
            }
            let sample: Vec<Term> = terms.iter().take(8).cloned().collect();
            outcome(set_witness(&f, &sample), |w| match w {
                Some(u) => (Status::Pass, json!({ "terms": terms.len(), "set_witness_for_first_8": [u.0, u.1] })),
                None => (Status::Fail, json!({ "set_witness": "failed" })),
            })
        });
    }
    if cfg.wants("special") {
        let dd = d.min(4);
        let data = f.tilde_special_data(dd as u32);
        let tilde = f.tilde_subext();
        rep.run("special subextension", "Ã = span(T̃) is special with λ_m = x^{cm}y^m and B_m = R[x^d]", json!(dd), || {
            special_outcome(certify_special(&tilde, &data, dd))
        });
        rep.run("nice degree", "A·a contains a nice polynomial of y-degree d_A", json!(dd), || {
            let r = s.coeff_ring();
            let mut found = Vec::new();
            for a in r.elements().skip(1) {
                match find_nice_degree(&tilde, &data, a, dd) {
                    Ok(NiceDegree::Found { poly, path, .. }) => found.push(json!([r.format(a), s.format(&poly), path])),
                    Ok(NiceDegree::NotFound { searched }) => {
                        return (Status::BoundedInconclusive, json!({ "a": r.format(a), "searched": searched }))
                    }
                    Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
                }
            }
            (Status::Pass, json!(found.into_iter().take(4).collect::<Vec<_>>()))
        });
    }
    Ok(())
}

fn term_text(s: &SkewPolyRing<FiniteRing>, t: &Term) -> String {
    s.format(&SkewPoly::term(s.coeff_ring(), t.clone()))
}

fn closure_outcome(s: &SkewPolyRing<FiniteRing>, r: Result<Closure>) -> (Status, Value) {
    outcome(r, |c| match c {
        Closure::Pass { pairs } => (Status::Pass, json!({ "pairs": pairs })),
        Closure::Violation { left, right, product, offending } => (
            Status::Fail,
            json!({
                "left": term_text(s, &left),
                "right": term_text(s, &right),
                "product": s.format(&product),
                "offending": term_text(s, &offending),
            }),
        ),
    })
}

fn special_outcome(r: Result<SpecialVerdict>) -> (Status, Value) {
    outcome(r, |v| match v {
        SpecialVerdict::Certified { levels, bound } => (Status::Pass, json!({ "levels": levels, "bound": bound })),
        SpecialVerdict::Violation { condition, detail } => (Status::Fail, json!({ "condition": condition, "detail": detail })),
        SpecialVerdict::Inconclusive { condition, detail } => {
            (Status::BoundedInconclusive, json!({ "condition": condition, "detail": detail }))
        }
    })
}

fn examples_suite(cfg: &SuiteConfig, rep: &mut VerificationReport) -> Result<()> {
    let params = match &cfg.example {
        Some(p) => p.clone(),
        None => NamedParams::default_for("example2")?,
    };
    let ex = build_named_example(&params)?;
    for w in &ex.warnings {
        rep.run("parameter warning", "named example parameters", Value::Null, || (Status::SkippedHypothesis, json!(w)));
    }
    let bound = match params {
        NamedParams::Example2 | NamedParams::Example3 { .. } => cfg.length as u64,
        _ => cfg.bounds.d,
    };
    let items = ex.check(bound)?;
    for it in items {
        rep.run(&it.claim, params.name(), json!(bound), || (it.status, json!(it.detail)));
    }
    Ok(())
}

fn lifts(rep: &mut VerificationReport, a: &Subextension, cfg: &SuiteConfig) {
    let r = a.ring().clone();
    let module = ModuleInstance::regular(&r);
    let b = &cfg.bounds;
    let bound = json!({ "d1": b.d1, "d2": b.d2, "budget": cfg.budget });
    for (kind, name, anchor) in [
        (LiftKind::Uniform, "uniform lifts", "A ∩ A·L is uniform for every uniform left ideal L of R"),
        (LiftKind::Essential, "essential lifts", "A ∩ A·L is essential for every essential left ideal L of R"),
    ] {
        if !cfg.wants(name.split(' ').next().unwrap()) && !cfg.wants("lifts") {
            continue;
        }
        rep.run(name, anchor, bound.clone(), || {
            outcome(module.enumerate_submodules(4096), |lat| {
                let mut status = Status::Pass;
                let mut checked = 0;
                let mut inconclusive = Vec::new();
                for l in lat.nonzero() {
                    let ok = match kind {
                        LiftKind::Uniform => module.is_uniform(l),
                        LiftKind::Essential => module.is_essential(l),
                    };
                    if !ok {
                        continue;
                    }
                    let ideal: Vec<String> = l.iter().map(|x| r.format(x)).collect();
                    match lift_ideal_check(a, l, kind, b.d1, b.d2, cfg.budget) {
                        Ok(LiftVerdict::Pass { .. }) => checked += 1,
                        Ok(LiftVerdict::Counterexample { f, g }) => {
                            let s = a.ambient();
                            return (
                                Status::Fail,
                                json!({ "ideal": ideal, "f": s.format(&f), "g": g.map(|g| s.format(&g)) }),
                            );
                        }
                        Ok(LiftVerdict::BoundedInconclusive { reason }) => {
                            status = status.and(Status::BoundedInconclusive);
                            inconclusive.push(json!({ "ideal": ideal, "reason": reason }));
                        }
                        Err(e) => return (Status::Fail, json!({ "ideal": ideal, "error": e.to_string() })),
                    }
                }
                (status, json!({ "ideals_passed": checked, "inconclusive": inconclusive }))
            })
        });
    }
    if cfg.wants("directsum") || cfg.wants("lifts") {
        rep.run("direct sum lift", "lifts of an independent family form a direct sum", json!(b.d1), || {
            outcome(module.uniform_dimension(4096), |u| {
                outcome(lift_directsum_check(a, &u.family, b.d1), |v| match v {
                    DirectSumVerdict::Pass { sizes } => (Status::Pass, json!({ "slice_sizes": sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>() })),
                    DirectSumVerdict::Violation { detail } => (Status::Fail, json!(detail)),
                })
            })
        });
    }
    if cfg.wants("singular") {
        rep.run("singular slice", "sing(A) = A ∩ sing(R)·T", json!({ "d": b.d, "d1": b.d1, "d2": b.d2, "budget": cfg.budget }), || {
            outcome(singular_slice_check(a, b.d, b.d1, b.d2, cfg.budget), |v| {
                (v.status, serde_json::to_value(&v).unwrap())
            })
        });
    }
    if cfg.wants("goldie") {
        rep.run("goldie", "A is left Goldie with udim(A) = udim(R)", bound, || {
            outcome(goldie_check(a, b.d1, b.d2, cfg.budget), |g| (g.status, serde_json::to_value(&g).unwrap()))
        });
    }
}

fn plain_ring(r: &FiniteRing, k: usize, twist: Option<&[usize]>) -> Result<SkewPolyRing<FiniteRing>> {
    let vars = (0..k)
        .map(|i| VarData {
            alpha_coeff: match (i, twist) {
                (0, Some(t)) => CoeffMap::Table(t.to_vec()),
                _ => CoeffMap::Identity,
            },
            alpha_images: (0..i).map(|j| SkewPoly::term(r, Term::var(k, j))).collect(),
            delta_coeff: CoeffMap::Zero,
            delta_images: vec![SkewPoly::zero(); i],
            inverse: None,
        })
        .collect();
    SkewPolyRing::new(r.clone(), vars)
}

fn subext_of(cfg: &SuiteConfig, s: &Ambient, default: SubextConfig) -> Result<Subextension> {
    let k = s.nvars();
    match cfg.subext.clone().unwrap_or(default) {
        SubextConfig::Whole => Ok(Subextension::whole(s.clone())),
        SubextConfig::Monoid { gens } => {
            let gens = gens.iter().map(|g| Term::parse(g, k)).collect::<Result<_>>()?;
            Subextension::monoid("monoid", s.clone(), gens)
        }
        SubextConfig::Explicit { terms, complete_to } => {
            let terms: Vec<Term> = terms.iter().map(|t| Term::parse(t, k)).collect::<Result<_>>()?;
            Subextension::explicit("explicit", s.clone(), terms, complete_to)
        }
    }
}

fn laurent_suite(cfg: &SuiteConfig, rep: &mut VerificationReport) -> Result<()> {
    let (spec, twist) = match &cfg.ring {
        Some(spec) => (spec.clone(), cfg.twist.clone()),
        // F2 × F2 with x0 swapping the factors
        None => ("product:zmod:2,zmod:2".to_string(), Some(cfg.twist.clone().unwrap_or(vec![0, 2, 1, 3]))),
    };
    let r = build_finite(&spec)?;
    let k = cfg.vars.max(2);
    let s: Ambient = Arc::new(plain_ring(&r, k, twist.as_deref())?);
    let a = subext_of(cfg, &s, SubextConfig::Monoid { gens: vec!["x0^2".into(), "x0*x1".into()] })?;
    let gens: Vec<Term> = match cfg.subext.clone().unwrap_or(SubextConfig::Monoid { gens: vec!["x0^2".into(), "x0*x1".into()] }) {
        SubextConfig::Monoid { gens } => gens.iter().map(|g| Term::parse(g, k)).collect::<Result<_>>()?,
        _ => (0..k).map(|i| Term::var(k, i)).collect(),
    };
    let d = cfg.bounds.d;
    if cfg.wants("laurent") {
        rep.run("laurent ring", "commuting variables with δ = 0 localize to a skew Laurent ring", Value::Null, || {
            outcome(LaurentRing::from_skew(&s), |l| {
                let x = l.monomial(r.one(), LaurentTerm::from_exps({
                    let mut e = vec![0; k];
                    e[0] = 1;
                    e
                }));
                let xi = l.monomial(r.one(), LaurentTerm::from_exps({
                    let mut e = vec![0; k];
                    e[0] = -1;
                    e
                }));
                let one = l.monomial(r.one(), LaurentTerm::one(k));
                (pass_if(l.mul(&x, &xi) == one && l.mul(&xi, &x) == one), json!({ "nvars": l.nvars() }))
            })
        });
    }
    if cfg.wants("localize") {
        rep.run("localized group", "sT·sT⁻¹ is a group with a term basis", json!(gens.len()), || {
            let lgens: Vec<LaurentTerm> = gens.iter().map(|g| g.to_laurent()).collect();
            outcome(laurent_localize(&lgens), |g| {
                let ok = lgens.iter().all(|t| g.contains(t));
                (pass_if(ok), json!({ "rank": g.rank(), "basis": g.basis.iter().map(|t| format!("{t:?}")).collect::<Vec<_>>() }))
            })
        });
    }
    if cfg.wants("denominators") {
        rep.run("common denominators", "a finite set Y of terms of the group admits λ ∈ sT with λY ⊆ sT", json!(d), || {
            let lgens: Vec<LaurentTerm> = gens.iter().map(|g| g.to_laurent()).collect();
            outcome(laurent_localize(&lgens), |g| {
                let ys: Vec<Term> = s.terms_up_to(d).into_iter().filter(|t| g.contains(&t.to_laurent())).collect();
                let cands = a.window(4 * d).unwrap_or_default();
                let hit = cands.iter().find(|l| ys.iter().all(|y| a.contains_term(&l.mul(y)).unwrap_or(false)));
                match hit {
                    Some(l) => (Status::Pass, json!({ "terms": ys.len(), "lambda": term_text(&s, l) })),
                    None => (Status::BoundedInconclusive, json!({ "terms": ys.len(), "searched": cands.len() })),
                }
            })
        });
    }
    lifts(rep, &a, cfg);
    Ok(())
}

fn special_suite(cfg: &SuiteConfig, rep: &mut VerificationReport) -> Result<()> {
    let spec = cfg.ring.clone().unwrap_or_else(|| "zmod:4".into());
    let r = build_finite(&spec)?;
    let s: Ambient = Arc::new(plain_ring(&r, cfg.vars, cfg.twist.as_deref())?);
    let a = subext_of(cfg, &s, SubextConfig::Whole)?;
    let d = cfg.bounds.d;
    let closed = closure_check(&a, d);
    let closed_ok = matches!(closed, Ok(Closure::Pass { .. }));
    rep.run("closure", "the span of the basis terms is closed under multiplication", json!(d), || closure_outcome(&s, closed));
    if !closed_ok {
        rep.run("remaining checks", "every later check assumes a subring", Value::Null, || {
            (Status::SkippedHypothesis, json!("A is not closed to the bound"))
        });
        return Ok(());
    }
    if cfg.wants("degrees") {
        rep.run("attainable degrees", "Deg_x(A) ⊆ d_A·ℕ", json!(d), || {
            outcome(attainable_degrees(&a, d as u32), |v| (Status::Pass, serde_json::to_value(v).unwrap()))
        });
    }
    let whole = matches!(cfg.subext, None | Some(SubextConfig::Whole));
    if cfg.wants("certificate") {
        if whole {
            let data = SpecialData::ambient(&s, d as u32);
            rep.run("special certificate", "the ambient ring is a special subextension of itself", json!(d), || {
                special_outcome(certify_special(&a, &data, d))
            });
            let dd = d.min(3);
            rep.run("nice degree", "A·a contains a nice polynomial of x-degree d_A", json!(dd), || {
                let mut found = Vec::new();
                for c in r.elements().skip(1) {
                    match find_nice_degree(&a, &data, c, dd) {
                        Ok(NiceDegree::Found { poly, .. }) => found.push(json!([r.format(c), s.format(&poly)])),
                        Ok(NiceDegree::NotFound { searched }) => {
                            return (Status::BoundedInconclusive, json!({ "a": r.format(c), "searched": searched }))
                        }
                        Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
                    }
                }
                (Status::Pass, json!(found))
            });
            let nonunit = r.elements().skip(1).find(|&c| !r.is_unit(c)).unwrap_or(r.one());
            rep.run("ideal slices", "I_{m,n} ⊆ I_{m,n+1} and α_(m)^k(I_{m,n}) ⊆ I_{m,n+k}", json!(d), || {
                let lam = data.lambda(&s, 1).expect("level 1");
                let gen = s.mul(&s.constant(nonunit), &lam).expect("degree fits");
                let nmax = (d as u32).clamp(1, 3);
                outcome(slice_chain(&a, &data, std::slice::from_ref(&gen), 1, nmax, d), |(slices, monotone, stable)| {
                    let sizes: Vec<String> = slices.iter().map(|x| x.size.to_string()).collect();
                    let status = if monotone && stable { Status::Pass } else { Status::BoundedInconclusive };
                    (status, json!({ "generator": s.format(&gen), "sizes": sizes, "monotone": monotone, "alpha_stable": stable }))
                })
            });
        } else {
            rep.run("special certificate", "special data is supplied for the ambient ring only", Value::Null, || {
                (Status::SkippedHypothesis, json!("no special data for this basis"))
            });
        }
    }
    if cfg.wants("annihilators") {
        let seed = cfg.seed;
        let dd = d.min(3);
        rep.run("nice annihilators", "ann_S(g) = S·ann_R(g) for nice g", json!({ "d": dd, "cases": 20, "seed": seed }), || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let terms = s.terms_up_to(2);
            let mut checked = 0;
            for _ in 0..20 {
                let mut f = SkewPoly::zero();
                for t in &terms {
                    f.add_term(&r, t.clone(), rng.gen_range(0..r.size()));
                }
                if f.is_zero() {
                    continue;
                }
                let (_, g) = match nicify_poly(&r, &f) {
                    Ok(x) => x,
                    Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
                };
                match nice_annihilator_slice(&s, &g, dd) {
                    Ok(AnnihilatorSlice::Pass { .. }) => checked += 1,
                    Ok(AnnihilatorSlice::Violation { witness, in_left_annihilator }) => {
                        return (
                            Status::Fail,
                            json!({ "g": s.format(&g), "witness": s.format(&witness), "in_left_annihilator": in_left_annihilator }),
                        )
                    }
                    Err(OreError::Budget(m)) => return (Status::BoundedInconclusive, json!(m)),
                    Err(e) => return (Status::Fail, json!({ "error": e.to_string() })),
                }
            }
            (Status::Pass, json!({ "checked": checked }))
        });
    }
    lifts(rep, &a, cfg);
    Ok(())
}

/// Reads a config, letting explicit overrides win.
pub fn load_config(text: Option<&str>, suite: &str) -> Result<SuiteConfig> {
    let mut cfg = match text {
        Some(t) => SuiteConfig::from_toml(t)?,
        None => SuiteConfig::new(suite),
    };
    if cfg.suite.is_empty() {
        cfg.suite = suite.into();
    }
    if cfg.suite != suite {
        return Err(OreError::InvalidParams(format!("config is for suite `{}`, not `{suite}`", cfg.suite)));
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let text = r#"
            suite = "special"
            seed = 3
            ring = "zmod:4"
            checks = ["closure"]
            [bounds]
            d = 4
            d1 = 2
            d2 = 3
            [subext]
            kind = "explicit"
            terms = ["1", "x0^2"]
            complete_to = 4
        "#;
        let cfg = SuiteConfig::from_toml(text).unwrap();
        assert_eq!(cfg.bounds, Bounds { d: 4, d1: 2, d2: 3 });
        assert_eq!(cfg.subext, Some(SubextConfig::Explicit { terms: vec!["1".into(), "x0^2".into()], complete_to: 4 }));
        assert!(SuiteConfig::from_toml("suite = \"lattice\"\nbogus = 1").is_err());
        assert!(run_suite(&SuiteConfig::new("nope")).is_err());
    }

    #[test]
    fn corrupted_closure_fails_with_pair() {
        let mut cfg = SuiteConfig::new("special");
        cfg.subext = Some(SubextConfig::Explicit { terms: vec!["1".into(), "x0^2".into()], complete_to: 4 });
        let rep = run_suite(&cfg).unwrap();
        assert_eq!(rep.exit_code(), 1);
        let w = &rep.checks[0].witness;
        assert_eq!((w["left"].as_str(), w["right"].as_str(), w["offending"].as_str()), (Some("x0^2"), Some("x0^2"), Some("x0^4")));
    }

    #[test]
    fn lattice_suite_over_z12() {
        let mut cfg = SuiteConfig::new("lattice");
        cfg.ring = Some("zmod:12".into());
        let rep = run_suite(&cfg).unwrap();
        assert_eq!(rep.overall(), Status::Pass, "{}", rep.to_text());
        assert_eq!(rep.checks[1].witness["udim"], json!(2));
        assert_eq!(rep.checks[2].witness["semiprime"], json!(false));
        assert_eq!(rep.checks[2].witness["singular"], json!(["0", "6"]));
    }
}
