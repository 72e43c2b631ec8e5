//! The worked examples: R[x,y][z; α] with α swapping x and y up to signs, the
//! Fibonacci-type automorphism over Z, the injective endomorphism x ↦ x^e, and
//! the parametrized family.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeffring::{CoeffMap, CoeffRing, FiniteRing, IntegerRing};
use crate::error::{OreError, Result};
use crate::family5::{build_family5, central_check, closure_sweep, CentralVerdict, Family5, Family5Params};
use crate::orecore::{Bijectivity, SkewPoly, SkewPolyRing, VarData};
use crate::termorder::Term;
use crate::verdict::Status;

use super::words::free_words_distinct;
use super::{closure_check, Ambient, Closure, Subextension};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum NamedParams {
    /// Over Z/modulus; ε, ε′ given as integers.
    Example1 { modulus: u64, q: u32, eps: i64, eps2: i64 },
    Example2,
    Example3 { modulus: u64, e: u32 },
    Family5 { p: u64, r: u64, e: u64, c: u64, d: u64 },
}

impl NamedParams {
    pub fn name(&self) -> &'static str {
        match self {
            NamedParams::Example1 { .. } => "example1",
            NamedParams::Example2 => "example2",
            NamedParams::Example3 { .. } => "example3",
            NamedParams::Family5 { .. } => "family5",
        }
    }

    /// Default parameters for a name.
    pub fn default_for(name: &str) -> Result<NamedParams> {
        Ok(match name {
            "example1" => NamedParams::Example1 { modulus: 8, q: 1, eps: -1, eps2: -1 },
            "example2" => NamedParams::Example2,
            "example3" => NamedParams::Example3 { modulus: 4, e: 2 },
            "family5" => NamedParams::Family5 { p: 2, r: 2, e: 2, c: 1, d: 1 },
            _ => return Err(OreError::InvalidParams(format!("unknown example `{name}`"))),
        })
    }
}

#[derive(Clone, Debug)]
pub enum NamedRing {
    Finite(Ambient),
    Integer(Arc<SkewPolyRing<IntegerRing>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct ChecklistItem {
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct NamedExample {
    pub params: NamedParams,
    pub ring: NamedRing,
    pub subext: Option<Subextension>,
    /// Named generators of the monoid under study, when there is one.
    pub generators: Vec<(String, String)>,
    /// Claims the checklist verifies.
    pub expected: Vec<&'static str>,
    pub warnings: Vec<String>,
    pub family5: Option<Family5>,
}

/// Renames x0, x1, x2 to the given letters.
pub fn pretty(text: &str, names: &[&str]) -> String {
    let mut out = text.to_string();
    for (i, n) in names.iter().enumerate() {
        out = out.replace(&format!("x{i}"), n);
    }
    out.replace('*', "")
}

fn units_power(r: &FiniteRing, a: usize, q: u32) -> usize {
    (0..q).fold(r.one(), |acc, _| r.mul(acc, a))
}

fn example1(modulus: u64, q: u32, eps: i64, eps2: i64) -> Result<NamedExample> {
    if q < 1 {
        return Err(OreError::InvalidParams("q must be at least 1".into()));
    }
    let r = FiniteRing::zmod(modulus)?;
    let (e1, e2) = (r.from_int(eps), r.from_int(eps2));
    if !r.is_unit(e1) || !r.is_unit(e2) {
        return Err(OreError::InvalidParams("ε and ε′ must be units".into()));
    }
    if units_power(&r, r.mul(e1, e2), q) != r.one() {
        return Err(OreError::InvalidParams(format!("(εε′)^{q} ≠ 1 in Z/{modulus}")));
    }
    let mut warnings = Vec::new();
    if units_power(&r, e1, q) != r.one() || units_power(&r, e2, q) != r.one() {
        warnings.push(format!("ε or ε′ is not a {q}-th root of unity; only (εε′)^{q} = 1 is used"));
    }
    let k = 3;
    let var = |i: usize, c: usize| SkewPoly::monomial(&r, c, Term::var(k, i));
    let inv = |a: usize| r.elements().find(|&b| r.mul(a, b) == r.one()).expect("unit");
    let plain = |i: usize| VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: (0..i).map(|j| var(j, r.one())).collect(),
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![SkewPoly::zero(); i],
        inverse: None,
    };
    let z = VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: vec![var(1, e1), var(0, e2)],
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![SkewPoly::zero(); 2],
        inverse: Some((CoeffMap::Identity, vec![var(1, inv(e2)), var(0, inv(e1))])),
    };
    let s: Ambient = Arc::new(SkewPolyRing::new(r.clone(), vec![plain(0), plain(1), z])?);
    let a = Subextension::predicate("example1", s.clone(), |t| t.deg(1) == 0 || t.deg(2) != 0)?;
    Ok(NamedExample {
        params: NamedParams::Example1 { modulus, q, eps, eps2 },
        ring: NamedRing::Finite(s),
        subext: Some(a),
        generators: vec![("x".into(), "x0".into()), ("z".into(), "x2".into())],
        expected: vec![
            "α has order dividing 2q",
            "z^{2q} is central",
            "z^{2q}·S ⊆ A",
            "A is closed under multiplication",
        ],
        warnings,
        family5: None,
    })
}

fn example2() -> Result<NamedExample> {
    let r = IntegerRing;
    let k = 3;
    let var = |i: usize| SkewPoly::term(&r, Term::var(k, i));
    let plain = |i: usize| VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: (0..i).map(var).collect(),
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![SkewPoly::zero(); i],
        inverse: None,
    };
    let z = VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: vec![var(1), var(0).add(&r, &var(1))],
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![SkewPoly::zero(); 2],
        inverse: Some((CoeffMap::Identity, vec![var(1).sub(&r, &var(0)), var(0)])),
    };
    let s = Arc::new(SkewPolyRing::new(r, vec![plain(0), plain(1), z])?);
    Ok(NamedExample {
        params: NamedParams::Example2,
        ring: NamedRing::Integer(s),
        subext: None,
        generators: vec![("u".into(), "x0*x2".into()), ("v".into(), "x0^2*x2".into())],
        expected: vec!["α is bijective", "length-two products u² = xyz², uv = xy²z², vu = x²yz², v² = x²y²z²", "words in u, v are distinct"],
        warnings: vec![],
        family5: None,
    })
}

fn example3(modulus: u64, e: u32) -> Result<NamedExample> {
    if e < 2 {
        return Err(OreError::InvalidParams("e must be at least 2".into()));
    }
    let r = FiniteRing::zmod(modulus)?;
    let x = VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: vec![],
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![],
        inverse: None,
    };
    let y = VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: vec![SkewPoly::term(&r, Term::from_exps(vec![e, 0]))],
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![SkewPoly::zero()],
        inverse: None,
    };
    let s: Ambient = Arc::new(SkewPolyRing::new(r, vec![x, y])?);
    Ok(NamedExample {
        params: NamedParams::Example3 { modulus, e },
        ring: NamedRing::Finite(s),
        subext: None,
        generators: vec![("u1".into(), "x0*x1".into()), ("u2".into(), "x0^2*x1".into())],
        expected: vec!["α is injective but not bijective", "words in xy, x²y are distinct"],
        warnings: vec![],
        family5: None,
    })
}

pub fn build_named_example(params: &NamedParams) -> Result<NamedExample> {
    match *params {
        NamedParams::Example1 { modulus, q, eps, eps2 } => example1(modulus, q, eps, eps2),
        NamedParams::Example2 => example2(),
        NamedParams::Example3 { modulus, e } => example3(modulus, e),
        NamedParams::Family5 { p, r, e, c, d } => {
            let fp = Family5Params::new(p, r, e, c, d)?;
            let f = build_family5(&fp)?;
            Ok(NamedExample {
                params: params.clone(),
                ring: NamedRing::Finite(f.ring.clone()),
                subext: Some(f.bar_subext()),
                generators: vec![],
                expected: vec!["α has order p^r", "x^{p^r} and y^{p^r} are central", "span(sT) is closed"],
                warnings: fp.warnings(),
                family5: Some(f),
            })
        }
    }
}

fn item(claim: &str, ok: bool, detail: String) -> ChecklistItem {
    ChecklistItem { claim: claim.into(), status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn parse_gens<R: CoeffRing>(s: &SkewPolyRing<R>, gens: &[(String, String)]) -> Result<Vec<(String, SkewPoly<R::Elem>)>> {
    gens.iter().map(|(n, p)| Ok((n.clone(), s.parse(p)?))).collect()
}

fn words_item<R: CoeffRing>(
    s: &SkewPolyRing<R>,
    gens: &[(String, String)],
    max_len: usize,
    names: &[&str],
) -> Result<(ChecklistItem, Vec<(String, String)>)> {
    let parsed = parse_gens(s, gens)?;
    let refs: Vec<(&str, SkewPoly<R::Elem>)> = parsed.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let rep = free_words_distinct(s, &refs, max_len)?;
    let table: Vec<(String, String)> = rep.length_two.iter().map(|(w, p)| (w.clone(), pretty(p, names))).collect();
    let detail = match (&rep.collision, &rep.zero_word) {
        (Some((a, b, p)), _) => format!("{a} = {b} = {}", pretty(p, names)),
        (_, Some(w)) => format!("{w} = 0"),
        _ => format!("{} words to length {max_len}", rep.counts.iter().sum::<usize>()),
    };
    Ok((item("words are distinct", rep.distinct(), detail), table))
}

impl NamedExample {
    /// Verifies the expected properties. `bound` caps degrees for ring checks
    /// and word length for monoid checks.
    pub fn check(&self, bound: u64) -> Result<Vec<ChecklistItem>> {
        let mut out = Vec::new();
        match (&self.params, &self.ring) {
            (NamedParams::Example1 { q, .. }, NamedRing::Finite(s)) => {
                let q = *q as u64;
                let ord = s.certify_bijective(2, 2 * q)?;
                let ok = matches!(ord, Bijectivity::Inverse) && s.certify_bijective(2, 2 * q).is_ok();
                let order = (1..=2 * q).find(|&k| {
                    (0..2).all(|j| s.apply_power_endo(2, k, &s.var(j)).map(|p| p == s.var(j)).unwrap_or(false))
                });
                out.push(item(
                    self.expected[0],
                    ok && order.is_some_and(|k| (2 * q).is_multiple_of(k)),
                    format!("order {order:?}"),
                ));
                let zq = s.monomial(s.coeff_ring().one(), Term::var(3, 2).pow(2 * q as u32));
                let terms: Vec<SkewPoly<usize>> = s.terms_up_to(bound).into_iter().map(|t| s.monomial(1, t)).collect();
                let mut central = None;
                for t in terms.iter().chain([s.constant(1)].iter()) {
                    if s.mul(&zq, t)? != s.mul(t, &zq)? {
                        central = Some(s.format(t));
                        break;
                    }
                }
                out.push(item(self.expected[1], central.is_none(), central.unwrap_or_else(|| format!("terms to degree {bound}"))));
                let a = self.subext.as_ref().expect("example1 has a subextension");
                let mut outside = None;
                for t in &terms {
                    let p = s.mul(&zq, t)?;
                    if !a.contains(&p)? {
                        outside = Some(s.format(&p));
                        break;
                    }
                }
                out.push(item(self.expected[2], outside.is_none(), outside.unwrap_or_else(|| format!("terms to degree {bound}"))));
                let closure = closure_check(a, bound + 2)?;
                let detail = match &closure {
                    Closure::Pass { pairs } => format!("{pairs} pairs to degree {}", bound + 2),
                    Closure::Violation { left, right, .. } => format!("{left:?}·{right:?}"),
                };
                out.push(item(self.expected[3], matches!(closure, Closure::Pass { .. }), detail));
            }
            (NamedParams::Example2, NamedRing::Integer(s)) => {
                out.push(item(
                    self.expected[0],
                    s.certify_bijective(2, 0)? == Bijectivity::Inverse,
                    "α⁻¹(x) = y − x, α⁻¹(y) = x".into(),
                ));
                let names = ["x", "y", "z"];
                let (words, table) = words_item(s, &self.generators, bound as usize, &names)?;
                let want = [("u·u", "xyz^2"), ("u·v", "xy^2z^2"), ("v·u", "x^2yz^2"), ("v·v", "x^2y^2z^2")];
                let matches = table.len() == 4 && table.iter().zip(want).all(|((w, p), (ww, pp))| w == ww && p == pp);
                out.push(item(
                    self.expected[1],
                    matches,
                    table.iter().map(|(w, p)| format!("{w} = {p}")).collect::<Vec<_>>().join(", "),
                ));
                out.push(ChecklistItem { claim: self.expected[2].into(), ..words });
            }
            (NamedParams::Example3 { e, .. }, NamedRing::Finite(s)) => {
                let cert = s.certify_bijective(1, 3)?;
                let x = s.var(0);
                let injective = (1..=bound as u32).all(|n| {
                    s.apply_alpha(1, &s.pow(&x, n).unwrap()).map(|p| p.total_degree() == (n * e) as u64).unwrap_or(false)
                });
                out.push(item(
                    self.expected[0],
                    injective && matches!(cert, Bijectivity::Uncertified { .. }),
                    format!("{cert:?}; α(x^n) = x^(n·{e})"),
                ));
                let (words, _) = words_item(s, &self.generators, bound as usize, &["x", "y"])?;
                out.push(ChecklistItem { claim: self.expected[1].into(), ..words });
            }
            (NamedParams::Family5 { .. }, _) => {
                let f = self.family5.as_ref().expect("family5 data");
                out.push(item(self.expected[0], f.order.holds(), format!("{:?}", f.order)));
                let c = central_check(f, bound)?;
                out.push(item(self.expected[1], matches!(c, CentralVerdict::Pass { .. }), format!("{c:?}")));
                let sweep = closure_sweep(f, bound.min(6))?;
                let detail = match &sweep {
                    Ok(n) => format!("{n} pairs"),
                    Err(rep) => format!("{}·{} = {}", rep.left, rep.right, rep.product),
                };
                out.push(item(self.expected[2], sweep.is_ok(), detail));
            }
            _ => unreachable!("ring kind matches the example"),
        }
        Ok(out)
    }
}
