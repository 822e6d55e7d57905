use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hypersemi::convolution::{
    classify_idempotent_measure, classify_regular_measure, convolve, measure_grid_up_to, parse_measure,
    support_iso_check, IdempotentClass, MeasureClass, RationalMeasure,
};
use hypersemi::embedding::{decide_embedding, EmbedOutcome, EmbedTarget, ObstructionReport, Verdict};
use hypersemi::format::{parse_group, parse_semigroup_any, serialize_table};
use hypersemi::functor_ext::superextension_semigroup;
use hypersemi::hyper::{exp_semigroup, idempotents_exp, regular_elements_exp, subset_product};
use hypersemi::semigroup::{
    idempotents, is_clifford, is_commutative, is_inverse_semigroup, is_regular, semilattice_of,
};
use hypersemi::verify::{run_all, VerifyConfig};
use hypersemi::{FiniteGroup, FiniteSemigroup, Semigroup, Subset};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Global, Target, EXIT_INCONCLUSIVE, EXIT_OBSTRUCTION, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};

/// Grids larger than this are skipped by `conv support-iso`.
const MAX_GRID_SCAN: u128 = 200_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: hypersemi::Error,
    },
    #[error(transparent)]
    Core(#[from] hypersemi::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input {
                source: hypersemi::Error::ResourceLimit { .. },
                ..
            }
            | CliError::Core(hypersemi::Error::ResourceLimit { .. }) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Output {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            code: EXIT_OK,
            text,
            json,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn with_path<T>(path: &Path, r: hypersemi::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn check_order(what: &'static str, order: usize, g: &Global) -> Result<()> {
    if order > g.max_group_order {
        return Err(hypersemi::Error::ResourceLimit {
            what,
            required: order,
            limit: g.max_group_order,
        }
        .into());
    }
    Ok(())
}

fn load_semigroup(path: &Path, g: &Global) -> Result<FiniteSemigroup> {
    let text = read(path)?;
    let s = with_path(path, parse_semigroup_any(&text, path.parent()))?;
    check_order("input order", s.order(), g)?;
    Ok(s)
}

fn load_group(path: &Path, g: &Global) -> Result<FiniteGroup> {
    let grp = with_path(path, parse_group(&read(path)?))?;
    check_order("group order", grp.order(), g)?;
    Ok(grp)
}

fn load_measure(path: &Path, n: usize) -> Result<RationalMeasure> {
    with_path(path, parse_measure(&read(path)?, n))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rows<S: Semigroup + ?Sized>(s: &S) -> Vec<Vec<usize>> {
    (0..s.order()).map(|a| (0..s.order()).map(|b| s.mul(a, b)).collect()).collect()
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct Analysis {
    name: Option<String>,
    order: usize,
    group: bool,
    idempotents: Vec<usize>,
    regular: bool,
    inverse: bool,
    clifford: bool,
    commutative: bool,
    idempotents_commute: bool,
    /// Covering pairs `(lower, upper)` of `E`, present when `E` is a semilattice.
    hasse_edges: Option<Vec<(usize, usize)>>,
}

pub fn analyze(g: &Global, path: &Path) -> Result<Output> {
    let s = load_semigroup(path, g)?;
    let idem = idempotents(&s);
    let idempotents_commute = idem.iter().all(|&e| idem.iter().all(|&f| s.mul(e, f) == s.mul(f, e)));
    let inverse = is_inverse_semigroup(&s);
    let a = Analysis {
        name: s.name().map(str::to_string),
        order: s.order(),
        group: FiniteGroup::from_table(s.order(), s.table()).is_ok(),
        regular: is_regular(&s),
        inverse,
        clifford: is_clifford(&s),
        commutative: is_commutative(&s),
        idempotents_commute,
        hasse_edges: if inverse {
            Some(semilattice_of(&s)?.hasse_edges())
        } else {
            None
        },
        idempotents: idem,
    };
    let mut text = String::new();
    if let Some(name) = &a.name {
        writeln!(text, "name: {name}").unwrap();
    }
    writeln!(text, "order: {}", a.order).unwrap();
    writeln!(text, "group: {}", yes(a.group)).unwrap();
    writeln!(text, "idempotents: {}", join(&a.idempotents)).unwrap();
    writeln!(text, "regular: {}", yes(a.regular)).unwrap();
    writeln!(text, "inverse: {}", yes(a.inverse)).unwrap();
    writeln!(text, "Clifford: {}", yes(a.clifford)).unwrap();
    writeln!(text, "commutative: {}", yes(a.commutative)).unwrap();
    writeln!(text, "E commutative: {}", yes(a.idempotents_commute)).unwrap();
    if let Some(edges) = &a.hasse_edges {
        let shown: Vec<String> = edges.iter().map(|(lo, hi)| format!("{lo}<{hi}")).collect();
        writeln!(text, "semilattice edges: {}", shown.join(" ")).unwrap();
    }
    Ok(Output::ok(text, serde_json::to_value(&a).unwrap()))
}

fn parse_subset(n: usize, s: &str) -> Result<Subset> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Subset::empty(n);
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| CliError::Usage(format!("bad element {part:?} in subset {s:?}")))?;
        if i >= n {
            return Err(CliError::Usage(format!("element {i} out of range in subset {s:?}")));
        }
        out.insert(i);
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("empty subset {s:?}")));
    }
    Ok(out)
}

pub fn exp(g: &Global, path: &Path, regular: bool, idem: bool, product: Option<&[String]>) -> Result<Output> {
    let grp = load_group(path, g)?;
    let n = grp.order();
    if let Some([a, b]) = product {
        let (a, b) = (parse_subset(n, a)?, parse_subset(n, b)?);
        let p = subset_product(&grp, &a, &b)?;
        return Ok(Output::ok(
            format!("{a}*{b} = {p}\n"),
            json!({ "left": a, "right": b, "product": p }),
        ));
    }
    if regular {
        let reg = regular_elements_exp(&grp, g.max_group_order)?;
        let mut text = format!("regular elements: {}\n", reg.len());
        let mut items = Vec::new();
        for (a, w) in &reg {
            writeln!(text, "{a} = {}*{}", w.subgroup, w.shift).unwrap();
            items.push(json!({ "set": a, "subgroup": w.subgroup, "shift": w.shift }));
        }
        return Ok(Output::ok(text, json!({ "count": reg.len(), "regular": items })));
    }
    if idem {
        let subs = idempotents_exp(&grp, g.max_group_order)?;
        let mut text = format!("idempotents: {}\n", subs.len());
        for h in &subs {
            writeln!(text, "{h}").unwrap();
        }
        return Ok(Output::ok(text, json!({ "count": subs.len(), "idempotents": subs })));
    }
    let reg = regular_elements_exp(&grp, g.max_group_order)?;
    let subs = idempotents_exp(&grp, g.max_group_order)?;
    let elements = if n < 128 {
        ((1u128 << n) - 1).to_string()
    } else {
        format!("2^{n} - 1")
    };
    let mut text = format!(
        "group order: {n}\nexp(G) elements: {elements}\nregular elements: {}\nidempotents: {}\n",
        reg.len(),
        subs.len()
    );
    // small groups: recount idempotents over every element of exp(G)
    let enumerated = if n <= g.max_exp_order {
        let e = exp_semigroup(&grp, g.max_exp_order)?;
        let count = (0..e.order()).filter(|&x| e.mul(x, x) == x).count();
        writeln!(text, "idempotents by enumeration: {count}").unwrap();
        Some(count)
    } else {
        None
    };
    Ok(Output::ok(
        text,
        json!({
            "group_order": n,
            "elements": elements,
            "regular": reg.len(),
            "idempotents": subs.len(),
            "idempotents_enumerated": enumerated,
        }),
    ))
}

pub fn conv_mul(g: &Global, group: &Path, left: &Path, right: &Path) -> Result<Output> {
    let grp = load_group(group, g)?;
    let (mu, nu) = (load_measure(left, grp.order())?, load_measure(right, grp.order())?);
    let p = convolve(&grp, &mu, &nu)?;
    Ok(Output::ok(p.to_string(), json!({ "product": p })))
}

pub fn conv_classify(g: &Global, group: &Path, measure: &Path) -> Result<Output> {
    let grp = load_group(group, g)?;
    let mu = load_measure(measure, grp.order())?;
    let (idem_text, idem_json) = match classify_idempotent_measure(&grp, &mu)? {
        IdempotentClass::HaarOf(h) => (format!("Haar({h})"), json!({ "haar_of": h })),
        IdempotentClass::NotIdempotent => ("no".to_string(), Value::Null),
    };
    let (reg_text, reg_json) = match classify_regular_measure(&grp, &mu)? {
        MeasureClass::Regular(w) => (
            format!("Haar({})*{}", w.subgroup, w.shift),
            json!({ "subgroup": w.subgroup, "shift": w.shift }),
        ),
        MeasureClass::NotRegular => ("no".to_string(), Value::Null),
    };
    Ok(Output::ok(
        format!("support: {}\nidempotent: {idem_text}\nregular: {reg_text}\n", mu.support()),
        json!({ "support": mu.support(), "idempotent": idem_json, "regular": reg_json }),
    ))
}

fn grid_size(n: usize, d: usize) -> u128 {
    // measures with denominator exactly k number C(n + k - 1, k); bound the union by the sum
    (1..=d)
        .map(|k| {
            let mut c: u128 = 1;
            for i in 0..k as u128 {
                c = c.saturating_mul(n as u128 + i) / (i + 1);
            }
            c
        })
        .fold(0u128, u128::saturating_add)
}

pub fn conv_support_iso(g: &Global, group: &Path) -> Result<Output> {
    let grp = load_group(group, g)?;
    let r = support_iso_check(&grp, g.max_group_order)?;
    let n = grp.order();
    let d = g.grid_denominator;
    let mut text = format!(
        "regular measures: {}\nregular subsets: {}\nsum of indices: {}\nbijective: {}\nhomomorphism: {}\n",
        r.regular_measures,
        r.regular_subsets,
        r.expected,
        yes(r.bijective),
        match r.homomorphism_failure {
            None => "yes".to_string(),
            Some((i, j)) => format!("no, at ({i}, {j})"),
        }
    );
    // regular grid measures must all land on regular subsets
    let grid_scan = if grid_size(n, d) <= MAX_GRID_SCAN {
        let mut regular = 0;
        let mut stray = None;
        for mu in measure_grid_up_to(n, d) {
            if let MeasureClass::Regular(w) = classify_regular_measure(&grp, &mu)? {
                regular += 1;
                let coset = Subset::from_indices(n, w.subgroup.iter().map(|h| grp.mul(h, w.shift)));
                if coset != mu.support() && stray.is_none() {
                    stray = Some(mu);
                }
            }
        }
        writeln!(text, "grid (denominator <= {d}): {regular} regular, supports {}", match &stray {
            None => "all cosets".to_string(),
            Some(mu) => format!("off for {mu:?}"),
        })
        .unwrap();
        if stray.is_some() {
            writeln!(text, "passed: no").unwrap();
        }
        json!({ "denominator": d, "regular": regular, "passed": stray.is_none() })
    } else {
        writeln!(text, "grid (denominator <= {d}): skipped, too large").unwrap();
        Value::Null
    };
    let passed = r.passed && !matches!(grid_scan.get("passed"), Some(Value::Bool(false)));
    writeln!(text, "passed: {}", yes(passed)).unwrap();
    Ok(Output {
        code: if passed { EXIT_OK } else { EXIT_USAGE },
        text,
        json: json!({ "report": r, "grid": grid_scan, "passed": passed }),
    })
}

pub fn superext(g: &Global, path: &Path) -> Result<Output> {
    let s = load_semigroup(path, g)?;
    let fam = with_path(path, superextension_semigroup(&s))?;
    let l = &fam.semigroup;
    let idem = idempotents(l);
    let (inverse, clifford, commutative) = (is_inverse_semigroup(l), is_clifford(l), is_commutative(l));
    let mut text = String::new();
    for (i, f) in fam.families.iter().enumerate() {
        writeln!(text, "# {i}: {f}").unwrap();
    }
    text.push_str(&serialize_table(l, l.name()));
    writeln!(text, "# idempotents: {}", join(&idem)).unwrap();
    writeln!(text, "# inverse: {}", yes(inverse)).unwrap();
    writeln!(text, "# Clifford: {}", yes(clifford)).unwrap();
    writeln!(text, "# commutative: {}", yes(commutative)).unwrap();
    let json = json!({
        "order": l.order(),
        "families": fam.families,
        "principal": fam.principal_indices(),
        "table": rows(l),
        "idempotents": idem,
        "inverse": inverse,
        "clifford": clifford,
        "commutative": commutative,
    });
    Ok(Output::ok(text, json))
}

/// Mixed-radix coordinates of a product-group index, first factor most significant.
fn coordinates(factors: &[FiniteGroup], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; factors.len()];
    for (slot, h) in out.iter_mut().zip(factors).rev() {
        *slot = index % h.order();
        index /= h.order();
    }
    out
}

fn tuple(factors: &[FiniteGroup], index: usize) -> String {
    let c: Vec<String> = coordinates(factors, index).iter().map(usize::to_string).collect();
    format!("({})", c.join(","))
}

fn group_json(h: &FiniteGroup) -> Value {
    json!({ "name": h.name(), "order": h.order(), "table": rows(h) })
}

fn factor_names(factors: &[FiniteGroup]) -> String {
    factors
        .iter()
        .map(|h| match h.name() {
            Some(name) => name.to_string(),
            None => format!("H[{}]", h.order()),
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".to_string(),
        Verdict::Fail(w) => format!("FAIL, witness {}", serde_json::to_string(w).unwrap()),
        Verdict::NotApplicable(why) => format!("not applicable ({why})"),
        Verdict::Vacuous(why) => format!("vacuous ({why})"),
    }
}

fn report_text(r: &ObstructionReport) -> String {
    let mut text = String::new();
    writeln!(text, "regular: {}", yes(r.regular)).unwrap();
    if let Some(x) = r.non_regular_witness {
        writeln!(text, "  non-regular element: {x}").unwrap();
    }
    writeln!(text, "(1) unique inverses: {}", verdict_text(&r.inverse)).unwrap();
    writeln!(text, "(2) filters totally disconnected: {}", verdict_text(&r.filters_totally_disconnected)).unwrap();
    writeln!(text, "(3) x^2 x^-1 idempotent iff x is: {}", verdict_text(&r.square_inverse_idempotent)).unwrap();
    writeln!(
        text,
        "(4) conjugate idempotents incomparable: {}",
        verdict_text(&r.conjugate_idempotents_incomparable)
    )
    .unwrap();
    text
}

pub fn embed(g: &Global, path: &Path, target: Target) -> Result<Output> {
    let s = load_semigroup(path, g)?;
    let target = match target {
        Target::Exp => EmbedTarget::Exp,
        Target::Conv => EmbedTarget::Conv,
    };
    let outcome = decide_embedding(&s, target, g.max_product_order)?;
    let source = json!({ "order": s.order(), "table": rows(&s) });
    let out = match &outcome {
        EmbedOutcome::ExpEmbedded(e) => {
            let mut text = format!(
                "embedded into exp(G), G = {} (order {})\n",
                factor_names(&e.factors),
                e.group.order()
            );
            for (x, a) in e.images.iter().enumerate() {
                let points: Vec<String> = a.iter().map(|i| tuple(&e.factors, i)).collect();
                writeln!(text, "{x} -> {{{}}}", points.join(",")).unwrap();
            }
            let json = json!({
                "outcome": "exp-embedded",
                "source": source,
                "factors": e.factors.iter().map(group_json).collect::<Vec<_>>(),
                "group": group_json(&e.group),
                "images": e.images,
            });
            Output::ok(text, json)
        }
        EmbedOutcome::MeasureEmbedded(m) => {
            let mut text = format!(
                "embedded into P(G), G = {} (order {})\n",
                factor_names(&m.factors),
                m.group.order()
            );
            for (x, mu) in m.images.iter().enumerate() {
                writeln!(text, "# element {x}").unwrap();
                for i in mu.support().iter() {
                    let w = mu.weight(i);
                    writeln!(text, "{i}: {}/{}  # {}", w.numer(), w.denom(), tuple(&m.factors, i)).unwrap();
                }
            }
            let json = json!({
                "outcome": "measure-embedded",
                "source": source,
                "factors": m.factors.iter().map(group_json).collect::<Vec<_>>(),
                "group": group_json(&m.group),
                "images": m.images,
            });
            Output::ok(text, json)
        }
        EmbedOutcome::Obstructed(r) => Output {
            code: EXIT_OBSTRUCTION,
            text: format!("obstruction certificate: no embedding into exp(G) or P(G)\n{}", report_text(r)),
            json: json!({ "outcome": "obstructed", "source": source, "report": r }),
        },
        EmbedOutcome::Inconclusive {
            report,
            reason,
            attempts,
        } => {
            let mut text = format!("inconclusive: {reason}\n{}", report_text(report));
            for a in attempts {
                match &a.embedding {
                    Some(img) => writeln!(text, "search exp({}): embedding {:?}", a.target, img).unwrap(),
                    None => writeln!(text, "search exp({}): none", a.target).unwrap(),
                }
            }
            Output {
                code: EXIT_INCONCLUSIVE,
                text,
                json: json!({
                    "outcome": "inconclusive",
                    "source": source,
                    "reason": reason,
                    "report": report,
                    "attempts": attempts,
                }),
            }
        }
    };
    debug_assert_eq!(out.code as i32, outcome.exit_code());
    Ok(out)
}

pub fn verify_paper(g: &Global) -> Result<Output> {
    let config = VerifyConfig {
        quick: g.quick,
        seed: g.seed,
        max_product_order: g.max_product_order,
    };
    let results = run_all(&config);
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{:>2}  {}  {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.title).unwrap();
        for f in &r.failures {
            writeln!(text, "      {f}").unwrap();
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(text, "{} passed, {failed} failed", results.len() - failed).unwrap();
    Ok(Output {
        code: if failed == 0 { EXIT_OK } else { EXIT_USAGE },
        text,
        json: json!({ "config": config, "claims": results, "passed": failed == 0 }),
    })
}
