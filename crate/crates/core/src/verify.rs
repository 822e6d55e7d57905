//! The numbered acceptance claims, runnable as one report.
//!
//! Each claim recomputes its facts from the public API and cross-checks them
//! against an exhaustive search where one is feasible.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::convolution::{
    classify_idempotent_measure, classify_regular_measure, convolve, measure_grid_up_to, measure_inverse,
    regular_measures, support_iso_check, IdempotentClass, RationalMeasure,
};
use crate::embedding::{assemble_exp_embedding, assemble_measure_embedding, obstruction_report, MapVerdict};
use crate::error::Result;
use crate::functor_ext::{inclusion_hyperspace_semigroup, invariant_elements, superextension_semigroup};
use crate::group::{make_cyclic, small_group_corpus, FiniteGroup};
use crate::hyper::{
    conjugate_idempotents_exp, coset_inverse, exp_element, exp_index, exp_semigroup, product_unchecked,
    regular_elements_exp,
};
use crate::semigroup::random::random_clifford;
use crate::semigroup::{
    adjoin_identity, direct_product_semigroup, find_embedding, find_embedding_with_limit, is_clifford,
    is_commutative, is_inverse_semigroup, is_isomorphic, make_brandt, make_left_zero, make_right_zero,
    FiniteSemigroup, Semigroup,
};
use crate::subset::Subset;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const RANDOM_CLIFFORD_SAMPLES: usize = 100;
pub const QUICK_RANDOM_CLIFFORD_SAMPLES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub quick: bool,
    pub seed: u64,
    pub max_product_order: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            quick: false,
            seed: DEFAULT_SEED,
            max_product_order: crate::embedding::DEFAULT_MAX_PRODUCT_ORDER,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    /// Facts established along the way.
    pub findings: Vec<String>,
    /// One line per violated check, each naming its witness.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub budget: Duration,
}

impl ClaimResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

struct Claim {
    findings: Vec<String>,
    failures: Vec<String>,
}

impl Claim {
    fn new() -> Self {
        Claim {
            findings: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.findings.push(s.into());
    }

    fn check(&mut self, ok: bool, s: impl Into<String>) {
        if !ok {
            self.failures.push(s.into());
        }
    }
}

type ClaimFn = fn(&VerifyConfig, &mut Claim) -> Result<()>;

pub const CLAIMS: [(u32, &str, u64); 10] = [
    (1, "Reg(exp(C4)) has 7 elements, all cosets Hx", 1),
    (2, "lambda(C4) is a 12-element commutative inverse Clifford semigroup isomorphic to C4 x C2^1", 10),
    (3, "lambda(C4) does not embed in exp(C4) but sits inside G(C4) with agreeing products", 30),
    (4, "idempotent measures are exactly Haar measures of subgroups (denominators <= 6)", 60),
    (5, "regular measures are exactly coset-uniform, with unique inverse x^-1*lambda (denominators <= 4)", 60),
    (6, "supp is a bijective homomorphism Reg(P(G)) -> Reg(exp(G)) for |G| <= 8", 60),
    (7, "random Clifford inverse semigroups embed in exp(G) and P(G), compatibly with supp", 120),
    (8, "Brandt and left/right-zero semigroups carry obstruction certificates", 60),
    (9, "distinct conjugate idempotents of Reg(exp(G)) are incomparable for |G| <= 8", 30),
    (10, "invariant elements in exp(G), Reg(P(G)), lambda(C4) and G(C4)", 30),
];

fn claim_fn(id: u32) -> ClaimFn {
    match id {
        1 => claim_1,
        2 => claim_2,
        3 => claim_3,
        4 => claim_4,
        5 => claim_5,
        6 => claim_6,
        7 => claim_7,
        8 => claim_8,
        9 => claim_9,
        10 => claim_10,
        _ => unreachable!("claims are numbered 1..=10"),
    }
}

pub fn run_claim(id: u32, config: &VerifyConfig) -> ClaimResult {
    let (_, title, budget) = CLAIMS.iter().copied().find(|c| c.0 == id).expect("known claim");
    let mut claim = Claim::new();
    let start = Instant::now();
    if let Err(e) = claim_fn(id)(config, &mut claim) {
        claim.failures.push(format!("error: {e}"));
    }
    ClaimResult {
        id,
        title,
        passed: claim.failures.is_empty(),
        findings: claim.findings,
        failures: claim.failures,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget),
    }
}

pub fn run_all(config: &VerifyConfig) -> Vec<ClaimResult> {
    CLAIMS.iter().map(|c| run_claim(c.0, config)).collect()
}

fn c(n: usize) -> FiniteGroup {
    make_cyclic(n).expect("cyclic")
}

fn naive_product(g: &FiniteGroup, a: &Subset, b: &Subset) -> Subset {
    Subset::from_indices(g.order(), a.iter().flat_map(|x| b.iter().map(move |y| g.mul(x, y))))
}

fn claim_1(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    let c4 = c(4);
    let reg = regular_elements_exp(&c4, 10)?;
    let listed: BTreeSet<Subset> = reg.iter().map(|(a, _)| a.clone()).collect();
    let by_search: BTreeSet<Subset> = (1u64..16)
        .map(|m| Subset::from_mask(4, m))
        .filter(|a| (1u64..16).any(|b| naive_product(&c4, &naive_product(&c4, a, &Subset::from_mask(4, b)), a) == *a))
        .collect();
    out.note(format!("Reg(exp(C4)) = {:?}", listed));
    out.check(reg.len() == 7, format!("expected 7 regular elements, found {}", reg.len()));
    out.check(listed == by_search, format!("coset list differs from ABA=A search {:?}", by_search));
    for (a, w) in &reg {
        let coset = Subset::from_indices(4, w.subgroup.iter().map(|h| c4.mul(h, w.shift)));
        out.check(coset == *a, format!("{a} is not H x for its witness"));
    }
    Ok(())
}

fn c4_times_c2_one() -> FiniteSemigroup {
    direct_product_semigroup(&c(4), &adjoin_identity(&c(2)))
}

fn claim_2(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    let l4 = superextension_semigroup(&c(4))?;
    let s = &l4.semigroup;
    out.check(s.order() == 12, format!("lambda(C4) has {} elements", s.order()));
    out.check(is_commutative(s), "lambda(C4) is not commutative");
    out.check(is_inverse_semigroup(s), "lambda(C4) is not inverse");
    out.check(is_clifford(s), "lambda(C4) is not Clifford");
    let iso = is_isomorphic(s, &c4_times_c2_one())?;
    out.note(format!("lambda(C4) isomorphic to C4 x C2^1 (direct product reading): {iso}"));
    out.check(
        iso,
        "lambda(C4) is not isomorphic to C4 x C2^1: the direct-product reading of the sum does not match",
    );
    Ok(())
}

fn claim_3(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    let c4 = c(4);
    let l4 = superextension_semigroup(&c4)?;
    let exp = exp_semigroup(&c4, 10)?;
    let found = find_embedding(&l4.semigroup, &exp)?;
    out.check(found.is_none(), format!("unexpected embedding lambda(C4) -> exp(C4): {found:?}"));
    let g4 = inclusion_hyperspace_semigroup(&c4)?;
    out.note(format!("|G(C4)| = {}", g4.semigroup.order()));
    let mut index = Vec::new();
    for f in &l4.families {
        match g4.index_of(f) {
            Some(i) => index.push(i),
            None => {
                out.check(false, format!("{f} is not in G(C4)"));
                return Ok(());
            }
        }
    }
    let verdict = crate::embedding::verify_index_embedding(&l4.semigroup, &g4.semigroup, &index);
    out.check(verdict.passed(), format!("inclusion lambda(C4) -> G(C4) fails: {verdict:?}"));
    Ok(())
}

fn claim_4(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    let mut total = 0;
    for g in [c(2), c(3), c(4)] {
        let grid = measure_grid_up_to(g.order(), 6);
        total += grid.len();
        let mut idempotent = 0;
        for mu in &grid {
            let square = convolve(&g, mu, mu)?;
            let class = classify_idempotent_measure(&g, mu)?;
            let haar = matches!(class, IdempotentClass::HaarOf(_));
            out.check(
                (square == *mu) == haar,
                format!("{:?}: mu*mu = mu is {} but classification says {class:?}", mu, square == *mu),
            );
            idempotent += usize::from(haar);
        }
        out.note(format!("C{}: {} grid measures, {idempotent} idempotent", g.order(), grid.len()));
    }
    // on C2, mu = (p, 1-p) is idempotent iff 2p² - 3p + 1 = 0
    let c2 = c(2);
    for mu in measure_grid_up_to(2, 6) {
        let p = mu.weight(0);
        let one = Ratio::from_integer(1u128);
        let two = Ratio::from_integer(2u128);
        let three = Ratio::from_integer(3u128);
        let root = two * p * p + one == three * p;
        let idem = convolve(&c2, &mu, &mu)? == mu;
        out.check(root == idem, format!("C2 hand check disagrees at p = {p}"));
    }
    out.note(format!("{total} measures checked"));
    Ok(())
}

fn coset_uniform_measures(g: &FiniteGroup) -> Result<Vec<RationalMeasure>> {
    Ok(regular_measures(g, 64)?.into_iter().map(|(m, _)| m).collect())
}

fn claim_5(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    for g in [c(2), c(3)] {
        let grid = measure_grid_up_to(g.order(), 4);
        let mut candidates: Vec<RationalMeasure> = grid.clone();
        candidates.extend(coset_uniform_measures(&g)?);
        candidates.sort();
        candidates.dedup();
        let mut regular = 0;
        for mu in &grid {
            let class = classify_regular_measure(&g, mu)?;
            let witnesses: Vec<&RationalMeasure> = candidates
                .iter()
                .filter(|nu| convolve(&g, &convolve(&g, mu, nu).unwrap(), mu).unwrap() == *mu)
                .collect();
            out.check(
                witnesses.is_empty() != class.witness().is_some(),
                format!("{mu:?}: search found {} witnesses, classification {class:?}", witnesses.len()),
            );
            if class.witness().is_some() {
                regular += 1;
                let inv = measure_inverse(&g, mu)?;
                let unique: Vec<&RationalMeasure> = witnesses
                    .iter()
                    .copied()
                    .filter(|nu| convolve(&g, &convolve(&g, nu, mu).unwrap(), nu).unwrap() == **nu)
                    .collect();
                out.check(unique == vec![&inv], format!("{mu:?}: inverses {unique:?}, expected {inv:?}"));
            }
        }
        out.note(format!("C{}: {} grid measures, {regular} regular", g.order(), grid.len()));
    }
    Ok(())
}

fn claim_6(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    for g in small_group_corpus(8) {
        let r = support_iso_check(&g, 64)?;
        out.note(format!("{}: |Reg| = {}", r.group, r.regular_measures));
        out.check(r.passed, format!("support map check failed: {r:?}"));
    }
    Ok(())
}

fn claim_7(config: &VerifyConfig, out: &mut Claim) -> Result<()> {
    let samples = if config.quick {
        QUICK_RANDOM_CLIFFORD_SAMPLES
    } else {
        RANDOM_CLIFFORD_SAMPLES
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut largest = 0;
    for k in 0..samples {
        let inst = random_clifford(&mut rng, 20, config.max_product_order);
        let s = &inst.semigroup;
        let exp = assemble_exp_embedding(s, config.max_product_order)?;
        let measure = assemble_measure_embedding(s, config.max_product_order)?;
        largest = largest.max(exp.group.order());
        let v1 = exp.verify(s);
        let v2 = measure.verify(s);
        out.check(v1 == MapVerdict::Pass, format!("sample {k}: exp embedding {v1:?}"));
        out.check(v2 == MapVerdict::Pass, format!("sample {k}: measure embedding {v2:?}"));
        let commutes = measure.images.iter().zip(&exp.images).all(|(m, a)| m.support() == *a);
        out.check(commutes, format!("sample {k}: supp does not carry the measure image onto the exp image"));
    }
    out.note(format!("{samples} samples, largest product group {largest}"));
    Ok(())
}

fn claim_8(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    let cases: Vec<(&str, FiniteSemigroup, u8)> = vec![
        ("B(C2,2)", make_brandt(&c(2), 2)?, 3),
        ("B(C3,2)", make_brandt(&c(3), 2)?, 3),
        ("LZ2", make_left_zero(2), 1),
        ("RZ2", make_right_zero(2), 1),
    ];
    let targets: Vec<FiniteGroup> = small_group_corpus(6);
    for (name, s, condition) in &cases {
        let r = obstruction_report(s);
        let failed = match condition {
            1 => r.inverse.is_fail(),
            _ => r.square_inverse_idempotent.is_fail(),
        };
        out.check(failed, format!("{name}: condition ({condition}) did not fail"));
        out.check(r.witnesses_hold(s), format!("{name}: witness does not check out"));
        for g in &targets {
            let exp = exp_semigroup(g, 10)?;
            let found = find_embedding_with_limit(s, &exp, s.order().max(16))?;
            out.check(
                found.is_none(),
                format!("{name} embeds in exp({}) via {found:?}", g.name().unwrap_or("G")),
            );
        }
        out.note(format!("{name}: certificate on condition ({condition}); no embedding into exp(G), |G| <= 6"));
    }
    Ok(())
}

fn claim_9(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    for g in small_group_corpus(8) {
        let name = g.name().unwrap_or("G").to_string();
        let pairs = conjugate_idempotents_exp(&g, 10)?;
        for p in &pairs {
            out.check(!p.comparable, format!("{name}: {} and {} are conjugate via {} and comparable", p.e, p.f, p.z));
        }
        for (x, w) in regular_elements_exp(&g, 10)? {
            let x_inv = coset_inverse(&g, &w);
            let cube = product_unchecked(&g, &product_unchecked(&g, &x, &x), &x_inv);
            let idem = |a: &Subset| product_unchecked(&g, a, a) == *a;
            out.check(idem(&x) == idem(&cube), format!("{name}: x = {x} breaks x idempotent <=> x^2 x^-1 idempotent"));
        }
        out.note(format!("{name}: {} conjugate pairs", pairs.len()));
    }
    Ok(())
}

fn claim_10(_: &VerifyConfig, out: &mut Claim) -> Result<()> {
    for g in small_group_corpus(6) {
        let n = g.order();
        let exp = exp_semigroup(&g, 10)?;
        let singletons: Vec<usize> = (0..n).map(|x| exp_index(&Subset::singleton(n, x))).collect();
        let inv = invariant_elements(&exp, &singletons)?;
        let sets: Vec<Subset> = inv.iter().map(|&i| exp_element(n, i)).collect();
        out.check(
            sets == vec![Subset::full(n)],
            format!("exp({}): invariant elements {sets:?}", g.name().unwrap_or("G")),
        );
        let mut measures = coset_uniform_measures(&g)?;
        if n <= 4 {
            measures.extend(measure_grid_up_to(n, 4));
        }
        measures.sort();
        measures.dedup();
        let invariant: Vec<&RationalMeasure> = measures
            .iter()
            .filter(|mu| {
                (0..n).all(|x| {
                    let d = RationalMeasure::point_mass(n, x);
                    convolve(&g, &d, mu).unwrap() == **mu && convolve(&g, mu, &d).unwrap() == **mu
                })
            })
            .collect();
        let haar = RationalMeasure::uniform_on(&Subset::full(n))?;
        out.check(
            invariant == vec![&haar],
            format!("P({}): invariant measures {invariant:?}", g.name().unwrap_or("G")),
        );
    }
    out.note("exp(G): only G is invariant; P(G): only the Haar measure, for |G| <= 6");
    let c4 = c(4);
    let l4 = superextension_semigroup(&c4)?;
    let inv = invariant_elements(&l4.semigroup, &l4.principal_indices())?;
    let found: Vec<String> = inv.iter().map(|&i| l4.families[i].to_string()).collect();
    out.note(format!("lambda(C4) invariant elements: {found:?}"));
    out.check(!inv.is_empty(), "lambda(C4) has no C4-invariant element");
    let g4 = inclusion_hyperspace_semigroup(&c4)?;
    let inv = invariant_elements(&g4.semigroup, &g4.principal_indices())?;
    let found: Vec<String> = inv.iter().map(|&i| g4.families[i].to_string()).collect();
    out.note(format!("G(C4) invariant elements: {found:?}"));
    out.check(!inv.is_empty(), "G(C4) has no C4-invariant element");
    Ok(())
}
