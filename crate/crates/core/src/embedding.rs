//! Embedding finite Clifford inverse semigroups into `exp(G)` and `P(G)`, and
//! certificates that an inverse-semigroup embedding is impossible.
//!
//! The pipeline runs `S → ∏_e H_e⁰ → exp(∏_e H̃_e)`, where `H̃_e` is `H_e` when
//! nontrivial and `C2` otherwise. Coordinate `e` of `x` is `x·e` when
//! `e ≤ x⁻¹x` and the zero otherwise; inside `exp(H̃_e)` an element `h` becomes
//! `{h}` and the zero becomes the whole of `H̃_e`.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use serde::Serialize;

use crate::convolution::{convolve, RationalMeasure};
use crate::error::{Error, Result};
use crate::group::{make_cyclic, product_of, small_group_corpus, FiniteGroup};
use crate::hyper::{exp_semigroup, product_unchecked};
use crate::semigroup::{
    find_embedding_with_limit, inverse_table, inverses_of, is_clifford, is_idempotent,
    is_inverse_semigroup, is_regular_element, make_group_with_zero, make_strong_semilattice,
    semilattice_of, FiniteSemigroup, IdempotentSemilattice, LinkMap, MaximalSubgroup, Semigroup,
    Semilattice,
};
use crate::semigroup::{conjugate_idempotent_pairs, ConjugatePair};
use crate::subset::Subset;

pub const DEFAULT_MAX_PRODUCT_ORDER: usize = 1024;
/// Targets `exp(G)` tried when the structure theory gives no answer.
pub const BRUTE_FORCE_TARGET_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MapVerdict {
    Pass,
    /// Two distinct elements with the same image.
    NotInjective { x: usize, y: usize },
    /// `f(xy) ≠ f(x)f(y)`.
    NotHomomorphic { x: usize, y: usize },
}

impl MapVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, MapVerdict::Pass)
    }
}

/// Checks injectivity, then the homomorphism identity over all pairs in
/// lexicographic order, reporting the first violation.
pub fn verify_embedding<S, T, F>(source: &S, images: &[T], mul: F) -> MapVerdict
where
    S: Semigroup + ?Sized,
    T: Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let n = source.order();
    assert_eq!(images.len(), n, "one image per source element");
    let mut seen: HashMap<&T, usize> = HashMap::with_capacity(n);
    for (x, t) in images.iter().enumerate() {
        if let Some(&y) = seen.get(t) {
            return MapVerdict::NotInjective { x: y, y: x };
        }
        seen.insert(t, x);
    }
    for x in 0..n {
        for y in 0..n {
            if images[source.mul(x, y)] != mul(&images[x], &images[y]) {
                return MapVerdict::NotHomomorphic { x, y };
            }
        }
    }
    MapVerdict::Pass
}

/// `verify_embedding` for an index map between tabulated semigroups.
pub fn verify_index_embedding<S, T>(source: &S, target: &T, images: &[usize]) -> MapVerdict
where
    S: Semigroup + ?Sized,
    T: Semigroup + ?Sized,
{
    verify_embedding(source, images, |&a, &b| target.mul(a, b))
}

/// `S = ⋃_e H_e` with links `φ_{f,e}(x) = x·e` for `e ≤ f`.
#[derive(Debug, Clone)]
pub struct CliffordComponents {
    pub semilattice: IdempotentSemilattice,
    /// `H_e` for each idempotent, in the order of `semilattice.members()`.
    pub groups: Vec<MaximalSubgroup>,
    /// Keyed by positions `(f, e)` in `members()`, `e ≤ f`; maps local indices.
    pub links: BTreeMap<(usize, usize), Vec<usize>>,
    /// For each element, the position of its idempotent `x⁻¹x`.
    pub component_of: Vec<usize>,
    pub inverse: Vec<usize>,
}

impl CliffordComponents {
    pub fn idempotent_count(&self) -> usize {
        self.groups.len()
    }

    /// Rebuilds the semigroup as a strong semilattice of the components.
    pub fn reassemble(&self) -> Result<FiniteSemigroup> {
        let k = self.idempotent_count();
        let members = self.semilattice.members();
        let pos = |e: usize| members.binary_search(&e).expect("idempotent");
        let meet = (0..k * k)
            .map(|i| pos(self.semilattice.meet(members[i / k], members[i % k]).expect("members")))
            .collect();
        let e = Semilattice::from_meet_table(k, meet)?;
        let groups: Vec<FiniteGroup> = self.groups.iter().map(|h| h.group.clone()).collect();
        let links: LinkMap = self.links.clone();
        make_strong_semilattice(&e, &groups, &links)
    }
}

pub fn clifford_components<S: Semigroup + ?Sized>(s: &S) -> Result<CliffordComponents> {
    if !is_inverse_semigroup(s) {
        return Err(Error::invalid("not an inverse semigroup"));
    }
    if !is_clifford(s) {
        return Err(Error::invalid("not a Clifford semigroup"));
    }
    let inverse = inverse_table(s)?;
    let semilattice = semilattice_of(s)?;
    let members = semilattice.members().to_vec();
    let groups = members
        .iter()
        .map(|&e| crate::semigroup::maximal_subgroup(s, e))
        .collect::<Result<Vec<_>>>()?;
    let pos = |e: usize| members.binary_search(&e).expect("idempotent");
    let component_of: Vec<usize> = (0..s.order()).map(|x| pos(s.mul(inverse[x], x))).collect();
    let covered: usize = groups.iter().map(|h| h.elements.len()).sum();
    assert_eq!(covered, s.order(), "maximal subgroups of a Clifford semigroup partition it");
    let mut links = BTreeMap::new();
    for (fi, &f) in members.iter().enumerate() {
        for (ei, &e) in members.iter().enumerate() {
            if semilattice.leq(e, f) {
                let map = groups[fi]
                    .elements
                    .iter()
                    .map(|&x| groups[ei].local_index(s.mul(x, e)).expect("x·e lies in H_e"))
                    .collect();
                links.insert((fi, ei), map);
            }
        }
    }
    Ok(CliffordComponents {
        semilattice,
        groups,
        links,
        component_of,
        inverse,
    })
}

/// Coordinates of each element in `∏_e H_e⁰`: `Some(local index)` or `None` for zero.
#[derive(Debug, Clone)]
pub struct ProductH0Map {
    pub components: CliffordComponents,
    pub images: Vec<Vec<Option<usize>>>,
}

impl ProductH0Map {
    /// Componentwise product in `∏_e H_e⁰`.
    pub fn multiply(&self, a: &[Option<usize>], b: &[Option<usize>]) -> Vec<Option<usize>> {
        a.iter()
            .zip(b)
            .zip(&self.components.groups)
            .map(|((x, y), h)| match (x, y) {
                (Some(x), Some(y)) => Some(h.group.mul(*x, *y)),
                _ => None,
            })
            .collect()
    }

    pub fn verify<S: Semigroup + ?Sized>(&self, s: &S) -> MapVerdict {
        verify_embedding(s, &self.images, |a, b| self.multiply(a, b))
    }
}

pub fn embed_into_product_h0<S: Semigroup + ?Sized>(s: &S) -> Result<ProductH0Map> {
    let components = clifford_components(s)?;
    let members = components.semilattice.members().to_vec();
    let images = (0..s.order())
        .map(|x| {
            let f = members[components.component_of[x]];
            members
                .iter()
                .zip(&components.groups)
                .map(|(&e, h)| components.semilattice.leq(e, f).then(|| h.local_index(s.mul(x, e)).expect("x·e ∈ H_e")))
                .collect()
        })
        .collect();
    Ok(ProductH0Map { components, images })
}

/// `H̃`: the group itself when nontrivial, else `C2`.
pub fn nontrivial_cover(h: &FiniteGroup) -> FiniteGroup {
    if h.order() >= 2 {
        h.clone()
    } else {
        make_cyclic(2).expect("C2")
    }
}

/// `H⁰ → exp(H̃)` with `h ↦ {h}` and `0 ↦ H̃`. The source is indexed like
/// [`make_group_with_zero`]: the group first, the zero last.
#[derive(Debug, Clone)]
pub struct H0ExpMap {
    pub source: FiniteSemigroup,
    pub cover: FiniteGroup,
    pub images: Vec<Subset>,
}

impl H0ExpMap {
    pub fn verify(&self) -> MapVerdict {
        verify_embedding(&self.source, &self.images, |a, b| product_unchecked(&self.cover, a, b))
    }
}

pub fn embed_h0_into_exp(h: &FiniteGroup) -> H0ExpMap {
    let cover = nontrivial_cover(h);
    let n = cover.order();
    let mut images: Vec<Subset> = (0..h.order()).map(|x| Subset::singleton(n, x)).collect();
    images.push(Subset::full(n));
    H0ExpMap {
        source: make_group_with_zero(h),
        cover,
        images,
    }
}

/// `S → exp(G)` with `G = ∏_e H̃_e`, each image a product set `∏_e K_e`.
#[derive(Debug, Clone)]
pub struct ExpEmbedding {
    pub factors: Vec<FiniteGroup>,
    pub group: FiniteGroup,
    pub images: Vec<Subset>,
}

impl ExpEmbedding {
    pub fn verify<S: Semigroup + ?Sized>(&self, s: &S) -> MapVerdict {
        verify_embedding(s, &self.images, |a, b| product_unchecked(&self.group, a, b))
    }
}

/// `S → P(G)`, each image uniform on the corresponding product set.
#[derive(Debug, Clone)]
pub struct MeasureEmbedding {
    pub factors: Vec<FiniteGroup>,
    pub group: FiniteGroup,
    pub images: Vec<RationalMeasure>,
}

impl MeasureEmbedding {
    pub fn verify<S: Semigroup + ?Sized>(&self, s: &S) -> MapVerdict {
        verify_embedding(s, &self.images, |a, b| convolve(&self.group, a, b).expect("same carrier"))
    }
}

/// `∏_e |H̃_e|` for a Clifford inverse semigroup.
pub fn required_product_order(components: &CliffordComponents) -> usize {
    components
        .groups
        .iter()
        .map(|h| h.group.order().max(2))
        .fold(1usize, |acc, k| acc.saturating_mul(k))
}

fn product_set(factors: &[FiniteGroup], coords: &[Option<usize>]) -> Subset {
    let total: usize = factors.iter().map(FiniteGroup::order).product();
    let mut indices = vec![0usize];
    for (h, c) in factors.iter().zip(coords) {
        let choices: Vec<usize> = match c {
            Some(x) => vec![*x],
            None => (0..h.order()).collect(),
        };
        indices = indices
            .iter()
            .flat_map(|&i| choices.iter().map(move |&x| i * h.order() + x))
            .collect();
    }
    Subset::from_indices(total, indices)
}

pub fn assemble_exp_embedding<S: Semigroup + ?Sized>(s: &S, max_product_order: usize) -> Result<ExpEmbedding> {
    let h0 = embed_into_product_h0(s)?;
    Error::check_limit(
        "product group order for the exp/P embedding",
        required_product_order(&h0.components),
        max_product_order,
    )?;
    let factors: Vec<FiniteGroup> = h0.components.groups.iter().map(|h| nontrivial_cover(&h.group)).collect();
    let group = product_of(&factors);
    let images = h0.images.iter().map(|coords| product_set(&factors, coords)).collect();
    let out = ExpEmbedding { factors, group, images };
    match out.verify(s) {
        MapVerdict::Pass => Ok(out),
        bad => Err(Error::invalid(format!("constructed exp embedding failed verification: {bad:?}"))),
    }
}

pub fn assemble_measure_embedding<S: Semigroup + ?Sized>(
    s: &S,
    max_product_order: usize,
) -> Result<MeasureEmbedding> {
    let exp = assemble_exp_embedding(s, max_product_order)?;
    let images = exp
        .images
        .iter()
        .map(RationalMeasure::uniform_on)
        .collect::<Result<Vec<_>>>()?;
    let out = MeasureEmbedding {
        factors: exp.factors,
        group: exp.group,
        images,
    };
    match out.verify(s) {
        MapVerdict::Pass => Ok(out),
        bad => Err(Error::invalid(format!("constructed measure embedding failed verification: {bad:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An element whose inverses are not unique.
    InverseCount { x: usize, inverses: Vec<usize> },
    /// `x²x⁻¹` idempotent while `x` is not, or the reverse.
    SquareInverse {
        x: usize,
        product: usize,
        x_idempotent: bool,
        product_idempotent: bool,
    },
    /// Distinct comparable idempotents `e < f` conjugate through `z`.
    ComparableConjugates { e: usize, f: usize, z: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(Witness),
    NotApplicable(String),
    Vacuous(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

/// The three conditions every inverse subsemigroup of `exp(G)` or `P(G)`
/// satisfies. Any failure is a certificate of non-embeddability; passing all
/// of them is necessary, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub order: usize,
    pub regular: bool,
    /// A non-regular element, when there is one.
    pub non_regular_witness: Option<usize>,
    pub inverse: Verdict,
    pub filters_totally_disconnected: Verdict,
    pub square_inverse_idempotent: Verdict,
    pub conjugate_idempotents_incomparable: Verdict,
}

impl ObstructionReport {
    pub fn has_certificate(&self) -> bool {
        self.inverse.is_fail() || self.square_inverse_idempotent.is_fail() || self.conjugate_idempotents_incomparable.is_fail()
    }

    /// Re-checks every failing witness against the table.
    pub fn witnesses_hold<S: Semigroup + ?Sized>(&self, s: &S) -> bool {
        [&self.inverse, &self.square_inverse_idempotent, &self.conjugate_idempotents_incomparable]
            .into_iter()
            .all(|v| match v {
                Verdict::Fail(w) => witness_holds(s, w),
                _ => true,
            })
    }
}

pub fn witness_holds<S: Semigroup + ?Sized>(s: &S, w: &Witness) -> bool {
    let n = s.order();
    match *w {
        Witness::InverseCount { x, ref inverses } => {
            x < n
                && inverses.len() != 1
                && inverses.iter().all(|&y| {
                    y < n && s.mul(s.mul(x, y), x) == x && s.mul(s.mul(y, x), y) == y
                })
        }
        Witness::SquareInverse {
            x,
            product,
            x_idempotent,
            product_idempotent,
        } => {
            let Ok(inv) = inverse_table(s) else { return false };
            x < n
                && s.mul(s.mul(x, x), inv[x]) == product
                && is_idempotent(s, x) == x_idempotent
                && is_idempotent(s, product) == product_idempotent
                && x_idempotent != product_idempotent
        }
        Witness::ComparableConjugates { e, f, z } => {
            let Ok(inv) = inverse_table(s) else { return false };
            e < n
                && f < n
                && z < n
                && e != f
                && is_idempotent(s, e)
                && is_idempotent(s, f)
                && s.mul(s.mul(z, f), inv[z]) == e
                && s.mul(s.mul(inv[z], e), z) == f
                && s.mul(e, f) == e
                && s.mul(f, e) == e
        }
    }
}

pub fn obstruction_report<S: Semigroup + ?Sized>(s: &S) -> ObstructionReport {
    let n = s.order();
    let non_regular_witness = (0..n).find(|&x| !is_regular_element(s, x));
    let regular = non_regular_witness.is_none();
    let filters_totally_disconnected = Verdict::Vacuous("every finite semilattice is totally disconnected".into());
    if !regular {
        let skip = || Verdict::NotApplicable("not regular".into());
        return ObstructionReport {
            order: n,
            regular,
            non_regular_witness,
            inverse: skip(),
            filters_totally_disconnected,
            square_inverse_idempotent: skip(),
            conjugate_idempotents_incomparable: skip(),
        };
    }
    let bad_inverse = (0..n).find_map(|x| {
        let inverses = inverses_of(s, x);
        (inverses.len() != 1).then_some(Witness::InverseCount { x, inverses })
    });
    let (inverse, square, conjugate) = match bad_inverse {
        Some(w) => {
            let skip = || Verdict::NotApplicable("needs unique inverses".into());
            (Verdict::Fail(w), skip(), skip())
        }
        None => {
            let inv = inverse_table(s).expect("checked inverse");
            let square = (0..n)
                .find_map(|x| {
                    let product = s.mul(s.mul(x, x), inv[x]);
                    let (xi, pi) = (is_idempotent(s, x), is_idempotent(s, product));
                    (xi != pi).then_some(Witness::SquareInverse {
                        x,
                        product,
                        x_idempotent: xi,
                        product_idempotent: pi,
                    })
                })
                .map_or(Verdict::Pass, Verdict::Fail);
            let conjugate = comparable_conjugates(s)
                .map_or(Verdict::Pass, |ConjugatePair { e, f, z }| Verdict::Fail(Witness::ComparableConjugates { e, f, z }));
            (Verdict::Pass, square, conjugate)
        }
    };
    ObstructionReport {
        order: n,
        regular,
        non_regular_witness,
        inverse,
        filters_totally_disconnected,
        square_inverse_idempotent: square,
        conjugate_idempotents_incomparable: conjugate,
    }
}

/// A conjugate pair oriented so that `e < f`, when one exists.
fn comparable_conjugates<S: Semigroup + ?Sized>(s: &S) -> Option<ConjugatePair> {
    let inv = inverse_table(s).ok()?;
    let pairs = conjugate_idempotent_pairs(s).ok()?;
    pairs.into_iter().find_map(|p| {
        let below = |a: usize, b: usize| s.mul(a, b) == a && s.mul(b, a) == a;
        if below(p.e, p.f) {
            Some(p)
        } else if below(p.f, p.e) {
            Some(ConjugatePair {
                e: p.f,
                f: p.e,
                z: inv[p.z],
            })
        } else {
            None
        }
    })
}

/// One row of the fallback search `S → exp(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceAttempt {
    pub target: String,
    pub target_order: usize,
    pub embedding: Option<Vec<usize>>,
}

/// Complete search into `exp(G)` for every corpus group with `|G| ≤ max_group`.
pub fn brute_force_exp_targets<S: Semigroup + ?Sized>(s: &S, max_group: usize) -> Result<Vec<BruteForceAttempt>> {
    small_group_corpus(max_group)
        .iter()
        .map(|g| {
            let target = exp_semigroup(g, max_group)?;
            let embedding = find_embedding_with_limit(s, &target, s.order().max(crate::semigroup::DEFAULT_EMBEDDING_SEARCH_LIMIT))?;
            Ok(BruteForceAttempt {
                target: format!("exp({})", g.name().unwrap_or("G")),
                target_order: target.order(),
                embedding,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedTarget {
    Exp,
    Conv,
}

/// What the decision procedure concluded.
#[derive(Debug, Clone)]
pub enum EmbedOutcome {
    ExpEmbedded(ExpEmbedding),
    MeasureEmbedded(MeasureEmbedding),
    Obstructed(ObstructionReport),
    Inconclusive {
        report: ObstructionReport,
        reason: String,
        attempts: Vec<BruteForceAttempt>,
    },
}

impl EmbedOutcome {
    /// 0 embedded, 2 obstruction certificate, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            EmbedOutcome::ExpEmbedded(_) | EmbedOutcome::MeasureEmbedded(_) => 0,
            EmbedOutcome::Obstructed(_) => 2,
            EmbedOutcome::Inconclusive { .. } => 3,
        }
    }
}

/// Certificate first, then the constructive pipeline for Clifford inverse
/// semigroups, then a bounded search for everything else.
pub fn decide_embedding<S: Semigroup + ?Sized>(
    s: &S,
    target: EmbedTarget,
    max_product_order: usize,
) -> Result<EmbedOutcome> {
    let report = obstruction_report(s);
    if report.has_certificate() {
        return Ok(EmbedOutcome::Obstructed(report));
    }
    let clifford_inverse = report.regular && is_inverse_semigroup(s) && is_clifford(s);
    if clifford_inverse {
        return Ok(match target {
            EmbedTarget::Exp => EmbedOutcome::ExpEmbedded(assemble_exp_embedding(s, max_product_order)?),
            EmbedTarget::Conv => EmbedOutcome::MeasureEmbedded(assemble_measure_embedding(s, max_product_order)?),
        });
    }
    let reason = if report.regular {
        "inverse but not Clifford: no decision procedure applies".to_string()
    } else {
        "not regular: no decision procedure applies".to_string()
    };
    let attempts = brute_force_exp_targets(s, BRUTE_FORCE_TARGET_ORDER)?;
    Ok(EmbedOutcome::Inconclusive {
        report,
        reason,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_symmetric};
    use crate::semigroup::{
        is_isomorphic, make_brandt, make_chain, make_left_zero, make_null, make_right_zero,
    };

    fn c(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    #[test]
    fn verifier_examples() {
        let c4 = c(4);
        assert_eq!(verify_index_embedding(&c4, &c4, &[0, 1, 2, 3]), MapVerdict::Pass);
        let c2 = c(2);
        assert_eq!(verify_index_embedding(&c2, &c2, &[0, 0]), MapVerdict::NotInjective { x: 0, y: 1 });
        // swapping e and a breaks e·e = e first, and a·a = e as well
        let swapped = [1, 0];
        assert_eq!(verify_index_embedding(&c2, &c2, &swapped), MapVerdict::NotHomomorphic { x: 0, y: 0 });
        assert_ne!(swapped[c2.mul(1, 1)], c2.mul(swapped[1], swapped[1]));
    }

    #[test]
    fn components_of_small_examples() {
        let g = make_symmetric(3).unwrap();
        let comp = clifford_components(&g).unwrap();
        assert_eq!(comp.idempotent_count(), 1);
        let c2z = make_group_with_zero(&c(2));
        let comp = clifford_components(&c2z).unwrap();
        assert_eq!(comp.semilattice.members(), &[0, 2]);
        assert_eq!(comp.groups[0].group.order(), 2);
        assert_eq!(comp.groups[1].group.order(), 1);
        assert!(is_isomorphic(&comp.reassemble().unwrap(), &c2z).unwrap());
        assert!(clifford_components(&make_brandt(&c(2), 2).unwrap()).is_err());
        assert!(clifford_components(&make_left_zero(2)).is_err());
    }

    #[test]
    fn product_h0_examples() {
        let c4 = c(4);
        let m = embed_into_product_h0(&c4).unwrap();
        assert_eq!(m.images, (0..4).map(|x| vec![Some(x)]).collect::<Vec<_>>());
        // C2⁰: identity 0, a = 1, zero 2; coordinates (top, bottom)
        let c2z = make_group_with_zero(&c(2));
        let m = embed_into_product_h0(&c2z).unwrap();
        assert_eq!(m.images, vec![vec![Some(0), Some(0)], vec![Some(1), Some(0)], vec![None, Some(0)]]);
        assert_eq!(m.verify(&c2z), MapVerdict::Pass);
    }

    #[test]
    fn h0_into_exp() {
        let m = embed_h0_into_exp(&c(2));
        let set = |items: &[usize]| Subset::from_indices(2, items.iter().copied());
        assert_eq!(m.images, vec![set(&[0]), set(&[1]), set(&[0, 1])]);
        assert_eq!(m.verify(), MapVerdict::Pass);
        let m = embed_h0_into_exp(&c(1));
        assert_eq!(m.cover.order(), 2);
        assert_eq!(m.images, vec![set(&[0]), set(&[0, 1])]);
        assert_eq!(m.verify(), MapVerdict::Pass);
    }

    #[test]
    fn pipelines_on_small_examples() {
        let e = assemble_exp_embedding(&c(2), 1024).unwrap();
        assert_eq!(e.group.order(), 2);
        assert_eq!(e.images, vec![Subset::singleton(2, 0), Subset::singleton(2, 1)]);
        let chain = make_chain(2);
        let e = assemble_exp_embedding(&chain, 1024).unwrap();
        // bottom idempotent 0 and top 1: the product group is C2 × C2
        assert_eq!(e.group.order(), 4);
        let m = assemble_measure_embedding(&chain, 1024).unwrap();
        assert_eq!(m.images[1], RationalMeasure::point_mass(4, 0));
        for (mu, k) in m.images.iter().zip(&e.images) {
            assert_eq!(mu.support(), *k);
        }
        // eleven trivial groups need C2^11
        assert!(matches!(
            assemble_exp_embedding(&make_chain(11), 1024),
            Err(Error::ResourceLimit { required: 2048, .. })
        ));
    }

    #[test]
    fn obstruction_examples() {
        for g in [c(1), c(4), make_symmetric(3).unwrap()] {
            let r = obstruction_report(&g);
            assert!(!r.has_certificate());
            assert_eq!(r.square_inverse_idempotent, Verdict::Pass);
        }
        let lz = make_left_zero(2);
        let r = obstruction_report(&lz);
        assert_eq!(
            r.inverse,
            Verdict::Fail(Witness::InverseCount {
                x: 0,
                inverses: vec![0, 1]
            })
        );
        assert!(r.witnesses_hold(&lz));
        assert!(obstruction_report(&make_right_zero(2)).inverse.is_fail());

        let b = make_brandt(&c(2), 2).unwrap();
        let r = obstruction_report(&b);
        assert_eq!(r.inverse, Verdict::Pass);
        // (1,e,2) is index 3; its square is 0
        assert_eq!(
            r.square_inverse_idempotent,
            Verdict::Fail(Witness::SquareInverse {
                x: 3,
                product: 0,
                x_idempotent: false,
                product_idempotent: true
            })
        );
        assert!(r.witnesses_hold(&b));

        let r = obstruction_report(&make_null(2));
        assert!(!r.regular && !r.has_certificate());
    }

    #[test]
    fn decision_outcomes() {
        let c2z = make_group_with_zero(&c(2));
        assert_eq!(decide_embedding(&c2z, EmbedTarget::Exp, 1024).unwrap().exit_code(), 0);
        assert_eq!(decide_embedding(&c2z, EmbedTarget::Conv, 1024).unwrap().exit_code(), 0);
        let b = make_brandt(&c(1), 2).unwrap();
        assert_eq!(decide_embedding(&b, EmbedTarget::Exp, 1024).unwrap().exit_code(), 2);
        let out = decide_embedding(&make_null(2), EmbedTarget::Exp, 1024).unwrap();
        assert_eq!(out.exit_code(), 3);
        let EmbedOutcome::Inconclusive { attempts, .. } = out else { unreachable!() };
        // {0,1}·{0,1} = C3 in exp(C3)
        assert!(attempts.iter().any(|a| a.target == "exp(C3)" && a.embedding.is_some()));
        assert!(decide_embedding(&make_chain(11), EmbedTarget::Exp, 1024).is_err());
    }

    #[test]
    fn klein_components() {
        let k = direct_product(&c(2), &c(2));
        let e = assemble_exp_embedding(&k, 1024).unwrap();
        assert_eq!(e.group.order(), 4);
    }
}
