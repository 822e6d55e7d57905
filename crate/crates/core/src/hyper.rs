//! The power semigroup `exp(G)`: nonempty subsets of a finite group under
//! `AB = {ab : a ∈ A, b ∈ B}`.
//!
//! Elements of `exp(G)` are indexed by `mask − 1`, so `{0}` is index 0 and the
//! whole group is index `2^n − 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_subgroup, right_cosets, subgroups, FiniteGroup, Subgroup};
use crate::semigroup::{FiniteSemigroup, VirtualSemigroup};
use crate::subset::Subset;

pub const DEFAULT_MAX_EXP_ORDER: usize = 10;
/// Above this group order `exp(G)` stays virtual.
pub const MATERIALIZE_EXP_ORDER: usize = 5;
/// Pair count below which the product is computed pair by pair.
const NAIVE_PRODUCT_PAIRS: usize = 4096;

fn check_operand(g: &FiniteGroup, a: &Subset) -> Result<()> {
    Error::check_carrier(g.order(), a.carrier())?;
    if a.is_empty() {
        return Err(Error::invalid("exp(G) has no empty element"));
    }
    Ok(())
}

pub fn subset_product(g: &FiniteGroup, a: &Subset, b: &Subset) -> Result<Subset> {
    check_operand(g, a)?;
    check_operand(g, b)?;
    Ok(product_unchecked(g, a, b))
}

/// Large products skip every `a` whose coset `aL` modulo the left stabilizer
/// `L = {s : sB = B}` has been seen, since `a s B = a B`.
pub(crate) fn product_unchecked(g: &FiniteGroup, a: &Subset, b: &Subset) -> Subset {
    let n = g.order();
    if a.is_full() || b.is_full() {
        return Subset::full(n);
    }
    let mut out = Subset::empty(n);
    if a.len() * b.len() <= NAIVE_PRODUCT_PAIRS {
        for x in a.iter() {
            for y in b.iter() {
                out.insert(g.mul(x, y));
            }
        }
        return out;
    }
    let b0_inv = g.inv(b.first().expect("nonempty"));
    let stabilizer: Vec<usize> = b
        .iter()
        .map(|y| g.mul(y, b0_inv))
        .filter(|&s| b.iter().all(|y| b.contains(g.mul(s, y))))
        .collect();
    let mut covered = Subset::empty(n);
    for x in a.iter() {
        if covered.contains(x) {
            continue;
        }
        for &s in &stabilizer {
            covered.insert(g.mul(x, s));
        }
        for y in b.iter() {
            out.insert(g.mul(x, y));
        }
        if out.is_full() {
            break;
        }
    }
    out
}

/// Index of a nonempty subset in `exp(G)`.
pub fn exp_index(a: &Subset) -> usize {
    let mask = a.to_mask().expect("exp(G) indices need a carrier of at most 64");
    assert!(mask != 0, "exp(G) has no empty element");
    (mask - 1) as usize
}

pub fn exp_element(n: usize, index: usize) -> Subset {
    Subset::from_mask(n, index as u64 + 1)
}

fn mask_product(n: usize, left: &[u64], a: u64, b: u64) -> u64 {
    let mut out = 0;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut bs = b;
        while bs != 0 {
            let y = bs.trailing_zeros() as usize;
            bs &= bs - 1;
            out |= left[x * n + y];
        }
    }
    out
}

/// `exp(G)` as a lazy semigroup with `2^n − 1` elements.
pub fn exp_semigroup(g: &FiniteGroup, max_order: usize) -> Result<VirtualSemigroup> {
    Error::check_limit("exp(G) (group order)", g.order(), max_order.min(63))?;
    let n = g.order();
    let left: Vec<u64> = (0..n * n).map(|k| 1u64 << g.mul(k / n, k % n)).collect();
    let size = (1usize << n) - 1;
    let s = VirtualSemigroup::new(size, move |i, j| {
        (mask_product(n, &left, i as u64 + 1, j as u64 + 1) - 1) as usize
    });
    Ok(s.with_name(format!("exp({})", g.name().unwrap_or("G"))))
}

/// The full Cayley table of `exp(G)`, for groups of order at most 5.
pub fn exp_table(g: &FiniteGroup) -> Result<FiniteSemigroup> {
    Error::check_limit("materialized exp(G) (group order)", g.order(), MATERIALIZE_EXP_ORDER)?;
    let v = exp_semigroup(g, MATERIALIZE_EXP_ORDER)?;
    Ok(FiniteSemigroup::materialize(&v)?.with_name(v.name().unwrap_or("exp(G)").to_string()))
}

/// `A = Hx` with `H` a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularSubsetWitness {
    pub subgroup: Subset,
    pub shift: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SubsetClass {
    NotRegular,
    Regular(RegularSubsetWitness),
}

impl SubsetClass {
    pub fn witness(&self) -> Option<&RegularSubsetWitness> {
        match self {
            SubsetClass::Regular(w) => Some(w),
            SubsetClass::NotRegular => None,
        }
    }
}

/// Regular in `exp(G)` exactly when `A` is a right coset: with `a` the least
/// member, `A a⁻¹` must be a subgroup.
pub fn classify_regular_subset(g: &FiniteGroup, a: &Subset) -> Result<SubsetClass> {
    check_operand(g, a)?;
    let shift = a.first().expect("nonempty");
    let shift_inv = g.inv(shift);
    let h = Subset::from_indices(g.order(), a.iter().map(|x| g.mul(x, shift_inv)));
    if !is_subgroup(g, &h) {
        return Ok(SubsetClass::NotRegular);
    }
    debug_assert_eq!(Subset::from_indices(g.order(), h.iter().map(|x| g.mul(x, shift))), *a);
    Ok(SubsetClass::Regular(RegularSubsetWitness { subgroup: h, shift }))
}

/// The unique inverse `x⁻¹H` of the coset `Hx`.
pub fn coset_inverse(g: &FiniteGroup, w: &RegularSubsetWitness) -> Subset {
    let x_inv = g.inv(w.shift);
    Subset::from_indices(g.order(), w.subgroup.iter().map(|h| g.mul(x_inv, h)))
}

/// Every right coset of every subgroup, sorted by mask.
pub fn regular_elements_exp(g: &FiniteGroup, max_order: usize) -> Result<Vec<(Subset, RegularSubsetWitness)>> {
    Error::check_limit("Reg(exp(G)) (group order)", g.order(), max_order)?;
    let mut out = Vec::new();
    for h in subgroups(g, max_order)? {
        for coset in right_cosets(g, h.members())? {
            let shift = coset.first().expect("nonempty");
            out.push((
                coset,
                RegularSubsetWitness {
                    subgroup: h.members().clone(),
                    shift,
                },
            ));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// The idempotents of `exp(G)`, which are exactly the subgroups, sorted by mask.
pub fn idempotents_exp(g: &FiniteGroup, max_order: usize) -> Result<Vec<Subset>> {
    Error::check_limit("exp(G) idempotents (group order)", g.order(), max_order)?;
    let mut out: Vec<Subset> = subgroups(g, max_order)?.iter().map(|h| h.members().clone()).collect();
    out.sort();
    Ok(out)
}

/// `Σ_{H ≤ G} [G:H]`.
pub fn coset_count(g: &FiniteGroup, subgroups: &[Subgroup]) -> usize {
    subgroups.iter().map(|h| g.order() / h.order()).sum()
}

/// Distinct subgroups `H, K` and a regular `z` with `H = zKz⁻¹`, `K = z⁻¹Hz`,
/// listed with whether `H` and `K` are comparable in the idempotent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugateSubgroups {
    pub e: Subset,
    pub f: Subset,
    pub z: Subset,
    pub comparable: bool,
}

pub fn conjugate_idempotents_exp(g: &FiniteGroup, max_order: usize) -> Result<Vec<ConjugateSubgroups>> {
    let regular = regular_elements_exp(g, max_order)?;
    let idem = idempotents_exp(g, max_order)?;
    let mul = |a: &Subset, b: &Subset| product_unchecked(g, a, b);
    let leq = |e: &Subset, f: &Subset| mul(e, f) == *e && mul(f, e) == *e;
    let mut out = Vec::new();
    for (i, e) in idem.iter().enumerate() {
        for f in &idem[i + 1..] {
            let witness = regular.iter().find(|(z, w)| {
                let z_inv = coset_inverse(g, w);
                mul(&mul(z, f), &z_inv) == *e && mul(&mul(&z_inv, e), z) == *f
            });
            if let Some((z, _)) = witness {
                out.push(ConjugateSubgroups {
                    e: e.clone(),
                    f: f.clone(),
                    z: z.clone(),
                    comparable: leq(e, f) || leq(f, e),
                });
            }
        }
    }
    Ok(out)
}
