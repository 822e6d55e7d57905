//! Up-families over a finite carrier: the inclusion hyperspace `G(X)` and the
//! superextension `λ(X)` of maximal linked systems, with the product lifted
//! from a semigroup on `X`.
//!
//! A family is a `u64` whose bit `m` says whether the subset with mask `m`
//! belongs to it, so carriers have at most 6 points.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{FiniteSemigroup, Semigroup};

pub const MAX_MLS_CARRIER: usize = 5;
pub const MAX_HYPERSPACE_CARRIER: usize = 4;
const MAX_FAMILY_CARRIER: usize = 6;

/// A nonempty upward-closed family of nonempty subsets of `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UpFamily {
    n: usize,
    members: u64,
}

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

impl UpFamily {
    pub fn new(n: usize, members: u64) -> Result<Self> {
        Error::check_limit("up-family carrier", n, MAX_FAMILY_CARRIER)?;
        if n == 0 {
            return Err(Error::invalid("up-family over an empty carrier"));
        }
        let f = UpFamily { n, members };
        if members == 0 || members & 1 == 1 {
            return Err(Error::invalid("an up-family is nonempty and excludes the empty set"));
        }
        if (1u64 << n) < 64 && members >> (1u64 << n) != 0 {
            return Err(Error::invalid("family mentions subsets outside the carrier"));
        }
        if !f.is_up_closed() {
            return Err(Error::invalid("family is not upward closed"));
        }
        Ok(f)
    }

    /// `{B : B ⊇ A for some A in sets}`.
    pub fn generated_by(n: usize, sets: &[u64]) -> Result<Self> {
        Error::check_limit("up-family carrier", n, MAX_FAMILY_CARRIER)?;
        let mut members = 0u64;
        for b in 1..=full_mask(n) {
            if sets.iter().any(|&a| a & b == a) {
                members |= 1 << b;
            }
        }
        Self::new(n, members)
    }

    /// The principal ultrafilter at the point `x`.
    pub fn principal(n: usize, x: usize) -> Self {
        Self::generated_by(n, &[1 << x]).expect("point of the carrier")
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn members_mask(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, set: u64) -> bool {
        self.members >> set & 1 == 1
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=full_mask(self.n)).filter(|&s| self.contains(s))
    }

    /// Members with no proper subset in the family, by `(size, mask)`.
    pub fn minimal_members(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .members()
            .filter(|&a| !self.members().any(|b| b != a && b & a == b))
            .collect();
        out.sort_by_key(|&a| (a.count_ones(), a));
        out
    }

    fn is_up_closed(&self) -> bool {
        self.members()
            .all(|a| (0..self.n).all(|i| self.contains(a | 1 << i)))
    }

    pub fn is_linked(&self) -> bool {
        let sets: Vec<u64> = self.members().collect();
        sets.iter().all(|&a| sets.iter().all(|&b| a & b != 0))
    }

    /// Linked, and adding any nonmember set breaks linkedness.
    pub fn is_maximal_linked(&self) -> bool {
        self.is_linked()
            && (1..=full_mask(self.n))
                .filter(|&s| !self.contains(s))
                .all(|s| self.members().any(|a| a & s == 0))
    }

    fn sort_key(&self) -> (usize, Vec<(u32, u64)>) {
        let mins = self.minimal_members();
        (mins.len(), mins.iter().map(|&a| (a.count_ones(), a)).collect())
    }
}

/// Minimal members as subset masks.
impl Serialize for UpFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.minimal_members().serialize(serializer)
    }
}

impl std::fmt::Display for UpFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sets: Vec<String> = self
            .minimal_members()
            .iter()
            .map(|&a| crate::subset::Subset::from_mask(self.n, a).to_string())
            .collect();
        write!(f, "<{}>", sets.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MaxLinkedSystem(UpFamily);

impl MaxLinkedSystem {
    pub fn new(f: UpFamily) -> Result<Self> {
        if f.is_maximal_linked() {
            Ok(MaxLinkedSystem(f))
        } else {
            Err(Error::invalid(format!("{f} is not a maximal linked system")))
        }
    }

    pub fn family(&self) -> &UpFamily {
        &self.0
    }
}

fn canonical_sort(list: &mut [UpFamily]) {
    list.sort_by_cached_key(UpFamily::sort_key);
}

/// Every maximal linked system on `0..n`, principal ultrafilters first (point order).
///
/// An MLS holds exactly one set of each complementary pair, so the candidates
/// are the choices of one side per pair that are pairwise intersecting.
pub fn all_mls(n: usize) -> Result<Vec<MaxLinkedSystem>> {
    Error::check_limit("maximal linked systems (carrier)", n, MAX_MLS_CARRIER)?;
    if n == 0 {
        return Err(Error::invalid("empty carrier"));
    }
    let full = full_mask(n);
    // representatives: proper nonempty sets containing the last point
    let top = 1u64 << (n - 1);
    let reps: Vec<u64> = (1..full).filter(|&a| a & top != 0).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << reps.len() {
        let mut members = 1u64 << full;
        let mut sets = vec![full];
        for (k, &a) in reps.iter().enumerate() {
            let s = if choice >> k & 1 == 1 { a } else { full ^ a };
            members |= 1 << s;
            sets.push(s);
        }
        if sets.iter().all(|&a| sets.iter().all(|&b| a & b != 0)) {
            out.push(UpFamily { n, members });
        }
    }
    canonical_sort(&mut out);
    Ok(out.into_iter().map(MaxLinkedSystem).collect())
}

/// Every nonempty up-family of nonempty subsets of `0..n`, in canonical order.
pub fn all_inclusion_hyperspaces(n: usize) -> Result<Vec<UpFamily>> {
    Error::check_limit("inclusion hyperspaces (carrier)", n, MAX_HYPERSPACE_CARRIER)?;
    if n == 0 {
        return Err(Error::invalid("empty carrier"));
    }
    let subsets = full_mask(n) as u32;
    let mut out: Vec<UpFamily> = (1u64..1 << subsets)
        .map(|bits| UpFamily { n, members: bits << 1 })
        .filter(UpFamily::is_up_closed)
        .collect();
    canonical_sort(&mut out);
    Ok(out)
}

/// `F*G = {C : {x : x⁻¹C ∈ G} ∈ F}` with `x⁻¹C = {y : xy ∈ C}`.
pub fn family_product<S: Semigroup + ?Sized>(s: &S, f: &UpFamily, g: &UpFamily) -> Result<UpFamily> {
    Error::check_carrier(s.order(), f.n)?;
    Error::check_carrier(s.order(), g.n)?;
    Ok(product_unchecked(s, f, g))
}

fn product_unchecked<S: Semigroup + ?Sized>(s: &S, f: &UpFamily, g: &UpFamily) -> UpFamily {
    let n = f.n;
    let mut members = 0u64;
    for c in 1..=full_mask(n) {
        let mut t = 0u64;
        for x in 0..n {
            let preimage = (0..n).filter(|&y| c >> s.mul(x, y) & 1 == 1).fold(0u64, |m, y| m | 1 << y);
            if g.contains(preimage) {
                t |= 1 << x;
            }
        }
        if f.contains(t) {
            members |= 1 << c;
        }
    }
    UpFamily { n, members }
}

/// A semigroup of up-families together with the family behind each index.
#[derive(Debug, Clone)]
pub struct FamilySemigroup {
    pub semigroup: FiniteSemigroup,
    pub families: Vec<UpFamily>,
}

impl FamilySemigroup {
    /// Indices of the principal ultrafilters, in point order.
    pub fn principal_indices(&self) -> Vec<usize> {
        let n = self.families[0].n;
        (0..n)
            .map(|x| {
                let p = UpFamily::principal(n, x);
                self.families.iter().position(|f| *f == p).expect("principal families are present")
            })
            .collect()
    }

    pub fn index_of(&self, f: &UpFamily) -> Option<usize> {
        self.families.iter().position(|g| g == f)
    }
}

fn family_semigroup<S: Semigroup + ?Sized>(s: &S, families: Vec<UpFamily>, name: String) -> Result<FamilySemigroup> {
    let index: HashMap<u64, usize> = families.iter().enumerate().map(|(i, f)| (f.members, i)).collect();
    let k = families.len();
    let mut table = Vec::with_capacity(k * k);
    for a in &families {
        for b in &families {
            let p = product_unchecked(s, a, b);
            let idx = *index
                .get(&p.members)
                .ok_or_else(|| Error::invalid(format!("product {p} left the family set")))?;
            table.push(idx);
        }
    }
    let semigroup = FiniteSemigroup::from_table(k, table)?.with_name(name);
    Ok(FamilySemigroup { semigroup, families })
}

/// `λ(S)` for `|S| ≤ 5`.
pub fn superextension_semigroup<S: Semigroup + ?Sized>(s: &S) -> Result<FamilySemigroup> {
    let families = all_mls(s.order())?.into_iter().map(|m| m.0).collect();
    family_semigroup(s, families, "lambda(S)".into())
}

/// `G(S)` for `|S| ≤ 4`.
pub fn inclusion_hyperspace_semigroup<S: Semigroup + ?Sized>(s: &S) -> Result<FamilySemigroup> {
    let families = all_inclusion_hyperspaces(s.order())?;
    family_semigroup(s, families, "G(S)".into())
}

/// All `a` with `g*a = a = a*g` for every `g` in `group_image`, which must be
/// closed under the product.
pub fn invariant_elements<S: Semigroup + ?Sized>(s: &S, group_image: &[usize]) -> Result<Vec<usize>> {
    if group_image.is_empty() {
        return Err(Error::invalid("empty group image"));
    }
    for &a in group_image {
        for &b in group_image {
            if !group_image.contains(&s.mul(a, b)) {
                return Err(Error::invalid(format!("group image is not closed: {a}*{b}")));
            }
        }
    }
    Ok((0..s.order())
        .filter(|&a| group_image.iter().all(|&g| s.mul(g, a) == a && s.mul(a, g) == a))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, FiniteGroup};
    use crate::semigroup::{is_clifford, is_commutative, is_inverse_semigroup, is_isomorphic};

    fn c(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    /// Every up-closed family, filtered by the definitions.
    fn brute_mls(n: usize) -> Vec<u64> {
        let subsets = full_mask(n) as u32;
        (1u64..1 << subsets)
            .map(|bits| UpFamily { n, members: bits << 1 })
            .filter(|f| f.is_up_closed() && f.is_maximal_linked())
            .map(|f| f.members)
            .collect()
    }

    #[test]
    fn mls_counts() {
        assert_eq!(all_mls(1).unwrap().len(), 1);
        assert_eq!(all_mls(2).unwrap().len(), 2);
        assert_eq!(all_mls(3).unwrap().len(), 4);
        assert_eq!(all_mls(4).unwrap().len(), 12);
        assert_eq!(all_mls(5).unwrap().len(), 81);
        assert!(matches!(all_mls(6), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn mls_enumeration_matches_definition() {
        for n in 1..=4 {
            let mut fast: Vec<u64> = all_mls(n).unwrap().iter().map(|m| m.0.members).collect();
            fast.sort();
            let mut slow = brute_mls(n);
            slow.sort();
            assert_eq!(fast, slow, "n = {n}");
        }
        for m in all_mls(5).unwrap() {
            assert!(m.0.is_up_closed() && m.0.is_maximal_linked());
        }
    }

    #[test]
    fn principal_systems_come_first() {
        let list = all_mls(4).unwrap();
        for x in 0..4 {
            assert_eq!(list[x].0, UpFamily::principal(4, x));
        }
        assert_eq!(list[4].0.minimal_members().len(), 3);
    }

    #[test]
    fn hyperspace_counts() {
        assert_eq!(all_inclusion_hyperspaces(1).unwrap().len(), 1);
        assert_eq!(all_inclusion_hyperspaces(2).unwrap().len(), 4);
        assert_eq!(all_inclusion_hyperspaces(3).unwrap().len(), 18);
        assert_eq!(all_inclusion_hyperspaces(4).unwrap().len(), 166);
        let g4 = all_inclusion_hyperspaces(4).unwrap();
        for m in all_mls(4).unwrap() {
            assert!(g4.contains(&m.0));
        }
    }

    #[test]
    fn principal_products_follow_the_semigroup() {
        let c4 = c(4);
        for a in 0..4 {
            for b in 0..4 {
                let p = family_product(&c4, &UpFamily::principal(4, a), &UpFamily::principal(4, b)).unwrap();
                assert_eq!(p, UpFamily::principal(4, c4.mul(a, b)));
            }
        }
    }

    #[test]
    fn set_closures_multiply_like_subsets() {
        for g in [c(2), c(3), c(4)] {
            let n = g.order();
            for a in 1..=full_mask(n) {
                for b in 1..=full_mask(n) {
                    let prod = (0..n)
                        .filter(|&x| a >> x & 1 == 1)
                        .flat_map(|x| (0..n).filter(move |&y| b >> y & 1 == 1).map(move |y| (x, y)))
                        .fold(0u64, |m, (x, y)| m | 1 << g.mul(x, y));
                    let lhs = family_product(
                        &g,
                        &UpFamily::generated_by(n, &[a]).unwrap(),
                        &UpFamily::generated_by(n, &[b]).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(lhs, UpFamily::generated_by(n, &[prod]).unwrap());
                }
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let l1 = superextension_semigroup(&c(1)).unwrap();
        assert_eq!(l1.semigroup.order(), 1);
        let l2 = superextension_semigroup(&c(2)).unwrap();
        assert!(is_isomorphic(&l2.semigroup, &c(2)).unwrap());
        let l4 = superextension_semigroup(&c(4)).unwrap();
        let s = &l4.semigroup;
        assert_eq!(s.order(), 12);
        assert!(is_commutative(s) && is_inverse_semigroup(s) && is_clifford(s));
        assert_eq!(l4.principal_indices(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn hyperspace_semigroup_is_associative() {
        // from_table validates associativity exhaustively
        let g2 = inclusion_hyperspace_semigroup(&c(2)).unwrap();
        assert_eq!(g2.semigroup.order(), 4);
        let g4 = inclusion_hyperspace_semigroup(&c(4)).unwrap();
        let l4 = superextension_semigroup(&c(4)).unwrap();
        let idx: Vec<usize> = l4.families.iter().map(|f| g4.index_of(f).unwrap()).collect();
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(idx[l4.semigroup.mul(a, b)], g4.semigroup.mul(idx[a], idx[b]));
            }
        }
    }

    #[test]
    fn invariant_elements_examples() {
        let c4 = c(4);
        let g4 = inclusion_hyperspace_semigroup(&c4).unwrap();
        let inv = invariant_elements(&g4.semigroup, &g4.principal_indices()).unwrap();
        let everything = UpFamily::generated_by(4, &[1, 2, 4, 8]).unwrap();
        let top = UpFamily::generated_by(4, &[15]).unwrap();
        assert!(inv.contains(&g4.index_of(&everything).unwrap()));
        assert!(inv.contains(&g4.index_of(&top).unwrap()));
        assert!(invariant_elements(&g4.semigroup, &[0, 1]).is_err());
    }

    #[test]
    fn family_validation() {
        assert!(UpFamily::new(2, 0).is_err());
        assert!(UpFamily::new(2, 1).is_err());
        // {0} without {0,1}
        assert!(UpFamily::new(2, 1 << 1).is_err());
        assert!(UpFamily::new(2, 1 << 1 | 1 << 3).is_ok());
        assert!(MaxLinkedSystem::new(UpFamily::generated_by(3, &[7]).unwrap()).is_err());
        assert_eq!(UpFamily::generated_by(3, &[3, 5, 6]).unwrap().to_string(), "<{0,1},{0,2},{1,2}>");
    }
}
