//! Finite groups as Cayley tables over dense indices `0..n`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Subgroup enumeration refuses groups larger than this unless told otherwise.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 64;

/// Largest order for which [`subgroups`] closes every subset exhaustively.
pub const EXHAUSTIVE_SUBGROUP_ORDER: usize = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inv: Vec<u32>,
    name: Option<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a row-major Cayley table and derives identity and inverses.
    ///
    /// Errors name the first violated axiom together with a witness.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("a group needs at least one element"));
        }
        check_table_shape(order, &table)?;
        if let Some((a, b, c)) = first_non_associative(order, &table) {
            return Err(Error::invalid(format!(
                "not a group: not associative at ({a},{b},{c})"
            )));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or_else(|| Error::invalid("not a group: no identity element"))?;
        let mut inv = Vec::with_capacity(order);
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or_else(|| Error::invalid(format!("not a group: no inverse for element {a}")))?;
            inv.push(b as u32);
        }
        Ok(FiniteGroup {
            order,
            table: table.into_iter().map(|x| x as u32).collect(),
            identity,
            inv,
            name: None,
        })
    }

    /// Builds from a product function known to define a group with identity `identity`.
    fn from_fn_unchecked(order: usize, identity: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b) as u32);
            }
        }
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x as usize == identity).expect("group row");
            inv[a] = b as u32;
        }
        FiniteGroup {
            order,
            table,
            identity,
            inv,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|&x| x as usize).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Re-checks all three group axioms against the stored tables.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let table = self.table();
        if let Some((a, b, c)) = first_non_associative(n, &table) {
            return Err(Error::invalid(format!("not associative at ({a},{b},{c})")));
        }
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return Err(Error::invalid(format!("identity fails on {a}")));
            }
            if self.mul(a, self.inv(a)) != self.identity || self.mul(self.inv(a), a) != self.identity {
                return Err(Error::invalid(format!("inverse table wrong at {a}")));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_table_shape(order: usize, table: &[usize]) -> Result<()> {
    if table.len() != order * order {
        return Err(Error::invalid(format!(
            "table has {} entries, expected {}",
            table.len(),
            order * order
        )));
    }
    if let Some(pos) = table.iter().position(|&x| x >= order) {
        return Err(Error::invalid(format!(
            "entry {} at ({},{}) is outside 0..{order}",
            table[pos],
            pos / order,
            pos % order
        )));
    }
    Ok(())
}

pub(crate) fn first_non_associative(n: usize, table: &[usize]) -> Option<(usize, usize, usize)> {
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group of order 0"));
    }
    Ok(FiniteGroup::from_fn_unchecked(n, 0, |a, b| (a + b) % n).with_name(format!("C{n}")))
}

/// Componentwise product; the pair `(i, j)` has index `i * |H| + j`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    let product = FiniteGroup::from_fn_unchecked(g.order() * m, g.identity() * m + h.identity(), |a, b| {
        g.mul(a / m, b / m) * m + h.mul(a % m, b % m)
    });
    match (g.name(), h.name()) {
        (Some(x), Some(y)) => product.with_name(format!("{x}x{y}")),
        _ => product,
    }
}

/// Product of a list of groups with mixed-radix indexing, first factor most significant.
pub fn product_of(factors: &[FiniteGroup]) -> FiniteGroup {
    let mut iter = factors.iter();
    let Some(first) = iter.next() else {
        return make_cyclic(1).expect("trivial group");
    };
    iter.fold(first.clone(), |acc, h| direct_product(&acc, h))
}

/// Dihedral group of order `2n`: index `k` is the rotation `r^k`, index `n + k` is `s r^k`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("dihedral group with n = 0"));
    }
    let f = move |a: usize, b: usize| {
        let (sa, ka) = (a / n, a % n);
        let (sb, kb) = (b / n, b % n);
        // r^k s = s r^{-k}
        let k = if sb == 1 { (n - ka % n) % n + kb } else { ka + kb };
        ((sa ^ sb) * n) + k % n
    };
    Ok(FiniteGroup::from_fn_unchecked(2 * n, 0, f).with_name(format!("D{n}")))
}

/// Quaternion group: indices 0..8 are 1, i, j, k, -1, -i, -j, -k.
pub fn make_quaternion() -> FiniteGroup {
    // unit products with sign, over basis 1,i,j,k
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    FiniteGroup::from_fn_unchecked(8, 0, |a, b| {
        let (u, v) = UNIT[a % 4][b % 4];
        let neg = (a >= 4) ^ (b >= 4) ^ v;
        u + if neg { 4 } else { 0 }
    })
    .with_name("Q8")
}

/// Symmetric group on `k` points, elements in lexicographic permutation order.
/// The product is composition `(p * q)(i) = p(q(i))`.
pub fn make_symmetric(k: usize) -> Result<FiniteGroup> {
    if k == 0 || k > 5 {
        return Err(Error::invalid(format!("symmetric group S{k} unsupported (1..=5)")));
    }
    let perms = permutations(k);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("perm");
    let n = perms.len();
    let f = |a: usize, b: usize| {
        let composed: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
        index(&composed)
    };
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(f(a, b));
        }
    }
    Ok(FiniteGroup::from_fn_unchecked(n, 0, |a, b| table[a * n + b]).with_name(format!("S{k}")))
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// All groups of order at most `max_order` (up to 8) used as a test corpus:
/// every isomorphism type of order ≤ 8 appears exactly once.
pub fn small_group_corpus(max_order: usize) -> Vec<FiniteGroup> {
    let c = |n| make_cyclic(n).expect("cyclic");
    let mut out: Vec<FiniteGroup> = (1..=8).map(c).collect();
    out.push(direct_product(&c(2), &c(2)).with_name("C2xC2"));
    out.push(make_symmetric(3).expect("S3"));
    out.push(direct_product(&c(2), &c(4)).with_name("C2xC4"));
    out.push(product_of(&[c(2), c(2), c(2)]).with_name("C2xC2xC2"));
    out.push(make_dihedral(4).expect("D4"));
    out.push(make_quaternion());
    out.retain(|g| g.order() <= max_order);
    out.sort_by_key(|g| g.order());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Subset,
}

impl Subgroup {
    /// Checks closure and identity membership against `g`.
    pub fn new(g: &FiniteGroup, members: Subset) -> Result<Self> {
        Error::check_carrier(g.order(), members.carrier())?;
        if !is_subgroup(g, &members) {
            return Err(Error::invalid(format!("{members} is not a subgroup")));
        }
        Ok(Subgroup { members })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            members: Subset::singleton(g.order(), g.identity()),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: Subset::full(g.order()),
        }
    }

    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }
}

/// A nonempty finite subset closed under the product is a subgroup.
pub fn is_subgroup(g: &FiniteGroup, set: &Subset) -> bool {
    if set.carrier() != g.order() || !set.contains(g.identity()) {
        return false;
    }
    set.iter().all(|a| set.iter().all(|b| set.contains(g.mul(a, b))))
}

pub fn generated_subgroup(g: &FiniteGroup, generators: &[usize]) -> Subset {
    let mut members = Subset::singleton(g.order(), g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in generators {
            let y = g.mul(x, s);
            if !members.contains(y) {
                members.insert(y);
                queue.push_back(y);
            }
        }
    }
    members
}

/// Every subgroup of `g` exactly once, sorted by `(order, mask)`.
pub fn subgroups(g: &FiniteGroup, max_order: usize) -> Result<Vec<Subgroup>> {
    Error::check_limit("subgroup enumeration (group order)", g.order(), max_order)?;
    if g.order() <= EXHAUSTIVE_SUBGROUP_ORDER {
        Ok(subgroups_exhaustive(g))
    } else {
        Ok(subgroups_generated(g))
    }
}

fn sort_subgroups(mut list: Vec<Subgroup>) -> Vec<Subgroup> {
    list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    list
}

/// Tests closure of every subset containing the identity. Order ≤ 16 only.
pub fn subgroups_exhaustive(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    assert!(n <= EXHAUSTIVE_SUBGROUP_ORDER, "exhaustive subgroup search needs order <= 16");
    let e = g.identity();
    let found = (0u64..1 << n)
        .filter(|m| m >> e & 1 == 1)
        .map(|m| Subset::from_mask(n, m))
        .filter(|s| is_subgroup(g, s))
        .map(|members| Subgroup { members })
        .collect();
    sort_subgroups(found)
}

/// Joins subgroups with one more generator at a time until no new subgroup
/// appears; every finite group is reached from `{e}` in at most `log2 |G|` steps.
pub fn subgroups_generated(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<Subset> = HashSet::new();
    let trivial = Subset::singleton(g.order(), g.identity());
    seen.insert(trivial.clone());
    let mut frontier: Vec<(Subset, Vec<usize>)> = vec![(trivial, Vec::new())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (members, gens) in &frontier {
            for x in 0..g.order() {
                if members.contains(x) {
                    continue;
                }
                let mut extended = gens.clone();
                extended.push(x);
                let joined = generated_subgroup(g, &extended);
                if seen.insert(joined.clone()) {
                    next.push((joined, extended));
                }
            }
        }
        frontier = next;
    }
    sort_subgroups(seen.into_iter().map(|members| Subgroup { members }).collect())
}

/// The right cosets `Hx`, sorted by mask.
pub fn right_cosets(g: &FiniteGroup, h: &Subset) -> Result<Vec<Subset>> {
    if !is_subgroup(g, h) {
        return Err(Error::invalid(format!("{h} is not a subgroup")));
    }
    let mut cosets = BTreeSet::new();
    let mut covered = Subset::empty(g.order());
    for x in 0..g.order() {
        if covered.contains(x) {
            continue;
        }
        let coset = Subset::from_indices(g.order(), h.iter().map(|a| g.mul(a, x)));
        covered.union_with(&coset);
        cosets.insert(coset);
    }
    Ok(cosets.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(c(1).table(), vec![0]);
        let c2 = c(2);
        assert_eq!((c2.inv(0), c2.inv(1)), (0, 1));
        let c4 = c(4);
        assert_eq!((0..4).map(|a| c4.inv(a)).collect::<Vec<_>>(), vec![0, 3, 2, 1]);
        assert!(matches!(make_cyclic(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn constructors_satisfy_group_axioms() {
        for g in small_group_corpus(8) {
            g.validate().unwrap();
        }
        make_symmetric(4).unwrap().validate().unwrap();
        make_dihedral(5).unwrap().validate().unwrap();
        product_of(&[c(3), c(2), c(4)]).validate().unwrap();
    }

    #[test]
    fn corpus_has_all_fourteen_types() {
        let corpus = small_group_corpus(8);
        assert_eq!(corpus.len(), 14);
        assert!(!make_quaternion().is_abelian());
        assert!(!make_dihedral(4).unwrap().is_abelian());
    }

    #[test]
    fn product_indexing() {
        let g = direct_product(&c(2), &c(3));
        // (1, 2) * (1, 2) = (0, 1)
        assert_eq!(g.mul(5, 5), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn subgroups_of_small_groups() {
        assert_eq!(subgroups(&c(1), 64).unwrap().len(), 1);
        let masks: Vec<u64> = subgroups(&c(4), 64)
            .unwrap()
            .iter()
            .map(|h| h.members().to_mask().unwrap())
            .collect();
        assert_eq!(masks, vec![0b0001, 0b0101, 0b1111]);
        assert_eq!(subgroups(&direct_product(&c(2), &c(2)), 64).unwrap().len(), 5);
        assert!(matches!(
            subgroups(&c(65), 64),
            Err(Error::ResourceLimit { required: 65, .. })
        ));
    }

    #[test]
    fn both_subgroup_methods_agree() {
        for g in small_group_corpus(8)
            .into_iter()
            .chain([c(12), make_symmetric(4).unwrap().with_name("S4"), c(16), make_dihedral(8).unwrap()])
            .filter(|g| g.order() <= EXHAUSTIVE_SUBGROUP_ORDER)
        {
            assert_eq!(subgroups_exhaustive(&g), subgroups_generated(&g), "{:?}", g.name());
        }
    }

    #[test]
    fn larger_groups_use_generated_lattice() {
        // S4 has 30 subgroups, C2^5 has 374.
        assert_eq!(subgroups(&make_symmetric(4).unwrap(), 64).unwrap().len(), 30);
        let c2 = c(2);
        let e32 = product_of(&[c2.clone(), c2.clone(), c2.clone(), c2.clone(), c2]);
        assert_eq!(subgroups(&e32, 64).unwrap().len(), 374);
    }

    #[test]
    fn coset_examples() {
        let c4 = c(4);
        assert_eq!(right_cosets(&c4, &Subset::full(4)).unwrap(), vec![Subset::full(4)]);
        assert_eq!(right_cosets(&c4, &Subset::from_mask(4, 1)).unwrap().len(), 4);
        let halves = right_cosets(&c4, &Subset::from_mask(4, 0b0101)).unwrap();
        assert_eq!(halves, vec![Subset::from_mask(4, 0b0101), Subset::from_mask(4, 0b1010)]);
        assert!(right_cosets(&c4, &Subset::from_mask(4, 0b0011)).is_err());
    }

    #[test]
    fn lagrange_on_corpus() {
        for g in small_group_corpus(8) {
            for h in subgroups(&g, 64).unwrap() {
                let cosets = right_cosets(&g, h.members()).unwrap();
                assert_eq!(cosets.len() * h.order(), g.order());
            }
        }
    }

    #[test]
    fn parse_errors_name_the_axiom() {
        let err = FiniteGroup::from_table(3, vec![0, 1, 2, 1, 0, 2, 2, 2, 2]).unwrap_err();
        assert_eq!(err.to_string(), "invalid argument: not a group: no inverse for element 2");
        let err = FiniteGroup::from_table(2, vec![0, 0, 0, 0]).unwrap_err();
        assert!(err.to_string().contains("no identity"), "{err}");
        let err = FiniteGroup::from_table(3, vec![0, 0, 0, 0, 1, 1, 0, 1, 2]).unwrap_err();
        assert!(err.to_string().contains("no inverse for element 0"), "{err}");
        let err = FiniteGroup::from_table(2, vec![1, 0, 0, 0]).unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }
}
