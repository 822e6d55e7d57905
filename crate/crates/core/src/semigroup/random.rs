//! Seeded random strong semilattices of groups (finite Clifford inverse semigroups).

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{make_strong_semilattice, FiniteSemigroup, LinkMap, Semilattice};
use crate::group::{make_cyclic, product_of, FiniteGroup};

#[derive(Debug, Clone)]
pub struct RandomClifford {
    pub semilattice: Semilattice,
    pub groups: Vec<FiniteGroup>,
    pub links: LinkMap,
    pub semigroup: FiniteSemigroup,
}

/// `∏_e |H̃_e|` where trivial groups count as order 2.
pub fn padded_product_order(groups: &[FiniteGroup]) -> usize {
    groups.iter().map(|g| g.order().max(2)).product()
}

/// Draws until an instance fits both bounds. Half the draws are chains with
/// random cyclic homomorphisms, half are intersection-closed set systems with
/// coordinate projections as links.
pub fn random_clifford<R: Rng + ?Sized>(rng: &mut R, max_elements: usize, max_product_order: usize) -> RandomClifford {
    loop {
        let candidate = if rng.gen_bool(0.5) {
            random_chain(rng)
        } else {
            random_set_system(rng)
        };
        let elements: usize = candidate.1.iter().map(FiniteGroup::order).sum();
        if elements > max_elements || padded_product_order(&candidate.1) > max_product_order {
            continue;
        }
        let (semilattice, groups, links) = candidate;
        let semigroup = make_strong_semilattice(&semilattice, &groups, &links)
            .expect("generated links are coherent");
        return RandomClifford {
            semilattice,
            groups,
            links,
            semigroup,
        };
    }
}

const CYCLIC_ORDERS: [usize; 6] = [1, 2, 2, 3, 4, 6];

/// A random homomorphism `C_m → C_n`, `x ↦ a·x`, with `n | a·m`.
fn random_cyclic_hom<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Vec<usize> {
    let step = n / m.gcd(&n);
    let a = step * rng.gen_range(0..n / step);
    (0..m).map(|x| a * x % n).collect()
}

fn random_chain<R: Rng + ?Sized>(rng: &mut R) -> (Semilattice, Vec<FiniteGroup>, LinkMap) {
    let k = rng.gen_range(1..=4);
    let orders: Vec<usize> = (0..k).map(|_| *CYCLIC_ORDERS.choose(rng).expect("nonempty")).collect();
    let groups: Vec<FiniteGroup> = orders.iter().map(|&n| make_cyclic(n).expect("cyclic")).collect();
    let mut links = LinkMap::new();
    for upper in 1..k {
        links.insert((upper, upper - 1), random_cyclic_hom(rng, orders[upper], orders[upper - 1]));
    }
    (Semilattice::chain(k), groups, links)
}

fn random_set_system<R: Rng + ?Sized>(rng: &mut R) -> (Semilattice, Vec<FiniteGroup>, LinkMap) {
    let coords = rng.gen_range(1..=3usize);
    let factor_orders: Vec<usize> = (0..coords).map(|_| *CYCLIC_ORDERS[1..].choose(rng).expect("nonempty")).collect();
    let mut family: BTreeSet<u32> = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=4) {
        family.insert(rng.gen_range(0..1u32 << coords));
    }
    loop {
        let snapshot: Vec<u32> = family.iter().copied().collect();
        let before = family.len();
        for &a in &snapshot {
            for &b in &snapshot {
                family.insert(a & b);
            }
        }
        if family.len() == before {
            break;
        }
    }
    let sets: Vec<u32> = family.into_iter().collect();
    let mut relations = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if i != j && a & b == a {
                relations.push((i, j));
            }
        }
    }
    let semilattice = Semilattice::from_order(sets.len(), &relations).expect("closed under intersection");
    let coords_of = |set: u32| -> Vec<usize> { (0..coords).filter(|&c| set >> c & 1 == 1).collect() };
    let groups: Vec<FiniteGroup> = sets
        .iter()
        .map(|&set| {
            let factors: Vec<FiniteGroup> = coords_of(set)
                .iter()
                .map(|&c| make_cyclic(factor_orders[c]).expect("cyclic"))
                .collect();
            product_of(&factors)
        })
        .collect();
    let mut links = LinkMap::new();
    for &(lower, upper) in &semilattice.covers() {
        let (up, low) = (coords_of(sets[upper]), coords_of(sets[lower]));
        let map = (0..groups[upper].order())
            .map(|x| {
                let digits = mixed_radix_digits(x, &up, &factor_orders);
                low.iter().fold(0, |acc, c| {
                    let pos = up.iter().position(|u| u == c).expect("lower set is contained");
                    acc * factor_orders[*c] + digits[pos]
                })
            })
            .collect();
        links.insert((upper, lower), map);
    }
    (semilattice, groups, links)
}

fn mixed_radix_digits(mut x: usize, coords: &[usize], radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; coords.len()];
    for (k, &c) in coords.iter().enumerate().rev() {
        digits[k] = x % radices[c];
        x /= radices[c];
    }
    digits
}
