//! Named semigroup constructions.

use std::collections::BTreeMap;

use super::{is_clifford, is_inverse_semigroup, FiniteSemigroup, Semigroup, Semilattice};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Brandt semigroup `B(H, {0..k})`. Element `0` is the zero; `(α, h, β)` has
/// index `1 + (α·k + β)·|H| + h`.
pub fn make_brandt(h: &FiniteGroup, k: usize) -> Result<FiniteSemigroup> {
    if k == 0 {
        return Err(Error::invalid("Brandt semigroup over an empty index set"));
    }
    let m = h.order();
    let decode = |x: usize| {
        let x = x - 1;
        let (block, g) = (x / m, x % m);
        (block / k, g, block % k)
    };
    let n = k * k * m + 1;
    let s = FiniteSemigroup::from_fn_unchecked(n, |x, y| {
        if x == 0 || y == 0 {
            return 0;
        }
        let (a, g, b) = decode(x);
        let (a2, g2, b2) = decode(y);
        if b == a2 {
            1 + (a * k + b2) * m + h.mul(g, g2)
        } else {
            0
        }
    });
    Ok(s.with_name(format!("B({},{k})", h.name().unwrap_or("H"))))
}

/// `H⁰`: the group keeps its indices and the zero is index `|H|`.
pub fn make_group_with_zero(h: &FiniteGroup) -> FiniteSemigroup {
    let z = h.order();
    let s = FiniteSemigroup::from_fn_unchecked(z + 1, |a, b| if a == z || b == z { z } else { h.mul(a, b) });
    s.with_name(format!("{}^0", h.name().unwrap_or("H")))
}

/// `xy = x`.
pub fn make_left_zero(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn_unchecked(n, |a, _| a).with_name(format!("LZ{n}"))
}

/// `xy = y`.
pub fn make_right_zero(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn_unchecked(n, |_, b| b).with_name(format!("RZ{n}"))
}

/// Every product is `0`.
pub fn make_null(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn_unchecked(n, |_, _| 0).with_name(format!("N{n}"))
}

/// The chain `0 < 1 < … < n-1` under `min`.
pub fn make_chain(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn_unchecked(n, |a, b| a.min(b)).with_name(format!("Chain{n}"))
}

/// `S¹`: always attaches a fresh identity at index `|S|`.
pub fn adjoin_identity<S: Semigroup + ?Sized>(s: &S) -> FiniteSemigroup {
    let one = s.order();
    FiniteSemigroup::from_fn_unchecked(one + 1, |a, b| {
        if a == one {
            b
        } else if b == one {
            a
        } else {
            s.mul(a, b)
        }
    })
}

/// Componentwise product; `(i, j)` has index `i·|T| + j`.
pub fn direct_product_semigroup<S, T>(s: &S, t: &T) -> FiniteSemigroup
where
    S: Semigroup + ?Sized,
    T: Semigroup + ?Sized,
{
    let m = t.order();
    FiniteSemigroup::from_fn_unchecked(s.order() * m, |a, b| s.mul(a / m, b / m) * m + t.mul(a % m, b % m))
}

/// Linking homomorphisms keyed by `(upper, lower)`; `map[i]` is the image of
/// local element `i` of the upper group.
pub type LinkMap = BTreeMap<(usize, usize), Vec<usize>>;

/// Completes `links` to every comparable pair by composition and validates
/// that they are homomorphisms, identities on the diagonal, and coherent.
pub(crate) fn complete_links(e: &Semilattice, groups: &[FiniteGroup], links: &LinkMap) -> Result<LinkMap> {
    let n = e.order();
    let mut all = LinkMap::new();
    for a in 0..n {
        all.insert((a, a), (0..groups[a].order()).collect());
    }
    for (&(f, l), map) in links {
        if f >= n || l >= n || !e.leq(l, f) {
            return Err(Error::invalid(format!("link {f}->{l} does not go down the semilattice")));
        }
        if map.len() != groups[f].order() || map.iter().any(|&x| x >= groups[l].order()) {
            return Err(Error::invalid(format!("link {f}->{l} has the wrong shape")));
        }
        if f == l && all[&(f, f)] != *map {
            return Err(Error::invalid(format!("link {f}->{f} is not the identity")));
        }
        all.insert((f, l), map.clone());
    }
    loop {
        let mut added = false;
        for g in 0..n {
            for f in 0..n {
                for l in 0..n {
                    if all.contains_key(&(g, l)) {
                        continue;
                    }
                    if let (Some(upper), Some(lower)) = (all.get(&(g, f)), all.get(&(f, l))) {
                        let composed = upper.iter().map(|&x| lower[x]).collect();
                        all.insert((g, l), composed);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    for f in 0..n {
        for l in 0..n {
            if e.leq(l, f) && !all.contains_key(&(f, l)) {
                return Err(Error::invalid(format!("missing link {f}->{l}")));
            }
        }
    }
    for (&(f, l), map) in &all {
        let (hf, hl) = (&groups[f], &groups[l]);
        for a in 0..hf.order() {
            for b in 0..hf.order() {
                if map[hf.mul(a, b)] != hl.mul(map[a], map[b]) {
                    return Err(Error::invalid(format!(
                        "link {f}->{l} is not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
    }
    for g in 0..n {
        for f in 0..n {
            for l in 0..n {
                if !(e.leq(l, f) && e.leq(f, g)) {
                    continue;
                }
                let direct = &all[&(g, l)];
                let (upper, lower) = (&all[&(g, f)], &all[&(f, l)]);
                if (0..groups[g].order()).any(|x| lower[upper[x]] != direct[x]) {
                    return Err(Error::invalid(format!(
                        "links are not coherent on the triple {l} <= {f} <= {g}"
                    )));
                }
            }
        }
    }
    Ok(all)
}

/// Strong semilattice of groups. Elements of `H_e` occupy a contiguous block,
/// blocks in the order of `E`'s indices.
pub fn make_strong_semilattice(
    e: &Semilattice,
    groups: &[FiniteGroup],
    links: &LinkMap,
) -> Result<FiniteSemigroup> {
    if groups.len() != e.order() {
        return Err(Error::invalid(format!(
            "{} groups for {} idempotents",
            groups.len(),
            e.order()
        )));
    }
    let all = complete_links(e, groups, links)?;
    let mut offsets = Vec::with_capacity(groups.len());
    let mut owner = Vec::new();
    for (idx, g) in groups.iter().enumerate() {
        offsets.push(owner.len());
        owner.extend((0..g.order()).map(|local| (idx, local)));
    }
    let s = FiniteSemigroup::from_fn_unchecked(owner.len(), |x, y| {
        let (f, a) = owner[x];
        let (g, b) = owner[y];
        let m = e.meet(f, g);
        offsets[m] + groups[m].mul(all[&(f, m)][a], all[&(g, m)][b])
    });
    assert!(
        is_inverse_semigroup(&s) && is_clifford(&s),
        "strong semilattice of groups must be Clifford inverse"
    );
    Ok(s)
}
