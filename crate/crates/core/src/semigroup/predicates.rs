use serde::Serialize;

use super::{IdempotentSemilattice, Semigroup};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[inline]
pub fn is_idempotent<S: Semigroup + ?Sized>(s: &S, x: usize) -> bool {
    s.mul(x, x) == x
}

pub fn idempotents<S: Semigroup + ?Sized>(s: &S) -> Vec<usize> {
    (0..s.order()).filter(|&x| is_idempotent(s, x)).collect()
}

/// `(index, period)` of the monogenic subsemigroup generated by `x`:
/// the least `m, r ≥ 1` with `x^(m+r) = x^m`.
pub fn monogenic_shape<S: Semigroup + ?Sized>(s: &S, x: usize) -> (usize, usize) {
    let mut powers = vec![x];
    let mut y = x;
    loop {
        y = s.mul(y, x);
        if let Some(pos) = powers.iter().position(|&p| p == y) {
            return (pos + 1, powers.len() - pos);
        }
        powers.push(y);
    }
}

pub fn is_regular_element<S: Semigroup + ?Sized>(s: &S, x: usize) -> bool {
    (0..s.order()).any(|y| s.mul(s.mul(x, y), x) == x)
}

pub fn regular_elements<S: Semigroup + ?Sized>(s: &S) -> Vec<usize> {
    (0..s.order()).filter(|&x| is_regular_element(s, x)).collect()
}

pub fn is_regular<S: Semigroup + ?Sized>(s: &S) -> bool {
    (0..s.order()).all(|x| is_regular_element(s, x))
}

/// All `y` with `xyx = x` and `yxy = y`.
pub fn inverses_of<S: Semigroup + ?Sized>(s: &S, x: usize) -> Vec<usize> {
    (0..s.order())
        .filter(|&y| s.mul(s.mul(x, y), x) == x && s.mul(s.mul(y, x), y) == y)
        .collect()
}

fn idempotents_commute<S: Semigroup + ?Sized>(s: &S) -> bool {
    let e = idempotents(s);
    e.iter().all(|&a| e.iter().all(|&b| s.mul(a, b) == s.mul(b, a)))
}

/// Every element has exactly one inverse.
///
/// Cross-checked against "regular with commuting idempotents"; a disagreement panics.
pub fn is_inverse_semigroup<S: Semigroup + ?Sized>(s: &S) -> bool {
    let unique = (0..s.order()).all(|x| inverses_of(s, x).len() == 1);
    let structural = is_regular(s) && idempotents_commute(s);
    assert_eq!(
        unique, structural,
        "unique-inverse and commuting-idempotent criteria disagree"
    );
    unique
}

/// The inversion map of an inverse semigroup.
pub fn inverse_table<S: Semigroup + ?Sized>(s: &S) -> Result<Vec<usize>> {
    (0..s.order())
        .map(|x| match inverses_of(s, x).as_slice() {
            [y] => Ok(*y),
            [] => Err(Error::invalid(format!("not an inverse semigroup: {x} has no inverse"))),
            [y, z, ..] => Err(Error::invalid(format!(
                "not an inverse semigroup: {x} has inverses {y} and {z}"
            ))),
        })
        .collect()
}

/// Every element lies in a subgroup: some `y` has `xyx = x` and `xy = yx`.
pub fn is_completely_regular<S: Semigroup + ?Sized>(s: &S) -> bool {
    (0..s.order()).all(|x| {
        (0..s.order()).any(|y| {
            let xy = s.mul(x, y);
            xy == s.mul(y, x) && s.mul(xy, x) == x
        })
    })
}

/// Union of subgroups. For inverse semigroups the answer is also computed
/// as `x x⁻¹ = x⁻¹ x` for all `x`, and the two must agree.
pub fn is_clifford<S: Semigroup + ?Sized>(s: &S) -> bool {
    let union_of_groups = is_completely_regular(s);
    if let Ok(inv) = inverse_table(s) {
        let normal = (0..s.order()).all(|x| s.mul(x, inv[x]) == s.mul(inv[x], x));
        assert_eq!(union_of_groups, normal, "Clifford criteria disagree");
    }
    union_of_groups
}

pub fn is_commutative<S: Semigroup + ?Sized>(s: &S) -> bool {
    (0..s.order()).all(|a| (a + 1..s.order()).all(|b| s.mul(a, b) == s.mul(b, a)))
}

pub fn semilattice_of<S: Semigroup + ?Sized>(s: &S) -> Result<IdempotentSemilattice> {
    inverse_table(s)?;
    Ok(IdempotentSemilattice::new(s, idempotents(s)))
}

/// `↑e = { f ∈ E : ef = e }`.
pub fn principal_filter<S: Semigroup + ?Sized>(s: &S, e: usize) -> Result<Vec<usize>> {
    if e >= s.order() || !is_idempotent(s, e) {
        return Err(Error::invalid(format!("{e} is not an idempotent")));
    }
    Ok(idempotents(s).into_iter().filter(|&f| s.mul(e, f) == e).collect())
}

/// `H_e` as a standalone group; local index `i` is the element `elements[i]`.
#[derive(Debug, Clone)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
}

impl MaximalSubgroup {
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

/// `H_e = { x : x x⁻¹ = e = x⁻¹ x }` in an inverse semigroup.
pub fn maximal_subgroup<S: Semigroup + ?Sized>(s: &S, e: usize) -> Result<MaximalSubgroup> {
    if e >= s.order() || !is_idempotent(s, e) {
        return Err(Error::invalid(format!("{e} is not an idempotent")));
    }
    let inv = inverse_table(s)?;
    maximal_subgroup_with(s, &inv, e)
}

pub(crate) fn maximal_subgroup_with<S: Semigroup + ?Sized>(
    s: &S,
    inv: &[usize],
    e: usize,
) -> Result<MaximalSubgroup> {
    let elements: Vec<usize> = (0..s.order())
        .filter(|&x| s.mul(x, inv[x]) == e && s.mul(inv[x], x) == e)
        .collect();
    let k = elements.len();
    let local = |x: usize| elements.binary_search(&x).expect("H_e is closed");
    let mut table = Vec::with_capacity(k * k);
    for &a in &elements {
        for &b in &elements {
            table.push(local(s.mul(a, b)));
        }
    }
    let group = FiniteGroup::from_table(k, table)?;
    Ok(MaximalSubgroup {
        idempotent: e,
        elements,
        group,
    })
}

/// Distinct idempotents `e < f` (by index) with a witness `z`:
/// `e = z f z⁻¹` and `f = z⁻¹ e z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjugatePair {
    pub e: usize,
    pub f: usize,
    pub z: usize,
}

pub fn conjugate_idempotent_pairs<S: Semigroup + ?Sized>(s: &S) -> Result<Vec<ConjugatePair>> {
    let inv = inverse_table(s)?;
    let idem = idempotents(s);
    let mut out = Vec::new();
    for (i, &e) in idem.iter().enumerate() {
        for &f in &idem[i + 1..] {
            let witness = (0..s.order()).find(|&z| {
                s.mul(s.mul(z, f), inv[z]) == e && s.mul(s.mul(inv[z], e), z) == f
            });
            if let Some(z) = witness {
                out.push(ConjugatePair { e, f, z });
            }
        }
    }
    Ok(out)
}
