use std::collections::BTreeSet;

use super::Semigroup;
use crate::error::{Error, Result};

/// The idempotents `E` of an inverse semigroup, ordered by `e ≤ f ⟺ ef = fe = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSemilattice {
    members: Vec<usize>,
    /// row-major over positions in `members`
    below: Vec<bool>,
    meet: Vec<usize>,
}

impl IdempotentSemilattice {
    pub(crate) fn new<S: Semigroup + ?Sized>(s: &S, members: Vec<usize>) -> Self {
        let k = members.len();
        let mut below = vec![false; k * k];
        let mut meet = vec![0; k * k];
        for (i, &e) in members.iter().enumerate() {
            for (j, &f) in members.iter().enumerate() {
                below[i * k + j] = s.mul(e, f) == e && s.mul(f, e) == e;
                meet[i * k + j] = s.mul(e, f);
            }
        }
        IdempotentSemilattice {
            members,
            below,
            meet,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    fn position(&self, e: usize) -> Option<usize> {
        self.members.binary_search(&e).ok()
    }

    /// `e ≤ f` for semigroup elements `e, f`; false if either is not in `E`.
    pub fn leq(&self, e: usize, f: usize) -> bool {
        match (self.position(e), self.position(f)) {
            (Some(i), Some(j)) => self.below[i * self.members.len() + j],
            _ => false,
        }
    }

    pub fn meet(&self, e: usize, f: usize) -> Option<usize> {
        let (i, j) = (self.position(e)?, self.position(f)?);
        Some(self.meet[i * self.members.len() + j])
    }

    pub fn principal_filter(&self, e: usize) -> Vec<usize> {
        self.members.iter().copied().filter(|&f| self.leq(e, f)).collect()
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for &e in &self.members {
            for &f in &self.members {
                if e != f
                    && self.leq(e, f)
                    && !self
                        .members
                        .iter()
                        .any(|&g| g != e && g != f && self.leq(e, g) && self.leq(g, f))
                {
                    edges.push((e, f));
                }
            }
        }
        edges
    }

    pub fn is_partial_order(&self) -> bool {
        let m = &self.members;
        m.iter().all(|&a| self.leq(a, a))
            && m.iter().all(|&a| m.iter().all(|&b| a == b || !(self.leq(a, b) && self.leq(b, a))))
            && m.iter().all(|&a| {
                m.iter().all(|&b| m.iter().all(|&c| !(self.leq(a, b) && self.leq(b, c)) || self.leq(a, c)))
            })
    }
}

/// An abstract finite meet-semilattice on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    n: usize,
    meet: Vec<usize>,
}

impl Semilattice {
    /// Builds from `(lower, upper)` relations; the reflexive-transitive closure
    /// must be antisymmetric and every pair must have a greatest lower bound.
    pub fn from_order(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("empty semilattice"));
        }
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("relation {a}<{b} outside 0..{n}")));
            }
            le[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if le[a * n + b] && le[b * n + a] {
                    return Err(Error::invalid(format!("order is not antisymmetric: {a} and {b}")));
                }
            }
        }
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le[c * n + a] && le[c * n + b]).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&d| le[d * n + c]))
                    .ok_or_else(|| Error::invalid(format!("{a} and {b} have no meet")))?;
                meet[a * n + b] = glb;
            }
        }
        Ok(Semilattice { n, meet })
    }

    /// Validates a commutative, idempotent, associative table.
    pub fn from_meet_table(n: usize, meet: Vec<usize>) -> Result<Self> {
        if meet.len() != n * n || meet.iter().any(|&x| x >= n) || n == 0 {
            return Err(Error::invalid("malformed meet table"));
        }
        for a in 0..n {
            if meet[a * n + a] != a {
                return Err(Error::invalid(format!("meet not idempotent at {a}")));
            }
            for b in 0..n {
                if meet[a * n + b] != meet[b * n + a] {
                    return Err(Error::invalid(format!("meet not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    if meet[meet[a * n + b] * n + c] != meet[a * n + meet[b * n + c]] {
                        return Err(Error::invalid(format!("meet not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Semilattice { n, meet })
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Semilattice {
            n,
            meet: (0..n * n).map(|k| (k / n).min(k % n)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// Covering pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq(a, b)
                    && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.insert((a, b));
                }
            }
        }
        out.into_iter().collect()
    }
}

impl Semigroup for Semilattice {
    fn order(&self) -> usize {
        self.n
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.meet(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{make_chain, semilattice_of};

    #[test]
    fn chain_semilattice() {
        let e = semilattice_of(&make_chain(3)).unwrap();
        assert!(e.is_partial_order());
        assert_eq!(e.principal_filter(0), vec![0, 1, 2]);
        assert_eq!(e.hasse_edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn from_order_diamond() {
        // 0 below 1 and 2, both below 3
        let s = Semilattice::from_order(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(s.meet(1, 2), 0);
        assert_eq!(s.meet(3, 2), 2);
        assert_eq!(s.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(Semilattice::from_meet_table(4, (0..16).map(|k| s.meet(k / 4, k % 4)).collect()).unwrap(), s);
    }

    #[test]
    fn from_order_errors() {
        // two minimal elements have no meet
        assert!(Semilattice::from_order(2, &[]).is_err());
        assert!(Semilattice::from_order(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Semilattice::from_meet_table(2, vec![0, 1, 0, 1]).is_err());
    }
}
