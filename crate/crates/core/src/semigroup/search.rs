//! Complete backtracking search for injective homomorphisms.
//!
//! Candidates are filtered by the invariants an injective homomorphism must
//! preserve exactly: idempotency and the (index, period) of each monogenic
//! subsemigroup. Every assignment is closed under products of already-mapped
//! elements before the next branch is taken.

use super::{is_idempotent, monogenic_shape, Semigroup};
use crate::error::{Error, Result};

pub const DEFAULT_EMBEDDING_SEARCH_LIMIT: usize = 16;

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Profile {
    idempotent: bool,
    index: usize,
    period: usize,
}

fn profile<S: Semigroup + ?Sized>(s: &S, x: usize) -> Profile {
    let (index, period) = monogenic_shape(s, x);
    Profile {
        idempotent: is_idempotent(s, x),
        index,
        period,
    }
}

struct Search<'a, S: ?Sized, T: ?Sized> {
    source: &'a S,
    target: &'a T,
    source_profile: Vec<Profile>,
    target_profile: Vec<Profile>,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<S: Semigroup + ?Sized, T: Semigroup + ?Sized> Search<'_, S, T> {
    fn assign(&mut self, x: usize, t: usize) -> bool {
        if self.used[t] {
            return false;
        }
        self.image[x] = t;
        self.used[t] = true;
        self.trail.push(x);
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().expect("trail");
            self.used[self.image[x]] = false;
            self.image[x] = UNSET;
        }
    }

    fn close_pair(&mut self, p: usize, q: usize) -> bool {
        let s = self.source.mul(p, q);
        let t = self.target.mul(self.image[p], self.image[q]);
        if self.image[s] != UNSET {
            return self.image[s] == t;
        }
        self.source_profile[s] == self.target_profile[t] && self.assign(s, t)
    }

    /// Closes the partial map under products, starting from trail position `from`.
    fn propagate(&mut self, from: usize) -> bool {
        let mut i = from;
        while i < self.trail.len() {
            let a = self.trail[i];
            for j in 0..=i {
                let b = self.trail[j];
                if !self.close_pair(a, b) || !self.close_pair(b, a) {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn run(&mut self) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.image[x] == UNSET) else {
            return true;
        };
        for k in 0..self.candidates[x].len() {
            let t = self.candidates[x][k];
            let mark = self.trail.len();
            if self.assign(x, t) && self.propagate(mark) && self.run() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

pub fn find_embedding<S, T>(source: &S, target: &T) -> Result<Option<Vec<usize>>>
where
    S: Semigroup + ?Sized,
    T: Semigroup + ?Sized,
{
    find_embedding_with_limit(source, target, DEFAULT_EMBEDDING_SEARCH_LIMIT)
}

/// An injective homomorphism `source → target` as an image table, or `None`
/// when none exists. The search is complete and deterministic.
pub fn find_embedding_with_limit<S, T>(source: &S, target: &T, limit: usize) -> Result<Option<Vec<usize>>>
where
    S: Semigroup + ?Sized,
    T: Semigroup + ?Sized,
{
    Error::check_limit("embedding search (source order)", source.order(), limit)?;
    let (n, m) = (source.order(), target.order());
    if n > m {
        return Ok(None);
    }
    let source_profile: Vec<Profile> = (0..n).map(|x| profile(source, x)).collect();
    let target_profile: Vec<Profile> = (0..m).map(|t| profile(target, t)).collect();
    let candidates: Vec<Vec<usize>> = source_profile
        .iter()
        .map(|p| (0..m).filter(|&t| target_profile[t] == *p).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // idempotents first, then the most constrained elements
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (!source_profile[x].idempotent, candidates[x].len(), x));

    let mut search = Search {
        source,
        target,
        source_profile,
        target_profile,
        candidates,
        order,
        image: vec![UNSET; n],
        used: vec![false; m],
        trail: Vec::with_capacity(n),
    };
    Ok(search.run().then_some(search.image))
}

pub fn is_isomorphic<S, T>(a: &S, b: &T) -> Result<bool>
where
    S: Semigroup + ?Sized,
    T: Semigroup + ?Sized,
{
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(find_embedding_with_limit(a, b, a.order().max(DEFAULT_EMBEDDING_SEARCH_LIMIT))?.is_some())
}
