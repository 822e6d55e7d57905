//! Abstract finite semigroups and their structural predicates.

mod construct;
mod predicates;
pub mod random;
mod search;
mod semilattice;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{check_table_shape, first_non_associative, FiniteGroup};

pub use construct::{
    adjoin_identity, direct_product_semigroup, make_brandt, make_chain, make_group_with_zero,
    make_left_zero, make_null, make_right_zero, make_strong_semilattice, LinkMap,
};
pub use predicates::{
    conjugate_idempotent_pairs, idempotents, inverse_table, inverses_of, is_clifford,
    is_commutative, is_completely_regular, is_idempotent, is_inverse_semigroup, is_regular,
    is_regular_element, maximal_subgroup, monogenic_shape, principal_filter, regular_elements,
    semilattice_of, ConjugatePair, MaximalSubgroup,
};
pub use search::{find_embedding, find_embedding_with_limit, is_isomorphic, DEFAULT_EMBEDDING_SEARCH_LIMIT};
pub use semilattice::{IdempotentSemilattice, Semilattice};

/// A finite carrier `0..order` with an associative product.
pub trait Semigroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
}

impl<S: Semigroup + ?Sized> Semigroup for &S {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
}

impl Semigroup for FiniteGroup {
    fn order(&self) -> usize {
        FiniteGroup::order(self)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        FiniteGroup::mul(self, a, b)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u32>,
    name: Option<String>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteSemigroup {
    /// Validates shape and associativity of a row-major Cayley table.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("a semigroup needs at least one element"));
        }
        check_table_shape(order, &table)?;
        if let Some((a, b, c)) = first_non_associative(order, &table) {
            return Err(Error::invalid(format!(
                "not a semigroup: not associative at ({a},{b},{c})"
            )));
        }
        Ok(Self::from_table_unchecked(order, table))
    }

    pub(crate) fn from_table_unchecked(order: usize, table: Vec<usize>) -> Self {
        FiniteSemigroup {
            order,
            table: table.into_iter().map(|x| x as u32).collect(),
            name: None,
        }
    }

    pub(crate) fn from_fn_unchecked(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b));
            }
        }
        Self::from_table_unchecked(order, table)
    }

    /// Tabulates any semigroup, checking associativity.
    pub fn materialize<S: Semigroup + ?Sized>(s: &S) -> Result<Self> {
        let n = s.order();
        let table = (0..n * n).map(|k| s.mul(k / n, k % n)).collect();
        Self::from_table(n, table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|&x| x as usize).collect()
    }
}

impl From<&FiniteGroup> for FiniteSemigroup {
    fn from(g: &FiniteGroup) -> Self {
        let s = FiniteSemigroup::from_table_unchecked(g.order(), g.table());
        match g.name() {
            Some(name) => s.with_name(name),
            None => s,
        }
    }
}

impl Semigroup for FiniteSemigroup {
    fn order(&self) -> usize {
        self.order
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }
}

type Product = dyn Fn(usize, usize) -> usize + Send + Sync;

/// A semigroup whose products are computed on demand.
#[derive(Clone)]
pub struct VirtualSemigroup {
    order: usize,
    product: Arc<Product>,
    name: Option<String>,
}

impl fmt::Debug for VirtualSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VirtualSemigroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Carriers up to this size get a full cubic associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 256;
/// Random triples drawn for larger virtual carriers.
pub const ASSOCIATIVITY_SAMPLES: usize = 100_000;
pub const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550c;

impl VirtualSemigroup {
    pub fn new(
        order: usize,
        product: impl Fn(usize, usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        VirtualSemigroup {
            order,
            product: Arc::new(product),
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

    /// Exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_ORDER`] elements, otherwise
    /// [`ASSOCIATIVITY_SAMPLES`] seeded random triples. Returns the first failing triple.
    pub fn check_associativity(&self, seed: u64) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let holds = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !holds(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..ASSOCIATIVITY_SAMPLES).find_map(|_| {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            (!holds(a, b, c)).then_some((a, b, c))
        })
    }
}

impl Semigroup for VirtualSemigroup {
    fn order(&self) -> usize {
        self.order
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        (self.product)(a, b)
    }
}
