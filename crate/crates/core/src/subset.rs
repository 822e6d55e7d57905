//! Subsets of a finite carrier `0..n`, stored as a packed bitmask.
//!
//! Ordering is numeric on the mask (bit `i` has weight `2^i`), so a subset of
//! a small carrier sorts exactly like its `u64` mask.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Subset::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Subset::empty(n);
        s.insert(i);
        s
    }

    /// Panics if the mask has bits at or above `n`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n >= 64 || mask >> n == 0, "mask {mask:#b} exceeds carrier {n}");
        let mut s = Subset::empty(n);
        s.words[0] = mask;
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Self {
        let mut s = Subset::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "element {i} outside carrier {}", self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// The mask as a single word, when the carrier fits in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        (self.n <= 64).then(|| self.words[0])
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            self.words
                .iter()
                .rev()
                .cmp(other.words.iter().rev())
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Brace notation over element indices, e.g. `{0,2}`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// JSON form: the bitmask as an integer, or as a `0x` hex string when the
/// carrier is wider than 64 bits.
impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_mask() {
            Some(mask) => serializer.serialize_u64(mask),
            None => serializer.serialize_str(&self.hex_mask()),
        }
    }
}

impl Subset {
    pub fn hex_mask(&self) -> String {
        let mut digits: String = self.words.iter().rev().map(|w| format!("{w:016x}")).collect();
        let trimmed = digits.trim_start_matches('0');
        digits = if trimmed.is_empty() { "0".into() } else { trimmed.into() };
        format!("0x{digits}")
    }

    pub fn from_hex_mask(n: usize, text: &str) -> Option<Self> {
        let digits = text.strip_prefix("0x")?;
        let mut s = Subset::empty(n);
        for (k, c) in digits.chars().rev().enumerate() {
            let v = c.to_digit(16)? as usize;
            for bit in 0..4 {
                if v >> bit & 1 == 1 {
                    let i = 4 * k + bit;
                    if i >= n {
                        return None;
                    }
                    s.insert(i);
                }
            }
        }
        Some(s)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
