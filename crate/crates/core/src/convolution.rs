//! The convolution semigroup `P(G)` of probability measures on a finite group,
//! with exact rational weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_subgroup, FiniteGroup};
use crate::hyper::{classify_regular_subset, product_unchecked, regular_elements_exp};
use crate::subset::Subset;

pub const DEFAULT_GRID_DENOMINATOR: usize = 6;

/// A probability measure stored as `numerators / denominator`, reduced so the
/// common denominator is as small as possible. Equal measures compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMeasure {
    num: Vec<u128>,
    den: u128,
}

impl RationalMeasure {
    /// Numerators must sum to `den`.
    pub fn from_numerators(num: Vec<u128>, den: u128) -> Result<Self> {
        if num.is_empty() {
            return Err(Error::invalid("measure on an empty carrier"));
        }
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        let mut total: u128 = 0;
        for &w in &num {
            total = total.checked_add(w).ok_or(Error::Overflow("measure mass"))?;
        }
        if total != den {
            return Err(Error::invalid(format!("total mass is {total}/{den}, not 1")));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: Vec<u128>, mut den: u128) -> Self {
        let g = num.iter().fold(den, |acc, &w| acc.gcd(&w));
        if g > 1 {
            num.iter_mut().for_each(|w| *w /= g);
            den /= g;
        }
        RationalMeasure { num, den }
    }

    pub fn from_weights(weights: &[Ratio<u128>]) -> Result<Self> {
        let mut den: u128 = 1;
        for w in weights {
            den = den.lcm(w.denom());
        }
        let num = weights
            .iter()
            .map(|w| w.numer().checked_mul(den / w.denom()).ok_or(Error::Overflow("measure weights")))
            .collect::<Result<Vec<_>>>()?;
        Self::from_numerators(num, den)
    }

    pub fn point_mass(n: usize, g: usize) -> Self {
        assert!(g < n, "point {g} outside carrier {n}");
        let mut num = vec![0; n];
        num[g] = 1;
        RationalMeasure { num, den: 1 }
    }

    pub fn uniform_on(a: &Subset) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::invalid("uniform measure on an empty set"));
        }
        let mut num = vec![0; a.carrier()];
        for i in a.iter() {
            num[i] = 1;
        }
        Ok(RationalMeasure {
            num,
            den: a.len() as u128,
        })
    }

    pub fn carrier(&self) -> usize {
        self.num.len()
    }

    pub fn weight(&self, i: usize) -> Ratio<u128> {
        Ratio::new(self.num[i], self.den)
    }

    pub fn numerators(&self) -> &[u128] {
        &self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn support(&self) -> Subset {
        Subset::from_indices(self.carrier(), (0..self.carrier()).filter(|&i| self.num[i] > 0))
    }
}

impl fmt::Debug for RationalMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.carrier() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.weight(i))?;
        }
        f.write_str(")")
    }
}

/// The measure file format, zero weights omitted.
impl fmt::Display for RationalMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.carrier() {
            if self.num[i] > 0 {
                let w = self.weight(i);
                writeln!(f, "{i}: {}/{}", w.numer(), w.denom())?;
            }
        }
        Ok(())
    }
}

/// `{"index": "num/den"}` over the support.
impl Serialize for RationalMeasure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, String> = (0..self.carrier())
            .filter(|&i| self.num[i] > 0)
            .map(|i| {
                let w = self.weight(i);
                (i, format!("{}/{}", w.numer(), w.denom()))
            })
            .collect();
        map.serialize(serializer)
    }
}

/// Parses `index: num/den` lines (`#` comments allowed) for a carrier of size `n`.
pub fn parse_measure(text: &str, n: usize) -> Result<RationalMeasure> {
    let mut weights = vec![Ratio::from_integer(0u128); n];
    let mut seen = vec![false; n];
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        last = line;
        let (idx, w) = content
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `index: num/den`"))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad index {:?}", idx.trim())))?;
        if idx >= n {
            return Err(Error::parse(line, format!("index {idx} outside 0..{n}")));
        }
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::parse(line, format!("index {idx} listed twice")));
        }
        let w = w.trim();
        let (a, b) = w.split_once('/').unwrap_or((w, "1"));
        let (a, b): (u128, u128) = match (a.trim().parse(), b.trim().parse()) {
            (Ok(a), Ok(b)) if b > 0 => (a, b),
            _ => return Err(Error::parse(line, format!("bad weight {w:?}"))),
        };
        weights[idx] = Ratio::new(a, b);
    }
    RationalMeasure::from_weights(&weights).map_err(|e| match e {
        Error::InvalidArgument(message) => Error::Parse { line: last.max(1), message },
        other => other,
    })
}

fn check_measure(g: &FiniteGroup, mu: &RationalMeasure) -> Result<()> {
    Error::check_carrier(g.order(), mu.carrier())
}

/// `(μ*ν)(z) = Σ_{xy=z} μ(x)ν(y)`.
pub fn convolve(g: &FiniteGroup, mu: &RationalMeasure, nu: &RationalMeasure) -> Result<RationalMeasure> {
    check_measure(g, mu)?;
    check_measure(g, nu)?;
    let den = mu.den.checked_mul(nu.den).ok_or(Error::Overflow("convolution denominator"))?;
    let mut num = vec![0u128; g.order()];
    for x in (0..g.order()).filter(|&x| mu.num[x] > 0) {
        for y in (0..g.order()).filter(|&y| nu.num[y] > 0) {
            let z = g.mul(x, y);
            let term = mu.num[x].checked_mul(nu.num[y]).ok_or(Error::Overflow("convolution"))?;
            num[z] = num[z].checked_add(term).ok_or(Error::Overflow("convolution"))?;
        }
    }
    assert_eq!(num.iter().sum::<u128>(), den, "convolution lost mass");
    Ok(RationalMeasure::reduced(num, den))
}

/// `(gμ)(z) = μ(g⁻¹z)`.
pub fn translate_left(g: &FiniteGroup, x: usize, mu: &RationalMeasure) -> Result<RationalMeasure> {
    check_measure(g, mu)?;
    let x_inv = g.inv(x);
    let num = (0..g.order()).map(|z| mu.num[g.mul(x_inv, z)]).collect();
    Ok(RationalMeasure { num, den: mu.den })
}

/// `(μg)(z) = μ(zg⁻¹)`.
pub fn translate_right(g: &FiniteGroup, mu: &RationalMeasure, x: usize) -> Result<RationalMeasure> {
    check_measure(g, mu)?;
    let x_inv = g.inv(x);
    let num = (0..g.order()).map(|z| mu.num[g.mul(z, x_inv)]).collect();
    Ok(RationalMeasure { num, den: mu.den })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IdempotentClass {
    NotIdempotent,
    HaarOf(Subset),
}

/// Idempotent exactly when uniform on a subgroup.
pub fn classify_idempotent_measure(g: &FiniteGroup, mu: &RationalMeasure) -> Result<IdempotentClass> {
    check_measure(g, mu)?;
    let support = mu.support();
    if is_subgroup(g, &support) && *mu == RationalMeasure::uniform_on(&support)? {
        Ok(IdempotentClass::HaarOf(support))
    } else {
        Ok(IdempotentClass::NotIdempotent)
    }
}

/// `μ = uniform(H) * x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularMeasureWitness {
    pub subgroup: Subset,
    pub shift: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MeasureClass {
    NotRegular,
    Regular(RegularMeasureWitness),
}

impl MeasureClass {
    pub fn witness(&self) -> Option<&RegularMeasureWitness> {
        match self {
            MeasureClass::Regular(w) => Some(w),
            MeasureClass::NotRegular => None,
        }
    }
}

/// Regular exactly when uniform on a right coset.
pub fn classify_regular_measure(g: &FiniteGroup, mu: &RationalMeasure) -> Result<MeasureClass> {
    check_measure(g, mu)?;
    let support = mu.support();
    let Some(w) = classify_regular_subset(g, &support)?.witness().cloned() else {
        return Ok(MeasureClass::NotRegular);
    };
    if *mu != RationalMeasure::uniform_on(&support)? {
        return Ok(MeasureClass::NotRegular);
    }
    Ok(MeasureClass::Regular(RegularMeasureWitness {
        subgroup: w.subgroup,
        shift: w.shift,
    }))
}

/// `x⁻¹ * uniform(H)` for `μ = uniform(H) * x`.
pub fn measure_inverse(g: &FiniteGroup, mu: &RationalMeasure) -> Result<RationalMeasure> {
    match classify_regular_measure(g, mu)? {
        MeasureClass::Regular(w) => translate_left(g, g.inv(w.shift), &RationalMeasure::uniform_on(&w.subgroup)?),
        MeasureClass::NotRegular => Err(Error::invalid(format!("{mu:?} is not a regular measure"))),
    }
}

/// `uniform(Hx)` for every right coset, sorted by support mask.
pub fn regular_measures(g: &FiniteGroup, max_order: usize) -> Result<Vec<(RationalMeasure, RegularMeasureWitness)>> {
    regular_elements_exp(g, max_order)?
        .into_iter()
        .map(|(coset, w)| {
            Ok((
                RationalMeasure::uniform_on(&coset)?,
                RegularMeasureWitness {
                    subgroup: w.subgroup,
                    shift: w.shift,
                },
            ))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportIsoReport {
    pub group: String,
    pub regular_measures: usize,
    pub regular_subsets: usize,
    pub expected: usize,
    pub bijective: bool,
    pub pairs_checked: usize,
    /// First pair `(i, j)` of regular measures with `supp(μ_i*μ_j) ≠ supp μ_i · supp μ_j`.
    pub homomorphism_failure: Option<(usize, usize)>,
    pub passed: bool,
}

/// Checks that `supp: Reg(P(G)) → Reg(exp(G))` is a bijective homomorphism.
pub fn support_iso_check(g: &FiniteGroup, max_order: usize) -> Result<SupportIsoReport> {
    let measures = regular_measures(g, max_order)?;
    let subsets: BTreeSet<Subset> = regular_elements_exp(g, max_order)?.into_iter().map(|(a, _)| a).collect();
    let expected = crate::hyper::coset_count(g, &crate::group::subgroups(g, max_order)?);
    let supports: Vec<Subset> = measures.iter().map(|(m, _)| m.support()).collect();
    let image: BTreeSet<Subset> = supports.iter().cloned().collect();
    let bijective = image.len() == measures.len() && image == subsets;
    let mut failure = None;
    'outer: for (i, (mu, _)) in measures.iter().enumerate() {
        for (j, (nu, _)) in measures.iter().enumerate() {
            let lhs = convolve(g, mu, nu)?.support();
            if lhs != product_unchecked(g, &supports[i], &supports[j]) {
                failure = Some((i, j));
                break 'outer;
            }
        }
    }
    let passed = bijective && failure.is_none() && measures.len() == expected && subsets.len() == expected;
    Ok(SupportIsoReport {
        group: g.name().unwrap_or("G").to_string(),
        regular_measures: measures.len(),
        regular_subsets: subsets.len(),
        expected,
        bijective,
        pairs_checked: measures.len() * measures.len(),
        homomorphism_failure: failure,
        passed,
    })
}

/// Every measure on `0..n` whose weights are multiples of `1/d`.
pub fn measure_grid(n: usize, d: usize) -> Vec<RationalMeasure> {
    fn go(n: usize, left: usize, prefix: &mut Vec<u128>, d: u128, out: &mut Vec<RationalMeasure>) {
        if prefix.len() + 1 == n {
            prefix.push(left as u128);
            out.push(RationalMeasure::reduced(prefix.clone(), d));
            prefix.pop();
            return;
        }
        for w in 0..=left {
            prefix.push(w as u128);
            go(n, left - w, prefix, d, out);
            prefix.pop();
        }
    }
    assert!(n > 0 && d > 0);
    let mut out = Vec::new();
    go(n, d, &mut Vec::with_capacity(n), d as u128, &mut out);
    out
}

/// The union of the grids for denominators `1..=d`, deduplicated and sorted.
pub fn measure_grid_up_to(n: usize, d: usize) -> Vec<RationalMeasure> {
    let all: BTreeSet<RationalMeasure> = (1..=d).flat_map(|k| measure_grid(n, k)).collect();
    all.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_cyclic, make_symmetric};

    fn c(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    fn m(num: &[u128], den: u128) -> RationalMeasure {
        RationalMeasure::from_numerators(num.to_vec(), den).unwrap()
    }

    fn set(n: usize, items: &[usize]) -> Subset {
        Subset::from_indices(n, items.iter().copied())
    }

    #[test]
    fn constructors() {
        assert!(RationalMeasure::from_numerators(vec![1, 1], 3).is_err());
        assert_eq!(m(&[2, 2], 4), m(&[1, 1], 2));
        assert_eq!(m(&[2, 2], 4).denominator(), 2);
        assert_eq!(RationalMeasure::uniform_on(&set(4, &[0, 2])).unwrap(), m(&[1, 0, 1, 0], 2));
        assert_eq!(RationalMeasure::uniform_on(&set(3, &[1])).unwrap(), RationalMeasure::point_mass(3, 1));
        let w = [Ratio::new(1, 3), Ratio::new(2, 3), Ratio::new(0, 1), Ratio::new(0, 1)];
        let mu = RationalMeasure::from_weights(&w).unwrap();
        assert_eq!(mu.support(), set(4, &[0, 1]));
        assert_eq!(mu.weight(1), Ratio::new(2, 3));
    }

    #[test]
    fn convolution_examples() {
        let c2 = c(2);
        let half = m(&[1, 1], 2);
        assert_eq!(convolve(&c2, &half, &half).unwrap(), half);
        let c4 = c(4);
        let d1 = RationalMeasure::point_mass(4, 1);
        assert_eq!(convolve(&c4, &d1, &d1).unwrap(), RationalMeasure::point_mass(4, 2));
        let nu = m(&[1, 2, 0, 3], 6);
        assert_eq!(convolve(&c4, &RationalMeasure::point_mass(4, 0), &nu).unwrap(), nu);
        assert!(convolve(&c4, &half, &nu).is_err());
    }

    #[test]
    fn translations_agree_with_point_masses() {
        let g = make_symmetric(3).unwrap();
        let mu = m(&[1, 2, 0, 0, 3, 0], 6);
        for x in 0..6 {
            let d = RationalMeasure::point_mass(6, x);
            assert_eq!(translate_left(&g, x, &mu).unwrap(), convolve(&g, &d, &mu).unwrap());
            assert_eq!(translate_right(&g, &mu, x).unwrap(), convolve(&g, &mu, &d).unwrap());
            let haar = RationalMeasure::uniform_on(&Subset::full(6)).unwrap();
            assert_eq!(translate_left(&g, x, &haar).unwrap(), haar);
        }
        assert_eq!(
            translate_left(&c(4), 1, &RationalMeasure::point_mass(4, 0)).unwrap(),
            RationalMeasure::point_mass(4, 1)
        );
    }

    #[test]
    fn idempotent_classification() {
        let c2 = c(2);
        assert_eq!(
            classify_idempotent_measure(&c2, &RationalMeasure::point_mass(2, 0)).unwrap(),
            IdempotentClass::HaarOf(set(2, &[0]))
        );
        assert_eq!(
            classify_idempotent_measure(&c2, &m(&[1, 1], 2)).unwrap(),
            IdempotentClass::HaarOf(set(2, &[0, 1]))
        );
        assert_eq!(classify_idempotent_measure(&c2, &m(&[2, 1], 3)).unwrap(), IdempotentClass::NotIdempotent);
        let non_subgroup = RationalMeasure::uniform_on(&set(4, &[0, 1])).unwrap();
        assert_eq!(classify_idempotent_measure(&c(4), &non_subgroup).unwrap(), IdempotentClass::NotIdempotent);
        assert_ne!(convolve(&c(4), &non_subgroup, &non_subgroup).unwrap(), non_subgroup);
    }

    #[test]
    fn regular_classification_and_inverse() {
        let c4 = c(4);
        let odd = m(&[0, 1, 0, 1], 2);
        assert_eq!(
            classify_regular_measure(&c4, &odd).unwrap(),
            MeasureClass::Regular(RegularMeasureWitness {
                subgroup: set(4, &[0, 2]),
                shift: 1
            })
        );
        assert_eq!(classify_regular_measure(&c4, &m(&[1, 2, 0, 0], 3)).unwrap(), MeasureClass::NotRegular);
        let inv = measure_inverse(&c4, &odd).unwrap();
        assert_eq!(inv, odd);
        let back = convolve(&c4, &convolve(&c4, &odd, &inv).unwrap(), &odd).unwrap();
        assert_eq!(back, odd);
        assert_eq!(
            measure_inverse(&c4, &RationalMeasure::point_mass(4, 1)).unwrap(),
            RationalMeasure::point_mass(4, 3)
        );
        assert!(measure_inverse(&c4, &m(&[1, 2, 0, 0], 3)).is_err());
    }

    #[test]
    fn support_iso_examples() {
        let r = support_iso_check(&c(1), 64).unwrap();
        assert!(r.passed && r.regular_measures == 1);
        let r = support_iso_check(&c(4), 64).unwrap();
        assert!(r.passed);
        assert_eq!((r.regular_measures, r.regular_subsets), (7, 7));
        let r = support_iso_check(&direct_product(&c(2), &c(2)), 64).unwrap();
        assert!(r.passed);
        assert_eq!((r.regular_measures, r.pairs_checked), (11, 121));
    }

    #[test]
    fn grids() {
        assert_eq!(measure_grid(2, 2).len(), 3);
        // compositions of 6 into 4 parts
        assert_eq!(measure_grid(4, 6).len(), 84);
        let up = measure_grid_up_to(2, 4);
        // 0, 1/4, 1/3, 1/2, 2/3, 3/4, 1 as first weight
        assert_eq!(up.len(), 7);
    }

    #[test]
    fn measure_file_round_trip() {
        let mu = m(&[1, 0, 2, 3], 6);
        let text = mu.to_string();
        assert_eq!(text, "0: 1/6\n2: 1/3\n3: 1/2\n");
        assert_eq!(parse_measure(&text, 4).unwrap(), mu);
        assert_eq!(parse_measure("# haar\n1: 1/2\n3: 1/2\n", 4).unwrap(), m(&[0, 1, 0, 1], 2));
        assert!(matches!(parse_measure("0: 1/2\n", 2), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_measure("0: 1/2\n0: 1/2\n", 2), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_measure("5: 1\n", 2), Err(Error::Parse { line: 1, .. })));
        assert!(parse_measure("1: 1\n", 2).is_ok());
    }
}
