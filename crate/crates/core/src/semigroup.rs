//! Finitely generated semigroups of quaternions whose generators all have
//! norm above 1. Such a semigroup has finitely many elements of bounded norm,
//! which makes norm-bounded enumeration and membership exact and terminating.

use std::cmp::{Ordering, Reverse};
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::realalg::{log_interval, AlgebraicReal, RInterval, Rat};

/// Witnesses kept per enumerated element.
pub const WITNESS_CAP: usize = 16;

/// Default ceiling on distinct elements produced by one enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSpec {
    pub generators: Vec<Quaternion>,
    pub labels: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validation {
    pub ok: bool,
    pub commutative: bool,
}

/// Generator indices, multiplied left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, spec: &SemigroupSpec) -> Quaternion {
        let mut it = self.0.iter();
        let first = it.next().expect("words are nonempty");
        it.fold(spec.generators[*first].clone(), |acc, &i| {
            acc.mul(&spec.generators[i])
        })
    }

    /// Letter counts per generator.
    pub fn exponents(&self, generators: usize) -> Vec<u64> {
        let mut out = vec![0u64; generators];
        for &i in &self.0 {
            out[i] += 1;
        }
        out
    }

    /// Largest letter count.
    pub fn max_exponent(&self, generators: usize) -> u64 {
        self.exponents(generators).into_iter().max().unwrap_or(0)
    }

    /// Shortest first, then lexicographic.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }

    pub fn labels<'a>(&self, spec: &'a SemigroupSpec) -> Vec<&'a str> {
        self.0.iter().map(|&i| spec.labels[i].as_str()).collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct EnumeratedElement {
    pub value: Quaternion,
    /// Sorted shortest first; at most [`WITNESS_CAP`].
    pub witnesses: Vec<Word>,
    pub abs_sq: AlgebraicReal,
}

impl EnumeratedElement {
    pub fn shortest(&self) -> &Word {
        &self.witnesses[0]
    }

    fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.abs_sq
            .cmp_exact(&o.abs_sq)
            .then_with(|| self.value.cmp_coords(&o.value))
            .then_with(|| self.witnesses[0].canonical_cmp(&o.witnesses[0]))
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub elements: Vec<EnumeratedElement>,
    /// Distinct values expanded during the search.
    pub explored: usize,
}

impl SemigroupSpec {
    pub fn new(generators: Vec<Quaternion>) -> Self {
        let labels = (1..=generators.len()).map(|i| format!("g{i}")).collect();
        SemigroupSpec { generators, labels }
    }

    pub fn with_labels(generators: Vec<Quaternion>, labels: Vec<String>) -> Self {
        SemigroupSpec { generators, labels }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn norms(&self) -> Vec<AlgebraicReal> {
        self.generators.iter().map(Quaternion::norm).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }
}

/// Checks the standing hypotheses and detects commutativity.
pub fn validate(spec: &SemigroupSpec) -> Result<Validation> {
    if spec.generators.is_empty() {
        return Err(Error::EmptySemigroup);
    }
    if spec.labels.len() != spec.generators.len() {
        return Err(Error::Invalid("labels and generators differ in length".into()));
    }
    let one = AlgebraicReal::one();
    for (index, g) in spec.generators.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroGenerator { index });
        }
        if g.norm() <= one {
            return Err(Error::NormNotAboveOne { index });
        }
    }
    for i in 0..spec.len() {
        for j in i + 1..spec.len() {
            if spec.generators[i] == spec.generators[j] {
                return Err(Error::DuplicateGenerator { first: i, second: j });
            }
        }
    }
    Ok(Validation {
        ok: true,
        commutative: spec.is_commutative(),
    })
}

fn over_cap(count: usize, cap: u64) -> Result<()> {
    if count as u64 > cap {
        Err(Error::ResourceLimit {
            what: "semigroup elements",
            limit: cap,
        })
    } else {
        Ok(())
    }
}

struct Pending {
    value: Quaternion,
    norm: AlgebraicReal,
    witnesses: Vec<Word>,
}

fn push_witness(list: &mut Vec<Word>, w: Word) {
    if list.len() < WITNESS_CAP {
        list.push(w);
    }
}

/// All elements f with N(f) ≤ bound_sq, in canonical order.
pub fn enumerate_up_to(
    spec: &SemigroupSpec,
    bound_sq: &AlgebraicReal,
    cap: u64,
) -> Result<Vec<EnumeratedElement>> {
    Ok(enumerate_with_stats(spec, bound_sq, cap)?.elements)
}

/// Norm-ordered best-first search. Values are merged on discovery; a value is
/// expanded once, when popped, by which time every parent has been expanded
/// so its witness list is final.
pub fn enumerate_with_stats(
    spec: &SemigroupSpec,
    bound_sq: &AlgebraicReal,
    cap: u64,
) -> Result<Enumeration> {
    validate(spec)?;
    let norms = spec.norms();
    let mut pending: Vec<Pending> = Vec::new();
    let mut index: HashMap<Quaternion, usize> = HashMap::new();
    // (norm, discovery order) min-heap
    let mut heap: BinaryHeap<Reverse<(AlgebraicReal, usize)>> = BinaryHeap::new();

    let mut discover = |value: Quaternion,
                        norm: AlgebraicReal,
                        word: Word,
                        pending: &mut Vec<Pending>,
                        heap: &mut BinaryHeap<Reverse<(AlgebraicReal, usize)>>|
     -> Result<()> {
        match index.entry(value) {
            Entry::Occupied(e) => push_witness(&mut pending[*e.get()].witnesses, word),
            Entry::Vacant(e) => {
                let id = pending.len();
                over_cap(id + 1, cap)?;
                pending.push(Pending {
                    value: e.key().clone(),
                    norm: norm.clone(),
                    witnesses: vec![word],
                });
                e.insert(id);
                heap.push(Reverse((norm, id)));
            }
        }
        Ok(())
    };

    for (t, g) in spec.generators.iter().enumerate() {
        if &norms[t] <= bound_sq {
            discover(g.clone(), norms[t].clone(), Word(vec![t]), &mut pending, &mut heap)?;
        }
    }
    let mut order = Vec::new();
    while let Some(Reverse((norm, id))) = heap.pop() {
        order.push(id);
        let parent_words = pending[id].witnesses.clone();
        let parent = pending[id].value.clone();
        for (t, g) in spec.generators.iter().enumerate() {
            let child_norm = norm.mul(&norms[t]);
            if &child_norm > bound_sq {
                continue;
            }
            let child = parent.mul(g);
            for w in &parent_words {
                let mut letters = w.0.clone();
                letters.push(t);
                discover(child.clone(), child_norm.clone(), Word(letters), &mut pending, &mut heap)?;
            }
        }
    }
    let explored = order.len();
    let mut elements: Vec<EnumeratedElement> = pending
        .into_iter()
        .map(|p| {
            let mut witnesses = p.witnesses;
            witnesses.sort_by(Word::canonical_cmp);
            witnesses.dedup();
            EnumeratedElement {
                value: p.value,
                witnesses,
                abs_sq: p.norm,
            }
        })
        .collect();
    elements.sort_by(EnumeratedElement::canonical_cmp);
    Ok(Enumeration { elements, explored })
}

/// Distinct values of all words of length ≤ max_len, each with its shortest
/// witnesses, in canonical order.
pub fn enumerate_by_length(
    spec: &SemigroupSpec,
    max_len: usize,
    cap: u64,
) -> Result<Vec<EnumeratedElement>> {
    validate(spec)?;
    let mut seen: HashMap<Quaternion, usize> = HashMap::new();
    let mut out: Vec<EnumeratedElement> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    let norms = spec.norms();
    for len in 1..=max_len {
        let mut next = Vec::new();
        let sources: Vec<(Quaternion, AlgebraicReal, Vec<Word>)> = if len == 1 {
            vec![(Quaternion::one(), AlgebraicReal::one(), vec![Word(Vec::new())])]
        } else {
            frontier
                .iter()
                .map(|&id| {
                    let e: &EnumeratedElement = &out[id];
                    (e.value.clone(), e.abs_sq.clone(), e.witnesses.clone())
                })
                .collect()
        };
        for (value, norm, words) in sources {
            for (t, g) in spec.generators.iter().enumerate() {
                let child = if len == 1 { g.clone() } else { value.mul(g) };
                let child_norm = norm.mul(&norms[t]);
                let new_words = words.iter().map(|w| {
                    let mut l = w.0.clone();
                    l.push(t);
                    Word(l)
                });
                match seen.entry(child) {
                    Entry::Occupied(e) => {
                        let el = &mut out[*e.get()];
                        // only same-length words are shortest witnesses
                        if el.witnesses[0].len() == len {
                            for w in new_words {
                                push_witness(&mut el.witnesses, w);
                            }
                        }
                    }
                    Entry::Vacant(e) => {
                        over_cap(out.len() + 1, cap)?;
                        let id = out.len();
                        let mut witnesses = Vec::new();
                        for w in new_words {
                            push_witness(&mut witnesses, w);
                        }
                        out.push(EnumeratedElement {
                            value: e.key().clone(),
                            witnesses,
                            abs_sq: child_norm,
                        });
                        e.insert(id);
                        next.push(id);
                    }
                }
            }
        }
        // parents in order of their least witness make first discoveries lexicographically least
        next.sort_by(|&x, &y| out[x].witnesses[0].cmp(&out[y].witnesses[0]));
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    for e in &mut out {
        e.witnesses.sort_by(Word::canonical_cmp);
        e.witnesses.dedup();
    }
    out.sort_by(EnumeratedElement::canonical_cmp);
    Ok(out)
}

/// A shortest (then lexicographically least) word evaluating to q, or None.
/// The search peels generators off the left: q = g·r forces r = g⁻¹q with
/// N(r) = N(q)/N(g), and every element of the semigroup has norm at least
/// the smallest generator norm, which bounds the depth.
pub fn membership(
    spec: &SemigroupSpec,
    q: &Quaternion,
    max_len: Option<usize>,
    cap: u64,
) -> Result<Option<Word>> {
    validate(spec)?;
    if q.is_zero() {
        return Ok(None);
    }
    let norms = spec.norms();
    let min_norm = norms.iter().min().expect("nonempty").clone();
    let inverses: Vec<Quaternion> = spec
        .generators
        .iter()
        .map(|g| g.inv().expect("validated nonzero"))
        .collect();
    let mut level: Vec<(Quaternion, AlgebraicReal, Vec<usize>)> = vec![(q.clone(), q.norm(), Vec::new())];
    let mut visited = 0usize;
    let mut depth = 0usize;
    while !level.is_empty() {
        depth += 1;
        if max_len.is_some_and(|m| depth > m) {
            return Ok(None);
        }
        let mut best: Option<Vec<usize>> = None;
        for (r, _, prefix) in &level {
            for (t, g) in spec.generators.iter().enumerate() {
                if r == g {
                    let mut w = prefix.clone();
                    w.push(t);
                    if best.as_ref().is_none_or(|b| &w < b) {
                        best = Some(w);
                    }
                }
            }
        }
        if let Some(w) = best {
            return Ok(Some(Word(w)));
        }
        let mut next: HashMap<Quaternion, (AlgebraicReal, Vec<usize>)> = HashMap::new();
        for (r, n, prefix) in &level {
            for t in 0..spec.len() {
                let rest_norm = n.div(&norms[t])?;
                if rest_norm < min_norm {
                    continue;
                }
                let rest = inverses[t].mul(r);
                let mut p = prefix.clone();
                p.push(t);
                match next.entry(rest) {
                    Entry::Occupied(mut e) => {
                        if p < e.get().1 {
                            e.get_mut().1 = p;
                        }
                    }
                    Entry::Vacant(e) => {
                        visited += 1;
                        over_cap(visited, cap)?;
                        e.insert((rest_norm, p));
                    }
                }
            }
        }
        level = next.into_iter().map(|(k, (n, p))| (k, n, p)).collect();
        level.sort_by(|a, b| a.2.cmp(&b.2));
    }
    Ok(None)
}

/// Certified intervals for x_i = ln|g_i| = ½·ln N(g_i), each strictly positive.
pub fn log_norm_data(spec: &SemigroupSpec, bits: u32) -> Result<Vec<RInterval>> {
    validate(spec)?;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    spec.norms()
        .iter()
        .map(|n| {
            let mut b = bits;
            loop {
                let iv = log_interval(n, b + 1)?.scale(&half);
                if iv.is_positive() {
                    return Ok(iv);
                }
                b = b.checked_mul(2).ok_or(Error::PrecisionFailure { bits: b })?;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::interval::rat_to_f64;
    use std::collections::HashSet;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    fn spec(gens: &[Quaternion]) -> SemigroupSpec {
        SemigroupSpec::new(gens.to_vec())
    }

    #[test]
    fn validate_examples() {
        let v = validate(&spec(&[q(2, 0, 0, 0)])).unwrap();
        assert_eq!(v, Validation { ok: true, commutative: true });
        let v = validate(&spec(&[q(1, 1, 0, 0), q(1, 0, 1, 0)])).unwrap();
        assert!(v.ok && !v.commutative);
        assert_eq!(
            validate(&spec(&[q(2, 0, 0, 0), q(0, 1, 0, 0)])).unwrap_err(),
            Error::NormNotAboveOne { index: 1 }
        );
        assert_eq!(
            validate(&spec(&[q(0, 0, 0, 0)])).unwrap_err(),
            Error::ZeroGenerator { index: 0 }
        );
        assert_eq!(
            validate(&spec(&[q(2, 0, 0, 0), q(2, 0, 0, 0)])).unwrap_err(),
            Error::DuplicateGenerator { first: 0, second: 1 }
        );
        assert_eq!(validate(&spec(&[])).unwrap_err(), Error::EmptySemigroup);
    }

    #[test]
    fn powers_of_two() {
        let s = spec(&[q(2, 0, 0, 0)]);
        let els = enumerate_up_to(&s, &100.into(), DEFAULT_ELEMENT_CAP).unwrap();
        let values: Vec<Quaternion> = els.iter().map(|e| e.value.clone()).collect();
        assert_eq!(values, vec![q(2, 0, 0, 0), q(4, 0, 0, 0), q(8, 0, 0, 0)]);
        assert!(enumerate_up_to(&s, &3.into(), DEFAULT_ELEMENT_CAP).unwrap().is_empty());
    }

    fn naive(s: &SemigroupSpec, len: usize) -> HashSet<Quaternion> {
        let mut out = HashSet::new();
        let mut layer: Vec<Quaternion> = vec![Quaternion::one()];
        for _ in 0..len {
            let mut next = Vec::new();
            for v in &layer {
                for g in &s.generators {
                    let w = v.mul(g);
                    out.insert(w.clone());
                    next.push(w);
                }
            }
            layer = next;
        }
        out
    }

    #[test]
    fn length_two_products() {
        let s = spec(&[q(1, 1, 0, 0), q(1, 0, 1, 0)]);
        let els = enumerate_up_to(&s, &16.into(), DEFAULT_ELEMENT_CAP).unwrap();
        let got: HashSet<Quaternion> = els.iter().map(|e| e.value.clone()).collect();
        let want: HashSet<Quaternion> = naive(&s, 4).into_iter().filter(|v| v.norm() <= 16.into()).collect();
        assert_eq!(got, want);
        for e in &els {
            for w in &e.witnesses {
                assert_eq!(w.eval(&s), e.value);
            }
        }
        let mut sorted = els.clone();
        sorted.sort_by(EnumeratedElement::canonical_cmp);
        assert_eq!(
            sorted.iter().map(|e| e.value.clone()).collect::<Vec<_>>(),
            els.iter().map(|e| e.value.clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn commutative_specs_explore_lattice_points() {
        // 2 and 3 generate a free commutative monoid: values ↔ exponent vectors
        let s = spec(&[q(2, 0, 0, 0), q(3, 0, 0, 0)]);
        let e = enumerate_with_stats(&s, &(1_000_000i64).into(), DEFAULT_ELEMENT_CAP).unwrap();
        let lattice = (0..=10u32)
            .flat_map(|a| (0..=7u32).map(move |b| (a, b)))
            .filter(|&(a, b)| (a, b) != (0, 0) && 4u64.pow(a) * 9u64.pow(b) <= 1_000_000)
            .count();
        assert_eq!(e.elements.len(), lattice);
        assert_eq!(e.explored, lattice);
    }

    #[test]
    fn resource_cap_trips() {
        let s = spec(&[q(1, 1, 0, 0), q(1, 0, 1, 0)]);
        let err = enumerate_up_to(&s, &1024.into(), 10).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn membership_examples() {
        let s = spec(&[q(2, 0, 0, 0)]);
        assert_eq!(membership(&s, &q(8, 0, 0, 0), None, 1000).unwrap(), Some(Word(vec![0, 0, 0])));
        assert_eq!(membership(&s, &q(3, 0, 0, 0), None, 1000).unwrap(), None);
        let s = spec(&[q(1, 1, 0, 0), q(1, 0, 1, 0)]);
        assert_eq!(membership(&s, &q(1, 1, 1, 1), None, 1000).unwrap(), Some(Word(vec![0, 1])));
        assert_eq!(membership(&s, &q(1, 1, 1, -1), None, 1000).unwrap(), Some(Word(vec![1, 0])));
        assert_eq!(membership(&s, &q(1, 1, 1, 1), Some(1), 1000).unwrap(), None);
    }

    #[test]
    fn membership_inverts_evaluation() {
        let s = spec(&[q(1, 1, 0, 0), q(1, 0, 1, 0), q(2, 0, 0, 1)]);
        for e in enumerate_by_length(&s, 4, DEFAULT_ELEMENT_CAP).unwrap() {
            let w = membership(&s, &e.value, None, 100_000).unwrap().expect("member");
            assert_eq!(w.eval(&s), e.value);
            assert!(w.len() <= e.shortest().len());
        }
    }

    #[test]
    fn length_enumeration_matches_naive() {
        let s = spec(&[q(1, 1, 0, 0), q(1, 0, 1, 0)]);
        let got: HashSet<Quaternion> = enumerate_by_length(&s, 5, DEFAULT_ELEMENT_CAP)
            .unwrap()
            .into_iter()
            .map(|e| e.value)
            .collect();
        assert_eq!(got, naive(&s, 5));
    }

    #[test]
    fn log_norms() {
        let x = log_norm_data(&spec(&[q(2, 0, 0, 0), q(1, 1, 0, 0), q(3, 0, 0, 0)]), 60).unwrap();
        assert!((rat_to_f64(&x[0].mid()) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((rat_to_f64(&x[1].mid()) - 0.5 * std::f64::consts::LN_2).abs() < 1e-15);
        assert!((rat_to_f64(&x[2].mid()) - 3f64.ln()).abs() < 1e-15);
        assert!(x.iter().all(|iv| iv.is_positive() && iv.width() <= Rat::new(1.into(), BigInt::one() << 60usize)));
    }
}
