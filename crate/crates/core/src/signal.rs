//! Bi-infinite sequences over a finite alphabet and the four signal
//! operators: shift, projection, concatenation and insertion.
//!
//! A sequence is stored as a finite perturbation of the constant-default
//! sequence: a start index plus a finite window of values, with everything
//! outside the window equal to the alphabet's default symbol. The window is
//! kept canonical (no leading or trailing defaults), so structural equality
//! coincides with semantic equality.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol within its [`Alphabet`].
pub type SymId = usize;

#[derive(Debug)]
struct AlphabetInner {
    symbols: Vec<String>,
    default: SymId,
}

/// A finite, ordered set of distinct symbol labels with one designated
/// default symbol.
///
/// Cloning is cheap; the symbol table is shared.
#[derive(Debug, Clone)]
pub struct Alphabet(Arc<AlphabetInner>);

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: Vec<S>, default: &str) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        let default = symbols
            .iter()
            .position(|s| s == default)
            .ok_or_else(|| Error::InvalidAlphabet(format!("default {default:?} not in alphabet")))?;
        Ok(Alphabet(Arc::new(AlphabetInner { symbols, default })))
    }

    /// Alphabet `{"0", "1", ..., "n-1"}` with default `"0"`.
    pub fn numeric(n: usize) -> Result<Self> {
        Alphabet::new((0..n).map(|i| i.to_string()).collect(), "0")
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn default_sym(&self) -> SymId {
        self.0.default
    }

    pub fn symbols(&self) -> &[String] {
        &self.0.symbols
    }

    pub fn label(&self, id: SymId) -> &str {
        &self.0.symbols[id]
    }

    pub fn id_of(&self, label: &str) -> Option<SymId> {
        self.0.symbols.iter().position(|s| s == label)
    }

    pub fn id_of_checked(&self, label: &str) -> Result<SymId> {
        self.id_of(label).ok_or_else(|| Error::UnknownSymbol(label.to_string()))
    }

    pub fn contains_id(&self, id: SymId) -> bool {
        id < self.0.symbols.len()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.symbols == other.0.symbols && self.0.default == other.0.default)
    }
}

impl Eq for Alphabet {}

/// The index sets the projection operator accepts: half-lines, finite sets
/// and all of the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    /// All of the integers.
    All,
    /// `{ k : k < n }`.
    Before(i64),
    /// `{ k : k >= n }`.
    From(i64),
    /// A finite set, kept sorted and duplicate-free.
    Finite(Vec<i64>),
}

impl IndexSet {
    pub fn finite<I: IntoIterator<Item = i64>>(indices: I) -> Self {
        let mut v: Vec<i64> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet::Finite(v)
    }

    /// The half-line `{0, -1, -2, ...}`.
    pub fn nonpositive() -> Self {
        IndexSet::Before(1)
    }

    /// The half-line `{0, 1, 2, ...}`.
    pub fn nonnegative() -> Self {
        IndexSet::From(0)
    }

    pub fn contains(&self, k: i64) -> bool {
        match self {
            IndexSet::All => true,
            IndexSet::Before(n) => k < *n,
            IndexSet::From(n) => k >= *n,
            IndexSet::Finite(v) => v.binary_search(&k).is_ok(),
        }
    }

    /// The translated set `A + n = { k + n : k in A }`.
    pub fn translate(&self, n: i64) -> Self {
        match self {
            IndexSet::All => IndexSet::All,
            IndexSet::Before(m) => IndexSet::Before(m + n),
            IndexSet::From(m) => IndexSet::From(m + n),
            IndexSet::Finite(v) => IndexSet::Finite(v.iter().map(|k| k + n).collect()),
        }
    }
}

/// A bi-infinite sequence with finite support relative to the alphabet's
/// default symbol.
///
/// The value at index `k` is `values[k - start]` when `start <= k <
/// start + values.len()`, and the default symbol otherwise. `values` never
/// begins or ends with the default; the empty window is the constant-default
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    alphabet: Alphabet,
    start: i64,
    values: Vec<SymId>,
}

impl Sequence {
    /// The constant-default sequence.
    pub fn constant(alphabet: &Alphabet) -> Self {
        Sequence { alphabet: alphabet.clone(), start: 0, values: Vec::new() }
    }

    /// Builds a sequence from a raw window, trimming leading and trailing
    /// default symbols so the result is canonical.
    pub fn from_window(alphabet: &Alphabet, start: i64, values: Vec<SymId>) -> Result<Self> {
        for &v in &values {
            if !alphabet.contains_id(v) {
                return Err(Error::UnknownSymbol(format!("#{v}")));
            }
        }
        Ok(Self::canonical(alphabet.clone(), start, values))
    }

    /// Same as [`Sequence::from_window`] but with symbol labels.
    pub fn from_labels(alphabet: &Alphabet, start: i64, labels: &[&str]) -> Result<Self> {
        let values = labels
            .iter()
            .map(|l| alphabet.id_of_checked(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::canonical(alphabet.clone(), start, values))
    }

    fn canonical(alphabet: Alphabet, mut start: i64, mut values: Vec<SymId>) -> Self {
        let o = alphabet.default_sym();
        let lead = values.iter().take_while(|&&v| v == o).count();
        if lead == values.len() {
            return Sequence { alphabet, start: 0, values: Vec::new() };
        }
        values.drain(..lead);
        start += lead as i64;
        let trail = values.iter().rev().take_while(|&&v| v == o).count();
        values.truncate(values.len() - trail);
        Sequence { alphabet, start, values }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn values(&self) -> &[SymId] {
        &self.values
    }

    pub fn is_constant_default(&self) -> bool {
        self.values.is_empty()
    }

    /// The support window `[start, end)`; `None` for the constant-default
    /// sequence.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.values.is_empty() {
            None
        } else {
            Some((self.start, self.start + self.values.len() as i64))
        }
    }

    /// The value at index `k`.
    pub fn get(&self, k: i64) -> SymId {
        let rel = k - self.start;
        if rel >= 0 && (rel as usize) < self.values.len() {
            self.values[rel as usize]
        } else {
            self.alphabet.default_sym()
        }
    }

    pub fn label_at(&self, k: i64) -> &str {
        self.alphabet.label(self.get(k))
    }

    /// The shift operator: `result(k) = self(k + n)`.
    pub fn shift(&self, n: i64) -> Self {
        if self.values.is_empty() {
            // Constant sequences are shift-invariant; keep the canonical start.
            return self.clone();
        }
        Sequence { alphabet: self.alphabet.clone(), start: self.start - n, values: self.values.clone() }
    }

    /// The projection operator onto `A`: keeps indices in `A`, defaults the
    /// rest.
    pub fn project(&self, a: &IndexSet) -> Self {
        if self.values.is_empty() {
            return self.clone();
        }
        let values = (0..self.values.len())
            .map(|i| {
                let k = self.start + i as i64;
                if a.contains(k) { self.values[i] } else { self.alphabet.default_sym() }
            })
            .collect();
        Self::canonical(self.alphabet.clone(), self.start, values)
    }

    /// Concatenation at time `n`: `self` on `k < n`, `other` on `k >= n`.
    pub fn concat(&self, other: &Self, n: i64) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                "concatenation requires matching alphabets".into(),
            ));
        }
        let lo = self
            .support()
            .map(|(s, _)| s)
            .into_iter()
            .chain(other.support().map(|(s, _)| s))
            .min();
        let hi = self
            .support()
            .map(|(_, e)| e)
            .into_iter()
            .chain(other.support().map(|(_, e)| e))
            .max();
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(Sequence::constant(&self.alphabet)),
        };
        let values = (lo..hi)
            .map(|k| if k < n { self.get(k) } else { other.get(k) })
            .collect();
        Ok(Self::canonical(self.alphabet.clone(), lo, values))
    }

    /// Insertion of symbol `a` at time `n`.
    pub fn insert(&self, a: SymId, n: i64) -> Result<Self> {
        if !self.alphabet.contains_id(a) {
            return Err(Error::UnknownSymbol(format!("#{a}")));
        }
        if self.get(n) == a {
            return Ok(self.clone());
        }
        let (lo, hi) = match self.support() {
            Some((s, e)) => (s.min(n), e.max(n + 1)),
            None => (n, n + 1),
        };
        let values = (lo..hi).map(|k| if k == n { a } else { self.get(k) }).collect();
        Ok(Self::canonical(self.alphabet.clone(), lo, values))
    }

    /// Restricts to the finite window `[from, to]` (inclusive), defaulting
    /// everything outside it.
    pub fn restrict(&self, from: i64, to: i64) -> Self {
        let values = (from..=to).map(|k| self.get(k)).collect();
        Self::canonical(self.alphabet.clone(), from, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::numeric(2).unwrap()
    }

    #[test]
    fn alphabet_rejects_duplicates_and_missing_default() {
        assert!(Alphabet::new(vec!["a", "a"], "a").is_err());
        assert!(Alphabet::new(vec!["a", "b"], "c").is_err());
        assert!(Alphabet::new(Vec::<String>::new(), "a").is_err());
    }

    #[test]
    fn canonicalize_trims_defaults() {
        let a = bin();
        let u = Sequence::from_window(&a, 0, vec![0, 1, 0]).unwrap();
        assert_eq!(u.start(), 1);
        assert_eq!(u.values(), &[1]);

        let z = Sequence::from_window(&a, -5, vec![0, 0]).unwrap();
        assert!(z.is_constant_default());
        assert_eq!(z, Sequence::constant(&a));

        let w = Sequence::from_window(&a, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(w.start(), 2);
        assert_eq!(w.values(), &[1, 0, 1]);
    }

    #[test]
    fn shift_moves_support() {
        let a = bin();
        let u = Sequence::from_window(&a, 0, vec![1]).unwrap();
        let s = u.shift(1);
        assert_eq!(s.start(), -1);
        assert_eq!(s.values(), &[1]);
        assert_eq!(s.get(-1), 1);
        // q is bijective
        assert_eq!(u.shift(3).shift(-3), u);
        assert_eq!(u.shift(0), u);
    }

    #[test]
    fn project_cases() {
        let a = bin();
        let u = Sequence::from_window(&a, -1, vec![1, 1]).unwrap();
        let p = u.project(&IndexSet::Before(0));
        assert_eq!(p.start(), -1);
        assert_eq!(p.values(), &[1]);
        assert_eq!(u.project(&IndexSet::All), u);
        let c = Sequence::constant(&a);
        assert_eq!(c.project(&IndexSet::finite([0, 3])), c);
    }

    #[test]
    fn concat_cases() {
        let a = bin();
        let u1 = Sequence::from_window(&a, 0, vec![1]).unwrap();
        let u2 = Sequence::from_window(&a, 5, vec![1]).unwrap();
        let c = u1.concat(&u2, 3).unwrap();
        assert_eq!(c.get(0), 1);
        assert_eq!(c.get(5), 1);
        assert_eq!(c.get(1), 0);
        assert_eq!(u1.concat(&u1, 3).unwrap(), u1);
        let z = Sequence::constant(&a);
        assert_eq!(z.concat(&z, -4).unwrap(), z);
    }

    #[test]
    fn concat_rejects_alphabet_mismatch() {
        let a = bin();
        let b = Alphabet::numeric(3).unwrap();
        let u = Sequence::constant(&a);
        let v = Sequence::constant(&b);
        assert!(u.concat(&v, 0).is_err());
    }

    #[test]
    fn insert_cases() {
        let a = bin();
        let z = Sequence::constant(&a);
        let i = z.insert(1, 0).unwrap();
        assert_eq!(i.start(), 0);
        assert_eq!(i.values(), &[1]);
        let u = Sequence::from_window(&a, 0, vec![1, 1]).unwrap();
        assert_eq!(u.insert(u.get(1), 1).unwrap(), u);
        assert!(u.insert(7, 0).is_err());
    }

    #[test]
    fn translate_index_sets() {
        assert_eq!(IndexSet::Before(0).translate(3), IndexSet::Before(3));
        assert_eq!(IndexSet::finite([1, 2]).translate(-1), IndexSet::finite([0, 1]));
        assert_eq!(IndexSet::All.translate(5), IndexSet::All);
    }
}
