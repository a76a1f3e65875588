//! Words in the free group on up to 26 generators, their integer
//! combinations, and truncated Magnus coordinates.
//!
//! Text syntax: `a`–`z` are the generators `1..=26` and `A`–`Z` their
//! inverses. Words are read left to right in order of traversal, so the
//! concatenation `uv` runs `u` first.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest generator index expressible in the letter syntax.
pub const MAX_GENERATORS: usize = 26;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Result<Self> {
        if generator == 0 || generator > MAX_GENERATORS {
            return Err(Error::GeneratorOutOfRange {
                generator,
                rank: MAX_GENERATORS,
            });
        }
        Ok(Letter { generator, inverse })
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn to_char(&self) -> char {
        let base = if self.inverse { b'A' } else { b'a' };
        (base + (self.generator - 1) as u8) as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter {
                generator: (c as u8 - b'a') as usize + 1,
                inverse: false,
            }),
            'A'..='Z' => Some(Letter {
                generator: (c as u8 - b'A') as usize + 1,
                inverse: true,
            }),
            _ => None,
        }
    }
}

/// A word in the letters `x_i^{±1}`; not necessarily reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// The positive word `x_{g_1} x_{g_2} ⋯` from generator indices.
    pub fn from_generators(gens: &[usize]) -> Result<Self> {
        gens.iter()
            .map(|&g| Letter::new(g, false))
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether no letter is an inverse.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.letters.iter().find(|l| l.generator > rank) {
            Some(l) => Err(Error::GeneratorOutOfRange {
                generator: l.generator,
                rank,
            }),
            None => Ok(()),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, m: usize) -> Word {
        Word {
            letters: self.letters.repeat(m),
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverted).collect(),
        }
    }

    /// Free reduction: cancels adjacent `x x⁻¹` and `x⁻¹ x` pairs.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Applies a letter substitution: each generator goes to another
    /// generator or, when mapped to `None`, to the empty word.
    pub fn substitute(&self, map: impl Fn(usize) -> Option<usize>) -> Result<Word> {
        let mut letters = Vec::new();
        for l in &self.letters {
            if let Some(g) = map(l.generator) {
                letters.push(Letter::new(g, l.inverse)?);
            }
        }
        Ok(Word { letters })
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Letter::from_char)
            .collect::<Option<Vec<_>>>()
            .map(Word::from_letters)
            .ok_or_else(|| Error::InvalidWord(s.to_string()))
    }
}

/// A finite integer combination of words, an element of the group ring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCombination {
    terms: BTreeMap<Word, i64>,
}

impl WordCombination {
    pub fn zero() -> Self {
        WordCombination::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut c = Self::zero();
        c.add_term(w, 1);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut c = Self::zero();
        for (w, k) in terms {
            c.add_term(w, k);
        }
        c
    }

    /// `∏ (x_{g_j} - 1)`, the preimage of the monomial `X_{g_1} ⋯ X_{g_m}`.
    pub fn magnus_basis_preimage(monomial: &[usize]) -> Result<Self> {
        let mut out = Self::from_word(Word::empty());
        for &g in monomial {
            let factor = Self::from_terms([(Word::from_generators(&[g])?, 1), (Word::empty(), -1)]);
            out = out.mul(&factor);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &WordCombination) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, &c)| (w.clone(), c * k)))
    }

    /// Product in the monoid ring (concatenation, no free reduction).
    pub fn mul(&self, other: &WordCombination) -> Self {
        let mut out = Self::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.terms.keys().all(Word::is_positive)
    }

    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(Word::max_generator).max().unwrap_or(0)
    }
}

impl fmt::Display for WordCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let name = if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            };
            if c.abs() != 1 {
                write!(f, "{}·{name}", c.abs())?;
            } else {
                f.write_str(&name)?;
            }
        }
        Ok(())
    }
}

/// An element of `Z⟨X_1, …, X_g⟩` truncated above degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedTensorElement {
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, i64>,
}

impl TruncatedTensorElement {
    pub fn zero(degree: usize) -> Self {
        TruncatedTensorElement {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut e = Self::zero(degree);
        e.add_monomial(vec![], 1);
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, monomial: &[usize]) -> i64 {
        self.coeffs.get(monomial).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `coeff · monomial`; monomials above the truncation degree vanish.
    pub fn add_monomial(&mut self, monomial: Vec<usize>, coeff: i64) {
        if coeff == 0 || monomial.len() > self.degree {
            return;
        }
        let e = self.coeffs.entry(monomial.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&monomial);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.coeffs {
            out.add_monomial(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.degree);
        for (m, &c) in &self.coeffs {
            out.add_monomial(m.clone(), c * k);
        }
        out
    }

    /// Truncated product (at the smaller of the two degrees).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree.min(other.degree));
        for (u, &a) in &self.coeffs {
            for (v, &b) in &other.coeffs {
                if u.len() + v.len() <= out.degree {
                    let mut m = u.clone();
                    m.extend_from_slice(v);
                    out.add_monomial(m, a * b);
                }
            }
        }
        out
    }
}

/// Image of a single letter: `x ↦ 1 + X`, `x⁻¹ ↦ Σ_{j ≤ n} (-1)^j X^j`.
fn magnus_letter(l: Letter, n: usize) -> TruncatedTensorElement {
    let mut e = TruncatedTensorElement::one(n);
    if l.inverse {
        for j in 1..=n {
            e.add_monomial(vec![l.generator; j], if j % 2 == 0 { 1 } else { -1 });
        }
    } else {
        e.add_monomial(vec![l.generator], 1);
    }
    e
}

/// The Magnus expansion of `w` truncated at degree `n`, for the free group
/// of rank `g`.
pub fn magnus(w: &Word, n: usize, g: usize) -> Result<TruncatedTensorElement> {
    w.check_rank(g)?;
    Ok(w.letters.iter().fold(TruncatedTensorElement::one(n), |acc, &l| {
        acc.mul(&magnus_letter(l, n))
    }))
}

/// The Magnus expansion extended linearly to combinations.
pub fn magnus_combination(c: &WordCombination, n: usize, g: usize) -> Result<TruncatedTensorElement> {
    let mut out = TruncatedTensorElement::zero(n);
    for (w, k) in c.iter() {
        out = out.add(&magnus(w, n, g)?.scale(k));
    }
    Ok(out)
}

/// Rewrites `w` as a combination of positive words with the same class
/// modulo `I₊^{n+1}`, using `x⁻¹ ≡ Σ_{j=0}^n (1 - x)^j`.
pub fn positivize(w: &Word, n: usize) -> WordCombination {
    let mut out = WordCombination::from_word(Word::empty());
    for &l in w.letters() {
        let factor = if l.inverse {
            // Σ_{j=0}^n (1-x)^j = Σ_m (-1)^m (Σ_{j=m}^n C(j,m)) x^m
            //                   = Σ_m (-1)^m C(n+1, m+1) x^m
            let x = Word::from_letters(vec![l.inverted()]);
            WordCombination::from_terms((0..=n).map(|m| {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                (x.pow(m), sign * binomial(n + 1, m + 1))
            }))
        } else {
            WordCombination::from_word(Word::from_letters(vec![l]))
        };
        out = out.mul(&factor);
    }
    debug_assert!(out.is_positive());
    out
}

/// Positivizes every word of a combination.
pub fn positivize_combination(c: &WordCombination, n: usize) -> WordCombination {
    c.iter().fold(WordCombination::zero(), |acc, (w, k)| {
        acc.add(&positivize(w, n).scale(k))
    })
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Monomials in `X_1, …, X_g` of degree `≤ n`, ordered by degree and then
/// lexicographically.
pub fn monomial_basis(n: usize, g: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * g);
        for m in &layer {
            for x in 1..=g {
                let mut m2 = m.clone();
                m2.push(x);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Coordinates of a combination in the monomial basis of the truncation,
/// in the order of [`monomial_basis`].
pub fn fn_basis_coords(c: &WordCombination, n: usize, g: usize) -> Result<Vec<i64>> {
    let e = magnus_combination(c, n, g)?;
    Ok(monomial_basis(n, g).iter().map(|m| e.coefficient(m)).collect())
}
