//! Words in the free group `F = <x, y>`.
//!
//! Words are plain letter sequences; nothing is reduced implicitly; callers
//! ask for [`Word::free_reduce`] or [`Word::cyclic_reduce`] when they need it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown letter {letter:?} at offset {offset}")]
    UnknownLetter { letter: char, offset: usize },
    #[error("malformed exponent at offset {offset}")]
    MalformedExponent { offset: usize },
    #[error("generator names must be two distinct lowercase ASCII letters, got {0:?}")]
    BadGeneratorNames(String),
    #[error("rotation index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("word is a power of a single generator and has no syllable form")]
    SyllableFormUnavailable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::X => 0,
            Generator::Y => 1,
        }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        match index {
            0 => Some(Generator::X),
            1 => Some(Generator::Y),
            _ => None,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Generator::X => Generator::Y,
            Generator::Y => Generator::X,
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const X: Letter = Letter { generator: Generator::X, inverse: false };
    pub const Y: Letter = Letter { generator: Generator::Y, inverse: false };
    pub const X_INV: Letter = Letter { generator: Generator::X, inverse: true };
    pub const Y_INV: Letter = Letter { generator: Generator::Y, inverse: true };

    pub fn new(generator: Generator, sign: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, inverse: sign < 0 }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    fn abelian(self) -> AbelianImage {
        match self.generator {
            Generator::X => AbelianImage::new(self.sign(), 0),
            Generator::Y => AbelianImage::new(0, self.sign()),
        }
    }
}

/// Names used to read and print the two generators. Internally generators are
/// always indices; names only matter at the text boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorNames {
    names: [char; 2],
}

impl Default for GeneratorNames {
    fn default() -> Self {
        GeneratorNames { names: ['x', 'y'] }
    }
}

impl GeneratorNames {
    pub fn new(x: char, y: char) -> Result<Self, WordError> {
        if !x.is_ascii_lowercase() || !y.is_ascii_lowercase() || x == y {
            return Err(WordError::BadGeneratorNames(format!("{x}{y}")));
        }
        Ok(GeneratorNames { names: [x, y] })
    }

    /// Parses a two-character string such as `"ta"`.
    pub fn parse(pair: &str) -> Result<Self, WordError> {
        let chars: Vec<char> = pair.chars().collect();
        match chars.as_slice() {
            [x, y] => Self::new(*x, *y),
            _ => Err(WordError::BadGeneratorNames(pair.to_string())),
        }
    }

    pub fn name(&self, generator: Generator) -> char {
        self.names[generator.index()]
    }

    fn letter(&self, c: char) -> Option<Letter> {
        let lower = c.to_ascii_lowercase();
        let generator = if lower == self.names[0] {
            Generator::X
        } else if lower == self.names[1] {
            Generator::Y
        } else {
            return None;
        };
        Some(Letter { generator, inverse: c.is_ascii_uppercase() })
    }
}

/// Image of a word in `H_1(F; Z) = Z^2`: total exponents of `x` and `y`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianImage {
    pub a: i64,
    pub b: i64,
}

impl AbelianImage {
    pub const ZERO: AbelianImage = AbelianImage { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        AbelianImage { a, b }
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl Add for AbelianImage {
    type Output = AbelianImage;
    fn add(self, rhs: AbelianImage) -> AbelianImage {
        AbelianImage::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for AbelianImage {
    type Output = AbelianImage;
    fn sub(self, rhs: AbelianImage) -> AbelianImage {
        AbelianImage::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for AbelianImage {
    type Output = AbelianImage;
    fn neg(self) -> AbelianImage {
        AbelianImage::new(-self.a, -self.b)
    }
}

impl fmt::Display for AbelianImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

// Shortlex order, so that sorted collections of words read naturally.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word { letters }
    }
}

/// Maximal runs of equal letters, as (generator, signed exponent).
fn runs(letters: &[Letter]) -> Vec<(Generator, i64)> {
    let mut out: Vec<(Generator, i64)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((g, e)) if *g == l.generator && e.signum() == l.sign() => *e += l.sign(),
            _ => out.push((l.generator, l.sign())),
        }
    }
    out
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    /// `g^n` for a generator `g`; `n` may be negative or zero.
    pub fn generator_power(generator: Generator, n: i64) -> Self {
        let l = Letter::new(generator, if n < 0 { -1 } else { 1 });
        std::iter::repeat_n(l, n.unsigned_abs() as usize).collect()
    }

    /// Parses the compact syntax `(letter ('^' '-'? [1-9][0-9]*)?)*`. Lowercase
    /// letters are generators, uppercase their inverses, and whitespace between
    /// tokens is ignored. No reduction is performed.
    pub fn parse(text: &str, names: &GeneratorNames) -> Result<Word, WordError> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (offset, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '^' {
                return Err(WordError::MalformedExponent { offset });
            }
            let letter = names
                .letter(c)
                .filter(|_| c.is_ascii_alphabetic())
                .ok_or(WordError::UnknownLetter { letter: c, offset })?;
            i += 1;
            let mut exponent: i64 = 1;
            if let Some(&(caret, '^')) = chars.get(i) {
                i += 1;
                let mut negative = false;
                if let Some(&(_, '-')) = chars.get(i) {
                    negative = true;
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, d)| d).collect();
                if digits.is_empty() || digits.starts_with('0') {
                    return Err(WordError::MalformedExponent { offset: caret });
                }
                exponent = digits.parse::<i64>().map_err(|_| WordError::MalformedExponent { offset: caret })?;
                if negative {
                    exponent = -exponent;
                }
            }
            let l = if exponent < 0 { letter.inv() } else { letter };
            letters.extend(std::iter::repeat_n(l, exponent.unsigned_abs() as usize));
        }
        Ok(Word { letters })
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

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.first(), self.last()) {
                (Some(f), Some(l)) if self.len() > 1 => !f.is_inverse_of(l),
                _ => true,
            }
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.free_reduce().letters;
        for &l in &other.letters {
            if letters.last().is_some_and(|&p| p.is_inverse_of(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        self.letters.iter().rev().map(|l| l.inv()).collect()
    }

    /// Reduced `self^n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// The unique reduced word representing the same element of `F`.
    pub fn free_reduce(&self) -> Word {
        let mut letters: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if letters.last().is_some_and(|&p| p.is_inverse_of(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    /// Splits the free reduction of `self` as `conjugator * core * conjugator^-1`
    /// with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce().letters;
        let mut lo = 0;
        let mut hi = reduced.len();
        while hi - lo >= 2 && reduced[lo].is_inverse_of(reduced[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let core = Word { letters: reduced[lo..hi].to_vec() };
        let conjugator = Word { letters: reduced[..lo].to_vec() };
        (core, conjugator)
    }

    /// The rotation `g_{k+1} ... g_l g_1 ... g_k`.
    pub fn cyclic_permute(&self, k: usize) -> Result<Word, WordError> {
        if k >= self.len() {
            return Err(WordError::IndexOutOfRange { index: k, len: self.len() });
        }
        Ok(self.rotated(k))
    }

    fn rotated(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Word { letters }
    }

    pub fn abelianize(&self) -> AbelianImage {
        self.letters.iter().fold(AbelianImage::ZERO, |acc, l| acc + l.abelian())
    }

    /// `r_0, ..., r_{l-1}`: the proper prefixes, basepoint counted once. The
    /// full word `r_l` is left out since a closed walk returns to its start.
    pub fn prefixes(&self) -> Vec<Word> {
        (0..self.len()).map(|i| Word { letters: self.letters[..i].to_vec() }).collect()
    }

    /// Abelian images of [`Word::prefixes`], computed incrementally.
    pub fn prefix_walk(&self) -> Vec<AbelianImage> {
        let mut out = Vec::with_capacity(self.len());
        let mut pos = AbelianImage::ZERO;
        for l in &self.letters {
            out.push(pos);
            pos = pos + l.abelian();
        }
        out
    }

    pub fn contains_generator(&self, generator: Generator) -> bool {
        self.letters.iter().any(|l| l.generator == generator)
    }

    /// Syllable form led by `x`; see [`Word::syllables_led_by`].
    pub fn syllables(&self) -> Result<Syllables, WordError> {
        self.syllables_led_by(Generator::X)
    }

    /// Rotates a cyclically reduced word to `g^{m_1} h^{n_1} ... g^{m_k} h^{n_k}`
    /// where `g = lead` and `h` is the other generator. The rotation chosen is
    /// the first position where a `g`-syllable starts.
    pub fn syllables_led_by(&self, lead: Generator) -> Result<Syllables, WordError> {
        if !self.contains_generator(Generator::X) || !self.contains_generator(Generator::Y) {
            return Err(WordError::SyllableFormUnavailable);
        }
        let n = self.len();
        let offset = (0..n)
            .find(|&i| self.letters[i].generator == lead && self.letters[(i + n - 1) % n].generator != lead)
            .expect("a word containing both generators has a syllable boundary");
        let rotated = self.rotated(offset);
        let r = runs(&rotated.letters);
        let mut lead_exponents = Vec::new();
        let mut other_exponents = Vec::new();
        for (i, &(g, e)) in r.iter().enumerate() {
            debug_assert_eq!(g, if i % 2 == 0 { lead } else { lead.other() });
            if i % 2 == 0 {
                lead_exponents.push(e);
            } else {
                other_exponents.push(e);
            }
        }
        Ok(Syllables { rotated, offset, lead, lead_exponents, other_exponents })
    }

    /// Returns `(s, m)` with `self = s^m` and `m` maximal.
    pub fn proper_power_root(&self) -> (Word, usize) {
        let n = self.len();
        if n == 0 {
            return (Word::empty(), 1);
        }
        for period in (1..=n).filter(|p| n.is_multiple_of(*p)) {
            if (period..n).all(|i| self.letters[i] == self.letters[i - period]) {
                return (Word { letters: self.letters[..period].to_vec() }, n / period);
            }
        }
        unreachable!("the full length is always a period")
    }

    /// Replaces each generator by a word and freely reduces.
    pub fn substitute(&self, images: &[Word; 2]) -> Word {
        let inverses = [images[0].inverse(), images[1].inverse()];
        let mut out = Word::empty();
        for l in &self.letters {
            let i = l.generator.index();
            let piece = if l.inverse { &inverses[i] } else { &images[i] };
            out = out.mul(piece);
        }
        out
    }

    pub fn swap_generators(&self) -> Word {
        self.letters.iter().map(|l| Letter { generator: l.generator.other(), ..*l }).collect()
    }

    /// Replaces `g` by `g^-1` throughout.
    pub fn invert_generator(&self, generator: Generator) -> Word {
        self.letters.iter().map(|&l| if l.generator == generator { l.inv() } else { l }).collect()
    }

    /// Compact text form, e.g. `x^-1y^2X`, readable by [`Word::parse`].
    pub fn format(&self, names: &GeneratorNames) -> String {
        if self.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for (g, e) in runs(&self.letters) {
            let c = names.name(g);
            match e {
                1 => s.push(c),
                -1 => s.push(c.to_ascii_uppercase()),
                _ => {
                    s.push(c);
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
        }
        s
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(&GeneratorNames::default()))
    }
}

/// A word rotated into alternating syllables `g^{m_1} h^{n_1} ... g^{m_k} h^{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllables {
    pub rotated: Word,
    /// Rotation applied to the original word.
    pub offset: usize,
    pub lead: Generator,
    pub lead_exponents: Vec<i64>,
    pub other_exponents: Vec<i64>,
}

impl Syllables {
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.lead_exponents.iter().copied().zip(self.other_exponents.iter().copied()).collect()
    }

    pub fn k(&self) -> usize {
        self.lead_exponents.len()
    }

    /// `M_j = m_1 + ... + m_j` for `j = 1..=k`.
    pub fn lead_prefix_sums(&self) -> Vec<i64> {
        self.lead_exponents
            .iter()
            .scan(0, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .collect()
    }
}
