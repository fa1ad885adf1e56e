//! The integral group ring `Z[F]` of the free group and Fox calculus.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::words::{AbelianImage, Generator, Word};

/// A finite integer combination of reduced words. Keys are always reduced and
/// coefficients never zero, so structural equality is equality in `Z[F]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, i64>,
}

impl FreeRingElement {
    pub fn zero() -> Self {
        FreeRingElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), 1)
    }

    /// `coefficient * word`; the word is freely reduced first.
    pub fn monomial(word: Word, coefficient: i64) -> Self {
        let mut f = Self::zero();
        f.add_term(word.free_reduce(), coefficient);
        f
    }

    pub fn from_word(word: &Word) -> Self {
        Self::monomial(word.clone(), 1)
    }

    /// `g - 1` for a generator `g`.
    pub fn generator_minus_one(generator: Generator) -> Self {
        &Self::from_word(&Word::generator_power(generator, 1)) - &Self::one()
    }

    fn add_term(&mut self, word: Word, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
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

    pub fn coefficient(&self, word: &Word) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// The augmentation `alpha`, sending every word to 1.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Fox derivative of a ring element, extended linearly from words.
    pub fn fox(&self, generator: Generator) -> FreeRingElement {
        let mut out = FreeRingElement::zero();
        for (word, c) in self.terms() {
            for (w, d) in fox_derivative(word, generator).terms() {
                out.add_term(w.clone(), c * d);
            }
        }
        out
    }

    /// Pushes the element through abelianization: `counts[v]` is the size of
    /// the multiset `[|f_g| . g]` above `v` and `signed[v]` the signed sum of
    /// coefficients above `v`.
    pub fn abelian_support(&self) -> LatticeMultiset {
        let mut m = LatticeMultiset::default();
        for (word, c) in self.terms() {
            m.insert(word.abelianize(), c);
        }
        m
    }
}

impl Add for &FreeRingElement {
    type Output = FreeRingElement;
    fn add(self, rhs: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &FreeRingElement {
    type Output = FreeRingElement;
    fn neg(self) -> FreeRingElement {
        FreeRingElement { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }
}

impl Sub for &FreeRingElement {
    type Output = FreeRingElement;
    fn sub(self, rhs: &FreeRingElement) -> FreeRingElement {
        self + &(-rhs)
    }
}

// Quadratic in the number of terms; inputs are relator sized.
impl Mul for &FreeRingElement {
    type Output = FreeRingElement;
    fn mul(self, rhs: &FreeRingElement) -> FreeRingElement {
        let mut out = FreeRingElement::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

/// `d r / d g`, computed letter by letter: an occurrence of `g` at position
/// `j` contributes `+r_{j-1}`, an occurrence of `g^-1` contributes `-r_j`.
///
/// For a reduced `r` the contributing prefixes have distinct lengths, hence are
/// distinct reduced words, and every coefficient is `+1` or `-1`.
pub fn fox_derivative(r: &Word, generator: Generator) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    let mut prefix = Word::empty();
    for &l in r.letters() {
        let next = prefix.mul(&Word::letter(l));
        if l.generator == generator {
            if l.inverse {
                out.add_term(next.clone(), -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix = next;
    }
    out
}

/// Checks `r - 1 = r_x (x - 1) + r_y (y - 1)` exactly in `Z[F]`.
pub fn fundamental_formula_check(r: &Word) -> bool {
    let lhs = &FreeRingElement::from_word(r) - &FreeRingElement::one();
    let rhs = &(&fox_derivative(r, Generator::X) * &FreeRingElement::generator_minus_one(Generator::X))
        + &(&fox_derivative(r, Generator::Y) * &FreeRingElement::generator_minus_one(Generator::Y));
    lhs == rhs
}

/// A multiset of lattice points together with signed coefficient sums.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeMultiset {
    counts: BTreeMap<AbelianImage, u64>,
    signed: BTreeMap<AbelianImage, i64>,
}

impl LatticeMultiset {
    /// Every point with multiplicity one and sign `+1` per occurrence.
    pub fn from_points(points: impl IntoIterator<Item = AbelianImage>) -> Self {
        let mut m = Self::default();
        for p in points {
            m.insert(p, 1);
        }
        m
    }

    /// Adds `|coefficient|` copies of `point`.
    pub fn insert(&mut self, point: AbelianImage, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        *self.counts.entry(point).or_insert(0) += coefficient.unsigned_abs();
        *self.signed.entry(point).or_insert(0) += coefficient;
    }

    pub fn count(&self, point: AbelianImage) -> u64 {
        self.counts.get(&point).copied().unwrap_or(0)
    }

    pub fn signed(&self, point: AbelianImage) -> i64 {
        self.signed.get(&point).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<AbelianImage, u64> {
        &self.counts
    }

    pub fn signed_sums(&self) -> &BTreeMap<AbelianImage, i64> {
        &self.signed
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::GeneratorNames;

    const BROWN: &str = "XYxy^2XYx^2YXyXyxY";

    fn w(s: &str) -> Word {
        Word::parse(s, &GeneratorNames::default()).unwrap()
    }

    fn el(terms: &[(&str, i64)]) -> FreeRingElement {
        terms.iter().fold(FreeRingElement::zero(), |acc, &(s, c)| {
            let word = if s == "e" { Word::empty() } else { w(s) };
            &acc + &FreeRingElement::monomial(word, c)
        })
    }

    // Fox derivative via the product rule d(uv) = du + u dv, recursing on a
    // split of the word in half.
    fn fox_by_product_rule(r: &Word, g: Generator) -> FreeRingElement {
        match r.len() {
            0 => FreeRingElement::zero(),
            1 => {
                let l = r.letters()[0];
                if l.generator != g {
                    FreeRingElement::zero()
                } else if !l.inverse {
                    FreeRingElement::one()
                } else {
                    // d(g^-1) = -g^-1
                    FreeRingElement::monomial(r.clone(), -1)
                }
            }
            n => {
                let u = Word::from(r.letters()[..n / 2].to_vec());
                let v = Word::from(r.letters()[n / 2..].to_vec());
                &fox_by_product_rule(&u, g) + &(&FreeRingElement::from_word(&u) * &fox_by_product_rule(&v, g))
            }
        }
    }

    #[test]
    fn ring_examples() {
        let x_minus_1 = el(&[("x", 1), ("e", -1)]);
        let x_plus_1 = el(&[("x", 1), ("e", 1)]);
        assert_eq!(&x_minus_1 * &x_plus_1, el(&[("xx", 1), ("e", -1)]));
        assert!((&x_plus_1 + &(-&x_plus_1)).is_zero());
        let dy3 = FreeRingElement::from_word(&w("yyy")).fox(Generator::Y);
        assert_eq!(&dy3 * &FreeRingElement::generator_minus_one(Generator::Y), el(&[("yyy", 1), ("e", -1)]));
        // reduction happens inside products
        assert_eq!(&el(&[("xy", 1)]) * &el(&[("Y", 1)]), el(&[("x", 1)]));
    }

    #[test]
    fn fox_examples() {
        let r = w("xyXY");
        let ry = fox_derivative(&r, Generator::Y);
        assert_eq!(ry, el(&[("x", 1), ("xyXY", -1)]));
        assert_eq!(ry, fox_by_product_rule(&r, Generator::Y));

        let names = GeneratorNames::new('t', 'a').unwrap();
        let bs = Word::parse("TaatA", &names).unwrap();
        // generator a is index 1 under (t, a)
        let ra = fox_derivative(&bs, Generator::Y);
        let t = |s: &str| Word::parse(s, &names).unwrap();
        let expected = &(&FreeRingElement::from_word(&t("T")) + &FreeRingElement::from_word(&t("Ta")))
            - &FreeRingElement::from_word(&t("TaatA"));
        assert_eq!(ra, expected);
    }

    #[test]
    fn brown_rx_matches_displayed_terms() {
        let rx = fox_derivative(&w(BROWN), Generator::X);
        // The last displayed term carries a stray trailing x; the prefix in
        // front of the final x-letter stops at x^-1yx^-1y.
        let expected = el(&[
            ("X", -1),
            ("XY", 1),
            ("XYxy^2X", -1),
            ("XYxy^2XY", 1),
            ("XYxy^2XYx", 1),
            ("XYxy^2XYx^2YX", -1),
            ("XYxy^2XYx^2YXyX", -1),
            ("XYxy^2XYx^2YXyXy", 1),
        ]);
        assert_eq!(rx, expected);
        assert_eq!(rx.len(), 8);
        assert_eq!(rx, fox_by_product_rule(&w(BROWN), Generator::X));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(FreeRingElement::from_word(&w("xyX")).augmentation(), 1);
        assert_eq!(FreeRingElement::generator_minus_one(Generator::X).augmentation(), 0);
        assert_eq!(fox_derivative(&w("xyXY"), Generator::Y).augmentation(), 0);
    }

    #[test]
    fn fundamental_formula_examples() {
        assert!(fundamental_formula_check(&w("xyXY")));
        assert!(fundamental_formula_check(&w(BROWN)));
        assert!(fundamental_formula_check(&w("x")));
        assert_eq!(fox_derivative(&w("x"), Generator::X), FreeRingElement::one());
        assert!(fox_derivative(&w("x"), Generator::Y).is_zero());
    }

    #[test]
    fn abelian_support_examples() {
        let rx = fox_derivative(&w(BROWN), Generator::X);
        let support = rx.abelian_support();
        let expected: BTreeMap<_, _> = [
            (AbelianImage::new(0, 0), 1),
            (AbelianImage::new(-1, -1), 1),
            (AbelianImage::new(0, -1), 1),
            (AbelianImage::new(-1, 0), 3),
            (AbelianImage::new(-1, 1), 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(support.counts(), &expected);
        assert_eq!(support.total(), 8);

        let names = GeneratorNames::new('t', 'a').unwrap();
        let bs = Word::parse("TaatA", &names).unwrap();
        let support = fox_derivative(&bs, Generator::Y).abelian_support();
        let expected: BTreeMap<_, _> =
            [(AbelianImage::new(-1, 0), 1), (AbelianImage::new(-1, 1), 1), (AbelianImage::new(0, 1), 1)]
                .into_iter()
                .collect();
        assert_eq!(support.counts(), &expected);

        assert!(FreeRingElement::zero().abelian_support().is_empty());
    }

    mod props {
        use super::*;
        use crate::words::Letter;
        use proptest::prelude::*;

        fn word(max: usize) -> impl Strategy<Value = Word> {
            prop::collection::vec(
                prop_oneof![Just(Letter::X), Just(Letter::Y), Just(Letter::X_INV), Just(Letter::Y_INV)],
                0..max,
            )
            .prop_map(|v| Word::from(v).free_reduce())
        }

        fn element() -> impl Strategy<Value = FreeRingElement> {
            prop::collection::vec((word(6), -3i64..=3), 0..5).prop_map(|terms| {
                terms.into_iter().fold(FreeRingElement::zero(), |acc, (w, c)| &acc + &FreeRingElement::monomial(w, c))
            })
        }

        proptest! {
            #[test]
            fn fundamental_formula_holds(r in word(40)) {
                prop_assert!(fundamental_formula_check(&r));
            }

            #[test]
            fn fox_matches_product_rule(r in word(24)) {
                for g in [Generator::X, Generator::Y] {
                    prop_assert_eq!(fox_derivative(&r, g), fox_by_product_rule(&r, g));
                }
            }

            #[test]
            fn fox_coefficients_are_units(r in word(40)) {
                for g in [Generator::X, Generator::Y] {
                    let d = fox_derivative(&r, g);
                    prop_assert!(d.terms().all(|(_, c)| c == 1 || c == -1));
                    let occurrences = r.letters().iter().filter(|l| l.generator == g).count();
                    prop_assert_eq!(d.len(), occurrences);
                }
            }

            #[test]
            fn ring_axioms(a in element(), b in element(), c in element()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&a * &FreeRingElement::one(), a.clone());
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn support_counts_bound_signed(a in element()) {
                let m = a.abelian_support();
                for (p, &c) in m.counts() {
                    prop_assert!(c >= 1);
                    prop_assert!(c >= m.signed(*p).unsigned_abs());
                }
            }
        }
    }
}
