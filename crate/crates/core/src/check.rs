//! Seeded property suites over random relators.
//!
//! The corpus consists of uniformly random reduced, cyclically reduced words
//! of even length with trivial abelianization (rejection sampling from a
//! ChaCha stream). Every case draws its own auxiliary randomness from a seed
//! derived from the corpus seed and its index, so a run is reproducible and
//! independent of how cases are scheduled across threads.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{minkowski_diff, Direction, MarkedPolytope, Point};
use crate::groupring::{fox_derivative, fundamental_formula_check, FreeRingElement};
use crate::pipeline::{
    compute, fox_polytope, polytope_via_fox, polytope_via_walk, simple_form, FoxRoute, Presentation,
};
use crate::splitting::hnn_splitting;
use crate::words::{Generator, Letter, Word};

/// A deliberate bug, used to confirm that the suites catch real errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Marks vertices of `M(r_y)` of multiplicity up to two instead of exactly one.
    MarkingOffByOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub count: usize,
    pub seed: u64,
    pub maxlen: usize,
    pub mutation: Option<Mutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    RouteAgreement,
    CyclicPermutation,
    FundamentalFormula,
    AbelianizedIdentity,
    ThicknessAdditivity,
    ProperPower,
    SimpleForm,
    SplittingRank,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::RouteAgreement,
        Suite::CyclicPermutation,
        Suite::FundamentalFormula,
        Suite::AbelianizedIdentity,
        Suite::ThicknessAdditivity,
        Suite::ProperPower,
        Suite::SimpleForm,
        Suite::SplittingRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RouteAgreement => "route-agreement",
            Suite::CyclicPermutation => "cyclic-permutation",
            Suite::FundamentalFormula => "fundamental-formula",
            Suite::AbelianizedIdentity => "abelianized-identity",
            Suite::ThicknessAdditivity => "thickness-additivity",
            Suite::ProperPower => "proper-power",
            Suite::SimpleForm => "simple-form",
            Suite::SplittingRank => "splitting-rank",
        }
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case, minimized.
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub outcomes: Vec<SuiteOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(SuiteOutcome::passed)
    }
}

const LETTERS: [Letter; 4] = [Letter::X, Letter::Y, Letter::X_INV, Letter::Y_INV];

/// A uniformly random reduced word of the given length.
pub fn random_reduced_word<R: Rng>(rng: &mut R, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = LETTERS[rng.gen_range(0..4)];
        if letters.last().is_some_and(|p| p.is_inverse_of(l)) {
            continue;
        }
        letters.push(l);
    }
    Word::from(letters)
}

/// A random cyclically reduced word with trivial abelianization, of even
/// length between 4 and `maxlen` (at least 4).
pub fn random_relator<R: Rng>(rng: &mut R, maxlen: usize) -> Word {
    let max = maxlen.max(4) / 2;
    let len = 2 * rng.gen_range(2..=max);
    loop {
        let w = random_reduced_word(rng, len);
        if w.is_cyclically_reduced() && w.abelianize().is_zero() {
            return w;
        }
    }
}

pub fn corpus(seed: u64, count: usize, maxlen: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_relator(&mut rng, maxlen)).collect()
}

/// A random primitive direction with coordinates in `[-bound, bound]`.
pub fn random_direction<R: Rng>(rng: &mut R, bound: i64) -> Direction {
    loop {
        if let Ok(d) = Direction::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)) {
            return d;
        }
    }
}

fn case_rng(seed: u64, suite: Suite, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.salt());
    rng.set_word_pos(128 * index as u128);
    ChaCha8Rng::seed_from_u64(rng.gen())
}

fn nice(word: &Word) -> Result<Presentation, String> {
    Presentation::from_word(word.clone()).map_err(|e| e.to_string())
}

fn mutated_via_ry(pi: &Presentation) -> Result<MarkedPolytope, String> {
    let support = fox_derivative(pi.relator(), Generator::Y).abelian_support();
    let hull = MarkedPolytope::from_marked_points(support.counts().iter().map(|(&v, &c)| (Point::from(v), c <= 2)))
        .map_err(|e| e.to_string())?;
    minkowski_diff(&hull, &MarkedPolytope::unit_x()).map_err(|e| e.to_string())
}

fn route_agreement(word: &Word, mutation: Option<Mutation>) -> Result<(), String> {
    let pi = nice(word)?;
    let walk = polytope_via_walk(&pi).map_err(|e| format!("walk: {e}"))?;
    let ry = match mutation {
        Some(Mutation::MarkingOffByOne) => mutated_via_ry(&pi).map_err(|e| format!("r_y: {e}"))?,
        None => polytope_via_fox(&pi, FoxRoute::ViaRy).map_err(|e| format!("r_y: {e}"))?,
    };
    let rx = polytope_via_fox(&pi, FoxRoute::ViaRx).map_err(|e| format!("r_x: {e}"))?;
    for (name, other) in [("r_y", &ry), ("r_x", &rx)] {
        if !walk.equal_up_to_translation(other) {
            return Err(format!("walk gives {walk}, {name} gives {other}"));
        }
    }
    Ok(())
}

fn cyclic_permutation(word: &Word) -> Result<(), String> {
    let pi = nice(word)?;
    let m = compute(&pi).map_err(|e| e.to_string())?.polytope;
    for k in 1..word.len() {
        let rotated = pi.cyclic_permute(k).map_err(|e| e.to_string())?;
        let mk = compute(&rotated).map_err(|e| e.to_string())?.polytope;
        if mk != m {
            return Err(format!("rotation by {k} gives {mk}, original gives {m}"));
        }
    }
    Ok(())
}

fn abelianized_identity(word: &Word) -> Result<(), String> {
    let term = |g: Generator| &fox_derivative(word, g) * &FreeRingElement::generator_minus_one(g);
    let lhs = term(Generator::X).abelian_support();
    let rhs = (-&term(Generator::Y)).abelian_support();
    let nonzero = |m: &crate::groupring::LatticeMultiset| {
        m.signed_sums().iter().filter(|(_, &c)| c != 0).map(|(&p, &c)| (p, c)).collect::<Vec<_>>()
    };
    if nonzero(&lhs) == nonzero(&rhs) {
        Ok(())
    } else {
        Err(format!("{:?} != {:?}", nonzero(&lhs), nonzero(&rhs)))
    }
}

fn thickness_additivity(word: &Word, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pi = nice(word)?;
    let m = compute(&pi).map_err(|e| e.to_string())?.polytope;
    let ry = fox_polytope(&pi, Generator::Y).map_err(|e| e.to_string())?;
    let rx = fox_polytope(&pi, Generator::X).map_err(|e| e.to_string())?;
    let sym = m.symmetrize();
    for _ in 0..4 {
        let phi = random_direction(rng, 6);
        let th = m.thickness(phi);
        if ry.thickness(phi) != th + phi.a().abs() || rx.thickness(phi) != th + phi.b().abs() {
            return Err(format!("thickness not additive in direction {phi}"));
        }
        if sym.thickness(phi) != th {
            return Err(format!("symmetrization changes thickness in direction {phi}"));
        }
        let psi = random_direction(rng, 6);
        if m.width(phi.a() + psi.a(), phi.b() + psi.b()) > th + m.thickness(psi) {
            return Err(format!("thickness not subadditive for {phi} and {psi}"));
        }
    }
    Ok(())
}

fn proper_power(word: &Word, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let root = random_relator(rng, word.len().min(16));
    let m = rng.gen_range(2..=3);
    let r = root.pow(m as i64);
    let pi = nice(&r)?;
    let polytope = compute(&pi).map_err(|e| e.to_string())?.polytope;
    if polytope.marked_count() != 0 {
        return Err(format!("{r}: {polytope} has marked vertices"));
    }
    let support = fox_derivative(&r, Generator::Y).abelian_support();
    if let Some((p, c)) = support.counts().iter().find(|(_, &c)| c < m) {
        return Err(format!("{r}: r_y has count {c} < {m} at {p}"));
    }
    Ok(())
}

fn simple_form_case(word: &Word, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pi = nice(word)?;
    let phi = random_direction(rng, 7);
    let form = simple_form(&pi, phi.a(), phi.b()).map_err(|e| e.to_string())?;
    let sums: Vec<i64> = form.trace.iter().map(|(a, b)| a.abs() + b.abs()).collect();
    if !sums.windows(2).all(|w| w[1] < w[0]) || form.trace.last() != Some(&(0, 1)) {
        return Err(format!("trace {:?} for {phi}", form.trace));
    }
    let m = compute(&pi).map_err(|e| e.to_string())?.polytope;
    let converted = compute(&form.presentation).map_err(|e| e.to_string())?.polytope;
    let back = form.to_original(&converted);
    if !back.equal_up_to_translation(&m) {
        return Err(format!("conversion along {phi} gives {back}, original {m}"));
    }
    Ok(())
}

fn splitting_rank(word: &Word, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pi = nice(word)?;
    let phi = random_direction(rng, 5);
    let m = compute(&pi).map_err(|e| e.to_string())?.polytope;
    let s = hnn_splitting(&pi, phi).map_err(|e| format!("{phi}: {e}"))?;
    if s.rank != m.thickness(phi) + 1 {
        return Err(format!("rank {} against thickness {} for {phi}", s.rank, m.thickness(phi)));
    }
    let indices: Vec<i64> = s.relator.iter().map(|&(i, _)| i).collect();
    if !indices.contains(&s.lower) || !indices.contains(&s.upper) {
        return Err(format!("relator indices {indices:?} miss a bound"));
    }
    Ok(())
}

/// Runs one case of `suite`.
pub fn run_case(suite: Suite, word: &Word, rng: &mut ChaCha8Rng, mutation: Option<Mutation>) -> Result<(), String> {
    match suite {
        Suite::RouteAgreement => route_agreement(word, mutation),
        Suite::CyclicPermutation => cyclic_permutation(word),
        Suite::FundamentalFormula => fundamental_formula_check(word)
            .then_some(())
            .ok_or_else(|| "r - 1 != r_x (x - 1) + r_y (y - 1)".to_string()),
        Suite::AbelianizedIdentity => abelianized_identity(word),
        Suite::ThicknessAdditivity => thickness_additivity(word, rng),
        Suite::ProperPower => proper_power(word, rng),
        Suite::SimpleForm => simple_form_case(word, rng),
        Suite::SplittingRank => splitting_rank(word, rng),
    }
}

/// Greedily deletes pairs of letters while the result stays a nonempty
/// cyclically reduced word with trivial abelianization that still fails.
pub fn minimize(word: &Word, fails: impl Fn(&Word) -> bool) -> Word {
    let mut current = word.clone();
    'shrink: loop {
        let n = current.len();
        for i in 0..n {
            for j in i + 1..n {
                let candidate: Word =
                    current.letters().iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &l)| l).collect();
                let (core, _) = candidate.cyclic_reduce();
                if !core.is_empty() && core.abelianize().is_zero() && core.len() < n && fails(&core) {
                    current = core;
                    continue 'shrink;
                }
            }
        }
        return current;
    }
}

pub fn run_suite(suite: Suite, words: &[Word], config: &CheckConfig) -> SuiteOutcome {
    let results: Vec<Result<(), String>> = words
        .par_iter()
        .enumerate()
        .map(|(i, w)| run_case(suite, w, &mut case_rng(config.seed, suite, i), config.mutation))
        .collect();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let counterexample = results.iter().position(Result::is_err).map(|i| {
        let fails = |w: &Word| run_case(suite, w, &mut case_rng(config.seed, suite, i), config.mutation).is_err();
        let word = minimize(&words[i], fails);
        let message = run_case(suite, &word, &mut case_rng(config.seed, suite, i), config.mutation)
            .err()
            .unwrap_or_else(|| results[i].clone().unwrap_err());
        Counterexample { word, message }
    });
    SuiteOutcome { suite, cases: words.len(), failures, counterexample }
}

/// Runs every suite on the corpus determined by `config`.
pub fn run_all(config: &CheckConfig) -> CheckReport {
    let words = corpus(config.seed, config.count, config.maxlen);
    CheckReport { outcomes: Suite::ALL.iter().map(|&s| run_suite(s, &words, config)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(count: usize, mutation: Option<Mutation>) -> CheckConfig {
        CheckConfig { count, seed: 7, maxlen: 24, mutation }
    }

    #[test]
    fn corpus_shape() {
        let words = corpus(3, 200, 40);
        assert_eq!(words, corpus(3, 200, 40));
        for w in &words {
            assert!(w.is_reduced() && w.is_cyclically_reduced());
            assert!(w.abelianize().is_zero());
            assert!(w.len() >= 4 && w.len() <= 40 && w.len() % 2 == 0);
        }
        assert_ne!(words, corpus(4, 200, 40));
    }

    #[test]
    fn empty_run_passes() {
        let report = run_all(&config(0, None));
        assert!(report.passed());
        assert!(report.outcomes.iter().all(|o| o.cases == 0));
    }

    #[test]
    fn small_run_passes() {
        let report = run_all(&config(40, None));
        for o in &report.outcomes {
            assert!(o.passed(), "{}: {:?}", o.suite, o.counterexample);
        }
    }

    #[test]
    fn mutant_is_caught_and_minimized() {
        let cfg = config(60, Some(Mutation::MarkingOffByOne));
        let words = corpus(cfg.seed, cfg.count, cfg.maxlen);
        let outcome = run_suite(Suite::RouteAgreement, &words, &cfg);
        assert!(outcome.failures > 0);
        let cx = outcome.counterexample.expect("counterexample");
        assert!(route_agreement(&cx.word, cfg.mutation).is_err());
        assert!(route_agreement(&cx.word, None).is_ok());
        let first = words.iter().find(|w| route_agreement(w, cfg.mutation).is_err()).unwrap();
        assert!(cx.word.len() <= first.len());
    }

    #[test]
    fn minimize_shrinks_to_local_minimum() {
        // fails whenever the word contains x^2
        let has_square = |w: &Word| w.letters().windows(2).any(|p| p[0] == Letter::X && p[1] == Letter::X);
        let w = Word::parse("xxyXXYxyXY", &Default::default()).unwrap();
        let m = minimize(&w, has_square);
        assert!(has_square(&m));
        assert!(m.len() < w.len());
    }
}
