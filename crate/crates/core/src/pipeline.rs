//! From a presentation to its marked polytope.
//!
//! For `b_1 = 2` the polytope is computed by three independent routes (the
//! lattice walk and the two Fox derivatives) that must agree. For `b_1 = 1`
//! the presentation is first rewritten so that `x` generates `H_1` modulo
//! torsion and `y` is torsion; the polytope is then an interval (or a point)
//! on the character line, computed from the syllable form and cross-checked
//! against the Fox derivative `r_y`.

use std::fmt;

use thiserror::Error;

use crate::geometry::{gcd, minkowski_diff, Direction, GeometryError, MarkedPolytope, Point};
use crate::groupring::{fox_derivative, LatticeMultiset};
use crate::words::{AbelianImage, Generator, GeneratorNames, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("the relator is trivial after free reduction")]
    EmptyRelator,
    #[error("presentation is not nice: the relator has nonzero abelianization {0}")]
    NotNice(AbelianImage),
    #[error("presentation is not simple: abelianization {0} is not of the form (0,n)")]
    NotSimple(AbelianImage),
    #[error("({0}, {1}) does not define an epimorphism onto Z")]
    NotEpimorphism(i64, i64),
    #[error("character {0} is not a multiple of the character {1} spanning H^1")]
    CharacterMismatch(Direction, Direction),
    #[error(
        "the presentation has the syntactic form of a Baumslag-Solitar group B(+-1,n) \
         (syllable exponents {0:?}); no marked polytope exists for this family"
    )]
    BaumslagSolitarExcluded(Vec<i64>),
    #[error("the relator is a power of a single generator")]
    PowerOfGenerator,
    #[error("routes disagree: {first} gives {first_polytope}, {second} gives {second_polytope}")]
    RouteMismatch { first: &'static str, first_polytope: String, second: &'static str, second_polytope: String },
    #[error("splitting over a free group of rank {rank} does not match thickness {thickness}")]
    RankMismatch { rank: i64, thickness: i64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A two-generator one-relator presentation `<x, y | r>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: GeneratorNames,
    original: Word,
    relator: Word,
}

impl Presentation {
    /// Keeps `original` for reporting and works with its cyclic reduction.
    pub fn new(original: Word, names: GeneratorNames) -> Result<Self, PipelineError> {
        let (relator, _) = original.cyclic_reduce();
        if relator.is_empty() {
            return Err(PipelineError::EmptyRelator);
        }
        Ok(Presentation { names, original, relator })
    }

    pub fn from_word(original: Word) -> Result<Self, PipelineError> {
        Self::new(original, GeneratorNames::default())
    }

    pub fn parse(text: &str, names: GeneratorNames) -> Result<Self, PipelineError> {
        Self::new(Word::parse(text, &names)?, names)
    }

    pub fn names(&self) -> &GeneratorNames {
        &self.names
    }

    pub fn original(&self) -> &Word {
        &self.original
    }

    /// The cyclically reduced relator.
    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn cyclic_permute(&self, k: usize) -> Result<Self, PipelineError> {
        let rotated = self.relator.cyclic_permute(k)?;
        Self::new(rotated, self.names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}, {} | {}>",
            self.names.name(Generator::X),
            self.names.name(Generator::Y),
            self.relator.format(&self.names)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `b_1 = 2`.
    Nice,
    /// `b_1 = 1`, `x` generates `H_1` modulo torsion and `y` is torsion.
    Simple,
    /// `b_1 = 1`, simple after a change of basis.
    SimpleConvertible,
    /// `b_1 = 1` with the syntactic `B(+-1, n)` form; no polytope.
    BaumslagSolitarExcluded,
    /// The relator involves only one generator.
    PowerOfGenerator,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Nice => "nice",
            Classification::Simple => "simple",
            Classification::SimpleConvertible => "simple-convertible",
            Classification::BaumslagSolitarExcluded => "baumslag-solitar-excluded",
            Classification::PowerOfGenerator => "power-of-generator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationInfo {
    pub abelian: AbelianImage,
    pub b1: u8,
    pub classification: Classification,
    /// `r = root^power` with `power` maximal.
    pub root: Word,
    pub power: usize,
    /// For `b_1 = 1`, the primitive character killing `abelian`, normalized
    /// so that its first nonzero coordinate is positive.
    pub character: Option<Direction>,
}

/// The primitive character vanishing on `v != 0`, first nonzero coordinate positive.
fn killing_character(v: AbelianImage) -> Direction {
    let d = Direction::primitive(v.b, -v.a).expect("nonzero abelianization");
    if d.a() < 0 || (d.a() == 0 && d.b() < 0) {
        -d
    } else {
        d
    }
}

pub fn analyze(pi: &Presentation) -> PresentationInfo {
    let r = pi.relator();
    let abelian = r.abelianize();
    let (root, power) = r.proper_power_root();
    let mut info =
        PresentationInfo { abelian, b1: 2, classification: Classification::Nice, root, power, character: None };
    if abelian.is_zero() {
        return info;
    }
    info.b1 = 1;
    info.character = Some(killing_character(abelian));
    info.classification = if !r.contains_generator(Generator::X) || !r.contains_generator(Generator::Y) {
        Classification::PowerOfGenerator
    } else {
        let simple = to_simple(pi).expect("b1 = 1 presentations convert");
        if excluded_form(simple.presentation.relator()).is_some() {
            Classification::BaumslagSolitarExcluded
        } else if abelian.a == 0 {
            Classification::Simple
        } else {
            Classification::SimpleConvertible
        }
    };
    info
}

/// Which Fox derivative anchors the computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoxRoute {
    /// `M(r_y) = M + X`.
    ViaRy,
    /// `M(r_x) = M + Y`.
    ViaRx,
}

fn require_nice(pi: &Presentation) -> Result<(), PipelineError> {
    let e = pi.relator().abelianize();
    if e.is_zero() {
        Ok(())
    } else {
        Err(PipelineError::NotNice(e))
    }
}

/// The hull `N` of the lattice walk, with `N = M + X + Y`.
pub fn walk_hull(pi: &Presentation) -> Result<MarkedPolytope, PipelineError> {
    let walk = LatticeMultiset::from_points(pi.relator().prefix_walk());
    Ok(MarkedPolytope::hull_of_multiset(&walk)?)
}

pub fn polytope_via_walk(pi: &Presentation) -> Result<MarkedPolytope, PipelineError> {
    require_nice(pi)?;
    Ok(minkowski_diff(&walk_hull(pi)?, &MarkedPolytope::unit_square())?)
}

/// `M(r_g)` for the Fox derivative in direction `g`.
pub fn fox_polytope(pi: &Presentation, g: Generator) -> Result<MarkedPolytope, PipelineError> {
    let support = fox_derivative(pi.relator(), g).abelian_support();
    Ok(MarkedPolytope::hull_of_multiset(&support)?)
}

pub fn polytope_via_fox(pi: &Presentation, route: FoxRoute) -> Result<MarkedPolytope, PipelineError> {
    require_nice(pi)?;
    let (g, q) = match route {
        FoxRoute::ViaRy => (Generator::Y, MarkedPolytope::unit_x()),
        FoxRoute::ViaRx => (Generator::X, MarkedPolytope::unit_y()),
    };
    Ok(minkowski_diff(&fox_polytope(pi, g)?, &q)?)
}

fn agree(first: (&'static str, &MarkedPolytope), second: (&'static str, &MarkedPolytope)) -> Result<(), PipelineError> {
    if first.1.equal_up_to_translation(second.1) {
        Ok(())
    } else {
        Err(PipelineError::RouteMismatch {
            first: first.0,
            first_polytope: first.1.normalize_translation().to_string(),
            second: second.0,
            second_polytope: second.1.normalize_translation().to_string(),
        })
    }
}

/// Where the polytope lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// `H_1(G; R) = R^2` in the basis given by the generators.
    Plane,
    /// `b_1 = 1`: the line `H_1(G; R)`, identified with `R` by `character`;
    /// the polytope is embedded on the first axis.
    Line { character: Direction },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeResult {
    pub info: PresentationInfo,
    /// Normalized so that its componentwise minimum is the origin.
    pub polytope: MarkedPolytope,
    pub ambient: Ambient,
}

impl PolytopeResult {
    /// The direction in polytope coordinates representing the character `phi`.
    /// For `b_1 = 1` only `+-character` are characters; they map to `+-(1, 0)`.
    pub fn ambient_direction(&self, phi: Direction) -> Result<Direction, PipelineError> {
        match self.ambient {
            Ambient::Plane => Ok(phi),
            Ambient::Line { character } if phi == character => Ok(Direction::E1),
            Ambient::Line { character } if phi == -character => Ok(-Direction::E1),
            Ambient::Line { character } => Err(PipelineError::CharacterMismatch(phi, character)),
        }
    }
}

/// Classifies `pi`, computes its marked polytope by every available route
/// and fails loudly if the routes disagree.
pub fn compute(pi: &Presentation) -> Result<PolytopeResult, PipelineError> {
    let info = analyze(pi);
    match info.classification {
        Classification::Nice => {
            let walk = polytope_via_walk(pi)?;
            let ry = polytope_via_fox(pi, FoxRoute::ViaRy)?;
            let rx = polytope_via_fox(pi, FoxRoute::ViaRx)?;
            agree(("walk", &walk), ("fox r_y", &ry))?;
            agree(("walk", &walk), ("fox r_x", &rx))?;
            Ok(PolytopeResult { info, polytope: walk.normalize_translation(), ambient: Ambient::Plane })
        }
        Classification::PowerOfGenerator => Err(PipelineError::PowerOfGenerator),
        Classification::Simple | Classification::SimpleConvertible | Classification::BaumslagSolitarExcluded => {
            let character = info.character.expect("b1 = 1");
            let simple = to_simple(pi)?;
            let polytope = b1_one_polytope(&simple.presentation)?;
            Ok(PolytopeResult { info, polytope, ambient: Ambient::Line { character } })
        }
    }
}

/// The normalized marked polytope `M_pi`.
pub fn marked_polytope(pi: &Presentation) -> Result<MarkedPolytope, PipelineError> {
    Ok(compute(pi)?.polytope)
}

/// Result of the basis change making a character take the values
/// `phi(x) = 0`, `phi(y) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleForm {
    pub presentation: Presentation,
    /// Images in the original `H_1` coordinates of the new generators.
    pub basis: [Point; 2],
    /// The new generators as words in the original free group.
    pub generator_words: [Word; 2],
    /// Values `(phi(x), phi(y))` before each substitution, then the final pair.
    pub trace: Vec<(i64, i64)>,
}

impl SimpleForm {
    /// Maps a polytope of the new presentation back to the original coordinates.
    pub fn to_original(&self, p: &MarkedPolytope) -> MarkedPolytope {
        p.linear_image(self.basis[0], self.basis[1])
    }
}

/// Repeatedly substitutes `y -> c x^{-eps}` with `c = y x^eps` until
/// `phi(x) = 0` and `phi(y) = 1`. Each substitution strictly decreases
/// `|phi(x)| + |phi(y)|`, and the polytope is unchanged up to the basis change.
pub fn simple_form(pi: &Presentation, a: i64, b: i64) -> Result<SimpleForm, PipelineError> {
    if gcd(a, b) != 1 {
        return Err(PipelineError::NotEpimorphism(a, b));
    }
    let mut r = pi.relator().clone();
    let mut phi = [a, b];
    let mut basis = [Point::new(1, 0), Point::new(0, 1)];
    let mut words = [Word::generator_power(Generator::X, 1), Word::generator_power(Generator::Y, 1)];
    let mut trace = Vec::new();
    let swap = |r: &mut Word, phi: &mut [i64; 2], basis: &mut [Point; 2], words: &mut [Word; 2]| {
        *r = r.swap_generators();
        phi.swap(0, 1);
        basis.swap(0, 1);
        words.swap(0, 1);
    };
    while phi[0].abs() + phi[1].abs() > 1 {
        trace.push((phi[0], phi[1]));
        if phi[0].abs() > phi[1].abs() {
            swap(&mut r, &mut phi, &mut basis, &mut words);
        }
        let eps = if (phi[0] > 0) != (phi[1] > 0) { 1 } else { -1 };
        let x = Word::generator_power(Generator::X, 1);
        let c = Word::generator_power(Generator::Y, 1);
        r = r.substitute(&[x.clone(), c.mul(&x.pow(-eps))]).cyclic_reduce().0;
        phi[1] += eps * phi[0];
        basis[1] = Point::new(basis[1].x + eps * basis[0].x, basis[1].y + eps * basis[0].y);
        words[1] = words[1].mul(&words[0].pow(eps));
    }
    if phi[0] != 0 {
        swap(&mut r, &mut phi, &mut basis, &mut words);
    }
    if phi[1] == -1 {
        r = r.invert_generator(Generator::Y);
        phi[1] = 1;
        basis[1] = -basis[1];
        words[1] = words[1].inverse();
    }
    trace.push((phi[0], phi[1]));
    let presentation = Presentation::new(r, *pi.names())?;
    Ok(SimpleForm { presentation, basis, generator_words: words, trace })
}

/// For `b_1 = 1`: a presentation in which `x` generates `H_1` modulo torsion
/// (with the normalized character) and `y` is torsion.
pub fn to_simple(pi: &Presentation) -> Result<SimpleForm, PipelineError> {
    let e = pi.relator().abelianize();
    if e.is_zero() {
        return Err(PipelineError::NotSimple(e));
    }
    let phi = killing_character(e);
    let mut s = simple_form(pi, phi.a(), phi.b())?;
    s.presentation = Presentation::new(s.presentation.relator().swap_generators(), *pi.names())?;
    s.basis.swap(0, 1);
    s.generator_words.swap(0, 1);
    Ok(s)
}

/// The syllable exponents `n_i` when the relator of a simple presentation has
/// the syntactic `B(+-1, n)` form: `D = 1`, `k = 2` and some `|n_i| = 1`.
fn excluded_form(r: &Word) -> Option<Vec<i64>> {
    let s = r.syllables_led_by(Generator::X).ok()?;
    let sums = s.lead_prefix_sums();
    let spread = sums.iter().max()? - sums.iter().min()?;
    (spread == 1 && s.k() == 2 && s.other_exponents.iter().any(|n| n.abs() == 1)).then(|| s.other_exponents.clone())
}

/// The marked polytope of a simple presentation: the unique `M` on the
/// character line with `M + M(x - 1) = M(r_y)`, embedded as `{(t, 0)}`.
///
/// Computed from the syllable form `x^{m_1} y^{n_1} ... x^{m_k} y^{n_k}`: the
/// `y`-letters of the `i`-th syllable sit at level `M_i = m_1 + ... + m_i`, so
/// `M(r_y)` spans `[min M_i, max M_i]` and an end is marked iff exactly one
/// `y`-letter sits there. The result is checked against the Fox route.
pub fn b1_one_polytope(pi: &Presentation) -> Result<MarkedPolytope, PipelineError> {
    let r = pi.relator();
    let e = r.abelianize();
    if e.a != 0 || e.b == 0 {
        return Err(PipelineError::NotSimple(e));
    }
    if !r.contains_generator(Generator::X) || !r.contains_generator(Generator::Y) {
        return Err(PipelineError::PowerOfGenerator);
    }
    if let Some(ns) = excluded_form(r) {
        return Err(PipelineError::BaumslagSolitarExcluded(ns));
    }
    let s = r.syllables_led_by(Generator::X)?;
    let sums = s.lead_prefix_sums();
    let (lo, hi) = (*sums.iter().min().expect("k >= 1"), *sums.iter().max().expect("k >= 1"));
    let weight = |level: i64| -> u64 {
        sums.iter().zip(&s.other_exponents).filter(|(&m, _)| m == level).map(|(_, n)| n.unsigned_abs()).sum()
    };
    let by_syllables = if hi - lo >= 2 {
        MarkedPolytope::from_marked_points([
            (Point::new(0, 0), weight(lo) == 1),
            (Point::new(hi - lo - 1, 0), weight(hi) == 1),
        ])?
    } else {
        MarkedPolytope::point(Point::ORIGIN, false)
    };

    let mut line = LatticeMultiset::default();
    for (&p, &c) in fox_derivative(r, Generator::Y).abelian_support().counts() {
        line.insert(AbelianImage::new(p.a, 0), c as i64);
    }
    let ry = MarkedPolytope::hull_of_multiset(&line)?;
    let by_fox = minkowski_diff(&ry, &MarkedPolytope::unit_x())?;
    agree(("syllables", &by_syllables), ("fox r_y", &by_fox))?;
    Ok(by_syllables)
}
