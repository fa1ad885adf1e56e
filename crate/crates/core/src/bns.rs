//! The Bieri–Neumann–Strebel invariant read off the marked polytope: a
//! character lies in `Sigma` iff it attains its maximum over `M_pi` at a
//! single, marked vertex.

use crate::geometry::{ArcSet, Cone, Direction, MarkedPolytope};
use crate::pipeline::{compute, Ambient, PipelineError, PolytopeResult, Presentation};

/// `Sigma` as a subset of the character sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaSet {
    /// `b_1 = 2`: open arcs of the circle.
    Circle(ArcSet),
    /// `b_1 = 1`: the sphere is `{character, -character}`.
    Pair { character: Direction, plus: bool, minus: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaReport {
    pub sigma: SigmaSet,
    pub marked_vertex_count: usize,
    /// `Sigma` is the whole sphere; for `b_1 = 2` this happens exactly when
    /// `M_pi` is a single marked point.
    pub full_sphere: bool,
}

impl SigmaReport {
    pub fn contains(&self, phi: Direction) -> bool {
        match &self.sigma {
            SigmaSet::Circle(arcs) => arcs.contains(phi),
            SigmaSet::Pair { character, plus, minus } => (phi == *character && *plus) || (phi == -*character && *minus),
        }
    }
}

/// Membership of one character together with the two classical readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_sigma: bool,
    /// `phi` is induced by an ascending HNN extension with finitely generated
    /// base; for integral characters this is equivalent to `in_sigma`.
    pub ascending_hnn: bool,
    /// `phi` and `-phi` both lie in `Sigma`, i.e. `Ker(phi)` is finitely generated.
    pub kernel_fg: bool,
}

pub fn in_sigma(pi: &Presentation, phi: Direction) -> Result<bool, PipelineError> {
    let result = compute(pi)?;
    Ok(result.polytope.pairs_with_marked(result.ambient_direction(phi)?))
}

pub fn membership(pi: &Presentation, phi: Direction) -> Result<Membership, PipelineError> {
    let result = compute(pi)?;
    let m = &result.polytope;
    let plus = m.pairs_with_marked(result.ambient_direction(phi)?);
    let minus = m.pairs_with_marked(result.ambient_direction(-phi)?);
    Ok(Membership { in_sigma: plus, ascending_hnn: plus, kernel_fg: plus && minus })
}

fn report(result: &PolytopeResult) -> SigmaReport {
    let m = &result.polytope;
    let marked_vertex_count = m.marked_count();
    match result.ambient {
        Ambient::Plane => {
            let arcs = m.marked_normal_arcs();
            let full_sphere = arcs == ArcSet::FullCircle;
            SigmaReport { sigma: SigmaSet::Circle(arcs), marked_vertex_count, full_sphere }
        }
        Ambient::Line { character } => {
            let plus = m.pairs_with_marked(Direction::E1);
            let minus = m.pairs_with_marked(-Direction::E1);
            SigmaReport {
                sigma: SigmaSet::Pair { character, plus, minus },
                marked_vertex_count,
                full_sphere: plus && minus,
            }
        }
    }
}

pub fn sigma_arcs(pi: &Presentation) -> Result<SigmaReport, PipelineError> {
    Ok(report(&compute(pi)?))
}

// Smallest coordinates first, then counterclockwise from (1, 0).
fn simplest(candidates: impl IntoIterator<Item = Direction>) -> Option<Direction> {
    candidates
        .into_iter()
        .min_by(|p, q| (p.a().abs() + p.b().abs()).cmp(&(q.a().abs() + q.b().abs())).then_with(|| p.angle_cmp(*q)))
}

/// Characters with `phi` and `-phi` in `Sigma`: the union over pairs of
/// marked vertices `(v, w)` of `cone(v)` intersected with `-cone(w)`.
fn fg_kernel_candidates(m: &MarkedPolytope) -> Vec<Direction> {
    let cones: Vec<Cone> =
        m.vertex_cones().into_iter().zip(m.vertices()).filter(|(_, v)| v.marked).map(|(c, _)| c).collect();
    let mut out = Vec::new();
    for a in &cones {
        for b in &cones {
            match (a, b) {
                (Cone::Full, _) | (_, Cone::Full) => out.push(Direction::E1),
                (Cone::Arc(a), Cone::Arc(b)) => {
                    if let Some(i) = a.intersect(&b.negate()) {
                        out.push(i.simplest_interior());
                    }
                }
            }
        }
    }
    out
}

/// Some `phi` with `phi, -phi` in `Sigma` (equivalently `Ker(phi)` finitely
/// generated), if one exists.
pub fn fg_kernel_certificate(pi: &Presentation) -> Result<Option<Direction>, PipelineError> {
    let result = compute(pi)?;
    Ok(match result.ambient {
        Ambient::Plane => simplest(fg_kernel_candidates(&result.polytope)),
        Ambient::Line { character } => {
            let m = &result.polytope;
            (m.pairs_with_marked(Direction::E1) && m.pairs_with_marked(-Direction::E1)).then_some(character)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonSigma {
    /// `Sigma` is the whole circle: `M_pi` is a single marked point and the
    /// group is `Z^2`.
    IsZ2,
    /// A character outside `Sigma`.
    Witness(Direction),
}

/// Either the group is `Z^2` or some integral character lies outside `Sigma`.
///
/// The witness is the simplest direction inside the normal cone of an
/// unmarked vertex when there is one, and otherwise an outward edge normal
/// (whose maximum is attained along a whole edge).
pub fn exists_non_sigma(pi: &Presentation) -> Result<NonSigma, PipelineError> {
    let result = compute(pi)?;
    let m = &result.polytope;
    match result.ambient {
        Ambient::Plane => {
            if m.is_point() {
                return Ok(if m.all_marked() { NonSigma::IsZ2 } else { NonSigma::Witness(Direction::E1) });
            }
            let unmarked = m.vertex_cones().into_iter().zip(m.vertices()).filter(|(_, v)| !v.marked).filter_map(
                |(c, _)| match c {
                    Cone::Arc(a) => Some(a.simplest_interior()),
                    Cone::Full => None,
                },
            );
            let witness = simplest(unmarked)
                .or_else(|| simplest(m.edge_normals()))
                .expect("a polytope with several vertices has edges");
            Ok(NonSigma::Witness(witness))
        }
        Ambient::Line { character } => {
            if !m.pairs_with_marked(Direction::E1) {
                Ok(NonSigma::Witness(character))
            } else if !m.pairs_with_marked(-Direction::E1) {
                Ok(NonSigma::Witness(-character))
            } else {
                Ok(NonSigma::IsZ2)
            }
        }
    }
}
