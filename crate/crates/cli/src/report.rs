//! The JSON report, schema `relpoly/1`.

use relpoly_core::bns::{Membership, NonSigma, SigmaReport, SigmaSet};
use relpoly_core::pipeline::{Ambient, PolytopeResult};
use relpoly_core::splitting::{ComplexityReport, SplittingData};
use relpoly_core::{Direction, Generator, Presentation, Word};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "relpoly/1";

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub schema_version: &'static str,
    pub presentation: PresentationJson,
    pub polytope: PolytopeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingJson>,
}

#[derive(Debug, Serialize)]
pub struct PresentationJson {
    pub generators: [String; 2],
    pub relator: String,
    pub cyclically_reduced: String,
    pub abelianization: [i64; 2],
    pub b1: u8,
    pub classification: String,
    pub proper_power: ProperPowerJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<[i64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ProperPowerJson {
    pub root: String,
    pub exponent: usize,
}

#[derive(Debug, Serialize)]
pub struct VertexJson {
    pub x: i64,
    pub y: i64,
    pub marked: bool,
}

#[derive(Debug, Serialize)]
pub struct PolytopeJson {
    /// `plane`, or `line` for `b_1 = 1` (vertices then lie on the first axis).
    pub ambient: &'static str,
    pub vertices: Vec<VertexJson>,
    pub normalization: &'static str,
}

#[derive(Debug, Serialize)]
pub struct ArcJson {
    pub from: [i64; 2],
    pub to: [i64; 2],
}

#[derive(Debug, Serialize)]
pub struct SigmaJson {
    pub full_circle: bool,
    pub marked_vertex_count: usize,
    /// Open arcs, counterclockwise from `from` to `to`; `b_1 = 2` only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<ArcJson>>,
    /// For `b_1 = 1`: the characters in Sigma among `+-character`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<[i64; 2]>>,
    /// Some `phi` with `phi` and `-phi` in Sigma.
    pub kernel_fg_certificate: Option<[i64; 2]>,
    /// Some integral character outside Sigma; absent exactly for `Z^2`.
    pub outside_witness: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query: Option<QueryJson>,
}

#[derive(Debug, Serialize)]
pub struct QueryJson {
    pub phi: [i64; 2],
    pub in_sigma: bool,
    pub ascending_hnn: bool,
    pub kernel_finitely_generated: bool,
}

#[derive(Debug, Serialize)]
pub struct SplittingJson {
    pub phi: [i64; 2],
    pub thickness: i64,
    pub c: i64,
    pub c_f: i64,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    /// `a` and `t` as words in the original generators.
    pub a: String,
    pub t: String,
    pub rewritten_relator: String,
    pub vertex_generators: Vec<String>,
    pub vertex_relator: String,
    pub edge_group: Vec<String>,
    pub mu: Vec<[String; 2]>,
    pub embedding: Vec<[String; 2]>,
    pub rank: i64,
}

pub fn pair(d: Direction) -> [i64; 2] {
    [d.a(), d.b()]
}

fn fmt(word: &Word, pi: &Presentation) -> String {
    word.format(pi.names())
}

pub fn presentation(pi: &Presentation, result: &PolytopeResult) -> PresentationJson {
    let info = &result.info;
    let names = pi.names();
    PresentationJson {
        generators: [names.name(Generator::X).to_string(), names.name(Generator::Y).to_string()],
        relator: fmt(pi.original(), pi),
        cyclically_reduced: fmt(pi.relator(), pi),
        abelianization: [info.abelian.a, info.abelian.b],
        b1: info.b1,
        classification: info.classification.to_string(),
        proper_power: ProperPowerJson { root: fmt(&info.root, pi), exponent: info.power },
        character: info.character.map(pair),
    }
}

pub fn polytope(result: &PolytopeResult) -> PolytopeJson {
    PolytopeJson {
        ambient: match result.ambient {
            Ambient::Plane => "plane",
            Ambient::Line { .. } => "line",
        },
        vertices: result
            .polytope
            .vertices()
            .iter()
            .map(|v| VertexJson { x: v.point.x, y: v.point.y, marked: v.marked })
            .collect(),
        normalization: "min-corner-origin",
    }
}

pub fn sigma(
    report: &SigmaReport,
    certificate: Option<Direction>,
    outside: NonSigma,
    query: Option<(Direction, Membership)>,
) -> SigmaJson {
    let (arcs, characters) = match &report.sigma {
        SigmaSet::Circle(set) => {
            (Some(set.arcs().iter().map(|a| ArcJson { from: pair(a.from()), to: pair(a.to()) }).collect()), None)
        }
        SigmaSet::Pair { character, plus, minus } => {
            let mut cs = Vec::new();
            if *plus {
                cs.push(pair(*character));
            }
            if *minus {
                cs.push(pair(-*character));
            }
            (None, Some(cs))
        }
    };
    SigmaJson {
        full_circle: report.full_sphere,
        marked_vertex_count: report.marked_vertex_count,
        arcs,
        characters,
        kernel_fg_certificate: certificate.map(pair),
        outside_witness: match outside {
            NonSigma::IsZ2 => None,
            NonSigma::Witness(d) => Some(pair(d)),
        },
        query: query.map(|(phi, m)| QueryJson {
            phi: pair(phi),
            in_sigma: m.in_sigma,
            ascending_hnn: m.ascending_hnn,
            kernel_finitely_generated: m.kernel_fg,
        }),
    }
}

pub fn splitting(
    pi: &Presentation,
    phi: Direction,
    c: &ComplexityReport,
    witness: Option<&SplittingData>,
) -> SplittingJson {
    SplittingJson {
        phi: pair(phi),
        thickness: c.thickness,
        c: c.c,
        c_f: c.c_f,
        certified: c.certified,
        witness: witness.map(|s| {
            let ab = relpoly_core::GeneratorNames::new('a', 't').expect("distinct names");
            let x = |i: i64| format!("x_{i}");
            let relator = s
                .relator
                .iter()
                .map(|&(i, n)| if n == 1 { x(i) } else { format!("{}^{n}", x(i)) })
                .collect::<Vec<_>>()
                .join(" ");
            WitnessJson {
                a: fmt(&s.a_word, pi),
                t: fmt(&s.t_word, pi),
                rewritten_relator: s.presentation.relator().format(&ab),
                vertex_generators: s.vertex_generators().map(x).collect(),
                vertex_relator: relator,
                edge_group: s.edge_group.iter().map(|&i| x(i)).collect(),
                mu: s.mu.iter().map(|&(i, j)| [x(i), x(j)]).collect(),
                embedding: s.embedding.iter().map(|(i, w)| [x(*i), w.format(&ab)]).collect(),
                rank: s.rank,
            }
        }),
    }
}
