//! JSON report for `check`.

use serde::{Deserialize, Serialize};

use four_embed::{Certificate, Multigraph, PieceId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// `EMBEDDABLE` or `NOT_EMBEDDABLE`.
    pub verdict: String,
    pub certificate: Option<CertificateReport>,
    pub witness: Option<WitnessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piece: Option<PieceReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub component: usize,
    pub piece: usize,
    pub block: usize,
    pub step: usize,
}

impl From<PieceId> for PieceReport {
    fn from(p: PieceId) -> Self {
        PieceReport {
            component: p.component,
            piece: p.piece,
            block: p.block,
            step: p.step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
}

impl WitnessReport {
    pub fn new(g: &Multigraph) -> Self {
        WitnessReport {
            vertices: g.vertices().map(|v| v.0).collect(),
            edges: g.edges().map(|(_, a, b)| [a.0, b.0]).collect(),
        }
    }
}

impl CertificateReport {
    pub fn new(c: &Certificate) -> Self {
        let mut r = CertificateReport {
            kind: c.name().to_string(),
            message: c.to_string(),
            vertex: None,
            obstruction: None,
            piece: None,
        };
        match c {
            Certificate::DegreeTooHigh(v) => r.vertex = Some(v.0),
            Certificate::NonPlanarInput { obstruction } => {
                r.obstruction = Some(obstruction.iter().map(|e| e.0).collect())
            }
            Certificate::MatchingFailed(p)
            | Certificate::TypeADObstruction(p)
            | Certificate::BoundedCaseExhausted(p) => r.piece = Some((*p).into()),
        }
        r
    }

    /// Certificate for a negative answer of the exhaustive search.
    pub fn oracle() -> Self {
        CertificateReport {
            kind: "OracleExhausted".to_string(),
            message: "exhaustive search found no 4-regular planar supergraph".to_string(),
            vertex: None,
            obstruction: None,
            piece: None,
        }
    }
}
