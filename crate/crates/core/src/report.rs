//! JSON documents exchanged by the command line: arc files, run reports,
//! verification and fuzz summaries.
//!
//! Floats are written with 17 significant digits in exponent form, enough
//! to round-trip every `f64` exactly.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::arc::PolyArc;
use crate::finder::{Certificate, DirectionCluster, LambdaConfig, ProofTrace};
use crate::gen::GenSpec;
use crate::geom::Point2;

/// `{"vertices": [[x, y], ...], "name": "..."}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<Point2>,
}

impl ArcFile {
    pub fn from_arc(arc: &PolyArc, name: Option<String>) -> ArcFile {
        ArcFile {
            name,
            vertices: arc.vertices().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertex_count: usize,
    pub thickness: f64,
    pub diameter: f64,
    pub eps_rel: f64,
    pub simple: bool,
    pub closed: bool,
    /// Input vertex indices dropped as consecutive duplicates.
    pub collapsed: Vec<usize>,
}

impl ArcSummary {
    pub fn of(arc: &PolyArc, name: Option<String>) -> ArcSummary {
        ArcSummary {
            name,
            vertex_count: arc.vertex_count(),
            thickness: arc.thickness(),
            diameter: arc.diameter(),
            eps_rel: arc.eps_rel(),
            simple: arc.is_simple(),
            closed: arc.is_closed(),
            collapsed: arc.collapsed().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub arc: ArcSummary,
    pub configs: Vec<LambdaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clusters: Option<Vec<DirectionCluster>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unique: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ProofTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub index: usize,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub results: Vec<VerifyEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Generation,
    Existence,
    Certificate,
    Uniqueness,
    Trace,
    TheoremViolation,
}

/// One failing arc, reproducible from its spec alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub spec: GenSpec,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub simple_only: bool,
    pub arcs: usize,
    pub simple_arcs: usize,
    pub non_simple_arcs: usize,
    pub configs: usize,
    pub existence_failures: usize,
    pub certificate_failures: usize,
    pub uniqueness_failures: usize,
    pub trace_failures: usize,
    pub theorem_violations: usize,
    pub generation_failures: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn failure_count(&self) -> usize {
        self.failures.len()
    }
}

/// Pretty printer that writes floats as `d.dddddddddddddddde±x`.
struct SigDigits {
    inner: PrettyFormatter<'static>,
}

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let fmt = SigDigits {
        inner: PrettyFormatter::new(),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finder::{find_all, find_by_proof_trace};
    use crate::gen::gen_named;

    #[test]
    fn floats_have_17_significant_digits() {
        let s = to_json(&vec![0.5, 0.1, 0.0, -2.0]);
        assert!(s.contains("5.0000000000000000e-1"), "{s}");
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.5, 0.1, 0.0, -2.0]);
    }

    #[test]
    fn run_report_round_trips() {
        let arc = gen_named("tilted-tent").unwrap();
        let (_, trace) = find_by_proof_trace(&arc).unwrap();
        let report = RunReport {
            arc: ArcSummary::of(&arc, Some("tilted-tent".into())),
            configs: find_all(&arc).unwrap(),
            clusters: None,
            unique: Some(true),
            trace: Some(trace),
            timing_ms: Some(1.25),
        };
        let text = to_json(&report);
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn arc_file_format() {
        let f: ArcFile = serde_json::from_str(r#"{"vertices": [[0, 0], [1, 1], [2, 0]]}"#).unwrap();
        assert_eq!(f.name, None);
        assert_eq!(f.vertices[1], Point2::new(1.0, 1.0));
        assert!(serde_json::from_str::<ArcFile>(r#"{"vertices": [[0, 0, 1]]}"#).is_err());
    }
}
