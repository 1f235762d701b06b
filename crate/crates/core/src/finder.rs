//! Λ-configurations: an antipodal pair of support lines with a consecutive
//! triple `p1 ≺ p2 ≺ p3` of touch points, `p1` and `p3` on one line and the
//! lone middle point `p2` on the other.
//!
//! [`find_all`] scans every distinct antipodal touch configuration.
//! [`find_by_proof_trace`] replays the rotating-wall argument: start from a
//! direction where `C(theta) ≺ C(theta + pi)`, rotate until that stops
//! holding, and read the triple off the stopping direction `theta_T`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::arc::{ParamPoint, ParamPos, PolyArc};
use crate::error::{Error, Result};
use crate::geom::{Angle, Point2, ANGLE_EPS};
use crate::support::{
    event_angles, extreme_touch, half_turn_samples, limit_extreme, predicate_p, support_line,
    sweep_samples, touch_set, AngleSample, SampleKind, SupportLine, TouchEnd, TouchSet,
};

pub const DEFAULT_ANGLE_TOL: f64 = 1e-6;

/// Which of the two touch sets handed to [`extract_triple`] carries `p1`
/// and `p3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndsOn {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub params: [ParamPos; 3],
    pub ends_on: EndsOn,
}

/// Returns `p1 ≺ p2 ≺ p3` with the ends in one set and the middle in the
/// other, or `None` when the two parameter spans are separated.
///
/// The two sets must be parameter-disjoint, which holds for the touch sets
/// of antipodal lines of an arc with positive thickness. The middle is the
/// least parameter of one set strictly inside the span of the other (first
/// set's span tried first); the ends are its tightest brackets.
pub fn extract_triple(ts_a: &TouchSet, ts_b: &TouchSet) -> Option<Triple> {
    bracket(ts_a, ts_b)
        .map(|params| Triple {
            params,
            ends_on: EndsOn::First,
        })
        .or_else(|| {
            bracket(ts_b, ts_a).map(|params| Triple {
                params,
                ends_on: EndsOn::Second,
            })
        })
}

fn bracket(ends: &TouchSet, mids: &TouchSet) -> Option<[ParamPos; 3]> {
    let (lo, hi) = (ends.min(), ends.max());
    let mid = mids.endpoints().filter(|&b| lo < b && b < hi).min()?;
    let first = ends.endpoints().filter(|&a| a < mid).max()?;
    let last = ends.endpoints().filter(|&a| a > mid).min()?;
    Some([first, mid, last])
}

/// One set's parameters all precede the other's.
pub fn spans_separated(ts_a: &TouchSet, ts_b: &TouchSet) -> bool {
    ts_a.max() <= ts_b.min() || ts_b.max() <= ts_a.min()
}

/// Closed angular range of directions sharing one configuration; `hi` may
/// exceed `2pi` when the range wraps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularExtent {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaConfig {
    /// Direction of the line carrying the ends.
    pub theta: Angle,
    pub line_ends: SupportLine,
    pub line_mid: SupportLine,
    pub triple: [ParamPos; 3],
    /// Normalized arc-length parameters of the triple.
    pub s: [f64; 3],
    pub points: [Point2; 3],
    pub extent: AngularExtent,
    /// The configuration persists over an open range of directions. Only
    /// possible when `p1` and `p3` coincide in the plane.
    pub spans_interval: bool,
}

impl LambdaConfig {
    fn from_triple(arc: &PolyArc, sample: &AngleSample, triple: Triple) -> LambdaConfig {
        let theta = match triple.ends_on {
            EndsOn::First => sample.theta,
            EndsOn::Second => sample.theta.opposite(),
        };
        let shift = theta.radians() - sample.theta.radians();
        let (extent, spans_interval) = match sample.kind {
            SampleKind::Event => (
                AngularExtent {
                    lo: theta.radians(),
                    hi: theta.radians(),
                },
                false,
            ),
            SampleKind::Midpoint { lo, hi } => (
                AngularExtent {
                    lo: lo + shift,
                    hi: hi + shift,
                },
                true,
            ),
        };
        let pp = triple.params.map(|p| arc.param_point(p).expect("touch positions are valid"));
        LambdaConfig {
            theta,
            line_ends: support_line(arc, theta),
            line_mid: support_line(arc, theta.opposite()),
            triple: pp.map(|p| p.pos),
            s: pp.map(|p| p.s),
            points: pp.map(|p| p.point),
            extent,
            spans_interval,
        }
    }
}

/// Antipodal touch sets at `theta` and the triple they carry, if any.
pub fn triple_at(arc: &PolyArc, theta: Angle) -> (TouchSet, TouchSet, Option<Triple>) {
    let a = touch_set(arc, theta);
    let b = touch_set(arc, theta.opposite());
    let t = extract_triple(&a, &b);
    (a, b, t)
}

/// Every Λ-configuration of the arc, sorted by direction.
///
/// Configurations found at adjacent samples with the same triple are
/// reported once, with the union of their angular extents.
pub fn find_all(arc: &PolyArc) -> Result<Vec<LambdaConfig>> {
    arc.ensure_thick()?;
    let samples = half_turn_samples(&event_angles(arc));
    let mut found: Vec<(usize, LambdaConfig)> = Vec::new();
    for (i, sample) in samples.iter().enumerate() {
        let (_, _, triple) = triple_at(arc, sample.theta);
        let Some(triple) = triple else { continue };
        let cfg = LambdaConfig::from_triple(arc, sample, triple);
        match found.last_mut() {
            Some((j, prev)) if *j + 1 == i && prev.triple == cfg.triple => {
                prev.extent.hi = prev.extent.hi.max(cfg.extent.hi);
                prev.extent.lo = prev.extent.lo.min(cfg.extent.lo);
                prev.spans_interval = true;
                *j = i;
            }
            _ => found.push((i, cfg)),
        }
    }
    if found.is_empty() {
        return Err(Error::TheoremViolation(format!(
            "no antipodal pair carries a triple over {} samples",
            samples.len()
        )));
    }
    let mut configs: Vec<LambdaConfig> = found.into_iter().map(|(_, c)| c).collect();
    configs.sort_by(|a, b| a.theta.radians().total_cmp(&b.theta.radians()));
    Ok(configs)
}

/// How the triple at `theta_T` is ordered relative to the one-sided limits
/// of the rightmost touch points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceCase {
    /// The antipodal pair at the starting direction already carries a triple.
    FoundAtStart,
    /// `lim C(theta_T-) ≺ lim C(theta_T + pi -) ≺ C(theta_T)`.
    ForwardJump,
    /// `C(theta_T + pi) ≺ C(theta_T) ≺ lim C(theta_T + pi -)`.
    BackwardJump,
    /// Neither ordering; only possible with degenerate touch structure.
    Unclassified,
}

/// The four points compared at `theta_T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpPoints {
    pub limit_c: ParamPoint,
    pub limit_c_opposite: ParamPoint,
    pub c: ParamPoint,
    pub c_opposite: ParamPoint,
}

impl JumpPoints {
    pub fn at(arc: &PolyArc, theta_t: Angle) -> JumpPoints {
        let end = TouchEnd::RightmostHighest;
        JumpPoints {
            limit_c: limit_extreme(arc, theta_t, end),
            limit_c_opposite: limit_extreme(arc, theta_t.opposite(), end),
            c: extreme_touch(arc, &touch_set(arc, theta_t), end),
            c_opposite: extreme_touch(arc, &touch_set(arc, theta_t.opposite()), end),
        }
    }

    pub fn classify(&self) -> TraceCase {
        let (lc, lp) = (self.limit_c.pos, self.limit_c_opposite.pos);
        let (c, cp) = (self.c.pos, self.c_opposite.pos);
        if lc < lp && lp < c {
            TraceCase::ForwardJump
        } else if cp < c && c < lp {
            TraceCase::BackwardJump
        } else {
            TraceCase::Unclassified
        }
    }
}

/// Half-open angular interval `[lo, hi)`, unwrapped so `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfOpen {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateSample {
    pub theta: Angle,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub theta_start: Angle,
    pub theta_t: Angle,
    /// `theta_T - theta_start` measured counter-clockwise.
    pub rotation: f64,
    /// The sampled set where `C(theta) ≺ C(theta + pi)`; `None` when a
    /// triple exists at the start.
    pub theta_set: Option<HalfOpen>,
    pub case: TraceCase,
    pub jump: Option<JumpPoints>,
    pub predicate_samples: Vec<PredicateSample>,
}

/// Samples strictly after `start` up to and including `start + pi`, with
/// their unwrapped angles, in sweep order.
pub fn sweep_from(arc: &PolyArc, start: f64) -> Vec<(f64, AngleSample)> {
    let mut out: Vec<(f64, AngleSample)> = sweep_samples(&event_angles(arc))
        .into_iter()
        .map(|s| {
            let t = s.theta.radians();
            let t = if t < start - ANGLE_EPS { t + TAU } else { t };
            (t, s)
        })
        .filter(|&(t, _)| t > start + ANGLE_EPS && t <= start + PI + ANGLE_EPS)
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Replays the rotating-wall argument and returns the configuration found
/// at `theta_T` together with the trace of the sweep.
pub fn find_by_proof_trace(arc: &PolyArc) -> Result<(LambdaConfig, ProofTrace)> {
    arc.ensure_thick()?;
    let zero = AngleSample {
        theta: Angle::ZERO,
        kind: SampleKind::Event,
    };
    let (_, _, at_zero) = triple_at(arc, Angle::ZERO);
    if let Some(triple) = at_zero {
        let cfg = LambdaConfig::from_triple(arc, &zero, triple);
        let trace = ProofTrace {
            theta_start: Angle::ZERO,
            theta_t: Angle::ZERO,
            rotation: 0.0,
            theta_set: None,
            case: TraceCase::FoundAtStart,
            jump: None,
            predicate_samples: Vec::new(),
        };
        return Ok((cfg, trace));
    }

    // without a triple the rightmost points at 0 and pi are strictly ordered,
    // so the predicate holds at exactly one of the two
    let start = if predicate_p(arc, Angle::ZERO) { 0.0 } else { PI };
    let mut predicate_samples = vec![PredicateSample {
        theta: Angle::new(start),
        holds: true,
    }];
    for (t, sample) in sweep_from(arc, start) {
        let holds = predicate_p(arc, sample.theta);
        predicate_samples.push(PredicateSample {
            theta: sample.theta,
            holds,
        });
        let (_, _, triple) = triple_at(arc, sample.theta);
        if let Some(triple) = triple {
            let cfg = LambdaConfig::from_triple(arc, &sample, triple);
            let jump = JumpPoints::at(arc, sample.theta);
            let trace = ProofTrace {
                theta_start: Angle::new(start),
                theta_t: sample.theta,
                rotation: t - start,
                theta_set: Some(HalfOpen { lo: start, hi: t }),
                case: jump.classify(),
                jump: Some(jump),
                predicate_samples,
            };
            return Ok((cfg, trace));
        }
        if !holds {
            return Err(Error::TheoremViolation(format!(
                "predicate changed at {t} without a triple"
            )));
        }
    }
    Err(Error::TheoremViolation(format!(
        "sweep from {start} through a half turn found no triple"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateCheck {
    /// (a) the lines are parallel with opposite orientations.
    AntipodalLines,
    /// (b) every vertex lies in the closed strip between the lines.
    StripContainment,
    /// (c) `p1`, `p3` on the ends line and `p2` on the middle line.
    PointsOnLines,
    /// (d) `s1 ≺ s2 ≺ s3`.
    StrictPrecedence,
    /// (e) each point is the arc point at its parameter.
    PointsMatchParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub passed: bool,
    pub failed: Vec<CertificateCheck>,
    pub diagnostics: Vec<String>,
}

/// Checks a configuration directly against the arc vertices, independently
/// of the touch-set machinery.
pub fn verify_certificate(arc: &PolyArc, cfg: &LambdaConfig) -> Certificate {
    let eps = arc.eps_abs();
    let mut failed = Vec::new();
    let mut diagnostics = Vec::new();
    let mut fail = |check: CertificateCheck, msg: String| {
        if !failed.contains(&check) {
            failed.push(check);
        }
        diagnostics.push(msg);
    };

    let gap = cfg.line_mid.theta.cyclic_dist(cfg.line_ends.theta);
    if (gap - PI).abs() > ANGLE_EPS {
        fail(
            CertificateCheck::AntipodalLines,
            format!("line directions differ by {gap}, not pi"),
        );
    }

    let (n_ends, n_mid) = (cfg.line_ends.theta.normal(), cfg.line_mid.theta.normal());
    for (k, p) in arc.vertices().iter().enumerate() {
        let e = p.dot(n_ends) - cfg.line_ends.offset;
        let m = p.dot(n_mid) - cfg.line_mid.offset;
        if e > eps || m > eps {
            fail(
                CertificateCheck::StripContainment,
                format!("vertex {k} lies outside the strip (excess {e:e}, {m:e})"),
            );
        }
    }

    let on_line = [
        (0, &cfg.line_ends, n_ends),
        (1, &cfg.line_mid, n_mid),
        (2, &cfg.line_ends, n_ends),
    ];
    for (i, line, n) in on_line {
        let d = cfg.points[i].dot(n) - line.offset;
        if d.abs() > eps {
            fail(
                CertificateCheck::PointsOnLines,
                format!("p{} is {d:e} off its line", i + 1),
            );
        }
    }

    let [s1, s2, s3] = cfg.triple.map(|p| arc.canonical(p));
    if !(s1 < s2 && s2 < s3) {
        fail(
            CertificateCheck::StrictPrecedence,
            format!("triple {:?} is not strictly increasing", cfg.triple),
        );
    }

    let point_tol = 1e-12 * arc.diameter().max(f64::MIN_POSITIVE);
    for (i, (&pos, &p)) in cfg.triple.iter().zip(&cfg.points).enumerate() {
        match arc.point_at(pos) {
            Ok(q) if q.dist(p) <= point_tol => {}
            Ok(q) => fail(
                CertificateCheck::PointsMatchParams,
                format!("p{} is {p} but the arc is at {q}", i + 1),
            ),
            Err(e) => fail(CertificateCheck::PointsMatchParams, format!("p{}: {e}", i + 1)),
        }
    }

    Certificate {
        passed: failed.is_empty(),
        failed,
        diagnostics,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionCluster {
    /// Representative undirected direction in `[0, pi)`.
    pub direction: f64,
    /// Indices into the clustered configuration list.
    pub members: Vec<usize>,
}

/// Groups configurations whose directions agree modulo `pi` within
/// `angle_tol`, chaining neighbours and wrapping around `pi ≡ 0`.
pub fn direction_clusters(configs: &[LambdaConfig], angle_tol: f64) -> Vec<DirectionCluster> {
    let mut dirs: Vec<(f64, usize)> = configs
        .iter()
        .enumerate()
        .map(|(i, c)| (c.theta.mod_pi(), i))
        .collect();
    dirs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut groups: Vec<Vec<(f64, usize)>> = Vec::new();
    for d in dirs {
        match groups.last_mut() {
            Some(g) if d.0 - g[g.len() - 1].0 <= angle_tol => g.push(d),
            _ => groups.push(vec![d]),
        }
    }
    if groups.len() > 1 {
        let first = groups[0][0].0;
        let last = &groups[groups.len() - 1];
        let last_dir = last[last.len() - 1].0;
        if first + PI - last_dir <= angle_tol {
            let tail = groups.pop().unwrap();
            groups[0].splice(0..0, tail);
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let mut members: Vec<usize> = g.iter().map(|d| d.1).collect();
            members.sort_unstable();
            DirectionCluster {
                direction: g[0].0,
                members,
            }
        })
        .collect()
}

pub fn is_unique(clusters: &[DirectionCluster]) -> bool {
    clusters.len() == 1
}
