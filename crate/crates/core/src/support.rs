//! Support lines, touch sets and the extreme touch points `I1(theta)` and
//! `C(theta)`.
//!
//! A support line `l(theta)` has the arc on its left. Its touch set is the
//! set of arc parameters lying on it, stored as maximal intervals; the same
//! spatial point visited at several parameters yields several intervals.
//!
//! Touch sets only change at event angles, the directions of hull edges and
//! their opposites. Sampling every event and the midpoint of every gap
//! between consecutive events therefore sees every distinct antipodal
//! touch configuration.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::arc::{ParamPoint, ParamPos, PolyArc};
use crate::geom::{hull_edge_angles, support_value, Angle, Point2, ANGLE_EPS};

/// The oriented line `{p : <p, n(theta)> = offset}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportLine {
    pub theta: Angle,
    pub offset: f64,
}

impl SupportLine {
    /// Signed distance to the right of the line; non-positive on the arc side.
    pub fn excess(&self, p: Point2) -> f64 {
        p.dot(self.theta.normal()) - self.offset
    }

    pub fn contains(&self, p: Point2, eps_abs: f64) -> bool {
        self.excess(p).abs() <= eps_abs
    }

    /// A point of the line closest to the origin.
    pub fn anchor(&self) -> Point2 {
        self.theta.normal() * self.offset
    }
}

pub fn support_line(arc: &PolyArc, theta: Angle) -> SupportLine {
    SupportLine {
        theta,
        offset: support_value(arc.vertices(), theta),
    }
}

/// A maximal run of consecutive arc vertices on a support line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TouchInterval {
    pub lo: ParamPos,
    pub hi: ParamPos,
    pub first_vertex: usize,
    pub last_vertex: usize,
}

impl TouchInterval {
    pub fn is_point(&self) -> bool {
        self.first_vertex == self.last_vertex
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TouchSet {
    pub theta: Angle,
    pub intervals: Vec<TouchInterval>,
}

impl TouchSet {
    pub fn min(&self) -> ParamPos {
        self.intervals.first().expect("support line always touches").lo
    }

    pub fn max(&self) -> ParamPos {
        self.intervals.last().expect("support line always touches").hi
    }

    /// Indices of all touching vertices, in parameter order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.intervals.iter().flat_map(|iv| iv.first_vertex..=iv.last_vertex)
    }

    /// Interval endpoints in parameter order.
    pub fn endpoints(&self) -> impl Iterator<Item = ParamPos> + '_ {
        self.intervals
            .iter()
            .flat_map(|iv| if iv.is_point() { vec![iv.lo] } else { vec![iv.lo, iv.hi] })
    }

    /// Intervals as parameter pairs, for comparisons that ignore vertex ids.
    pub fn spans(&self) -> Vec<(ParamPos, ParamPos)> {
        self.intervals.iter().map(|iv| (iv.lo, iv.hi)).collect()
    }
}

/// Parameters of the arc within `eps_abs` of `l(theta)`.
///
/// The distance to a support line is linear and non-negative along each
/// segment, so a segment touches the line in its interior only when both of
/// its endpoints do. Membership is therefore decided exactly on vertices
/// and consecutive touching vertices merge into one interval.
pub fn touch_set(arc: &PolyArc, theta: Angle) -> TouchSet {
    let line = support_line(arc, theta);
    let eps = arc.eps_abs();
    let mut intervals: Vec<TouchInterval> = Vec::new();
    let mut run: Option<usize> = None;
    let n = arc.vertex_count();
    for (k, &p) in arc.vertices().iter().enumerate() {
        let on = line.excess(p) >= -eps;
        match (on, run) {
            (true, None) => run = Some(k),
            (false, Some(start)) => {
                intervals.push(interval(arc, start, k - 1));
                run = None;
            }
            _ => {}
        }
    }
    if let Some(start) = run {
        intervals.push(interval(arc, start, n - 1));
    }
    TouchSet { theta, intervals }
}

fn interval(arc: &PolyArc, first: usize, last: usize) -> TouchInterval {
    TouchInterval {
        lo: arc.vertex_pos(first),
        hi: arc.vertex_pos(last),
        first_vertex: first,
        last_vertex: last,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TouchEnd {
    /// `I1(theta)`: least projection on `u(theta)`, then least parameter.
    LeftmostLowest,
    /// `C(theta)`: greatest projection on `u(theta)`, then greatest parameter.
    RightmostHighest,
}

/// Extreme touch point of `ts` along the line orientation. Projections
/// within `eps_abs` of the extreme are spatial ties, broken by parameter.
pub fn extreme_touch(arc: &PolyArc, ts: &TouchSet, end: TouchEnd) -> ParamPoint {
    let u = ts.theta.direction();
    let eps = arc.eps_abs();
    let verts = arc.vertices();
    let proj = |k: usize| verts[k].dot(u);
    let k = match end {
        TouchEnd::RightmostHighest => {
            let best = ts.vertices().map(proj).fold(f64::NEG_INFINITY, f64::max);
            ts.vertices().filter(|&k| proj(k) >= best - eps).max()
        }
        TouchEnd::LeftmostLowest => {
            let best = ts.vertices().map(proj).fold(f64::INFINITY, f64::min);
            ts.vertices().filter(|&k| proj(k) <= best + eps).min()
        }
    }
    .expect("support line always touches the arc");
    arc.param_point(arc.vertex_pos(k))
        .expect("vertex positions are in range")
}

/// `C(theta)`, the highest most right touch point.
pub fn c_point(arc: &PolyArc, theta: Angle) -> ParamPoint {
    extreme_touch(arc, &touch_set(arc, theta), TouchEnd::RightmostHighest)
}

/// `C(theta) ≺ C(theta + pi)`.
pub fn predicate_p(arc: &PolyArc, theta: Angle) -> bool {
    c_point(arc, theta).pos < c_point(arc, theta.opposite()).pos
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    HullEdgeNormal,
    ShiftedByPi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleEvent {
    pub theta: Angle,
    pub kind: EventKind,
}

/// Directions whose support line contains a hull edge.
pub fn base_event_angles(arc: &PolyArc) -> Vec<Angle> {
    let mut angles = hull_edge_angles(arc.hull());
    angles.sort_by(|a, b| a.radians().total_cmp(&b.radians()));
    angles
}

/// Hull-edge directions together with their opposites, sorted and
/// deduplicated, so that both `l(theta)` and `l(theta + pi)` are constant
/// between consecutive entries.
pub fn event_angles(arc: &PolyArc) -> Vec<AngleEvent> {
    let base = hull_edge_angles(arc.hull());
    let mut events: Vec<AngleEvent> = base
        .iter()
        .map(|&theta| AngleEvent {
            theta,
            kind: EventKind::HullEdgeNormal,
        })
        .chain(base.iter().map(|&theta| AngleEvent {
            theta: theta.opposite(),
            kind: EventKind::ShiftedByPi,
        }))
        .collect();
    // hull edges first among near-equal angles so dedup keeps them
    events.sort_by(|a, b| {
        a.theta
            .radians()
            .total_cmp(&b.theta.radians())
            .then((a.kind as u8).cmp(&(b.kind as u8)))
    });
    let mut out: Vec<AngleEvent> = Vec::with_capacity(events.len());
    for ev in events {
        match out.last_mut() {
            Some(last) if ev.theta.radians() - last.theta.radians() <= ANGLE_EPS => {
                if ev.kind == EventKind::HullEdgeNormal {
                    last.kind = EventKind::HullEdgeNormal;
                }
            }
            _ => out.push(ev),
        }
    }
    if out.len() > 1 {
        let first = out[0];
        let last = out[out.len() - 1];
        if first.theta.radians() + TAU - last.theta.radians() <= ANGLE_EPS {
            if last.kind == EventKind::HullEdgeNormal {
                out[0].kind = EventKind::HullEdgeNormal;
            }
            out.pop();
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SampleKind {
    Event,
    /// Midpoint of the open gap `(lo, hi)`; `hi` may exceed `2pi` for the
    /// gap that wraps through zero.
    Midpoint { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleSample {
    pub theta: Angle,
    pub kind: SampleKind,
}

/// Every event angle plus the midpoint of every gap, over the full turn,
/// sorted by angle.
pub fn sweep_samples(events: &[AngleEvent]) -> Vec<AngleSample> {
    let k = events.len();
    let mut out = Vec::with_capacity(2 * k);
    for (i, ev) in events.iter().enumerate() {
        out.push(AngleSample {
            theta: ev.theta,
            kind: SampleKind::Event,
        });
        let lo = ev.theta.radians();
        let hi = if i + 1 < k {
            events[i + 1].theta.radians()
        } else {
            events[0].theta.radians() + TAU
        };
        out.push(AngleSample {
            theta: Angle::new(0.5 * (lo + hi)),
            kind: SampleKind::Midpoint { lo, hi },
        });
    }
    out.sort_by(|a, b| a.theta.radians().total_cmp(&b.theta.radians()));
    out
}

/// Samples in `[0, pi)`. Every antipodal pair is represented once, since
/// the event set is symmetric under the half turn.
pub fn half_turn_samples(events: &[AngleEvent]) -> Vec<AngleSample> {
    sweep_samples(events)
        .into_iter()
        .filter(|s| s.theta.radians() < PI - ANGLE_EPS)
        .collect()
}

/// Extreme touch point on the open angular gap just below `theta`: the
/// one-sided limit as the line approaches `theta` counter-clockwise.
pub fn limit_extreme(arc: &PolyArc, theta: Angle, end: TouchEnd) -> ParamPoint {
    let events = event_angles(arc);
    let t = theta.radians();
    // last event strictly below theta, unwrapped so that prev < t
    let prev = events
        .iter()
        .map(|e| e.theta.radians())
        .map(|e| if e >= t - ANGLE_EPS { e - TAU } else { e })
        .fold(f64::NEG_INFINITY, f64::max);
    let probe = if prev.is_finite() {
        Angle::new(0.5 * (prev + t))
    } else {
        theta
    };
    let ts = touch_set(arc, probe);
    extreme_touch(arc, &ts, end)
}
