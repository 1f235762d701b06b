//! The arc: a polyline with exact parameter order and arc-length parameters.
//!
//! Positions along the arc are [`ParamPos`] values `(segment, fraction)`.
//! Precedence is decided on these lexicographically, never on the floating
//! arc-length parameter, so order decisions carry no tolerance.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    self, convex_hull_tol, hull_thickness, Point2, Tolerance,
};

/// Exact position on the arc: segment index plus fraction along it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ParamPos {
    pub seg: usize,
    pub frac: f64,
}

impl ParamPos {
    pub fn new(seg: usize, frac: f64) -> ParamPos {
        // fold -0.0 into +0.0 so bitwise-total ordering agrees with ==
        ParamPos { seg, frac: frac + 0.0 }
    }

    /// Position of vertex `k` on an arc with `segments` segments.
    pub fn vertex(k: usize, segments: usize) -> ParamPos {
        if k >= segments {
            ParamPos::new(segments - 1, 1.0)
        } else {
            ParamPos::new(k, 0.0)
        }
    }

    /// `(seg, 1.0)` becomes `(seg + 1, 0.0)` except on the final segment.
    pub fn canonical(self, segments: usize) -> ParamPos {
        if self.frac >= 1.0 && self.seg + 1 < segments {
            ParamPos::new(self.seg + 1, 0.0)
        } else {
            self
        }
    }

    /// `p ≺ q`: `p` occurs strictly earlier along the arc.
    pub fn precedes(self, other: ParamPos) -> bool {
        self < other
    }
}

impl PartialEq for ParamPos {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ParamPos {}

impl PartialOrd for ParamPos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamPos {
    fn cmp(&self, other: &Self) -> Ordering {
        self.seg
            .cmp(&other.seg)
            .then_with(|| self.frac.total_cmp(&other.frac))
    }
}

/// A touch point: a parameter position together with its location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub pos: ParamPos,
    pub point: Point2,
    /// Normalized arc length in `[0, 1]`.
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyArc {
    vertices: Vec<Point2>,
    cum_len: Vec<f64>,
    total_len: f64,
    s_of_vertex: Vec<f64>,
    closed: bool,
    collapsed: Vec<usize>,
    tol: Tolerance,
    hull: Vec<Point2>,
    thickness: f64,
}

impl PolyArc {
    /// Builds an arc, accepting zero-thickness (collinear) vertex lists.
    ///
    /// Consecutive vertices closer than `eps_abs` are collapsed; the indices
    /// of dropped input vertices are kept in [`PolyArc::collapsed`].
    pub fn new(vertices: Vec<Point2>, eps_rel: f64) -> Result<PolyArc> {
        if !(eps_rel.is_finite() && eps_rel >= 0.0) {
            return Err(Error::MalformedArc(format!("invalid eps_rel {eps_rel}")));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::MalformedArc(format!("vertex {i} is not finite")));
        }
        let tol = Tolerance::for_points(&vertices, eps_rel);

        let mut kept: Vec<Point2> = Vec::with_capacity(vertices.len());
        let mut collapsed = Vec::new();
        for (i, &p) in vertices.iter().enumerate() {
            match kept.last() {
                Some(&q) if q.dist(p) <= tol.eps_abs => collapsed.push(i),
                _ => kept.push(p),
            }
        }
        if kept.len() < 2 {
            return Err(Error::MalformedArc(format!(
                "need at least 2 distinct vertices, got {}",
                kept.len()
            )));
        }

        let mut cum_len = Vec::with_capacity(kept.len());
        let mut acc = 0.0;
        cum_len.push(0.0);
        for w in kept.windows(2) {
            acc += w[0].dist(w[1]);
            cum_len.push(acc);
        }
        let total_len = acc;
        let last = kept.len() - 1;
        let s_of_vertex = cum_len
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == last { 1.0 } else { c / total_len })
            .collect();
        let closed = kept.len() >= 3 && kept[0].dist(kept[last]) <= tol.eps_abs;
        let hull = convex_hull_tol(&kept, tol.eps_abs)?;
        let thickness = hull_thickness(&hull);

        Ok(PolyArc {
            vertices: kept,
            cum_len,
            total_len,
            s_of_vertex,
            closed,
            collapsed,
            tol,
            hull,
            thickness,
        })
    }

    /// Builds an arc and rejects it unless its thickness exceeds `eps_abs`.
    pub fn build(vertices: Vec<Point2>, eps_rel: f64) -> Result<PolyArc> {
        let arc = PolyArc::new(vertices, eps_rel)?;
        arc.ensure_thick()?;
        Ok(arc)
    }

    pub fn ensure_thick(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateThickness {
                thickness: self.thickness,
                eps_abs: self.tol.eps_abs,
            })
        } else {
            Ok(())
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.thickness.is_nan() || self.thickness <= self.tol.eps_abs
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn cum_len(&self) -> &[f64] {
        &self.cum_len
    }

    pub fn total_len(&self) -> f64 {
        self.total_len
    }

    pub fn s_of_vertex(&self) -> &[f64] {
        &self.s_of_vertex
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Input indices dropped as consecutive duplicates.
    pub fn collapsed(&self) -> &[usize] {
        &self.collapsed
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn eps_abs(&self) -> f64 {
        self.tol.eps_abs
    }

    pub fn eps_rel(&self) -> f64 {
        self.tol.eps_rel
    }

    pub fn diameter(&self) -> f64 {
        self.tol.diameter
    }

    /// Counter-clockwise convex hull of the vertices.
    pub fn hull(&self) -> &[Point2] {
        &self.hull
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn vertex_pos(&self, k: usize) -> ParamPos {
        ParamPos::vertex(k, self.segment_count())
    }

    pub fn canonical(&self, pos: ParamPos) -> ParamPos {
        pos.canonical(self.segment_count())
    }

    /// Precedence after canonicalizing both positions.
    pub fn precedes(&self, a: ParamPos, b: ParamPos) -> bool {
        self.canonical(a) < self.canonical(b)
    }

    fn check_pos(&self, pos: ParamPos) -> Result<()> {
        if pos.seg < self.segment_count() && (0.0..=1.0).contains(&pos.frac) {
            Ok(())
        } else {
            Err(Error::ParamOutOfRange {
                seg: pos.seg,
                frac: pos.frac,
            })
        }
    }

    pub fn point_at(&self, pos: ParamPos) -> Result<Point2> {
        self.check_pos(pos)?;
        let (a, b) = (self.vertices[pos.seg], self.vertices[pos.seg + 1]);
        Ok(if pos.frac == 0.0 {
            a
        } else if pos.frac == 1.0 {
            b
        } else {
            a.lerp(b, pos.frac)
        })
    }

    /// Normalized arc-length parameter of a position.
    pub fn s_at(&self, pos: ParamPos) -> Result<f64> {
        self.check_pos(pos)?;
        let seg_len = self.cum_len[pos.seg + 1] - self.cum_len[pos.seg];
        Ok(if pos.frac == 0.0 {
            self.s_of_vertex[pos.seg]
        } else if pos.frac == 1.0 {
            self.s_of_vertex[pos.seg + 1]
        } else {
            (self.cum_len[pos.seg] + pos.frac * seg_len) / self.total_len
        })
    }

    pub fn param_point(&self, pos: ParamPos) -> Result<ParamPoint> {
        let pos = self.canonical(pos);
        Ok(ParamPoint {
            pos,
            point: self.point_at(pos)?,
            s: self.s_at(pos)?,
        })
    }

    /// Same position seen from the reversed parameterization.
    pub fn reverse_pos(&self, pos: ParamPos) -> ParamPos {
        let n = self.segment_count();
        ParamPos::new(n - 1 - pos.seg, 1.0 - pos.frac).canonical(n)
    }

    /// The arc traversed backwards, with the same tolerance settings.
    pub fn reversed(&self) -> PolyArc {
        let mut v = self.vertices.clone();
        v.reverse();
        PolyArc::new(v, self.tol.eps_rel).expect("reversal of a valid arc is valid")
    }

    /// True iff the parameterization is injective: no crossings or touches
    /// between non-adjacent segments, no fold-back of adjacent segments, and
    /// distinct endpoints.
    pub fn is_simple(&self) -> bool {
        if self.closed {
            return false;
        }
        let eps = self.tol.eps_abs;
        let v = &self.vertices;
        let n = self.segment_count();
        for i in 0..n {
            if i + 1 < n {
                let (a, b, c) = (v[i], v[i + 1], v[i + 2]);
                // adjacent segments overlap only by folding back, which puts
                // one far endpoint on the other segment
                if point_segment_dist(c, a, b) <= eps || point_segment_dist(a, b, c) <= eps {
                    return false;
                }
            }
            for j in i + 2..n {
                if segments_touch(v[i], v[i + 1], v[j], v[j + 1], eps) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn point_segment_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Closed segments `[p1, p2]` and `[q1, q2]` intersect or come within `eps`.
pub(crate) fn segments_touch(p1: Point2, p2: Point2, q1: Point2, q2: Point2, eps: f64) -> bool {
    let d1 = geom::orientation_tol(p1, q1, p2, eps).sign();
    let d2 = geom::orientation_tol(p1, q2, p2, eps).sign();
    let d3 = geom::orientation_tol(q1, p1, q2, eps).sign();
    let d4 = geom::orientation_tol(q1, p2, q2, eps).sign();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    point_segment_dist(q1, p1, p2) <= eps
        || point_segment_dist(q2, p1, p2) <= eps
        || point_segment_dist(p1, q1, q2) <= eps
        || point_segment_dist(p2, q1, q2) <= eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::DEFAULT_EPS_REL;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    fn arc(v: &[(f64, f64)]) -> PolyArc {
        PolyArc::new(pts(v), DEFAULT_EPS_REL).unwrap()
    }

    #[test]
    fn tent_parameters() {
        let a = arc(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(a.s_of_vertex(), &[0.0, 0.5, 1.0]);
        assert!((a.total_len() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!(!a.is_closed());
        assert!((a.thickness() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stick_is_degenerate() {
        let v = pts(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(PolyArc::new(v.clone(), DEFAULT_EPS_REL).unwrap().is_degenerate());
        assert!(matches!(
            PolyArc::build(v, DEFAULT_EPS_REL),
            Err(Error::DegenerateThickness { .. })
        ));
    }

    #[test]
    fn repeated_point_is_malformed() {
        let v = pts(&[(1.0, 2.0), (1.0, 2.0), (1.0, 2.0)]);
        assert!(matches!(PolyArc::new(v, DEFAULT_EPS_REL), Err(Error::MalformedArc(_))));
        assert!(matches!(PolyArc::new(vec![], DEFAULT_EPS_REL), Err(Error::MalformedArc(_))));
    }

    #[test]
    fn non_finite_is_malformed() {
        let v = pts(&[(0.0, 0.0), (f64::NAN, 1.0), (2.0, 0.0)]);
        assert!(matches!(PolyArc::new(v, DEFAULT_EPS_REL), Err(Error::MalformedArc(_))));
    }

    #[test]
    fn duplicates_collapse_with_report() {
        let a = arc(&[(0.0, 0.0), (0.0, 0.0), (1.0, 1.0), (1.0, 1.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(a.vertex_count(), 3);
        assert_eq!(a.collapsed(), &[1, 3, 4]);
        let again = PolyArc::new(a.vertices().to_vec(), DEFAULT_EPS_REL).unwrap();
        assert_eq!(again.vertices(), a.vertices());
        assert!(again.collapsed().is_empty());
    }

    #[test]
    fn precedence_examples() {
        let a = arc(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]);
        assert!(a.precedes(ParamPos::new(0, 0.3), ParamPos::new(0, 0.7)));
        assert!(!a.precedes(ParamPos::new(1, 0.0), ParamPos::new(0, 1.0)));
        assert!(!a.precedes(ParamPos::new(0, 1.0), ParamPos::new(1, 0.0)));
        assert!(a.precedes(ParamPos::new(0, 0.9), ParamPos::new(2, 0.1)));
        assert_eq!(a.canonical(ParamPos::new(2, 1.0)), ParamPos::new(2, 1.0));
    }

    #[test]
    fn point_at_interpolates() {
        let a = arc(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(a.point_at(ParamPos::new(0, 0.0)).unwrap(), Point2::new(0.0, 0.0));
        assert_eq!(a.point_at(ParamPos::new(0, 1.0)).unwrap(), Point2::new(1.0, 1.0));
        assert_eq!(a.point_at(ParamPos::new(1, 0.5)).unwrap(), Point2::new(1.5, 0.5));
        assert!(matches!(
            a.point_at(ParamPos::new(2, 0.0)),
            Err(Error::ParamOutOfRange { seg: 2, .. })
        ));
        assert!(a.point_at(ParamPos::new(0, 1.5)).is_err());
        assert_eq!(a.s_at(ParamPos::new(1, 0.5)).unwrap(), 0.75);
    }

    #[test]
    fn reversal_maps_positions() {
        let a = arc(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 2.0)]);
        let r = a.reversed();
        let p = ParamPos::new(0, 0.25);
        let q = ParamPos::new(2, 0.5);
        assert!(a.precedes(p, q));
        assert!(r.precedes(a.reverse_pos(q), a.reverse_pos(p)));
        assert_eq!(
            r.point_at(a.reverse_pos(p)).unwrap(),
            a.point_at(p).unwrap()
        );
    }

    #[test]
    fn simplicity() {
        assert!(arc(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).is_simple());
        assert!(!arc(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, -1.0)]).is_simple());
        assert!(!arc(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]).is_simple());
        // fold-back along the same line
        assert!(!arc(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)]).is_simple());
        // endpoint touching an earlier segment
        assert!(!arc(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 0.0)]).is_simple());
        // straight continuation is fine
        assert!(arc(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 1.0)]).is_simple());
    }

    #[test]
    fn loop_is_closed() {
        let a = arc(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]);
        assert!(a.is_closed());
        assert!(!a.is_degenerate());
    }
}
