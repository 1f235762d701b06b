//! Low-level planar geometry: points, canonical angles, orientation, convex
//! hulls, support values, widths and thickness.
//!
//! Sign conventions for a direction `theta`:
//! - `u(theta) = (cos theta, sin theta)` is the orientation of the line,
//! - `n(theta) = (sin theta, -cos theta)` is its outward normal, i.e. the
//!   right-hand side. A point set lies on the left of its support line, in
//!   the half-plane `<p, n> <= offset`.
//!
//! All on-line and half-plane decisions use a single absolute tolerance
//! `eps_abs = eps_rel * diameter`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EPS_REL: f64 = 1e-9;

/// Angles closer than this are considered the same event direction.
pub const ANGLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Rejects NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(Error::MalformedArc(format!("non-finite coordinate ({x}, {y})")))
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    /// Rotation about the origin by `phi` radians.
    pub fn rotated(self, phi: f64) -> Point2 {
        let (s, c) = phi.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2 { x, y }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A direction in radians, canonicalized to `[0, 2pi)`.
///
/// Values within [`ANGLE_EPS`] below `2pi` snap to `0` so that a direction
/// and its representative one full turn away always compare equal.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(theta: f64) -> Angle {
        let mut t = theta.rem_euclid(TAU);
        if t >= TAU - ANGLE_EPS {
            t = 0.0;
        }
        // rem_euclid can produce -0.0
        Angle(t + 0.0)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Line orientation `u(theta)`.
    pub fn direction(self) -> Point2 {
        let (s, c) = self.0.sin_cos();
        Point2::new(c, s)
    }

    /// Outward normal `n(theta)`, pointing to the right of the line.
    pub fn normal(self) -> Point2 {
        let (s, c) = self.0.sin_cos();
        Point2::new(s, -c)
    }

    pub fn opposite(self) -> Angle {
        Angle::new(self.0 + PI)
    }

    pub fn rotated(self, phi: f64) -> Angle {
        Angle::new(self.0 + phi)
    }

    /// Representative in `[0, pi)` of the undirected line direction.
    pub fn mod_pi(self) -> f64 {
        let t = self.0.rem_euclid(PI);
        if t >= PI - ANGLE_EPS {
            0.0
        } else {
            t
        }
    }

    /// Shortest rotation between the two directions, in `[0, pi]`.
    pub fn cyclic_dist(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).abs().rem_euclid(TAU);
        d.min(TAU - d)
    }

    /// Distance between the undirected lines, in `[0, pi/2]`.
    pub fn dist_mod_pi(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).abs().rem_euclid(PI);
        d.min(PI - d)
    }
}

impl From<f64> for Angle {
    fn from(theta: f64) -> Self {
        Angle::new(theta)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> Self {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Turn direction of `a -> b -> c`.
///
/// The cross product counts as zero when it is within `1e-12` of
/// `|b - a| * |c - a|`, i.e. when the sine of the angle at `a` is negligible.
pub fn orientation(a: Point2, b: Point2, c: Point2) -> Orientation {
    let ab = b - a;
    let ac = c - a;
    let cross = ab.cross(ac);
    let tol = 1e-12 * ab.norm() * ac.norm();
    if cross > tol {
        Orientation::CounterClockwise
    } else if cross < -tol {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Orientation with an absolute distance tolerance: collinear when `b` is
/// within `eps_abs` of the line through `a` and `c`.
pub fn orientation_tol(a: Point2, b: Point2, c: Point2, eps_abs: f64) -> Orientation {
    let ac = c - a;
    let cross = ac.cross(b - a);
    let tol = eps_abs * ac.norm();
    // cross(ac, ab) has the opposite sign of cross(ab, ac)
    if cross < -tol {
        Orientation::CounterClockwise
    } else if cross > tol {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Distance-based tolerance derived from a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps_rel: f64,
    pub diameter: f64,
    pub eps_abs: f64,
}

impl Tolerance {
    pub fn for_points(points: &[Point2], eps_rel: f64) -> Tolerance {
        let diameter = diameter(points);
        Tolerance {
            eps_rel,
            diameter,
            eps_abs: eps_rel * diameter,
        }
    }
}

fn sorted_unique(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    pts
}

fn monotone_chain(pts: &[Point2], eps_abs: f64) -> Vec<Point2> {
    if pts.len() <= 1 {
        return pts.to_vec();
    }
    let drop_middle = |o: Point2, a: Point2, p: Point2| {
        orientation_tol(o, a, p, eps_abs) != Orientation::CounterClockwise
    };
    let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts {
        while hull.len() >= 2 && drop_middle(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && drop_middle(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() == 2 && hull[0].dist(hull[1]) <= eps_abs {
        hull.truncate(1);
    }
    hull
}

/// Largest pairwise distance of the set (0 for fewer than two points).
pub fn diameter(points: &[Point2]) -> f64 {
    let hull = monotone_chain(&sorted_unique(points), 0.0);
    let mut best: f64 = 0.0;
    for (i, &a) in hull.iter().enumerate() {
        for &b in &hull[i + 1..] {
            best = best.max(a.dist(b));
        }
    }
    best
}

/// Counter-clockwise convex hull starting at the lexicographically smallest
/// point, using the default relative tolerance.
pub fn convex_hull(points: &[Point2]) -> Result<Vec<Point2>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let tol = Tolerance::for_points(points, DEFAULT_EPS_REL);
    convex_hull_tol(points, tol.eps_abs)
}

/// Monotone chain hull. Vertices within `eps_abs` of the segment joining
/// their neighbours are dropped, so no three consecutive output vertices are
/// collinear. Degenerate inputs yield one or two points.
pub fn convex_hull_tol(points: &[Point2], eps_abs: f64) -> Result<Vec<Point2>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(monotone_chain(&sorted_unique(points), eps_abs))
}

/// `max <p, n(theta)>` over the points. The support line at `theta` is
/// `{p : <p, n(theta)> = support_value}`.
pub fn support_value(points: &[Point2], theta: Angle) -> f64 {
    let n = theta.normal();
    points
        .iter()
        .map(|p| p.dot(n))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Distance between the parallel support lines at `theta` and `theta + pi`.
pub fn width(points: &[Point2], theta: Angle) -> f64 {
    // n(theta + pi) = -n(theta); written symmetrically so width(t) == width(t + pi)
    let n = theta.normal();
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let v = p.dot(n);
        (lo.min(v), hi.max(v))
    });
    hi - lo
}

/// Minimum width over all directions (the thickness of the set).
pub fn thickness(points: &[Point2]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let tol = Tolerance::for_points(points, DEFAULT_EPS_REL);
    match convex_hull_tol(points, tol.eps_abs) {
        Ok(hull) => hull_thickness(&hull),
        Err(_) => 0.0,
    }
}

/// Minimum width of a counter-clockwise convex polygon by rotating calipers.
/// The minimum is attained with one caliper flush against a hull edge.
pub fn hull_thickness(hull: &[Point2]) -> f64 {
    let h = hull.len();
    if h < 3 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    let mut j = 1;
    for i in 0..h {
        let a = hull[i];
        let edge = hull[(i + 1) % h] - a;
        let len = edge.norm();
        let height = |k: usize| edge.cross(hull[k] - a) / len;
        let mut steps = 0;
        while steps < h && height((j + 1) % h) > height(j) {
            j = (j + 1) % h;
            steps += 1;
        }
        best = best.min(height(j));
    }
    best
}

/// Direction angles of the hull edges, traversed counter-clockwise. Each is
/// the direction `theta` whose support line contains that edge.
pub fn hull_edge_angles(hull: &[Point2]) -> Vec<Angle> {
    let h = hull.len();
    if h < 2 {
        return Vec::new();
    }
    (0..h)
        .map(|i| {
            let d = hull[(i + 1) % h] - hull[i];
            Angle::new(d.y.atan2(d.x))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn tent() -> Vec<Point2> {
        vec![Point2::new(0.0, 0.0), Point2::new(1.0, 1.0), Point2::new(2.0, 0.0)]
    }

    fn square() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn orientation_signs() {
        let o = Point2::new(0.0, 0.0);
        assert_eq!(orientation(o, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)).sign(), 1);
        assert_eq!(orientation(o, Point2::new(1.0, 1.0), Point2::new(2.0, 2.0)).sign(), 0);
        assert_eq!(orientation(o, Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)).sign(), -1);
    }

    #[test]
    fn angle_canonical() {
        let a = Angle::new(-FRAC_PI_2);
        assert!((a.radians() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(Angle::new(a.radians()), a);
        assert!((Angle::new(1.0 + TAU).radians() - 1.0).abs() < 1e-12);
        assert_eq!(Angle::new(TAU).radians(), 0.0);
        assert_eq!(Angle::new(-0.0).radians().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn hull_of_tent() {
        let hull = convex_hull(&tent()).unwrap();
        assert_eq!(
            hull,
            vec![Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), Point2::new(1.0, 1.0)]
        );
        // oracle: every input inside every edge half-plane
        for i in 0..hull.len() {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            for &p in &tent() {
                assert!((b - a).cross(p - a) >= -1e-12);
            }
        }
    }

    #[test]
    fn hull_degenerate_and_square() {
        let line = [Point2::new(0.0, 0.0), Point2::new(1.0, 1.0), Point2::new(2.0, 2.0)];
        assert_eq!(
            convex_hull(&line).unwrap(),
            vec![Point2::new(0.0, 0.0), Point2::new(2.0, 2.0)]
        );
        assert_eq!(convex_hull(&square()).unwrap(), square());
        assert_eq!(convex_hull(&[Point2::new(3.0, 4.0)]).unwrap().len(), 1);
        assert_eq!(convex_hull(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn hull_drops_collinear_edge_points() {
        let mut pts = square();
        pts.push(Point2::new(0.5, 0.0));
        pts.push(Point2::new(1.0, 0.25));
        assert_eq!(convex_hull(&pts).unwrap(), square());
    }

    #[test]
    fn support_values_of_tent() {
        let t = tent();
        assert_eq!(support_value(&t, Angle::new(0.0)), 0.0);
        assert!((support_value(&t, Angle::new(PI)) - 1.0).abs() < 1e-15);
        assert!((support_value(&t, Angle::new(FRAC_PI_2)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn thickness_values() {
        assert!((thickness(&tent()) - 1.0).abs() < 1e-15);
        assert!((thickness(&square()) - 1.0).abs() < 1e-15);
        assert_eq!(thickness(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]), 0.0);
    }

    #[test]
    fn tent_thickness_matches_sampled_widths() {
        // brute force over 10^6 directions
        let t = tent();
        let samples = 1_000_000;
        let brute = (0..samples)
            .map(|k| width(&t, Angle::new(TAU * k as f64 / samples as f64)))
            .fold(f64::INFINITY, f64::min);
        assert!((brute - thickness(&t)).abs() < 1e-9);
    }

    #[test]
    fn caliper_matches_edge_scan() {
        let pts: Vec<Point2> = (0..23)
            .map(|k| {
                let a = k as f64 * 0.7;
                Point2::new(a.cos() * (1.0 + 0.3 * (3.0 * a).sin()), 0.6 * a.sin())
            })
            .collect();
        let hull = convex_hull(&pts).unwrap();
        let scan = hull_edge_angles(&hull)
            .into_iter()
            .map(|a| width(&pts, a))
            .fold(f64::INFINITY, f64::min);
        assert!((hull_thickness(&hull) - scan).abs() < 1e-12);
    }

    #[test]
    fn diameter_of_square() {
        assert!((diameter(&square()) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(diameter(&[Point2::new(1.0, 1.0)]), 0.0);
    }
}
