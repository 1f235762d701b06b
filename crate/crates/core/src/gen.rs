//! Named fixtures and seeded random arcs.
//!
//! Random arcs are driven by SplitMix64 (state = seed, Steele/Lea/Flood
//! constants) and uniform reals are drawn as `(next_u64 >> 11) * 2^-53`.
//! Both are part of the output contract: the same [`GenSpec`] produces the
//! same vertices on every platform.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::arc::PolyArc;
use crate::error::{Error, Result};
use crate::geom::{Point2, DEFAULT_EPS_REL};

/// Generated arcs are retried until thickness reaches this fraction of the
/// diameter.
pub const MIN_THICKNESS_RATIO: f64 = 1e-3;

const MAX_ATTEMPTS: u32 = 64;
const RETRY_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

pub const FIXTURE_NAMES: [&str; 7] = ["tent", "tilted-tent", "hook", "loop", "stick", "zigzag", "spiral"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    /// x-monotone, hence simple.
    Simple,
    /// Random walk, may self-intersect.
    Free,
}

impl FromStr for ArcKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(ArcKind::Simple),
            "free" => Ok(ArcKind::Free),
            other => Err(Error::InvalidGenSpec(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub kind: ArcKind,
    /// Side of the bounding box the arc is fitted into.
    pub scale: f64,
}

impl GenSpec {
    pub fn new(seed: u64, n: usize, kind: ArcKind) -> GenSpec {
        GenSpec {
            seed,
            n,
            kind,
            scale: 1.0,
        }
    }

    /// Member `index` of the corpus rooted at `master_seed`: its own seed,
    /// `n` in `[3, 60]`, and alternating free/simple kinds unless
    /// `simple_only`.
    pub fn corpus_member(master_seed: u64, index: u64, simple_only: bool) -> GenSpec {
        let mut rng = SplitMix64::seed_from_u64(master_seed.wrapping_add(index.wrapping_mul(RETRY_STRIDE)));
        let seed = rng.next_u64();
        let n = 3 + (rng.next_u64() % 58) as usize;
        let kind = if simple_only || index % 2 == 1 {
            ArcKind::Simple
        } else {
            ArcKind::Free
        };
        GenSpec {
            seed,
            n,
            kind,
            scale: 1.0,
        }
    }

    pub fn corpus(master_seed: u64, count: usize, simple_only: bool) -> Vec<GenSpec> {
        (0..count as u64)
            .map(|i| GenSpec::corpus_member(master_seed, i, simple_only))
            .collect()
    }

    pub fn generate(&self) -> Result<PolyArc> {
        match self.kind {
            ArcKind::Simple => gen_simple(self),
            ArcKind::Free => gen_random(self),
        }
    }
}

fn uniform(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniformly rescales and translates so the bounding box has its lower
/// corner at the origin and its longer side equal to `scale`.
fn fit_to_box(pts: &mut [Point2], scale: f64) {
    let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in pts.iter() {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let side = (hi.x - lo.x).max(hi.y - lo.y);
    let k = if side > 0.0 { scale / side } else { 1.0 };
    for p in pts.iter_mut() {
        *p = (*p - lo) * k;
    }
}

fn check_spec(spec: &GenSpec, kind: ArcKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::InvalidGenSpec(format!("expected kind {kind:?}, got {:?}", spec.kind)));
    }
    if spec.n < 3 {
        return Err(Error::InvalidGenSpec(format!("need n >= 3, got {}", spec.n)));
    }
    if !(spec.scale.is_finite() && spec.scale > 0.0) {
        return Err(Error::InvalidGenSpec(format!("scale must be positive, got {}", spec.scale)));
    }
    Ok(())
}

fn retry<F>(spec: &GenSpec, mut attempt: F) -> Result<PolyArc>
where
    F: FnMut(&mut SplitMix64) -> Option<PolyArc>,
{
    for k in 0..MAX_ATTEMPTS {
        let mut rng = SplitMix64::seed_from_u64(spec.seed.wrapping_add(u64::from(k).wrapping_mul(RETRY_STRIDE)));
        if let Some(arc) = attempt(&mut rng) {
            return Ok(arc);
        }
    }
    Err(Error::GenerationFailed {
        seed: spec.seed,
        attempts: MAX_ATTEMPTS,
    })
}

fn thick_enough(arc: &PolyArc) -> bool {
    arc.thickness() >= MIN_THICKNESS_RATIO * arc.diameter()
}

/// Jittered x-monotone polyline under a random rotation.
pub fn gen_simple(spec: &GenSpec) -> Result<PolyArc> {
    check_spec(spec, ArcKind::Simple)?;
    let n = spec.n;
    retry(spec, |rng| {
        let step = 1.0 / (n - 1) as f64;
        let mut pts: Vec<Point2> = (0..n)
            .map(|i| {
                let x = i as f64 * step + (uniform(rng) - 0.5) * 0.6 * step;
                let y = uniform(rng);
                Point2::new(x, y)
            })
            .collect();
        let phi = uniform(rng) * TAU;
        for p in pts.iter_mut() {
            *p = p.rotated(phi);
        }
        fit_to_box(&mut pts, spec.scale);
        let arc = PolyArc::new(pts, DEFAULT_EPS_REL).ok()?;
        (thick_enough(&arc) && arc.is_simple()).then_some(arc)
    })
}

/// Random walk with uniform headings and step lengths in `[0.2, 1)`.
pub fn gen_random(spec: &GenSpec) -> Result<PolyArc> {
    check_spec(spec, ArcKind::Free)?;
    let n = spec.n;
    retry(spec, |rng| {
        let mut p = Point2::new(0.0, 0.0);
        let mut pts = Vec::with_capacity(n);
        pts.push(p);
        for _ in 1..n {
            let heading = uniform(rng) * TAU;
            let len = 0.2 + 0.8 * uniform(rng);
            p = p + Point2::new(heading.cos(), heading.sin()) * len;
            pts.push(p);
        }
        fit_to_box(&mut pts, spec.scale);
        let arc = PolyArc::new(pts, DEFAULT_EPS_REL).ok()?;
        thick_enough(&arc).then_some(arc)
    })
}

pub fn named_vertices(name: &str) -> Result<Vec<Point2>> {
    let p = |x: f64, y: f64| Point2::new(x, y);
    let v = match name {
        "tent" => vec![p(0.0, 0.0), p(1.0, 1.0), p(2.0, 0.0)],
        "tilted-tent" => [p(0.0, 0.0), p(1.0, 1.0), p(2.0, 0.0)]
            .iter()
            .map(|q| q.rotated(FRAC_PI_4))
            .collect(),
        "hook" => vec![p(0.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(1.0, 1.0), p(1.0, -1.0)],
        "loop" => vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), p(0.0, 0.0)],
        "stick" => vec![p(0.0, 0.0), p(1.0, 0.0)],
        "zigzag" => (0..9).map(|i| p(i as f64, (i % 2) as f64)).collect(),
        "spiral" => {
            // inward rectangular spiral: legs of length 15, 14, ..., 1
            let dirs = [p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)];
            let mut q = p(0.0, 0.0);
            let mut v = vec![q];
            for (k, len) in (1..=15).rev().enumerate() {
                q = q + dirs[k % 4] * len as f64;
                v.push(q);
            }
            v
        }
        other => {
            return Err(Error::UnknownFixture {
                name: other.to_string(),
                valid: FIXTURE_NAMES.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    Ok(v)
}

/// A named fixture. Degenerate fixtures (`stick`) build but are flagged by
/// [`PolyArc::is_degenerate`].
pub fn gen_named(name: &str) -> Result<PolyArc> {
    PolyArc::new(named_vertices(name)?, DEFAULT_EPS_REL)
}
