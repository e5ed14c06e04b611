//! Closed-form genus bounds.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("odd girth {0} is not supported")]
    OddGirthUnsupported(u64),
    #[error("girth must be at least 4, got {0}")]
    GirthTooSmall(u64),
    #[error("facial distance must be positive")]
    ZeroDistance,
}

/// Lower bound on the genus of any strong embedding of a near-planar graph
/// whose terminals have facial distance `q`: `floor(q / 3)`.
pub fn thm1_bound(q: u64) -> Result<u64, BoundsError> {
    if q == 0 {
        return Err(BoundsError::ZeroDistance);
    }
    Ok(q / 3)
}

/// Fewest vertices of a cubic graph of even girth `g`: the ball of radius
/// `g/2 - 1` around an edge, `2 (2^{g/2} - 1)`.
pub fn moore_bound_cubic(girth: u64) -> Result<u64, BoundsError> {
    if girth % 2 == 1 {
        return Err(BoundsError::OddGirthUnsupported(girth));
    }
    if girth < 4 {
        return Err(BoundsError::GirthTooSmall(girth));
    }
    Ok(2 * ((1u64 << (girth / 2)) - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GirthBound {
    pub max_faces: u64,
    pub max_euler_characteristic: i64,
    pub orientable_lb: u64,
    pub nonorientable_lb: u64,
}

/// Every face has length at least `girth`, so `f <= 2m / girth`, which caps
/// the Euler characteristic and so bounds the genus from below.
pub fn euler_girth_bound(n: u64, m: u64, girth: u64) -> GirthBound {
    let max_faces = (2 * m) / girth.max(1);
    let chi = n as i64 - m as i64 + max_faces as i64;
    let deficit = (2 - chi).max(0) as u64;
    GirthBound { max_faces, max_euler_characteristic: chi, orientable_lb: deficit.div_ceil(2), nonorientable_lb: deficit }
}

/// Genus of a one-face embedding, the most any orientable embedding can reach.
pub fn max_genus_ub(n: u64, m: u64) -> u64 {
    (m + 1).saturating_sub(n) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub m: u64,
    pub girth: u64,
    pub q: Option<u64>,
    pub thm1_bound: Option<u64>,
    pub orientable_lb: u64,
    pub nonorientable_lb: u64,
    pub moore_order: Option<u64>,
    pub max_genus_ub: u64,
}

pub fn report(n: u64, m: u64, girth: u64, q: Option<u64>) -> Result<BoundsReport, BoundsError> {
    let gb = euler_girth_bound(n, m, girth);
    let thm1 = q.map(thm1_bound).transpose()?;
    let moore = if girth.is_multiple_of(2) && girth >= 4 { Some(moore_bound_cubic(girth)?) } else { None };
    Ok(BoundsReport {
        n,
        m,
        girth,
        q,
        thm1_bound: thm1,
        orientable_lb: gb.orientable_lb,
        nonorientable_lb: gb.nonorientable_lb,
        moore_order: moore,
        max_genus_ub: max_genus_ub(n, m),
    })
}
