//! The 2-adic norm on the rationals, the A/B/C coloring of rational points,
//! the two coloring lemmas as checkable predicates, and a rainbow-triangle
//! scanner for rational drawings.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{triangle_area, QPoint};
use crate::error::{Error, Result};
use crate::model::ConstrainedTriangulation;

/// `‖a‖ = 2^(−v₂(a))`, with `‖0‖ = 0`. Variants order by size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoAdicNorm {
    Zero,
    /// `2^k`.
    Pow(i64),
}

impl TwoAdicNorm {
    pub const ONE: TwoAdicNorm = TwoAdicNorm::Pow(0);

    pub fn of(a: &BigRational) -> Self {
        match v2(a) {
            None => TwoAdicNorm::Zero,
            Some(v) => TwoAdicNorm::Pow(-v),
        }
    }

    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (TwoAdicNorm::Pow(a), TwoAdicNorm::Pow(b)) => TwoAdicNorm::Pow(a + b),
            _ => TwoAdicNorm::Zero,
        }
    }

    pub fn to_rational(self) -> BigRational {
        match self {
            TwoAdicNorm::Zero => BigRational::zero(),
            TwoAdicNorm::Pow(k) if k >= 0 => BigRational::from_integer(BigInt::one() << k as usize),
            TwoAdicNorm::Pow(k) => BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize),
        }
    }
}

impl fmt::Display for TwoAdicNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

fn v2_int(n: &BigInt) -> i64 {
    n.trailing_zeros().map_or(0, |z| z as i64)
}

/// 2-adic valuation; `None` for zero.
pub fn v2(a: &BigRational) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    Some(v2_int(a.numer()) - v2_int(a.denom()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpernerColor {
    A,
    B,
    C,
}

impl fmt::Display for SpernerColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpernerColor::A => "A",
            SpernerColor::B => "B",
            SpernerColor::C => "C",
        };
        f.write_str(s)
    }
}

/// A if `‖x‖ ≥ ‖y‖` and `‖x‖ ≥ 1`; else B if `‖y‖ ≥ 1`; else C.
pub fn color(pt: &QPoint) -> SpernerColor {
    let nx = TwoAdicNorm::of(&pt.0);
    let ny = TwoAdicNorm::of(&pt.1);
    if nx >= ny && nx >= TwoAdicNorm::ONE {
        SpernerColor::A
    } else if ny >= TwoAdicNorm::ONE {
        SpernerColor::B
    } else {
        SpernerColor::C
    }
}

/// Outcome of a lemma check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCheck {
    Holds,
    Fails,
    NotApplicable,
}

impl LemmaCheck {
    /// True unless the lemma was applicable and failed.
    pub fn passed(self) -> bool {
        self != LemmaCheck::Fails
    }

    fn from_bool(b: bool) -> Self {
        if b {
            LemmaCheck::Holds
        } else {
            LemmaCheck::Fails
        }
    }
}

/// For C-colored `psi`, `phi` and `phi + psi` share a color.
pub fn check_translation_lemma(phi: &QPoint, psi: &QPoint) -> LemmaCheck {
    if color(psi) != SpernerColor::C {
        return LemmaCheck::NotApplicable;
    }
    let sum = (&phi.0 + &psi.0, &phi.1 + &psi.1);
    LemmaCheck::from_bool(color(phi) == color(&sum))
}

pub fn is_rainbow(a: &QPoint, b: &QPoint, c: &QPoint) -> bool {
    let mut cs = [color(a), color(b), color(c)];
    cs.sort();
    cs == [SpernerColor::A, SpernerColor::B, SpernerColor::C]
}

/// An ABC-colored triangle has area of norm greater than 1.
pub fn check_area_lemma(a: &QPoint, b: &QPoint, c: &QPoint) -> LemmaCheck {
    if !is_rainbow(a, b, c) {
        return LemmaCheck::NotApplicable;
    }
    LemmaCheck::from_bool(TwoAdicNorm::of(&triangle_area(a, b, c)) > TwoAdicNorm::ONE)
}

/// The affine map sending `p, q, s` to `(0,0), (1,0), (0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameMap {
    origin: QPoint,
    /// Inverse of the matrix with columns `q − p` and `s − p`, row-major.
    inv: [[BigRational; 2]; 2],
}

impl FrameMap {
    pub fn new(p: &QPoint, q: &QPoint, s: &QPoint) -> Result<Self> {
        let (a, c) = (&q.0 - &p.0, &q.1 - &p.1);
        let (b, d) = (&s.0 - &p.0, &s.1 - &p.1);
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(Error::DegenerateFrame);
        }
        let inv = [[&d / &det, -(&b / &det)], [-(&c / &det), &a / &det]];
        Ok(FrameMap { origin: p.clone(), inv })
    }

    pub fn apply(&self, x: &QPoint) -> QPoint {
        let dx = &x.0 - &self.origin.0;
        let dy = &x.1 - &self.origin.1;
        (
            &self.inv[0][0] * &dx + &self.inv[0][1] * &dy,
            &self.inv[1][0] * &dx + &self.inv[1][1] * &dy,
        )
    }
}

/// Vertex positions after the frame map, indexed by vertex.
pub fn normalize_drawing(ct: &ConstrainedTriangulation, points: &[QPoint]) -> Result<Vec<QPoint>> {
    let [p, q, _, s] = ct.corners();
    let m = FrameMap::new(&points[p], &points[q], &points[s])?;
    Ok(points.iter().map(|x| m.apply(x)).collect())
}

/// Indices of all ABC-colored triangles of a normalized honest drawing.
pub fn rainbow_triangles(ct: &ConstrainedTriangulation, points: &[QPoint]) -> Result<Vec<usize>> {
    if !ct.is_honest() {
        return Err(Error::NotHonest);
    }
    let pts = normalize_drawing(ct, points)?;
    Ok(ct
        .triangles()
        .iter()
        .enumerate()
        .filter(|(_, t)| is_rainbow(&pts[t.verts[0]], &pts[t.verts[1]], &pts[t.verts[2]]))
        .map(|(i, _)| i)
        .collect())
}

/// The first ABC-colored triangle, in input order.
pub fn find_rainbow_triangle(ct: &ConstrainedTriangulation, points: &[QPoint]) -> Result<String> {
    let found = rainbow_triangles(ct, points)?;
    let first = found
        .first()
        .ok_or_else(|| Error::VerificationFailed("no rainbow triangle".into()))?;
    Ok(ct.triangles()[*first].id.clone())
}
