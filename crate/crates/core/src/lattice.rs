//! Exact lattice and rational geometry in the plane.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! There is no floating point anywhere in the crate's math; the only
//! `f64` conversions live in the SVG renderer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector in `Z²`, used both for rays in `N` and for monomial exponents in `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// The pairing `⟨self, other⟩ = x·x' + y·y'`.
    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `gcd(x, y) == 1`.
    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        vec![self.x.clone(), self.y.clone()]
    }

    pub fn to_point(&self) -> RationalPoint {
        RationalPoint::new(
            BigRational::from_integer(self.x.clone()),
            BigRational::from_integer(self.y.clone()),
        )
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        &self + &rhs
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        &self - &rhs
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

/// `u₁v₂ − u₂v₁`.
pub fn cross(u: &LatticeVector, v: &LatticeVector) -> BigInt {
    &u.x * &v.y - &u.y * &v.x
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// The empty matrix has determinant 1.
pub fn det_n(matrix: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = matrix.len();
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
    }
    if n == 0 {
        return Ok(BigInt::one());
    }

    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Bareiss: the division is exact.
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Signed volume `(1/n!)·det` of the simplex spanned by the origin and the
/// given vectors. The i-th input vector is the i-th COLUMN of the matrix.
pub fn signed_simplex_volume(columns: &[Vec<BigInt>]) -> Result<BigRational> {
    let n = columns.len();
    for col in columns {
        if col.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: col.len(),
            });
        }
    }
    let matrix: Vec<Vec<BigInt>> = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let det = det_n(&matrix)?;
    Ok(BigRational::new(det, factorial(n)))
}

/// Planar specialisation of [`signed_simplex_volume`]: `cross(u, v) / 2`.
pub fn signed_triangle_area(u: &LatticeVector, v: &LatticeVector) -> BigRational {
    BigRational::new(cross(u, v), BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    pub fn scale(&self, k: &BigRational) -> RationalPoint {
        RationalPoint::new(&self.x * k, &self.y * k)
    }

    /// Returns the lattice vector if both coordinates are integers.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        (self.x.is_integer() && self.y.is_integer())
            .then(|| LatticeVector::new(self.x.to_integer(), self.y.to_integer()))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(b − a) × (c − a)`; positive for a left turn.
fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> BigRational {
    let integral = [a, b, c].iter().all(|p| p.x.is_integer() && p.y.is_integer());
    if integral {
        let (ax, ay) = (a.x.numer(), a.y.numer());
        let t = (b.x.numer() - ax) * (c.y.numer() - ay) - (b.y.numer() - ay) * (c.x.numer() - ax);
        return BigRational::from_integer(t);
    }
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Signed shoelace area of a closed vertex sequence.
pub fn shoelace(vertices: &[RationalPoint]) -> BigRational {
    let n = vertices.len();
    let mut twice = BigRational::zero();
    for i in 0..n {
        let p = &vertices[i];
        let q = &vertices[(i + 1) % n];
        twice += &p.x * &q.y - &q.x * &p.y;
    }
    twice / BigRational::from_integer(2.into())
}

/// A convex polygon with counterclockwise vertices and cached area.
///
/// One vertex is a point and two vertices are a segment; both have area 0.
/// Vertex lists produced by [`convex_hull_2d`] start at the lexicographically
/// smallest vertex, so equal polygons compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<RationalPoint>,
    area: BigRational,
}

impl Polygon {
    /// Validates a strictly convex counterclockwise vertex cycle.
    pub fn from_ccw_vertices(vertices: Vec<RationalPoint>) -> Result<Polygon> {
        match vertices.len() {
            0 => return Err(Error::EmptyInput),
            1 => {}
            2 => {
                if vertices[0] == vertices[1] {
                    return Err(Error::InvalidPolygon("repeated vertex".into()));
                }
            }
            n => {
                for i in 0..n {
                    let turn = orient(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
                    if !turn.is_positive() {
                        return Err(Error::InvalidPolygon(format!(
                            "vertex {} is not a strict left turn",
                            (i + 1) % n
                        )));
                    }
                }
                // Strict left turns everywhere still admit a doubly wound star.
                let winding_ok = shoelace(&vertices).is_positive()
                    && (0..n).all(|i| {
                        (0..n)
                            .all(|j| orient(&vertices[i], &vertices[(i + 1) % n], &vertices[j]) >= BigRational::zero())
                    });
                if !winding_ok {
                    return Err(Error::InvalidPolygon("vertex cycle is not convex".into()));
                }
            }
        }
        let area = shoelace(&vertices);
        Ok(Polygon { vertices, area })
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn area(&self) -> &BigRational {
        &self.area
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Integer vertices, if every vertex is a lattice point.
    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices.iter().map(RationalPoint::to_lattice).collect()
    }

    /// Homothety about the origin. A positive factor keeps the vertex order valid.
    pub fn scale(&self, k: &BigRational) -> Result<Polygon> {
        if !k.is_positive() {
            return Err(Error::InvalidPolygon("scale factor must be positive".into()));
        }
        Ok(Polygon {
            vertices: self.vertices.iter().map(|p| p.scale(k)).collect(),
            area: &self.area * k * k,
        })
    }
}

/// Counterclockwise convex hull by Andrew's monotone chain.
///
/// Collinear boundary points are dropped. Degenerate inputs give a one-point
/// or two-point polygon with area 0.
pub fn convex_hull_2d(points: &[RationalPoint]) -> Result<Polygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pts: Vec<RationalPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return Polygon::from_ccw_vertices(pts);
    }

    let mut lower: Vec<RationalPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    Polygon::from_ccw_vertices(lower)
}

/// Shoelace area recomputed from the vertices.
pub fn polygon_area(p: &Polygon) -> BigRational {
    shoelace(p.vertices())
}

/// Total order on directions by angle in `[0, 2π)`, used for winding counts.
pub(crate) fn angle_cmp(u: &LatticeVector, v: &LatticeVector) -> Ordering {
    let half = |w: &LatticeVector| -> u8 {
        if w.y.is_positive() || (w.y.is_zero() && w.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| BigInt::zero().cmp(&cross(u, v)))
}
