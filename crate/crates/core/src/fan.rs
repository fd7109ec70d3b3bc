//! Smooth complete fans in `N = Z²`.
//!
//! A fan is stored as its cyclically ordered rays; maximal cone `j` is spanned
//! by `ray_j` and `ray_{j+1 mod N}`. Ray `i` is therefore a face of exactly two
//! maximal cones: cone `i` (as its first ray) and cone `i − 1` (as its second).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{angle_cmp, cross, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    TooFewRays { count: usize },
    NonPrimitive { index: usize },
    NotUnimodular { index: usize, next: usize, cross: BigInt },
    Winding { winding: BigInt },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::TooFewRays { count } => {
                write!(f, "a complete fan needs at least 3 rays, got {count}")
            }
            FanViolation::NonPrimitive { index } => write!(f, "ray {index} is not primitive"),
            FanViolation::NotUnimodular { index, next, cross } => {
                write!(f, "cross(ray {index}, ray {next}) = {cross}, expected 1")
            }
            FanViolation::Winding { winding } => {
                write!(f, "rays wind {winding} times around the origin, expected 1")
            }
        }
    }
}

/// A smooth complete two-dimensional fan with counterclockwise rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<LatticeVector>,
}

impl Fan2D {
    pub fn new(rays: Vec<LatticeVector>) -> Result<Fan2D> {
        validate_fan(rays)
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Equals the number of rays for a complete planar fan.
    pub fn num_cones(&self) -> usize {
        self.rays.len()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.rays.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.rays.len() - 1) % self.rays.len()
    }

    pub fn check_cone(&self, cone: usize) -> Result<()> {
        if cone < self.num_cones() {
            Ok(())
        } else {
            Err(Error::ConeIndex {
                index: cone,
                count: self.num_cones(),
            })
        }
    }

    pub fn check_ray(&self, ray: usize) -> Result<()> {
        if ray < self.num_rays() {
            Ok(())
        } else {
            Err(Error::RayIndex {
                index: ray,
                count: self.num_rays(),
            })
        }
    }

    /// Ray indices generating `cone`, in counterclockwise order.
    pub fn cone_ray_indices(&self, cone: usize) -> (usize, usize) {
        (cone, self.next(cone))
    }

    pub fn cone_contains_ray(&self, cone: usize, ray: usize) -> bool {
        ray == cone || ray == self.next(cone)
    }

    /// The two maximal cones having `ray` as a face: `(ray − 1, ray)`.
    pub fn cones_containing_ray(&self, ray: usize) -> (usize, usize) {
        (self.prev(ray), ray)
    }
}

/// Winding number of a cyclic sequence of nonzero vectors around the origin,
/// stepping between neighbours along the shorter arc (a half turn counts as
/// counterclockwise). Counts signed passes through the positive x-axis.
pub fn winding_number(rays: &[LatticeVector]) -> BigInt {
    let n = rays.len();
    let mut winding = BigInt::zero();
    for j in 0..n {
        let a = &rays[j];
        let b = &rays[(j + 1) % n];
        let c = cross(a, b);
        let ccw = c.is_positive() || (c.is_zero() && a.dot(b).is_negative());
        let cw = c.is_negative();
        match angle_cmp(b, a) {
            Ordering::Less if ccw => winding += 1,
            Ordering::Greater if cw => winding -= 1,
            _ => {}
        }
    }
    winding
}

/// Every way `rays` fails to describe a smooth complete counterclockwise fan.
pub fn fan_violations(rays: &[LatticeVector]) -> Vec<FanViolation> {
    let n = rays.len();
    let mut out = Vec::new();
    if n < 3 {
        out.push(FanViolation::TooFewRays { count: n });
    }
    for (index, r) in rays.iter().enumerate() {
        if !r.is_primitive() {
            out.push(FanViolation::NonPrimitive { index });
        }
    }
    if n == 0 {
        return out;
    }
    for index in 0..n {
        let next = (index + 1) % n;
        let c = cross(&rays[index], &rays[next]);
        if !c.is_one() {
            out.push(FanViolation::NotUnimodular { index, next, cross: c });
        }
    }
    if rays.iter().all(|r| !r.is_zero()) {
        let winding = winding_number(rays);
        if !winding.is_one() {
            out.push(FanViolation::Winding { winding });
        }
    }
    out
}

pub fn validate_fan(rays: Vec<LatticeVector>) -> Result<Fan2D> {
    let violations = fan_violations(&rays);
    if violations.is_empty() {
        Ok(Fan2D { rays })
    } else {
        Err(Error::InvalidFan(violations))
    }
}

/// The fan of the Hirzebruch surface `F_l`, rays `[(1,0), (0,1), (−1,l), (0,−1)]`.
///
/// In the usual odd/even labelling, ray 0..3 are `σ₇, σ₁, σ₃, σ₅` and cone 0..3
/// are `u₀, u₂, u₄, u₆`; cone `u_{2j}` has facets `σ_{2j−1}` and `σ_{2j+1}`.
pub fn hirzebruch_fan(l: &BigInt) -> Result<Fan2D> {
    if *l < BigInt::one() {
        return Err(Error::HirzebruchParameter(l.clone()));
    }
    validate_fan(vec![
        LatticeVector::new(1, 0),
        LatticeVector::new(0, 1),
        LatticeVector::new(-1, l.clone()),
        LatticeVector::new(0, -1),
    ])
}

/// The standard fan of `P²`.
pub fn projective_plane() -> Fan2D {
    Fan2D {
        rays: vec![
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, -1),
        ],
    }
}

/// Dual basis `(m, m′)` of cone `j`: `⟨m, ray_j⟩ = 1`, `⟨m, ray_{j+1}⟩ = 0`,
/// `⟨m′, ray_j⟩ = 0`, `⟨m′, ray_{j+1}⟩ = 1`. The chart is `Spec k[x^m, x^m′]`.
pub fn chart_dual_basis(fan: &Fan2D, cone: usize) -> Result<(LatticeVector, LatticeVector)> {
    fan.check_cone(cone)?;
    let (i, k) = fan.cone_ray_indices(cone);
    let r = fan.ray(i);
    let s = fan.ray(k);
    // cross(r, s) = 1, so the inverse of [r s] is the adjugate.
    let m = LatticeVector::new(s.y.clone(), -&s.x);
    let m_prime = LatticeVector::new(-&r.y, r.x.clone());
    Ok((m, m_prime))
}

/// Blow up the fixed point of `cone` by inserting `ray_j + ray_{j+1}`.
pub fn star_subdivide(fan: &Fan2D, cone: usize) -> Result<Fan2D> {
    fan.check_cone(cone)?;
    let (i, k) = fan.cone_ray_indices(cone);
    let new_ray = fan.ray(i) + fan.ray(k);
    let mut rays = fan.rays.clone();
    rays.insert(cone + 1, new_ray);
    validate_fan(rays)
}

/// A torus orbit of the surface, labelled by its cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orbit {
    Generic,
    Ray(usize),
    Point(usize),
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::Generic => write!(f, "generic"),
            Orbit::Ray(i) => write!(f, "ray {i}"),
            Orbit::Point(j) => write!(f, "point {j}"),
        }
    }
}

/// Assignment of every torus orbit to one maximal cone whose chart contains it.
///
/// Fixed points are always owned by their own cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    owner_of_generic: usize,
    owner_of_ray: Vec<usize>,
}

impl OrbitDecomposition {
    /// Checks the face condition: the owner of ray `i` must contain ray `i`.
    pub fn new(fan: &Fan2D, owner_of_generic: usize, owner_of_ray: Vec<usize>) -> Result<Self> {
        fan.check_cone(owner_of_generic)
            .map_err(|e| Error::InvalidDecomposition(e.to_string()))?;
        if owner_of_ray.len() != fan.num_rays() {
            return Err(Error::InvalidDecomposition(format!(
                "{} ray owners given for {} rays",
                owner_of_ray.len(),
                fan.num_rays()
            )));
        }
        for (ray, &cone) in owner_of_ray.iter().enumerate() {
            if cone >= fan.num_cones() || !fan.cone_contains_ray(cone, ray) {
                return Err(Error::InvalidDecomposition(format!(
                    "ray {ray} is not a face of cone {cone}"
                )));
            }
        }
        Ok(Self {
            owner_of_generic,
            owner_of_ray,
        })
    }

    pub fn owner_of_generic(&self) -> usize {
        self.owner_of_generic
    }

    pub fn owner_of_ray(&self, ray: usize) -> usize {
        self.owner_of_ray[ray]
    }

    pub fn owner_of_cone(&self, cone: usize) -> usize {
        cone
    }

    pub fn num_cones(&self) -> usize {
        self.owner_of_ray.len()
    }

    /// Re-validates against `fan`, for decompositions built for another fan.
    pub fn check(&self, fan: &Fan2D) -> Result<()> {
        OrbitDecomposition::new(fan, self.owner_of_generic, self.owner_of_ray.clone()).map(|_| ())
    }

    pub fn owner(&self, orbit: Orbit) -> usize {
        match orbit {
            Orbit::Generic => self.owner_of_generic,
            Orbit::Ray(i) => self.owner_of_ray(i),
            Orbit::Point(j) => self.owner_of_cone(j),
        }
    }

    /// All `2N + 1` orbits of the surface.
    pub fn orbits(&self) -> Vec<Orbit> {
        let n = self.owner_of_ray.len();
        std::iter::once(Orbit::Generic)
            .chain((0..n).map(Orbit::Ray))
            .chain((0..n).map(Orbit::Point))
            .collect()
    }

    /// Orbits owned by `cone`, in the order generic, rays, point.
    pub fn owned_by(&self, cone: usize) -> Vec<Orbit> {
        self.orbits().into_iter().filter(|&o| self.owner(o) == cone).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RayRule {
    /// Cone `j` owns `ray_j`.
    #[default]
    FirstRay,
    /// Cone `j` owns `ray_{j+1}`.
    SuccessorRay,
}

/// Named decomposition rules; tags are `default`, `successor`, `generic-at=K`
/// and `successor,generic-at=K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DecompositionVariant {
    pub ray_rule: RayRule,
    pub generic_owner: usize,
}

impl DecompositionVariant {
    pub const DEFAULT: DecompositionVariant = DecompositionVariant {
        ray_rule: RayRule::FirstRay,
        generic_owner: 0,
    };

    pub fn successor() -> Self {
        Self {
            ray_rule: RayRule::SuccessorRay,
            generic_owner: 0,
        }
    }

    pub fn generic_at(cone: usize) -> Self {
        Self {
            ray_rule: RayRule::FirstRay,
            generic_owner: cone,
        }
    }
}

impl fmt::Display for DecompositionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ray_rule, self.generic_owner) {
            (RayRule::FirstRay, 0) => write!(f, "default"),
            (RayRule::SuccessorRay, 0) => write!(f, "successor"),
            (RayRule::FirstRay, k) => write!(f, "generic-at={k}"),
            (RayRule::SuccessorRay, k) => write!(f, "successor,generic-at={k}"),
        }
    }
}

impl FromStr for DecompositionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown decomposition variant {s:?}"));
        let mut variant = DecompositionVariant::DEFAULT;
        let mut seen_rule = false;
        let mut seen_generic = false;
        for part in s.split(',') {
            match part.trim() {
                "default" if !seen_rule && !seen_generic => seen_rule = true,
                "successor" if !seen_rule => {
                    variant.ray_rule = RayRule::SuccessorRay;
                    seen_rule = true;
                }
                other => {
                    let k = other.strip_prefix("generic-at=").ok_or_else(bad)?;
                    if seen_generic {
                        return Err(bad());
                    }
                    variant.generic_owner = k.trim().parse().map_err(|_| bad())?;
                    seen_generic = true;
                }
            }
        }
        Ok(variant)
    }
}

pub fn standard_decomposition(fan: &Fan2D, variant: DecompositionVariant) -> Result<OrbitDecomposition> {
    let owners = (0..fan.num_rays())
        .map(|i| match variant.ray_rule {
            RayRule::FirstRay => i,
            RayRule::SuccessorRay => fan.prev(i),
        })
        .collect();
    OrbitDecomposition::new(fan, variant.generic_owner, owners)
}
