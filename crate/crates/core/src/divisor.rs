//! Torus-invariant divisors, their local monomial equations, and divisor polytopes.
//!
//! Sign convention: on cone `j` the divisor `D = Σ d_i D_i` is cut out by the
//! monomial `h_j` with `⟨h_j, ray⟩ = −d_ray` for both rays of the cone. The
//! divisor polytope `P_D = {u : ⟨u, ray_i⟩ ≥ −d_i ∀i}` is built from the same
//! monomials.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{chart_dual_basis, Fan2D};
use crate::lattice::{convex_hull_2d, cross, LatticeVector, Polygon, RationalPoint};

/// `D = Σ d_i D_i`, one coefficient per ray of the fan it was built against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusDivisor {
    coeffs: Vec<BigInt>,
}

impl TorusDivisor {
    pub fn new(fan: &Fan2D, coeffs: Vec<BigInt>) -> Result<TorusDivisor> {
        if coeffs.len() != fan.num_rays() {
            return Err(Error::DivisorLength {
                expected: fan.num_rays(),
                got: coeffs.len(),
            });
        }
        Ok(TorusDivisor { coeffs })
    }

    pub fn from_i64(fan: &Fan2D, coeffs: &[i64]) -> Result<TorusDivisor> {
        Self::new(fan, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(fan: &Fan2D) -> TorusDivisor {
        TorusDivisor {
            coeffs: vec![BigInt::zero(); fan.num_rays()],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, ray: usize) -> &BigInt {
        &self.coeffs[ray]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_fan(&self, fan: &Fan2D) -> Result<()> {
        if self.coeffs.len() == fan.num_rays() {
            Ok(())
        } else {
            Err(Error::DivisorLength {
                expected: fan.num_rays(),
                got: self.coeffs.len(),
            })
        }
    }
}

/// A Laurent monomial `x^a y^b`, identified with its exponent in `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub LatticeVector);

impl Monomial {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Monomial(LatticeVector::new(x, y))
    }

    pub fn one() -> Self {
        Monomial(LatticeVector::zero())
    }

    pub fn exponent(&self) -> &LatticeVector {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    /// `self / other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(&self.0 - &other.0)
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial(&self.0 + &other.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let LatticeVector { x, y } = &self.0;
        let var = |name: &str, e: &BigInt| -> Option<String> {
            if e.is_zero() {
                None
            } else if *e == BigInt::from(1) {
                Some(name.to_string())
            } else {
                Some(format!("{name}^{e}"))
            }
        };
        let parts: Vec<String> = [var("x", x), var("y", y)].into_iter().flatten().collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Local equations `h_j`, one per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierCocycle {
    local: Vec<Monomial>,
}

impl CartierCocycle {
    pub fn local_equations(&self) -> &[Monomial] {
        &self.local
    }

    pub fn h(&self, cone: usize) -> &Monomial {
        &self.local[cone]
    }

    pub fn len(&self) -> usize {
        self.local.len()
    }

    pub fn is_empty(&self) -> bool {
        self.local.is_empty()
    }
}

pub fn cartier_data(fan: &Fan2D, d: &TorusDivisor) -> Result<CartierCocycle> {
    d.check_fan(fan)?;
    let local = (0..fan.num_cones())
        .map(|j| {
            let (m, m_prime) = chart_dual_basis(fan, j)?;
            let (r, s) = fan.cone_ray_indices(j);
            let h = m.scale(&-d.coeff(r)) + m_prime.scale(&-d.coeff(s));
            Ok(Monomial(h))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CartierCocycle { local })
}

/// A failed inequality `⟨h_cone, ray⟩ ≥ −d_ray` (or `>` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityWitness {
    pub cone: usize,
    pub ray: usize,
    pub pairing: BigInt,
    pub bound: BigInt,
    pub strict: bool,
}

impl InequalityWitness {
    /// `⟨h_cone, ray⟩ + d_ray`.
    pub fn margin(&self) -> BigInt {
        &self.pairing - &self.bound
    }
}

impl fmt::Display for InequalityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { ">" } else { ">=" };
        write!(
            f,
            "cone {}, ray {}: <h, ray> = {} but needs {} {}",
            self.cone, self.ray, self.pairing, op, self.bound
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationCheck {
    pub generated: bool,
    pub witnesses: Vec<InequalityWitness>,
}

fn failed_inequalities(fan: &Fan2D, d: &TorusDivisor, strict: bool) -> Result<Vec<InequalityWitness>> {
    let c = cartier_data(fan, d)?;
    let mut out = Vec::new();
    for cone in 0..fan.num_cones() {
        for ray in 0..fan.num_rays() {
            if strict && fan.cone_contains_ray(cone, ray) {
                continue;
            }
            let pairing = c.h(cone).exponent().dot(fan.ray(ray));
            let bound = -d.coeff(ray);
            let ok = if strict { pairing > bound } else { pairing >= bound };
            if !ok {
                out.push(InequalityWitness {
                    cone,
                    ray,
                    pairing,
                    bound,
                    strict,
                });
            }
        }
    }
    Ok(out)
}

/// Every `h_j` must satisfy all `N` inequalities of `P_D`.
pub fn is_globally_generated(fan: &Fan2D, d: &TorusDivisor) -> Result<GenerationCheck> {
    let witnesses = failed_inequalities(fan, d, false)?;
    Ok(GenerationCheck {
        generated: witnesses.is_empty(),
        witnesses,
    })
}

/// Strict inequalities for every ray outside each cone; empty iff `D` is ample.
pub fn ampleness_witnesses(fan: &Fan2D, d: &TorusDivisor) -> Result<Vec<InequalityWitness>> {
    failed_inequalities(fan, d, true)
}

pub fn is_ample(fan: &Fan2D, d: &TorusDivisor) -> Result<bool> {
    Ok(ampleness_witnesses(fan, d)?.is_empty())
}

pub fn ensure_ample(fan: &Fan2D, d: &TorusDivisor) -> Result<()> {
    let w = ampleness_witnesses(fan, d)?;
    if w.is_empty() {
        Ok(())
    } else {
        Err(Error::NotAmple(w))
    }
}

/// `P_D` as the hull of the local equations; requires global generation.
pub fn divisor_polytope(fan: &Fan2D, d: &TorusDivisor) -> Result<Polygon> {
    let check = is_globally_generated(fan, d)?;
    if !check.generated {
        return Err(Error::NotGloballyGenerated(check.witnesses));
    }
    let c = cartier_data(fan, d)?;
    let points: Vec<RationalPoint> = c.local.iter().map(|h| h.exponent().to_point()).collect();
    convex_hull_2d(&points)
}

/// `m·P_D` by half-plane intersection, valid for any divisor. `None` if empty.
pub fn polytope_from_inequalities(fan: &Fan2D, d: &TorusDivisor, m: &BigInt) -> Result<Option<Polygon>> {
    d.check_fan(fan)?;
    let rays = fan.rays();
    let bounds: Vec<BigRational> = d.coeffs().iter().map(|c| BigRational::from_integer(-(c * m))).collect();
    let feasible = |p: &RationalPoint| {
        rays.iter().zip(&bounds).all(|(r, b)| {
            let pair = &p.x * BigRational::from_integer(r.x.clone()) + &p.y * BigRational::from_integer(r.y.clone());
            pair >= *b
        })
    };
    let mut candidates = Vec::new();
    for i in 0..rays.len() {
        for k in i + 1..rays.len() {
            let det = cross(&rays[i], &rays[k]);
            if det.is_zero() {
                continue;
            }
            let det = BigRational::from_integer(det);
            let (ri, rk) = (&rays[i], &rays[k]);
            let (ci, ck) = (&bounds[i], &bounds[k]);
            let to_q = |v: &BigInt| BigRational::from_integer(v.clone());
            let x = (ci * to_q(&rk.y) - ck * to_q(&ri.y)) / &det;
            let y = (ck * to_q(&ri.x) - ci * to_q(&rk.x)) / &det;
            let p = RationalPoint::new(x, y);
            if feasible(&p) {
                candidates.push(p);
            }
        }
    }
    if candidates.is_empty() {
        return Ok(None);
    }
    convex_hull_2d(&candidates).map(Some)
}

/// Lattice points of `m·P_D`, i.e. the monomial basis of `H⁰(X, O(mD))`.
pub fn section_lattice_points(fan: &Fan2D, d: &TorusDivisor, m: &BigInt) -> Result<BTreeSet<Monomial>> {
    if m.is_negative() {
        return Err(Error::Parse(format!("section level must be nonnegative, got {m}")));
    }
    let Some(poly) = polytope_from_inequalities(fan, d, m)? else {
        return Ok(BTreeSet::new());
    };
    let vs = poly.vertices();
    let min_x = vs.iter().map(|p| p.x.floor().to_integer()).min().unwrap_or_default();
    let max_x = vs.iter().map(|p| p.x.ceil().to_integer()).max().unwrap_or_default();
    let min_y = vs.iter().map(|p| p.y.floor().to_integer()).min().unwrap_or_default();
    let max_y = vs.iter().map(|p| p.y.ceil().to_integer()).max().unwrap_or_default();

    let mut out = BTreeSet::new();
    let mut x = min_x;
    while x <= max_x {
        let mut y = min_y.clone();
        while y <= max_y {
            let u = LatticeVector::new(x.clone(), y.clone());
            let inside = fan.rays().iter().zip(d.coeffs()).all(|(r, c)| u.dot(r) >= -(c * m));
            if inside {
                out.insert(Monomial(u));
            }
            y += 1;
        }
        x += 1;
    }
    Ok(out)
}

/// Transition function `f_{αβ} = h_β / h_α`.
pub fn cech_cocycle(c: &CartierCocycle, alpha: usize, beta: usize) -> Result<Monomial> {
    for idx in [alpha, beta] {
        if idx >= c.len() {
            return Err(Error::ConeIndex {
                index: idx,
                count: c.len(),
            });
        }
    }
    Ok(c.h(beta).quotient(c.h(alpha)))
}

/// Number of lattice points on the boundary of a lattice polygon.
pub fn boundary_lattice_points(vertices: &[LatticeVector]) -> BigInt {
    match vertices.len() {
        0 => BigInt::zero(),
        1 => BigInt::from(1),
        n => (0..n)
            .map(|i| {
                let e = &vertices[(i + 1) % n] - &vertices[i];
                e.x.gcd(&e.y)
            })
            .sum(),
    }
}
