//! Rank-2 valuations attached to torus-invariant flags `X ⊃ D_ray ⊃ point(cone)`.
//!
//! On monomials the valuation is `e ↦ (⟨e, ray⟩, ⟨e, other⟩)` where `other` is
//! the second generator of the flag's cone. The uniformizers are the chart's
//! dual-basis monomials, which fixes the valuation uniquely.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::{cartier_data, ensure_ample, section_lattice_points, Monomial, TorusDivisor};
use crate::error::{Error, Result};
use crate::fan::{chart_dual_basis, Fan2D};
use crate::lattice::{convex_hull_2d, cross, LatticeVector, Polygon, RationalPoint};

/// A flag `X ⊃ V(ray) ⊃ V(cone)` with `ray` a face of `cone`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TFlag {
    pub ray: usize,
    pub cone: usize,
}

impl TFlag {
    pub fn new(fan: &Fan2D, ray: usize, cone: usize) -> Result<TFlag> {
        let flag = TFlag { ray, cone };
        flag.check(fan)?;
        Ok(flag)
    }

    pub fn check(&self, fan: &Fan2D) -> Result<()> {
        fan.check_ray(self.ray)?;
        fan.check_cone(self.cone)?;
        if fan.cone_contains_ray(self.cone, self.ray) {
            Ok(())
        } else {
            Err(Error::InvalidFlag {
                ray: self.ray,
                cone: self.cone,
            })
        }
    }

    /// The generator of the flag's cone that is not the flag ray.
    pub fn other_ray(&self, fan: &Fan2D) -> usize {
        let (r, s) = fan.cone_ray_indices(self.cone);
        if self.ray == r {
            s
        } else {
            r
        }
    }
}

impl fmt::Display for TFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ray {}, cone {})", self.ray, self.cone)
    }
}

/// `w = (w₁, w₂)` with values in `Z²_lex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Valuation {
    pub first_ray: LatticeVector,
    pub second_ray: LatticeVector,
    /// Local equation of the flag divisor in the chart: `⟨π₁, first⟩ = 1`, `⟨π₁, second⟩ = 0`.
    pub first_uniformizer: LatticeVector,
    /// Coordinate `t` on the flag divisor vanishing at the fixed point.
    pub residue_coordinate: LatticeVector,
}

impl Rank2Valuation {
    pub fn value(&self, m: &Monomial) -> (BigInt, BigInt) {
        (m.exponent().dot(&self.first_ray), m.exponent().dot(&self.second_ray))
    }

    pub fn value_vector(&self, m: &Monomial) -> LatticeVector {
        let (a, b) = self.value(m);
        LatticeVector::new(a, b)
    }

    /// `cross(first_ray, second_ray)`, always ±1.
    pub fn orientation(&self) -> BigInt {
        cross(&self.first_ray, &self.second_ray)
    }
}

pub fn flag_valuation(fan: &Fan2D, flag: TFlag) -> Result<Rank2Valuation> {
    flag.check(fan)?;
    let (m, m_prime) = chart_dual_basis(fan, flag.cone)?;
    let other = flag.other_ray(fan);
    let (first_uniformizer, residue_coordinate) = if flag.ray == flag.cone {
        (m, m_prime)
    } else {
        (m_prime, m)
    };
    Ok(Rank2Valuation {
        first_ray: fan.ray(flag.ray).clone(),
        second_ray: fan.ray(other).clone(),
        first_uniformizer,
        residue_coordinate,
    })
}

pub fn value(w: &Rank2Valuation, m: &Monomial) -> (BigInt, BigInt) {
    w.value(m)
}

/// Hull of `w(h_j)` over all cones; for toric `D` this is the whole
/// Newton–Okounkov body of the flag.
pub fn trivialization_polytope(fan: &Fan2D, d: &TorusDivisor, flag: TFlag) -> Result<Polygon> {
    ensure_ample(fan, d)?;
    let w = flag_valuation(fan, flag)?;
    let c = cartier_data(fan, d)?;
    let points: Vec<RationalPoint> = c
        .local_equations()
        .iter()
        .map(|h| w.value_vector(h).to_point())
        .collect();
    convex_hull_2d(&points)
}

/// One element `(w(s), m)` of the graded semigroup.
pub type SemigroupPoint = (LatticeVector, BigInt);

/// `{(w(s), m) : s a section of O(mD), 0 ≤ m ≤ m_max}`.
pub fn graded_semigroup(
    fan: &Fan2D,
    d: &TorusDivisor,
    flag: TFlag,
    m_max: &BigInt,
) -> Result<BTreeSet<SemigroupPoint>> {
    let w = flag_valuation(fan, flag)?;
    let mut out = BTreeSet::new();
    let mut m = BigInt::zero();
    while m <= *m_max {
        for s in section_lattice_points(fan, d, &m)? {
            out.insert((w.value_vector(&s), m.clone()));
        }
        m += 1;
    }
    Ok(out)
}

/// `(1/m)·hull` of the level-`m` points of a semigroup; `None` if the level is empty.
pub fn level_polytope(semigroup: &BTreeSet<SemigroupPoint>, m: &BigInt) -> Result<Option<Polygon>> {
    if !m.is_positive() {
        return Err(Error::Parse(format!("level must be positive, got {m}")));
    }
    let points: Vec<RationalPoint> = semigroup
        .iter()
        .filter(|(_, level)| level == m)
        .map(|(v, _)| v.to_point())
        .collect();
    if points.is_empty() {
        return Ok(None);
    }
    let inv = BigRational::new(BigInt::one(), m.clone());
    Ok(Some(convex_hull_2d(&points)?.scale(&inv)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::divisor_polytope;
    use crate::fan::{hirzebruch_fan, projective_plane, star_subdivide};
    use crate::lattice::polygon_area;
    use proptest::prelude::*;

    fn hirz(l: i64) -> Fan2D {
        hirzebruch_fan(&BigInt::from(l)).unwrap()
    }

    fn lv(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pair(a: i64, b: i64) -> (BigInt, BigInt) {
        (a.into(), b.into())
    }

    /// Valuation by re-expressing the exponent in the chart basis `(π₁, t)`
    /// and peeling off `π₁` first, i.e. the iterative definition.
    fn iterative_value(w: &Rank2Valuation, m: &Monomial) -> (BigInt, BigInt) {
        let e = m.exponent();
        let det = cross(&w.first_uniformizer, &w.residue_coordinate);
        let v1 = cross(e, &w.residue_coordinate) / &det;
        let rest = e - &w.first_uniformizer.scale(&v1);
        let v2 = cross(&w.first_uniformizer, &rest) / &det;
        assert_eq!(w.residue_coordinate.scale(&v2), rest);
        (v1, v2)
    }

    #[test]
    fn flag_valuation_examples() {
        for l in 1..4i64 {
            let fan = hirz(l);
            // (σ₃, u₂)
            let w = flag_valuation(&fan, TFlag::new(&fan, 2, 1).unwrap()).unwrap();
            assert_eq!((w.first_ray.clone(), w.second_ray.clone()), (lv(-1, l), lv(0, 1)));
            assert_eq!(w.first_uniformizer, lv(-1, 0));
            assert_eq!(w.residue_coordinate, lv(l, 1));
            // (σ₅, u₄)
            let w = flag_valuation(&fan, TFlag::new(&fan, 3, 2).unwrap()).unwrap();
            assert_eq!((w.first_ray.clone(), w.second_ray.clone()), (lv(0, -1), lv(-1, l)));
        }
        let p2 = projective_plane();
        let w = flag_valuation(&p2, TFlag::new(&p2, 0, 0).unwrap()).unwrap();
        assert_eq!((w.first_ray, w.second_ray), (lv(1, 0), lv(0, 1)));
    }

    #[test]
    fn invalid_flags_rejected() {
        let fan = hirz(1);
        assert_eq!(
            TFlag::new(&fan, 0, 2).unwrap_err(),
            Error::InvalidFlag { ray: 0, cone: 2 }
        );
        assert!(TFlag::new(&fan, 4, 0).is_err());
        assert!(TFlag::new(&fan, 0, 4).is_err());
        assert!(flag_valuation(&fan, TFlag { ray: 1, cone: 3 }).is_err());
    }

    #[test]
    fn value_examples() {
        let (l, a, b) = (2i64, 3i64, 11i64);
        let fan = hirz(l);
        let w = flag_valuation(&fan, TFlag::new(&fan, 2, 1).unwrap()).unwrap();
        assert_eq!(w.value(&Monomial::new(b, 0)), pair(-b, 0));
        assert_eq!(w.value(&Monomial::new(b - l * a, -a)), pair(-b, -a));
        assert_eq!(w.value(&Monomial::new(0, -a)), pair(-l * a, -a));
        assert_eq!(w.orientation(), BigInt::from(-1));
    }

    #[test]
    fn trivialization_polytope_examples() {
        let fan = hirz(1);
        let d = TorusDivisor::from_i64(&fan, &[0, 1, 2, 0]).unwrap();
        let p = trivialization_polytope(&fan, &d, TFlag::new(&fan, 1, 0).unwrap()).unwrap();
        let expected = convex_hull_2d(
            &[(-1, 0), (-1, 1), (0, 2), (0, 0)]
                .iter()
                .map(|&(x, y)| RationalPoint::from_ints(x, y))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.area(), &q(3, 2));
        let p2 = trivialization_polytope(&fan, &d, TFlag::new(&fan, 2, 1).unwrap()).unwrap();
        assert_ne!(p, p2);
        assert_eq!(p2.area(), &q(3, 2));

        let zero = TorusDivisor::zero(&fan);
        assert!(matches!(
            trivialization_polytope(&fan, &zero, TFlag::new(&fan, 0, 0).unwrap()),
            Err(Error::NotAmple(_))
        ));
    }

    #[test]
    fn semigroup_examples() {
        let fan = hirz(1);
        let d = TorusDivisor::from_i64(&fan, &[0, 1, 2, 0]).unwrap();
        let flag = TFlag::new(&fan, 1, 0).unwrap();
        let g0 = graded_semigroup(&fan, &d, flag, &BigInt::zero()).unwrap();
        assert_eq!(g0.into_iter().collect::<Vec<_>>(), vec![(lv(0, 0), BigInt::zero())]);

        let g1 = graded_semigroup(&fan, &d, flag, &BigInt::one()).unwrap();
        let level1: BTreeSet<LatticeVector> = g1.iter().filter(|(_, m)| m.is_one()).map(|(v, _)| v.clone()).collect();
        // images of (0,0),(1,0),(2,0),(0,-1),(1,-1) under e ↦ (e_y, e_x)
        let expected: BTreeSet<LatticeVector> = [(0, 0), (0, 1), (0, 2), (-1, 0), (-1, 1)]
            .iter()
            .map(|&(x, y)| lv(x, y))
            .collect();
        assert_eq!(level1, expected);

        let hull = level_polytope(&g1, &BigInt::one()).unwrap().unwrap();
        assert_eq!(hull, trivialization_polytope(&fan, &d, flag).unwrap());
    }

    #[test]
    fn level_polytopes_match_trivialization_polytope() {
        let fan = star_subdivide(&hirz(2), 2).unwrap();
        let d = TorusDivisor::from_i64(&fan, &[0, 0, 1, 2, 2]).unwrap();
        assert!(crate::divisor::is_ample(&fan, &d).unwrap());
        for ray in 0..fan.num_rays() {
            for cone in [fan.prev(ray), ray] {
                let flag = TFlag::new(&fan, ray, cone).unwrap();
                let g = graded_semigroup(&fan, &d, flag, &BigInt::from(4)).unwrap();
                let target = trivialization_polytope(&fan, &d, flag).unwrap();
                assert_eq!(target.area(), &polygon_area(&divisor_polytope(&fan, &d).unwrap()));
                for m in 1..=4 {
                    assert_eq!(level_polytope(&g, &BigInt::from(m)).unwrap().unwrap(), target);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn value_is_a_monoid_homomorphism(
            l in 1i64..5, ray in 0usize..4, side in any::<bool>(),
            e1 in (-20i64..20, -20i64..20), e2 in (-20i64..20, -20i64..20),
        ) {
            let fan = hirz(l);
            let cone = if side { ray } else { fan.prev(ray) };
            let w = flag_valuation(&fan, TFlag::new(&fan, ray, cone).unwrap()).unwrap();
            let m1 = Monomial::new(e1.0, e1.1);
            let m2 = Monomial::new(e2.0, e2.1);
            let (a1, b1) = w.value(&m1);
            let (a2, b2) = w.value(&m2);
            prop_assert_eq!(w.value(&m1.product(&m2)), (a1 + a2, b1 + b2));
            prop_assert_eq!(w.value(&Monomial::one()), pair(0, 0));
        }

        #[test]
        fn value_matches_iterative_definition(
            l in 1i64..6, ray in 0usize..4, side in any::<bool>(),
            e in (-30i64..30, -30i64..30),
        ) {
            let fan = hirz(l);
            let cone = if side { ray } else { fan.prev(ray) };
            let w = flag_valuation(&fan, TFlag::new(&fan, ray, cone).unwrap()).unwrap();
            let m = Monomial::new(e.0, e.1);
            prop_assert_eq!(w.value(&m), iterative_value(&w, &m));
            prop_assert!(w.orientation().abs().is_one());
        }
    }
}
