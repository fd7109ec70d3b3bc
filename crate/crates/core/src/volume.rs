//! Volume of an ample toric divisor by five independent exact routes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::divisor::{cartier_data, divisor_polytope, ensure_ample, CartierCocycle, TorusDivisor};
use crate::error::{Error, Result};
use crate::fan::{Fan2D, OrbitDecomposition};
use crate::lattice::{polygon_area, signed_simplex_volume};
use crate::milnor::{flag_owners, intersection_number_via_symbols};
use crate::valuation::{flag_valuation, trivialization_polytope, TFlag};

/// One signed simplex of a flag's contribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexTerm {
    pub flag: TFlag,
    pub omitted: usize,
    /// Cones whose local equations give the two columns, in order.
    pub sections_used: (usize, usize),
    /// Rows `(w₁, w₂)`, columns the valuation vectors of the two sections.
    pub matrix: [[BigInt; 2]; 2],
    pub signed_volume: BigRational,
    pub residue_degree: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagContribution {
    pub flag: TFlag,
    pub subtotal: BigRational,
    pub terms: Vec<SimplexTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeReport {
    pub area_polytope: BigRational,
    pub self_intersection: BigInt,
    pub half_self_intersection: BigRational,
    pub simplex_sum: BigRational,
    pub symbol_sum: BigInt,
    pub symbol_sum_half: BigRational,
    pub display_flag: TFlag,
    pub lhs_trivialization_area: BigRational,
    pub per_flag: Vec<FlagContribution>,
    pub agree: bool,
}

impl VolumeReport {
    /// Flags whose subtotal is nonzero.
    pub fn contributing_flags(&self) -> Vec<TFlag> {
        self.per_flag
            .iter()
            .filter(|c| !c.subtotal.is_zero())
            .map(|c| c.flag)
            .collect()
    }

    /// The five volume values in report order.
    pub fn values(&self) -> [&BigRational; 5] {
        [
            &self.area_polytope,
            &self.half_self_intersection,
            &self.simplex_sum,
            &self.symbol_sum_half,
            &self.lhs_trivialization_area,
        ]
    }
}

/// All `(ray, cone)` incidences, cone by cone, first ray before second.
pub fn enumerate_tflags(fan: &Fan2D) -> Vec<TFlag> {
    (0..fan.num_cones())
        .flat_map(|cone| {
            let (r, s) = fan.cone_ray_indices(cone);
            [TFlag { ray: r, cone }, TFlag { ray: s, cone }]
        })
        .collect()
}

fn contribution(fan: &Fan2D, c: &CartierCocycle, flag: TFlag, dec: &OrbitDecomposition) -> Result<FlagContribution> {
    let w = flag_valuation(fan, flag)?;
    let alphas = flag_owners(dec, flag);
    let mut terms = Vec::with_capacity(3);
    let mut subtotal = BigRational::zero();
    for omitted in 0..3 {
        let kept: Vec<usize> = (0..3).filter(|&m| m != omitted).map(|m| alphas[m]).collect();
        let u = w.value(c.h(kept[0]));
        let v = w.value(c.h(kept[1]));
        let volume = signed_simplex_volume(&[vec![u.0.clone(), u.1.clone()], vec![v.0.clone(), v.1.clone()]])?;
        let signed_volume = if omitted.is_odd() { -volume } else { volume };
        subtotal += &signed_volume;
        terms.push(SimplexTerm {
            flag,
            omitted,
            sections_used: (kept[0], kept[1]),
            matrix: [[u.0, v.0], [u.1, v.1]],
            signed_volume,
            residue_degree: BigInt::one(),
        });
    }
    Ok(FlagContribution { flag, subtotal, terms })
}

pub fn flag_contribution(
    fan: &Fan2D,
    d: &TorusDivisor,
    flag: TFlag,
    dec: &OrbitDecomposition,
) -> Result<FlagContribution> {
    ensure_ample(fan, d)?;
    dec.check(fan)?;
    contribution(fan, &cartier_data(fan, d)?, flag, dec)
}

fn all_contributions(fan: &Fan2D, d: &TorusDivisor, dec: &OrbitDecomposition) -> Result<Vec<FlagContribution>> {
    dec.check(fan)?;
    let c = cartier_data(fan, d)?;
    enumerate_tflags(fan)
        .into_iter()
        .map(|flag| contribution(fan, &c, flag, dec))
        .collect()
}

/// Sum over all torus-invariant flags of the signed simplex volumes.
pub fn simplex_sum_volume(fan: &Fan2D, d: &TorusDivisor, dec: &OrbitDecomposition) -> Result<BigRational> {
    ensure_ample(fan, d)?;
    Ok(all_contributions(fan, d, dec)?.into_iter().map(|c| c.subtotal).sum())
}

/// `a_i` with `ray_{i−1} + ray_{i+1} = a_i·ray_i`, so that `D_i² = −a_i`.
pub fn self_intersection_coefficient(fan: &Fan2D, i: usize) -> Result<BigInt> {
    fan.check_ray(i)?;
    let sum = fan.ray(fan.prev(i)) + fan.ray(fan.next(i));
    let r = fan.ray(i);
    let a = if !r.x.is_zero() { &sum.x / &r.x } else { &sum.y / &r.y };
    if r.scale(&a) != sum {
        return Err(Error::InvalidFan(crate::fan::fan_violations(fan.rays())));
    }
    Ok(a)
}

/// `D²` from the intersection matrix of the ray divisors.
pub fn self_intersection_classical(fan: &Fan2D, d: &TorusDivisor) -> Result<BigInt> {
    if d.len() != fan.num_rays() {
        return Err(Error::DivisorLength {
            expected: fan.num_rays(),
            got: d.len(),
        });
    }
    let n = fan.num_rays();
    let mut total = BigInt::zero();
    for i in 0..n {
        let di = d.coeff(i);
        total -= self_intersection_coefficient(fan, i)? * di * di;
        // each adjacent pair counted from both ends
        total += di * d.coeff(fan.next(i)) * 2;
    }
    Ok(total)
}

pub fn okounkov_volume_report(
    fan: &Fan2D,
    d: &TorusDivisor,
    dec: &OrbitDecomposition,
    display_flag: TFlag,
) -> Result<VolumeReport> {
    ensure_ample(fan, d)?;
    display_flag.check(fan)?;
    let two = BigRational::from_integer(2.into());
    let area_polytope = polygon_area(&divisor_polytope(fan, d)?);
    let self_intersection = self_intersection_classical(fan, d)?;
    let per_flag = all_contributions(fan, d, dec)?;
    let simplex_sum: BigRational = per_flag.iter().map(|c| c.subtotal.clone()).sum();
    let symbol_sum = intersection_number_via_symbols(fan, d, dec)?;
    let lhs_trivialization_area = trivialization_polytope(fan, d, display_flag)?.area().clone();
    let half_self_intersection = BigRational::from_integer(self_intersection.clone()) / &two;
    let symbol_sum_half = BigRational::from_integer(symbol_sum.clone()) / &two;
    let agree = [
        &half_self_intersection,
        &simplex_sum,
        &symbol_sum_half,
        &lhs_trivialization_area,
    ]
    .iter()
    .all(|v| **v == area_polytope);
    Ok(VolumeReport {
        area_polytope,
        self_intersection,
        half_self_intersection,
        simplex_sum,
        symbol_sum,
        symbol_sum_half,
        display_flag,
        lhs_trivialization_area,
        per_flag,
        agree,
    })
}
