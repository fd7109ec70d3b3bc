//! Formal `K₂` symbols in monomial entries and their boundary maps along
//! torus-invariant flags.
//!
//! Symbols are never normalized beyond dropping trivial entries; only their
//! images under boundary maps are computed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::{cech_cocycle, CartierCocycle, Monomial, TorusDivisor};
use crate::error::{Error, Result};
use crate::fan::{Fan2D, OrbitDecomposition};
use crate::lattice::LatticeVector;
use crate::valuation::{flag_valuation, Rank2Valuation, TFlag};

/// `c·x^{e₁}y^{e₂}` with `c ∈ Q^×`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialFn {
    coeff: BigRational,
    exponent: LatticeVector,
}

impl MonomialFn {
    pub fn new(coeff: BigRational, exponent: LatticeVector) -> Result<MonomialFn> {
        if coeff.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(MonomialFn { coeff, exponent })
    }

    pub fn monic(m: &Monomial) -> MonomialFn {
        MonomialFn {
            coeff: BigRational::one(),
            exponent: m.exponent().clone(),
        }
    }

    pub fn from_ints(coeff: i64, x: i64, y: i64) -> Result<MonomialFn> {
        MonomialFn::new(BigRational::from_integer(coeff.into()), LatticeVector::new(x, y))
    }

    pub fn one() -> MonomialFn {
        MonomialFn::monic(&Monomial::one())
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exponent(&self) -> &LatticeVector {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exponent.is_zero()
    }

    pub fn mul(&self, other: &MonomialFn) -> MonomialFn {
        MonomialFn {
            coeff: &self.coeff * &other.coeff,
            exponent: &self.exponent + &other.exponent,
        }
    }

    pub fn pow(&self, k: &BigInt) -> Result<MonomialFn> {
        Ok(MonomialFn {
            coeff: rational_pow(&self.coeff, k)?,
            exponent: self.exponent.scale(k),
        })
    }

    pub fn with_coeff(&self, coeff: BigRational) -> Result<MonomialFn> {
        MonomialFn::new(coeff, self.exponent.clone())
    }
}

impl From<Monomial> for MonomialFn {
    fn from(m: Monomial) -> Self {
        MonomialFn::monic(&m)
    }
}

impl fmt::Display for MonomialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = Monomial(self.exponent.clone());
        if self.coeff.is_one() {
            write!(f, "{m}")
        } else if m.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}·{m}", self.coeff)
        }
    }
}

fn rational_pow(c: &BigRational, k: &BigInt) -> Result<BigRational> {
    if c.is_one() {
        return Ok(c.clone());
    }
    if *c == -BigRational::one() {
        return Ok(if k.is_odd() { c.clone() } else { BigRational::one() });
    }
    let e = k.to_i32().ok_or_else(|| Error::ExponentOverflow(k.clone()))?;
    Ok(num_traits::pow::Pow::pow(c, e))
}

/// A formal integer combination of pure symbols `{f, g}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolK2 {
    terms: Vec<(BigInt, MonomialFn, MonomialFn)>,
}

impl SymbolK2 {
    pub fn zero() -> SymbolK2 {
        SymbolK2::default()
    }

    pub fn pure(f: MonomialFn, g: MonomialFn) -> SymbolK2 {
        SymbolK2::from_terms(vec![(BigInt::one(), f, g)])
    }

    /// Merges repeated pairs and drops zero multiplicities and pairs with an
    /// entry equal to 1.
    pub fn from_terms(terms: Vec<(BigInt, MonomialFn, MonomialFn)>) -> SymbolK2 {
        let mut merged: BTreeMap<(MonomialFn, MonomialFn), BigInt> = BTreeMap::new();
        for (k, f, g) in terms {
            if f.is_one() || g.is_one() {
                continue;
            }
            *merged.entry((f, g)).or_insert_with(BigInt::zero) += k;
        }
        SymbolK2 {
            terms: merged
                .into_iter()
                .filter(|(_, k)| !k.is_zero())
                .map(|((f, g), k)| (k, f, g))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(BigInt, MonomialFn, MonomialFn)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymbolK2) -> SymbolK2 {
        SymbolK2::from_terms(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn scale(&self, k: &BigInt) -> SymbolK2 {
        SymbolK2::from_terms(
            self.terms
                .iter()
                .map(|(m, f, g)| (m * k, f.clone(), g.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for SymbolK2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, a, b)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k.is_one() {
                write!(f, "{{{a}, {b}}}")?;
            } else {
                write!(f, "{k}·{{{a}, {b}}}")?;
            }
        }
        Ok(())
    }
}

/// `c·t^k` in the function field of a ray divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueElement {
    pub coeff: BigRational,
    pub exponent: BigInt,
}

impl ResidueElement {
    pub fn one() -> ResidueElement {
        ResidueElement {
            coeff: BigRational::one(),
            exponent: BigInt::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exponent.is_zero()
    }

    pub fn mul(&self, other: &ResidueElement) -> ResidueElement {
        ResidueElement {
            coeff: &self.coeff * &other.coeff,
            exponent: &self.exponent + &other.exponent,
        }
    }

    pub fn pow(&self, k: &BigInt) -> Result<ResidueElement> {
        Ok(ResidueElement {
            coeff: rational_pow(&self.coeff, k)?,
            exponent: &self.exponent * k,
        })
    }

    /// Order of vanishing at the torus-fixed point `t = 0`.
    pub fn order(&self) -> &BigInt {
        &self.exponent
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff.is_one(), self.exponent.is_zero()) {
            (_, true) => write!(f, "{}", self.coeff),
            (true, false) => write!(f, "t^{}", self.exponent),
            (false, false) => write!(f, "{}·t^{}", self.coeff, self.exponent),
        }
    }
}

/// `∂` of a symbol: an integer combination of residue units, written additively.
pub type ResidueCombination = Vec<(BigInt, ResidueElement)>;

pub fn ray_valuation(ray: &LatticeVector, f: &MonomialFn) -> BigInt {
    f.exponent().dot(ray)
}

/// Restriction of a valuation-zero monomial to the flag curve, as a power of `t`.
fn reduce(w: &Rank2Valuation, f: &MonomialFn) -> ResidueElement {
    let e = f.exponent();
    let t = &w.residue_coordinate;
    debug_assert!(ray_valuation(&w.first_ray, f).is_zero());
    let k = if !t.x.is_zero() { &e.x / &t.x } else { &e.y / &t.y };
    debug_assert_eq!(&t.scale(&k), e);
    ResidueElement {
        coeff: f.coeff().clone(),
        exponent: k,
    }
}

fn pure_boundary(w: &Rank2Valuation, f: &MonomialFn, g: &MonomialFn) -> Result<ResidueElement> {
    let vf = ray_valuation(&w.first_ray, f);
    let vg = ray_valuation(&w.first_ray, g);
    let unit = g.pow(&vf)?.mul(&f.pow(&-&vg)?);
    let mut r = reduce(w, &unit);
    if (&vf * &vg).is_odd() {
        r.coeff = -r.coeff;
    }
    Ok(r)
}

/// First boundary map along the flag ray.
pub fn tame_boundary(fan: &Fan2D, flag: TFlag, s: &SymbolK2) -> Result<ResidueCombination> {
    let w = flag_valuation(fan, flag)?;
    s.terms()
        .iter()
        .map(|(k, f, g)| Ok((k.clone(), pure_boundary(&w, f, g)?)))
        .collect()
}

/// `∂₂∂₁ S` at the flag's fixed point.
pub fn iterated_boundary(fan: &Fan2D, flag: TFlag, s: &SymbolK2) -> Result<BigInt> {
    Ok(tame_boundary(fan, flag, s)?.iter().map(|(k, r)| k * r.order()).sum())
}

pub fn specialization(fan: &Fan2D, flag: TFlag, pi: &MonomialFn, f: &MonomialFn) -> Result<ResidueElement> {
    let w = flag_valuation(fan, flag)?;
    let v_pi = ray_valuation(&w.first_ray, pi);
    if !v_pi.is_one() {
        return Err(Error::NotUniformizer(v_pi));
    }
    let vf = ray_valuation(&w.first_ray, f);
    Ok(reduce(&w, &f.mul(&pi.pow(&-vf)?)))
}

/// Compares `∂₂∂₁{f, g}` with the determinant of the valuation vectors.
pub fn det_formula_check(fan: &Fan2D, flag: TFlag, f: &MonomialFn, g: &MonomialFn) -> Result<bool> {
    let w = flag_valuation(fan, flag)?;
    let (a, c) = w.value(&Monomial(f.exponent().clone()));
    let (b, d) = w.value(&Monomial(g.exponent().clone()));
    let det = a * d - b * c;
    let lhs = iterated_boundary(fan, flag, &SymbolK2::pure(f.clone(), g.clone()))?;
    Ok(lhs == det)
}

/// `(∂₁{f}, ∂₂∂₁{π₁, f})` for the chart's uniformizer `π₁`.
pub fn valuation_via_symbols(fan: &Fan2D, flag: TFlag, f: &MonomialFn) -> Result<(BigInt, BigInt)> {
    let w = flag_valuation(fan, flag)?;
    let pi = MonomialFn::monic(&Monomial(w.first_uniformizer.clone()));
    valuation_via_symbols_with(fan, flag, &pi, f)
}

/// As [`valuation_via_symbols`] for an arbitrary uniformizer `π`; the second
/// component depends on `π`, the determinant of two such vectors does not.
pub fn valuation_via_symbols_with(
    fan: &Fan2D,
    flag: TFlag,
    pi: &MonomialFn,
    f: &MonomialFn,
) -> Result<(BigInt, BigInt)> {
    let ray = fan.ray(flag.ray);
    let v_pi = ray_valuation(ray, pi);
    if !v_pi.is_one() {
        return Err(Error::NotUniformizer(v_pi));
    }
    let v1 = ray_valuation(ray, f);
    let v2 = iterated_boundary(fan, flag, &SymbolK2::pure(pi.clone(), f.clone()))?;
    Ok((v1, v2))
}

/// `{h₁,h₂} − {h₀,h₂} + {h₀,h₁}` for `h_m = h_{α_m}`.
pub fn cocycle_expansion(c: &CartierCocycle, alphas: [usize; 3]) -> Result<SymbolK2> {
    for &a in &alphas {
        if a >= c.len() {
            return Err(Error::ConeIndex {
                index: a,
                count: c.len(),
            });
        }
    }
    let h = |m: usize| MonomialFn::monic(c.h(alphas[m]));
    let terms = (0..3)
        .map(|omit| {
            let kept: Vec<usize> = (0..3).filter(|&m| m != omit).collect();
            let sign = if omit % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            (sign, h(kept[0]), h(kept[1]))
        })
        .collect();
    Ok(SymbolK2::from_terms(terms))
}

/// `{f_{α₀α₁}, f_{α₁α₂}}`.
pub fn cocycle_symbol(c: &CartierCocycle, alphas: [usize; 3]) -> Result<SymbolK2> {
    let f01 = cech_cocycle(c, alphas[0], alphas[1])?;
    let f12 = cech_cocycle(c, alphas[1], alphas[2])?;
    Ok(SymbolK2::pure(f01.into(), f12.into()))
}

/// The cones `(α₀, α₁, α₂)` owning the generic orbit, the flag curve and the flag point.
pub fn flag_owners(dec: &OrbitDecomposition, flag: TFlag) -> [usize; 3] {
    [
        dec.owner_of_generic(),
        dec.owner_of_ray(flag.ray),
        dec.owner_of_cone(flag.cone),
    ]
}

/// `D²` as the sum over torus-invariant flags of `∂₂∂₁{f_{α₀α₁}, f_{α₁α₂}}`.
pub fn intersection_number_via_symbols(fan: &Fan2D, d: &TorusDivisor, dec: &OrbitDecomposition) -> Result<BigInt> {
    dec.check(fan)?;
    let c = crate::divisor::cartier_data(fan, d)?;
    let mut total = BigInt::zero();
    for cone in 0..fan.num_cones() {
        let (r, s) = fan.cone_ray_indices(cone);
        for ray in [r, s] {
            let flag = TFlag { ray, cone };
            let sym = cocycle_symbol(&c, flag_owners(dec, flag))?;
            total += iterated_boundary(fan, flag, &sym)?;
        }
    }
    Ok(total)
}
