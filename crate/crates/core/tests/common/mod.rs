#![allow(dead_code)]

use flagvol::prelude::*;
use num_bigint::BigInt;
use rand::Rng;

pub fn hirz(l: i64) -> Fan2D {
    hirzebruch_fan(&BigInt::from(l)).unwrap()
}

pub fn hirz_divisor(fan: &Fan2D, a: i64, b: i64) -> TorusDivisor {
    TorusDivisor::from_i64(fan, &[0, a, b, 0]).unwrap()
}

/// The 100 instances `l ∈ 1..=4, a ∈ 1..=5, b ∈ la+1..=la+5`.
pub fn hirzebruch_grid() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for l in 1..=4 {
        for a in 1..=5 {
            for b in l * a + 1..=l * a + 5 {
                out.push((l, a, b));
            }
        }
    }
    out
}

/// `P²` followed by up to `max_steps` star subdivisions at random cones.
pub fn random_fan<R: Rng>(rng: &mut R, max_steps: usize) -> Fan2D {
    let mut fan = projective_plane();
    for _ in 0..rng.gen_range(0..=max_steps) {
        let cone = rng.gen_range(0..fan.num_cones());
        fan = star_subdivide(&fan, cone).unwrap();
    }
    fan
}

/// `a_i` with `ray_{i-1} + ray_{i+1} = a_i·ray_i`, read off the coordinates.
pub fn wall_coefficients(fan: &Fan2D) -> Vec<i64> {
    let n = fan.num_rays();
    let small = |v: &BigInt| i64::try_from(v).unwrap();
    (0..n)
        .map(|i| {
            let (p, r, s) = (fan.ray((i + n - 1) % n), fan.ray(i), fan.ray((i + 1) % n));
            let (sx, sy) = (small(&p.x) + small(&s.x), small(&p.y) + small(&s.y));
            let (rx, ry) = (small(&r.x), small(&r.y));
            if rx != 0 {
                sx / rx
            } else {
                sy / ry
            }
        })
        .collect()
}

/// Rejection sampling of ample divisors with `|d_i| ≤ bound`.
///
/// Candidates are screened with `D·D_i > 0` for every ray and then confirmed
/// with the library's ampleness test; every 64th screened-out candidate is
/// also checked to be non-ample.
pub fn random_ample_divisor<R: Rng>(rng: &mut R, fan: &Fan2D, bound: i64, attempts: usize) -> Option<TorusDivisor> {
    let n = fan.num_rays();
    let walls = wall_coefficients(fan);
    for attempt in 0..attempts {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        let positive = (0..n).all(|i| c[(i + n - 1) % n] + c[(i + 1) % n] - walls[i] * c[i] > 0);
        if positive || attempt % 64 == 0 {
            let d = TorusDivisor::from_i64(fan, &c).unwrap();
            assert_eq!(
                is_ample(fan, &d).unwrap(),
                positive,
                "ampleness criteria disagree on {c:?}"
            );
            if positive {
                return Some(d);
            }
        }
    }
    None
}

pub fn all_variants(fan: &Fan2D) -> Vec<DecompositionVariant> {
    let mut out = vec![DecompositionVariant::DEFAULT, DecompositionVariant::successor()];
    for k in 1..fan.num_cones() {
        out.push(DecompositionVariant::generic_at(k));
        out.push(DecompositionVariant {
            generic_owner: k,
            ..DecompositionVariant::successor()
        });
    }
    out
}
