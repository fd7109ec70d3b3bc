#![no_main]

//! Bytes pick star subdivisions of the projective plane and a divisor; every
//! ample outcome must give agreeing volumes under every decomposition tried.

use flagvol::divisor::{is_ample, TorusDivisor};
use flagvol::fan::{projective_plane, standard_decomposition, star_subdivide, DecompositionVariant};
use flagvol::valuation::TFlag;
use flagvol::volume::okounkov_volume_report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&steps, rest)) = data.split_first() else {
        return;
    };
    let steps = usize::from(steps % 6);
    if rest.len() < steps {
        return;
    }
    let (picks, coeffs) = rest.split_at(steps);
    let mut fan = projective_plane();
    for &p in picks {
        fan = star_subdivide(&fan, usize::from(p) % fan.num_cones()).unwrap();
    }
    let n = fan.num_rays();
    if coeffs.len() < n + 2 {
        return;
    }
    let d: Vec<i64> = coeffs[..n].iter().map(|&b| i64::from(b as i8) % 16).collect();
    let d = TorusDivisor::from_i64(&fan, &d).unwrap();
    if !is_ample(&fan, &d).unwrap() {
        return;
    }
    let k = usize::from(coeffs[n]) % fan.num_cones();
    let ray = usize::from(coeffs[n + 1]) % n;
    let flag = TFlag { ray, cone: ray };
    let mut values = Vec::new();
    for v in [
        DecompositionVariant::DEFAULT,
        DecompositionVariant::successor(),
        DecompositionVariant::generic_at(k),
    ] {
        let dec = standard_decomposition(&fan, v).unwrap();
        let r = okounkov_volume_report(&fan, &d, &dec, flag).unwrap();
        assert!(r.agree, "{:?} {:?} {v}", fan.rays(), d.coeffs());
        values.push(r.simplex_sum);
    }
    assert!(values.windows(2).all(|w| w[0] == w[1]));
});
