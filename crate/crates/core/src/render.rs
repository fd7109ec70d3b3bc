//! Text, JSON, CSV and SVG renderings. Rationals are always written as `p/q`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::divisor::{CartierCocycle, InequalityWitness};
use crate::lattice::{Polygon, RationalPoint};
use crate::valuation::TFlag;
use crate::volume::{FlagContribution, SimplexTerm, VolumeReport};

pub const SWEEP_HEADER: &str = "l,a,b,area,dsq,simplex_sum,symbol_sum,agree";

pub const REPORT_CSV_HEADER: &str = "record,ray,cone,omitted,section_a,section_b,m00,m01,m10,m11,value";

pub fn rational(q: &BigRational) -> String {
    q.to_string()
}

fn matrix_json(m: &[[BigInt; 2]; 2]) -> Value {
    json!([
        [m[0][0].to_string(), m[0][1].to_string()],
        [m[1][0].to_string(), m[1][1].to_string()]
    ])
}

fn term_json(t: &SimplexTerm) -> Value {
    json!({
        "omitted": t.omitted,
        "sections_used": [t.sections_used.0, t.sections_used.1],
        "matrix": matrix_json(&t.matrix),
        "signed_volume": rational(&t.signed_volume),
        "residue_degree": t.residue_degree.to_string(),
    })
}

fn flag_json(c: &FlagContribution) -> Value {
    json!({
        "flag": { "ray": c.flag.ray, "cone": c.flag.cone },
        "subtotal": rational(&c.subtotal),
        "terms": c.terms.iter().map(term_json).collect::<Vec<_>>(),
    })
}

/// Integers are emitted as decimal strings so that they survive any JSON reader.
pub fn report_json(r: &VolumeReport, decomposition: &str) -> Value {
    json!({
        "area_polytope": rational(&r.area_polytope),
        "self_intersection": r.self_intersection.to_string(),
        "half_self_intersection": rational(&r.half_self_intersection),
        "simplex_sum": rational(&r.simplex_sum),
        "symbol_sum": r.symbol_sum.to_string(),
        "symbol_sum_half": rational(&r.symbol_sum_half),
        "display_flag": { "ray": r.display_flag.ray, "cone": r.display_flag.cone },
        "lhs_trivialization_area": rational(&r.lhs_trivialization_area),
        "decomposition": decomposition,
        "contributing_flags": r
            .contributing_flags()
            .iter()
            .map(|f| json!({ "ray": f.ray, "cone": f.cone }))
            .collect::<Vec<_>>(),
        "per_flag": r.per_flag.iter().map(flag_json).collect::<Vec<_>>(),
        "agree": r.agree,
    })
}

pub fn report_text(r: &VolumeReport, decomposition: &str) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "decomposition: {decomposition}");
    let _ = writeln!(w, "area(P_D):                 {}", r.area_polytope);
    let _ = writeln!(w, "D^2:                       {}", r.self_intersection);
    let _ = writeln!(w, "D^2 / 2:                   {}", r.half_self_intersection);
    let _ = writeln!(w, "flag simplex sum:          {}", r.simplex_sum);
    let _ = writeln!(w, "symbol sum:                {}", r.symbol_sum);
    let _ = writeln!(w, "symbol sum / 2:            {}", r.symbol_sum_half);
    let _ = writeln!(w, "body area at flag {}: {}", r.display_flag, r.lhs_trivialization_area);
    let contributing = r.contributing_flags();
    let _ = writeln!(
        w,
        "contributing flags ({}): {}",
        contributing.len(),
        contributing.iter().map(TFlag::to_string).collect::<Vec<_>>().join(" ")
    );
    for c in &r.per_flag {
        let _ = writeln!(w, "flag {}: subtotal {}", c.flag, c.subtotal);
        for t in &c.terms {
            let m = &t.matrix;
            let _ = writeln!(
                w,
                "  omit {}: cones ({}, {}) [[{}, {}], [{}, {}]] -> {}",
                t.omitted, t.sections_used.0, t.sections_used.1, m[0][0], m[0][1], m[1][0], m[1][1], t.signed_volume
            );
        }
    }
    let _ = writeln!(w, "agree: {}", r.agree);
    out
}

pub fn report_csv(r: &VolumeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_CSV_HEADER}");
    let blank = ",,,,,,,,,";
    let totals = [
        ("area_polytope", rational(&r.area_polytope)),
        ("self_intersection", r.self_intersection.to_string()),
        ("half_self_intersection", rational(&r.half_self_intersection)),
        ("simplex_sum", rational(&r.simplex_sum)),
        ("symbol_sum", r.symbol_sum.to_string()),
        ("symbol_sum_half", rational(&r.symbol_sum_half)),
        ("lhs_trivialization_area", rational(&r.lhs_trivialization_area)),
        ("agree", r.agree.to_string()),
    ];
    for (name, value) in totals {
        let _ = writeln!(out, "{name}{blank},{value}");
    }
    for c in &r.per_flag {
        let _ = writeln!(out, "flag,{},{},,,,,,,,{}", c.flag.ray, c.flag.cone, c.subtotal);
        for t in &c.terms {
            let m = &t.matrix;
            let _ = writeln!(
                out,
                "term,{},{},{},{},{},{},{},{},{},{}",
                c.flag.ray,
                c.flag.cone,
                t.omitted,
                t.sections_used.0,
                t.sections_used.1,
                m[0][0],
                m[0][1],
                m[1][0],
                m[1][1],
                t.signed_volume
            );
        }
    }
    out
}

/// One sweep row; the `symbol_sum` column holds the halved symbol sum.
pub fn sweep_row(l: i64, a: i64, b: i64, r: &VolumeReport) -> String {
    format!(
        "{l},{a},{b},{},{},{},{},{}",
        r.area_polytope, r.self_intersection, r.simplex_sum, r.symbol_sum_half, r.agree
    )
}

pub fn witnesses_text(witnesses: &[InequalityWitness]) -> String {
    witnesses.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

pub fn cartier_text(c: &CartierCocycle) -> String {
    c.local_equations()
        .iter()
        .enumerate()
        .map(|(j, h)| format!("h_{j} = {h}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn coord(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}", q.to_f64().unwrap_or(f64::NAN))
    }
}

fn svg_shape(p: &Polygon, style: &str) -> String {
    // y is flipped so that the picture has the usual orientation
    let pt = |v: &RationalPoint| format!("{},{}", coord(&v.x), coord(&-v.y.clone()));
    match p.vertices() {
        [v] => format!(
            r#"<circle cx="{}" cy="{}" r="0.08" {style}/>"#,
            coord(&v.x),
            coord(&-v.y.clone())
        ),
        [u, v] => format!(
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            coord(&u.x),
            coord(&-u.y.clone()),
            coord(&v.x),
            coord(&-v.y.clone())
        ),
        vs => format!(
            r#"<polygon points="{}" {style}/>"#,
            vs.iter().map(pt).collect::<Vec<_>>().join(" ")
        ),
    }
}

/// SVG in lattice units with a one-unit margin; `overlay` is drawn dashed.
pub fn polytope_svg(p: &Polygon, overlay: Option<(&Polygon, TFlag)>) -> String {
    let all: Vec<&RationalPoint> = p
        .vertices()
        .iter()
        .chain(overlay.iter().flat_map(|(o, _)| o.vertices()))
        .collect();
    let floor = |q: &BigRational| -> BigInt { q.floor().to_integer() };
    let ceil = |q: &BigRational| -> BigInt { q.ceil().to_integer() };
    let xmin: BigInt = all.iter().map(|v| floor(&v.x)).min().unwrap_or_default() - 1;
    let xmax: BigInt = all.iter().map(|v| ceil(&v.x)).max().unwrap_or_default() + 1;
    let ymin: BigInt = all.iter().map(|v| floor(&v.y)).min().unwrap_or_default() - 1;
    let ymax: BigInt = all.iter().map(|v| ceil(&v.y)).max().unwrap_or_default() + 1;
    let (w, h) = (&xmax - &xmin, &ymax - &ymin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{xmin} {} {w} {}" width="{}" height="{}">"#,
        -&ymax,
        &h + 1,
        &w * 40,
        (&h + 1) * 40
    );
    let mut gx = xmin.clone();
    while gx <= xmax {
        let mut gy = ymin.clone();
        while gy <= ymax {
            let _ = writeln!(out, r#"<circle cx="{gx}" cy="{}" r="0.03" fill="gray"/>"#, -&gy);
            gy += 1;
        }
        gx += 1;
    }
    let _ = writeln!(
        out,
        "{}",
        svg_shape(
            p,
            r#"fill="steelblue" fill-opacity="0.4" stroke="navy" stroke-width="0.04""#
        )
    );
    let mut caption = format!("P_D area {}", p.area());
    if let Some((o, flag)) = overlay {
        let _ = writeln!(
            out,
            "{}",
            svg_shape(
                o,
                r#"fill="none" stroke="darkred" stroke-width="0.04" stroke-dasharray="0.15 0.1""#
            )
        );
        let _ = write!(caption, "; image at flag {flag} area {}", o.area());
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="0.35">{caption}</text>"#,
        xmin,
        (-&ymin).to_f64().unwrap_or_default() + 0.75
    );
    let _ = writeln!(out, "</svg>");
    out
}
