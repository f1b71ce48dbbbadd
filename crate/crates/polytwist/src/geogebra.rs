//! GeoGebra command scripts. Quadratics use the closed-form `Curve[...]`
//! template, everything else sampled `Polyline[...]` commands.

use polytwist_core::locus::lift_branches;
use polytwist_core::{expand_real_imag, sweep_locus, LocusError, RealPolynomial};

/// Sample count for the polyline fallback.
pub const POLYLINE_SAMPLES: usize = 200;

const SLIDER_SPAN: f64 = 10.0;
const SLIDER_STEP: f64 = 0.1;

/// Shortest decimal that parses back to the same `f64`.
fn num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn signed_term(v: f64) -> String {
    if v < 0.0 {
        format!(" - {}", num(-v))
    } else {
        format!(" + {}", num(v))
    }
}

fn slider(name: &str, value: f64) -> [String; 2] {
    let span = SLIDER_SPAN.max(value.abs().ceil());
    [
        format!("{name} = Slider[{}, {}, {}]", num(-span), num(span), num(SLIDER_STEP)),
        format!("SetValue[{name}, {}]", num(value)),
    ]
}

/// One command per element. `t_min`/`t_max` fill the parameter range of
/// every `Curve`; the polyline fallback samples `x` over the same range.
pub fn to_geogebra(f: &RealPolynomial, t_min: f64, t_max: f64) -> Result<Vec<String>, LocusError> {
    if f.degree() != 2 {
        return polylines(f, t_min, t_max);
    }
    let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let (t0, t1) = (num(t_min), num(t_max));
    if a == 1.0 && b == 0.0 {
        let c_term = if c == 0.0 { String::new() } else { signed_term(c) };
        return Ok(vec![
            format!("Curve[t, 0, t^2{c_term}, t, {t0}, {t1}]"),
            format!("Curve[0, t, -t^2{c_term}, t, {t0}, {t1}]"),
        ]);
    }
    let mut out: Vec<String> = [("a", a), ("b", b), ("c", c)]
        .iter()
        .flat_map(|&(n, v)| slider(n, v))
        .collect();
    out.push(format!("Curve[t, 0, a*t^2 + b*t + c, t, {t0}, {t1}]"));
    out.push(format!(
        "Curve[-b/(2*a), t, a*(-b/(2*a))^2 - a*t^2 + b*(-b/(2*a))+c, t, {t0}, {t1}]"
    ));
    Ok(out)
}

fn polylines(f: &RealPolynomial, x_min: f64, x_max: f64) -> Result<Vec<String>, LocusError> {
    let (p, _) = expand_real_imag(f);
    let branches = sweep_locus(f, x_min, x_max, POLYLINE_SAMPLES, polytwist_core::locus::DEFAULT_LOCUS_TOL)?;
    Ok(lift_branches(&branches, &p)
        .iter()
        .filter(|c| c.points.len() >= 2)
        .map(|c| {
            let pts: Vec<String> = c
                .points
                .iter()
                .map(|&(x, y, z)| format!("({}, {}, {})", num(x), num(y), num(z)))
                .collect();
            format!("Polyline[{}]", pts.join(", "))
        })
        .collect())
}
