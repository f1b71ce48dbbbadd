use std::collections::HashMap;

use polytwist::{compute_scene, from_scene_file, to_csv, to_geogebra, to_scene_file, SceneRequest};
use polytwist_core::locus::lift_branches;
use polytwist_core::{expand_real_imag, sweep_locus, BranchKind, RealPolynomial};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(c: &[f64]) -> RealPolynomial {
    RealPolynomial::new(c.to_vec()).unwrap()
}

fn scene(c: &[f64], x_min: f64, x_max: f64, samples: usize) -> polytwist::Scene {
    let mut req = SceneRequest::new(poly(c), x_min, x_max);
    req.samples = samples;
    compute_scene(&req).unwrap()
}

#[test]
fn csv_rows_for_z2_plus_4() {
    let text = to_csv(&scene(&[4.0, 0.0, 1.0], -3.0, 3.0, 61));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "branch,kind,x,y,z");
    assert!(lines.contains(&"0,real_axis,0,0,4"));
    assert!(lines.contains(&"1,vertical_line,0,2,0"));
    assert!(lines.contains(&"1,vertical_line,0,-2,0"));
}

#[test]
fn csv_vertical_line_of_shifted_quadratic() {
    let text = to_csv(&scene(&[8.0, 4.0, 1.0], -6.0, 2.0, 81));
    let row = text
        .lines()
        .find(|l| l.starts_with("1,vertical_line,-2,2,"))
        .expect("sample at y = 2");
    let z: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!(z.abs() <= 1e-12, "{row}");
}

#[test]
fn csv_has_one_finite_row_per_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..30 {
        let n = 1 + case % 7;
        let mut c: Vec<f64> = (0..=n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        c[n] = rng.gen_range(0.5..3.0);
        let s = scene(&c, -4.0, 4.0, 150);
        let text = to_csv(&s);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut rows = 0;
        for rec in reader.records() {
            let rec = rec.unwrap();
            for field in [&rec[2], &rec[3], &rec[4]] {
                let v: f64 = field.parse().unwrap();
                assert!(v.is_finite(), "{field}");
            }
            rows += 1;
        }
        assert_eq!(rows, s.point_count());
    }
}

/// Minimal evaluator for the arithmetic used in `Curve[...]` commands.
struct Expr<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a HashMap<String, f64>,
}

impl Expr<'_> {
    fn eval(text: &str, vars: &HashMap<String, f64>) -> f64 {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut e = Expr { src: compact.as_bytes(), pos: 0, vars };
        let v = e.sum();
        assert_eq!(e.pos, e.src.len(), "trailing input in {text}");
        v
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> f64 {
        let mut v = self.product();
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product();
            v = if op == b'+' { v + rhs } else { v - rhs };
        }
        v
    }

    fn product(&mut self) -> f64 {
        let mut v = self.unary();
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary();
            v = if op == b'*' { v * rhs } else { v / rhs };
        }
        v
    }

    // GeoGebra binds ^ tighter than unary minus: -t^2 = -(t^2)
    fn unary(&mut self) -> f64 {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return -self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> f64 {
        let base = self.atom();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary();
            return base.powf(exp);
        }
        base
    }

    fn atom(&mut self) -> f64 {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum();
                assert_eq!(self.peek(), Some(b')'));
                self.pos += 1;
                v
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                *self.vars.get(name).unwrap_or_else(|| panic!("unknown variable {name}"))
            }
            _ => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == b'.' || c == b'e'
                        || ((c == b'-' || c == b'+') && self.src[self.pos - 1] == b'e'))
                {
                    self.pos += 1;
                }
                std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap()
            }
        }
    }
}

/// Splits `Name[a, b, ...]` into its top-level arguments.
fn command_args<'a>(cmd: &'a str, name: &str) -> Option<Vec<&'a str>> {
    let inner = cmd.strip_prefix(name)?.strip_prefix('[')?.strip_suffix(']')?;
    let mut out = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(inner[start..].trim());
    Some(out)
}

struct Curve {
    exprs: [String; 3],
    range: (f64, f64),
}

fn interpret(cmds: &[String]) -> (HashMap<String, f64>, Vec<Curve>) {
    let mut vars = HashMap::new();
    let mut curves = Vec::new();
    for cmd in cmds {
        if let Some(args) = command_args(cmd, "SetValue") {
            vars.insert(args[0].to_string(), args[1].parse().unwrap());
        } else if let Some(args) = command_args(cmd, "Curve") {
            assert_eq!(args.len(), 6);
            assert_eq!(args[3], "t");
            curves.push(Curve {
                exprs: [args[0].into(), args[1].into(), args[2].into()],
                range: (args[4].parse().unwrap(), args[5].parse().unwrap()),
            });
        } else {
            assert!(cmd.contains("= Slider["), "unexpected command {cmd}");
        }
    }
    (vars, curves)
}

fn at(curve: &Curve, vars: &HashMap<String, f64>, t: f64) -> [f64; 3] {
    let mut vars = vars.clone();
    vars.insert("t".into(), t);
    [0, 1, 2].map(|i| Expr::eval(&curve.exprs[i], &vars))
}

#[test]
fn geogebra_curves_reproduce_the_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let c = if case % 4 == 0 {
            vec![rng.gen_range(-5.0..5.0), 0.0, 1.0]
        } else {
            let a = rng.gen_range(0.2..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), a]
        };
        let f = poly(&c);
        let centre = -c[1] / (2.0 * c[2]);
        let (x_min, x_max) = (centre - 3.0, centre + 3.0);
        let (vars, curves) = interpret(&to_geogebra(&f, x_min, x_max).unwrap());
        assert_eq!(curves.len(), 2);
        assert!(curves.iter().all(|k| k.range == (x_min, x_max)));

        let (p, _) = expand_real_imag(&f);
        let lifted = lift_branches(&sweep_locus(&f, x_min, x_max, 64, 1e-8).unwrap(), &p);
        assert_eq!(lifted.len(), 2, "{f}");
        for space in &lifted {
            let (curve, param) = match space.source_kind {
                BranchKind::RealAxis => (&curves[0], 0),
                BranchKind::VerticalLine => (&curves[1], 1),
                BranchKind::OffAxis => panic!("quadratics have no off-axis branch"),
            };
            for &(x, y, z) in &space.points {
                let t = if param == 0 { x } else { y };
                let g = at(curve, &vars, t);
                let want = [x, y, z];
                for k in 0..3 {
                    assert!(
                        (g[k] - want[k]).abs() <= 1e-9 * (1.0 + want[k].abs()),
                        "{f} {:?} t={t}: {g:?} vs {want:?}",
                        space.source_kind
                    );
                }
            }
        }
    }
}

#[test]
fn geogebra_polylines_carry_lifted_points() {
    let f = poly(&[0.0, -3.0, 0.0, 1.0]);
    let cmds = to_geogebra(&f, -3.0, 3.0).unwrap();
    let (p, _) = expand_real_imag(&f);
    for cmd in &cmds {
        let args = command_args(cmd, "Polyline").unwrap();
        for pt in args {
            let xyz: Vec<f64> = pt
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|s| s.trim().parse().unwrap())
                .collect();
            assert!((xyz[2] - p.eval(xyz[0], xyz[1])).abs() <= 1e-9 * (1.0 + xyz[2].abs()));
        }
    }
}

fn coeffs_strategy() -> impl Strategy<Value = Vec<f64>> {
    (1usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(-10.0f64..10.0, n), 0.1f64..5.0, any::<bool>()).prop_map(
            |(mut c, lead, neg)| {
                c.push(if neg { -lead } else { lead });
                c
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scene_round_trip(
        c in coeffs_strategy(),
        lo in -6.0f64..0.0,
        width in 0.5f64..8.0,
        samples in 16usize..200,
        level in prop::option::of(-20.0f64..20.0),
    ) {
        let mut req = SceneRequest::new(poly(&c), lo, lo + width);
        req.samples = samples;
        req.slice = level;
        let s = compute_scene(&req).unwrap();
        let text = to_scene_file(&s);
        let back = from_scene_file(&text).unwrap();
        prop_assert!(back.approx_eq(&s, 1e-12));
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(to_scene_file(&back), text);
    }
}
