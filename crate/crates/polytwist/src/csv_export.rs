//! Flat CSV of every scene point, one row per point: `branch,kind,x,y,z`.

use crate::numfmt::format_sig;
use crate::scene::Scene;

pub const CSV_DIGITS: usize = 12;

pub fn to_csv(scene: &Scene) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["branch", "kind", "x", "y", "z"]).expect("in-memory write");
    for (id, curve) in scene.branches.iter().enumerate() {
        for p in &curve.points {
            w.write_record([
                id.to_string(),
                curve.kind.as_str().to_string(),
                format_sig(p.x, CSV_DIGITS),
                format_sig(p.y, CSV_DIGITS),
                format_sig(p.z, CSV_DIGITS),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}
