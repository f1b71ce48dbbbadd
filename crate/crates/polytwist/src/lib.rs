//! Scene documents, CSV and GeoGebra export, the `polytwist` command line
//! and a small HTTP service, on top of `polytwist-core`.

pub mod cli;
pub mod csv_export;
pub mod geogebra;
pub mod numfmt;
pub mod parse;
pub mod pipeline;
pub mod scene;
pub mod serve;

pub use csv_export::to_csv;
pub use geogebra::to_geogebra;
pub use pipeline::{compute_scene, SceneRequest};
pub use scene::{build_scene, from_scene_file, to_scene_file, Scene, SceneError};
