//! Local HTTP service for the viewer.
//!
//! * `GET /api/scene?coeffs=4,0,1&xmin=-3&xmax=3&samples=400&slice=0`
//!   returns a scene document (only `coeffs` is required).
//! * `GET /api/roots?coeffs=8,4,1` returns `{"polynomial": [...], "roots": [...]}`.
//!
//! Bad queries get status 400 and `{"error": "...", "parameter": "..."}`.
//! Every request is computed from scratch.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;

use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use polytwist_core::{find_roots, RealPolynomial, RootInfo};
use serde::Serialize;
use tower_http::services::ServeDir;

use crate::parse::parse_coeffs;
use crate::pipeline::{compute_scene, SceneRequest};
use crate::scene::to_scene_file;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_X_MIN: f64 = -3.0;
pub const DEFAULT_X_MAX: f64 = 3.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApiError {
    pub error: String,
    pub parameter: Option<String>,
}

impl ApiError {
    fn param(parameter: &str, error: impl ToString) -> Self {
        Self { error: error.to_string(), parameter: Some(parameter.to_string()) }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::to_string(&self).expect("strings serialize");
        (StatusCode::BAD_REQUEST, [(header::CONTENT_TYPE, "application/json")], body).into_response()
    }
}

type Params = HashMap<String, String>;

fn coeffs(q: &Params) -> Result<RealPolynomial, ApiError> {
    let text = q.get("coeffs").ok_or_else(|| ApiError::param("coeffs", "missing coefficient list"))?;
    parse_coeffs(text, false).map_err(|e| ApiError::param("coeffs", e))
}

fn number<T: std::str::FromStr>(q: &Params, name: &str) -> Result<Option<T>, ApiError> {
    q.get(name)
        .map(|s| s.trim().parse::<T>().map_err(|_| ApiError::param(name, format!("cannot parse {s:?}"))))
        .transpose()
}

/// Builds the scene document for a query. Pure, so identical queries give
/// identical bytes.
pub fn scene_response(q: &Params) -> Result<String, ApiError> {
    let f = coeffs(q)?;
    let x_min: f64 = number(q, "xmin")?.unwrap_or(DEFAULT_X_MIN);
    let x_max: f64 = number(q, "xmax")?.unwrap_or(DEFAULT_X_MAX);
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(ApiError::param("xmin", "xmin must be finite and below xmax"));
    }
    let mut req = SceneRequest::new(f, x_min, x_max);
    if let Some(n) = number(q, "samples")? {
        req.samples = n;
    }
    req.slice = number(q, "slice")?;
    let scene = compute_scene(&req).map_err(|e| {
        use crate::pipeline::PipelineError as E;
        let parameter = match e {
            E::Samples(_) => Some("samples".to_string()),
            E::Level => Some("slice".to_string()),
            _ => None,
        };
        ApiError { error: e.to_string(), parameter }
    })?;
    Ok(to_scene_file(&scene))
}

#[derive(Serialize)]
struct RootsBody<'a> {
    polynomial: &'a RealPolynomial,
    roots: Vec<RootInfo>,
}

pub fn roots_response(q: &Params) -> Result<String, ApiError> {
    let f = coeffs(q)?;
    let roots = find_roots(&f, polytwist_core::roots::DEFAULT_ROOT_TOL)
        .map_err(|e| ApiError { error: e.to_string(), parameter: None })?;
    Ok(serde_json::to_string_pretty(&RootsBody { polynomial: &f, roots }).expect("finite values") + "\n")
}

fn json(result: Result<String, ApiError>) -> Response {
    match result {
        Ok(body) => ([(header::CONTENT_TYPE, "application/json")], body).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn index() -> &'static str {
    "polytwist service: GET /api/scene?coeffs=... or /api/roots?coeffs=...\n"
}

pub fn router(assets: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/scene", get(|Query(q): Query<Params>| async move { json(scene_response(&q)) }))
        .route("/api/roots", get(|Query(q): Query<Params>| async move { json(roots_response(&q)) }));
    match assets {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(index)),
    }
}

/// Serves on an already bound listener until the process ends.
pub async fn serve_listener(listener: tokio::net::TcpListener, assets: Option<PathBuf>) -> std::io::Result<()> {
    axum::serve(listener, router(assets)).await
}

/// Blocking entry point used by the CLI.
pub fn serve(addr: SocketAddr, assets: Option<PathBuf>, announce: impl FnOnce(SocketAddr)) -> std::io::Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        announce(listener.local_addr()?);
        serve_listener(listener, assets).await
    })
}
