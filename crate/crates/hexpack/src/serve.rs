//! Stateless HTTP JSON API used by the explorer.
//!
//! Every endpoint is a pure function of its query string or body. Failures
//! answer `400` with `{code, message}`.

use std::collections::HashMap;
use std::str::FromStr;

use axum::extract::Query;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tower_http::cors::CorsLayer;

use crate::api::{self, ApiError, ApiResult, MoebiusRequest};
use crate::json::LayoutDoc;

type Params = Query<HashMap<String, String>>;

struct Reply<T>(ApiResult<T>);

impl<T: Serialize> IntoResponse for Reply<T> {
    fn into_response(self) -> Response {
        match self.0 {
            Ok(v) => Json(v).into_response(),
            Err(e) => (StatusCode::BAD_REQUEST, Json(e)).into_response(),
        }
    }
}

fn required<'a>(q: &'a HashMap<String, String>, key: &str) -> ApiResult<&'a str> {
    q.get(key).map(String::as_str).ok_or_else(|| ApiError::invalid(format!("missing parameter {key:?}")))
}

fn number<T: FromStr>(q: &HashMap<String, String>, key: &str, default: Option<T>) -> ApiResult<T> {
    match q.get(key) {
        Some(s) => s.trim().parse().map_err(|_| ApiError::invalid(format!("parameter {key:?} is not a number"))),
        None => default.ok_or_else(|| ApiError::invalid(format!("missing parameter {key:?}"))),
    }
}

fn choice<T: FromStr<Err = ApiError> + Default>(q: &HashMap<String, String>, key: &str) -> ApiResult<T> {
    q.get(key).map(|s| s.parse()).unwrap_or_else(|| Ok(T::default()))
}

async fn flower(Query(q): Params) -> impl IntoResponse {
    Reply((|| api::flower(&api::parse_points(required(&q, "points")?)?, number(&q, "r1", Some(1.0))?))())
}

async fn symmetric_flower(Query(q): Params) -> impl IntoResponse {
    Reply((|| api::symmetric(&api::parse_points(required(&q, "points")?)?))())
}

async fn family(Query(q): Params) -> impl IntoResponse {
    Reply((|| {
        let r1 = api::parse_f64_list(q.get("r1").map(String::as_str).unwrap_or("0.5,1,2"))?;
        api::family(&api::parse_points(required(&q, "points")?)?, &r1)
    })())
}

async fn sixth_point(Query(q): Params) -> impl IntoResponse {
    Reply((|| api::sixth_point(&api::parse_points(required(&q, "points")?)?))())
}

async fn field(Query(q): Params) -> impl IntoResponse {
    Reply((|| {
        let w = api::square_window(number(&q, "window", Some(5))?)?;
        api::field(number(&q, "alpha", None)?, number(&q, "beta", None)?, number(&q, "gamma", None)?, w)
    })())
}

async fn layout(Query(q): Params) -> impl IntoResponse {
    Reply((|| {
        let w = api::square_window(number(&q, "window", Some(5))?)?;
        api::layout(number(&q, "alpha", None)?, number(&q, "beta", None)?, number(&q, "gamma", None)?, w, choice(&q, "normalization")?)
    })())
}

async fn doyle(Query(q): Params) -> impl IntoResponse {
    Reply((|| {
        let w = api::square_window(number(&q, "window", Some(5))?)?;
        api::doyle(number(&q, "A", None)?, number(&q, "B", None)?, number(&q, "R", Some(1.0))?, w)
    })())
}

async fn airy(Query(q): Params) -> impl IntoResponse {
    Reply((|| api::airy_grid(number(&q, "spacing", Some(0.2))?, number(&q, "extent", Some(1.5))?, choice(&q, "map")?))())
}

/// Request bodies are parsed here rather than by an extractor so that
/// malformed JSON is answered with the same `{code, message}` shape.
fn body<T: DeserializeOwned>(text: &str) -> ApiResult<T> {
    serde_json::from_str(text).map_err(|e| ApiError { code: "invalid_document".into(), message: e.to_string() })
}

async fn verify(text: String) -> impl IntoResponse {
    Reply((|| {
        let doc: LayoutDoc = body(&text)?;
        Ok(api::verify(&doc.to_layout()?))
    })())
}

async fn moebius(text: String) -> impl IntoResponse {
    Reply(body::<MoebiusRequest>(&text).and_then(|req| api::apply_moebius(&req)))
}

pub fn router() -> Router {
    Router::new()
        .route("/api/flower", get(flower))
        .route("/api/symmetric-flower", get(symmetric_flower))
        .route("/api/family", get(family))
        .route("/api/sixth-point", get(sixth_point))
        .route("/api/field", get(field))
        .route("/api/layout", get(layout))
        .route("/api/doyle", get(doyle))
        .route("/api/airy", get(airy))
        .route("/api/verify", post(verify))
        .route("/api/moebius", post(moebius))
        .layer(CorsLayer::permissive())
}

pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
