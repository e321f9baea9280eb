//! Stateless HTTP JSON service.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};

use crate::api::{self, ApiError, ApiResult, Health};
use crate::json;

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn reply<T: Serialize>(result: ApiResult<T>) -> Response {
    match result {
        Ok(value) => json_response(StatusCode::OK, json::to_string(&value)),
        Err(err) => json_response(StatusCode::BAD_REQUEST, err.to_json()),
    }
}

/// Bodies are parsed by hand so that malformed input gets the same JSON
/// error shape as a validation failure.
fn handle<Req, Resp>(body: &[u8], f: fn(&Req) -> ApiResult<Resp>) -> Response
where
    Req: for<'de> Deserialize<'de>,
    Resp: Serialize,
{
    let parsed = std::str::from_utf8(body).map_err(ApiError::malformed).and_then(api::parse::<Req>);
    reply(parsed.and_then(|req| f(&req)))
}

async fn mul(body: Bytes) -> Response {
    handle(&body, api::mul)
}

async fn merge(body: Bytes) -> Response {
    handle(&body, api::merge_pairs)
}

async fn align(body: Bytes) -> Response {
    handle(&body, api::align)
}

async fn trackball(body: Bytes) -> Response {
    handle(&body, api::trackball)
}

async fn slerp(body: Bytes) -> Response {
    handle(&body, api::slerp)
}

#[derive(Debug, Deserialize)]
struct BeltQuery {
    ns: Option<String>,
    nt: Option<String>,
}

fn grid_param(name: &str, value: Option<&str>, default: usize) -> ApiResult<usize> {
    match value {
        None => Ok(default),
        Some(text) => text
            .parse()
            .map_err(|_| ApiError::new("InvalidParameter", format!("{name} must be a non-negative integer"))),
    }
}

async fn belt(Query(q): Query<BeltQuery>) -> Response {
    let result = grid_param("ns", q.ns.as_deref(), api::DEFAULT_BELT_NS)
        .and_then(|ns| Ok((ns, grid_param("nt", q.nt.as_deref(), api::DEFAULT_BELT_NT)?)))
        .and_then(|(ns, nt)| api::belt(ns, nt));
    reply(result)
}

async fn health() -> Response {
    reply(Ok(Health { ok: true }))
}

async fn not_found() -> Response {
    json_response(StatusCode::NOT_FOUND, ApiError::new("NotFound", "unknown route").to_json())
}

pub fn router() -> Router {
    Router::new()
        .route("/api/mul", post(mul))
        .route("/api/merge", post(merge))
        .route("/api/align", post(align))
        .route("/api/trackball", post(trackball))
        .route("/api/slerp", post(slerp))
        .route("/api/belt", get(belt))
        .route("/api/health", get(health))
        .fallback(not_found)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}
