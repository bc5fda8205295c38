//! HTTP+JSON front end for [`TaggingService`].

use std::io;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;

use super::{ServiceError, TaggingService, Token};
use crate::guesser::Algorithm;
use crate::suffix_index::CandidateList;

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::UnknownText(_) | ServiceError::UnknownToken(_) => StatusCode::NOT_FOUND,
            ServiceError::Journal(_) | ServiceError::BadJournal { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        (
            status,
            Json(ErrorBody {
                error: self.to_string(),
            }),
        )
            .into_response()
    }
}

#[derive(Debug, Deserialize)]
struct NewText {
    #[serde(default)]
    title: String,
    body: String,
}

#[derive(Debug, Serialize)]
struct Created {
    id: u64,
}

#[derive(Debug, Deserialize)]
struct GuessParams {
    word: String,
    #[serde(default)]
    algo: Option<String>,
    #[serde(default)]
    top_k: Option<usize>,
}

#[derive(Debug, Deserialize)]
struct ConfirmBody {
    pos: String,
    #[serde(default)]
    gramset: String,
}

#[derive(Debug, Serialize)]
struct Health {
    status: &'static str,
    pos_pairs: usize,
    gram_pairs: usize,
}

type Shared = State<Arc<TaggingService>>;

async fn post_text(State(svc): Shared, Json(req): Json<NewText>) -> Result<(StatusCode, Json<Created>), ServiceError> {
    let id = svc.upload_text(&req.title, &req.body)?;
    Ok((StatusCode::CREATED, Json(Created { id })))
}

async fn get_tokens(State(svc): Shared, Path(id): Path<u64>) -> Result<Json<Vec<Token>>, ServiceError> {
    Ok(Json(svc.document(id)?.tokens))
}

async fn get_guess(State(svc): Shared, Query(q): Query<GuessParams>) -> Result<Json<CandidateList>, ServiceError> {
    let algorithm: Algorithm = q.algo.as_deref().unwrap_or("pos").parse()?;
    Ok(Json(svc.guess(&q.word, algorithm, q.top_k)?))
}

async fn post_confirm(
    State(svc): Shared,
    Path(token_ref): Path<String>,
    Json(req): Json<ConfirmBody>,
) -> Result<Json<Token>, ServiceError> {
    Ok(Json(svc.confirm(&token_ref, &req.pos, &req.gramset)?))
}

async fn get_export(State(svc): Shared) -> impl IntoResponse {
    (
        [(header::CONTENT_TYPE, "text/tab-separated-values; charset=utf-8")],
        svc.export_lexicon(),
    )
}

async fn get_health(State(svc): Shared) -> Json<Health> {
    Json(Health {
        status: "ok",
        pos_pairs: svc.pos_pairs(),
        gram_pairs: svc.gram_pairs(),
    })
}

pub fn router(service: Arc<TaggingService>) -> Router {
    Router::new()
        .route("/texts", post(post_text))
        .route("/texts/{id}/tokens", get(get_tokens))
        .route("/guess", get(get_guess))
        .route("/tokens/{token_ref}/confirm", post(post_confirm))
        .route("/lexicon/export", get(get_export))
        .route("/healthz", get(get_health))
        .with_state(service)
}

/// Serves until the listener fails or the task is dropped.
pub async fn serve(listener: TcpListener, service: Arc<TaggingService>) -> io::Result<()> {
    axum::serve(listener, router(service)).await
}
