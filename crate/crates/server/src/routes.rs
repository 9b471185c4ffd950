use std::str::FromStr;

use axum::extract::{Path, State};
use axum::http::header::{CONTENT_DISPOSITION, CONTENT_TYPE};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use scikg::comparison::export::{to_csv, to_latex};
use scikg::comparison::{compare, ComparisonError};
use scikg::domain::{self, Paper, PaperDetail, PaperSpec};
use scikg::graph::{Datatype, Literal, Predicate, Resource, Statement, Subgraph, DEFAULT_DEPTH_LIMIT};
use scikg::rdf::export_ntriples_string;
use scikg::similarity::most_similar;
use scikg::{ComparisonConfig, ComparisonTable, NodeId, PredicateId, Ranked};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::extract::{JsonBody, Params, WriteAccess};
use crate::saved::{is_short_id, SavedComparison};
use crate::{SharedState, AGENT};

const DEFAULT_LIMIT: usize = 10;
const MAX_LIMIT: usize = 1000;
const DEFAULT_K: usize = 5;

pub fn router(state: SharedState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/resources", get(search_resources).post(create_resource))
        .route("/api/predicates", get(search_predicates).post(create_predicate))
        .route("/api/literals", post(create_literal))
        .route("/api/statements", post(create_statement))
        .route("/api/papers", post(create_paper))
        .route("/api/papers/{id}", get(get_paper))
        .route("/api/contributions/{id}/subgraph", get(subgraph))
        .route("/api/contributions/{id}/similar", get(similar))
        .route("/api/comparison", get(comparison))
        .route("/api/comparisons", post(save_comparison))
        .route("/api/comparisons/{short_id}", get(saved_comparison))
        .route("/api/comparisons/{short_id}/export", get(export_comparison))
        .route("/api/export/rdf", get(export_rdf))
        .fallback(|| async { ApiError::not_found("no such route") })
        .method_not_allowed_fallback(|| async {
            ApiError::new(StatusCode::METHOD_NOT_ALLOWED, "method_not_allowed", "method not allowed on this route")
        })
        .with_state(state)
}

fn parse_id<T: FromStr>(raw: &str) -> Result<T, ApiError> {
    raw.parse()
        .map_err(|_| ApiError::bad_request("invalid_id", format!("{raw:?} is not a valid identifier")))
}

fn created<T: Serialize>(value: T) -> Response {
    (StatusCode::CREATED, Json(value)).into_response()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub paper_count: usize,
    pub statement_count: usize,
}

async fn health(State(state): State<SharedState>) -> Json<Health> {
    let graph = state.read();
    Json(Health {
        status: "ok".into(),
        paper_count: domain::papers(&graph).len(),
        statement_count: graph.statement_count(),
    })
}

#[derive(Debug, Clone, Deserialize)]
struct Search {
    #[serde(default)]
    q: String,
    limit: Option<usize>,
}

impl Search {
    fn limit(&self) -> usize {
        self.limit.unwrap_or(DEFAULT_LIMIT).min(MAX_LIMIT)
    }
}

async fn search_resources(State(state): State<SharedState>, Params(s): Params<Search>) -> Json<Vec<Resource>> {
    Json(state.read().find_resources(&s.q, s.limit()))
}

async fn search_predicates(State(state): State<SharedState>, Params(s): Params<Search>) -> Json<Vec<Predicate>> {
    Json(state.read().find_predicates(&s.q, s.limit()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewResource {
    pub label: String,
    #[serde(default)]
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewPredicate {
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewLiteral {
    pub value: String,
    #[serde(default)]
    pub datatype: Datatype,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewStatement {
    pub subject: NodeId,
    pub predicate: PredicateId,
    pub object: NodeId,
    #[serde(default)]
    pub agent: Option<String>,
}

async fn create_resource(
    State(state): State<SharedState>,
    _: WriteAccess,
    JsonBody(body): JsonBody<NewResource>,
) -> Result<Response, ApiError> {
    let resource: Resource = state.write().create_resource(&body.label, body.classes)?;
    Ok(created(resource))
}

async fn create_predicate(
    State(state): State<SharedState>,
    _: WriteAccess,
    JsonBody(body): JsonBody<NewPredicate>,
) -> Result<Response, ApiError> {
    let predicate: Predicate = state.write().create_predicate(&body.label)?;
    Ok(created(predicate))
}

async fn create_literal(
    State(state): State<SharedState>,
    _: WriteAccess,
    JsonBody(body): JsonBody<NewLiteral>,
) -> Result<Response, ApiError> {
    let literal: Literal = state.write().create_literal(&body.value, body.datatype)?;
    Ok(created(literal))
}

async fn create_statement(
    State(state): State<SharedState>,
    _: WriteAccess,
    JsonBody(body): JsonBody<NewStatement>,
) -> Result<Response, ApiError> {
    let agent = body.agent.as_deref().unwrap_or(AGENT);
    let statement: Statement = state.write().create_statement(body.subject, body.predicate, body.object, agent)?;
    Ok(created(statement))
}

async fn create_paper(
    State(state): State<SharedState>,
    _: WriteAccess,
    JsonBody(spec): JsonBody<PaperSpec>,
) -> Result<Response, ApiError> {
    let paper: Paper = domain::create_paper(&mut state.write(), &spec, AGENT)?;
    Ok(created(paper))
}

async fn get_paper(State(state): State<SharedState>, Path(id): Path<String>) -> Result<Json<PaperDetail>, ApiError> {
    let id = parse_id(&id)?;
    Ok(Json(domain::fetch_paper_detail(&state.read(), id)?))
}

#[derive(Debug, Clone, Deserialize)]
struct DepthQuery {
    depth: Option<usize>,
}

async fn subgraph(
    State(state): State<SharedState>,
    Path(id): Path<String>,
    Params(q): Params<DepthQuery>,
) -> Result<Json<Subgraph>, ApiError> {
    let id: NodeId = parse_id(&id)?;
    let graph = state.read();
    if graph.resource(id).is_none() {
        return Err(ApiError::not_found(format!("no resource {id}")));
    }
    Ok(Json(graph.subgraph(id, q.depth.unwrap_or(DEFAULT_DEPTH_LIMIT))?))
}

#[derive(Debug, Clone, Deserialize)]
struct SimilarQuery {
    k: Option<usize>,
}

async fn similar(
    State(state): State<SharedState>,
    Path(id): Path<String>,
    Params(q): Params<SimilarQuery>,
) -> Result<Json<Vec<Ranked>>, ApiError> {
    let id: NodeId = parse_id(&id)?;
    let graph = state.read();
    let not_found = || ApiError::not_found(format!("{id} is not a contribution"));
    let index = state.index.get(&graph)?.ok_or_else(not_found)?;
    if !index.contains(id) {
        return Err(not_found());
    }
    Ok(Json(most_similar(&graph, &index, id, q.k.unwrap_or(DEFAULT_K))?))
}

fn run_comparison(state: &SharedState, ids: &[NodeId], threshold: Option<f64>) -> Result<ComparisonTable, ApiError> {
    let config = ComparisonConfig::new(&state.embeddings, threshold.unwrap_or(state.threshold))?;
    Ok(compare(&state.read(), ids, &config)?)
}

#[derive(Debug, Clone, Deserialize)]
struct ComparisonQuery {
    #[serde(default)]
    contributions: String,
    threshold: Option<f64>,
}

async fn comparison(
    State(state): State<SharedState>,
    Params(q): Params<ComparisonQuery>,
) -> Result<Json<ComparisonTable>, ApiError> {
    let raw: Vec<&str> = q.contributions.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if raw.len() < 2 {
        return Err(ComparisonError::TooFewContributions(raw.len()).into());
    }
    let ids = raw.iter().map(|s| parse_id(s)).collect::<Result<Vec<NodeId>, _>>()?;
    Ok(Json(run_comparison(&state, &ids, q.threshold)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaveRequest {
    pub contribution_ids: Vec<NodeId>,
    #[serde(default)]
    pub threshold: Option<f64>,
}

async fn save_comparison(
    State(state): State<SharedState>,
    _: WriteAccess,
    JsonBody(req): JsonBody<SaveRequest>,
) -> Result<Response, ApiError> {
    // reject requests that could never be displayed
    run_comparison(&state, &req.contribution_ids, req.threshold)?;
    let threshold = req.threshold.unwrap_or(state.threshold);
    let saved = state.saved().insert(req.contribution_ids, threshold).map_err(|e| ApiError::internal(e.to_string()))?;
    Ok(created(saved))
}

fn lookup(state: &SharedState, short_id: &str) -> Result<SavedComparison, ApiError> {
    let missing = || ApiError::not_found(format!("no saved comparison {short_id:?}"));
    if !is_short_id(short_id) {
        return Err(missing());
    }
    state.saved().get(short_id).cloned().ok_or_else(missing)
}

async fn saved_comparison(
    State(state): State<SharedState>,
    Path(short_id): Path<String>,
) -> Result<Json<ComparisonTable>, ApiError> {
    let saved = lookup(&state, &short_id)?;
    Ok(Json(run_comparison(&state, &saved.contribution_ids, Some(saved.threshold))?))
}

#[derive(Debug, Clone, Deserialize)]
struct ExportQuery {
    format: Option<String>,
}

async fn export_comparison(
    State(state): State<SharedState>,
    Path(short_id): Path<String>,
    Params(q): Params<ExportQuery>,
) -> Result<Response, ApiError> {
    let saved = lookup(&state, &short_id)?;
    let format = q.format.as_deref().unwrap_or("csv");
    let (content_type, extension) = match format {
        "csv" => ("text/csv; charset=utf-8", "csv"),
        "latex" => ("application/x-latex; charset=utf-8", "tex"),
        other => {
            return Err(ApiError::bad_request("invalid_format", format!("unsupported export format {other:?}"))
                .with_detail(serde_json::json!({ "supported": ["csv", "latex"] })))
        }
    };
    let table = run_comparison(&state, &saved.contribution_ids, Some(saved.threshold))?;
    let body = if extension == "csv" { to_csv(&table) } else { to_latex(&table) };
    let disposition = format!("attachment; filename=\"comparison-{short_id}.{extension}\"");
    Ok(([(CONTENT_TYPE, content_type.to_owned()), (CONTENT_DISPOSITION, disposition)], body).into_response())
}

async fn export_rdf(State(state): State<SharedState>) -> Response {
    let body = export_ntriples_string(&state.read(), &state.scheme);
    ([(CONTENT_TYPE, "application/n-triples; charset=utf-8")], body).into_response()
}
