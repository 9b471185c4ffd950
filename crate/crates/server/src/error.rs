use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use scikg::comparison::ComparisonError;
use scikg::domain::DomainError;
use scikg::similarity::SimilarityError;
use scikg::GraphError;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Body of every non-2xx response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    pub detail: Value,
}

#[derive(Debug, Clone)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ErrorBody,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError { status, body: ErrorBody { code: code.to_owned(), message: message.into(), detail: Value::Null } }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.body.detail = detail;
        self
    }

    pub fn bad_request(code: &str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<GraphError> for ApiError {
    fn from(e: GraphError) -> Self {
        let message = e.to_string();
        match e {
            GraphError::EmptyLabel => Self::bad_request("empty_label", message),
            GraphError::LabelTooLong { max } => {
                Self::bad_request("label_too_long", message).with_detail(serde_json::json!({ "max": max }))
            }
            GraphError::DatatypeMismatch { datatype, value } => Self::bad_request("datatype_mismatch", message)
                .with_detail(serde_json::json!({ "datatype": datatype, "value": value })),
            GraphError::UnknownReferent(id) => {
                Self::new(StatusCode::NOT_FOUND, "unknown_referent", message).with_detail(serde_json::json!({ "id": id }))
            }
            GraphError::LiteralAsSubject => Self::bad_request("literal_as_subject", message),
            GraphError::DanglingStatements { id, count } => Self::new(StatusCode::CONFLICT, "dangling_statements", message)
                .with_detail(serde_json::json!({ "id": id, "count": count })),
            GraphError::InvalidDepth => Self::bad_request("invalid_depth", message),
            GraphError::IdTaken(id) => {
                Self::new(StatusCode::CONFLICT, "id_taken", message).with_detail(serde_json::json!({ "id": id }))
            }
            GraphError::Corrupt { .. } | GraphError::Io(_) => Self::internal(message),
        }
    }
}

impl From<DomainError> for ApiError {
    fn from(e: DomainError) -> Self {
        let message = e.to_string();
        match e {
            DomainError::Graph(g) => g.into(),
            DomainError::EmptyTitle => Self::bad_request("empty_title", message).with_detail(field("title")),
            DomainError::NoContributions => {
                Self::bad_request("no_contributions", message).with_detail(field("contributions"))
            }
            DomainError::MissingProblem { index } => Self::bad_request("missing_problem", message)
                .with_detail(serde_json::json!({ "field": "problem", "index": index })),
            DomainError::MissingResult { index } => Self::bad_request("missing_result", message)
                .with_detail(serde_json::json!({ "field": "results", "index": index })),
            DomainError::InvalidDoi(doi) => {
                Self::bad_request("invalid_doi", message).with_detail(serde_json::json!({ "field": "doi", "value": doi }))
            }
            DomainError::NotAPaper(id) => {
                Self::new(StatusCode::NOT_FOUND, "not_a_paper", message).with_detail(serde_json::json!({ "id": id }))
            }
            DomainError::Import { line, .. } => {
                Self::bad_request("invalid_import", message).with_detail(serde_json::json!({ "line": line }))
            }
            DomainError::Io(_) => Self::internal(message),
        }
    }
}

fn field(name: &str) -> Value {
    serde_json::json!({ "field": name })
}

impl From<ComparisonError> for ApiError {
    fn from(e: ComparisonError) -> Self {
        let message = e.to_string();
        match e {
            ComparisonError::TooFewContributions(n) => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "too_few_contributions", message)
                    .with_detail(serde_json::json!({ "count": n }))
            }
            ComparisonError::UnknownReferent(id) => {
                Self::new(StatusCode::NOT_FOUND, "unknown_referent", message).with_detail(serde_json::json!({ "id": id }))
            }
            ComparisonError::InvalidThreshold(t) => {
                Self::bad_request("invalid_threshold", message).with_detail(serde_json::json!({ "threshold": t }))
            }
            ComparisonError::UnknownPredicate(_) => Self::internal(message),
            ComparisonError::Graph(g) => g.into(),
        }
    }
}

impl From<SimilarityError> for ApiError {
    fn from(e: SimilarityError) -> Self {
        let message = e.to_string();
        match e {
            SimilarityError::InvalidK => Self::bad_request("invalid_k", message),
            SimilarityError::EmptyCorpus => Self::not_found(message),
            SimilarityError::Graph(g) => g.into(),
        }
    }
}
