use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use scikg::domain::{Paper, PaperDetail};
use scikg::graph::{Literal, Predicate, Resource, Statement, Subgraph};
use scikg::{ComparisonTable, Graph, Ranked};
use scikg_server::{router, AppState, ErrorBody, Health, SavedComparison};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use tower::ServiceExt;

use crate::fixtures::table;

const GOLDEN_CSV: &[u8] = include_bytes!("../../../server/tests/golden/uses_employs.csv");
const GOLDEN_TEX: &[u8] = include_bytes!("../../../server/tests/golden/uses_employs.tex");

struct Client {
    app: Router,
    checked: usize,
}

type Outcome<T> = Result<T, String>;

impl Client {
    async fn call(&mut self, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
        let req = Request::builder()
            .method(method)
            .uri(uri)
            .header(header::CONTENT_TYPE, "application/json")
            .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
            .unwrap();
        let res = self.app.clone().oneshot(req).await.unwrap();
        let status = res.status();
        (status, res.into_body().collect().await.unwrap().to_bytes().to_vec())
    }

    /// Calls a route, checks the status and that the body round-trips through `T`.
    async fn typed<T: DeserializeOwned + Serialize>(
        &mut self,
        method: Method,
        uri: &str,
        body: Option<Value>,
        want: StatusCode,
    ) -> Outcome<T> {
        let (status, bytes) = self.call(method.clone(), uri, body).await;
        let text = String::from_utf8_lossy(&bytes).into_owned();
        if status != want {
            return Err(format!("{method} {uri}: status {status}, wanted {want}: {text}"));
        }
        let value: Value = serde_json::from_slice(&bytes).map_err(|e| format!("{method} {uri}: not JSON ({e}): {text}"))?;
        let typed: T = serde_json::from_value(value.clone()).map_err(|e| format!("{method} {uri}: schema ({e}): {text}"))?;
        if serde_json::to_value(&typed).unwrap() != value {
            return Err(format!("{method} {uri}: body does not round-trip: {text}"));
        }
        self.checked += 1;
        Ok(typed)
    }

    async fn get<T: DeserializeOwned + Serialize>(&mut self, uri: &str) -> Outcome<T> {
        self.typed(Method::GET, uri, None, StatusCode::OK).await
    }

    async fn create<T: DeserializeOwned + Serialize>(&mut self, uri: &str, body: Value) -> Outcome<T> {
        self.typed(Method::POST, uri, Some(body), StatusCode::CREATED).await
    }

    async fn error(&mut self, method: Method, uri: &str, body: Option<Value>, want: StatusCode) -> Outcome<ErrorBody> {
        self.typed(method, uri, body, want).await
    }

    async fn raw(&mut self, uri: &str) -> Outcome<Vec<u8>> {
        let (status, bytes) = self.call(Method::GET, uri, None).await;
        if status != StatusCode::OK {
            return Err(format!("GET {uri}: status {status}"));
        }
        self.checked += 1;
        Ok(bytes)
    }
}

async fn suite() -> Outcome<String> {
    let state = AppState::new(Graph::new(), table(), 0.9).map_err(|e| e.to_string())?;
    let mut c = Client { app: router(Arc::new(state)), checked: 0 };

    let mut contributions = Vec::new();
    for (title, p, o) in [("Paper One", "uses", "A"), ("Paper Two", "employs", "B")] {
        let body = json!({"title": title, "contributions": [{"complete": false, "statements": [{"predicate": p, "object": o}]}]});
        let paper: Paper = c.create("/api/papers", body).await?;
        contributions.push(paper.contributions[0].to_string());
    }
    let (c1, c2) = (contributions[0].clone(), contributions[1].clone());

    let r: Resource = c.create("/api/resources", json!({"label": "Quicksort", "classes": ["Method"]})).await?;
    let p: Predicate = c.create("/api/predicates", json!({"label": "has complexity"})).await?;
    let l: Literal = c.create("/api/literals", json!({"value": "2", "datatype": "integer"})).await?;
    let _: Statement = c.create("/api/statements", json!({"subject": r.id, "predicate": p.id, "object": l.id})).await?;

    let e = c.error(Method::POST, "/api/statements", Some(json!({"subject": "R999", "predicate": p.id, "object": l.id})), StatusCode::NOT_FOUND).await?;
    if e.code != "unknown_referent" {
        return Err(format!("unknown subject gave {}", e.code));
    }
    let (status, _) = c.call(Method::POST, "/api/resources", None).await;
    if status != StatusCode::BAD_REQUEST {
        return Err(format!("malformed JSON gave {status}"));
    }
    c.error(Method::GET, "/api/does/not/exist", None, StatusCode::NOT_FOUND).await?;
    c.error(Method::GET, "/api/comparison?contributions=C1", None, StatusCode::UNPROCESSABLE_ENTITY).await?;

    let hits: Vec<Predicate> = c.get("/api/predicates?q=use").await?;
    if hits.first().map(|h| h.label.as_str()) != Some("uses") {
        return Err(format!("autocomplete for \"use\" gave {hits:?}"));
    }
    let _: Vec<Resource> = c.get("/api/resources?q=paper&limit=5").await?;
    let _: PaperDetail = c.get("/api/papers/R1").await?;
    let _: Subgraph = c.get(&format!("/api/contributions/{c1}/subgraph?depth=2")).await?;
    let _: Vec<Ranked> = c.get(&format!("/api/contributions/{c1}/similar?k=3")).await?;
    let health: Health = c.get("/api/health").await?;
    if health.status != "ok" || health.paper_count != 2 {
        return Err(format!("health {health:?}"));
    }

    let direct_uri = format!("/api/comparison?contributions={c1},{c2}");
    let direct: ComparisonTable = c.get(&direct_uri).await?;
    let saved: SavedComparison = c.create("/api/comparisons", json!({"contribution_ids": [c1, c2]})).await?;
    if saved.short_id.len() != 8 || !saved.short_id.bytes().all(|b| b.is_ascii_alphanumeric()) {
        return Err(format!("short id {:?}", saved.short_id));
    }
    let s = saved.short_id.clone();
    let fetched: ComparisonTable = c.get(&format!("/api/comparisons/{s}")).await?;
    if fetched != direct {
        return Err("saved comparison differs from the direct comparison".into());
    }
    if c.raw(&format!("/api/comparisons/{s}/export?format=csv")).await? != GOLDEN_CSV {
        return Err("CSV export differs from the golden file".into());
    }
    if c.raw(&format!("/api/comparisons/{s}/export?format=latex")).await? != GOLDEN_TEX {
        return Err("LaTeX export differs from the golden file".into());
    }

    let gets = [
        "/api/health".to_owned(),
        "/api/resources?q=a".into(),
        "/api/predicates?q=".into(),
        "/api/papers/R1".into(),
        format!("/api/contributions/{c1}/subgraph"),
        format!("/api/contributions/{c1}/similar"),
        direct_uri.clone(),
        format!("/api/comparisons/{s}"),
        format!("/api/comparisons/{s}/export?format=csv"),
        format!("/api/comparisons/{s}/export?format=latex"),
        "/api/export/rdf".into(),
    ];
    let before = c.raw("/api/export/rdf").await?;
    for uri in &gets {
        if c.raw(uri).await? != c.raw(uri).await? {
            return Err(format!("GET {uri} is not repeatable"));
        }
    }
    if c.raw("/api/export/rdf").await? != before {
        return Err("GET requests changed the store".into());
    }

    // a later edit shows up in the saved comparison; id and config stay put
    let employs: Predicate = c.create("/api/predicates", json!({"label": "employs"})).await?;
    let obj: Resource = c.create("/api/resources", json!({"label": "C"})).await?;
    let _: Statement = c.create("/api/statements", json!({"subject": c1, "predicate": employs.id, "object": obj.id})).await?;
    let after: ComparisonTable = c.get(&format!("/api/comparisons/{s}")).await?;
    let direct_after: ComparisonTable = c.get(&direct_uri).await?;
    if after != direct_after || after == fetched {
        return Err("saved comparison did not follow the edit".into());
    }
    Ok(format!("{} responses schema-checked; {} GET routes repeatable; goldens match", c.checked, gets.len()))
}

pub fn contract() -> Result<String, String> {
    tokio::runtime::Builder::new_multi_thread()
        .worker_threads(2)
        .build()
        .map_err(|e| e.to_string())?
        .block_on(suite())
}
