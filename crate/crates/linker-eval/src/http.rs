//! Live linker adapters. Each reads `LINKER_<NAME>_URL` and optionally
//! `LINKER_<NAME>_KEY` (sent as a bearer token) from the environment.

use std::time::Duration;

use serde_json::Value;

use crate::client::{LinkOutcome, LinkerClient};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Service {
    /// DBpedia Spotlight `annotate`
    Spotlight,
    /// Falcon 2.0 over Wikidata
    Falcon,
}

impl Service {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "spotlight" | "dbpedia-spotlight" => Some(Service::Spotlight),
            "falcon" | "falcon2" => Some(Service::Falcon),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Service::Spotlight => "spotlight",
            Service::Falcon => "falcon",
        }
    }

    fn default_url(self) -> &'static str {
        match self {
            Service::Spotlight => "https://api.dbpedia-spotlight.org/en/annotate",
            Service::Falcon => "https://labs.tib.eu/falcon/falcon2/api",
        }
    }

    fn env_prefix(self) -> String {
        format!("LINKER_{}", self.name().to_ascii_uppercase())
    }
}

pub struct HttpLinker {
    service: Service,
    agent: ureq::Agent,
    url: String,
    key: Option<String>,
}

impl HttpLinker {
    pub fn new(service: Service, url: String, key: Option<String>, timeout: Duration) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .into();
        HttpLinker { service, agent, url, key }
    }

    pub fn from_env(service: Service, timeout: Duration) -> Self {
        let prefix = service.env_prefix();
        let url = std::env::var(format!("{prefix}_URL")).unwrap_or_else(|_| service.default_url().to_owned());
        let key = std::env::var(format!("{prefix}_KEY")).ok().filter(|k| !k.is_empty());
        Self::new(service, url, key, timeout)
    }

    fn request(&self, surface: &str) -> Result<Value, String> {
        let auth = self.key.as_ref().map(|k| format!("Bearer {k}"));
        let mut response = match self.service {
            Service::Spotlight => {
                let mut req = self.agent.get(&self.url).header("Accept", "application/json").query("text", surface);
                if let Some(a) = &auth {
                    req = req.header("Authorization", a);
                }
                req.call()
            }
            Service::Falcon => {
                let mut req = self.agent.post(&self.url).query("mode", "long");
                if let Some(a) = &auth {
                    req = req.header("Authorization", a);
                }
                req.send_json(serde_json::json!({ "text": surface }))
            }
        }
        .map_err(|e| e.to_string())?;
        let status = response.status().as_u16();
        if status != 200 {
            return Err(format!("HTTP {status}"));
        }
        response.body_mut().read_json::<Value>().map_err(|e| e.to_string())
    }
}

/// First entity IRI in a service response, if any.
pub fn first_entity(service: Service, body: &Value) -> Option<String> {
    match service {
        Service::Spotlight => body.get("Resources")?.as_array()?.first()?.get("@URI")?.as_str().map(str::to_owned),
        Service::Falcon => {
            let first = body.get("entities_wikidata")?.as_array()?.first()?;
            let iri = match first {
                Value::Object(o) => o.get("URI")?.as_str()?,
                Value::Array(a) => a.first()?.as_str()?,
                _ => return None,
            };
            Some(iri.trim_matches(|c| c == '<' || c == '>').to_owned())
        }
    }
}

impl LinkerClient for HttpLinker {
    fn name(&self) -> &str {
        self.service.name()
    }

    fn link(&self, surface: &str) -> LinkOutcome {
        match self.request(surface) {
            Ok(body) => match first_entity(self.service, &body) {
                Some(iri) => LinkOutcome::Linked(iri),
                None => LinkOutcome::Unlinked,
            },
            Err(e) => LinkOutcome::Failed(e),
        }
    }
}
