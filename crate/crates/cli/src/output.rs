//! Number formatting, run manifests and output sinks.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use renyi_ci::tol::Tolerances;
use serde::Serialize;
use serde_json::{Map, Value};

/// Version of the CSV and JSON layouts printed by `--schema`.
pub const SCHEMA_VERSION: u32 = 1;

/// Significant digits of every printed number.
pub const SIG_DIGITS: usize = 12;

/// Rounds `x` to [`SIG_DIGITS`] significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal for the rounded value (exponent form outside `[1e−4, 1e12)`), with `inf`/`-inf`.
pub fn fmt_sig(x: f64) -> String {
    match x {
        f64::INFINITY => "inf".into(),
        f64::NEG_INFINITY => "-inf".into(),
        x if x.is_nan() => "nan".into(),
        x => {
            let r = round_sig(x);
            if r == 0.0 || (1e-4..1e12).contains(&r.abs()) {
                format!("{r}")
            } else {
                format!("{r:e}")
            }
        }
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Provenance record written with every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub version: &'static str,
    pub schema_version: u32,
    pub tolerances: Tolerances,
    pub grids: Map<String, Value>,
    pub seed: Option<u64>,
    pub threads: usize,
    pub wall_time_seconds: f64,
}

/// Collects manifest fields while a command runs.
pub struct Run {
    start: Instant,
    grids: Map<String, Value>,
    seed: Option<u64>,
}

impl Run {
    pub fn start() -> Self {
        Self {
            start: Instant::now(),
            grids: Map::new(),
            seed: None,
        }
    }

    pub fn grid(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.grids.insert(name.to_owned(), value.into());
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn finish(&self) -> RunManifest {
        RunManifest {
            command_line: std::env::args().collect(),
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            tolerances: Tolerances::default(),
            grids: self.grids.clone(),
            seed: self.seed,
            threads: rayon::current_num_threads(),
            wall_time_seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

/// Failure to write an output file.
#[derive(Debug)]
pub struct WriteError {
    pub path: PathBuf,
    pub source: io::Error,
}

impl std::fmt::Display for WriteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cannot write {}: {}", self.path.display(), self.source)
    }
}

fn create(path: &Path) -> Result<File, WriteError> {
    File::create(path).map_err(|source| WriteError {
        path: path.to_owned(),
        source,
    })
}

/// Serializes `body` with a `manifest` field, numbers rounded, pretty-printed.
pub fn json_document<T: Serialize>(body: &T, manifest: &RunManifest) -> String {
    let mut v = serde_json::to_value(body).expect("report serializes");
    let m = serde_json::to_value(manifest).expect("manifest serializes");
    match &mut v {
        Value::Object(o) => {
            o.insert("manifest".into(), m);
        }
        other => {
            let mut o = Map::new();
            o.insert("data".into(), other.take());
            o.insert("manifest".into(), m);
            *other = Value::Object(o);
        }
    }
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to stdout when `out` is `None`.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), WriteError> {
    match out {
        Some(path) => create(path)?
            .write_all(text.as_bytes())
            .map_err(|source| WriteError {
                path: path.to_owned(),
                source,
            }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Sidecar path `<out>.manifest.json`.
pub fn sidecar(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
