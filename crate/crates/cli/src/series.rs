//! Resolution of `--series` arguments into coefficient streams.

use std::path::Path;

use ratcrit::criterion::{family, FiniteStream, SeriesStream, StreamJson};
use ratcrit::rational::{expand_exact, parse, to_element};
use ratcrit::{ExactComplex, GeneratorSet};

use crate::error::CliError;

/// Stream for `spec`. Families live on the first generator; expressions
/// are expanded to `radius`.
pub fn resolve(
    gens: &GeneratorSet,
    spec: &str,
    radius: usize,
) -> Result<Box<dyn SeriesStream<ExactComplex>>, CliError> {
    if let Some(text) = spec.strip_prefix("expr:") {
        let e = parse(text, gens)?;
        return Ok(Box::new(expand_exact(&e, radius)?.to_stream()));
    }
    if let Some(text) = spec.strip_prefix("finite:") {
        let e = parse(text, gens)?;
        return Ok(Box::new(FiniteStream(to_element(&e)?)));
    }
    let path = spec.strip_prefix("file:").or_else(|| spec.ends_with(".json").then_some(spec));
    if let Some(path) = path {
        return Ok(Box::new(read_stream(gens, Path::new(path))?));
    }
    family(spec, 1).map(|f| Box::new(f) as Box<dyn SeriesStream<ExactComplex>>).ok_or_else(|| {
        CliError::Config(format!(
            "unknown series `{spec}`; expected expr:, finite:, file:, a .json path or one of {}",
            ratcrit::criterion::families::FAMILY_SYNTAX.join(", ")
        ))
    })
}

fn read_stream(
    gens: &GeneratorSet,
    path: &Path,
) -> Result<ratcrit::criterion::TruncatedStream<ExactComplex>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let json: StreamJson =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(json.to_stream(gens)?)
}
