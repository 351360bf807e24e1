use std::path::Path;

use thiserror::Error;

use crate::rational::Rational;
use crate::seqlang::{parse_file, to_set_spec};
use crate::sequences::{
    add_finite, build_a, build_t, builtin_dyadic, builtin_harmonic, builtin_thirds, finite_listing,
    rationals_in_interval, remove_finite, shift_spec, SetSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot resolve `{segment}`: {message}")]
pub struct ResolveError {
    pub segment: String,
    pub message: String,
}

fn fail(segment: &str, message: impl ToString) -> ResolveError {
    ResolveError {
        segment: segment.to_string(),
        message: message.to_string(),
    }
}

fn rational(segment: &str, text: &str) -> Result<Rational, ResolveError> {
    text.trim()
        .parse()
        .map_err(|e| fail(segment, format!("{text:?}: {e}")))
}

fn rationals(segment: &str, text: &str, sep: char) -> Result<Vec<Rational>, ResolveError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(sep).map(|v| rational(segment, v)).collect()
}

fn family_index(segment: &str, text: &str) -> Result<u64, ResolveError> {
    text.parse()
        .map_err(|_| fail(segment, format!("{text:?} is not a family index")))
}

/// Splits `path[:i=k]`; `k` defaults to 1.
fn file_and_index(segment: &str, rest: &str) -> Result<(String, i64), ResolveError> {
    match rest.rsplit_once(":i=") {
        Some((path, k)) => {
            let k = k
                .parse()
                .map_err(|_| fail(segment, format!("{k:?} is not an integer")))?;
            Ok((path.to_string(), k))
        }
        None => Ok((rest.to_string(), 1)),
    }
}

fn seq_spec(segment: &str, rest: &str) -> Result<SetSpec, ResolveError> {
    let (path, i) = file_and_index(segment, rest)?;
    let def = parse_file(Path::new(&path)).map_err(|e| fail(segment, e))?;
    Ok(to_set_spec(&def, i, segment))
}

fn base(segment: &str) -> Result<SetSpec, ResolveError> {
    match segment {
        "harmonic" => return Ok(builtin_harmonic()),
        "thirds" => return Ok(builtin_thirds()),
        _ => {}
    }
    let Some((kind, rest)) = segment.split_once(':') else {
        return Err(fail(segment, "unknown family"));
    };
    match kind {
        "T" => build_t(family_index(segment, rest)?).map_err(|e| fail(segment, e)),
        "A" => build_a(family_index(segment, rest)?).map_err(|e| fail(segment, e)),
        "interval" => {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| fail(segment, "expected interval:<a>,<b>"))?;
            rationals_in_interval(rational(segment, a)?, rational(segment, b)?)
                .map_err(|e| fail(segment, e))
        }
        "finite" => finite_listing(rationals(segment, rest, ',')?).map_err(|e| fail(segment, e)),
        "seq" => seq_spec(segment, rest),
        "dyadic" => Ok(builtin_dyadic(&seq_spec(segment, rest)?)),
        _ => Err(fail(segment, "unknown family")),
    }
}

fn modifier(spec: SetSpec, segment: &str) -> Result<SetSpec, ResolveError> {
    let (name, value) = segment
        .split_once('=')
        .ok_or_else(|| fail(segment, "expected +shift=, +drop= or +add="))?;
    match name {
        "shift" => {
            let m = value
                .parse()
                .map_err(|_| fail(segment, format!("{value:?} is not a count")))?;
            shift_spec(&spec, m).map_err(|e| fail(segment, e))
        }
        "drop" => Ok(remove_finite(&spec, &rationals(segment, value, ';')?)),
        "add" => add_finite(&spec, &rationals(segment, value, ';')?).map_err(|e| fail(segment, e)),
        _ => Err(fail(segment, "unknown modifier")),
    }
}

/// Resolves a textual family reference such as `A:3+shift=2+drop=1;5/2`.
pub fn resolve(text: &str) -> Result<SetSpec, ResolveError> {
    let text = text.trim();
    let mut segments = text.split('+');
    let head = segments.next().unwrap_or_default();
    let mut spec = base(head)?;
    for seg in segments {
        spec = modifier(spec, seg)?;
    }
    Ok(spec.with_label(text))
}
