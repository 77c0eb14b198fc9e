//! Small helpers for walking a parsed JSON document with located errors.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub(crate) fn parse(path: &Path, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::MalformedFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub(crate) fn as_object<'a>(
    path: &Path,
    loc: &str,
    v: &'a Value,
) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, loc, "expected an object"))
}

pub(crate) fn as_array<'a>(path: &Path, loc: &str, v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(path, loc, "expected an array"))
}

pub(crate) fn as_str<'a>(path: &Path, loc: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::schema(path, loc, "expected a string"))
}

pub(crate) fn as_usize(path: &Path, loc: &str, v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::schema(path, loc, "expected a non-negative integer"))
}

pub(crate) fn required<'a>(
    path: &Path,
    obj: &'a Map<String, Value>,
    key: &str,
) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(path, key, format!("missing field `{key}`")))
}

pub(crate) fn reject_unknown(path: &Path, obj: &Map<String, Value>, known: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(Error::schema(
            path,
            k.as_str(),
            format!("unknown field `{k}`"),
        )),
        None => Ok(()),
    }
}

pub(crate) fn string_list(path: &Path, loc: &str, v: &Value) -> Result<Vec<String>> {
    as_array(path, loc, v)?
        .iter()
        .enumerate()
        .map(|(i, item)| as_str(path, &format!("{loc}[{i}]"), item).map(str::to_string))
        .collect()
}
