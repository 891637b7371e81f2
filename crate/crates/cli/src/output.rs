//! Serialization of field values and output files.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use projbill::projective::{PLine, Point2};
use projbill::{Rational, Scalar};

use crate::error::CliError;

/// How values of a field appear in JSON: numbers, `[re, im]` pairs, or exact
/// `"p/q"` strings.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl JsonScalar for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

pub fn point_json<S: JsonScalar>(p: &Point2<S>) -> Value {
    Value::Array(p.normalize().coords().iter().map(JsonScalar::to_json).collect())
}

pub fn line_json<S: JsonScalar>(l: &PLine<S>) -> Value {
    Value::Array(l.normalize().coeffs().iter().map(JsonScalar::to_json).collect())
}

pub struct OutDir(PathBuf);

impl OutDir {
    pub fn new(path: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(path)?;
        Ok(Self(path.to_path_buf()))
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.0.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
        text.push('\n');
        self.write(name, &text)
    }
}
