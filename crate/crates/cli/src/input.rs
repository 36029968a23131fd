use std::path::Path;

use serde::de::DeserializeOwned;

/// Reads and parses a JSON file, naming the line/column for syntax errors
/// and the field path for schema errors.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let where_ = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => format!(
                "{}: malformed JSON at line {} column {}: {inner}",
                path.display(),
                inner.line(),
                inner.column()
            ),
            _ => format!("{}: schema violation at `{where_}`: {inner}", path.display()),
        }
    })
}
