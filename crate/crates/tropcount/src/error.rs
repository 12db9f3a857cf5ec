use thiserror::Error;

/// Errors raised across the library. Each variant maps to one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("validation error: {message}")]
    Validation { message: String, at: Option<usize> },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("regularity error: {message}")]
    Regularity { message: String, cells: (usize, usize) },
    #[error("classification error: {0}")]
    Classification(String),
    #[error("genericity error: {0}")]
    Genericity(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("truncation error: order {given} is too small, at least {required} is required")]
    Truncation { required: usize, given: usize },
    #[error("class not in the image of the unlocalized ring: {0}")]
    NotUnlocalized(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(message: impl Into<String>, at: Option<usize>) -> Self {
        Error::Validation { message: message.into(), at }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. }
            | Error::Domain(_)
            | Error::Unsupported(_)
            | Error::Regularity { .. }
            | Error::Truncation { .. } => 2,
            Error::Genericity(_) | Error::Classification(_) => 3,
            Error::Resource(_) => 4,
            Error::NotUnlocalized(_) | Error::Consistency(_) => 5,
        }
    }

    /// Machine-readable error object: `{"error": "...", "at": index}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("error".into(), serde_json::Value::String(self.to_string()));
        if let Error::Validation { at: Some(i), .. } = self {
            obj.insert("at".into(), serde_json::Value::from(*i));
        }
        if let Error::Regularity { cells: (a, b), .. } = self {
            obj.insert("cells".into(), serde_json::json!([a, b]));
        }
        serde_json::Value::Object(obj)
    }
}
