use thiserror::Error;

/// Errors raised while reading or validating a structured-system description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("invalid JSON system: {0}")]
    Json(String),
}

impl ModelError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ModelError::Syntax {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn validation(message: impl Into<String>) -> Self {
        ModelError::Validation(message.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("flow is not maximum: an augmenting path from the source still exists")]
    NotMaximum,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ControlError {
    #[error("no admissible steering set: maximum linking {achieved} < {required} targets")]
    Unsolvable { achieved: usize, required: usize },
    #[error("node {node} is outside 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("value range must satisfy 0 < lo <= hi, got [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("every sample point was numerically singular for (sI - A)")]
    SingularSample,
    #[error("system is not right invertible: transfer rank {rank} < {outputs} outputs")]
    NotRightInvertible { rank: usize, outputs: usize },
    #[error("reference trajectory must start at zero, |y_ref(0)| = {0}")]
    NonzeroInitialReference(f64),
    #[error("invalid tracking task: {0}")]
    InvalidTask(String),
    #[error("numeric cross-checks are limited to n <= {max} states, got {n}")]
    TooLarge { n: usize, max: usize },
}
