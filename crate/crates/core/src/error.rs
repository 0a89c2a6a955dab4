use thiserror::Error;

/// Errors shared by the symbolic kernel and the ODE front end.
///
/// Budget exhaustion is deliberately not an error: bounded procedures
/// report it through their result type (`Inconclusive`), never as a
/// wrong verdict.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero while normalizing an expression")]
    DivisionByZero,

    #[error("jet variable y^({found}) present, total derivative cutoff is {cutoff}")]
    CutoffExceeded { found: u8, cutoff: u8 },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("equation is not solved for the highest derivative: {0}")]
    NotSolvedForHighest(String),

    #[error("jet order out of range: {0}")]
    JetOrder(String),

    #[error("ODE order must be at least 2, got {0}")]
    OrderTooLow(u8),

    #[error("not of the cubic candidate form: {0}")]
    NotCubicForm(String),

    #[error("undetermined coefficient functions present: {0}")]
    UnknownsPresent(String),

    #[error("degenerate point transformation (vanishing Jacobian or leading coefficient)")]
    DegenerateTransformation,

    #[error("unsupported target equation: {0}")]
    UnsupportedTarget(String),
}

impl Error {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
