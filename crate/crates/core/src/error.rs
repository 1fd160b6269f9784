use thiserror::Error;

/// Errors raised by every stage of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shell {shell}: unsupported shell type code {code} (only Cartesian s, p, 6d, 10f, 15g are handled)")]
    UnsupportedShell { shell: usize, code: i64 },

    #[error("malformed input: {0}")]
    MalformedFile(String),

    #[error("unsupported element Z={z}: {what}")]
    UnsupportedElement { z: u32, what: &'static str },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("spin density integrates to {s_eff:.3e}; closed-shell inputs carry no spin current")]
    ClosedShellInput { s_eff: f64 },

    #[error("no nuclear g-factor for isotope {0}; supply one as an override")]
    MissingNuclearData(String),

    #[error("n_beta ({n_beta}) exceeds n_alpha ({n_alpha}); flip the spin of the input so that alpha is the majority spin")]
    BetaExcess { n_alpha: usize, n_beta: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
