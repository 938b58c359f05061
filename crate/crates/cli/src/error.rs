use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Solver {
        context: String,
        #[source]
        source: unijac_core::Error,
    },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn solver(context: impl Into<String>, source: unijac_core::Error) -> Self {
        Self::Solver {
            context: context.into(),
            source,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        use unijac_core::Error as E;
        match self {
            Self::Usage(_) => "usage",
            Self::Io { .. } => "io",
            Self::Serialize(_) => "serialize",
            Self::Solver { source, .. } => match source {
                E::InvalidParameter { .. } => "invalid_parameter",
                E::NonConvergence { .. } => "non_convergence",
                E::OrderingViolation { .. } => "ordering_violation",
                E::Singular { .. } => "singular",
                E::OutOfDomain { .. } => "out_of_domain",
                E::DegenerateMap { .. } => "degenerate_map",
                E::DegreeGuard { .. } => "degree_guard",
                E::GridTooSmall { .. } => "grid_too_small",
                E::Lp(_) => "linear_program",
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Io { .. } | Self::Serialize(_) => 4,
            Self::Solver { .. } => 1,
        }
    }

    /// `{"error": {"kind", "message", "context"?, "details"?}}`.
    pub fn to_json(&self) -> Value {
        let mut obj = json!({ "kind": self.kind(), "message": self.to_string() });
        match self {
            Self::Solver { context, source } => {
                obj["context"] = json!(context);
                if let Some(d) = details(source) {
                    obj["details"] = d;
                }
            }
            Self::Io { context, .. } => obj["context"] = json!(context),
            _ => {}
        }
        json!({ "error": obj })
    }
}

fn details(e: &unijac_core::Error) -> Option<Value> {
    use unijac_core::Error as E;
    Some(match e {
        E::InvalidParameter {
            name,
            value,
            reason,
        } => json!({ "name": name, "value": value, "reason": reason }),
        E::NonConvergence {
            iterations,
            residual,
            best,
        } => json!({
            "iterations": iterations,
            "residual": residual,
            "best_deviation": best.as_ref().map(|b| b.deviation),
        }),
        E::OrderingViolation { iteration } => json!({ "iteration": iteration }),
        E::Singular { re, im } => json!({ "z": [re, im] }),
        E::OutOfDomain { alpha, beta } | E::DegenerateMap { alpha, beta } => {
            json!({ "alpha": alpha, "beta": beta })
        }
        E::DegreeGuard { degree, max } => json!({ "degree": degree, "max": max }),
        E::GridTooSmall { grid, min } => json!({ "grid": grid, "min": min }),
        E::Lp(_) => return None,
    })
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Serialize(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Serialize(e.to_string())
    }
}
