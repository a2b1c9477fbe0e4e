use std::fmt;

use lipkit::dynamics::DynamicsError;
use lipkit::fourlip::FourierError;
use lipkit::matcore::MatError;
use lipkit::netbounds::NetError;
use lipkit::specgame::GameError;
use lipkit::svdcalc::SvdCalcError;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GRAPH: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;

/// Error carrying the process exit code for its category.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERIC,
            message: message.into(),
        }
    }

    pub fn context(mut self, what: impl fmt::Display) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::parse(e.to_string())
    }
}

impl From<MatError> for CliError {
    fn from(e: MatError) -> Self {
        let code = match e {
            MatError::Parse { .. }
            | MatError::Io(_)
            | MatError::RaggedRow { .. }
            | MatError::EmptyShape
            | MatError::LengthMismatch { .. }
            | MatError::NonFinite { .. }
            | MatError::InvalidTolerance(_) => EXIT_PARSE,
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SvdCalcError> for CliError {
    fn from(e: SvdCalcError) -> Self {
        let code = match e {
            SvdCalcError::DegenerateSpectrum { .. } | SvdCalcError::ZeroSingular { .. } => EXIT_DEGENERATE,
            SvdCalcError::Mat(m) => return m.into(),
            SvdCalcError::InvalidStep(_) | SvdCalcError::IndexOutOfRange { .. } => EXIT_PARSE,
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<NetError> for CliError {
    fn from(e: NetError) -> Self {
        let code = match e {
            NetError::CycleDetected | NetError::NotAPath(..) => EXIT_GRAPH,
            NetError::Mat(m) => return m.into(),
            NetError::NonBracketable(_) | NetError::ZeroLipschitz | NetError::Estimation(_) => EXIT_NUMERIC,
            _ => EXIT_PARSE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FourierError> for CliError {
    fn from(e: FourierError) -> Self {
        let code = match e {
            FourierError::EmptyBand => EXIT_NUMERIC,
            _ => EXIT_PARSE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Svd(s) => s.into(),
            DynamicsError::Mat(m) => m.into(),
            DynamicsError::InvalidArgument(_) | DynamicsError::NotSymmetric(_) => Self::parse(e.to_string()),
            _ => Self::numeric(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        let code = match e {
            GameError::Parse { .. }
            | GameError::Io(_)
            | GameError::IncompleteTable { .. }
            | GameError::InvalidArgument(_)
            | GameError::PlayerCountTooLarge { .. } => EXIT_PARSE,
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}
