//! Mapping of library errors to exit codes.

use codinggap::certificate::CertError;
use codinggap::flow::FlowError;
use codinggap::gap::GapError;
use codinggap::instance::InstanceError;
use codinggap::protocol::ProtocolError;
use codinggap::report::ReportError;
use codinggap::route::RouteError;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn certified(message: String) -> Failure {
        Failure { code: 1, message }
    }

    pub fn input(message: String) -> Failure {
        Failure { code: 2, message }
    }

    pub fn limit(message: String) -> Failure {
        Failure { code: 3, message }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<FlowError> for Failure {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::PathLimit { .. } | FlowError::Simplex(_) | FlowError::EpsilonTooSmall { .. } => Failure::limit(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<RouteError> for Failure {
    fn from(e: RouteError) -> Self {
        match e {
            RouteError::Flow(f) => f.into(),
            RouteError::NoHopBound { .. } | RouteError::ZeroFlow => Failure::certified(e.to_string()),
            RouteError::Rounding { .. } => Failure::limit(e.to_string()),
            RouteError::Instance(_) | RouteError::Schedule(_) => Failure::input(e.to_string()),
        }
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Flow(f) => f.into(),
            CertError::Instance(_) | CertError::Json(_) | CertError::LengthCount { .. } | CertError::BadSubset => Failure::input(e.to_string()),
            CertError::AllPairsExhausted(_) | CertError::TooManyPoints(_) => Failure::limit(e.to_string()),
            _ => Failure::certified(e.to_string()),
        }
    }
}

impl From<ProtocolError> for Failure {
    fn from(e: ProtocolError) -> Self {
        match e {
            ProtocolError::Capacity { .. }
            | ProtocolError::Causality { .. }
            | ProtocolError::Undelivered(_)
            | ProtocolError::MissingCopy { .. }
            | ProtocolError::DuplicateCopy { .. }
            | ProtocolError::BucketBound { .. } => Failure::certified(e.to_string()),
            ProtocolError::Routing(_) => Failure::limit(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<GapError> for Failure {
    fn from(e: GapError) -> Self {
        match e {
            GapError::GirthNotReached { .. } | GapError::TooLarge { .. } => Failure::limit(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Route(r) => r.into(),
            ReportError::Certificate(c) => c.into(),
            ReportError::Protocol(p) => p.into(),
        }
    }
}
