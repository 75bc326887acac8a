use std::fmt;

/// Errors raised by the numeric core and the experiment runners.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A block, stream or bit sequence has the wrong length.
    Size(String),
    /// Invalid channel coefficients (empty list, `a(0) = 0`, non-finite values).
    Channel(String),
    /// The denominator `A(z)` has a root outside the stability radius.
    Unstable(String),
    /// A subcarrier gain `A_k` or `B_k` is (numerically) zero.
    GainSingular { polynomial: char, index: usize, magnitude: f64 },
    /// OFDM dimensions or experiment parameters are inconsistent.
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that come from the channel rather than the configuration.
    pub fn is_channel_error(&self) -> bool {
        matches!(
            self,
            Error::Channel(_) | Error::Unstable(_) | Error::GainSingular { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Size(msg) => write!(f, "size error: {msg}"),
            Error::Channel(msg) => write!(f, "channel error: {msg}"),
            Error::Unstable(msg) => write!(f, "channel unstable: {msg}"),
            Error::GainSingular {
                polynomial,
                index,
                magnitude,
            } => write!(
                f,
                "gain singular: |{polynomial}_k| = {magnitude:e} at subcarrier k={index}"
            ),
            Error::Config(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
