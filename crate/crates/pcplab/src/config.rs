use pcplab_core::Session;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("n must be at least 2, got {0}")]
    Base(u32),
    #[error("k must be at least 1, got {0}")]
    Slots(usize),
    #[error("{0} must be positive")]
    Bound(&'static str),
    #[error("unknown suite `{0}`")]
    Suite(String),
}

/// Everything a suite run depends on. Two runs with equal configs produce
/// identical reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub n: u32,
    pub k: usize,
    pub seed: u64,
    pub samples: usize,
    pub max_word_len: usize,
    pub max_k: u32,
    pub max_exp: u32,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig { n: 2, k: 1, seed: 0, samples: 500, max_word_len: 3, max_k: 3, max_exp: 4 }
    }
}

impl SessionConfig {
    pub fn new(n: u32, k: usize) -> Self {
        SessionConfig { n, k, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 2 {
            return Err(ConfigError::Base(self.n));
        }
        if self.k < 1 {
            return Err(ConfigError::Slots(self.k));
        }
        for (name, v) in [
            ("samples", self.samples),
            ("max_word_len", self.max_word_len),
            ("max_k", self.max_k as usize),
            ("max_exp", self.max_exp as usize),
        ] {
            if v == 0 {
                return Err(ConfigError::Bound(name));
            }
        }
        Ok(())
    }

    pub fn session(&self) -> Result<Session, ConfigError> {
        self.validate()?;
        Session::new(self.n, self.k).map_err(|_| ConfigError::Base(self.n))
    }

    pub fn cuntz_session(&self) -> Result<Session, ConfigError> {
        SessionConfig { k: 1, ..*self }.session()
    }
}
