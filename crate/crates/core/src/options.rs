use crate::error::{Error, Result};

/// Default cap on ground-set size for exponential enumerations.
pub const DEFAULT_MAX_GROUND: usize = 24;

/// Knobs shared by the enumeration engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Inputs with more ground elements than this are rejected.
    pub max_ground: usize,
    /// Worker threads; 1 runs everything on the calling thread.
    pub threads: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_ground: DEFAULT_MAX_GROUND,
            threads: 1,
        }
    }
}

impl Options {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_max_ground(mut self, max_ground: usize) -> Self {
        self.max_ground = max_ground;
        self
    }

    pub(crate) fn check_ground(&self, size: usize) -> Result<()> {
        if size > self.max_ground {
            return Err(Error::GroundTooLarge {
                size,
                cap: self.max_ground,
            });
        }
        Ok(())
    }

    /// Run `f` inside a pool with the configured number of workers.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.threads <= 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
