use std::time::{Duration, Instant};

use corrsets_core::search::Budget;

/// Wall-clock budget. Without a limit it only measures time.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    pub fn new(limit: Option<Duration>) -> Self {
        Self { start: Instant::now(), limit }
    }
}

impl Budget for Deadline {
    fn exhausted(&mut self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() >= l)
    }

    fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_limit_is_exhausted() {
        assert!(Deadline::new(Some(Duration::ZERO)).exhausted());
        assert!(!Deadline::new(None).exhausted());
    }
}
