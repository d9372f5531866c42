use core::time::Duration;

/// Source of elapsed time and a stop signal for long-running searches.
pub trait Budget {
    /// Checked once per expansion; returning true stops the search early.
    fn exhausted(&mut self) -> bool;

    fn elapsed(&self) -> Duration;
}

/// Never stops and reports no elapsed time.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self) -> bool {
        false
    }

    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}
