//! Shared fixtures for the criterion benches.

use robinhood_core::RHPosition;

/// Positions from the frozen tables, cheapest first.
pub fn table_positions() -> Vec<RHPosition> {
    vec![
        RHPosition::new(13, 5, 4),
        RHPosition::new(13, 5, 3),
        RHPosition::new(25, 5, 8),
        RHPosition::new(30, 7, 11),
    ]
}
