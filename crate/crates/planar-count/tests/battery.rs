//! The default verification battery must come back all green.

use planar_count::oracle::{verify_all, VerifyOptions};
use planar_count::Budget;

#[test]
fn default_battery_passes() {
    let report = verify_all(&VerifyOptions::default(), &Budget::default()).unwrap();
    let failing: Vec<_> = report.rows.iter().filter(|r| !r.pass).collect();
    assert!(failing.is_empty(), "failing rows: {failing:?}");
    assert!(report.rows.len() > 100, "battery unexpectedly small: {}", report.rows.len());
}
