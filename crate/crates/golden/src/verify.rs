use std::thread;
use std::time::Instant;

use golden_core::identities::{self, default_identities, suite_table_limit};
use golden_core::{ArithFnTable, IdentityId, VerificationReport};

/// [`identities::verify`] with the elapsed time filled in.
pub fn verify(id: IdentityId, digits: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = identities::verify(id, digits);
    report.elapsed = start.elapsed();
    report
}

/// Runs every default identity on its own thread against one shared table.
/// Reports come back in identity order regardless of completion order.
pub fn verify_all_with_table(digits: u32, table: &ArithFnTable) -> Vec<VerificationReport> {
    thread::scope(|scope| {
        let handles: Vec<_> = default_identities()
            .into_iter()
            .map(|id| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let mut report = identities::verify_with_table(id, digits, table);
                    report.elapsed = start.elapsed();
                    report
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}

pub fn verify_all(digits: u32) -> Vec<VerificationReport> {
    match suite_table_limit(digits).and_then(ArithFnTable::build) {
        Ok(table) => verify_all_with_table(digits, &table),
        // let the core produce per-identity failure reports
        Err(_) => identities::verify_all(digits),
    }
}
