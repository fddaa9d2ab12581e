use std::fmt;

/// Outcome column of a benchmark row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOutcome {
    Tree,
    Irreducible,
}

impl fmt::Display for BenchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchOutcome::Tree => f.write_str("tree"),
            BenchOutcome::Irreducible => f.write_str("irreducible"),
        }
    }
}

/// One benchmark measurement: net size (|P| + |T|), reduction wall time in
/// microseconds, and the reduction outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    pub size: usize,
    pub micros: u64,
    pub outcome: BenchOutcome,
}

/// Renders rows as `size,micros,outcome` CSV: UTF-8, LF line endings, header
/// always present.
pub fn write_bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("size,micros,outcome\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", row.size, row.micros, row.outcome));
    }
    out
}
