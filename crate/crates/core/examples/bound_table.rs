//! Prints the bound chain d + 2 <= chi(d) <= kappa(d) + 1 <= 3^d for a range
//! of dimensions, as text and as JSON rows.
//!
//! Usage: cargo run --example bound_table -- [d_min] [d_max]

use tangency_lab::harness::{render_bounds, verify_bounds};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = match args[..] {
        [a, b, ..] => (a, b),
        [a] => (a, a),
        [] => (1, 12),
    };
    let (rows, ok) = verify_bounds(lo, hi).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    print!("{}", render_bounds(&rows, false));
    println!("all rows consistent: {ok}");
    print!("{}", render_bounds(&rows[..1], true));
}
