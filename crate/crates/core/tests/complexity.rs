use std::time::{Duration, Instant};

use netctrl_core::classify_nodes;
use netctrl_core::generate::sparse_system;

fn best_of_three(n: usize) -> Duration {
    let sys = sparse_system(n, n / 100 + 10, 10, 11);
    (0..3)
        .map(|_| {
            let t = Instant::now();
            let _ = std::hint::black_box(classify_nodes(&sys));
            t.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn classification_grows_at_most_quadratically() {
    let small = best_of_three(5_000);
    let large = best_of_three(20_000);
    // 4x the nodes may cost at most 16x, with slack for timer noise
    let bound = small * 16 * 2 + Duration::from_millis(50);
    assert!(large <= bound, "n=5000: {small:?}, n=20000: {large:?}");
}
