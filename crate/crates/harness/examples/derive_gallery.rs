//! Regenerates `fixtures/gallery.json`.
//!
//!     cargo run -p frechet-harness --example derive_gallery > crates/harness/fixtures/gallery.json
//!
//! Every distance below follows from two facts: the start points must be
//! matched, which bounds the distance from below, and matching vertex `i` to
//! vertex `i` along straight segments bounds it from above.

use serde_json::{json, Value};

fn curve(rows: &[Vec<f64>]) -> Value {
    json!({ "dim": rows[0].len(), "vertices": rows })
}

fn main() {
    // G1: a unit segment on the line and its reversal; start points are 1 apart.
    let g1 = json!({
        "p": curve(&[vec![0.0], vec![1.0]]),
        "q": curve(&[vec![1.0], vec![0.0]]),
        "distance": 1.0,
        "distance_tol": 1e-6,
    });

    // G2: two unit-wide hooks that agree on the base and fold to opposite
    // sides at height gap/2. Width 1 against distance `gap`.
    let gap = 0.1;
    let hook = |side: f64| curve(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, side * gap / 2.0], vec![0.0, side * gap / 2.0]]);
    let g2 = json!({
        "p": hook(1.0),
        "q": hook(-1.0),
        "distance": gap,
        "distance_tol": 1e-6,
        "ball_radius": 1.2 * gap,
    });

    // G3: a loop in R^3 whose two tails cross with clearance delta, one
    // above the other; the mirror image swaps which tail is on top. Tails
    // reach 2*delta past the crossing. The center flattens both into z = 0.
    let delta = 0.1;
    let tail = 2.0 * delta;
    let side = 0.6;
    let loop_curve = |z: f64| {
        vec![
            vec![-tail, 0.0, z * delta / 2.0],
            vec![tail, 0.0, z * delta / 2.0],
            vec![side, 0.0, 0.0],
            vec![side, side, 0.0],
            vec![0.0, side, 0.0],
            vec![0.0, tail, -z * delta / 2.0],
            vec![0.0, -tail, -z * delta / 2.0],
        ]
    };
    let g3 = json!({
        "p": curve(&loop_curve(1.0)),
        "q": curve(&loop_curve(-1.0)),
        "center": curve(&loop_curve(0.0)),
        "delta": delta,
        "distance": delta,
        "distance_tol": 0.01,
        "ball_radius": delta,
        "bump": 0.04,
    });

    let out = json!({ "g1": g1, "g2": g2, "g3": g3 });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
}
