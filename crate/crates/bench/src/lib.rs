//! Fixtures shared by the benchmarks under `benches/`.

use pwilab::{Iet, Permutation};

/// The rotation by the golden mean written as a 2-IET.
pub fn golden_rotation() -> Iet {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    Iet::new(
        vec![phi - 1.0, 2.0 - phi],
        Permutation::new(vec![2, 1]).unwrap(),
    )
    .unwrap()
}

/// A 4-IET on `(2)(143)` with rationally independent lengths.
pub fn four_iet() -> Iet {
    Iet::new(
        vec![0.1217970148, 0.1329352086, 0.2008884081, 0.3550989199],
        Permutation::new(vec![4, 2, 1, 3]).unwrap(),
    )
    .unwrap()
}
