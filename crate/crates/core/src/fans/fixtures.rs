use num_bigint::BigInt;

use super::{ConeSpec, CuspLabel, FanSystem, IdentificationSpec};
use crate::exact_linalg::IntMatrix;

/// `[[2,1],[1,1]]`, the hyperbolic unit used by the Hilbert fixtures.
pub fn hilbert_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[[2, 1], [1, 1]])
}

/// Rank-2 window {σ₀,…,σ_{length−1}} with σₖ = ⟨vₖ, vₖ₊₁⟩, vₖ = Mᵏ(1,0),
/// identified by `m` itself.
pub fn hilbert_cusp_window(m: &IntMatrix, length: usize) -> FanSystem {
    hilbert_cusp_window_power(m, length, 1)
}

/// Same window, identified by `m^power` instead of `m`.
pub fn hilbert_cusp_window_power(m: &IntMatrix, length: usize, power: u32) -> FanSystem {
    assert!(m.rows() == 2 && m.cols() == 2, "expected a 2x2 matrix");
    let mut rays = vec![vec![BigInt::from(1), BigInt::from(0)]];
    for k in 0..length {
        let next = m.apply(&rays[k]);
        rays.push(next);
    }
    let cones =
        (0..length).map(|k| ConeSpec { cusp: "F".into(), rays: vec![rays[k].clone(), rays[k + 1].clone()] }).collect();
    let ident = IdentificationSpec { matrix: m.pow(power), source: "F".into(), target: "F".into() };
    FanSystem::new(vec![CuspLabel::new("F", 2)], cones, vec![ident]).expect("valid Hilbert window")
}
