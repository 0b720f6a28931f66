use num_bigint::BigInt;
use num_traits::One;

use super::{smith_normal_form, IntMatrix, LinalgError};

/// Index of the lattice spanned by `vectors` inside its saturation
/// (the lattice points of its real span). Fails on dependent input.
pub fn saturation_index(vectors: &[Vec<BigInt>], ambient_rank: usize) -> Result<BigInt, LinalgError> {
    let a = IntMatrix::from_columns(vectors, ambient_rank)?;
    let snf = smith_normal_form(&a);
    if snf.rank() < vectors.len() {
        return Err(LinalgError::DependentInput);
    }
    Ok(snf.invariant_factors().iter().product())
}

/// Returns a unimodular `ambient_rank × ambient_rank` matrix whose first
/// columns are `vectors`. Succeeds iff the vectors span a saturated sublattice.
pub fn extend_to_lattice_basis(vectors: &[Vec<BigInt>], ambient_rank: usize) -> Result<IntMatrix, LinalgError> {
    let k = vectors.len();
    let a = IntMatrix::from_columns(vectors, ambient_rank)?;
    let snf = smith_normal_form(&a);
    if snf.rank() < k {
        return Err(LinalgError::DependentInput);
    }
    let index: BigInt = snf.invariant_factors().iter().product();
    if !index.is_one() {
        return Err(LinalgError::NotSaturated { index });
    }
    // a = u⁻¹ [I_k; 0] v⁻¹, so u⁻¹ · diag(v⁻¹, I) starts with the columns of a.
    let u_inv = snf.u.unimodular_inverse()?;
    let v_inv = snf.v.unimodular_inverse()?;
    let mut block = IntMatrix::identity(ambient_rank);
    for i in 0..k {
        for j in 0..k {
            block[(i, j)] = v_inv[(i, j)].clone();
        }
    }
    let basis = &u_inv * &block;
    debug_assert!((0..k).all(|j| basis.column(j) == vectors[j]));
    Ok(basis)
}
