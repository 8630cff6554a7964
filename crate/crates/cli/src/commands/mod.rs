pub mod beurling;
pub mod commutators;
pub mod convexity;
pub mod equivalence;
pub mod evolve;
pub mod hardy_scan;
pub mod lemma1;

/// `a` for 1D lambdas, `a:b` for 2D ones.
pub fn lambda_label(lambda: [f64; 2], dim: usize) -> String {
    if dim == 1 {
        format!("{}", lambda[0])
    } else {
        format!("{}:{}", lambda[0], lambda[1])
    }
}
