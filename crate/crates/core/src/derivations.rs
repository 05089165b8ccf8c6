//! Derivation algebras: the full Leibniz nullspace and its diagonal part.
//!
//! A matrix `D` is a derivation when `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]`
//! for all basis pairs. The full space is the exact nullspace of a linear
//! system in the n² matrix entries; the diagonal subspace depends only on
//! the law's support, one equation `a_i + a_j = a_k` per nonzero slot.

use crate::algebra::{LieLaw, Slot};
use crate::error::Result;
use crate::linalg::RMatrix;
use crate::rational::Rat;
use num_traits::Zero;

/// Exact basis of the derivation algebra.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    /// Canonical echelon basis, each element an n×n matrix.
    pub basis: Vec<RMatrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves the Leibniz condition over all matrix entries. Unknown order is
/// row-major: variable `(r-1)*n + (c-1)` is the entry `D_rc`.
pub fn derivation_space(law: &LieLaw) -> Result<DerivationSpace> {
    law.require_constant()?;
    let n = law.dim();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for l in 1..=n {
                // coefficient of e_l in D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]
                let mut row = vec![Rat::zero(); n * n];
                let mut nonzero = false;
                for k in 1..=n {
                    let c = law.c(i, j, k);
                    if !c.is_zero() {
                        row[(l - 1) * n + (k - 1)] += c;
                        nonzero = true;
                    }
                }
                for p in 1..=n {
                    let c = law.c(p, j, l);
                    if !c.is_zero() {
                        row[(p - 1) * n + (i - 1)] -= c;
                        nonzero = true;
                    }
                }
                for q in 1..=n {
                    let c = law.c(i, q, l);
                    if !c.is_zero() {
                        row[(q - 1) * n + (j - 1)] -= c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        // No constraints: all of gl_n.
        RMatrix::zeros(1, n * n).nullspace()
    } else {
        RMatrix::from_rows(&rows)?.nullspace()
    };
    let matrices = basis
        .into_iter()
        .map(|v| RMatrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
        .collect();
    Ok(DerivationSpace { basis: matrices })
}

/// Direct Leibniz re-check of a candidate derivation on all basis pairs.
pub fn is_derivation(law: &LieLaw, d: &RMatrix) -> Result<bool> {
    law.require_constant()?;
    let n = law.dim();
    if d.rows() != n || d.cols() != n {
        return Err(crate::error::Error::DimMismatch(format!(
            "{}x{} candidate on a dimension-{n} law",
            d.rows(),
            d.cols()
        )));
    }
    let col = |c: usize| -> Vec<Rat> { (0..n).map(|r| d[[r, c]].clone()).collect() };
    let mut basis_vec = vec![Rat::zero(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            // D[e_i,e_j]
            let mut lhs = vec![Rat::zero(); n];
            for k in 1..=n {
                let c = law.c(i + 1, j + 1, k);
                if !c.is_zero() {
                    for r in 0..n {
                        lhs[r] += &c * &d[[r, k - 1]];
                    }
                }
            }
            // [De_i, e_j] + [e_i, De_j]
            basis_vec[j] = Rat::from_integer(1.into());
            let first = law.bracket(&col(i), &basis_vec);
            basis_vec[j] = Rat::zero();
            basis_vec[i] = Rat::from_integer(1.into());
            let second = law.bracket(&basis_vec, &col(j));
            basis_vec[i] = Rat::zero();
            for r in 0..n {
                if lhs[r] != &first[r] + &second[r] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Basis of `{a : a_k = a_i + a_j for every slot (i,j,k) in the support}`,
/// the diagonal matrices that are derivations. Depends on the support only,
/// so it is shared by exact and numeric laws.
pub fn diagonal_derivations_of_support(dim: usize, support: &[Slot]) -> Vec<Vec<Rat>> {
    if support.is_empty() {
        return RMatrix::zeros(1, dim).nullspace();
    }
    let rows: Vec<Vec<Rat>> = support
        .iter()
        .map(|&(i, j, k)| {
            let mut row = vec![Rat::zero(); dim];
            row[i - 1] += Rat::from_integer(1.into());
            row[j - 1] += Rat::from_integer(1.into());
            row[k - 1] -= Rat::from_integer(1.into());
            row
        })
        .collect();
    RMatrix::from_rows(&rows)
        .expect("support rows are nonempty and uniform")
        .nullspace()
}

/// Canonical echelon basis of the diagonal derivations.
pub fn diagonal_derivations(law: &LieLaw) -> Result<Vec<Vec<Rat>>> {
    law.require_constant()?;
    Ok(diagonal_derivations_of_support(law.dim(), &law.support()))
}

/// Dimension of the diagonal derivation space: a lower bound for the rank
/// (the dimension of a maximal torus), exact when a maximal torus is
/// diagonal in the given basis.
pub fn diagonal_rank(law: &LieLaw) -> Result<usize> {
    Ok(diagonal_derivations(law)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn heisenberg() -> LieLaw {
        let mut law = LieLaw::new(3).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law
    }

    fn law_2_2() -> LieLaw {
        let mut law = LieLaw::new(7).unwrap();
        for (i, j, k, c) in [
            (1, 2, 5, 1),
            (1, 3, 6, 1),
            (1, 4, 7, 2),
            (2, 3, 4, 1),
            (2, 6, 7, 1),
            (3, 5, 7, -1),
            (3, 6, 7, 1),
        ] {
            law.set_const(i, j, k, rat_i(c)).unwrap();
        }
        law
    }

    #[test]
    fn abelian_derivations_are_all_matrices() {
        let law = LieLaw::new(3).unwrap();
        let der = derivation_space(&law).unwrap();
        assert_eq!(der.dim(), 9);
        assert_eq!(diagonal_rank(&law).unwrap(), 3);
    }

    #[test]
    fn heisenberg_derivations() {
        let law = heisenberg();
        let der = derivation_space(&law).unwrap();
        assert_eq!(der.dim(), 6);
        for d in &der.basis {
            assert!(is_derivation(&law, d).unwrap());
        }
        assert_eq!(diagonal_rank(&law).unwrap(), 2);
        // e1 -> e3 kills the only bracket on both sides: a derivation.
        let e31 = RMatrix::from_fn(3, 3, |r, c| {
            if (r, c) == (2, 0) {
                rat_i(1)
            } else {
                rat_i(0)
            }
        });
        assert!(is_derivation(&law, &e31).unwrap());
        // e3 -> e1 sends D[e1,e2] to e1 while the right side vanishes.
        let e13 = RMatrix::from_fn(3, 3, |r, c| {
            if (r, c) == (0, 2) {
                rat_i(1)
            } else {
                rat_i(0)
            }
        });
        assert!(!is_derivation(&law, &e13).unwrap());
    }

    #[test]
    fn rank_two_law_torus_span() {
        let law = law_2_2();
        let torus = diagonal_derivations(&law).unwrap();
        assert_eq!(torus.len(), 2);
        let expected = RMatrix::from_rows(&[
            [1, 0, 0, 0, 1, 1, 1].map(rat_i).to_vec(),
            [0, 1, 1, 2, 1, 1, 2].map(rat_i).to_vec(),
        ])
        .unwrap();
        let computed = RMatrix::from_rows(&torus).unwrap();
        assert_eq!(computed.row_space(), expected.row_space());
        assert_eq!(derivation_space(&law).unwrap().dim(), 15);
    }

    #[test]
    fn direct_sum_derivations_lower_bound() {
        let h3 = heisenberg();
        let line = LieLaw::new(1).unwrap();
        let sum = h3.direct_sum(&line).unwrap();
        let d_sum = derivation_space(&sum).unwrap().dim();
        assert!(d_sum >= 6 + 1);
        for d in &derivation_space(&sum).unwrap().basis {
            assert!(is_derivation(&sum, d).unwrap());
        }
    }

    #[test]
    fn derivations_respect_scaled_laws() {
        let law = heisenberg();
        let scaled = law.rescaled(&[rat(1, 2), rat_i(3), rat_i(1)]).unwrap();
        assert_eq!(derivation_space(&scaled).unwrap().dim(), 6);
        assert_eq!(diagonal_rank(&scaled).unwrap(), 2);
    }
}
