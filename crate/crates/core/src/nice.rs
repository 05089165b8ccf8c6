//! Nice-basis detection and the positive-solution criterion on the Gram
//! matrix of weight vectors.
//!
//! A basis is nice when every bracket `[X_i, X_j]` hits at most one basis
//! vector and, for each pair `(i, k)`, at most one `j` has `c_ij^k != 0`
//! (both read through the antisymmetric completion). For nice laws, being
//! an Einstein nilradical is equivalent to `Ux = [1]` having a solution
//! with all coordinates positive, where `U` is the Gram matrix of the
//! weight vectors `E_kk - E_ii - E_jj` over the support.

use crate::algebra::{LieLaw, Slot};
use crate::error::Result;
use crate::linalg::RMatrix;
use crate::rational::{rat_i, Rat};
use crate::simplex::{lp_feasible, Feasibility, LpProblem, VarSign};
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceViolation {
    /// `[X_i, X_j]` hits two or more basis vectors.
    PairTargets { i: usize, j: usize, targets: Vec<usize> },
    /// Two or more partners `j` satisfy `c_ij^k != 0` for the same `(i, k)`.
    SharedTarget { i: usize, k: usize, partners: Vec<usize> },
}

impl std::fmt::Display for NiceViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NiceViolation::PairTargets { i, j, targets } => {
                write!(f, "[X{i},X{j}] hits basis vectors {targets:?}")
            }
            NiceViolation::SharedTarget { i, k, partners } => {
                write!(f, "(i,k)=({i},{k}) receives from j in {partners:?}")
            }
        }
    }
}

/// All violations of the nice-basis conditions; empty iff the support is
/// nice. Depends on the support only, so numeric laws share it.
pub fn nice_violations_of_support(_dim: usize, support: &[Slot]) -> Vec<NiceViolation> {
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut by_target: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(i, j, k) in support {
        by_pair.entry((i, j)).or_default().push(k);
        by_target.entry((i, k)).or_default().push(j);
        by_target.entry((j, k)).or_default().push(i);
    }
    let mut out = Vec::new();
    for ((i, j), mut targets) in by_pair {
        if targets.len() > 1 {
            targets.sort_unstable();
            out.push(NiceViolation::PairTargets { i, j, targets });
        }
    }
    for ((i, k), mut partners) in by_target {
        if partners.len() > 1 {
            partners.sort_unstable();
            out.push(NiceViolation::SharedTarget { i, k, partners });
        }
    }
    out
}

/// Violations for an exact instantiated law; empty iff its basis is nice.
pub fn is_nice(law: &LieLaw) -> Result<Vec<NiceViolation>> {
    law.require_constant()?;
    Ok(nice_violations_of_support(law.dim(), &law.support()))
}

/// The weight vector of a slot: `+1` at `k`, `-1` at `i` and `j`, entries
/// adding when indices coincide. Its coordinate sum is always `-1`.
pub fn weight_vector(dim: usize, (i, j, k): Slot) -> Vec<i64> {
    let mut w = vec![0i64; dim];
    w[i - 1] -= 1;
    w[j - 1] -= 1;
    w[k - 1] += 1;
    w
}

/// Gram matrix `U_pq = <w_p, w_q>` over the support in lexicographic slot
/// order. Depends on the support only.
pub fn gram_matrix(law: &LieLaw) -> Result<RMatrix> {
    law.require_constant()?;
    let weights: Vec<Vec<i64>> = law
        .support()
        .into_iter()
        .map(|slot| weight_vector(law.dim(), slot))
        .collect();
    let m = weights.len();
    Ok(RMatrix::from_fn(m, m, |p, q| {
        rat_i(weights[p].iter().zip(&weights[q]).map(|(a, b)| a * b).sum())
    }))
}

/// Outcome of the positive-solution criterion.
#[derive(Clone, Debug)]
pub struct NiceCriterion {
    /// Empty iff the basis is nice; the criterion only applies then.
    pub violations: Vec<NiceViolation>,
    /// `None` when the basis is not nice.
    pub einstein: Option<bool>,
    /// A positive rational solution of `Ux = [1]` when `einstein` is true.
    pub witness: Option<Vec<Rat>>,
    /// 1-based indices of coordinates that are constant `<= 0` on the
    /// solution set of `Ux = [1]` (certifying infeasibility when present).
    pub forced_zero: Vec<usize>,
}

/// Decides `Ux = [1] with x > 0` exactly for nice laws; for non-nice laws
/// the verdict is not applicable and `einstein` is `None`.
pub fn nice_criterion(law: &LieLaw) -> Result<NiceCriterion> {
    let violations = is_nice(law)?;
    if !violations.is_empty() {
        return Ok(NiceCriterion {
            violations,
            einstein: None,
            witness: None,
            forced_zero: Vec::new(),
        });
    }
    let u = gram_matrix(law)?;
    let m = u.rows();
    if m == 0 {
        // Zero law: no weights, vacuously no positive solution demanded.
        return Ok(NiceCriterion {
            violations,
            einstein: None,
            witness: None,
            forced_zero: Vec::new(),
        });
    }
    let ones = vec![Rat::one(); m];
    let problem = LpProblem::equality(u.clone(), ones.clone(), vec![VarSign::Positive; m]);
    match lp_feasible(&problem)? {
        Feasibility::Feasible { witness, .. } => {
            debug_assert_eq!(u.mul_vec(&witness).expect("square system"), ones);
            Ok(NiceCriterion {
                violations,
                einstein: Some(true),
                witness: Some(witness),
                forced_zero: Vec::new(),
            })
        }
        Feasibility::Infeasible { forced_zero } => Ok(NiceCriterion {
            violations,
            einstein: Some(false),
            witness: None,
            forced_zero: forced_zero.into_iter().map(|i| i + 1).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn heisenberg() -> LieLaw {
        let mut law = LieLaw::new(3).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law
    }

    /// Rank-three curve with brackets on six slots; parameter fixed by the
    /// caller.
    fn rank3_curve(lambda: i64) -> LieLaw {
        let mut law = LieLaw::new(7).unwrap();
        for (i, j, k, c) in [
            (1, 2, 4, 1),
            (1, 3, 5, 1),
            (1, 6, 7, 1),
            (2, 3, 6, 1),
            (2, 5, 7, lambda),
            (3, 4, 7, lambda - 1),
        ] {
            law.set_const(i, j, k, rat_i(c)).unwrap();
        }
        law
    }

    #[test]
    fn heisenberg_is_nice_and_einstein() {
        let law = heisenberg();
        assert!(is_nice(&law).unwrap().is_empty());
        assert_eq!(gram_matrix(&law).unwrap(), RMatrix::diagonal(&[rat_i(3)]));
        let verdict = nice_criterion(&law).unwrap();
        assert_eq!(verdict.einstein, Some(true));
        assert_eq!(verdict.witness, Some(vec![rat(1, 3)]));
    }

    #[test]
    fn shared_target_violation_is_reported() {
        // Two slots feed e7 from e3: (3,5,7) and (3,6,7).
        let mut law = LieLaw::new(7).unwrap();
        law.set_const(3, 5, 7, rat_i(-1)).unwrap();
        law.set_const(3, 6, 7, rat_i(1)).unwrap();
        let violations = is_nice(&law).unwrap();
        assert_eq!(
            violations[0],
            NiceViolation::SharedTarget {
                i: 3,
                k: 7,
                partners: vec![5, 6]
            }
        );
        let verdict = nice_criterion(&law).unwrap();
        assert_eq!(verdict.einstein, None);
    }

    #[test]
    fn pair_target_violation_is_reported() {
        let mut law = LieLaw::new(4).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law.set_const(1, 2, 4, rat_i(1)).unwrap();
        let violations = is_nice(&law).unwrap();
        assert_eq!(
            violations[0],
            NiceViolation::PairTargets {
                i: 1,
                j: 2,
                targets: vec![3, 4]
            }
        );
    }

    #[test]
    fn rank3_curve_gram_matrix_generic() {
        let law = rank3_curve(2);
        assert!(is_nice(&law).unwrap().is_empty());
        let u = gram_matrix(&law).unwrap();
        let expected: [[i64; 6]; 6] = [
            [3, 1, 1, 1, 1, -1],
            [1, 3, 1, 1, -1, 1],
            [1, 1, 3, -1, 1, 1],
            [1, 1, -1, 3, 1, 1],
            [1, -1, 1, 1, 3, 1],
            [-1, 1, 1, 1, 1, 3],
        ];
        for p in 0..6 {
            for q in 0..6 {
                assert_eq!(u[[p, q]], rat_i(expected[p][q]), "U[{p}][{q}]");
            }
        }
        let verdict = nice_criterion(&law).unwrap();
        assert_eq!(verdict.einstein, Some(true));
        let x = verdict.witness.unwrap();
        assert!(x.iter().all(|v| v > &rat_i(0)));
    }

    #[test]
    fn rank3_curve_degenerate_parameters_fail() {
        for lambda in [0, 1] {
            let law = rank3_curve(lambda);
            let verdict = nice_criterion(&law).unwrap();
            assert_eq!(verdict.einstein, Some(false), "lambda = {lambda}");
        }
        // At 0 the second weight coordinate is forced to vanish.
        let verdict = nice_criterion(&rank3_curve(0)).unwrap();
        assert_eq!(verdict.forced_zero, vec![2]);
    }

    #[test]
    fn criterion_is_invariant_under_rescaling() {
        let law = rank3_curve(2);
        let scaled = law
            .rescaled(&[
                rat(1, 2),
                rat_i(3),
                rat(-2, 7),
                rat_i(1),
                rat_i(5),
                rat(7, 3),
                rat_i(-1),
            ])
            .unwrap();
        assert_eq!(gram_matrix(&scaled).unwrap(), gram_matrix(&law).unwrap());
        assert_eq!(
            nice_criterion(&scaled).unwrap().einstein,
            nice_criterion(&law).unwrap().einstein
        );
    }
}
