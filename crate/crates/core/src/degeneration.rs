//! Diagonal one-parameter degenerations compatible with the pre-Einstein
//! derivation, and the invariant comparison that certifies a non-closed
//! orbit.
//!
//! A diagonal `X = diag(a)` with `Σa_i = 0` and `Σφ_i a_i = 0` acts on a
//! slot `(i,j,k)` with factor `e^{-t(a_i + a_j - a_k)}`. When every slot
//! exponent `a_i + a_j - a_k` is nonnegative and at least one is positive,
//! the `t → ∞` limit exists and drops exactly the strict slots. A limit
//! with different derivation-algebra dimension or central-series dimensions
//! is provably non-isomorphic, which rules out being an Einstein
//! nilradical.

use crate::algebra::{LieLaw, Slot};
use crate::derivations::derivation_space;
use crate::error::{Error, Result};
use crate::linalg::RMatrix;
use crate::rational::{fmt_rat, Rat};
use crate::simplex::{lp_feasible, Feasibility, LpProblem, VarSign};
use num_traits::{One, Signed, Zero};

/// The two equality constraints cutting out the diagonal part of `g_φ`.
#[derive(Clone, Debug)]
pub struct GPhiDiagonal {
    /// 2×n matrix: row of ones, then φ.
    pub constraints: RMatrix,
}

pub fn gphi_diag(phi: &[Rat]) -> GPhiDiagonal {
    let n = phi.len();
    let constraints = RMatrix::from_fn(2, n, |r, c| {
        if r == 0 {
            Rat::one()
        } else {
            phi[c].clone()
        }
    });
    GPhiDiagonal { constraints }
}

impl GPhiDiagonal {
    pub fn dim(&self) -> usize {
        self.constraints.cols()
    }

    /// Pivot eliminations of the constraint system, one line per pivot
    /// variable, e.g. `a1 = -a2 - a3 + a7`.
    pub fn solved_form(&self) -> Vec<String> {
        let r = self.constraints.rref();
        let mut out = Vec::new();
        for (row, &pc) in r.pivots.iter().enumerate() {
            let mut terms = Vec::new();
            for c in 0..self.dim() {
                if c == pc {
                    continue;
                }
                let coef = -r.mat[[row, c]].clone();
                if coef.is_zero() {
                    continue;
                }
                let var = format!("a{}", c + 1);
                if coef.is_one() {
                    terms.push(format!("+ {var}"));
                } else if (-coef.clone()).is_one() {
                    terms.push(format!("- {var}"));
                } else if coef.is_positive() {
                    terms.push(format!("+ {}*{var}", fmt_rat(&coef)));
                } else {
                    terms.push(format!("- {}*{var}", fmt_rat(&coef.abs())));
                }
            }
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" ").trim_start_matches("+ ").to_string()
            };
            out.push(format!("a{} = {rhs}", pc + 1));
        }
        out
    }

    /// Exact membership test.
    pub fn contains(&self, a: &[Rat]) -> bool {
        a.len() == self.dim()
            && self
                .constraints
                .mul_vec(a)
                .map(|v| v.iter().all(Rat::is_zero))
                .unwrap_or(false)
    }
}

/// Invariants used to distinguish a law from its degeneration limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTriple {
    pub dim_der: usize,
    pub dcs: Vec<usize>,
    pub derived: Vec<usize>,
}

impl InvariantTriple {
    pub fn of(law: &LieLaw) -> Result<Self> {
        Ok(InvariantTriple {
            dim_der: derivation_space(law)?.dim(),
            dcs: law.descending_central_series()?,
            derived: law.derived_series()?,
        })
    }
}

/// A verified diagonal degeneration.
#[derive(Clone, Debug)]
pub struct DegenerationCertificate {
    /// Diagonal of the acting one-parameter subgroup generator.
    pub x: Vec<Rat>,
    /// Slots with strictly positive exponent, removed in the limit.
    pub dropped: Vec<Slot>,
    pub limit: LieLaw,
    pub original: InvariantTriple,
    pub limit_invariants: InvariantTriple,
}

fn exponent(x: &[Rat], (i, j, k): Slot) -> Rat {
    &x[i - 1] + &x[j - 1] - &x[k - 1]
}

/// Checks a candidate `x` and assembles the certificate: both equalities
/// exact, every slot exponent nonnegative, at least one positive.
pub fn certificate_from_x(law: &LieLaw, phi: &[Rat], x: &[Rat]) -> Result<DegenerationCertificate> {
    law.require_constant()?;
    if law.is_zero_law() {
        return Err(Error::ZeroLaw("degeneration search"));
    }
    if phi.len() != law.dim() || x.len() != law.dim() {
        return Err(Error::DimMismatch("diagonal length".into()));
    }
    let region = gphi_diag(phi);
    if !region.contains(x) {
        return Err(Error::BadCertificate(
            "X violates the trace constraints of g_phi".into(),
        ));
    }
    let mut dropped = Vec::new();
    let mut limit = LieLaw::new(law.dim())?;
    for (slot, coeff) in law.slots() {
        let w = exponent(x, slot);
        if w.is_negative() {
            return Err(Error::BadCertificate(format!(
                "slot ({}, {}, {}) has negative exponent {}",
                slot.0,
                slot.1,
                slot.2,
                fmt_rat(&w)
            )));
        }
        if w.is_zero() {
            limit.set(slot.0, slot.1, slot.2, coeff.clone())?;
        } else {
            dropped.push(slot);
        }
    }
    if dropped.is_empty() {
        return Err(Error::BadCertificate(
            "every slot exponent is zero: the limit is the law itself".into(),
        ));
    }
    limit.require_jacobi()?;
    Ok(DegenerationCertificate {
        x: x.to_vec(),
        dropped,
        original: InvariantTriple::of(law)?,
        limit_invariants: InvariantTriple::of(&limit)?,
        limit,
    })
}

/// All single-strict-slot degenerations in lexicographic slot order, one
/// exact LP per slot: that slot's exponent strictly positive, all others
/// nonnegative. Certificates with identical dropped-slot sets are reported
/// once.
pub fn degeneration_candidates(
    law: &LieLaw,
    phi: &[Rat],
) -> Result<Vec<DegenerationCertificate>> {
    law.require_constant()?;
    if law.is_zero_law() {
        return Err(Error::ZeroLaw("degeneration search"));
    }
    let n = law.dim();
    if phi.len() != n {
        return Err(Error::DimMismatch("diagonal length".into()));
    }
    let support = law.support();
    let region = gphi_diag(phi);
    let b_eq = vec![Rat::zero(); 2];
    // Exponent constraints as `-w·a <= 0`; the strict one is per-candidate.
    let neg_weight_rows: Vec<Vec<Rat>> = support
        .iter()
        .map(|&(i, j, k)| {
            let mut row = vec![Rat::zero(); n];
            row[i - 1] -= Rat::one();
            row[j - 1] -= Rat::one();
            row[k - 1] += Rat::one();
            row
        })
        .collect();
    let a_ub = RMatrix::from_rows(&neg_weight_rows)?;

    let mut out: Vec<DegenerationCertificate> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<Slot>> = std::collections::BTreeSet::new();
    for strict in 0..support.len() {
        let problem = LpProblem {
            a_eq: region.constraints.clone(),
            b_eq: b_eq.clone(),
            a_ub: a_ub.clone(),
            strict_rows: vec![strict],
            signs: vec![VarSign::Free; n],
        };
        if let Feasibility::Feasible { witness, .. } = lp_feasible(&problem)? {
            debug_assert!(support
                .iter()
                .all(|&slot| !exponent(&witness, slot).is_negative()));
            debug_assert!(exponent(&witness, support[strict]).is_positive());
            let cert = certificate_from_x(law, phi, &witness)?;
            if seen.insert(cert.dropped.clone()) {
                out.push(cert);
            }
        }
    }
    Ok(out)
}

/// The first diagonal degeneration in lexicographic slot order, or `None`
/// when every single-slot relaxation is infeasible.
pub fn find_degeneration(law: &LieLaw, phi: &[Rat]) -> Result<Option<DegenerationCertificate>> {
    Ok(degeneration_candidates(law, phi)?.into_iter().next())
}

/// What a certificate proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assessment {
    /// Limit invariants differ: orbit not closed, not an Einstein
    /// nilradical.
    NotEinstein,
    /// The limit is not distinguished by these invariants.
    Indeterminate,
}

pub fn assess(cert: &DegenerationCertificate) -> Assessment {
    if cert.original == cert.limit_invariants {
        Assessment::Indeterminate
    } else {
        Assessment::NotEinstein
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pre_einstein::pre_einstein;
    use crate::rational::{rat, rat_i};

    fn heisenberg() -> LieLaw {
        let mut law = LieLaw::new(3).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law
    }

    #[test]
    fn gphi_solved_form_eliminates_pivots() {
        let region = gphi_diag(&[rat(2, 3), rat(2, 3), rat(4, 3)]);
        // a1 + a2 + a3 = 0 and a1 + a2 + 2a3 = 0 force a3 = 0, a1 = -a2.
        assert_eq!(region.solved_form(), vec!["a1 = - a2", "a3 = 0"]);
        assert!(region.contains(&[rat_i(-5), rat_i(5), rat_i(0)]));
        assert!(!region.contains(&[rat_i(1), rat_i(1), rat_i(-1)]));
    }

    #[test]
    fn heisenberg_admits_no_degeneration() {
        let law = heisenberg();
        let pre = pre_einstein(&law).unwrap();
        assert!(find_degeneration(&law, &pre.phi).unwrap().is_none());
    }

    #[test]
    fn filiform4_admits_no_degeneration() {
        // [e1,e2]=e3, [e1,e3]=e4: phi = 1/3(1,2,3,4), and on g_phi the two
        // slot exponents sum to zero, so neither can be strictly positive.
        let mut law = LieLaw::new(4).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law.set_const(1, 3, 4, rat_i(1)).unwrap();
        let pre = pre_einstein(&law).unwrap();
        assert_eq!(pre.phi, vec![rat(1, 3), rat(2, 3), rat_i(1), rat(4, 3)]);
        assert!(find_degeneration(&law, &pre.phi).unwrap().is_none());
    }

    #[test]
    fn certificate_validation_rejects_bad_x() {
        let law = heisenberg();
        let pre = pre_einstein(&law).unwrap();
        // Violates the constraints.
        assert!(certificate_from_x(&law, &pre.phi, &[rat_i(1), rat_i(1), rat_i(1)]).is_err());
        // In g_phi but with zero exponent everywhere.
        assert!(certificate_from_x(&law, &pre.phi, &[rat_i(1), rat_i(-1), rat_i(0)]).is_err());
    }

    #[test]
    fn invariant_comparison_drives_assessment() {
        let a = InvariantTriple {
            dim_der: 15,
            dcs: vec![7, 4, 1, 0],
            derived: vec![7, 4, 0],
        };
        let mut b = a.clone();
        let cert = DegenerationCertificate {
            x: vec![],
            dropped: vec![(3, 6, 7)],
            limit: heisenberg(),
            original: a.clone(),
            limit_invariants: b.clone(),
        };
        assert_eq!(assess(&cert), Assessment::Indeterminate);
        b.dim_der = 17;
        let cert = DegenerationCertificate {
            limit_invariants: b,
            ..cert
        };
        assert_eq!(assess(&cert), Assessment::NotEinstein);
    }
}
