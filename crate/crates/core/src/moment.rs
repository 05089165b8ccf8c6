//! The moment map of a law, derived functionals, and export of the
//! polynomial system characterizing solitons of a given eigenvalue type.
//!
//! Conventions, fixed by the identity `tr(m(μ)) = -‖μ‖²`:
//! `‖μ‖² = 2·Σ_{i<j,k} (c_ij^k)²` and
//! `m_rs = -2·Σ_{j,k} c_rj^k c_sj^k + Σ_{i,j} c_ij^r c_ij^s`
//! with both sums running over ordered index pairs of the antisymmetric
//! completion.

use crate::algebra::{LieLaw, Slot};
use crate::error::{Error, Result};
use crate::linalg::RMatrix;
use crate::nice::nice_violations_of_support;
use crate::numeric::NumericLaw;
use crate::pre_einstein::{graded_slots, target_for_diag};
use crate::rational::{fmt_rat, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// `‖μ‖² = 2·Σ (c_ij^k)²`.
pub fn norm_sq(law: &LieLaw) -> Result<Rat> {
    law.require_constant()?;
    let sum: Rat = law
        .slots()
        .map(|(_, c)| {
            let v = c.constant_value().expect("constant law");
            v * v
        })
        .sum();
    Ok(Rat::from_integer(2.into()) * sum)
}

/// The symmetric matrix `m(μ)`; exact. Errors on the zero law, whose moment
/// map carries no information.
pub fn moment_map(law: &LieLaw) -> Result<RMatrix> {
    law.require_constant()?;
    if law.is_zero_law() {
        return Err(Error::ZeroLaw("moment map"));
    }
    let n = law.dim();
    let mut m = RMatrix::zeros(n, n);
    for r in 1..=n {
        for s in r..=n {
            let mut acc = Rat::zero();
            for j in 1..=n {
                for k in 1..=n {
                    let a = law.c(r, j, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = law.c(s, j, k);
                    if !b.is_zero() {
                        acc -= Rat::from_integer(2.into()) * a * b;
                    }
                }
            }
            for i in 1..=n {
                for j in 1..=n {
                    let a = law.c(i, j, r);
                    if a.is_zero() {
                        continue;
                    }
                    let b = law.c(i, j, s);
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
            m[[r - 1, s - 1]] = acc.clone();
            m[[s - 1, r - 1]] = acc;
        }
    }
    Ok(m)
}

/// `m(μ)/‖μ‖²`; invariant under rescaling the law.
pub fn normalized_moment(law: &LieLaw) -> Result<RMatrix> {
    let m = moment_map(law)?;
    let nsq = norm_sq(law)?;
    Ok(m.scale(&nsq.recip()))
}

/// `F(μ) = ‖m(μ)/‖μ‖²‖²`, the squared Frobenius norm of the normalized
/// moment map.
pub fn functional_f(law: &LieLaw) -> Result<Rat> {
    let mm = normalized_moment(law)?;
    Ok(crate::linalg::frobenius(&mm, &mm)?)
}

/// `tr(m(μ)·α)`. With `α = I` this is `-‖μ‖²`; it vanishes for every
/// derivation `α`.
pub fn pairing(law: &LieLaw, alpha: &RMatrix) -> Result<Rat> {
    let m = moment_map(law)?;
    if alpha.rows() != m.rows() || alpha.cols() != m.cols() {
        return Err(Error::DimMismatch(format!(
            "{}x{} pairing argument on a dimension-{} law",
            alpha.rows(),
            alpha.cols(),
            m.rows()
        )));
    }
    Ok(m.mul(alpha)?.trace())
}

/// Diagonal of `m(μ)` for a numeric law on a nice support, where every
/// off-diagonal entry vanishes structurally and each diagonal entry is a
/// signed sum of squares, hence exactly rational.
pub fn exact_diagonal_moment(law: &NumericLaw) -> Result<Vec<Rat>> {
    if law.is_zero_law() {
        return Err(Error::ZeroLaw("moment map"));
    }
    let support = law.support();
    if !nice_violations_of_support(law.dim(), &support).is_empty() {
        return Err(Error::NotNice);
    }
    let mut diag = vec![Rat::zero(); law.dim()];
    for ((i, j, k), coeff) in law.slots() {
        let sq = coeff.square();
        let minus2 = Rat::from_integer((-2).into());
        diag[i - 1] += &minus2 * &sq;
        diag[j - 1] += &minus2 * &sq;
        diag[k - 1] += Rat::from_integer(2.into()) * &sq;
    }
    Ok(diag)
}

/// `m(μ)` in double arithmetic for arbitrary numeric laws.
pub fn moment_map_f64(law: &NumericLaw) -> nalgebra::DMatrix<f64> {
    let n = law.dim();
    nalgebra::DMatrix::from_fn(n, n, |r0, s0| {
        let (r, s) = (r0 + 1, s0 + 1);
        let mut acc = 0.0;
        for j in 1..=n {
            for k in 1..=n {
                acc -= 2.0 * law.c_f64(r, j, k) * law.c_f64(s, j, k);
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                acc += law.c_f64(i, j, r) * law.c_f64(i, j, s);
            }
        }
        acc
    })
}

/// Quadratic polynomial in the slot variables `a_1..a_m`: monomial
/// `(p, q)` with `p <= q` (1-based variable indices) to coefficient.
pub type QuadPoly = BTreeMap<(usize, usize), Rat>;

fn add_monomial(poly: &mut QuadPoly, p: usize, q: usize, coef: Rat) {
    let key = if p <= q { (p, q) } else { (q, p) };
    let entry = poly.entry(key).or_insert_with(Rat::zero);
    *entry += coef;
    if entry.is_zero() {
        poly.remove(&key);
    }
}

/// Signed variable reference for the completed constant `c_ij^k` of the
/// symbolic law `Σ a_t·(slot t)`.
struct SymbolicLaw {
    n: usize,
    index: BTreeMap<Slot, usize>,
}

impl SymbolicLaw {
    fn new(n: usize, slots: &[Slot]) -> Self {
        let index = slots.iter().enumerate().map(|(t, &s)| (s, t + 1)).collect();
        SymbolicLaw { n, index }
    }

    /// `c_ij^k` as `(sign, variable)`, or `None` when structurally zero.
    fn c(&self, i: usize, j: usize, k: usize) -> Option<(i64, usize)> {
        if i == j {
            return None;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.index.get(&(a, b, k)).map(|&v| (sign, v))
    }

    /// `m_rs` of the symbolic law as a quadratic polynomial.
    fn moment_entry(&self, r: usize, s: usize) -> QuadPoly {
        let mut poly = QuadPoly::new();
        for j in 1..=self.n {
            for k in 1..=self.n {
                if let (Some((sa, va)), Some((sb, vb))) = (self.c(r, j, k), self.c(s, j, k)) {
                    add_monomial(&mut poly, va, vb, Rat::from_integer((-2 * sa * sb).into()));
                }
            }
        }
        for i in 1..=self.n {
            for j in 1..=self.n {
                if let (Some((sa, va)), Some((sb, vb))) = (self.c(i, j, r), self.c(i, j, s)) {
                    add_monomial(&mut poly, va, vb, Rat::from_integer((sa * sb).into()));
                }
            }
        }
        poly
    }

    /// Component `l` of the Jacobi expression on the triple `(i, j, k)`.
    fn jacobi_component(&self, i: usize, j: usize, k: usize, l: usize) -> QuadPoly {
        let mut poly = QuadPoly::new();
        for m in 1..=self.n {
            for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                if let (Some((sa, va)), Some((sb, vb))) = (self.c(x, y, m), self.c(m, z, l)) {
                    add_monomial(&mut poly, va, vb, Rat::from_integer((sa * sb).into()));
                }
            }
        }
        poly
    }
}

fn render_poly(poly: &QuadPoly) -> String {
    poly.iter()
        .map(|(&(p, q), c)| format!("{}*a{p}*a{q}", fmt_rat(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The polynomial system whose solutions are the unit-norm soliton laws of
/// the graded ansatz for `d`: all Jacobi components not identically zero,
/// then every moment entry that is not identically zero on both sides,
/// equated to the target moment map of `d`'s eigenvalue type.
///
/// Variables `a_1..a_m` follow the lexicographic order of the slots
/// `{(i,j,k) : d_i + d_j = d_k}`.
pub fn emit_soliton_system(d: &[BigInt]) -> Result<String> {
    let slots = graded_slots(d)?;
    if slots.is_empty() {
        return Err(Error::NoGradedSlots);
    }
    let n = d.len();
    let target = target_for_diag(d)?;
    let sym = SymbolicLaw::new(n, &slots);

    let mut out = String::new();
    out.push_str(&format!(
        "# type {}\n",
        d.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
    ));
    out.push_str(&format!(
        "# slots {}\n",
        slots
            .iter()
            .enumerate()
            .map(|(t, (i, j, k))| format!("a{}=({i},{j},{k})", t + 1))
            .collect::<Vec<_>>()
            .join(" ")
    ));

    out.push_str("# jacobi\n");
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for l in 1..=n {
                    let poly = sym.jacobi_component(i, j, k, l);
                    if !poly.is_empty() {
                        out.push_str(&format!("{} = 0\n", render_poly(&poly)));
                    }
                }
            }
        }
    }

    out.push_str("# moment\n");
    for r in 1..=n {
        for s in r..=n {
            let poly = sym.moment_entry(r, s);
            let rhs = if r == s { target[r - 1].clone() } else { Rat::zero() };
            if poly.is_empty() && rhs.is_zero() {
                continue;
            }
            let lhs = if poly.is_empty() {
                "0".to_string()
            } else {
                render_poly(&poly)
            };
            out.push_str(&format!("{} = {}\n", lhs, fmt_rat(&rhs)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn heisenberg(c: Rat) -> LieLaw {
        let mut law = LieLaw::new(3).unwrap();
        law.set_const(1, 2, 3, c).unwrap();
        law
    }

    #[test]
    fn heisenberg_moment_values() {
        let law = heisenberg(rat_i(1));
        assert_eq!(norm_sq(&law).unwrap(), rat_i(2));
        let m = moment_map(&law).unwrap();
        assert_eq!(m, RMatrix::diagonal(&[rat_i(-2), rat_i(-2), rat_i(2)]));
        assert_eq!(m.trace(), -norm_sq(&law).unwrap());
        let mm = normalized_moment(&law).unwrap();
        assert_eq!(mm, RMatrix::diagonal(&[rat_i(-1), rat_i(-1), rat_i(1)]));
        assert_eq!(functional_f(&law).unwrap(), rat_i(3));
    }

    #[test]
    fn scale_invariance_and_trace_identity() {
        let law = heisenberg(rat(3, 5));
        let scaled = heisenberg(rat(-9, 2));
        assert_eq!(
            normalized_moment(&law).unwrap(),
            normalized_moment(&scaled).unwrap()
        );
        assert_eq!(functional_f(&law).unwrap(), functional_f(&scaled).unwrap());
        assert_eq!(moment_map(&law).unwrap().trace(), -norm_sq(&law).unwrap());
    }

    #[test]
    fn pairing_with_identity_and_derivation() {
        let law = heisenberg(rat_i(1));
        let n = law.dim();
        assert_eq!(
            pairing(&law, &RMatrix::identity(n)).unwrap(),
            -norm_sq(&law).unwrap()
        );
        for d in &crate::derivations::derivation_space(&law).unwrap().basis {
            assert_eq!(pairing(&law, d).unwrap(), rat_i(0));
        }
        let e11 = RMatrix::diagonal(&[rat_i(1), rat_i(0), rat_i(0)]);
        assert_eq!(pairing(&law, &e11).unwrap(), rat_i(-2));
        assert!(pairing(&law, &RMatrix::identity(2)).is_err());
    }

    #[test]
    fn zero_law_is_rejected() {
        let law = LieLaw::new(3).unwrap();
        assert_eq!(norm_sq(&law).unwrap(), rat_i(0));
        assert!(matches!(moment_map(&law), Err(Error::ZeroLaw(_))));
        assert!(functional_f(&law).is_err());
    }

    #[test]
    fn exact_diagonal_on_nice_support() {
        use crate::numeric::NumCoeff;
        let mut law = NumericLaw::new(3).unwrap();
        law.set(1, 2, 3, NumCoeff::sqrt(false, rat(1, 2)).unwrap())
            .unwrap();
        let diag = exact_diagonal_moment(&law).unwrap();
        assert_eq!(diag, vec![rat_i(-1), rat_i(-1), rat_i(1)]);
        let dense = moment_map_f64(&law);
        for r in 0..3 {
            for s in 0..3 {
                let exact = if r == s {
                    crate::rational::rat_to_f64(&diag[r])
                } else {
                    0.0
                };
                assert!((dense[(r, s)] - exact).abs() < 1e-14);
            }
        }
    }

    fn bi(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn soliton_system_for_heisenberg_type() {
        let text = emit_soliton_system(&bi(&[1, 1, 2])).unwrap();
        let jacobi: Vec<&str> = section(&text, "# jacobi");
        let moment: Vec<&str> = section(&text, "# moment");
        assert!(jacobi.is_empty());
        assert_eq!(
            moment,
            vec![
                "-2*a1*a1 = -1",
                "-2*a1*a1 = -1",
                "2*a1*a1 = 1",
            ]
        );
        assert!(matches!(
            emit_soliton_system(&bi(&[1, 1, 1])),
            Err(Error::NoGradedSlots)
        ));
    }

    #[test]
    fn soliton_system_counts_for_rank_one_type() {
        let text = emit_soliton_system(&bi(&[1, 1, 2, 3, 3, 4, 5])).unwrap();
        let jacobi = section(&text, "# jacobi");
        let moment = section(&text, "# moment");
        assert_eq!(jacobi.len(), 3);
        assert_eq!(moment.len(), 9);
        assert_eq!(
            moment[0],
            "-2*a1*a1 + -2*a2*a2 + -2*a3*a3 + -2*a4*a4 + -2*a5*a5 + -2*a6*a6 = -23/47"
        );
    }

    fn section<'a>(text: &'a str, header: &str) -> Vec<&'a str> {
        let mut in_section = false;
        let mut out = Vec::new();
        for line in text.lines() {
            if line == header {
                in_section = true;
                continue;
            }
            if line.starts_with('#') {
                in_section = false;
                continue;
            }
            if in_section {
                out.push(line);
            }
        }
        out
    }
}
