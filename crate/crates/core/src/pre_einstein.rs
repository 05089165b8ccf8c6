//! The pre-Einstein derivation and its derived data: eigenvalue type,
//! the minimum of the normalized-moment functional on the orbit, the
//! target moment map, and the graded support ansatz.
//!
//! The defining property is `tr(φψ) = tr(ψ)` for every derivation `ψ`.
//! φ is solved for over the diagonal derivations and then verified against
//! the full derivation basis, so a non-maximal diagonal torus is detected
//! rather than silently producing a wrong φ.

use crate::algebra::{LieLaw, Slot};
use crate::derivations::{derivation_space, diagonal_derivations};
use crate::error::{Error, Result};
use crate::linalg::{dot, RMatrix};
use crate::rational::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Distinct positive integer eigenvalues `d_1 < … < d_r` with
/// multiplicities, `gcd(d_1,…,d_r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueType {
    pub values: Vec<BigInt>,
    pub mults: Vec<usize>,
}

impl EigenvalueType {
    /// Builds the type of an integer diagonal, dividing by the content;
    /// every entry must be positive.
    pub fn from_diagonal(d: &[BigInt]) -> Result<Self> {
        if d.is_empty() || d.iter().any(|x| !x.is_positive()) {
            return Err(Error::NonPositiveType);
        }
        let mut content = BigInt::zero();
        for x in d {
            content = content.gcd(x);
        }
        let mut sorted: Vec<BigInt> = d.iter().map(|x| x / &content).collect();
        sorted.sort();
        let mut values = Vec::new();
        let mut mults = Vec::new();
        for x in sorted {
            if values.last() == Some(&x) {
                *mults.last_mut().expect("parallel to values") += 1;
            } else {
                values.push(x);
                mults.push(1);
            }
        }
        Ok(EigenvalueType { values, mults })
    }

    /// Total dimension `n = Σ n_i`.
    pub fn n(&self) -> usize {
        self.mults.iter().sum()
    }

    /// `Σ n_i d_i`.
    pub fn sum_nd(&self) -> BigInt {
        self.values
            .iter()
            .zip(&self.mults)
            .map(|(d, &m)| d * BigInt::from(m))
            .sum()
    }

    /// `Σ n_i d_i²`.
    pub fn sum_nd2(&self) -> BigInt {
        self.values
            .iter()
            .zip(&self.mults)
            .map(|(d, &m)| d * d * BigInt::from(m))
            .sum()
    }

    /// `(n - (Σnd)²/Σnd²)⁻¹`, the minimum of the normalized-moment
    /// functional on the orbit when the algebra is an Einstein nilradical.
    /// Errors when the type is proportional to the identity, where the
    /// denominator vanishes.
    pub fn min_value(&self) -> Result<Rat> {
        let s1 = self.sum_nd();
        let s2 = self.sum_nd2();
        let denom = BigInt::from(self.n()) * &s2 - &s1 * &s1;
        if denom.is_zero() {
            return Err(Error::DegenerateType);
        }
        Ok(Rat::new(s2, denom))
    }

    /// The sorted diagonal expanded to length `n`.
    pub fn expanded(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.n());
        for (d, &m) in self.values.iter().zip(&self.mults) {
            out.extend(std::iter::repeat_n(d.clone(), m));
        }
        out
    }
}

impl std::fmt::Display for EigenvalueType {
    /// `(1<2<3; 3,3,1)`
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let values = self
            .values
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join("<");
        let mults = self
            .mults
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "({values}; {mults})")
    }
}

/// The pre-Einstein derivation of a law, as a diagonal matrix
/// `φ = scale · diag(diag_ints)` with `scale >= 0` and coprime integer
/// entries (up to overall sign matching φ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreEinstein {
    /// Diagonal entries of φ in basis order.
    pub phi: Vec<Rat>,
    /// Positive factor with `phi = scale * diag_ints`; zero iff φ = 0.
    pub scale: Rat,
    /// Integer diagonal with content 1 (all zero iff φ = 0).
    pub diag_ints: Vec<BigInt>,
    /// Dimension of the diagonal derivation space the system was solved
    /// over.
    pub rank: usize,
}

impl PreEinstein {
    pub fn is_positive(&self) -> bool {
        self.phi.iter().all(Rat::is_positive)
    }

    /// Eigenvalue type of φ; errors unless all eigenvalues are positive.
    pub fn eigenvalue_type(&self) -> Result<EigenvalueType> {
        if !self.is_positive() {
            return Err(Error::NonPositiveType);
        }
        EigenvalueType::from_diagonal(&self.diag_ints)
    }
}

/// Solves `tr(φ D_j) = tr(D_j)` over the diagonal derivations `D_j`, then
/// verifies `tr(φψ) = tr(ψ)` against every element of the full derivation
/// basis.
pub fn pre_einstein(law: &LieLaw) -> Result<PreEinstein> {
    law.require_constant()?;
    let n = law.dim();
    let torus = diagonal_derivations(law)?;
    let rank = torus.len();
    if rank == 0 {
        return Err(Error::RankZero);
    }

    // Gram system: G a = t with G_ij = <D_i, D_j>, t_i = tr(D_i).
    let gram = RMatrix::from_fn(rank, rank, |i, j| dot(&torus[i], &torus[j]));
    let rhs: Vec<Rat> = torus.iter().map(|d| d.iter().sum()).collect();
    let solution = gram
        .solve_affine(&rhs)
        .map_err(|_| Error::SingularTraceSystem)?;
    if !solution.basis.is_empty() {
        return Err(Error::SingularTraceSystem);
    }
    let mut phi = vec![Rat::zero(); n];
    for (a, d) in solution.particular.iter().zip(&torus) {
        for (entry, v) in phi.iter_mut().zip(d) {
            *entry += a * v;
        }
    }

    // Eq-(6) check over the full derivation algebra.
    let der = derivation_space(law)?;
    for (index, psi) in der.basis.iter().enumerate() {
        let lhs: Rat = (0..n).map(|k| &phi[k] * &psi[[k, k]]).sum();
        if lhs != psi.trace() {
            return Err(Error::TorusNotMaximal { index });
        }
    }

    let (scale, diag_ints) = integerize(&phi);
    Ok(PreEinstein {
        phi,
        scale,
        diag_ints,
        rank,
    })
}

/// Writes a rational vector as `scale * ints` with `scale > 0` and integer
/// entries of content 1; the zero vector yields `(0, zeros)`.
fn integerize(phi: &[Rat]) -> (Rat, Vec<BigInt>) {
    if phi.iter().all(Rat::is_zero) {
        return (Rat::zero(), vec![BigInt::zero(); phi.len()]);
    }
    let mut lcm = BigInt::one();
    for x in phi {
        lcm = lcm.lcm(x.denom());
    }
    let scaled: Vec<BigInt> = phi.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut content = BigInt::zero();
    for x in &scaled {
        content = content.gcd(x);
    }
    let ints: Vec<BigInt> = scaled.iter().map(|x| x / &content).collect();
    (Rat::new(content, lcm), ints)
}

/// Positivity of φ, necessary for being an Einstein nilradical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NecessaryVerdict {
    Pass,
    Fail(String),
}

impl NecessaryVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, NecessaryVerdict::Pass)
    }
}

pub fn necessary_conditions(pre: &PreEinstein) -> NecessaryVerdict {
    if pre.is_positive() {
        NecessaryVerdict::Pass
    } else {
        let bad: Vec<usize> = pre
            .phi
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_positive())
            .map(|(i, _)| i + 1)
            .collect();
        NecessaryVerdict::Fail(format!(
            "pre-Einstein derivation has non-positive eigenvalues at positions {bad:?}"
        ))
    }
}

/// The diagonal moment map a unit-norm soliton of this type must attain,
/// with its constant `c = -min_value`; entries follow the sorted expanded
/// diagonal, trace exactly `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetMomentMap {
    pub diag: Vec<Rat>,
    pub c: Rat,
}

pub fn target_moment_map(ty: &EigenvalueType) -> Result<TargetMomentMap> {
    let c = -ty.min_value()?;
    let diag = target_for_diag(&ty.expanded())?;
    debug_assert_eq!(diag.iter().sum::<Rat>(), -Rat::one());
    Ok(TargetMomentMap { diag, c })
}

/// Target moment-map entries for an arbitrary positive integer diagonal
/// `d` in basis order: `-Min + (Σd / (nΣd² - (Σd)²))·d_r`. Invariant under
/// rescaling `d`.
pub fn target_for_diag(d: &[BigInt]) -> Result<Vec<Rat>> {
    if d.is_empty() || d.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveType);
    }
    let n = BigInt::from(d.len());
    let s1: BigInt = d.iter().sum();
    let s2: BigInt = d.iter().map(|x| x * x).sum();
    let denom = n * &s2 - &s1 * &s1;
    if denom.is_zero() {
        return Err(Error::DegenerateType);
    }
    let min = Rat::new(s2, denom.clone());
    let pref = Rat::new(s1, denom);
    Ok(d.iter()
        .map(|dr| -&min + &pref * Rat::from_integer(dr.clone()))
        .collect())
}

/// All slots `(i, j, k)` with `d_i + d_j = d_k`, in lexicographic order:
/// the largest support a law with derivation `diag(d)` can have.
pub fn graded_slots(d: &[BigInt]) -> Result<Vec<Slot>> {
    if d.is_empty() || d.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveType);
    }
    let n = d.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let sum = &d[i - 1] + &d[j - 1];
            for k in 1..=n {
                if d[k - 1] == sum {
                    out.push((i, j, k));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn bi(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn heisenberg() -> LieLaw {
        let mut law = LieLaw::new(3).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law
    }

    #[test]
    fn heisenberg_pre_einstein() {
        let pre = pre_einstein(&heisenberg()).unwrap();
        assert_eq!(pre.phi, vec![rat(2, 3), rat(2, 3), rat(4, 3)]);
        assert_eq!(pre.scale, rat(2, 3));
        assert_eq!(pre.diag_ints, bi(&[1, 1, 2]));
        assert_eq!(pre.rank, 2);
        let ty = pre.eigenvalue_type().unwrap();
        assert_eq!(ty.values, bi(&[1, 2]));
        assert_eq!(ty.mults, vec![2, 1]);
        assert_eq!(ty.to_string(), "(1<2; 2,1)");
        assert_eq!(ty.min_value().unwrap(), rat_i(3));
        assert!(necessary_conditions(&pre).is_pass());
        // tr(φ²) = tr(φ): Eq respects ψ = φ itself.
        let tr_phi: Rat = pre.phi.iter().sum();
        let tr_phi2: Rat = pre.phi.iter().map(|x| x * x).sum();
        assert_eq!(tr_phi, tr_phi2);
    }

    #[test]
    fn abelian_phi_is_identity() {
        let law = LieLaw::new(4).unwrap();
        let pre = pre_einstein(&law).unwrap();
        assert_eq!(pre.phi, vec![rat_i(1); 4]);
        assert_eq!(pre.rank, 4);
        assert!(necessary_conditions(&pre).is_pass());
        let ty = pre.eigenvalue_type().unwrap();
        assert!(matches!(ty.min_value(), Err(Error::DegenerateType)));
    }

    #[test]
    fn type_normalization() {
        let ty = EigenvalueType::from_diagonal(&bi(&[4, 2, 2, 6])).unwrap();
        assert_eq!(ty.values, bi(&[1, 2, 3]));
        assert_eq!(ty.mults, vec![2, 1, 1]);
        assert!(EigenvalueType::from_diagonal(&bi(&[1, 0, 2])).is_err());
        assert!(EigenvalueType::from_diagonal(&bi(&[-1, 2])).is_err());
    }

    #[test]
    fn heisenberg_target() {
        let ty = EigenvalueType::from_diagonal(&bi(&[1, 1, 2])).unwrap();
        let target = target_moment_map(&ty).unwrap();
        assert_eq!(target.diag, vec![rat_i(-1), rat_i(-1), rat_i(1)]);
        assert_eq!(target.c, rat_i(-3));
        assert_eq!(target.diag.iter().sum::<Rat>(), rat_i(-1));
    }

    #[test]
    fn target_is_scale_invariant() {
        assert_eq!(
            target_for_diag(&bi(&[1, 1, 2])).unwrap(),
            target_for_diag(&bi(&[3, 3, 6])).unwrap()
        );
    }

    #[test]
    fn graded_slot_enumeration() {
        assert_eq!(graded_slots(&bi(&[1, 2, 3])).unwrap(), vec![(1, 2, 3)]);
        assert!(graded_slots(&bi(&[1, 1, 1])).unwrap().is_empty());
        let slots = graded_slots(&bi(&[1, 1, 2, 3, 3, 4, 5])).unwrap();
        assert_eq!(slots.len(), 13);
        assert_eq!(slots[0], (1, 2, 3));
        assert_eq!(slots[12], (3, 5, 7));
        // The graded support contains every slot of any law having diag(d)
        // as a derivation; spot-check a known one.
        assert!(slots.contains(&(2, 5, 6)));
    }

    #[test]
    fn rank_zero_is_detected() {
        // Support {(1,2,1),(1,2,3),(1,3,1)} forces a2 = 0, a3 = 0, then
        // a1 = a3 - a2 = 0: no diagonal derivations at all.
        let mut law = LieLaw::new(3).unwrap();
        law.set_const(1, 2, 1, rat_i(1)).unwrap();
        law.set_const(1, 2, 3, rat_i(1)).unwrap();
        law.set_const(1, 3, 1, rat_i(1)).unwrap();
        assert_eq!(crate::derivations::diagonal_rank(&law).unwrap(), 0);
        assert!(matches!(pre_einstein(&law), Err(Error::RankZero)));
    }
}
