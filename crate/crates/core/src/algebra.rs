//! Lie algebra laws on a fixed basis, given by sparse rational structure
//! constants.
//!
//! A law stores coefficients only for slots `(i, j, k)` with `i < j`; the
//! antisymmetric completion is computed on access, so antisymmetry is
//! representational rather than an invariant to maintain. Coefficients are
//! affine expressions `a*L + b` in at most one named parameter, which covers
//! the one-parameter curves of laws this crate works with; laws whose
//! coefficients actually use the parameter must be instantiated before any
//! analysis runs.

use crate::error::{Error, Result};
use crate::linalg::RMatrix;
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// `(i, j, k)` with `1 <= i < j <= n`, `1 <= k <= n`: the coefficient of
/// `e_k` in `[e_i, e_j]`. All public indices are 1-based.
pub type Slot = (usize, usize, usize);

/// Range check shared by every law representation storing sparse slots.
pub(crate) fn validate_slot(dim: usize, i: usize, j: usize, k: usize) -> Result<()> {
    if i == 0 || j == 0 || i >= j || j > dim {
        return Err(Error::BadSlotPair { i, j, dim });
    }
    if k == 0 || k > dim {
        return Err(Error::BadTarget { k, dim });
    }
    Ok(())
}

/// An affine coefficient `slope * L + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCoeff {
    slope: Rat,
    constant: Rat,
}

impl ParamCoeff {
    pub fn constant(c: Rat) -> Self {
        ParamCoeff {
            slope: Rat::zero(),
            constant: c,
        }
    }

    pub fn linear(slope: Rat, constant: Rat) -> Self {
        ParamCoeff { slope, constant }
    }

    pub fn slope(&self) -> &Rat {
        &self.slope
    }

    pub fn offset(&self) -> &Rat {
        &self.constant
    }

    /// True when the coefficient does not mention the parameter.
    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    /// Identically zero as a function of the parameter.
    pub fn is_zero(&self) -> bool {
        self.slope.is_zero() && self.constant.is_zero()
    }

    pub fn constant_value(&self) -> Option<&Rat> {
        self.is_constant().then_some(&self.constant)
    }

    pub fn eval(&self, lambda: &Rat) -> Rat {
        &self.slope * lambda + &self.constant
    }

    pub fn neg(&self) -> Self {
        ParamCoeff {
            slope: -self.slope.clone(),
            constant: -self.constant.clone(),
        }
    }
}

impl std::fmt::Display for ParamCoeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::rational::fmt_rat;
        if self.slope.is_zero() {
            return write!(f, "{}", fmt_rat(&self.constant));
        }
        if self.constant.is_zero() {
            if self.slope.is_one() {
                return write!(f, "L");
            }
            return write!(f, "{}*L", fmt_rat(&self.slope));
        }
        write!(f, "{}*L + {}", fmt_rat(&self.slope), fmt_rat(&self.constant))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieLaw {
    dim: usize,
    param: Option<String>,
    entries: BTreeMap<Slot, ParamCoeff>,
}

impl LieLaw {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(LieLaw {
            dim,
            param: None,
            entries: BTreeMap::new(),
        })
    }

    pub fn with_param(dim: usize, name: &str) -> Result<Self> {
        let mut law = Self::new(dim)?;
        law.param = Some(name.to_string());
        Ok(law)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    fn check_slot(&self, i: usize, j: usize, k: usize) -> Result<()> {
        validate_slot(self.dim, i, j, k)
    }

    /// Sets the coefficient of `e_k` in `[e_i, e_j]`; a zero coefficient
    /// clears the slot.
    pub fn set(&mut self, i: usize, j: usize, k: usize, coeff: ParamCoeff) -> Result<()> {
        self.check_slot(i, j, k)?;
        if !coeff.is_constant() && self.param.is_none() {
            return Err(Error::UnknownParameter("L".into()));
        }
        if coeff.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), coeff);
        }
        Ok(())
    }

    pub fn set_const(&mut self, i: usize, j: usize, k: usize, c: Rat) -> Result<()> {
        self.set(i, j, k, ParamCoeff::constant(c))
    }

    /// Stored slots in lexicographic order.
    pub fn slots(&self) -> impl Iterator<Item = (Slot, &ParamCoeff)> {
        self.entries.iter().map(|(&s, c)| (s, c))
    }

    pub fn support(&self) -> Vec<Slot> {
        self.entries.keys().copied().collect()
    }

    pub fn slot_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_law(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when no coefficient actually uses the parameter.
    pub fn is_constant(&self) -> bool {
        self.entries.values().all(ParamCoeff::is_constant)
    }

    /// Errors with the parameter name when the law still needs a value.
    pub fn require_constant(&self) -> Result<()> {
        if self.is_constant() {
            Ok(())
        } else {
            Err(Error::SymbolicLaw(
                self.param.clone().unwrap_or_else(|| "L".into()),
            ))
        }
    }

    /// Completed structure constant `c_ij^k` for arbitrary `i != j`
    /// (`c_ji^k = -c_ij^k`); requires a parameter-free law.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rat {
        debug_assert!(self.is_constant(), "structure constants still symbolic");
        if i == j {
            return Rat::zero();
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.entries.get(&(a, b, k)) {
            Some(coeff) => {
                let v = coeff.constant_value().cloned().unwrap_or_else(Rat::zero);
                if neg {
                    -v
                } else {
                    v
                }
            }
            None => Rat::zero(),
        }
    }

    /// Substitutes a value for the parameter; slots whose coefficient
    /// becomes zero are dropped. On a parameter-free law this is a clone
    /// (the supplied value is ignored).
    pub fn instantiate(&self, value: &Rat) -> LieLaw {
        let mut out = LieLaw {
            dim: self.dim,
            param: None,
            entries: BTreeMap::new(),
        };
        for (&slot, coeff) in &self.entries {
            let v = coeff.eval(value);
            if !v.is_zero() {
                out.entries.insert(slot, ParamCoeff::constant(v));
            }
        }
        out
    }

    /// `[u, v]` for coordinate vectors.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(u.len(), self.dim);
        debug_assert_eq!(v.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for (&(i, j, k), coeff) in &self.entries {
            let c = coeff
                .constant_value()
                .expect("bracket requires a parameter-free law");
            // contribution of c * (u_i v_j - u_j v_i) to coordinate k
            let cross = &u[i - 1] * &v[j - 1] - &u[j - 1] * &v[i - 1];
            if !cross.is_zero() {
                out[k - 1] += c * cross;
            }
        }
        out
    }

    /// All Jacobi identity violations. Empty iff the law is a Lie algebra.
    pub fn jacobi_violations(&self) -> Result<Vec<JacobiViolation>> {
        self.require_constant()?;
        let n = self.dim;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    let mut residual = vec![Rat::zero(); n];
                    let mut nonzero = false;
                    for l in 1..=n {
                        let mut acc = Rat::zero();
                        for m in 1..=n {
                            acc += self.c(i, j, m) * self.c(m, k, l);
                            acc += self.c(j, k, m) * self.c(m, i, l);
                            acc += self.c(k, i, m) * self.c(m, j, l);
                        }
                        if !acc.is_zero() {
                            nonzero = true;
                        }
                        residual[l - 1] = acc;
                    }
                    if nonzero {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Errors with the first violating triple when Jacobi fails.
    pub fn require_jacobi(&self) -> Result<()> {
        let violations = self.jacobi_violations()?;
        match violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::JacobiFailed {
                count: violations.len(),
                i: v.triple.0,
                j: v.triple.1,
                k: v.triple.2,
            }),
        }
    }

    fn series_dims(&self, derived: bool) -> Result<Vec<usize>> {
        self.require_constant()?;
        let n = self.dim;
        let mut dims = vec![n];
        let mut current = RMatrix::identity(n);
        loop {
            let mut generated: Vec<Vec<Rat>> = Vec::new();
            if derived {
                for a in 0..current.rows() {
                    for b in (a + 1)..current.rows() {
                        generated.push(self.bracket(current.row(a), current.row(b)));
                    }
                }
            } else {
                let mut e = vec![Rat::zero(); n];
                for i in 0..n {
                    e[i] = Rat::one();
                    for b in 0..current.rows() {
                        generated.push(self.bracket(&e, current.row(b)));
                    }
                    e[i] = Rat::zero();
                }
            }
            let next = if generated.is_empty() {
                RMatrix::zeros(0, n)
            } else {
                RMatrix::from_rows(&generated)?.row_space()
            };
            let d = next.rows();
            let prev = *dims.last().expect("series starts nonempty");
            if d == prev {
                // The previous step already failed to shrink.
                return Err(Error::NotNilpotent(d));
            }
            dims.push(d);
            if d == 0 {
                return Ok(dims);
            }
            current = next;
        }
    }

    /// Dimensions of `n ⊇ [n,n] ⊇ [n,[n,n]] ⊇ …` down to 0; errors with the
    /// stabilized dimension when the law is not nilpotent.
    pub fn descending_central_series(&self) -> Result<Vec<usize>> {
        self.series_dims(false)
    }

    /// Dimensions of the derived series `n ⊇ [n,n] ⊇ [[n,n],[n,n]] ⊇ …`.
    pub fn derived_series(&self) -> Result<Vec<usize>> {
        self.series_dims(true)
    }

    /// Block sum: `other`'s basis is appended after `self`'s. Both laws must
    /// be parameter-free.
    pub fn direct_sum(&self, other: &LieLaw) -> Result<LieLaw> {
        self.require_constant()?;
        other.require_constant()?;
        let mut out = LieLaw::new(self.dim + other.dim)?;
        for (slot, coeff) in self.slots() {
            out.entries.insert(slot, coeff.clone());
        }
        let s = self.dim;
        for ((i, j, k), coeff) in other.slots() {
            out.entries.insert((i + s, j + s, k + s), coeff.clone());
        }
        Ok(out)
    }

    /// Relabels basis vectors by `perm` (0-based: new index of old basis
    /// vector `i+1` is `perm[i]+1`). Used to check basis-independence.
    pub fn permuted(&self, perm: &[usize]) -> Result<LieLaw> {
        self.require_constant()?;
        if perm.len() != self.dim {
            return Err(Error::DimMismatch("permutation length".into()));
        }
        let mut out = LieLaw::new(self.dim)?;
        for (&(i, j, k), coeff) in &self.entries {
            let (mut a, mut b) = (perm[i - 1] + 1, perm[j - 1] + 1);
            let t = perm[k - 1] + 1;
            let mut c = coeff.constant_value().cloned().expect("constant law");
            if a > b {
                std::mem::swap(&mut a, &mut b);
                c = -c;
            }
            out.set_const(a, b, t, c)?;
        }
        Ok(out)
    }

    /// Rescales basis vectors `e_i -> s_i e_i` (all `s_i` nonzero); the
    /// coefficient on slot `(i,j,k)` becomes `c * s_i s_j / s_k`.
    pub fn rescaled(&self, scales: &[Rat]) -> Result<LieLaw> {
        self.require_constant()?;
        if scales.len() != self.dim || scales.iter().any(Rat::is_zero) {
            return Err(Error::DimMismatch("invalid basis scales".into()));
        }
        let mut out = LieLaw::new(self.dim)?;
        for (&(i, j, k), coeff) in &self.entries {
            let c = coeff.constant_value().cloned().expect("constant law");
            out.set_const(i, j, k, c * &scales[i - 1] * &scales[j - 1] / &scales[k - 1])?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct JacobiViolation {
    /// `(i, j, k)` with `i < j < k`.
    pub triple: (usize, usize, usize),
    /// The nonzero vector `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub residual: Vec<Rat>,
}
