//! Laws with real coefficients of the form `p/q` or `±sqrt(p/q)`, and
//! soliton verification for both exact and numeric laws.
//!
//! The square-root form exists so that metrics printed as surds can be
//! entered bit-faithfully: squares, norms and (on a nice support) the whole
//! moment map stay exactly rational, which keeps verification exact far
//! beyond what a plain double encoding would allow.

use crate::algebra::{validate_slot, LieLaw, Slot};
use crate::error::{Error, Result};
use crate::rational::{rat_to_f64, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A real coefficient that is either rational or `±sqrt` of a positive
/// rational. `square` and products of two coefficients with equal radicands
/// are exactly rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumCoeff {
    Rational(Rat),
    Sqrt { negative: bool, radicand: Rat },
}

impl NumCoeff {
    /// `sqrt(radicand)` with an explicit sign; the radicand must be positive.
    pub fn sqrt(negative: bool, radicand: Rat) -> Result<Self> {
        if !radicand.is_positive() {
            return Err(Error::Invalid(
                "sqrt radicand must be a positive rational".into(),
            ));
        }
        Ok(NumCoeff::Sqrt { negative, radicand })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NumCoeff::Rational(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, NumCoeff::Rational(_))
    }

    /// Exact square.
    pub fn square(&self) -> Rat {
        match self {
            NumCoeff::Rational(r) => r * r,
            NumCoeff::Sqrt { radicand, .. } => radicand.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            NumCoeff::Rational(r) => rat_to_f64(r),
            NumCoeff::Sqrt { negative, radicand } => {
                let v = rat_to_f64(radicand).sqrt();
                if *negative {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            NumCoeff::Rational(r) => NumCoeff::Rational(-r.clone()),
            NumCoeff::Sqrt { negative, radicand } => NumCoeff::Sqrt {
                negative: !negative,
                radicand: radicand.clone(),
            },
        }
    }
}

/// A law whose coefficients may be irrational; sparse over `i < j` slots
/// like `LieLaw`, with the antisymmetric completion applied on access.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericLaw {
    dim: usize,
    entries: BTreeMap<Slot, NumCoeff>,
}

impl NumericLaw {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(NumericLaw {
            dim,
            entries: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, coeff: NumCoeff) -> Result<()> {
        validate_slot(self.dim, i, j, k)?;
        if coeff.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), coeff);
        }
        Ok(())
    }

    pub fn slots(&self) -> impl Iterator<Item = (Slot, &NumCoeff)> {
        self.entries.iter().map(|(&s, c)| (s, c))
    }

    pub fn support(&self) -> Vec<Slot> {
        self.entries.keys().copied().collect()
    }

    pub fn is_zero_law(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_rational(&self) -> bool {
        self.entries.values().all(NumCoeff::is_rational)
    }

    /// The same law as an exact `LieLaw`, when every coefficient is rational.
    pub fn to_exact(&self) -> Option<LieLaw> {
        if !self.all_rational() {
            return None;
        }
        let mut law = LieLaw::new(self.dim).expect("dim already validated");
        for (&(i, j, k), coeff) in &self.entries {
            if let NumCoeff::Rational(r) = coeff {
                law.set_const(i, j, k, r.clone()).expect("slot already validated");
            }
        }
        Some(law)
    }

    pub fn from_exact(law: &LieLaw) -> Result<NumericLaw> {
        law.require_constant()?;
        let mut out = NumericLaw::new(law.dim())?;
        for ((i, j, k), coeff) in law.slots() {
            let c = coeff.constant_value().expect("constant law").clone();
            out.set(i, j, k, NumCoeff::Rational(c))?;
        }
        Ok(out)
    }

    /// Completed structure constant as a double, `c_ji^k = -c_ij^k`.
    pub fn c_f64(&self, i: usize, j: usize, k: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        let v = self.entries.get(&(a, b, k)).map_or(0.0, NumCoeff::to_f64);
        if neg {
            -v
        } else {
            v
        }
    }

    /// `2 Σ (c_ij^k)²` — exact even with surd coefficients.
    pub fn norm_sq_exact(&self) -> Rat {
        let sum: Rat = self.entries.values().map(NumCoeff::square).sum();
        Rat::from_integer(2.into()) * sum
    }

    /// Largest Jacobi residual component in double arithmetic.
    pub fn jacobi_residual_f64(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    for l in 1..=n {
                        let mut acc = 0.0;
                        for m in 1..=n {
                            acc += self.c_f64(i, j, m) * self.c_f64(m, k, l);
                            acc += self.c_f64(j, k, m) * self.c_f64(m, i, l);
                            acc += self.c_f64(k, i, m) * self.c_f64(m, j, l);
                        }
                        worst = worst.max(acc.abs());
                    }
                }
            }
        }
        worst
    }
}

/// Which computation produced a soliton verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Exact least squares over `{I} ∪ Der` for a rational law.
    ExactFull,
    /// Exact least squares over `{I} ∪ diagonal derivations`; valid when
    /// the support is nice, where the moment map is exactly diagonal.
    ExactDiagonal,
    /// Double-precision SVD projection for general numeric laws.
    Numeric,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Route::ExactFull => "exact",
            Route::ExactDiagonal => "exact-diagonal",
            Route::Numeric => "numeric",
        })
    }
}

/// Result of testing `m(μ) = c·I + D` with `D` a derivation.
#[derive(Clone, Debug)]
pub struct SolitonVerdict {
    /// True iff the residual is within tolerance and `c < 0`.
    pub soliton: bool,
    pub c: f64,
    /// Exact constant on the exact routes.
    pub c_exact: Option<Rat>,
    /// Frobenius distance from `m(μ)` to the affine span; exactly zero on
    /// exact routes when the law is a soliton.
    pub residual: f64,
    pub residual_sq_exact: Option<Rat>,
    /// The best-fitting derivation `D` (diagonal on the exact-diagonal
    /// route).
    pub derivation: Option<crate::linalg::RMatrix>,
    pub route: Route,
}

/// Exact soliton test for a rational law: least squares of the moment map
/// over `{I} ∪ Der(μ)` via exact normal equations.
pub fn verify_soliton(law: &LieLaw, tol: f64) -> Result<SolitonVerdict> {
    use crate::linalg::{frobenius, RMatrix};
    law.require_jacobi()?;
    if law.is_zero_law() {
        return Err(Error::ZeroLaw("soliton verification"));
    }
    let n = law.dim();
    let m = crate::moment::moment_map(law)?;
    let der = crate::derivations::derivation_space(law)?;
    let id = RMatrix::identity(n);
    let mut basis: Vec<&RMatrix> = vec![&id];
    basis.extend(der.basis.iter());
    let t = basis.len();
    let gram = RMatrix::from_fn(t, t, |a, b| {
        frobenius(basis[a], basis[b]).expect("uniform dimensions")
    });
    let rhs: Vec<Rat> = basis
        .iter()
        .map(|b| frobenius(b, &m).expect("uniform dimensions"))
        .collect();
    let sol = gram
        .solve_affine(&rhs)
        .map_err(|_| Error::Invalid("projection Gram system is inconsistent".into()))?;
    if !sol.basis.is_empty() {
        // I is never a derivation of a nonzero law, so this cannot happen.
        return Err(Error::Invalid("projection Gram system is singular".into()));
    }
    let y = sol.particular;
    let mut res_sq = frobenius(&m, &m).expect("square");
    for (ya, ra) in y.iter().zip(&rhs) {
        res_sq -= ya * ra;
    }
    let mut derivation = RMatrix::zeros(n, n);
    for (ya, b) in y.iter().zip(&basis).skip(1) {
        derivation = derivation.add(&b.scale(ya)).expect("uniform dimensions");
    }
    finish_exact(y[0].clone(), res_sq, Some(derivation), Route::ExactFull, tol)
}

/// Soliton test for numeric laws. Dispatch: exact when all coefficients are
/// rational; exact diagonal projection when the support is nice (the moment
/// map is then exactly diagonal and any candidate `D = m - c·I` is forced
/// diagonal); double-precision SVD otherwise.
pub fn verify_soliton_numeric(law: &NumericLaw, tol: f64) -> Result<SolitonVerdict> {
    if law.is_zero_law() {
        return Err(Error::ZeroLaw("soliton verification"));
    }
    if let Some(exact) = law.to_exact() {
        return verify_soliton(&exact, tol);
    }
    let res = law.jacobi_residual_f64();
    if res > tol {
        return Err(Error::NumericJacobi(res));
    }
    match crate::moment::exact_diagonal_moment(law) {
        Ok(diag) => verify_soliton_diagonal(law, &diag, tol),
        Err(Error::NotNice) => verify_soliton_f64(law, tol),
        Err(e) => Err(e),
    }
}

/// Exact projection of a diagonal moment map onto
/// `{1} ∪ {diagonal derivations}` in vector form.
fn verify_soliton_diagonal(law: &NumericLaw, diag: &[Rat], tol: f64) -> Result<SolitonVerdict> {
    use crate::linalg::{dot, RMatrix};
    let n = law.dim();
    let torus = crate::derivations::diagonal_derivations_of_support(n, &law.support());
    let ones = vec![Rat::one(); n];
    let mut basis: Vec<&[Rat]> = vec![&ones];
    for v in &torus {
        basis.push(v);
    }
    let t = basis.len();
    let gram = RMatrix::from_fn(t, t, |a, b| dot(basis[a], basis[b]));
    let rhs: Vec<Rat> = basis.iter().map(|b| dot(b, diag)).collect();
    let sol = gram
        .solve_affine(&rhs)
        .map_err(|_| Error::Invalid("projection Gram system is inconsistent".into()))?;
    if !sol.basis.is_empty() {
        return Err(Error::Invalid("projection Gram system is singular".into()));
    }
    let y = sol.particular;
    let mut res_sq = dot(diag, diag);
    for (ya, ra) in y.iter().zip(&rhs) {
        res_sq -= ya * ra;
    }
    let mut d_diag = vec![Rat::zero(); n];
    for (ya, b) in y.iter().zip(&basis).skip(1) {
        for (entry, v) in d_diag.iter_mut().zip(b.iter()) {
            *entry += ya * v;
        }
    }
    let derivation = RMatrix::diagonal(&d_diag);
    finish_exact(
        y[0].clone(),
        res_sq,
        Some(derivation),
        Route::ExactDiagonal,
        tol,
    )
}

fn finish_exact(
    c_exact: Rat,
    res_sq: Rat,
    derivation: Option<crate::linalg::RMatrix>,
    route: Route,
    tol: f64,
) -> Result<SolitonVerdict> {
    debug_assert!(!res_sq.is_negative());
    let residual = rat_to_f64(&res_sq).max(0.0).sqrt();
    let c = rat_to_f64(&c_exact);
    let soliton = residual <= tol && c_exact.is_negative();
    Ok(SolitonVerdict {
        soliton,
        c,
        c_exact: Some(c_exact),
        residual,
        residual_sq_exact: Some(res_sq),
        derivation,
        route,
    })
}

/// Double-precision fallback: derivation space from the symmetric
/// eigendecomposition of the Leibniz normal matrix, then an SVD least
/// squares for `m = c·I + Σ x_i D_i`.
fn verify_soliton_f64(law: &NumericLaw, tol: f64) -> Result<SolitonVerdict> {
    use nalgebra::{DMatrix, DVector};
    let n = law.dim();
    let m = crate::moment::moment_map_f64(law);

    // Leibniz system rows over the n² matrix entries, row-major.
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for l in 1..=n {
                let mut row = vec![0.0; n * n];
                let mut nonzero = false;
                for k in 1..=n {
                    let c = law.c_f64(i, j, k);
                    if c != 0.0 {
                        row[(l - 1) * n + (k - 1)] += c;
                        nonzero = true;
                    }
                }
                for p in 1..=n {
                    let c = law.c_f64(p, j, l);
                    if c != 0.0 {
                        row[(p - 1) * n + (i - 1)] -= c;
                        nonzero = true;
                    }
                }
                for q in 1..=n {
                    let c = law.c_f64(i, q, l);
                    if c != 0.0 {
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
    let nn = n * n;
    let a = DMatrix::from_fn(rows.len(), nn, |r, c| rows[r][c]);
    let ata = a.transpose() * &a;
    let eig = ata.symmetric_eigen();
    let scale = eig.eigenvalues.iter().cloned().fold(1.0f64, f64::max);
    let cut = (tol * tol * scale).max(1e-24);
    let mut der_basis: Vec<DVector<f64>> = Vec::new();
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= cut {
            der_basis.push(eig.eigenvectors.column(idx).into_owned());
        }
    }

    // Least squares over [vec(I) | vec(D_1) | …].
    let cols = 1 + der_basis.len();
    let mut design = DMatrix::zeros(nn, cols);
    for r in 0..n {
        design[(r * n + r, 0)] = 1.0;
    }
    for (c, d) in der_basis.iter().enumerate() {
        design.set_column(c + 1, d);
    }
    let b = DVector::from_fn(nn, |idx, _| m[(idx / n, idx % n)]);
    let svd = design.clone().svd(true, true);
    let y = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::Invalid(format!("least squares failed: {e}")))?;
    let residual = (&design * &y - &b).norm();
    let c = y[0];
    Ok(SolitonVerdict {
        soliton: residual <= tol && c < 0.0,
        c,
        c_exact: None,
        residual,
        residual_sq_exact: None,
        derivation: None,
        route: Route::Numeric,
    })
}
