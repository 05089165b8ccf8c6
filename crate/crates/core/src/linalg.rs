//! Dense exact rational linear algebra: reduced row echelon form, nullspaces,
//! and affine solution sets with inconsistency certificates.
//!
//! Elimination keeps every working row as a primitive integer vector (the
//! fraction-free discipline), so denominators never compound across pivots;
//! pivots are chosen leftmost-column, smallest-row-index, which makes every
//! basis this module returns canonical and reproducible.

use crate::error::{Error, Result};
use crate::rational::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    elem: Vec<Rat>,
}

impl Index<[usize; 2]> for RMatrix {
    type Output = Rat;
    fn index(&self, [r, c]: [usize; 2]) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.elem[r * self.cols + c]
    }
}

impl IndexMut<[usize; 2]> for RMatrix {
    fn index_mut(&mut self, [r, c]: [usize; 2]) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.elem[r * self.cols + c]
    }
}

impl std::fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(crate::rational::fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            elem: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[[i, i]] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        Ok(RMatrix {
            rows: nr,
            cols: nc,
            elem: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[[r, c]] = f(r, c);
            }
        }
        m
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[[i, i]] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.elem[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.elem.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[[c, r]].clone())
    }

    pub fn trace(&self) -> Rat {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self[[i, i]].clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self[[r, c]] == self[[c, r]]))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols)
                .map(|k| &self[[r, k]] * &other[[k, c]])
                .sum()
        }))
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("matrix addition".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            &self[[r, c]] + &other[[r, c]]
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("matrix subtraction".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            &self[[r, c]] - &other[[r, c]]
        }))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| &self[[r, c]] * s)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimMismatch("hcat row counts".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[[r, c]].clone()
            } else {
                other[[r, c - self.cols]].clone()
            }
        }))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.elem.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rescales a row to a primitive integer vector with positive leading
    /// entry. Keeps intermediate entries small during elimination.
    fn normalize_row_primitive(&mut self, r: usize) {
        let row = &self.elem[r * self.cols..(r + 1) * self.cols];
        let mut lcm = BigInt::one();
        for x in row.iter().filter(|x| !x.is_zero()) {
            lcm = lcm.lcm(x.denom());
        }
        let mut gcd = BigInt::zero();
        for x in row.iter().filter(|x| !x.is_zero()) {
            gcd = gcd.gcd(&(x.numer() * (&lcm / x.denom())));
        }
        if gcd.is_zero() {
            return; // zero row
        }
        let mut factor = Rat::new(lcm, gcd);
        if let Some(lead) = row.iter().find(|x| !x.is_zero()) {
            if lead.is_negative() {
                factor = -factor;
            }
        }
        for c in 0..self.cols {
            let i = r * self.cols + c;
            let v = std::mem::replace(&mut self.elem[i], Rat::zero());
            self.elem[i] = v * &factor;
        }
    }

    /// `row[a] -= f * row[b]`
    fn row_axpy(&mut self, a: usize, b: usize, f: &Rat) {
        for c in 0..self.cols {
            let v = &self.elem[b * self.cols + c] * f;
            let i = a * self.cols + c;
            let old = std::mem::replace(&mut self.elem[i], Rat::zero());
            self.elem[i] = old - v;
        }
    }

    /// Reduced row echelon form with the canonical pivot order (leftmost
    /// column, then smallest row index).
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[[i, c]].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            m.normalize_row_primitive(r);
            for i in 0..m.rows {
                if i != r && !m[[i, c]].is_zero() {
                    let f = &m[[i, c]] / &m[[r, c]];
                    m.row_axpy(i, r, &f);
                    m.normalize_row_primitive(i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        for (r, &c) in pivots.iter().enumerate() {
            let inv = m[[r, c]].recip();
            for cc in 0..m.cols {
                let i = r * m.cols + cc;
                let v = std::mem::replace(&mut m.elem[i], Rat::zero());
                m.elem[i] = v * &inv;
            }
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of `{x : Ax = 0}`, one vector per free column in
    /// ascending column order.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let Rref { mat, pivots } = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -mat[[r, f]].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical row-space basis: the nonzero rows of the RREF. Two matrices
    /// have equal row spaces iff these agree, which makes subspaces
    /// comparable by value.
    pub fn row_space(&self) -> RMatrix {
        let Rref { mat, pivots } = self.rref();
        let mut rows = Vec::with_capacity(pivots.len());
        for r in 0..pivots.len() {
            rows.push(mat.row(r).to_vec());
        }
        RMatrix::from_rows(&rows).expect("rref rows are rectangular")
    }

    /// General solution of `Ax = b`. On inconsistency the error carries a
    /// left-kernel certificate `y` with `y^T A = 0` and `y^T b = 1`.
    pub fn solve_affine(&self, b: &[Rat]) -> Result<AffineSolution> {
        if b.len() != self.rows {
            return Err(Error::DimMismatch("solve_affine rhs length".into()));
        }
        let bcol = RMatrix::from_fn(self.rows, 1, |r, _| b[r].clone());
        let aug = self.hcat(&bcol)?.hcat(&RMatrix::identity(self.rows))?;
        let Rref { mat, pivots } = aug.rref();
        for (r, &c) in pivots.iter().enumerate() {
            if c == self.cols {
                let certificate = mat.row(r)[self.cols + 1..].to_vec();
                return Err(Error::Inconsistent { certificate });
            }
        }
        let sys_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < self.cols).collect();
        let mut particular = vec![Rat::zero(); self.cols];
        for (r, &c) in sys_pivots.iter().enumerate() {
            particular[c] = mat[[r, self.cols]].clone();
        }
        let pivot_set: std::collections::BTreeSet<usize> = sys_pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (r, &c) in sys_pivots.iter().enumerate() {
                v[c] = -mat[[r, f]].clone();
            }
            basis.push(v);
        }
        Ok(AffineSolution { particular, basis })
    }
}

pub struct Rref {
    pub mat: RMatrix,
    pub pivots: Vec<usize>,
}

/// The solution set `{particular + span(basis)}` of an affine system.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
}

impl AffineSolution {
    /// The value of coordinate `i` if it is constant on the whole set.
    pub fn constant_coordinate(&self, i: usize) -> Option<&Rat> {
        if self.basis.iter().all(|v| v[i].is_zero()) {
            Some(&self.particular[i])
        } else {
            None
        }
    }
}

/// Frobenius inner product `tr(a^T b)`.
pub fn frobenius(a: &RMatrix, b: &RMatrix) -> Result<Rat> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimMismatch("frobenius product".into()));
    }
    let mut acc = Rat::zero();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            acc += &a[[r, c]] * &b[[r, c]];
        }
    }
    Ok(acc)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
