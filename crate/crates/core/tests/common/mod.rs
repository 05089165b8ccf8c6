//! Shared generators and independent oracles for the integration suites.
//! The oracles deliberately avoid the library's own linear algebra: the
//! feasibility oracle enumerates polytope vertices over i128 fractions and
//! the Leibniz re-check works through the public bracket only.

// Each integration test target compiles this module separately and not
// every target uses every helper.
#![allow(dead_code)]

use nilrad::algebra::LieLaw;
use nilrad::linalg::RMatrix;
use nilrad::rational::{rat, Rat};
use nilrad::simplex::{LpProblem, VarSign};
use num_traits::Zero;
use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every bundled law as a constant law, instantiating parametric entries
/// at a few representative values including the degenerate ones.
pub fn catalog_laws() -> Vec<(String, LieLaw)> {
    let mut out = Vec::new();
    for entry in &nilrad::catalog::Catalog::bundled().entries {
        let Some(law) = &entry.law else { continue };
        if law.is_constant() {
            out.push((entry.name.clone(), law.clone()));
        } else {
            for v in [rat(2, 1), rat(0, 1), rat(1, 1)] {
                let name = format!("{} at {}", entry.name, v);
                out.push((name, law.instantiate(&v)));
            }
        }
    }
    out
}

/// A sparse antisymmetric law with small rational coefficients and at
/// least one entry. No Jacobi constraint: trace-type identities are
/// quadratic in the structure constants and hold regardless.
pub fn random_skew_law(rng: &mut ChaCha8Rng, dim: usize) -> LieLaw {
    loop {
        let mut law = LieLaw::new(dim).expect("positive dimension");
        for i in 1..dim {
            for j in (i + 1)..=dim {
                for k in 1..=dim {
                    if !rng.random_bool(0.15) {
                        continue;
                    }
                    let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
                    let den = *[1i64, 2, 3].choose(rng).unwrap();
                    law.set_const(i, j, k, rat(num, den)).unwrap();
                }
            }
        }
        if !law.is_zero_law() {
            return law;
        }
    }
}

/// Columns of a derivation matrix, as vectors.
fn column(d: &RMatrix, k: usize) -> Vec<Rat> {
    (0..d.rows()).map(|i| d[[i, k]].clone()).collect()
}

/// Independent Leibniz re-check through the public bracket: for every
/// basis pair, D[e_i,e_j] must equal [De_i,e_j] + [e_i,De_j].
pub fn leibniz_holds(law: &LieLaw, d: &RMatrix) -> bool {
    let n = law.dim();
    let unit = |i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::from_integer(1.into());
        v
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let bracket = law.bracket(&unit(i), &unit(j));
            let mut lhs = vec![Rat::zero(); n];
            for (k, coeff) in bracket.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (row, value) in column(d, k).into_iter().enumerate() {
                    lhs[row] += coeff.clone() * value;
                }
            }
            let mut rhs = law.bracket(&column(d, i), &unit(j));
            for (row, value) in law.bracket(&unit(i), &column(d, j)).into_iter().enumerate() {
                rhs[row] += value;
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// A random homogeneous feasibility problem: `A_eq x = 0`, `A_ub x <= 0`
/// with some rows strict, mixed sign constraints. Dimensions stay small so
/// the vertex-enumeration oracle below remains brute-forceable.
pub fn random_lp(rng: &mut ChaCha8Rng, n: usize) -> LpProblem {
    let entry = |rng: &mut ChaCha8Rng| rat(rng.random_range(-3i64..=3), 1);
    let eq_rows = rng.random_range(1..=2usize);
    let a_eq = RMatrix::from_fn(eq_rows, n, |_, _| entry(rng));
    let ub_rows = if n >= 5 {
        rng.random_range(0..=1usize)
    } else {
        rng.random_range(0..=3usize)
    };
    let a_ub = RMatrix::from_fn(ub_rows, n, |_, _| entry(rng));
    let strict_rows = (0..ub_rows).filter(|_| rng.random_bool(0.5)).collect();
    let constrained = if n >= 5 { 2 } else { n };
    let signs = (0..n)
        .map(|i| {
            if i >= constrained {
                VarSign::Free
            } else {
                *[VarSign::Free, VarSign::NonNeg, VarSign::Positive]
                    .choose(rng)
                    .unwrap()
            }
        })
        .collect();
    LpProblem {
        a_eq,
        b_eq: vec![Rat::zero(); eq_rows],
        a_ub,
        strict_rows,
        signs,
    }
}

// Minimal exact fractions over i128 for the oracle. Inputs are tiny, so
// intermediate values stay far below the i128 range.
#[derive(Clone, Copy, PartialEq)]
struct Q {
    n: i128,
    d: i128,
}

impl Q {
    const ZERO: Q = Q { n: 0, d: 1 };
    const ONE: Q = Q { n: 1, d: 1 };

    fn new(n: i128, d: i128) -> Q {
        assert!(d != 0);
        let g = gcd(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let sign = if d < 0 { -1 } else { 1 };
        Q {
            n: sign * n / g,
            d: sign * d / g,
        }
    }

    fn add(self, other: Q) -> Q {
        Q::new(self.n * other.d + other.n * self.d, self.d * other.d)
    }

    fn sub(self, other: Q) -> Q {
        Q::new(self.n * other.d - other.n * self.d, self.d * other.d)
    }

    fn mul(self, other: Q) -> Q {
        Q::new(self.n * other.n, self.d * other.d)
    }

    fn div(self, other: Q) -> Q {
        assert!(other.n != 0);
        Q::new(self.n * other.d, self.d * other.n)
    }

    fn is_zero(self) -> bool {
        self.n == 0
    }

    fn is_pos(self) -> bool {
        self.n > 0
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 0 {
        1
    } else {
        a
    }
}

fn to_q(r: &Rat) -> Q {
    let n: i128 = r.numer().try_into().expect("oracle input fits i128");
    let d: i128 = r.denom().try_into().expect("oracle input fits i128");
    Q::new(n, d)
}

/// Reduced row echelon form; returns pivot columns.
fn rref(m: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::ONE.div(m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for c2 in 0..cols {
                    let sub = f.mul(m[r][c2]);
                    m[i][c2] = m[i][c2].sub(sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Nullspace basis of the equality matrix, one column per free variable.
fn nullspace_q(a: &RMatrix) -> Vec<Vec<Q>> {
    let n = a.cols();
    let mut m: Vec<Vec<Q>> = (0..a.rows())
        .map(|i| (0..n).map(|j| to_q(&a[[i, j]])).collect())
        .collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::ZERO; n];
            v[f] = Q::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = Q::ZERO.sub(m[row][f]);
            }
            v
        })
        .collect()
}

/// Solves a square system by Gaussian elimination; None when singular.
fn solve_q(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = Q::ONE.div(a[c][c]);
        for x in a[c].iter_mut() {
            *x = x.mul(inv);
        }
        b[c] = b[c].mul(inv);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                for c2 in 0..n {
                    let sub = f.mul(a[c][c2]);
                    a[i][c2] = a[i][c2].sub(sub);
                }
                let sub = f.mul(b[c]);
                b[i] = b[i].sub(sub);
            }
        }
    }
    Some(b)
}

/// Brute-force feasibility decision by vertex enumeration.
///
/// The solution set of the equalities is parametrized as x = B y; every
/// other requirement becomes a closed constraint on (y, t) where t is the
/// strictness margin (strict rows become row + t <= 0, positive variables
/// -x_i + t <= 0). Because the system is homogeneous, the problem is
/// feasible iff the maximum of t over the box-bounded polytope |y_i| <= 1,
/// 0 <= t <= 1 is positive, and that maximum is attained at a vertex, i.e.
/// at the solution of some dim-sized subset of active constraints.
pub fn oracle_feasible(p: &LpProblem) -> bool {
    assert!(p.b_eq.iter().all(Rat::is_zero), "oracle expects homogeneous systems");
    let basis = nullspace_q(&p.a_eq);
    let k = basis.len();
    let dim = k + 1;

    // Constraint rows g over (y, t) meaning g . (y, t) <= q.
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    let x_row = |coeffs: &dyn Fn(usize) -> Q| -> Vec<Q> {
        // Pull an x-space functional back through x = B y.
        (0..k)
            .map(|b| {
                let mut acc = Q::ZERO;
                for (i, v) in basis[b].iter().enumerate() {
                    acc = acc.add(coeffs(i).mul(*v));
                }
                acc
            })
            .collect()
    };
    for r in 0..p.a_ub.rows() {
        let mut g = x_row(&|i| to_q(&p.a_ub[[r, i]]));
        let strict = p.strict_rows.contains(&r);
        g.push(if strict { Q::ONE } else { Q::ZERO });
        rows.push((g, Q::ZERO));
    }
    for (i, sign) in p.signs.iter().enumerate() {
        let needs = match sign {
            VarSign::Free => continue,
            VarSign::NonNeg => Q::ZERO,
            VarSign::Positive => Q::ONE,
        };
        let mut g = x_row(&|j| if j == i { Q::new(-1, 1) } else { Q::ZERO });
        g.push(needs);
        rows.push((g, Q::ZERO));
    }
    for b in 0..k {
        for sgn in [1i128, -1] {
            let mut g = vec![Q::ZERO; dim];
            g[b] = Q::new(sgn, 1);
            rows.push((g, Q::ONE));
        }
    }
    let mut top = vec![Q::ZERO; dim];
    top[k] = Q::ONE;
    rows.push((top.clone(), Q::ONE));
    let mut bottom = vec![Q::ZERO; dim];
    bottom[k] = Q::new(-1, 1);
    rows.push((bottom, Q::ZERO));

    let m = rows.len();
    let satisfies = |z: &[Q]| {
        rows.iter().all(|(g, q)| {
            let mut acc = Q::ZERO;
            for (gi, zi) in g.iter().zip(z) {
                acc = acc.add(gi.mul(*zi));
            }
            !acc.sub(*q).is_pos()
        })
    };

    // Enumerate dim-sized subsets of constraints as candidate active sets.
    let mut best_t = Q::ZERO;
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let a: Vec<Vec<Q>> = idx.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Q> = idx.iter().map(|&i| rows[i].1).collect();
        if let Some(z) = solve_q(a, b) {
            if satisfies(&z) && z[k].sub(best_t).is_pos() {
                best_t = z[k];
            }
        }
        // Next combination in lexicographic order.
        let mut pos = dim;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != m - dim + pos {
                idx[pos] += 1;
                for q in (pos + 1)..dim {
                    idx[q] = idx[q - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return best_t.is_pos();
            }
        }
    }
}
