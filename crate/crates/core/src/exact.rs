//! Exact rational scalar and dense-matrix kernel.
//!
//! Everything downstream (eigenmatrices, fusion checks, classification)
//! runs on arbitrary-precision rationals; there is no floating point
//! anywhere in this crate. Elimination is fraction-free (Bareiss-style)
//! on integerized rows to bound intermediate swell, with normalization to
//! lowest terms only at the boundary.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for `n/d` in lowest terms.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is singular: rank {rank} < {n}")]
    SingularMatrix { rank: usize, n: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions must be at least 1x1 and match the entry count")]
    BadDimensions,
    #[error("polynomial must be monic with integer coefficients")]
    NonMonicOrNonIntegral,
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, ExactError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(ExactError::BadDimensions);
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, ExactError> {
        if rows.is_empty() || rows[0].is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(ExactError::BadDimensions);
        }
        let (r, c) = (rows.len(), rows[0].len());
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-entry constructor, mostly for tests and frozen matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("non-empty rectangular input")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Rat::one() } else { Rat::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|k| self.at(r, k) * other.at(k, c)).sum()
        })
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    /// M - x*I for square M.
    pub fn sub_scalar_diag(&self, x: &Rat) -> RatMatrix {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |r, c| {
            if r == c {
                self.at(r, c) - x
            } else {
                self.at(r, c).clone()
            }
        })
    }

    /// The matrix with row 0 and column 0 removed.
    pub fn principal_part(&self) -> RatMatrix {
        assert!(self.rows > 1 && self.cols > 1);
        Self::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            self.at(r + 1, c + 1).clone()
        })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Clears denominators row by row; returns the integer rows and the
    /// per-row scaling factors L_i (row i of the result is L_i times row i
    /// of self).
    fn integerized_rows(&self) -> (Vec<Vec<Int>>, Vec<Int>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut l = Int::one();
            for c in 0..self.cols {
                l = l.lcm(self.at(r, c).denom());
            }
            let row = (0..self.cols)
                .map(|c| {
                    let x = self.at(r, c) * Rat::from_integer(l.clone());
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect();
            out.push(row);
            scales.push(l);
        }
        (out, scales)
    }

    /// Exact inverse by fraction-free Gauss-Jordan elimination on the
    /// integerized matrix. The product with the input is verified to be the
    /// identity before returning.
    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let (int_rows, scales) = self.integerized_rows();
        // Work on [A | I] where A is the integerized matrix.
        let mut w: Vec<Vec<Int>> = int_rows
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }));
                row
            })
            .collect();
        let mut prev = Int::one();
        for k in 0..n {
            let Some(pr) = (k..n).find(|&r| !w[r][k].is_zero()) else {
                return Err(ExactError::SingularMatrix {
                    rank: self.rank(),
                    n,
                });
            };
            w.swap(k, pr);
            let p = w[k][k].clone();
            let pivot_row = w[k].clone();
            for (i, row) in w.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let f = row[k].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    let num = &p * &*x - &f * pv;
                    debug_assert!((&num % &prev).is_zero(), "fraction-free step not exact");
                    *x = num / &prev;
                }
            }
            prev = p;
        }
        // Left block is now prev * I (up to the recorded swaps, which were
        // applied to both blocks); right block is prev * A^{-1}.
        let det = prev;
        let inv = RatMatrix::from_fn(n, n, |i, j| {
            // M^{-1} = A^{-1} * diag(scales)
            Rat::new(w[i][n + j].clone(), det.clone()) * Rat::from_integer(scales[j].clone())
        });
        let prod = self.mul(&inv);
        assert_eq!(prod, RatMatrix::identity(n), "inverse verification failed");
        Ok(inv)
    }

    /// Matrix rank by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let (w, _) = self.integerized_rows();
        let (echelon, pivots) = fraction_free_echelon(w);
        let _ = echelon;
        pivots.len()
    }

    /// Basis of the right nullspace in reduced-echelon convention: one
    /// vector per free column f, with entry 1 at f and 0 at the other free
    /// columns. Each basis vector is verified against M*v = 0.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let n = self.cols;
        let (w, _) = self.integerized_rows();
        let (ech, pivots) = fraction_free_echelon(w);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            // Back-substitute pivot variables from the bottom up.
            for &(r, c) in pivots.iter().rev() {
                let mut s = Rat::zero();
                for j in c + 1..n {
                    if !ech[r][j].is_zero() && !v[j].is_zero() {
                        s += Rat::from_integer(ech[r][j].clone()) * &v[j];
                    }
                }
                v[c] = -s / Rat::from_integer(ech[r][c].clone());
            }
            for r in 0..self.rows {
                let dot: Rat = (0..n).map(|c| self.at(r, c) * &v[c]).sum();
                assert!(dot.is_zero(), "nullspace verification failed");
            }
            basis.push(v);
        }
        basis
    }

    /// Monic characteristic polynomial, degree-descending, by the
    /// Faddeev-LeVerrier recurrence (matrix products and traces only).
    pub fn char_poly(&self) -> Vec<Rat> {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rat::one()];
        let mut m = self.clone();
        for k in 1..=n {
            if k > 1 {
                // m <- A * (m - c_{k-1} I); `coeffs` holds -c_j already.
                let c_prev = -coeffs.last().unwrap().clone();
                m = self.mul(&m.sub_scalar_diag(&c_prev));
            }
            let trace: Rat = (0..n).map(|i| m.at(i, i).clone()).sum();
            let c_k = trace / rat(k as i64);
            coeffs.push(-c_k);
        }
        coeffs
    }
}

/// Fraction-free forward elimination. Returns the echelon matrix and the
/// (row, col) positions of the pivots.
fn fraction_free_echelon(mut w: Vec<Vec<Int>>) -> (Vec<Vec<Int>>, Vec<(usize, usize)>) {
    let m = w.len();
    let n = if m == 0 { 0 } else { w[0].len() };
    let mut pivots = Vec::new();
    let mut prev = Int::one();
    let mut r = 0;
    for col in 0..n {
        if r >= m {
            break;
        }
        let Some(pr) = (r..m).find(|&i| !w[i][col].is_zero()) else {
            continue;
        };
        w.swap(r, pr);
        let p = w[r][col].clone();
        let pivot_row = w[r].clone();
        for row in w[r + 1..].iter_mut() {
            let f = row[col].clone();
            for (x, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let num = &p * &*x - &f * pv;
                debug_assert!((&num % &prev).is_zero(), "fraction-free step not exact");
                *x = num / &prev;
            }
        }
        prev = p;
        pivots.push((r, col));
        r += 1;
    }
    (w, pivots)
}

/// Integer roots of a monic integer polynomial, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerRoots {
    /// All integer roots, ascending, repeated per multiplicity.
    pub roots: Vec<Int>,
    /// Monic residual of degree >= 1 when deflation does not reach a
    /// constant; its coefficients are degree-descending. None when the
    /// polynomial splits completely over the integers.
    pub residual: Option<Vec<Int>>,
}

/// Finds every integer root of a monic integer polynomial by divisor trial
/// on the constant term plus deflation. Candidate divisors are pruned by
/// the Fujiwara root bound; the constant term is factored completely
/// (trial division, then deterministic Miller-Rabin plus Pollard-Brent),
/// so no root is missed.
pub fn integer_roots(poly: &[Rat]) -> Result<IntegerRoots, ExactError> {
    if poly.is_empty() || !poly[0].is_one() || poly.iter().any(|c| !c.is_integer()) {
        return Err(ExactError::NonMonicOrNonIntegral);
    }
    let mut p: Vec<Int> = poly.iter().map(|c| c.to_integer()).collect();
    let mut roots: Vec<Int> = Vec::new();
    // Roots at zero first.
    while p.len() > 1 && p.last().unwrap().is_zero() {
        roots.push(Int::zero());
        p.pop();
    }
    if p.len() > 1 {
        let c0 = p.last().unwrap().magnitude().clone();
        let bound = fujiwara_bound(&p);
        let mut divisors = bounded_divisors(&c0, &bound);
        divisors.sort();
        for dmag in divisors {
            let d = Int::from(dmag);
            for cand in [d.clone(), -d.clone()] {
                while p.len() > 1 && eval_int_poly(&p, &cand).is_zero() {
                    p = deflate(&p, &cand);
                    roots.push(cand.clone());
                }
            }
            if p.len() == 1 {
                break;
            }
        }
    }
    roots.sort();
    let residual = if p.len() > 1 { Some(p) } else { None };
    Ok(IntegerRoots { roots, residual })
}

fn eval_int_poly(p: &[Int], x: &Int) -> Int {
    let mut acc = Int::zero();
    for c in p {
        acc = acc * x + c;
    }
    acc
}

/// Synthetic division of p by (x - r); the remainder must be zero.
fn deflate(p: &[Int], r: &Int) -> Vec<Int> {
    let mut q = Vec::with_capacity(p.len() - 1);
    let mut acc = Int::zero();
    for c in &p[..p.len() - 1] {
        acc = acc * r + c;
        q.push(acc.clone());
    }
    debug_assert!((eval_int_poly(p, r)).is_zero());
    q
}

/// Upper bound on the magnitude of any root of a monic integer polynomial:
/// 2 * max_k |a_{n-k}|^(1/k) (Fujiwara), rounded up.
fn fujiwara_bound(p: &[Int]) -> BigUint {
    let mut best = BigUint::one();
    for (k, c) in p.iter().skip(1).enumerate() {
        let mag = c.magnitude();
        if mag.is_zero() {
            continue;
        }
        let root = mag.nth_root((k + 1) as u32) + BigUint::one();
        if root > best {
            best = root;
        }
    }
    best * BigUint::from(2u32)
}

/// All divisors of n that are <= bound, via complete factorization.
fn bounded_divisors(n: &BigUint, bound: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    let factors = factorize(n.clone());
    let primes: Vec<(BigUint, u32)> = factors.into_iter().collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, BigUint::one())];
    while let Some((idx, val)) = stack.pop() {
        if idx == primes.len() {
            out.push(val);
            continue;
        }
        let (ref pr, e) = primes[idx];
        let mut cur = val.clone();
        for _ in 0..=e {
            if &cur > bound {
                break;
            }
            stack.push((idx + 1, cur.clone()));
            cur *= pr;
        }
    }
    out
}

/// Complete factorization: trial division by small numbers, then
/// deterministic Miller-Rabin and Pollard-Brent rho on what remains.
fn factorize(mut n: BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n <= BigUint::one() {
        return out;
    }
    let mut d = 2u64;
    while d < 10_000 && BigUint::from(d).pow(2) <= n {
        let db = BigUint::from(d);
        while (&n % &db).is_zero() {
            *out.entry(db.clone()).or_insert(0) += 1;
            n /= &db;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                *out.entry(m).or_insert(0) += 1;
            } else {
                let f = pollard_brent(&m);
                stack.push(&m / &f);
                stack.push(f);
            }
        }
    }
    out
}

/// Deterministic Miller-Rabin; the witness set is complete for every
/// modulus below 3.3e24, far past anything this crate produces.
fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigUint::from(small);
        if n == &s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent rho with a fixed, deterministic parameter schedule.
/// Returns a non-trivial factor of composite n.
fn pollard_brent(n: &BigUint) -> BigUint {
    fn step(v: &BigUint, c: &BigUint, n: &BigUint) -> BigUint {
        (v * v + c) % n
    }
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = step(&x, &c, n);
            y = step(&step(&y, &c, n), &c, n);
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += BigUint::one();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn inverse_2x2_closed_form() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[1, -1]]);
        let inv = m.inverse().unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(1, 2), ratio(-1, 2)],
        ])
        .unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn inverse_identity() {
        let m = RatMatrix::identity(4);
        assert_eq!(m.inverse().unwrap(), RatMatrix::identity(4));
    }

    #[test]
    fn inverse_singular_rank_one() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            m.inverse(),
            Err(ExactError::SingularMatrix { rank: 1, n: 2 })
        );
    }

    #[test]
    fn inverse_with_rational_entries() {
        let m = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 5), ratio(1, 7)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
    }

    #[test]
    fn char_poly_swap_matrix() {
        let m = RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.char_poly(), rats(&[1, 0, -1]));
    }

    #[test]
    fn char_poly_identity_3() {
        let m = RatMatrix::identity(3);
        assert_eq!(m.char_poly(), rats(&[1, -3, 3, -1]));
    }

    #[test]
    fn char_poly_one_class_intersection_matrix() {
        // B_1 of the 1-class scheme on 4 vertices; hand expansion of the
        // 2x2 determinant gives x^2 - 2x - 3.
        let m = RatMatrix::from_i64_rows(&[&[0, 3], &[1, 2]]);
        assert_eq!(m.char_poly(), rats(&[1, -2, -3]));
    }

    #[test]
    fn integer_roots_x2_minus_1() {
        let r = integer_roots(&rats(&[1, 0, -1])).unwrap();
        assert_eq!(r.roots, vec![Int::from(-1), Int::from(1)]);
        assert_eq!(r.residual, None);
    }

    #[test]
    fn integer_roots_factorable_quadratic() {
        // x^2 - 2x - 3 = (x - 3)(x + 1)
        let r = integer_roots(&rats(&[1, -2, -3])).unwrap();
        assert_eq!(r.roots, vec![Int::from(-1), Int::from(3)]);
        assert_eq!(r.residual, None);
    }

    #[test]
    fn integer_roots_irrational_residual() {
        let r = integer_roots(&rats(&[1, 0, -5])).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(
            r.residual,
            Some(vec![Int::from(1), Int::from(0), Int::from(-5)])
        );
    }

    #[test]
    fn integer_roots_multiplicity_and_zero() {
        // x^2 (x - 2)^3
        let p = rats(&[1, -6, 12, -8, 0, 0]);
        let r = integer_roots(&p).unwrap();
        assert_eq!(
            r.roots,
            vec![
                Int::from(0),
                Int::from(0),
                Int::from(2),
                Int::from(2),
                Int::from(2)
            ]
        );
        assert_eq!(r.residual, None);
    }

    #[test]
    fn integer_roots_rejects_non_monic() {
        assert_eq!(
            integer_roots(&rats(&[2, 1])),
            Err(ExactError::NonMonicOrNonIntegral)
        );
        let halves = vec![Rat::one(), ratio(1, 2)];
        assert_eq!(
            integer_roots(&halves),
            Err(ExactError::NonMonicOrNonIntegral)
        );
    }

    #[test]
    fn integer_roots_large_prime_constant() {
        // (x - 1000003)(x + 9) has a large prime in the constant term.
        let big = 1_000_003i64;
        let p = rats(&[1, 9 - big, -9 * big]);
        let r = integer_roots(&p).unwrap();
        assert_eq!(r.roots, vec![Int::from(-9), Int::from(big)]);
        assert_eq!(r.residual, None);
    }

    #[test]
    fn nullspace_identity_empty() {
        assert!(RatMatrix::identity(3).nullspace().is_empty());
    }

    #[test]
    fn nullspace_zero_matrix_full() {
        let z = RatMatrix::from_i64_rows(&[&[0, 0], &[0, 0]]);
        let ns = z.nullspace();
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], rats(&[1, 0]));
        assert_eq!(ns[1], rats(&[0, 1]));
    }

    #[test]
    fn nullspace_rank_one() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        // Reduced-echelon convention: free column set to 1.
        assert_eq!(ns[0], vec![rat(-1), rat(1)]);
    }

    #[test]
    fn factorize_smooth_and_prime() {
        let f = factorize(BigUint::from(600u32));
        let expected: Vec<(BigUint, u32)> = vec![
            (BigUint::from(2u32), 3),
            (BigUint::from(3u32), 1),
            (BigUint::from(5u32), 2),
        ];
        assert_eq!(f.into_iter().collect::<Vec<_>>(), expected);
        let g = factorize(BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn prime_test_known_values() {
        assert!(is_prime(&BigUint::from(2u32)));
        assert!(is_prime(&BigUint::from(998_244_353u64)));
        assert!(!is_prime(&BigUint::from(998_244_351u64)));
        assert!(!is_prime(&BigUint::one()));
    }
}
