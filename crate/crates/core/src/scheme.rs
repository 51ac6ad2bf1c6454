//! Symmetric association schemes: relation tables, intersection numbers,
//! and exact spectral data (eigenmatrices P and Q, multiplicities, Krein
//! parameters).
//!
//! Idempotent ordering is a repo convention: row 0 of P is the valency row
//! and the remaining rows are sorted lexicographically ascending by their
//! entries. Every permutation-sensitive output in this crate states values
//! in that order.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{integer_roots, rat, ExactError, Int, Rat, RatMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeError {
    #[error("cell ({x},{y}) = {found} differs from cell ({y},{x}) = {other}")]
    NotSymmetric {
        x: usize,
        y: usize,
        found: u16,
        other: u16,
    },
    #[error("diagonal cell ({x},{x}) = {found}, expected 0, or 0 found off-diagonal at ({x},{y})")]
    BadDiagonal { x: usize, y: usize, found: u16 },
    #[error("relation class {class} never occurs in the table")]
    MissingClass { class: usize },
    #[error("cell ({x},{y}) = {found} exceeds the class count d = {d}")]
    ClassOutOfRange {
        x: usize,
        y: usize,
        found: u16,
        d: usize,
    },
    #[error(
        "inconsistent triple counts for (h={h}, i={i}, j={j}): pair ({x0},{y0}) sees {c0}, pair ({x1},{y1}) sees {c1}; not an association scheme"
    )]
    InconsistentTriple {
        h: usize,
        i: usize,
        j: usize,
        x0: usize,
        y0: usize,
        c0: u32,
        x1: usize,
        y1: usize,
        c1: u32,
    },
    #[error(
        "non-integral spectrum; residual factor of the characteristic polynomial: {residual:?}"
    )]
    NonIntegralSpectrum { residual: Vec<Int> },
    #[error("eigenvalue separation failed after {attempts} coefficient sequences")]
    SeparationFailed { attempts: usize },
    #[error("bad eigenmatrix: {0}")]
    BadEigenmatrix(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A v x v symmetric table of relation indices in {0..d}; the combinatorial
/// ground truth of a scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTable {
    v: usize,
    d: usize,
    cells: Vec<u16>,
}

impl RelationTable {
    pub fn new(v: usize, d: usize, cells: Vec<u16>) -> Result<Self, SchemeError> {
        assert!(
            v >= 2 && d >= 1 && cells.len() == v * v,
            "malformed relation table"
        );
        let t = RelationTable { v, d, cells };
        t.check_structure()?;
        Ok(t)
    }

    /// Builds from a cell function without structural validation errors
    /// being possible (generator use).
    pub fn from_fn(v: usize, d: usize, f: impl Fn(usize, usize) -> u16) -> Self {
        let mut cells = Vec::with_capacity(v * v);
        for x in 0..v {
            for y in 0..v {
                cells.push(f(x, y));
            }
        }
        RelationTable { v, d, cells }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn cell(&self, x: usize, y: usize) -> u16 {
        self.cells[x * self.v + y]
    }

    pub fn set_cell(&mut self, x: usize, y: usize, c: u16) {
        self.cells[x * self.v + y] = c;
    }

    fn check_structure(&self) -> Result<(), SchemeError> {
        let v = self.v;
        for x in 0..v {
            if self.cell(x, x) != 0 {
                return Err(SchemeError::BadDiagonal {
                    x,
                    y: x,
                    found: self.cell(x, x),
                });
            }
            for y in 0..v {
                let c = self.cell(x, y);
                if c as usize > self.d {
                    return Err(SchemeError::ClassOutOfRange {
                        x,
                        y,
                        found: c,
                        d: self.d,
                    });
                }
                if c != self.cell(y, x) {
                    return Err(SchemeError::NotSymmetric {
                        x,
                        y,
                        found: c,
                        other: self.cell(y, x),
                    });
                }
                if c == 0 && x != y {
                    return Err(SchemeError::BadDiagonal { x, y, found: 0 });
                }
            }
        }
        let mut seen = vec![false; self.d + 1];
        for &c in &self.cells {
            seen[c as usize] = true;
        }
        if let Some(class) = (1..=self.d).find(|&c| !seen[c]) {
            return Err(SchemeError::MissingClass { class });
        }
        Ok(())
    }
}

/// A validated scheme: vertex count, class count, valencies, and the full
/// intersection-number tensor p^h_{ij}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeCore {
    v: usize,
    d: usize,
    valencies: Vec<u64>,
    /// Flat (d+1)^3 tensor, index [h][i][j].
    p: Vec<u64>,
}

impl SchemeCore {
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Valency k_i for i in 1..=d (k_0 = 1).
    pub fn valency(&self, i: usize) -> u64 {
        if i == 0 {
            1
        } else {
            self.valencies[i - 1]
        }
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    pub fn p(&self, h: usize, i: usize, j: usize) -> u64 {
        let n = self.d + 1;
        self.p[(h * n + i) * n + j]
    }

    /// Intersection matrix B_i with (B_i)_{hj} = p^h_{ij}.
    pub fn intersection_matrix(&self, i: usize) -> RatMatrix {
        let n = self.d + 1;
        RatMatrix::from_fn(n, n, |h, j| rat(self.p(h, i, j) as i64))
    }
}

/// Verifies the scheme axioms by exhaustive triple counting and stores the
/// intersection numbers. For every ordered (i,j,h), the count
/// #{z : cell(x,z)=i and cell(z,y)=j} must be identical over all pairs
/// (x,y) in class h.
pub fn validate_table(t: &RelationTable) -> Result<SchemeCore, SchemeError> {
    t.check_structure()?;
    let v = t.v;
    let d = t.d;
    let n = d + 1;
    let mut p: Vec<Option<u32>> = vec![None; n * n * n];
    // Representative pair that first established p[h][i][j], per h.
    let mut rep: Vec<(usize, usize)> = vec![(0, 0); n];
    let mut rep_set = vec![false; n];
    // counts[y][i*n+j] accumulates, for the fixed x of the outer loop, the
    // number of z with cell(x,z)=i and cell(z,y)=j.
    let mut counts: Vec<u32> = vec![0; v * n * n];
    for x in 0..v {
        counts.iter_mut().for_each(|c| *c = 0);
        for z in 0..v {
            let i = t.cell(x, z) as usize;
            let row = &t.cells[z * v..(z + 1) * v];
            let base = i * n;
            for (y, &cj) in row.iter().enumerate() {
                counts[y * n * n + base + cj as usize] += 1;
            }
        }
        for y in 0..v {
            let h = t.cell(x, y) as usize;
            let block = &counts[y * n * n..(y + 1) * n * n];
            if !rep_set[h] {
                rep_set[h] = true;
                rep[h] = (x, y);
                for i in 0..n {
                    for j in 0..n {
                        p[(h * n + i) * n + j] = Some(block[i * n + j]);
                    }
                }
            } else {
                for i in 0..n {
                    for j in 0..n {
                        let expected = p[(h * n + i) * n + j].unwrap();
                        let got = block[i * n + j];
                        if got != expected {
                            let (x0, y0) = rep[h];
                            return Err(SchemeError::InconsistentTriple {
                                h,
                                i,
                                j,
                                x0,
                                y0,
                                c0: expected,
                                x1: x,
                                y1: y,
                                c1: got,
                            });
                        }
                    }
                }
            }
        }
    }
    let p: Vec<u64> = p.into_iter().map(|c| c.unwrap() as u64).collect();
    let core = SchemeCore {
        v,
        d,
        valencies: (1..=d).map(|i| p[i * n + i]).collect(),
        p,
    };
    debug_assert_eq!(core.valencies.iter().sum::<u64>(), (v - 1) as u64);
    debug_assert!(check_counting_symmetries(&core));
    Ok(core)
}

fn check_counting_symmetries(core: &SchemeCore) -> bool {
    let d = core.d;
    for h in 0..=d {
        for i in 0..=d {
            for j in 0..=d {
                if core.p(h, i, j) != core.p(h, j, i) {
                    return false;
                }
                if core.valency(h) * core.p(h, i, j) != core.valency(i) * core.p(i, h, j) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact eigenmatrices and derived data of a scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData {
    v: usize,
    d: usize,
    p: RatMatrix,
    q: RatMatrix,
    multiplicities: Vec<Int>,
    /// Flat (d+1)^3 Krein tensor, index [h][i][j].
    krein: Vec<Rat>,
    integral: bool,
}

impl SpectralData {
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &RatMatrix {
        &self.p
    }

    pub fn q(&self) -> &RatMatrix {
        &self.q
    }

    /// Rank m_j of idempotent j (m_0 = 1).
    pub fn multiplicity(&self, j: usize) -> &Int {
        &self.multiplicities[j]
    }

    pub fn multiplicities(&self) -> &[Int] {
        &self.multiplicities
    }

    pub fn krein(&self, h: usize, i: usize, j: usize) -> &Rat {
        let n = self.d + 1;
        &self.krein[(h * n + i) * n + j]
    }

    pub fn integral(&self) -> bool {
        self.integral
    }

    /// Valency k_i read from row 0 of P.
    pub fn valency(&self, i: usize) -> Rat {
        self.p.at(0, i).clone()
    }

    /// Builds full spectral data from a first eigenmatrix alone
    /// (eigenmatrix-only inputs). Rows are re-sorted into the deterministic
    /// order; all SpectralData invariants are enforced.
    pub fn from_eigenmatrix(p: RatMatrix) -> Result<SpectralData, SchemeError> {
        if !p.is_square() || p.rows() < 2 {
            return Err(SchemeError::BadEigenmatrix(
                "eigenmatrix must be square of size at least 2".into(),
            ));
        }
        let d = p.rows() - 1;
        for l in 0..=d {
            if !p.at(l, 0).is_one() {
                return Err(SchemeError::BadEigenmatrix(format!(
                    "column 0 must be all ones, row {l} has {}",
                    p.at(l, 0)
                )));
            }
        }
        for i in 1..=d {
            let k = p.at(0, i);
            if !k.is_integer() || !k.is_positive() {
                return Err(SchemeError::BadEigenmatrix(format!(
                    "valency {i} must be a positive integer, got {k}"
                )));
            }
        }
        let v_rat: Rat = p.row(0).iter().sum();
        let v = v_rat
            .to_integer()
            .try_into()
            .map_err(|_| SchemeError::BadEigenmatrix("vertex count out of range".into()))?;
        // Deterministic row order: valency row first, the rest ascending.
        let mut rest: Vec<Vec<Rat>> = p.row_vecs().into_iter().skip(1).collect();
        rest.sort();
        let mut rows = vec![p.row(0).to_vec()];
        rows.extend(rest);
        let p = RatMatrix::from_rows(rows).expect("non-empty");
        finish_spectral(v, d, p)
    }
}

/// Assembles Q, multiplicities and the Krein tensor from an ordered P and
/// enforces every SpectralData invariant exactly.
fn finish_spectral(v: usize, d: usize, p: RatMatrix) -> Result<SpectralData, SchemeError> {
    let v_rat = rat(v as i64);
    let p_inv = p.inverse().map_err(|e| match e {
        ExactError::SingularMatrix { .. } => {
            SchemeError::BadEigenmatrix("eigenmatrix is singular".into())
        }
        other => SchemeError::Exact(other),
    })?;
    let q = p_inv.scale(&v_rat);
    // PQ = vI holds by construction; it is re-checked inside inverse().
    let mut multiplicities = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let m = q.at(0, j);
        if !m.is_integer() || !m.is_positive() {
            return Err(SchemeError::BadEigenmatrix(format!(
                "multiplicity {j} must be a positive integer, got {m}"
            )));
        }
        multiplicities.push(m.to_integer());
    }
    let total: Int = multiplicities.iter().sum();
    if total != Int::from(v as u64) {
        return Err(SchemeError::BadEigenmatrix(format!(
            "multiplicities sum to {total}, expected v = {v}"
        )));
    }
    for i in 0..=d {
        if !q.at(i, 0).is_one() {
            return Err(SchemeError::BadEigenmatrix(format!(
                "column 0 of Q must be all ones, row {i} has {}",
                q.at(i, 0)
            )));
        }
    }
    // Krein tensor: for each (i,j) solve sum_h Q[l][h] q^h_ij = Q[l][i]Q[l][j]
    // over all l, i.e. q[.][i][j] = (1/v) P rhs.
    let n = d + 1;
    let mut krein = vec![Rat::zero(); n * n * n];
    for i in 0..n {
        for j in 0..=i {
            let rhs: Vec<Rat> = (0..n).map(|l| q.at(l, i) * q.at(l, j)).collect();
            for h in 0..n {
                let mut s = Rat::zero();
                for (l, r) in rhs.iter().enumerate() {
                    s += p.at(h, l) * r;
                }
                let val = s / &v_rat;
                if val.is_negative() {
                    return Err(SchemeError::BadEigenmatrix(format!(
                        "Krein parameter q^{h}_{{{i},{j}}} = {val} is negative"
                    )));
                }
                krein[(h * n + i) * n + j] = val.clone();
                krein[(h * n + j) * n + i] = val;
            }
        }
    }
    // q^0_{ij} = m_i delta_ij.
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                Rat::from_integer(multiplicities[i].clone())
            } else {
                Rat::zero()
            };
            if krein[i * n + j] != expected {
                return Err(SchemeError::BadEigenmatrix(format!(
                    "q^0_{{{i},{j}}} = {} differs from {expected}",
                    krein[i * n + j]
                )));
            }
        }
    }
    let integral = p.is_integral();
    Ok(SpectralData {
        v,
        d,
        p,
        q,
        multiplicities,
        krein,
        integral,
    })
}

/// Computes the exact spectrum of a validated scheme.
///
/// The rows of P are the common left eigenvectors of the intersection
/// matrices, extracted from a deterministic integer combination
/// B = sum_i c_i B_i with c_i = (v+1+attempt)^i. A repeated eigenvalue of
/// the combination triggers a retry with the next base; an integer-root
/// deflation shortfall means the scheme has a non-integral spectrum and is
/// rejected with the residual polynomial.
pub fn spectrum(core: &SchemeCore) -> Result<SpectralData, SchemeError> {
    let d = core.d;
    let n = d + 1;
    let v = core.v;
    let b_mats: Vec<RatMatrix> = (0..n).map(|i| core.intersection_matrix(i)).collect();
    // Any two distinct P rows collide for at most d bases, and there are at
    // most C(d+1,2) row pairs, so this many attempts always suffices.
    let max_attempts = d * (n * d / 2) + 1;
    let mut attempts = 0;
    for attempt in 0..max_attempts {
        attempts += 1;
        let base = rat((v + 1 + attempt) as i64);
        let mut combo = RatMatrix::identity(n);
        // combo = sum base^i B_i  (B_0 = I).
        let mut coeff = Rat::one();
        for b in b_mats.iter().skip(1) {
            coeff *= &base;
            combo = add(&combo, &b.scale(&coeff));
        }
        let cp = combo.char_poly();
        let roots = integer_roots(&cp)?;
        if let Some(residual) = roots.residual {
            return Err(SchemeError::NonIntegralSpectrum { residual });
        }
        let mut distinct = roots.roots.clone();
        distinct.dedup();
        if distinct.len() != n {
            continue;
        }
        // Left eigenvectors: nullspace of (B^T - lambda I), one dimension each.
        let bt = combo.transpose();
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for lambda in &distinct {
            let shifted = bt.sub_scalar_diag(&Rat::from_integer(lambda.clone()));
            let ns = shifted.nullspace();
            assert_eq!(
                ns.len(),
                1,
                "distinct eigenvalue must have a 1-dim eigenspace"
            );
            let w = &ns[0];
            assert!(!w[0].is_zero(), "eigenvector has zero valency coordinate");
            rows.push(w.iter().map(|x| x / &w[0]).collect());
        }
        // Identify the valency row, then sort the rest ascending.
        let valency_row: Vec<Rat> = (0..n).map(|i| rat(core.valency(i) as i64)).collect();
        let pos = rows
            .iter()
            .position(|r| *r == valency_row)
            .expect("valency row must appear among the eigenvalue rows");
        rows.swap_remove(pos);
        rows.sort();
        let mut ordered = vec![valency_row];
        ordered.extend(rows);
        let p = RatMatrix::from_rows(ordered).expect("non-empty");
        debug_assert!(p.is_integral());
        return finish_spectral(v, d, p);
    }
    Err(SchemeError::SeparationFailed { attempts })
}

fn add(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    RatMatrix::from_fn(a.rows(), a.cols(), |r, c| a.at(r, c) + b.at(r, c))
}

/// A failed row/column count found by [`rowcol_check`]; finding one means
/// an upstream computation is wrong, never that the input scheme is bad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowColViolation {
    /// 1-based principal row indices of the offending subset.
    pub rows: Vec<usize>,
    /// Number of principal columns that are non-constant on those rows.
    pub nonconstant_cols: usize,
}

/// For every t in 2..=d and every t-subset of principal rows of an
/// eigenmatrix, at least t principal columns must be non-constant on those
/// rows. Returns the first violating subset, which a correct caller never
/// sees.
pub fn rowcol_check(m: &RatMatrix, already_principal: bool) -> Result<(), RowColViolation> {
    let principal;
    let pp = if already_principal {
        m
    } else {
        principal = m.principal_part();
        &principal
    };
    let d = pp.rows();
    for t in 2..=d {
        let mut subset: Vec<usize> = (0..t).collect();
        loop {
            let mut nonconstant = 0usize;
            for col in 0..d {
                let first = pp.at(subset[0], col);
                if subset[1..].iter().any(|&r| pp.at(r, col) != first) {
                    nonconstant += 1;
                }
            }
            if nonconstant < t {
                return Err(RowColViolation {
                    rows: subset.iter().map(|&r| r + 1).collect(),
                    nonconstant_cols: nonconstant,
                });
            }
            if !next_subset(&mut subset, d) {
                break;
            }
        }
    }
    Ok(())
}

/// Advances a k-subset of {0..n-1} in lexicographic order; false at the end.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let t = subset.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if subset[i] < n - t + i {
            subset[i] += 1;
            for j in i + 1..t {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
