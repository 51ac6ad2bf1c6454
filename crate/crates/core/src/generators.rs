//! Constructors for the example scheme families: complete graphs, wreath
//! products, repeated wreath chains, affine Latin-square schemes, and the
//! Johnson scheme on 3-subsets.
//!
//! Chain labeling convention: relation 1 is the coarsest (across the
//! outermost copies), relation r the innermost, so the computed eigenmatrix
//! matches the closed-form prediction column for column.

use num_traits::One;
use thiserror::Error;

use crate::exact::{rat, Rat, RatMatrix};
use crate::scheme::RelationTable;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("{0} is not prime; the Latin-square construction needs a prime field")]
    NotPrime(usize),
    #[error("bad direction count t = {t}: need 2 <= t <= n = {n}")]
    BadT { t: usize, n: usize },
}

/// 1-class scheme on n vertices: all off-diagonal cells in class 1.
pub fn complete(n: usize) -> Result<RelationTable, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::BadSize(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    Ok(RelationTable::from_fn(n, 1, |x, y| u16::from(x != y)))
}

/// Wreath product: m copies of the inner scheme, plus one complete
/// multipartite relation (label d_inner + 1) between the copies.
pub fn wreath(m: usize, inner: &RelationTable) -> Result<RelationTable, GeneratorError> {
    if m < 2 {
        return Err(GeneratorError::BadSize(format!(
            "wreath needs m >= 2 copies, got {m}"
        )));
    }
    let vi = inner.v();
    let across = (inner.d() + 1) as u16;
    Ok(RelationTable::from_fn(m * vi, inner.d() + 1, |x, y| {
        if x / vi == y / vi {
            inner.cell(x % vi, y % vi)
        } else {
            across
        }
    }))
}

/// Repeated wreath product of 1-class schemes, together with the predicted
/// eigenmatrix. Relation 1 is the across-everything relation of the
/// outermost factor (valency n_r...n_2(n_1 - 1)); relation r the innermost
/// (valency n_r - 1). The returned matrix rows are already in the
/// deterministic order, so the computed spectrum must equal it entrywise.
pub fn wreath_chain(ns: &[usize]) -> Result<(RelationTable, RatMatrix), GeneratorError> {
    if ns.len() < 2 {
        return Err(GeneratorError::BadSize(format!(
            "wreath chain needs at least 2 factors, got {}",
            ns.len()
        )));
    }
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(GeneratorError::BadSize(format!("chain factor {bad} < 2")));
    }
    let table = chain_table(ns);
    let predicted = chain_eigenmatrix(ns);
    Ok((table, predicted))
}

fn chain_table(ns: &[usize]) -> RelationTable {
    if ns.len() == 1 {
        return RelationTable::from_fn(ns[0], 1, |x, y| u16::from(x != y));
    }
    let inner = chain_table(&ns[1..]);
    let vi = inner.v();
    RelationTable::from_fn(ns[0] * vi, inner.d() + 1, |x, y| {
        if x / vi == y / vi {
            let c = inner.cell(x % vi, y % vi);
            if c == 0 {
                0
            } else {
                c + 1
            }
        } else {
            1
        }
    })
}

/// Closed-form eigenmatrix of the chain: with suffix products
/// S_j = n_{j+1}...n_r, row 0 carries S_j(n_j - 1), and row l has zeros
/// before column l, -S_l on the diagonal, and the row-0 entries after it.
pub fn chain_eigenmatrix(ns: &[usize]) -> RatMatrix {
    let r = ns.len();
    let mut suffix = vec![1i64; r + 1];
    for j in (0..r).rev() {
        suffix[j] = suffix[j + 1] * ns[j] as i64;
    }
    // suffix[j] = n_{j+1}...n_r for 1-based column j is suffix[j] here with
    // suffix[r] = 1.
    RatMatrix::from_fn(r + 1, r + 1, |l, j| {
        if j == 0 {
            Rat::one()
        } else if l == 0 || j > l {
            rat(suffix[j] * (ns[j - 1] as i64 - 1))
        } else if j == l {
            rat(-suffix[j])
        } else {
            rat(0)
        }
    })
}

/// Amorphic Latin-square-type scheme from t directions of the affine plane
/// over Z_n (n prime): vertices are ordered pairs, relations 1..t join
/// pairs lying on a common line of the corresponding direction, relation
/// t+1 is the remainder. t = 2 gives the rows-and-columns grid scheme.
pub fn latin_scheme(n: usize, t: usize) -> Result<RelationTable, GeneratorError> {
    if !is_small_prime(n) {
        return Err(GeneratorError::NotPrime(n));
    }
    if t < 2 || t > n {
        return Err(GeneratorError::BadT { t, n });
    }
    let v = n * n;
    Ok(RelationTable::from_fn(v, t + 1, |x, y| {
        if x == y {
            return 0;
        }
        let (r1, c1) = (x / n, x % n);
        let (r2, c2) = (y / n, y % n);
        // Direction list: same-row, then slopes 0..n-1.
        let dir = if r1 == r2 {
            0
        } else {
            let dr = (r2 + n - r1) % n;
            let dc = (c2 + n - c1) % n;
            1 + (dc * mod_inverse(dr, n)) % n
        };
        if dir < t {
            (dir + 1) as u16
        } else {
            (t + 1) as u16
        }
    }))
}

fn is_small_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: usize, p: usize) -> usize {
    // p is prime and a is nonzero mod p.
    let mut result = 1usize;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Johnson scheme J(n,3): vertices are 3-subsets of an n-set, cell is
/// 3 minus the intersection size. A non-amorphic control whose relations
/// are not all strongly regular.
pub fn johnson3(n: usize) -> Result<RelationTable, GeneratorError> {
    if n < 7 {
        return Err(GeneratorError::BadSize(format!(
            "johnson3 needs n >= 7, got {n}"
        )));
    }
    let mut subsets: Vec<[usize; 3]> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                subsets.push([a, b, c]);
            }
        }
    }
    let v = subsets.len();
    Ok(RelationTable::from_fn(v, 3, |x, y| {
        let sx = &subsets[x];
        let sy = &subsets[y];
        let common = sx.iter().filter(|e| sy.contains(e)).count();
        (3 - common) as u16
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{spectrum, validate_table};

    #[test]
    fn complete_small() {
        let t = complete(2).unwrap();
        assert_eq!((t.cell(0, 0), t.cell(0, 1), t.cell(1, 0)), (0, 1, 1));
        let core = validate_table(&complete(4).unwrap()).unwrap();
        assert_eq!(core.valencies(), &[3]);
        assert_eq!(
            complete(1),
            Err(GeneratorError::BadSize(
                "complete graph needs n >= 2, got 1".into()
            ))
        );
    }

    #[test]
    fn wreath_of_k2_matches_known_spectrum() {
        let inner = complete(2).unwrap();
        let t = wreath(2, &inner).unwrap();
        let core = validate_table(&t).unwrap();
        assert_eq!(core.valencies(), &[1, 2]);
        let s = spectrum(&core).unwrap();
        // Deterministic row order with labels inner=1, across=2.
        let expected = RatMatrix::from_i64_rows(&[&[1, 1, 2], &[1, -1, 0], &[1, 1, -2]]);
        assert_eq!(s.p(), &expected);
    }

    #[test]
    fn chain_tables_validate_and_match_prediction() {
        for ns in [vec![2, 2], vec![2, 2, 2], vec![2, 3, 2]] {
            let (t, predicted) = wreath_chain(&ns).unwrap();
            let core = validate_table(&t).unwrap();
            let s = spectrum(&core).unwrap();
            assert_eq!(s.p(), &predicted, "chain {ns:?}");
        }
    }

    #[test]
    fn chain_eigenmatrix_2_3_2() {
        let m = chain_eigenmatrix(&[2, 3, 2]);
        let expected = RatMatrix::from_i64_rows(&[
            &[1, 6, 4, 1],
            &[1, -6, 4, 1],
            &[1, 0, -2, 1],
            &[1, 0, 0, -1],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn chain_222_prediction_is_the_paper_matrix() {
        let m = chain_eigenmatrix(&[2, 2, 2]);
        let expected = RatMatrix::from_i64_rows(&[
            &[1, 4, 2, 1],
            &[1, -4, 2, 1],
            &[1, 0, -2, 1],
            &[1, 0, 0, -1],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn latin_grid_is_the_grid_scheme() {
        let t = latin_scheme(3, 2).unwrap();
        let core = validate_table(&t).unwrap();
        assert_eq!(core.valencies(), &[2, 2, 4]);
        // Relation 1 = same row, relation 2 = same column.
        assert_eq!(t.cell(0, 1), 1);
        assert_eq!(t.cell(0, 3), 2);
        assert_eq!(t.cell(0, 4), 3);
    }

    #[test]
    fn latin_5_3_valencies() {
        let t = latin_scheme(5, 3).unwrap();
        let core = validate_table(&t).unwrap();
        assert_eq!(core.valencies(), &[4, 4, 4, 12]);
    }

    #[test]
    fn latin_rejects_non_prime_and_bad_t() {
        assert_eq!(latin_scheme(4, 2), Err(GeneratorError::NotPrime(4)));
        assert_eq!(latin_scheme(5, 1), Err(GeneratorError::BadT { t: 1, n: 5 }));
        assert_eq!(latin_scheme(5, 6), Err(GeneratorError::BadT { t: 6, n: 5 }));
    }

    #[test]
    fn johnson3_7_valencies() {
        let t = johnson3(7).unwrap();
        assert_eq!(t.v(), 35);
        let core = validate_table(&t).unwrap();
        // k_j = C(3, 3-j) C(4, j).
        assert_eq!(core.valencies(), &[12, 18, 4]);
        assert_eq!(
            johnson3(6),
            Err(GeneratorError::BadSize(
                "johnson3 needs n >= 7, got 6".into()
            ))
        );
    }

    #[test]
    fn johnson3_8_size() {
        assert_eq!(johnson3(8).unwrap().v(), 56);
    }
}
