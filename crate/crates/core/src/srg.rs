//! Strongly regular relations and idempotents: detection from eigenmatrix
//! columns, (negative) Latin square / conference classification, the
//! railway lemma for fused pairs and its dual, and the Smith-style bounds
//! on strongly regular idempotents.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{rat, Rat, RatMatrix};
use crate::scheme::SpectralData;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SrgError {
    #[error("invalid strongly regular parameters: {0}")]
    InvalidSrgParams(String),
    #[error("degenerate denominator: the two restricted eigenvalues coincide")]
    DegenerateDenominator,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
}

/// Parameters (v,k,lambda,mu) of a strongly regular graph together with
/// its restricted eigenvalues r > s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub r: Rat,
    pub s: Rat,
}

impl SrgParams {
    /// Derives lambda and mu from the spectrum and checks the standard
    /// identities: lambda = k + r + s + rs, mu = k + rs,
    /// k(k - lambda - 1) = (v - k - 1) mu, and r >= 0 > s.
    pub fn from_spectrum(v: u64, k: u64, r: Rat, s: Rat) -> Result<SrgParams, SrgError> {
        if r <= s {
            return Err(SrgError::InvalidSrgParams(format!(
                "need r > s, got r={r}, s={s}"
            )));
        }
        if k == 0 || k >= v - 1 {
            return Err(SrgError::InvalidSrgParams(format!(
                "valency k={k} must satisfy 1 <= k <= v-2 (non-empty, non-complete)"
            )));
        }
        if r.is_negative() || !s.is_negative() {
            return Err(SrgError::InvalidSrgParams(format!(
                "need r >= 0 > s, got r={r}, s={s}"
            )));
        }
        let kq = rat(k as i64);
        let lambda_q = &kq + &r + &s + &r * &s;
        let mu_q = &kq + &r * &s;
        for (name, val) in [("lambda", &lambda_q), ("mu", &mu_q)] {
            if !val.is_integer() || val.is_negative() {
                return Err(SrgError::InvalidSrgParams(format!(
                    "{name} = {val} is not a nonnegative integer"
                )));
            }
        }
        let lambda = lambda_q.to_integer().try_into().unwrap();
        let mu: u64 = mu_q.to_integer().try_into().unwrap();
        if k * (k - lambda - 1) != (v - k - 1) * mu {
            return Err(SrgError::InvalidSrgParams(format!(
                "k(k-lambda-1) = {} differs from (v-k-1)mu = {}",
                k * (k - lambda - 1),
                (v - k - 1) * mu
            )));
        }
        Ok(SrgParams {
            v,
            k,
            lambda,
            mu,
            r,
            s,
        })
    }
}

/// Latin square / negative Latin square / conference classification. A
/// conference graph on a square vertex count legitimately carries all
/// three tags, so classification returns a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeTag {
    LatinSquare { n: i64, t: i64, strict: bool },
    NegativeLatinSquare { n: i64, t: i64, strict: bool },
    Conference,
}

impl TypeTag {
    pub fn is_latin(&self) -> bool {
        matches!(self, TypeTag::LatinSquare { .. })
    }

    pub fn is_negative_latin(&self) -> bool {
        matches!(self, TypeTag::NegativeLatinSquare { .. })
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::LatinSquare { n, t, strict } => {
                write!(f, "LS(n={n},t={t}{})", if *strict { ",strict" } else { "" })
            }
            TypeTag::NegativeLatinSquare { n, t, strict } => {
                write!(
                    f,
                    "NLS(n={n},t={t}{})",
                    if *strict { ",strict" } else { "" }
                )
            }
            TypeTag::Conference => write!(f, "Conference"),
        }
    }
}

/// Classifies a strongly regular spectrum (v, k, r, s). Both signs of
/// sqrt(v) are tried for the Latin identities; the conference tag is
/// decided from integer parameter identities alone (2k = v-1,
/// lambda = (v-5)/4, mu = (v-1)/4), so no square root of a non-square is
/// ever needed.
pub fn classify_srg(v: u64, k: u64, r: &Rat, s: &Rat) -> Result<Vec<TypeTag>, SrgError> {
    let params = SrgParams::from_spectrum(v, k, r.clone(), s.clone())?;
    let conference = 2 * k == v - 1
        && v >= 5
        && (v - 5).is_multiple_of(4)
        && params.lambda == (v - 5) / 4
        && params.mu == (v - 1) / 4;
    let mut tags = Vec::new();
    let root = (v as f64).sqrt() as u64;
    let root = (root.saturating_sub(2)..=root + 2).find(|&n| n * n == v);
    if let Some(n) = root {
        let n = n as i64;
        // Positive n: t = -s, k = t(n-1), r = n - t.
        if s.is_integer() {
            let t = -s.to_integer().to_string().parse::<i64>().unwrap_or(0);
            if t > 0 && k as i64 == t * (n - 1) && *r == rat(n - t) {
                tags.push(TypeTag::LatinSquare {
                    n,
                    t,
                    strict: !conference,
                });
            }
        }
        // Negative n: t = -r (negative), k = t(-n-1), s = -n - (-r).
        if r.is_integer() {
            let t = -r.to_integer().to_string().parse::<i64>().unwrap_or(0);
            if t < 0 && k as i64 == t * (-n - 1) && *s == rat(-n + (-t)) {
                tags.push(TypeTag::NegativeLatinSquare {
                    n: -n,
                    t,
                    strict: !conference,
                });
            }
        }
    }
    if conference {
        tags.push(TypeTag::Conference);
    }
    Ok(tags)
}

/// Spectrum of the union of two edge-disjoint commuting strongly regular
/// graphs (the railway lemma): four restricted eigenvalues
/// theta = a_1+a_2, a_1+b_2, b_1+a_2, b_1+b_2 with exact multiplicities.
pub fn railway(
    v: u64,
    k1: u64,
    a1: &Rat,
    b1: &Rat,
    k2: u64,
    a2: &Rat,
    b2: &Rat,
) -> Result<[(Rat, Rat); 4], SrgError> {
    let denom = (a1 - b1) * (a2 - b2);
    if denom.is_zero() {
        return Err(SrgError::DegenerateDenominator);
    }
    SrgParams::from_spectrum(v, k1, a1.max(b1).clone(), a1.min(b1).clone())?;
    SrgParams::from_spectrum(v, k2, a2.max(b2).clone(), a2.min(b2).clone())?;
    let vq = rat(v as i64);
    let k1q = rat(k1 as i64);
    let k2q = rat(k2 as i64);
    let m1 = (&vq * b1 * b2 - (&k1q - b1) * (&k2q - b2)) / &denom;
    let m2 = -(&vq * b1 * a2 - (&k1q - b1) * (&k2q - a2)) / &denom;
    let m3 = -(&vq * a1 * b2 - (&k1q - a1) * (&k2q - b2)) / &denom;
    let m4 = (&vq * a1 * a2 - (&k1q - a1) * (&k2q - a2)) / &denom;
    let out = [(a1 + a2, m1), (a1 + b2, m2), (b1 + a2, m3), (b1 + b2, m4)];
    let total: Rat = out.iter().map(|(_, m)| m.clone()).sum();
    assert_eq!(
        total,
        &vq - rat(1),
        "restricted multiplicities must sum to v-1"
    );
    let trace: Rat = out.iter().map(|(t, m)| t * m).sum::<Rat>() + &k1q + &k2q;
    assert!(trace.is_zero(), "trace of the union must vanish");
    if a1 > b1 && a2 > b2 {
        assert!(out[1].1.is_positive(), "m2 must be positive when a_i > b_i");
        assert!(out[2].1.is_positive(), "m3 must be positive when a_i > b_i");
    }
    Ok(out)
}

/// Complement within the same type: t' = n + 1 - t, k' = v - 1 - k.
pub fn complement_type(v: u64, k: u64, tag: &TypeTag) -> Result<(SrgParams, TypeTag), SrgError> {
    let (n, t) = match tag {
        TypeTag::LatinSquare { n, t, .. } | TypeTag::NegativeLatinSquare { n, t, .. } => (*n, *t),
        TypeTag::Conference => {
            return Err(SrgError::TypeMismatch(
                "complement closure needs an LS or NLS tag".into(),
            ))
        }
    };
    let tp = n + 1 - t;
    let kp = v - 1 - k;
    let (r, s) = if n > 0 {
        (rat(n - tp), rat(-tp))
    } else {
        (rat(-tp), rat(n - tp))
    };
    let params = SrgParams::from_spectrum(v, kp, r.clone(), s.clone())?;
    let tags = classify_srg(v, kp, &r, &s)?;
    let same_variant = tags
        .iter()
        .find(|t2| {
            t2.is_latin() == tag.is_latin() && t2.is_negative_latin() == tag.is_negative_latin()
        })
        .copied()
        .ok_or_else(|| SrgError::TypeMismatch("complement lost its type".into()))?;
    Ok((params, same_variant))
}

/// Union of two same-type graphs on a common vertex count:
/// k' = (t1+t2)(n-1) with eigenvalues n-(t1+t2) and -(t1+t2).
pub fn union_type(
    v: u64,
    tag1: &TypeTag,
    tag2: &TypeTag,
) -> Result<(SrgParams, TypeTag), SrgError> {
    let pick = |tag: &TypeTag| match tag {
        TypeTag::LatinSquare { n, t, .. } => Some((true, *n, *t)),
        TypeTag::NegativeLatinSquare { n, t, .. } => Some((false, *n, *t)),
        TypeTag::Conference => None,
    };
    let (latin1, n1, t1) = pick(tag1)
        .ok_or_else(|| SrgError::TypeMismatch("union closure needs LS or NLS tags".into()))?;
    let (latin2, n2, t2) = pick(tag2)
        .ok_or_else(|| SrgError::TypeMismatch("union closure needs LS or NLS tags".into()))?;
    if latin1 != latin2 {
        return Err(SrgError::TypeMismatch(
            "union of a Latin square type and a negative Latin square type".into(),
        ));
    }
    if n1 != n2 {
        return Err(SrgError::TypeMismatch(format!(
            "different orders n = {n1} and {n2}"
        )));
    }
    let t = t1 + t2;
    let kp: u64 = (t * (n1 - 1))
        .try_into()
        .map_err(|_| SrgError::InvalidSrgParams("union valency out of range".into()))?;
    let (r, s) = if n1 > 0 {
        (rat(n1 - t), rat(-t))
    } else {
        (rat(-t), rat(n1 - t))
    };
    let params = SrgParams::from_spectrum(v, kp, r.clone(), s.clone())?;
    let tag = if latin1 {
        TypeTag::LatinSquare {
            n: n1,
            t,
            strict: 2 * kp != v - 1,
        }
    } else {
        TypeTag::NegativeLatinSquare {
            n: n1,
            t,
            strict: 2 * kp != v - 1,
        }
    };
    Ok((params, tag))
}

/// What [`from_single_eigenvalue`] classifies: a relation (valency k) or
/// an idempotent (rank m). The arithmetic is identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrKind {
    Relation,
    Idempotent,
}

/// Given a strongly regular relation or idempotent on a square number of
/// vertices whose size (valency or rank) satisfies size = -a(n-1) for one
/// restricted eigenvalue a, derives the other eigenvalue b = n + a and the
/// type with t = -a.
pub fn from_single_eigenvalue(
    kind: SrKind,
    v: u64,
    size: u64,
    a: &Rat,
) -> Result<TypeTag, SrgError> {
    let what = match kind {
        SrKind::Relation => "eigenvalue",
        SrKind::Idempotent => "dual eigenvalue",
    };
    if !a.is_integer() {
        return Err(SrgError::HypothesisFails(format!(
            "{what} {a} is not an integer"
        )));
    }
    let root = (v as f64).sqrt() as u64;
    let Some(n_abs) = (root.saturating_sub(2)..=root + 2).find(|&n| n * n == v) else {
        return Err(SrgError::HypothesisFails(format!(
            "v = {v} is not a perfect square"
        )));
    };
    let a_int: i64 = a
        .to_integer()
        .try_into()
        .map_err(|_| SrgError::HypothesisFails("eigenvalue out of range".into()))?;
    let strict = 2 * size != v - 1;
    for n in [n_abs as i64, -(n_abs as i64)] {
        if -a_int * (n - 1) == size as i64 {
            let t = -a_int;
            return Ok(if n > 0 {
                TypeTag::LatinSquare { n, t, strict }
            } else {
                TypeTag::NegativeLatinSquare { n, t, strict }
            });
        }
    }
    Err(SrgError::HypothesisFails(format!(
        "size {size} is not -({a})(n-1) for n = +-{n_abs}"
    )))
}

/// A strongly regular idempotent: rank m and its two restricted dual
/// eigenvalues a > b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrIdempotent {
    pub v: u64,
    pub m: u64,
    pub a: Rat,
    pub b: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithViolation {
    pub detail: String,
}

/// Checks the Smith-style constraints on a strongly regular idempotent of
/// its 2-class fusion scheme: the chain m >= a >= 0 > -1 >= b >= -m and
/// the identities ab = q^2_11 - m, a + b = q^1_11 - q^2_11.
pub fn smith_check(ide: &SrIdempotent, q111: &Rat, q211: &Rat) -> Result<(), SmithViolation> {
    let m = rat(ide.m as i64);
    let chain = [
        (
            m.clone() >= ide.a,
            format!("m >= a fails: {} < {}", ide.m, ide.a),
        ),
        (!ide.a.is_negative(), format!("a >= 0 fails: {}", ide.a)),
        (ide.b <= rat(-1), format!("b <= -1 fails: {}", ide.b)),
        (
            ide.b >= -m.clone(),
            format!("b >= -m fails: {} < -{}", ide.b, ide.m),
        ),
    ];
    for (ok, msg) in chain {
        if !ok {
            return Err(SmithViolation { detail: msg });
        }
    }
    let ab = &ide.a * &ide.b;
    if ab != q211 - &m {
        return Err(SmithViolation {
            detail: format!("ab = {ab} differs from q^2_11 - m = {}", q211 - &m),
        });
    }
    let sum = &ide.a + &ide.b;
    if sum != q111 - q211 {
        return Err(SmithViolation {
            detail: format!("a+b = {sum} differs from q^1_11 - q^2_11 = {}", q111 - q211),
        });
    }
    Ok(())
}

/// Dual railway values: the sizes l_1..l_4 of the four relation unions
/// split by the sign pattern of two strongly regular idempotents' dual
/// eigenvalues.
pub fn dual_railway(
    v: u64,
    m1: u64,
    a1: &Rat,
    b1: &Rat,
    m2: u64,
    a2: &Rat,
    b2: &Rat,
) -> Result<[Rat; 4], SrgError> {
    let denom = (a1 - b1) * (a2 - b2);
    if denom.is_zero() {
        return Err(SrgError::DegenerateDenominator);
    }
    let vq = rat(v as i64);
    let m1q = rat(m1 as i64);
    let m2q = rat(m2 as i64);
    let l1 = (&vq * b1 * b2 - (&m1q - b1) * (&m2q - b2)) / &denom;
    let l2 = -(&vq * b1 * a2 - (&m1q - b1) * (&m2q - a2)) / &denom;
    let l3 = -(&vq * a1 * b2 - (&m1q - a1) * (&m2q - b2)) / &denom;
    let l4 = (&vq * a1 * a2 - (&m1q - a1) * (&m2q - a2)) / &denom;
    let out = [l1, l2, l3, l4];
    let total: Rat = out.iter().cloned().sum();
    assert_eq!(total, &vq - rat(1), "l values must sum to v-1");
    let smith_chain = |m: &Rat, a: &Rat, b: &Rat| {
        a >= &Rat::zero() && m >= a && b <= &rat(-1) && *b >= -m.clone()
    };
    if a1 > b1 && a2 > b2 && smith_chain(&m1q, a1, b1) && smith_chain(&m2q, a2, b2) {
        assert!(out[1].is_positive(), "l2 must be positive");
        assert!(out[2].is_positive(), "l3 must be positive");
    }
    Ok(out)
}

/// Dual railway evaluated against a concrete scheme: relation indices are
/// split by the sign pattern of the Q columns of the two idempotents, and
/// each l value must equal the valency sum of its part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualRailwayOutcome {
    pub ells: [Rat; 4],
    /// Relation index sets B_1..B_4 in the pattern order (a1,a2), (a1,b2),
    /// (b1,a2), (b1,b2).
    pub parts: [Vec<usize>; 4],
}

pub fn dual_railway_on_scheme(
    spec: &SpectralData,
    j1: usize,
    j2: usize,
) -> Result<DualRailwayOutcome, SrgError> {
    if j1 == j2 {
        return Err(SrgError::InvalidSrgParams(
            "need two distinct idempotents".into(),
        ));
    }
    let d = spec.d();
    let col = |j: usize| -> Result<(Rat, Rat), SrgError> {
        let mut vals: Vec<Rat> = (1..=d).map(|i| spec.q().at(i, j).clone()).collect();
        vals.sort();
        vals.dedup();
        if vals.len() != 2 {
            return Err(SrgError::InvalidSrgParams(format!(
                "idempotent {j} has {} restricted dual eigenvalues, need exactly 2",
                vals.len()
            )));
        }
        Ok((vals[1].clone(), vals[0].clone()))
    };
    let (a1, b1) = col(j1)?;
    let (a2, b2) = col(j2)?;
    let m1: u64 = spec.multiplicity(j1).try_into().unwrap();
    let m2: u64 = spec.multiplicity(j2).try_into().unwrap();
    let ells = dual_railway(spec.v() as u64, m1, &a1, &b1, m2, &a2, &b2)?;
    let mut parts: [Vec<usize>; 4] = Default::default();
    for i in 1..=d {
        let first = spec.q().at(i, j1) == &a1;
        let second = spec.q().at(i, j2) == &a2;
        let idx = match (first, second) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        parts[idx].push(i);
    }
    for (ell, part) in ells.iter().zip(parts.iter()) {
        let valency_sum: Rat = part.iter().map(|&i| spec.valency(i)).sum();
        if *ell != valency_sum {
            return Err(SrgError::InvalidSrgParams(format!(
                "l value {ell} differs from the valency sum {valency_sum} of {part:?}"
            )));
        }
    }
    Ok(DualRailwayOutcome { ells, parts })
}

/// Indices whose principal eigenmatrix column takes exactly two distinct
/// values: strongly regular relations for M = P, strongly regular
/// idempotents for M = Q. Empty for d = 1 (the complete graph is excluded
/// by non-completeness).
pub fn sr_detect(m: &RatMatrix) -> Vec<usize> {
    let d = m.rows() - 1;
    (1..=d)
        .filter(|&i| {
            let mut vals: Vec<&Rat> = (1..=d).map(|l| m.at(l, i)).collect();
            vals.sort();
            vals.dedup();
            vals.len() == 2
        })
        .collect()
}

/// The two restricted values of a strongly regular column, larger first,
/// together with the row-0 size (valency for P, rank for Q).
pub fn sr_column_data(m: &RatMatrix, i: usize) -> Option<(u64, Rat, Rat)> {
    let d = m.rows() - 1;
    let mut vals: Vec<Rat> = (1..=d).map(|l| m.at(l, i).clone()).collect();
    vals.sort();
    vals.dedup();
    if vals.len() != 2 {
        return None;
    }
    let size = m.at(0, i);
    if !size.is_integer() || !size.is_positive() {
        return None;
    }
    let size: u64 = size.to_integer().try_into().ok()?;
    Some((size, vals[1].clone(), vals[0].clone()))
}

/// Inputs for [`smith_check`] extracted from the 2-class fusion generated
/// by one strongly regular idempotent: the fused second eigenmatrix is
/// built with E_1 = E_j, and q^1_11, q^2_11 come from its Krein tensor.
pub fn sr_idempotent_two_class(
    spec: &SpectralData,
    j: usize,
) -> Result<(SrIdempotent, Rat, Rat), SrgError> {
    let (m, a, b) = sr_column_data(spec.q(), j).ok_or_else(|| {
        SrgError::InvalidSrgParams(format!("idempotent {j} is not strongly regular"))
    })?;
    let v = spec.v() as i64;
    // Fused Q with columns [E_0, E_j, everything else]; its three distinct
    // rows are determined by the column-j value.
    let q_tilde = RatMatrix::from_rows(vec![
        vec![rat(1), rat(m as i64), rat(v - 1 - m as i64)],
        vec![rat(1), a.clone(), -rat(1) - &a],
        vec![rat(1), b.clone(), -rat(1) - &b],
    ])
    .expect("3x3");
    let p_tilde = q_tilde
        .inverse()
        .map_err(|e| SrgError::InvalidSrgParams(format!("fused Q is singular: {e}")))?
        .scale(&rat(v));
    // q^h_11 = (1/v) sum_l Ptilde[h][l] * Qtilde[l][1]^2.
    let krein_h = |h: usize| -> Rat {
        let mut s = Rat::zero();
        for l in 0..3 {
            s += p_tilde.at(h, l) * q_tilde.at(l, 1) * q_tilde.at(l, 1);
        }
        s / rat(v)
    };
    Ok((
        SrIdempotent {
            v: spec.v() as u64,
            m,
            a,
            b,
        },
        krein_h(1),
        krein_h(2),
    ))
}
