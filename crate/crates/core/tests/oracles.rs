//! Brute-force cross-checks of the core pipeline on small schemes:
//! intersection numbers against literal 01-matrix products, fusing pairs
//! against table-level re-validation, and the chain eigenmatrices against
//! their closed form.

use amorph_core::fusion::{fusing_pairs, IndexPartition};
use amorph_core::generators::{complete, johnson3, latin_scheme, wreath, wreath_chain};
use amorph_core::scheme::{spectrum, validate_table, RelationTable};

fn adjacency(table: &RelationTable, class: u16) -> Vec<Vec<u64>> {
    let v = table.v();
    (0..v)
        .map(|x| {
            (0..v)
                .map(|y| u64::from(table.cell(x, y) == class))
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// A_i A_j must equal sum_h p^h_ij A_h as literal integer matrices.
#[test]
fn intersection_numbers_reproduce_matrix_products() {
    let tables = vec![
        complete(4).unwrap(),
        latin_scheme(3, 2).unwrap(),
        latin_scheme(5, 2).unwrap(),
        wreath_chain(&[2, 2, 2]).unwrap().0,
        wreath_chain(&[3, 2]).unwrap().0,
        johnson3(7).unwrap(),
        wreath(2, &latin_scheme(3, 2).unwrap()).unwrap(),
    ];
    for table in tables {
        assert!(table.v() <= 50);
        let core = validate_table(&table).unwrap();
        let d = core.d();
        let mats: Vec<Vec<Vec<u64>>> = (0..=d as u16).map(|c| adjacency(&table, c)).collect();
        for i in 0..=d {
            for j in 0..=d {
                let product = matmul(&mats[i], &mats[j]);
                let v = table.v();
                for x in 0..v {
                    for y in 0..v {
                        let expected: u64 = (0..=d).map(|h| core.p(h, i, j) * mats[h][x][y]).sum();
                        assert_eq!(
                            product[x][y], expected,
                            "v={v} (i,j)=({i},{j}) cell ({x},{y})"
                        );
                    }
                }
            }
        }
    }
}

/// A pair fuses iff relabeling the table by the pair partition validates
/// as a scheme; this re-derives the fusing graph without touching the
/// eigenmatrix route.
#[test]
fn fusing_pairs_match_table_level_oracle() {
    let tables = vec![
        latin_scheme(3, 2).unwrap(),
        wreath_chain(&[2, 2, 2]).unwrap().0,
        johnson3(7).unwrap(),
        wreath(2, &latin_scheme(3, 2).unwrap()).unwrap(),
    ];
    for table in tables {
        let core = validate_table(&table).unwrap();
        let spec = spectrum(&core).unwrap();
        let by_matrix: Vec<(usize, usize)> =
            fusing_pairs(spec.p()).iter().map(|fp| fp.pair).collect();
        let d = core.d();
        let mut by_table = Vec::new();
        for i in 1..=d {
            for j in i + 1..=d {
                let pi = IndexPartition::pair(d, i, j).unwrap();
                let mut label = vec![0u16; d + 1];
                for (p_idx, part) in pi.parts().iter().enumerate() {
                    for &c in part {
                        label[c] = (p_idx + 1) as u16;
                    }
                }
                let relabeled = RelationTable::from_fn(table.v(), pi.len(), |x, y| {
                    label[table.cell(x, y) as usize]
                });
                if validate_table(&relabeled).is_ok() {
                    by_table.push((i, j));
                }
            }
        }
        assert_eq!(by_matrix, by_table, "v = {}", table.v());
    }
}

/// The computed spectrum of every small chain equals the closed-form
/// prediction entrywise.
#[test]
fn chain_closed_form_holds_on_mixed_factors() {
    for ns in [
        vec![2, 2],
        vec![3, 3],
        vec![2, 3],
        vec![3, 2, 2],
        vec![2, 2, 3, 2],
    ] {
        let (table, predicted) = wreath_chain(&ns).unwrap();
        let core = validate_table(&table).unwrap();
        let spec = spectrum(&core).unwrap();
        assert_eq!(spec.p(), &predicted, "chain {ns:?}");
    }
}
