use fnrate::equivalence::{scalar_partition, x3_partition};
use fnrate::pair_structure::{h_vector, pair_index_set};
use fnrate::{fixtures, DemandFunction, Side};

/// The running GF(3) example written as a polynomial over GF(3).
fn gf3_polynomial(x1: i64, x2: i64, x3: i64) -> usize {
    let v = x1 * x1 * x2 * x2 * x3 - x1 * x1 * x2 * x3 * x3 + x1 * x2 * x2 * x3 * x3
        + x1 * x1 * x2 * x3
        + x1 * x2 * x2 * x3
        + x1 * x1 * x3 * x3
        - x2 * x2 * x3 * x3
        + x1 * x1 * x3
        + x2 * x2 * x3
        + x1 * x3 * x3
        - x2 * x3 * x3
        - x1 * x3
        - x2 * x3
        - x3 * x3
        + x1
        - x2
        + x3;
    v.rem_euclid(3) as usize
}

#[test]
fn gf3_fixture_matches_polynomial() {
    let f = fixtures::gf3();
    let g = DemandFunction::from_fn(3, 3, |a, b, c| gf3_polynomial(a as i64, b as i64, c as i64)).unwrap();
    assert_eq!(f.table(), g.table());
    assert_eq!(f.name(), Some("gf3-example"));
}

#[test]
fn sum_fixtures_match_definitions() {
    let arith = DemandFunction::from_fn(2, 4, |a, b, c| a + b + c).unwrap();
    assert_eq!(fixtures::arithmetic_sum().table(), arith.table());
    let gf2 = DemandFunction::from_fn(2, 2, |a, b, c| a ^ b ^ c).unwrap();
    assert_eq!(fixtures::gf2_sum().table(), gf2.table());
}

#[test]
fn fixtures_roundtrip_through_emit() {
    for (name, f) in fixtures::all() {
        assert_eq!(DemandFunction::load(&f.emit()).unwrap(), f, "{name}");
    }
}

fn classes(f: &DemandFunction, u: Side, a3: usize) -> Vec<Vec<usize>> {
    let mut c = scalar_partition(f, u, a3).classes().to_vec();
    c.sort();
    c
}

#[test]
fn gf3_partitions() {
    let f = fixtures::gf3();
    let singletons = vec![vec![0], vec![1], vec![2]];
    assert_eq!(classes(&f, Side::One, 0), singletons);
    assert_eq!(classes(&f, Side::One, 1), vec![vec![0, 1], vec![2]]);
    assert_eq!(classes(&f, Side::One, 2), vec![vec![0], vec![1, 2]]);
    assert_eq!(classes(&f, Side::Two, 0), singletons);
    assert_eq!(classes(&f, Side::Two, 1), vec![vec![0], vec![1, 2]]);
    assert_eq!(classes(&f, Side::Two, 2), vec![vec![0, 1], vec![2]]);
    assert_eq!(x3_partition(&f).len(), 3);
}

/// Class-pair table for GF(3) in 1-based class labels, `[a3][b]`.
const PAIR_TABLE: [[&[(usize, usize)]; 3]; 3] = [
    [&[(1, 1), (2, 2), (3, 3)], &[(1, 3), (2, 1), (3, 2)], &[(1, 2), (2, 3), (3, 1)]],
    [&[(1, 1), (1, 2), (2, 1)], &[(2, 2)], &[]],
    [&[(2, 2)], &[(1, 1), (1, 2), (2, 1)], &[]],
];

#[test]
fn gf3_pair_table() {
    let f = fixtures::gf3();
    for (a3, row) in PAIR_TABLE.iter().enumerate() {
        for (b, want) in row.iter().enumerate() {
            match pair_index_set(&f, a3, b) {
                Ok(set) => {
                    let got: Vec<(usize, usize)> =
                        set.pairs.iter().map(|p| (p.v + 1, p.w + 1)).collect();
                    assert_eq!(&got, want, "a3 = {a3}, b = {b}");
                }
                Err(_) => assert!(want.is_empty(), "a3 = {a3}, b = {b}"),
            }
        }
    }
    assert_eq!(h_vector(&f, 1, 0).unwrap().counts, vec![4, 2, 2]);
    assert_eq!(h_vector(&f, 2, 1).unwrap().counts, vec![4, 2, 2]);
}
