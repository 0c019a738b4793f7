//! Exhaustive enumeration of the per-pair contrast products against the
//! tabulated case values. Factors used: h = 0, k = 1, l = 2.

use partial_profile::verify::{pair_contrast_product, Effect};
use partial_profile::Profile;

fn profile(bits: &[u8]) -> Profile {
    Profile::new(bits.to_vec()).unwrap()
}

fn bits(code: usize, width: usize) -> Vec<u8> {
    (0..width).rev().map(|i| ((code >> i) & 1) as u8).collect()
}

/// Table lookup with the pair read in either order.
fn lookup(table: &[(&str, &str, i64)], i: &str, j: &str) -> i64 {
    table
        .iter()
        .find(|(a, b, _)| (*a == i && *b == j) || (*a == j && *b == i))
        .map_or(0, |&(_, _, v)| v)
}

fn code_string(b: &[u8]) -> String {
    b.iter().map(|&x| if x == 1 { '1' } else { '0' }).collect()
}

#[test]
fn two_main_effects() {
    let table = [("01", "10", -4), ("00", "11", 4)];
    let mut seen = 0;
    for code in 0..16 {
        let b = bits(code, 4);
        let (ti, tj) = (profile(&b[..2]), profile(&b[2..]));
        let expected = lookup(&table, &code_string(&b[..2]), &code_string(&b[2..]));
        assert_eq!(pair_contrast_product(Effect::Main(0), Effect::Main(1), &ti, &tj), expected, "{b:?}");
        seen += 1;
    }
    assert_eq!(seen, 16);
}

#[test]
fn main_effect_against_its_own_interaction() {
    let table = [("01", "11", 4), ("00", "10", -4)];
    for code in 0..16 {
        let b = bits(code, 4);
        let (ti, tj) = (profile(&b[..2]), profile(&b[2..]));
        let expected = lookup(&table, &code_string(&b[..2]), &code_string(&b[2..]));
        assert_eq!(pair_contrast_product(Effect::Main(0), Effect::Interaction(0, 1), &ti, &tj), expected, "{b:?}");
    }
}

#[test]
fn main_effect_against_a_disjoint_interaction() {
    let table = [
        ("010", "100", 4),
        ("010", "111", 4),
        ("001", "100", 4),
        ("001", "111", 4),
        ("000", "110", -4),
        ("000", "101", -4),
        ("011", "110", -4),
        ("011", "101", -4),
    ];
    let mut counts = [0usize; 3];
    for code in 0..64 {
        let b = bits(code, 6);
        let (ti, tj) = (profile(&b[..3]), profile(&b[3..]));
        let expected = lookup(&table, &code_string(&b[..3]), &code_string(&b[3..]));
        let got = pair_contrast_product(Effect::Main(0), Effect::Interaction(1, 2), &ti, &tj);
        assert_eq!(got, expected, "{b:?}");
        counts[(got / 4 + 1) as usize] += 1;
    }
    // each listed pattern appears once in each order
    assert_eq!(counts, [8, 48, 8]);
}

#[test]
fn products_are_symmetric_and_bounded() {
    let effects = [Effect::Main(0), Effect::Main(1), Effect::Interaction(0, 1), Effect::Interaction(1, 2)];
    for code in 0..64 {
        let b = bits(code, 6);
        let (ti, tj) = (profile(&b[..3]), profile(&b[3..]));
        for x in effects {
            for y in effects {
                let v = pair_contrast_product(x, y, &ti, &tj);
                assert!(v == 0 || v.abs() == 4);
                assert_eq!(v, pair_contrast_product(x, y, &tj, &ti));
                assert_eq!(v, pair_contrast_product(y, x, &ti, &tj));
            }
        }
    }
}
