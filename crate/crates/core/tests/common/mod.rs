#![allow(dead_code)]

use partial_profile::construct::{auto_generators, extend_to_m, generators_needed, plan_minimum_n};
use partial_profile::design::{ChoiceSet, PartialDesign, Profile};
use partial_profile::{construct_broader, construct_saturated, Generator, GeneratorSet};

/// Builds a design from rows of profile strings; `*` marks an inactive
/// position held at level 0.
pub fn design(sets: &[&[&str]]) -> PartialDesign {
    let n = sets[0][0].len();
    let m = sets[0].len();
    let rho = sets[0][0].chars().filter(|&c| c != '*').count();
    let sets = sets
        .iter()
        .map(|profiles| {
            let active = profiles[0].chars().map(|c| c != '*').collect();
            let profiles = profiles
                .iter()
                .map(|s| Profile::new(s.chars().map(|c| u8::from(c == '1')).collect()).unwrap())
                .collect();
            ChoiceSet::new(profiles, active).unwrap()
        })
        .collect();
    PartialDesign::new(n, m, rho, sets).unwrap()
}

pub const EXAMPLE1: [[&str; 2]; 8] = [
    ["11111***", "00000***"],
    ["1010*1**", "0101*0**"],
    ["1100**1*", "0011**0*"],
    ["1001***1", "0110***0"],
    ["0***1111", "1***0000"],
    ["*0**1010", "*1**0101"],
    ["**0*1100", "**1*0011"],
    ["***01001", "***10110"],
];

pub const D5: [[&str; 5]; 8] = [
    ["111111**", "000000**", "000111**", "111000**", "110000**"],
    ["101010**", "010101**", "010010**", "101101**", "100101**"],
    ["1100**11", "0011**00", "0010**11", "1101**00", "1111**11"],
    ["1001**10", "0110**01", "0111**10", "1000**01", "1010**10"],
    ["00**1111", "11**0000", "11**1111", "00**0000", "00**0011"],
    ["01**1010", "10**0101", "10**1010", "01**0101", "01**0110"],
    ["**001100", "**110011", "**101100", "**010011", "**110000"],
    ["**011001", "**100110", "**111001", "**000110", "**100101"],
];

pub fn example1() -> PartialDesign {
    let rows: Vec<&[&str]> = EXAMPLE1.iter().map(|r| &r[..]).collect();
    design(&rows)
}

pub fn d5() -> PartialDesign {
    let rows: Vec<&[&str]> = D5.iter().map(|r| &r[..]).collect();
    design(&rows)
}

pub fn d5_constructed() -> PartialDesign {
    let base = construct_saturated(8, 6, 0).unwrap();
    let g = vec![Generator::parse("11100000").unwrap(), Generator::parse("00111100").unwrap()];
    extend_to_m(&base, &GeneratorSet::new(g, 8, 6).unwrap(), 5).unwrap()
}

/// Main-effects information numerators over `2^n N m^2`, straight from the
/// definition: each set adds `sum_{i,j} w_ij b(T_i) b(T_j)'` with
/// `w_ii = m - 1` and `w_ij = -1`.
pub fn oracle_c_numerators(d: &PartialDesign) -> Vec<i64> {
    let n = d.n();
    let m = d.m() as i64;
    let b = |p: &Profile, h: usize| if p.level(h) == 0 { -1i64 } else { 1 };
    let mut c = vec![0i64; n * n];
    for set in d.sets() {
        for (i, pi) in set.profiles().iter().enumerate() {
            for (j, pj) in set.profiles().iter().enumerate() {
                let w = if i == j { m - 1 } else { -1 };
                for h in 0..n {
                    for k in 0..n {
                        c[h * n + k] += w * b(pi, h) * b(pj, k);
                    }
                }
            }
        }
    }
    c
}

/// Every planner design with `n <= max_n`, plus generator extensions to
/// `m = 3, 4, 5` where admissible generators exist, plus a few doubled designs.
pub fn constructed_designs(max_n: usize) -> Vec<(String, PartialDesign)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for rho in 1..=n {
            let plan = plan_minimum_n(n, rho).unwrap();
            let d2 = plan.build(0).unwrap();
            for m in 3..=5 {
                if let Ok(gs) = auto_generators(&d2, generators_needed(m)) {
                    if let Ok(d) = extend_to_m(&d2, &gs, m) {
                        out.push((format!("n={n} rho={rho} m={m}"), d));
                    }
                }
            }
            if n % 3 == 0 {
                out.push((format!("n={n} rho={rho} m=2 doubled"), construct_broader(&d2).unwrap()));
            }
            out.push((format!("n={n} rho={rho} m=2"), d2));
        }
    }
    out
}
