mod common;

use num_bigint::BigUint;
use tropical_bn::{lambda, max_d0, max_lingering, path_exists, BnParams};

fn params(g: usize, r: usize, d: i64) -> BnParams {
    BnParams::new(g, r, d).unwrap()
}

#[test]
fn path_dp_matches_step_enumeration() {
    for g in 2..=5usize {
        for r in 1..=3usize {
            for d in 0..=2 * g as i64 - 2 {
                let p = params(g, r, d);
                let brute = common::brute_force_paths(g, r, d);
                assert_eq!(path_exists(&p).unwrap(), brute.is_some(), "{p}");
                if let Some(summary) = brute {
                    assert_eq!(max_d0(&p).unwrap(), summary.max_d0, "{p}");
                    assert_eq!(max_lingering(&p).unwrap(), summary.max_lingering, "{p}");
                }
            }
        }
    }
}

#[test]
fn small_cases() {
    assert!(!path_exists(&params(3, 1, 1)).unwrap());
    assert!(common::brute_force_paths(3, 1, 1).is_none());
    assert!(path_exists(&params(2, 1, 2)).unwrap());
    assert_eq!(max_d0(&params(4, 1, 4)).unwrap(), 3);
    assert_eq!(max_lingering(&params(4, 1, 4)).unwrap(), 2);
    let brute = common::brute_force_paths(4, 1, 4).unwrap();
    assert_eq!((brute.max_d0, brute.max_lingering), (3, 2));
}

#[test]
fn lambda_matches_hook_length_formula() {
    let mut seen = 0;
    for g in 2..=14usize {
        for r in 1..g {
            for d in 0..=2 * g as i64 - 2 {
                let p = params(g, r, d);
                if p.rho() != 0 {
                    continue;
                }
                let rows = (g as i64 - d + r as i64) as usize;
                let expected = common::hook_length_count(rows, r + 1);
                assert_eq!(lambda(&p).unwrap(), BigUint::from(expected), "{p}");
                seen += 1;
            }
        }
    }
    assert!(seen > 10);
    assert_eq!(common::hook_length_count(3, 4), 462);
    assert_eq!(common::hook_length_count(2, 2), 2);
}
