use crate::rational::Rational;

use super::CoorderError;

pub const ORACLE_SIZE_CAP: usize = 8;

fn sorted_distinct(values: &[Rational]) -> Result<Vec<&Rational>, CoorderError> {
    let mut sorted: Vec<&Rational> = values.iter().collect();
    sorted.sort();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(CoorderError::Duplicate(w[0].clone())),
        None => Ok(sorted),
    }
}

fn check_distinct(values: &[Rational]) -> Result<(), CoorderError> {
    sorted_distinct(values).map(|_| ())
}

/// Two finite sets are co-order exactly when they have the same size.
pub fn finite_coorder(a: &[Rational], b: &[Rational]) -> Result<bool, CoorderError> {
    check_distinct(a)?;
    check_distinct(b)?;
    Ok(a.len() == b.len())
}

/// Order pattern of `seq` packed into base-8 digits after a leading 1.
fn pattern_code(seq: &[u8]) -> u32 {
    seq.iter().fold(1u32, |code, &x| {
        let below = seq.iter().filter(|&&y| y < x).count() as u32;
        code * 8 + below
    })
}

/// Visits every ordering of `seq` (Heap's algorithm).
fn for_each_permutation(seq: &mut [u8], mut visit: impl FnMut(&[u8]) -> bool) -> bool {
    let n = seq.len();
    if visit(seq) {
        return true;
    }
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            seq.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            if visit(seq) {
                return true;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Position of each value in sorted order.
fn rank_codes(values: &[Rational]) -> Result<Vec<u8>, CoorderError> {
    if values.len() > ORACLE_SIZE_CAP {
        return Err(CoorderError::OracleCap {
            cap: ORACLE_SIZE_CAP,
            got: values.len(),
        });
    }
    let sorted = sorted_distinct(values)?;
    Ok(values
        .iter()
        .map(|v| sorted.binary_search(&v).expect("present") as u8)
        .collect())
}

/// Decides co-order for small finite sets by trying every listing of each.
pub fn brute_force_coorder_oracle(a: &[Rational], b: &[Rational]) -> Result<bool, CoorderError> {
    let mut ra = rank_codes(a)?;
    let mut rb = rank_codes(b)?;
    let mut left = Vec::new();
    for_each_permutation(&mut ra, |s| {
        left.push(pattern_code(s));
        false
    });
    left.sort_unstable();
    Ok(for_each_permutation(&mut rb, |s| {
        left.binary_search(&pattern_code(s)).is_ok()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert!(finite_coorder(&rs(&[1, 2, 3]), &rs(&[7, -1, 0])).unwrap());
        assert!(!finite_coorder(&rs(&[1, 2]), &rs(&[1, 2, 3])).unwrap());
        assert!(finite_coorder(&[], &[]).unwrap());
        assert_eq!(
            finite_coorder(&rs(&[1, 1]), &rs(&[2, 3])),
            Err(CoorderError::Duplicate(Rational::from(1i64)))
        );
    }

    #[test]
    fn oracle_agrees_on_small_cases() {
        for (a, b) in [
            (vec![], vec![]),
            (vec![1], vec![]),
            (vec![1, 5, 2], vec![0, -3, 9]),
            (vec![1, 2], vec![4]),
        ] {
            let (a, b) = (rs(&a), rs(&b));
            assert_eq!(
                brute_force_coorder_oracle(&a, &b).unwrap(),
                finite_coorder(&a, &b).unwrap()
            );
        }
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        let big: Vec<Rational> = (0..9i64).map(Rational::from).collect();
        assert_eq!(
            brute_force_coorder_oracle(&big, &big),
            Err(CoorderError::OracleCap { cap: 8, got: 9 })
        );
    }
}
