//! Bivariate multi-index bookkeeping.
//!
//! All surface quantities (chart derivatives, density derivatives, point
//! condition rows) are indexed by the same flat ordering of multi-indices
//! `(a1, a2)`, sorted by total degree and then by `a2`:
//!
//! ```text
//! (0,0) -> 0,  (1,0) -> 1, (0,1) -> 2,  (2,0) -> 3, (1,1) -> 4, (0,2) -> 5,
//! (3,0) -> 6, (2,1) -> 7, (1,2) -> 8, (0,3) -> 9, ...
//! ```

/// Multi-indices up to total degree 4, in flat order.
pub const MULTI_INDICES: [(usize, usize); 15] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
    (4, 0),
    (3, 1),
    (2, 2),
    (1, 3),
    (0, 4),
];

/// Number of multi-indices with total degree `<= order`.
pub const fn count_upto(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// Flat index of the multi-index `(a1, a2)`.
pub const fn flat_index(a1: usize, a2: usize) -> usize {
    let d = a1 + a2;
    d * (d + 1) / 2 + a2
}

/// Factorial of small integers.
pub const fn factorial(n: usize) -> f64 {
    match n {
        0 | 1 => 1.0,
        2 => 2.0,
        3 => 6.0,
        4 => 24.0,
        _ => panic!("factorial only needed up to 4"),
    }
}

/// `a1! * a2!` for the multi-index at `flat`.
pub fn alpha_factorial(flat: usize) -> f64 {
    let (a1, a2) = MULTI_INDICES[flat];
    factorial(a1) * factorial(a2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_index_roundtrip() {
        for (i, &(a1, a2)) in MULTI_INDICES.iter().enumerate() {
            assert_eq!(flat_index(a1, a2), i);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_upto(0), 1);
        assert_eq!(count_upto(1), 3);
        assert_eq!(count_upto(2), 6);
        assert_eq!(count_upto(3), 10);
        assert_eq!(count_upto(4), 15);
    }
}
