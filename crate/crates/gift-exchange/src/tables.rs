//! Exact tables of E_sigma(n,k) — the number of partitions of {1..k} into
//! exactly n blocks of size at most sigma+1 — together with the derived
//! sequences G_sigma(n) (row sums) and H_sigma(n) = n! * G_sigma(n-1), and
//! independent routes to the same numbers: the multinomial sum over block
//! multiplicities, the sigma = 1 closed form, the ordered multinomial sum,
//! and Bessel polynomial values.
//!
//! All counts are arbitrary-precision integers. A completed [`ETable`] is
//! immutable; queries outside the support trapezoid n <= k <= (sigma+1)n
//! return zero rather than erroring.

use crate::numeric::{big_to_rat, factorial, int, rat_to_int};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TablesError {
    #[error("H_sigma(n) requires n >= 1")]
    HRequiresPositive,
    #[error("ordered multinomial sum over (sigma+1)^n tuples exceeds budget {budget}")]
    BudgetExceeded { budget: u64 },
}

/// Maximum number of times a single gift may be stolen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StealLimit(pub u32);

impl StealLimit {
    /// Largest allowed block size in the partition picture, sigma + 1.
    pub fn block_cap(self) -> usize {
        self.0 as usize + 1
    }
}

/// Dense exact table of E_sigma(n,k) over the trapezoid n <= k <= (sigma+1)n.
#[derive(Debug, Clone)]
pub struct ETable {
    sigma: StealLimit,
    n_max: usize,
    // rows[n][k - n] holds E_sigma(n, k) for n <= k <= (sigma+1) n
    rows: Vec<Vec<BigInt>>,
}

impl ETable {
    /// Fills the table row by row with the vertical recurrence
    /// E(n,k) = sum_{i=0}^{sigma} C(k-1, i) E(n-1, k-1-i), E(0,0) = 1.
    pub fn build(sigma: StealLimit, n_max: usize) -> ETable {
        let s = sigma.0 as usize;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let width = s * n + 1; // k runs n ..= (s+1) n
            let mut row = vec![BigInt::zero(); width];
            for (idx, slot) in row.iter_mut().enumerate() {
                let k = n + idx;
                let mut acc = BigInt::zero();
                for i in 0..=s {
                    let kk = k as i64 - 1 - i as i64;
                    let prev = lookup(&rows, n - 1, kk);
                    if !prev.is_zero() {
                        acc += binomial((k - 1) as u64, i as u64) * prev;
                    }
                }
                *slot = acc;
            }
            rows.push(row);
        }
        ETable { sigma, n_max, rows }
    }

    pub fn sigma(&self) -> StealLimit {
        self.sigma
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// E_sigma(n,k) with the zero convention for every out-of-range argument.
    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || n as usize > self.n_max {
            return BigInt::zero();
        }
        lookup(&self.rows, n as usize, k)
    }

    /// Row sum over k, i.e. G_sigma(n).
    pub fn row_sum(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }
}

fn lookup(rows: &[Vec<BigInt>], n: usize, k: i64) -> BigInt {
    if k < n as i64 {
        return BigInt::zero();
    }
    let idx = (k - n as i64) as usize;
    match rows[n].get(idx) {
        Some(v) => v.clone(),
        None => BigInt::zero(),
    }
}

/// Binomial coefficient C(k, i); zero when i > k.
pub fn binomial(k: u64, i: u64) -> BigInt {
    if i > k {
        return BigInt::zero();
    }
    let i = i.min(k - i);
    let mut num = BigInt::one();
    for j in 0..i {
        num *= BigInt::from(k - j);
    }
    num / factorial(i as usize)
}

/// A block-multiplicity vector (a_1, ..., a_{sigma+1}) with
/// sum a_i = n and sum i * a_i = k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<u64>,
}

/// All compositions for the query (n, k), in lexicographic order of
/// (a_2, ..., a_{sigma+1}); a negative implied a_1 prunes the branch.
pub fn compositions(sigma: StealLimit, n: u64, k: u64) -> Vec<Composition> {
    let cap = sigma.block_cap();
    let mut out = Vec::new();
    let mut parts = vec![0u64; cap];
    // excess to distribute: sum_{i>=2} (i-1) a_i = k - n
    if k < n {
        return out;
    }
    fn rec(parts: &mut Vec<u64>, j: usize, cap: usize, blocks_left: u64, excess_left: u64, out: &mut Vec<Composition>) {
        if j > cap {
            if excess_left == 0 {
                // a_1 = blocks_left
                let mut p = parts.clone();
                p[0] = blocks_left;
                out.push(Composition { parts: p });
            }
            return;
        }
        let weight = (j - 1) as u64;
        let max_a = if weight == 0 { 0 } else { (excess_left / weight).min(blocks_left) };
        for a in 0..=max_a {
            parts[j - 1] = a;
            rec(parts, j + 1, cap, blocks_left - a, excess_left - weight * a, out);
        }
        parts[j - 1] = 0;
    }
    rec(&mut parts, 2, cap, n, k - n, &mut out);
    out
}

/// E_sigma(n,k) by the multinomial sum
/// sum over compositions of k! / (prod a_i! * prod (i!)^{a_i}).
pub fn e_multinomial(sigma: StealLimit, n: u64, k: u64) -> BigInt {
    let mut total = BigRational::zero();
    let kf = big_to_rat(&factorial(k as usize));
    for comp in compositions(sigma, n, k) {
        let mut den = BigInt::one();
        for (i, &a) in comp.parts.iter().enumerate() {
            den *= factorial(a as usize);
            den *= factorial(i + 1).pow(a as u32);
        }
        total += &kf / big_to_rat(&den);
    }
    rat_to_int(&total).expect("multinomial sum is integral")
}

/// The sigma = 1 closed form E_1(n,k) = k! / ((2n-k)! (k-n)! 2^{k-n});
/// zero outside n <= k <= 2n.
pub fn e1_closed(n: u64, k: u64) -> BigInt {
    if k < n || k > 2 * n {
        return BigInt::zero();
    }
    let num = factorial(k as usize);
    let den = factorial((2 * n - k) as usize)
        * factorial((k - n) as usize)
        * BigInt::from(2u32).pow((k - n) as u32);
    num / den
}

/// G_sigma(0..=n_max) computed from the E table row sums.
#[derive(Debug, Clone)]
pub struct GSequence {
    pub sigma: StealLimit,
    pub values: Vec<BigInt>,
}

pub fn g_sequence(sigma: StealLimit, n_max: usize) -> GSequence {
    let table = ETable::build(sigma, n_max);
    let values = (0..=n_max).map(|n| table.row_sum(n)).collect();
    GSequence { sigma, values }
}

/// G_sigma(n) = sum_k E_sigma(n,k).
pub fn g(sigma: StealLimit, n: usize) -> BigInt {
    ETable::build(sigma, n).row_sum(n)
}

/// H_sigma(n) = n! * G_sigma(n-1): scenario count before pool-order
/// normalization. Rejects n = 0.
pub fn h(sigma: StealLimit, n: usize) -> Result<BigInt, TablesError> {
    if n == 0 {
        return Err(TablesError::HRequiresPositive);
    }
    Ok(factorial(n) * g(sigma, n - 1))
}

/// G_sigma(n) as the ordered sum of multinomial coefficients
/// (1/n!) * sum over (i_1..i_n) in {1..sigma+1}^n of (sum i_r; i_1,..,i_n).
/// The tuple count (sigma+1)^n must stay within `budget`.
pub fn g_ordered_multinomial(sigma: StealLimit, n: usize, budget: u64) -> Result<BigInt, TablesError> {
    let cap = sigma.block_cap() as u64;
    let mut tuples = 1u64;
    for _ in 0..n {
        tuples = tuples
            .checked_mul(cap)
            .filter(|&t| t <= budget)
            .ok_or(TablesError::BudgetExceeded { budget })?;
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sizes = vec![1u64; n];
    let mut total = BigInt::zero();
    loop {
        let k: u64 = sizes.iter().sum();
        let mut term = factorial(k as usize);
        for &s in &sizes {
            term /= factorial(s as usize);
        }
        total += term;
        // odometer over {1..cap}^n
        let mut pos = 0;
        loop {
            if pos == n {
                let q = big_to_rat(&total) / big_to_rat(&factorial(n));
                return Ok(rat_to_int(&q).expect("ordered multinomial sum divisible by n!"));
            }
            if sizes[pos] < cap {
                sizes[pos] += 1;
                break;
            }
            sizes[pos] = 1;
            pos += 1;
        }
    }
}

/// Bessel polynomial y_n(z) = sum_{i=0}^n (n+i)! z^i / ((n-i)! i! 2^i),
/// evaluated exactly; y_n(1) = G_1(n).
pub fn bessel_y(n: usize, z: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut zpow = BigRational::one();
    for i in 0..=n {
        let coeff = BigRational::new(
            factorial(n + i),
            factorial(n - i) * factorial(i) * BigInt::from(2u32).pow(i as u32),
        );
        sum += coeff * &zpow;
        zpow *= z;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat_int;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
    }

    #[test]
    fn e_table_paper_values() {
        let t1 = ETable::build(StealLimit(1), 4);
        assert_eq!(t1.get(3, 4), int(6));
        let t2 = ETable::build(StealLimit(2), 3);
        assert_eq!(t2.get(2, 4), int(7));
        let t3 = ETable::build(StealLimit(3), 3);
        assert_eq!(t3.get(3, 9), int(1855));
    }

    #[test]
    fn e_table_zero_outside_trapezoid() {
        let t = ETable::build(StealLimit(2), 5);
        assert_eq!(t.get(3, 2), int(0));
        assert_eq!(t.get(3, 10), int(0));
        assert_eq!(t.get(-1, 0), int(0));
        assert_eq!(t.get(2, -3), int(0));
        assert_eq!(t.get(4, 4), int(1));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(e_multinomial(StealLimit(1), 2, 3), int(3));
        assert_eq!(e_multinomial(StealLimit(2), 3, 5), int(25));
        for sigma in 0..4 {
            assert_eq!(e_multinomial(StealLimit(sigma), 5, 4), int(0));
        }
    }

    #[test]
    fn multinomial_matches_table() {
        for sigma in 0..=3u32 {
            let t = ETable::build(StealLimit(sigma), 10);
            for n in 0..=10u64 {
                for k in n..=(sigma as u64 + 1) * n {
                    assert_eq!(
                        e_multinomial(StealLimit(sigma), n, k),
                        t.get(n as i64, k as i64),
                        "sigma={sigma} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn e1_closed_examples() {
        assert_eq!(e1_closed(3, 5), int(15));
        assert_eq!(e1_closed(4, 8), int(105));
        for n in 0..12 {
            assert_eq!(e1_closed(n, n), int(1));
        }
        let t = ETable::build(StealLimit(1), 12);
        for n in 0..=12u64 {
            for k in 0..=2 * n + 2 {
                assert_eq!(e1_closed(n, k), t.get(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(StealLimit(2), 3), int(842));
        assert_eq!(g(StealLimit(3), 3), int(18252));
        for n in 0..8 {
            assert_eq!(g(StealLimit(0), n), int(1));
        }
    }

    #[test]
    fn g_strictly_increasing_for_positive_sigma() {
        for sigma in 1..=3u32 {
            let gs = g_sequence(StealLimit(sigma), 8);
            for n in 1..8 {
                assert!(gs.values[n] < gs.values[n + 1], "sigma={sigma} n={n}");
            }
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h(StealLimit(1), 3).unwrap(), int(42));
        assert_eq!(h(StealLimit(0), 4).unwrap(), int(24));
        assert_eq!(h(StealLimit(2), 2).unwrap(), int(6));
        assert_eq!(h(StealLimit(1), 0), Err(TablesError::HRequiresPositive));
    }

    #[test]
    fn ordered_multinomial_examples() {
        assert_eq!(g_ordered_multinomial(StealLimit(1), 2, 1 << 20).unwrap(), int(7));
        assert_eq!(g_ordered_multinomial(StealLimit(2), 2, 1 << 20).unwrap(), int(31));
        assert_eq!(g_ordered_multinomial(StealLimit(5), 0, 16).unwrap(), int(1));
        assert!(matches!(
            g_ordered_multinomial(StealLimit(9), 30, 1000),
            Err(TablesError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn ordered_multinomial_matches_g() {
        for sigma in 0..=3u32 {
            for n in 0..=6usize {
                assert_eq!(
                    g_ordered_multinomial(StealLimit(sigma), n, 1 << 24).unwrap(),
                    g(StealLimit(sigma), n),
                    "sigma={sigma} n={n}"
                );
            }
        }
    }

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_y(2, &rat_int(1)), rat_int(7));
        assert_eq!(bessel_y(0, &crate::numeric::rat(3, 7)), rat_int(1));
        assert_eq!(bessel_y(4, &rat_int(1)), rat_int(266));
    }

    #[test]
    fn bessel_matches_g1_up_to_50() {
        let gs = g_sequence(StealLimit(1), 50);
        for n in 0..=50 {
            assert_eq!(bessel_y(n, &rat_int(1)), big_to_rat(&gs.values[n]));
        }
    }

    #[test]
    fn monotone_in_sigma_and_column_stabilization() {
        let tables: Vec<ETable> = (0..=5).map(|s| ETable::build(StealLimit(s), 8)).collect();
        for s in 0..5usize {
            for n in 0..=8i64 {
                for k in 0..=(s as i64 + 2) * n {
                    assert!(
                        tables[s].get(n, k) <= tables[s + 1].get(n, k),
                        "monotonicity sigma={s} n={n} k={k}"
                    );
                }
            }
        }
        // column stabilization: k <= sigma+1 makes the size bound inactive
        for s in 1..=5usize {
            for sp in s..=5usize {
                for n in 0..=8i64 {
                    for k in 0..=(s as i64 + 1) {
                        if k - 1 <= s as i64 {
                            assert_eq!(tables[s].get(n, k), tables[sp].get(n, k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_max_blocks_corner() {
        // E_sigma(n, (sigma+1) n) = ((sigma+1)n)! / (n! ((sigma+1)!)^n)
        for sigma in 0..=3u32 {
            let cap = sigma as usize + 1;
            let t = ETable::build(StealLimit(sigma), 8);
            for n in 0..=8usize {
                let expect = factorial(cap * n) / (factorial(n) * factorial(cap).pow(n as u32));
                assert_eq!(t.get(n as i64, (cap * n) as i64), expect, "sigma={sigma} n={n}");
                assert_eq!(t.get(n as i64, n as i64), int(1));
            }
        }
    }
}
