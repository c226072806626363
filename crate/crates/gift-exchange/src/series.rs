//! Truncated formal power series over exact rationals, and the generating
//! function statements built on them: the closed-form EGF of G_1, its
//! differential equation, and the bivariate EGF of E_sigma.
//!
//! Every series carries an explicit truncation order (the highest retained
//! power). Binary operations truncate to the smaller order of their inputs;
//! `derivative` lowers the order by one. Arithmetic is exact throughout.

use crate::numeric::{big_to_rat, factorial, rat_int, rat_to_int};
use crate::tables::StealLimit;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exp requires a zero constant term")]
    ExpNeedsZeroConstant,
    #[error("sqrt requires constant term 1")]
    SqrtNeedsUnitConstant,
    #[error("inverse requires a nonzero constant term")]
    InverseNeedsUnit,
    #[error("extracted coefficient at {context} is not an integer")]
    NonIntegerCoefficient { context: String },
}

/// A univariate truncated power series sum c_i x^i, 0 <= i <= order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigRational>,
}

impl ExactSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        ExactSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        ExactSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Highest retained power.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, v: BigRational) {
        self.coeffs[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, BigRational::zero());
        ExactSeries { coeffs }
    }

    /// Product truncated to min(order(a), order(b)).
    pub fn mul(&self, other: &ExactSeries) -> ExactSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ExactSeries { coeffs }
    }

    pub fn add(&self, other: &ExactSeries) -> ExactSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) + other.coeff(i)).collect();
        ExactSeries { coeffs }
    }

    pub fn sub(&self, other: &ExactSeries) -> ExactSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) - other.coeff(i)).collect();
        ExactSeries { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> ExactSeries {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Termwise derivative; order drops by one.
    pub fn derivative(&self) -> ExactSeries {
        if self.coeffs.len() == 1 {
            return ExactSeries::zero(0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|i| &self.coeffs[i] * BigRational::from_integer(BigInt::from(i)))
            .collect();
        ExactSeries { coeffs }
    }

    /// exp(f) for f with zero constant term, via the ODE h' = f' h,
    /// i.e. m h_m = sum_{j=1}^{m} j f_j h_{m-j}. Output order = input order.
    pub fn exp(&self) -> Result<ExactSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNeedsZeroConstant);
        }
        let order = self.order();
        let mut h = vec![BigRational::zero(); order + 1];
        h[0] = BigRational::one();
        for m in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * BigRational::from_integer(BigInt::from(j)) * &h[m - j];
                }
            }
            h[m] = acc / BigRational::from_integer(BigInt::from(m));
        }
        Ok(ExactSeries { coeffs: h })
    }

    /// sqrt(f) for f with constant term 1:
    /// s_m = (f_m - sum_{i=1}^{m-1} s_i s_{m-i}) / 2. Output order = input order.
    pub fn sqrt(&self) -> Result<ExactSeries, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtNeedsUnitConstant);
        }
        let order = self.order();
        let mut s = vec![BigRational::zero(); order + 1];
        s[0] = BigRational::one();
        let two = BigRational::from_integer(BigInt::from(2));
        for m in 1..=order {
            let mut acc = self.coeffs[m].clone();
            for i in 1..m {
                acc -= &s[i] * &s[m - i];
            }
            s[m] = acc / &two;
        }
        Ok(ExactSeries { coeffs: s })
    }

    /// Multiplicative inverse for a nonzero constant term.
    pub fn inverse(&self) -> Result<ExactSeries, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::InverseNeedsUnit);
        }
        let order = self.order();
        let mut t = vec![BigRational::zero(); order + 1];
        t[0] = BigRational::one() / &self.coeffs[0];
        for m in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &t[m - j];
                }
            }
            t[m] = -acc / &self.coeffs[0];
        }
        Ok(ExactSeries { coeffs: t })
    }
}

/// A truncated bivariate series: the x-coefficients are univariate series
/// in y, so memory stays proportional to order_x * order_y.
#[derive(Debug, Clone)]
pub struct BivariateSeries {
    order_x: usize,
    order_y: usize,
    coeffs: Vec<ExactSeries>,
}

impl BivariateSeries {
    /// exp(x * p(y)) truncated to the given orders: the x^n coefficient is
    /// p(y)^n / n!.
    pub fn exp_of_x_times(p: &ExactSeries, order_x: usize, order_y: usize) -> Self {
        let p = p.truncate(order_y);
        let mut coeffs = Vec::with_capacity(order_x + 1);
        coeffs.push(ExactSeries::one(order_y));
        for n in 1..=order_x {
            let prev = coeffs.last().unwrap();
            let next = prev
                .mul(&p)
                .scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
            coeffs.push(next);
        }
        BivariateSeries { order_x, order_y, coeffs }
    }

    pub fn order_x(&self) -> usize {
        self.order_x
    }

    pub fn order_y(&self) -> usize {
        self.order_y
    }

    /// [x^n y^k] of the series.
    pub fn coeff(&self, n: usize, k: usize) -> BigRational {
        if n > self.order_x {
            return BigRational::zero();
        }
        self.coeffs[n].coeff(k)
    }
}

/// The closed-form EGF of G_1: e^{1 - sqrt(1-2x)} / sqrt(1-2x), expanded
/// exactly to the given order.
pub fn g1_closed_series(order: usize) -> ExactSeries {
    let mut f = ExactSeries::zero(order);
    f.set_coeff(0, BigRational::one());
    if order >= 1 {
        f.set_coeff(1, rat_int(-2));
    }
    let u = f.sqrt().expect("1-2x has constant term 1");
    // 1 - u has zero constant term, so exp applies
    let one_minus_u = ExactSeries::one(order).sub(&u);
    let e = one_minus_u.exp().expect("zero constant term");
    e.mul(&u.inverse().expect("sqrt has constant term 1"))
}

/// n! * [x^n] of the closed-form EGF for n = 0..=n_max; every coefficient
/// must come out an integer (and equals G_1(n)).
pub fn egf_g1_closed(n_max: usize) -> Result<Vec<BigInt>, SeriesError> {
    let series = g1_closed_series(n_max);
    (0..=n_max)
        .map(|n| {
            let v = series.coeff(n) * big_to_rat(&factorial(n));
            rat_to_int(&v).ok_or(SeriesError::NonIntegerCoefficient {
                context: format!("n! [x^n] at n = {n}"),
            })
        })
        .collect()
}

/// Residual of the G_1 differential equation G'' = 3 G' + 2x G'' + G applied
/// to `series`, truncated to order(series) - 2.
pub fn ode_residual_g1(series: &ExactSeries) -> ExactSeries {
    let d1 = series.derivative();
    let d2 = d1.derivative();
    let order = series.order().saturating_sub(2);
    let mut x = ExactSeries::zero(order);
    if order >= 1 {
        x.set_coeff(1, BigRational::one());
    }
    let lhs = d2.truncate(order);
    let rhs = d1
        .scale(&rat_int(3))
        .truncate(order)
        .add(&x.mul(&d2.truncate(order)).scale(&rat_int(2)))
        .add(&series.truncate(order));
    lhs.sub(&rhs)
}

/// True iff the closed-form expansion satisfies the differential equation
/// identically to order `order` - 2.
pub fn ode_check_g1(order: usize) -> bool {
    ode_residual_g1(&g1_closed_series(order)).is_zero()
}

/// Expands exp(x (y + y^2/2! + ... + y^{sigma+1}/(sigma+1)!)) and extracts
/// k! [x^n y^k]; the result table must equal E_sigma(n,k).
pub fn egf_bivariate_e(
    sigma: StealLimit,
    n_max: usize,
    k_max: usize,
) -> Result<Vec<Vec<BigInt>>, SeriesError> {
    let mut p = ExactSeries::zero(k_max);
    for j in 1..=sigma.block_cap().min(k_max) {
        p.set_coeff(j, BigRational::new(BigInt::one(), factorial(j)));
    }
    let egf = BivariateSeries::exp_of_x_times(&p, n_max, k_max);
    (0..=n_max)
        .map(|n| {
            (0..=k_max)
                .map(|k| {
                    let v = egf.coeff(n, k) * big_to_rat(&factorial(k));
                    rat_to_int(&v).ok_or(SeriesError::NonIntegerCoefficient {
                        context: format!("k! [x^{n} y^{k}]"),
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::tables::{g_sequence, ETable};
    use proptest::prelude::*;

    #[test]
    fn exp_of_zero_is_one() {
        let z = ExactSeries::zero(6);
        assert_eq!(z.exp().unwrap(), ExactSeries::one(6));
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let s = ExactSeries::one(4);
        assert_eq!(s.exp(), Err(SeriesError::ExpNeedsZeroConstant));
    }

    #[test]
    fn sqrt_of_one_minus_two_x() {
        let mut f = ExactSeries::zero(4);
        f.set_coeff(0, rat_int(1));
        f.set_coeff(1, rat_int(-2));
        let s = f.sqrt().unwrap();
        assert_eq!(s.coeff(0), rat_int(1));
        assert_eq!(s.coeff(1), rat_int(-1));
        assert_eq!(s.coeff(2), rat(-1, 2));
        assert_eq!(s.coeff(3), rat(-1, 2));
        assert_eq!(s.mul(&s), f);
    }

    #[test]
    fn sqrt_rejects_bad_constant() {
        let f = ExactSeries::zero(3);
        assert_eq!(f.sqrt(), Err(SeriesError::SqrtNeedsUnitConstant));
    }

    #[test]
    fn derivative_shifts_and_scales() {
        let s = ExactSeries::from_coeffs(vec![rat_int(5), rat_int(4), rat_int(3), rat_int(2)]);
        let d = s.derivative();
        assert_eq!(d.coeffs(), &[rat_int(4), rat_int(6), rat_int(6)]);
    }

    #[test]
    fn egf_g1_examples() {
        let vals = egf_g1_closed(5).unwrap();
        assert_eq!(vals, vec![int(1), int(2), int(7), int(37), int(266), int(2431)]);
    }

    #[test]
    fn egf_g1_matches_tables_to_40() {
        let vals = egf_g1_closed(40).unwrap();
        let gs = g_sequence(crate::tables::StealLimit(1), 40);
        assert_eq!(vals, gs.values);
    }

    #[test]
    fn ode_holds_and_perturbation_fails() {
        assert!(ode_check_g1(2));
        assert!(ode_check_g1(10));
        assert!(ode_check_g1(40));
        let mut s = g1_closed_series(10);
        s.set_coeff(2, s.coeff(2) + rat_int(1));
        assert!(!ode_residual_g1(&s).is_zero());
    }

    #[test]
    fn bivariate_egf_examples() {
        let t = egf_bivariate_e(crate::tables::StealLimit(1), 2, 4).unwrap();
        assert_eq!(t[2][4], int(3));
        let t = egf_bivariate_e(crate::tables::StealLimit(2), 1, 3).unwrap();
        assert_eq!(t[1][3], int(1));
        assert_eq!(t[0][0], int(1));
    }

    #[test]
    fn bivariate_egf_matches_tables() {
        for sigma in 0..=3u32 {
            let k_max = 3 * (sigma as usize + 1);
            let table = ETable::build(crate::tables::StealLimit(sigma), 8);
            let egf = egf_bivariate_e(crate::tables::StealLimit(sigma), 8, k_max).unwrap();
            for n in 0..=8usize {
                for k in 0..=k_max {
                    assert_eq!(egf[n][k], table.get(n as i64, k as i64), "sigma={sigma} n={n} k={k}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sqrt_squares_back(coeffs in proptest::collection::vec((-20i64..20, 1i64..6), 6)) {
            let mut f = ExactSeries::one(coeffs.len());
            for (i, (num, den)) in coeffs.iter().enumerate() {
                f.set_coeff(i + 1, rat(*num, *den));
            }
            let s = f.sqrt().unwrap();
            prop_assert_eq!(s.mul(&s), f);
        }

        #[test]
        fn exp_turns_sums_into_products(a in proptest::collection::vec((-9i64..9, 1i64..5), 5),
                                        b in proptest::collection::vec((-9i64..9, 1i64..5), 5)) {
            let mut fa = ExactSeries::zero(a.len());
            let mut fb = ExactSeries::zero(b.len());
            for (i, (num, den)) in a.iter().enumerate() {
                fa.set_coeff(i + 1, rat(*num, *den));
            }
            for (i, (num, den)) in b.iter().enumerate() {
                fb.set_coeff(i + 1, rat(*num, *den));
            }
            let lhs = fa.add(&fb).exp().unwrap();
            let rhs = fa.exp().unwrap().mul(&fb.exp().unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
