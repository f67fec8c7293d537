//! Generating functions behind the large-genus behavior of frequencies.
//!
//! For a chart with crossing numbers `iota_i` and incidence rows `c_i`, the
//! per-chart generating function is the sign-weighted sum
//!
//! ```text
//! phi(z) = sum over eps in {-1,1}^n of eps_1 ... eps_n
//!          prod_i 1 / (iota_i - <eps, c_i> z),
//! ```
//!
//! a rational function whose poles sit at `±iota_i / 2`. Applying the
//! factorial transform `B_r` to the integral series
//!
//! ```text
//! varphi(z) = int over {iota . x + |y| <= 1} of
//!             prod_j sinh(b_j z) prod_k sinh(y_k z)^2 / y_k
//! ```
//!
//! produces `2^(-n-2n') log(1/(1-4z^2))^(n') phi(z)` exactly; coefficient
//! asymptotics then read off the smallest poles. The module computes both
//! routes exactly and the singularity data (`iota_0`, `mu_0`, leading
//! Laurent coefficient) structurally, never by numerical root finding.

use crate::arcs::ArcChart;
use crate::comb::{binomial, factorial};
use crate::error::{Error, Result};
use crate::integrate::{integrate_polynomial, SimplexDomain};
use crate::poly::{MultiPoly, UniPoly};
use crate::rational::{int, pow, pow2, rat, Rational};
use crate::series::PowerSeries;
use num::bigint::BigInt;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which side of the origin a linear factor's root lies on:
/// `Minus` is `(iota - 2z)` with root `+iota/2`,
/// `Plus` is `(iota + 2z)` with root `-iota/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

/// A rational function whose denominator is factored into `(iota ∓ 2z)`
/// powers; poles are read off the factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den_const: Rational,
    den_factors: BTreeMap<(u64, Sign), u32>,
}

impl RatFunc {
    fn factor_poly(iota: u64, sign: Sign) -> UniPoly {
        match sign {
            Sign::Minus => UniPoly::linear(int(iota as i64), int(-2)),
            Sign::Plus => UniPoly::linear(int(iota as i64), int(2)),
        }
    }

    fn new_reduced(
        num: UniPoly,
        den_const: Rational,
        mut den_factors: BTreeMap<(u64, Sign), u32>,
    ) -> Self {
        let mut num = num;
        // Cancel factors whose root annihilates the numerator.
        for (&(iota, sign), mult) in den_factors.iter_mut() {
            let root = match sign {
                Sign::Minus => rat(iota as i64, 2),
                Sign::Plus => rat(-(iota as i64), 2),
            };
            while *mult > 0 && !num.is_zero() && num.eval(&root).is_zero() {
                let (a, b) = match sign {
                    Sign::Minus => (int(iota as i64), int(-2)),
                    Sign::Plus => (int(iota as i64), int(2)),
                };
                num = num.div_linear_exact(&a, &b).expect("root checked");
                *mult -= 1;
            }
        }
        den_factors.retain(|_, m| *m > 0);
        RatFunc {
            num,
            den_const,
            den_factors,
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    /// Pole order at `+iota/2` (`Sign::Minus`) or `-iota/2` (`Sign::Plus`).
    pub fn pole_order(&self, iota: u64, sign: Sign) -> u32 {
        self.den_factors.get(&(iota, sign)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Evaluate away from the poles.
    pub fn eval(&self, z: &Rational) -> Result<Rational> {
        let mut den = self.den_const.clone();
        for (&(iota, sign), &mult) in &self.den_factors {
            let f = Self::factor_poly(iota, sign).eval(z);
            if f.is_zero() {
                return Err(Error::Domain(format!(
                    "evaluation at a pole of order {mult} (iota = {iota})"
                )));
            }
            den *= pow(&f, mult);
        }
        Ok(self.num.eval(z) / den)
    }

    /// Taylor coefficients at the origin up to `order`.
    pub fn series(&self, order: usize) -> PowerSeries {
        let mut den = UniPoly::constant(self.den_const.clone());
        for (&(iota, sign), &mult) in &self.den_factors {
            for _ in 0..mult {
                den = den.mul(&Self::factor_poly(iota, sign));
            }
        }
        let den_series = PowerSeries::from_fn(order, |k| den.coefficient(k));
        let num_series = PowerSeries::from_fn(order, |k| self.num.coefficient(k));
        num_series.mul(&den_series.invert())
    }

    /// Laurent coefficient `[(1 - 2z/iota0)^(-m)]` at the pole `+iota0/2`,
    /// or `[(1 + 2z/iota0)^(-m)]` at `-iota0/2`.
    pub fn laurent_coefficient(&self, iota0: u64, sign: Sign, m: u32) -> Rational {
        // Substitute z = (iota0/2)(1 - t) (Minus) or z = (iota0/2)(t - 1)
        // (Plus); then the requested coefficient is [t^(-m)].
        let mu = self.pole_order(iota0, sign);
        if m > mu {
            return Rational::zero();
        }
        let half = rat(iota0 as i64, 2);
        let (a, b) = match sign {
            Sign::Minus => (half.clone(), -half.clone()),
            Sign::Plus => (-half.clone(), half.clone()),
        };
        let order = (mu - m) as usize;
        let num_t = self.num.compose_linear(&a, &b);
        let num_series = PowerSeries::from_fn(order, |k| num_t.coefficient(k));
        // Regular denominator factors as series in t, singular ones as the
        // constant iota0^mu times t^mu.
        let mut regular = PowerSeries::one(order);
        let mut constant = self.den_const.clone();
        for (&(iota, s), &mult) in &self.den_factors {
            if iota == iota0 && s == sign {
                constant *= pow(&int(iota0 as i64), mult);
                continue;
            }
            let f_t = Self::factor_poly(iota, s).compose_linear(&a, &b);
            let f_series = PowerSeries::from_fn(order, |k| f_t.coefficient(k));
            for _ in 0..mult {
                regular = regular.mul(&f_series);
            }
        }
        let expanded = num_series.mul(&regular.invert());
        expanded.coefficient((mu - m) as usize) / constant
    }

    /// Structural parity check: `f(-z) = (-1)^p f(z)` for `p` even/odd.
    pub fn has_parity(&self, odd: bool) -> bool {
        // Mirror the function and compare after clearing denominators.
        let mirrored_num = UniPoly::new(
            self.num
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        );
        let mut mirrored_factors = BTreeMap::new();
        for (&(iota, sign), &mult) in &self.den_factors {
            let flipped = match sign {
                Sign::Minus => Sign::Plus,
                Sign::Plus => Sign::Minus,
            };
            mirrored_factors.insert((iota, flipped), mult);
        }
        let mirrored = RatFunc {
            num: if odd { mirrored_num.scale(&int(-1)) } else { mirrored_num },
            den_const: self.den_const.clone(),
            den_factors: mirrored_factors,
        };
        // Cross-multiply: num_a * den_b == num_b * den_a.
        let den = |f: &RatFunc| {
            let mut d = UniPoly::constant(f.den_const.clone());
            for (&(iota, sign), &mult) in &f.den_factors {
                for _ in 0..mult {
                    d = d.mul(&Self::factor_poly(iota, sign));
                }
            }
            d
        };
        self.num.mul(&den(&mirrored)) == mirrored.num.mul(&den(self))
    }
}

/// The sign-weighted pole sum of one chart, fully reduced.
pub fn phi_alpha(chart: &ArcChart) -> RatFunc {
    let r = chart.num_arcs();
    let n = chart.num_boundaries();
    // Common denominator prod_i (iota_i - 2z)(iota_i + 2z).
    let mut den_factors: BTreeMap<(u64, Sign), u32> = BTreeMap::new();
    for &iota in &chart.iota {
        *den_factors.entry((iota, Sign::Minus)).or_insert(0) += 1;
        *den_factors.entry((iota, Sign::Plus)).or_insert(0) += 1;
    }
    let mut num = UniPoly::zero();
    for eps_bits in 0..(1u32 << n) {
        let eps: Vec<i64> = (0..n)
            .map(|j| if eps_bits >> j & 1 == 1 { 1 } else { -1 })
            .collect();
        let sign_product: i64 = eps.iter().product();
        // Complement of this term's denominator inside the common one.
        let mut complement = UniPoly::constant(int(sign_product));
        for i in 0..r {
            let s: i64 = (0..n).map(|j| eps[j] * chart.incidence[i][j] as i64).sum();
            let iota = chart.iota[i];
            match s {
                2 => complement = complement.mul(&RatFunc::factor_poly(iota, Sign::Plus)),
                -2 => complement = complement.mul(&RatFunc::factor_poly(iota, Sign::Minus)),
                0 => {
                    // Term denominator is iota itself: multiply the
                    // complement by both linear factors over iota.
                    complement = complement
                        .mul(&RatFunc::factor_poly(iota, Sign::Minus))
                        .mul(&RatFunc::factor_poly(iota, Sign::Plus))
                        .scale(&rat(1, iota as i64));
                }
                _ => unreachable!("row sums are 2"),
            }
        }
        num = num.add(&complement);
    }
    RatFunc::new_reduced(num, Rational::one(), den_factors)
}

/// Partial-fraction data `A/(1 - 2z/iota) + B/(1 + 2z/iota) + C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFunction {
    pub at_plus_pole: Rational,
    pub at_minus_pole: Rational,
    pub constant: Rational,
}

impl HFunction {
    /// Reassemble as a rational function over `(iota - 2z)(iota + 2z)`.
    pub fn to_ratfunc(&self, iota: u64) -> RatFunc {
        let io = int(iota as i64);
        let minus = RatFunc::factor_poly(iota, Sign::Minus);
        let plus = RatFunc::factor_poly(iota, Sign::Plus);
        // A iota/(iota - 2z) + B iota/(iota + 2z) + C over common denominator.
        let num = plus
            .scale(&(&self.at_plus_pole * &io))
            .add(&minus.scale(&(&self.at_minus_pole * &io)))
            .add(&minus.mul(&plus).scale(&self.constant));
        let mut den = BTreeMap::new();
        den.insert((iota, Sign::Minus), 1);
        den.insert((iota, Sign::Plus), 1);
        RatFunc::new_reduced(num, Rational::one(), den)
    }
}

/// The four components `h_00, h_01, h_10, h_11` of
/// `1/(iota - (eps_1 + eps_2) z) = sum eps_1^d1 eps_2^d2 h_{d1 d2}`.
pub fn h_split(iota: u64) -> Result<[HFunction; 4]> {
    if iota == 0 {
        return Err(Error::Domain("h functions need iota >= 1".into()));
    }
    let q = rat(1, 4 * iota as i64);
    let half = rat(1, 2 * iota as i64);
    let h00 = HFunction {
        at_plus_pole: q.clone(),
        at_minus_pole: q.clone(),
        constant: half.clone(),
    };
    let h01 = HFunction {
        at_plus_pole: q.clone(),
        at_minus_pole: -q.clone(),
        constant: Rational::zero(),
    };
    let h11 = HFunction {
        at_plus_pole: q.clone(),
        at_minus_pole: q,
        constant: -half,
    };
    Ok([h00, h01.clone(), h01, h11])
}

/// Coefficientwise multiplication by `(i + d)!`; requires `i + d >= 0` for
/// every retained index.
pub fn b_transform(series: &PowerSeries, d: i64) -> Result<PowerSeries> {
    if d < 0 {
        return Err(Error::Domain(
            "negative shifts would need factorials of negative integers".into(),
        ));
    }
    Ok(PowerSeries::from_fn(series.order(), |i| {
        series.coefficient(i) * Rational::from_integer(factorial(i as u64 + d as u64))
    }))
}

/// A finite family of charts sharing the ambient data `(r, n, n')`.
#[derive(Debug, Clone)]
pub struct PhiSpec {
    pub name: String,
    pub n_prime: usize,
    pub charts: Vec<ArcChart>,
}

impl PhiSpec {
    pub fn new(name: &str, n_prime: usize, charts: Vec<ArcChart>) -> Result<Self> {
        if charts.is_empty() {
            return Err(Error::Domain("a spec needs at least one chart".into()));
        }
        let r = charts[0].num_arcs();
        let n = charts[0].num_boundaries();
        for c in &charts {
            if c.num_arcs() != r || c.num_boundaries() != n {
                return Err(Error::Domain(
                    "all charts of a spec share the same arc and boundary counts".into(),
                ));
            }
            if r > 0 {
                if let Some(j) = c.zero_column() {
                    return Err(Error::InvalidChart(format!(
                        "boundary {} misses every arc",
                        j + 1
                    )));
                }
            }
        }
        if r == 0 && n_prime == 0 {
            return Err(Error::Domain("empty spec".into()));
        }
        Ok(PhiSpec {
            name: name.to_string(),
            n_prime,
            charts,
        })
    }

    pub fn r(&self) -> usize {
        self.charts[0].num_arcs()
    }

    pub fn n(&self) -> usize {
        self.charts[0].num_boundaries()
    }
}

/// `[z^N]` of the transformed series of one chart:
/// `2^(-n-2n') log(1/(1-4z^2))^(n') phi_alpha(z)` truncated at `order`.
pub fn breve_series_for_chart(chart: &ArcChart, n_prime: usize, order: usize) -> PowerSeries {
    let n = chart.num_boundaries();
    let phi = phi_alpha(chart);
    let mut series = phi.series(order);
    if n_prime > 0 {
        let log = PowerSeries::log_inv_one_minus_cz2(&int(4), order);
        series = series.mul(&log.pow(n_prime as u32));
    }
    series.scale(&pow2(-(n as i64) - 2 * n_prime as i64))
}

/// Transformed series of a whole spec: the chart sum.
pub fn breve_series(spec: &PhiSpec, order: usize) -> PowerSeries {
    let mut acc = PowerSeries::zero(order);
    for chart in &spec.charts {
        acc = acc.add(&breve_series_for_chart(chart, spec.n_prime, order));
    }
    acc
}

/// All coefficients `[z^0], ..., [z^order]` of the integral-route series:
/// expand the sinh product with polynomial coefficients once and integrate
/// each coefficient exactly over `{iota . x + |y| <= 1}`.
pub fn varphi_series_all(
    chart: &ArcChart,
    n_prime: usize,
    order: usize,
) -> Result<Vec<Rational>> {
    let r = chart.num_arcs();
    let n = chart.num_boundaries();
    // Series in z with MultiPoly coefficients, truncated at `order`.
    let mut acc: Vec<MultiPoly> = vec![MultiPoly::zero(); order + 1];
    acc[0] = MultiPoly::one();
    let mul_factor = |acc: &mut Vec<MultiPoly>, factor: &[MultiPoly]| {
        let mut next = vec![MultiPoly::zero(); acc.len()];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, f) in factor.iter().enumerate() {
                if i + j > order || f.is_zero() {
                    continue;
                }
                next[i + j] = next[i + j].add(&a.mul(f));
            }
        }
        *acc = next;
    };
    for j in 0..n {
        let b = chart.boundary_form(j)?;
        // sinh(b z) = sum over odd m of b^m z^m / m!.
        let mut factor = vec![MultiPoly::zero(); order + 1];
        let mut m = 1usize;
        while m <= order {
            factor[m] = b.pow(m as u32).scale(&Rational::new(
                BigInt::one(),
                factorial(m as u64),
            ));
            m += 2;
        }
        mul_factor(&mut acc, &factor);
    }
    for k in 0..n_prime {
        let y = format!("y{}", k + 1);
        // sinh(y z)^2 / y = sum over l >= 1 of 2^(2l-1) y^(2l-1) z^(2l)/(2l)!.
        let mut factor = vec![MultiPoly::zero(); order + 1];
        let mut l = 1usize;
        while 2 * l <= order {
            let coeff = Rational::new(BigInt::from(2).pow(2 * l as u32 - 1), factorial(2 * l as u64));
            factor[2 * l] = MultiPoly::from_terms(&[&y], vec![(vec![2 * l as u32 - 1], coeff)]);
            l += 1;
        }
        mul_factor(&mut acc, &factor);
    }
    let mut vars: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    let mut weights: Vec<Rational> = chart.iota.iter().map(|&x| int(x as i64)).collect();
    for k in 0..n_prime {
        vars.push(format!("y{}", k + 1));
        weights.push(Rational::one());
    }
    let domain = SimplexDomain::new(vars, weights)?;
    acc.iter()
        .map(|p| integrate_polynomial(p, &domain))
        .collect()
}

/// `[z^order]` of the integral-route series for one chart.
pub fn varphi_series_oracle(chart: &ArcChart, n_prime: usize, order: usize) -> Result<Rational> {
    Ok(varphi_series_all(chart, n_prime, order)?.pop().unwrap())
}

/// Singularity data of the chart sum at its smallest poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityData {
    /// Smallest crossing number over all arcs.
    pub iota0: u64,
    /// Largest pole order at `iota0/2` over the charts.
    pub mu0: u32,
    /// `[(1 - 2z/iota0)^(-mu0)]` of the chart sum; positive.
    pub leading: Rational,
    /// Parity of the chart sum: that of `n`.
    pub odd: bool,
}

pub fn singularity_data(spec: &PhiSpec) -> Result<SingularityData> {
    if spec.r() == 0 {
        return Err(Error::Domain(
            "singularity data needs at least one arc (purely annular specs \
             have only the logarithmic singularity)"
                .into(),
        ));
    }
    let iota0 = spec
        .charts
        .iter()
        .flat_map(|c| c.iota.iter().copied())
        .min()
        .unwrap();
    let phis: Vec<RatFunc> = spec.charts.iter().map(phi_alpha).collect();
    let mu0 = phis
        .iter()
        .map(|p| p.pole_order(iota0, Sign::Minus))
        .max()
        .unwrap();
    let mut leading = Rational::zero();
    for p in &phis {
        leading += p.laurent_coefficient(iota0, Sign::Minus, mu0);
    }
    Ok(SingularityData {
        iota0,
        mu0,
        leading,
        odd: spec.n() % 2 == 1,
    })
}

/// A main term `value * (log N)^(log_power)`; the logarithm power is zero
/// whenever no annuli are present, making the term exactly rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTerm {
    pub value: Rational,
    pub log_power: u32,
}

/// Main term of `[z^N]` of the transformed chart sum, by singularity class.
pub fn coefficient_asymptotic(spec: &PhiSpec, big_n: u64) -> Result<MainTerm> {
    let n = spec.n() as i64;
    let n_prime = spec.n_prime as i64;
    let parity = if (n + big_n as i64) % 2 == 0 {
        int(2)
    } else {
        Rational::zero()
    };
    if spec.n_prime == 0 {
        let data = singularity_data(spec)?;
        let lead = {
            let mut acc = Rational::zero();
            for chart in &spec.charts {
                acc += phi_alpha(chart).laurent_coefficient(data.iota0, Sign::Minus, data.mu0);
            }
            acc
        };
        let value = parity
            * lead
            * pow2(-n)
            * pow(&rat(2, data.iota0 as i64), big_n as u32)
            * Rational::new(
                BigInt::from(big_n).pow(data.mu0 - 1),
                factorial(data.mu0 as u64 - 1),
            );
        return Ok(MainTerm {
            value,
            log_power: 0,
        });
    }
    // Annular cases: singularity at 1/2 regardless of the arcs.
    let iota0 = spec
        .charts
        .iter()
        .flat_map(|c| c.iota.iter().copied())
        .min();
    match iota0 {
        Some(1) => {
            // Pole and logarithm combine.
            let data = singularity_data(spec)?;
            let value = parity
                * data.leading
                * pow2(big_n as i64 - n - 2 * n_prime)
                * Rational::new(
                    BigInt::from(big_n).pow(data.mu0 - 1),
                    factorial(data.mu0 as u64 - 1),
                );
            Ok(MainTerm {
                value,
                log_power: spec.n_prime as u32,
            })
        }
        _ => {
            // No pole at 1/2: evaluate the chart sum there.
            let mut phi_half = Rational::zero();
            for chart in &spec.charts {
                phi_half += phi_alpha(chart).eval(&rat(1, 2)).map_err(|_| {
                    Error::Domain(
                        "chart sum has a pole at 1/2 although iota_0 > 1".into(),
                    )
                })?;
            }
            let value = parity
                * phi_half
                * pow2(big_n as i64 - n - 2 * n_prime)
                * rat(n_prime, big_n as i64);
            Ok(MainTerm {
                value,
                log_power: spec.n_prime as u32 - 1,
            })
        }
    }
}

/// The constant of the per-chart Laurent bound: every coefficient
/// `[(1 ∓ 2z/iota0)^(-m)]` of a chart's pole sum is at most
/// `C1 * prod_i 1/iota_i`.
pub fn laurent_bound_constant(spec: &PhiSpec) -> Result<Rational> {
    let data = singularity_data(spec)?;
    let r = spec.r() as u64;
    let base = int(data.iota0 as i64) * pow(&int(data.iota0 as i64 + 1), 2);
    Ok(pow2(spec.n() as i64)
        * Rational::from_integer(binomial(2 * r - 2, r - 1))
        * pow(&base, data.mu0.saturating_sub(1)))
}

/// Built-in chart families.
pub fn builtin_spec(name: &str) -> Result<PhiSpec> {
    match name {
        // The four pair-of-pants systems of the figure-eight curve.
        "figure8" => PhiSpec::new("figure8", 0, crate::arcs::pants_figure8_charts()),
        // One arc crossing once, joining two distinct boundaries.
        "onearc" => PhiSpec::new(
            "onearc",
            0,
            vec![ArcChart::new(vec![vec![1, 1]], vec![1], 1)?],
        ),
        // The same arc next to one annular curve component.
        "onearc-annulus" => PhiSpec::new(
            "onearc-annulus",
            1,
            vec![ArcChart::new(vec![vec![1, 1]], vec![1], 1)?],
        ),
        // Two parallel-incidence arcs with distinct crossing numbers.
        "two-iota" => PhiSpec::new(
            "two-iota",
            0,
            vec![ArcChart::new(vec![vec![1, 1], vec![1, 1]], vec![1, 2], 1)?],
        ),
        _ => Err(Error::Domain(format!(
            "unknown built-in spec `{name}`; known: figure8, onearc, \
             onearc-annulus, two-iota"
        ))),
    }
}

pub const BUILTIN_SPECS: [&str; 4] = ["figure8", "onearc", "onearc-annulus", "two-iota"];

/// Asymptotic frequency order of a local type: the simple-curve baseline
/// `(1/2^(2g)) (e/(3g))^(4g) g^(chi+2)` times a case factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticOrder {
    pub genus_power: i64,
    pub log_power: u32,
    /// `Some(iota0)` adds the decay factor `iota0^(-6g)`.
    pub exponential_decay_base: Option<u64>,
    pub case: OrderCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderCase {
    /// No annuli: `g^(mu0) / iota0^(6g)`.
    NoAnnuli,
    /// Annuli with all crossings above one: `(log g)^(n'-1)`.
    AnnuliLargeCrossing,
    /// Annuli with a crossing-one arc: `g^(mu0) (log g)^(n')`.
    AnnuliCrossingOne,
}

impl fmt::Display for AsymptoticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/2^(2g)) * (e/(3g))^(4g) * g^{}", self.genus_power)?;
        if self.log_power > 0 {
            write!(f, " * (log g)^{}", self.log_power)?;
        }
        if let Some(base) = self.exponential_decay_base {
            if base > 1 {
                write!(f, " / {base}^(6g)")?;
            }
        }
        Ok(())
    }
}

/// Order of the frequency of a local type with hyperbolic Euler
/// characteristic `chi_sigma`, minimal crossing `iota0` (`None` when there
/// are no arcs), multiplicity `mu0`, and `n_prime` annuli.
pub fn freq_asymptotic_order(
    chi_sigma: i64,
    iota0: Option<u64>,
    mu0: u32,
    n_prime: usize,
) -> AsymptoticOrder {
    let base_power = chi_sigma + 2;
    match (n_prime, iota0) {
        (0, Some(i0)) => AsymptoticOrder {
            genus_power: base_power + mu0 as i64,
            log_power: 0,
            exponential_decay_base: Some(i0),
            case: OrderCase::NoAnnuli,
        },
        (np, Some(1)) if np > 0 => AsymptoticOrder {
            genus_power: base_power + mu0 as i64,
            log_power: np as u32,
            exponential_decay_base: None,
            case: OrderCase::AnnuliCrossingOne,
        },
        (np, _) => AsymptoticOrder {
            genus_power: base_power,
            log_power: np.saturating_sub(1) as u32,
            exponential_decay_base: None,
            case: OrderCase::AnnuliLargeCrossing,
        },
    }
}

/// One row of the fixed-intersection-number order table.
#[derive(Debug, Clone)]
pub struct OrderRow {
    pub label: String,
    pub iota0: u64,
    pub mu0: u32,
    pub chi: i64,
    pub order: AsymptoticOrder,
}

/// The three reference local types with `K` self-intersections: the curve
/// filling a pair of pants, the one filling a `(K+1)`-holed sphere, and the
/// dominant one filling a `(K+2)`-holed sphere; plus the separating-to-
/// non-separating comparison.
#[derive(Debug, Clone)]
pub struct IntersectionOrderTable {
    pub k: u64,
    pub rows: Vec<OrderRow>,
    /// Order of the total frequency at this intersection number.
    pub total: AsymptoticOrder,
    /// The separating share decays like `O(1/g)` relative to the total.
    pub sep_over_ns: &'static str,
}

pub fn sep_vs_ns_order(k: u64) -> IntersectionOrderTable {
    if k == 0 {
        // Simple curves: the annular local type; matches the simple-curve
        // baseline g^2.
        let order = freq_asymptotic_order(0, None, 0, 1);
        return IntersectionOrderTable {
            k,
            rows: vec![OrderRow {
                label: "simple".into(),
                iota0: 1,
                mu0: 0,
                chi: 0,
                order: order.clone(),
            }],
            total: order,
            sep_over_ns: "O(4^(-g) g^(-1/2))",
        };
    }
    let rows = vec![
        OrderRow {
            label: format!("pants-filling, {k} crossings"),
            iota0: 1,
            mu0: 1,
            chi: -1,
            order: freq_asymptotic_order(-1, Some(1), 1, 0),
        },
        OrderRow {
            label: format!("{}-holed-sphere filling, {k} crossings", k + 1),
            iota0: 1,
            mu0: (2 * k - 3).max(0) as u32,
            chi: -(k as i64) + 1,
            order: freq_asymptotic_order(-(k as i64) + 1, Some(1), (2 * k - 3).max(0) as u32, 0),
        },
        OrderRow {
            label: format!("{}-holed-sphere filling, {k} crossings, dominant", k + 2),
            iota0: 1,
            mu0: 2 * k as u32,
            chi: -(k as i64),
            order: freq_asymptotic_order(-(k as i64), Some(1), 2 * k as u32, 0),
        },
    ];
    let total = rows.last().unwrap().order.clone();
    IntersectionOrderTable {
        k,
        rows,
        total,
        sep_over_ns: "O(1/g)",
    }
}
