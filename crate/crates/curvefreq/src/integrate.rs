//! Exact integration of polynomials over weighted simplices
//! `{x >= 0 : w . x <= 1}` and exact lattice sums over their dilates.
//!
//! Monomials integrate in closed form (the Dirichlet integral):
//!
//! ```text
//! int_{w.x <= 1, x >= 0} prod x_i^{a_i} dx
//!     = prod(a_i!) / ( (sum a_i + m)! prod w_i^{a_i + 1} )
//! ```

use crate::comb::{factorial, power_sum};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::{pow, Rational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// The region `{x >= 0 : sum_i w_i x_i <= 1}` in named coordinates.
#[derive(Debug, Clone)]
pub struct SimplexDomain {
    vars: Vec<String>,
    weights: Vec<Rational>,
}

impl SimplexDomain {
    /// All weights must be positive: a zero weight would leave the region
    /// unbounded and is rejected.
    pub fn new(vars: Vec<String>, weights: Vec<Rational>) -> Result<Self> {
        if vars.len() != weights.len() {
            return Err(Error::Domain("coordinate and weight counts differ".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::Domain(format!(
                "weight of `{}` is not positive; the region would be unbounded",
                vars[i]
            )));
        }
        Ok(SimplexDomain { vars, weights })
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    fn index_of(&self, var: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::VariableMismatch(var.to_string()))
    }
}

/// Dirichlet integral of a monomial with exponents `a` over the domain.
pub fn integrate_monomial(exponents: &[u32], domain: &SimplexDomain) -> Rational {
    assert_eq!(exponents.len(), domain.dimension());
    let m = domain.dimension() as u64;
    let total: u64 = exponents.iter().map(|&a| a as u64).sum();
    let mut num = BigInt::one();
    for &a in exponents {
        num *= factorial(a as u64);
    }
    let mut value = Rational::new(num, factorial(total + m));
    for (i, &a) in exponents.iter().enumerate() {
        value /= pow(&domain.weights[i], a + 1);
    }
    value
}

/// Exact term-by-term integral of a polynomial; the polynomial's variables
/// must be coordinates of the domain.
pub fn integrate_polynomial(p: &MultiPoly, domain: &SimplexDomain) -> Result<Rational> {
    let positions: Vec<usize> = p
        .variables()
        .iter()
        .map(|v| domain.index_of(v))
        .collect::<Result<_>>()?;
    let mut acc = Rational::zero();
    for (exps, coeff) in p.terms() {
        let mut full = vec![0u32; domain.dimension()];
        for (i, &e) in exps.iter().enumerate() {
            full[positions[i]] = e;
        }
        acc += coeff * integrate_monomial(&full, domain);
    }
    Ok(acc)
}

/// Refuse lattice sums with more than this many points.
pub const MAX_LATTICE_POINTS: u128 = 1_000_000_000;

/// Sum a caller-supplied weight over the integer points of the dilate
/// `{x >= lower : w . x <= L}`, coordinatewise. `lower = 0` sums the whole
/// closed dilate, `lower = 1` its chart interior. Domain weights must be
/// integers here, as they are for intersection forms.
pub fn lattice_count_in_dilate<F>(
    domain: &SimplexDomain,
    l: u64,
    lower: u64,
    mut weight: F,
) -> Result<Rational>
where
    F: FnMut(&[u64]) -> Rational,
{
    let w = integer_weights(domain)?;
    let bound = estimate_point_count(&w, l);
    if bound > MAX_LATTICE_POINTS {
        return Err(Error::Guard(format!(
            "lattice sum would touch about {bound} points (limit {MAX_LATTICE_POINTS})"
        )));
    }
    let mut x = vec![lower; domain.dimension()];
    let mut acc = Rational::zero();
    sum_points(&w, l, lower, 0, &mut x, &mut |x| acc += weight(x));
    Ok(acc)
}

/// Sum a polynomial over the integer points `x >= lower` of `{w . x <= L}`,
/// with the innermost coordinate summed in closed form through power-sum
/// polynomials. Exact, and much faster than point enumeration.
pub fn lattice_polynomial_sum(
    domain: &SimplexDomain,
    p: &MultiPoly,
    l: u64,
    lower: u64,
) -> Result<Rational> {
    for v in p.variables() {
        domain.index_of(v)?;
    }
    let w = integer_weights(domain)?;
    let m = domain.dimension();
    if m == 0 {
        return Ok(p
            .eval(&BTreeMap::new())
            .unwrap_or_else(|_| Rational::zero()));
    }
    let mut acc = Rational::zero();
    let mut outer = vec![lower; m - 1];
    sum_outer(domain, p, &w, l, lower, 0, &mut outer, &mut acc);
    Ok(acc)
}

fn integer_weights(domain: &SimplexDomain) -> Result<Vec<u64>> {
    domain
        .weights
        .iter()
        .map(|w| {
            if w.denom().is_one() {
                u64::try_from(w.numer().clone())
                    .map_err(|_| Error::Domain("weight too large for lattice sums".into()))
            } else {
                Err(Error::Domain("lattice sums need integer weights".into()))
            }
        })
        .collect()
}

fn estimate_point_count(w: &[u64], l: u64) -> u128 {
    // Product of per-coordinate ranges; a cheap upper bound.
    let mut bound: u128 = 1;
    for &wi in w {
        bound = bound.saturating_mul((l / wi.max(1)) as u128 + 1);
    }
    bound
}

fn sum_points(
    w: &[u64],
    budget: u64,
    lower: u64,
    i: usize,
    x: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if i == w.len() {
        f(x);
        return;
    }
    // Remaining coordinates all need at least weight * lower.
    let reserve: u64 = w[i + 1..].iter().map(|wi| wi * lower).sum();
    if budget < w[i] * lower + reserve {
        return;
    }
    let max = (budget - reserve) / w[i];
    for v in lower..=max {
        x[i] = v;
        sum_points(w, budget - v * w[i], lower, i + 1, x, f);
    }
}

/// Power sum `lower^k + ... + t^k`; `lower` is 0 or 1.
fn power_sum_from(k: u32, t: &BigInt, lower: u64) -> Rational {
    let mut s = power_sum(k, t);
    if lower == 0 && k == 0 && t >= &BigInt::zero() {
        s += Rational::one(); // the x = 0 term of x^0
    }
    s
}

fn sum_outer(
    domain: &SimplexDomain,
    p: &MultiPoly,
    w: &[u64],
    budget: u64,
    lower: u64,
    i: usize,
    outer: &mut Vec<u64>,
    acc: &mut Rational,
) {
    let m = w.len();
    if i == m - 1 {
        // Closed-form sum over the last coordinate: lower <= x_m <= T.
        if budget < w[m - 1] * lower {
            return;
        }
        let t = BigInt::from(budget / w[m - 1]);
        let mut values: BTreeMap<String, Rational> = BTreeMap::new();
        for (j, v) in domain.vars.iter().enumerate().take(m - 1) {
            values.insert(v.clone(), Rational::from_integer(BigInt::from(outer[j])));
        }
        let inner = p.eval_partial(&values);
        let last = domain.vars[m - 1].clone();
        let coeffs = inner
            .univariate_coefficients(&last)
            .expect("partial evaluation leaves only the last coordinate");
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                *acc += c * power_sum_from(k as u32, &t, lower);
            }
        }
        return;
    }
    let reserve: u64 = w[i + 1..].iter().map(|wi| wi * lower).sum();
    if budget < w[i] * lower + reserve {
        return;
    }
    let max = (budget - reserve) / w[i];
    for v in lower..=max {
        outer[i] = v;
        sum_outer(domain, p, w, budget - v * w[i], lower, i + 1, outer, acc);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn domain(weights: &[i64]) -> SimplexDomain {
        let vars: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
        SimplexDomain::new(vars, weights.iter().map(|&w| int(w)).collect()).unwrap()
    }

    #[test]
    fn unit_interval_and_standard_simplex() {
        assert_eq!(integrate_monomial(&[0], &domain(&[1])), int(1));
        assert_eq!(
            integrate_monomial(&[0, 0, 0], &domain(&[1, 1, 1])),
            rat(1, 6)
        );
    }

    #[test]
    fn zero_weight_rejected() {
        assert!(SimplexDomain::new(vec!["x".into()], vec![int(0)]).is_err());
    }

    /// Iterated symbolic integration, fully independent of the Dirichlet
    /// formula: integrate out the last variable, substitute the upper bound,
    /// and recurse.
    fn iterated_integral(p: &MultiPoly, weights: &[Rational]) -> Rational {
        fn go(p: &MultiPoly, weights: &[Rational], names: &[String]) -> Rational {
            let m = names.len();
            if m == 0 {
                return p.eval(&BTreeMap::new()).unwrap();
            }
            let last = &names[m - 1];
            // Antiderivative in the last variable.
            let mut anti = MultiPoly::zero();
            let vars = p.variables().to_vec();
            let last_pos = vars.iter().position(|v| v == last);
            for (exps, c) in p.terms() {
                let k = last_pos.map(|i| exps[i]).unwrap_or(0);
                let mut e = exps.clone();
                match last_pos {
                    Some(i) => e[i] = k + 1,
                    None => {
                        // Variable absent: multiply by it once.
                    }
                }
                let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
                let mono = if last_pos.is_some() {
                    MultiPoly::from_terms(&refs, vec![(e, c / int(k as i64 + 1))])
                } else {
                    MultiPoly::from_terms(&refs, vec![(exps.clone(), c.clone())])
                        .mul(&MultiPoly::var(last))
                };
                anti = anti.add(&mono);
            }
            // Upper bound (1 - sum_{j<m} w_j x_j) / w_m, lower bound 0.
            let mut upper = MultiPoly::constant(int(1));
            for (j, name) in names.iter().enumerate().take(m - 1) {
                upper = upper.sub(&MultiPoly::var(name).scale(&weights[j]));
            }
            upper = upper.scale(&(Rational::one() / &weights[m - 1]));
            let mut subs = BTreeMap::new();
            for name in names.iter().take(m - 1) {
                subs.insert(name.clone(), MultiPoly::var(name));
            }
            subs.insert(last.clone(), upper);
            let evaluated = anti.substitute(&subs).unwrap();
            go(&evaluated, &weights[..m - 1], &names[..m - 1])
        }
        let names: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
        go(p, weights, &names)
    }

    #[test]
    fn dirichlet_matches_iterated_integration() {
        // All monomials with total degree <= 6 in up to 4 variables, over a
        // couple of weight vectors, including the (1,2,2) example.
        let weight_sets: Vec<Vec<i64>> = vec![
            vec![1],
            vec![2],
            vec![1, 2],
            vec![1, 2, 2],
            vec![1, 1, 2],
            vec![3, 1, 2, 1],
        ];
        for ws in weight_sets {
            let d = domain(&ws);
            let m = ws.len();
            for exps in all_exponents(m, 6) {
                let refs: Vec<&str> = d.variables().iter().map(|s| s.as_str()).collect();
                let p = MultiPoly::from_terms(&refs, vec![(exps.clone(), int(1))]);
                let direct = integrate_monomial(&exps, &d);
                let oracle = iterated_integral(&p, d.weights());
                assert_eq!(direct, oracle, "w = {ws:?}, a = {exps:?}");
            }
        }
    }

    fn all_exponents(m: usize, max_total: u32) -> Vec<Vec<u32>> {
        fn go(m: usize, budget: u32) -> Vec<Vec<u32>> {
            if m == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..=budget {
                for mut rest in go(m - 1, budget - first) {
                    let mut v = vec![first];
                    v.append(&mut rest);
                    out.push(v);
                }
            }
            out
        }
        go(m, max_total)
    }

    #[test]
    fn appendix_integrals() {
        // (x1+x3)(x1+x2)(x2+x3) over {x1 + x2 + 2 x3 <= 1} = 1/180.
        let lf = |a: i64, b: i64, c: i64| {
            MultiPoly::from_terms(
                &["x1", "x2", "x3"],
                vec![
                    (vec![1, 0, 0], int(a)),
                    (vec![0, 1, 0], int(b)),
                    (vec![0, 0, 1], int(c)),
                ],
            )
        };
        let p = lf(1, 0, 1).mul(&lf(1, 1, 0)).mul(&lf(0, 1, 1));
        assert_eq!(
            integrate_polynomial(&p, &domain(&[1, 1, 2])).unwrap(),
            rat(1, 180)
        );
        // (x1 + 2 x2 + x3) x1 x3 over {x1 + 2 x2 + 2 x3 <= 1} = 1/1440.
        let p = lf(1, 2, 1).mul(&lf(1, 0, 0)).mul(&lf(0, 0, 1));
        assert_eq!(
            integrate_polynomial(&p, &domain(&[1, 2, 2])).unwrap(),
            rat(1, 1440)
        );
        // x1 (x1 + x2 + 2 x3) x2 over {x1 + x2 + 2 x3 <= 1} = 1/288.
        let p = lf(1, 0, 0).mul(&lf(1, 1, 2)).mul(&lf(0, 1, 0));
        assert_eq!(
            integrate_polynomial(&p, &domain(&[1, 1, 2])).unwrap(),
            rat(1, 288)
        );
    }

    #[test]
    fn scaling_of_homogeneous_integrals() {
        // For homogeneous p of degree d over {w.x <= t}: t^(d+m) times t = 1.
        // Check symbolically for t = 2, 3 by scaling the weights by 1/t.
        let p = MultiPoly::from_terms(
            &["x1", "x2"],
            vec![(vec![2, 1], int(3)), (vec![0, 3], int(1))],
        );
        let base = integrate_polynomial(&p, &domain(&[1, 2])).unwrap();
        for t in [2i64, 3] {
            let scaled =
                SimplexDomain::new(vec!["x1".into(), "x2".into()], vec![rat(1, t), rat(2, t)])
                    .unwrap();
            let v = integrate_polynomial(&p, &scaled).unwrap();
            assert_eq!(v, base.clone() * pow(&int(t), (3 + 2) as u32));
        }
    }

    #[test]
    fn fubini_marginalization() {
        // The joint measure over mixed coordinates is the product measure:
        // integrating x^a over {x + y <= 1} equals the marginal
        // int_0^1 x^a (1 - x) dx = a!/(a+2)! computed by hand.
        for a in 0u32..=5 {
            let joint = integrate_monomial(&[a, 0], &domain(&[1, 1]));
            let marginal = Rational::new(factorial(a as u64), factorial(a as u64 + 2));
            assert_eq!(joint, marginal, "a = {a}");
        }
    }

    #[test]
    fn lattice_count_interval() {
        // Points 0..5 for weight 1 and L = 5: six of them.
        let d = domain(&[1]);
        let count = lattice_count_in_dilate(&d, 5, 0, |_| int(1)).unwrap();
        assert_eq!(count, int(6));
        // Chart interior drops x = 0.
        let count = lattice_count_in_dilate(&d, 5, 1, |_| int(1)).unwrap();
        assert_eq!(count, int(5));
    }

    #[test]
    fn lattice_volume_scaling() {
        // count / L^m approaches the simplex volume within 2/L.
        let d = domain(&[1, 2, 2]);
        let vol = integrate_monomial(&[0, 0, 0], &d);
        for l in [20u64, 40] {
            for lower in [0u64, 1] {
                let count = lattice_count_in_dilate(&d, l, lower, |_| int(1)).unwrap();
                let ratio = count / pow(&int(l as i64), 3);
                let err = if ratio > vol {
                    ratio - &vol
                } else {
                    vol.clone() - ratio
                };
                assert!(err <= rat(2, l as i64), "L = {l}, lower = {lower}");
            }
        }
    }

    #[test]
    fn polynomial_sum_matches_pointwise() {
        let d = domain(&[1, 1, 2]);
        let p = MultiPoly::from_terms(
            &["x1", "x2", "x3"],
            vec![
                (vec![1, 1, 1], int(2)),
                (vec![0, 2, 0], rat(1, 3)),
                (vec![0, 0, 0], int(1)),
            ],
        );
        for l in [5u64, 9, 14] {
            for lower in [0u64, 1] {
                let fast = lattice_polynomial_sum(&d, &p, l, lower).unwrap();
                let slow = lattice_count_in_dilate(&d, l, lower, |x| {
                    let mut vals = BTreeMap::new();
                    for (i, v) in d.variables().iter().enumerate() {
                        vals.insert(v.clone(), int(x[i] as i64));
                    }
                    p.eval(&vals).unwrap()
                })
                .unwrap();
                assert_eq!(fast, slow, "L = {l}, lower = {lower}");
            }
        }
    }

    #[test]
    fn guard_refuses_huge_enumerations() {
        let d = domain(&[1, 1, 1, 1]);
        assert!(matches!(
            lattice_count_in_dilate(&d, 200_000, 0, |_| int(1)),
            Err(Error::Guard(_))
        ));
    }

    use std::collections::BTreeMap;
}
