//! Sparse multivariate and univariate polynomials over exact rationals.
//!
//! A [`MultiPoly`] stores a canonically ordered variable list and a map from
//! exponent vectors to nonzero rational coefficients. Arithmetic takes the
//! union of variable sets, so polynomials built over different boundary
//! labels combine without ceremony.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Variable order: natural order on an alphabetic prefix plus a numeric
/// suffix, so `b2` sorts before `b10`.
fn var_key(name: &str) -> (String, u64, String) {
    let split = name
        .rfind(|c: char| !c.is_ascii_digit())
        .map(|i| i + 1)
        .unwrap_or(0);
    let (prefix, digits) = name.split_at(split);
    match digits.parse::<u64>() {
        Ok(n) => (prefix.to_string(), n, String::new()),
        Err(_) => (name.to_string(), 0, name.to_string()),
    }
}

fn sort_vars(mut vars: Vec<String>) -> Vec<String> {
    vars.sort_by_key(|v| var_key(v));
    vars.dedup();
    vars
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(name: &str) -> Self {
        let mut p = MultiPoly {
            vars: vec![name.to_string()],
            terms: BTreeMap::new(),
        };
        p.terms.insert(vec![1], Rational::one());
        p
    }

    /// Build from explicit (exponent vector, coefficient) pairs over `vars`.
    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<u32>, Rational)>) -> Self {
        let mut p = MultiPoly {
            vars: sort_vars(vars.iter().map(|s| s.to_string()).collect()),
            terms: BTreeMap::new(),
        };
        assert_eq!(p.vars.len(), vars.len(), "duplicate variable names");
        // Exponents were given in caller order; remap to canonical order.
        let perm: Vec<usize> = vars
            .iter()
            .map(|v| p.vars.iter().position(|w| w == v).unwrap())
            .collect();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len());
            let mut e = vec![0u32; vars.len()];
            for (i, &x) in exps.iter().enumerate() {
                e[perm[i]] = x;
            }
            p.add_term(e, c);
        }
        p.prune();
        p
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms as (exponent vector over `variables()`, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    /// True when every exponent of every variable is even.
    pub fn even_in_each_variable(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| x % 2 == 0))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.vars.clear();
            return;
        }
        // Drop variables that no longer occur.
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let e: Vec<u32> = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&x, _)| x)
                    .collect();
                (e, c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    /// Re-express both polynomials over the union of their variables.
    fn aligned(&self, other: &Self) -> (Vec<String>, Vec<usize>, Vec<usize>) {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let vars = sort_vars(vars);
        let map_a = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap())
            .collect();
        let map_b = other
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap())
            .collect();
        (vars, map_a, map_b)
    }

    fn remap(exps: &[u32], map: &[usize], width: usize) -> Vec<u32> {
        let mut e = vec![0u32; width];
        for (i, &x) in exps.iter().enumerate() {
            e[map[i]] = x;
        }
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        let (vars, map_a, map_b) = self.aligned(other);
        let width = vars.len();
        let mut p = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            p.add_term(Self::remap(e, &map_a, width), c.clone());
        }
        for (e, c) in &other.terms {
            p.add_term(Self::remap(e, &map_b, width), c.clone());
        }
        p.prune();
        p
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (vars, map_a, map_b) = self.aligned(other);
        let width = vars.len();
        let mut p = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            let ea = Self::remap(ea, &map_a, width);
            for (eb, cb) in &other.terms {
                let eb = Self::remap(eb, &map_b, width);
                let e: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p.prune();
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute a polynomial (typically a linear form) for every variable.
    /// Every variable of `self` must be present in `subs`.
    pub fn substitute(&self, subs: &BTreeMap<String, MultiPoly>) -> Result<Self> {
        for v in &self.vars {
            if !subs.contains_key(v) {
                return Err(Error::MissingSubstitution(v.clone()));
            }
        }
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&subs[&self.vars[i]].pow(exp));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluate at rational values (all variables must be given).
    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        for v in &self.vars {
            if !values.contains_key(v) {
                return Err(Error::MissingSubstitution(v.clone()));
            }
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                let x = &values[&self.vars[i]];
                for _ in 0..exp {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Partial evaluation: fix some variables, keep the rest symbolic.
    pub fn eval_partial(&self, values: &BTreeMap<String, Rational>) -> Self {
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut keep_vars = Vec::new();
            let mut keep_exps = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                match values.get(&self.vars[i]) {
                    Some(x) => {
                        for _ in 0..exp {
                            coeff *= x;
                        }
                    }
                    None => {
                        keep_vars.push(self.vars[i].as_str());
                        keep_exps.push(exp);
                    }
                }
            }
            let term = if keep_vars.is_empty() {
                MultiPoly::constant(coeff)
            } else {
                MultiPoly::from_terms(&keep_vars, vec![(keep_exps, coeff)])
            };
            acc = acc.add(&term);
        }
        acc
    }

    /// View a polynomial in a single variable as dense coefficients
    /// `c0 + c1 x + ...`. Errors if more than one variable occurs.
    pub fn univariate_coefficients(&self, var: &str) -> Result<Vec<Rational>> {
        for v in &self.vars {
            if v != var {
                return Err(Error::VariableMismatch(v.clone()));
            }
        }
        let deg = self.total_degree() as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = if e.is_empty() { 0 } else { e[0] as usize };
            coeffs[k] = c.clone();
        }
        Ok(coeffs)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let monos: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            if monos.is_empty() {
                write!(f, "{}", crate::rational::format_rational(c))?;
            } else {
                write!(
                    f,
                    "{} * {}",
                    crate::rational::format_rational(c),
                    monos.join("*")
                )?;
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial, used for rational functions of `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    /// Coefficients `c[k]` of `z^k`; no trailing zeros.
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The linear polynomial `a + b z`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![Rational::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.coeffs.iter().enumerate() {
            c[i] += x;
        }
        Self::new(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Substitute `z <- a + b t`, returning the coefficients in `t`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = UniPoly::linear(a.clone(), b.clone());
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Exact division by `a + b z`; errors if the division leaves a remainder.
    pub fn div_linear_exact(&self, a: &Rational, b: &Rational) -> Result<Self> {
        assert!(!b.is_zero());
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut rem = self.coeffs.clone();
        for k in (1..n).rev() {
            let c = rem[k].clone() / b;
            q[k - 1] = c.clone();
            rem[k] = Rational::zero();
            rem[k - 1] -= c * a;
        }
        if !rem[0].is_zero() {
            return Err(Error::Domain(
                "division by linear factor leaves remainder".into(),
            ));
        }
        Ok(Self::new(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn b2_over_48() -> MultiPoly {
        MultiPoly::from_terms(&["b"], vec![(vec![2], rat(1, 48))])
    }

    #[test]
    fn square_of_b2_over_48() {
        // (b^2/48)^2 = b^4/2304
        let p = b2_over_48();
        let sq = p.mul(&p);
        assert_eq!(sq.coefficient(&[4]), rat(1, 2304));
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn multiplicative_identity() {
        let p = MultiPoly::from_terms(
            &["x1", "x2"],
            vec![(vec![1, 0], rat(2, 3)), (vec![0, 2], rat(-1, 5))],
        );
        assert_eq!(p.mul(&MultiPoly::one()), p);
    }

    #[test]
    fn expand_triple_product() {
        // (x1+x3)(x1+x2)(x2+x3), expanded by hand:
        // x1^2 x2 + x1^2 x3 + x1 x2^2 + 2 x1 x2 x3 + x1 x3^2 + x2^2 x3 + x2 x3^2
        let lf = |a: u32, b: u32, c: u32| {
            MultiPoly::from_terms(
                &["x1", "x2", "x3"],
                vec![
                    (vec![1, 0, 0], int(a as i64)),
                    (vec![0, 1, 0], int(b as i64)),
                    (vec![0, 0, 1], int(c as i64)),
                ],
            )
        };
        let p = lf(1, 0, 1).mul(&lf(1, 1, 0)).mul(&lf(0, 1, 1));
        assert_eq!(p.num_terms(), 7);
        assert_eq!(p.coefficient(&[1, 1, 1]), int(2));
        assert_eq!(p.coefficient(&[2, 1, 0]), int(1));
        assert_eq!(p.coefficient(&[0, 1, 2]), int(1));
        assert!(p.is_homogeneous(3));
    }

    #[test]
    fn substitution_composes_linear_forms() {
        // V_{1,1}-style b^2/48 with b <- 2 x1 gives 4 x1^2 / 48.
        let p = b2_over_48();
        let mut subs = BTreeMap::new();
        subs.insert("b".to_string(), MultiPoly::var("x1").scale(&int(2)));
        let q = p.substitute(&subs).unwrap();
        assert_eq!(q.coefficient(&[2]), rat(4, 48));
    }

    #[test]
    fn substitution_constant_unchanged() {
        let p = MultiPoly::constant(rat(7, 2));
        let q = p.substitute(&BTreeMap::new()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn substitution_missing_variable_errors() {
        let p = MultiPoly::var("b");
        assert!(p.substitute(&BTreeMap::new()).is_err());
    }

    #[test]
    fn variable_order_is_natural() {
        let p = MultiPoly::var("b2").add(&MultiPoly::var("b10"));
        assert_eq!(p.variables(), &["b2".to_string(), "b10".to_string()]);
    }

    #[test]
    fn display_format() {
        let p = MultiPoly::from_terms(&["b1"], vec![(vec![2], rat(1, 48))]);
        assert_eq!(p.to_string(), "1/48 * b1^2");
    }

    #[test]
    fn unipoly_compose_linear() {
        // p(z) = 1 + z^2 at z = 1 - t: 2 - 2t + t^2.
        let p = UniPoly::new(vec![int(1), int(0), int(1)]);
        let q = p.compose_linear(&int(1), &int(-1));
        assert_eq!(q, UniPoly::new(vec![int(2), int(-2), int(1)]));
    }

    #[test]
    fn unipoly_div_linear() {
        // (1 - 4z^2) / (1 - 2z) = 1 + 2z
        let p = UniPoly::new(vec![int(1), int(0), int(-4)]);
        let q = p.div_linear_exact(&int(1), &int(-2)).unwrap();
        assert_eq!(q, UniPoly::new(vec![int(1), int(2)]));
        // Remainder detected.
        let p = UniPoly::new(vec![int(1), int(1)]);
        assert!(p.div_linear_exact(&int(1), &int(-2)).is_err());
    }

    use crate::rational::int;

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 3), (-20i64..20, 1i64..8)),
            0..6,
        )
        .prop_map(|terms| {
            MultiPoly::from_terms(
                &["x", "y", "z"],
                terms
                    .into_iter()
                    .map(|(e, (p, q))| (e, rat(p, q)))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn mul_commutative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn rational_arithmetic_exact(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            // (a/b + c/d) * d * b = a*d + c*b as integers.
            let lhs = (rat(a, b) + rat(c, d)) * int(d) * int(b);
            prop_assert_eq!(lhs, int(a * d + c * b));
        }
    }
}
