//! Kontsevich volume polynomials `V_{g,n}` and their products over
//! disconnected surfaces.
//!
//! `V_{g,n}` is the homogeneous degree `6g - 6 + 2n` polynomial
//!
//! ```text
//! V_{g,n}(b_1, ..., b_n) = sum_{|d| = 3g-3+n} <tau_{d_1} ... tau_{d_n}>
//!                          prod_i b_i^(2 d_i) / (2^(d_i) d_i!)
//! ```
//!
//! in the multiplicative normalization: for disconnected surfaces the
//! polynomial is the product over components. The `2^(chi + #components)`
//! normalization factor belongs to the frequency prefactor, not to `V`.

use crate::comb::{double_factorial, factorial};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::{pow2, Rational};
use crate::tau::TauEngine;
use num::bigint::BigInt;

/// One connected piece of a bounded surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceComponent {
    /// Negative Euler characteristic, with labeled boundary variables.
    Hyperbolic { genus: u32, boundary: Vec<String> },
    /// An annulus; only admissibility questions ever see these.
    Annulus { boundary: (String, String) },
}

impl SurfaceComponent {
    pub fn hyperbolic(genus: u32, boundary: &[&str]) -> Self {
        SurfaceComponent::Hyperbolic {
            genus,
            boundary: boundary.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn boundary_labels(&self) -> Vec<&str> {
        match self {
            SurfaceComponent::Hyperbolic { boundary, .. } => {
                boundary.iter().map(|s| s.as_str()).collect()
            }
            SurfaceComponent::Annulus { boundary } => {
                vec![boundary.0.as_str(), boundary.1.as_str()]
            }
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self {
            SurfaceComponent::Hyperbolic { genus, boundary } => {
                2 - 2 * (*genus as i64) - boundary.len() as i64
            }
            SurfaceComponent::Annulus { .. } => 0,
        }
    }
}

/// A possibly disconnected surface with globally distinct boundary labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceType {
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceType {
    pub fn new(components: Vec<SurfaceComponent>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for c in &components {
            if let SurfaceComponent::Hyperbolic { genus, boundary } = c {
                let (g, n) = (*genus, boundary.len() as u32);
                if 2 * g as i64 - 2 + n as i64 <= 0 {
                    return Err(Error::Unstable { g, n });
                }
            }
            for label in c.boundary_labels() {
                if !seen.insert(label.to_string()) {
                    return Err(Error::InvalidScenario(format!(
                        "boundary label `{label}` used twice"
                    )));
                }
            }
        }
        Ok(SurfaceType { components })
    }

    pub fn connected(genus: u32, boundary: &[&str]) -> Result<Self> {
        Self::new(vec![SurfaceComponent::hyperbolic(genus, boundary)])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components
            .iter()
            .map(|c| c.euler_characteristic())
            .sum()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn boundary_labels(&self) -> Vec<&str> {
        self.components
            .iter()
            .flat_map(|c| c.boundary_labels())
            .collect()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, SurfaceComponent::Hyperbolic { .. }))
    }

    /// `2^(chi(Z) + #pi_0(Z))`, the normalization carried by frequencies.
    pub fn two_power_factor(&self) -> Rational {
        pow2(self.euler_characteristic() + self.component_count() as i64)
    }
}

/// `V_{g,n}` in the given boundary variables.
pub fn kontsevich_polynomial(engine: &TauEngine, g: u32, boundary: &[&str]) -> Result<MultiPoly> {
    let n = boundary.len();
    if n == 0 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n: n as u32 });
    }
    let dim = (3 * g as i64 - 3 + n as i64) as u32;
    let mut acc = MultiPoly::zero();
    for d in compositions(dim, n) {
        let coeff = engine.tau(g, &d)?;
        let mut den = BigInt::from(1);
        for &di in &d {
            den *= BigInt::from(2).pow(di) * factorial(di as u64);
        }
        let exps: Vec<u32> = d.iter().map(|&di| 2 * di).collect();
        let term =
            MultiPoly::from_terms(boundary, vec![(exps, coeff / Rational::from_integer(den))]);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The large-genus comparison polynomial
/// `(6g-5+2n)!!/(g! 24^g) sum_{|d|=3g-3+n} prod b_i^(2 d_i)/(2 d_i + 1)!`.
pub fn main_term_polynomial(g: u32, boundary: &[&str]) -> Result<MultiPoly> {
    let n = boundary.len();
    if n == 0 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n: n as u32 });
    }
    let dim = (3 * g as i64 - 3 + n as i64) as u32;
    let front = Rational::new(
        double_factorial(6 * g as i64 - 5 + 2 * n as i64).unwrap(),
        factorial(g as u64) * BigInt::from(24).pow(g),
    );
    let mut acc = MultiPoly::zero();
    for d in compositions(dim, n) {
        let mut den = BigInt::from(1);
        for &di in &d {
            den *= factorial(2 * di as u64 + 1);
        }
        let exps: Vec<u32> = d.iter().map(|&di| 2 * di).collect();
        let term =
            MultiPoly::from_terms(boundary, vec![(exps, &front / Rational::from_integer(den))]);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Product of component volume polynomials in the labeled variables.
/// Annular components are rejected: they carry no volume polynomial.
pub fn volume_of(engine: &TauEngine, z: &SurfaceType) -> Result<MultiPoly> {
    let mut acc = MultiPoly::one();
    for c in &z.components {
        match c {
            SurfaceComponent::Hyperbolic { genus, boundary } => {
                let refs: Vec<&str> = boundary.iter().map(|s| s.as_str()).collect();
                acc = acc.mul(&kontsevich_polynomial(engine, *genus, &refs)?);
            }
            SurfaceComponent::Annulus { .. } => {
                return Err(Error::InvalidScenario(
                    "annular component has no volume polynomial".into(),
                ));
            }
        }
    }
    Ok(acc)
}

pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use std::collections::BTreeMap;

    #[test]
    fn small_volume_polynomials() {
        let e = TauEngine::new();
        // V_{0,3} = 1
        let v03 = kontsevich_polynomial(&e, 0, &["b1", "b2", "b3"]).unwrap();
        assert_eq!(v03, MultiPoly::one());
        // V_{1,1}(b) = b^2/48
        let v11 = kontsevich_polynomial(&e, 1, &["b"]).unwrap();
        assert_eq!(v11.coefficient(&[2]), rat(1, 48));
        assert_eq!(v11.num_terms(), 1);
        // V_{1,2} = (b1^2 + b2^2)^2 / 192
        let v12 = kontsevich_polynomial(&e, 1, &["b1", "b2"]).unwrap();
        let expected = MultiPoly::from_terms(
            &["b1", "b2"],
            vec![
                (vec![4, 0], rat(1, 192)),
                (vec![2, 2], rat(2, 192)),
                (vec![0, 4], rat(1, 192)),
            ],
        );
        assert_eq!(v12, expected);
    }

    #[test]
    fn unstable_rejected() {
        let e = TauEngine::new();
        assert!(kontsevich_polynomial(&e, 0, &["b1", "b2"]).is_err());
        assert!(main_term_polynomial(0, &["b1"]).is_err());
    }

    #[test]
    fn volume_properties_sweep() {
        let e = TauEngine::new();
        for g in 0u32..=2 {
            for n in 1usize..=3 {
                if 2 * g as i64 - 2 + n as i64 <= 0 {
                    continue;
                }
                let names: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                let v = kontsevich_polynomial(&e, g, &refs).unwrap();
                let deg = 6 * g + 2 * n as u32 - 6;
                assert!(v.is_homogeneous(deg), "V_{{{g},{n}}} homogeneity");
                assert!(v.even_in_each_variable());
                assert!(v.all_coefficients_positive());
                // Symmetry under swapping the first two variables.
                if n >= 2 {
                    let mut subs = BTreeMap::new();
                    subs.insert("b1".to_string(), MultiPoly::var("b2"));
                    subs.insert("b2".to_string(), MultiPoly::var("b1"));
                    for name in refs.iter().skip(2) {
                        subs.insert(name.to_string(), MultiPoly::var(name));
                    }
                    assert_eq!(v.substitute(&subs).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn product_of_two_tori() {
        let e = TauEngine::new();
        let z = SurfaceType::new(vec![
            SurfaceComponent::hyperbolic(1, &["b"]),
            SurfaceComponent::hyperbolic(1, &["bp"]),
        ])
        .unwrap();
        let v = volume_of(&e, &z).unwrap();
        // b^2/48 * bp^2/48 = b^2 bp^2 / 2304; identifying bp = b gives b^4/2304.
        let mut subs = BTreeMap::new();
        subs.insert("b".to_string(), MultiPoly::var("b"));
        subs.insert("bp".to_string(), MultiPoly::var("b"));
        let ident = v.substitute(&subs).unwrap();
        assert_eq!(ident.coefficient(&[4]), rat(1, 2304));
    }

    #[test]
    fn product_with_pair_of_pants() {
        let e = TauEngine::new();
        let z = SurfaceType::new(vec![
            SurfaceComponent::hyperbolic(0, &["c1", "c2", "c3"]),
            SurfaceComponent::hyperbolic(1, &["b"]),
        ])
        .unwrap();
        let v = volume_of(&e, &z).unwrap();
        assert_eq!(v.coefficient(&[2]), rat(1, 48));
        assert_eq!(v.variables(), &["b".to_string()]);
    }

    #[test]
    fn single_pants_volume_is_one() {
        let e = TauEngine::new();
        let z = SurfaceType::connected(0, &["z1", "z2", "z3"]).unwrap();
        assert_eq!(volume_of(&e, &z).unwrap(), MultiPoly::one());
    }

    #[test]
    fn main_term_small_cases() {
        // (0,3): only d = (0,0,0), front = 1!! = 1.
        let p = main_term_polynomial(0, &["b1", "b2", "b3"]).unwrap();
        assert_eq!(p, MultiPoly::one());
        // (1,1): (3!!/24) b^2/3! = b^2/48, which coincides with the exact
        // volume polynomial (one-point correlators equal their main term).
        let p = main_term_polynomial(1, &["b"]).unwrap();
        assert_eq!(p.coefficient(&[2]), rat(1, 48));
        let e = TauEngine::new();
        assert_eq!(p, kontsevich_polynomial(&e, 1, &["b"]).unwrap());
        // (1,2): front = 5!! / 24 = 5/8, d in {(0,2), (1,1), (2,0)}.
        let p = main_term_polynomial(1, &["b1", "b2"]).unwrap();
        assert_eq!(p.coefficient(&[2, 2]), rat(5, 8) * rat(1, 36));
        assert_eq!(p.coefficient(&[4, 0]), rat(5, 8) * rat(1, 120));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(SurfaceType::new(vec![
            SurfaceComponent::hyperbolic(1, &["b"]),
            SurfaceComponent::hyperbolic(1, &["b"]),
        ])
        .is_err());
    }

    #[test]
    fn two_power_factor() {
        // (1,2): chi = -2, one component -> 2^(-1).
        let z = SurfaceType::connected(1, &["z1", "z2"]).unwrap();
        assert_eq!(z.two_power_factor(), rat(1, 2));
        // (1,1) u (1,1): chi = -2, two components -> 2^0 = 1.
        let z = SurfaceType::new(vec![
            SurfaceComponent::hyperbolic(1, &["z1"]),
            SurfaceComponent::hyperbolic(1, &["z2"]),
        ])
        .unwrap();
        assert_eq!(z.two_power_factor(), int(1));
    }
}
