//! The scenario file format: a JSON document describing a local type and
//! its realization.
//!
//! ```json
//! {
//!   "meta": { "name": "genus2-figure8-noflip", "K": 1 },
//!   "sigma": { "chi": -1, "n_boundary": 3, "n_prime": 0, "flip": [] },
//!   "charts": [
//!     { "iota": [1, 1, 2],
//!       "incidence": [[1, 1, 0], [0, 1, 1], [1, 0, 1]],
//!       "stabilizer": 1 }
//!   ],
//!   "z": { "components": [ { "g": 0, "boundary": ["z1", "z2", "z3"] } ] },
//!   "gluing": { "z1": "b1", "z2": "b2", "z3": "b3" },
//!   "constants": { "sym": 2, "k1": "2", "k2": "2" }
//! }
//! ```
//!
//! `flip` lists 1-based pairs of identified hyperbolic boundaries. Gluing
//! values name orbits: `b<j>` for the (fixed) hyperbolic boundary `j`,
//! `a<k>` for the `k`-th annular component. `k1` and `k2` accept integers
//! or `"p/q"` strings and default to 1 when omitted, with a warning.

use crate::arcs::{ArcChart, FlipSpec, Orbit, Scenario};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::volume::{SurfaceComponent, SurfaceType};
use num::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Serialize, Deserialize)]
struct FileDoc {
    meta: MetaSection,
    sigma: SigmaSection,
    charts: Vec<ChartSection>,
    z: ZSection,
    gluing: BTreeMap<String, String>,
    #[serde(default)]
    constants: ConstantsSection,
}

#[derive(Debug, Serialize, Deserialize)]
struct MetaSection {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus_formula: Option<String>,
    #[serde(default, rename = "K", skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SigmaSection {
    chi: i64,
    n_boundary: usize,
    #[serde(default)]
    n_prime: usize,
    /// 1-based index pairs.
    #[serde(default)]
    flip: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ChartSection {
    iota: Vec<u64>,
    incidence: Vec<Vec<u8>>,
    #[serde(default = "one")]
    stabilizer: u64,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
struct ZSection {
    components: Vec<ComponentSection>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentSection {
    g: u32,
    boundary: Vec<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct ConstantsSection {
    #[serde(default)]
    sym: Option<u64>,
    #[serde(default)]
    k1: Option<serde_json::Value>,
    #[serde(default)]
    k2: Option<serde_json::Value>,
}

fn parse_constant(v: &serde_json::Value, name: &str) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("{name} must be an integer or `p/q`")))?;
            Ok(crate::rational::int(i))
        }
        serde_json::Value::String(s) => parse_rational(s),
        _ => Err(Error::Parse(format!("{name} must be an integer or `p/q`"))),
    }
}

fn parse_orbit(s: &str, flip: &FlipSpec, n_boundary: usize, n_prime: usize) -> Result<Orbit> {
    if let Some(rest) = s.strip_prefix('b') {
        let j: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad orbit `{s}`")))?;
        if j == 0 || j > n_boundary {
            return Err(Error::InvalidScenario(format!(
                "orbit `{s}` is out of range: sigma has {n_boundary} hyperbolic boundaries"
            )));
        }
        let j0 = j - 1;
        if let Some(&(a, b)) = flip.pairs.iter().find(|&&(a, b)| a == j0 || b == j0) {
            return Ok(Orbit::FlippedHyp(a, b));
        }
        Ok(Orbit::FixedHyp(j0))
    } else if let Some(rest) = s.strip_prefix('a') {
        let k: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad orbit `{s}`")))?;
        if k == 0 || k > n_prime {
            return Err(Error::InvalidScenario(format!(
                "orbit `{s}` is out of range: sigma has {n_prime} annuli"
            )));
        }
        Ok(Orbit::Annulus(k - 1))
    } else {
        Err(Error::Parse(format!(
            "orbit `{s}` should look like `b2` or `a1`"
        )))
    }
}

/// Parse and validate a scenario document. Returns the scenario together
/// with any soft warnings (defaulted constants).
pub fn parse_scenario_str(text: &str) -> Result<(Scenario, Vec<String>)> {
    let doc: FileDoc = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "scenario syntax error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let mut warnings = Vec::new();

    let mut pairs = Vec::new();
    for (a, b) in &doc.sigma.flip {
        if *a == 0 || *b == 0 {
            return Err(Error::InvalidScenario(
                "flip pairs use 1-based boundary indices".into(),
            ));
        }
        pairs.push((a - 1, b - 1));
    }
    let flip = FlipSpec::new(pairs, doc.sigma.n_boundary.max(1))?;

    let mut charts = Vec::new();
    for (i, c) in doc.charts.iter().enumerate() {
        let chart = ArcChart::new(c.incidence.clone(), c.iota.clone(), c.stabilizer)
            .map_err(|e| Error::InvalidScenario(format!("chart {}: {e}", i + 1)))?;
        charts.push(chart);
    }
    if charts.is_empty() && doc.sigma.chi == 0 {
        charts.push(ArcChart::empty());
    }

    let components: Vec<SurfaceComponent> = doc
        .z
        .components
        .iter()
        .map(|c| {
            let refs: Vec<&str> = c.boundary.iter().map(|s| s.as_str()).collect();
            SurfaceComponent::hyperbolic(c.g, &refs)
        })
        .collect();
    let z = SurfaceType::new(components)?;

    let mut gluing = BTreeMap::new();
    for (label, orbit) in &doc.gluing {
        gluing.insert(
            label.clone(),
            parse_orbit(orbit, &flip, doc.sigma.n_boundary, doc.sigma.n_prime)?,
        );
    }

    let sym = doc.constants.sym.unwrap_or_else(|| {
        warnings.push("constants.sym missing, defaulting to 1".into());
        1
    });
    let k1 = match &doc.constants.k1 {
        Some(v) => parse_constant(v, "k1")?,
        None => {
            warnings.push("constants.k1 missing, defaulting to 1".into());
            Rational::one()
        }
    };
    let k2 = match &doc.constants.k2 {
        Some(v) => parse_constant(v, "k2")?,
        None => {
            warnings.push("constants.k2 missing, defaulting to 1".into());
            Rational::one()
        }
    };

    let scenario = Scenario {
        name: doc.meta.name.clone(),
        chi_sigma: doc.sigma.chi,
        n_boundary: doc.sigma.n_boundary,
        n_prime: doc.sigma.n_prime,
        flip,
        charts,
        z,
        gluing,
        sym,
        k1,
        k2,
        self_intersection: doc.meta.k,
    };
    scenario.validate()?;
    Ok((scenario, warnings))
}

pub fn parse_scenario(path: &Path) -> Result<(Scenario, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario_str(&text)
}

/// Serialize a scenario back to the file format.
pub fn scenario_to_string(s: &Scenario) -> String {
    let orbit_name = |o: &Orbit| match o {
        Orbit::FixedHyp(j) => format!("b{}", j + 1),
        Orbit::FlippedHyp(a, _) => format!("b{}", a + 1),
        Orbit::Annulus(k) => format!("a{}", k + 1),
    };
    let doc = FileDoc {
        meta: MetaSection {
            name: s.name.clone(),
            genus_formula: None,
            k: s.self_intersection,
        },
        sigma: SigmaSection {
            chi: s.chi_sigma,
            n_boundary: s.n_boundary,
            n_prime: s.n_prime,
            flip: s.flip.pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
        },
        charts: s
            .charts
            .iter()
            .filter(|c| c.num_arcs() > 0)
            .map(|c| ChartSection {
                iota: c.iota.clone(),
                incidence: c.incidence.clone(),
                stabilizer: c.stabilizer_order,
            })
            .collect(),
        z: ZSection {
            components: s
                .z
                .components
                .iter()
                .map(|c| match c {
                    SurfaceComponent::Hyperbolic { genus, boundary } => ComponentSection {
                        g: *genus,
                        boundary: boundary.clone(),
                    },
                    SurfaceComponent::Annulus { boundary } => ComponentSection {
                        g: 0,
                        boundary: vec![boundary.0.clone(), boundary.1.clone()],
                    },
                })
                .collect(),
        },
        gluing: s
            .gluing
            .iter()
            .map(|(label, orbit)| (label.clone(), orbit_name(orbit)))
            .collect(),
        constants: ConstantsSection {
            sym: Some(s.sym),
            k1: Some(serde_json::Value::String(format_rational(&s.k1))),
            k2: Some(serde_json::Value::String(format_rational(&s.k2))),
        },
    };
    serde_json::to_string_pretty(&doc).expect("scenario serializes")
}

#[derive(Debug, Serialize, Deserialize)]
struct PhiSpecDoc {
    name: String,
    #[serde(default)]
    n_prime: usize,
    charts: Vec<ChartSection>,
}

/// Parse a chart-family document:
/// `{ "name": ..., "n_prime": 0, "charts": [{ "iota": ..., "incidence": ... }] }`.
pub fn parse_phispec_str(text: &str) -> Result<crate::asym::PhiSpec> {
    let doc: PhiSpecDoc = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "spec syntax error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let charts = doc
        .charts
        .iter()
        .enumerate()
        .map(|(i, c)| {
            ArcChart::new(c.incidence.clone(), c.iota.clone(), c.stabilizer)
                .map_err(|e| Error::InvalidChart(format!("chart {}: {e}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    crate::asym::PhiSpec::new(&doc.name, doc.n_prime, charts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::builtin_scenario;
    use crate::rational::int;

    #[test]
    fn builtin_round_trips() {
        for name in crate::arcs::BUILTIN_SCENARIOS {
            let s = builtin_scenario(name).unwrap();
            let text = scenario_to_string(&s);
            let (parsed, warnings) = parse_scenario_str(&text).unwrap();
            assert!(warnings.is_empty(), "{name}: {warnings:?}");
            assert_eq!(parsed.name, s.name);
            assert_eq!(parsed.charts, s.charts);
            assert_eq!(parsed.gluing, s.gluing);
            assert_eq!(parsed.k1, s.k1);
            assert_eq!(parsed.sym, s.sym);
            // And the round trip is stable.
            assert_eq!(scenario_to_string(&parsed), text);
        }
    }

    #[test]
    fn bad_row_sum_is_named() {
        let s = builtin_scenario("genus2-figure8-noflip").unwrap();
        let mut doc: serde_json::Value =
            serde_json::from_str(&scenario_to_string(&s)).unwrap();
        doc["charts"][0]["incidence"][0][1] = 0.into();
        let err = parse_scenario_str(&doc.to_string()).unwrap_err().to_string();
        assert!(err.contains("chart 1"), "{err}");
        assert!(err.contains("row 1"), "{err}");
    }

    #[test]
    fn missing_constants_default_with_warning() {
        let s = builtin_scenario("genus2-figure8-noflip").unwrap();
        let text = scenario_to_string(&s);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut doc = doc;
        doc.as_object_mut().unwrap().remove("constants");
        let (parsed, warnings) = parse_scenario_str(&doc.to_string()).unwrap();
        assert_eq!(parsed.k1, int(1));
        assert_eq!(parsed.sym, 1);
        assert_eq!(warnings.len(), 3);
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_scenario_str("{ not json").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn phispec_parses() {
        let text = r#"{ "name": "onearc", "charts": [
            { "iota": [1], "incidence": [[1, 1]] } ] }"#;
        let spec = parse_phispec_str(text).unwrap();
        assert_eq!(spec.r(), 1);
        assert_eq!(spec.n_prime, 0);
        assert!(parse_phispec_str("{}").is_err());
    }

    #[test]
    fn unknown_orbit_rejected() {
        let s = builtin_scenario("genus2-figure8-noflip").unwrap();
        let text = scenario_to_string(&s).replace("\"b2\"", "\"b9\"");
        assert!(parse_scenario_str(&text).is_err());
    }
}
