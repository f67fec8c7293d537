//! Maximal arc-system charts, boundary identifications (flips), and the
//! scenario data tying a curve's local type to its realization.
//!
//! A chart records, for each arc, which boundary components of the
//! hyperbolic part it touches (with multiplicity; every arc has two
//! endpoints) and how often it crosses the reference curve. Annular
//! components each carry a single weight coordinate crossing the curve
//! once; the flip exchanges their two boundary circles by definition, so
//! only the identifications among hyperbolic boundaries need recording.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::{int, Rational};
use crate::volume::{SurfaceComponent, SurfaceType};
use num::{One, Signed};
use std::collections::{BTreeMap, BTreeSet};

/// One maximal arc system on the hyperbolic part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcChart {
    /// `r x n` incidence: `incidence[i][j]` counts endpoints of arc `i` on
    /// boundary `j`; every row sums to 2.
    pub incidence: Vec<Vec<u8>>,
    /// Crossing numbers with the reference curve, one per arc, all >= 1.
    pub iota: Vec<u64>,
    /// Order of the chart's stabilizer in the pure mapping class group.
    pub stabilizer_order: u64,
}

impl ArcChart {
    pub fn new(incidence: Vec<Vec<u8>>, iota: Vec<u64>, stabilizer_order: u64) -> Result<Self> {
        if incidence.len() != iota.len() {
            return Err(Error::InvalidChart(format!(
                "{} incidence rows but {} crossing numbers",
                incidence.len(),
                iota.len()
            )));
        }
        let n = incidence.first().map(|r| r.len()).unwrap_or(0);
        for (i, row) in incidence.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidChart(format!(
                    "row {} has ragged length",
                    i + 1
                )));
            }
            if row.iter().any(|&c| c > 2) {
                return Err(Error::InvalidChart(format!(
                    "row {} has an entry above 2",
                    i + 1
                )));
            }
            let sum: u32 = row.iter().map(|&c| c as u32).sum();
            if sum != 2 {
                return Err(Error::InvalidChart(format!(
                    "row {} sums to {sum}, arcs have exactly two endpoints",
                    i + 1
                )));
            }
        }
        if let Some(i) = iota.iter().position(|&x| x == 0) {
            return Err(Error::InvalidChart(format!(
                "arc {} does not cross the curve; charts of filling curves have iota >= 1",
                i + 1
            )));
        }
        if stabilizer_order == 0 {
            return Err(Error::InvalidChart(
                "stabilizer order must be positive".into(),
            ));
        }
        Ok(ArcChart {
            incidence,
            iota,
            stabilizer_order,
        })
    }

    /// The chart with no arcs (entirely annular scenarios).
    pub fn empty() -> Self {
        ArcChart {
            incidence: Vec::new(),
            iota: Vec::new(),
            stabilizer_order: 1,
        }
    }

    pub fn num_arcs(&self) -> usize {
        self.iota.len()
    }

    pub fn num_boundaries(&self) -> usize {
        self.incidence.first().map(|r| r.len()).unwrap_or(0)
    }

    /// A boundary component no arc touches; such a chart is non-filling and
    /// frequency computations reject it.
    pub fn zero_column(&self) -> Option<usize> {
        (0..self.num_boundaries()).find(|&j| self.incidence.iter().all(|row| row[j] == 0))
    }

    /// `b_j(x) = sum_i c_{i,j} x_i` as a polynomial in `x1..xr`.
    pub fn boundary_form(&self, j: usize) -> Result<MultiPoly> {
        if j >= self.num_boundaries() {
            return Err(Error::Domain(format!(
                "boundary index {} out of range 0..{}",
                j,
                self.num_boundaries()
            )));
        }
        let mut acc = MultiPoly::zero();
        for (i, row) in self.incidence.iter().enumerate() {
            if row[j] > 0 {
                acc = acc.add(&MultiPoly::var(&format!("x{}", i + 1)).scale(&int(row[j] as i64)));
            }
        }
        Ok(acc)
    }

    /// `I(x, y) = sum_i iota_i x_i + sum_k y_k`; annular coordinates cross
    /// the curve once each.
    pub fn intersection_form(&self, n_prime: usize) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (i, &iota) in self.iota.iter().enumerate() {
            acc = acc.add(&MultiPoly::var(&format!("x{}", i + 1)).scale(&int(iota as i64)));
        }
        for k in 0..n_prime {
            acc = acc.add(&MultiPoly::var(&format!("y{}", k + 1)));
        }
        acc
    }
}

/// Boundary identifications among hyperbolic boundary components.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlipSpec {
    /// Disjoint 0-based index pairs `(j, j')` with `j < j'`.
    pub pairs: Vec<(usize, usize)>,
}

impl FlipSpec {
    pub fn identity() -> Self {
        FlipSpec::default()
    }

    pub fn new(pairs: Vec<(usize, usize)>, n_boundary: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::new();
        for (a, b) in pairs {
            if a == b || a >= n_boundary || b >= n_boundary {
                return Err(Error::InvalidScenario(format!(
                    "flip pair ({a}, {b}) is not a valid involution on {n_boundary} boundaries"
                )));
            }
            if !seen.insert(a) || !seen.insert(b) {
                return Err(Error::InvalidScenario(
                    "flip pairs must be disjoint (order <= 2)".into(),
                ));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        Ok(FlipSpec { pairs: normalized })
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A flip-invariant slice of a chart, parametrized by a basis of its
/// integer lattice. Parameters map bijectively onto the integer points of
/// the slice, and the non-negative parameter orthant onto the slice's
/// intersection with the chart cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSlice {
    /// Basis vectors, one per free parameter, entries non-negative.
    pub basis: Vec<Vec<u64>>,
    /// Coordinates identically zero on the slice.
    pub forced_zero: Vec<usize>,
}

impl FlipSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Arc weights `x = B u` as polynomials in the parameters `x1..xk`.
    pub fn coordinate_forms(&self, num_arcs: usize) -> Vec<MultiPoly> {
        (0..num_arcs)
            .map(|i| {
                let mut acc = MultiPoly::zero();
                for (j, v) in self.basis.iter().enumerate() {
                    if v[i] > 0 {
                        acc = acc
                            .add(&MultiPoly::var(&format!("x{}", j + 1)).scale(&int(v[i] as i64)));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Result of constraining a chart to the flip-invariant locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceResult {
    Full(FlipSlice),
    /// The slice has smaller dimension than the flip-constrained arc
    /// complex; the chart contributes measure zero.
    MeasureZero {
        dimension: usize,
    },
}

/// The subspace `{x >= 0 : b(x) flip-invariant}` of a chart, parametrized
/// by a basis of its integer lattice, or `MeasureZero` when its dimension
/// drops below `r - #pairs`, the dimension of the flip-constrained arc
/// complex restricted to the hyperbolic part.
pub fn flip_constrain(chart: &ArcChart, flip: &FlipSpec) -> Result<SliceResult> {
    let r = chart.num_arcs();
    for &(a, b) in &flip.pairs {
        if a >= chart.num_boundaries() || b >= chart.num_boundaries() {
            return Err(Error::InvalidScenario(format!(
                "flip pair ({a}, {b}) out of range for a chart with {} boundaries",
                chart.num_boundaries()
            )));
        }
    }
    let expected_dim = r - flip.pairs.len();

    // Difference rows b_j - b_j' = 0.
    let rows: Vec<Vec<i64>> = flip
        .pairs
        .iter()
        .map(|&(a, b)| {
            (0..r)
                .map(|i| chart.incidence[i][a] as i64 - chart.incidence[i][b] as i64)
                .collect()
        })
        .collect();

    // Coordinates forced to zero: a row whose surviving coefficients share
    // one sign kills them all, repeatedly.
    let mut zeroed = vec![false; r];
    loop {
        let mut changed = false;
        for row in &rows {
            let active: Vec<usize> = (0..r).filter(|&i| !zeroed[i] && row[i] != 0).collect();
            if active.is_empty() {
                continue;
            }
            let pos = active.iter().any(|&i| row[i] > 0);
            let neg = active.iter().any(|&i| row[i] < 0);
            if pos != neg {
                for &i in &active {
                    zeroed[i] = true;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let active: Vec<usize> = (0..r).filter(|&i| !zeroed[i]).collect();
    let restricted: Vec<Vec<i64>> = rows
        .iter()
        .map(|row| active.iter().map(|&i| row[i]).collect())
        .collect();
    let kernel = integer_kernel_basis(&restricted, active.len());

    if kernel.len() < expected_dim {
        return Ok(SliceResult::MeasureZero {
            dimension: kernel.len(),
        });
    }

    // Certify the orthant structure: non-negative basis with a witness
    // coordinate per parameter.
    let mut basis: Vec<Vec<u64>> = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let flipped: Vec<i64> = if v.iter().all(|&x| x <= 0) {
            v.iter().map(|&x| -x).collect()
        } else {
            v.clone()
        };
        if flipped.iter().any(|&x| x < 0) {
            return Err(Error::UnsupportedSlice(
                "lattice basis of the flip slice has mixed signs".into(),
            ));
        }
        let mut full = vec![0u64; r];
        for (pos, &i) in active.iter().enumerate() {
            full[i] = flipped[pos] as u64;
        }
        basis.push(full);
    }
    for (j, v) in basis.iter().enumerate() {
        let witness = (0..r)
            .any(|i| v[i] > 0 && basis.iter().enumerate().all(|(j2, w)| j2 == j || w[i] == 0));
        if !witness {
            return Err(Error::UnsupportedSlice(format!(
                "parameter {} has no witness coordinate",
                j + 1
            )));
        }
    }
    // Every active coordinate must be hit by some basis vector; silent
    // columns are really forced zeros the loop missed.
    let mut forced_zero: Vec<usize> = (0..r).filter(|&i| zeroed[i]).collect();
    for &i in &active {
        if basis.iter().all(|v| v[i] == 0) {
            forced_zero.push(i);
        }
    }
    forced_zero.sort_unstable();
    basis.sort_by(|a, b| b.cmp(a));
    Ok(SliceResult::Full(FlipSlice { basis, forced_zero }))
}

/// Basis of `{x in Z^m : rows . x = 0}` via Hermite reduction with a
/// transformation matrix.
fn integer_kernel_basis(rows: &[Vec<i64>], m: usize) -> Vec<Vec<i64>> {
    let d = rows.len();
    // Work on the transpose: m rows of length d, tracking U with U A^T = H.
    let mut h: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..d).map(|j| rows[j][i]).collect())
        .collect();
    let mut u: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut pivot = 0usize;
    for col in 0..d {
        loop {
            let mut best: Option<usize> = None;
            for i in pivot..m {
                if h[i][col] != 0 && best.is_none_or(|b: usize| h[i][col].abs() < h[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot, b);
            u.swap(pivot, b);
            let mut done = true;
            for i in pivot + 1..m {
                let q = h[i][col] / h[pivot][col];
                if q != 0 {
                    for c in 0..d {
                        h[i][c] -= q * h[pivot][c];
                    }
                    for c in 0..m {
                        u[i][c] -= q * u[pivot][c];
                    }
                }
                if h[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot < m && h[pivot][col] != 0 {
            pivot += 1;
        }
        if pivot == m {
            break;
        }
    }
    (pivot..m).map(|i| u[i].clone()).collect()
}

/// Admissibility of an integer boundary vector for `Z`: non-negative and
/// integral, even total over each connected component, equal entries on the
/// two boundaries of each annular component. Zero entries pass these
/// conditions but are degenerate: no filling system reaches them.
pub fn admissible(z: &SurfaceType, b: &[i64]) -> bool {
    let labels = z.boundary_labels();
    if b.len() != labels.len() {
        return false;
    }
    if b.iter().any(|&x| x < 0) {
        return false;
    }
    let mut offset = 0usize;
    for c in &z.components {
        let k = c.boundary_labels().len();
        let slice = &b[offset..offset + k];
        match c {
            SurfaceComponent::Hyperbolic { .. } => {
                if slice.iter().sum::<i64>() % 2 != 0 {
                    return false;
                }
            }
            SurfaceComponent::Annulus { .. } => {
                if slice[0] != slice[1] {
                    return false;
                }
            }
        }
        offset += k;
    }
    true
}

/// True when some entry is zero: admissible by the parity conditions but
/// outside the support of filling arc systems.
pub fn degenerate(b: &[i64]) -> bool {
    b.iter().any(|&x| x == 0)
}

/// A boundary orbit of the filled subsurface under the flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orbit {
    /// A hyperbolic boundary the flip fixes (0-based index).
    FixedHyp(usize),
    /// Two hyperbolic boundaries the flip exchanges.
    FlippedHyp(usize, usize),
    /// An annular component (0-based index among annuli).
    Annulus(usize),
}

/// A local type plus realization: everything a frequency computation needs.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    /// Euler characteristic of the hyperbolic part of the filled subsurface.
    pub chi_sigma: i64,
    /// Number of boundary components of the hyperbolic part.
    pub n_boundary: usize,
    /// Number of annular components.
    pub n_prime: usize,
    pub flip: FlipSpec,
    /// The finite catalog of maximal arc systems of the hyperbolic part.
    pub charts: Vec<ArcChart>,
    /// The complement surface with labeled boundaries.
    pub z: SurfaceType,
    /// For each boundary label of `z`, the orbit it is glued to.
    pub gluing: BTreeMap<String, Orbit>,
    pub sym: u64,
    pub k1: Rational,
    pub k2: Rational,
    /// Self-intersection number of the curve, when declared.
    pub self_intersection: Option<u64>,
}

impl Scenario {
    /// All flip orbits of the boundary of the filled subsurface, in a fixed
    /// order: fixed hyperbolic, flipped pairs, then annuli.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut paired = vec![false; self.n_boundary];
        for &(a, b) in &self.flip.pairs {
            paired[a] = true;
            paired[b] = true;
        }
        let mut orbits: Vec<Orbit> = (0..self.n_boundary)
            .filter(|&j| !paired[j])
            .map(Orbit::FixedHyp)
            .collect();
        orbits.extend(
            self.flip
                .pairs
                .iter()
                .map(|&(a, b)| Orbit::FlippedHyp(a, b)),
        );
        orbits.extend((0..self.n_prime).map(Orbit::Annulus));
        orbits
    }

    /// Ambient genus, from `chi(X) = chi(Sigma) + chi(Z)`.
    pub fn ambient_genus(&self) -> u32 {
        let chi_x = self.chi_sigma + self.z.euler_characteristic();
        debug_assert!(chi_x % 2 == 0 && chi_x < 0);
        (1 - chi_x / 2) as u32
    }

    pub fn validate(&self) -> Result<()> {
        let expected_arcs = (3 * (-self.chi_sigma).max(0)) as usize;
        if self.charts.is_empty() {
            return Err(Error::InvalidScenario(
                "a scenario needs at least one chart (use the empty chart when \
                 the curve is a simple multicurve)"
                    .into(),
            ));
        }
        for (idx, chart) in self.charts.iter().enumerate() {
            if chart.num_arcs() != expected_arcs {
                return Err(Error::InvalidScenario(format!(
                    "chart {} has {} arcs; a maximal system on a surface with \
                     chi = {} has {}",
                    idx + 1,
                    chart.num_arcs(),
                    self.chi_sigma,
                    expected_arcs
                )));
            }
            if chart.num_arcs() > 0 && chart.num_boundaries() != self.n_boundary {
                return Err(Error::InvalidScenario(format!(
                    "chart {} sees {} boundaries, scenario declares {}",
                    idx + 1,
                    chart.num_boundaries(),
                    self.n_boundary
                )));
            }
            if let Some(j) = chart.zero_column() {
                return Err(Error::InvalidScenario(format!(
                    "chart {} is non-filling: no arc touches boundary {}",
                    idx + 1,
                    j + 1
                )));
            }
        }
        FlipSpec::new(self.flip.pairs.clone(), self.n_boundary.max(1))?;
        if self.sym == 0 {
            return Err(Error::InvalidScenario("sym must be positive".into()));
        }
        if !self.k1.is_positive() || !self.k2.is_positive() {
            return Err(Error::InvalidScenario("k1 and k2 must be positive".into()));
        }

        // Gluing consistency: |bd Z| = |Gamma_fix| + 2 |Gamma_ann|.
        let z_labels: BTreeSet<String> = self
            .z
            .boundary_labels()
            .iter()
            .map(|s| s.to_string())
            .collect();
        let glued: BTreeSet<String> = self.gluing.keys().cloned().collect();
        if z_labels != glued {
            return Err(Error::InvalidScenario(format!(
                "gluing keys {glued:?} do not match the boundary labels {z_labels:?} of Z"
            )));
        }
        let mut counts: BTreeMap<Orbit, usize> = BTreeMap::new();
        for orbit in self.gluing.values() {
            *counts.entry(*orbit).or_insert(0) += 1;
        }
        for orbit in self.orbits() {
            let got = counts.remove(&orbit).unwrap_or(0);
            let want = match orbit {
                Orbit::FixedHyp(_) => 1,
                Orbit::FlippedHyp(..) => 0,
                Orbit::Annulus(_) => 2,
            };
            if got != want {
                return Err(Error::InvalidScenario(format!(
                    "orbit {orbit:?} glues to {got} boundaries of Z, expected {want}"
                )));
            }
        }
        if let Some((orbit, _)) = counts.into_iter().next() {
            return Err(Error::InvalidScenario(format!(
                "gluing references unknown orbit {orbit:?}"
            )));
        }

        // Self-intersection bound for essential local types:
        // chi(Sigma) + mu_0 <= K.
        if let Some(k) = self.self_intersection {
            if self.flip.is_identity() {
                if let Some((_, mu0)) = self.iota0_mu0() {
                    let lhs = self.chi_sigma + mu0 as i64;
                    if lhs > k as i64 {
                        return Err(Error::InvalidScenario(format!(
                            "chi(Sigma) + mu_0 = {lhs} exceeds the declared \
                             self-intersection number {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Minimal crossing number over all arcs of all charts, and the largest
    /// number of arcs realizing it within one chart. `None` when no chart
    /// has arcs.
    pub fn iota0_mu0(&self) -> Option<(u64, usize)> {
        let iota0 = self
            .charts
            .iter()
            .flat_map(|c| c.iota.iter().copied())
            .min()?;
        let mu0 = self
            .charts
            .iter()
            .map(|c| c.iota.iter().filter(|&&x| x == iota0).count())
            .max()
            .unwrap_or(0);
        Some((iota0, mu0))
    }
}

/// The four maximal arc systems of a pair of pants filled by a figure-eight
/// curve, with the incidences and crossing numbers of its chart table.
pub fn pants_figure8_charts() -> Vec<ArcChart> {
    let chart =
        |incidence: Vec<Vec<u8>>, iota: Vec<u64>| ArcChart::new(incidence, iota, 1).unwrap();
    vec![
        // alpha_1: b = (x1+x3, x1+x2, x2+x3), I = x1 + x2 + 2 x3
        chart(
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            vec![1, 1, 2],
        ),
        // alpha_2: b = (x1+2x2+x3, x1, x3), I = x1 + 2 x2 + 2 x3
        chart(
            vec![vec![1, 1, 0], vec![2, 0, 0], vec![1, 0, 1]],
            vec![1, 2, 2],
        ),
        // alpha_3: b = (x3, x2, 2x1+x2+x3), I = 2 x1 + x2 + 2 x3
        chart(
            vec![vec![0, 0, 2], vec![0, 1, 1], vec![1, 0, 1]],
            vec![2, 1, 2],
        ),
        // alpha_4: b = (x1, x1+x2+2x3, x2), I = x1 + x2 + 2 x3
        chart(
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 2, 0]],
            vec![1, 1, 2],
        ),
    ]
}

/// Catalog fragments by name.
pub fn builtin_catalog(name: &str) -> Result<Vec<ArcChart>> {
    match name {
        "pants_figure8" => Ok(pants_figure8_charts()),
        // A single annulus: no hyperbolic arcs, one weight coordinate with
        // crossing number one (carried by n_prime = 1 in scenarios).
        "annulus_simple" => Ok(vec![ArcChart::empty()]),
        _ => Err(Error::Domain(format!("unknown catalog `{name}`"))),
    }
}

fn genus2_figure8(
    name: &str,
    flip: FlipSpec,
    z: SurfaceType,
    gluing: Vec<(&str, Orbit)>,
    sym: u64,
    k1: i64,
    k2: i64,
) -> Scenario {
    Scenario {
        name: name.to_string(),
        chi_sigma: -1,
        n_boundary: 3,
        n_prime: 0,
        flip,
        charts: pants_figure8_charts(),
        z,
        gluing: gluing
            .into_iter()
            .map(|(l, o)| (l.to_string(), o))
            .collect(),
        sym,
        k1: int(k1),
        k2: int(k2),
        self_intersection: Some(1),
    }
}

/// Built-in scenarios reproducing the genus-2 computations: the figure-eight
/// local types (constants from the realization table) and the two simple
/// curves.
pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    let s = match name {
        "genus2-figure8-noflip" => genus2_figure8(
            name,
            FlipSpec::identity(),
            SurfaceType::connected(0, &["z1", "z2", "z3"])?,
            vec![
                ("z1", Orbit::FixedHyp(0)),
                ("z2", Orbit::FixedHyp(1)),
                ("z3", Orbit::FixedHyp(2)),
            ],
            2,
            2,
            2,
        ),
        "genus2-figure8-flip13" => genus2_figure8(
            name,
            FlipSpec::new(vec![(0, 2)], 3)?,
            SurfaceType::connected(1, &["z1"])?,
            vec![("z1", Orbit::FixedHyp(1))],
            2,
            1,
            2,
        ),
        "genus2-figure8-flip12" => genus2_figure8(
            name,
            FlipSpec::new(vec![(0, 1)], 3)?,
            SurfaceType::connected(1, &["z1"])?,
            vec![("z1", Orbit::FixedHyp(2))],
            1,
            2,
            2,
        ),
        "genus2-simple-ns" => Scenario {
            name: name.to_string(),
            chi_sigma: 0,
            n_boundary: 0,
            n_prime: 1,
            flip: FlipSpec::identity(),
            charts: vec![ArcChart::empty()],
            z: SurfaceType::connected(1, &["z1", "z2"])?,
            gluing: [
                ("z1".to_string(), Orbit::Annulus(0)),
                ("z2".to_string(), Orbit::Annulus(0)),
            ]
            .into_iter()
            .collect(),
            sym: 2,
            k1: Rational::one(),
            k2: int(2),
            self_intersection: Some(0),
        },
        "genus2-simple-sep" => Scenario {
            name: name.to_string(),
            chi_sigma: 0,
            n_boundary: 0,
            n_prime: 1,
            flip: FlipSpec::identity(),
            charts: vec![ArcChart::empty()],
            z: SurfaceType::new(vec![
                SurfaceComponent::hyperbolic(1, &["z1"]),
                SurfaceComponent::hyperbolic(1, &["z2"]),
            ])?,
            gluing: [
                ("z1".to_string(), Orbit::Annulus(0)),
                ("z2".to_string(), Orbit::Annulus(0)),
            ]
            .into_iter()
            .collect(),
            sym: 2,
            k1: Rational::one(),
            k2: Rational::one(),
            self_intersection: Some(0),
        },
        _ => {
            return Err(Error::Domain(format!(
                "unknown built-in scenario `{name}`; known: genus2-figure8-noflip, \
                 genus2-figure8-flip13, genus2-figure8-flip12, genus2-simple-ns, \
                 genus2-simple-sep"
            )))
        }
    };
    s.validate()?;
    Ok(s)
}

pub const BUILTIN_SCENARIOS: [&str; 5] = [
    "genus2-figure8-noflip",
    "genus2-figure8-flip13",
    "genus2-figure8-flip12",
    "genus2-simple-ns",
    "genus2-simple-sep",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn charts() -> Vec<ArcChart> {
        pants_figure8_charts()
    }

    #[test]
    fn chart_validation() {
        assert!(ArcChart::new(vec![vec![1, 0, 0]], vec![1], 1).is_err()); // row sum 1
        assert!(ArcChart::new(vec![vec![1, 1, 0]], vec![0], 1).is_err()); // iota 0
        assert!(ArcChart::new(vec![vec![2, 1]], vec![1], 1).is_err()); // row sum 3
        assert!(ArcChart::new(vec![vec![1, 1]], vec![1], 0).is_err()); // stab 0
    }

    #[test]
    fn boundary_forms_match_chart_table() {
        let cs = charts();
        // alpha_1, boundary 1: x1 + x3.
        let b = cs[0].boundary_form(0).unwrap();
        assert_eq!(b.to_string(), "1 * x1 + 1 * x3");
        // alpha_2, boundary 1: x1 + 2 x2 + x3.
        let b = cs[1].boundary_form(0).unwrap();
        assert_eq!(b.to_string(), "1 * x1 + 2 * x2 + 1 * x3");
        // alpha_4 boundary forms: (x1, x1 + x2 + 2 x3, x2).
        assert_eq!(cs[3].boundary_form(0).unwrap().to_string(), "1 * x1");
        assert_eq!(
            cs[3].boundary_form(1).unwrap().to_string(),
            "1 * x1 + 1 * x2 + 2 * x3"
        );
        assert_eq!(cs[3].boundary_form(2).unwrap().to_string(), "1 * x2");
        assert!(cs[0].boundary_form(3).is_err());
    }

    #[test]
    fn intersection_forms_match_chart_table() {
        let cs = charts();
        assert_eq!(
            cs[0].intersection_form(0).to_string(),
            "1 * x1 + 1 * x2 + 2 * x3"
        );
        assert_eq!(
            cs[2].intersection_form(0).to_string(),
            "2 * x1 + 1 * x2 + 2 * x3"
        );
        // Two annuli, no hyperbolic arcs.
        assert_eq!(
            ArcChart::empty().intersection_form(2).to_string(),
            "1 * y1 + 1 * y2"
        );
    }

    #[test]
    fn endpoint_count_identity() {
        // Each arc has two endpoints: sum_j b_j(x) = 2 sum_i x_i.
        for chart in charts() {
            let mut total = MultiPoly::zero();
            for j in 0..chart.num_boundaries() {
                total = total.add(&chart.boundary_form(j).unwrap());
            }
            let mut expected = MultiPoly::zero();
            for i in 0..chart.num_arcs() {
                expected = expected.add(&MultiPoly::var(&format!("x{}", i + 1)).scale(&int(2)));
            }
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn flip_identity_gives_unit_basis() {
        let cs = charts();
        let SliceResult::Full(slice) = flip_constrain(&cs[0], &FlipSpec::identity()).unwrap()
        else {
            panic!("identity flip must be full");
        };
        assert_eq!(slice.dimension(), 3);
        assert!(slice.forced_zero.is_empty());
        let forms = slice.coordinate_forms(3);
        assert_eq!(forms[0].to_string(), "1 * x1");
        assert_eq!(forms[2].to_string(), "1 * x3");
    }

    #[test]
    fn flip13_on_alpha1_identifies_first_two_weights() {
        let cs = charts();
        let flip = FlipSpec::new(vec![(0, 2)], 3).unwrap();
        let SliceResult::Full(slice) = flip_constrain(&cs[0], &flip).unwrap() else {
            panic!("alpha_1 slice is full");
        };
        assert_eq!(slice.dimension(), 2);
        assert_eq!(slice.basis, vec![vec![1, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn flip13_on_alpha2_is_measure_zero() {
        let cs = charts();
        let flip = FlipSpec::new(vec![(0, 2)], 3).unwrap();
        assert_eq!(
            flip_constrain(&cs[1], &flip).unwrap(),
            SliceResult::MeasureZero { dimension: 1 }
        );
        // alpha_3 degenerates the same way.
        assert_eq!(
            flip_constrain(&cs[2], &flip).unwrap(),
            SliceResult::MeasureZero { dimension: 1 }
        );
    }

    #[test]
    fn flip12_slices() {
        let cs = charts();
        let flip = FlipSpec::new(vec![(0, 1)], 3).unwrap();
        // alpha_1: x2 = x3.
        let SliceResult::Full(slice) = flip_constrain(&cs[0], &flip).unwrap() else {
            panic!()
        };
        assert_eq!(slice.basis, vec![vec![1, 0, 0], vec![0, 1, 1]]);
        // alpha_2 and alpha_4 are measure zero.
        assert!(matches!(
            flip_constrain(&cs[1], &flip).unwrap(),
            SliceResult::MeasureZero { .. }
        ));
        assert!(matches!(
            flip_constrain(&cs[3], &flip).unwrap(),
            SliceResult::MeasureZero { .. }
        ));
    }

    #[test]
    fn lattice_parametrization_bijective_by_enumeration() {
        // Integer points of {x >= 0 : x1 = x2} with sum <= 10 are exactly
        // the images of integer parameters, once each.
        let cs = charts();
        let flip = FlipSpec::new(vec![(0, 2)], 3).unwrap();
        let SliceResult::Full(slice) = flip_constrain(&cs[0], &flip).unwrap() else {
            panic!()
        };
        let mut from_params = BTreeSet::new();
        for u1 in 0u64..=10 {
            for u2 in 0u64..=10 {
                let x: Vec<u64> = (0..3)
                    .map(|i| slice.basis[0][i] * u1 + slice.basis[1][i] * u2)
                    .collect();
                if x.iter().sum::<u64>() <= 10 {
                    assert!(from_params.insert(x), "parametrization not injective");
                }
            }
        }
        let mut direct = BTreeSet::new();
        for x1 in 0u64..=10 {
            for x2 in 0u64..=10 {
                for x3 in 0u64..=10 {
                    if x1 + x2 + x3 <= 10 && x1 == x2 {
                        direct.insert(vec![x1, x2, x3]);
                    }
                }
            }
        }
        assert_eq!(from_params, direct);
    }

    #[test]
    fn admissible_cases() {
        let z = SurfaceType::connected(0, &["z1", "z2", "z3"]).unwrap();
        assert!(admissible(&z, &[1, 1, 2]));
        assert!(!admissible(&z, &[1, 1, 1])); // odd sum
        assert!(admissible(&z, &[0, 0, 0])); // passes conditions
        assert!(degenerate(&[0, 0, 0])); // but degenerate
        assert!(!admissible(&z, &[-1, 1, 0]));
        // Per-component parity.
        let z2 = SurfaceType::new(vec![
            SurfaceComponent::hyperbolic(1, &["a"]),
            SurfaceComponent::hyperbolic(1, &["b"]),
        ])
        .unwrap();
        assert!(admissible(&z2, &[2, 4]));
        assert!(!admissible(&z2, &[1, 3])); // per-component sums odd
                                            // Annulus equality.
        let z3 = SurfaceType::new(vec![SurfaceComponent::Annulus {
            boundary: ("a1".into(), "a2".into()),
        }])
        .unwrap();
        assert!(admissible(&z3, &[3, 3]));
        assert!(!admissible(&z3, &[2, 3]));
    }

    #[test]
    fn catalogs() {
        assert_eq!(builtin_catalog("pants_figure8").unwrap().len(), 4);
        assert_eq!(builtin_catalog("annulus_simple").unwrap()[0].num_arcs(), 0);
        assert!(builtin_catalog("torus").is_err());
    }

    #[test]
    fn builtin_scenarios_validate() {
        for name in BUILTIN_SCENARIOS {
            let s = builtin_scenario(name).unwrap();
            assert_eq!(s.ambient_genus(), 2, "{name}");
        }
    }

    #[test]
    fn scenario_rejects_nonfilling_chart() {
        let mut s = builtin_scenario("genus2-figure8-noflip").unwrap();
        // An arc system missing boundary 3 entirely.
        s.charts[0] = ArcChart::new(
            vec![vec![1, 1, 0], vec![1, 1, 0], vec![2, 0, 0]],
            vec![1, 1, 1],
            1,
        )
        .unwrap();
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("non-filling"));
    }

    #[test]
    fn scenario_rejects_bad_gluing() {
        let mut s = builtin_scenario("genus2-figure8-flip13").unwrap();
        s.gluing.insert("z1".into(), Orbit::FixedHyp(0));
        assert!(s.validate().is_err());
    }

    #[test]
    fn scenario_chi_mu_bound() {
        // Declaring K = 0 on the figure-eight makes chi + mu_0 = -1 + 2 = 1
        // exceed K.
        let mut s = builtin_scenario("genus2-figure8-noflip").unwrap();
        s.self_intersection = Some(0);
        assert!(s.validate().is_err());
        // The true K = 1 passes.
        s.self_intersection = Some(1);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn iota_mu_of_figure8() {
        let s = builtin_scenario("genus2-figure8-noflip").unwrap();
        assert_eq!(s.iota0_mu0(), Some((1, 2)));
    }
}
