//! Ribbon graphs and integral metric ribbon-graph counts.
//!
//! A ribbon graph is stored as a pair of permutations on half-edges
//! `0..2E`: the fixed pairing `alpha(h) = h xor 1` and a vertex rotation
//! `nu` whose cycles are the vertices in counterclockwise order. Faces are
//! the cycles of `nu . alpha`; boundary lengths of a metric sum the edge
//! lengths along each face walk, so an edge traversed twice by one face
//! counts twice.
//!
//! The lattice count `N_Z(b)` sums, over isomorphism classes of labeled
//! ribbon graphs of type `Z` with every vertex of degree at least three,
//! the number of positive integral metrics with boundary lengths `b`,
//! weighted by `1/#Aut`. Positive lengths on all-valence graphs make each
//! integral arc system count exactly once: configurations with shrunk
//! edges are the positive metrics of the contracted graph.

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::tau::TauEngine;
use crate::volume::{SurfaceComponent, SurfaceType};
use num::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// One isomorphism class of connected ribbon graphs with labeled boundary
/// faces.
#[derive(Debug, Clone)]
pub struct RibbonGraph {
    /// Vertex rotation: next half-edge counterclockwise at the same vertex.
    pub vertex_next: Vec<usize>,
    pub num_edges: usize,
    pub num_vertices: usize,
    pub genus: u32,
    /// Face cycles of half-edges, indexed by boundary label.
    pub faces: Vec<Vec<usize>>,
    /// Order of the label-preserving automorphism group.
    pub aut_order: u64,
}

impl RibbonGraph {
    pub fn num_boundaries(&self) -> usize {
        self.faces.len()
    }

    /// `V - E + n = 2 - 2g`, traced from the stored data.
    pub fn euler_identity_holds(&self) -> bool {
        self.num_vertices as i64 - self.num_edges as i64 + self.faces.len() as i64
            == 2 - 2 * self.genus as i64
    }

    /// How many half-edges of each face walk lie on each edge.
    fn face_edge_multiplicities(&self) -> Vec<Vec<u32>> {
        self.faces
            .iter()
            .map(|cycle| {
                let mut mult = vec![0u32; self.num_edges];
                for &h in cycle {
                    mult[h / 2] += 1;
                }
                mult
            })
            .collect()
    }

    /// Number of positive integral metrics with the given boundary lengths.
    pub fn count_metrics(&self, b: &[i64]) -> u64 {
        assert_eq!(b.len(), self.faces.len());
        if b.iter().any(|&x| x < 1) {
            return 0;
        }
        let mult = self.face_edge_multiplicities();
        // Each edge appears in face walks exactly twice in total, so the
        // metric total is forced.
        let total: i64 = b.iter().sum();
        if total % 2 != 0 {
            return 0;
        }
        let mut count = 0u64;
        let mut m = vec![0i64; self.num_edges];
        self.count_metrics_rec(&mult, b, 0, &mut m, &mut count);
        count
    }

    fn count_metrics_rec(
        &self,
        mult: &[Vec<u32>],
        b: &[i64],
        e: usize,
        m: &mut Vec<i64>,
        count: &mut u64,
    ) {
        // Residual face budgets given edges assigned so far.
        let mut residual = vec![0i64; b.len()];
        let mut min_needed = vec![0i64; b.len()];
        for j in 0..b.len() {
            let used: i64 = (0..e).map(|i| mult[j][i] as i64 * m[i]).sum();
            residual[j] = b[j] - used;
            if residual[j] < 0 {
                return;
            }
            min_needed[j] = (e..self.num_edges).map(|i| mult[j][i] as i64).sum();
        }
        if e == self.num_edges {
            if residual.iter().all(|&r| r == 0) {
                *count += 1;
            }
            return;
        }
        // Upper bound for this edge from every face containing it.
        let mut max_val = i64::MAX;
        for j in 0..b.len() {
            let mj = mult[j][e] as i64;
            if mj > 0 {
                // Other remaining edges of face j still need length >= 1 each.
                let others = min_needed[j] - mj;
                max_val = max_val.min((residual[j] - others) / mj);
            }
        }
        if max_val == i64::MAX {
            // An isolated edge cannot happen in a connected graph with faces.
            max_val = 0;
        }
        for v in 1..=max_val.max(0) {
            m[e] = v;
            self.count_metrics_rec(mult, b, e + 1, m, count);
        }
        m[e] = 0;
    }
}

/// Refuse enumerations beyond this many edges.
pub const MAX_EDGES: usize = 18;

/// Rooted traversal word; equal words mean label-preserving rooted
/// isomorphism.
fn root_word(nu: &[usize], face_label: &[usize], root: usize) -> Vec<u32> {
    let n = nu.len();
    let mut index = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    index[root] = 0;
    order.push(root);
    let mut next_index = 1usize;
    let mut cursor = 0usize;
    while cursor < order.len() {
        let h = order[cursor];
        cursor += 1;
        for nb in [nu[h], h ^ 1] {
            if index[nb] == usize::MAX {
                index[nb] = next_index;
                next_index += 1;
                order.push(nb);
            }
        }
    }
    let mut word = Vec::with_capacity(3 * n);
    for &h in &order {
        word.push(index[nu[h]] as u32);
        word.push(index[h ^ 1] as u32);
        word.push(face_label[h] as u32);
    }
    word
}

/// Certificate and automorphism order of a labeled connected map.
fn canonical_certificate(nu: &[usize], face_label: &[usize]) -> (Vec<u32>, u64) {
    let mut best: Option<Vec<u32>> = None;
    let mut mult = 0u64;
    for root in 0..nu.len() {
        let w = root_word(nu, face_label, root);
        match &best {
            None => {
                best = Some(w);
                mult = 1;
            }
            Some(b) => match w.cmp(b) {
                std::cmp::Ordering::Less => {
                    best = Some(w);
                    mult = 1;
                }
                std::cmp::Ordering::Equal => mult += 1,
                std::cmp::Ordering::Greater => {}
            },
        }
    }
    (best.unwrap(), mult)
}

fn faces_of(nu: &[usize]) -> Vec<Vec<usize>> {
    let n = nu.len();
    let mut seen = vec![false; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            cycle.push(h);
            h = nu[h ^ 1];
        }
        faces.push(cycle);
    }
    faces
}

fn is_connected(nu: &[usize]) -> bool {
    let n = nu.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    let mut visited = 0usize;
    while let Some(h) = stack.pop() {
        if seen[h] {
            continue;
        }
        seen[h] = true;
        visited += 1;
        stack.push(nu[h]);
        stack.push(h ^ 1);
    }
    visited == n
}

/// Enumerate vertex rotations with exactly `cycles_left` cycles, all of
/// length at least three; each permutation is produced exactly once
/// (cycles led by their minimal element, in increasing order).
fn enumerate_rotations(
    num_half_edges: usize,
    cycles_left: usize,
    trivalent_only: bool,
    assigned: &mut Vec<bool>,
    nu: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let leader = match assigned.iter().position(|&a| !a) {
        None => {
            if cycles_left == 0 {
                emit(nu);
            }
            return;
        }
        Some(l) => l,
    };
    if cycles_left == 0 {
        return;
    }
    let remaining = assigned.iter().filter(|&&a| !a).count();
    let lengths: Vec<usize> = if trivalent_only {
        vec![3]
    } else if cycles_left == 1 {
        if remaining >= 3 {
            vec![remaining]
        } else {
            vec![]
        }
    } else {
        // Leave at least three half-edges for each later cycle.
        let max_len = remaining.saturating_sub(3 * (cycles_left - 1));
        (3..=max_len).collect()
    };
    assigned[leader] = true;
    for len in lengths {
        if len > remaining {
            continue;
        }
        let mut cycle = vec![leader];
        build_cycle(
            num_half_edges,
            cycles_left,
            trivalent_only,
            len,
            assigned,
            nu,
            &mut cycle,
            emit,
        );
    }
    assigned[leader] = false;
}

#[allow(clippy::too_many_arguments)]
fn build_cycle(
    num_half_edges: usize,
    cycles_left: usize,
    trivalent_only: bool,
    target_len: usize,
    assigned: &mut Vec<bool>,
    nu: &mut Vec<usize>,
    cycle: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if cycle.len() == target_len {
        for i in 0..target_len {
            nu[cycle[i]] = cycle[(i + 1) % target_len];
        }
        enumerate_rotations(
            num_half_edges,
            cycles_left - 1,
            trivalent_only,
            assigned,
            nu,
            emit,
        );
        return;
    }
    let leader = cycle[0];
    for h in leader + 1..num_half_edges {
        if !assigned[h] {
            assigned[h] = true;
            cycle.push(h);
            build_cycle(
                num_half_edges,
                cycles_left,
                trivalent_only,
                target_len,
                assigned,
                nu,
                cycle,
                emit,
            );
            cycle.pop();
            assigned[h] = false;
        }
    }
}

fn label_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut out);
    out
}

fn permute(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == perm.len() {
        out.push(perm.clone());
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, out);
        perm.swap(k, i);
    }
}

fn enumerate_maps(g: u32, n: usize, edges: usize, trivalent_only: bool) -> Vec<RibbonGraph> {
    let half = 2 * edges;
    // chi = V - E + n = 2 - 2g pins the vertex count for this edge count.
    let num_vertices_i = 2 - 2 * (g as i64) - n as i64 + edges as i64;
    if num_vertices_i < 1 || (trivalent_only && 3 * num_vertices_i != half as i64) {
        return Vec::new();
    }
    let num_vertices = num_vertices_i as usize;
    if 3 * num_vertices > half {
        return Vec::new();
    }
    let mut found: HashMap<Vec<u32>, RibbonGraph> = HashMap::new();
    let mut assigned = vec![false; half];
    let mut nu = vec![0usize; half];
    enumerate_rotations(
        half,
        num_vertices,
        trivalent_only,
        &mut assigned,
        &mut nu,
        &mut |nu| {
            if !is_connected(nu) {
                return;
            }
            let faces = faces_of(nu);
            if faces.len() != n {
                return;
            }
            for labeling in label_permutations(n) {
                let mut face_label = vec![0usize; half];
                for (f, cycle) in faces.iter().enumerate() {
                    for &h in cycle {
                        face_label[h] = labeling[f];
                    }
                }
                let (cert, aut) = canonical_certificate(nu, &face_label);
                found.entry(cert).or_insert_with(|| {
                    let mut labeled_faces: Vec<Vec<usize>> = vec![Vec::new(); n];
                    for (f, cycle) in faces.iter().enumerate() {
                        labeled_faces[labeling[f]] = cycle.clone();
                    }
                    RibbonGraph {
                        vertex_next: nu.to_vec(),
                        num_edges: edges,
                        num_vertices,
                        genus: g,
                        faces: labeled_faces,
                        aut_order: aut,
                    }
                });
            }
        },
    );
    let mut graphs: Vec<(Vec<u32>, RibbonGraph)> = found.into_iter().collect();
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    graphs.into_iter().map(|(_, g)| g).collect()
}

/// All isomorphism classes of connected trivalent ribbon graphs of type
/// `(g, n)` with labeled boundary faces, each with its automorphism order.
pub fn enumerate_ribbon_graphs(g: u32, n: usize) -> Result<Vec<RibbonGraph>> {
    if n == 0 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n: n as u32 });
    }
    let edges = 3 * (2 * g as usize + n - 2);
    if edges > MAX_EDGES {
        return Err(Error::Guard(format!(
            "trivalent type ({g}, {n}) has {edges} edges (limit {MAX_EDGES})"
        )));
    }
    Ok(enumerate_maps(g, n, edges, true))
}

/// All connected ribbon graphs of type `(g, n)` with minimum vertex degree
/// three: the cells of the combinatorial moduli space, trivalent and
/// contracted alike.
pub fn enumerate_all_cells(g: u32, n: usize) -> Result<Vec<RibbonGraph>> {
    if n == 0 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n: n as u32 });
    }
    let max_edges = 3 * (2 * g as usize + n - 2);
    if max_edges > MAX_EDGES {
        return Err(Error::Guard(format!(
            "type ({g}, {n}) has up to {max_edges} edges (limit {MAX_EDGES})"
        )));
    }
    // chi = V - E + n = 2 - 2g with V >= 1 forces E >= 2g + n - 1.
    let min_edges = (2 * g as usize + n).saturating_sub(1).max(1);
    let mut out = Vec::new();
    for edges in min_edges..=max_edges {
        out.extend(enumerate_maps(g, n, edges, false));
    }
    Ok(out)
}

fn cell_cache() -> &'static Mutex<HashMap<(u32, usize), Vec<RibbonGraph>>> {
    static CACHE: std::sync::OnceLock<Mutex<HashMap<(u32, usize), Vec<RibbonGraph>>>> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Weighted count of integral metric ribbon graphs of connected type
/// `(g, n)` with boundary lengths `b`.
pub fn count_lattice_points(g: u32, n: usize, b: &[i64]) -> Result<Rational> {
    if b.len() != n {
        return Err(Error::Domain(format!(
            "boundary vector has {} entries for n = {n}",
            b.len()
        )));
    }
    {
        let cache = cell_cache().lock().unwrap();
        if let Some(cells) = cache.get(&(g, n)) {
            return Ok(count_from_cells(cells, b));
        }
    }
    let cells = enumerate_all_cells(g, n)?;
    let value = count_from_cells(&cells, b);
    cell_cache().lock().unwrap().insert((g, n), cells);
    Ok(value)
}

fn count_from_cells(cells: &[RibbonGraph], b: &[i64]) -> Rational {
    let mut acc = Rational::zero();
    for graph in cells {
        let c = graph.count_metrics(b);
        if c > 0 {
            acc += Rational::new(c.into(), graph.aut_order.into());
        }
    }
    acc
}

/// `N_Z(b)` for a possibly disconnected `Z`: the product over components.
/// Annular components contribute one when their two entries agree and are
/// positive.
pub fn count_for_surface(z: &SurfaceType, b: &[i64]) -> Result<Rational> {
    let mut offset = 0usize;
    let mut acc = Rational::from_integer(1.into());
    for c in &z.components {
        let k = c.boundary_labels().len();
        let slice = &b[offset..offset + k];
        match c {
            SurfaceComponent::Hyperbolic { genus, boundary } => {
                let v = count_lattice_points(*genus, boundary.len(), slice)?;
                if v.is_zero() {
                    return Ok(Rational::zero());
                }
                acc *= v;
            }
            SurfaceComponent::Annulus { .. } => {
                if slice[0] != slice[1] || slice[0] < 1 {
                    return Ok(Rational::zero());
                }
            }
        }
        offset += k;
    }
    Ok(acc)
}

/// The lattice count against its volume approximation
/// `2^(chi + #pi0) V_{g,n}` at `b = scale * (2, ..., 2)`.
pub fn norbury_ratio(
    engine: &TauEngine,
    g: u32,
    n: usize,
    b_scale: i64,
) -> Result<(Rational, Rational)> {
    if b_scale <= 0 {
        return Err(Error::Domain("scale must be positive".into()));
    }
    let b = vec![2 * b_scale; n];
    let count = count_lattice_points(g, n, &b)?;
    let names: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let v = crate::volume::kontsevich_polynomial(engine, g, &refs)?;
    let values: BTreeMap<String, Rational> = names
        .iter()
        .map(|s| (s.clone(), int(2 * b_scale)))
        .collect();
    let z = SurfaceType::connected(g, &refs)
        .map(|z| z.two_power_factor())
        .unwrap_or_else(|_| Rational::from_integer(1.into()));
    let approx = z * v.eval(&values)?;
    Ok((count, approx))
}

/// Deterministic listing used by the configs module and the CLI.
pub fn graph_summary(graph: &RibbonGraph) -> String {
    format!(
        "V={} E={} n={} g={} |Aut|={}",
        graph.num_vertices,
        graph.num_edges,
        graph.num_boundaries(),
        graph.genus,
        graph.aut_order
    )
}
