//! Colored graph automorphisms by individualization and refinement, and the
//! point-line incidence geometry of a Grassmannian.

use std::collections::{BTreeSet, HashMap};

use crate::error::{guard, Error, Result};
use crate::gf::Field;
use crate::grassgeo::Grassmannian;
use crate::linalg::SemilinearMap;
use crate::perm::{PermGroup, Permutation};

/// Largest point+line count handled by the incidence oracle.
pub const MAX_INCIDENCE_VERTICES: u128 = 300;

/// Simple undirected graph.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidParameters(format!("bad edge ({a},{b})")));
            }
            if !matrix[a * n + b] {
                matrix[a * n + b] = true;
                matrix[b * n + a] = true;
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        Ok(Graph { adj, matrix })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.len() + b]
    }

    /// True when `p` preserves edges and the coloring.
    pub fn is_automorphism(&self, p: &Permutation, colors: &[u32]) -> bool {
        let n = self.len();
        p.degree() == n
            && (0..n).all(|v| colors[v] == colors[p.apply(v as u32) as usize])
            && (0..n).all(|a| {
                let pa = p.apply(a as u32) as usize;
                self.adj[a]
                    .iter()
                    .all(|&b| self.has_edge(pa, p.apply(b as u32) as usize))
            })
    }

    /// Coarsest equitable refinement; colors are canonical ranks, so
    /// isomorphic inputs get matching outputs.
    fn refine(&self, colors: &mut Vec<u32>) {
        let n = self.len();
        let mut classes = distinct(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut keys: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            keys.sort();
            keys.dedup();
            let rank: HashMap<&(u32, Vec<u32>), u32> = keys
                .iter()
                .enumerate()
                .map(|(i, k)| (*k, i as u32))
                .collect();
            let next: Vec<u32> = sigs.iter().map(|s| rank[s]).collect();
            let count = keys.len();
            *colors = next;
            if count == classes {
                return;
            }
            classes = count;
        }
    }

    fn individualize(&self, colors: &[u32], v: usize) -> Vec<u32> {
        let mut keys: Vec<(u32, bool)> = (0..self.len()).map(|u| (colors[u], u != v)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        let rank: HashMap<(u32, bool), u32> = sorted
            .iter()
            .enumerate()
            .map(|(i, k)| (*k, i as u32))
            .collect();
        let mut out: Vec<u32> = keys.drain(..).map(|k| rank[&k]).collect();
        self.refine(&mut out);
        out
    }
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// Smallest non-singleton cell, ties broken by color; None when discrete.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let mut cells: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    cells
        .into_iter()
        .filter(|(_, vs)| vs.len() > 1)
        .min_by_key(|(c, vs)| (vs.len(), *c))
        .map(|(_, vs)| vs)
}

/// Cell sizes by color; equal along isomorphic branches.
fn signature(colors: &[u32]) -> Vec<usize> {
    let mut sizes = vec![0usize; colors.len()];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
}

/// Automorphism group of a colored graph.
#[derive(Clone, Debug)]
pub struct GraphAutomorphisms {
    pub order: u128,
    pub generators: Vec<Permutation>,
    /// Orbit length at each level of the first path, deepest last.
    pub orbit_lengths: Vec<usize>,
}

struct Search<'a> {
    graph: &'a Graph,
    colors: &'a [u32],
    first_leaf: Vec<u32>,
    path_sigs: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Any automorphism whose leaf lies below `colors` at `depth`.
    fn find(&self, colors: &[u32], depth: usize) -> Option<Permutation> {
        if self
            .path_sigs
            .get(depth)
            .is_some_and(|s| *s != signature(colors))
        {
            return None;
        }
        let Some(cell) = target_cell(colors) else {
            // leaf: map first-leaf vertex with color c to ours with color c
            let n = colors.len();
            let mut by_color = vec![0u32; n];
            for (v, &c) in colors.iter().enumerate() {
                by_color[c as usize] = v as u32;
            }
            let images: Vec<u32> = self
                .first_leaf
                .iter()
                .map(|&c| by_color[c as usize])
                .collect();
            let p = Permutation::from_images(images).ok()?;
            return self.graph.is_automorphism(&p, self.colors).then_some(p);
        };
        cell.iter()
            .find_map(|&w| self.find(&self.graph.individualize(colors, w), depth + 1))
    }
}

fn orbit_of(start: usize, gens: &[Permutation]) -> BTreeSet<usize> {
    let mut orbit: BTreeSet<usize> = [start].into_iter().collect();
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.apply(x as u32) as usize;
            if orbit.insert(y) {
                queue.push(y);
            }
        }
    }
    orbit
}

/// Order and generators of the group of color-preserving automorphisms.
pub fn graph_automorphisms(graph: &Graph, colors: &[u32]) -> Result<GraphAutomorphisms> {
    if colors.len() != graph.len() {
        return Err(Error::Dimension("one color per vertex required".into()));
    }
    let mut start = colors.to_vec();
    graph.refine(&mut start);
    // first path: always the first vertex of the target cell
    let mut path = vec![start];
    let mut base = Vec::new();
    while let Some(cell) = target_cell(path.last().unwrap()) {
        base.push(cell[0]);
        let next = graph.individualize(path.last().unwrap(), cell[0]);
        path.push(next);
    }
    let search = Search {
        graph,
        colors,
        first_leaf: path.last().unwrap().clone(),
        path_sigs: path.iter().map(|c| signature(c)).collect(),
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbit_lengths = vec![0; base.len()];
    for level in (0..base.len()).rev() {
        let fixed = &base[..level];
        let mut stab: Vec<Permutation> = gens
            .iter()
            .filter(|g| fixed.iter().all(|&b| g.apply(b as u32) as usize == b))
            .cloned()
            .collect();
        let mut orbit = orbit_of(base[level], &stab);
        let cell = target_cell(&path[level]).expect("non-discrete along the base");
        for &w in &cell {
            if orbit.contains(&w) {
                continue;
            }
            if let Some(g) = search.find(&graph.individualize(&path[level], w), level + 1) {
                stab.push(g.clone());
                gens.push(g);
                orbit = orbit_of(base[level], &stab);
            }
        }
        orbit_lengths[level] = orbit.len();
    }
    let order = orbit_lengths.iter().map(|&x| x as u128).product();
    Ok(GraphAutomorphisms {
        order,
        generators: gens,
        orbit_lengths,
    })
}

/// Bipartite point-line incidence graph of G(ℓ,m): vertices are the points
/// in canonical order, then the lines in `all_lines` order.
pub struct IncidenceGeometry {
    pub grassmannian: Grassmannian,
    pub lines: Vec<BTreeSet<usize>>,
    pub graph: Graph,
    pub colors: Vec<u32>,
    line_index: HashMap<BTreeSet<usize>, usize>,
}

impl IncidenceGeometry {
    pub fn new(l: usize, m: usize, field: &Field) -> Result<Self> {
        let g = Grassmannian::new(l, m, field)?;
        let lines = g.line_sets()?;
        let np = g.len();
        guard(
            "incidence graph vertices",
            (np + lines.len()) as u128,
            MAX_INCIDENCE_VERTICES,
        )?;
        let mut edges = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            for &p in line {
                edges.push((p, np + i));
            }
        }
        let graph = Graph::new(np + lines.len(), &edges)?;
        let colors = (0..np + lines.len()).map(|v| u32::from(v >= np)).collect();
        let line_index = lines
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(IncidenceGeometry {
            grassmannian: g,
            lines,
            graph,
            colors,
            line_index,
        })
    }

    pub fn point_count(&self) -> usize {
        self.grassmannian.len()
    }

    /// Vertex permutation induced by a map of ∧^ℓ preserving the Grassmannian.
    pub fn induced_permutation(&self, g: &SemilinearMap) -> Option<Permutation> {
        let pts = self.grassmannian.induced_permutation(g)?;
        let np = pts.len();
        let mut images = pts.clone();
        for line in &self.lines {
            let img: BTreeSet<usize> = line.iter().map(|&p| pts[p] as usize).collect();
            images.push((np + *self.line_index.get(&img)?) as u32);
        }
        Permutation::from_images(images).ok()
    }

    pub fn automorphisms(&self) -> Result<GraphAutomorphisms> {
        graph_automorphisms(&self.graph, &self.colors)
    }
}

/// Order of the automorphism group of the point-line geometry of G(ℓ,m), with
/// the group itself for membership tests.
pub struct ChowResult {
    pub order: u128,
    pub group: PermGroup,
    pub geometry: IncidenceGeometry,
}

pub fn chow_oracle(l: usize, m: usize, field: &Field) -> Result<ChowResult> {
    let geometry = IncidenceGeometry::new(l, m, field)?;
    let auts = geometry.automorphisms()?;
    let n = geometry.graph.len();
    let group = if auts.generators.is_empty() {
        PermGroup::trivial(n)
    } else {
        PermGroup::new(n, auts.generators.clone())?
    };
    if group.order() != auts.order {
        return Err(Error::Degenerate(format!(
            "orbit count {} disagrees with generated order {}",
            auts.order,
            group.order()
        )));
    }
    Ok(ChowResult {
        order: auts.order,
        group,
        geometry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;

    #[test]
    fn small_graphs() {
        let cycle: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = Graph::new(6, &cycle).unwrap();
        assert_eq!(graph_automorphisms(&g, &[0; 6]).unwrap().order, 12);
        let k4: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let g = Graph::new(4, &k4).unwrap();
        assert_eq!(graph_automorphisms(&g, &[0; 4]).unwrap().order, 24);
        assert_eq!(graph_automorphisms(&g, &[0, 0, 1, 1]).unwrap().order, 4);
        // Petersen graph
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::new(10, &e).unwrap();
        assert_eq!(graph_automorphisms(&g, &[0; 10]).unwrap().order, 120);
        let empty = Graph::new(5, &[]).unwrap();
        assert_eq!(graph_automorphisms(&empty, &[0; 5]).unwrap().order, 120);
    }

    #[test]
    fn fano_plane() {
        let f2 = fq_make(2, 1).unwrap();
        let r = chow_oracle(2, 3, &f2).unwrap();
        assert_eq!(r.order, 168);
    }

    #[test]
    fn grassmannian_g24() {
        let f2 = fq_make(2, 1).unwrap();
        let r = chow_oracle(2, 4, &f2).unwrap();
        assert_eq!(r.geometry.graph.len(), 140);
        assert_eq!(r.order, 40320);
    }
}
