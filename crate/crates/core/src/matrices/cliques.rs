use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::Limits;

use super::pi::{enumerate_sperm, SPermutationMatrix};

/// Simple graph on Σ_{n²}: vertices are S-permutation matrices in
/// [`enumerate_sperm`] order, edges join disjoint matrices.
#[derive(Debug, Clone)]
pub struct DisjointnessGraph {
    n: usize,
    vertices: Vec<SPermutationMatrix>,
    words: usize,
    adjacency: Vec<u64>,
}

impl DisjointnessGraph {
    pub fn build(n: usize, limits: &Limits) -> Result<Self> {
        match n {
            1 | 2 => {}
            3 if limits.allow_n3_disjointness_graph => {}
            3 => {
                return Err(Error::Infeasible(
                    "the n = 3 disjointness graph needs ~272 MB; pass the opt-in".into(),
                ))
            }
            0 => return Err(Error::OutOfRange("side size must be positive".into())),
            _ => return Err(Error::Infeasible(format!("disjointness graph for n = {n} is too large"))),
        }
        let vertices = enumerate_sperm(n)?;
        let fps: Vec<u128> = vertices.iter().map(|m| m.fingerprint_u128()).collect();
        let words = vertices.len().div_ceil(64);
        let mut adjacency = vec![0u64; words * vertices.len()];
        adjacency.par_chunks_mut(words).enumerate().for_each(|(i, row)| {
            for (j, &y) in fps.iter().enumerate() {
                if fps[i] & y == 0 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
        });
        Ok(DisjointnessGraph {
            n,
            vertices,
            words,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &SPermutationMatrix {
        &self.vertices[i]
    }

    pub fn neighbors(&self, i: usize) -> &[u64] {
        &self.adjacency[i * self.words..(i + 1) * self.words]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.vertex_count()).map(|i| self.degree(i) as u64).sum::<u64>() / 2
    }
}

fn check_clique_support(g: &DisjointnessGraph) -> Result<()> {
    if g.n != 2 {
        return Err(Error::Infeasible(format!(
            "clique search is only supported on the n = 2 graph, got n = {}",
            g.n
        )));
    }
    Ok(())
}

/// Extends `current` with vertices above its last member that are adjacent
/// to all of it; `candidates` is the intersection of their adjacency rows.
fn extend(g: &DisjointnessGraph, size: usize, current: &mut Vec<usize>, candidates: &[u64], out: &mut dyn FnMut(&[usize])) {
    if current.len() == size {
        out(current);
        return;
    }
    let start = current.last().map_or(0, |&v| v + 1);
    for v in start..g.vertex_count() {
        if candidates[v / 64] >> (v % 64) & 1 == 0 {
            continue;
        }
        let next: Vec<u64> = candidates.iter().zip(g.neighbors(v)).map(|(a, b)| a & b).collect();
        current.push(v);
        extend(g, size, current, &next, out);
        current.pop();
    }
}

/// Every `size`-vertex complete subgraph, each as sorted vertex indices, in
/// lexicographic order.
pub fn list_cliques(g: &DisjointnessGraph, size: usize) -> Result<Vec<Vec<usize>>> {
    check_clique_support(g)?;
    let mut found = Vec::new();
    let all = vec![u64::MAX; g.words];
    extend(g, size, &mut Vec::new(), &all, &mut |c| found.push(c.to_vec()));
    Ok(found)
}

pub fn count_cliques(g: &DisjointnessGraph, size: usize) -> Result<BigInt> {
    check_clique_support(g)?;
    let mut count = 0u64;
    let all = vec![u64::MAX; g.words];
    extend(g, size, &mut Vec::new(), &all, &mut |_| count += 1);
    Ok(BigInt::from(count))
}

/// One clique per line, vertex indices separated by spaces.
pub fn write_clique_list(cliques: &[Vec<usize>]) -> String {
    cliques
        .iter()
        .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::brute_force_disjoint_count;

    #[test]
    fn n2_graph_shape() {
        let g = DisjointnessGraph::build(2, &Limits::default()).unwrap();
        assert_eq!(g.vertex_count(), 16);
        let ordered = brute_force_disjoint_count(2).unwrap();
        assert_eq!(BigInt::from(2 * g.edge_count()), ordered);
        for i in 0..16 {
            assert!(!g.is_adjacent(i, i));
            for j in 0..16 {
                assert_eq!(g.is_adjacent(i, j), g.is_adjacent(j, i));
                assert_eq!(g.is_adjacent(i, j), g.vertex(i).is_disjoint(g.vertex(j)).unwrap());
            }
        }
    }

    #[test]
    fn n2_cliques() {
        let g = DisjointnessGraph::build(2, &Limits::default()).unwrap();
        let cliques = list_cliques(&g, 4).unwrap();
        assert_eq!(cliques.len(), 12);
        assert_eq!(count_cliques(&g, 4).unwrap(), BigInt::from(12));
        for c in &cliques {
            assert!(c.windows(2).all(|w| w[0] < w[1]));
            for a in 0..4 {
                for b in a + 1..4 {
                    assert!(g.vertex(c[a]).is_disjoint(g.vertex(c[b])).unwrap());
                }
            }
        }
        // edges are 2-cliques
        assert_eq!(count_cliques(&g, 2).unwrap(), BigInt::from(g.edge_count()));
        assert_eq!(count_cliques(&g, 5).unwrap(), BigInt::from(0));
        assert!(write_clique_list(&cliques).lines().count() == 12);
    }

    #[test]
    fn heavy_graphs_need_opt_in() {
        assert!(matches!(DisjointnessGraph::build(3, &Limits::default()), Err(Error::Infeasible(_))));
        assert!(matches!(DisjointnessGraph::build(4, &Limits::permissive()), Err(Error::Infeasible(_))));
        let g1 = DisjointnessGraph::build(1, &Limits::default()).unwrap();
        assert_eq!(g1.edge_count(), 0);
        assert!(matches!(count_cliques(&g1, 1), Err(Error::Infeasible(_))));
    }
}
