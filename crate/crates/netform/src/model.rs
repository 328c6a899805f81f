//! Problem instances: weighted graph, affinities, initial weights, and the
//! distribution Nature draws communication subsets from.
//!
//! Vertices are `0..vertex_count` with `vertex_count <= 64`, so subsets of
//! vertices are single machine words and membership tests in the simulation
//! hot loop are one AND. An instance is immutable once built; every derived
//! quantity (pairwise probabilities `p_ij`, the products `a_ij p_ij`, the
//! constants `w_min` and `h_1`) is computed at construction time.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Vertex subsets are stored as 64-bit masks.
pub const MAX_VERTICES: u32 = 64;

/// Unordered vertex pair, canonically `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    i: u32,
    j: u32,
}

impl Edge {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Edge {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(&self, v: u32) -> Option<u32> {
        if v == self.i {
            Some(self.j)
        } else if v == self.j {
            Some(self.i)
        } else {
            None
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.i == v || self.j == v
    }

    /// Common endpoint of two distinct edges, if any.
    pub fn shared_vertex(&self, other: &Edge) -> Option<u32> {
        if self == other {
            return None;
        }
        [self.i, self.j]
            .into_iter()
            .find(|&v| other.contains(v))
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

fn mask_of(vertices: &[u32], vertex_count: u32) -> Result<u64> {
    let mut mask = 0u64;
    for &v in vertices {
        if v >= vertex_count {
            return Err(Error::AtomOutOfRange { vertex_count });
        }
        mask |= 1u64 << v;
    }
    Ok(mask)
}

fn full_mask(vertex_count: u32) -> u64 {
    if vertex_count == 64 {
        u64::MAX
    } else {
        (1u64 << vertex_count) - 1
    }
}

/// Nature's distribution over vertex subsets: an explicit atom list
/// `(subset mask, probability)`, sorted by mask, duplicates merged,
/// probabilities renormalized to sum exactly to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NatureDistribution<T> {
    vertex_count: u32,
    atoms: Vec<(u64, T)>,
}

impl<T: Real> NatureDistribution<T> {
    /// Validate, merge duplicate subsets, drop zero atoms, renormalize.
    pub fn from_atoms(vertex_count: u32, atoms: Vec<(u64, T)>) -> Result<Self> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(Error::VertexCountOutOfRange(vertex_count));
        }
        let allowed = full_mask(vertex_count);
        let mut sum = T::zero();
        for &(mask, p) in &atoms {
            if mask & !allowed != 0 {
                return Err(Error::AtomOutOfRange { vertex_count });
            }
            if !(p >= T::zero()) || !p.is_finite() {
                return Err(Error::InvalidProbability(p.to_f64_lossy()));
            }
            sum += p;
        }
        let tol = T::unit_sum_tol();
        if (sum - T::one()).abs() > tol {
            return Err(Error::ProbabilityNotNormalized {
                sum: sum.to_f64_lossy(),
                tol: tol.to_f64_lossy(),
            });
        }
        let mut merged: Vec<(u64, T)> = Vec::with_capacity(atoms.len());
        let mut sorted = atoms;
        sorted.sort_by_key(|&(mask, _)| mask);
        for (mask, p) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == mask => last.1 += p,
                _ => merged.push((mask, p)),
            }
        }
        merged.retain(|&(_, p)| p > T::zero());
        if merged.is_empty() {
            return Err(Error::AllWeightsZero);
        }
        // Renormalize exactly so user-supplied decimals cannot drift.
        for atom in &mut merged {
            atom.1 = atom.1 / sum;
        }
        Ok(NatureDistribution {
            vertex_count,
            atoms: merged,
        })
    }

    /// Subsets given as vertex lists.
    pub fn from_subsets(vertex_count: u32, subsets: Vec<(Vec<u32>, T)>) -> Result<Self> {
        let atoms = subsets
            .into_iter()
            .map(|(vs, p)| Ok((mask_of(&vs, vertex_count)?, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_atoms(vertex_count, atoms)
    }

    /// Everyone is always allowed to communicate: one atom, the whole set.
    pub fn full(vertex_count: u32) -> Result<Self> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(Error::VertexCountOutOfRange(vertex_count));
        }
        Ok(NatureDistribution {
            vertex_count,
            atoms: vec![(full_mask(vertex_count), T::one())],
        })
    }

    /// One atom per vertex `i`: the subset `{i} + neighbors(i)`, weighted by
    /// `vertex_weights[i]` (normalized). Vertices with identical closed
    /// neighborhoods merge into a single atom.
    pub fn vertex_neighborhood(
        vertex_count: u32,
        edges: &[Edge],
        vertex_weights: &[T],
    ) -> Result<Self> {
        if vertex_weights.len() != vertex_count as usize {
            return Err(Error::AtomOutOfRange { vertex_count });
        }
        let mut closed = vec![0u64; vertex_count as usize];
        for (v, m) in closed.iter_mut().enumerate() {
            *m = 1u64 << v;
        }
        for e in edges {
            if e.j >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    i: e.i,
                    j: e.j,
                    vertex_count,
                });
            }
            closed[e.i as usize] |= 1u64 << e.j;
            closed[e.j as usize] |= 1u64 << e.i;
        }
        let mut total = T::zero();
        for &w in vertex_weights {
            if !(w >= T::zero()) || !w.is_finite() {
                return Err(Error::InvalidProbability(w.to_f64_lossy()));
            }
            total += w;
        }
        if total <= T::zero() {
            return Err(Error::AllWeightsZero);
        }
        let atoms = closed
            .into_iter()
            .zip(vertex_weights)
            .map(|(mask, &w)| (mask, w / total))
            .collect();
        // Weights are already normalized; from_atoms merges duplicates.
        Self::from_atoms(vertex_count, atoms)
    }

    /// Signaling-game nature: `S1`, `S2` partition the vertex set and the
    /// atom for `i` in `S1` is `{i} + S2`, weighted by `state_weights[k]`
    /// for the k-th element of `S1`.
    pub fn bipartite(
        vertex_count: u32,
        s1: &[u32],
        s2: &[u32],
        state_weights: &[T],
    ) -> Result<Self> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(Error::VertexCountOutOfRange(vertex_count));
        }
        let m1 = mask_of(s1, vertex_count)?;
        let m2 = mask_of(s2, vertex_count)?;
        let distinct = s1.len() + s2.len() == (m1.count_ones() + m2.count_ones()) as usize;
        if m1 & m2 != 0 || m1 | m2 != full_mask(vertex_count) || !distinct {
            return Err(Error::NotAPartition);
        }
        if state_weights.len() != s1.len() {
            return Err(Error::AllWeightsZero);
        }
        let mut total = T::zero();
        for &w in state_weights {
            if !(w >= T::zero()) || !w.is_finite() {
                return Err(Error::InvalidProbability(w.to_f64_lossy()));
            }
            total += w;
        }
        if total <= T::zero() {
            return Err(Error::AllWeightsZero);
        }
        let atoms = s1
            .iter()
            .zip(state_weights)
            .map(|(&i, &w)| ((1u64 << i) | m2, w / total))
            .collect();
        Self::from_atoms(vertex_count, atoms)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn atoms(&self) -> &[(u64, T)] {
        &self.atoms
    }

    /// Probability that both endpoints of `e` are allowed in one round.
    pub fn pair_probability(&self, e: Edge) -> T {
        let need = (1u64 << e.i) | (1u64 << e.j);
        self.atoms
            .iter()
            .filter(|&&(mask, _)| mask & need == need)
            .map(|&(_, p)| p)
            .sum()
    }

    /// Draw one subset. Always consumes exactly one uniform draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let target = T::of(rng.gen::<f64>());
        let mut cum = T::zero();
        for &(mask, p) in &self.atoms {
            cum += p;
            if target < cum {
                return mask;
            }
        }
        self.atoms.last().expect("nonempty atom list").0
    }

    /// True iff the single atom is the full vertex set.
    pub fn is_full(&self) -> bool {
        self.atoms.len() == 1 && self.atoms[0].0 == full_mask(self.vertex_count)
    }
}

/// Marginal communication probabilities `p_ij` per edge (zero off-edges by
/// convention; the struct only stores on-edge values).
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseProbs<T> {
    per_edge: Vec<T>,
}

impl<T: Real> PairwiseProbs<T> {
    pub fn value(&self, edge_index: usize) -> T {
        self.per_edge[edge_index]
    }

    pub fn values(&self) -> &[T] {
        &self.per_edge
    }
}

/// One edge of an instance under construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeSpec<T> {
    pub i: u32,
    pub j: u32,
    pub affinity: T,
    pub init_weight: T,
}

/// An immutable game instance: graph, affinities `a_ij`, initial weights
/// `v0_ij`, Nature distribution, plus cached derived data.
#[derive(Clone, Debug)]
pub struct WeightedGame<T> {
    vertex_count: u32,
    edges: Vec<Edge>,
    affinity: Vec<T>,
    init_weight: Vec<T>,
    nature: NatureDistribution<T>,
    pairwise: PairwiseProbs<T>,
    /// a_ij * p_ij per edge.
    ap: Vec<T>,
    /// Per vertex: (neighbor, edge index), ascending by neighbor.
    neighbors: Vec<Vec<(u32, usize)>>,
    w_min: T,
    h1: T,
}

impl<T: Real> WeightedGame<T> {
    /// Validate and build an instance.
    ///
    /// Edges with `a_ij = 0` are legal and kept: their weight stays frozen at
    /// `v0_ij` but they still attract choices. Rejects instances where no
    /// edge has `a_ij * p_ij > 0`.
    pub fn build(
        vertex_count: u32,
        specs: Vec<EdgeSpec<T>>,
        nature: NatureDistribution<T>,
    ) -> Result<Self> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(Error::VertexCountOutOfRange(vertex_count));
        }
        if nature.vertex_count() != vertex_count {
            return Err(Error::AtomOutOfRange { vertex_count });
        }
        let mut rows: Vec<(Edge, T, T)> = Vec::with_capacity(specs.len());
        for s in &specs {
            if s.i >= vertex_count || s.j >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    i: s.i,
                    j: s.j,
                    vertex_count,
                });
            }
            let e = Edge::new(s.i, s.j)?;
            if !(s.affinity >= T::zero()) || !s.affinity.is_finite() {
                return Err(Error::InvalidAffinity(e.i, e.j));
            }
            if !(s.init_weight > T::zero()) || !s.init_weight.is_finite() {
                return Err(Error::NonPositiveInitWeight(e.i, e.j));
            }
            rows.push((e, s.affinity, s.init_weight));
        }
        rows.sort_by_key(|&(e, _, _)| e);
        for w in rows.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateEdge(w[0].0.i, w[0].0.j));
            }
        }
        let edges: Vec<Edge> = rows.iter().map(|&(e, _, _)| e).collect();
        let affinity: Vec<T> = rows.iter().map(|&(_, a, _)| a).collect();
        let init_weight: Vec<T> = rows.iter().map(|&(_, _, v)| v).collect();

        let per_edge: Vec<T> = edges.iter().map(|&e| nature.pair_probability(e)).collect();
        let ap: Vec<T> = affinity
            .iter()
            .zip(&per_edge)
            .map(|(&a, &p)| a * p)
            .collect();
        let mut w_min = T::infinity();
        for &v in &ap {
            if v > T::zero() && v < w_min {
                w_min = v;
            }
        }
        if !w_min.is_finite() {
            return Err(Error::DegenerateGame);
        }

        let mut neighbors: Vec<Vec<(u32, usize)>> = vec![Vec::new(); vertex_count as usize];
        for (idx, e) in edges.iter().enumerate() {
            neighbors[e.i as usize].push((e.j, idx));
            neighbors[e.j as usize].push((e.i, idx));
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }

        let total_v0: T = init_weight.iter().copied().sum();
        let live_v0: T = init_weight
            .iter()
            .zip(&ap)
            .filter(|&(_, &apv)| apv > T::zero())
            .map(|(&v, _)| v)
            .sum();
        let h1 = live_v0 / total_v0;

        Ok(WeightedGame {
            vertex_count,
            edges,
            affinity,
            init_weight,
            nature,
            pairwise: PairwiseProbs { per_edge },
            ap,
            neighbors,
            w_min,
            h1,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Index of the unordered edge `{a, b}`, if present.
    pub fn edge_index(&self, a: u32, b: u32) -> Option<usize> {
        let e = Edge::new(a, b).ok()?;
        self.edges.binary_search(&e).ok()
    }

    pub fn affinity(&self, index: usize) -> T {
        self.affinity[index]
    }

    pub fn init_weight(&self, index: usize) -> T {
        self.init_weight[index]
    }

    pub fn init_weights(&self) -> &[T] {
        &self.init_weight
    }

    pub fn nature(&self) -> &NatureDistribution<T> {
        &self.nature
    }

    pub fn pairwise_probs(&self) -> &PairwiseProbs<T> {
        &self.pairwise
    }

    /// `a_ij * p_ij` for one edge.
    pub fn ap(&self, index: usize) -> T {
        self.ap[index]
    }

    pub fn ap_values(&self) -> &[T] {
        &self.ap
    }

    /// `(neighbor, edge index)` pairs of `v`, ascending by neighbor.
    pub fn neighbors(&self, v: u32) -> &[(u32, usize)] {
        &self.neighbors[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors[v as usize].len()
    }

    /// Smallest positive `a_ij * p_ij`.
    pub fn w_min(&self) -> T {
        self.w_min
    }

    /// Initial occupation mass on positively weighted edges (ordered sum);
    /// a lower bound for that mass along any trajectory.
    pub fn h1(&self) -> T {
        self.h1
    }

    /// Sum of `a_ij * p_ij` over ordered pairs: the trivial upper bound for
    /// the expected payoff.
    pub fn ap_ordered_sum(&self) -> T {
        self.ap.iter().map(|&v| T::of(2.0) * v).sum()
    }

    /// True iff some vertex is an endpoint of every edge and all other
    /// vertices have degree one (single-edge graphs count).
    pub fn is_star(&self) -> Option<u32> {
        if self.edges.is_empty() {
            return None;
        }
        let hub_candidates = [self.edges[0].i, self.edges[0].j];
        'hub: for hub in hub_candidates {
            for e in &self.edges {
                if !e.contains(hub) {
                    continue 'hub;
                }
            }
            if (0..self.vertex_count)
                .filter(|&v| v != hub)
                .all(|v| self.degree(v) <= 1)
            {
                return Some(hub);
            }
        }
        None
    }

    pub fn to_config(&self) -> GameConfig {
        GameConfig {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(idx, e)| EdgeConfig {
                    i: e.i,
                    j: e.j,
                    a: self.affinity[idx].to_f64_lossy(),
                    v0: self.init_weight[idx].to_f64_lossy(),
                })
                .collect(),
            nature: NatureConfig::Custom {
                atoms: self
                    .nature
                    .atoms()
                    .iter()
                    .map(|&(mask, p)| AtomConfig {
                        subset: (0..self.vertex_count)
                            .filter(|&v| mask & (1u64 << v) != 0)
                            .collect(),
                        p: p.to_f64_lossy(),
                    })
                    .collect(),
            },
        }
    }
}

/// File-facing description of a game. Vertices are 0-based in files; edges
/// are written with `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub vertex_count: u32,
    pub edges: Vec<EdgeConfig>,
    pub nature: NatureConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeConfig {
    pub i: u32,
    pub j: u32,
    pub a: f64,
    pub v0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NatureConfig {
    Full,
    VertexNeighborhood {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
    Bipartite {
        s1: Vec<u32>,
        s2: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
    Custom {
        atoms: Vec<AtomConfig>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomConfig {
    pub subset: Vec<u32>,
    pub p: f64,
}

impl GameConfig {
    pub fn build<T: Real>(&self) -> Result<WeightedGame<T>> {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(e.i, e.j))
            .collect::<Result<_>>()?;
        let nature = match &self.nature {
            NatureConfig::Full => NatureDistribution::full(self.vertex_count)?,
            NatureConfig::VertexNeighborhood { weights } => {
                let w = resolve_weights::<T>(weights, self.vertex_count as usize)?;
                NatureDistribution::vertex_neighborhood(self.vertex_count, &edges, &w)?
            }
            NatureConfig::Bipartite { s1, s2, weights } => {
                let w = resolve_weights::<T>(weights, s1.len())?;
                NatureDistribution::bipartite(self.vertex_count, s1, s2, &w)?
            }
            NatureConfig::Custom { atoms } => NatureDistribution::from_subsets(
                self.vertex_count,
                atoms
                    .iter()
                    .map(|a| (a.subset.clone(), T::of(a.p)))
                    .collect(),
            )?,
        };
        let specs = self
            .edges
            .iter()
            .map(|e| EdgeSpec {
                i: e.i,
                j: e.j,
                affinity: T::of(e.a),
                init_weight: T::of(e.v0),
            })
            .collect();
        WeightedGame::build(self.vertex_count, specs, nature)
    }
}

fn resolve_weights<T: Real>(weights: &Option<Vec<f64>>, len: usize) -> Result<Vec<T>> {
    match weights {
        Some(w) => {
            if w.len() != len {
                return Err(Error::AllWeightsZero);
            }
            Ok(w.iter().map(|&v| T::of(v)).collect())
        }
        None => Ok(vec![T::one(); len]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge(a: f64) -> Result<WeightedGame<f64>> {
        WeightedGame::build(
            2,
            vec![EdgeSpec {
                i: 0,
                j: 1,
                affinity: a,
                init_weight: 1.0,
            }],
            NatureDistribution::full(2).unwrap(),
        )
    }

    pub(crate) fn path3(a12: f64, a23: f64) -> WeightedGame<f64> {
        WeightedGame::build(
            3,
            vec![
                EdgeSpec {
                    i: 0,
                    j: 1,
                    affinity: a12,
                    init_weight: 1.0,
                },
                EdgeSpec {
                    i: 1,
                    j: 2,
                    affinity: a23,
                    init_weight: 1.0,
                },
            ],
            NatureDistribution::full(3).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn single_edge_full_nature() {
        let g = single_edge(1.0).unwrap();
        assert_eq!(g.pairwise_probs().value(0), 1.0);
        assert_eq!(g.w_min(), 1.0);
        assert_eq!(g.h1(), 1.0);
    }

    #[test]
    fn path_w_min_is_brute_force_minimum() {
        let g = path3(1.0, 2.0);
        let brute = g
            .ap_values()
            .iter()
            .copied()
            .filter(|&v| v > 0.0)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(g.w_min(), 1.0);
        assert_eq!(g.w_min(), brute);
    }

    #[test]
    fn zero_affinity_single_edge_is_degenerate() {
        match single_edge(0.0) {
            Err(Error::DegenerateGame) => {}
            other => panic!("expected DegenerateGame, got {other:?}"),
        }
    }

    #[test]
    fn rejects_self_loop_duplicate_and_bad_weights() {
        let nature = NatureDistribution::<f64>::full(3).unwrap();
        let mk = |i, j, a, v0| EdgeSpec {
            i,
            j,
            affinity: a,
            init_weight: v0,
        };
        assert!(matches!(
            WeightedGame::build(3, vec![mk(1, 1, 1.0, 1.0)], nature.clone()),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            WeightedGame::build(
                3,
                vec![mk(0, 1, 1.0, 1.0), mk(1, 0, 1.0, 1.0)],
                nature.clone()
            ),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            WeightedGame::build(3, vec![mk(0, 1, 1.0, 0.0)], nature.clone()),
            Err(Error::NonPositiveInitWeight(0, 1))
        ));
        assert!(matches!(
            WeightedGame::build(3, vec![mk(0, 5, 1.0, 1.0)], nature),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn nature_full_edge_cases() {
        let n1 = NatureDistribution::<f64>::full(1).unwrap();
        assert_eq!(n1.atoms(), &[(0b1, 1.0)]);
        let n3 = NatureDistribution::<f64>::full(3).unwrap();
        assert_eq!(n3.atoms(), &[(0b111, 1.0)]);
        let n64 = NatureDistribution::<f64>::full(64).unwrap();
        assert_eq!(n64.atoms(), &[(u64::MAX, 1.0)]);
    }

    #[test]
    fn vertex_neighborhood_on_path() {
        // Path 0-1-2, uniform: atoms {0,1}, {0,1,2}, {1,2}; p_01 = 2/3.
        let edges = vec![Edge::new(0, 1).unwrap(), Edge::new(1, 2).unwrap()];
        let n =
            NatureDistribution::<f64>::vertex_neighborhood(3, &edges, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(n.atoms().len(), 3);
        let p01 = n.pair_probability(Edge::new(0, 1).unwrap());
        let p12 = n.pair_probability(Edge::new(1, 2).unwrap());
        assert!((p01 - 2.0 / 3.0).abs() < 1e-15);
        assert!((p12 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn vertex_neighborhood_merges_identical_atoms() {
        // Single edge: both closed neighborhoods equal {0,1}.
        let edges = vec![Edge::new(0, 1).unwrap()];
        let n = NatureDistribution::<f64>::vertex_neighborhood(2, &edges, &[1.0, 1.0]).unwrap();
        assert_eq!(n.atoms(), &[(0b11, 1.0)]);
        assert_eq!(n.pair_probability(Edge::new(0, 1).unwrap()), 1.0);
    }

    #[test]
    fn vertex_neighborhood_star_weight_on_hub() {
        // Star with hub 0 and leaves 1, 2; weight only on the hub.
        let edges = vec![Edge::new(0, 1).unwrap(), Edge::new(0, 2).unwrap()];
        let n =
            NatureDistribution::<f64>::vertex_neighborhood(3, &edges, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(n.atoms(), &[(0b111, 1.0)]);
    }

    #[test]
    fn bipartite_uniform_marginals() {
        // S1 = {0,1}, S2 = {2,3}: cross pairs get 1/2, pairs inside S1 get 0.
        let n = NatureDistribution::<f64>::bipartite(4, &[0, 1], &[2, 3], &[1.0, 1.0]).unwrap();
        for &i in &[0u32, 1] {
            for &j in &[2u32, 3] {
                assert!((n.pair_probability(Edge::new(i, j).unwrap()) - 0.5).abs() < 1e-15);
            }
        }
        // No atom contains two S1 vertices, so p = 0 inside S1.
        assert_eq!(n.pair_probability(Edge::new(0, 1).unwrap()), 0.0);
        assert_eq!(n.pair_probability(Edge::new(2, 3).unwrap()), 1.0);
    }

    #[test]
    fn bipartite_rejects_bad_partition() {
        assert!(matches!(
            NatureDistribution::<f64>::bipartite(4, &[0, 1], &[1, 2, 3], &[1.0, 1.0]),
            Err(Error::NotAPartition)
        ));
        assert!(matches!(
            NatureDistribution::<f64>::bipartite(4, &[0], &[2, 3], &[1.0]),
            Err(Error::NotAPartition)
        ));
        assert!(matches!(
            NatureDistribution::<f64>::bipartite(2, &[0], &[1], &[0.0]),
            Err(Error::AllWeightsZero)
        ));
    }

    #[test]
    fn bipartite_two_vertices() {
        let n = NatureDistribution::<f64>::bipartite(2, &[0], &[1], &[3.0]).unwrap();
        assert_eq!(n.pair_probability(Edge::new(0, 1).unwrap()), 1.0);
    }

    #[test]
    fn custom_nature_rejects_unnormalized() {
        let r = NatureDistribution::<f64>::from_subsets(2, vec![(vec![0, 1], 0.5)]);
        assert!(matches!(r, Err(Error::ProbabilityNotNormalized { .. })));
        let r = NatureDistribution::<f64>::from_subsets(2, vec![(vec![0, 1], -1.0)]);
        assert!(matches!(r, Err(Error::InvalidProbability(_))));
    }

    #[test]
    fn config_round_trip() {
        let cfg = GameConfig {
            vertex_count: 3,
            edges: vec![
                EdgeConfig {
                    i: 0,
                    j: 1,
                    a: 1.0,
                    v0: 1.0,
                },
                EdgeConfig {
                    i: 1,
                    j: 2,
                    a: 2.0,
                    v0: 0.5,
                },
            ],
            nature: NatureConfig::Full,
        };
        let game: WeightedGame<f64> = cfg.build().unwrap();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: GameConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back);
        let game2: WeightedGame<f64> = back.build().unwrap();
        assert_eq!(game.edges(), game2.edges());
        assert_eq!(game.ap_values(), game2.ap_values());
    }

    #[test]
    fn edge_index_lookup() {
        let g = path3(1.0, 2.0);
        assert_eq!(g.edge_index(1, 0), Some(0));
        assert_eq!(g.edge_index(2, 1), Some(1));
        assert_eq!(g.edge_index(0, 2), None);
    }

    #[test]
    fn star_detection() {
        let g = path3(1.0, 2.0);
        assert_eq!(g.is_star(), Some(1));
        let single = single_edge(1.0).unwrap();
        assert!(single.is_star().is_some());
        let cyc = WeightedGame::build(
            3,
            vec![
                EdgeSpec {
                    i: 0,
                    j: 1,
                    affinity: 1.0,
                    init_weight: 1.0,
                },
                EdgeSpec {
                    i: 1,
                    j: 2,
                    affinity: 1.0,
                    init_weight: 1.0,
                },
                EdgeSpec {
                    i: 0,
                    j: 2,
                    affinity: 1.0,
                    init_weight: 1.0,
                },
            ],
            NatureDistribution::full(3).unwrap(),
        )
        .unwrap();
        assert_eq!(cyc.is_star(), None);
    }
}
