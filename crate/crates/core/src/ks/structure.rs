use std::collections::HashMap;

use crate::exact::{cross_product, is_orthogonal, ExactVector, QuadScalar, VectorSet};

use super::{KsError, Mask, MAX_VECTORS};

/// Purely combinatorial form of a KS instance: vertices, bases (exactly one
/// vertex valued 1) and extra orthogonal pairs (at most one vertex valued 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringProblem {
    vertex_count: usize,
    bases: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
    basis_masks: Vec<Mask>,
    neighbors: Vec<Mask>,
}

impl ColoringProblem {
    pub fn new(
        vertex_count: usize,
        bases: Vec<Vec<usize>>,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Self, KsError> {
        if vertex_count > MAX_VECTORS {
            return Err(KsError::TooManyVectors {
                count: vertex_count,
                limit: MAX_VECTORS,
            });
        }
        let check = |i: usize| {
            if i < vertex_count {
                Ok(())
            } else {
                Err(KsError::IndexOutOfRange { index: i, vertex_count })
            }
        };
        let mut basis_masks = Vec::with_capacity(bases.len());
        let mut neighbors = vec![0 as Mask; vertex_count];
        for basis in &bases {
            let mut mask: Mask = 0;
            for &i in basis {
                check(i)?;
                if mask & bit(i) != 0 {
                    return Err(KsError::RepeatedIndex(i));
                }
                mask |= bit(i);
            }
            if mask == 0 {
                return Err(KsError::EmptyBasis);
            }
            for &i in basis {
                neighbors[i] |= mask & !bit(i);
            }
            basis_masks.push(mask);
        }
        for &(i, j) in &pairs {
            check(i)?;
            check(j)?;
            if i == j {
                return Err(KsError::RepeatedIndex(i));
            }
            neighbors[i] |= bit(j);
            neighbors[j] |= bit(i);
        }
        Ok(Self {
            vertex_count,
            bases,
            pairs,
            basis_masks,
            neighbors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub(crate) fn basis_masks(&self) -> &[Mask] {
        &self.basis_masks
    }

    pub(crate) fn neighbor_mask(&self, v: usize) -> Mask {
        self.neighbors[v]
    }

    /// Degree of `v` in the orthogonality graph.
    pub fn degree(&self, v: usize) -> u32 {
        self.neighbors[v].count_ones()
    }

    /// Relabel vertices: vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, KsError> {
        let bases = self
            .bases
            .iter()
            .map(|b| b.iter().map(|&i| perm[i]).collect())
            .collect();
        let pairs = self.pairs.iter().map(|&(i, j)| (perm[i], perm[j])).collect();
        Self::new(self.vertex_count, bases, pairs)
    }
}

pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

/// Vectors together with the bases and extra orthogonal pairs they form.
#[derive(Clone, Debug)]
pub struct OrthStructure {
    dimension: usize,
    vectors: Vec<ExactVector>,
    problem: ColoringProblem,
}

impl OrthStructure {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &[ExactVector] {
        &self.vectors
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        self.problem.bases()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        self.problem.pairs()
    }

    pub fn problem(&self) -> &ColoringProblem {
        &self.problem
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.vectors.iter().position(|v| v.label() == label)
    }

    pub fn to_vector_set(&self) -> VectorSet {
        VectorSet::new(self.dimension, self.vectors.clone()).expect("dimensions already checked")
    }
}

/// Extract every orthogonal basis and every remaining orthogonal pair.
///
/// A basis is a set of `dimension` mutually orthogonal rays; such a set is
/// automatically a maximal clique of the orthogonality graph.
pub fn build_orth_structure(set: &VectorSet) -> Result<OrthStructure, KsError> {
    let dimension = set.dimension();
    let vectors = set.vectors().to_vec();
    let n = vectors.len();
    if n > MAX_VECTORS {
        return Err(KsError::TooManyVectors { count: n, limit: MAX_VECTORS });
    }
    let mut seen: HashMap<Vec<QuadScalar>, usize> = HashMap::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some(&j) = seen.get(&v.canonical_ray()) {
            return Err(KsError::DuplicateRay {
                first: vectors[j].label().to_string(),
                second: v.label().to_string(),
            });
        }
        seen.insert(v.canonical_ray(), i);
    }

    let mut adjacency = vec![0 as Mask; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if is_orthogonal(&vectors[i], &vectors[j])? {
                adjacency[i] |= bit(j);
                adjacency[j] |= bit(i);
            }
        }
    }

    let mut bases = Vec::new();
    let mut clique = Vec::with_capacity(dimension);
    extend_cliques(&adjacency, dimension, 0, Mask::MAX, &mut clique, &mut bases);

    let mut covered = vec![0 as Mask; n];
    for b in &bases {
        let mask = b.iter().fold(0, |m, &i| m | bit(i));
        for &i in b {
            covered[i] |= mask;
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if adjacency[i] & bit(j) != 0 && covered[i] & bit(j) == 0 {
                pairs.push((i, j));
            }
        }
    }
    let problem = ColoringProblem::new(n, bases, pairs)?;
    Ok(OrthStructure {
        dimension,
        vectors,
        problem,
    })
}

/// Enumerate increasing index tuples of length `size` that are cliques.
fn extend_cliques(
    adjacency: &[Mask],
    size: usize,
    start: usize,
    candidates: Mask,
    clique: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if clique.len() == size {
        out.push(clique.clone());
        return;
    }
    for v in start..adjacency.len() {
        if candidates & bit(v) == 0 {
            continue;
        }
        clique.push(v);
        extend_cliques(adjacency, size, v + 1, candidates & adjacency[v], clique, out);
        clique.pop();
    }
}

/// The triad-completed variant in dimension 3: every extra orthogonal pair
/// gets its cross product added as a new ray (if not already present) and the
/// structure is rebuilt.
pub fn complete_pairs_to_triads(s: &OrthStructure) -> Result<OrthStructure, KsError> {
    if s.dimension != 3 {
        return Err(KsError::Geometry(crate::exact::GeometryError::NotThreeDimensional(
            s.dimension,
        )));
    }
    let mut vectors = s.vectors.clone();
    let mut seen: HashMap<Vec<QuadScalar>, usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.canonical_ray(), i))
        .collect();
    for &(i, j) in s.pairs() {
        let w = cross_product(&s.vectors[i], &s.vectors[j])?;
        let key = w.canonical_ray();
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
            e.insert(vectors.len());
            vectors.push(w);
        }
    }
    build_orth_structure(&VectorSet::new(3, vectors)?)
}
