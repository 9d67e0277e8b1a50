use super::LogicError;
use crate::quantum::{check_orthonormal, CVector, ComplexMatrix, ProjectionOp};
use crate::tolerance;

/// An abelian subalgebra given by its atoms, mutually orthogonal
/// projections summing to the identity.
#[derive(Clone, Debug)]
pub struct Context {
    pub label: String,
    pub atoms: Vec<ProjectionOp>,
}

impl Context {
    pub fn new(label: impl Into<String>, atoms: Vec<ProjectionOp>) -> Result<Self, LogicError> {
        let label = label.into();
        let n = atoms.first().map(ProjectionOp::dim).ok_or(LogicError::EmptyContext)?;
        if atoms.len() > 32 {
            return Err(LogicError::TooManyAtoms(atoms.len()));
        }
        let mut sum = ComplexMatrix::zeros(n);
        for (i, a) in atoms.iter().enumerate() {
            if a.dim() != n {
                return Err(LogicError::DimensionMismatch { left: n, right: a.dim() });
            }
            if a.rank() == 0 {
                return Err(LogicError::NotAPartition(label));
            }
            for b in &atoms[i + 1..] {
                if (a.matrix() * b.matrix()).operator_norm() > tolerance::STRUCTURAL {
                    return Err(LogicError::NotAPartition(label));
                }
            }
            sum = &sum + a.matrix();
        }
        if sum.max_entry_distance(&ComplexMatrix::identity(n)) > tolerance::STRUCTURAL {
            return Err(LogicError::NotAPartition(label));
        }
        Ok(Self { label, atoms })
    }

    pub fn trivial(n: usize) -> Self {
        Self {
            label: "trivial".into(),
            atoms: vec![ProjectionOp::identity(n)],
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// All atoms set: the identity of this context.
    pub fn full_mask(&self) -> u32 {
        if self.atoms.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.atoms.len()) - 1
        }
    }

    /// The projection for a set of atoms.
    pub fn projection(&self, mask: u32) -> ProjectionOp {
        let n = self.atoms[0].dim();
        let m = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .fold(ComplexMatrix::zeros(n), |acc, (_, a)| &acc + a.matrix());
        ProjectionOp::new(m).expect("sum of orthogonal atoms")
    }

    fn same_algebra(&self, other: &Context) -> bool {
        self.atoms.len() == other.atoms.len()
            && self.atoms.iter().all(|a| other.atoms.iter().any(|b| a.approx_eq(b)))
    }

    /// For each atom of `finer`, the atom of `self` containing it, when every
    /// atom of `finer` lies below one of `self` (`self ⊆ finer` as algebras).
    fn refinement(&self, finer: &Context) -> Option<Vec<usize>> {
        finer
            .atoms
            .iter()
            .map(|d| self.atoms.iter().position(|c| d.is_below(c)))
            .collect()
    }
}

/// A finite poset of contexts ordered by inclusion, always containing the
/// trivial context at index 0.
#[derive(Clone, Debug)]
pub struct ContextPoset {
    dimension: usize,
    contexts: Vec<Context>,
    /// `refine[c][d]` is `Some(map)` iff context `c` is a subalgebra of `d`;
    /// `map[k]` is the atom of `c` containing atom `k` of `d`.
    refine: Vec<Vec<Option<Vec<usize>>>>,
    /// Context indices sorted by atom count, coarse to fine.
    order: Vec<usize>,
}

impl ContextPoset {
    /// Build the poset from explicit contexts; the trivial context is added
    /// first and duplicates are dropped.
    pub fn from_contexts(dimension: usize, contexts: Vec<Context>) -> Result<Self, LogicError> {
        let mut all = vec![Context::trivial(dimension)];
        for c in contexts {
            let d = c.atoms[0].dim();
            if d != dimension {
                return Err(LogicError::DimensionMismatch { left: dimension, right: d });
            }
            if !all.iter().any(|x| x.same_algebra(&c)) {
                all.push(c);
            }
        }
        let refine = all
            .iter()
            .map(|c| all.iter().map(|d| c.refinement(d)).collect())
            .collect();
        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by_key(|&i| (all[i].atom_count(), i));
        Ok(Self {
            dimension,
            contexts: all,
            refine,
            order,
        })
    }

    /// The trivial context, each basis' maximal algebra and, in dimension 3,
    /// every `{P_i, 1 − P_i}` for the basis vectors.
    pub fn generate(dimension: usize, bases: &[Vec<CVector>]) -> Result<Self, LogicError> {
        let mut contexts = Vec::new();
        for (m, b) in bases.iter().enumerate() {
            if b.len() != dimension {
                return Err(LogicError::DimensionMismatch {
                    left: dimension,
                    right: b.len(),
                });
            }
            check_orthonormal(b, tolerance::STRUCTURAL)?;
            let atoms: Vec<ProjectionOp> = b.iter().map(|v| ProjectionOp::from_orthonormal(dimension, std::slice::from_ref(v))).collect();
            if dimension == 3 {
                for (i, a) in atoms.iter().enumerate() {
                    contexts.push(Context::new(format!("basis{m}/{i}"), vec![a.clone(), a.complement()])?);
                }
            }
            contexts.push(Context::new(format!("basis{m}"), atoms)?);
        }
        Self::from_contexts(dimension, contexts)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context(&self, c: usize) -> &Context {
        &self.contexts[c]
    }

    /// Whether context `c` is a subalgebra of `d` (reflexive).
    pub fn is_sub(&self, c: usize, d: usize) -> bool {
        self.refine[c][d].is_some()
    }

    /// Contexts in coarse-to-fine order.
    pub fn coarse_to_fine(&self) -> &[usize] {
        &self.order
    }

    /// The element `mask` of context `c` seen in a context `d ⊇ c`.
    pub fn lift(&self, c: usize, d: usize, mask: u32) -> u32 {
        let map = self.refine[c][d].as_ref().expect("lift requires c ⊆ d");
        map.iter()
            .enumerate()
            .filter(|(_, &a)| mask & (1 << a) != 0)
            .fold(0, |acc, (k, _)| acc | (1 << k))
    }

    pub fn full_mask(&self, c: usize) -> u32 {
        self.contexts[c].full_mask()
    }
}
