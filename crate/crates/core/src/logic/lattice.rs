use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ContextPoset, LogicError};
use crate::quantum::ProjectionOp;

/// Which monotonicity the context functions obey.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `S(C) ≤ S(D)` whenever `C ⊆ D`: values grow with the context.
    L2,
    /// `S(C) ≤ S(D)` whenever `D ⊆ C`: values shrink as contexts grow.
    L3,
}

impl std::str::FromStr for Variant {
    type Err = LogicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l2" => Ok(Self::L2),
            "l3" => Ok(Self::L3),
            _ => Err(LogicError::UnknownVariant(s.to_string())),
        }
    }
}

/// One projection per context, stored as a set of that context's atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ContextFunction {
    pub values: Vec<u32>,
}

/// Context functions of one variant over a fixed poset.
#[derive(Clone, Debug)]
pub struct ContextLattice {
    poset: ContextPoset,
    variant: Variant,
}

impl ContextLattice {
    pub fn new(poset: ContextPoset, variant: Variant) -> Self {
        Self { poset, variant }
    }

    pub fn poset(&self) -> &ContextPoset {
        &self.poset
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn bottom(&self) -> ContextFunction {
        ContextFunction {
            values: vec![0; self.poset.len()],
        }
    }

    pub fn top(&self) -> ContextFunction {
        ContextFunction {
            values: (0..self.poset.len()).map(|c| self.poset.full_mask(c)).collect(),
        }
    }

    /// Check that `s` has one valid value per context and is monotone.
    pub fn validate(&self, s: &ContextFunction) -> Result<(), LogicError> {
        let n = self.poset.len();
        if s.values.len() != n {
            return Err(LogicError::WrongLength {
                expected: n,
                found: s.values.len(),
            });
        }
        for c in 0..n {
            if s.values[c] & !self.poset.full_mask(c) != 0 {
                return Err(LogicError::InvalidValue(c));
            }
        }
        for c in 0..n {
            for d in 0..n {
                if c == d || !self.poset.is_sub(c, d) {
                    continue;
                }
                let coarse = self.poset.lift(c, d, s.values[c]);
                let fine = s.values[d];
                let ok = match self.variant {
                    Variant::L2 => coarse & !fine == 0,
                    Variant::L3 => fine & !coarse == 0,
                };
                if !ok {
                    return Err(LogicError::NotMonotone { coarse: c, fine: d });
                }
            }
        }
        Ok(())
    }

    pub fn le(&self, s: &ContextFunction, t: &ContextFunction) -> bool {
        s.values.iter().zip(&t.values).all(|(a, b)| a & !b == 0)
    }

    pub fn join(&self, s: &ContextFunction, t: &ContextFunction) -> ContextFunction {
        ContextFunction {
            values: s.values.iter().zip(&t.values).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn meet(&self, s: &ContextFunction, t: &ContextFunction) -> ContextFunction {
        ContextFunction {
            values: s.values.iter().zip(&t.values).map(|(a, b)| a & b).collect(),
        }
    }

    /// `¬S(D) ∨ T(D)` in the Boolean algebra of `D`.
    fn local_implication(&self, s: &ContextFunction, t: &ContextFunction, d: usize) -> u32 {
        (self.poset.full_mask(d) & !s.values[d]) | t.values[d]
    }

    pub fn implies(&self, s: &ContextFunction, t: &ContextFunction) -> ContextFunction {
        let n = self.poset.len();
        let values = (0..n)
            .map(|c| match self.variant {
                // meet over the subcontexts D ⊆ C, each lifted into C
                Variant::L3 => (0..n)
                    .filter(|&d| self.poset.is_sub(d, c))
                    .fold(self.poset.full_mask(c), |acc, d| {
                        acc & self.poset.lift(d, c, self.local_implication(s, t, d))
                    }),
                // atoms of C whose image in every D ⊇ C stays below ¬S(D) ∨ T(D)
                Variant::L2 => (0..self.poset.context(c).atom_count())
                    .filter(|&a| {
                        (0..n).filter(|&d| self.poset.is_sub(c, d)).all(|d| {
                            let image = self.poset.lift(c, d, 1 << a);
                            image & !self.local_implication(s, t, d) == 0
                        })
                    })
                    .fold(0, |acc, a| acc | (1 << a)),
            })
            .collect();
        ContextFunction { values }
    }

    pub fn negate(&self, s: &ContextFunction) -> ContextFunction {
        self.implies(s, &self.bottom())
    }

    /// The L3 embedding of a projection: `P` in every context containing it,
    /// the identity elsewhere.
    pub fn embed_projection(&self, p: &ProjectionOp) -> ContextFunction {
        let values = (0..self.poset.len())
            .map(|c| {
                let ctx = self.poset.context(c);
                (0..=ctx.full_mask())
                    .find(|&m| ctx.projection(m).approx_eq(p))
                    .unwrap_or(ctx.full_mask())
            })
            .collect();
        ContextFunction { values }
    }

    /// For context `c`, the bound imposed by the already fixed coarser
    /// contexts: an upper bound for L3, a lower bound for L2.
    fn bound(&self, values: &[u32], assigned: &[bool], c: usize) -> u32 {
        let strict_subs = (0..self.poset.len()).filter(|&d| d != c && assigned[d] && self.poset.is_sub(d, c));
        match self.variant {
            Variant::L3 => strict_subs.fold(self.poset.full_mask(c), |acc, d| acc & self.poset.lift(d, c, values[d])),
            Variant::L2 => strict_subs.fold(0, |acc, d| acc | self.poset.lift(d, c, values[d])),
        }
    }

    /// Every element of the lattice, in lexicographic order of values.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<ContextFunction>, LogicError> {
        let n = self.poset.len();
        let mut out = Vec::new();
        let mut values = vec![0u32; n];
        let mut assigned = vec![false; n];
        self.extend(0, &mut values, &mut assigned, &mut out, limit)?;
        out.sort();
        Ok(out)
    }

    fn extend(
        &self,
        pos: usize,
        values: &mut Vec<u32>,
        assigned: &mut Vec<bool>,
        out: &mut Vec<ContextFunction>,
        limit: usize,
    ) -> Result<(), LogicError> {
        let order = self.poset.coarse_to_fine();
        if pos == order.len() {
            if out.len() >= limit {
                return Err(LogicError::TooManyElements(limit));
            }
            out.push(ContextFunction { values: values.clone() });
            return Ok(());
        }
        let c = order[pos];
        let bound = self.bound(values, assigned, c);
        let full = self.poset.full_mask(c);
        for m in 0..=full {
            let ok = match self.variant {
                Variant::L3 => m & !bound == 0,
                Variant::L2 => bound & !m == 0,
            };
            if ok {
                values[c] = m;
                assigned[c] = true;
                self.extend(pos + 1, values, assigned, out, limit)?;
                assigned[c] = false;
            }
        }
        values[c] = 0;
        Ok(())
    }

    /// A random element: contexts are filled coarse to fine, each value drawn
    /// uniformly among those allowed by the coarser ones.
    pub fn sample<R: Rng + ?Sized>(&self, r: &mut R) -> ContextFunction {
        let n = self.poset.len();
        let mut values = vec![0u32; n];
        let mut assigned = vec![false; n];
        for &c in self.poset.coarse_to_fine() {
            let bound = self.bound(&values, &assigned, c);
            let free = match self.variant {
                Variant::L3 => bound,
                Variant::L2 => self.poset.full_mask(c) & !bound,
            };
            let pick = r.random::<u32>() & free;
            values[c] = match self.variant {
                Variant::L3 => pick,
                Variant::L2 => bound | pick,
            };
            assigned[c] = true;
        }
        ContextFunction { values }
    }
}

/// Join, meet, implication and negation of two elements.
#[derive(Clone, Debug, Serialize)]
pub struct HeytingOps {
    pub join: ContextFunction,
    pub meet: ContextFunction,
    pub implication: ContextFunction,
    pub negation: ContextFunction,
}

fn ops(lattice: &ContextLattice, s1: &ContextFunction, s2: &ContextFunction) -> Result<HeytingOps, LogicError> {
    lattice.validate(s1)?;
    lattice.validate(s2)?;
    Ok(HeytingOps {
        join: lattice.join(s1, s2),
        meet: lattice.meet(s1, s2),
        implication: lattice.implies(s1, s2),
        negation: lattice.negate(s1),
    })
}

/// Operations in L3 over `poset`; `negation` is that of `s1`.
pub fn l3_ops(s1: &ContextFunction, s2: &ContextFunction, poset: &ContextPoset) -> Result<HeytingOps, LogicError> {
    ops(&ContextLattice::new(poset.clone(), Variant::L3), s1, s2)
}

/// Operations in L2 over `poset`; `negation` is that of `s1`.
pub fn l2_ops(s1: &ContextFunction, s2: &ContextFunction, poset: &ContextPoset) -> Result<HeytingOps, LogicError> {
    ops(&ContextLattice::new(poset.clone(), Variant::L2), s1, s2)
}
