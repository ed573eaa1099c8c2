//! Objects as formal sums of words in simple labels, and their
//! left-combed fusion-tree bases.

use alloc::vec;
use alloc::vec::Vec;

use crate::category::{CategoryData, FusionRing};

/// `⊕_k m_k · (x_{k,1} ⊗ … ⊗ x_{k,n_k})`. The empty word is the unit.
///
/// Tensor products concatenate words and distribute over sums, so the
/// representation is strictly associative; associators are absorbed into the
/// fusion-tree bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectExpr {
    summands: Vec<(Vec<usize>, usize)>,
}

impl ObjectExpr {
    /// The zero object.
    pub fn zero() -> Self {
        ObjectExpr { summands: vec![] }
    }

    pub fn unit() -> Self {
        Self::word(vec![])
    }

    pub fn simple(a: usize) -> Self {
        Self::word(vec![a])
    }

    pub fn word(w: Vec<usize>) -> Self {
        ObjectExpr {
            summands: vec![(w, 1)],
        }
    }

    /// Builds a sum, dropping summands of multiplicity zero.
    pub fn sum(summands: Vec<(Vec<usize>, usize)>) -> Self {
        ObjectExpr {
            summands: summands.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    pub fn summands(&self) -> &[(Vec<usize>, usize)] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Concatenation of summand lists.
    pub fn direct_sum(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        ObjectExpr { summands }
    }

    /// `X ⊗ Y`, with summands ordered `(k, l)` lexicographically and copy
    /// index `c_k * m_l + c_l`.
    pub fn tensor(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut summands = Vec::with_capacity(self.summands.len() * other.summands.len());
        for (u, m) in &self.summands {
            for (v, n) in &other.summands {
                let mut w = u.clone();
                w.extend_from_slice(v);
                summands.push((w, m * n));
            }
        }
        ObjectExpr { summands }
    }

    /// `X*`: every word reversed and dualized letterwise.
    pub fn dual(&self, cat: &CategoryData) -> ObjectExpr {
        ObjectExpr {
            summands: self
                .summands
                .iter()
                .map(|(w, m)| (w.iter().rev().map(|&a| cat.dual(a)).collect(), *m))
                .collect(),
        }
    }

    /// Largest label id appearing, if any.
    pub fn max_label(&self) -> Option<usize> {
        self.summands
            .iter()
            .flat_map(|(w, _)| w.iter().copied())
            .max()
    }

    /// `dim Hom(c, X)`.
    pub fn sector_dim(&self, ring: &FusionRing, c: usize) -> usize {
        self.summands
            .iter()
            .map(|(w, m)| m * fusion_trees(ring, w, c).len())
            .sum()
    }

    /// Sector dimensions for every label.
    pub fn sector_dims(&self, ring: &FusionRing) -> Vec<usize> {
        (0..ring.n_labels())
            .map(|c| self.sector_dim(ring, c))
            .collect()
    }

    /// Offset of summand `k`, copy `copy` within the sector-`c` basis.
    pub fn offset(&self, ring: &FusionRing, c: usize, k: usize, copy: usize) -> usize {
        let before: usize = self.summands[..k]
            .iter()
            .map(|(w, m)| m * fusion_trees(ring, w, c).len())
            .sum();
        before + copy * fusion_trees(ring, &self.summands[k].0, c).len()
    }
}

/// The fusion trees of `word` with root `root`, as chains
/// `[x1, e2, …, e_n = root]` where `e_k` is the channel of the first `k`
/// letters. The empty word has the single chain `[]` at root 0.
/// Chains are listed in lexicographic order.
pub fn fusion_trees(ring: &FusionRing, word: &[usize], root: usize) -> Vec<Vec<usize>> {
    if word.is_empty() {
        return if root == 0 { vec![vec![]] } else { vec![] };
    }
    let n = ring.n_labels();
    let mut partial: Vec<Vec<usize>> = vec![vec![word[0]]];
    for &x in &word[1..] {
        let mut next = Vec::new();
        for chain in &partial {
            let last = *chain.last().expect("nonempty chain");
            for e in 0..n {
                if ring.admissible(last, x, e) {
                    let mut c = chain.clone();
                    c.push(e);
                    next.push(c);
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .filter(|c| *c.last().expect("nonempty chain") == root)
        .collect()
}

/// Canonical basis of `Hom(root, x1 ⊗ … ⊗ xn)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTreeBasis {
    pub root: usize,
    pub leaves: Vec<usize>,
    pub trees: Vec<Vec<usize>>,
}

impl FusionTreeBasis {
    pub fn new(ring: &FusionRing, leaves: Vec<usize>, root: usize) -> Self {
        let trees = fusion_trees(ring, &leaves, root);
        FusionTreeBasis {
            root,
            leaves,
            trees,
        }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.trees
            .binary_search_by(|t| t.as_slice().cmp(chain))
            .ok()
    }
}
