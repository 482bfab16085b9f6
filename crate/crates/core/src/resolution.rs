//! Minimal free resolutions of the trivial module over the GF(2) group
//! algebra of a finite 2-group.
//!
//! The group algebra of a 2-group over F2 is local with maximal ideal the
//! augmentation ideal, so the standard construction applies: at each stage
//! take the kernel of the previous differential as an F2-subspace, quotient
//! by its radical `I K`, and map a new free module onto deterministic lifts
//! of a basis of `K / I K`. Ranks of the resulting modules are the mod-2
//! Betti numbers.
//!
//! A free module of rank `m` is carried as `F2^(m |G|)`: block `i` holds the
//! group-algebra coefficients of the `i`-th basis vector, indexed by the
//! group's fixed element order.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon, SpanAccumulator};
use crate::groups::{Group, GroupMorphism};
use std::sync::Arc;

/// Resource bounds for resolution construction.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_degree: usize,
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 10,
            max_group_order: 512,
        }
    }
}

/// How a group acts on free-module coordinates: either a group on its own
/// module, or a source group acting on a target module through a morphism.
pub struct GroupAction<'a> {
    source: &'a Group,
    target: &'a Group,
    index_map: Option<&'a [u32]>,
}

impl<'a> GroupAction<'a> {
    pub fn own(group: &'a Group) -> Self {
        GroupAction {
            source: group,
            target: group,
            index_map: None,
        }
    }

    pub fn along(m: &'a GroupMorphism) -> Self {
        GroupAction {
            source: m.source(),
            target: m.target(),
            index_map: Some(m.index_map()),
        }
    }

    pub fn source_order(&self) -> usize {
        self.source.order()
    }

    pub fn target_order(&self) -> usize {
        self.target.order()
    }

    /// Left-multiplication permutation of the target induced by source
    /// element `s`.
    fn perm(&self, s: usize) -> &'a [u32] {
        let t = match self.index_map {
            Some(map) => map[s] as usize,
            None => s,
        };
        self.target.left_mul_perm(t)
    }
}

/// Applies a left-multiplication permutation blockwise to a free-module
/// coordinate vector.
pub fn permute_blocks(v: &BitVec, perm: &[u32], order: usize) -> BitVec {
    debug_assert_eq!(v.len() % order, 0);
    let mut out = BitVec::zeros(v.len());
    for bit in v.ones() {
        let block = bit / order;
        let h = bit - block * order;
        out.set(block * order + perm[h] as usize, true);
    }
    out
}

/// An `F2[G]`-linear map between free modules, stored as the images of the
/// source's free basis vectors.
#[derive(Clone)]
pub struct ModuleMap {
    pub src_rank: usize,
    pub tgt_rank: usize,
    /// `images[i]` is the image of basis vector `i`, of length
    /// `tgt_rank * |target group|`.
    pub images: Vec<BitVec>,
}

impl ModuleMap {
    /// Applies the equivariant extension of this map to a coordinate vector
    /// of the source module.
    pub fn apply(&self, act: &GroupAction, v: &BitVec) -> BitVec {
        let s_order = act.source_order();
        let t_order = act.target_order();
        debug_assert_eq!(v.len(), self.src_rank * s_order);
        let mut out = BitVec::zeros(self.tgt_rank * t_order);
        for bit in v.ones() {
            let i = bit / s_order;
            let s = bit - i * s_order;
            out.xor_assign(&permute_blocks(&self.images[i], act.perm(s), t_order));
        }
        out
    }

    /// Full matrix of the equivariant extension, stored transposed: row
    /// `(i, s)` is the image of `s . e_i`. This layout turns applications
    /// into word-level row XORs.
    pub fn expand_transposed(&self, act: &GroupAction) -> BitMatrix {
        let s_order = act.source_order();
        let t_order = act.target_order();
        let mut m = BitMatrix::zeros(self.src_rank * s_order, self.tgt_rank * t_order);
        for i in 0..self.src_rank {
            for s in 0..s_order {
                let row = permute_blocks(&self.images[i], act.perm(s), t_order);
                m.xor_row_with(i * s_order + s, &row);
            }
        }
        m
    }

    /// Full matrix in the usual orientation (target coordinates as rows).
    pub fn expand(&self, act: &GroupAction) -> BitMatrix {
        self.expand_transposed(act).transposed()
    }

    /// True iff every entry lies in the augmentation ideal, i.e. every
    /// group-algebra coefficient block of every image has even weight.
    pub fn entries_in_augmentation_ideal(&self, target_order: usize) -> bool {
        self.images.iter().all(|img| {
            (0..self.tgt_rank).all(|t| !img.range_parity(t * target_order, (t + 1) * target_order))
        })
    }
}

/// XOR of the rows of `m` selected by the set bits of `bits`.
pub fn combine_rows(m: &BitMatrix, bits: &BitVec) -> BitVec {
    debug_assert_eq!(m.rows(), bits.len());
    let mut out = BitVec::zeros(m.cols());
    for r in bits.ones() {
        out.xor_assign(&m.row(r));
    }
    out
}

/// A minimal free resolution of the trivial module, built lazily degree by
/// degree. `differential(n)` is `d_n : P_n -> P_(n-1)` for `n >= 1`; the
/// augmentation `P_0 -> F2` is implicit (sum of coefficients).
pub struct Resolution {
    group: Arc<Group>,
    limits: Limits,
    diffs: Vec<ModuleMap>,
    echelons: Vec<Echelon>,
}

impl Resolution {
    pub fn new(group: &Arc<Group>, max_degree: usize) -> Result<Resolution> {
        Self::with_limits(group, max_degree, Limits::default())
    }

    pub fn with_limits(
        group: &Arc<Group>,
        max_degree: usize,
        limits: Limits,
    ) -> Result<Resolution> {
        if !group.order().is_power_of_two() {
            return Err(Error::UnsupportedGroup(format!(
                "group of order {} is not a 2-group",
                group.order()
            )));
        }
        if group.order() > limits.max_group_order {
            return Err(Error::ResourceBound(format!(
                "group order {} exceeds bound {}",
                group.order(),
                limits.max_group_order
            )));
        }
        let mut res = Resolution {
            group: group.clone(),
            limits,
            diffs: Vec::new(),
            echelons: Vec::new(),
        };
        res.extend_to(max_degree)?;
        Ok(res)
    }

    /// Reassembles a resolution from stored differentials (cache loads).
    /// Shapes are validated; echelon data is rebuilt.
    pub fn from_differentials(
        group: &Arc<Group>,
        diffs: Vec<ModuleMap>,
        limits: Limits,
    ) -> Result<Resolution> {
        let order = group.order();
        let mut prev_rank = 1usize;
        for (k, d) in diffs.iter().enumerate() {
            if d.tgt_rank != prev_rank {
                return Err(Error::DimensionMismatch(format!(
                    "differential {} targets rank {}, expected {}",
                    k + 1,
                    d.tgt_rank,
                    prev_rank
                )));
            }
            if d.images.len() != d.src_rank
                || d.images.iter().any(|v| v.len() != d.tgt_rank * order)
            {
                return Err(Error::DimensionMismatch(format!(
                    "differential {} has malformed images",
                    k + 1
                )));
            }
            prev_rank = d.src_rank;
        }
        let mut echelons = Vec::with_capacity(diffs.len());
        for d in &diffs {
            let expanded = d.expand(&GroupAction::own(group));
            echelons.push(Echelon::new(&expanded));
        }
        Ok(Resolution {
            group: group.clone(),
            limits,
            diffs,
            echelons,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Highest degree whose module (and incoming differential) is computed.
    pub fn max_degree(&self) -> usize {
        self.diffs.len()
    }

    /// `b_n`, the rank of the degree-`n` module. Valid for `n <= max_degree`.
    pub fn rank(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.diffs[n - 1].src_rank
        }
    }

    /// The mod-2 Betti number in degree `n`; equal to `rank(n)` because the
    /// resolution is minimal over a local algebra.
    pub fn betti(&self, n: usize) -> usize {
        self.rank(n)
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|n| self.rank(n)).collect()
    }

    /// `d_n` for `1 <= n <= max_degree`.
    pub fn differential(&self, n: usize) -> &ModuleMap {
        &self.diffs[n - 1]
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.diffs
    }

    /// Echelon data of the expanded matrix of `d_n`, shared by every solve
    /// against that differential.
    pub fn echelon(&self, n: usize) -> &Echelon {
        &self.echelons[n - 1]
    }

    pub fn extend_to(&mut self, degree: usize) -> Result<()> {
        if degree > self.limits.max_degree {
            return Err(Error::ResourceBound(format!(
                "degree {} exceeds bound {}",
                degree, self.limits.max_degree
            )));
        }
        while self.diffs.len() < degree {
            self.extend_one();
        }
        Ok(())
    }

    fn extend_one(&mut self) {
        let order = self.group.order();
        let next = if self.diffs.is_empty() {
            // d_1 sends the fixed free basis {b_g} onto {g - 1} for the
            // distinguished minimal generators, in their declared order.
            // This pins degree-1 dual coordinates to the generator duals.
            let images: Vec<BitVec> = self
                .group
                .minimal_generators()
                .iter()
                .map(|g| {
                    let mut v = BitVec::zeros(order);
                    v.set(self.group.index_of(g), true);
                    v.flip(0);
                    v
                })
                .collect();
            ModuleMap {
                src_rank: images.len(),
                tgt_rank: 1,
                images,
            }
        } else {
            let n = self.diffs.len();
            let ech = &self.echelons[n - 1];
            let kernel = ech.kernel_basis();
            // I K is spanned by (g - 1) k over the group's generators and a
            // basis of K, because K is a submodule.
            let mut span = SpanAccumulator::new(ech.cols());
            for gen in self.group.minimal_generators() {
                let perm = self.group.left_mul_perm(self.group.index_of(&gen));
                for k in &kernel {
                    let mut moved = permute_blocks(k, perm, order);
                    moved.xor_assign(k);
                    span.insert(moved);
                }
            }
            // Greedy complement: kernel vectors whose residues are
            // independent mod I K become the new minimal generators.
            let mut images = Vec::new();
            for k in kernel {
                if span.insert(k.clone()) {
                    images.push(k);
                }
            }
            ModuleMap {
                src_rank: images.len(),
                tgt_rank: self.rank(n),
                images,
            }
        };
        let expanded = next.expand(&GroupAction::own(&self.group));
        self.echelons.push(Echelon::new(&expanded));
        self.diffs.push(next);
    }

    /// Verifies d.d = 0, exactness, and minimality across all computed
    /// degrees. Returns a description of the first failure.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let order = self.group.order();
        let act = GroupAction::own(&self.group);
        if !self.diffs.is_empty() {
            // Exactness at P_0: the image of d_1 is the augmentation ideal.
            if self.echelons[0].rank() != order - 1 {
                return Err(format!(
                    "image of d_1 has dimension {}, expected {}",
                    self.echelons[0].rank(),
                    order - 1
                ));
            }
        }
        for n in 1..=self.max_degree() {
            if !self.diffs[n - 1].entries_in_augmentation_ideal(order) {
                return Err(format!("d_{n} has entries outside the augmentation ideal"));
            }
            if n >= 2 {
                for img in &self.diffs[n - 1].images {
                    if !self.diffs[n - 2].apply(&act, img).is_zero() {
                        return Err(format!("d_{} . d_{} != 0", n - 1, n));
                    }
                }
                let kernel_dim = self.echelons[n - 2].cols() - self.echelons[n - 2].rank();
                if self.echelons[n - 1].rank() != kernel_dim {
                    return Err(format!(
                        "exactness fails at degree {}: ker dim {} vs image dim {}",
                        n - 1,
                        kernel_dim,
                        self.echelons[n - 1].rank()
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelianization_homs, GroupSpec};

    fn resolve(spec: GroupSpec, degree: usize) -> Resolution {
        let g = Group::new(spec).unwrap();
        Resolution::new(&g, degree).unwrap()
    }

    #[test]
    fn cyclic_groups_have_rank_one_everywhere() {
        for order in [2u64, 4, 8, 16] {
            let res = resolve(GroupSpec::Cyclic { order }, 6);
            assert_eq!(res.ranks(), vec![1; 7], "cyclic order {order}");
            res.check_invariants().unwrap();
        }
    }

    #[test]
    fn first_rank_counts_minimal_generators() {
        let g = Group::new(GroupSpec::Holomorph { rho: 3 }).unwrap();
        let res = Resolution::new(&g, 1).unwrap();
        assert_eq!(res.rank(1), abelianization_homs(&g).len());
        assert_eq!(res.rank(1), 3);
    }

    #[test]
    fn holomorph_betti_low_degrees() {
        let res = resolve(GroupSpec::Holomorph { rho: 3 }, 4);
        assert_eq!(res.ranks(), vec![1, 3, 5, 7, 10]);
        res.check_invariants().unwrap();
    }

    #[test]
    fn metacyclic_betti_low_degrees() {
        let res = resolve(GroupSpec::MetacyclicGx { rho: 3 }, 4);
        assert_eq!(res.ranks(), vec![1, 2, 2, 2, 3]);
        res.check_invariants().unwrap();
    }

    #[test]
    fn dihedral_betti_grows_linearly() {
        let res = resolve(GroupSpec::DihedralGz { rho: 3 }, 5);
        assert_eq!(res.ranks(), vec![1, 2, 3, 4, 5, 6]);
        res.check_invariants().unwrap();
    }

    #[test]
    fn elementary_abelian_rank_two() {
        let res = resolve(
            GroupSpec::DirectProduct(vec![
                GroupSpec::Cyclic { order: 2 },
                GroupSpec::Cyclic { order: 2 },
            ]),
            5,
        );
        // Polynomial ring on two degree-1 generators: b_n = n + 1.
        assert_eq!(res.ranks(), vec![1, 2, 3, 4, 5, 6]);
        res.check_invariants().unwrap();
    }

    #[test]
    fn resource_bounds_enforced() {
        let g = Group::new(GroupSpec::Cyclic { order: 8 }).unwrap();
        let err = Resolution::with_limits(
            &g,
            4,
            Limits {
                max_degree: 3,
                max_group_order: 512,
            },
        );
        assert!(matches!(err, Err(Error::ResourceBound(_))));
        let err = Resolution::with_limits(
            &g,
            2,
            Limits {
                max_degree: 10,
                max_group_order: 4,
            },
        );
        assert!(matches!(err, Err(Error::ResourceBound(_))));
    }

    #[test]
    fn rebuild_from_differentials_round_trips() {
        let g = Group::new(GroupSpec::DihedralGz { rho: 3 }).unwrap();
        let res = Resolution::new(&g, 4).unwrap();
        let rebuilt =
            Resolution::from_differentials(&g, res.differentials().to_vec(), res.limits()).unwrap();
        assert_eq!(rebuilt.ranks(), res.ranks());
        for n in 1..=4 {
            for (a, b) in res
                .differential(n)
                .images
                .iter()
                .zip(&rebuilt.differential(n).images)
            {
                assert_eq!(a, b);
            }
        }
        rebuilt.check_invariants().unwrap();
    }
}
