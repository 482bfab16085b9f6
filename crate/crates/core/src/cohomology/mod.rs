//! Cohomology classes, cup products via chain-map lifting, and the maps
//! induced by group morphisms.
//!
//! Over a minimal resolution the dualized differentials vanish, so a degree-n
//! class is exactly a functional on the degree-n free basis: a coordinate
//! vector in `F2^(b_n)`. Products are Yoneda composites: lift a class to a
//! chain self-map of the resolution and evaluate the other class on the
//! appropriate component. Restriction and inflation both arise from a chain
//! map covering the identity of the trivial module along a group morphism.

pub mod generators;
pub mod verify;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::groups::{Character, Group, GroupMorphism};
use crate::resolution::{combine_rows, GroupAction, ModuleMap, Resolution};
use std::fmt;
use std::sync::Arc;

/// A mod-2 cohomology class: coordinates in the dual basis of the minimal
/// resolution's degree-`n` free basis.
#[derive(Clone)]
pub struct CohomologyClass {
    group: Arc<Group>,
    degree: usize,
    coords: BitVec,
}

impl CohomologyClass {
    pub fn new(res: &Resolution, degree: usize, coords: BitVec) -> Result<CohomologyClass> {
        if degree > res.max_degree() {
            return Err(Error::DegreeRange(format!(
                "degree {degree} beyond computed resolution ({})",
                res.max_degree()
            )));
        }
        if coords.len() != res.rank(degree) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates in degree {degree}, got {}",
                res.rank(degree),
                coords.len()
            )));
        }
        Ok(CohomologyClass {
            group: res.group().clone(),
            degree,
            coords,
        })
    }

    pub fn zero(res: &Resolution, degree: usize) -> CohomologyClass {
        CohomologyClass {
            group: res.group().clone(),
            degree,
            coords: BitVec::zeros(res.rank(degree)),
        }
    }

    /// The degree-0 unit class.
    pub fn unit(res: &Resolution) -> CohomologyClass {
        CohomologyClass {
            group: res.group().clone(),
            degree: 0,
            coords: BitVec::from_bits([true]),
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &BitVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        debug_assert_eq!(self.degree, other.degree);
        let mut coords = self.coords.clone();
        coords.xor_assign(&other.coords);
        CohomologyClass {
            group: self.group.clone(),
            degree: self.degree,
            coords,
        }
    }

    /// Compact coordinate rendering, e.g. "0110".
    pub fn coords_string(&self) -> String {
        (0..self.coords.len())
            .map(|i| if self.coords.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec() == other.group.spec()
            && self.degree == other.degree
            && self.coords == other.coords
    }
}

impl Eq for CohomologyClass {}

impl fmt::Debug for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H^{}({})[{}]",
            self.degree,
            self.group.spec().key(),
            self.coords_string()
        )
    }
}

/// Degree-1 class of a validated Z/2-valued character: the cocycle takes the
/// value `chi(g)` on the basis vector `b_g` dual to generator `g`.
pub fn class_from_hom(res: &Resolution, chi: &Character) -> Result<CohomologyClass> {
    if !Arc::ptr_eq(chi.group(), res.group()) {
        return Err(Error::DimensionMismatch(
            "character group does not match resolution group".into(),
        ));
    }
    if res.max_degree() < 1 {
        return Err(Error::DegreeRange(
            "resolution not computed to degree 1".into(),
        ));
    }
    let coords = BitVec::from_bits(res.group().minimal_generators().iter().map(|g| chi.eval(g)));
    CohomologyClass::new(res, 1, coords)
}

/// A chain map lifting a degree-`n` cocycle: components `phi_k : P_(k+n) -> P_k`
/// with `d_k . phi_k = phi_(k-1) . d_(k+n)` and `eps . phi_0` the cocycle.
pub struct ChainMapLift {
    group: Arc<Group>,
    class_degree: usize,
    components: Vec<ModuleMap>,
}

impl ChainMapLift {
    pub fn class_degree(&self) -> usize {
        self.class_degree
    }

    pub fn components(&self) -> &[ModuleMap] {
        &self.components
    }

    /// Evaluates another class on this lift: the cup product of the lifted
    /// class with `other`, in degree `class_degree + other.degree`.
    pub fn evaluate(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        if other.group.spec() != self.group.spec() {
            return Err(Error::DimensionMismatch(
                "cup product requires classes on the same group".into(),
            ));
        }
        let comp = self.components.get(other.degree).ok_or_else(|| {
            Error::DegreeRange(format!(
                "lift computed to shift {}, needed {}",
                self.components.len().saturating_sub(1),
                other.degree
            ))
        })?;
        let order = self.group.order();
        let coords = BitVec::from_bits((0..comp.src_rank).map(|j| {
            let img = &comp.images[j];
            other.coords.ones().fold(false, |acc, i| {
                acc ^ img.range_parity(i * order, (i + 1) * order)
            })
        }));
        Ok(CohomologyClass {
            group: self.group.clone(),
            degree: self.class_degree + other.degree,
            coords,
        })
    }
}

/// Lifts a class to a chain self-map of the resolution, with components
/// `phi_k` for `0 <= k <= bound - degree`. Deterministic: each lifting step
/// is a fixed-pivot solve against the relevant differential.
pub fn lift(res: &Resolution, class: &CohomologyClass, bound: usize) -> Result<ChainMapLift> {
    if !Arc::ptr_eq(class.group(), res.group()) {
        return Err(Error::DimensionMismatch(
            "class group does not match resolution group".into(),
        ));
    }
    let n = class.degree;
    if n > bound || bound > res.max_degree() {
        return Err(Error::DegreeRange(format!(
            "lift bound {bound} incompatible with class degree {n} and resolution depth {}",
            res.max_degree()
        )));
    }
    let order = res.group().order();
    let act = GroupAction::own(res.group());

    // The unit lifts to the identity chain map.
    if n == 0 && class.coords.get(0) {
        let components = (0..=bound)
            .map(|k| identity_module_map(res.rank(k), order))
            .collect();
        return Ok(ChainMapLift {
            group: res.group().clone(),
            class_degree: 0,
            components,
        });
    }

    let mut components: Vec<ModuleMap> = Vec::with_capacity(bound - n + 1);
    // phi_0 sends e_j to coords[j] times the algebra unit; its augmentation
    // reproduces the cocycle.
    let images0 = (0..res.rank(n))
        .map(|j| {
            let mut v = BitVec::zeros(order);
            if class.coords.get(j) {
                v.set(0, true);
            }
            v
        })
        .collect();
    components.push(ModuleMap {
        src_rank: res.rank(n),
        tgt_rank: 1,
        images: images0,
    });

    for k in 1..=bound - n {
        let prev = components[k - 1].expand_transposed(&act);
        let mut images = Vec::with_capacity(res.rank(k + n));
        for j in 0..res.rank(k + n) {
            let rhs = combine_rows(&prev, &res.differential(k + n).images[j]);
            let x = res
                .echelon(k)
                .solve(&rhs)
                .expect("resolution is exact, lifting solve cannot fail");
            images.push(x);
        }
        components.push(ModuleMap {
            src_rank: res.rank(k + n),
            tgt_rank: res.rank(k),
            images,
        });
    }
    Ok(ChainMapLift {
        group: res.group().clone(),
        class_degree: n,
        components,
    })
}

fn identity_module_map(rank: usize, order: usize) -> ModuleMap {
    let images = (0..rank)
        .map(|j| {
            let mut v = BitVec::zeros(rank * order);
            v.set(j * order, true);
            v
        })
        .collect();
    ModuleMap {
        src_rank: rank,
        tgt_rank: rank,
        images,
    }
}

/// Cup product by Yoneda composition. Commutative, associative, bilinear and
/// unital; the coordinates are independent of the internal lift choice
/// because minimality pins the representatives.
pub fn cup(res: &Resolution, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
    let total = a.degree + b.degree;
    if total > res.max_degree() {
        return Err(Error::ResourceBound(format!(
            "cup product degree {total} exceeds resolution depth {}",
            res.max_degree()
        )));
    }
    lift(res, a, total)?.evaluate(b)
}

/// A chain map from the source group's resolution to the target group's,
/// covering the identity of the trivial module along a group morphism
/// `m : S -> T`. Pulling a class back along it computes the induced map
/// `H^n(T) -> H^n(S)`: restriction when `m` is an inclusion, inflation when
/// it is a surjection.
pub struct InducedMap {
    source_group: Arc<Group>,
    target_group: Arc<Group>,
    components: Vec<ModuleMap>,
}

impl InducedMap {
    pub fn bound(&self) -> usize {
        self.components.len() - 1
    }

    /// Induced image of a class on the target group.
    pub fn pull_back(&self, class: &CohomologyClass) -> Result<CohomologyClass> {
        if class.group.spec() != self.target_group.spec() {
            return Err(Error::DimensionMismatch(
                "class is not on the morphism's target group".into(),
            ));
        }
        let comp = self.components.get(class.degree).ok_or_else(|| {
            Error::DegreeRange(format!(
                "comparison map computed to degree {}, needed {}",
                self.bound(),
                class.degree
            ))
        })?;
        let order = self.target_group.order();
        let coords = BitVec::from_bits((0..comp.src_rank).map(|j| {
            let img = &comp.images[j];
            class.coords.ones().fold(false, |acc, i| {
                acc ^ img.range_parity(i * order, (i + 1) * order)
            })
        }));
        Ok(CohomologyClass {
            group: self.source_group.clone(),
            degree: class.degree,
            coords,
        })
    }

    /// Matrix of the induced map in degree `n`: rows indexed by the source
    /// group's basis, columns by the target group's.
    pub fn matrix(&self, n: usize, target_rank: usize) -> BitMatrix {
        let comp = &self.components[n];
        debug_assert_eq!(comp.tgt_rank, target_rank);
        let order = self.target_group.order();
        let mut m = BitMatrix::zeros(comp.src_rank, target_rank);
        for (j, img) in comp.images.iter().enumerate() {
            for i in 0..target_rank {
                if img.range_parity(i * order, (i + 1) * order) {
                    m.set(j, i, true);
                }
            }
        }
        m
    }
}

/// Builds the comparison chain map along `m : S -> T` up to `bound`, lifting
/// the identity of the trivial module. `res_source` resolves `S`, `res_target`
/// resolves `T`.
pub fn comparison_map(
    m: &GroupMorphism,
    res_source: &Resolution,
    res_target: &Resolution,
    bound: usize,
) -> Result<InducedMap> {
    if !Arc::ptr_eq(m.source(), res_source.group()) || !Arc::ptr_eq(m.target(), res_target.group())
    {
        return Err(Error::DimensionMismatch(
            "resolutions do not match morphism endpoints".into(),
        ));
    }
    if bound > res_source.max_degree() || bound > res_target.max_degree() {
        return Err(Error::DegreeRange(format!(
            "comparison bound {bound} exceeds a computed resolution depth"
        )));
    }
    let t_order = m.target().order();
    let act = GroupAction::along(m);

    let mut unit = BitVec::zeros(t_order);
    unit.set(0, true);
    let mut components = vec![ModuleMap {
        src_rank: 1,
        tgt_rank: 1,
        images: vec![unit],
    }];

    for n in 1..=bound {
        let prev = components[n - 1].expand_transposed(&act);
        let mut images = Vec::with_capacity(res_source.rank(n));
        for j in 0..res_source.rank(n) {
            let rhs = combine_rows(&prev, &res_source.differential(n).images[j]);
            let x = res_target
                .echelon(n)
                .solve(&rhs)
                .expect("target resolution is exact, comparison solve cannot fail");
            images.push(x);
        }
        components.push(ModuleMap {
            src_rank: res_source.rank(n),
            tgt_rank: res_target.rank(n),
            images,
        });
    }
    Ok(InducedMap {
        source_group: m.source().clone(),
        target_group: m.target().clone(),
        components,
    })
}

/// Restriction along a subgroup inclusion `m : H -> G`: the induced ring map
/// `H^*(G) -> H^*(H)`.
pub fn restrict(
    m: &GroupMorphism,
    res_subgroup: &Resolution,
    res_group: &Resolution,
    class: &CohomologyClass,
) -> Result<CohomologyClass> {
    if !m.is_inclusion() {
        return Err(Error::KindMismatch(
            "restriction requires an inclusion morphism".into(),
        ));
    }
    comparison_map(m, res_subgroup, res_group, class.degree())?.pull_back(class)
}

/// Inflation along a quotient surjection `m : G -> Q`: the induced ring map
/// `H^*(Q) -> H^*(G)`.
pub fn inflate(
    m: &GroupMorphism,
    res_group: &Resolution,
    res_quotient: &Resolution,
    class: &CohomologyClass,
) -> Result<CohomologyClass> {
    if !m.is_surjection() {
        return Err(Error::KindMismatch(
            "inflation requires a surjection morphism".into(),
        ));
    }
    comparison_map(m, res_group, res_quotient, class.degree())?.pull_back(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelianization_homs, GroupSpec};

    fn setup(spec: GroupSpec, degree: usize) -> (Arc<Group>, Resolution) {
        let g = Group::new(spec).unwrap();
        let res = Resolution::new(&g, degree).unwrap();
        (g, res)
    }

    #[test]
    fn degree_one_classes_are_generator_duals() {
        let (g, res) = setup(GroupSpec::Holomorph { rho: 3 }, 1);
        let homs = abelianization_homs(&g);
        let w1 = class_from_hom(&res, &homs[0]).unwrap();
        assert_eq!(w1.coords(), &BitVec::from_bits([true, false, false]));
        let zero = class_from_hom(&res, &Character::zero(g)).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn unit_lifts_to_identity() {
        let (_, res) = setup(GroupSpec::Cyclic { order: 4 }, 3);
        let unit = CohomologyClass::unit(&res);
        let l = lift(&res, &unit, 3).unwrap();
        for (k, comp) in l.components().iter().enumerate() {
            assert_eq!(comp.src_rank, res.rank(k));
            for (j, img) in comp.images.iter().enumerate() {
                let mut expected = BitVec::zeros(comp.tgt_rank * res.group().order());
                expected.set(j * res.group().order(), true);
                assert_eq!(img, &expected);
            }
        }
    }

    #[test]
    fn lift_commutes_with_differentials() {
        let (g, res) = setup(GroupSpec::DihedralGz { rho: 3 }, 5);
        let homs = abelianization_homs(&g);
        let w1 = class_from_hom(&res, &homs[0]).unwrap();
        let l = lift(&res, &w1, 5).unwrap();
        let act = GroupAction::own(&g);
        // d_k . phi_k = phi_(k-1) . d_(k+1) on every free generator.
        for k in 1..l.components().len() {
            let phi_k = &l.components()[k];
            let phi_prev = &l.components()[k - 1];
            for j in 0..phi_k.src_rank {
                let lhs = res.differential(k).apply(&act, &phi_k.images[j]);
                let rhs = phi_prev.apply(&act, &res.differential(k + 1).images[j]);
                assert_eq!(lhs, rhs, "commuting square fails at k={k}, j={j}");
            }
        }
    }

    #[test]
    fn cup_is_unital_and_zero_absorbing() {
        let (g, res) = setup(GroupSpec::Cyclic { order: 8 }, 4);
        let wy = class_from_hom(&res, &abelianization_homs(&g)[0]).unwrap();
        let unit = CohomologyClass::unit(&res);
        assert_eq!(cup(&res, &unit, &wy).unwrap(), wy);
        assert_eq!(cup(&res, &wy, &unit).unwrap(), wy);
        let zero = CohomologyClass::zero(&res, 1);
        assert!(cup(&res, &zero, &wy).unwrap().is_zero());
    }

    #[test]
    fn cyclic_ring_structure() {
        // For order >= 4 the degree-1 generator squares to zero while the
        // degree-2 generator is polynomial; for order 2 the square is the
        // degree-2 basis class.
        let (g, res) = setup(GroupSpec::Cyclic { order: 8 }, 6);
        let wy = class_from_hom(&res, &abelianization_homs(&g)[0]).unwrap();
        let cy = CohomologyClass::new(&res, 2, BitVec::from_bits([true])).unwrap();
        assert!(cup(&res, &wy, &wy).unwrap().is_zero());
        let cy2 = cup(&res, &cy, &cy).unwrap();
        assert!(!cy2.is_zero());
        let wycy = cup(&res, &wy, &cy).unwrap();
        assert!(!wycy.is_zero());
        assert_eq!(cup(&res, &cy, &wy).unwrap(), wycy);

        let (g2, res2) = setup(GroupSpec::Cyclic { order: 2 }, 4);
        let w = class_from_hom(&res2, &abelianization_homs(&g2)[0]).unwrap();
        let w2 = cup(&res2, &w, &w).unwrap();
        assert_eq!(w2.coords(), &BitVec::from_bits([true]));
    }

    #[test]
    fn cup_commutative_and_associative_dihedral() {
        let (g, res) = setup(GroupSpec::DihedralGz { rho: 3 }, 6);
        let homs = abelianization_homs(&g);
        let classes: Vec<CohomologyClass> = homs
            .iter()
            .map(|h| class_from_hom(&res, h).unwrap())
            .collect();
        for a in &classes {
            for b in &classes {
                assert_eq!(cup(&res, a, b).unwrap(), cup(&res, b, a).unwrap());
                for c in &classes {
                    let left = cup(&res, &cup(&res, a, b).unwrap(), c).unwrap();
                    let right = cup(&res, a, &cup(&res, b, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn restriction_of_degree_one_matches_character_pullback() {
        let (g, res_g) = setup(GroupSpec::Holomorph { rho: 3 }, 2);
        let n = Group::new(GroupSpec::Cyclic { order: 8 }).unwrap();
        let res_n = Resolution::new(&n, 2).unwrap();
        let incl = GroupMorphism::new(
            n.clone(),
            g.clone(),
            vec![g.element_from_exps(&[1, 0, 0]).unwrap()],
        )
        .unwrap();
        for chi in abelianization_homs(&g) {
            let class = class_from_hom(&res_g, &chi).unwrap();
            let restricted = restrict(&incl, &res_n, &res_g, &class).unwrap();
            let pulled = class_from_hom(&res_n, &chi.pull_back(&incl).unwrap()).unwrap();
            assert_eq!(restricted, pulled);
        }
    }

    #[test]
    fn inflation_of_degree_one_matches_character_pullback() {
        let big = Group::new(GroupSpec::Holomorph { rho: 4 }).unwrap();
        let small = Group::new(GroupSpec::Holomorph { rho: 3 }).unwrap();
        let res_big = Resolution::new(&big, 2).unwrap();
        let res_small = Resolution::new(&small, 2).unwrap();
        let pi = GroupMorphism::new(
            big.clone(),
            small.clone(),
            vec![
                small.element_from_exps(&[1, 0, 0]).unwrap(),
                small.element_from_exps(&[0, 1, 0]).unwrap(),
                small.element_from_exps(&[0, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        for chi in abelianization_homs(&small) {
            let class = class_from_hom(&res_small, &chi).unwrap();
            let inflated = inflate(&pi, &res_big, &res_small, &class).unwrap();
            let pulled = class_from_hom(&res_big, &chi.pull_back(&pi).unwrap()).unwrap();
            assert_eq!(inflated, pulled);
        }
        // The unit inflates to the unit.
        let unit = CohomologyClass::unit(&res_small);
        assert_eq!(
            inflate(&pi, &res_big, &res_small, &unit).unwrap(),
            CohomologyClass::unit(&res_big)
        );
    }

    #[test]
    fn kind_checks_enforced() {
        let (g, res_g) = setup(GroupSpec::Holomorph { rho: 3 }, 2);
        let n = Group::new(GroupSpec::Cyclic { order: 8 }).unwrap();
        let res_n = Resolution::new(&n, 2).unwrap();
        let incl = GroupMorphism::new(
            n.clone(),
            g.clone(),
            vec![g.element_from_exps(&[1, 0, 0]).unwrap()],
        )
        .unwrap();
        let class = CohomologyClass::zero(&res_g, 1);
        // Inflation along an inclusion must be rejected.
        assert!(matches!(
            inflate(&incl, &res_n, &res_g, &class),
            Err(Error::KindMismatch(_))
        ));
    }
}
