//! Essentially finite groupoids, uniformly represented as action
//! groupoids: objects are the points of a G-set, morphisms `m -> g |> m`
//! are labelled by group elements, and composition is multiplication.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gset::{GSet, Orbit};
use crate::group::GroupHom;
use crate::linalg::{rat_int, Rat};

#[derive(Debug, Clone)]
pub struct ActionGroupoid {
    pub carrier: Arc<GSet>,
}

impl ActionGroupoid {
    pub fn new(carrier: GSet) -> Self {
        ActionGroupoid { carrier: Arc::new(carrier) }
    }

    /// The one-object groupoid with automorphism group G.
    pub fn single_object(group: Arc<crate::group::FiniteGroup>) -> Self {
        ActionGroupoid::new(GSet::point(group))
    }

    /// The terminal groupoid: one object, trivial group.
    pub fn terminal() -> Self {
        let triv = crate::group::FiniteGroup::cyclic(1).expect("trivial group");
        ActionGroupoid::single_object(triv)
    }

    pub fn objects(&self) -> usize {
        self.carrier.size()
    }

    pub fn group(&self) -> &Arc<crate::group::FiniteGroup> {
        &self.carrier.group
    }

    /// Path components: identical to the orbit decomposition of the
    /// carrier; the automorphism group of a representative is its
    /// stabilizer.
    pub fn path_components(&self) -> Vec<Orbit> {
        self.carrier.orbits()
    }

    /// Groupoid cardinality: the sum over path components of the
    /// reciprocal automorphism group order, as an exact rational.
    pub fn homotopy_content(&self) -> Rat {
        let mut total = Rat::zero();
        for comp in self.path_components() {
            total += Rat::new(1.into(), (comp.stabilizer.len() as i64).into());
        }
        total
    }

    /// Automorphism group order of an object, by direct stabilizer count.
    pub fn aut_order(&self, m: usize) -> usize {
        (0..self.group().order())
            .filter(|&g| self.carrier.act(g, m) == m)
            .count()
    }
}

impl PartialEq for ActionGroupoid {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.carrier, &other.carrier) {
            return true;
        }
        if self.carrier.size() != other.carrier.size()
            || self.carrier.group.order() != other.carrier.group.order()
            || *self.carrier.group != *other.carrier.group
        {
            return false;
        }
        let (n, s) = (self.carrier.group.order(), self.carrier.size());
        (0..n).all(|g| (0..s).all(|m| self.carrier.act(g, m) == other.carrier.act(g, m)))
    }
}

/// A functor between action groupoids: a group homomorphism together
/// with an equivariant map of carriers.
#[derive(Debug, Clone)]
pub struct GroupoidMap {
    pub source: ActionGroupoid,
    pub target: ActionGroupoid,
    pub hom: GroupHom,
    pub point_map: Vec<usize>,
}

impl GroupoidMap {
    pub fn new(
        source: ActionGroupoid,
        target: ActionGroupoid,
        hom: GroupHom,
        point_map: Vec<usize>,
    ) -> Result<Self> {
        if !Arc::ptr_eq(&hom.source, &source.carrier.group) && *hom.source != *source.carrier.group
        {
            return Err(Error::validation("homomorphism source group mismatch"));
        }
        if !Arc::ptr_eq(&hom.target, &target.carrier.group) && *hom.target != *target.carrier.group
        {
            return Err(Error::validation("homomorphism target group mismatch"));
        }
        if point_map.len() != source.objects() {
            return Err(Error::validation("point map has wrong length"));
        }
        if point_map.iter().any(|&m| m >= target.objects()) {
            return Err(Error::validation("point map out of range"));
        }
        let map = GroupoidMap { source, target, hom, point_map };
        map.check_equivariance()?;
        Ok(map)
    }

    /// Internal constructor for maps that are equivariant by
    /// construction; checked only in debug builds.
    pub(crate) fn new_trusted(
        source: ActionGroupoid,
        target: ActionGroupoid,
        hom: GroupHom,
        point_map: Vec<usize>,
    ) -> Self {
        let map = GroupoidMap { source, target, hom, point_map };
        debug_assert!(map.check_equivariance().is_ok());
        map
    }

    fn check_equivariance(&self) -> Result<()> {
        for g in 0..self.source.group().order() {
            let fg = self.hom.apply(g);
            for m in 0..self.source.objects() {
                if self.point_map[self.source.carrier.act(g, m)]
                    != self.target.carrier.act(fg, self.point_map[m])
                {
                    return Err(Error::validation(format!(
                        "point map is not equivariant at (g={g}, m={m})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(groupoid: ActionGroupoid) -> Self {
        let hom = GroupHom::identity(groupoid.carrier.group.clone());
        let point_map = (0..groupoid.objects()).collect();
        GroupoidMap { source: groupoid.clone(), target: groupoid, hom, point_map }
    }

    /// The unique functor to the terminal groupoid.
    pub fn to_terminal(source: ActionGroupoid) -> Self {
        let target = ActionGroupoid::terminal();
        let hom = GroupHom {
            source: source.carrier.group.clone(),
            target: target.carrier.group.clone(),
            image: vec![0; source.group().order()],
        };
        let point_map = vec![0; source.objects()];
        GroupoidMap { source, target, hom, point_map }
    }
}

/// Exact groupoid-cardinality of a full subgroupoid on one component.
pub fn component_content(aut_order: usize) -> Rat {
    rat_int(1) / rat_int(aut_order as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn single_object_content() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a = ActionGroupoid::single_object(g);
        assert_eq!(a.path_components().len(), 1);
        assert_eq!(a.homotopy_content(), Rat::new(1.into(), 6.into()));
    }

    #[test]
    fn conjugation_groupoid_content_is_one() {
        // class equation: sum over classes of |class| / |G| = 1
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(4).unwrap()] {
            let a = ActionGroupoid::new(GSet::conjugation(g));
            assert_eq!(a.homotopy_content(), rat_int(1));
        }
    }

    #[test]
    fn discrete_groupoid_content_counts_objects() {
        let triv = FiniteGroup::cyclic(1).unwrap();
        let a = ActionGroupoid::new(GSet::trivial(triv, 5));
        assert_eq!(a.homotopy_content(), rat_int(5));
        assert_eq!(a.path_components().len(), 5);
    }

    #[test]
    fn swap_groupoid() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let a = ActionGroupoid::new(GSet::from_fn(z2, 2, |g, m| (g + m) % 2).unwrap());
        let comps = a.path_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].stabilizer.len(), 1);
    }
}
