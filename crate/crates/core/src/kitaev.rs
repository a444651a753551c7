//! Independent verification of surface results: the explicit quantum
//! double Hamiltonian projectors on `C[G^E]` at toy scale.
//!
//! Everything here is exact rational and recomputed from the raw graph
//! data, not from the groupoid machinery, so a disagreement with the
//! surface computation is decisive.

use std::sync::Arc;

use num_traits::One;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{QMat, Rat};
use crate::surface::{decode_mixed, Surface};

/// Hard cap on the lattice dimension `|G|^E`.
pub const DIM_LIMIT: usize = 4096;

/// The lattice state space of an all-transparent surface graph over a
/// single group: basis vectors are edge configurations in mixed-radix
/// order with the first edge most significant.
#[derive(Debug)]
pub struct LatticeHilbert {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    edge_count: usize,
    edge_src: Vec<usize>,
    edge_tgt: Vec<usize>,
    vertex_count: usize,
    /// Face boundary words as (edge, reversed) pairs from the basepoint.
    faces: Vec<Vec<(usize, bool)>>,
}

impl LatticeHilbert {
    /// Accepts only surfaces where every vertex carries one common group,
    /// every edge its transparent biset, and every face a flat label.
    pub fn new(surface: &Surface, budget: &Budget) -> Result<Self> {
        let group = surface
            .vertices
            .first()
            .map(|v| v.group.clone())
            .ok_or_else(|| Error::validation("oracle needs a non-empty surface graph"))?;
        if surface.vertices.iter().any(|v| *v.group != *group) {
            return Err(Error::validation(
                "oracle requires a single common group on all vertices",
            ));
        }
        let n = group.order();
        for e in &surface.edges {
            let b = &e.biset;
            if b.size() != n || *b.left != *group || *b.right != *group {
                return Err(Error::validation(format!(
                    "oracle requires transparent edge labels; edge {} is not",
                    e.name
                )));
            }
            for g in 0..n {
                for m in 0..n {
                    if b.lact(g, m) != group.mul(g, m) || b.ract(m, g) != group.mul(m, g) {
                        return Err(Error::validation(format!(
                            "oracle requires transparent edge labels; edge {} is not",
                            e.name
                        )));
                    }
                }
            }
        }
        // faces must be the flat label: one-dimensional support equal to
        // the kernel of the oriented boundary product
        for f in &surface.faces {
            let geo = &f.geometry;
            for t in 0..geo.carrier_total {
                let parts = geo.decode_tuple(t);
                let mut prod = 0usize;
                for (occ, &m) in geo.word.iter().zip(&parts) {
                    let letter = if occ.reversed { m } else { group.inv(m) };
                    prod = group.mul(prod, letter);
                }
                let expect = if prod == 0 { 1 } else { 0 };
                if f.rep.dim_at(t) != expect {
                    return Err(Error::validation(format!(
                        "oracle requires flat face labels; face {} is not",
                        geo.name
                    )));
                }
            }
        }
        let dim = n.checked_pow(surface.edges.len() as u32).unwrap_or(usize::MAX);
        if dim > DIM_LIMIT {
            return Err(Error::Budget { needed: dim as u64, budget: DIM_LIMIT as u64 });
        }
        budget.check(Budget::product(&[dim as u64, dim as u64]))?;
        Ok(LatticeHilbert {
            group,
            dim,
            edge_count: surface.edges.len(),
            edge_src: surface.edges.iter().map(|e| e.src).collect(),
            edge_tgt: surface.edges.iter().map(|e| e.tgt).collect(),
            vertex_count: surface.vertices.len(),
            faces: surface
                .faces
                .iter()
                .map(|f| f.geometry.word.iter().map(|o| (o.edge, o.reversed)).collect())
                .collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    fn radices(&self) -> Vec<usize> {
        vec![self.group.order(); self.edge_count]
    }

    fn encode(&self, config: &[usize]) -> usize {
        config.iter().fold(0usize, |acc, &c| acc * self.group.order() + c)
    }

    /// Basis permutation of the gauge move `g` at `vertex`:
    /// `h_e -> g_t(e) h_e g_s(e)^-1` with `g` placed at `vertex`.
    fn gauge_move(&self, vertex: usize, g: usize, config: &[usize]) -> Vec<usize> {
        let grp = &self.group;
        config
            .iter()
            .enumerate()
            .map(|(e, &h)| {
                let mut h = h;
                if self.edge_tgt[e] == vertex {
                    h = grp.mul(g, h);
                }
                if self.edge_src[e] == vertex {
                    h = grp.mul(h, grp.inv(g));
                }
                h
            })
            .collect()
    }

    /// The averaging projector `A_v = |G|^-1 sum_g A_v^g`, an idempotent
    /// symmetric matrix with entries in `{0, 1/|G|, ...}`.
    pub fn vertex_projector(&self, vertex: usize) -> Result<QMat> {
        if vertex >= self.vertex_count {
            return Err(Error::validation("vertex id out of range"));
        }
        let n = self.group.order();
        let inv_n = Rat::one() / Rat::from_integer((n as i64).into());
        let mut a = QMat::zeros(self.dim, self.dim);
        let radices = self.radices();
        for x in 0..self.dim {
            let config = decode_mixed(x, &radices);
            for g in 0..n {
                let y = self.encode(&self.gauge_move(vertex, g, &config));
                a[(y, x)] += inv_n.clone();
            }
        }
        let a2 = a.mul(&a);
        if a2 != a {
            return Err(Error::numerical(format!(
                "vertex projector at {vertex} is not idempotent"
            )));
        }
        if !a.is_symmetric() {
            return Err(Error::numerical(format!(
                "vertex projector at {vertex} is not symmetric"
            )));
        }
        Ok(a)
    }

    /// Diagonal flatness indicator of a plaquette: 1 exactly when the
    /// oriented ordered boundary product from the basepoint is trivial.
    pub fn plaquette_projector(&self, face: usize) -> Result<QMat> {
        let word = self
            .faces
            .get(face)
            .ok_or_else(|| Error::validation("face id out of range"))?;
        let mut b = QMat::zeros(self.dim, self.dim);
        let radices = self.radices();
        for x in 0..self.dim {
            let config = decode_mixed(x, &radices);
            let mut prod = 0usize;
            for &(e, reversed) in word {
                let letter = if reversed { config[e] } else { self.group.inv(config[e]) };
                prod = self.group.mul(prod, letter);
            }
            if prod == 0 {
                b[(x, x)] = Rat::one();
            }
        }
        debug_assert_eq!(b.mul(&b), b);
        Ok(b)
    }

    /// Rank of the product of all vertex and plaquette projectors, after
    /// asserting that they pairwise commute exactly. The product of
    /// commuting projectors is a projector, so its trace must equal its
    /// rank; both are computed and compared.
    pub fn ground_space_dim(&self, budget: &Budget) -> Result<usize> {
        let ops = (self.vertex_count + self.faces.len()) as u64;
        budget.check(Budget::product(&[
            ops * ops,
            (self.dim as u64) * (self.dim as u64),
        ]))?;
        let mut projectors = Vec::new();
        for v in 0..self.vertex_count {
            projectors.push(self.vertex_projector(v)?);
        }
        for p in 0..self.faces.len() {
            projectors.push(self.plaquette_projector(p)?);
        }
        for i in 0..projectors.len() {
            for j in i + 1..projectors.len() {
                if projectors[i].mul(&projectors[j]) != projectors[j].mul(&projectors[i]) {
                    return Err(Error::numerical(format!(
                        "projectors {i} and {j} do not commute"
                    )));
                }
            }
        }
        let mut product = QMat::eye(self.dim);
        for p in &projectors {
            product = product.mul(p);
        }
        let trace = product.trace();
        let rank = product.rank();
        if trace != Rat::from_integer((rank as i64).into()) {
            return Err(Error::numerical(format!(
                "projector product trace {trace} does not equal rank {rank}"
            )));
        }
        Ok(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::BiSet;
    use crate::surface::{sphere_surface, undecorated_surface, FaceRepSpec};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn trivial_group_projectors_are_identity() {
        let e = FiniteGroup::cyclic(1).unwrap();
        let s = undecorated_surface(1, e, &b()).unwrap();
        let h = LatticeHilbert::new(&s, &b()).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.vertex_projector(0).unwrap(), QMat::eye(1));
        assert_eq!(h.plaquette_projector(0).unwrap(), QMat::eye(1));
        assert_eq!(h.ground_space_dim(&b()).unwrap(), 1);
    }

    #[test]
    fn abelian_torus_vertex_projector_is_identity() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let s = undecorated_surface(1, z3, &b()).unwrap();
        let h = LatticeHilbert::new(&s, &b()).unwrap();
        assert_eq!(h.vertex_projector(0).unwrap(), QMat::eye(9));
        // commutators vanish: the plaquette projector is the identity
        assert_eq!(h.plaquette_projector(0).unwrap(), QMat::eye(9));
        assert_eq!(h.ground_space_dim(&b()).unwrap(), 9);
    }

    #[test]
    fn torus_z2_ground_space() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let s = undecorated_surface(1, z2, &b()).unwrap();
        let h = LatticeHilbert::new(&s, &b()).unwrap();
        let dim = h.ground_space_dim(&b()).unwrap();
        assert_eq!(dim, 4);
        assert_eq!(dim, s.z_surface(&b()).unwrap().dim);
    }

    #[test]
    fn torus_s3_ground_space_and_traces() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let s = undecorated_surface(1, s3.clone(), &b()).unwrap();
        let h = LatticeHilbert::new(&s, &b()).unwrap();
        let a = h.vertex_projector(0).unwrap();
        // trace of the averaging projector counts conjugation orbits on
        // pairs: the Burnside count over all of S3 x S3 is 11
        assert_eq!(a.trace(), Rat::from_integer(11.into()));
        assert_eq!(a.rank(), 11);
        let bp = h.plaquette_projector(0).unwrap();
        // commuting pairs of S3
        assert_eq!(bp.trace(), Rat::from_integer(18.into()));
        let dim = h.ground_space_dim(&b()).unwrap();
        assert_eq!(dim, 8);
        assert_eq!(dim, s.z_surface(&b()).unwrap().dim);
    }

    #[test]
    fn sphere_ground_space_is_one() {
        for g in [
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
        ] {
            let s = sphere_surface(g, FaceRepSpec::Flat, FaceRepSpec::Flat, &b()).unwrap();
            let h = LatticeHilbert::new(&s, &b()).unwrap();
            assert_eq!(h.ground_space_dim(&b()).unwrap(), 1);
        }
    }

    #[test]
    fn non_transparent_labels_are_rejected() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let wall = std::sync::Arc::new(BiSet::point(z2.clone(), z3.clone()));
        let vrep = crate::rep::transparent_rep(&wall, &b()).unwrap();
        let s = crate::surface::separating_surface(1, 1, wall, &vrep, &b()).unwrap();
        assert!(LatticeHilbert::new(&s, &b()).is_err());
    }

    #[test]
    fn dimension_cap_is_enforced() {
        // a torus cut into a ring of 7 squares: 14 edges over Z2 gives
        // dimension 2^14 > 4096 while every face stays tiny
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let tr = std::sync::Arc::new(BiSet::transparent(z2.clone()));
        let n = 7usize;
        let vertices: Vec<_> = (0..n)
            .map(|i| crate::surface::Vertex { name: format!("v{i}"), group: z2.clone() })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            // loop l_i at vertex i has edge id i
            edges.push(crate::surface::Edge {
                name: format!("l{i}"),
                src: i,
                tgt: i,
                biset: tr.clone(),
            });
        }
        for i in 0..n {
            // horizontal edge h_i: v_i -> v_(i+1) has edge id n + i
            edges.push(crate::surface::Edge {
                name: format!("h{i}"),
                src: i,
                tgt: (i + 1) % n,
                biset: tr.clone(),
            });
        }
        use crate::surface::Occ;
        let faces: Vec<_> = (0..n)
            .map(|i| {
                (
                    format!("p{i}"),
                    vec![
                        Occ::fwd(n + i),
                        Occ::fwd((i + 1) % n),
                        Occ::rev(n + i),
                        Occ::rev(i),
                    ],
                    0,
                    FaceRepSpec::Flat,
                )
            })
            .collect();
        let s = crate::surface::Surface::build(vertices, edges, faces, &b()).unwrap();
        let err = LatticeHilbert::new(&s, &b()).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }
}
