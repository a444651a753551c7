//! Representations of finite groups and action groupoids.
//!
//! Groupoid representations are stored in orbit/stabilizer block form: a
//! block is supported on one orbit and determined by a matrix
//! representation of the stabilizer of the orbit representative,
//! evaluated through the smallest-element transversal
//! `rho(g): rho(m) -> rho(g |> m)`, `rho(g) = sigma(h_{g|>m}^-1 g h_m)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupoid::ActionGroupoid;
use crate::gset::{BiSet, GSet, Orbit};
use crate::linalg::{round_to_integer, CMat};

/// Tolerance for matrix identities among representation data.
pub const MAT_TOL: f64 = 1e-9;
/// Tolerance when rounding dimension averages to integers.
pub const INT_TOL: f64 = 1e-6;

/// A finite group representation as an explicit table of matrices.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    pub mats: Vec<CMat>,
}

impl MatrixRep {
    pub fn new(group: Arc<FiniteGroup>, mats: Vec<CMat>) -> Result<Self> {
        if mats.len() != group.order() {
            return Err(Error::validation("matrix table has wrong length"));
        }
        let dim = mats[0].rows;
        if mats.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(Error::validation("representation matrices must be square of equal size"));
        }
        let rep = MatrixRep { group, dim, mats };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    fn check_homomorphism(&self) -> Result<()> {
        if self.mats[0].sub(&CMat::eye(self.dim)).norm_inf() > MAT_TOL {
            return Err(Error::validation("identity element must map to the identity matrix"));
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let prod = self.mats[g].mul(&self.mats[h]);
                let expect = &self.mats[self.group.mul(g, h)];
                if prod.sub(expect).norm_inf() > MAT_TOL {
                    return Err(Error::validation(format!(
                        "matrix table is not multiplicative at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let mats = vec![CMat::eye(1); group.order()];
        MatrixRep { group, dim: 1, mats }
    }

    /// One-dimensional representation from a character table.
    pub fn character(group: Arc<FiniteGroup>, values: Vec<Complex64>) -> Result<Self> {
        let mats = values.into_iter().map(CMat::scalar).collect();
        MatrixRep::new(group, mats)
    }

    /// Dual representation: `g` acts by the transpose of the inverse.
    pub fn dual(&self) -> Self {
        let mats = (0..self.group.order())
            .map(|g| self.mats[self.group.inv(g)].transpose())
            .collect();
        MatrixRep { group: self.group.clone(), dim: self.dim, mats }
    }

    pub fn apply(&self, g: usize) -> &CMat {
        &self.mats[g]
    }

    pub fn character_of(&self, g: usize) -> Complex64 {
        self.mats[g].trace()
    }
}

/// The canonical nontrivial real character, where one exists: the sign of
/// a symmetric-like group or the order-two character of an even cyclic
/// group. Errors when there is no unambiguous choice.
pub fn sign_rep(group: &Arc<FiniteGroup>) -> Result<MatrixRep> {
    let nontrivial_real: Vec<MatrixRep> = irreps_for_group(group)?
        .into_iter()
        .filter(|r| {
            r.dim == 1
                && r.mats.iter().any(|m| (m[(0, 0)] - Complex64::ONE).norm() > 1e-9)
                && r.mats.iter().all(|m| m[(0, 0)].im.abs() < 1e-9)
        })
        .collect();
    match nontrivial_real.len() {
        1 => Ok(nontrivial_real.into_iter().next().unwrap()),
        0 => Err(Error::unsupported(format!(
            "group {} has no nontrivial real character",
            group.name()
        ))),
        _ => Err(Error::unsupported(format!(
            "sign character is ambiguous for group {}",
            group.name()
        ))),
    }
}

/// Complete irreducible representation tables for the supported groups:
/// cyclic groups via roots of unity, the Klein four-group, and the
/// nonabelian groups of order 6 and 8 with five involutions. The
/// quaternion-like order-8 group is rejected.
pub fn irreps_for_group(group: &Arc<FiniteGroup>) -> Result<Vec<MatrixRep>> {
    let n = group.order();
    if n == 1 {
        return Ok(vec![MatrixRep::trivial(group.clone())]);
    }
    // cyclic of any order
    if let Some(gen) = (0..n).find(|&g| group.element_order(g) == n) {
        // power index of each element with respect to the generator
        let mut power = vec![0usize; n];
        let mut x = 0usize;
        for k in 0..n {
            power[x] = k;
            x = group.mul(x, gen);
        }
        let irreps = (0..n)
            .map(|j| {
                let values = (0..n)
                    .map(|e| Complex64::from_polar(1.0, 2.0 * PI * (j * power[e]) as f64 / n as f64))
                    .collect();
                MatrixRep::character(group.clone(), values)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(irreps);
    }
    let involutions = (1..n).filter(|&g| group.element_order(g) == 2).count();
    if n == 4 && involutions == 3 {
        // Klein four-group
        let a = 1;
        let b = (2..4).find(|&b| b != group.mul(a, a) && b != a).unwrap();
        let decomp = |x: usize| -> (usize, usize) {
            for i in 0..2 {
                for j in 0..2 {
                    if group.mul(group.pow(a, i), group.pow(b, j)) == x {
                        return (i, j);
                    }
                }
            }
            unreachable!()
        };
        let mut irreps = Vec::new();
        for s in 0..2 {
            for t in 0..2 {
                let values = (0..4)
                    .map(|x| {
                        let (i, j) = decomp(x);
                        Complex64::new((-1f64).powi((s * i + t * j) as i32), 0.0)
                    })
                    .collect();
                irreps.push(MatrixRep::character(group.clone(), values)?);
            }
        }
        return Ok(irreps);
    }
    if n == 6 && !group.is_abelian() {
        return dihedral_like_irreps(group, 3);
    }
    if n == 8 && !group.is_abelian() {
        if involutions == 1 {
            return Err(Error::unsupported(format!(
                "group {} is quaternion-like; no built-in irrep table",
                group.name()
            )));
        }
        return dihedral_like_irreps(group, 4);
    }
    Err(Error::unsupported(format!(
        "no built-in irrep table for group {} of order {n}",
        group.name()
    )))
}

/// Irreps for a group with presentation `r^m = s^2 = 1, s r s = r^-1`.
fn dihedral_like_irreps(group: &Arc<FiniteGroup>, m: usize) -> Result<Vec<MatrixRep>> {
    let n = group.order();
    let r = (0..n)
        .find(|&g| group.element_order(g) == m)
        .ok_or_else(|| Error::unsupported("no rotation generator found"))?;
    let rot = Subgroup::generated_by(group, &[r]);
    let s = (0..n)
        .find(|&g| group.element_order(g) == 2 && !rot.contains(g))
        .ok_or_else(|| Error::unsupported("no reflection generator found"))?;
    if group.mul(group.mul(s, r), s) != group.inv(r) {
        return Err(Error::unsupported("generators do not satisfy dihedral relations"));
    }
    // decompose every element as r^a s^b
    let mut decomp = vec![(0usize, 0usize); n];
    for a in 0..m {
        for bb in 0..2 {
            let x = group.mul(group.pow(r, a), group.pow(s, bb));
            decomp[x] = (a, bb);
        }
    }
    let mut irreps = Vec::new();
    // one-dimensional characters
    let rot_signs: &[f64] = if m % 2 == 0 { &[1.0, -1.0] } else { &[1.0] };
    for &rs in rot_signs {
        for ss in [1.0f64, -1.0] {
            let values = (0..n)
                .map(|x| {
                    let (a, bb) = decomp[x];
                    Complex64::new(rs.powi(a as i32) * ss.powi(bb as i32), 0.0)
                })
                .collect();
            irreps.push(MatrixRep::character(group.clone(), values)?);
        }
    }
    // two-dimensional rotation/reflection representations
    let two_dim_count = if m % 2 == 0 { m / 2 - 1 } else { (m - 1) / 2 };
    for k in 1..=two_dim_count {
        let mats = (0..n)
            .map(|x| {
                let (a, bb) = decomp[x];
                let th = 2.0 * PI * (k * a) as f64 / m as f64;
                let (sin, cos) = th.sin_cos();
                let rot_m = CMat::from_rows(vec![
                    vec![Complex64::new(cos, 0.0), Complex64::new(-sin, 0.0)],
                    vec![Complex64::new(sin, 0.0), Complex64::new(cos, 0.0)],
                ]);
                if bb == 0 {
                    rot_m
                } else {
                    let refl = CMat::from_rows(vec![
                        vec![Complex64::ONE, Complex64::ZERO],
                        vec![Complex64::ZERO, -Complex64::ONE],
                    ]);
                    rot_m.mul(&refl)
                }
            })
            .collect();
        irreps.push(MatrixRep::new(group.clone(), mats)?);
    }
    let total: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
    debug_assert_eq!(total, n);
    Ok(irreps)
}

/// One orbit block of a groupoid representation.
#[derive(Debug, Clone)]
pub struct RepBlock {
    pub orbit: Orbit,
    /// Stabilizer of the orbit representative, in parent element ids.
    pub stabilizer: Subgroup,
    /// Representation of the stabilizer as a group in its own right;
    /// element `i` corresponds to `stabilizer.elements()[i]`.
    pub stab_rep: MatrixRep,
}

impl RepBlock {
    pub fn dim(&self) -> usize {
        self.stab_rep.dim
    }

    fn stab_mat(&self, parent_elem: usize) -> &CMat {
        let idx = self
            .stabilizer
            .index_of(parent_elem)
            .expect("element outside the stabilizer");
        self.stab_rep.apply(idx)
    }
}

/// A representation of an action groupoid as a direct sum of orbit
/// blocks; the value is zero outside the block orbits.
#[derive(Debug, Clone)]
pub struct GroupoidRep {
    pub base: ActionGroupoid,
    pub blocks: Vec<RepBlock>,
    /// Point id to block index, `usize::MAX` outside every block.
    block_of: Vec<usize>,
}

impl GroupoidRep {
    pub fn new(base: ActionGroupoid, blocks: Vec<RepBlock>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; base.objects()];
        for (bi, block) in blocks.iter().enumerate() {
            for &m in &block.orbit.members {
                if block_of[m] != usize::MAX {
                    return Err(Error::validation(format!(
                        "blocks overlap at point {m}: distinct blocks must live on distinct orbits"
                    )));
                }
                block_of[m] = bi;
            }
        }
        Ok(GroupoidRep { base, blocks, block_of })
    }

    /// The constant one-dimensional representation: one trivial block per
    /// path component.
    pub fn trivial(base: ActionGroupoid) -> Self {
        let blocks = base
            .path_components()
            .into_iter()
            .map(|orbit| {
                let stabilizer = orbit.stabilizer.clone();
                let stab_group = stabilizer
                    .as_group(base.group(), "stab")
                    .expect("stabilizer closure");
                RepBlock { orbit, stabilizer, stab_rep: MatrixRep::trivial(stab_group) }
            })
            .collect();
        GroupoidRep::new(base, blocks).expect("components are disjoint")
    }

    /// Support-indicator representation: one trivial block per orbit
    /// meeting `support`. Fails if the support is not a union of orbits.
    pub fn delta(base: ActionGroupoid, support: &[usize]) -> Result<Self> {
        let mut in_support = vec![false; base.objects()];
        for &m in support {
            if m >= base.objects() {
                return Err(Error::validation("support point out of range"));
            }
            in_support[m] = true;
        }
        let mut blocks = Vec::new();
        for orbit in base.path_components() {
            let hits = orbit.members.iter().filter(|&&m| in_support[m]).count();
            if hits == 0 {
                continue;
            }
            if hits != orbit.len() {
                return Err(Error::validation(format!(
                    "support is not invariant: orbit of {} is only partially covered",
                    orbit.rep
                )));
            }
            let stabilizer = orbit.stabilizer.clone();
            let stab_group = stabilizer.as_group(base.group(), "stab")?;
            blocks.push(RepBlock { orbit, stabilizer, stab_rep: MatrixRep::trivial(stab_group) });
        }
        GroupoidRep::new(base, blocks)
    }

    /// Builds a block representation from an arbitrary functor given by a
    /// dimension table and an evaluation closure. Values are re-expressed
    /// in the transported frames of the smallest-element transversals, so
    /// the result is naturally isomorphic to the input functor and agrees
    /// with it on every trace.
    pub fn from_functor(
        base: ActionGroupoid,
        dims: &[usize],
        eval: impl Fn(usize, usize) -> CMat,
        budget: &Budget,
    ) -> Result<Self> {
        if dims.len() != base.objects() {
            return Err(Error::validation("dimension table has wrong length"));
        }
        let mut blocks = Vec::new();
        for orbit in base.path_components() {
            let d = dims[orbit.rep];
            if orbit.members.iter().any(|&m| dims[m] != d) {
                return Err(Error::validation(
                    "dimension is not constant on an orbit".to_string(),
                ));
            }
            if d == 0 {
                continue;
            }
            let stabilizer = orbit.stabilizer.clone();
            budget.check(Budget::product(&[stabilizer.len() as u64, (d * d) as u64]))?;
            let stab_group = stabilizer.as_group(base.group(), "stab")?;
            let mats: Vec<CMat> =
                stabilizer.elements().iter().map(|&s| eval(s, orbit.rep)).collect();
            let stab_rep = MatrixRep::new(stab_group, mats).map_err(|e| {
                Error::validation(format!("functor restricted to a stabilizer is not a representation: {e}"))
            })?;
            blocks.push(RepBlock { orbit, stabilizer, stab_rep });
        }
        GroupoidRep::new(base, blocks)
    }

    pub fn dim_at(&self, m: usize) -> usize {
        match self.block_of.get(m) {
            Some(&bi) if bi != usize::MAX => self.blocks[bi].dim(),
            _ => 0,
        }
    }

    pub fn block_index_of(&self, m: usize) -> Option<usize> {
        match self.block_of.get(m) {
            Some(&bi) if bi != usize::MAX => Some(bi),
            _ => None,
        }
    }

    /// Evaluates the representation on the morphism `g: m -> g |> m`.
    /// Outside the block orbits this is the unique map between zero
    /// spaces, returned as an empty matrix.
    pub fn eval(&self, g: usize, m: usize) -> CMat {
        let Some(bi) = self.block_index_of(m) else {
            return CMat::zeros(0, 0);
        };
        let block = &self.blocks[bi];
        let group = self.base.group();
        let gm = self.base.carrier.act(g, m);
        let h_m = block.orbit.transversal[m];
        let h_gm = block.orbit.transversal[gm];
        let s = group.mul(group.mul(group.inv(h_gm), g), h_m);
        block.stab_mat(s).clone()
    }

    /// Dimension of the subspace of `rho(m)` invariant under a subgroup
    /// `H` of the acting group fixing `m`, by character averaging.
    pub fn invariant_dim(&self, h: &Subgroup, m: usize) -> Result<usize> {
        let d = self.dim_at(m);
        if d == 0 {
            return Ok(0);
        }
        let mut total = Complex64::ZERO;
        for &g in h.elements() {
            if self.base.carrier.act(g, m) != m {
                return Err(Error::validation(format!(
                    "subgroup element {g} does not fix the evaluation object {m}"
                )));
            }
            total += self.eval(g, m).trace();
        }
        let avg = total / h.len() as f64;
        if avg.im.abs() > INT_TOL {
            return Err(Error::numerical(format!(
                "invariant dimension average has imaginary part {}",
                avg.im
            )));
        }
        let n = round_to_integer(avg.re, INT_TOL, "invariant dimension")?;
        Ok(n as usize)
    }

    /// Orthonormal basis of the invariant subspace, as columns of the
    /// averaged projector. The basis size is asserted against the
    /// character-averaged dimension.
    pub fn invariant_basis(&self, h: &Subgroup, m: usize) -> Result<CMat> {
        let d = self.dim_at(m);
        if d == 0 {
            return Ok(CMat::zeros(0, 0));
        }
        let mut p = CMat::zeros(d, d);
        for &g in h.elements() {
            if self.base.carrier.act(g, m) != m {
                return Err(Error::validation(format!(
                    "subgroup element {g} does not fix the evaluation object {m}"
                )));
            }
            p = p.add(&self.eval(g, m));
        }
        p = p.scale(Complex64::new(1.0 / h.len() as f64, 0.0));
        if p.mul(&p).sub(&p).norm_inf() > MAT_TOL {
            return Err(Error::numerical(
                "averaging operator is not idempotent within tolerance".to_string(),
            ));
        }
        let basis = p.column_space_basis(1e-7);
        let dim = self.invariant_dim(h, m)?;
        if basis.cols != dim {
            return Err(Error::numerical(format!(
                "invariant basis rank {} does not match character dimension {dim}",
                basis.cols
            )));
        }
        Ok(basis)
    }

    /// Tensor product representation on the product groupoid; the block
    /// frames match the factor frames, so evaluation is the Kronecker
    /// product of the factor evaluations.
    pub fn tensor(
        a: &GroupoidRep,
        b: &GroupoidRep,
        product_base: ActionGroupoid,
        budget: &Budget,
    ) -> Result<GroupoidRep> {
        let (sa, sb) = (a.base.objects(), b.base.objects());
        if product_base.objects() != sa * sb {
            return Err(Error::validation("product base has wrong carrier size"));
        }
        let dims: Vec<usize> = (0..sa * sb)
            .map(|p| a.dim_at(p / sb) * b.dim_at(p % sb))
            .collect();
        let (nb, _) = (b.base.group().order(), 0);
        GroupoidRep::from_functor(
            product_base,
            &dims,
            |g, p| a.eval(g / nb, p / sb).kron(&b.eval(g % nb, p % sb)),
            budget,
        )
    }

    /// Approximate structural equality: same base, same supported orbits,
    /// same stabilizer tables within tolerance.
    pub fn approx_eq(&self, other: &GroupoidRep, tol: f64) -> bool {
        if self.base != other.base || self.blocks.len() != other.blocks.len() {
            return false;
        }
        self.blocks.iter().zip(&other.blocks).all(|(x, y)| {
            x.orbit.rep == y.orbit.rep
                && x.orbit.members == y.orbit.members
                && x.dim() == y.dim()
                && x.stabilizer == y.stabilizer
                && x.stab_rep
                    .mats
                    .iter()
                    .zip(&y.stab_rep.mats)
                    .all(|(ma, mb)| ma.sub(mb).norm_inf() <= tol)
        })
    }
}

/// The groupoid `(M x M) // (left x right)` with the diagonal two-sided
/// action, the home of codim-2 labels sitting on a codim-1 defect. The
/// pair `(m1, m2)` has id `m1 * |M| + m2` and the group element
/// `(g, h)` has id `g * |right| + h`.
pub fn biset_pair_groupoid(biset: &BiSet, budget: &Budget) -> Result<ActionGroupoid> {
    let n = biset.size();
    let pg = FiniteGroup::product(&biset.left, &biset.right)?;
    budget.check(Budget::product(&[pg.order() as u64, (n * n) as u64]))?;
    let nr = biset.right.order();
    let biset = biset.clone();
    let carrier = GSet::from_fn_trusted(pg, n * n, move |gh, p| {
        let (g, h) = (gh / nr, gh % nr);
        let (m1, m2) = (p / n, p % n);
        biset.conjugate(g, m1, h) * n + biset.conjugate(g, m2, h)
    });
    Ok(ActionGroupoid::new(carrier))
}

/// The transparent representation of a biset: the delta functor on the
/// diagonal of `(M x M) // (left x right)` with trivial stabilizer data.
pub fn transparent_rep(biset: &BiSet, budget: &Budget) -> Result<GroupoidRep> {
    let n = biset.size();
    let base = biset_pair_groupoid(biset, budget)?;
    let diagonal: Vec<usize> = (0..n).map(|m| m * n + m).collect();
    GroupoidRep::delta(base, &diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::GSet;

    fn s3() -> Arc<FiniteGroup> {
        FiniteGroup::symmetric(3).unwrap()
    }

    #[test]
    fn cyclic_irreps_are_characters() {
        for n in [1usize, 2, 3, 4, 6, 12] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let irreps = irreps_for_group(&g).unwrap();
            assert_eq!(irreps.len(), n);
            assert!(irreps.iter().all(|r| r.dim == 1));
        }
    }

    #[test]
    fn s3_irreps() {
        let irreps = irreps_for_group(&s3()).unwrap();
        let mut dims: Vec<usize> = irreps.iter().map(|r| r.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
    }

    #[test]
    fn d4_irreps() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let irreps = irreps_for_group(&g).unwrap();
        let mut dims: Vec<usize> = irreps.iter().map(|r| r.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn klein_four_irreps() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::product(&z2, &z2).unwrap();
        let irreps = irreps_for_group(&v4).unwrap();
        assert_eq!(irreps.len(), 4);
        assert!(irreps.iter().all(|r| r.dim == 1));
    }

    #[test]
    fn sign_rep_of_s3_and_even_cyclics() {
        let sign = sign_rep(&s3()).unwrap();
        // sign of a transposition is -1
        let t = (0..6).find(|&g| s3().element_order(g) == 2).unwrap();
        assert!((sign.character_of(t) + Complex64::ONE).norm() < 1e-12);
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let sign4 = sign_rep(&z4).unwrap();
        assert!((sign4.character_of(1) + Complex64::ONE).norm() < 1e-12);
        // Klein four-group has three candidates, so no canonical sign
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::product(&z2, &z2).unwrap();
        assert!(sign_rep(&v4).is_err());
    }

    #[test]
    fn transparent_rep_is_supported_on_diagonal() {
        let b = BiSet::transparent(s3());
        let rep = transparent_rep(&b, &Budget::default()).unwrap();
        let n = b.size();
        for m1 in 0..n {
            for m2 in 0..n {
                let expect = if m1 == m2 { 1 } else { 0 };
                assert_eq!(rep.dim_at(m1 * n + m2), expect);
            }
        }
        // every block is one-dimensional with identity evaluation
        for g in 0..rep.base.group().order() {
            for m in 0..n {
                let mat = rep.eval(g, m * n + m);
                assert!((mat[(0, 0)] - Complex64::ONE).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn transparent_rep_of_singleton_and_trivial_actions() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let one = BiSet::point(z2.clone(), z2.clone());
        let rep = transparent_rep(&one, &Budget::default()).unwrap();
        assert_eq!(rep.blocks.len(), 1);
        assert_eq!(rep.dim_at(0), 1);

        let two = BiSet::trivial(z2.clone(), z2, 2);
        let rep = transparent_rep(&two, &Budget::default()).unwrap();
        assert_eq!(rep.blocks.len(), 2);
    }

    #[test]
    fn eval_functoriality_on_double_block() {
        // D(S3) block: transposition class with its Z2 centralizer sign rep
        let g = s3();
        let conj = ActionGroupoid::new(GSet::conjugation(g.clone()));
        let orbit = conj
            .path_components()
            .into_iter()
            .find(|o| o.len() == 3)
            .unwrap();
        let stabilizer = orbit.stabilizer.clone();
        let stab_group = stabilizer.as_group(&g, "cent").unwrap();
        let stab_rep = sign_rep(&stab_group).unwrap();
        let rep = GroupoidRep::new(
            conj,
            vec![RepBlock { orbit: orbit.clone(), stabilizer, stab_rep }],
        )
        .unwrap();
        // sign of the class representative on itself
        let t = orbit.rep;
        let m = rep.eval(t, t);
        assert!((m[(0, 0)] + Complex64::ONE).norm() < 1e-12);
        // functoriality over all 36 composable pairs
        for gg in 0..6 {
            for m0 in 0..6 {
                let first = rep.eval(gg, m0);
                for hh in 0..6 {
                    let second = rep.eval(hh, rep.base.carrier.act(gg, m0));
                    let comp = rep.eval(g.mul(hh, gg), m0);
                    if first.is_empty() {
                        assert!(comp.is_empty());
                    } else {
                        assert!(second.mul(&first).sub(&comp).norm_inf() < 1e-12);
                    }
                }
            }
        }
        // identity morphisms evaluate to identity matrices
        for m0 in 0..6 {
            let e = rep.eval(0, m0);
            if !e.is_empty() {
                assert!(e.sub(&CMat::eye(1)).norm_inf() < 1e-12);
            }
        }
    }

    #[test]
    fn invariant_dims_by_characters() {
        let g = s3();
        // trivial representation of the one-object groupoid on S3
        let base = ActionGroupoid::single_object(g.clone());
        let triv = GroupoidRep::trivial(base.clone());
        assert_eq!(triv.invariant_dim(&Subgroup::whole(&g), 0).unwrap(), 1);

        // two-dimensional irrep of S3 as a block over the one-object groupoid
        let orbit = base.path_components().into_iter().next().unwrap();
        let stabilizer = orbit.stabilizer.clone();
        let stab_group = stabilizer.as_group(&g, "whole").unwrap();
        let two = irreps_for_group(&stab_group)
            .unwrap()
            .into_iter()
            .find(|r| r.dim == 2)
            .unwrap();
        let rep =
            GroupoidRep::new(base, vec![RepBlock { orbit, stabilizer, stab_rep: two }]).unwrap();
        assert_eq!(rep.invariant_dim(&Subgroup::whole(&g), 0).unwrap(), 0);
        let basis = rep.invariant_basis(&Subgroup::whole(&g), 0).unwrap();
        assert_eq!(basis.cols, 0);
    }

    #[test]
    fn invariant_basis_of_permutation_rep() {
        // permutation representation of S3 on 3 points, via from_functor
        // over the one-object groupoid
        let g = s3();
        let base = ActionGroupoid::single_object(g.clone());
        let perm3 = GSet::from_fn(g.clone(), 3, |gg, m| {
            // use the symmetric-group structure: element gg permutes 0..3
            let perms = [
                [0usize, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            perms[gg][m]
        })
        .unwrap();
        let dims = vec![3usize];
        let rep = GroupoidRep::from_functor(
            base,
            &dims,
            |gg, _| {
                let mut m = CMat::zeros(3, 3);
                for j in 0..3 {
                    m[(perm3.act(gg, j), j)] = Complex64::ONE;
                }
                m
            },
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(rep.invariant_dim(&Subgroup::whole(&g), 0).unwrap(), 1);
        let basis = rep.invariant_basis(&Subgroup::whole(&g), 0).unwrap();
        assert_eq!(basis.cols, 1);
        // the invariant vector is proportional to (1,1,1)
        let v = basis.col(0);
        assert!((v[0] - v[1]).norm() < 1e-9 && (v[1] - v[2]).norm() < 1e-9);
    }

    #[test]
    fn regular_rep_of_z2_symmetrizes() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let base = ActionGroupoid::single_object(z2.clone());
        let rep = GroupoidRep::from_functor(
            base,
            &[2usize],
            |g, _| {
                let mut m = CMat::zeros(2, 2);
                for j in 0..2 {
                    m[((g + j) % 2, j)] = Complex64::ONE;
                }
                m
            },
            &Budget::default(),
        )
        .unwrap();
        let basis = rep.invariant_basis(&Subgroup::whole(&z2), 0).unwrap();
        assert_eq!(basis.cols, 1);
        let v = basis.col(0);
        assert!((v[0] - v[1]).norm() < 1e-9);
    }

    #[test]
    fn delta_rep_rejects_non_invariant_support() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let base =
            ActionGroupoid::new(GSet::from_fn(z2, 2, |g, m| (g + m) % 2).unwrap());
        assert!(GroupoidRep::delta(base, &[0]).is_err());
    }
}
