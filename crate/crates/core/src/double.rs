//! Irreducible representations of the untwisted Drinfeld double and the
//! smash-product module correspondence for action groupoids.
//!
//! For a G-set M the algebra `C[G] x C^M` has multiplication
//! `(g @ d_m)(h @ d_n) = d_m(h |> n) gh @ d_n`; its modules correspond
//! to representations of `M // G`. For the conjugation action this is
//! the Drinfeld double `D(G)`, whose irreducibles are indexed by a
//! conjugacy class and an irreducible of its centralizer.

use std::sync::Arc;



use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupoid::ActionGroupoid;
use crate::gset::GSet;
use crate::linalg::CMat;
use crate::rep::{irreps_for_group, GroupoidRep, MatrixRep, RepBlock};

#[derive(Debug, Clone)]
pub struct DoubleIrrep {
    pub group: Arc<FiniteGroup>,
    /// Conjugacy class representative (smallest element id).
    pub class_rep: usize,
    pub class_size: usize,
    /// Centralizer of the representative inside the parent group.
    pub centralizer: Subgroup,
    /// Irreducible representation of the centralizer as its own group.
    pub sigma: MatrixRep,
    /// Total dimension `|class| * dim(sigma)`.
    pub dim: usize,
}

/// One irreducible per (conjugacy class, centralizer irreducible) pair,
/// ordered by class representative and then by the centralizer table
/// order. Fails with the centralizer named when its irreps are not
/// available.
pub fn double_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<DoubleIrrep>> {
    let mut out = Vec::new();
    for class in group.conjugacy_classes() {
        let cent_group = class
            .centralizer
            .as_group(group, format!("centralizer<{}>", class.rep))?;
        let irreps = irreps_for_group(&cent_group).map_err(|e| {
            Error::unsupported(format!(
                "centralizer of class {} in {}: {e}",
                class.rep,
                group.name()
            ))
        })?;
        for sigma in irreps {
            out.push(DoubleIrrep {
                group: group.clone(),
                class_rep: class.rep,
                class_size: class.members.len(),
                centralizer: class.centralizer.clone(),
                dim: class.members.len() * sigma.dim,
                sigma,
            });
        }
    }
    debug_assert_eq!(
        out.iter().map(|i| i.dim * i.dim).sum::<usize>(),
        group.order() * group.order()
    );
    Ok(out)
}

impl DoubleIrrep {
    /// The irreducible as a one-block representation of the conjugation
    /// groupoid `G // G`.
    pub fn as_groupoid_rep(&self) -> Result<GroupoidRep> {
        let conj = ActionGroupoid::new(GSet::conjugation(self.group.clone()));
        let orbit = conj
            .path_components()
            .into_iter()
            .find(|o| o.rep == self.class_rep)
            .ok_or_else(|| Error::validation("class representative is not an orbit representative"))?;
        let block = RepBlock {
            orbit,
            stabilizer: self.centralizer.clone(),
            stab_rep: self.sigma.clone(),
        };
        GroupoidRep::new(conj, vec![block])
    }
}

/// The direct-sum module carried by a groupoid representation, with the
/// smash-product action `(g @ d_m) |> v = incl_(g|>m) . rho(g) . proj_m`.
pub struct SmashModule {
    pub dim: usize,
    offsets: Vec<usize>,
    dims: Vec<usize>,
}

impl SmashModule {
    pub fn new(rep: &GroupoidRep) -> Self {
        let n = rep.base.objects();
        let dims: Vec<usize> = (0..n).map(|m| rep.dim_at(m)).collect();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        SmashModule { dim: acc, offsets, dims }
    }

    /// Full module matrix of the generator `g @ d_m`.
    pub fn action(&self, rep: &GroupoidRep, g: usize, m: usize) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        let d = self.dims[m];
        if d == 0 {
            return out;
        }
        let gm = rep.base.carrier.act(g, m);
        let block = rep.eval(g, m);
        for i in 0..block.rows {
            for j in 0..d {
                out[(self.offsets[gm] + i, self.offsets[m] + j)] = block[(i, j)];
            }
        }
        out
    }

    /// Block of a module matrix from the `m` summand to the `target` one.
    fn block(&self, mat: &CMat, target: usize, m: usize) -> CMat {
        let (rt, ct) = (self.dims[target], self.dims[m]);
        let mut out = CMat::zeros(rt, ct);
        for i in 0..rt {
            for j in 0..ct {
                out[(i, j)] = mat[(self.offsets[target] + i, self.offsets[m] + j)];
            }
        }
        out
    }
}

/// Builds the smash-product module of `rep`, verifies the smash relations
/// on all generator pairs, applies the inverse correspondence and checks
/// that it returns the original evaluation tables.
pub fn smash_roundtrip_check(rep: &GroupoidRep, budget: &Budget) -> Result<bool> {
    let module = SmashModule::new(rep);
    if module.dim > 512 {
        return Err(Error::Budget { needed: module.dim as u64, budget: 512 });
    }
    let group = rep.base.group().clone();
    let n_obj = rep.base.objects();
    let n_grp = group.order();
    let gens = (n_grp * n_obj) as u64;
    budget.check(Budget::product(&[gens, gens, (module.dim * module.dim) as u64]))?;

    let mats: Vec<Vec<CMat>> = (0..n_grp)
        .map(|g| (0..n_obj).map(|m| module.action(rep, g, m)).collect())
        .collect();

    // smash relations: (g @ d_m)(h @ d_n) = d_m(h |> n) (gh @ d_n)
    for g in 0..n_grp {
        for m in 0..n_obj {
            for h in 0..n_grp {
                for n in 0..n_obj {
                    let lhs = mats[g][m].mul(&mats[h][n]);
                    let expect = if rep.base.carrier.act(h, n) == m {
                        mats[group.mul(g, h)][n].clone()
                    } else {
                        CMat::zeros(module.dim, module.dim)
                    };
                    if lhs.sub(&expect).norm_inf() > 1e-9 {
                        return Ok(false);
                    }
                }
            }
        }
    }

    // inverse functor: summands recover the object spaces, generator
    // blocks recover the evaluation tables
    for g in 0..n_grp {
        for m in 0..n_obj {
            let gm = rep.base.carrier.act(g, m);
            let back = module.block(&mats[g][m], gm, m);
            let orig = rep.eval(g, m);
            if back.rows != orig.rows || back.cols != orig.cols {
                return Ok(false);
            }
            if !back.is_empty() && back.sub(&orig).norm_inf() > 1e-9 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pulls a conjugation-groupoid representation back along the product
/// functor `(M x M) // (G x G) -> G // G`, `(m1, m2) -> m1 m2`,
/// `(h1, h2) -> h1`, defined when all four labels are the transparent
/// group data. This is how a double representation labels an isolated
/// loop between two transparent defect planes.
pub fn pull_back_double_rep(
    group: &Arc<FiniteGroup>,
    double_rep: &GroupoidRep,
    budget: &Budget,
) -> Result<GroupoidRep> {
    let n = group.order();
    budget.check(Budget::product(&[(n * n) as u64, (n * n) as u64]))?;
    let gg = FiniteGroup::product(group, group)?;
    let carrier = GSet::from_fn_trusted(gg, n * n, |h12, p| {
        let (h1, h2) = (h12 / n, h12 % n);
        let (m1, m2) = (p / n, p % n);
        let m1p = group.mul(group.mul(h1, m1), group.inv(h2));
        let m2p = group.mul(group.mul(h2, m2), group.inv(h1));
        m1p * n + m2p
    });
    let base = ActionGroupoid::new(carrier);
    let dims: Vec<usize> = (0..n * n)
        .map(|p| double_rep.dim_at(group.mul(p / n, p % n)))
        .collect();
    GroupoidRep::from_functor(
        base,
        &dims,
        |h12, p| double_rep.eval(h12 / n, group.mul(p / n, p % n)),
        budget,
    )
}
