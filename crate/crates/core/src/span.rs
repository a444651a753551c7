//! Fibrant spans of action groupoids: the arrow-groupoid identity span,
//! composition by pullback, and fibres over boundary object pairs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::groupoid::{ActionGroupoid, GroupoidMap};
use crate::gset::{GSet, Orbit};

/// Result of the fibration test: the paired homomorphism into the
/// product of the boundary groups must be surjective (unless the apex
/// is empty, in which case every lift request is vacuous).
#[derive(Debug, Clone)]
pub struct FibrationCheck {
    pub ok: bool,
    /// A boundary morphism with no lift, when the test fails.
    pub witness: Option<(usize, usize)>,
}

pub fn is_fibration(left: &GroupoidMap, right: &GroupoidMap) -> Result<FibrationCheck> {
    if left.source != right.source {
        return Err(Error::validation("legs do not share an apex groupoid"));
    }
    if left.source.objects() == 0 {
        return Ok(FibrationCheck { ok: true, witness: None });
    }
    let (n1, n2) = (left.target.group().order(), right.target.group().order());
    let mut hit = vec![false; n1 * n2];
    for u in 0..left.source.group().order() {
        hit[left.hom.apply(u) * n2 + right.hom.apply(u)] = true;
    }
    match hit.iter().position(|&h| !h) {
        None => Ok(FibrationCheck { ok: true, witness: None }),
        Some(idx) => Ok(FibrationCheck { ok: false, witness: Some((idx / n2, idx % n2)) }),
    }
}

/// A span of action groupoids whose paired leg functor is a fibration;
/// verified at construction.
#[derive(Debug, Clone)]
pub struct FibrantSpan {
    pub apex: ActionGroupoid,
    pub left: GroupoidMap,
    pub right: GroupoidMap,
}

impl FibrantSpan {
    pub fn new(left: GroupoidMap, right: GroupoidMap) -> Result<Self> {
        let check = is_fibration(&left, &right)?;
        if !check.ok {
            return Err(Error::validation(format!(
                "span is not fibrant: boundary morphism {:?} has no lift",
                check.witness.unwrap()
            )));
        }
        Ok(FibrantSpan { apex: left.source.clone(), left, right })
    }

    pub fn left_boundary(&self) -> &ActionGroupoid {
        &self.left.target
    }

    pub fn right_boundary(&self) -> &ActionGroupoid {
        &self.right.target
    }

    /// The identity span on `a = M // G`, modelled on the arrow groupoid:
    /// apex objects are morphisms `(m, g): m -> g |> m`, the group
    /// `G x G` acts by `(h0, h1) . (m, g) = (h0 |> m, h1 g h0^-1)`, the
    /// left leg reads off the source and the right leg the target.
    pub fn identity(a: &ActionGroupoid, budget: &Budget) -> Result<FibrantSpan> {
        let g = a.group().clone();
        let n = g.order();
        let m = a.objects();
        budget.check(Budget::product(&[(n * n) as u64, (n * n) as u64]))?;
        budget.check(Budget::product(&[(n * n) as u64, (m * n) as u64]))?;
        let gg = FiniteGroup::product(&g, &g)?;
        // apex point (m, x) has id m * n + x
        let carrier = GSet::from_fn_trusted(gg.clone(), m * n, |h, p| {
            let (h0, h1) = (h / n, h % n);
            let (pm, px) = (p / n, p % n);
            a.carrier.act(h0, pm) * n + g.mul(g.mul(h1, px), g.inv(h0))
        });
        let apex = ActionGroupoid::new(carrier);
        let left_hom = GroupHom {
            source: gg.clone(),
            target: g.clone(),
            image: (0..n * n).map(|h| h / n).collect(),
        };
        let right_hom = GroupHom {
            source: gg,
            target: g.clone(),
            image: (0..n * n).map(|h| h % n).collect(),
        };
        let left = GroupoidMap::new_trusted(
            apex.clone(),
            a.clone(),
            left_hom,
            (0..m * n).map(|p| p / n).collect(),
        );
        let right = GroupoidMap::new_trusted(
            apex.clone(),
            a.clone(),
            right_hom,
            (0..m * n).map(|p| a.carrier.act(p % n, p / n)).collect(),
        );
        FibrantSpan::new(left, right)
    }

    /// Composition by pullback: apex objects are pairs agreeing over the
    /// middle boundary, the group is the fibre product of the apex
    /// groups acting componentwise.
    pub fn compose(s1: &FibrantSpan, s2: &FibrantSpan, budget: &Budget) -> Result<FibrantSpan> {
        if s1.right.target != s2.left.target {
            return Err(Error::validation(
                "composition boundary mismatch: right boundary of the first span \
                 differs from the left boundary of the second",
            ));
        }
        let (ga, gb) = (s1.apex.group().clone(), s2.apex.group().clone());
        budget.check(Budget::product(&[ga.order() as u64, gb.order() as u64]))?;
        // fibre product group
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for g in 0..ga.order() {
            let img = s1.right.hom.apply(g);
            for h in 0..gb.order() {
                if s2.left.hom.apply(h) == img {
                    pairs.push((g, h));
                }
            }
        }
        budget.check(Budget::product(&[pairs.len() as u64, pairs.len() as u64]))?;
        let k = pair_group(&ga, &gb, &pairs)?;
        // pullback carrier
        budget.check(Budget::product(&[
            s1.apex.objects() as u64,
            s2.apex.objects() as u64,
        ]))?;
        let mut points: Vec<(usize, usize)> = Vec::new();
        let mut point_index = HashMap::new();
        for a in 0..s1.apex.objects() {
            let img = s1.right.point_map[a];
            for b in 0..s2.apex.objects() {
                if s2.left.point_map[b] == img {
                    point_index.insert((a, b), points.len());
                    points.push((a, b));
                }
            }
        }
        budget.check(Budget::product(&[k.order() as u64, points.len() as u64]))?;
        let points_arc = Arc::new(points);
        let pairs_arc = Arc::new(pairs);
        let carrier = {
            let points = points_arc.clone();
            let pairs = pairs_arc.clone();
            let (a1, a2) = (s1.apex.clone(), s2.apex.clone());
            let point_index = point_index;
            GSet::from_fn_trusted(k.clone(), points.len(), move |u, p| {
                let (g, h) = pairs[u];
                let (a, b) = points[p];
                point_index[&(a1.carrier.act(g, a), a2.carrier.act(h, b))]
            })
        };
        let apex = ActionGroupoid::new(carrier);
        let left_hom = GroupHom {
            source: k.clone(),
            target: s1.left.target.group().clone(),
            image: pairs_arc.iter().map(|&(g, _)| s1.left.hom.apply(g)).collect(),
        };
        let right_hom = GroupHom {
            source: k,
            target: s2.right.target.group().clone(),
            image: pairs_arc.iter().map(|&(_, h)| s2.right.hom.apply(h)).collect(),
        };
        let left = GroupoidMap::new_trusted(
            apex.clone(),
            s1.left.target.clone(),
            left_hom,
            points_arc.iter().map(|&(a, _)| s1.left.point_map[a]).collect(),
        );
        let right = GroupoidMap::new_trusted(
            apex.clone(),
            s2.right.target.clone(),
            right_hom,
            points_arc.iter().map(|&(_, b)| s2.right.point_map[b]).collect(),
        );
        // fibrancy of the pullback is guaranteed; assert it anyway
        FibrantSpan::new(left, right)
    }

    /// Disjoint-union (monoidal) product of two spans.
    pub fn tensor(s1: &FibrantSpan, s2: &FibrantSpan, budget: &Budget) -> Result<FibrantSpan> {
        let apex = groupoid_product(&s1.apex, &s2.apex, budget)?;
        let left_t = groupoid_product(&s1.left.target, &s2.left.target, budget)?;
        let right_t = groupoid_product(&s1.right.target, &s2.right.target, budget)?;
        let leg = |l1: &GroupoidMap, l2: &GroupoidMap, target: &ActionGroupoid| {
            let (n2, m2) = (l2.source.group().order(), l2.source.objects());
            let t2g = l2.target.group().order();
            let hom = GroupHom {
                source: apex.group().clone(),
                target: target.group().clone(),
                image: (0..apex.group().order())
                    .map(|u| l1.hom.apply(u / n2) * t2g + l2.hom.apply(u % n2))
                    .collect(),
            };
            let tsize2 = l2.target.objects();
            let point_map = (0..apex.objects())
                .map(|p| l1.point_map[p / m2] * tsize2 + l2.point_map[p % m2])
                .collect();
            GroupoidMap::new_trusted(apex.clone(), target.clone(), hom, point_map)
        };
        let left = leg(&s1.left, &s2.left, &left_t);
        let right = leg(&s1.right, &s2.right, &right_t);
        FibrantSpan::new(left, right)
    }

    /// The fibre over a pair of boundary objects: apex objects mapping to
    /// `(x, y)`, with morphisms the kernel of the paired homomorphism.
    /// The automorphism cardinality identity relating apex, fibre and
    /// boundary is asserted exactly on every call.
    pub fn fibre(&self, x: usize, y: usize, budget: &Budget) -> Result<FibreGroupoid> {
        if x >= self.left.target.objects() || y >= self.right.target.objects() {
            return Err(Error::validation("fibre boundary object id out of range"));
        }
        let apex_g = self.apex.group();
        let objects: Vec<usize> = (0..self.apex.objects())
            .filter(|&p| self.left.point_map[p] == x && self.right.point_map[p] == y)
            .collect();
        let kernel: Vec<usize> = (0..apex_g.order())
            .filter(|&u| self.left.hom.apply(u) == 0 && self.right.hom.apply(u) == 0)
            .collect();
        let kernel_sub = Subgroup::from_elements(apex_g, kernel.clone());
        budget.check(Budget::product(&[kernel.len() as u64, kernel.len() as u64]))?;
        let kgroup = kernel_sub.as_group(apex_g, format!("ker<{}>", apex_g.name()))?;
        let local_index: HashMap<usize, usize> =
            objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        budget.check(Budget::product(&[kgroup.order() as u64, objects.len() as u64]))?;
        let carrier = {
            let objects = objects.clone();
            let local = local_index.clone();
            let kelems = kernel.clone();
            let apex = self.apex.clone();
            GSet::from_fn_trusted(kgroup, objects.len(), move |u, p| {
                local[&apex.carrier.act(kelems[u], objects[p])]
            })
        };
        let groupoid = ActionGroupoid::new(carrier);
        let components = groupoid.path_components();

        // boundary automorphism group of (x, y)
        let stab_x: Vec<usize> = (0..self.left.target.group().order())
            .filter(|&g| self.left.target.carrier.act(g, x) == x)
            .collect();
        let stab_y: Vec<usize> = (0..self.right.target.group().order())
            .filter(|&g| self.right.target.carrier.act(g, y) == y)
            .collect();
        let boundary_aut_order = stab_x.len() * stab_y.len();

        // action of boundary automorphisms on fibre components, via lifts
        let mut preimage: HashMap<(usize, usize), usize> = HashMap::new();
        for u in 0..apex_g.order() {
            preimage
                .entry((self.left.hom.apply(u), self.right.hom.apply(u)))
                .or_insert(u);
        }
        let comp_of: Vec<usize> = {
            let mut v = vec![usize::MAX; objects.len()];
            for (ci, comp) in components.iter().enumerate() {
                for &m in &comp.members {
                    v[m] = ci;
                }
            }
            v
        };
        budget.check(Budget::product(&[
            boundary_aut_order as u64,
            components.len().max(1) as u64,
        ]))?;
        let mut comp_boundary_orbit = vec![0usize; components.len()];
        let mut comp_apex_aut = vec![0usize; components.len()];
        for (ci, comp) in components.iter().enumerate() {
            let a = objects[comp.rep];
            comp_apex_aut[ci] =
                (0..apex_g.order()).filter(|&u| self.apex.carrier.act(u, a) == a).count();
            let mut orbit: Vec<usize> = Vec::new();
            for &g1 in &stab_x {
                for &g2 in &stab_y {
                    let u = *preimage.get(&(g1, g2)).ok_or_else(|| {
                        Error::validation("paired homomorphism is not surjective on stabilizers")
                    })?;
                    let moved = self.apex.carrier.act(apex_g.inv(u), a);
                    orbit.push(comp_of[local_index[&moved]]);
                }
            }
            orbit.sort_unstable();
            orbit.dedup();
            comp_boundary_orbit[ci] = orbit.len();
        }

        // |Aut_apex(a)| * |orbit| = |Aut_fib(a)| * |Aut_boundary(x, y)|
        for (ci, comp) in components.iter().enumerate() {
            let lhs = comp_apex_aut[ci] * comp_boundary_orbit[ci];
            let rhs = comp.stabilizer.len() * boundary_aut_order;
            if lhs != rhs {
                return Err(Error::numerical(format!(
                    "fibre cardinality identity failed at component {ci}: \
                     {} * {} != {} * {}",
                    comp_apex_aut[ci],
                    comp_boundary_orbit[ci],
                    comp.stabilizer.len(),
                    boundary_aut_order
                )));
            }
        }

        Ok(FibreGroupoid {
            objects,
            kernel,
            groupoid,
            components,
            boundary_aut_order,
            comp_boundary_orbit,
            comp_apex_aut,
        })
    }

    /// Cardinality side of the path-component bijection for fibrations:
    /// summing fibre-component orbits under boundary automorphisms over
    /// boundary component pairs recovers the apex component count.
    pub fn component_bijection_check(&self, budget: &Budget) -> Result<bool> {
        let mut total = 0usize;
        for cx in self.left.target.path_components() {
            for cy in self.right.target.path_components() {
                let fib = self.fibre(cx.rep, cy.rep, budget)?;
                let mut classes: Vec<usize> = Vec::new();
                let mut seen = vec![false; fib.components.len()];
                for ci in 0..fib.components.len() {
                    if !seen[ci] {
                        classes.push(ci);
                        // mark the whole boundary-aut orbit of this component
                        let orbit = fib.boundary_orbit_of(self, cx.rep, cy.rep, ci)?;
                        for o in orbit {
                            seen[o] = true;
                        }
                    }
                }
                total += classes.len();
            }
        }
        Ok(total == self.apex.path_components().len())
    }
}

/// Fibre groupoid data: objects are apex point ids over the boundary
/// pair, morphisms are kernel elements, components carry the orbit,
/// stabilizer and boundary-orbit bookkeeping.
#[derive(Debug, Clone)]
pub struct FibreGroupoid {
    /// Apex point ids lying over `(x, y)`, ascending.
    pub objects: Vec<usize>,
    /// Apex group elements mapping to the identity pair, ascending.
    pub kernel: Vec<usize>,
    /// The fibre as an action groupoid on local indices `0..objects.len()`.
    pub groupoid: ActionGroupoid,
    /// Path components in local indices.
    pub components: Vec<Orbit>,
    /// `|Aut(x)| * |Aut(y)|` in the boundary groupoids.
    pub boundary_aut_order: usize,
    /// Per component: size of its orbit under boundary automorphisms.
    pub comp_boundary_orbit: Vec<usize>,
    /// Per component: apex automorphism group order of the representative.
    pub comp_apex_aut: Vec<usize>,
}

impl FibreGroupoid {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Apex point id of the representative of component `ci`.
    pub fn component_rep(&self, ci: usize) -> usize {
        self.objects[self.components[ci].rep]
    }

    pub fn aut_fibre_order(&self, ci: usize) -> usize {
        self.components[ci].stabilizer.len()
    }

    /// Groupoid cardinality of the fibre.
    pub fn homotopy_content(&self) -> crate::linalg::Rat {
        self.groupoid.homotopy_content()
    }

    /// Orbit (as component indices) of component `ci` under the boundary
    /// automorphism action, recomputed from the parent span.
    fn boundary_orbit_of(
        &self,
        span: &FibrantSpan,
        x: usize,
        y: usize,
        ci: usize,
    ) -> Result<Vec<usize>> {
        let apex_g = span.apex.group();
        let mut preimage: HashMap<(usize, usize), usize> = HashMap::new();
        for u in 0..apex_g.order() {
            preimage
                .entry((span.left.hom.apply(u), span.right.hom.apply(u)))
                .or_insert(u);
        }
        let local_index: HashMap<usize, usize> =
            self.objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let comp_of: Vec<usize> = {
            let mut v = vec![usize::MAX; self.objects.len()];
            for (k, comp) in self.components.iter().enumerate() {
                for &m in &comp.members {
                    v[m] = k;
                }
            }
            v
        };
        let a = self.component_rep(ci);
        let stab_x: Vec<usize> = (0..span.left.target.group().order())
            .filter(|&g| span.left.target.carrier.act(g, x) == x)
            .collect();
        let stab_y: Vec<usize> = (0..span.right.target.group().order())
            .filter(|&g| span.right.target.carrier.act(g, y) == y)
            .collect();
        let mut orbit = Vec::new();
        for &g1 in &stab_x {
            for &g2 in &stab_y {
                let u = preimage[&(g1, g2)];
                let moved = span.apex.carrier.act(apex_g.inv(u), a);
                orbit.push(comp_of[local_index[&moved]]);
            }
        }
        orbit.sort_unstable();
        orbit.dedup();
        Ok(orbit)
    }
}

/// Product of action groupoids: product group acting coordinatewise on
/// the product carrier.
pub fn groupoid_product(
    a: &ActionGroupoid,
    b: &ActionGroupoid,
    budget: &Budget,
) -> Result<ActionGroupoid> {
    let order = (a.group().order() * b.group().order()) as u64;
    budget.check(Budget::product(&[order, order]))?;
    budget.check(Budget::product(&[order, (a.objects() * b.objects()) as u64]))?;
    let pg = FiniteGroup::product(a.group(), b.group())?;
    let carrier = GSet::product(&a.carrier, &b.carrier, pg)?;
    Ok(ActionGroupoid::new(carrier))
}

/// Materializes a subgroup of `A x B` given by an explicit pair list as
/// a group of its own; pairs are sorted so `(0, 0)` becomes id 0.
fn pair_group(a: &FiniteGroup, b: &FiniteGroup, pairs: &[(usize, usize)]) -> Result<Arc<FiniteGroup>> {
    let mut sorted: Vec<(usize, usize)> = pairs.to_vec();
    sorted.sort_unstable();
    debug_assert_eq!(sorted.first(), Some(&(0, 0)));
    let index: HashMap<(usize, usize), usize> =
        sorted.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let k = sorted.len();
    let mut mul = vec![0usize; k * k];
    for (i, &(g1, h1)) in sorted.iter().enumerate() {
        for (j, &(g2, h2)) in sorted.iter().enumerate() {
            let p = (a.mul(g1, g2), b.mul(h1, h2));
            let idx = *index.get(&p).ok_or_else(|| {
                Error::validation("pair set is not closed under multiplication")
            })?;
            mul[i * k + j] = idx;
        }
    }
    FiniteGroup::from_table(
        format!("fib<{}x{}>", a.name(), b.name()),
        (0..k).map(|i| mul[i * k..(i + 1) * k].to_vec()).collect(),
    )
}
