//! Finite group actions and the orbit machinery.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// A finite left G-set given by its full action table.
#[derive(Debug, Clone)]
pub struct GSet {
    pub group: Arc<FiniteGroup>,
    size: usize,
    /// Row-major `order x size` table: `act[g * size + m] = g |> m`.
    act: Vec<usize>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, size: usize, act: Vec<usize>) -> Result<Self> {
        if act.len() != group.order() * size {
            return Err(Error::validation("action table has wrong size"));
        }
        if act.iter().any(|&m| m >= size) {
            return Err(Error::validation("action table entry out of range"));
        }
        let s = GSet { group, size, act };
        for m in 0..size {
            if s.act(0, m) != m {
                return Err(Error::validation(format!(
                    "identity does not act trivially on point {m}"
                )));
            }
        }
        for g in 0..s.group.order() {
            for h in 0..s.group.order() {
                let gh = s.group.mul(g, h);
                for m in 0..size {
                    if s.act(g, s.act(h, m)) != s.act(gh, m) {
                        return Err(Error::validation(format!(
                            "not an action at (g={g}, h={h}, m={m})"
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Builds the table from a closure; axioms are still verified.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        size: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut act = Vec::with_capacity(group.order() * size);
        for g in 0..group.order() {
            for m in 0..size {
                act.push(f(g, m));
            }
        }
        GSet::new(group, size, act)
    }

    /// Builds the table from a closure that is an action by construction;
    /// the axioms are only spot-checked in debug builds.
    pub(crate) fn from_fn_trusted(
        group: Arc<FiniteGroup>,
        size: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut act = Vec::with_capacity(group.order() * size);
        for g in 0..group.order() {
            for m in 0..size {
                act.push(f(g, m));
            }
        }
        let s = GSet { group, size, act };
        #[cfg(debug_assertions)]
        {
            let n = s.group.order();
            if n > 0 && size > 0 {
                for m in 0..size.min(16) {
                    debug_assert_eq!(s.act(0, m), m);
                }
                let g = n - 1;
                let h = n / 2;
                for m in 0..size.min(16) {
                    debug_assert_eq!(s.act(g, s.act(h, m)), s.act(s.group.mul(g, h), m));
                }
            }
        }
        s
    }

    /// The one-point set with the trivial action.
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let act = vec![0usize; group.order()];
        GSet { group, size: 1, act }
    }

    /// The group acting on itself by conjugation.
    pub fn conjugation(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut act = Vec::with_capacity(n * n);
        for g in 0..n {
            for m in 0..n {
                act.push(group.mul(group.mul(g, m), group.inv(g)));
            }
        }
        GSet { group, size: n, act }
    }

    /// Trivial action on `size` points.
    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> Self {
        let mut act = Vec::with_capacity(group.order() * size);
        for _ in 0..group.order() {
            act.extend(0..size);
        }
        GSet { group, size, act }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, m: usize) -> usize {
        self.act[g * self.size + m]
    }

    /// Orbit decomposition. Orbits are listed by increasing representative,
    /// the representative is the smallest point of its orbit, and the
    /// transversal obeys the smallest-element rule: `transversal[m]` is the
    /// least group element carrying the representative to `m`, so the
    /// representative itself gets the identity.
    pub fn orbits(&self) -> Vec<Orbit> {
        let order = self.group.order();
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for rep in 0..self.size {
            if seen[rep] {
                continue;
            }
            let mut transversal = vec![usize::MAX; self.size];
            let mut members = Vec::new();
            for g in 0..order {
                let m = self.act(g, rep);
                if transversal[m] == usize::MAX {
                    transversal[m] = g;
                    members.push(m);
                    seen[m] = true;
                }
            }
            members.sort_unstable();
            let stabilizer = Subgroup::from_elements(
                &self.group,
                (0..order).filter(|&g| self.act(g, rep) == rep).collect(),
            );
            debug_assert_eq!(members.len() * stabilizer.len(), order);
            out.push(Orbit { rep, members, stabilizer, transversal });
        }
        out
    }

    /// Number of orbits by averaging fixed-point counts; a counting route
    /// independent of the orbit enumeration.
    pub fn orbit_count_burnside(&self, budget: &Budget) -> Result<usize> {
        let order = self.group.order() as u64;
        budget.check(order * self.size as u64)?;
        let total: usize = (0..self.group.order())
            .map(|g| (0..self.size).filter(|&m| self.act(g, m) == m).count())
            .sum();
        debug_assert_eq!(total % self.group.order(), 0);
        Ok(total / self.group.order())
    }

    /// Product of two G-sets for the product group, points in mixed-radix
    /// order with the first factor most significant.
    pub fn product(a: &GSet, b: &GSet, product_group: Arc<FiniteGroup>) -> Result<GSet> {
        if product_group.order() != a.group.order() * b.group.order() {
            return Err(Error::validation("product group has wrong order"));
        }
        let size = a.size * b.size;
        GSet::from_fn(product_group, size, |g, m| {
            let (ga, gb) = (g / b.group.order(), g % b.group.order());
            let (ma, mb) = (m / b.size, m % b.size);
            a.act(ga, ma) * b.size + b.act(gb, mb)
        })
    }
}

#[derive(Debug, Clone)]
pub struct Orbit {
    pub rep: usize,
    pub members: Vec<usize>,
    pub stabilizer: Subgroup,
    /// Point id to the group element mapping the representative there;
    /// `usize::MAX` off the orbit.
    pub transversal: Vec<usize>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: usize) -> bool {
        self.transversal.get(m).is_some_and(|&t| t != usize::MAX)
    }
}

/// A finite set with commuting left and right group actions, the label
/// datum of a codim-1 defect.
#[derive(Debug, Clone)]
pub struct BiSet {
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    size: usize,
    /// `left.order x size` left-action table.
    lact: Vec<usize>,
    /// `right.order x size` right-action table: `ract[h * size + m] = m <| h`.
    ract: Vec<usize>,
}

impl PartialEq for BiSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && *self.left == *other.left
            && *self.right == *other.right
            && self.lact == other.lact
            && self.ract == other.ract
    }
}

impl BiSet {
    pub fn new(
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
        size: usize,
        lact: Vec<usize>,
        ract: Vec<usize>,
    ) -> Result<Self> {
        let l = GSet::new(left.clone(), size, lact.clone())?;
        // a right action is a left action of the opposite group
        if ract.len() != right.order() * size {
            return Err(Error::validation("right action table has wrong size"));
        }
        let b = BiSet { left, right, size, lact, ract };
        for m in 0..size {
            if b.ract(m, 0) != m {
                return Err(Error::validation("identity does not act trivially on the right"));
            }
        }
        for h in 0..b.right.order() {
            for k in 0..b.right.order() {
                let hk = b.right.mul(h, k);
                for m in 0..size {
                    if b.ract(b.ract(m, h), k) != b.ract(m, hk) {
                        return Err(Error::validation(format!(
                            "not a right action at (h={h}, k={k}, m={m})"
                        )));
                    }
                }
            }
        }
        for g in 0..b.left.order() {
            for h in 0..b.right.order() {
                for m in 0..size {
                    if b.ract(l.act(g, m), h) != b.lact(g, b.ract(m, h)) {
                        return Err(Error::validation(format!(
                            "left and right actions do not commute at (g={g}, h={h}, m={m})"
                        )));
                    }
                }
            }
        }
        Ok(b)
    }

    /// The group itself as a transparent bimodule set: `g |> m <| h = g m h`.
    pub fn transparent(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut lact = Vec::with_capacity(n * n);
        let mut ract = Vec::with_capacity(n * n);
        for g in 0..n {
            for m in 0..n {
                lact.push(group.mul(g, m));
                ract.push(group.mul(m, g));
            }
        }
        BiSet { left: group.clone(), right: group, size: n, lact, ract }
    }

    /// The one-point biset, the impermeable defect label.
    pub fn point(left: Arc<FiniteGroup>, right: Arc<FiniteGroup>) -> Self {
        let lact = vec![0usize; left.order()];
        let ract = vec![0usize; right.order()];
        BiSet { left, right, size: 1, lact, ract }
    }

    /// Trivial actions on both sides.
    pub fn trivial(left: Arc<FiniteGroup>, right: Arc<FiniteGroup>, size: usize) -> Self {
        let mut lact = Vec::with_capacity(left.order() * size);
        for _ in 0..left.order() {
            lact.extend(0..size);
        }
        let mut ract = Vec::with_capacity(right.order() * size);
        for _ in 0..right.order() {
            ract.extend(0..size);
        }
        BiSet { left, right, size, lact, ract }
    }

    /// The opposite biset, with the roles of the two groups swapped:
    /// `g |>' m = m <| g^-1` and `m <|' h = h^-1 |> m`.
    pub fn opposite(&self) -> BiSet {
        let mut lact = Vec::with_capacity(self.right.order() * self.size);
        for h in 0..self.right.order() {
            for m in 0..self.size {
                lact.push(self.ract(m, self.right.inv(h)));
            }
        }
        let mut ract = Vec::with_capacity(self.left.order() * self.size);
        for g in 0..self.left.order() {
            for m in 0..self.size {
                ract.push(self.lact(self.left.inv(g), m));
            }
        }
        BiSet {
            left: self.right.clone(),
            right: self.left.clone(),
            size: self.size,
            lact,
            ract,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn lact(&self, g: usize, m: usize) -> usize {
        self.lact[g * self.size + m]
    }

    #[inline]
    pub fn ract(&self, m: usize, h: usize) -> usize {
        self.ract[h * self.size + m]
    }

    /// `g |> m <| h^-1`, the combined two-sided move used by gauge
    /// transformations.
    #[inline]
    pub fn conjugate(&self, g: usize, m: usize, h: usize) -> usize {
        self.ract(self.lact(g, m), self.right.inv(h))
    }

    /// The associated left action of `left x right` via
    /// `(g, h) |> m = g |> m <| h^-1`, on the given product group.
    pub fn as_gset(&self, product_group: Arc<FiniteGroup>) -> Result<GSet> {
        if product_group.order() != self.left.order() * self.right.order() {
            return Err(Error::validation("product group has wrong order for biset"));
        }
        let nr = self.right.order();
        GSet::from_fn(product_group, self.size, |gh, m| {
            self.conjugate(gh / nr, m, gh % nr)
        })
    }
}
