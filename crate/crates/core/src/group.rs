//! Finite groups in multiplication-table form, with the enumeration
//! primitives everything else consumes.
//!
//! Elements are dense integer ids `0..order`, with the identity always
//! id `0`. All outputs are ordered lexicographically on ids so results
//! are reproducible across runs and platforms.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Full associativity checks are exhaustive up to this order and
/// deterministically sampled above it.
const ASSOC_EXHAUSTIVE_LIMIT: usize = 256;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major `order x order` table: `mul[a * order + b] = a * b`.
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates an explicit table and computes inverses and a greedy
    /// generating set.
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::validation("group table must be non-empty"));
        }
        if mul.iter().any(|row| row.len() != order) {
            return Err(Error::validation("group table must be square"));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= order) {
            return Err(Error::validation(format!(
                "table entry {bad} out of range for order {order}"
            )));
        }
        Self::from_flat_table(name, order, flat)
    }

    fn from_flat_table(name: impl Into<String>, order: usize, mul: Vec<usize>) -> Result<Arc<Self>> {
        // identity must be element 0
        for x in 0..order {
            if mul[x] != x || mul[x * order] != x {
                return Err(Error::validation(
                    "element 0 is not a two-sided identity".to_string(),
                ));
            }
        }
        // two-sided inverses
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| mul[g * order + h] == 0 && mul[h * order + g] == 0) {
                Some(h) => inv[g] = h,
                None => {
                    return Err(Error::validation(format!(
                        "element {g} has no two-sided inverse"
                    )))
                }
            }
        }
        // associativity: exhaustive at small order, sampled above
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let ab_c = mul[mul[a * order + b] * order + c];
            let a_bc = mul[a * order + mul[b * order + c]];
            if ab_c != a_bc {
                return Err(Error::validation(format!(
                    "non-associative table: ({a}*{b})*{c} = {ab_c} but {a}*({b}*{c}) = {a_bc}"
                )));
            }
            Ok(())
        };
        if order <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // deterministic stride sample of about 2^24 triples
            let stride = (order * order * order / (1 << 24)).max(1);
            let mut idx = 0usize;
            while idx < order * order * order {
                let a = idx / (order * order);
                let b = (idx / order) % order;
                let c = idx % order;
                check(a, b, c)?;
                idx += stride;
            }
        }
        let mut g = FiniteGroup { name: name.into(), order, mul, inv, generators: vec![] };
        g.generators = g.greedy_generators();
        Ok(Arc::new(g))
    }

    /// Cyclic group of order `n`, elements `k` with addition mod n.
    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::validation("cyclic group needs n >= 1"));
        }
        let mut mul = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a + b) % n;
            }
        }
        Self::from_flat_table(format!("Z{n}"), n, mul)
    }

    /// Dihedral group of order `2n`: element `2i + j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::validation("dihedral group needs n >= 1"));
        }
        let order = 2 * n;
        let mut mul = vec![0usize; order * order];
        for i in 0..n {
            for j in 0..2 {
                for k in 0..n {
                    for l in 0..2 {
                        // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
                        let rot = if j == 0 { (i + k) % n } else { (i + n - k % n) % n };
                        let refl = (j + l) % 2;
                        mul[(2 * i + j) * order + (2 * k + l)] = 2 * rot + refl;
                    }
                }
            }
        }
        Self::from_flat_table(format!("D{n}"), order, mul)
    }

    /// Symmetric group on `n <= 5` letters; elements are permutations of
    /// `0..n` in lexicographic order, composed as `(s*t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Result<Arc<Self>> {
        if n == 0 || n > 5 {
            return Err(Error::validation("symmetric group supported for 1 <= n <= 5"));
        }
        let perms = all_permutations(n);
        let order = perms.len();
        let rank = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut mul = vec![0usize; order * order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let comp: Vec<usize> = (0..n).map(|i| pa[pb[i]]).collect();
                mul[a * order + b] = rank(&comp);
            }
        }
        Self::from_flat_table(format!("S{n}"), order, mul)
    }

    /// Direct product; element `(a, b)` has id `a * |B| + b`.
    pub fn product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Arc<Self>> {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut mul = vec![0usize; order * order];
        for a1 in 0..na {
            for b1 in 0..nb {
                for a2 in 0..na {
                    for b2 in 0..nb {
                        mul[(a1 * nb + b1) * order + (a2 * nb + b2)] =
                            a.mul(a1, a2) * nb + b.mul(b1, b2);
                    }
                }
            }
        }
        Self::from_flat_table(format!("{}x{}", a.name, b.name), order, mul)
    }

    /// Direct product of a list of groups, in mixed-radix id order with
    /// the first factor most significant. An empty list yields the
    /// trivial group.
    pub fn product_of(factors: &[Arc<FiniteGroup>]) -> Result<Arc<Self>> {
        match factors {
            [] => Self::cyclic(1),
            [g] => Ok(g.clone()),
            [first, rest @ ..] => {
                let tail = Self::product_of(rest)?;
                Self::product(first, &tail)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Product of a word in the listed elements; negative letters invert.
    /// Letter `+k` (1-based) is `xs[k-1]`, letter `-k` its inverse.
    pub fn eval_word(&self, word: &[i32], xs: &[usize]) -> usize {
        let mut acc = 0;
        for &letter in word {
            let idx = letter.unsigned_abs() as usize - 1;
            let g = if letter > 0 { xs[idx] } else { self.inv(xs[idx]) };
            acc = self.mul(acc, g);
        }
        acc
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = Subgroup::generated_by(self, &[]);
        while closure.len() < self.order {
            let next = (0..self.order).find(|g| !closure.contains(*g)).unwrap();
            gens.push(next);
            closure = Subgroup::generated_by(self, &gens);
        }
        gens
    }

    /// Conjugacy classes with centralizers; classes are ordered by their
    /// smallest member, which is also the representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for rep in 0..self.order {
            if seen[rep] {
                continue;
            }
            let mut members: Vec<usize> = (0..self.order)
                .map(|g| self.mul(self.mul(g, rep), self.inv(g)))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            let centralizer = Subgroup::from_elements(
                self,
                (0..self.order)
                    .filter(|&g| self.mul(g, rep) == self.mul(rep, g))
                    .collect(),
            );
            debug_assert_eq!(members.len() * centralizer.len(), self.order);
            classes.push(ConjClass { rep, members, centralizer });
        }
        classes
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}
impl Eq for FiniteGroup {}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: usize,
    pub members: Vec<usize>,
    pub centralizer: Subgroup,
}

/// A subgroup as a sorted id list with a membership bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn from_elements(group: &FiniteGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; group.order()];
        for &e in &elements {
            member[e] = true;
        }
        Subgroup { elements, member }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup::from_elements(group, (0..group.order()).collect())
    }

    pub fn generated_by(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut member = vec![false; group.order()];
        member[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [group.mul(x, g), group.mul(g, x)] {
                    if !member[y] {
                        member[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        let elements = (0..group.order()).filter(|&x| member[x]).collect();
        Subgroup { elements, member }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member[g]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Position of `g` in the sorted element list.
    pub fn index_of(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    /// The subgroup as a group in its own right, with the id map back to
    /// the parent. Element 0 stays the identity because the parent
    /// identity is id 0 and sorting keeps it first.
    pub fn as_group(&self, parent: &FiniteGroup, name: impl Into<String>) -> Result<Arc<FiniteGroup>> {
        let k = self.elements.len();
        let mut mul = vec![0usize; k * k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                let p = parent.mul(a, b);
                let idx = self.index_of(p).ok_or_else(|| {
                    Error::validation(format!(
                        "element set is not closed under multiplication: {a}*{b}"
                    ))
                })?;
                mul[i * k + j] = idx;
            }
        }
        FiniteGroup::from_flat_table(name, k, mul)
    }
}

/// A group homomorphism given by its full image table.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::validation("homomorphism table has wrong length"));
        }
        if image.iter().any(|&x| x >= target.order()) {
            return Err(Error::validation("homomorphism image out of range"));
        }
        if image[0] != 0 {
            return Err(Error::validation("homomorphism does not preserve the identity"));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::validation(format!(
                        "not a homomorphism at pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, image })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let image = (0..group.order()).collect();
        GroupHom { source: group.clone(), target: group, image }
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }
}

/// All tuples `(x_1..x_r)` in `G^r` satisfying every relator, in
/// lexicographic order of element ids. Relators are words in letters
/// `+-k` for generator `a_k` and its inverse; a relator is checked as
/// soon as the prefix it touches is assigned.
pub fn enumerate_homs(
    rank: usize,
    relators: &[Vec<i32>],
    group: &FiniteGroup,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    for rel in relators {
        if rel.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > rank) {
            return Err(Error::validation(format!(
                "relator {rel:?} references a generator outside 1..={rank}"
            )));
        }
    }
    // relators indexed by the largest generator they mention
    let mut by_depth: Vec<Vec<&Vec<i32>>> = vec![Vec::new(); rank + 1];
    for rel in relators {
        let d = rel.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        by_depth[d].push(rel);
    }
    let mut out = Vec::new();
    let mut tuple = vec![0usize; rank];
    let mut visited: u64 = 0;
    // depth-first search in lexicographic order
    let mut depth = 0usize;
    let mut cursor = vec![0usize; rank + 1];
    if rank == 0 {
        let ok = by_depth[0].iter().all(|rel| group.eval_word(rel, &[]) == 0);
        return Ok(if ok { vec![vec![]] } else { vec![] });
    }
    loop {
        if cursor[depth] == group.order() {
            if depth == 0 {
                break;
            }
            cursor[depth] = 0;
            depth -= 1;
            cursor[depth] += 1;
            continue;
        }
        visited += 1;
        if visited > budget.limit() {
            return Err(Error::Budget { needed: visited, budget: budget.limit() });
        }
        tuple[depth] = cursor[depth];
        let ok = by_depth[depth + 1]
            .iter()
            .all(|rel| group.eval_word(rel, &tuple[..depth + 1]) == 0);
        if !ok {
            cursor[depth] += 1;
            continue;
        }
        if depth + 1 == rank {
            out.push(tuple.clone());
            cursor[depth] += 1;
        } else {
            depth += 1;
            cursor[depth] = 0;
        }
    }
    Ok(out)
}

/// The commutator word `[a_i, a_j] = a_i a_j a_i^-1 a_j^-1` (1-based).
pub fn commutator_word(i: i32, j: i32) -> Vec<i32> {
    vec![i, j, -i, -j]
}

/// The genus-g surface relator `[a_1,b_1]...[a_g,b_g]` over generators
/// `a_k = x_(2k-1)`, `b_k = x_(2k)`.
pub fn surface_relator(genus: usize) -> Vec<i32> {
    let mut w = Vec::new();
    for k in 0..genus as i32 {
        w.extend(commutator_word(2 * k + 1, 2 * k + 2));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let mut cents: Vec<usize> = classes.iter().map(|c| c.centralizer.len()).collect();
        cents.sort_unstable();
        assert_eq!(cents, vec![2, 3, 6]);
    }

    #[test]
    fn product_of_cyclics_is_abelian() {
        let a = FiniteGroup::cyclic(2).unwrap();
        let b = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::product(&a, &b).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
    }

    #[test]
    fn abelian_group_has_singleton_classes() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|c| c.members.len() == 1));
        assert!(classes.iter().all(|c| c.centralizer.len() == 4));
    }

    #[test]
    fn dihedral_relations() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        let r = 2; // r^1 s^0
        let s = 1; // r^0 s^1
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }

    #[test]
    fn bad_tables_are_rejected() {
        // identity not at 0
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("bad", t).is_err());
        // non-associative latin-like square (order 5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop5", t).unwrap_err();
        assert!(err.to_string().contains("associative") || err.to_string().contains("inverse"));
    }

    #[test]
    fn greedy_generators_generate() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::cyclic(12).unwrap(),
        ] {
            let closure = Subgroup::generated_by(&g, g.generators());
            assert_eq!(closure.len(), g.order());
        }
    }

    #[test]
    fn free_homs_count() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let homs = enumerate_homs(1, &[], &g, &Budget::default()).unwrap();
        assert_eq!(homs.len(), 6);
        let homs = enumerate_homs(2, &[], &g, &Budget::default()).unwrap();
        assert_eq!(homs.len(), 36);
    }

    #[test]
    fn commuting_pairs_of_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let homs = enumerate_homs(2, &[commutator_word(1, 2)], &g, &Budget::default()).unwrap();
        assert_eq!(homs.len(), 18);
        // lexicographic order
        let mut sorted = homs.clone();
        sorted.sort();
        assert_eq!(homs, sorted);
    }

    #[test]
    fn genus_two_homs_of_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let homs = enumerate_homs(4, &[surface_relator(2)], &g, &Budget::default()).unwrap();
        assert_eq!(homs.len(), 486);
    }

    #[test]
    fn budget_cuts_off_enumeration() {
        let g = FiniteGroup::symmetric(5).unwrap();
        let err = enumerate_homs(4, &[], &g, &Budget::new(1000)).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn subgroup_as_group() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let classes = g.conjugacy_classes();
        // centralizer of a transposition is Z2
        let c = classes
            .iter()
            .find(|c| c.members.len() == 3)
            .unwrap()
            .centralizer
            .as_group(&g, "cent")
            .unwrap();
        assert_eq!(c.order(), 2);
    }
}
