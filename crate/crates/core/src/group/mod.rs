//! Finite groups given by multiplication tables, permutation closure, and the
//! standard panel of small target groups.

pub mod catalog;
mod panel;

use std::collections::{HashMap, VecDeque};

use crate::presentation::{Presentation, Word};

pub use panel::{default_panel, panel_from_names, panel_group, NamedGroup, DEFAULT_PANEL};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("table entry {value} out of range for a group of order {order}")]
    EntryOutOfRange { value: usize, order: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("permutation {index} is not a bijection of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("permutations have different degrees")]
    DegreeMismatch,
    #[error("group closure exceeded the cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("element set {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

/// A finite group as a multiplication table over elements `0..order`.
///
/// Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

/// A subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.iter().copied().filter(|&g| other.contains(g)).collect())
    }
}

impl FiniteGroup {
    /// Builds a group from a table with `table[i][j] = i * j`.
    ///
    /// The identity may sit at any index; elements are relabelled so that it
    /// becomes element 0 only if it is not already there (callers relying on
    /// their own labels should put the identity first).
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { rows: n, row, len: r.len() });
            }
            if let Some(&value) = r.iter().find(|&&v| v >= n) {
                return Err(GroupError::EntryOutOfRange { value, order: n });
            }
        }
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        // Relabel with the identity first.
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, e);
        let flat: Vec<u32> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                perm[table[perm[i]][perm[j]]] as u32
            })
            .collect();
        let mut inverse = vec![0u32; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| flat[x * n + y] == 0 && flat[y * n + x] == 0)
                .ok_or(GroupError::NoInverse(x))? as u32;
        }
        let g = Self { order: n, table: flat, inverse };
        g.check_associative()?;
        Ok(g)
    }

    /// Trusted constructor for tables produced by this crate.
    pub(crate) fn from_flat(order: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let y = (0..order).find(|&y| table[x * order + y] == 0).expect("group has inverses");
            inverse[x] = y as u32;
        }
        Self { order, table, inverse }
    }

    // Light's test: associativity over a generating set suffices.
    fn check_associative(&self) -> Result<(), GroupError> {
        let gens = self.generating_set();
        for &g in &gens {
            for x in 0..self.order {
                let xg = self.mul(x, g);
                for y in 0..self.order {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(GroupError::NotAssociative(x, g, y));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self { order: 1, table: vec![0], inverse: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Self::from_flat(n, table)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            let (ia, ib) = (i / b.order, i % b.order);
            for j in 0..n {
                let (ja, jb) = (j / b.order, j % b.order);
                table[i * n + j] = idx(a.mul(ia, ja), b.mul(ib, jb)) as u32;
            }
        }
        Self::from_flat(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g h g^-1`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.mul(i, j)).collect()).collect()
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

    pub fn check_element(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { index: g, order: self.order })
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup((0..self.order).filter(|&x| seen[x]).collect())
    }

    /// Subgroup generated by `base` together with `extra`.
    pub fn join(&self, base: &Subgroup, extra: usize) -> Subgroup {
        let mut gens = base.0.clone();
        gens.push(extra);
        self.generated_subgroup(&gens)
    }

    /// Validates that `elements` form a subgroup and returns it sorted.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        for &g in elements {
            self.check_element(g)?;
        }
        let mut v = elements.to_vec();
        v.sort_unstable();
        v.dedup();
        let s = Subgroup(v);
        let closed = s.contains(0)
            && s.0.iter().all(|&a| s.contains(self.inv(a)) && s.0.iter().all(|&b| s.contains(self.mul(a, b))));
        if closed {
            Ok(s)
        } else {
            Err(GroupError::NotASubgroup(s.0))
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![0])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.order).collect())
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut v: Vec<usize> = h.0.iter().map(|&x| self.conjugate(g, x)).collect();
        v.sort_unstable();
        Subgroup(v)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generating_set();
        gens.iter().all(|&g| h.0.iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = Vec::new();
        for &x in elements {
            for g in 0..self.order {
                gens.push(self.conjugate(g, x));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.generated_subgroup(&gens)
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        Subgroup((0..self.order).filter(|&h| self.mul(g, h) == self.mul(h, g)).collect())
    }

    pub fn center(&self) -> Subgroup {
        Subgroup((0..self.order).filter(|&h| (0..self.order).all(|g| self.mul(g, h) == self.mul(h, g))).collect())
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                comms.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated_subgroup(&comms)
    }

    /// A small generating set found greedily (each new element enlarges the
    /// generated subgroup; elements of large order first).
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for g in by_order {
            if current.order() == self.order {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// Quotient by a normal subgroup: the quotient group and the projection
    /// `element -> coset index`. Coset indices follow the order of least
    /// representatives, so the identity coset is 0.
    pub fn quotient(&self, normal: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        debug_assert!(self.is_normal(normal));
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &n in normal.elements() {
                coset_of[self.mul(g, n)] = c;
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = coset_of[self.mul(reps[i], reps[j])] as u32;
            }
        }
        (FiniteGroup::from_flat(k, table), coset_of)
    }

    /// Every subgroup, by closure from the trivial subgroup under adjoining
    /// one element at a time. Sorted.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        self.overgroups(&[self.trivial_subgroup()])
    }

    /// Every subgroup containing at least one of `seeds`. Sorted.
    pub fn overgroups(&self, seeds: &[Subgroup]) -> Vec<Subgroup> {
        let mut found: std::collections::BTreeSet<Subgroup> = seeds.iter().cloned().collect();
        let mut queue: VecDeque<Subgroup> = found.iter().cloned().collect();
        while let Some(h) = queue.pop_front() {
            // Adjoining one representative per left coset is enough.
            let mut covered = vec![false; self.order];
            for g in 0..self.order {
                if covered[g] {
                    continue;
                }
                for &x in h.elements() {
                    covered[self.mul(g, x)] = true;
                }
                if h.contains(g) {
                    continue;
                }
                let k = self.join(&h, g);
                if found.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        found.into_iter().collect()
    }

    /// A presentation of this group on the images of `gens`, which must
    /// generate. Each element gets a normal-form word from a breadth-first
    /// walk of the Cayley graph; the relators say `word(q) * s = word(q s)`.
    pub fn presentation(&self, gens: &[usize]) -> Presentation {
        let mut word: Vec<Option<Word>> = vec![None; self.order];
        word[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for (s_idx, &s) in gens.iter().enumerate() {
                let r = self.mul(q, s);
                if word[r].is_none() {
                    word[r] = Some(word[q].as_ref().expect("visited") * &Word::gen(s_idx));
                    queue.push_back(r);
                }
            }
        }
        assert!(word.iter().all(Option::is_some), "generators must generate the group");
        let mut relators = Vec::new();
        for q in 0..self.order {
            for (s_idx, &s) in gens.iter().enumerate() {
                let lhs = word[q].as_ref().expect("visited") * &Word::gen(s_idx);
                let rhs = word[self.mul(q, s)].as_ref().expect("visited");
                let rel = &lhs * &rhs.inverse();
                if !rel.is_empty() {
                    relators.push(rel);
                }
            }
        }
        Presentation::with_generators(gens.len(), relators).expect("generator indices in range")
    }

    /// All homomorphisms `self -> target`, as element maps, found by
    /// assigning images to a generating set.
    pub fn homomorphisms_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        self.maps_to(target, false, usize::MAX)
    }

    /// Whether some isomorphism `self -> other` exists.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && !self.maps_to(other, true, 1).is_empty()
    }

    fn maps_to(&self, target: &FiniteGroup, bijective: bool, limit: usize) -> Vec<Vec<usize>> {
        let gens = self.generating_set();
        // Spanning tree of the Cayley graph: element = parent * gens[k].
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.order];
        let mut order_bfs = vec![0usize];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut head = 0;
        while head < order_bfs.len() {
            let x = order_bfs[head];
            head += 1;
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    order_bfs.push(y);
                }
            }
        }
        let gen_orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let candidates: Vec<Vec<usize>> = gen_orders
            .iter()
            .map(|&o| {
                (0..target.order)
                    .filter(|&t| {
                        let to = target.element_order(t);
                        if bijective {
                            to == o
                        } else {
                            o % to == 0
                        }
                    })
                    .collect()
            })
            .collect();

        let mut results = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        if candidates.iter().any(Vec::is_empty) {
            return results;
        }
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
            let mut map = vec![0usize; self.order];
            for &y in order_bfs.iter().skip(1) {
                let (x, k) = parent[y].expect("non-root");
                map[y] = target.mul(map[x], images[k]);
            }
            let is_hom = (0..self.order).all(|x| {
                gens.iter()
                    .enumerate()
                    .all(|(k, &g)| map[self.mul(x, g)] == target.mul(map[x], images[k]))
            });
            let ok = is_hom && (!bijective || {
                let mut hit = vec![false; target.order];
                map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
            });
            if ok {
                results.push(map);
                if results.len() >= limit {
                    return results;
                }
            }
            // Next choice (odometer).
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return results;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

/// A group of permutations of `0..degree`, closed, with its multiplication
/// table. Element 0 is the identity; composition is `(p∘q)(v) = p(q(v))`.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Vec<u32>>,
    generators: Vec<usize>,
    group: FiniteGroup,
}

impl PermutationGroup {
    /// Closes `gens` under composition by breadth-first multiplication.
    pub fn generate(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self, GroupError> {
        for (index, p) in gens.iter().enumerate() {
            if p.len() != degree {
                return Err(GroupError::DegreeMismatch);
            }
            let mut hit = vec![false; degree];
            for &v in p {
                if v >= degree || std::mem::replace(&mut hit[v], true) {
                    return Err(GroupError::NotAPermutation { index, degree });
                }
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let gens32: Vec<Vec<u32>> = gens.iter().map(|p| p.iter().map(|&v| v as u32).collect()).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &gens32 {
                let y: Vec<u32> = x.iter().map(|&v| g[v as usize]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let comp: Vec<u32> = elements[j].iter().map(|&v| elements[i][v as usize]).collect();
                table[i * n + j] = index[&comp] as u32;
            }
        }
        let generators = gens32.iter().map(|g| index[g]).collect();
        Ok(Self { degree, elements, generators, group: FiniteGroup::from_flat(n, table) })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Indices of the generating permutations, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn apply(&self, g: usize, point: usize) -> usize {
        self.elements[g][point] as usize
    }

    pub fn permutation(&self, g: usize) -> Vec<usize> {
        self.elements[g].iter().map(|&v| v as usize).collect()
    }

    /// Index of the element acting as `perm`, if it belongs to the group.
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.len() == perm.len() && e.iter().zip(perm).all(|(&a, &b)| a as usize == b))
    }

    /// Same elements and tables acting on `degree` points via `extend`.
    pub(crate) fn with_permutations(&self, degree: usize, elements: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(elements.len(), self.elements.len());
        Self { degree, elements, generators: self.generators.clone(), group: self.group.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermutationGroup {
        PermutationGroup::generate(3, &[vec![1, 2, 0], vec![1, 0, 2]], 100).unwrap()
    }

    #[test]
    fn s3_closure_and_table() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let grp = g.group();
        assert!(!grp.is_abelian());
        for a in 0..6 {
            for b in 0..6 {
                let ab = grp.mul(a, b);
                for v in 0..3 {
                    assert_eq!(g.apply(ab, v), g.apply(a, g.apply(b, v)));
                }
            }
        }
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = PermutationGroup::generate(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 10).unwrap_err();
        assert_eq!(err, GroupError::TooLarge { cap: 10 });
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse(1)));
        assert!(matches!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]), Err(GroupError::NotSquare { .. })));
        // Identity not first: relabelled.
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]].iter().map(|r| r.iter().map(|&x| 1 - x).collect()).collect::<Vec<Vec<usize>>>()).unwrap();
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn subgroups_of_s3() {
        let g = s3();
        let subs = g.group().all_subgroups();
        assert_eq!(subs.len(), 6);
        let normal = subs.iter().filter(|h| g.group().is_normal(h)).count();
        assert_eq!(normal, 3);
    }

    #[test]
    fn quotient_by_a3() {
        let g = s3();
        let grp = g.group();
        let a3 = grp.generated_subgroup(&[g.generators()[0]]);
        assert_eq!(a3.order(), 3);
        let (q, proj) = grp.quotient(&a3);
        assert_eq!(q.order(), 2);
        assert_eq!(proj[0], 0);
    }

    #[test]
    fn isomorphism_detection() {
        let z6 = FiniteGroup::cyclic(6);
        let z2z3 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert!(z6.is_isomorphic(&z2z3));
        assert!(!z6.is_isomorphic(s3().group()));
        assert_eq!(s3().group().homomorphisms_to(&FiniteGroup::cyclic(2)).len(), 2);
    }

    #[test]
    fn cayley_presentation_defines_the_group() {
        let g = s3();
        let p = g.group().presentation(g.generators());
        assert_eq!(p.generator_count(), 2);
        let homs = crate::presentation::count_homs(&p, g.group(), &Default::default()).unwrap();
        // Homs S3 -> S3: 6 automorphisms + 3 onto Z2 images + 1 trivial.
        assert_eq!(homs, 10);
    }
}
