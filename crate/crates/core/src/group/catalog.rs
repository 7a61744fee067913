//! Every group of small order, up to isomorphism.
//!
//! Groups are produced from cyclic groups, dicyclic groups, and iterated
//! semidirect products `N ⋊ H` over all actions `H -> Aut(N)`, then
//! deduplicated by an isomorphism test. Up to order 24 this reaches every
//! isomorphism class (the only non-split groups in that range are cyclic or
//! dicyclic); [`group_counts`] checks the class counts.

use std::collections::HashMap;

use super::{FiniteGroup, PermutationGroup};

/// Number of isomorphism classes of groups of order `n`, for `n <= 24`.
pub const KNOWN_COUNTS: [usize; 25] =
    [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

/// Dicyclic group of order `4n`: `<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let order = 2 * m;
    // element a^k x^e has index 2k + e
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        let (k, e) = (i / 2, i % 2);
        for j in 0..order {
            let (l, f) = (j / 2, j % 2);
            let (power, xs) = if e == 0 { (k + l, f) } else { (k + m - l, 1 + f) };
            let (power, xs) = if xs == 2 { (power + n, 0) } else { (power, xs) };
            table[i * order + j] = (2 * (power % m) + xs) as u32;
        }
    }
    FiniteGroup::from_flat(order, table)
}

/// `N ⋊ H` where `action[h]` is the automorphism of `N` (as an element map)
/// by which `h` acts. Element `(n, h)` has index `n * |H| + h`.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>]) -> FiniteGroup {
    let (on, oh) = (n.order(), h.order());
    let order = on * oh;
    let mut table = vec![0u32; order * order];
    for i in 0..order {
        let (n1, h1) = (i / oh, i % oh);
        for j in 0..order {
            let (n2, h2) = (j / oh, j % oh);
            let nn = n.mul(n1, action[h1][n2]);
            table[i * order + j] = (nn * oh + h.mul(h1, h2)) as u32;
        }
    }
    FiniteGroup::from_flat(order, table)
}

fn automorphism_group(n: &FiniteGroup) -> PermutationGroup {
    let autos = n.maps_to(n, true, usize::MAX);
    PermutationGroup::generate(n.order(), &autos, autos.len().max(1)).expect("automorphisms are closed")
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Invariants {
    order_histogram: Vec<usize>,
    center: usize,
    derived: usize,
}

fn invariants(g: &FiniteGroup) -> Invariants {
    let mut order_histogram = vec![0; g.order() + 1];
    for x in 0..g.order() {
        order_histogram[g.element_order(x)] += 1;
    }
    Invariants { order_histogram, center: g.center().order(), derived: g.derived_subgroup().order() }
}

struct Classes {
    by_order: Vec<Vec<FiniteGroup>>,
    buckets: HashMap<Invariants, Vec<usize>>,
}

impl Classes {
    fn offer(&mut self, g: FiniteGroup) {
        let key = invariants(&g);
        let n = g.order();
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| self.by_order[n][i].is_isomorphic(&g)) {
            return;
        }
        bucket.push(self.by_order[n].len());
        self.by_order[n].push(g);
    }
}

/// One representative of every isomorphism class of groups of order
/// `1..=max_order`, indexed by order (index 0 is empty). Intended for
/// `max_order <= 24`.
pub fn small_groups(max_order: usize) -> Vec<Vec<FiniteGroup>> {
    let mut classes = Classes { by_order: vec![Vec::new(); max_order + 1], buckets: HashMap::new() };
    let mut autos: HashMap<(usize, usize), PermutationGroup> = HashMap::new();
    for order in 1..=max_order {
        classes.offer(FiniteGroup::cyclic(order));
        if order % 4 == 0 && order >= 8 {
            classes.offer(dicyclic(order / 4));
        }
        for a in 2..order {
            if order % a != 0 || order / a < 2 {
                continue;
            }
            let b = order / a;
            for (ni, normal) in classes.by_order[a].clone().iter().enumerate() {
                let aut = autos.entry((a, ni)).or_insert_with(|| automorphism_group(normal)).clone();
                for quotient in classes.by_order[b].clone() {
                    for hom in quotient.homomorphisms_to(aut.group()) {
                        let action: Vec<Vec<usize>> = hom.iter().map(|&x| aut.permutation(x)).collect();
                        classes.offer(semidirect_product(normal, &quotient, &action));
                    }
                }
            }
        }
    }
    classes.by_order
}

/// Class counts per order from [`small_groups`].
pub fn group_counts(max_order: usize) -> Vec<usize> {
    small_groups(max_order).iter().map(Vec::len).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicyclic_of_order_eight_is_quaternion() {
        let q = dicyclic(2);
        let q8 = super::super::panel_group("Q8").unwrap();
        assert!(q.is_isomorphic(&q8));
    }

    #[test]
    fn counts_match_known_values_through_order_twelve() {
        assert_eq!(group_counts(12), KNOWN_COUNTS[..=12].to_vec());
    }
}
