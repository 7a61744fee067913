//! Smith normal form, abelianization, Tietze simplification and
//! homomorphism counting, checked against independent computations.

use ghostloop::group::{catalog, default_panel, panel_group, FiniteGroup};
use ghostloop::presentation::{
    abelianization, count_homs, smith_normal_form, tietze_simplify, AbelianInvariants, HomCaps, Letter, Presentation,
    Word,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors as quotients of consecutive determinantal divisors
/// (gcds of all k x k minors).
fn determinantal_factors(m: &[Vec<i128>]) -> Vec<i128> {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let mut d = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

fn snf(m: &[Vec<i128>]) -> Vec<i128> {
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_normal_form(&rows).iter().map(|d| i128::try_from(d).unwrap()).collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i128..=9, c), r))
}

fn word(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, prop::bool::ANY), 1..=6)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(gen, inverse)| Letter { gen, inverse }).collect()))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(word(n), 0..=3).prop_map(move |rels| Presentation::with_generators(n, rels).unwrap())
    })
}

fn shifted(w: &Word, by: usize) -> Word {
    w.letters().iter().map(|l| Letter { gen: l.gen + by, inverse: l.inverse }).collect()
}

fn free_product(p: &Presentation, q: &Presentation) -> Presentation {
    let n = p.generator_count();
    let rels = p.relators().iter().cloned().chain(q.relators().iter().map(|w| shifted(w, n))).collect();
    Presentation::with_generators(n + q.generator_count(), rels).unwrap()
}

fn small_targets() -> Vec<FiniteGroup> {
    ["Z2", "Z3", "Z4", "S3"].iter().map(|n| panel_group(n).unwrap()).collect()
}

proptest! {
    #[test]
    fn snf_matches_determinantal_divisors(m in matrix()) {
        prop_assert_eq!(snf(&m), determinantal_factors(&m));
    }

    #[test]
    fn snf_ignores_row_and_column_permutations_and_signs(
        m in matrix(), seed in any::<u64>()
    ) {
        let rows = m.len();
        let cols = m[0].len();
        let mut rp: Vec<usize> = (0..rows).collect();
        let mut cp: Vec<usize> = (0..cols).collect();
        rp.rotate_left((seed % rows as u64) as usize);
        cp.reverse();
        cp.rotate_left(((seed >> 8) % cols as u64) as usize);
        let permuted: Vec<Vec<i128>> = rp
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let sign = if (seed >> (16 + i)) & 1 == 1 { -1 } else { 1 };
                cp.iter().map(|&c| sign * m[r][c]).collect()
            })
            .collect();
        prop_assert_eq!(snf(&m), snf(&permuted));
    }

    #[test]
    fn tietze_keeps_abelianization_and_hom_counts(p in presentation()) {
        let q = tietze_simplify(&p);
        prop_assert_eq!(abelianization(&p), abelianization(&q));
        for t in small_targets() {
            prop_assert_eq!(count_homs(&p, &t, &HomCaps::default()).unwrap(), count_homs(&q, &t, &HomCaps::default()).unwrap());
        }
    }

    #[test]
    fn cyclic_hom_counts_follow_from_abelianization(p in presentation()) {
        let ab = abelianization(&p);
        for n in 2u64..=6 {
            let expected = (n as u128).pow(ab.free_rank as u32)
                * ab.torsion_u64().iter().map(|&d| gcd(d as i128, n as i128) as u128).product::<u128>();
            let got = count_homs(&p, &FiniteGroup::cyclic(n as usize), &HomCaps::default()).unwrap();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn hom_counts_multiply_over_free_products(p in presentation(), q in presentation()) {
        let caps = HomCaps { max_generators: 6, ..HomCaps::default() };
        let pq = free_product(&p, &q);
        for t in small_targets() {
            let lhs = count_homs(&pq, &t, &caps).unwrap();
            let rhs = count_homs(&p, &t, &caps).unwrap() * count_homs(&q, &t, &caps).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn hom_counts_agree_with_table_enumeration() {
    let groups = catalog::small_groups(8);
    for g in groups.iter().flatten() {
        let p = g.presentation(&g.generating_set());
        for t in default_panel().iter().take(5) {
            assert_eq!(
                count_homs(&p, &t.group, &HomCaps::default()).unwrap(),
                g.homomorphisms_to(&t.group).len() as u128,
                "group of order {} into {}",
                g.order(),
                t.name
            );
        }
    }
}

#[test]
fn presented_groups_have_expected_abelianizations() {
    // <x, y | x^2 y^-3> has abelianization Z; so does the braid relation.
    let trefoil = Presentation::with_generators(2, vec![Word::from_pairs(&[(0, 1), (0, 1), (1, -1), (1, -1), (1, -1)])]).unwrap();
    assert_eq!(abelianization(&trefoil), AbelianInvariants::free(1));
    let d4 = panel_group("D4").unwrap();
    let ab = abelianization(&d4.presentation(&d4.generating_set()));
    assert_eq!((ab.free_rank, ab.torsion_u64()), (0, vec![2, 2]));
}
