use super::{Presentation, Word};

const MAX_ITERATIONS: usize = 20_000;
// Overlap reduction is quadratic in the relator count; skip it on presentations
// that are still large.
const OVERLAP_MAX_RELATORS: usize = 256;

/// Outcome of [`tietze_simplify_with_report`].
#[derive(Clone, Debug)]
pub struct SimplifyReport {
    pub presentation: Presentation,
    pub iterations: usize,
    /// Set when the iteration cap stopped simplification early.
    pub capped: bool,
}

/// Simplifies `p` by Tietze transformations; see
/// [`tietze_simplify_with_report`].
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    tietze_simplify_with_report(p).presentation
}

/// Repeats, until nothing applies: free and cyclic reduction with removal of
/// empty and duplicate relators; elimination of a generator that occurs
/// exactly once in some relator; shortening a relator by replacing a long
/// piece of another relator with its shorter complement.
///
/// Each step lowers (generator count, total relator length)
/// lexicographically, so the loop terminates; the iteration cap is a guard
/// on work only.
pub fn tietze_simplify_with_report(p: &Presentation) -> SimplifyReport {
    let mut names = p.names().to_vec();
    let mut rels: Vec<Word> = p.relators().to_vec();
    let mut iterations = 0;
    let mut capped = false;
    loop {
        normalize(&mut rels);
        if iterations >= MAX_ITERATIONS {
            capped = true;
            break;
        }
        iterations += 1;
        if eliminate_generator(&mut names, &mut rels) {
            continue;
        }
        if rels.len() <= OVERLAP_MAX_RELATORS && reduce_by_overlap(&mut rels) {
            continue;
        }
        break;
    }
    let presentation = Presentation::new(names, rels).expect("simplification keeps generator indices valid");
    SimplifyReport { presentation, iterations, capped }
}

fn normalize(rels: &mut Vec<Word>) {
    for r in rels.iter_mut() {
        *r = r.canonical_relator();
    }
    rels.retain(|r| !r.is_empty());
    rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    rels.dedup();
}

fn eliminate_generator(names: &mut Vec<String>, rels: &mut Vec<Word>) -> bool {
    let n = names.len();
    let mut total = vec![0usize; n];
    for r in rels.iter() {
        for l in r.letters() {
            total[l.gen] += 1;
        }
    }
    // (cost, relator length, reversed generator index) — the last term
    // prefers eliminating later generators on ties.
    let mut best: Option<((usize, usize, std::cmp::Reverse<usize>), usize, usize)> = None;
    for (ri, r) in rels.iter().enumerate() {
        let mut seen = vec![0usize; 0];
        for l in r.letters() {
            if seen.contains(&l.gen) || r.occurrences(l.gen) != 1 {
                seen.push(l.gen);
                continue;
            }
            seen.push(l.gen);
            let elsewhere = total[l.gen] - 1;
            let cost = (r.len() - 1) * elsewhere;
            let key = (cost, r.len(), std::cmp::Reverse(l.gen));
            if best.as_ref().map_or(true, |(k, _, _)| key < *k) {
                best = Some((key, ri, l.gen));
            }
        }
    }
    let Some((_, ri, gen)) = best else { return false };

    let r = rels.remove(ri);
    let pos = r.letters().iter().position(|l| l.gen == gen).expect("occurs once");
    // Rotate so the generator is last: r ~ w x^e, hence x^e = w^-1.
    let rotated = r.rotated(pos + 1);
    let letters = rotated.letters();
    let last = letters[letters.len() - 1];
    let w = Word::from_letters(letters[..letters.len() - 1].to_vec());
    let image = if last.inverse { w } else { w.inverse() };

    for other in rels.iter_mut() {
        if other.mentions(gen) {
            *other = other.substitute(gen, &image);
        }
        *other = other.map_gens(|g| if g > gen { g - 1 } else { g });
    }
    names.remove(gen);
    true
}

fn reduce_by_overlap(rels: &mut [Word]) -> bool {
    for j in 0..rels.len() {
        let s = rels[j].clone();
        let l = s.len();
        if l == 0 {
            continue;
        }
        let shapes: Vec<Word> = (0..l).flat_map(|k| [s.rotated(k), s.inverse().rotated(k)]).collect();
        for i in 0..rels.len() {
            if i == j || rels[i].len() < l / 2 + 1 {
                continue;
            }
            if let Some(shorter) = shorten(&rels[i], &shapes, l) {
                rels[i] = shorter;
                return true;
            }
        }
    }
    false
}

/// If a cyclic piece `u` of `r` is a prefix of some cyclic form `t = u v` of
/// another relator with `|u| > |t| / 2`, replace it by `v^-1`.
fn shorten(r: &Word, shapes: &[Word], l: usize) -> Option<Word> {
    let rl = r.letters();
    let n = rl.len();
    for k in (l / 2 + 1..=l.min(n)).rev() {
        for t in shapes {
            let u = &t.letters()[..k];
            for start in 0..n {
                if (0..k).all(|d| rl[(start + d) % n] == u[d]) {
                    let v = Word::from_letters(t.letters()[k..].to_vec());
                    let rest: Word = (k..n).map(|d| rl[(start + d) % n]).collect();
                    return Some((&v.inverse() * &rest).canonical_relator());
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, rels: &[&[(usize, i32)]]) -> Presentation {
        Presentation::with_generators(n, rels.iter().map(|r| Word::from_pairs(r)).collect()).unwrap()
    }

    #[test]
    fn kills_dead_generator() {
        let out = tietze_simplify(&pres(2, &[&[(1, 1)]]));
        assert_eq!(out.names(), ["a"]);
        assert!(out.relators().is_empty());
    }

    #[test]
    fn drops_trivial_relator() {
        let p = Presentation::with_generators(1, vec![Word::from_letters(vec![
            super::super::Letter::pos(0),
            super::super::Letter::neg(0),
        ])])
        .unwrap();
        let out = tietze_simplify(&p);
        assert_eq!(out.generator_count(), 1);
        assert!(out.relators().is_empty());
    }

    #[test]
    fn substitutes_inverse() {
        let out = tietze_simplify(&pres(2, &[&[(0, 1), (1, 1)]]));
        assert_eq!(out.names(), ["a"]);
        assert!(out.relators().is_empty());
    }

    #[test]
    fn overlap_shortens_relator() {
        // a^3 and a^5: a^5 -> a^2 -> gcd reduces to a
        let out = tietze_simplify(&pres(1, &[&[(0, 1), (0, 1), (0, 1)], &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]]));
        assert!(out.generator_count() == 0 || out.relators() == [Word::gen(0)]);
    }

    #[test]
    fn keeps_cyclic_group() {
        let out = tietze_simplify(&Presentation::cyclic(5));
        assert_eq!(out, Presentation::cyclic(5));
    }
}
