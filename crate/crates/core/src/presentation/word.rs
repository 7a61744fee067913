//! Words in a free group on numbered generators.

use std::fmt;
use std::ops::Mul;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, exponent: i32) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be +1 or -1");
        Self { gen, inverse: exponent < 0 }
    }

    pub fn pos(gen: usize) -> Self {
        Self { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word over generators `0..n`, each letter with exponent ±1.
///
/// Construction through [`Word::from_letters`] keeps the letters as given;
/// everything else in the crate works with freely reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn gen(gen: usize) -> Self {
        Self(vec![Letter::pos(gen)])
    }

    pub fn gen_inv(gen: usize) -> Self {
        Self(vec![Letter::neg(gen)])
    }

    /// Raw letters, not reduced.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Freely reduced word from `(generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i32)]) -> Self {
        let mut w = Self(pairs.iter().map(|&(g, e)| Letter::new(g, e)).collect());
        w.free_reduce();
        w
    }

    /// `g^k` for any integer `k`.
    pub fn power(gen: usize, k: i64) -> Self {
        let letter = if k >= 0 { Letter::pos(gen) } else { Letter::neg(gen) };
        Self(vec![letter; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        if self.0.last().is_some_and(|last| last.cancels(letter)) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn free_reduce(&mut self) {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().is_some_and(|last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        self.0 = out;
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Freely and cyclically reduced.
    pub fn cyclically_reduced(&self) -> Self {
        let mut w = self.clone();
        w.free_reduce();
        let letters = &w.0;
        let mut lo = 0;
        let mut hi = letters.len();
        while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Self(letters[lo..hi].to_vec())
    }

    fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
        let n = letters.len();
        (0..n)
            .map(|r| letters[r..].iter().chain(&letters[..r]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    /// Canonical representative of the relator `self`: cyclically reduced,
    /// then the lexicographically least rotation of the word or its inverse.
    pub fn canonical_relator(&self) -> Self {
        let w = self.cyclically_reduced();
        let a = Self::least_rotation(&w.0);
        let b = Self::least_rotation(&w.inverse().0);
        Self(a.min(b))
    }

    /// Signed exponent sum of each generator `0..n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n];
        for l in &self.0 {
            sums[l.gen] += i64::from(l.exponent());
        }
        sums
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Replaces every occurrence of `gen` by `image` (inverted where the
    /// letter is inverted) and freely reduces.
    pub fn substitute(&self, gen: usize, image: &Word) -> Self {
        let inv_image = image.inverse();
        let mut out = Word::empty();
        for &l in &self.0 {
            if l.gen == gen {
                let part = if l.inverse { &inv_image } else { image };
                for &m in &part.0 {
                    out.push(m);
                }
            } else {
                out.push(l);
            }
        }
        out
    }

    /// Applies `f` to every generator index.
    pub fn map_gens(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        let mut out = Word::empty();
        for &l in &self.0 {
            out.push(Letter { gen: f(l.gen), inverse: l.inverse });
        }
        out
    }

    /// Rotation of `self` (cyclic) starting at position `start`.
    pub fn rotated(&self, start: usize) -> Self {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let s = start % n;
        Self(self.0[s..].iter().chain(&self.0[..s]).copied().collect())
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for &l in &rhs.0 {
            out.push(l);
        }
        out
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        let mut w = Word::empty();
        for l in iter {
            w.push(l);
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", l.gen)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_cancels_adjacent_pairs() {
        let w = Word::from_pairs(&[(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]);
        assert_eq!(w, Word::gen(2));
    }

    #[test]
    fn cyclic_reduction_strips_conjugation() {
        let w = Word::from_letters(vec![Letter::pos(0), Letter::pos(1), Letter::neg(0)]);
        assert_eq!(w.cyclically_reduced(), Word::gen(1));
    }

    #[test]
    fn canonical_relator_identifies_rotations_and_inverses() {
        let a = Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let b = Word::from_pairs(&[(1, 1), (0, 1), (1, -1), (0, -1)]);
        assert_eq!(a.canonical_relator(), b.canonical_relator());
        let c = Word::from_pairs(&[(0, -1), (0, -1)]);
        assert_eq!(c.canonical_relator(), Word::power(0, 2));
    }

    #[test]
    fn substitution_inverts_where_needed() {
        // a b^-1 with b := a c  ->  a c^-1 a^-1
        let w = Word::from_pairs(&[(0, 1), (1, -1)]);
        let image = Word::from_pairs(&[(0, 1), (2, 1)]);
        assert_eq!(w.substitute(1, &image), Word::from_pairs(&[(0, 1), (2, -1), (0, -1)]));
    }
}
