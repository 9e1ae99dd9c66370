//! Free-group words over a signed, interned generator alphabet.

use std::fmt;

/// Interned generator token. Indices are local to one [`Presentation`].
///
/// [`Presentation`]: crate::presentations::Presentation
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub u32);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GeneratorId,
    /// `true` for `gen^-1`.
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: GeneratorId) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: GeneratorId) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// Finite sequence of letters. Kept freely reduced by every constructor except
/// [`Word::raw`], which exists so that unreduced products can be represented
/// (e.g. before folding a van Kampen diagram).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a reduced word.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push_reduced(l);
        }
        w
    }

    /// Builds a word without reducing it.
    pub fn raw(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    /// `l^k` for signed `k`.
    pub fn power(l: Letter, k: i64) -> Self {
        let l = if k < 0 { l.inv() } else { l };
        Word {
            letters: vec![l; k.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.letters.iter()
    }

    fn push_reduced(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&a), Some(&b)) if self.letters.len() > 1 => !a.cancels(b),
                _ => true,
            }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.reduce();
        for &l in other.iter() {
            out.push_reduced(l);
        }
        out
    }

    /// Concatenation with no cancellation.
    pub fn concat_raw(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Cyclic rotation by `k` letters to the left.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.letters.len());
        Word { letters }
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.letters.iter().map(|l| l.gen)
    }

    pub fn contains_gen(&self, g: GeneratorId) -> bool {
        self.letters.iter().any(|l| l.gen == g)
    }

    /// Sum of signed exponents of `g`.
    pub fn exponent_sum(&self, g: GeneratorId) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Free reduction (stack based).
    pub fn reduce(&self) -> Word {
        Word::new(self.letters.iter().copied())
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Returns `(core, conjugator)` with `core` cyclically reduced and
    /// `self = conjugator · core · conjugator^-1` in the free group.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = self.reduce();
        let n = w.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.letters[k].cancels(w.letters[n - 1 - k]) {
            k += 1;
        }
        let core = Word {
            letters: w.letters[k..n - k].to_vec(),
        };
        let conjugator = Word {
            letters: w.letters[..k].to_vec(),
        };
        (core, conjugator)
    }

    /// True if `other` equals some cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|k| self.rotate(k) == *other)
    }

    /// True if `other` is a cyclic rotation of `self` or of `self^-1`.
    pub fn is_cyclic_conjugate_up_to_inverse(&self, other: &Word) -> bool {
        self.is_rotation_of(other) || self.invert().is_rotation_of(other)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter)
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

/// Index-based rendering; use [`Presentation::format_word`] for names.
///
/// [`Presentation::format_word`]: crate::presentations::Presentation::format_word
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}{}", l.gen.0, if l.inverse { "^-1" } else { "" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const X: GeneratorId = GeneratorId(0);
    const Y: GeneratorId = GeneratorId(1);
    const Z: GeneratorId = GeneratorId(2);

    fn x() -> Letter {
        Letter::pos(X)
    }
    fn y() -> Letter {
        Letter::pos(Y)
    }
    fn z() -> Letter {
        Letter::pos(Z)
    }

    // Independent reducer: repeatedly delete the first cancelling pair.
    fn naive_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
        loop {
            let pos = v.windows(2).position(|p| p[0].cancels(p[1]));
            match pos {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let w = Word::raw(vec![x(), y(), y().inv(), x()]);
        assert_eq!(w.reduce().letters(), &[x(), x()]);
        assert!(Word::raw(vec![]).reduce().is_empty());

        // x^2 y x^-1 y^-1 x^-1 x y x^-1 y^-1 -> x^2 y x^-2 y^-1
        let long = Word::raw(vec![
            x(),
            x(),
            y(),
            x().inv(),
            y().inv(),
            x().inv(),
            x(),
            y(),
            x().inv(),
            y().inv(),
        ]);
        let expected = vec![x(), x(), y(), x().inv(), x().inv(), y().inv()];
        assert_eq!(naive_reduce(long.letters().to_vec()), expected);
        assert_eq!(long.reduce().letters(), expected.as_slice());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            Word::new([x(), y()]).invert().letters(),
            &[y().inv(), x().inv()]
        );
        assert!(Word::empty().invert().is_empty());
        assert_eq!(
            Word::new([x(), y().inv(), z()]).invert().letters(),
            &[z().inv(), y(), x().inv()]
        );
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = Word::new([x().inv(), y(), x()]).cyclic_reduce();
        assert_eq!(core.letters(), &[y()]);
        assert_eq!(conj.letters(), &[x().inv()]);

        let comm = Word::new([x(), y(), x().inv(), y().inv()]);
        let (core, conj) = comm.cyclic_reduce();
        assert_eq!(core, comm);
        assert!(conj.is_empty());

        let w = Word::new([y(), x(), y(), x().inv(), y().inv(), y().inv()]);
        let (core, conj) = w.cyclic_reduce();
        assert_eq!(core.letters(), &[x(), y(), x().inv(), y().inv()]);
        assert_eq!(conj.letters(), &[y()]);
        assert_eq!(conj.mul(&core).mul(&conj.invert()), w);
    }

    fn letter_strategy() -> impl Strategy<Value = Letter> {
        (0u32..3, any::<bool>()).prop_map(|(g, inverse)| Letter {
            gen: GeneratorId(g),
            inverse,
        })
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_matches_naive(v in prop::collection::vec(letter_strategy(), 0..40)) {
            let w = Word::raw(v.clone());
            let r = w.reduce();
            prop_assert!(r.is_reduced());
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.reduce(), r.clone());
            prop_assert_eq!(r.letters().to_vec(), naive_reduce(v));
        }

        #[test]
        fn inverse_cancels(v in prop::collection::vec(letter_strategy(), 0..40)) {
            let w = Word::raw(v);
            prop_assert!(w.mul(&w.invert()).is_empty());
            prop_assert_eq!(w.invert().invert(), w);
        }

        #[test]
        fn cyclic_core_valid(v in prop::collection::vec(letter_strategy(), 0..40)) {
            let w = Word::raw(v);
            let (core, conj) = w.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert_eq!(conj.mul(&core).mul(&conj.invert()), w.reduce());
        }
    }
}
