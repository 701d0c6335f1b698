use super::{Construction, Memo};
use crate::cantor::Word;
use crate::error::{Error, Result};

impl Memo {
    fn assign(&mut self, n: usize, word: Word) {
        if self.base.len() <= n {
            self.base.resize(n + 1, None);
        }
        debug_assert!(self.base[n].is_none() && !self.index_of.contains_key(&word));
        self.base[n] = Some(word.clone());
        self.index_of.insert(word.clone(), n);
        self.assigned_at.insert(word, self.steps);
    }

    fn is_index_free(&self, n: usize) -> bool {
        self.base.get(n).is_none_or(Option::is_none)
    }

    /// One back-and-forth step. The forth half gives the `t`-th nonempty
    /// word an index whose `b_n` it contains; the back half gives index `t`
    /// the shortest unassigned prefix of `b_t`.
    fn step(&mut self) {
        let t = self.steps;
        let word = Word::from_length_lex(t + 1);
        if !self.index_of.contains_key(&word) {
            let n = (0..)
                .find(|&n| self.is_index_free(n) && self.pair(n).b.in_cylinder(&word))
                .expect("every cylinder holds infinitely many b_n");
            self.assign(n, word);
        }
        if self.is_index_free(t) {
            let b = self.pair(t).b.clone();
            let prefix = (1..)
                .map(|len| b.head(len))
                .find(|w| !self.index_of.contains_key(w))
                .expect("b_t has infinitely many prefixes");
            self.assign(t, prefix);
        }
        self.steps += 1;
    }

    pub(super) fn base_word(&mut self, n: usize) -> Word {
        loop {
            if let Some(Some(w)) = self.base.get(n) {
                return w.clone();
            }
            self.step();
        }
    }

    pub(super) fn base_index(&mut self, word: &Word) -> Result<usize> {
        if word.is_empty() {
            return Err(Error::EmptyBaseWord);
        }
        loop {
            if let Some(&n) = self.index_of.get(word) {
                return Ok(n);
            }
            self.step();
        }
    }
}

impl Construction {
    /// The cylinder word of `B_n`.
    pub fn base_word(&self, n: usize) -> Word {
        self.memo().base_word(n)
    }

    /// The index `n` with `B_n` equal to the cylinder `word`.
    pub fn base_index(&self, word: &Word) -> Result<usize> {
        self.memo().base_index(word)
    }

    /// Number of enumeration steps after which every word of length
    /// `1..=depth` has an index.
    pub fn enumeration_step_bound(&self, depth: usize) -> usize {
        let mut memo = self.memo();
        let mut bound = 0;
        for len in 1..=depth {
            for w in Word::all_of_length(len) {
                memo.base_index(&w).expect("nonempty word");
                bound = bound.max(memo.assigned_at[&w] + 1);
            }
        }
        bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_contains_b_n_and_inverts() {
        let con = Construction::new();
        for n in 0..=200 {
            let w = con.base_word(n);
            assert!(!w.is_empty());
            assert!(con.dense_pair(n).b.in_cylinder(&w), "b_{n} ∉ B_{n}");
            assert_eq!(con.base_index(&w), Ok(n));
        }
    }

    #[test]
    fn empty_word_is_not_in_the_base() {
        let con = Construction::new();
        assert_eq!(con.base_index(&Word::empty()), Err(Error::EmptyBaseWord));
    }

    #[test]
    fn shallow_words_are_covered_quickly() {
        let con = Construction::new();
        for depth in 1..=4 {
            let bound = con.enumeration_step_bound(depth);
            // Word number t is assigned no later than step t.
            assert!(bound <= (1 << (depth + 1)) - 2, "depth {depth}: {bound}");
        }
        // Order of queries does not change the reported bound.
        let fresh = Construction::new();
        fresh.base_word(300);
        assert_eq!(fresh.enumeration_step_bound(4), con.enumeration_step_bound(4));
    }
}
