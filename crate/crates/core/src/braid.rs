//! Words in the singular braid monoid.
//!
//! Text grammar (1-based generator indices):
//!
//! ```text
//! word := item*            items separated by whitespace
//! item := gen pow?
//! gen  := ('s' | 't') digits
//! pow  := '^' '-'? digits
//! ```
//!
//! `s2^-3` is three copies of the inverse of the second classical generator.
//! Singular generators (`t`) only admit positive powers. When no strand count
//! is supplied it is inferred as `1 + max index` (1 for the empty word).
//! Words are kept exactly as written; no free reduction is performed.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Sigma(i) | Letter::SigmaInv(i) | Letter::Tau(i) => i,
        }
    }

    /// Contribution to the exponent; singular letters count `+1`.
    pub fn sign(self) -> i64 {
        match self {
            Letter::SigmaInv(_) => -1,
            _ => 1,
        }
    }

    fn prefix(self) -> char {
        match self {
            Letter::Tau(_) => 't',
            _ => 's',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `g·ω → ω·g`
    FrontToBack,
    /// `ω·g → g·ω`
    BackToFront,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSpec {
    /// Conjugation by a classical generator. When the word does not already
    /// begin (resp. end) with it, the generator is brought in through
    /// `σ_i σ_i^{-1} = 1`, i.e. the word is conjugated.
    RealConjugation { index: usize, direction: Direction },
    /// Moves a singular letter from one end of the word to the other.
    SingularCommuting { index: usize, direction: Direction },
    /// Appends `σ_n^{±1}` on a new strand.
    Stabilization { positive: bool },
    Destabilization,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularBraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl SingularBraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("strand count must be positive".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.index() == 0 || l.index() >= n) {
            return Err(Error::IndexOutOfRange { index: l.index(), n });
        }
        Ok(SingularBraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        SingularBraidWord { n: n.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.n
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

    /// Signed letter count, singular letters counting `+1`.
    pub fn exponent(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Same word viewed on `n` strands (`n` may only grow past the used indices).
    pub fn with_strands(&self, n: usize) -> Result<Self> {
        Self::new(n, self.letters.clone())
    }

    /// Inserts `letter` before position `pos` (`pos == len` appends).
    pub fn insert(&self, pos: usize, letter: Letter) -> Result<Self> {
        if pos > self.letters.len() {
            return Err(Error::Invalid(format!("site {pos} past end of word")));
        }
        let mut letters = self.letters.clone();
        letters.insert(pos, letter);
        Self::new(self.n, letters)
    }

    pub fn apply_move(&self, mv: MoveSpec) -> Result<Self> {
        let n = self.n;
        let check = |i: usize| {
            if i == 0 || i >= n {
                Err(Error::IndexOutOfRange { index: i, n })
            } else {
                Ok(())
            }
        };
        let mut letters = self.letters.clone();
        match mv {
            MoveSpec::RealConjugation { index, direction } => {
                check(index)?;
                match direction {
                    Direction::FrontToBack => {
                        if letters.first() == Some(&Letter::Sigma(index)) {
                            letters.remove(0);
                        } else {
                            letters.insert(0, Letter::SigmaInv(index));
                        }
                        letters.push(Letter::Sigma(index));
                    }
                    Direction::BackToFront => {
                        if letters.last() == Some(&Letter::Sigma(index)) {
                            letters.pop();
                        } else {
                            letters.push(Letter::SigmaInv(index));
                        }
                        letters.insert(0, Letter::Sigma(index));
                    }
                }
            }
            MoveSpec::SingularCommuting { index, direction } => {
                check(index)?;
                let tau = Letter::Tau(index);
                match direction {
                    Direction::FrontToBack => {
                        if letters.first() != Some(&tau) {
                            return Err(Error::MoveNotApplicable(format!("word does not start with t{index}")));
                        }
                        letters.remove(0);
                        letters.push(tau);
                    }
                    Direction::BackToFront => {
                        if letters.last() != Some(&tau) {
                            return Err(Error::MoveNotApplicable(format!("word does not end with t{index}")));
                        }
                        letters.pop();
                        letters.insert(0, tau);
                    }
                }
            }
            MoveSpec::Stabilization { positive } => {
                letters.push(if positive { Letter::Sigma(n) } else { Letter::SigmaInv(n) });
                return Ok(SingularBraidWord { n: n + 1, letters });
            }
            MoveSpec::Destabilization => {
                if !self.is_destabilizable() {
                    return Err(Error::NotDestabilizable);
                }
                letters.pop();
                return Ok(SingularBraidWord { n: n - 1, letters });
            }
        }
        Ok(SingularBraidWord { n, letters })
    }

    /// The word ends in `σ_{n-1}^{±1}` and no other letter touches the last strand.
    pub fn is_destabilizable(&self) -> bool {
        let top = self.n.saturating_sub(1);
        match self.letters.split_last() {
            Some((last, rest)) => {
                top >= 1
                    && matches!(last, Letter::Sigma(i) | Letter::SigmaInv(i) if *i == top)
                    && rest.iter().all(|l| l.index() < top)
            }
            None => false,
        }
    }
}

pub fn parse_braid(text: &str, n: Option<usize>) -> Result<SingularBraidWord> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut pos = 0;
    let read_digits = |pos: &mut usize| -> Option<usize> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            None
        } else {
            text[start..*pos].parse().ok()
        }
    };
    let mut max_index = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let item_start = pos;
        let singular = match bytes[pos] {
            b's' => false,
            b't' => true,
            _ => return Err(Error::Parse { pos, msg: format!("expected 's' or 't', found {:?}", text[pos..].chars().next().unwrap()) }),
        };
        pos += 1;
        let index = read_digits(&mut pos).ok_or(Error::Parse { pos, msg: "expected generator index".into() })?;
        if index == 0 {
            return Err(Error::Parse { pos: item_start, msg: "generator indices start at 1".into() });
        }
        let mut power: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let negative = pos < bytes.len() && bytes[pos] == b'-';
            if negative {
                pos += 1;
            }
            let p = read_digits(&mut pos).ok_or(Error::Parse { pos, msg: "expected exponent".into() })?;
            power = if negative { -(p as i64) } else { p as i64 };
        }
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(Error::Parse { pos, msg: "items must be separated by whitespace".into() });
        }
        if let Some(n) = n {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        let letter = match (singular, power > 0) {
            (true, false) => return Err(Error::NoInverse { pos: item_start }),
            (true, true) => Letter::Tau(index),
            (false, true) => Letter::Sigma(index),
            (false, false) => Letter::SigmaInv(index),
        };
        max_index = max_index.max(index);
        letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
    }
    let n = n.unwrap_or(max_index + 1);
    SingularBraidWord::new(n, letters)
}

impl FromStr for SingularBraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_braid(s, None)
    }
}

impl fmt::Display for SingularBraidWord {
    /// Renders in the input grammar, collapsing runs of equal letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}{}", l.prefix(), l.index())?;
            let p = run as i64 * l.sign();
            if p != 1 {
                write!(f, "^{p}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Uniform letters from `{σ_i^{±1}}`, plus `{τ_i}` when `allow_tau`.
pub fn random_word(n: usize, len: usize, allow_tau: bool, seed: u64) -> SingularBraidWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with(&mut rng, n, len, allow_tau)
}

pub fn random_word_with<R: Rng>(rng: &mut R, n: usize, len: usize, allow_tau: bool) -> SingularBraidWord {
    assert!(n >= 2, "random words need at least two strands");
    let kinds = if allow_tau { 3 } else { 2 };
    let letters = (0..len)
        .map(|_| {
            let choice = rng.gen_range(0..kinds * (n - 1));
            let index = choice % (n - 1) + 1;
            match choice / (n - 1) {
                0 => Letter::Sigma(index),
                1 => Letter::SigmaInv(index),
                _ => Letter::Tau(index),
            }
        })
        .collect();
    SingularBraidWord { n, letters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_trefoil_and_hopf_like() {
        let w = parse_braid("s1 s1 s1", None).unwrap();
        assert_eq!(w.strands(), 2);
        assert_eq!(w.letters(), &[Letter::Sigma(1); 3]);
        assert_eq!(w.exponent(), 3);
        let h = parse_braid("t1^2", None).unwrap();
        assert_eq!(h.letters(), &[Letter::Tau(1), Letter::Tau(1)]);
        assert_eq!(h.strands(), 2);
    }

    #[test]
    fn exponent_counts_tau_positive() {
        assert_eq!(parse_braid("t1 s1^2", None).unwrap().exponent(), 3);
        assert_eq!(parse_braid("", None).unwrap().exponent(), 0);
        assert_eq!(parse_braid("s2^-3 t1", None).unwrap().exponent(), -2);
    }

    #[test]
    fn empty_word_has_one_strand() {
        let w = parse_braid("", None).unwrap();
        assert_eq!(w.strands(), 1);
        assert!(w.is_empty());
        assert_eq!(parse_braid("  ", Some(3)).unwrap().strands(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_braid("t1^-1", None), Err(Error::NoInverse { pos: 0 })));
        assert!(matches!(parse_braid("s1 t2^0", None), Err(Error::NoInverse { pos: 3 })));
        assert!(matches!(parse_braid("s3", Some(3)), Err(Error::IndexOutOfRange { index: 3, n: 3 })));
        assert!(matches!(parse_braid("s1 x2", None), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_braid("s", None), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_braid("s1^", None), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_braid("s1s2", None), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_braid("s0", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn zero_power_on_classical_is_empty() {
        let w = parse_braid("s2^0", None).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.strands(), 3);
    }

    #[test]
    fn render_collapses_runs() {
        let w = parse_braid("s1 s1 s2^-1 s2^-1 t1 t1 t1 s1", None).unwrap();
        assert_eq!(w.to_string(), "s1^2 s2^-2 t1^3 s1");
    }

    #[test]
    fn stabilization_appends() {
        let w = parse_braid("s1^3", None).unwrap();
        let s = w.apply_move(MoveSpec::Stabilization { positive: true }).unwrap();
        assert_eq!(s.strands(), 3);
        assert_eq!(s.to_string(), "s1^3 s2");
        assert_eq!(s.exponent(), 4);
        let back = s.apply_move(MoveSpec::Destabilization).unwrap();
        assert_eq!(back, w);
        let neg = w.apply_move(MoveSpec::Stabilization { positive: false }).unwrap();
        assert_eq!(neg.exponent(), 2);
    }

    #[test]
    fn destabilization_precondition() {
        let w = parse_braid("s2 s1 s2", None).unwrap();
        assert_eq!(w.apply_move(MoveSpec::Destabilization), Err(Error::NotDestabilizable));
        let w = parse_braid("s1 t2", None).unwrap();
        assert_eq!(w.apply_move(MoveSpec::Destabilization), Err(Error::NotDestabilizable));
        assert_eq!(SingularBraidWord::identity(1).apply_move(MoveSpec::Destabilization), Err(Error::NotDestabilizable));
    }

    #[test]
    fn conjugation_rotates() {
        let w = parse_braid("s1 s2 t1", None).unwrap();
        let m = w
            .apply_move(MoveSpec::RealConjugation { index: 1, direction: Direction::FrontToBack })
            .unwrap();
        assert_eq!(m.to_string(), "s2 t1 s1");
        let back = m
            .apply_move(MoveSpec::RealConjugation { index: 1, direction: Direction::BackToFront })
            .unwrap();
        assert_eq!(back, w);
        let c = w
            .apply_move(MoveSpec::RealConjugation { index: 2, direction: Direction::FrontToBack })
            .unwrap();
        assert_eq!(c.to_string(), "s2^-1 s1 s2 t1 s2");
    }

    #[test]
    fn singular_commuting_rotates() {
        let w = parse_braid("t1 s1 s2", None).unwrap();
        let m = w
            .apply_move(MoveSpec::SingularCommuting { index: 1, direction: Direction::FrontToBack })
            .unwrap();
        assert_eq!(m.to_string(), "s1 s2 t1");
        assert!(matches!(
            m.apply_move(MoveSpec::SingularCommuting { index: 1, direction: Direction::FrontToBack }),
            Err(Error::MoveNotApplicable(_))
        ));
    }

    #[test]
    fn random_words_are_deterministic() {
        assert!(random_word(2, 0, true, 7).is_empty());
        assert_eq!(random_word(3, 5, true, 1), random_word(3, 5, true, 1));
        let w = random_word(2, 4, false, 2);
        assert_eq!(w.len(), 4);
        assert!(w.letters().iter().all(|l| !matches!(l, Letter::Tau(_))));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(n in 2usize..6, len in 0usize..20, tau: bool, seed: u64) {
            let w = random_word(n, len, tau, seed);
            let back = parse_braid(&w.to_string(), Some(n)).unwrap();
            prop_assert_eq!(back, w);
        }

        #[test]
        fn moves_shift_exponent_as_expected(n in 2usize..5, len in 0usize..10, seed: u64, i in 1usize..4, front: bool) {
            let w = random_word(n, len, true, seed);
            let i = 1 + (i - 1) % (n - 1);
            let direction = if front { Direction::FrontToBack } else { Direction::BackToFront };
            let c = w.apply_move(MoveSpec::RealConjugation { index: i, direction }).unwrap();
            prop_assert_eq!(c.exponent(), w.exponent());
            let s = w.apply_move(MoveSpec::Stabilization { positive: true }).unwrap();
            prop_assert_eq!(s.exponent(), w.exponent() + 1);
            let s = w.apply_move(MoveSpec::Stabilization { positive: false }).unwrap();
            prop_assert_eq!(s.exponent(), w.exponent() - 1);
        }
    }
}
