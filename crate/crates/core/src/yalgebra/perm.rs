use std::fmt;

/// Largest strand count the packed monomial representation supports.
pub const MAX_STRANDS: usize = 8;

/// A permutation of `{1..n}` stored in one-line notation (0-based internally).
///
/// Composition is right-to-left: `(w∘v)(j) = w(v(j))`. Right multiplication
/// by the simple transposition `s_i` swaps the entries at positions `i, i+1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    img: [u8; MAX_STRANDS],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_STRANDS, "at most {MAX_STRANDS} strands supported");
        let mut img = [0u8; MAX_STRANDS];
        for (j, x) in img.iter_mut().enumerate() {
            *x = j as u8;
        }
        Permutation { n: n as u8, img }
    }

    /// From 1-based one-line images `w(1), …, w(n)`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > MAX_STRANDS {
            return None;
        }
        let mut seen = [false; MAX_STRANDS];
        let mut p = Permutation::identity(n);
        for (j, &x) in images.iter().enumerate() {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            p.img[j] = (x - 1) as u8;
        }
        Some(p)
    }

    /// The simple transposition `s_i` (1-based `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        Permutation::identity(n).mul_simple(i)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn at(&self, j: usize) -> usize {
        self.img[j] as usize
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.img[..self.n()].iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n()).all(|j| self.at(j) == j)
    }

    /// `self ∘ s_i` for 1-based `i`.
    #[inline]
    pub fn mul_simple(mut self, i: usize) -> Self {
        self.img.swap(i - 1, i);
        self
    }

    /// `ℓ(w·s_i) > ℓ(w)`, i.e. `w(i) < w(i+1)`.
    #[inline]
    pub fn ascends_at(&self, i: usize) -> bool {
        self.img[i - 1] < self.img[i]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n, other.n);
        let mut out = *self;
        for j in 0..self.n() {
            out.img[j] = self.img[other.at(j)];
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for j in 0..self.n() {
            out.img[self.at(j)] = j as u8;
        }
        out
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.img[a] > self.img[b])
            .count()
    }

    /// Splits `w = w′·(s_{n-1} s_{n-2} ⋯ s_m)` with `m = w^{-1}(n)` and `w′`
    /// fixing `n`. Returns `(w′ on n-1 strands, m)`; `m == n` means `w` fixes `n`.
    pub fn staircase_split(&self) -> (Permutation, usize) {
        let n = self.n();
        let m = (0..n).find(|&j| self.at(j) == n - 1).unwrap() + 1;
        // w′ = w·(s_m ⋯ s_{n-1}): move the entry at position m to the end.
        let mut prime = *self;
        for i in m..n {
            prime = prime.mul_simple(i);
        }
        debug_assert_eq!(prime.at(n - 1), n - 1);
        prime.n -= 1;
        (prime, m)
    }

    /// The canonical reduced word (1-based generator indices), built
    /// recursively from [`Permutation::staircase_split`]. The top generator
    /// `s_{n-1}` occurs at most once.
    pub fn staircase_word(&self) -> Vec<usize> {
        let mut blocks = Vec::new();
        let mut cur = *self;
        while cur.n() > 1 {
            let n = cur.n();
            let (prime, m) = cur.staircase_split();
            blocks.push((m..n).rev().collect::<Vec<_>>());
            cur = prime;
        }
        blocks.into_iter().rev().flatten().collect()
    }

    /// Same permutation on `n` strands (fixing the new points).
    pub fn extend(&self, n: usize) -> Permutation {
        assert!(n >= self.n() && n <= MAX_STRANDS);
        let mut out = *self;
        for j in self.n()..n {
            out.img[j] = j as u8;
        }
        out.n = n as u8;
        out
    }

    /// Drops fixed trailing points down to `n` strands.
    pub fn restrict(&self, n: usize) -> Option<Permutation> {
        if (n..self.n()).any(|j| self.at(j) != j) {
            return None;
        }
        let mut out = *self;
        for j in n..MAX_STRANDS {
            out.img[j] = j as u8;
        }
        out.n = n as u8;
        Some(out)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(n)];
        // close under right multiplication by simple transpositions
        let mut i = 0;
        while i < out.len() {
            for g in 1..n {
                let p = out[i].mul_simple(g);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            i += 1;
        }
        out
    }

    fn from_word(n: usize, word: &[usize]) -> Permutation {
        word.iter().fold(Permutation::identity(n), |p, &i| p.mul_simple(i))
    }

    #[test]
    fn staircase_words_are_reduced_and_canonical() {
        for n in 1..=5 {
            let perms = all_perms(n);
            assert_eq!(perms.len(), (1..=n).product::<usize>());
            for w in perms {
                let word = w.staircase_word();
                assert_eq!(from_word(n, &word), w, "word does not spell w={w}");
                assert_eq!(word.len(), w.length(), "not reduced for w={w}");
                if n >= 2 {
                    assert!(word.iter().filter(|&&i| i == n - 1).count() <= 1);
                }
            }
        }
    }

    #[test]
    fn descent_matches_length() {
        for w in all_perms(4) {
            for i in 1..4 {
                let longer = w.mul_simple(i).length() > w.length();
                assert_eq!(longer, w.ascends_at(i));
            }
        }
    }

    #[test]
    fn composition_convention() {
        let w = Permutation::from_images(&[2, 3, 1]).unwrap();
        let v = Permutation::from_images(&[1, 3, 2]).unwrap();
        // (w∘v)(2) = w(3) = 1
        assert_eq!(w.compose(&v).images(), vec![2, 1, 3]);
        assert_eq!(w.mul_simple(2), w.compose(&Permutation::simple(3, 2)));
        assert!(w.compose(&w.inverse()).is_identity());
    }

    #[test]
    fn split_example() {
        // w = [3 1 2]: w^{-1}(3) = 1, so w = w′·s_2 s_1 with w′ = id
        let w = Permutation::from_images(&[3, 1, 2]).unwrap();
        let (prime, m) = w.staircase_split();
        assert_eq!(m, 1);
        assert!(prime.is_identity());
        assert_eq!(w.staircase_word(), vec![2, 1]);
    }

    #[test]
    fn invalid_images() {
        assert!(Permutation::from_images(&[1, 1]).is_none());
        assert!(Permutation::from_images(&[0, 1]).is_none());
        assert!(Permutation::from_images(&[1, 3]).is_none());
    }
}
