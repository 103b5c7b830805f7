//! Binary block codes as sets of packed words, with coordinate permutations
//! that preserve them.
//!
//! Coordinate `i` of a word is bit `i` of a `u64`, so block lengths up to 64
//! are representable and Hamming distance is a popcount.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Word = u64;

/// Hamming distance between two packed words.
#[inline]
pub fn distance(a: Word, b: Word) -> u32 {
    (a ^ b).count_ones()
}

/// Renders `word` as `n` characters, coordinate 0 first.
pub fn word_to_string(word: Word, n: usize) -> String {
    (0..n).map(|i| if word >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a 0/1 string, coordinate 0 first.
pub fn word_from_str(s: &str) -> Option<Word> {
    if s.is_empty() || s.len() > 64 {
        return None;
    }
    s.chars().enumerate().try_fold(0, |acc, (i, c)| match c {
        '0' => Some(acc),
        '1' => Some(acc | 1 << i),
        _ => None,
    })
}

/// A permutation of coordinates `0..n`, stored as the image of each index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Permutation(format!("{images:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Self(images))
    }

    /// The shift `i -> i + 1 mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Moves the bit at coordinate `i` to coordinate `pi(i)`.
    pub fn apply(&self, word: Word) -> Word {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &j)| acc | ((word >> i & 1) << j))
    }
}

/// A set of binary codewords of common length `n`, optionally with a list of
/// coordinate permutations that map the set onto itself.
///
/// Codes built from a generator matrix are linear. [`BlockCode::from_codewords`]
/// accepts an arbitrary set, which is how negative controls for the
/// linearity-dependent decoder properties are built.
#[derive(Debug, Clone)]
pub struct BlockCode {
    n: usize,
    generator: Vec<Word>,
    codewords: Vec<Word>,
    group_generators: Vec<Permutation>,
}

/// More generator rows than this would make the codeword list impractical.
const MAX_DIMENSION: usize = 24;

impl BlockCode {
    /// The span of `generator` (rows as packed words). Every permutation in
    /// `group_generators` must preserve the codeword set.
    pub fn linear(n: usize, generator: Vec<Word>, group_generators: Vec<Permutation>) -> Result<Self> {
        check_length(n)?;
        if generator.len() > MAX_DIMENSION {
            return Err(Error::Dimension {
                expected: MAX_DIMENSION,
                got: generator.len(),
            });
        }
        check_fits(n, &generator)?;
        let mut span = vec![0];
        for &row in &generator {
            if !span.contains(&row) {
                let shifted: Vec<Word> = span.iter().map(|&c| c ^ row).collect();
                span.extend(shifted);
            }
        }
        span.sort_unstable();
        Self::finish(n, generator, span, group_generators)
    }

    /// An arbitrary codeword set (duplicates removed), not necessarily linear.
    pub fn from_codewords(n: usize, words: Vec<Word>, group_generators: Vec<Permutation>) -> Result<Self> {
        check_length(n)?;
        check_fits(n, &words)?;
        if words.is_empty() {
            return Err(Error::ListSize { list: 1, codewords: 0 });
        }
        let mut words = words;
        words.sort_unstable();
        words.dedup();
        Self::finish(n, Vec::new(), words, group_generators)
    }

    fn finish(n: usize, generator: Vec<Word>, codewords: Vec<Word>, group_generators: Vec<Permutation>) -> Result<Self> {
        let code = Self {
            n,
            generator,
            codewords,
            group_generators: Vec::new(),
        };
        for pi in &group_generators {
            if pi.len() != n {
                return Err(Error::Permutation(format!("length {} for block length {n}", pi.len())));
            }
            if let Some(&c) = code.codewords.iter().find(|&&c| !code.contains(pi.apply(c))) {
                return Err(Error::Permutation(format!(
                    "{:?} maps codeword {} outside the code",
                    pi.images(),
                    word_to_string(c, n)
                )));
            }
        }
        Ok(Self {
            group_generators,
            ..code
        })
    }

    /// `[n, 1]` repetition code; invariant under cyclic shifts.
    pub fn repetition(n: usize) -> Result<Self> {
        check_length(n)?;
        Self::linear(n, vec![all_ones(n)], vec![Permutation::cyclic(n)])
    }

    /// The cyclic `[7, 4]` Hamming code generated by `1 + x + x^3`.
    pub fn hamming74() -> Self {
        let g = word_from_str("1101000").expect("literal");
        let rows = (0..4).map(|s| g << s).collect();
        Self::linear(7, rows, vec![Permutation::cyclic(7)]).expect("cyclic code is shift invariant")
    }

    /// First-order Reed–Muller code `RM(1, m)` of length `2^m`, with
    /// coordinates indexed by `F_2^m`. Group generators are the translations
    /// by unit vectors plus, for `m >= 2`, a rotation of the bits of the index
    /// and a transvection `v_0 += v_1`, all affine maps of `F_2^m`.
    pub fn reed_muller1(m: usize) -> Result<Self> {
        if !(1..=6).contains(&m) {
            return Err(Error::BlockLength(1usize.checked_shl(m as u32).unwrap_or(usize::MAX)));
        }
        let n = 1 << m;
        let mut rows = vec![all_ones(n)];
        for i in 0..m {
            rows.push((0..n).filter(|v| v >> i & 1 == 1).fold(0, |acc, v| acc | 1 << v));
        }
        let affine = |map: &dyn Fn(usize) -> usize| Permutation((0..n).map(map).collect());
        let mut perms: Vec<Permutation> = (0..m).map(|i| affine(&|v| v ^ (1 << i))).collect();
        if m >= 2 {
            perms.push(affine(&|v| ((v << 1) | (v >> (m - 1))) & (n - 1)));
            perms.push(affine(&|v| v ^ (v >> 1 & 1)));
        }
        Self::linear(n, rows, perms)
    }

    /// Parses the plain-text fixture format:
    ///
    /// ```text
    /// # comment
    /// n k
    /// <k generator rows as 0/1 strings>
    /// perm <n space-separated 1-based images>    (any number)
    /// word <0/1 string>                          (only when k = 0)
    /// ```
    ///
    /// With `k = 0` the codeword set is the list of `word` lines, which need
    /// not be linear.
    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, message: String| Error::Fixture { line, message };

        let (hline, header) = lines.next().ok_or_else(|| bad(1, "missing `n k` header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(hline, format!("header: {e}")))?;
        let [n, k] = dims[..] else {
            return Err(bad(hline, "header must be `n k`".into()));
        };

        let mut rows = Vec::with_capacity(k);
        let mut words = Vec::new();
        let mut perms = Vec::new();
        for (lineno, line) in lines {
            if let Some(rest) = line.strip_prefix("perm") {
                let images: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
                    .collect::<Option<_>>()
                    .ok_or_else(|| bad(lineno, "perm images must be 1-based integers".into()))?;
                if images.len() != n {
                    return Err(bad(lineno, format!("perm has {} images, expected {n}", images.len())));
                }
                perms.push(Permutation::new(images).map_err(|e| bad(lineno, e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("word") {
                if k != 0 {
                    return Err(bad(lineno, "`word` lines require k = 0".into()));
                }
                words.push(parse_row(rest.trim(), n).ok_or_else(|| bad(lineno, format!("expected {n} bits")))?);
            } else if rows.len() < k && perms.is_empty() {
                rows.push(parse_row(line, n).ok_or_else(|| bad(lineno, format!("expected {n} bits")))?);
            } else {
                return Err(bad(lineno, format!("unexpected line `{line}`")));
            }
        }
        if rows.len() != k {
            return Err(bad(hline, format!("expected {k} generator rows, found {}", rows.len())));
        }
        if k == 0 {
            Self::from_codewords(n, words, perms)
        } else {
            Self::linear(n, rows, perms)
        }
    }

    /// Serializes to the fixture format accepted by [`Self::parse_fixture`].
    pub fn to_fixture(&self) -> String {
        let mut out = String::new();
        if self.generator.is_empty() {
            let _ = writeln!(out, "{} 0", self.n);
        } else {
            let _ = writeln!(out, "{} {}", self.n, self.generator.len());
            for &row in &self.generator {
                let _ = writeln!(out, "{}", word_to_string(row, self.n));
            }
        }
        for pi in &self.group_generators {
            let images: Vec<String> = pi.images().iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(out, "perm {}", images.join(" "));
        }
        if self.generator.is_empty() {
            for &w in &self.codewords {
                let _ = writeln!(out, "word {}", word_to_string(w, self.n));
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Codewords in increasing numeric order.
    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn generator(&self) -> &[Word] {
        &self.generator
    }

    pub fn group_generators(&self) -> &[Permutation] {
        &self.group_generators
    }

    pub fn contains(&self, word: Word) -> bool {
        self.codewords.binary_search(&word).is_ok()
    }

    /// Closed under XOR (and hence containing zero).
    pub fn is_linear(&self) -> bool {
        let set: HashSet<Word> = self.codewords.iter().copied().collect();
        set.contains(&0) && self.codewords.iter().all(|&a| self.codewords.iter().all(|&b| set.contains(&(a ^ b))))
    }

    /// Whether the group generated by the stored permutations moves
    /// coordinate 0 to every coordinate.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for pi in &self.group_generators {
                let j = pi.images()[i];
                if !std::mem::replace(&mut seen[j], true) {
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn all_ones(n: usize) -> Word {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

fn check_length(n: usize) -> Result<()> {
    if (1..=64).contains(&n) {
        Ok(())
    } else {
        Err(Error::BlockLength(n))
    }
}

fn check_fits(n: usize, words: &[Word]) -> Result<()> {
    match words.iter().find(|&&w| w & !all_ones(n) != 0) {
        Some(&w) => Err(Error::Dimension {
            expected: n,
            got: 64 - w.leading_zeros() as usize,
        }),
        None => Ok(()),
    }
}

fn parse_row(s: &str, n: usize) -> Option<Word> {
    (s.len() == n).then(|| word_from_str(s)).flatten()
}
