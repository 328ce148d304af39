//! Monodromy words in the generators `L`, `R` and their matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One generator of the monodromy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }
}

/// Integer 2x2 matrix acting on column vectors `(q, p)`.
///
/// Layout is row-major: `[[a, b], [c, d]]` sends `(q, p)` to `(aq + bp, cq + dp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    /// Generator matrices: `L = [[1,1],[0,1]]`, `R = [[1,0],[1,1]]`.
    pub fn generator(letter: Letter) -> Mat2 {
        match letter {
            Letter::L => Mat2 { a: 1, b: 1, c: 0, d: 1 },
            Letter::R => Mat2 { a: 1, b: 0, c: 1, d: 1 },
        }
    }

    pub fn mul(self, rhs: Mat2) -> Result<Mat2> {
        let m = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            x.checked_mul(y)
                .zip(z.checked_mul(w))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(Error::Overflow)
        };
        Ok(Mat2 {
            a: m(self.a, rhs.a, self.b, rhs.c)?,
            b: m(self.a, rhs.b, self.b, rhs.d)?,
            c: m(self.c, rhs.a, self.d, rhs.c)?,
            d: m(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    pub fn trace(self) -> i64 {
        self.a + self.d
    }

    pub fn det(self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// First column as a vector `(q, p)`.
    pub fn col1(self) -> (i64, i64) {
        (self.a, self.c)
    }

    /// Second column as a vector `(q, p)`.
    pub fn col2(self) -> (i64, i64) {
        (self.b, self.d)
    }

    pub fn apply(self, v: (i64, i64)) -> (i64, i64) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }
}

/// A slope `p/q` on the punctured torus, stored as the column vector `(q, p)`.
///
/// Normalised so `q > 0`, or `(q, p) = (0, 1)` for the infinite slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub q: i64,
    pub p: i64,
}

impl Slope {
    pub fn new(q: i64, p: i64) -> Result<Slope> {
        if q == 0 && p == 0 {
            return Err(Error::DegenerateValue("slope (0, 0)".into()));
        }
        let g = gcd(q.unsigned_abs(), p.unsigned_abs()) as i64;
        let (mut q, mut p) = (q / g, p / g);
        if q < 0 || (q == 0 && p < 0) {
            q = -q;
            p = -p;
        }
        Ok(Slope { q, p })
    }

    /// Farey adjacency: `|ps - qr| = 1` for slopes `p/q`, `r/s`.
    pub fn farey_adjacent(self, other: Slope) -> bool {
        (self.p * other.q - self.q * other.p).abs() == 1
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "1/0")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A hyperbolic monodromy word, stored in its lexicographically least cyclic
/// rotation so equal bundles compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonodromyWord {
    letters: Vec<Letter>,
}

impl MonodromyWord {
    /// Parse a word; case-insensitive, rejecting empty and single-generator words.
    pub fn parse(text: &str) -> Result<MonodromyWord> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            match ch.to_ascii_uppercase() {
                'L' => letters.push(Letter::L),
                'R' => letters.push(Letter::R),
                other => return Err(Error::InvalidCharacter(other)),
            }
        }
        MonodromyWord::from_letters(letters)
    }

    pub fn from_letters(letters: Vec<Letter>) -> Result<MonodromyWord> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if letters.iter().all(|&l| l == letters[0]) {
            return Err(Error::NotHyperbolic);
        }
        Ok(MonodromyWord { letters: canonical_rotation(&letters) })
    }

    pub fn period(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i % self.letters.len()]
    }

    /// Product of the generator matrices in word order.
    pub fn monodromy_matrix(&self) -> Result<Mat2> {
        self.partial_product(self.letters.len())
    }

    /// Product of the first `k` generator matrices (`k = 0` gives the identity).
    pub fn partial_product(&self, k: usize) -> Result<Mat2> {
        let mut m = Mat2::IDENTITY;
        for i in 0..k {
            m = m.mul(Mat2::generator(self.letter(i)))?;
        }
        Ok(m)
    }

    /// Run lengths of the cyclic word in order.
    ///
    /// The canonical rotation is lexicographically least, so it starts with an
    /// `L` and ends with an `R`: position 0 begins a run and plain run-length
    /// encoding gives the cyclic fan structure.
    pub fn fan_lengths(&self) -> Vec<usize> {
        let mut lengths = Vec::new();
        let mut i = 0usize;
        let n = self.letters.len();
        while i < n {
            let letter = self.letters[i];
            let mut len = 0usize;
            while i < n && self.letters[i] == letter {
                i += 1;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

fn canonical_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let mut best: Option<Vec<Letter>> = None;
    for s in 0..n {
        let rot: Vec<Letter> = (0..n).map(|i| letters[(s + i) % n]).collect();
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_canonicalise() {
        let w = MonodromyWord::parse("LR").unwrap();
        assert_eq!(w.period(), 2);
        assert_eq!(w.to_string(), "LR");

        // Case-insensitive, rotated to the least representative.
        let w = MonodromyWord::parse("rLl").unwrap();
        assert_eq!(w.to_string(), "LLR");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(MonodromyWord::parse(""), Err(Error::EmptyWord));
        assert_eq!(MonodromyWord::parse("LLLL"), Err(Error::NotHyperbolic));
        assert_eq!(MonodromyWord::parse("LXR"), Err(Error::InvalidCharacter('X')));
    }

    #[test]
    fn monodromy_traces() {
        // Direct 2x2 integer multiplication oracle.
        let lr = MonodromyWord::parse("LR").unwrap();
        assert_eq!(lr.monodromy_matrix().unwrap().trace(), 3);

        let llr = MonodromyWord::parse("LLR").unwrap();
        assert_eq!(llr.monodromy_matrix().unwrap().trace(), 4);

        // A single generator is parabolic (used only by the hyperbolicity check).
        assert_eq!(Mat2::generator(Letter::L).trace(), 2);
    }

    #[test]
    fn hyperbolic_words_have_large_trace() {
        // |trace| > 2 for every word containing both letters, period <= 8.
        for n in 2..=8usize {
            for mask in 1..(1u32 << n) - 1 {
                let letters: Vec<Letter> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { Letter::R } else { Letter::L })
                    .collect();
                let w = MonodromyWord::from_letters(letters).unwrap();
                assert!(w.monodromy_matrix().unwrap().trace().abs() > 2, "word {w}");
            }
        }
    }

    #[test]
    fn fan_lengths_are_run_lengths() {
        let w = MonodromyWord::parse("LLR").unwrap();
        assert_eq!(w.fan_lengths(), vec![2, 1]);
        let w = MonodromyWord::parse("LR").unwrap();
        assert_eq!(w.fan_lengths(), vec![1, 1]);
        let w = MonodromyWord::parse("LLRRRL").unwrap();
        // canonical rotation of LLRRRL is LLLRRR
        assert_eq!(w.to_string(), "LLLRRR");
        assert_eq!(w.fan_lengths(), vec![3, 3]);
    }

    #[test]
    fn generators_act_on_columns() {
        let l = Mat2::generator(Letter::L);
        assert_eq!(l.apply((0, 1)), (1, 1));
        let r = Mat2::generator(Letter::R);
        assert_eq!(r.apply((1, 0)), (1, 1));
        assert_eq!(l.det(), 1);
        assert_eq!(r.det(), 1);
    }
}
