//! The Coxeter system of type A~2.
//!
//! Elements are affine permutations `f: Z -> Z` with `f(i + 3) = f(i) + 3`,
//! stored through their window `(f(1), f(2), f(3))`. The simple reflections
//! are `s1 = (1 2)`, `s2 = (2 3)` and `s3 = s0 = (0 1)` (all shifted by
//! multiples of 3), so every pair of generators satisfies a braid relation of
//! order 3.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::LazyLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple reflection `s1`, `s2` or `s3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u8);

impl Gen {
    pub const S1: Gen = Gen(1);
    pub const S2: Gen = Gen(2);
    pub const S3: Gen = Gen(3);

    /// Resolves any integer label mod 3; label 0 is `s3`.
    pub fn new(label: i64) -> Gen {
        Gen(((label - 1).rem_euclid(3) + 1) as u8)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> [Gen; 3] {
        [Gen::S1, Gen::S2, Gen::S3]
    }

    /// The generator different from both `a` and `b` (`a != b`).
    pub fn third(a: Gen, b: Gen) -> Gen {
        debug_assert_ne!(a, b);
        Gen(6 - a.0 - b.0)
    }

    pub fn to_char(self) -> char {
        (b'0' + self.0) as char
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A finite sequence of simple reflections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    /// Builds a word from integer labels read mod 3.
    pub fn from_labels<I: IntoIterator<Item = i64>>(labels: I) -> Self {
        Word(labels.into_iter().map(Gen::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Word> {
        text.bytes()
            .enumerate()
            .map(|(i, b)| match b {
                b'1' => Ok(Gen::S1),
                b'2' => Ok(Gen::S2),
                b'3' => Ok(Gen::S3),
                _ => Err(Error::parse(
                    i,
                    format!("expected a letter in 1..=3, found {:?}", b as char),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// An element of W in window notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt([i64; 3]);

impl Elt {
    pub const IDENTITY: Elt = Elt([1, 2, 3]);

    pub fn from_window(window: [i64; 3]) -> Result<Elt> {
        let residues: HashSet<i64> = window.iter().map(|w| w.rem_euclid(3)).collect();
        if window.iter().sum::<i64>() != 6 || residues.len() != 3 {
            return Err(Error::InvalidWindow(window));
        }
        Ok(Elt(window))
    }

    pub fn window(&self) -> [i64; 3] {
        self.0
    }

    pub fn gen(s: Gen) -> Elt {
        Elt::IDENTITY.mul_right_gen(s)
    }

    pub fn is_identity(&self) -> bool {
        *self == Elt::IDENTITY
    }

    /// The value `f(i)` of the affine permutation at any integer.
    pub fn apply(&self, i: i64) -> i64 {
        let q = (i - 1).div_euclid(3);
        let r = (i - 1).rem_euclid(3) as usize;
        self.0[r] + 3 * q
    }

    /// `x * s`: permutes window positions.
    pub fn mul_right_gen(self, s: Gen) -> Elt {
        let [a1, a2, a3] = self.0;
        Elt(match s.0 {
            1 => [a2, a1, a3],
            2 => [a1, a3, a2],
            _ => [a3 - 3, a2, a1 + 3],
        })
    }

    /// `s * x`: swaps the two residue classes connected by `s` in every value.
    pub fn mul_left_gen(self, s: Gen) -> Elt {
        let swap = |v: i64| {
            let class = (v - 1).rem_euclid(3) + 1;
            match (s.0, class) {
                (1, 1) | (2, 2) | (3, 3) => v + 1,
                (1, 2) | (2, 3) | (3, 1) => v - 1,
                _ => v,
            }
        };
        Elt(self.0.map(swap))
    }

    pub fn inverse(self) -> Elt {
        let mut inv = [0i64; 3];
        for (r, &w) in self.0.iter().enumerate() {
            let c = (w - 1).rem_euclid(3) as usize;
            let q = (w - 1).div_euclid(3);
            inv[c] = r as i64 + 1 - 3 * q;
        }
        Elt(inv)
    }

    /// Affine inversion count.
    pub fn length(&self) -> usize {
        let w = self.0;
        let mut total = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                total += (w[j] - w[i]).div_euclid(3).unsigned_abs() as usize;
            }
        }
        total
    }

    pub fn has_right_descent(&self, s: Gen) -> bool {
        let w = self.0;
        match s.0 {
            1 => w[0] > w[1],
            2 => w[1] > w[2],
            _ => w[2] > w[0] + 3,
        }
    }

    pub fn has_left_descent(&self, s: Gen) -> bool {
        self.inverse().has_right_descent(s)
    }

    pub fn right_descents(&self) -> Vec<Gen> {
        Gen::all().into_iter().filter(|&s| self.has_right_descent(s)).collect()
    }

    pub fn left_descents(&self) -> Vec<Gen> {
        let inv = self.inverse();
        Gen::all().into_iter().filter(|&s| inv.has_right_descent(s)).collect()
    }

    pub fn from_word(word: &Word) -> Elt {
        word.0.iter().fold(Elt::IDENTITY, |x, &s| x.mul_right_gen(s))
    }

    /// Lexicographically smallest reduced word, built by peeling the
    /// smallest left descent.
    pub fn canonical_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length());
        let mut x = *self;
        while !x.is_identity() {
            let inv = x.inverse();
            let s = Gen::all()
                .into_iter()
                .find(|&s| inv.has_right_descent(s))
                .expect("non-identity element has a left descent");
            letters.push(s);
            x = x.mul_left_gen(s);
        }
        Word(letters)
    }
}

impl Mul for Elt {
    type Output = Elt;

    fn mul(self, rhs: Elt) -> Elt {
        Elt(rhs.0.map(|i| self.apply(i)))
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_word())
    }
}

/// Accepts either a word over `{1,2,3}` or a window `(a,b,c)`.
impl FromStr for Elt {
    type Err = Error;

    fn from_str(text: &str) -> Result<Elt> {
        let trimmed = text.trim();
        if let Some(inner) = trimmed.strip_prefix('(') {
            let offset = text.len() - text.trim_start().len() + 1;
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(text.len(), "missing closing parenthesis"))?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::parse(offset, "window needs exactly three entries"));
            }
            let mut window = [0i64; 3];
            let mut pos = offset;
            for (slot, part) in window.iter_mut().zip(&parts) {
                *slot = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("invalid integer {:?}", part.trim())))?;
                pos += part.len() + 1;
            }
            return Elt::from_window(window);
        }
        Ok(Elt::from_word(&trimmed.parse()?))
    }
}

impl Serialize for Elt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical_word().to_string())
    }
}

impl<'de> Deserialize<'de> for Elt {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Elt, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn identity() -> Elt {
    Elt::IDENTITY
}

pub fn from_word(word: &Word) -> Elt {
    Elt::from_word(word)
}

pub fn is_reduced(word: &Word) -> bool {
    Elt::from_word(word).length() == word.len()
}

/// Reducedness read off from braid triplets: a word with no two equal
/// adjacent letters is reduced iff consecutive braid triplets sit at odd
/// distance `j - i - 1`.
pub fn braid_reduced_criterion(word: &Word) -> Result<bool> {
    let r = word.letters();
    if let Some(i) = r.windows(2).position(|p| p[0] == p[1]) {
        return Err(Error::Precondition(format!(
            "word {word} has equal adjacent letters at positions {} and {}",
            i + 1,
            i + 2
        )));
    }
    // 1-based positions i with r[i-1] == r[i+1] != r[i]
    let triplets: Vec<usize> = (1..r.len().saturating_sub(1))
        .filter(|&k| r[k - 1] == r[k + 1] && r[k - 1] != r[k])
        .map(|k| k + 1)
        .collect();
    Ok(triplets
        .iter()
        .enumerate()
        .all(|(a, &i)| triplets[a + 1..].iter().all(|&j| (j - i - 1) % 2 == 1)))
}

static BRUHAT_MEMO: LazyLock<DashMap<(Elt, Elt), bool>> = LazyLock::new(DashMap::new);

/// Bruhat order via the lifting property, memoized.
pub fn bruhat_leq(y: Elt, x: Elt) -> bool {
    let (ly, lx) = (y.length(), x.length());
    if ly > lx {
        return false;
    }
    if ly == lx {
        return y == x;
    }
    if y.is_identity() {
        return true;
    }
    if let Some(hit) = BRUHAT_MEMO.get(&(y, x)) {
        return *hit;
    }
    let x_inv = x.inverse();
    let s = Gen::all()
        .into_iter()
        .find(|&s| x_inv.has_right_descent(s))
        .expect("x > y >= e has a left descent");
    let sx = x.mul_left_gen(s);
    let result = if y.has_left_descent(s) {
        bruhat_leq(y.mul_left_gen(s), sx)
    } else {
        bruhat_leq(y, sx)
    };
    BRUHAT_MEMO.insert((y, x), result);
    result
}

/// `{y : y <= x}` as the set of all subword products of one reduced word.
pub fn lower_interval(x: Elt) -> BTreeSet<Elt> {
    let mut reached: HashSet<Elt> = HashSet::from([Elt::IDENTITY]);
    for s in x.canonical_word().0 {
        let extended: Vec<Elt> = reached.iter().map(|z| z.mul_right_gen(s)).collect();
        reached.extend(extended);
    }
    reached.into_iter().collect()
}

pub fn coatoms(x: Elt) -> BTreeSet<Elt> {
    let word = x.canonical_word();
    let target = x.length().saturating_sub(1);
    (0..word.len())
        .map(|skip| {
            let mut letters = word.0.clone();
            letters.remove(skip);
            Elt::from_word(&Word(letters))
        })
        .filter(|y| y.length() == target)
        .collect()
}

pub fn set_product(a: &BTreeSet<Elt>, b: &BTreeSet<Elt>) -> BTreeSet<Elt> {
    a.iter().flat_map(|&p| b.iter().map(move |&q| p * q)).collect()
}

/// All elements of length at most `max_len`, grouped by length.
pub fn elements_by_length(max_len: usize) -> Vec<Vec<Elt>> {
    let mut levels = vec![vec![Elt::IDENTITY]];
    for len in 1..=max_len {
        let next: BTreeSet<Elt> = levels[len - 1]
            .iter()
            .flat_map(|x| Gen::all().map(|s| x.mul_right_gen(s)))
            .filter(|y| y.length() == len)
            .collect();
        levels.push(next.into_iter().collect());
    }
    levels
}

pub fn elements_up_to(max_len: usize) -> Vec<Elt> {
    elements_by_length(max_len).into_iter().flatten().collect()
}

/// A permutation of the labels `{1,2,3}`, stored as the images of 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3([u8; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([1, 2, 3]);

    pub fn new(images: [u8; 3]) -> Result<Perm3> {
        let mut sorted = images;
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return Err(Error::Precondition(format!("{images:?} is not a permutation of 1,2,3")));
        }
        Ok(Perm3(images))
    }

    pub fn all() -> [Perm3; 6] {
        [
            Perm3([1, 2, 3]),
            Perm3([1, 3, 2]),
            Perm3([2, 1, 3]),
            Perm3([2, 3, 1]),
            Perm3([3, 1, 2]),
            Perm3([3, 2, 1]),
        ]
    }

    pub fn images(&self) -> [u8; 3] {
        self.0
    }

    pub fn apply(&self, s: Gen) -> Gen {
        Gen(self.0[(s.0 - 1) as usize])
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0u8; 3];
        for (i, &img) in self.0.iter().enumerate() {
            inv[(img - 1) as usize] = i as u8 + 1;
        }
        Perm3(inv)
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Perm3 {
    type Err = Error;

    fn from_str(text: &str) -> Result<Perm3> {
        let bytes = text.as_bytes();
        if bytes.len() != 3 || !bytes.iter().all(|b| (b'1'..=b'3').contains(b)) {
            return Err(Error::parse(0, format!("{text:?} is not a permutation of 123")));
        }
        Perm3::new([bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0'])
            .map_err(|_| Error::parse(0, format!("{text:?} is not a permutation of 123")))
    }
}

/// Image of `x` under the diagram automorphism relabelling generators by `sigma`.
pub fn color_perm(sigma: Perm3, x: Elt) -> Elt {
    if sigma == Perm3::IDENTITY {
        return x;
    }
    x.canonical_word()
        .0
        .into_iter()
        .fold(Elt::IDENTITY, |acc, s| acc.mul_right_gen(sigma.apply(s)))
}

pub fn x_word(n: usize) -> Word {
    Word::from_labels(1..=n as i64)
}

/// `x_n = 123123...` of length `n`; `x_0` is the identity.
pub fn x_elt(n: usize) -> Elt {
    Elt::from_word(&x_word(n))
}

/// `1 2 3 ... (2m+2) (2m+1) ... (2m-2n+1)` with labels mod 3.
pub fn theta_word(m: usize, n: usize) -> Word {
    let (m, n) = (m as i64, n as i64);
    let up = 1..=2 * m + 2;
    let down = (2 * m - 2 * n + 1..=2 * m + 1).rev();
    Word::from_labels(up.chain(down))
}

pub fn theta_elt(m: usize, n: usize) -> Elt {
    Elt::from_word(&theta_word(m, n))
}

/// The generator `r = s0` multiplied on the left of `theta(m, n)`.
pub fn theta_r(_m: usize, _n: usize) -> Gen {
    Gen::new(0)
}

/// The generator `s_{2m-2n}` multiplied on the right of `theta(m, n)`.
pub fn theta_s(m: usize, n: usize) -> Gen {
    Gen::new(2 * m as i64 - 2 * n as i64)
}

pub fn theta_variant(m: usize, n: usize, left_r: bool, right_s: bool) -> Elt {
    let mut x = theta_elt(m, n);
    if left_r {
        x = x.mul_left_gen(theta_r(m, n));
    }
    if right_s {
        x = x.mul_right_gen(theta_s(m, n));
    }
    x
}

/// `y_n = 1 2 3 ... (n-2) n`, defined for `n >= 4`.
pub fn y_word(n: usize) -> Result<Word> {
    if n < 4 {
        return Err(Error::IndexOutOfRange(format!("y_n needs n >= 4, got {n}")));
    }
    let n = n as i64;
    Ok(Word::from_labels((1..=n - 2).chain(std::iter::once(n))))
}

/// The alternative expression `1 2 ... (n-4) (n-2) (n-3) (n-2)` for `y_n`.
pub fn y_word_alt(n: usize) -> Result<Word> {
    if n < 4 {
        return Err(Error::IndexOutOfRange(format!("y_n needs n >= 4, got {n}")));
    }
    let n = n as i64;
    Ok(Word::from_labels((1..=n - 4).chain([n - 2, n - 3, n - 2])))
}

pub fn y_wall(n: usize) -> Result<Elt> {
    y_word(n).map(|w| Elt::from_word(&w))
}

/// `z_n = 1 3 4 5 ... (n-2)`, defined for `n >= 5`.
pub fn z_word(n: usize) -> Result<Word> {
    if n < 5 {
        return Err(Error::IndexOutOfRange(format!("z_n needs n >= 5, got {n}")));
    }
    let n = n as i64;
    Ok(Word::from_labels(std::iter::once(1).chain(3..=n - 2)))
}

pub fn z_wall(n: usize) -> Result<Elt> {
    z_word(n).map(|w| Elt::from_word(&w))
}

/// `z'_n` read as `z_n` with its last letter removed.
///
/// This reading is kept for comparison only: for even `n` it is not the
/// element appearing in `H̲_{x_n}`. Use [`z_prime_wall_alt`] for that.
pub fn z_prime_wall(n: usize) -> Result<Elt> {
    let mut word = z_word(n)?;
    word.0.pop();
    Ok(Elt::from_word(&word))
}

/// `z'_n` read as `z_n * s_n`, a length-decreasing product. This is the
/// reading that agrees with the brute-force `H̲_{x_n}` for every even `n`
/// that was checked (6..=14).
pub fn z_prime_wall_alt(n: usize) -> Result<Elt> {
    Ok(z_wall(n)?.mul_right_gen(Gen::new(n as i64)))
}

/// The family shape of an element, before applying a color permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Identity,
    Wall(usize),
    Beyond {
        m: usize,
        n: usize,
        left_r: bool,
        right_s: bool,
    },
}

impl Family {
    pub fn representative(&self) -> Elt {
        match *self {
            Family::Identity => Elt::IDENTITY,
            Family::Wall(n) => x_elt(n),
            Family::Beyond { m, n, left_r, right_s } => theta_variant(m, n, left_r, right_s),
        }
    }

    /// Every family shape whose representative has length `len`.
    pub fn candidates_of_length(len: usize) -> Vec<Family> {
        if len == 0 {
            return vec![Family::Identity];
        }
        let mut out = vec![Family::Wall(len)];
        for (extra, left_r, right_s) in [(3, false, false), (4, true, false), (4, false, true), (5, true, true)] {
            if len < extra || (len - extra) % 2 != 0 {
                continue;
            }
            let total = (len - extra) / 2;
            for m in 0..=total {
                out.push(Family::Beyond {
                    m,
                    n: total - m,
                    left_r,
                    right_s,
                });
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Identity => write!(f, "identity"),
            Family::Wall(n) => write!(f, "x_{n}"),
            Family::Beyond { m, n, left_r, right_s } => {
                let r = if left_r { "r" } else { "" };
                let s = if right_s { "s" } else { "" };
                write!(f, "{r}theta({m},{n}){s}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyTag {
    pub family: Family,
    #[serde(with = "perm_as_string")]
    pub sigma: Perm3,
}

impl FamilyTag {
    pub fn element(&self) -> Elt {
        color_perm(self.sigma, self.family.representative())
    }
}

mod perm_as_string {
    use super::Perm3;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Perm3, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Perm3, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Every family (with the first matching color permutation) that reaches `x`.
pub fn classify_all(x: Elt) -> Vec<FamilyTag> {
    let mut out = Vec::new();
    for family in Family::candidates_of_length(x.length()) {
        let rep = family.representative();
        if rep.length() != x.length() {
            continue;
        }
        if let Some(sigma) = Perm3::all().into_iter().find(|&p| color_perm(p, rep) == x) {
            out.push(FamilyTag { family, sigma });
        }
    }
    out
}

pub fn classify(x: Elt) -> Result<FamilyTag> {
    classify_all(x)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Unclassified(x.to_string()))
}

/// Lookup table from element to family, for bulk use.
pub fn classification_table(max_len: usize) -> HashMap<Elt, Vec<FamilyTag>> {
    elements_up_to(max_len)
        .into_iter()
        .map(|x| (x, classify_all(x)))
        .collect()
}
