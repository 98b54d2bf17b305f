//! Light-leaf combinatorics on 01-sequences: U/D decorations, defect,
//! the leaf character of a word, and graded-rank checks for morphism
//! spaces read off from the Hecke algebra.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coxeter::{lower_interval, theta_elt, theta_word, x_elt, x_word, y_wall, z_wall, Elt, Gen, Word};
use crate::error::{Error, Result};
use crate::hecke::{hom_rank, hom_rank_quotient, kl_basis, pairing, HeckeElt};
use crate::klformulas::kl_beyond_closed;
use crate::laurent::LPoly;
use crate::report::{Report, VerifyReport};

/// Default cap on the word length for exhaustive leaf enumeration.
pub const DEFAULT_BOUND: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoration {
    U0,
    U1,
    D0,
    D1,
}

impl Decoration {
    pub fn is_up(self) -> bool {
        matches!(self, Decoration::U0 | Decoration::U1)
    }

    fn of(up: bool, bit: bool) -> Decoration {
        match (up, bit) {
            (true, false) => Decoration::U0,
            (true, true) => Decoration::U1,
            (false, false) => Decoration::D0,
            (false, true) => Decoration::D1,
        }
    }

    /// Contribution to the defect: `U0 -> +1`, `D0 -> -1`, otherwise 0.
    pub fn defect(self) -> i32 {
        match self {
            Decoration::U0 => 1,
            Decoration::D0 => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A 01-sequence for a word together with its forced decorations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafPath {
    #[serde(with = "word_string")]
    pub word: Word,
    #[serde(with = "bit_string")]
    pub bits: Vec<bool>,
    pub decorations: Vec<Decoration>,
    pub endpoint: Elt,
    pub defect: i32,
}

mod word_string {
    use super::Word;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&w.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod bit_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::bits_to_string(bits))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        super::parse_bits(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.bytes()
        .enumerate()
        .map(|(i, b)| match b {
            b'0' => Ok(false),
            b'1' => Ok(true),
            _ => Err(Error::parse(i, format!("expected 0 or 1, found {:?}", b as char))),
        })
        .collect()
}

/// Walks the Bruhat stroll of `bits` along `word`.
pub fn stroll(word: &Word, bits: &[bool]) -> Result<LeafPath> {
    if bits.len() != word.len() {
        return Err(Error::LengthMismatch {
            word: word.len(),
            bits: bits.len(),
        });
    }
    let mut z = Elt::IDENTITY;
    let mut decorations = Vec::with_capacity(bits.len());
    for (&s, &bit) in word.letters().iter().zip(bits) {
        decorations.push(Decoration::of(!z.has_right_descent(s), bit));
        if bit {
            z = z.mul_right_gen(s);
        }
    }
    let defect = decorations.iter().map(|d| d.defect()).sum();
    Ok(LeafPath {
        word: word.clone(),
        bits: bits.to_vec(),
        decorations,
        endpoint: z,
        defect,
    })
}

fn check_bound(word: &Word, bound: usize) -> Result<()> {
    if word.len() > bound {
        return Err(Error::BoundExceeded { len: word.len(), bound });
    }
    Ok(())
}

/// Calls `f` on every leaf of `word`, in lexicographic order of the bits.
pub fn for_each_leaf(word: &Word, bound: usize, mut f: impl FnMut(&LeafPath)) -> Result<()> {
    check_bound(word, bound)?;
    let k = word.len();
    for mask in 0u64..(1u64 << k) {
        let bits: Vec<bool> = (0..k).map(|i| mask >> (k - 1 - i) & 1 == 1).collect();
        f(&stroll(word, &bits)?);
    }
    Ok(())
}

/// All `2^|word|` leaves, lexicographic in the bits.
pub fn enumerate_leaves(word: &Word) -> Result<Vec<LeafPath>> {
    enumerate_leaves_bounded(word, DEFAULT_BOUND)
}

pub fn enumerate_leaves_bounded(word: &Word, bound: usize) -> Result<Vec<LeafPath>> {
    let mut out = Vec::new();
    for_each_leaf(word, bound, |leaf| out.push(leaf.clone()))?;
    Ok(out)
}

/// The leaves whose decorations are all `U`.
pub fn u_leaves(word: &Word) -> Result<Vec<LeafPath>> {
    Ok(enumerate_leaves(word)?
        .into_iter()
        .filter(|leaf| leaf.decorations.iter().all(|d| d.is_up()))
        .collect())
}

/// `Σ_leaves v^defect H_endpoint`.
pub fn leaf_character(word: &Word) -> Result<HeckeElt> {
    let mut out = HeckeElt::zero();
    for_each_leaf(word, DEFAULT_BOUND, |leaf| {
        out.add_term(leaf.endpoint, &LPoly::monomial(1, leaf.defect));
    })?;
    Ok(out)
}

/// The leaf character equals `H̲_{s_1} ⋯ H̲_{s_k}`.
pub fn deodhar_check(word: &Word) -> Result<VerifyReport> {
    let mut r = Report::new("deodhar").param("word", word.to_string());
    let leaves = leaf_character(word)?;
    let product = HeckeElt::kl_word_product(word);
    r.check("leaf character", leaves == product, &product, &leaves);
    Ok(r.finish())
}

/// Words of length `len`, listed by their base-3 index.
fn word_from_index(mut index: u64, len: usize) -> Word {
    let mut letters = vec![Gen::S1; len];
    for slot in letters.iter_mut().rev() {
        *slot = Gen::new((index % 3) as i64 + 1);
        index /= 3;
    }
    Word(letters)
}

pub fn all_words(len: usize) -> impl Iterator<Item = Word> {
    (0..3u64.pow(len as u32)).map(move |i| word_from_index(i, len))
}

/// Exhaustive check for all words of length `<= max_exhaustive`, plus
/// `samples` words of length `sample_len` spread evenly over all such words.
pub fn deodhar_suite(max_exhaustive: usize, samples: u64, sample_len: usize) -> Result<VerifyReport> {
    let mut r = Report::new("deodhar")
        .param("max_exhaustive", max_exhaustive)
        .param("samples", samples)
        .param("sample_len", sample_len);
    for len in 0..=max_exhaustive {
        for word in all_words(len) {
            r.absorb(&deodhar_check(&word)?);
        }
    }
    let total = 3u64.pow(sample_len as u32);
    if samples > 0 {
        let stride = (total / samples).max(1);
        for i in 0..samples.min(total) {
            r.absorb(&deodhar_check(&word_from_index(i * stride + i % stride, sample_len))?);
        }
    }
    Ok(r.finish())
}

/// Which of the allowed endings a qualifying 01-sequence has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TreeEnding {
    /// `100*`
    OneZeroZero,
    /// `1101*`
    OneOneZeroOne,
    /// `10(11)^k 0*` with `k >= 1`
    OneZeroPairsZero(usize),
}

/// Classifies the ending of `bits` (the last bit is the free `*`).
pub fn tree_ending(bits: &[bool]) -> Option<TreeEnding> {
    let body = &bits[..bits.len().checked_sub(1)?];
    if body.ends_with(&[true, false, false]) {
        return Some(TreeEnding::OneZeroZero);
    }
    if body.ends_with(&[true, true, false, true]) {
        return Some(TreeEnding::OneOneZeroOne);
    }
    let mut rest = body.strip_suffix(&[false])?;
    let mut k = 0;
    while let Some(shorter) = rest.strip_suffix(&[true, true]) {
        rest = shorter;
        k += 1;
        if rest.ends_with(&[true, false]) {
            return Some(TreeEnding::OneZeroPairsZero(k));
        }
    }
    None
}

/// All 01-sequences for `x_n` that are `U` before position `n` and `D` at `n`.
pub fn qualifying_sequences(n: usize) -> Vec<LeafPath> {
    let word = x_word(n);
    let mut out = Vec::new();
    let mut bits = Vec::with_capacity(n);
    extend_up(&word, Elt::IDENTITY, &mut bits, &mut out);
    out
}

fn extend_up(word: &Word, z: Elt, bits: &mut Vec<bool>, out: &mut Vec<LeafPath>) {
    let i = bits.len();
    let s = word.letters()[i];
    let up = !z.has_right_descent(s);
    if i + 1 == word.len() {
        if !up {
            for last in [false, true] {
                bits.push(last);
                out.push(stroll(word, bits).expect("lengths agree"));
                bits.pop();
            }
        }
        return;
    }
    if !up {
        return;
    }
    for bit in [false, true] {
        bits.push(bit);
        extend_up(word, if bit { z.mul_right_gen(s) } else { z }, bits, out);
        bits.pop();
    }
}

/// Every qualifying sequence for `x_n` ends in one of the three allowed
/// patterns, and none ends in `11*`.
pub fn tree_classify(n: usize) -> Result<VerifyReport> {
    if !(4..=DEFAULT_BOUND).contains(&n) {
        return Err(Error::IndexOutOfRange(format!(
            "tree_classify needs 4 <= n <= {DEFAULT_BOUND}, got {n}"
        )));
    }
    let mut r = Report::new("lemma-tree").param("n", n);
    let mut counts = [0usize; 3];
    let sequences = qualifying_sequences(n);
    for leaf in &sequences {
        let text = bits_to_string(&leaf.bits);
        let ending = tree_ending(&leaf.bits);
        if r.check(&text, ending.is_some(), "one of 100*, 1101*, 10(11)^k0*", &text) {
            counts[match ending {
                Some(TreeEnding::OneZeroZero) => 0,
                Some(TreeEnding::OneOneZeroOne) => 1,
                _ => 2,
            }] += 1;
        }
        let ends_11 = leaf.bits[..n - 1].ends_with(&[true, true]);
        r.check(format!("{text} does not end in 11*"), !ends_11, "no 11*", &text);
    }
    r.info("qualifying", sequences.len());
    r.info("family_100", counts[0]);
    r.info("family_1101", counts[1]);
    r.info("family_10_11k_0", counts[2]);
    Ok(r.finish())
}

/// `Hom^k(B_{θ(m,n)}, B_y) = 0` for `k < 2a + b` where the length gap is
/// `4a + b`, and the degree-`2a` rank towards `θ(m-a,n-a)` is 1.
pub fn verify_bounds_beyond(m: usize, n: usize) -> VerifyReport {
    let mut r = Report::new("bounds-beyond").param("m", m).param("n", n);
    let theta = theta_elt(m, n);
    let lt = theta.length();
    for y in lower_interval(theta) {
        let gap = lt - y.length();
        let bound = 2 * (gap / 4) + gap % 4;
        let rank = hom_rank(theta, y);
        let ok = rank.min_deg().is_ok_and(|d| d >= bound as i32);
        r.check(format!("min degree towards {y}"), ok, format!(">= {bound}"), &rank);
    }
    for a in 0..=m.min(n) {
        let target = theta_elt(m - a, n - a);
        let c = hom_rank(theta, target).coeff(2 * a as i32);
        r.expect_eq(
            format!("degree {} towards theta({},{})", 2 * a, m - a, n - a),
            &BigInt::from(1),
            &c,
        );
    }
    r.finish()
}

/// The last two letters of the reduced word of `θ(m,n)`:
/// `θ(m,n) = θ(m,n-1) s t`.
pub fn little_leaves_gens(m: usize, n: usize) -> (Gen, Gen) {
    let word = theta_word(m, n);
    let l = word.letters();
    (l[l.len() - 2], l[l.len() - 1])
}

fn little_leaves_character(m: usize, n: usize) -> HeckeElt {
    let (s, t) = little_leaves_gens(m, n);
    kl_beyond_closed(m, n - 1).mul_kl_gen_right(s).mul_kl_gen_right(t)
}

/// Degree-`2n` rank of `B_{θ(m,n-1)} B_s B_t -> B_{θ(m-n,0)}` modulo lower
/// terms: 2 for `n = 1`, 3 for `n > 1`.
pub fn verify_threelittleleaves(m: usize, n: usize) -> Result<VerifyReport> {
    if n == 0 || n > m {
        return Err(Error::IndexOutOfRange(format!("need 1 <= n <= m, got m={m}, n={n}")));
    }
    let mut r = Report::new("threelittleleaves").param("m", m).param("n", n);
    let ch = little_leaves_character(m, n);
    let rank = hom_rank_quotient(&ch, theta_elt(m - n, 0));
    let expected = BigInt::from(if n == 1 { 2 } else { 3 });
    r.expect_eq(
        format!("coefficient of v^{}", 2 * n),
        &expected,
        &rank.coeff(2 * n as i32),
    );
    Ok(r.finish())
}

/// Degree-`2i` rank towards `θ(m-i,n-i)`: 3 for `i = 1`, 4 for `i > 1`.
pub fn verify_fourlittleleaves(m: usize, n: usize, i: usize) -> Result<VerifyReport> {
    if i == 0 || i >= n || i > m {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= i < n and i <= m, got m={m}, n={n}, i={i}"
        )));
    }
    let mut r = Report::new("fourlittleleaves")
        .param("m", m)
        .param("n", n)
        .param("i", i);
    let ch = little_leaves_character(m, n);
    let rank = hom_rank_quotient(&ch, theta_elt(m - i, n - i));
    let expected = BigInt::from(if i == 1 { 3 } else { 4 });
    r.expect_eq(
        format!("coefficient of v^{}", 2 * i),
        &expected,
        &rank.coeff(2 * i as i32),
    );
    Ok(r.finish())
}

/// Degree-0 rank of `B_{x_n} B_{s_{n+1}} -> B_y` is 1 for `y = y_n` and,
/// for even `n`, `y = z_n`.
pub fn verify_deg0_wall(n: usize) -> Result<VerifyReport> {
    if n < 5 {
        return Err(Error::IndexOutOfRange(format!("deg0 needs n >= 5, got {n}")));
    }
    let mut r = Report::new("deg0-wall").param("n", n);
    let product = kl_basis(x_elt(n)).mul_kl_gen_right(Gen::new(n as i64 + 1));
    let mut targets = vec![("y_n", y_wall(n)?)];
    if n % 2 == 0 {
        targets.push(("z_n", z_wall(n)?));
    }
    for (name, y) in targets {
        let rank = pairing(&product, &kl_basis(y));
        r.expect_eq(
            format!("constant term towards {name}"),
            &BigInt::from(1),
            &rank.coeff(0),
        );
    }
    Ok(r.finish())
}

/// `coeff(H̲_x H̲_s, y) = v h_{y,x} + h_{ys,x}` whenever `ys > y`.
pub fn verify_rank_recursion(x: Elt) -> VerifyReport {
    let mut r = Report::new("rank-recursion").param("x", x.to_string());
    let c = kl_basis(x);
    for s in Gen::all() {
        let product = c.mul_kl_gen_right(s);
        let top = if x.has_right_descent(s) { x } else { x.mul_right_gen(s) };
        for y in lower_interval(top) {
            let ys = y.mul_right_gen(s);
            if y.has_right_descent(s) {
                continue;
            }
            let expected = &c.coeff_of(y).shift(1) + &c.coeff_of(ys);
            r.expect_eq(format!("s={s}, y={y}"), &expected, &product.coeff_of(y));
        }
    }
    r.finish()
}

/// Hom-rank dimension statements over all parameters with product length
/// at most `max_len`, and the degree-0 wall statement for `5 <= n <= max_wall`.
pub fn hom_dims_suite(max_len: usize, max_wall: usize) -> Result<VerifyReport> {
    let mut r = Report::new("hom-dims")
        .param("max_len", max_len)
        .param("max_wall", max_wall);
    for m in 0..=max_len {
        for n in 0..=max_len {
            if 2 * m + 2 * n + 3 > max_len {
                continue;
            }
            r.absorb(&verify_bounds_beyond(m, n));
            if n >= 1 && n <= m {
                r.absorb(&verify_threelittleleaves(m, n)?);
            }
            for i in 1..n.min(m + 1) {
                r.absorb(&verify_fourlittleleaves(m, n, i)?);
            }
        }
    }
    for n in 5..=max_wall {
        r.absorb(&verify_deg0_wall(n)?);
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str) -> Word {
        text.parse().unwrap()
    }

    fn bits(text: &str) -> Vec<bool> {
        parse_bits(text).unwrap()
    }

    #[test]
    fn stroll_examples() {
        let leaf = stroll(&word("1"), &bits("0")).unwrap();
        assert_eq!(leaf.decorations, vec![Decoration::U0]);
        assert_eq!(leaf.endpoint, Elt::IDENTITY);
        assert_eq!(leaf.defect, 1);

        let leaf = stroll(&word("11"), &bits("10")).unwrap();
        assert_eq!(leaf.decorations, vec![Decoration::U1, Decoration::D0]);
        assert_eq!(leaf.endpoint, Elt::gen(Gen::S1));
        assert_eq!(leaf.defect, -1);

        let leaf = stroll(&word("12"), &bits("11")).unwrap();
        assert_eq!(leaf.endpoint, Elt::from_word(&word("12")));
        assert_eq!(leaf.defect, 0);

        assert_eq!(
            stroll(&word("12"), &bits("1")),
            Err(Error::LengthMismatch { word: 2, bits: 1 })
        );
    }

    #[test]
    fn leaf_characters_by_hand() {
        let s1 = Elt::gen(Gen::S1);
        let mut expected = HeckeElt::zero();
        expected.add_term(s1, &LPoly::quantum_two());
        expected.add_term(Elt::IDENTITY, &"1 + v^2".parse().unwrap());
        assert_eq!(leaf_character(&word("11")).unwrap(), expected);

        let mut expected = HeckeElt::unit(Elt::from_word(&word("12")));
        expected.add_term(s1, &LPoly::v());
        expected.add_term(Elt::gen(Gen::S2), &LPoly::v());
        expected.add_term(Elt::IDENTITY, &LPoly::monomial(1, 2));
        assert_eq!(leaf_character(&word("12")).unwrap(), expected);
    }

    #[test]
    fn enumeration_size_order_and_bound() {
        let leaves = enumerate_leaves(&word("1231")).unwrap();
        assert_eq!(leaves.len(), 16);
        assert_eq!(bits_to_string(&leaves[0].bits), "0000");
        assert_eq!(bits_to_string(&leaves[1].bits), "0001");
        assert_eq!(bits_to_string(&leaves[15].bits), "1111");
        let long = Word(vec![Gen::S1; 21]);
        assert_eq!(
            enumerate_leaves(&long).unwrap_err(),
            Error::BoundExceeded { len: 21, bound: 20 }
        );
    }

    #[test]
    fn u_leaves_examples() {
        let u = u_leaves(&word("11")).unwrap();
        let strings: Vec<String> = u.iter().map(|l| bits_to_string(&l.bits)).collect();
        assert_eq!(strings, vec!["00", "01"]);
        assert_eq!(u_leaves(&word("123")).unwrap().len(), 8);
        assert!(u_leaves(&word("121213")).unwrap().iter().all(|l| l.defect >= 0));
    }

    #[test]
    fn deodhar_examples() {
        assert!(deodhar_check(&word("11")).unwrap().pass);
        assert!(deodhar_check(&word("123123")).unwrap().pass);
        assert!(deodhar_suite(4, 20, 8).unwrap().pass);
    }

    #[test]
    fn tree_endings() {
        assert_eq!(tree_ending(&bits("11001")), Some(TreeEnding::OneZeroZero));
        assert_eq!(tree_ending(&bits("011010")), Some(TreeEnding::OneOneZeroOne));
        assert_eq!(tree_ending(&bits("0101100")), Some(TreeEnding::OneZeroPairsZero(1)));
        assert_eq!(tree_ending(&bits("10111101")), Some(TreeEnding::OneZeroPairsZero(2)));
        assert_eq!(tree_ending(&bits("01110")), None);
        assert_eq!(tree_ending(&bits("")), None);
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        for n in 4..=14 {
            let word = x_word(n);
            let mut brute = Vec::new();
            for mask in 0u32..1 << n {
                let bits: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
                let leaf = stroll(&word, &bits).unwrap();
                let (head, last) = leaf.decorations.split_at(n - 1);
                if head.iter().all(|d| d.is_up()) && !last[0].is_up() {
                    brute.push(leaf);
                }
            }
            assert_eq!(qualifying_sequences(n), brute, "n = {n}");
        }
    }

    #[test]
    fn tree_classification_small() {
        for n in 4..=10 {
            let report = tree_classify(n).unwrap();
            assert!(report.pass, "{report:?}");
        }
        assert!(tree_classify(3).is_err());
    }

    #[test]
    fn leaf_json_shape() {
        let leaf = stroll(&word("11"), &bits("10")).unwrap();
        let json = serde_json::to_string(&leaf).unwrap();
        assert_eq!(
            json,
            r#"{"word":"11","bits":"10","decorations":["U1","D0"],"endpoint":"1","defect":-1}"#
        );
        assert_eq!(serde_json::from_str::<LeafPath>(&json).unwrap(), leaf);
    }

    #[test]
    fn rank_statements() {
        assert!(verify_bounds_beyond(1, 1).pass);
        assert!(verify_bounds_beyond(2, 0).pass);
        assert!(verify_threelittleleaves(2, 1).unwrap().pass);
        assert!(verify_threelittleleaves(2, 2).unwrap().pass);
        assert!(verify_fourlittleleaves(2, 2, 1).unwrap().pass);
        assert!(verify_threelittleleaves(1, 2).is_err());
        assert!(verify_deg0_wall(6).unwrap().pass);
        assert!(verify_deg0_wall(7).unwrap().pass);
    }

    #[test]
    fn little_leaves_generators_extend_theta() {
        for m in 0..4 {
            for n in 1..4 {
                let (s, t) = little_leaves_gens(m, n);
                assert_eq!(theta_elt(m, n - 1).mul_right_gen(s).mul_right_gen(t), theta_elt(m, n));
            }
        }
    }

    #[test]
    fn rank_recursion_small() {
        for x in crate::coxeter::elements_up_to(6) {
            assert!(verify_rank_recursion(x).pass, "x = {x}");
        }
    }
}
