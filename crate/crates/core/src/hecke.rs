//! The Hecke algebra of A~2 over `Z[v, v^-1]`, its Kazhdan–Lusztig basis and
//! the bilinear data built from it.
//!
//! Conventions: `H_x H_s = H_{xs}` if `xs > x`, otherwise
//! `H_{xs} + (v^-1 - v) H_x`; the KL generator is `H̲_s = H_s + v`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{elements_by_length, lower_interval, Elt, Gen, Word};
use crate::laurent::LPoly;

/// A finitely supported map `Elt -> LPoly`, read in the standard basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<Elt, LPoly>,
}

/// Coordinates with respect to the Kazhdan–Lusztig basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KlCombination {
    terms: BTreeMap<Elt, LPoly>,
}

fn add_into(terms: &mut BTreeMap<Elt, LPoly>, x: Elt, p: &LPoly) {
    if p.is_zero() {
        return;
    }
    let entry = terms.entry(x).or_default();
    *entry += p;
    if entry.is_zero() {
        terms.remove(&x);
    }
}

/// Deterministic output order: by length, then canonical word.
fn display_order(terms: &BTreeMap<Elt, LPoly>) -> Vec<(Word, &LPoly)> {
    let mut out: Vec<(usize, Word, &LPoly)> = terms.iter().map(|(x, p)| (x.length(), x.canonical_word(), p)).collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, w, p)| (w, p)).collect()
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &BTreeMap<Elt, LPoly>, symbol: &str) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (word, p)) in display_order(terms).into_iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        let name = if word.is_empty() {
            "e".to_string()
        } else {
            word.to_string()
        };
        if p.is_one_poly() {
            write!(f, "{symbol}_{name}")?;
        } else {
            write!(f, "({p}){symbol}_{name}")?;
        }
    }
    Ok(())
}

impl LPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl HeckeElt {
    pub fn zero() -> Self {
        HeckeElt::default()
    }

    /// The standard basis element `H_x`.
    pub fn unit(x: Elt) -> Self {
        HeckeElt::term(x, LPoly::one())
    }

    pub fn term(x: Elt, p: LPoly) -> Self {
        let mut out = HeckeElt::zero();
        out.add_term(x, &p);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, x: Elt, p: &LPoly) {
        add_into(&mut self.terms, x, p);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Elt, &LPoly)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Elt> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, y: Elt) -> LPoly {
        self.terms.get(&y).cloned().unwrap_or_default()
    }

    pub fn scale(&self, p: &LPoly) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, q) in &self.terms {
            out.add_term(x, &(q * p));
        }
        out
    }

    /// `h · H̲_s`
    pub fn mul_kl_gen_right(&self, s: Gen) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, p) in &self.terms {
            let xs = x.mul_right_gen(s);
            out.add_term(xs, p);
            let k = if x.has_right_descent(s) { -1 } else { 1 };
            out.add_term(x, &p.shift(k));
        }
        out
    }

    /// `H̲_s · h`
    pub fn mul_kl_gen_left(&self, s: Gen) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, p) in &self.terms {
            let sx = x.mul_left_gen(s);
            out.add_term(sx, p);
            let k = if x.has_left_descent(s) { -1 } else { 1 };
            out.add_term(x, &p.shift(k));
        }
        out
    }

    /// `h · H_s`
    pub fn mul_std_gen_right(&self, s: Gen) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, p) in &self.terms {
            out.add_term(x.mul_right_gen(s), p);
            if x.has_right_descent(s) {
                out.add_term(x, &(p.shift(-1) - p.shift(1)));
            }
        }
        out
    }

    /// `H_s · h`
    pub fn mul_std_gen_left(&self, s: Gen) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, p) in &self.terms {
            out.add_term(x.mul_left_gen(s), p);
            if x.has_left_descent(s) {
                out.add_term(x, &(p.shift(-1) - p.shift(1)));
            }
        }
        out
    }

    /// Product of KL generators along a word, applied on the right.
    pub fn mul_kl_word_right(&self, word: &Word) -> HeckeElt {
        word.letters()
            .iter()
            .fold(self.clone(), |acc, &s| acc.mul_kl_gen_right(s))
    }

    /// `H̲_{s_1} ⋯ H̲_{s_k}` for a word `s_1 ⋯ s_k`.
    pub fn kl_word_product(word: &Word) -> HeckeElt {
        HeckeElt::unit(Elt::IDENTITY).mul_kl_word_right(word)
    }

    /// Image under the ring involution with `v -> v^-1`, `H_x -> H_{x^-1}^-1`.
    pub fn bar_involution(&self) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, p) in &self.terms {
            out += &bar_standard(x).scale(&p.bar());
        }
        out
    }

    /// Sum of all coefficients evaluated at `v = 1`.
    pub fn content(&self) -> BigInt {
        self.terms.values().map(LPoly::eval_at_one).sum()
    }

    pub fn to_kl(&self) -> KlCombination {
        let mut rest = self.clone();
        let mut out = KlCombination::default();
        while let Some(w) = top_element(&rest) {
            let c = rest.coeff_of(w);
            rest -= &kl_basis(w).scale(&c);
            add_into(&mut out.terms, w, &c);
        }
        out
    }
}

/// Maximal-length support element, earliest canonical word among ties.
fn top_element(h: &HeckeElt) -> Option<Elt> {
    let max_len = h.support().map(|x| x.length()).max()?;
    h.support()
        .filter(|x| x.length() == max_len)
        .min_by_key(|x| x.canonical_word())
}

impl AddAssign<&HeckeElt> for HeckeElt {
    fn add_assign(&mut self, rhs: &HeckeElt) {
        for (&x, p) in &rhs.terms {
            self.add_term(x, p);
        }
    }
}

impl SubAssign<&HeckeElt> for HeckeElt {
    fn sub_assign(&mut self, rhs: &HeckeElt) {
        for (&x, p) in &rhs.terms {
            self.add_term(x, &-p);
        }
    }
}

impl Add<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for HeckeElt {
    type Output = HeckeElt;
    fn add(mut self, rhs: HeckeElt) -> HeckeElt {
        self += &rhs;
        self
    }
}

impl Sub<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for HeckeElt {
    type Output = HeckeElt;
    fn sub(mut self, rhs: HeckeElt) -> HeckeElt {
        self -= &rhs;
        self
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.scale(&LPoly::constant(-1))
    }
}

/// Full algebra product, expanding the right factor through canonical words.
impl Mul<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&y, q) in &rhs.terms {
            let prod = y
                .canonical_word()
                .letters()
                .iter()
                .fold(self.clone(), |acc, &s| acc.mul_std_gen_right(s));
            out += &prod.scale(q);
        }
        out
    }
}

impl Mul for HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: HeckeElt) -> HeckeElt {
        &self * &rhs
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, "H")
    }
}

impl KlCombination {
    pub fn terms(&self) -> impl Iterator<Item = (&Elt, &LPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff_of(&self, x: Elt) -> LPoly {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms<I: IntoIterator<Item = (Elt, LPoly)>>(terms: I) -> Self {
        let mut out = KlCombination::default();
        for (x, p) in terms {
            add_into(&mut out.terms, x, &p);
        }
        out
    }

    pub fn to_hecke(&self) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (&x, p) in &self.terms {
            out += &kl_basis(x).scale(p);
        }
        out
    }

    /// Every coordinate is a constant in `N`.
    pub fn is_perverse(&self) -> bool {
        self.terms
            .values()
            .all(|p| p.as_constant().is_some_and(|c| c >= BigInt::zero()))
    }

    /// Every coordinate is a constant integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|p| p.as_constant().is_some())
    }
}

impl fmt::Display for KlCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, "C")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    elt: Elt,
    poly: LPoly,
}

#[derive(Serialize, Deserialize)]
struct JsonForm {
    basis: String,
    terms: Vec<JsonTerm>,
}

fn to_json_form(basis: &str, terms: &BTreeMap<Elt, LPoly>) -> JsonForm {
    let mut ordered: Vec<(usize, Word, Elt)> = terms.keys().map(|&x| (x.length(), x.canonical_word(), x)).collect();
    ordered.sort();
    JsonForm {
        basis: basis.to_string(),
        terms: ordered
            .into_iter()
            .map(|(_, _, x)| JsonTerm {
                elt: x,
                poly: terms[&x].clone(),
            })
            .collect(),
    }
}

fn from_json_form<E: serde::de::Error>(form: JsonForm, basis: &str) -> Result<BTreeMap<Elt, LPoly>, E> {
    if form.basis != basis {
        return Err(E::custom(format!("expected basis {basis:?}, found {:?}", form.basis)));
    }
    let mut terms = BTreeMap::new();
    for t in form.terms {
        add_into(&mut terms, t.elt, &t.poly);
    }
    Ok(terms)
}

impl Serialize for HeckeElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json_form("standard", &self.terms).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = from_json_form(JsonForm::deserialize(d)?, "standard")?;
        Ok(HeckeElt { terms })
    }
}

impl Serialize for KlCombination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json_form("kl", &self.terms).serialize(s)
    }
}

impl<'de> Deserialize<'de> for KlCombination {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = from_json_form(JsonForm::deserialize(d)?, "kl")?;
        Ok(KlCombination { terms })
    }
}

static BAR_MEMO: LazyLock<DashMap<Elt, Arc<HeckeElt>>> = LazyLock::new(DashMap::new);

/// `bar(H_x)`, built from `bar(H_s) = H_s + (v - v^-1)`.
fn bar_standard(x: Elt) -> Arc<HeckeElt> {
    if let Some(hit) = BAR_MEMO.get(&x) {
        return Arc::clone(&hit);
    }
    let value = match x.right_descents().first() {
        None => HeckeElt::unit(Elt::IDENTITY),
        Some(&s) => {
            let prev = bar_standard(x.mul_right_gen(s));
            let mut out = prev.mul_std_gen_right(s);
            out += &prev.scale(&(LPoly::v() - LPoly::monomial(1, -1)));
            out
        }
    };
    let value = Arc::new(value);
    BAR_MEMO.insert(x, Arc::clone(&value));
    value
}

static KL_MEMO: LazyLock<DashMap<Elt, Arc<HeckeElt>>> = LazyLock::new(DashMap::new);

/// The KL basis element `H̲_x`, memoized.
pub fn kl_basis(x: Elt) -> Arc<HeckeElt> {
    if let Some(hit) = KL_MEMO.get(&x) {
        return Arc::clone(&hit);
    }
    let value = match x.right_descents().first() {
        None => HeckeElt::unit(Elt::IDENTITY),
        Some(&s) => kl_basis_via(x, s),
    };
    let value = Arc::new(value);
    KL_MEMO.insert(x, Arc::clone(&value));
    value
}

/// `H̲_x` computed through a chosen right descent `s`:
/// `H̲_{xs} H̲_s - Σ_{y < xs, ys < y} μ(y, xs) H̲_y`.
///
/// Panics if `s` is not a right descent of `x`.
pub fn kl_basis_via(x: Elt, s: Gen) -> HeckeElt {
    assert!(x.has_right_descent(s), "{s} is not a right descent of {x}");
    let xs = x.mul_right_gen(s);
    let lower = kl_basis(xs);
    let mut out = lower.mul_kl_gen_right(s);
    for (&y, p) in lower.terms() {
        if y == xs || !y.has_right_descent(s) {
            continue;
        }
        let mu = p.coeff(1);
        if !mu.is_zero() {
            out -= &kl_basis(y).scale(&LPoly::constant(mu));
        }
    }
    out
}

/// Fills the KL memo for every element of length at most `max_len`,
/// one length level at a time and in parallel within a level.
pub fn warm_kl_cache(max_len: usize) {
    for level in elements_by_length(max_len) {
        level.par_iter().for_each(|&x| {
            kl_basis(x);
        });
    }
}

/// The KL polynomial `h_{y,x}`.
pub fn h(y: Elt, x: Elt) -> LPoly {
    kl_basis(x).coeff_of(y)
}

/// Coefficient of `v` in `h_{y,x}`.
pub fn mu(y: Elt, x: Elt) -> BigInt {
    h(y, x).coeff(1)
}

/// `N_x = Σ_{y <= x} v^{ℓ(x) - ℓ(y)} H_y`.
pub fn n_elt(x: Elt) -> HeckeElt {
    let lx = x.length() as i32;
    let mut out = HeckeElt::zero();
    for y in lower_interval(x) {
        out.add_term(y, &LPoly::monomial(1, lx - y.length() as i32));
    }
    out
}

pub fn to_kl(h: &HeckeElt) -> KlCombination {
    h.to_kl()
}

pub fn is_perverse(k: &KlCombination) -> bool {
    k.is_perverse()
}

/// Whether `h1 - h2` has constant integer KL coordinates, i.e. the two
/// differ by a difference of perverse elements.
pub fn equal_up_to_perverse(h1: &HeckeElt, h2: &HeckeElt) -> bool {
    (h1 - h2).to_kl().is_integral()
}

/// `Σ_w p_w q_w` for the form with `(H_x, H_y) = δ_{x,y}`.
pub fn pairing(h1: &HeckeElt, h2: &HeckeElt) -> LPoly {
    let mut out = LPoly::zero();
    for (x, p) in h1.terms() {
        if let Some(q) = h2.terms.get(x) {
            out += &(p * q);
        }
    }
    out
}

pub fn coeff_of(h: &HeckeElt, y: Elt) -> LPoly {
    h.coeff_of(y)
}

/// Graded rank of `Hom(B_x, B_y)`: `Σ_z h_{z,x} h_{z,y}`.
pub fn hom_rank(x: Elt, y: Elt) -> LPoly {
    pairing(&kl_basis(x), &kl_basis(y))
}

/// Graded rank of the morphisms into `B_y` not factoring through lower
/// terms, for an object with character `ch`.
pub fn hom_rank_quotient(ch: &HeckeElt, y: Elt) -> LPoly {
    ch.coeff_of(y)
}

/// Elements `y` with a nonzero μ-coefficient `μ(y, x)`.
pub fn mu_support(x: Elt) -> BTreeSet<Elt> {
    kl_basis(x)
        .terms()
        .filter(|(&y, p)| y != x && !p.coeff(1).is_zero())
        .map(|(&y, _)| y)
        .collect()
}
