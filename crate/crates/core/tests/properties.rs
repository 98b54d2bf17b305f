use proptest::prelude::*;

use kla2_core::coxeter::{
    braid_reduced_criterion, bruhat_leq, coatoms, color_perm, elements_by_length, elements_up_to, from_word,
    is_reduced, Elt, Gen, Perm3, Word,
};
use kla2_core::hecke::{kl_basis, HeckeElt};
use kla2_core::leaves::{for_each_leaf, stroll, verify_rank_recursion};

fn arb_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1i64..=3, 0..=max).prop_map(Word::from_labels)
}

fn arb_perm() -> impl Strategy<Value = Perm3> {
    (0usize..6).prop_map(|i| Perm3::all()[i])
}

fn arb_elt(max: usize) -> impl Strategy<Value = Elt> {
    arb_word(max).prop_map(|w| from_word(&w))
}

/// Words over {1,2,3} of length `len` without adjacent repeats.
fn alternating_words(len: usize) -> Vec<Word> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = w.last().copied();
                (1..=3).filter(move |&c| last != Some(c)).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::from_labels).collect()
}

#[test]
fn braid_criterion_is_reducedness() {
    for len in 0..=14 {
        for w in alternating_words(len) {
            assert_eq!(braid_reduced_criterion(&w).unwrap(), is_reduced(&w), "{w}");
        }
    }
}

#[test]
fn at_most_six_coatoms() {
    for x in elements_up_to(14) {
        let c = coatoms(x);
        assert!(c.len() <= 6, "{x}: {}", c.len());
        assert!(c.iter().all(|&y| bruhat_leq(y, x) && y.length() + 1 == x.length()));
    }
}

#[test]
fn third_generator_extends_st_endings() {
    for x in elements_up_to(12) {
        for s in Gen::all() {
            for t in Gen::all() {
                if s == t {
                    continue;
                }
                // A reduced word ending in s t.
                let ends_st = x.has_right_descent(t) && x.mul_right_gen(t).has_right_descent(s);
                if ends_st {
                    let u = Gen::third(s, t);
                    assert_eq!(x.mul_right_gen(u).length(), x.length() + 1, "{x} ends {s}{t}");
                }
            }
        }
    }
}

#[test]
fn levels_grow_by_three() {
    let levels = elements_by_length(14);
    for (len, level) in levels.iter().enumerate().skip(1) {
        assert_eq!(level.len(), 3 * len);
    }
}

proptest! {
    #[test]
    fn word_length_bound(w in arb_word(16)) {
        let x = from_word(&w);
        prop_assert!(x.length() <= w.len());
        prop_assert_eq!(x.length() == w.len(), is_reduced(&w));
    }

    #[test]
    fn canonical_word_round_trip(x in arb_elt(18)) {
        let word = x.canonical_word();
        prop_assert_eq!(word.len(), x.length());
        prop_assert_eq!(from_word(&word), x);
        let text = x.to_string();
        prop_assert_eq!(text.parse::<Elt>().unwrap(), x);
    }

    #[test]
    fn inverse_and_associativity(a in arb_elt(10), b in arb_elt(10), c in arb_elt(10)) {
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert!((a * a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().length(), a.length());
    }

    #[test]
    fn color_action_is_an_automorphism(p in arb_perm(), a in arb_elt(9), b in arb_elt(9)) {
        prop_assert_eq!(color_perm(p, a).length(), a.length());
        prop_assert_eq!(color_perm(p, a * b), color_perm(p, a) * color_perm(p, b));
        prop_assert_eq!(bruhat_leq(a, b), bruhat_leq(color_perm(p, a), color_perm(p, b)));
        prop_assert_eq!(color_perm(p.inverse(), color_perm(p, a)), a);
    }

    #[test]
    fn color_action_on_kl_basis(p in arb_perm(), x in arb_elt(8)) {
        let image = kl_basis(color_perm(p, x));
        let mut moved = HeckeElt::zero();
        for (&y, c) in kl_basis(x).terms() {
            moved.add_term(color_perm(p, y), c);
        }
        prop_assert_eq!(&*image, &moved);
    }

    #[test]
    fn content_is_multiplicative(a in arb_elt(5), b in arb_elt(5)) {
        let (ca, cb) = (kl_basis(a), kl_basis(b));
        prop_assert_eq!((&*ca * &*cb).content(), ca.content() * cb.content());
    }

    #[test]
    fn bar_is_multiplicative(a in arb_elt(4), b in arb_elt(4)) {
        let (ha, hb) = (HeckeElt::unit(a), HeckeElt::unit(b));
        prop_assert_eq!((&ha * &hb).bar_involution(), &ha.bar_involution() * &hb.bar_involution());
    }

    #[test]
    fn rank_recursion(x in arb_elt(9)) {
        let report = verify_rank_recursion(x);
        prop_assert!(report.pass, "{:?}", report.mismatches());
    }

    #[test]
    fn leaf_defects_are_bounded(w in arb_word(10)) {
        let n = w.len() as i32;
        let mut count = 0usize;
        for_each_leaf(&w, 20, |leaf| {
            count += 1;
            assert!((-n..=n).contains(&leaf.defect));
            let again = stroll(&w, &leaf.bits).unwrap();
            assert_eq!(&again, leaf);
        }).unwrap();
        prop_assert_eq!(count, 1usize << w.len());
    }
}
