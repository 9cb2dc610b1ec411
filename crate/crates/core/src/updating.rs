//! Revising distributions and credal sets on evidence.
//!
//! [`bayes_condition`] conditions on evidence learned with certainty.
//! [`jeffrey_condition`] handles evidence whose probability shifts to a new
//! value short of certainty. The credal versions apply the rule to every
//! generator; generators on which the rule is undefined are dropped and
//! counted in [`CredalSet::discarded`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Proposition;
use crate::credal::{CredalSet, Distribution};
use crate::error::{Error, Result};
use crate::rational::{format_rational, is_probability, Rational};

/// `P'(H) = P(H ∧ E) / P(E)`. Atoms outside `e` end with weight zero.
pub fn bayes_condition(d: &Distribution, e: &Proposition) -> Result<Distribution> {
    d.space().check_same(e.space())?;
    let masses: Vec<BigInt> = d
        .numerators()
        .iter()
        .enumerate()
        .map(|(i, n)| if e.contains(i) { n.clone() } else { BigInt::zero() })
        .collect();
    if masses.iter().all(Zero::is_zero) {
        return Err(Error::ZeroProbabilityEvidence);
    }
    Distribution::from_masses(d.space(), masses)
}

/// `P'(H) = P(H | E)·q + P(H | ¬E)·(1 − q)` with `q` the new probability of `e`.
///
/// A side whose current probability is zero may only receive zero new
/// weight; otherwise the rule is undefined.
pub fn jeffrey_condition(d: &Distribution, e: &Proposition, new_pe: &Rational) -> Result<Distribution> {
    d.space().check_same(e.space())?;
    if !is_probability(new_pe) {
        return Err(Error::NewProbabilityRange(format_rational(new_pe)));
    }
    let pe = d.probability(e)?;
    let pne = Rational::one() - &pe;
    let new_pne = Rational::one() - new_pe;
    if pe.is_zero() && !new_pe.is_zero() {
        return Err(Error::JeffreyUndefined(format!(
            "evidence has probability 0 but its new probability is {}",
            format_rational(new_pe)
        )));
    }
    if pne.is_zero() && !new_pne.is_zero() {
        return Err(Error::JeffreyUndefined(format!(
            "evidence has probability 1 but its new probability is {}",
            format_rational(new_pe)
        )));
    }
    let in_scale = if pe.is_zero() { Rational::zero() } else { new_pe / &pe };
    let out_scale = if pne.is_zero() { Rational::zero() } else { &new_pne / &pne };
    let weights = d
        .weights()
        .into_iter()
        .enumerate()
        .map(|(i, w)| if e.contains(i) { w * &in_scale } else { w * &out_scale })
        .collect();
    Distribution::new(d.space(), weights)
}

/// Conditions every generator that gives `e` positive probability.
pub fn credal_condition(k: &CredalSet, e: &Proposition) -> Result<CredalSet> {
    k.space().check_same(e.space())?;
    let mut kept = Vec::with_capacity(k.generators().len());
    let mut discarded = 0;
    for g in k.generators() {
        match bayes_condition(g, e) {
            Ok(c) => kept.push(c),
            Err(Error::ZeroProbabilityEvidence) => discarded += 1,
            Err(other) => return Err(other),
        }
    }
    if kept.is_empty() {
        return Err(Error::ZeroOnAllMembers);
    }
    Ok(CredalSet::new(kept)?.with_discarded(discarded))
}

/// Memberwise Jeffrey update; generators where the rule is undefined are
/// dropped.
pub fn credal_jeffrey(k: &CredalSet, e: &Proposition, new_pe: &Rational) -> Result<CredalSet> {
    k.space().check_same(e.space())?;
    if !is_probability(new_pe) {
        return Err(Error::NewProbabilityRange(format_rational(new_pe)));
    }
    let mut kept = Vec::with_capacity(k.generators().len());
    let mut discarded = 0;
    for g in k.generators() {
        match jeffrey_condition(g, e, new_pe) {
            Ok(c) => kept.push(c),
            Err(Error::JeffreyUndefined(_)) => discarded += 1,
            Err(other) => return Err(other),
        }
    }
    if kept.is_empty() {
        return Err(Error::JeffreyUndefinedOnAll);
    }
    Ok(CredalSet::new(kept)?.with_discarded(discarded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_space, WorldSpace};
    use crate::rational::{int, ratio};

    fn abc() -> WorldSpace {
        make_space(&["a", "b", "c"]).unwrap()
    }

    #[test]
    fn two_toss_conditioning() {
        let s = make_space(&["HH", "HT", "TH", "TT"]).unwrap();
        let d = Distribution::uniform(&s);
        let first = s.proposition_from_labels(["HH", "HT"]).unwrap();
        let second = s.proposition_from_labels(["HH", "TH"]).unwrap();
        let post = bayes_condition(&d, &first).unwrap();
        assert_eq!(post.weights(), vec![ratio(1, 2), ratio(1, 2), int(0), int(0)]);
        assert_eq!(post.probability(&second).unwrap(), ratio(1, 2));
        assert_eq!(bayes_condition(&d, &s.full_set()).unwrap(), d);
    }

    #[test]
    fn renormalizes() {
        let s = abc();
        let d = Distribution::parse(&s, &["3/10", "3/10", "4/10"]).unwrap();
        let e = s.proposition([0, 1]).unwrap();
        let post = bayes_condition(&d, &e).unwrap();
        assert_eq!(post.weights(), vec![ratio(1, 2), ratio(1, 2), int(0)]);
        let never = s.empty_set();
        assert_eq!(bayes_condition(&d, &never).unwrap_err(), Error::ZeroProbabilityEvidence);
    }

    #[test]
    fn jeffrey_cases() {
        let s = abc();
        let d = Distribution::parse(&s, &["3/10", "3/10", "4/10"]).unwrap();
        let e = s.proposition([0, 1]).unwrap();
        assert_eq!(jeffrey_condition(&d, &e, &ratio(3, 5)).unwrap(), d);
        assert_eq!(jeffrey_condition(&d, &e, &int(1)).unwrap(), bayes_condition(&d, &e).unwrap());
        let post = jeffrey_condition(&d, &e, &ratio(9, 10)).unwrap();
        assert_eq!(post.probability(&s.atom(0).unwrap()).unwrap(), ratio(9, 20));
        assert_eq!(post.weights(), vec![ratio(9, 20), ratio(9, 20), ratio(1, 10)]);
        assert!(matches!(jeffrey_condition(&d, &e, &int(2)), Err(Error::NewProbabilityRange(_))));
    }

    #[test]
    fn jeffrey_boundaries() {
        let s = abc();
        let d = Distribution::parse(&s, &["1/2", "1/2", "0"]).unwrap();
        let e = s.proposition([0, 1]).unwrap();
        // P(E) = 1: only new_pe = 1 is defined.
        assert_eq!(jeffrey_condition(&d, &e, &int(1)).unwrap(), d);
        assert!(matches!(jeffrey_condition(&d, &e, &ratio(1, 2)), Err(Error::JeffreyUndefined(_))));
        let c = s.atom(2).unwrap();
        assert_eq!(jeffrey_condition(&d, &c, &int(0)).unwrap(), d);
        assert!(matches!(jeffrey_condition(&d, &c, &ratio(1, 3)), Err(Error::JeffreyUndefined(_))));
    }

    fn pair() -> CredalSet {
        let s = abc();
        CredalSet::new(vec![
            Distribution::parse(&s, &["1/2", "3/10", "1/5"]).unwrap(),
            Distribution::parse(&s, &["1/5", "3/10", "1/2"]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn credal_conditioning() {
        let k = pair();
        let s = k.space().clone();
        let e = s.proposition([0, 1]).unwrap();
        let post = credal_condition(&k, &e).unwrap();
        assert_eq!(post.generators()[0].weights(), vec![ratio(5, 8), ratio(3, 8), int(0)]);
        assert_eq!(post.generators()[1].weights(), vec![ratio(2, 5), ratio(3, 5), int(0)]);
        let iv = post.prob_interval(&s.atom(0).unwrap()).unwrap();
        assert_eq!((iv.lower().clone(), iv.upper().clone()), (ratio(2, 5), ratio(5, 8)));
        assert_eq!(post.discarded(), 0);
    }

    #[test]
    fn credal_conditioning_discards_and_fails() {
        let s = abc();
        let k = CredalSet::new(vec![
            Distribution::point_mass(&s, 2).unwrap(),
            Distribution::uniform(&s),
        ])
        .unwrap();
        let e = s.proposition([0]).unwrap();
        let post = credal_condition(&k, &e).unwrap();
        assert_eq!(post.generators().len(), 1);
        assert_eq!(post.discarded(), 1);

        let k = CredalSet::new(vec![
            Distribution::point_mass(&s, 2).unwrap(),
            Distribution::parse(&s, &["0", "1/2", "1/2"]).unwrap(),
        ])
        .unwrap();
        assert_eq!(credal_condition(&k, &e).unwrap_err(), Error::ZeroOnAllMembers);
        assert_eq!(credal_condition(&k, &e).unwrap_err().to_string(), "evidence has zero probability on all members");
    }

    #[test]
    fn credal_jeffrey_cases() {
        let k = pair();
        let s = k.space().clone();
        let e = s.proposition([0, 1]).unwrap();
        let post = credal_jeffrey(&k, &e, &ratio(9, 10)).unwrap();
        // Generator 1: P(E)=4/5 → a,b scaled by 9/8, c by 1/2.
        assert_eq!(post.generators()[0].weights(), vec![ratio(9, 16), ratio(27, 80), ratio(1, 10)]);
        // Generator 2: P(E)=1/2 → a,b scaled by 9/5, c by 1/5.
        assert_eq!(post.generators()[1].weights(), vec![ratio(9, 25), ratio(27, 50), ratio(1, 10)]);
        assert_eq!(credal_jeffrey(&k, &e, &int(1)).unwrap(), credal_condition(&k, &e).unwrap());

        let single = CredalSet::singleton(k.generators()[0].clone());
        let got = credal_jeffrey(&single, &e, &ratio(1, 3)).unwrap();
        assert_eq!(got.generators()[0], jeffrey_condition(&k.generators()[0], &e, &ratio(1, 3)).unwrap());

        let certain = CredalSet::singleton(Distribution::parse(&s, &["1/2", "1/2", "0"]).unwrap());
        assert_eq!(
            credal_jeffrey(&certain, &e, &ratio(1, 2)).unwrap_err(),
            Error::JeffreyUndefinedOnAll
        );
    }

    #[test]
    fn conditioned_mass_stays_inside_evidence() {
        let s = abc();
        let d = Distribution::parse(&s, &["1/6", "1/3", "1/2"]).unwrap();
        let e1 = s.proposition([0, 1]).unwrap();
        let post = bayes_condition(&d, &e1).unwrap();
        let e2 = s.proposition([1, 2]).unwrap();
        let again = bayes_condition(&post, &e2).unwrap();
        assert!(again.support().entails(&e1).unwrap());
        let shifted = jeffrey_condition(&post, &e2, &ratio(1, 2)).unwrap();
        assert!(shifted.support().entails(&e1).unwrap());
    }
}
