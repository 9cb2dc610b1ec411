//! Probabilistic acceptance.
//!
//! A [`Corpus`] pairs a credal evidence base with an acceptance level `t`.
//! A proposition is accepted when its lower probability strictly exceeds
//! `t`, i.e. when every member of the credal set gives it more than `t`.
//! Nothing is cached: acceptance is recomputed from the evidence, so
//! updating the evidence can retract earlier conclusions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Proposition, WorldSpace};
use crate::credal::{CredalSet, Distribution, ProbabilityInterval};
use crate::error::{Error, Result};
use crate::rational::{format_rational, ratio, Rational};

/// Largest space [`Corpus::accepted_set`] will enumerate.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    evidence: CredalSet,
    acceptance_level: Rational,
}

#[derive(Serialize, Deserialize)]
struct CorpusRepr {
    atoms: Vec<String>,
    credal: CredalSet,
    #[serde(with = "crate::rational::serde_str")]
    acceptance_level: Rational,
}

impl Serialize for Corpus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CorpusRepr {
            atoms: self.space().atoms().to_vec(),
            credal: self.evidence.clone(),
            acceptance_level: self.acceptance_level.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Corpus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CorpusRepr::deserialize(d)?;
        let space = WorldSpace::new(repr.atoms).map_err(D::Error::custom)?;
        space.check_same(repr.credal.space()).map_err(D::Error::custom)?;
        Corpus::new(repr.credal, repr.acceptance_level).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StakesContext {
    max_odds: Rational,
}

impl StakesContext {
    pub fn new(max_odds: Rational) -> Result<Self> {
        if max_odds < Rational::one() {
            return Err(Error::InvalidStakes(format_rational(&max_odds)));
        }
        Ok(StakesContext { max_odds })
    }

    pub fn max_odds(&self) -> &Rational {
        &self.max_odds
    }
}

/// `O/(O+1)`: the level beyond which a bet at `O:1` against can never be
/// favourable, so higher probabilities are behaviourally certain.
pub fn threshold_from_stakes(ctx: &StakesContext) -> Rational {
    &ctx.max_odds / (&ctx.max_odds + Rational::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accepted,
    RejectedNegationAccepted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryAnswer {
    pub verdict: Verdict,
    pub interval: ProbabilityInterval,
}

impl fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Accepted => "Accepted",
            Verdict::RejectedNegationAccepted => "Rejected (negation accepted)",
            Verdict::Unknown => "Unknown",
        };
        if self.interval.is_degenerate() {
            write!(f, "{verdict} (probability {})", format_rational(self.interval.lower()))
        } else {
            write!(f, "{verdict} (probability in {})", self.interval)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JointConsistency {
    /// The accepted propositions share the atoms in `core`.
    Consistent { core: Proposition },
    /// Accepted propositions whose intersection is empty. No member can be
    /// dropped without the intersection becoming non-empty.
    JointlyInconsistent { witness: Vec<Proposition> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RefusalReason {
    BeyondSignificance,
    UnfavorableOdds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetAdvice {
    TakeBet,
    RefuseBet(RefusalReason),
}

impl Corpus {
    pub fn new(evidence: CredalSet, acceptance_level: Rational) -> Result<Self> {
        if acceptance_level < ratio(1, 2) || acceptance_level >= Rational::one() {
            return Err(Error::InvalidAcceptanceLevel(format_rational(&acceptance_level)));
        }
        Ok(Corpus { evidence, acceptance_level })
    }

    pub fn space(&self) -> &WorldSpace {
        self.evidence.space()
    }

    pub fn evidence(&self) -> &CredalSet {
        &self.evidence
    }

    pub fn acceptance_level(&self) -> &Rational {
        &self.acceptance_level
    }

    /// Same level, new evidence.
    pub fn with_evidence(&self, evidence: CredalSet) -> Corpus {
        Corpus { evidence, acceptance_level: self.acceptance_level.clone() }
    }

    pub fn is_accepted(&self, a: &Proposition) -> Result<bool> {
        Ok(self.evidence.lower(a)? > self.acceptance_level)
    }

    pub fn query(&self, a: &Proposition) -> Result<QueryAnswer> {
        let interval = self.evidence.prob_interval(a)?;
        let verdict = if *interval.lower() > self.acceptance_level {
            Verdict::Accepted
        } else if *interval.upper() < Rational::one() - &self.acceptance_level {
            Verdict::RejectedNegationAccepted
        } else {
            Verdict::Unknown
        };
        Ok(QueryAnswer { verdict, interval })
    }

    /// Every accepted proposition, in order of the atom bitmask. Only for
    /// spaces of at most [`ENUMERATION_LIMIT`] atoms.
    pub fn accepted_set(&self) -> Result<Vec<Proposition>> {
        let space = self.space();
        let n = space.len();
        if n > ENUMERATION_LIMIT {
            return Err(Error::TooLargeToEnumerate(n, ENUMERATION_LIMIT));
        }
        let subsets = 1usize << n;
        let t_num = self.acceptance_level.numer();
        let t_den = self.acceptance_level.denom();
        let mut accepted = vec![true; subsets];
        let mut mass = vec![BigInt::zero(); subsets];
        for g in self.evidence.generators() {
            let weights = g.numerators();
            let bar = t_num * g.denominator();
            for mask in 1..subsets {
                let low = mask.trailing_zeros() as usize;
                mass[mask] = &mass[mask & (mask - 1)] + &weights[low];
            }
            for (ok, m) in accepted.iter_mut().zip(&mass) {
                if *ok && m * t_den <= bar {
                    *ok = false;
                }
            }
        }
        accepted
            .iter()
            .enumerate()
            .filter(|(_, ok)| **ok)
            .map(|(mask, _)| space.proposition((0..n).filter(|i| mask & (1 << i) != 0)))
            .collect()
    }

    /// Decides whether all accepted propositions share an atom.
    ///
    /// Acceptance is closed upward, so an atom lies in every accepted
    /// proposition iff its complement is not accepted. When no atom
    /// survives, the witness is built by covering the space with sets of
    /// upper probability below `1 − t` (their complements are accepted),
    /// filling each set greedily from the lightest uncovered atoms. This
    /// works for any space size.
    pub fn joint_consistency(&self) -> Result<JointConsistency> {
        let space = self.space();
        let n = space.len();
        let core: Vec<usize> = (0..n)
            .filter(|&i| {
                let co = space.atom(i).expect("in range").not();
                !self.is_accepted(&co).expect("same space")
            })
            .collect();
        if !core.is_empty() {
            return Ok(JointConsistency::Consistent { core: space.proposition(core)? });
        }

        let cap = Rational::one() - &self.acceptance_level;
        let gens = self.evidence.generators();
        // Per generator: mass < cap·den  ⇔  mass·cap_den < cap_num·den.
        let bars: Vec<BigInt> = gens.iter().map(|g| cap.numer() * g.denominator()).collect();
        let fits = |masses: &[BigInt]| masses.iter().zip(&bars).all(|(m, bar)| m * cap.denom() < *bar);

        let mut order: Vec<usize> = (0..n).collect();
        let max_weight = |i: usize| gens.iter().map(|g| g.weight(i)).max().expect("non-empty");
        order.sort_by_cached_key(|&i| max_weight(i));

        let mut covered = vec![false; n];
        let mut remaining = n;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        while remaining > 0 {
            let mut block = Vec::new();
            let mut masses = vec![BigInt::zero(); gens.len()];
            for &i in order.iter().filter(|&&i| !covered[i]) {
                let trial: Vec<BigInt> =
                    masses.iter().zip(gens).map(|(m, g)| m + &g.numerators()[i]).collect();
                if fits(&trial) {
                    masses = trial;
                    block.push(i);
                }
            }
            debug_assert!(!block.is_empty(), "every atom's complement is accepted");
            for &i in &block {
                covered[i] = true;
            }
            remaining -= block.len();
            blocks.push(block);
        }

        // Blocks are disjoint, so dropping any one leaves its atoms in the
        // intersection: the witness is irreducible.
        let witness = blocks
            .iter()
            .map(|block| Ok(space.proposition(block.iter().copied())?.not()))
            .collect::<Result<Vec<_>>>()?;
        Ok(JointConsistency::JointlyInconsistent { witness })
    }

    /// Largest odds `O` with `O/(O+1) ≤ t`, namely `t/(1 − t)`.
    pub fn max_meaningful_odds(&self) -> Rational {
        &self.acceptance_level / (Rational::one() - &self.acceptance_level)
    }

    /// Advice on a bet at `offered_odds:1` on an event (stake 1 to win
    /// `offered_odds`). Refuses outright when the bet needs more confidence
    /// than the acceptance level can support; otherwise takes it only if
    /// every member of the event interval makes it favourable.
    pub fn bet_advice(&self, event_interval: &ProbabilityInterval, offered_odds: &Rational) -> Result<BetAdvice> {
        if *offered_odds <= Rational::zero() {
            return Err(Error::InvalidOdds(format_rational(offered_odds)));
        }
        let required = offered_odds / (offered_odds + Rational::one());
        if required > self.acceptance_level {
            return Ok(BetAdvice::RefuseBet(RefusalReason::BeyondSignificance));
        }
        let price = Rational::one() / (offered_odds + Rational::one());
        if *event_interval.lower() > price {
            Ok(BetAdvice::TakeBet)
        } else {
            Ok(BetAdvice::RefuseBet(RefusalReason::UnfavorableOdds))
        }
    }

    /// Minimal direct inference: an accepted statistical statement that the
    /// frequency lies in `accepted_frequency` gives a single trial that same
    /// probability interval. Reference-class selection is the caller's job.
    pub fn direct_inference(&self, accepted_frequency: &ProbabilityInterval) -> ProbabilityInterval {
        accepted_frequency.clone()
    }
}

pub fn is_accepted(c: &Corpus, a: &Proposition) -> Result<bool> {
    c.is_accepted(a)
}

pub fn query(c: &Corpus, a: &Proposition) -> Result<QueryAnswer> {
    c.query(a)
}

pub fn max_meaningful_odds(c: &Corpus) -> Rational {
    c.max_meaningful_odds()
}

#[derive(Debug, Clone)]
pub struct Lottery {
    pub corpus: Corpus,
    /// `loses[i]`: ticket `i + 1` does not win.
    pub loses: Vec<Proposition>,
    pub wins: Vec<Proposition>,
    pub some_ticket_wins: Proposition,
}

impl Lottery {
    /// Named propositions: `loses_i`, `wins_i` (1-based) and `some_ticket_wins`.
    pub fn named(&self) -> impl Iterator<Item = (String, Proposition)> + '_ {
        let n = self.loses.len();
        (0..n)
            .flat_map(move |i| {
                [
                    (format!("loses_{}", i + 1), self.loses[i].clone()),
                    (format!("wins_{}", i + 1), self.wins[i].clone()),
                ]
            })
            .chain(std::iter::once(("some_ticket_wins".to_string(), self.some_ticket_wins.clone())))
    }
}

/// A fair lottery with `n` tickets: atoms `t1..tn`, uniform evidence.
pub fn build_lottery(n: usize, level: Rational) -> Result<Lottery> {
    if n < 2 {
        return Err(Error::InvalidLottery(n));
    }
    let space = WorldSpace::new((1..=n).map(|i| format!("t{i}")))?;
    let corpus = Corpus::new(CredalSet::singleton(Distribution::uniform(&space)), level)?;
    let wins: Vec<Proposition> = (0..n)
        .map(|i| Ok(space.atom(i)?.named(format!("wins_{}", i + 1))))
        .collect::<Result<_>>()?;
    let loses = wins
        .iter()
        .enumerate()
        .map(|(i, w)| w.not().named(format!("loses_{}", i + 1)))
        .collect();
    let some_ticket_wins = space.full_set().named("some_ticket_wins");
    Ok(Lottery { corpus, loses, wins, some_ticket_wins })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_space;
    use crate::rational::int;

    #[test]
    fn thresholds() {
        let t = |o: i64| threshold_from_stakes(&StakesContext::new(int(o)).unwrap());
        assert_eq!(t(10), ratio(10, 11));
        assert_eq!(t(1), ratio(1, 2));
        assert_eq!(t(99), ratio(99, 100));
        assert!(StakesContext::new(ratio(1, 2)).is_err());
    }

    #[test]
    fn corpus_level_bounds() {
        let k = CredalSet::singleton(Distribution::uniform(&make_space(&["a", "b"]).unwrap()));
        assert!(Corpus::new(k.clone(), ratio(1, 2)).is_ok());
        assert!(Corpus::new(k.clone(), ratio(49, 100)).is_err());
        assert!(Corpus::new(k, int(1)).is_err());
    }

    #[test]
    fn eleven_ticket_lottery() {
        let lot = build_lottery(11, ratio(9, 10)).unwrap();
        let c = &lot.corpus;
        assert!(c.is_accepted(&lot.loses[2]).unwrap());
        let both = lot.loses[2].and(&lot.loses[3]).unwrap();
        assert!(!c.is_accepted(&both).unwrap());
        assert!(c.is_accepted(&c.space().full_set()).unwrap());

        let q = c.query(&lot.wins[2]).unwrap();
        assert_eq!(q.verdict, Verdict::RejectedNegationAccepted);
        assert_eq!(q.interval, ProbabilityInterval::point(ratio(1, 11)).unwrap());
        let q = c.query(&lot.wins[2].or(&lot.wins[3]).unwrap()).unwrap();
        assert_eq!(q.verdict, Verdict::Unknown);
        assert_eq!(q.interval, ProbabilityInterval::point(ratio(2, 11)).unwrap());
        assert_eq!(q.to_string(), "Unknown (probability 2/11)");
        let q = c.query(&lot.some_ticket_wins).unwrap();
        assert_eq!(q.verdict, Verdict::Accepted);

        let accepted = c.accepted_set().unwrap();
        assert_eq!(accepted.len(), 12);
        assert!(accepted.iter().all(|a| a.count() >= 10));

        match c.joint_consistency().unwrap() {
            JointConsistency::JointlyInconsistent { witness } => {
                assert_eq!(witness.len(), 11);
                assert!(witness.iter().all(|w| c.is_accepted(w).unwrap()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_ticket_lottery_at_even_money() {
        let lot = build_lottery(2, ratio(1, 2)).unwrap();
        assert!(!lot.corpus.is_accepted(&lot.loses[0]).unwrap());
        assert!(matches!(build_lottery(1, ratio(1, 2)), Err(Error::InvalidLottery(1))));
        assert!(build_lottery(5, ratio(1, 3)).is_err());
    }

    #[test]
    fn point_mass_corpus() {
        let s = make_space(&["a", "b", "c"]).unwrap();
        let c = Corpus::new(CredalSet::singleton(Distribution::point_mass(&s, 0).unwrap()), ratio(95, 100))
            .unwrap();
        let accepted = c.accepted_set().unwrap();
        assert_eq!(accepted.len(), 4);
        assert!(accepted.iter().all(|a| a.contains(0)));
        assert_eq!(
            c.joint_consistency().unwrap(),
            JointConsistency::Consistent { core: s.atom(0).unwrap() }
        );
    }

    #[test]
    fn diffuse_evidence_accepts_only_tautology() {
        let s = make_space(&["a", "b", "c"]).unwrap();
        let c = Corpus::new(CredalSet::singleton(Distribution::uniform(&s)), ratio(9, 10)).unwrap();
        assert_eq!(c.accepted_set().unwrap(), vec![s.full_set()]);
        assert!(matches!(c.joint_consistency().unwrap(), JointConsistency::Consistent { .. }));
    }

    #[test]
    fn enumeration_guard() {
        let lot = build_lottery(21, ratio(9, 10)).unwrap();
        assert_eq!(lot.corpus.accepted_set().unwrap_err(), Error::TooLargeToEnumerate(21, 20));
    }

    #[test]
    fn smaller_witness_than_cosingletons() {
        let s = make_space(&["a", "b", "c", "d"]).unwrap();
        let d = Distribution::parse(&s, &["3/10", "3/10", "1/5", "1/5"]).unwrap();
        let c = Corpus::new(CredalSet::singleton(d), ratio(1, 2)).unwrap();
        match c.joint_consistency().unwrap() {
            JointConsistency::JointlyInconsistent { witness } => {
                assert!(witness.len() < 4, "{witness:?}");
                let mut meet = s.full_set();
                for w in &witness {
                    assert!(c.is_accepted(w).unwrap());
                    meet = meet.and(w).unwrap();
                }
                assert!(meet.is_contradiction());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odds_and_bets() {
        let s = make_space(&["x", "y"]).unwrap();
        let corpus = |t: Rational| Corpus::new(CredalSet::singleton(Distribution::uniform(&s)), t).unwrap();
        assert_eq!(corpus(ratio(99, 100)).max_meaningful_odds(), int(99));
        assert_eq!(corpus(ratio(1, 2)).max_meaningful_odds(), int(1));
        assert_eq!(corpus(ratio(10, 11)).max_meaningful_odds(), int(10));

        let c = corpus(ratio(99, 100));
        let vacuous = ProbabilityInterval::vacuous();
        assert_eq!(
            c.bet_advice(&vacuous, &int(3)).unwrap(),
            BetAdvice::RefuseBet(RefusalReason::UnfavorableOdds)
        );
        assert!(c.bet_advice(&vacuous, &int(0)).is_err());
    }

    #[test]
    fn direct_inference_passes_interval_through() {
        let s = make_space(&["h", "t"]).unwrap();
        let c = Corpus::new(CredalSet::singleton(Distribution::uniform(&s)), ratio(99, 100)).unwrap();
        for iv in [
            ProbabilityInterval::new(ratio(12, 25), ratio(13, 25)).unwrap(),
            ProbabilityInterval::point(ratio(1, 2)).unwrap(),
            ProbabilityInterval::vacuous(),
        ] {
            assert_eq!(c.direct_inference(&iv), iv);
        }
    }

    #[test]
    fn json_shape() {
        let lot = build_lottery(2, ratio(3, 4)).unwrap();
        let json = serde_json::to_string(&lot.corpus).unwrap();
        assert_eq!(
            json,
            r#"{"atoms":["t1","t2"],"credal":{"atoms":["t1","t2"],"points":[["1/2","1/2"]]},"acceptance_level":"3/4"}"#
        );
        let back: Corpus = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lot.corpus);
        let bad = json.replace("3/4", "1/3");
        assert!(serde_json::from_str::<Corpus>(&bad).is_err());
    }
}
