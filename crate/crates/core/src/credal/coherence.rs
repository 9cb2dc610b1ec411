//! Dutch-book coherence of betting quotients.
//!
//! Quotients are coherent iff some distribution reproduces all of them.
//! That is a linear feasibility question over atom weights, solved exactly.
//! Atoms with identical membership across every quoted proposition are
//! interchangeable, so the programs run over those membership classes.
//!
//! When no distribution exists, a second program finds stakes in `[-1, 1]`
//! that maximise the bettor's guaranteed loss. Its optimum is positive
//! exactly when the feasibility program is infeasible (Farkas' lemma).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::simplex::{LinearProgram, LpOutcome};
use super::{BettingQuotients, Distribution};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coherence {
    Coherent { witness: Distribution },
    /// `stakes[i] > 0` buys that many unit bets on entry `i` at its quotient;
    /// negative stakes sell. Every atom pays at most `-guaranteed_loss`.
    DutchBook { stakes: Vec<Rational>, guaranteed_loss: Rational },
}

impl Coherence {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Coherence::Coherent { .. })
    }
}

/// Net payoff to the bettor in each atom of the quotients' space.
pub fn net_payoff(q: &BettingQuotients, stakes: &[Rational]) -> Result<Vec<Rational>> {
    if stakes.len() != q.entries.len() {
        return Err(Error::InvalidArgument(format!(
            "{} stakes for {} quotients",
            stakes.len(),
            q.entries.len()
        )));
    }
    let n = q.space.len();
    let cost: Rational = q.entries.iter().zip(stakes).map(|((_, p), s)| p * s).sum();
    let mut payoff = vec![-cost; n];
    for ((a, _), s) in q.entries.iter().zip(stakes) {
        for atom in a.members() {
            payoff[atom] += s;
        }
    }
    Ok(payoff)
}

struct Classes {
    /// Membership signature per class, one flag per entry.
    signatures: Vec<Vec<bool>>,
    atoms: Vec<Vec<usize>>,
}

fn membership_classes(q: &BettingQuotients) -> Classes {
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut signatures = Vec::new();
    let mut atoms: Vec<Vec<usize>> = Vec::new();
    for atom in 0..q.space.len() {
        let sig: Vec<bool> = q.entries.iter().map(|(a, _)| a.contains(atom)).collect();
        let slot = *index.entry(sig.clone()).or_insert_with(|| {
            signatures.push(sig);
            atoms.push(Vec::new());
            atoms.len() - 1
        });
        atoms[slot].push(atom);
    }
    Classes { signatures, atoms }
}

fn bool_q(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

pub fn coherence_check(q: &BettingQuotients) -> Result<Coherence> {
    if q.entries.is_empty() {
        return Err(Error::NoQuotients);
    }
    let classes = membership_classes(q);
    let k = q.entries.len();
    let m = classes.signatures.len();

    let mut a = vec![vec![Rational::one(); m]];
    let mut b = vec![Rational::one()];
    for (i, (_, quote)) in q.entries.iter().enumerate() {
        a.push(classes.signatures.iter().map(|sig| bool_q(sig[i])).collect());
        b.push(quote.clone());
    }
    let feasibility = LinearProgram { a, b, c: vec![Rational::zero(); m] };
    match feasibility.solve() {
        LpOutcome::Optimal { x, .. } => {
            let witness = spread_over_classes(q, &classes, &x)?;
            return Ok(Coherence::Coherent { witness });
        }
        LpOutcome::Infeasible { .. } => {}
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }

    // Columns: s⁺ (k), s⁻ (k), λ, class slacks (m), box slacks for s⁺ and s⁻ (2k).
    // Class rows: Σᵢ (s⁺ᵢ − s⁻ᵢ)(sigᵢ − qᵢ) + λ + slack = 0, i.e. λ ≤ loss in that class.
    let cols = 4 * k + 1 + m;
    let lambda = 2 * k;
    let mut a = Vec::with_capacity(m + 2 * k);
    let mut b = Vec::with_capacity(m + 2 * k);
    for (c, sig) in classes.signatures.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols];
        for (i, (_, quote)) in q.entries.iter().enumerate() {
            let coef = bool_q(sig[i]) - quote;
            row[k + i] = -coef.clone();
            row[i] = coef;
        }
        row[lambda] = Rational::one();
        row[lambda + 1 + c] = Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    for j in 0..2 * k {
        let mut row = vec![Rational::zero(); cols];
        row[j] = Rational::one();
        row[lambda + 1 + m + j] = Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    let mut c = vec![Rational::zero(); cols];
    c[lambda] = -Rational::one();
    let best_book = LinearProgram { a, b, c };
    let x = match best_book.solve() {
        LpOutcome::Optimal { x, .. } => x,
        other => unreachable!("stake program is bounded and feasible: {other:?}"),
    };
    let stakes: Vec<Rational> = (0..k).map(|i| &x[i] - &x[k + i]).collect();
    let payoff = net_payoff(q, &stakes)?;
    let worst = payoff.iter().max().expect("non-empty space").clone();
    let guaranteed_loss = -worst;
    debug_assert!(guaranteed_loss.is_positive());
    Ok(Coherence::DutchBook { stakes, guaranteed_loss })
}

/// Shares each class weight evenly among the atoms of that class.
fn spread_over_classes(
    q: &BettingQuotients,
    classes: &Classes,
    class_weights: &[Rational],
) -> Result<Distribution> {
    let mut weights = vec![Rational::zero(); q.space.len()];
    for (w, atoms) in class_weights.iter().zip(&classes.atoms) {
        let share = w / Rational::from_integer(BigInt::from(atoms.len()));
        for &atom in atoms {
            weights[atom] = share.clone();
        }
    }
    Distribution::new(&q.space, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_space, WorldSpace};
    use crate::rational::{int, ratio};

    fn replay_loss(q: &BettingQuotients, stakes: &[Rational]) -> Rational {
        // Independent recomputation: walk each atom and settle every bet.
        let mut worst: Option<Rational> = None;
        for atom in 0..q.space().len() {
            let mut net = Rational::zero();
            for ((a, price), s) in q.entries().iter().zip(stakes) {
                let won = if a.contains(atom) { int(1) } else { int(0) };
                net += s * (won - price);
            }
            worst = Some(match worst {
                Some(w) if w >= net => w,
                _ => net,
            });
        }
        -worst.unwrap()
    }

    #[test]
    fn over_priced_complements() {
        let s = make_space(&["a", "b"]).unwrap();
        let a = s.atom(0).unwrap();
        let q = BettingQuotients::new(&s, vec![(a.clone(), ratio(3, 5)), (a.not(), ratio(3, 5))])
            .unwrap();
        match coherence_check(&q).unwrap() {
            Coherence::DutchBook { stakes, guaranteed_loss } => {
                assert_eq!(stakes, vec![int(1), int(1)]);
                assert_eq!(guaranteed_loss, ratio(1, 5));
                assert_eq!(replay_loss(&q, &stakes), ratio(1, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn under_priced_complements_are_sold() {
        let s = make_space(&["a", "b", "c"]).unwrap();
        let a = s.proposition([0]).unwrap();
        let q = BettingQuotients::new(&s, vec![(a.clone(), ratio(1, 5)), (a.not(), ratio(1, 2))])
            .unwrap();
        match coherence_check(&q).unwrap() {
            Coherence::DutchBook { stakes, guaranteed_loss } => {
                assert!(stakes.iter().all(|s| s.is_negative()));
                assert_eq!(guaranteed_loss, ratio(3, 10));
                assert_eq!(replay_loss(&q, &stakes), guaranteed_loss);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_quotient_always_coherent() {
        let s = make_space(&["a", "b", "c"]).unwrap();
        let a = s.proposition([0, 2]).unwrap();
        for p in [int(0), ratio(1, 3), ratio(7, 9), int(1)] {
            let q = BettingQuotients::new(&s, vec![(a.clone(), p.clone())]).unwrap();
            match coherence_check(&q).unwrap() {
                Coherence::Coherent { witness } => assert_eq!(witness.probability(&a).unwrap(), p),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn tautology_and_contradiction_quotes() {
        let s = make_space(&["a", "b"]).unwrap();
        let q = BettingQuotients::new(&s, vec![(s.full_set(), ratio(9, 10))]).unwrap();
        match coherence_check(&q).unwrap() {
            Coherence::DutchBook { guaranteed_loss, stakes } => {
                assert_eq!(stakes, vec![int(-1)]);
                assert_eq!(guaranteed_loss, ratio(1, 10));
            }
            other => panic!("{other:?}"),
        }
        let q = BettingQuotients::new(&s, vec![(s.empty_set(), ratio(1, 10))]).unwrap();
        assert!(!coherence_check(&q).unwrap().is_coherent());
    }

    #[test]
    fn superadditive_triple() {
        // P(a) + P(b) = 1/2 + 1/2 but P(a ∨ b) quoted at 3/4.
        let s = WorldSpace::new(["a", "b", "c"]).unwrap();
        let a = s.proposition([0]).unwrap();
        let b = s.proposition([1]).unwrap();
        let ab = a.or(&b).unwrap();
        let q = BettingQuotients::new(
            &s,
            vec![(a, ratio(1, 2)), (b, ratio(1, 2)), (ab, ratio(3, 4))],
        )
        .unwrap();
        match coherence_check(&q).unwrap() {
            Coherence::DutchBook { stakes, guaranteed_loss } => {
                assert!(guaranteed_loss.is_positive());
                assert_eq!(replay_loss(&q, &stakes), guaranteed_loss);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_quotients_rejected() {
        let s = make_space(&["a"]).unwrap();
        let q = BettingQuotients::new(&s, vec![]).unwrap();
        assert_eq!(coherence_check(&q).unwrap_err(), Error::NoQuotients);
    }

    #[test]
    fn witness_spreads_within_classes() {
        let s = make_space(&["a", "b", "c", "d"]).unwrap();
        let ab = s.proposition([0, 1]).unwrap();
        let q = BettingQuotients::new(&s, vec![(ab, ratio(1, 3))]).unwrap();
        match coherence_check(&q).unwrap() {
            Coherence::Coherent { witness } => assert_eq!(
                witness.weights(),
                vec![ratio(1, 6), ratio(1, 6), ratio(1, 3), ratio(1, 3)]
            ),
            other => panic!("{other:?}"),
        }
    }
}
