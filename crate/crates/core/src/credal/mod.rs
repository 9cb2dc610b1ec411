//! Classical probability functions over a finite space, convex sets of them,
//! and the queries they support: interval probabilities, expected-utility
//! intervals and betting-quotient coherence.
//!
//! All arithmetic is exact. A [`Distribution`] keeps its weights as integer
//! numerators over one shared denominator, so summing a proposition's mass
//! is plain big-integer addition.

mod coherence;
pub mod simplex;

pub use coherence::{coherence_check, net_payoff, Coherence};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Proposition, WorldSpace};
use crate::error::{Error, Result};
use crate::rational::{format_rational, is_probability, parse_rational, Rational};

#[derive(Clone)]
pub struct Distribution {
    space: WorldSpace,
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl Distribution {
    pub fn new(space: &WorldSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::WeightCount { expected: space.len(), got: weights.len() });
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::NegativeWeight(format_rational(w)));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::WeightSum(format_rational(&total)));
        }
        let denominator = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numerators = weights
            .iter()
            .map(|w| w.numer() * (&denominator / w.denom()))
            .collect();
        Ok(Distribution { space: space.clone(), numerators, denominator })
    }

    /// Builds from nonnegative integer masses with a positive total.
    pub fn from_masses(space: &WorldSpace, masses: Vec<BigInt>) -> Result<Self> {
        if masses.len() != space.len() {
            return Err(Error::WeightCount { expected: space.len(), got: masses.len() });
        }
        if let Some(m) = masses.iter().find(|m| m.is_negative()) {
            return Err(Error::NegativeWeight(m.to_string()));
        }
        let total: BigInt = masses.iter().sum();
        if total.is_zero() {
            return Err(Error::WeightSum("0".into()));
        }
        let g = masses.iter().fold(total.clone(), |acc, m| acc.gcd(m));
        Ok(Distribution {
            space: space.clone(),
            numerators: masses.into_iter().map(|m| m / &g).collect(),
            denominator: total / g,
        })
    }

    pub fn parse(space: &WorldSpace, weights: &[&str]) -> Result<Self> {
        let w = weights.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Distribution::new(space, w)
    }

    pub fn uniform(space: &WorldSpace) -> Self {
        Distribution {
            space: space.clone(),
            numerators: vec![BigInt::one(); space.len()],
            denominator: BigInt::from(space.len()),
        }
    }

    pub fn point_mass(space: &WorldSpace, atom: usize) -> Result<Self> {
        if atom >= space.len() {
            return Err(Error::AtomOutOfRange { index: atom, len: space.len() });
        }
        let mut numerators = vec![BigInt::zero(); space.len()];
        numerators[atom] = BigInt::one();
        Ok(Distribution { space: space.clone(), numerators, denominator: BigInt::one() })
    }

    /// Convex combination `Σ cᵢ·dᵢ`. Coefficients must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(Rational, &Distribution)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or(Error::EmptyCredalSet)?;
        let space = first.space.clone();
        let mut weights = vec![Rational::zero(); space.len()];
        for (c, d) in parts {
            space.check_same(&d.space)?;
            for (i, w) in weights.iter_mut().enumerate() {
                *w += c * d.weight(i);
            }
        }
        Distribution::new(&space, weights)
    }

    pub fn space(&self) -> &WorldSpace {
        &self.space
    }

    pub fn weight(&self, atom: usize) -> Rational {
        BigRational::new(self.numerators[atom].clone(), self.denominator.clone())
    }

    pub fn weights(&self) -> Vec<Rational> {
        (0..self.numerators.len()).map(|i| self.weight(i)).collect()
    }

    /// Integer masses over the shared denominator.
    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub(crate) fn mass_of(&self, a: &Proposition) -> BigInt {
        a.members().map(|i| &self.numerators[i]).sum()
    }

    pub fn probability(&self, a: &Proposition) -> Result<Rational> {
        self.space.check_same(a.space())?;
        Ok(BigRational::new(self.mass_of(a), self.denominator.clone()))
    }

    /// `P(h | e)`; fails when `P(e) = 0`.
    pub fn conditional(&self, h: &Proposition, e: &Proposition) -> Result<Rational> {
        let he = h.and(e)?;
        self.space.check_same(e.space())?;
        let pe = self.mass_of(e);
        if pe.is_zero() {
            return Err(Error::ZeroProbabilityEvidence);
        }
        Ok(BigRational::new(self.mass_of(&he), pe))
    }

    pub fn expectation(&self, u: &UtilityFunction) -> Result<Rational> {
        self.space.check_same(&u.space)?;
        let total: Rational = self
            .numerators
            .iter()
            .zip(&u.values)
            .filter(|(n, _)| !n.is_zero())
            .map(|(n, v)| v * n)
            .sum();
        Ok(total / BigRational::from_integer(self.denominator.clone()))
    }

    pub fn support(&self) -> Proposition {
        self.space
            .proposition(self.numerators.iter().enumerate().filter(|(_, n)| !n.is_zero()).map(|(i, _)| i))
            .expect("indices in range")
    }
}

impl PartialEq for Distribution {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.denominator == other.denominator
            && self.numerators == other.numerators
    }
}

impl Eq for Distribution {}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights().iter().take(16).map(format_rational).collect();
        let more = if self.numerators.len() > 16 { ", ..." } else { "" };
        write!(f, "Distribution({}{more})", w.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct DistributionRepr {
    atoms: Vec<String>,
    weights: Vec<String>,
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionRepr {
            atoms: self.space.atoms().to_vec(),
            weights: self.weights().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DistributionRepr::deserialize(d)?;
        let space = WorldSpace::new(repr.atoms).map_err(D::Error::custom)?;
        let w: Vec<&str> = repr.weights.iter().map(String::as_str).collect();
        Distribution::parse(&space, &w).map_err(D::Error::custom)
    }
}

/// A closed interval of probabilities, `0 ≤ lower ≤ upper ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbabilityInterval {
    #[serde(with = "crate::rational::serde_str")]
    lower: Rational,
    #[serde(with = "crate::rational::serde_str")]
    upper: Rational,
}

impl ProbabilityInterval {
    pub fn new(lower: Rational, upper: Rational) -> Result<Self> {
        if !is_probability(&lower) || !is_probability(&upper) || lower > upper {
            return Err(Error::InvalidInterval {
                lower: format_rational(&lower),
                upper: format_rational(&upper),
            });
        }
        Ok(ProbabilityInterval { lower, upper })
    }

    pub fn point(p: Rational) -> Result<Self> {
        ProbabilityInterval::new(p.clone(), p)
    }

    pub fn vacuous() -> Self {
        ProbabilityInterval { lower: Rational::zero(), upper: Rational::one() }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn contains(&self, p: &Rational) -> bool {
        self.lower <= *p && *p <= self.upper
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }
}

impl fmt::Display for ProbabilityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lower), format_rational(&self.upper))
    }
}

/// Range of expected utility over a credal set. Unlike a probability
/// interval its endpoints are unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationInterval {
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub upper: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityFunction {
    space: WorldSpace,
    values: Vec<Rational>,
}

impl UtilityFunction {
    pub fn new(space: &WorldSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::WeightCount { expected: space.len(), got: values.len() });
        }
        Ok(UtilityFunction { space: space.clone(), values })
    }

    pub fn value(&self, atom: usize) -> &Rational {
        &self.values[atom]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettingQuotients {
    space: WorldSpace,
    entries: Vec<(Proposition, Rational)>,
}

impl BettingQuotients {
    pub fn new(space: &WorldSpace, entries: Vec<(Proposition, Rational)>) -> Result<Self> {
        for (a, q) in &entries {
            space.check_same(a.space())?;
            if !is_probability(q) {
                return Err(Error::QuotientRange(format_rational(q)));
            }
        }
        Ok(BettingQuotients { space: space.clone(), entries })
    }

    /// Quotients an agent with distribution `d` would post on each proposition.
    pub fn from_distribution(d: &Distribution, props: &[Proposition]) -> Result<Self> {
        let entries = props
            .iter()
            .map(|a| Ok((a.clone(), d.probability(a)?)))
            .collect::<Result<Vec<_>>>()?;
        BettingQuotients::new(d.space(), entries)
    }

    pub fn space(&self) -> &WorldSpace {
        &self.space
    }

    pub fn entries(&self) -> &[(Proposition, Rational)] {
        &self.entries
    }
}

/// Finitely generated convex set of distributions. The generators stand
/// for their convex hull; duplicates are allowed and change nothing.
#[derive(Clone)]
pub struct CredalSet {
    space: WorldSpace,
    generators: Vec<Distribution>,
    discarded: usize,
}

impl CredalSet {
    pub fn new(generators: Vec<Distribution>) -> Result<Self> {
        let space = generators.first().ok_or(Error::EmptyCredalSet)?.space.clone();
        for g in &generators {
            space.check_same(&g.space)?;
        }
        Ok(CredalSet { space, generators, discarded: 0 })
    }

    pub fn singleton(d: Distribution) -> Self {
        CredalSet { space: d.space.clone(), generators: vec![d], discarded: 0 }
    }

    pub(crate) fn with_discarded(mut self, discarded: usize) -> Self {
        self.discarded = discarded;
        self
    }

    pub fn space(&self) -> &WorldSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Distribution] {
        &self.generators
    }

    /// Generators dropped by the update that produced this set.
    pub fn discarded(&self) -> usize {
        self.discarded
    }

    /// Lower and upper probability of `a`. Probability is linear in the
    /// distribution, so the extremes over the hull sit at generators.
    pub fn prob_interval(&self, a: &Proposition) -> Result<ProbabilityInterval> {
        self.space.check_same(a.space())?;
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for g in &self.generators {
            let p = g.probability(a)?;
            if lower.as_ref().is_none_or(|l| p < *l) {
                lower = Some(p.clone());
            }
            if upper.as_ref().is_none_or(|u| p > *u) {
                upper = Some(p);
            }
        }
        ProbabilityInterval::new(lower.expect("non-empty"), upper.expect("non-empty"))
    }

    pub fn lower(&self, a: &Proposition) -> Result<Rational> {
        self.space.check_same(a.space())?;
        let best = self
            .generators
            .iter()
            .map(|g| BigRational::new(g.mass_of(a), g.denominator.clone()))
            .min()
            .expect("non-empty");
        Ok(best)
    }

    pub fn expected_utility_interval(&self, u: &UtilityFunction) -> Result<ExpectationInterval> {
        let values = self
            .generators
            .iter()
            .map(|g| g.expectation(u))
            .collect::<Result<Vec<_>>>()?;
        let lower = values.iter().min().expect("non-empty").clone();
        let upper = values.iter().max().expect("non-empty").clone();
        Ok(ExpectationInterval { lower, upper })
    }
}

impl PartialEq for CredalSet {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.generators == other.generators
    }
}

impl Eq for CredalSet {}

impl fmt::Debug for CredalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CredalSet")
            .field("generators", &self.generators)
            .field("discarded", &self.discarded)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct CredalRepr {
    atoms: Vec<String>,
    points: Vec<Vec<String>>,
}

impl Serialize for CredalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CredalRepr {
            atoms: self.space.atoms().to_vec(),
            points: self
                .generators
                .iter()
                .map(|g| g.weights().iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CredalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CredalRepr::deserialize(d)?;
        let space = WorldSpace::new(repr.atoms).map_err(D::Error::custom)?;
        let generators = repr
            .points
            .iter()
            .map(|p| {
                let w: Vec<&str> = p.iter().map(String::as_str).collect();
                Distribution::parse(&space, &w)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CredalSet::new(generators).map_err(D::Error::custom)
    }
}

pub fn probability(d: &Distribution, a: &Proposition) -> Result<Rational> {
    d.probability(a)
}

pub fn conditional(d: &Distribution, h: &Proposition, e: &Proposition) -> Result<Rational> {
    d.conditional(h, e)
}

pub fn prob_interval(k: &CredalSet, a: &Proposition) -> Result<ProbabilityInterval> {
    k.prob_interval(a)
}

pub fn expected_utility_interval(k: &CredalSet, u: &UtilityFunction) -> Result<ExpectationInterval> {
    k.expected_utility_interval(u)
}
