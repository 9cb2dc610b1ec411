//! Python bindings for `credence`.
//!
//! Rationals cross the boundary as `fractions.Fraction`; anything whose
//! `str()` parses as a rational (ints, `Fraction`, decimal strings) is
//! accepted as input.

use std::collections::BTreeMap;

use credence::algebra::{parse_formula, Proposition, WorldSpace};
use credence::corpus::{self, BetAdvice, JointConsistency, Verdict};
use credence::credal::{self, BettingQuotients, Coherence, CredalSet, Distribution, ProbabilityInterval};
use credence::rational::{format_rational, parse_rational, Rational};
use credence::statinf::{self, BinomialData, ConfidenceSpec, RealSample};
use credence::updating;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: credence::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_string()).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

#[pyclass(name = "WorldSpace", module = "credence_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyWorldSpace(WorldSpace);

#[pymethods]
impl PyWorldSpace {
    #[new]
    fn new(atoms: Vec<String>) -> PyResult<Self> {
        WorldSpace::new(atoms).map(Self).map_err(err)
    }

    #[getter]
    fn atoms(&self) -> Vec<String> {
        self.0.atoms().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn proposition(&self, labels: Vec<String>) -> PyResult<PyProposition> {
        self.0.proposition_from_labels(labels).map(PyProposition).map_err(err)
    }

    /// Parse a formula over the atom labels and any extra named propositions.
    #[pyo3(signature = (text, names = None))]
    fn formula(&self, text: &str, names: Option<BTreeMap<String, PyProposition>>) -> PyResult<PyProposition> {
        let mut bindings = self.0.atom_bindings();
        bindings.extend(names.unwrap_or_default().into_iter().map(|(k, v)| (k, v.0)));
        parse_formula(text, &self.0, &bindings).map(PyProposition).map_err(err)
    }

    fn full(&self) -> PyProposition {
        PyProposition(self.0.full_set())
    }

    fn empty(&self) -> PyProposition {
        PyProposition(self.0.empty_set())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("WorldSpace({:?})", self.0.atoms())
    }
}

#[pyclass(name = "Proposition", module = "credence_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyProposition(Proposition);

#[pymethods]
impl PyProposition {
    fn labels(&self) -> Vec<String> {
        self.0.member_labels().into_iter().map(String::from).collect()
    }

    fn __len__(&self) -> usize {
        self.0.count()
    }

    fn __and__(&self, other: &Self) -> PyResult<Self> {
        self.0.and(&other.0).map(Self).map_err(err)
    }

    fn __or__(&self, other: &Self) -> PyResult<Self> {
        self.0.or(&other.0).map(Self).map_err(err)
    }

    fn __invert__(&self) -> Self {
        Self(self.0.not())
    }

    fn implies(&self, other: &Self) -> PyResult<Self> {
        self.0.implies(&other.0).map(Self).map_err(err)
    }

    fn entails(&self, other: &Self) -> PyResult<bool> {
        self.0.entails(&other.0).map_err(err)
    }

    fn is_contradiction(&self) -> bool {
        self.0.is_contradiction()
    }

    fn is_tautology(&self) -> bool {
        self.0.is_tautology()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Proposition({{{}}})", self.0.member_labels().join(", "))
    }
}

#[pyclass(name = "Distribution", module = "credence_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyDistribution(Distribution);

#[pymethods]
impl PyDistribution {
    #[new]
    fn new(space: &PyWorldSpace, weights: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let w = weights.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        Distribution::new(&space.0, w).map(Self).map_err(err)
    }

    #[staticmethod]
    fn uniform(space: &PyWorldSpace) -> Self {
        Self(Distribution::uniform(&space.0))
    }

    #[getter]
    fn space(&self) -> PyWorldSpace {
        PyWorldSpace(self.0.space().clone())
    }

    fn weights<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.weights().iter().map(|w| fraction(py, w)).collect()
    }

    fn probability<'py>(&self, py: Python<'py>, a: &PyProposition) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.probability(&a.0).map_err(err)?)
    }

    fn conditional<'py>(&self, py: Python<'py>, h: &PyProposition, e: &PyProposition) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.conditional(&h.0, &e.0).map_err(err)?)
    }

    fn condition(&self, e: &PyProposition) -> PyResult<Self> {
        updating::bayes_condition(&self.0, &e.0).map(Self).map_err(err)
    }

    fn jeffrey(&self, e: &PyProposition, new_pe: &Bound<'_, PyAny>) -> PyResult<Self> {
        updating::jeffrey_condition(&self.0, &e.0, &rational(new_pe)?).map(Self).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        let w: Vec<String> = self.0.weights().iter().map(format_rational).collect();
        format!("Distribution([{}])", w.join(", "))
    }
}

fn interval<'py>(py: Python<'py>, iv: &ProbabilityInterval) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    Ok((fraction(py, iv.lower())?, fraction(py, iv.upper())?))
}

#[pyclass(name = "CredalSet", module = "credence_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyCredalSet(CredalSet);

#[pymethods]
impl PyCredalSet {
    #[new]
    fn new(generators: Vec<PyDistribution>) -> PyResult<Self> {
        CredalSet::new(generators.into_iter().map(|g| g.0).collect()).map(Self).map_err(err)
    }

    #[getter]
    fn generators(&self) -> Vec<PyDistribution> {
        self.0.generators().iter().cloned().map(PyDistribution).collect()
    }

    /// Generators dropped by the last update because it was undefined on them.
    #[getter]
    fn discarded(&self) -> usize {
        self.0.discarded()
    }

    fn interval<'py>(&self, py: Python<'py>, a: &PyProposition) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        interval(py, &self.0.prob_interval(&a.0).map_err(err)?)
    }

    fn condition(&self, e: &PyProposition) -> PyResult<Self> {
        updating::credal_condition(&self.0, &e.0).map(Self).map_err(err)
    }

    fn jeffrey(&self, e: &PyProposition, new_pe: &Bound<'_, PyAny>) -> PyResult<Self> {
        updating::credal_jeffrey(&self.0, &e.0, &rational(new_pe)?).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("CredalSet({} generators)", self.0.generators().len())
    }
}

#[pyclass(name = "Corpus", module = "credence_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyCorpus(corpus::Corpus);

#[pymethods]
impl PyCorpus {
    #[new]
    fn new(evidence: &PyCredalSet, level: &Bound<'_, PyAny>) -> PyResult<Self> {
        corpus::Corpus::new(evidence.0.clone(), rational(level)?).map(Self).map_err(err)
    }

    #[getter]
    fn acceptance_level<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.0.acceptance_level())
    }

    #[getter]
    fn evidence(&self) -> PyCredalSet {
        PyCredalSet(self.0.evidence().clone())
    }

    fn with_evidence(&self, evidence: &PyCredalSet) -> PyResult<Self> {
        evidence.0.space().check_same(self.0.space()).map_err(err)?;
        Ok(Self(self.0.with_evidence(evidence.0.clone())))
    }

    fn is_accepted(&self, a: &PyProposition) -> PyResult<bool> {
        self.0.is_accepted(&a.0).map_err(err)
    }

    /// Returns `(verdict, lower, upper)` with verdict one of `"Accepted"`,
    /// `"RejectedNegationAccepted"`, `"Unknown"`.
    fn query<'py>(
        &self,
        py: Python<'py>,
        a: &PyProposition,
    ) -> PyResult<(&'static str, Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let answer = self.0.query(&a.0).map_err(err)?;
        let verdict = match answer.verdict {
            Verdict::Accepted => "Accepted",
            Verdict::RejectedNegationAccepted => "RejectedNegationAccepted",
            Verdict::Unknown => "Unknown",
        };
        let (lo, hi) = interval(py, &answer.interval)?;
        Ok((verdict, lo, hi))
    }

    /// `(True, core)` when the accepted propositions share the atoms in
    /// `core`, else `(False, witness)` with an irreducible list of accepted
    /// propositions whose intersection is empty.
    fn joint_consistency<'py>(&self, py: Python<'py>) -> PyResult<(bool, Bound<'py, PyAny>)> {
        Ok(match self.0.joint_consistency().map_err(err)? {
            JointConsistency::Consistent { core } => (true, PyProposition(core).into_pyobject(py)?.into_any()),
            JointConsistency::JointlyInconsistent { witness } => {
                let list: Vec<PyProposition> = witness.into_iter().map(PyProposition).collect();
                (false, list.into_pyobject(py)?.into_any())
            }
        })
    }

    fn accepted_set(&self) -> PyResult<Vec<PyProposition>> {
        Ok(self.0.accepted_set().map_err(err)?.into_iter().map(PyProposition).collect())
    }

    fn max_meaningful_odds<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.max_meaningful_odds())
    }

    /// `"TakeBet"`, `"RefuseBet:BeyondSignificance"` or `"RefuseBet:UnfavorableOdds"`.
    fn bet_advice(
        &self,
        lower: &Bound<'_, PyAny>,
        upper: &Bound<'_, PyAny>,
        odds: &Bound<'_, PyAny>,
    ) -> PyResult<String> {
        let iv = ProbabilityInterval::new(rational(lower)?, rational(upper)?).map_err(err)?;
        Ok(match self.0.bet_advice(&iv, &rational(odds)?).map_err(err)? {
            BetAdvice::TakeBet => "TakeBet".to_string(),
            BetAdvice::RefuseBet(r) => format!("RefuseBet:{r:?}"),
        })
    }
}

/// Coherence of betting quotients given as `(proposition, quotient)` pairs.
/// Returns `{"coherent": True, "witness": Distribution}` or
/// `{"coherent": False, "stakes": [...], "guaranteed_loss": Fraction}`.
#[pyfunction]
fn coherence_check<'py>(
    py: Python<'py>,
    space: &PyWorldSpace,
    quotes: Vec<(PyProposition, Bound<'py, PyAny>)>,
) -> PyResult<Bound<'py, PyDict>> {
    let entries = quotes.iter().map(|(p, q)| Ok((p.0.clone(), rational(q)?))).collect::<PyResult<Vec<_>>>()?;
    let q = BettingQuotients::new(&space.0, entries).map_err(err)?;
    let out = PyDict::new(py);
    match credal::coherence_check(&q).map_err(err)? {
        Coherence::Coherent { witness } => {
            out.set_item("coherent", true)?;
            out.set_item("witness", PyDistribution(witness))?;
        }
        Coherence::DutchBook { stakes, guaranteed_loss } => {
            out.set_item("coherent", false)?;
            let s = stakes.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?;
            out.set_item("stakes", s)?;
            out.set_item("guaranteed_loss", fraction(py, &guaranteed_loss)?)?;
        }
    }
    Ok(out)
}

/// Builds an `n`-ticket fair lottery; returns the corpus and its named
/// propositions (`loses_i`, `wins_i`, `some_ticket_wins`).
#[pyfunction]
fn lottery(n: usize, level: &Bound<'_, PyAny>) -> PyResult<(PyCorpus, BTreeMap<String, PyProposition>)> {
    let lot = corpus::build_lottery(n, rational(level)?).map_err(err)?;
    let names = lot.named().map(|(k, v)| (k, PyProposition(v))).collect();
    Ok((PyCorpus(lot.corpus), names))
}

#[pyfunction]
fn threshold_from_stakes<'py>(py: Python<'py>, max_odds: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let ctx = corpus::StakesContext::new(rational(max_odds)?).map_err(err)?;
    fraction(py, &corpus::threshold_from_stakes(&ctx))
}

fn level(x: f64) -> PyResult<ConfidenceSpec> {
    ConfidenceSpec::new(x).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (values, level = 0.95))]
fn t_interval(values: Vec<f64>, level: f64) -> PyResult<(f64, f64)> {
    let t = statinf::t_interval(&RealSample::new(values).map_err(err)?, self::level(level)?).map_err(err)?;
    Ok((t.lower, t.upper))
}

#[pyfunction]
fn t_critical(level: f64, df: u64) -> PyResult<f64> {
    Ok(statinf::t_critical(self::level(level)?, df))
}

#[pyfunction]
#[pyo3(signature = (n, k, level = 0.95))]
fn binomial_ci(n: u64, k: u64, level: f64) -> PyResult<(f64, f64)> {
    let ci = statinf::binomial_ci(BinomialData::new(n, k).map_err(err)?, self::level(level)?);
    Ok((ci.lower, ci.upper))
}

#[pyfunction]
fn proportion_bound(n: u64) -> PyResult<f64> {
    Ok(statinf::proportion_bound(n).map_err(err)?.half_width)
}

#[pyfunction]
fn exact_coverage(n: u64, p: f64, half_width: f64) -> PyResult<f64> {
    statinf::exact_coverage(n, p, half_width).map_err(err)
}

/// Returns `(rejects, p_value)`.
#[pyfunction]
#[pyo3(signature = (n, k, null_p, alpha = 0.05, tail = "two-sided"))]
fn hypothesis_test(n: u64, k: u64, null_p: f64, alpha: f64, tail: &str) -> PyResult<(bool, f64)> {
    let tail = tail.parse().map_err(err)?;
    let out = statinf::hypothesis_test(BinomialData::new(n, k).map_err(err)?, null_p, level(alpha)?, tail)
        .map_err(err)?;
    Ok((out.rejects(), out.p_value()))
}

#[pyfunction]
fn default_rule_reliability(successes: u64, applications: u64, gullibility: f64) -> PyResult<(f64, f64)> {
    let r = statinf::default_rule_reliability(successes, applications, gullibility).map_err(err)?;
    Ok((r.lower, r.upper))
}

#[pymodule]
fn credence_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWorldSpace>()?;
    m.add_class::<PyProposition>()?;
    m.add_class::<PyDistribution>()?;
    m.add_class::<PyCredalSet>()?;
    m.add_class::<PyCorpus>()?;
    m.add_function(wrap_pyfunction!(coherence_check, m)?)?;
    m.add_function(wrap_pyfunction!(lottery, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_from_stakes, m)?)?;
    m.add_function(wrap_pyfunction!(t_interval, m)?)?;
    m.add_function(wrap_pyfunction!(t_critical, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_ci, m)?)?;
    m.add_function(wrap_pyfunction!(proportion_bound, m)?)?;
    m.add_function(wrap_pyfunction!(exact_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(hypothesis_test, m)?)?;
    m.add_function(wrap_pyfunction!(default_rule_reliability, m)?)?;
    Ok(())
}
