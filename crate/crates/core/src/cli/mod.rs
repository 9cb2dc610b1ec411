//! The `credence` command line.
//!
//! Each invocation loads a session file, applies one [`Command`] through
//! [`execute`], and writes the updated session back. `execute` is a pure
//! state transition, so a session can be rebuilt from its command history.

mod session;

pub use session::{Session, SESSION_VERSION};

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{parse_formula, Proposition, WorldSpace};
use crate::corpus::{
    build_lottery, threshold_from_stakes, BetAdvice, Corpus, JointConsistency, StakesContext,
};
use crate::credal::{coherence_check, BettingQuotients, Coherence, CredalSet, Distribution, ProbabilityInterval};
use crate::error::Error;
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::statinf::{self, BinomialData, ConfidenceSpec, RealSample, Tail};
use crate::updating::{credal_condition, credal_jeffrey};

/// Environment variable naming the default session file.
pub const SESSION_ENV: &str = "CREDENCE_SESSION";
pub const DEFAULT_SESSION_FILE: &str = "credence-session.json";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("malformed session file: {0}")]
    Malformed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn message(&self) -> String {
        match self {
            CliError::Malformed(m) => m.clone(),
            other => other.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "credence", version, about = "Credal-set reasoning and probabilistic acceptance")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Session file to read and update.
    #[arg(long, global = true, env = SESSION_ENV)]
    pub session: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Start a new world space, clearing propositions, evidence and corpus.
    Space {
        /// Atom labels, in order.
        #[arg(required_unless_present = "tosses")]
        atoms: Vec<String>,
        /// Use the 2^N head/tail sequences of N coin tosses as atoms.
        #[arg(long, conflicts_with = "atoms")]
        tosses: Option<u32>,
    },
    /// Name a proposition given by a formula.
    Define { name: String, formula: String },
    /// Load a single distribution as the evidence.
    Dist {
        /// One weight per atom ("num/den" or decimal).
        #[arg(required_unless_present = "uniform", allow_hyphen_values = true)]
        weights: Vec<String>,
        #[arg(long, conflicts_with = "weights")]
        uniform: bool,
    },
    /// Load a credal set from generator points.
    Credal {
        /// Comma-separated weights of one generator; repeat for more.
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Lower and upper probability of a formula.
    Prob {
        formula: String,
        #[arg(long)]
        given: Option<String>,
    },
    /// Condition the evidence on a formula learned with certainty.
    Condition {
        #[arg(long)]
        evidence: String,
    },
    /// Shift the probability of a formula to a new value (Jeffrey's rule).
    Jeffrey {
        #[arg(long)]
        evidence: String,
        #[arg(long = "to")]
        probability: String,
    },
    /// Check betting quotients for coherence.
    Coherence {
        /// `FORMULA=QUOTIENT`; repeat for each bet.
        #[arg(long = "quote", required = true)]
        quotes: Vec<String>,
    },
    /// Student-t interval for a mean.
    Tinterval {
        /// Comma-separated sample values.
        #[arg(long, required_unless_present = "csv")]
        values: Option<String>,
        /// File with one value per line.
        #[arg(long, conflicts_with = "values")]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },
    /// Exact binomial confidence interval.
    Binci {
        #[arg(long, required_unless_present = "csv")]
        n: Option<u64>,
        #[arg(long, required_unless_present = "csv")]
        k: Option<u64>,
        /// File holding a single `n,k` line.
        #[arg(long, conflicts_with_all = ["n", "k"])]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },
    /// Half-width 3/sqrt(4n) of the proportion bound.
    Bound {
        #[arg(long)]
        n: u64,
    },
    /// Exact probability that the sample frequency lands within the half-width.
    Coverage {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        /// Defaults to the proportion bound for `n`.
        #[arg(long)]
        half_width: Option<f64>,
    },
    /// Exact binomial hypothesis test.
    Test {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long = "null")]
        null_p: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// upper, lower or two-sided.
        #[arg(long, default_value = "two-sided")]
        tail: String,
    },
    /// Reliability interval for a default rule.
    Reliability {
        #[arg(long)]
        successes: u64,
        #[arg(long)]
        applications: u64,
        #[arg(long)]
        gullibility: f64,
    },
    /// Set the acceptance level, directly or from the largest odds at stake.
    Corpus {
        #[arg(long, required_unless_present = "odds")]
        level: Option<String>,
        #[arg(long, conflicts_with = "level")]
        odds: Option<String>,
    },
    /// Is a formula accepted? Without a formula, list every accepted proposition.
    Accept { formula: Option<String> },
    /// Accepted, rejected, or unknown, with the probability interval.
    Query { formula: String },
    /// Do all accepted propositions share an atom?
    Consistency,
    /// Build an N-ticket fair lottery corpus and report the paradox.
    Lottery {
        #[arg(long)]
        tickets: usize,
        #[arg(long)]
        level: String,
    },
    /// Advice on a bet at ODDS:1 on an event with the given probability interval.
    Advise {
        /// `LOWER,UPPER` probability of the event.
        #[arg(long)]
        interval: String,
        #[arg(long)]
        odds: String,
    },
    /// Write the session to a file.
    Save { path: PathBuf },
    /// Replace the session with one read from a file.
    Load { path: PathBuf },
}

impl Command {
    /// Commands that change the session and therefore enter its history.
    pub fn mutates(&self) -> bool {
        matches!(
            self,
            Command::Space { .. }
                | Command::Define { .. }
                | Command::Dist { .. }
                | Command::Credal { .. }
                | Command::Condition { .. }
                | Command::Jeffrey { .. }
                | Command::Corpus { .. }
                | Command::Lottery { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("json")
        } else {
            self.text.clone()
        }
    }
}

fn formula(session: &Session, text: &str) -> Result<Proposition, CliError> {
    let space = session.space()?;
    Ok(parse_formula(text, space, &session.bindings()?)?)
}

fn labels(p: &Proposition) -> Value {
    json!(p.member_labels())
}

fn interval_json(iv: &ProbabilityInterval) -> Value {
    json!({ "lower": format_rational(iv.lower()), "upper": format_rational(iv.upper()) })
}

fn describe_interval(iv: &ProbabilityInterval) -> String {
    if iv.is_degenerate() {
        format_rational(iv.lower())
    } else {
        iv.to_string()
    }
}

fn describe_credal(k: &CredalSet) -> String {
    let atoms = k.space().atoms();
    let mut out = Vec::new();
    for (i, g) in k.generators().iter().enumerate() {
        let body: Vec<String> = g
            .weights()
            .iter()
            .zip(atoms)
            .take(12)
            .map(|(w, a)| format!("{a}={}", format_rational(w)))
            .collect();
        let more = if atoms.len() > 12 { ", ..." } else { "" };
        out.push(format!("  P{}: {}{more}", i + 1, body.join(", ")));
    }
    out.join("\n")
}

fn credal_output(k: &CredalSet, heading: &str) -> Output {
    let mut text = format!("{heading} ({} generator(s))\n{}", k.generators().len(), describe_credal(k));
    if k.discarded() > 0 {
        text.push_str(&format!("\n  discarded {} generator(s) with zero probability", k.discarded()));
    }
    Output::new(text, json!({ "credal": k, "discarded": k.discarded() }))
}

fn parse_weights(space: &WorldSpace, text: &[String]) -> Result<Distribution, CliError> {
    let w = text.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Distribution::new(space, w)?)
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn level(x: f64) -> Result<ConfidenceSpec, CliError> {
    Ok(ConfidenceSpec::new(x)?)
}

fn toss_labels(n: u32) -> Result<Vec<String>, CliError> {
    if n == 0 || n > 12 {
        return Err(CliError::Usage("--tosses must be between 1 and 12".into()));
    }
    Ok((0..1u32 << n)
        .map(|i| (0..n).map(|b| if i & (1 << (n - 1 - b)) == 0 { 'H' } else { 'T' }).collect())
        .collect())
}

/// Applies one command to a session snapshot, returning the new snapshot
/// and what to print.
pub fn execute(cmd: &Command, session: &Session) -> Result<(Session, Output), CliError> {
    let (mut next, out) = dispatch(cmd, session)?;
    if cmd.mutates() {
        next.history.push(cmd.clone());
    }
    Ok((next, out))
}

fn dispatch(cmd: &Command, session: &Session) -> Result<(Session, Output), CliError> {
    let same = |out: Output| Ok((session.clone(), out));
    match cmd {
        Command::Space { atoms, tosses } => {
            let labels = match tosses {
                Some(n) => toss_labels(*n)?,
                None => atoms.clone(),
            };
            let space = WorldSpace::new(labels)?;
            let next = Session { space: Some(space.clone()), history: session.history.clone(), ..Session::new() };
            let text = format!("space with {} atoms: {}", space.len(), abbreviate(space.atoms()));
            Ok((next, Output::new(text, json!(space))))
        }
        Command::Define { name, formula: f } => {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') {
                return Err(CliError::Usage(format!("`{name}` is not a valid name")));
            }
            let p = formula(session, f)?.named(name.clone());
            let mut next = session.clone();
            let text = format!("{name} = {}", abbreviate(&p.member_labels()));
            let out = Output::new(text, json!({ "name": name, "members": labels(&p) }));
            next.propositions.insert(name.clone(), p);
            Ok((next, out))
        }
        Command::Dist { weights, uniform } => {
            let space = session.space()?;
            let d = if *uniform { Distribution::uniform(space) } else { parse_weights(space, weights)? };
            let mut next = session.clone();
            let k = CredalSet::singleton(d);
            let out = credal_output(&k, "evidence");
            next.credal = Some(k);
            Ok((next, out))
        }
        Command::Credal { points } => {
            let space = session.space()?;
            let gens = points
                .iter()
                .map(|p| parse_weights(space, &split_list(p)))
                .collect::<Result<Vec<_>, _>>()?;
            let k = CredalSet::new(gens)?;
            let mut next = session.clone();
            let out = credal_output(&k, "evidence");
            next.credal = Some(k);
            Ok((next, out))
        }
        Command::Prob { formula: f, given } => {
            let k = session.credal()?;
            let a = formula(session, f)?;
            let (iv, label) = match given {
                Some(g) => {
                    let e = formula(session, g)?;
                    (credal_condition(k, &e)?.prob_interval(&a)?, format!("P({f} given {g})"))
                }
                None => (k.prob_interval(&a)?, format!("P({f})")),
            };
            let text = format!("{label} = {}", describe_interval(&iv));
            same(Output::new(
                text,
                json!({ "formula": f, "given": given, "interval": interval_json(&iv) }),
            ))
        }
        Command::Condition { evidence } => {
            let e = formula(session, evidence)?;
            let k = credal_condition(session.credal()?, &e)?;
            let mut next = session.clone();
            let out = credal_output(&k, &format!("conditioned on {evidence}"));
            next.credal = Some(k);
            Ok((next, out))
        }
        Command::Jeffrey { evidence, probability } => {
            let e = formula(session, evidence)?;
            let q = parse_rational(probability)?;
            let k = credal_jeffrey(session.credal()?, &e, &q)?;
            let mut next = session.clone();
            let out = credal_output(&k, &format!("shifted P({evidence}) to {}", format_rational(&q)));
            next.credal = Some(k);
            Ok((next, out))
        }
        Command::Coherence { quotes } => {
            let space = session.space()?;
            let mut entries = Vec::with_capacity(quotes.len());
            for q in quotes {
                let (f, p) = q
                    .rsplit_once('=')
                    .ok_or_else(|| CliError::Usage(format!("quote `{q}` is not FORMULA=QUOTIENT")))?;
                entries.push((formula(session, f.trim())?, parse_rational(p)?));
            }
            let bq = BettingQuotients::new(space, entries)?;
            match coherence_check(&bq)? {
                Coherence::Coherent { witness } => {
                    let text = format!(
                        "Coherent; witness distribution:\n{}",
                        describe_credal(&CredalSet::singleton(witness.clone()))
                    );
                    same(Output::new(text, json!({ "coherent": true, "witness": witness })))
                }
                Coherence::DutchBook { stakes, guaranteed_loss } => {
                    let lines: Vec<String> = quotes
                        .iter()
                        .zip(&stakes)
                        .map(|(q, s)| format!("  stake {} on {q}", format_rational(s)))
                        .collect();
                    let text = format!(
                        "Dutch book: guaranteed loss {} in every atom\n{}",
                        format_rational(&guaranteed_loss),
                        lines.join("\n")
                    );
                    let stakes: Vec<String> = stakes.iter().map(format_rational).collect();
                    same(Output::new(
                        text,
                        json!({
                            "coherent": false,
                            "stakes": stakes,
                            "guaranteed_loss": format_rational(&guaranteed_loss),
                        }),
                    ))
                }
            }
        }
        Command::Tinterval { values, csv, level: lv } => {
            let sample = match (values, csv) {
                (Some(v), _) => {
                    let xs = split_list(v)
                        .iter()
                        .map(|s| s.parse::<f64>().map_err(|_| CliError::Usage(format!("`{s}` is not a number"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    RealSample::new(xs)?
                }
                (None, Some(path)) => RealSample::from_csv(open(path)?)?,
                (None, None) => return Err(CliError::Usage("give --values or --csv".into())),
            };
            let t = statinf::t_interval(&sample, level(*lv)?)?;
            let text = format!(
                "{}% t-interval: [{:.4}, {:.4}] (mean {:.4}, s {:.4}, t({}) = {:.4})",
                lv * 100.0,
                t.lower,
                t.upper,
                t.mean,
                t.std_dev,
                t.df,
                t.critical
            );
            same(Output::new(text, json!(t)))
        }
        Command::Binci { n, k, csv, level: lv } => {
            let data = match (n, k, csv) {
                (Some(n), Some(k), _) => BinomialData::new(*n, *k)?,
                (_, _, Some(path)) => BinomialData::from_csv(open(path)?)?,
                _ => return Err(CliError::Usage("give --n and --k, or --csv".into())),
            };
            let ci = statinf::binomial_ci(data, level(*lv)?);
            let text = format!(
                "{}% exact interval for {}/{}: [{:.4}, {:.4}]",
                lv * 100.0,
                data.k,
                data.n,
                ci.lower,
                ci.upper
            );
            same(Output::new(
                text,
                json!({ "n": data.n, "k": data.k, "level": lv, "lower": ci.lower, "upper": ci.upper }),
            ))
        }
        Command::Bound { n } => {
            let b = statinf::proportion_bound(*n)?;
            let flag = if b.vacuous { " (vacuous)" } else { "" };
            let text = format!("half-width 3/sqrt(4*{n}) = {:.6}{flag}", b.half_width);
            same(Output::new(text, json!({ "n": n, "half_width": b.half_width, "vacuous": b.vacuous })))
        }
        Command::Coverage { n, p, half_width } => {
            let h = match half_width {
                Some(h) => *h,
                None => statinf::proportion_bound(*n)?.half_width,
            };
            let c = statinf::exact_coverage(*n, *p, h)?;
            let text = format!("P(|k/{n} - {p}| <= {h:.6}) = {c:.6}");
            same(Output::new(text, json!({ "n": n, "p": p, "half_width": h, "coverage": c })))
        }
        Command::Test { n, k, null_p, alpha, tail } => {
            let data = BinomialData::new(*n, *k)?;
            let tail: Tail = tail.parse()?;
            let outcome = statinf::hypothesis_test(data, *null_p, level(*alpha)?, tail)?;
            let decision = if outcome.rejects() { "Reject" } else { "FailToReject" };
            let text = format!("{decision} (p-value {:.6e}, alpha {alpha})", outcome.p_value());
            same(Output::new(
                text,
                json!({
                    "n": n, "k": k, "null_p": null_p, "alpha": alpha, "tail": tail,
                    "decision": decision, "p_value": outcome.p_value(),
                }),
            ))
        }
        Command::Reliability { successes, applications, gullibility } => {
            let r = statinf::default_rule_reliability(*successes, *applications, *gullibility)?;
            let text = format!(
                "reliability of rule ({successes}/{applications}, gullibility {gullibility}): [{:.4}, {:.4}]",
                r.lower, r.upper
            );
            same(Output::new(
                text,
                json!({
                    "successes": successes, "applications": applications,
                    "gullibility": gullibility, "lower": r.lower, "upper": r.upper,
                }),
            ))
        }
        Command::Corpus { level: lv, odds } => {
            let t = match (lv, odds) {
                (Some(l), _) => parse_rational(l)?,
                (None, Some(o)) => threshold_from_stakes(&StakesContext::new(parse_rational(o)?)?),
                (None, None) => return Err(CliError::Usage("give --level or --odds".into())),
            };
            let corpus = Corpus::new(session.credal()?.clone(), t.clone())?;
            let mut next = session.clone();
            next.acceptance_level = Some(t.clone());
            let text = format!(
                "acceptance level {} (~{:.4}); meaningful odds up to {}:1",
                format_rational(&t),
                to_f64(&t),
                format_rational(&corpus.max_meaningful_odds())
            );
            Ok((next, Output::new(text, json!(corpus))))
        }
        Command::Accept { formula: None } => {
            let corpus = session.corpus()?;
            let all = corpus.accepted_set()?;
            let lines: Vec<String> = all.iter().map(|p| format!("  {{{}}}", p.member_labels().join(","))).collect();
            let text = format!("{} accepted proposition(s):\n{}", all.len(), lines.join("\n"));
            let list: Vec<Value> = all.iter().map(labels).collect();
            same(Output::new(text, json!({ "accepted": list })))
        }
        Command::Accept { formula: Some(f) } => {
            let corpus = session.corpus()?;
            let a = formula(session, f)?;
            let accepted = corpus.is_accepted(&a)?;
            let lower = corpus.evidence().lower(&a)?;
            let text = format!(
                "{f}: {} (lower probability {} vs level {})",
                if accepted { "accepted" } else { "not accepted" },
                format_rational(&lower),
                format_rational(corpus.acceptance_level())
            );
            same(Output::new(
                text,
                json!({ "formula": f, "accepted": accepted, "lower": format_rational(&lower) }),
            ))
        }
        Command::Query { formula: f } => {
            let corpus = session.corpus()?;
            let a = formula(session, f)?;
            let answer = corpus.query(&a)?;
            same(Output::new(
                answer.to_string(),
                json!({ "formula": f, "verdict": answer.verdict, "interval": interval_json(&answer.interval) }),
            ))
        }
        Command::Consistency => {
            let corpus = session.corpus()?;
            same(consistency_output(&corpus)?)
        }
        Command::Lottery { tickets, level: lv } => {
            let t = parse_rational(lv)?;
            let lottery = build_lottery(*tickets, t.clone())?;
            let corpus = &lottery.corpus;
            let accepted_losses = lottery
                .loses
                .iter()
                .map(|p| corpus.is_accepted(p))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .filter(|ok| *ok)
                .count();
            let winner = corpus.is_accepted(&lottery.some_ticket_wins)?;
            let all_lose = lottery
                .loses
                .iter()
                .try_fold(corpus.space().full_set(), |acc, p| acc.and(p))?;
            let conj = corpus.is_accepted(&all_lose)?;
            let consistent = matches!(corpus.joint_consistency()?, JointConsistency::Consistent { .. });
            let loss_p = corpus.evidence().lower(&lottery.loses[0])?;
            let text = format!(
                "lottery with {tickets} tickets at level {}\n  \
                 ticket i loses: probability {} each, {accepted_losses}/{tickets} accepted\n  \
                 some ticket wins: {}\n  \
                 every ticket loses (conjunction): {}\n  \
                 accepted set is {}",
                format_rational(&t),
                format_rational(&loss_p),
                if winner { "accepted" } else { "not accepted" },
                if conj { "accepted" } else { "not accepted" },
                if consistent { "jointly consistent" } else { "jointly inconsistent" },
            );
            let out = Output::new(
                text,
                json!({
                    "tickets": tickets,
                    "acceptance_level": format_rational(&t),
                    "loss_probability": format_rational(&loss_p),
                    "losses_accepted": accepted_losses,
                    "some_ticket_wins_accepted": winner,
                    "all_lose_accepted": conj,
                    "jointly_consistent": consistent,
                }),
            );
            let mut next = Session {
                space: Some(corpus.space().clone()),
                credal: Some(corpus.evidence().clone()),
                acceptance_level: Some(t),
                history: session.history.clone(),
                ..Session::new()
            };
            next.propositions.extend(lottery.named());
            Ok((next, out))
        }
        Command::Advise { interval, odds } => {
            let corpus = session.corpus()?;
            let parts = split_list(interval);
            if parts.len() != 2 {
                return Err(CliError::Usage("--interval takes LOWER,UPPER".into()));
            }
            let iv = ProbabilityInterval::new(parse_rational(&parts[0])?, parse_rational(&parts[1])?)?;
            let o = parse_rational(odds)?;
            let advice = corpus.bet_advice(&iv, &o)?;
            let required = if o > Rational::zero() { &o / (&o + Rational::one()) } else { Rational::zero() };
            let (word, reason) = match advice {
                BetAdvice::TakeBet => ("TakeBet", None),
                BetAdvice::RefuseBet(r) => ("RefuseBet", Some(r)),
            };
            let text = match reason {
                None => format!("TakeBet at {}:1", format_rational(&o)),
                Some(r) => format!(
                    "RefuseBet ({r:?}): the bet needs confidence {}, acceptance level is {}",
                    format_rational(&required),
                    format_rational(corpus.acceptance_level())
                ),
            };
            same(Output::new(
                text,
                json!({
                    "advice": word,
                    "reason": reason,
                    "required_confidence": format_rational(&required),
                    "max_meaningful_odds": format_rational(&corpus.max_meaningful_odds()),
                }),
            ))
        }
        Command::Save { path } => {
            session.save(path)?;
            same(Output::new(format!("saved {}", path.display()), json!({ "saved": path })))
        }
        Command::Load { path } => {
            let loaded = Session::load(path)?;
            Ok((loaded, Output::new(format!("loaded {}", path.display()), json!({ "loaded": path }))))
        }
    }
}

fn consistency_output(corpus: &Corpus) -> Result<Output, CliError> {
    Ok(match corpus.joint_consistency()? {
        JointConsistency::Consistent { core } => Output::new(
            format!("Consistent: every accepted proposition contains {}", abbreviate(&core.member_labels())),
            json!({ "consistent": true, "core": labels(&core) }),
        ),
        JointConsistency::JointlyInconsistent { witness } => {
            // Each witness member is the complement of a small block; show the block.
            let excluded: Vec<Vec<&str>> = witness.iter().map(|w| excluded_labels(w)).collect();
            let sample: Vec<String> = excluded
                .iter()
                .take(5)
                .map(|b| format!("  none of {{{}}}", b.join(",")))
                .collect();
            let more = if witness.len() > 5 { format!("\n  ... {} more", witness.len() - 5) } else { String::new() };
            Output::new(
                format!(
                    "JointlyInconsistent: {} accepted propositions with empty intersection\n{}{more}",
                    witness.len(),
                    sample.join("\n")
                ),
                json!({ "consistent": false, "witness_size": witness.len(), "witness_excludes": excluded }),
            )
        }
    })
}

fn excluded_labels(p: &Proposition) -> Vec<&str> {
    let space = p.space();
    (0..space.len()).filter(|&i| !p.contains(i)).map(|i| space.atoms()[i].as_str()).collect()
}

fn abbreviate<S: AsRef<str>>(items: &[S]) -> String {
    if items.len() <= 12 {
        let v: Vec<&str> = items.iter().map(AsRef::as_ref).collect();
        format!("{{{}}}", v.join(","))
    } else {
        format!(
            "{{{}, {} ..., {}}}",
            items[..3].iter().map(AsRef::as_ref).collect::<Vec<_>>().join(","),
            items.len() - 4,
            items[items.len() - 1].as_ref()
        )
    }
}

fn open(path: &PathBuf) -> Result<std::fs::File, CliError> {
    std::fs::File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Runs one command-line invocation against the session file, returning the
/// text to print or the error with its exit code.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let path = cli.session.unwrap_or_else(|| PathBuf::from(DEFAULT_SESSION_FILE));
    let session = if path.exists() { Session::load(&path)? } else { Session::new() };
    let (next, out) = execute(&cli.command, &session)?;
    if next != session {
        next.save(&path)?;
    }
    Ok(out.render(cli.json))
}
