//! Finite world spaces and propositions as sets of atoms.
//!
//! A [`WorldSpace`] fixes an ordered list of atoms. A [`Proposition`] is an
//! extensional subset of those atoms, so two formulas with the same models
//! are the same proposition. Spaces compare structurally: two spaces built
//! from the same label sequence are interchangeable.

mod formula;

pub use formula::{parse_formula, Formula};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug)]
struct SpaceInner {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

#[derive(Clone)]
pub struct WorldSpace(Arc<SpaceInner>);

impl WorldSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = labels.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, label) in atoms.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateAtom(label.clone()));
            }
        }
        Ok(WorldSpace(Arc::new(SpaceInner { atoms, index })))
    }

    pub fn len(&self) -> usize {
        self.0.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atoms(&self) -> &[String] {
        &self.0.atoms
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.0.atoms.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn same_as(&self, other: &WorldSpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.atoms == other.0.atoms
    }

    pub fn check_same(&self, other: &WorldSpace) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn empty_set(&self) -> Proposition {
        Proposition::from_bits(self.clone(), FixedBitSet::with_capacity(self.len()))
    }

    pub fn full_set(&self) -> Proposition {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        Proposition::from_bits(self.clone(), bits)
    }

    pub fn atom(&self, index: usize) -> Result<Proposition> {
        self.proposition([index])
    }

    pub fn proposition<I: IntoIterator<Item = usize>>(&self, members: I) -> Result<Proposition> {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for i in members {
            if i >= self.len() {
                return Err(Error::AtomOutOfRange { index: i, len: self.len() });
            }
            bits.insert(i);
        }
        Ok(Proposition::from_bits(self.clone(), bits))
    }

    pub fn proposition_from_labels<I, S>(&self, labels: I) -> Result<Proposition>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let indices = labels
            .into_iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownAtom(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.proposition(indices)
    }

    /// Every atom as a singleton proposition, keyed by its label. Useful as
    /// default formula bindings.
    pub fn atom_bindings(&self) -> BTreeMap<String, Proposition> {
        (0..self.len())
            .map(|i| (self.0.atoms[i].clone(), self.atom(i).expect("in range")))
            .collect()
    }
}

impl PartialEq for WorldSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for WorldSpace {}

impl fmt::Debug for WorldSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 16 {
            f.debug_tuple("WorldSpace").field(&self.0.atoms).finish()
        } else {
            write!(f, "WorldSpace({} atoms)", self.len())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    atoms: Vec<String>,
}

impl Serialize for WorldSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceRepr { atoms: self.0.atoms.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WorldSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SpaceRepr::deserialize(d)?;
        WorldSpace::new(repr.atoms).map_err(serde::de::Error::custom)
    }
}

/// Boolean connectives accepted by [`combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Not,
    Implies,
}

#[derive(Clone)]
pub struct Proposition {
    space: WorldSpace,
    members: FixedBitSet,
    name: Option<String>,
}

impl Proposition {
    fn from_bits(space: WorldSpace, members: FixedBitSet) -> Self {
        Proposition { space, members, name: None }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn space(&self) -> &WorldSpace {
        &self.space
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.members.contains(atom)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn member_labels(&self) -> Vec<&str> {
        self.members().map(|i| self.space.atoms()[i].as_str()).collect()
    }

    pub fn count(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_contradiction(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_tautology(&self) -> bool {
        self.count() == self.space.len()
    }

    pub fn not(&self) -> Proposition {
        let mut bits = self.members.clone();
        bits.toggle_range(..);
        Proposition::from_bits(self.space.clone(), bits)
    }

    pub fn and(&self, other: &Proposition) -> Result<Proposition> {
        self.space.check_same(&other.space)?;
        let mut bits = self.members.clone();
        bits.intersect_with(&other.members);
        Ok(Proposition::from_bits(self.space.clone(), bits))
    }

    pub fn or(&self, other: &Proposition) -> Result<Proposition> {
        self.space.check_same(&other.space)?;
        let mut bits = self.members.clone();
        bits.union_with(&other.members);
        Ok(Proposition::from_bits(self.space.clone(), bits))
    }

    pub fn implies(&self, other: &Proposition) -> Result<Proposition> {
        self.not().or(other)
    }

    /// True iff every atom of `self` is an atom of `other`.
    pub fn entails(&self, other: &Proposition) -> Result<bool> {
        self.space.check_same(&other.space)?;
        Ok(self.members.is_subset(&other.members))
    }

    pub fn is_disjoint(&self, other: &Proposition) -> Result<bool> {
        self.space.check_same(&other.space)?;
        Ok(self.members.is_disjoint(&other.members))
    }

    /// Membership as a lowercase hex string, least significant atom first
    /// within each nibble (atom `i` is bit `i % 4` of nibble `i / 4`).
    pub fn to_hex(&self) -> String {
        let n = self.space.len();
        (0..n.div_ceil(4))
            .map(|nib| {
                let v = (0..4)
                    .filter(|b| nib * 4 + b < n && self.members.contains(nib * 4 + b))
                    .fold(0u32, |acc, b| acc | (1 << b));
                char::from_digit(v, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(space: &WorldSpace, hex: &str) -> Result<Proposition> {
        let n = space.len();
        if hex.len() != n.div_ceil(4) {
            return Err(Error::InvalidArgument(format!(
                "membership string has {} digits, expected {}",
                hex.len(),
                n.div_ceil(4)
            )));
        }
        let mut bits = FixedBitSet::with_capacity(n);
        for (nib, c) in hex.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::InvalidArgument(format!("bad hex digit `{c}`")))?;
            for b in 0..4 {
                if v & (1 << b) != 0 {
                    let i = nib * 4 + b;
                    if i >= n {
                        return Err(Error::AtomOutOfRange { index: i, len: n });
                    }
                    bits.insert(i);
                }
            }
        }
        Ok(Proposition::from_bits(space.clone(), bits))
    }
}

impl PartialEq for Proposition {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.members == other.members
    }
}

impl Eq for Proposition {}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name} = ")?;
        }
        let count = self.count();
        if count > 12 {
            return write!(f, "{{{count} of {} atoms}}", self.space.len());
        }
        write!(f, "{{{}}}", self.member_labels().join(","))
    }
}

pub fn make_space(labels: &[&str]) -> Result<WorldSpace> {
    WorldSpace::new(labels.iter().copied())
}

/// Applies a connective to propositions over one space. `Not` takes one
/// argument, the others two.
pub fn combine(op: Connective, args: &[&Proposition]) -> Result<Proposition> {
    let expected = if op == Connective::Not { 1 } else { 2 };
    if args.len() != expected {
        let name = match op {
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Not => "not",
            Connective::Implies => "implies",
        };
        return Err(Error::Arity { op: name, expected, got: args.len() });
    }
    match op {
        Connective::Not => Ok(args[0].not()),
        Connective::And => args[0].and(args[1]),
        Connective::Or => args[0].or(args[1]),
        Connective::Implies => args[0].implies(args[1]),
    }
}

pub fn entails(a: &Proposition, b: &Proposition) -> Result<bool> {
    a.entails(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coins() -> WorldSpace {
        make_space(&["HH", "HT", "TH", "TT"]).unwrap()
    }

    #[test]
    fn make_space_cases() {
        assert_eq!(coins().len(), 4);
        assert_eq!(make_space(&["a"]).unwrap().len(), 1);
        assert_eq!(make_space(&["x", "x"]).unwrap_err(), Error::DuplicateAtom("x".into()));
        assert_eq!(make_space(&[]).unwrap_err(), Error::EmptySpace);
        assert_eq!(make_space(&[""]).unwrap_err(), Error::EmptyLabel);
    }

    #[test]
    fn combine_cases() {
        let s = coins();
        let first_heads = s.proposition_from_labels(["HH", "HT"]).unwrap();
        let second_heads = s.proposition_from_labels(["HH", "TH"]).unwrap();
        let both = combine(Connective::And, &[&first_heads, &second_heads]).unwrap();
        assert_eq!(both, s.proposition_from_labels(["HH"]).unwrap());
        assert_eq!(combine(Connective::Not, &[&s.full_set()]).unwrap(), s.empty_set());
        let not_a = first_heads.not();
        assert!(combine(Connective::Or, &[&first_heads, &not_a]).unwrap().is_tautology());
        let imp = combine(Connective::Implies, &[&first_heads, &second_heads]).unwrap();
        assert_eq!(imp, s.proposition_from_labels(["HH", "TH", "TT"]).unwrap());
    }

    #[test]
    fn combine_errors() {
        let s = coins();
        let other = make_space(&["a", "b"]).unwrap();
        let a = s.atom(0).unwrap();
        let b = other.atom(0).unwrap();
        assert_eq!(combine(Connective::And, &[&a, &b]).unwrap_err(), Error::SpaceMismatch);
        assert!(matches!(
            combine(Connective::Not, &[&a, &a]),
            Err(Error::Arity { expected: 1, got: 2, .. })
        ));
        assert!(matches!(combine(Connective::Or, &[&a]), Err(Error::Arity { expected: 2, .. })));
    }

    #[test]
    fn entails_cases() {
        let s = coins();
        let p = |l: &[&str]| s.proposition_from_labels(l.iter().copied()).unwrap();
        assert!(entails(&p(&["HH"]), &p(&["HH", "HT"])).unwrap());
        assert!(!entails(&p(&["HH", "TT"]), &p(&["HH", "HT"])).unwrap());
        assert!(entails(&s.empty_set(), &p(&["TT"])).unwrap());
        let other = make_space(&["a"]).unwrap();
        assert!(entails(&s.empty_set(), &other.full_set()).is_err());
    }

    #[test]
    fn structural_space_identity() {
        let a = make_space(&["p", "q"]).unwrap();
        let b = make_space(&["p", "q"]).unwrap();
        let c = make_space(&["q", "p"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.atom(0).unwrap().or(&b.atom(1).unwrap()).unwrap().is_tautology());
    }

    #[test]
    fn large_space_works() {
        let labels: Vec<String> = (0..4096).map(|i| format!("w{i}")).collect();
        let s = WorldSpace::new(labels).unwrap();
        let p = s.atom(4095).unwrap();
        assert_eq!(p.not().count(), 4095);
        assert!(p.not().not() == p);
    }

    #[test]
    fn hex_round_trip() {
        let s = make_space(&["a", "b", "c", "d", "e", "f"]).unwrap();
        let p = s.proposition([0, 2, 5]).unwrap();
        let hex = p.to_hex();
        assert_eq!(hex, "52");
        assert_eq!(Proposition::from_hex(&s, &hex).unwrap(), p);
        assert!(Proposition::from_hex(&s, "f").is_err());
        assert!(Proposition::from_hex(&s, "0c").is_err());
    }

    #[test]
    fn space_json() {
        let s = coins();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"atoms":["HH","HT","TH","TT"]}"#);
        let back: WorldSpace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<WorldSpace>(r#"{"atoms":["a","a"]}"#).is_err());
    }
}
