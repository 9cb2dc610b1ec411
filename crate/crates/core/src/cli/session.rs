use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CliError, Command};
use crate::algebra::{Proposition, WorldSpace};
use crate::corpus::Corpus;
use crate::credal::CredalSet;
use crate::rational::{format_rational, parse_rational, Rational};

pub const SESSION_VERSION: u32 = 1;

/// Everything a sequence of commands has built up. Every component lives
/// over the same space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Session {
    pub space: Option<WorldSpace>,
    pub propositions: BTreeMap<String, Proposition>,
    pub credal: Option<CredalSet>,
    pub acceptance_level: Option<Rational>,
    pub history: Vec<Command>,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    pub fn space(&self) -> Result<&WorldSpace, CliError> {
        self.space
            .as_ref()
            .ok_or_else(|| CliError::Usage("no space loaded (run `space` or `lottery` first)".into()))
    }

    pub fn credal(&self) -> Result<&CredalSet, CliError> {
        self.credal
            .as_ref()
            .ok_or_else(|| CliError::Usage("no credal set loaded (run `dist` or `credal` first)".into()))
    }

    pub fn corpus(&self) -> Result<Corpus, CliError> {
        match (&self.credal, &self.acceptance_level) {
            (Some(k), Some(t)) => Ok(Corpus::new(k.clone(), t.clone())?),
            _ => Err(CliError::Usage("no corpus loaded".into())),
        }
    }

    /// Names usable in formulas: atom labels, overridden by defined names.
    pub fn bindings(&self) -> Result<BTreeMap<String, Proposition>, CliError> {
        let mut b = self.space()?.atom_bindings();
        b.extend(self.propositions.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(b)
    }

    /// Rebuilds a session by running `history` from scratch.
    pub fn replay(history: &[Command]) -> Result<Session, CliError> {
        let mut session = Session::new();
        for cmd in history {
            session = super::execute(cmd, &session)?.0;
        }
        Ok(session)
    }

    pub fn to_json(&self) -> String {
        let file = SessionFile {
            version: SESSION_VERSION,
            space: self.space.clone(),
            propositions: self.propositions.iter().map(|(k, v)| (k.clone(), v.to_hex())).collect(),
            credal: self.credal.clone(),
            acceptance_level: self.acceptance_level.as_ref().map(format_rational),
            history: self.history.clone(),
        };
        serde_json::to_string_pretty(&file).expect("session serializes")
    }

    pub fn from_json(text: &str) -> Result<Session, CliError> {
        if text.trim().is_empty() {
            return Err(CliError::Malformed("session file is empty".into()));
        }
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        match value.get("version").and_then(|v| v.as_u64()) {
            Some(v) if v == SESSION_VERSION as u64 => {}
            Some(v) => {
                return Err(CliError::Malformed(format!(
                    "session version {v} is not supported (expected {SESSION_VERSION})"
                )))
            }
            None => return Err(CliError::Malformed("missing `version` field".into())),
        }
        let file: SessionFile =
            serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        let mut propositions = BTreeMap::new();
        if !file.propositions.is_empty() {
            let space = file.space.as_ref().ok_or_else(|| {
                CliError::Malformed("propositions present without a space".into())
            })?;
            for (name, hex) in file.propositions {
                let p = Proposition::from_hex(space, &hex)
                    .map_err(|e| CliError::Malformed(format!("proposition `{name}`: {e}")))?;
                propositions.insert(name.clone(), p.named(name));
            }
        }
        if let Some(k) = &file.credal {
            match &file.space {
                Some(s) if s == k.space() => {}
                _ => return Err(CliError::Malformed("credal set is not over the session space".into())),
            }
        }
        let acceptance_level = file
            .acceptance_level
            .as_deref()
            .map(parse_rational)
            .transpose()
            .map_err(|e| CliError::Malformed(e.to_string()))?;
        let session = Session {
            space: file.space,
            propositions,
            credal: file.credal,
            acceptance_level,
            history: file.history,
        };
        if session.acceptance_level.is_some() && session.credal.is_some() {
            session.corpus().map_err(|e| CliError::Malformed(e.to_string()))?;
        }
        Ok(session)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Session, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Session::from_json(&text)
            .map_err(|e| CliError::Malformed(format!("{}: {}", path.display(), e.message())))
    }
}

#[derive(Serialize, Deserialize)]
struct SessionFile {
    version: u32,
    space: Option<WorldSpace>,
    #[serde(default)]
    propositions: BTreeMap<String, String>,
    credal: Option<CredalSet>,
    acceptance_level: Option<String>,
    #[serde(default)]
    history: Vec<Command>,
}
