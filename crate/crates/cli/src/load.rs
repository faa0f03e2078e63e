//! Reading document files into a workspace, following name references to
//! sibling files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use duality_core::document::{builtin_lattice, parse_document, DocumentError, Workspace};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::report::InputRecord;

/// Anything that makes the input unusable; maps to exit code 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Document { path: String, source: Box<DocumentError> },
    #[error(transparent)]
    Workspace(Box<DocumentError>),
    #[error(transparent)]
    Core(Box<duality_core::error::Error>),
    #[error("{0}")]
    Usage(String),
}

impl From<DocumentError> for InputError {
    fn from(e: DocumentError) -> Self {
        InputError::Workspace(Box::new(e))
    }
}

impl From<duality_core::error::Error> for InputError {
    fn from(e: duality_core::error::Error) -> Self {
        match e {
            duality_core::error::Error::Document(d) => InputError::Workspace(d),
            other => InputError::Core(Box::new(other)),
        }
    }
}

#[derive(Debug, Default)]
pub struct Loaded {
    pub ws: Workspace,
    pub inputs: Vec<InputRecord>,
    origin: BTreeMap<String, PathBuf>,
}

impl Loaded {
    /// Loads a file and returns the document name. Built-in names pass
    /// through without touching the file system.
    pub fn add(&mut self, arg: &str) -> Result<String, InputError> {
        if builtin_lattice(arg).is_some() {
            if !self.inputs.iter().any(|i| i.name == arg) {
                self.inputs.push(InputRecord {
                    name: arg.to_string(),
                    kind: "lattice".into(),
                    path: "builtin".into(),
                    sha256: String::new(),
                });
            }
            return Ok(arg.to_string());
        }
        let path = Path::new(arg);
        let text = fs::read_to_string(path).map_err(|source| InputError::Io { path: arg.to_string(), source })?;
        let doc = parse_document(&text)
            .map_err(|source| InputError::Document { path: arg.to_string(), source: Box::new(source) })?;
        let name = doc.name().to_string();
        if let Some(prev) = self.origin.get(&name) {
            if fs::canonicalize(prev).ok() == fs::canonicalize(path).ok() {
                return Ok(name);
            }
        }
        self.inputs.push(InputRecord {
            name: name.clone(),
            kind: doc.kind().to_string(),
            path: arg.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
        self.ws
            .insert(doc)
            .map_err(|source| InputError::Document { path: arg.to_string(), source: Box::new(source) })?;
        self.origin.insert(name.clone(), path.to_path_buf());
        Ok(name)
    }

    /// Loads `<dir>/<name>.toml` for every unresolved reference, where `dir`
    /// is the directory of the referring document, until nothing changes;
    /// then checks that every reference resolves to the right kind.
    pub fn resolve(&mut self) -> Result<(), InputError> {
        loop {
            let mut progress = false;
            for (doc, _, name) in self.ws.unresolved() {
                if self.ws.contains(&name) {
                    continue;
                }
                let dir = self.origin.get(&doc).and_then(|p| p.parent()).map(Path::to_path_buf).unwrap_or_default();
                let candidate = dir.join(format!("{name}.toml"));
                if candidate.is_file() {
                    let loaded = self.add(&candidate.to_string_lossy())?;
                    progress |= loaded == name;
                }
            }
            if !progress {
                break;
            }
        }
        self.ws.check_references()?;
        Ok(())
    }

    /// Records a built-in lattice referenced indirectly.
    pub fn note_builtins(&mut self) {
        let names: Vec<String> = self
            .ws
            .documents()
            .flat_map(|d| d.references().into_iter().map(|(_, n, _)| n.to_string()).collect::<Vec<_>>())
            .filter(|n| builtin_lattice(n).is_some())
            .collect();
        for n in names {
            let _ = self.add(&n);
        }
    }
}
