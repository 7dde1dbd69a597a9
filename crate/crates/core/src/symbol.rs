//! Propositional and lifted symbols.
//!
//! A symbol is either a flat identifier (`alpha`) or a structured atom over a
//! predicate and its object arguments, rendered as `[own,tom,book]`. Both
//! kinds share one namespace; equality, hashing and the canonical order are
//! all taken from the rendered form, which is injective because identifiers
//! never contain brackets or commas.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone)]
pub struct Symbol {
    rendered: Arc<str>,
    parts: Option<Arc<[Arc<str>]>>,
}

/// True for `[a-z0-9_]`-style identifiers as accepted by the fact grammar.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Symbol {
    /// A flat propositional symbol.
    pub fn new(name: &str) -> Result<Self, Error> {
        if !is_identifier(name) {
            return Err(Error::InvalidSymbol(name.to_string()));
        }
        Ok(Symbol {
            rendered: Arc::from(name),
            parts: None,
        })
    }

    /// A structured symbol `[predicate, args...]`.
    pub fn structured<S: AsRef<str>>(predicate: &str, args: &[S]) -> Result<Self, Error> {
        let mut parts: Vec<Arc<str>> = Vec::with_capacity(args.len() + 1);
        for p in std::iter::once(predicate).chain(args.iter().map(|a| a.as_ref())) {
            if !is_identifier(p) {
                return Err(Error::InvalidSymbol(p.to_string()));
            }
            parts.push(Arc::from(p));
        }
        let rendered = format!(
            "[{}]",
            parts.iter().map(|p| &**p).collect::<Vec<_>>().join(",")
        );
        Ok(Symbol {
            rendered: Arc::from(rendered),
            parts: Some(parts.into()),
        })
    }

    /// Parses either form: `alpha` or `[own,tom,book]`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let items: Vec<&str> = inner.split(',').map(str::trim).collect();
            match items.split_first() {
                Some((pred, args)) if !pred.is_empty() => Symbol::structured(pred, args),
                _ => Err(Error::InvalidSymbol(text.to_string())),
            }
        } else {
            Symbol::new(text)
        }
    }

    pub fn as_str(&self) -> &str {
        &self.rendered
    }

    pub fn is_structured(&self) -> bool {
        self.parts.is_some()
    }

    /// Predicate name of a structured symbol.
    pub fn predicate(&self) -> Option<&str> {
        self.parts.as_ref().map(|p| &*p[0])
    }

    /// Object arguments of a structured symbol (empty for flat symbols).
    pub fn arguments(&self) -> Vec<&str> {
        match &self.parts {
            Some(p) => p[1..].iter().map(|a| &**a).collect(),
            None => Vec::new(),
        }
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.rendered == other.rendered
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rendered.hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rendered.cmp(&other.rendered)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.rendered)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Symbol::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout tests and examples. Panics on a malformed name.
pub fn sym(name: &str) -> Symbol {
    Symbol::parse(name).unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_renders_with_brackets() {
        let s = Symbol::structured("own", &["tom", "book"]).unwrap();
        assert_eq!(s.as_str(), "[own,tom,book]");
        assert_eq!(s.predicate(), Some("own"));
        assert_eq!(s.arguments(), vec!["tom", "book"]);
        assert_eq!(Symbol::parse("[own, tom ,book]").unwrap(), s);
    }

    #[test]
    fn rejects_malformed_names() {
        assert!(Symbol::new("").is_err());
        assert!(Symbol::new("a,b").is_err());
        assert!(Symbol::parse("[]").is_err());
        assert!(Symbol::parse("[p,]").is_err());
    }

    #[test]
    fn order_is_lexicographic_on_rendered_form() {
        let mut v = [sym("gamma1"), sym("[like,car]"), sym("alpha"), sym("beta3")];
        v.sort();
        let names: Vec<_> = v.iter().map(Symbol::as_str).collect();
        assert_eq!(names, ["[like,car]", "alpha", "beta3", "gamma1"]);
    }
}
