//! `key=value` metadata files that sit next to hypergraph text files.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Renders pairs one per line, in the given order.
pub fn render<K: AsRef<str>, V: AsRef<str>>(pairs: &[(K, V)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(k.as_ref());
        out.push('=');
        out.push_str(v.as_ref());
        out.push('\n');
    }
    out
}

/// Parsed metadata. Blank lines and `#` comments are skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata(BTreeMap<String, String>);

impl Metadata {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key=value, got {line:?}"),
            })?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Metadata(map))
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Required key parsed as `T`.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self
            .get_str(key)
            .ok_or_else(|| Error::input(format!("metadata is missing {key:?}")))?;
        raw.parse()
            .map_err(|_| Error::input(format!("metadata {key:?} has bad value {raw:?}")))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = render(&[("seed", "7"), ("host", "complete")]);
        assert_eq!(text, "seed=7\nhost=complete\n");
        let m = Metadata::parse(&format!("# note\n\n{text}")).unwrap();
        assert_eq!(m.get::<u64>("seed").unwrap(), 7);
        assert_eq!(m.get_str("host"), Some("complete"));
        assert!(m.get::<u64>("host").is_err());
        assert!(m.get::<u64>("missing").is_err());
        assert!(matches!(Metadata::parse("oops"), Err(Error::Parse { line: 1, .. })));
    }
}
