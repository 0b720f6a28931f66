//! Name-keyed registries of interchangeable strategies.
//!
//! Subdivision algorithms, group presets, region rules and renderers are
//! all looked up at runtime by name through a [`Registry`].

use std::collections::BTreeMap;

/// Anything that can be registered under a stable name.
pub trait Named {
    fn name(&self) -> &'static str;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} `{name}` (available: {available})")]
pub struct UnknownEntry {
    pub kind: &'static str,
    pub name: String,
    pub available: String,
}

pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self { kind, entries: BTreeMap::new() }
    }

    /// Registers `entry`, replacing any previous entry with the same name.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        self.entries.insert(entry.name(), entry);
        self
    }

    pub fn get(&self, name: &str) -> Result<&T, UnknownEntry> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| UnknownEntry {
            kind: self.kind,
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.values().map(|b| b.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Hello;
    impl Named for Hello {
        fn name(&self) -> &'static str {
            "hello"
        }
    }
    impl Greeter for Hello {
        fn greet(&self) -> String {
            "hi".into()
        }
    }

    #[test]
    fn lookup_by_name() {
        let mut r: Registry<dyn Greeter> = Registry::new("greeter");
        r.register(Box::new(Hello));
        assert_eq!(r.get("hello").unwrap().greet(), "hi");
        let err = r.get("bye").err().unwrap();
        assert_eq!(err.to_string(), "unknown greeter `bye` (available: hello)");
    }
}
