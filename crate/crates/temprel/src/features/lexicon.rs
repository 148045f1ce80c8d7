//! Pluggable lexicons (WordNet-style supersenses, Levin-style verb classes)
//! and the proper-name rule set.
//!
//! Lexicon files are plain TSV: `lemma<TAB>class[,class...]`, first class =
//! prime sense. Lemmas absent from a lexicon fall back to themselves.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Result, TemprelError};

/// A lemma -> ordered class list mapping. Lookups are case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    name: String,
    entries: HashMap<String, Vec<String>>,
}

impl Lexicon {
    pub fn empty(name: impl Into<String>) -> Lexicon {
        Lexicon {
            name: name.into(),
            entries: HashMap::new(),
        }
    }

    pub fn from_tsv(name: impl Into<String>, text: &str) -> Result<Lexicon> {
        let name = name.into();
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lemma, classes) = line.split_once('\t').ok_or_else(|| {
                TemprelError::Data(format!(
                    "lexicon {name}: line {}: expected lemma<TAB>classes",
                    lineno + 1
                ))
            })?;
            let classes: Vec<String> = classes
                .split(',')
                .map(|c| c.trim().to_string())
                .filter(|c| !c.is_empty())
                .collect();
            if classes.is_empty() {
                return Err(TemprelError::Data(format!(
                    "lexicon {name}: line {}: empty class list",
                    lineno + 1
                )));
            }
            entries.insert(lemma.trim().to_lowercase(), classes);
        }
        Ok(Lexicon { name, entries })
    }

    pub fn load(path: &Path) -> Result<Lexicon> {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "lexicon".to_string());
        let text = fs::read_to_string(path)
            .map_err(|e| TemprelError::Data(format!("cannot read {}: {e}", path.display())))?;
        Lexicon::from_tsv(name, &text)
    }

    pub fn insert(&mut self, lemma: &str, classes: Vec<String>) {
        assert!(!classes.is_empty(), "class list must be non-empty");
        self.entries.insert(lemma.to_lowercase(), classes);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First-listed (prime sense) class of `lemma`, if present.
    pub fn prime_class(&self, lemma: &str) -> Option<&str> {
        self.entries
            .get(&lemma.to_lowercase())
            .map(|c| c[0].as_str())
    }

    /// Prime class, defaulting to the lemma itself when unlisted.
    pub fn class_or_lemma(&self, lemma: &str) -> String {
        match self.prime_class(lemma) {
            Some(c) => c.to_string(),
            None => lemma.to_lowercase(),
        }
    }
}

/// Rules that map proper-name token sequences to the general categories
/// `person`, `organisation`, and `location`. Matching is case-insensitive;
/// organisation cues win over person cues, which win over location cues.
#[derive(Debug, Clone)]
pub struct RuleSet {
    org_suffixes: Vec<&'static str>,
    person_titles: Vec<&'static str>,
    location_first: Vec<&'static str>,
    location_last: Vec<&'static str>,
}

pub const CATEGORY_PERSON: &str = "person";
pub const CATEGORY_ORGANISATION: &str = "organisation";
pub const CATEGORY_LOCATION: &str = "location";

impl Default for RuleSet {
    fn default() -> RuleSet {
        RuleSet {
            org_suffixes: vec![
                "inc", "inc.", "corp", "corp.", "co", "co.", "cos.", "ltd", "ltd.", "plc",
                "laboratories", "labs", "associates", "industries", "holdings", "group",
                "bancorp", "partners", "bros.", "companies", "airlines", "systems",
                "enterprises", "communications",
            ],
            person_titles: vec![
                "mr.", "mrs.", "ms.", "dr.", "prof.", "messrs.", "sen.", "rep.", "gov.", "sir",
            ],
            location_first: vec![
                "new", "north", "south", "east", "west", "san", "santa", "los", "las", "lake",
                "mount", "fort", "port", "st.", "saint", "el",
            ],
            location_last: vec![
                "england", "york", "angeles", "francisco", "diego", "jersey", "hampshire",
                "mexico", "dakota", "carolina", "virginia", "island", "islands", "city",
                "county", "valley", "beach", "coast", "bay", "hills", "springs", "america",
                "europe", "asia", "africa", "china", "japan", "kong", "britain", "states",
                "kingdom", "canada", "texas", "california", "florida", "washington", "chicago",
                "boston", "london", "paris", "tokyo",
            ],
        }
    }
}

impl RuleSet {
    /// Classify a proper-noun token sequence, or `None` when no rule fires.
    pub fn classify(&self, tokens: &[&str]) -> Option<&'static str> {
        if tokens.is_empty() {
            return None;
        }
        let lower: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
        let first = lower.first().unwrap().as_str();
        let last = lower.last().unwrap().as_str();
        if self.org_suffixes.contains(&last) {
            return Some(CATEGORY_ORGANISATION);
        }
        if self.person_titles.contains(&first) || lower.iter().any(|t| is_initial(t)) {
            return Some(CATEGORY_PERSON);
        }
        if self.location_first.contains(&first) || self.location_last.contains(&last) {
            return Some(CATEGORY_LOCATION);
        }
        None
    }
}

/// A middle initial like "Y.".
fn is_initial(token: &str) -> bool {
    let b = token.as_bytes();
    b.len() == 2 && b[0].is_ascii_alphabetic() && b[1] == b'.'
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_prime_sense_and_fallback() {
        let lex = Lexicon::from_tsv("wn", "lose\tpossession,contact\ncomplete\tchange\n").unwrap();
        assert_eq!(lex.prime_class("lose"), Some("possession"));
        assert_eq!(lex.prime_class("Lose"), Some("possession"));
        assert_eq!(lex.class_or_lemma("frobnicate"), "frobnicate");
        assert_eq!(lex.len(), 2);
    }

    #[test]
    fn lexicon_rejects_malformed_rows() {
        assert!(Lexicon::from_tsv("bad", "nocolumn\n").is_err());
        assert!(Lexicon::from_tsv("bad", "word\t\n").is_err());
    }

    #[test]
    fn ner_rules_cover_the_three_categories() {
        let ner = RuleSet::default();
        assert_eq!(
            ner.classify(&["United", "Laboratories", "Inc."]),
            Some(CATEGORY_ORGANISATION)
        );
        assert_eq!(
            ner.classify(&["Jose", "Y.", "Campos"]),
            Some(CATEGORY_PERSON)
        );
        assert_eq!(ner.classify(&["New", "England"]), Some(CATEGORY_LOCATION));
        assert_eq!(ner.classify(&["Frobnitz"]), None);
        assert_eq!(ner.classify(&[]), None);
    }
}
