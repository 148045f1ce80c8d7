//! Table-driven lemmatizer: an exceptions table (bundled TSV) consulted
//! first, then POS-keyed suffix rules. Deterministic; unknown words pass
//! through lowercased.

use std::collections::HashMap;
use std::sync::OnceLock;

/// Coarse POS class used to key the exceptions table and rule groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum PosClass {
    Verb,
    Noun,
    Adj,
    Other,
}

impl PosClass {
    fn from_tag(tag: &str) -> PosClass {
        if tag.starts_with("VB") || tag == "MD" || tag.starts_with("AUX") {
            PosClass::Verb
        } else if tag.starts_with("NN") {
            PosClass::Noun
        } else if tag.starts_with("JJ") {
            PosClass::Adj
        } else {
            PosClass::Other
        }
    }

    fn from_code(code: &str) -> Option<PosClass> {
        match code {
            "v" => Some(PosClass::Verb),
            "n" => Some(PosClass::Noun),
            "a" => Some(PosClass::Adj),
            _ => None,
        }
    }
}

fn exceptions() -> &'static HashMap<(String, PosClass), String> {
    static TABLE: OnceLock<HashMap<(String, PosClass), String>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut map = HashMap::new();
        for (lineno, line) in include_str!("../../data/lemma_exceptions.tsv")
            .lines()
            .enumerate()
        {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (word, code, lemma) = match (cols.next(), cols.next(), cols.next()) {
                (Some(w), Some(c), Some(l)) => (w, c, l),
                _ => panic!("malformed lemma exceptions row at line {}", lineno + 1),
            };
            let class = PosClass::from_code(code)
                .unwrap_or_else(|| panic!("bad POS class '{code}' at line {}", lineno + 1));
            map.insert((word.to_string(), class), lemma.to_string());
        }
        map
    })
}

/// Lowercased lemma of `token` under Treebank POS tag `pos`.
pub fn lemmatize(token: &str, pos: &str) -> String {
    let word = token.to_lowercase();
    let class = PosClass::from_tag(pos);
    if let Some(lemma) = exceptions().get(&(word.clone(), class)) {
        return lemma.clone();
    }
    match class {
        PosClass::Verb => match pos {
            "VBZ" => strip_third_singular(&word),
            "VBD" | "VBN" => strip_past(&word),
            "VBG" => strip_gerund(&word),
            _ => word,
        },
        PosClass::Noun => match pos {
            "NNS" | "NNPS" => strip_plural(&word),
            _ => word,
        },
        PosClass::Adj => match pos {
            "JJR" => strip_comparative(&word),
            "JJS" => strip_superlative(&word),
            _ => word,
        },
        PosClass::Other => word,
    }
}

fn is_vowel(b: u8) -> bool {
    matches!(b, b'a' | b'e' | b'i' | b'o' | b'u')
}

/// Stems ending consonant-vowel-consonant usually dropped a final "e"
/// before the suffix ("complet" -> "complete", "hop" -> "hope"). Final
/// l/n/r/w/x/y are excluded so "open", "enter", "travel" stay bare.
fn restore_e(stem: &str) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 3
        && b[n - 1].is_ascii_alphabetic()
        && !is_vowel(b[n - 1])
        && !matches!(b[n - 1], b'l' | b'n' | b'r' | b'w' | b'x' | b'y')
        && is_vowel(b[n - 2])
        && b[n - 3].is_ascii_alphabetic()
        && !is_vowel(b[n - 3])
    {
        format!("{stem}e")
    } else {
        stem.to_string()
    }
}

/// Doubled final consonants from suffixation ("plann", "stopp") undouble;
/// ll/ss/ff/zz are genuine stem endings ("call", "pass") and stay.
fn undouble(stem: &str) -> Option<String> {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 3
        && b[n - 1] == b[n - 2]
        && matches!(b[n - 1], b'b' | b'd' | b'g' | b'm' | b'n' | b'p' | b'r' | b't')
    {
        Some(stem[..n - 1].to_string())
    } else {
        None
    }
}

fn strip_third_singular(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("sses") {
        return format!("{stem}ss");
    }
    if let Some(stem) = w.strip_suffix("ies") {
        return if w.len() > 4 {
            format!("{stem}y")
        } else {
            format!("{stem}ie")
        };
    }
    for suf in ["xes", "zes", "ches", "shes", "oes"] {
        if let Some(stem) = w.strip_suffix(suf) {
            return format!("{}{}", stem, &suf[..suf.len() - 2]);
        }
    }
    match w.strip_suffix("es") {
        Some(stem) if stem.len() >= 2 => return format!("{stem}e"),
        _ => {}
    }
    match w.strip_suffix('s') {
        Some(stem) if !stem.ends_with('s') && !stem.ends_with('u') && stem.len() >= 2 => {
            stem.to_string()
        }
        _ => w.to_string(),
    }
}

fn strip_past(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("ied") {
        return if w.len() > 4 {
            format!("{stem}y")
        } else {
            format!("{stem}ie")
        };
    }
    if let Some(stem) = w.strip_suffix("eed") {
        return format!("{stem}ee");
    }
    if let Some(stem) = w.strip_suffix("ed") {
        if stem.len() < 2 {
            return w.to_string();
        }
        if let Some(u) = undouble(stem) {
            return u;
        }
        return restore_e(stem);
    }
    w.to_string()
}

fn strip_gerund(w: &str) -> String {
    if w.len() <= 4 {
        return w.to_string();
    }
    if let Some(stem) = w.strip_suffix("ing") {
        if stem.is_empty() {
            return w.to_string();
        }
        if let Some(u) = undouble(stem) {
            return u;
        }
        return restore_e(stem);
    }
    w.to_string()
}

fn strip_plural(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("sses") {
        return format!("{stem}ss");
    }
    if let Some(stem) = w.strip_suffix("ies") {
        return if w.len() > 4 {
            format!("{stem}y")
        } else {
            format!("{stem}ie")
        };
    }
    for suf in ["xes", "zes", "ches", "shes", "oes"] {
        if let Some(stem) = w.strip_suffix(suf) {
            return format!("{}{}", stem, &suf[..suf.len() - 2]);
        }
    }
    match w.strip_suffix("es") {
        Some(stem) if stem.len() >= 2 => return format!("{stem}e"),
        _ => {}
    }
    match w.strip_suffix('s') {
        Some(stem)
            if !stem.ends_with('s')
                && !stem.ends_with('u')
                && !stem.ends_with('i')
                && stem.len() >= 2 =>
        {
            stem.to_string()
        }
        _ => w.to_string(),
    }
}

fn strip_comparative(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("ier") {
        if w.len() > 4 {
            return format!("{stem}y");
        }
    }
    if let Some(stem) = w.strip_suffix("er") {
        if stem.len() < 2 {
            return w.to_string();
        }
        if let Some(u) = undouble(stem) {
            return u;
        }
        return restore_e(stem);
    }
    w.to_string()
}

fn strip_superlative(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("iest") {
        if w.len() > 5 {
            return format!("{stem}y");
        }
    }
    if let Some(stem) = w.strip_suffix("est") {
        if stem.len() < 2 {
            return w.to_string();
        }
        if let Some(u) = undouble(stem) {
            return u;
        }
        return restore_e(stem);
    }
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn past_participles() {
        assert_eq!(lemmatize("completed", "VBN"), "complete");
        assert_eq!(lemmatize("walked", "VBD"), "walk");
        assert_eq!(lemmatize("planned", "VBD"), "plan");
        assert_eq!(lemmatize("called", "VBD"), "call");
        assert_eq!(lemmatize("agreed", "VBD"), "agree");
        assert_eq!(lemmatize("tried", "VBD"), "try");
        assert_eq!(lemmatize("died", "VBD"), "die");
        assert_eq!(lemmatize("hoped", "VBN"), "hope");
        assert_eq!(lemmatize("wanted", "VBD"), "want");
        assert_eq!(lemmatize("opened", "VBD"), "open");
        assert_eq!(lemmatize("entered", "VBD"), "enter");
    }

    #[test]
    fn irregular_verbs_come_from_the_exceptions_table() {
        assert_eq!(lemmatize("said", "VBD"), "say");
        assert_eq!(lemmatize("sold", "VBD"), "sell");
        assert_eq!(lemmatize("lost", "VBD"), "lose");
        assert_eq!(lemmatize("rose", "VBD"), "rise");
        assert_eq!(lemmatize("became", "VBD"), "become");
        assert_eq!(lemmatize("was", "AUX"), "be");
        assert_eq!(lemmatize("is", "AUX"), "be");
        assert_eq!(lemmatize("has", "VBZ"), "have");
    }

    #[test]
    fn identity_cases_pass_through_lowercased() {
        assert_eq!(lemmatize("dog", "NN"), "dog");
        assert_eq!(lemmatize("Dog", "NN"), "dog");
        assert_eq!(lemmatize("frobnicate", "VB"), "frobnicate");
        assert_eq!(lemmatize("xyzzy", "XYZ"), "xyzzy");
    }

    #[test]
    fn plural_nouns() {
        assert_eq!(lemmatize("jobs", "NNS"), "job");
        assert_eq!(lemmatize("employees", "NNS"), "employee");
        assert_eq!(lemmatize("companies", "NNS"), "company");
        assert_eq!(lemmatize("sales", "NNS"), "sale");
        assert_eq!(lemmatize("taxes", "NNS"), "tax");
        assert_eq!(lemmatize("classes", "NNS"), "class");
        assert_eq!(lemmatize("men", "NNS"), "man");
        assert_eq!(lemmatize("series", "NNS"), "series");
    }

    #[test]
    fn present_tense_and_gerunds() {
        assert_eq!(lemmatize("loses", "VBZ"), "lose");
        assert_eq!(lemmatize("watches", "VBZ"), "watch");
        assert_eq!(lemmatize("passes", "VBZ"), "pass");
        assert_eq!(lemmatize("makes", "VBZ"), "make");
        assert_eq!(lemmatize("pays", "VBZ"), "pay");
        assert_eq!(lemmatize("completing", "VBG"), "complete");
        assert_eq!(lemmatize("planning", "VBG"), "plan");
        assert_eq!(lemmatize("saying", "VBG"), "say");
    }

    #[test]
    fn adjectives() {
        assert_eq!(lemmatize("newer", "JJR"), "new");
        assert_eq!(lemmatize("earlier", "JJR"), "early");
        assert_eq!(lemmatize("bigger", "JJR"), "big");
        assert_eq!(lemmatize("latest", "JJS"), "late");
        assert_eq!(lemmatize("newest", "JJS"), "new");
        assert_eq!(lemmatize("better", "JJR"), "good");
        assert_eq!(lemmatize("last", "JJ"), "last");
    }
}
