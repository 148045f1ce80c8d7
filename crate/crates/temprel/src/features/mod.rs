//! The nine feature classes computed over clause trees, plus the compact
//! feature-configuration strings that select subsets of them.
//!
//! | code | class                      |
//! |------|----------------------------|
//! | T    | temporal signature         |
//! | V    | verb identity              |
//! | VW   | WordNet verb supersense    |
//! | VL   | Levin verb class           |
//! | N    | noun identity              |
//! | NW   | WordNet noun supersense    |
//! | A    | adjective                  |
//! | S    | syntactic signature        |
//! | R    | argument signature         |
//! | P    | clause position            |

mod lexicon;
mod signature;

pub use lexicon::{
    Lexicon, RuleSet, CATEGORY_LOCATION, CATEGORY_ORGANISATION, CATEGORY_PERSON,
};
pub use signature::{
    argument_signature, syntactic_signature, verbal_complexes, Aspect, Finiteness, Modality,
    Polarity, TemporalSignature, VerbalComplex, Voice,
};

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TemprelError};
use crate::extraction::{ClausePair, Position};
use crate::treebank::{lemmatize, ParseTree};

/// The feature classes, ordered by their canonical code.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum FeatureClass {
    #[serde(rename = "A")]
    Adjective,
    #[serde(rename = "N")]
    Noun,
    #[serde(rename = "NW")]
    NounClass,
    #[serde(rename = "P")]
    Position,
    #[serde(rename = "R")]
    ArgSignature,
    #[serde(rename = "S")]
    SynSignature,
    #[serde(rename = "T")]
    TempSignature,
    #[serde(rename = "V")]
    Verb,
    #[serde(rename = "VL")]
    VerbLevin,
    #[serde(rename = "VW")]
    VerbWordNet,
}

pub const ALL_CLASSES: [FeatureClass; 10] = [
    FeatureClass::Adjective,
    FeatureClass::Noun,
    FeatureClass::NounClass,
    FeatureClass::Position,
    FeatureClass::ArgSignature,
    FeatureClass::SynSignature,
    FeatureClass::TempSignature,
    FeatureClass::Verb,
    FeatureClass::VerbLevin,
    FeatureClass::VerbWordNet,
];

impl FeatureClass {
    pub fn code(&self) -> &'static str {
        match self {
            FeatureClass::Adjective => "A",
            FeatureClass::Noun => "N",
            FeatureClass::NounClass => "NW",
            FeatureClass::Position => "P",
            FeatureClass::ArgSignature => "R",
            FeatureClass::SynSignature => "S",
            FeatureClass::TempSignature => "T",
            FeatureClass::Verb => "V",
            FeatureClass::VerbLevin => "VL",
            FeatureClass::VerbWordNet => "VW",
        }
    }
}

impl fmt::Display for FeatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A non-empty set of feature classes, written compactly as e.g. "SV" or
/// "NPRSTV" (two-letter codes NW/VL/VW bind greedily).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FeatureConfig(Vec<FeatureClass>);

impl FeatureConfig {
    pub fn new(classes: impl IntoIterator<Item = FeatureClass>) -> Result<FeatureConfig> {
        let mut list: Vec<FeatureClass> = classes.into_iter().collect();
        list.sort();
        list.dedup();
        if list.is_empty() {
            return Err(TemprelError::Config("empty feature configuration".into()));
        }
        Ok(FeatureConfig(list))
    }

    /// All ten classes.
    pub fn all() -> FeatureConfig {
        FeatureConfig(ALL_CLASSES.to_vec())
    }

    /// All classes except clause position (the fusion feature space).
    pub fn all_without_position() -> FeatureConfig {
        FeatureConfig(
            ALL_CLASSES
                .iter()
                .copied()
                .filter(|c| *c != FeatureClass::Position)
                .collect(),
        )
    }

    pub fn classes(&self) -> &[FeatureClass] {
        &self.0
    }

    pub fn contains(&self, class: FeatureClass) -> bool {
        self.0.binary_search(&class).is_ok()
    }

    pub fn has_position(&self) -> bool {
        self.contains(FeatureClass::Position)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    /// This configuration minus the position class, if anything remains.
    pub fn without_position(&self) -> Result<FeatureConfig> {
        FeatureConfig::new(
            self.0
                .iter()
                .copied()
                .filter(|c| *c != FeatureClass::Position),
        )
    }
}

impl FromStr for FeatureConfig {
    type Err = TemprelError;

    fn from_str(s: &str) -> Result<FeatureConfig> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(TemprelError::Config("empty feature configuration".into()));
        }
        let mut classes = Vec::new();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let two = compact.get(i..i + 2);
            let class = match two {
                Some("NW") => Some((FeatureClass::NounClass, 2)),
                Some("VL") => Some((FeatureClass::VerbLevin, 2)),
                Some("VW") => Some((FeatureClass::VerbWordNet, 2)),
                _ => None,
            };
            let (class, step) = match class {
                Some(c) => c,
                None => {
                    let c = match &compact[i..i + 1] {
                        "A" => FeatureClass::Adjective,
                        "N" => FeatureClass::Noun,
                        "P" => FeatureClass::Position,
                        "R" => FeatureClass::ArgSignature,
                        "S" => FeatureClass::SynSignature,
                        "T" => FeatureClass::TempSignature,
                        "V" => FeatureClass::Verb,
                        other => {
                            return Err(TemprelError::Config(format!(
                                "unknown feature class '{other}' in '{s}'"
                            )))
                        }
                    };
                    (c, 1)
                }
            };
            if classes.contains(&class) {
                return Err(TemprelError::Config(format!(
                    "duplicate feature class '{}' in '{s}'",
                    class.code()
                )));
            }
            classes.push(class);
            i += step;
        }
        FeatureConfig::new(classes)
    }
}

impl fmt::Display for FeatureConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            f.write_str(c.code())?;
        }
        Ok(())
    }
}

impl TryFrom<String> for FeatureConfig {
    type Error = TemprelError;
    fn try_from(s: String) -> Result<FeatureConfig> {
        s.parse()
    }
}

impl From<FeatureConfig> for String {
    fn from(c: FeatureConfig) -> String {
        c.to_string()
    }
}

/// Which clause of the pair a bundle was extracted from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Main,
    Sub,
}

impl Side {
    pub fn code(&self) -> &'static str {
        match self {
            Side::Main => "M",
            Side::Sub => "S",
        }
    }
}

/// Per-clause feature values: a bag of categorical strings per selected
/// class, plus the lowercased clause tokens for word-based models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureBundle {
    pub side: Side,
    values: BTreeMap<FeatureClass, Vec<String>>,
    words: Vec<String>,
}

impl FeatureBundle {
    pub fn new(side: Side) -> FeatureBundle {
        FeatureBundle {
            side,
            values: BTreeMap::new(),
            words: Vec::new(),
        }
    }

    pub fn values(&self, class: FeatureClass) -> &[String] {
        self.values.get(&class).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn classes(&self) -> impl Iterator<Item = FeatureClass> + '_ {
        self.values.keys().copied()
    }

    pub fn insert(&mut self, class: FeatureClass, bag: Vec<String>) {
        self.values.insert(class, bag);
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn set_words(&mut self, words: Vec<String>) {
        self.words = words;
    }

    /// A copy restricted to the classes of `config` (words kept).
    pub fn project(&self, config: &FeatureConfig) -> FeatureBundle {
        FeatureBundle {
            side: self.side,
            values: self
                .values
                .iter()
                .filter(|(c, _)| config.contains(**c))
                .map(|(c, v)| (*c, v.clone()))
                .collect(),
            words: self.words.clone(),
        }
    }
}

/// The lexical resources feature extraction draws on. Missing lexicons are
/// simply empty; every lookup then falls back to the lemma itself.
#[derive(Debug, Clone)]
pub struct LexiconSet {
    pub wordnet_verbs: Lexicon,
    pub levin_verbs: Lexicon,
    pub wordnet_nouns: Lexicon,
    pub ner: RuleSet,
}

impl Default for LexiconSet {
    fn default() -> LexiconSet {
        LexiconSet {
            wordnet_verbs: Lexicon::empty("wordnet_verbs"),
            levin_verbs: Lexicon::empty("levin_verbs"),
            wordnet_nouns: Lexicon::empty("wordnet_nouns"),
            ner: RuleSet::default(),
        }
    }
}

impl LexiconSet {
    /// Load `wordnet_verbs.tsv`, `levin_verbs.tsv`, and `wordnet_nouns.tsv`
    /// from a directory; files that do not exist yield empty lexicons.
    pub fn load_dir(dir: &Path) -> Result<LexiconSet> {
        let mut set = LexiconSet::default();
        for (slot, file) in [
            (&mut set.wordnet_verbs, "wordnet_verbs.tsv"),
            (&mut set.levin_verbs, "levin_verbs.tsv"),
            (&mut set.wordnet_nouns, "wordnet_nouns.tsv"),
        ] {
            let path = dir.join(file);
            if path.exists() {
                *slot = Lexicon::load(&path)?;
            }
        }
        Ok(set)
    }
}

/// Temporal signatures of every verbal complex in the clause.
pub fn temporal_signatures(clause: &ParseTree) -> Vec<TemporalSignature> {
    verbal_complexes(clause)
        .iter()
        .filter_map(|c| c.signature())
        .collect()
}

/// Verb identity (V), WordNet supersense (VW), and Levin class (VL) bags.
/// Auxiliaries are excluded: each complex contributes its content verb only.
pub fn verb_features(
    clause: &ParseTree,
    wordnet: &Lexicon,
    levin: &Lexicon,
) -> (Vec<String>, Vec<String>, Vec<String>) {
    let mut v = Vec::new();
    let mut vw = Vec::new();
    let mut vl = Vec::new();
    for complex in verbal_complexes(clause) {
        if let Some(lemma) = complex.head_lemma() {
            vw.push(wordnet.class_or_lemma(&lemma));
            vl.push(levin.class_or_lemma(&lemma));
            v.push(lemma);
        }
    }
    (v, vw, vl)
}

/// Noun identity (N) and WordNet noun class (NW) bags.
///
/// Each NP contributes the lemma of its rightmost direct noun leaf (the
/// compound head); proper-name sequences matched by the rule set are
/// replaced by `person`/`organisation`/`location`.
pub fn noun_features(
    clause: &ParseTree,
    wordnet_nouns: &Lexicon,
    ner: &RuleSet,
) -> (Vec<String>, Vec<String>) {
    let mut n = Vec::new();
    for np in clause.find_nodes(&|node| !node.is_leaf() && node.category() == "NP") {
        let nominal: Vec<&ParseTree> = np
            .children()
            .iter()
            .filter(|c| c.is_leaf() && c.label().starts_with("NN"))
            .collect();
        if nominal.is_empty() {
            continue;
        }
        let proper: Vec<&str> = nominal
            .iter()
            .filter(|l| l.label().starts_with("NNP"))
            .filter_map(|l| l.token())
            .collect();
        if proper.len() == nominal.len() {
            if let Some(category) = ner.classify(&proper) {
                n.push(category.to_string());
                continue;
            }
        }
        let head = nominal.last().unwrap();
        n.push(lemmatize(head.token().unwrap_or_default(), head.label()));
    }
    let nw = n.iter().map(|v| wordnet_nouns.class_or_lemma(v)).collect();
    (n, nw)
}

/// Lemmatized adjectives (JJ/JJR/JJS leaves).
pub fn adjective_features(clause: &ParseTree) -> Vec<String> {
    clause
        .leaves()
        .into_iter()
        .filter(|l| l.label().starts_with("JJ"))
        .map(|l| lemmatize(l.token().unwrap_or_default(), l.label()))
        .collect()
}

fn position_value(position: Position) -> String {
    match position {
        Position::SubFirst => "sub_first".to_string(),
        Position::SubSecond => "sub_second".to_string(),
    }
}

/// Feature bundle of a single clause. `position` must be given iff the
/// configuration selects P.
fn clause_bundle(
    clause: &ParseTree,
    side: Side,
    config: &FeatureConfig,
    lexicons: &LexiconSet,
    position: Option<Position>,
) -> FeatureBundle {
    let mut bundle = FeatureBundle::new(side);
    let verbish = config.contains(FeatureClass::Verb)
        || config.contains(FeatureClass::VerbWordNet)
        || config.contains(FeatureClass::VerbLevin);
    if verbish {
        let (v, vw, vl) = verb_features(clause, &lexicons.wordnet_verbs, &lexicons.levin_verbs);
        if config.contains(FeatureClass::Verb) {
            bundle.insert(FeatureClass::Verb, v);
        }
        if config.contains(FeatureClass::VerbWordNet) {
            bundle.insert(FeatureClass::VerbWordNet, vw);
        }
        if config.contains(FeatureClass::VerbLevin) {
            bundle.insert(FeatureClass::VerbLevin, vl);
        }
    }
    let nounish = config.contains(FeatureClass::Noun) || config.contains(FeatureClass::NounClass);
    if nounish {
        let (n, nw) = noun_features(clause, &lexicons.wordnet_nouns, &lexicons.ner);
        if config.contains(FeatureClass::Noun) {
            bundle.insert(FeatureClass::Noun, n);
        }
        if config.contains(FeatureClass::NounClass) {
            bundle.insert(FeatureClass::NounClass, nw);
        }
    }
    if config.contains(FeatureClass::Adjective) {
        bundle.insert(FeatureClass::Adjective, adjective_features(clause));
    }
    if config.contains(FeatureClass::TempSignature) {
        bundle.insert(
            FeatureClass::TempSignature,
            temporal_signatures(clause)
                .iter()
                .map(|s| s.canonical())
                .collect(),
        );
    }
    if config.contains(FeatureClass::SynSignature) {
        bundle.insert(FeatureClass::SynSignature, vec![syntactic_signature(clause)]);
    }
    if config.contains(FeatureClass::ArgSignature) {
        bundle.insert(FeatureClass::ArgSignature, vec![argument_signature(clause)]);
    }
    if config.contains(FeatureClass::Position) {
        let p = position.expect("position required when P is selected");
        bundle.insert(FeatureClass::Position, vec![position_value(p)]);
    }
    bundle.set_words(clause.tokens().iter().map(|t| t.to_lowercase()).collect());
    bundle
}

/// Main- and sub-clause bundles of a pair, populated for exactly the
/// selected classes. The position value, when selected, appears in both
/// bundles.
pub fn extract_bundle(
    pair: &ClausePair,
    config: &FeatureConfig,
    lexicons: &LexiconSet,
) -> (FeatureBundle, FeatureBundle) {
    let main = clause_bundle(
        &pair.main,
        Side::Main,
        config,
        lexicons,
        Some(pair.position),
    );
    let sub = clause_bundle(&pair.sub, Side::Sub, config, lexicons, Some(pair.position));
    (main, sub)
}

/// Bundle of a standalone clause fragment (fusion); the configuration must
/// not select the position class.
pub fn fragment_bundle(
    clause: &ParseTree,
    side: Side,
    config: &FeatureConfig,
    lexicons: &LexiconSet,
) -> Result<FeatureBundle> {
    if config.has_position() {
        return Err(TemprelError::Config(
            "position feature is not available for clause fragments".into(),
        ));
    }
    Ok(clause_bundle(clause, side, config, lexicons, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraction::{extract_pairs, MarkerSet};
    use crate::treebank::parse_tree;

    const FIG1: &str = "(S1 (S (NP (DT The) (NN company)) (VP (VBD said) (S (NP (NNS employees)) \
        (VP (MD will) (VP (VB lose) (NP (PRP their) (NNS jobs)) (SBAR-TMP (IN after) \
        (S (NP (DT the) (NN sale)) (VP (AUX is) (VP (VBN completed)))))))))))";

    fn fig1_pair() -> ClausePair {
        let tree = parse_tree(FIG1).unwrap();
        extract_pairs(&tree, &MarkerSet::default(), false, "fig1").remove(0)
    }

    #[test]
    fn config_strings_round_trip() {
        for s in ["SV", "NPRSTV", "NWPSVVLVW", "V", "ANNWPSV"] {
            let cfg: FeatureConfig = s.parse().unwrap();
            assert_eq!(cfg.to_string(), s, "canonical form of {s}");
            let again: FeatureConfig = cfg.to_string().parse().unwrap();
            assert_eq!(cfg, again);
        }
        // Order-insensitive set semantics.
        let a: FeatureConfig = "VS".parse().unwrap();
        let b: FeatureConfig = "SV".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_rejects_bad_strings() {
        assert!("".parse::<FeatureConfig>().is_err());
        assert!("X".parse::<FeatureConfig>().is_err());
        assert!("SVX".parse::<FeatureConfig>().is_err());
        assert!("VV".parse::<FeatureConfig>().is_err());
    }

    #[test]
    fn figure_verb_features() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let (v_main, _, _) = verb_features(&pair.main, &lex.wordnet_verbs, &lex.levin_verbs);
        assert_eq!(v_main, vec!["lose"]);
        let (v_sub, _, _) = verb_features(&pair.sub, &lex.wordnet_verbs, &lex.levin_verbs);
        assert_eq!(v_sub, vec!["complete"]);
    }

    #[test]
    fn verb_class_lookup_falls_back_to_lemma() {
        let clause = parse_tree("(S (NP (PRP it)) (VP (VBZ frobnicates)))").unwrap();
        let lex = LexiconSet::default();
        let (v, vw, vl) = verb_features(&clause, &lex.wordnet_verbs, &lex.levin_verbs);
        assert_eq!(v, vec!["frobnicate"]);
        assert_eq!(vw, vec!["frobnicate"]);
        assert_eq!(vl, vec!["frobnicate"]);

        let no_verb = parse_tree("(NP (DT the) (NN sale))").unwrap();
        let (v, vw, vl) = verb_features(&no_verb, &lex.wordnet_verbs, &lex.levin_verbs);
        assert!(v.is_empty() && vw.is_empty() && vl.is_empty());
    }

    #[test]
    fn figure_noun_features() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let (n_main, _) = noun_features(&pair.main, &lex.wordnet_nouns, &lex.ner);
        assert_eq!(n_main, vec!["employee", "job"]);
        let (n_sub, _) = noun_features(&pair.sub, &lex.wordnet_nouns, &lex.ner);
        assert_eq!(n_sub, vec!["sale"]);
    }

    #[test]
    fn proper_names_become_general_categories() {
        let clause =
            parse_tree("(S (NP (NNP United) (NNP Laboratories) (NNP Inc.)) (VP (VBD grew)))")
                .unwrap();
        let lex = LexiconSet::default();
        let (n, nw) = noun_features(&clause, &lex.wordnet_nouns, &lex.ner);
        assert_eq!(n, vec!["organisation"]);
        assert_eq!(nw, vec!["organisation"]);

        let no_np = parse_tree("(VP (VBD ran))").unwrap();
        let (n, nw) = noun_features(&no_np, &lex.wordnet_nouns, &lex.ner);
        assert!(n.is_empty() && nw.is_empty());
    }

    #[test]
    fn adjectives_are_lemmatized() {
        let clause =
            parse_tree("(S (NP (JJ last) (NN year)) (VP (VBD was) (ADJP (JJR newer))))").unwrap();
        assert_eq!(adjective_features(&clause), vec!["last", "new"]);
        let none = parse_tree("(NP (NN year))").unwrap();
        assert!(adjective_features(&none).is_empty());
    }

    #[test]
    fn bundles_cover_exactly_the_selected_classes() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let cfg: FeatureConfig = "SV".parse().unwrap();
        let (m, s) = extract_bundle(&pair, &cfg, &lex);
        let m_classes: Vec<FeatureClass> = m.classes().collect();
        assert_eq!(
            m_classes,
            vec![FeatureClass::SynSignature, FeatureClass::Verb]
        );
        assert_eq!(s.classes().count(), 2);
        assert_eq!(m.values(FeatureClass::Verb), ["lose"]);
        assert_eq!(
            m.values(FeatureClass::SynSignature),
            ["NP:2 VP:2 ADJP:0 ADVP:0 PP:0"]
        );
    }

    #[test]
    fn position_is_duplicated_into_both_bundles() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let cfg: FeatureConfig = "P".parse().unwrap();
        let (m, s) = extract_bundle(&pair, &cfg, &lex);
        assert_eq!(m.values(FeatureClass::Position), ["sub_second"]);
        assert_eq!(s.values(FeatureClass::Position), ["sub_second"]);
    }

    #[test]
    fn fragment_bundles_reject_position() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let cfg: FeatureConfig = "PSV".parse().unwrap();
        assert!(fragment_bundle(&pair.main, Side::Main, &cfg, &lex).is_err());
        let ok = fragment_bundle(
            &pair.main,
            Side::Main,
            &"SV".parse().unwrap(),
            &lex,
        )
        .unwrap();
        assert_eq!(ok.values(FeatureClass::Verb), ["lose"]);
    }

    #[test]
    fn extraction_is_deterministic() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let cfg = FeatureConfig::all();
        let a = extract_bundle(&pair, &cfg, &lex);
        let b = extract_bundle(&pair, &cfg, &lex);
        assert_eq!(a, b);
    }

    #[test]
    fn projection_keeps_words_and_drops_classes() {
        let pair = fig1_pair();
        let lex = LexiconSet::default();
        let (m, _) = extract_bundle(&pair, &FeatureConfig::all(), &lex);
        let proj = m.project(&"V".parse().unwrap());
        assert_eq!(proj.classes().count(), 1);
        assert_eq!(proj.words(), m.words());
        assert!(m.words().contains(&"employees".to_string()));
    }
}
