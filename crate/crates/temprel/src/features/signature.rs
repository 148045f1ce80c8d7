//! Clause-level signatures read off the parse tree: the temporal signature
//! of each verbal complex, the syntactic signature (phrase counts), and the
//! argument signature (SUBJ/OBJ/PP/ADVP profile).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::treebank::{lemmatize, ParseTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finiteness {
    Past,
    Present,
    Infinitive,
    IngForm,
    EnForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Modality {
    None,
    Future,
    Ability,
    Possibility,
    Obligation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aspect {
    Imperfective,
    Perfective,
    Progressive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Voice {
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Affirmative,
    Negative,
}

/// The finiteness/modality/aspect/voice/polarity profile of one verbal
/// complex. Finiteness covers both finite (past, present) and non-finite
/// (infinitive, ing-form, en-form) shapes; the two are mutually exclusive
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalSignature {
    pub finiteness: Finiteness,
    pub modality: Modality,
    pub aspect: Aspect,
    pub voice: Voice,
    pub polarity: Polarity,
}

impl TemporalSignature {
    /// Canonical rendering used as a categorical feature value, e.g.
    /// "present+future+imperfective+active+affirmative".
    pub fn canonical(&self) -> String {
        format!(
            "{}+{}+{}+{}+{}",
            match self.finiteness {
                Finiteness::Past => "past",
                Finiteness::Present => "present",
                Finiteness::Infinitive => "infinitive",
                Finiteness::IngForm => "ing_form",
                Finiteness::EnForm => "en_form",
            },
            match self.modality {
                Modality::None => "none",
                Modality::Future => "future",
                Modality::Ability => "ability",
                Modality::Possibility => "possibility",
                Modality::Obligation => "obligation",
            },
            match self.aspect {
                Aspect::Imperfective => "imperfective",
                Aspect::Perfective => "perfective",
                Aspect::Progressive => "progressive",
            },
            match self.voice {
                Voice::Active => "active",
                Voice::Passive => "passive",
            },
            match self.polarity {
                Polarity::Affirmative => "affirmative",
                Polarity::Negative => "negative",
            },
        )
    }
}

impl fmt::Display for TemporalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// One auxiliary-plus-verb chain found inside a clause, e.g. "will lose",
/// "is completed", "did not go".
#[derive(Debug, Clone)]
pub struct VerbalComplex {
    /// Verbal tokens in surface order as (lowercased token, POS tag).
    pub tokens: Vec<(String, String)>,
    pub negated: bool,
}

fn is_verb_tag(tag: &str) -> bool {
    tag.starts_with("VB") || tag == "MD" || tag.starts_with("AUX")
}

fn is_negation(token: &str) -> bool {
    matches!(token, "not" | "n't" | "never")
}

const BE_FORMS: [&str; 11] = [
    "be", "is", "are", "am", "was", "were", "been", "being", "'s", "'re", "'m",
];
const GET_FORMS: [&str; 5] = ["get", "gets", "got", "gotten", "getting"];
const HAVE_FORMS: [&str; 5] = ["have", "has", "had", "'ve", "'d"];

fn is_be_or_get(token: &str) -> bool {
    BE_FORMS.contains(&token) || GET_FORMS.contains(&token)
}

/// Identify the verbal complexes of a clause.
///
/// A complex starts at a VP whose parent is not a VP and follows the VP
/// spine downwards: direct verb leaves (VB*/MD/AUX*) join the complex, the
/// first VP child continues it, and every further VP child (coordination)
/// opens a new one. Other phrases are not entered; embedded clauses get
/// their own complexes via their own VPs.
pub fn verbal_complexes(clause: &ParseTree) -> Vec<VerbalComplex> {
    let mut complexes = Vec::new();
    let vp_paths = clause.find_paths(&|n| !n.is_leaf() && n.category() == "VP");
    for path in vp_paths {
        let parent_is_vp = !path.is_empty()
            && clause
                .node_at(&path[..path.len() - 1])
                .is_some_and(|p| p.category() == "VP");
        if parent_is_vp {
            continue;
        }
        let vp = clause.node_at(&path).expect("path from find_paths");
        let mut current = VerbalComplex {
            tokens: Vec::new(),
            negated: false,
        };
        collect_chain(vp, &mut current, &mut complexes);
        if !current.tokens.is_empty() {
            complexes.push(current);
        }
    }
    complexes
}

fn collect_chain(vp: &ParseTree, current: &mut VerbalComplex, out: &mut Vec<VerbalComplex>) {
    let mut continued = false;
    for child in vp.children() {
        if child.is_leaf() {
            let token = child.token().unwrap_or_default().to_lowercase();
            if is_verb_tag(child.label()) {
                current.tokens.push((token, child.label().to_string()));
            } else if is_negation(&token) {
                current.negated = true;
            }
        } else if child.category() == "VP" {
            if continued {
                let mut fresh = VerbalComplex {
                    tokens: Vec::new(),
                    negated: false,
                };
                collect_chain(child, &mut fresh, out);
                if !fresh.tokens.is_empty() {
                    out.push(fresh);
                }
            } else {
                continued = true;
                collect_chain(child, current, out);
            }
        }
    }
}

impl VerbalComplex {
    /// The content verb of the complex: its last verbal token, lemmatized.
    pub fn head_lemma(&self) -> Option<String> {
        self.tokens
            .last()
            .map(|(tok, tag)| lemmatize(tok, tag))
    }

    /// The temporal signature of the complex (None when it has no tokens).
    pub fn signature(&self) -> Option<TemporalSignature> {
        let (first_tok, first_tag) = self.tokens.first()?;
        let finiteness = if first_tag == "MD" {
            match first_tok.as_str() {
                "would" | "could" | "might" | "should" => Finiteness::Past,
                _ => Finiteness::Present,
            }
        } else if first_tag.starts_with("AUX") {
            match first_tok.as_str() {
                "was" | "were" | "did" | "had" | "'d" => Finiteness::Past,
                "be" => Finiteness::Infinitive,
                "been" => Finiteness::EnForm,
                "being" => Finiteness::IngForm,
                _ => Finiteness::Present,
            }
        } else {
            match first_tag.as_str() {
                "VBD" => Finiteness::Past,
                "VBZ" | "VBP" => Finiteness::Present,
                "VBG" => Finiteness::IngForm,
                "VBN" => Finiteness::EnForm,
                _ => Finiteness::Infinitive,
            }
        };

        let modality = self
            .tokens
            .iter()
            .find(|(_, tag)| tag == "MD")
            .map(|(tok, _)| match tok.as_str() {
                "will" | "wo" | "'ll" | "shall" | "would" => Modality::Future,
                "can" | "could" => Modality::Ability,
                "may" | "might" => Modality::Possibility,
                "must" | "should" | "ought" => Modality::Obligation,
                _ => Modality::None,
            })
            .unwrap_or(Modality::None);

        let aspect = if self.has_pattern(|t| HAVE_FORMS.contains(&t), |tag| {
            tag == "VBN" || tag == "VBD"
        }) {
            Aspect::Perfective
        } else if self.has_pattern(|t| BE_FORMS.contains(&t), |tag| tag == "VBG") {
            Aspect::Progressive
        } else {
            Aspect::Imperfective
        };

        let voice = if self.has_pattern(is_be_or_get, |tag| tag == "VBN") {
            Voice::Passive
        } else {
            Voice::Active
        };

        let polarity = if self.negated {
            Polarity::Negative
        } else {
            Polarity::Affirmative
        };

        Some(TemporalSignature {
            finiteness,
            modality,
            aspect,
            voice,
            polarity,
        })
    }

    /// True when some token satisfying `aux` is later followed by a token
    /// whose tag satisfies `participle`.
    fn has_pattern(
        &self,
        aux: impl Fn(&str) -> bool,
        participle: impl Fn(&str) -> bool,
    ) -> bool {
        for (i, (tok, _)) in self.tokens.iter().enumerate() {
            if aux(tok) {
                if self.tokens[i + 1..].iter().any(|(_, tag)| participle(tag)) {
                    return true;
                }
            }
        }
        false
    }
}

const COUNTED_CATEGORIES: [&str; 5] = ["NP", "VP", "ADJP", "ADVP", "PP"];

/// Phrase counts of a clause, rendered canonically as
/// "NP:a VP:b ADJP:c ADVP:d PP:e".
///
/// All descendant nodes of the five categories are counted (function tags
/// ignored, the clause root excluded), except nodes whose only child is a
/// verb leaf: those are part of a verb cluster, not a phrase of their own.
pub fn syntactic_signature(clause: &ParseTree) -> String {
    let mut np = 0usize;
    let mut vp = 0usize;
    let mut adjp = 0usize;
    let mut advp = 0usize;
    let mut pp = 0usize;
    let mut stack: Vec<&ParseTree> = clause.children().iter().collect();
    while let Some(node) = stack.pop() {
        if !node.is_leaf() && !is_verb_cluster_wrapper(node) {
            match node.category() {
                "NP" => np += 1,
                "VP" => vp += 1,
                "ADJP" => adjp += 1,
                "ADVP" => advp += 1,
                "PP" => pp += 1,
                _ => {}
            }
        }
        stack.extend(node.children().iter());
    }
    format!("NP:{np} VP:{vp} ADJP:{adjp} ADVP:{advp} PP:{pp}")
}

/// A node whose sole child is a verb-tagged leaf, e.g. `(VP (VBN completed))`.
pub(crate) fn is_verb_cluster_wrapper(node: &ParseTree) -> bool {
    node.children().len() == 1
        && node.children()[0].is_leaf()
        && is_verb_tag(node.children()[0].label())
}

/// The argument-structure profile of a clause over {SUBJ, OBJ, PP, ADVP},
/// rendered canonically as e.g. "[SUBJ,OBJ]".
///
/// A subject-position NP (child of an S, before its VP sibling or tagged
/// -SBJ) yields SUBJ in an active clause; in a passive clause it realises
/// the verb's underlying object and yields OBJ instead. NPs whose nearest
/// non-NP ancestor is a VP are objects; PPs and ADVPs immediately dominated
/// by a VP yield PP and ADVP.
pub fn argument_signature(clause: &ParseTree) -> String {
    let mut subj = false;
    let mut obj = false;
    let mut pp = false;
    let mut advp = false;

    // Subject positions, per clause-level S (the root included).
    for s_path in clause.find_paths(&|n| !n.is_leaf() && n.category() == "S") {
        let s_node = clause.node_at(&s_path).expect("path from find_paths");
        let first_vp = s_node
            .children()
            .iter()
            .position(|c| !c.is_leaf() && c.category() == "VP");
        let passive = first_vp
            .and_then(|i| head_complex_of(&s_node.children()[i]))
            .and_then(|c| c.signature())
            .map(|sig| sig.voice == Voice::Passive)
            .unwrap_or(false);
        for (i, child) in s_node.children().iter().enumerate() {
            if child.is_leaf() || child.category() != "NP" {
                continue;
            }
            let subject_position =
                child.has_function_tag("SBJ") || first_vp.is_some_and(|v| i < v);
            if subject_position {
                if passive {
                    obj = true;
                } else {
                    subj = true;
                }
            }
        }
    }

    // Objects and verb modifiers, via parent-child inspection from the root.
    let mut stack: Vec<&ParseTree> = vec![clause];
    while let Some(node) = stack.pop() {
        let parent_cat = node.category();
        for child in node.children() {
            if !child.is_leaf() {
                match child.category() {
                    "NP" => {
                        if nearest_non_np_is_vp(clause, child) {
                            obj = true;
                        }
                    }
                    "PP" if parent_cat == "VP" => pp = true,
                    "ADVP" if parent_cat == "VP" => advp = true,
                    _ => {}
                }
                stack.push(child);
            }
        }
    }

    let mut parts = Vec::new();
    if subj {
        parts.push("SUBJ");
    }
    if obj {
        parts.push("OBJ");
    }
    if pp {
        parts.push("PP");
    }
    if advp {
        parts.push("ADVP");
    }
    format!("[{}]", parts.join(","))
}

/// The complex anchored at this VP (following the chain downwards).
fn head_complex_of(vp: &ParseTree) -> Option<VerbalComplex> {
    let mut current = VerbalComplex {
        tokens: Vec::new(),
        negated: false,
    };
    let mut rest = Vec::new();
    collect_chain(vp, &mut current, &mut rest);
    if current.tokens.is_empty() {
        None
    } else {
        Some(current)
    }
}

/// Walks up from `target` (located by identity search) and reports whether
/// the nearest ancestor that is not an NP is a VP.
fn nearest_non_np_is_vp(root: &ParseTree, target: &ParseTree) -> bool {
    let paths = root.find_paths(&|n| std::ptr::eq(n, target));
    let Some(path) = paths.first() else {
        return false;
    };
    for depth in (0..path.len()).rev() {
        let anc = root.node_at(&path[..depth]).expect("prefix of valid path");
        match anc.category() {
            "NP" => continue,
            "VP" => return true,
            _ => return false,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_tree;

    fn fig1_main() -> ParseTree {
        parse_tree(
            "(S (NP (NNS employees)) (VP (MD will) (VP (VB lose) (NP (PRP their) (NNS jobs)))))",
        )
        .unwrap()
    }

    fn fig1_sub() -> ParseTree {
        parse_tree("(S (NP (DT the) (NN sale)) (VP (AUX is) (VP (VBN completed))))").unwrap()
    }

    #[test]
    fn will_lose_signature() {
        let complexes = verbal_complexes(&fig1_main());
        assert_eq!(complexes.len(), 1);
        let sig = complexes[0].signature().unwrap();
        assert_eq!(sig.finiteness, Finiteness::Present);
        assert_eq!(sig.modality, Modality::Future);
        assert_eq!(sig.aspect, Aspect::Imperfective);
        assert_eq!(sig.voice, Voice::Active);
        assert_eq!(sig.polarity, Polarity::Affirmative);
        assert_eq!(
            sig.canonical(),
            "present+future+imperfective+active+affirmative"
        );
    }

    #[test]
    fn is_completed_signature() {
        let complexes = verbal_complexes(&fig1_sub());
        assert_eq!(complexes.len(), 1);
        let sig = complexes[0].signature().unwrap();
        assert_eq!(
            sig.canonical(),
            "present+none+imperfective+passive+affirmative"
        );
    }

    #[test]
    fn did_not_go_signature() {
        // Traced through the pattern table by hand: leading VBD "did" gives
        // past+finite, no modal, no have/be participle pattern, "not" in the
        // chain flips polarity.
        let t = parse_tree("(S (NP (PRP he)) (VP (VBD did) (RB not) (VP (VB go))))").unwrap();
        let complexes = verbal_complexes(&t);
        assert_eq!(complexes.len(), 1);
        let sig = complexes[0].signature().unwrap();
        assert_eq!(
            sig.canonical(),
            "past+none+imperfective+active+negative"
        );
    }

    #[test]
    fn perfect_and_progressive_aspect() {
        let perf = parse_tree("(S (NP (PRP he)) (VP (AUX has) (VP (VBN gone))))").unwrap();
        let sig = verbal_complexes(&perf)[0].signature().unwrap();
        assert_eq!(sig.aspect, Aspect::Perfective);
        assert_eq!(sig.voice, Voice::Active);

        let prog = parse_tree("(S (NP (PRP he)) (VP (AUX is) (VP (VBG going))))").unwrap();
        let sig = verbal_complexes(&prog)[0].signature().unwrap();
        assert_eq!(sig.aspect, Aspect::Progressive);

        let passive_perf =
            parse_tree("(S (NP (NN sale)) (VP (AUX has) (VP (AUX been) (VP (VBN completed)))))")
                .unwrap();
        let sig = verbal_complexes(&passive_perf)[0].signature().unwrap();
        assert_eq!(sig.aspect, Aspect::Perfective);
        assert_eq!(sig.voice, Voice::Passive);
    }

    #[test]
    fn clause_without_verbs_has_no_complexes() {
        let t = parse_tree("(NP (DT the) (NN sale))").unwrap();
        assert!(verbal_complexes(&t).is_empty());
    }

    #[test]
    fn embedded_clauses_get_their_own_complexes() {
        let t = parse_tree(
            "(S (NP (DT The) (NN company)) (VP (VBD said) \
             (S (NP (NNS employees)) (VP (MD will) (VP (VB lose) (NP (NNS jobs)))))))",
        )
        .unwrap();
        let heads: Vec<String> = verbal_complexes(&t)
            .iter()
            .filter_map(|c| c.head_lemma())
            .collect();
        assert_eq!(heads, vec!["say", "lose"]);
    }

    #[test]
    fn figure_syntactic_signatures() {
        assert_eq!(
            syntactic_signature(&fig1_main()),
            "NP:2 VP:2 ADJP:0 ADVP:0 PP:0"
        );
        assert_eq!(
            syntactic_signature(&fig1_sub()),
            "NP:1 VP:1 ADJP:0 ADVP:0 PP:0"
        );
        let leaf = parse_tree("(NN sale)").unwrap();
        assert_eq!(
            syntactic_signature(&leaf),
            "NP:0 VP:0 ADJP:0 ADVP:0 PP:0"
        );
    }

    #[test]
    fn figure_argument_signatures() {
        assert_eq!(argument_signature(&fig1_main()), "[SUBJ,OBJ]");
        assert_eq!(argument_signature(&fig1_sub()), "[OBJ]");
    }

    #[test]
    fn bare_vp_with_adverbial() {
        // Fixture traced by rule: ADVP immediately dominated by a VP, no
        // NPs anywhere.
        let t = parse_tree("(VP (VBD ran) (ADVP (RB quickly)))").unwrap();
        assert_eq!(argument_signature(&t), "[ADVP]");
    }

    #[test]
    fn pp_under_vp_and_np_object() {
        let t = parse_tree(
            "(S (NP (NN firm)) (VP (VBD paid) (NP (NN fine)) (PP (IN in) (NP (NN cash)))))",
        )
        .unwrap();
        assert_eq!(argument_signature(&t), "[SUBJ,OBJ,PP]");
    }
}
