//! Penn-Treebank-style bracketed parse trees: reading, canonical
//! serialization, traversal, and a table-driven lemmatizer.
//!
//! Trees are immutable after construction. Labels keep their function
//! suffixes verbatim ("SBAR-TMP"); [`ParseTree::category`] strips them.

mod lemma;

pub use lemma::lemmatize;

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TemprelError};

/// A labelled ordered tree over a Treebank bracketed parse.
///
/// A node carries a token iff it is a leaf (a preterminal like `(NN dog)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParseTree {
    label: String,
    children: Vec<ParseTree>,
    token: Option<String>,
}

impl ParseTree {
    /// A leaf node: POS label plus surface token.
    pub fn leaf(label: impl Into<String>, token: impl Into<String>) -> ParseTree {
        let label = label.into();
        let token = token.into();
        assert!(!label.is_empty(), "leaf label must be non-empty");
        assert!(!token.is_empty(), "leaf token must be non-empty");
        ParseTree {
            label,
            children: Vec::new(),
            token: Some(token),
        }
    }

    /// An internal node with at least one child.
    pub fn node(label: impl Into<String>, children: Vec<ParseTree>) -> ParseTree {
        let label = label.into();
        assert!(!label.is_empty(), "node label must be non-empty");
        assert!(!children.is_empty(), "internal node needs children");
        ParseTree {
            label,
            children,
            token: None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn token(&self) -> Option<&str> {
        self.token.as_deref()
    }

    pub fn children(&self) -> &[ParseTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Syntactic category: the label up to the first `-` separating a
    /// function suffix ("SBAR-TMP" -> "SBAR"). Labels that themselves start
    /// with `-` ("-NONE-") are returned whole.
    pub fn category(&self) -> &str {
        match self.label[1..].find('-') {
            Some(i) if !self.label.starts_with('-') => &self.label[..i + 1],
            _ => &self.label,
        }
    }

    /// Function tags following the category ("PP-LOC-CLR" -> ["LOC", "CLR"]).
    pub fn function_tags(&self) -> Vec<&str> {
        if self.label.starts_with('-') {
            return Vec::new();
        }
        let cat_len = self.category().len();
        self.label[cat_len..]
            .split('-')
            .filter(|t| !t.is_empty())
            .collect()
    }

    pub fn has_function_tag(&self, tag: &str) -> bool {
        self.function_tags().iter().any(|t| *t == tag)
    }

    /// Leaf nodes in surface order.
    pub fn leaves(&self) -> Vec<&ParseTree> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a ParseTree>) {
        if self.is_leaf() {
            out.push(self);
        } else {
            for c in &self.children {
                c.collect_leaves(out);
            }
        }
    }

    /// The sentence tokens in order.
    pub fn tokens(&self) -> Vec<&str> {
        self.leaves()
            .into_iter()
            .filter_map(|l| l.token())
            .collect()
    }

    /// Pre-order references to every node matching `pred`, each exactly once.
    pub fn find_nodes<'a>(&'a self, pred: &dyn Fn(&ParseTree) -> bool) -> Vec<&'a ParseTree> {
        let mut out = Vec::new();
        self.walk_nodes(&mut |n| {
            if pred(n) {
                out.push(n);
            }
        });
        out
    }

    fn walk_nodes<'a>(&'a self, visit: &mut dyn FnMut(&'a ParseTree)) {
        visit(self);
        for c in &self.children {
            c.walk_nodes(visit);
        }
    }

    /// Pre-order child-index paths of every node matching `pred`.
    pub fn find_paths(&self, pred: &dyn Fn(&ParseTree) -> bool) -> Vec<Vec<usize>> {
        fn rec(
            node: &ParseTree,
            pred: &dyn Fn(&ParseTree) -> bool,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if pred(node) {
                out.push(path.clone());
            }
            for (i, c) in node.children.iter().enumerate() {
                path.push(i);
                rec(c, pred, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, pred, &mut Vec::new(), &mut out);
        out
    }

    /// The node a child-index path points to.
    pub fn node_at(&self, path: &[usize]) -> Option<&ParseTree> {
        let mut node = self;
        for &i in path {
            node = node.children.get(i)?;
        }
        Some(node)
    }

    /// Index of the first leaf dominated by `path` within the whole tree's
    /// yield. Panics if the path is invalid.
    pub fn leaf_offset(&self, path: &[usize]) -> usize {
        let mut node = self;
        let mut offset = 0;
        for &i in path {
            for sibling in &node.children[..i] {
                offset += sibling.leaves().len();
            }
            node = &node.children[i];
        }
        offset
    }

    /// A copy of the tree with the subtree at `path` removed. Internal nodes
    /// left childless by the removal are pruned as well. Returns `None` when
    /// the removal empties the whole tree (or `path` is the root).
    pub fn without_subtree(&self, path: &[usize]) -> Option<ParseTree> {
        if path.is_empty() {
            return None;
        }
        if self.is_leaf() {
            return Some(self.clone());
        }
        let mut children = Vec::with_capacity(self.children.len());
        for (i, c) in self.children.iter().enumerate() {
            if i == path[0] {
                if path.len() > 1 {
                    if let Some(kept) = c.without_subtree(&path[1..]) {
                        children.push(kept);
                    }
                }
            } else {
                children.push(c.clone());
            }
        }
        if children.is_empty() {
            None
        } else {
            Some(ParseTree {
                label: self.label.clone(),
                children,
                token: None,
            })
        }
    }

    /// Canonical single-space bracketing. `parse_tree(serialize(t))` is
    /// structurally equal to `t`.
    pub fn to_bracketed(&self) -> String {
        let mut s = String::new();
        self.write_bracketed(&mut s);
        s
    }

    fn write_bracketed(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.label);
        if let Some(tok) = &self.token {
            out.push(' ');
            out.push_str(tok);
        } else {
            for c in &self.children {
                out.push(' ');
                c.write_bracketed(out);
            }
        }
        out.push(')');
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bracketed())
    }
}

/// Canonical bracketed form of a tree; inverse of [`parse_tree`].
pub fn serialize(tree: &ParseTree) -> String {
    tree.to_bracketed()
}

/// Parse one bracketed tree. Whitespace-insensitive; the category and any
/// function suffix are kept verbatim in the label.
pub fn parse_tree(text: &str) -> Result<ParseTree> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.at_end() {
        return Err(TemprelError::parse(p.pos, "empty input"));
    }
    let tree = p.tree()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(TemprelError::parse(p.pos, "trailing input after tree"));
    }
    Ok(tree)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() || b == b'(' || b == b')' {
                break;
            }
            self.pos += 1;
        }
        // Safety of slicing: we only stop on ASCII delimiters, so the
        // boundaries are valid UTF-8 boundaries.
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap()
    }

    fn tree(&mut self) -> Result<ParseTree> {
        if self.peek() != Some(b'(') {
            return Err(TemprelError::parse(self.pos, "expected '('"));
        }
        self.pos += 1;
        self.skip_ws();
        let label_at = self.pos;
        let label = self.atom();
        if label.is_empty() {
            return Err(TemprelError::parse(label_at, "expected label after '('"));
        }
        self.skip_ws();
        match self.peek() {
            None => Err(TemprelError::parse(self.pos, "unbalanced brackets")),
            Some(b'(') => {
                let mut children = Vec::new();
                while self.peek() == Some(b'(') {
                    children.push(self.tree()?);
                    self.skip_ws();
                }
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(ParseTree {
                            label: label.to_string(),
                            children,
                            token: None,
                        })
                    }
                    Some(_) => Err(TemprelError::parse(
                        self.pos,
                        "expected '(' or ')' in node body",
                    )),
                    None => Err(TemprelError::parse(self.pos, "unbalanced brackets")),
                }
            }
            Some(b')') => Err(TemprelError::parse(
                self.pos,
                format!("node '{label}' has neither token nor children"),
            )),
            Some(_) => {
                let token = self.atom().to_string();
                self.skip_ws();
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(ParseTree {
                            label: label.to_string(),
                            children: Vec::new(),
                            token: Some(token),
                        })
                    }
                    Some(_) => Err(TemprelError::parse(
                        self.pos,
                        "leaf may carry only one token",
                    )),
                    None => Err(TemprelError::parse(self.pos, "unbalanced brackets")),
                }
            }
        }
    }
}

/// Read a corpus of bracketed trees.
///
/// With `multiline` off, each non-blank line must hold one complete tree.
/// With it on, lines are joined until the brackets balance, so trees may be
/// pretty-printed across lines.
pub fn read_corpus(text: &str, multiline: bool) -> Result<Vec<ParseTree>> {
    if multiline {
        read_corpus_multiline(text)
    } else {
        let mut trees = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let tree = parse_tree(line).map_err(|e| at_line(lineno + 1, e))?;
            trees.push(tree);
        }
        Ok(trees)
    }
}

fn read_corpus_multiline(text: &str) -> Result<Vec<ParseTree>> {
    let mut trees = Vec::new();
    let mut buf = String::new();
    let mut depth: i64 = 0;
    let mut start_line = 0;
    for (lineno, line) in text.lines().enumerate() {
        if buf.is_empty() {
            if line.trim().is_empty() {
                continue;
            }
            start_line = lineno + 1;
        }
        buf.push_str(line);
        buf.push('\n');
        for b in line.bytes() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return Err(at_line(
                    lineno + 1,
                    TemprelError::parse(0, "unbalanced ')'"),
                ));
            }
        }
        if depth == 0 {
            let tree = parse_tree(&buf).map_err(|e| at_line(start_line, e))?;
            trees.push(tree);
            buf.clear();
        }
    }
    if depth != 0 {
        return Err(TemprelError::Data(format!(
            "corpus ends with {depth} unbalanced '(' (tree starting at line {start_line})"
        )));
    }
    Ok(trees)
}

fn at_line(lineno: usize, err: TemprelError) -> TemprelError {
    TemprelError::Data(format!("line {lineno}: {err}"))
}

/// Load a corpus file (UTF-8, one tree per line unless `multiline`).
pub fn load_corpus(path: &Path, multiline: bool) -> Result<Vec<ParseTree>> {
    let text = fs::read_to_string(path)
        .map_err(|e| TemprelError::Data(format!("cannot read {}: {e}", path.display())))?;
    read_corpus(&text, multiline)
}
