//! The `name -> image` text format.
//!
//! ```text
//! # golden mean
//! 1 -> 21
//! 2 -> 1
//! ```
//!
//! Names are `[A-Za-z0-9]+`. Images are split on `.` when present, else on
//! whitespace, else into single characters when every rule head is a single
//! character. Heads named exactly `1..d` keep their numeric order; any other
//! naming is numbered by order of appearance of the rule heads.

use std::collections::HashMap;

use super::{word_to_string, Substitution, SubstitutionError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSubstitution {
    pub substitution: Substitution,
    /// Original name of each letter, indexed 0-based.
    pub names: Vec<String>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric())
}

pub fn parse_substitution(text: &str) -> Result<ParsedSubstitution, SubstitutionError> {
    let mut rules: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((head, image)) = content.split_once("->") else {
            return Err(SubstitutionError::Syntax {
                line,
                message: "expected `name -> image`".into(),
            });
        };
        let head = head.trim();
        if !valid_name(head) {
            return Err(SubstitutionError::Syntax {
                line,
                message: format!("invalid letter name {head:?}"),
            });
        }
        if rules.iter().any(|(_, h, _)| h == head) {
            return Err(SubstitutionError::DuplicateRule {
                line,
                letter: head.to_string(),
            });
        }
        let image = image.trim();
        if image.is_empty() {
            return Err(SubstitutionError::EmptyImage {
                line,
                letter: head.to_string(),
            });
        }
        rules.push((line, head.to_string(), image.to_string()));
    }
    if rules.is_empty() {
        return Err(SubstitutionError::EmptyAlphabet);
    }
    let d = rules.len();
    let numeric = {
        let mut heads: Vec<&str> = rules.iter().map(|(_, h, _)| h.as_str()).collect();
        heads.sort_by_key(|h| h.parse::<usize>().unwrap_or(usize::MAX));
        heads.iter().enumerate().all(|(k, h)| *h == (k + 1).to_string())
    };
    let mut names: Vec<String> = rules.iter().map(|(_, h, _)| h.clone()).collect();
    if numeric {
        names = (1..=d).map(|k| k.to_string()).collect();
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
    let single_char = names.iter().all(|n| n.chars().count() == 1);
    let mut images = vec![Vec::new(); d];
    for (line, head, image) in &rules {
        let tokens: Vec<String> = if image.contains('.') {
            image.split('.').map(|t| t.trim().to_string()).collect()
        } else if image.contains(char::is_whitespace) {
            image.split_whitespace().map(str::to_string).collect()
        } else if single_char {
            image.chars().map(|c| c.to_string()).collect()
        } else {
            vec![image.clone()]
        };
        let mut w = Vec::with_capacity(tokens.len());
        for t in tokens {
            if !valid_name(&t) {
                return Err(SubstitutionError::UnknownLetter { line: *line, letter: t });
            }
            match index.get(t.as_str()) {
                Some(&k) => w.push(k),
                None => return Err(SubstitutionError::MissingRule(t)),
            }
        }
        images[index[head.as_str()]] = w;
    }
    Ok(ParsedSubstitution {
        substitution: Substitution::new(images)?,
        names,
    })
}

/// Canonical form with integer names `1..d`.
pub fn write_substitution(s: &Substitution) -> String {
    let d = s.size();
    let mut out = String::new();
    for (a, w) in s.images().iter().enumerate() {
        out.push_str(&format!("{} -> {}\n", a + 1, word_to_string(w, d)));
    }
    out
}
