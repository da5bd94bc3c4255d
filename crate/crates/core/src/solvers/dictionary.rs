//! Frequency-ranked word list and sub-multiset word lookup.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::SolverError;

const BUNDLED: &str = include_str!("../../data/words_10k.txt");

/// Words in frequency order; rank 1 is the most common.
#[derive(Debug, Clone)]
pub struct Dictionary {
    words: Vec<String>,
    by_signature: HashMap<[u8; 26], Vec<usize>>,
}

/// A dictionary word that can be spelled from a letter multiset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormableWord {
    pub word: String,
    pub length: usize,
    pub rank: usize,
    pub percentile: f64,
}

fn signature(word: &str) -> [u8; 26] {
    let mut counts = [0u8; 26];
    for b in word.bytes() {
        counts[usize::from(b - b'a')] += 1;
    }
    counts
}

impl Dictionary {
    /// Parses one lowercase word per line; the line number is the rank.
    pub fn from_text(text: &str) -> Result<Self, SolverError> {
        let mut words = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (line, raw) in text.lines().enumerate() {
            let word = raw.trim();
            let err = |reason: &str| SolverError::Dictionary { line: line + 1, reason: reason.into() };
            if word.is_empty() {
                return Err(err("empty line"));
            }
            if !word.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(err("words must be lowercase a-z"));
            }
            if word.len() > 255 {
                return Err(err("word too long"));
            }
            if !seen.insert(word.to_string()) {
                return Err(err("duplicate word"));
            }
            words.push(word.to_string());
        }
        let mut by_signature: HashMap<[u8; 26], Vec<usize>> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            by_signature.entry(signature(w)).or_default().push(i);
        }
        Ok(Self { words, by_signature })
    }

    /// The bundled list of the 10,000 most common English words.
    pub fn bundled() -> Arc<Dictionary> {
        static DICT: OnceLock<Arc<Dictionary>> = OnceLock::new();
        DICT.get_or_init(|| Arc::new(Dictionary::from_text(BUNDLED).expect("bundled dictionary is well-formed")))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn rank(&self, word: &str) -> Option<usize> {
        let sig = signature_checked(word)?;
        self.by_signature
            .get(&sig)?
            .iter()
            .find(|&&i| self.words[i] == word)
            .map(|&i| i + 1)
    }

    /// `rank / len`.
    pub fn percentile(&self, rank: usize) -> f64 {
        rank as f64 / self.words.len() as f64
    }

    /// Every word whose letter multiset is contained in `letters`, by rank.
    ///
    /// Letters are bytes `b'a'..=b'z'`; anything else is ignored.
    pub fn formable_words(&self, letters: &[u8]) -> Vec<FormableWord> {
        let mut available = [0u8; 26];
        for &b in letters {
            if b.is_ascii_lowercase() {
                available[usize::from(b - b'a')] += 1;
            }
        }
        let mut found = Vec::new();
        let mut current = [0u8; 26];
        self.enumerate_submultisets(&available, 0, &mut current, &mut found);
        found.sort_unstable();
        found
            .into_iter()
            .map(|i| FormableWord {
                word: self.words[i].clone(),
                length: self.words[i].len(),
                rank: i + 1,
                percentile: self.percentile(i + 1),
            })
            .collect()
    }

    fn enumerate_submultisets(&self, available: &[u8; 26], letter: usize, current: &mut [u8; 26], out: &mut Vec<usize>) {
        if letter == 26 {
            if let Some(ids) = self.by_signature.get(current) {
                out.extend_from_slice(ids);
            }
            return;
        }
        for n in 0..=available[letter] {
            current[letter] = n;
            self.enumerate_submultisets(available, letter + 1, current, out);
        }
        current[letter] = 0;
    }
}

fn signature_checked(word: &str) -> Option<[u8; 26]> {
    word.bytes().all(|b| b.is_ascii_lowercase()).then(|| signature(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_list_has_ten_thousand_ranked_words() {
        let d = Dictionary::bundled();
        assert_eq!(d.len(), 10_000);
        assert_eq!(d.rank("the"), Some(1));
        assert_eq!(d.percentile(5000), 0.5);
    }

    #[test]
    fn no_words_from_repeated_z() {
        assert!(Dictionary::bundled().formable_words(b"zzzzzzzz").is_empty());
    }

    #[test]
    fn formable_words_respect_multiplicity() {
        let d = Dictionary::from_text("tot\nto\nt\nott\n").unwrap();
        let words: Vec<_> = d.formable_words(b"to").into_iter().map(|w| w.word).collect();
        assert_eq!(words, vec!["to", "t"]);
        let words: Vec<_> = d.formable_words(b"tto").into_iter().map(|w| w.word).collect();
        assert_eq!(words, vec!["tot", "to", "t", "ott"]);
    }

    #[test]
    fn malformed_lists_are_rejected() {
        assert!(Dictionary::from_text("ok\nNo\n").is_err());
        assert!(Dictionary::from_text("a\na\n").is_err());
        assert!(Dictionary::from_text("a\n\nb\n").is_err());
    }
}
