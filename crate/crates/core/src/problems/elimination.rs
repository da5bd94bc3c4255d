//! Elimination: eight letters that spell one common short word, one rarer long
//! word, and nothing longer.

use std::sync::Arc;

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{closeness, ParamValue, ProblemContract, Rendering, VariantParams};
use crate::solvers::Dictionary;
use crate::space::{SpaceDescriptor, Value};

#[derive(Debug, Clone)]
pub struct Elimination {
    params: VariantParams,
    length: usize,
    dictionary: Arc<Dictionary>,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Elimination {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("length", ParamValue::Int(8)),
            ("short_min_len", ParamValue::Int(3)),
            ("short_max_len", ParamValue::Int(4)),
            ("long_min_len", ParamValue::Int(5)),
            ("long_max_len", ParamValue::Int(6)),
            ("short_band_lo", ParamValue::Real(0.4)),
            ("short_band_hi", ParamValue::Real(0.6)),
            ("long_band_lo", ParamValue::Real(0.6)),
            ("long_band_hi", ParamValue::Real(0.8)),
            ("diversity_letters", ParamValue::Int(3)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        Self::with_dictionary(params, Dictionary::bundled())
    }

    pub fn with_dictionary(params: VariantParams, dictionary: Arc<Dictionary>) -> Self {
        let length = params.usize("length");
        Self {
            content: SpaceDescriptor::array(SpaceDescriptor::discrete(26), length),
            control: SpaceDescriptor::record([("max_run", SpaceDescriptor::range(1, 5))]),
            params,
            length,
            dictionary,
        }
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dictionary
    }

    fn band(&self, prefix: &str) -> (usize, usize, f64, f64) {
        (
            self.params.usize(&format!("{prefix}_min_len")),
            self.params.usize(&format!("{prefix}_max_len")),
            self.params.real(&format!("{prefix}_band_lo")),
            self.params.real(&format!("{prefix}_band_hi")),
        )
    }
}

impl Default for Elimination {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

/// Letter indices `0..26` as a lowercase string.
pub fn letters_to_string(letters: &[i64]) -> String {
    letters.iter().map(|&l| char::from(b'a' + l as u8)).collect()
}

/// Length of the longest run of `sequence` that appears inside one of `words`.
pub fn longest_word_run(sequence: &str, words: &[&str]) -> usize {
    let n = sequence.len();
    (1..=n)
        .rev()
        .find(|&len| (0..=n - len).any(|s| words.iter().any(|w| w.contains(&sequence[s..s + len]))))
        .unwrap_or(0)
}

impl ProblemContract for Elimination {
    fn name(&self) -> &str {
        "elimination-v0"
    }

    fn params(&self) -> &VariantParams {
        &self.params
    }

    fn content_space(&self) -> &SpaceDescriptor {
        &self.content
    }

    fn control_space(&self) -> &SpaceDescriptor {
        &self.control
    }

    fn info(&self, content: &Value) -> InfoRecord {
        let letters = self.content.flatten(content).expect("content was validated against the content space");
        let text = letters_to_string(&letters);
        let words = self.dictionary.formable_words(text.as_bytes());
        let spelled: Vec<&str> = words.iter().map(|w| w.word.as_str()).collect();
        InfoRecord::new()
            .with("longest_run", InfoValue::Int(longest_word_run(&text, &spelled) as i64))
            .with("words", InfoValue::Text(spelled.join(" ")))
            .with("word_lengths", InfoValue::Ints(words.iter().map(|w| w.length as i64).collect()))
            .with("word_ranks", InfoValue::Ints(words.iter().map(|w| w.rank as i64).collect()))
            .with("dictionary_size", InfoValue::Int(self.dictionary.len() as i64))
            .with("letters", InfoValue::Ints(letters))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let size = info.int("dictionary_size") as f64;
        let words: Vec<(usize, f64)> = info
            .ints("word_lengths")
            .iter()
            .zip(info.ints("word_ranks"))
            .map(|(&len, &rank)| (len as usize, rank as f64 / size))
            .collect();
        let mut banded = 0usize;
        let mut in_band = 0usize;
        let mut best = |prefix: &str| {
            let (min_len, max_len, lo, hi) = self.band(prefix);
            let mut top = 0.0f64;
            for &(_, pct) in words.iter().filter(|(len, _)| (min_len..=max_len).contains(len)) {
                banded += 1;
                in_band += usize::from((lo..=hi).contains(&pct));
                top = top.max(closeness(pct, (lo, hi), (0.0, 1.0)));
            }
            top
        };
        let short = best("short");
        let long = best("long");
        let too_long = words.iter().filter(|(len, _)| *len > self.params.usize("long_max_len")).count();
        let valid = info.ints("letters").iter().all(|l| (0..26).contains(l)) && info.ints("letters").len() == self.length;
        vec![
            f64::from(u8::from(valid)),
            short,
            long,
            1.0 / (1.0 + too_long as f64),
            if banded == 0 { 1.0 } else { in_band as f64 / banded as f64 },
        ]
    }

    /// Letters not shared between the two multisets, scaled by `diversity_letters`.
    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        let mut counts = [0i64; 26];
        for &l in a.ints("letters") {
            counts[l as usize] += 1;
        }
        for &l in b.ints("letters") {
            counts[l as usize] -= 1;
        }
        let differing = counts.iter().map(|c| c.unsigned_abs()).sum::<u64>().div_ceil(2);
        (differing as f64 / self.params.real("diversity_letters")).min(1.0)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let max_run = control.field_int("max_run").expect("control has max_run") as f64;
        closeness(info.int("longest_run") as f64, (0.0, max_run), (0.0, self.length as f64))
    }

    fn render(&self, content: &Value) -> Rendering {
        let letters = self.content.flatten(content).expect("content was validated against the content space");
        Rendering::Text(format!("{}\n", letters_to_string(&letters)))
    }
}
