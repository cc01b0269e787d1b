//! Words over the alphabet `{0, .., k-1}` and the handful of operations the
//! rest of the crate is built on.
//!
//! Occurrences are identified by their index in the word; nothing here keeps
//! a heavier identity around.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symbol index into the alphabet.
pub type Symbol = u32;

/// A finite word over `{0, .., alphabet_size - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::Domain("alphabet size must be at least 1".into()));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as usize,
                alphabet_size,
            });
        }
        Ok(Word {
            symbols,
            alphabet_size,
        })
    }

    pub fn empty(alphabet_size: usize) -> Self {
        Word {
            symbols: Vec::new(),
            alphabet_size: alphabet_size.max(1),
        }
    }

    /// `symbol^len`.
    pub fn constant(symbol: Symbol, len: usize, alphabet_size: usize) -> Result<Self> {
        Word::new(vec![symbol; len], alphabet_size)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    /// Occurrence count of every symbol, indexed by symbol.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet_size];
        for &s in &self.symbols {
            counts[s as usize] += 1;
        }
        counts
    }

    /// Same symbols, reinterpreted over a larger alphabet.
    pub fn with_alphabet(&self, alphabet_size: usize) -> Result<Self> {
        Word::new(self.symbols.clone(), alphabet_size)
    }

    /// Textual form used by the word file format.
    pub fn to_text(&self) -> String {
        if self.alphabet_size <= 10 {
            self.symbols
                .iter()
                .map(|&s| char::from_digit(s, 10).expect("symbol below 10"))
                .collect()
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            parts.join(",")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}, k={})", self.to_text(), self.alphabet_size)
    }
}

/// Parses one word. Text containing a comma (or any text when the alphabet
/// has more than ten letters) is read as comma-separated decimal indices;
/// otherwise each character is one digit.
pub fn parse_word(text: &str, alphabet_size: usize) -> Result<Word> {
    let text = text.trim();
    if alphabet_size == 0 {
        return Err(Error::Domain("alphabet size must be at least 1".into()));
    }
    if text.is_empty() {
        return Ok(Word::empty(alphabet_size));
    }
    let symbols = if text.contains(',') || alphabet_size > 10 {
        text.split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<Symbol>()
                    .map_err(|_| Error::Malformed(format!("bad symbol {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Malformed(format!("unexpected character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Word::new(symbols, alphabet_size)
}

/// Contents of a word file: the `#` comment lines and the words in order.
#[derive(Debug, Clone, PartialEq)]
pub struct WordFile {
    pub comments: Vec<String>,
    pub words: Vec<Word>,
}

/// Parses a word file. When `alphabet_size` is `None` it is taken from a
/// `k=<int>` token in the comments, falling back to one more than the
/// largest symbol present (and at least 2).
pub fn parse_word_file(text: &str, alphabet_size: Option<usize>) -> Result<WordFile> {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            comments.push(comment.trim().to_string());
        } else {
            lines.push(line);
        }
    }

    let k = match alphabet_size.or_else(|| header_alphabet(&comments)) {
        Some(k) => k,
        None => {
            // Wide alphabets always use the comma form, so a line without
            // commas is a digit string.
            let mut max = 1;
            for line in &lines {
                let probe = if line.contains(',') { usize::MAX } else { 10 };
                for s in parse_word(line, probe)?.symbols() {
                    max = max.max(*s as usize);
                }
            }
            max + 1
        }
    };

    let words = lines
        .into_iter()
        .map(|line| parse_word(line, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(WordFile { comments, words })
}

fn header_alphabet(comments: &[String]) -> Option<usize> {
    comments
        .iter()
        .flat_map(|c| c.split(|ch: char| ch.is_whitespace() || ch == ','))
        .find_map(|tok| tok.strip_prefix("k=").and_then(|v| v.parse().ok()))
}

/// Serializes words in the word file format, one per line, after the given
/// comment lines.
pub fn write_word_file(comments: &[String], words: &[Word]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for w in words {
        out.push_str(&w.to_text());
        out.push('\n');
    }
    out
}

/// True iff `u` embeds into `w` preserving order.
pub fn is_subsequence(u: &Word, w: &Word) -> bool {
    let mut it = w.symbols.iter();
    u.symbols.iter().all(|s| it.any(|x| x == s))
}

/// True iff every symbol of the alphabet occurs equally often.
pub fn is_balanced(w: &Word) -> bool {
    let counts = w.counts();
    counts.windows(2).all(|p| p[0] == p[1])
}

pub fn reverse(w: &Word) -> Word {
    let mut symbols = w.symbols.clone();
    symbols.reverse();
    Word {
        symbols,
        alphabet_size: w.alphabet_size,
    }
}

/// Concatenation of `m` copies of `w`.
pub fn power(w: &Word, m: usize) -> Word {
    Word {
        symbols: w.symbols.repeat(m),
        alphabet_size: w.alphabet_size,
    }
}

/// The subsequence of `w` made of the symbols in `keep`, over the same
/// alphabet.
pub fn project(w: &Word, keep: &[Symbol]) -> Word {
    project_with_indices(w, keep).0
}

/// Like [`project`], also returning the index in `w` of every kept symbol.
pub fn project_with_indices(w: &Word, keep: &[Symbol]) -> (Word, Vec<usize>) {
    let mut symbols = Vec::new();
    let mut indices = Vec::new();
    for (i, &s) in w.symbols.iter().enumerate() {
        if keep.contains(&s) {
            symbols.push(s);
            indices.push(i);
        }
    }
    (
        Word {
            symbols,
            alphabet_size: w.alphabet_size,
        },
        indices,
    )
}

/// A common subsequence together with the index lists realizing it in both
/// words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsequenceWitness {
    pub common: Word,
    pub idx_a: Vec<usize>,
    pub idx_b: Vec<usize>,
}

impl SubsequenceWitness {
    pub fn empty(alphabet_size: usize) -> Self {
        SubsequenceWitness {
            common: Word::empty(alphabet_size),
            idx_a: Vec::new(),
            idx_b: Vec::new(),
        }
    }

    /// Builds the witness from matched index pairs, reading symbols from `a`.
    pub fn from_pairs(a: &Word, pairs: &[(usize, usize)]) -> Self {
        let symbols = pairs.iter().map(|&(i, _)| a.symbols[i]).collect();
        SubsequenceWitness {
            common: Word {
                symbols,
                alphabet_size: a.alphabet_size,
            },
            idx_a: pairs.iter().map(|p| p.0).collect(),
            idx_b: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.common.len()
    }

    pub fn is_empty(&self) -> bool {
        self.common.is_empty()
    }

    /// Checks every structural invariant against the two words.
    pub fn validates(&self, a: &Word, b: &Word) -> bool {
        let n = self.common.len();
        if self.idx_a.len() != n || self.idx_b.len() != n {
            return false;
        }
        let increasing = |idx: &[usize], len: usize| {
            idx.windows(2).all(|p| p[0] < p[1]) && idx.last().is_none_or(|&l| l < len)
        };
        if !increasing(&self.idx_a, a.len()) || !increasing(&self.idx_b, b.len()) {
            return false;
        }
        (0..n).all(|i| {
            let c = self.common.symbols[i];
            a.symbols[self.idx_a[i]] == c && b.symbols[self.idx_b[i]] == c
        })
    }

    /// Same witness with the roles of the two words exchanged.
    pub fn swapped(self) -> Self {
        SubsequenceWitness {
            common: self.common,
            idx_a: self.idx_b,
            idx_b: self.idx_a,
        }
    }
}
