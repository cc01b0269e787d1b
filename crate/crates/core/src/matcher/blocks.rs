use serde::Serialize;

use crate::words::Word;

/// Blocks of a binary word. Block `k >= 1` ends just before the
/// `(k B + 1)`'th one, so every block but the last holds exactly `B` ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    pub block_ones: u64,
    /// Word index where each block starts; the first is always 0.
    pub starts: Vec<usize>,
    pub len: usize,
}

impl BlockPartition {
    pub fn count(&self) -> usize {
        self.starts.len()
    }

    /// Half-open spans of the blocks.
    pub fn spans(&self) -> Vec<(usize, usize)> {
        let mut ends: Vec<usize> = self.starts[1..].to_vec();
        ends.push(self.len);
        self.starts.iter().copied().zip(ends).collect()
    }

    /// 0-based index of the block containing word index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.starts.partition_point(|&s| s <= i) - 1
    }
}

pub fn partition_blocks(w: &Word, block_ones: u64) -> BlockPartition {
    let block_ones = block_ones.max(1);
    let mut starts = vec![0];
    let mut seen = 0u64;
    for (i, &s) in w.symbols().iter().enumerate() {
        if s == 1 {
            seen += 1;
            if seen > 1 && (seen - 1) % block_ones == 0 && i > 0 {
                starts.push(i);
            }
        }
    }
    BlockPartition {
        block_ones,
        starts,
        len: w.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn texts(w: &str, b: u64) -> Vec<String> {
        let word = parse_word(w, 2).unwrap();
        partition_blocks(&word, b)
            .spans()
            .into_iter()
            .map(|(s, e)| w[s..e].to_string())
            .collect()
    }

    #[test]
    fn boundaries_sit_on_ones() {
        assert_eq!(texts("01010101", 2), ["01010", "101"]);
        assert_eq!(texts("11110000", 2), ["11", "110000"]);
        assert_eq!(texts("01010101", 4), ["01010101"]);
        assert_eq!(texts("01010101", 1), ["010", "10", "10", "1"]);
    }

    #[test]
    fn block_lookup() {
        let word = parse_word("11110000", 2).unwrap();
        let p = partition_blocks(&word, 2);
        assert_eq!(p.block_of(0), 0);
        assert_eq!(p.block_of(1), 0);
        assert_eq!(p.block_of(2), 1);
        assert_eq!(p.block_of(7), 1);
    }
}
