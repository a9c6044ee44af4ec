//! Binary Huffman codes with deterministic tie-breaking.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::Pmf;

/// Optimal binary prefix-free code over symbols `0..n`.
///
/// Codewords are canonical: sorted by `(length, symbol)` and assigned
/// consecutive binary values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanCode {
    lengths: Vec<usize>,
    codewords: Vec<Vec<u8>>,
    lookup: HashMap<Vec<u8>, usize>,
    max_len: usize,
}

/// Codeword lengths of a Huffman tree. Repeatedly merges the two lightest
/// nodes; equal weights go to the smaller node id (leaves are `0..n`,
/// merged nodes are numbered in creation order).
pub fn huffman_lengths<W>(weights: &[W]) -> Vec<usize>
where
    W: Ord + Clone + std::ops::Add<Output = W>,
{
    let n = weights.len();
    if n <= 1 {
        return vec![0; n];
    }
    let mut parent = vec![usize::MAX; 2 * n - 1];
    let mut heap: BinaryHeap<Reverse<(W, usize)>> = weights
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| Reverse((w, i)))
        .collect();
    let mut next = n;
    while heap.len() > 1 {
        let Reverse((wa, a)) = heap.pop().expect("len > 1");
        let Reverse((wb, b)) = heap.pop().expect("len > 1");
        parent[a] = next;
        parent[b] = next;
        heap.push(Reverse((wa + wb, next)));
        next += 1;
    }
    (0..n)
        .map(|leaf| {
            let mut depth = 0;
            let mut node = leaf;
            while parent[node] != usize::MAX {
                node = parent[node];
                depth += 1;
            }
            depth
        })
        .collect()
}

impl HuffmanCode {
    pub fn from_weights<W>(weights: &[W]) -> Self
    where
        W: Ord + Clone + std::ops::Add<Output = W>,
    {
        Self::from_lengths(huffman_lengths(weights))
    }

    /// Canonical code for the given lengths, which must satisfy Kraft.
    pub fn from_lengths(lengths: Vec<usize>) -> Self {
        let mut order: Vec<usize> = (0..lengths.len()).collect();
        order.sort_by_key(|&s| (lengths[s], s));
        let mut codewords = vec![Vec::new(); lengths.len()];
        let mut value: u128 = 0;
        let mut prev_len = 0;
        for (rank, &s) in order.iter().enumerate() {
            let len = lengths[s];
            if rank > 0 {
                value += 1;
            }
            value <<= len - prev_len;
            prev_len = len;
            codewords[s] = (0..len).rev().map(|bit| ((value >> bit) & 1) as u8).collect();
        }
        let lookup = codewords
            .iter()
            .enumerate()
            .map(|(s, c)| (c.clone(), s))
            .collect();
        let max_len = lengths.iter().copied().max().unwrap_or(0);
        HuffmanCode {
            lengths,
            codewords,
            lookup,
            max_len,
        }
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn codeword(&self, symbol: usize) -> &[u8] {
        &self.codewords[symbol]
    }

    /// Decodes the leading codeword of `bits`; returns the symbol and the
    /// number of bits consumed.
    pub fn decode_prefix(&self, bits: &[u8]) -> Option<(usize, usize)> {
        (0..=self.max_len.min(bits.len()))
            .find_map(|l| self.lookup.get(&bits[..l]).map(|&s| (s, l)))
    }

    /// No codeword is a proper prefix of another (and none repeats).
    pub fn is_prefix_free(&self) -> bool {
        let mut sorted: Vec<&Vec<u8>> = self.codewords.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| !w[1].starts_with(w[0]))
    }

    /// Kraft sum `sum 2^-l` as an exact rational.
    pub fn kraft_sum(&self) -> BigRational {
        self.lengths
            .iter()
            .map(|&l| BigRational::new(BigInt::from(1), BigInt::from(1) << l))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Expected codeword length of a binary Huffman code for `p`.
pub fn huffman_expected_length(p: &Pmf) -> BigRational {
    let lengths = huffman_lengths(p.weights());
    p.weights()
        .iter()
        .zip(lengths)
        .map(|(w, l)| w * BigRational::from_integer(BigInt::from(l)))
        .fold(BigRational::zero(), |a, b| a + b)
}
