//! Plane binary trees, bracketings and leaf depth data.
//!
//! A tree is stored as its preorder structure word: `true` for an internal
//! vertex, `false` for a leaf. The word has length `2n − 1` for `n` leaves and
//! is self-delimiting, so subtrees are contiguous slices.

mod enumerate;
mod parse;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use enumerate::check_guard;
pub use enumerate::{enumerate_trees, enumerate_trees_with_limit, Trees};
pub use parse::parse_bracketing;

/// Default upper bound on the leaf count accepted by exhaustive enumeration.
pub const DEFAULT_MAX_LEAVES: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    bits: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextStyle {
    /// Canonical bracketing text such as `x1((x2x3)(x4x5))`.
    Variables,
    /// Preorder word over `{0,1}`, `1` = internal vertex, `0` = leaf.
    StructureBits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthProfile {
    pub left_depths: Vec<u32>,
    pub right_depths: Vec<u32>,
    pub total_depths: Vec<u32>,
    /// Root-to-leaf words, `0` = left step, `1` = right step.
    pub addresses: Vec<String>,
}

/// A leaf where two trees have different (left depth, right depth) pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Divergence {
    /// 1-based leaf index.
    pub leaf: usize,
    pub ld_diff: i64,
    pub rd_diff: i64,
}

/// A bracketing of `x1 ... xn` together with its tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bracketing {
    pub text: String,
    pub tree: BinaryTree,
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree { bits: vec![false] }
    }

    /// Joins two trees under a new root.
    pub fn wedge(left: &BinaryTree, right: &BinaryTree) -> Self {
        let mut bits = Vec::with_capacity(1 + left.bits.len() + right.bits.len());
        bits.push(true);
        bits.extend_from_slice(&left.bits);
        bits.extend_from_slice(&right.bits);
        BinaryTree { bits }
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<bool>) -> Self {
        debug_assert!(is_valid_word(&bits));
        BinaryTree { bits }
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn from_structure_bits(word: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(word.len());
        for (pos, ch) in word.chars().enumerate() {
            match ch {
                '1' => bits.push(true),
                '0' => bits.push(false),
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("unexpected {ch:?} in structure word"),
                    })
                }
            }
        }
        if !is_valid_word(&bits) {
            return Err(Error::Syntax {
                pos: word.len(),
                msg: "not a complete preorder structure word".into(),
            });
        }
        Ok(BinaryTree { bits })
    }

    /// Rebuilds the unique tree with the given left depth sequence.
    pub fn from_left_depths(seq: &[u32]) -> Result<Self> {
        let addresses = addresses_from_left_depths(seq)?;
        let words: Vec<&[u8]> = addresses.iter().map(|a| a.as_bytes()).collect();
        let mut bits = Vec::with_capacity(2 * seq.len() - 1);
        build_from_addresses(&words, 0, &mut bits);
        Ok(BinaryTree { bits })
    }

    pub fn leaf_count(&self) -> usize {
        (self.bits.len() + 1) / 2
    }

    pub fn is_leaf(&self) -> bool {
        self.bits.len() == 1
    }

    /// Left and right subtrees, or `None` for a single leaf.
    pub fn children(&self) -> Option<(BinaryTree, BinaryTree)> {
        if self.is_leaf() {
            return None;
        }
        let end = subtree_end(&self.bits, 1);
        Some((
            BinaryTree {
                bits: self.bits[1..end].to_vec(),
            },
            BinaryTree {
                bits: self.bits[end..].to_vec(),
            },
        ))
    }

    /// Mirror image.
    pub fn opposite(&self) -> Self {
        let mut out = Vec::with_capacity(self.bits.len());
        mirror_into(&self.bits, &mut out);
        BinaryTree { bits: out }
    }

    pub fn format(&self, style: TextStyle) -> String {
        match style {
            TextStyle::StructureBits => self
                .bits
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect(),
            TextStyle::Variables => {
                let mut out = String::new();
                let mut next_var = 1;
                write_vars(&self.bits, true, &mut next_var, &mut out);
                out
            }
        }
    }

    pub fn left_depths(&self) -> Vec<u32> {
        let (mut ld, mut rd) = (Vec::new(), Vec::new());
        fill_depths(&self.bits, &mut ld, &mut rd);
        ld
    }

    pub fn right_depths(&self) -> Vec<u32> {
        let (mut ld, mut rd) = (Vec::new(), Vec::new());
        fill_depths(&self.bits, &mut ld, &mut rd);
        rd
    }

    pub fn depth_profile(&self) -> DepthProfile {
        let (mut ld, mut rd) = (Vec::new(), Vec::new());
        fill_depths(&self.bits, &mut ld, &mut rd);
        let total = ld.iter().zip(&rd).map(|(l, r)| l + r).collect();

        let mut addresses = Vec::with_capacity(ld.len());
        let mut path = String::new();
        // pending right children, recorded as the path length at the fork
        let mut forks: Vec<usize> = Vec::new();
        for &internal in &self.bits {
            if internal {
                forks.push(path.len());
                path.push('0');
            } else {
                addresses.push(path.clone());
                if let Some(len) = forks.pop() {
                    path.truncate(len);
                    path.push('1');
                }
            }
        }

        DepthProfile {
            left_depths: ld,
            right_depths: rd,
            total_depths: total,
            addresses,
        }
    }

    /// Least leaf whose depth pair differs between `self` and `other`.
    pub fn first_divergence(&self, other: &BinaryTree) -> Result<Option<Divergence>> {
        Ok(self
            .diffs(other)?
            .into_iter()
            .find(|d| d.ld_diff != 0 || d.rd_diff != 0))
    }

    /// Greatest leaf whose depth pair differs between `self` and `other`.
    pub fn last_divergence(&self, other: &BinaryTree) -> Result<Option<Divergence>> {
        Ok(self
            .diffs(other)?
            .into_iter()
            .rev()
            .find(|d| d.ld_diff != 0 || d.rd_diff != 0))
    }

    /// Per-leaf differences `(ld_T(i) − ld_T'(i), rd_T(i) − rd_T'(i))`.
    pub fn depth_differences(&self, other: &BinaryTree) -> Result<Vec<(i64, i64)>> {
        Ok(self
            .diffs(other)?
            .into_iter()
            .map(|d| (d.ld_diff, d.rd_diff))
            .collect())
    }

    fn diffs(&self, other: &BinaryTree) -> Result<Vec<Divergence>> {
        check_same_size(self, other)?;
        let (mut l1, mut r1, mut l2, mut r2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        fill_depths(&self.bits, &mut l1, &mut r1);
        fill_depths(&other.bits, &mut l2, &mut r2);
        Ok((0..l1.len())
            .map(|i| Divergence {
                leaf: i + 1,
                ld_diff: l1[i] as i64 - l2[i] as i64,
                rd_diff: r1[i] as i64 - r2[i] as i64,
            })
            .collect())
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(TextStyle::Variables))
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryTree({})", self.format(TextStyle::Variables))
    }
}

impl Bracketing {
    pub fn parse(text: &str) -> Result<Self> {
        parse_bracketing(text)
    }

    pub fn from_tree(tree: BinaryTree) -> Self {
        Bracketing {
            text: tree.format(TextStyle::Variables),
            tree,
        }
    }

    pub fn size(&self) -> usize {
        self.tree.leaf_count()
    }
}

impl FromStr for Bracketing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bracketing(s)
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub(crate) fn check_same_size(a: &BinaryTree, b: &BinaryTree) -> Result<()> {
    if a.leaf_count() != b.leaf_count() {
        return Err(Error::LeafCountMismatch {
            left: a.leaf_count(),
            right: b.leaf_count(),
        });
    }
    Ok(())
}

/// True iff the last entry is 0 and `1 ≤ seq[i] ≤ seq[i+1] + 1` elsewhere.
pub fn is_left_depth_sequence(seq: &[u32]) -> bool {
    match seq.last() {
        Some(0) => {}
        _ => return false,
    }
    seq.windows(2).all(|w| w[0] >= 1 && w[0] <= w[1] + 1)
}

/// Leaf addresses of the unique tree with left depth sequence `seq`.
pub fn addresses_from_left_depths(seq: &[u32]) -> Result<Vec<String>> {
    if !is_left_depth_sequence(seq) {
        return Err(Error::InvalidDepthSequence(seq.to_vec()));
    }
    let mut out: Vec<String> = Vec::with_capacity(seq.len());
    out.push("0".repeat(seq[0] as usize));
    for i in 1..seq.len() {
        // previous address is u·0·1^p, next is u·1·0^q
        let prev = out[i - 1].trim_end_matches('1');
        let u = &prev[..prev.len() - 1];
        let q = (seq[i] + 1 - seq[i - 1]) as usize;
        let mut next = String::with_capacity(u.len() + 1 + q);
        next.push_str(u);
        next.push('1');
        next.extend(std::iter::repeat('0').take(q));
        out.push(next);
    }
    Ok(out)
}

/// The Catalan number `C_n`.
pub fn catalan(n: u64) -> BigUint {
    let two_n = BigUint::from(2 * n);
    let mut binom = BigUint::from(1u32);
    // C(2n, n) built incrementally; each partial product is an exact binomial
    for i in 0..n {
        binom = binom * (&two_n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    binom / BigUint::from(n + 1)
}

/// Index one past the end of the subtree starting at `start`.
pub(crate) fn subtree_end(bits: &[bool], start: usize) -> usize {
    let mut need = 1usize;
    let mut i = start;
    while need > 0 {
        if bits[i] {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    i
}

pub(crate) fn is_valid_word(bits: &[bool]) -> bool {
    let mut need = 1usize;
    for (i, &b) in bits.iter().enumerate() {
        if b {
            need += 1;
        } else {
            need -= 1;
            if need == 0 {
                return i + 1 == bits.len();
            }
        }
    }
    false
}

/// Appends left and right depths of the leaves of a structure word.
pub(crate) fn fill_depths(bits: &[bool], ld: &mut Vec<u32>, rd: &mut Vec<u32>) {
    ld.clear();
    rd.clear();
    let mut pending: Vec<(u32, u32)> = Vec::with_capacity(bits.len() / 2 + 1);
    let (mut l, mut r) = (0u32, 0u32);
    for &internal in bits {
        if internal {
            pending.push((l, r + 1));
            l += 1;
        } else {
            ld.push(l);
            rd.push(r);
            if let Some((pl, pr)) = pending.pop() {
                l = pl;
                r = pr;
            }
        }
    }
}

fn mirror_into(bits: &[bool], out: &mut Vec<bool>) {
    if !bits[0] {
        out.push(false);
        return;
    }
    let end = subtree_end(bits, 1);
    out.push(true);
    mirror_into(&bits[end..], out);
    mirror_into(&bits[1..end], out);
}

fn write_vars(bits: &[bool], outermost: bool, next_var: &mut usize, out: &mut String) {
    if !bits[0] {
        out.push('x');
        out.push_str(&next_var.to_string());
        *next_var += 1;
        return;
    }
    let end = subtree_end(bits, 1);
    if !outermost {
        out.push('(');
    }
    write_vars(&bits[1..end], false, next_var, out);
    write_vars(&bits[end..], false, next_var, out);
    if !outermost {
        out.push(')');
    }
}

fn build_from_addresses(words: &[&[u8]], depth: usize, bits: &mut Vec<bool>) {
    if words.len() == 1 && words[0].len() == depth {
        bits.push(false);
        return;
    }
    let split = words
        .iter()
        .position(|w| w[depth] == b'1')
        .unwrap_or(words.len());
    bits.push(true);
    build_from_addresses(&words[..split], depth + 1, bits);
    build_from_addresses(&words[split..], depth + 1, bits);
}
