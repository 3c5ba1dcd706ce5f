//! Deterministic enumeration of all trees with `n` leaves.
//!
//! Order: by left-subtree leaf count `k = 1..n−1`, then recursively the left
//! subtree (outer loop) and right subtree (inner loop). The successor is
//! computed in place on the structure word, so a partition for fixed `k` is
//! an independent stream that can be handed to its own worker.

use super::{subtree_end, BinaryTree, DEFAULT_MAX_LEAVES};
use crate::error::{Error, Result};

/// Stream of trees, either all of `𝒯ₙ` or one left-size partition of it.
#[derive(Debug, Clone)]
pub struct Trees {
    n: usize,
    bits: Vec<bool>,
    started: bool,
    done: bool,
    fixed_split: bool,
}

/// All trees with `n` leaves, under the default guard.
pub fn enumerate_trees(n: usize) -> Result<Trees> {
    enumerate_trees_with_limit(n, DEFAULT_MAX_LEAVES)
}

pub fn enumerate_trees_with_limit(n: usize, max_leaves: usize) -> Result<Trees> {
    check_guard(n, max_leaves)?;
    let mut bits = vec![false; 2 * n - 1];
    if n > 1 {
        bits[0] = true;
        write_first(&mut bits[1..2]);
        write_first(&mut bits[2..]);
    }
    Ok(Trees {
        n,
        bits,
        started: false,
        done: false,
        fixed_split: false,
    })
}

pub(crate) fn check_guard(n: usize, max_leaves: usize) -> Result<()> {
    if n == 0 || n > max_leaves {
        return Err(Error::GuardExceeded { n, max: max_leaves });
    }
    Ok(())
}

impl Trees {
    /// Trees with `n` leaves whose left subtree has exactly `k` leaves.
    /// For `n = 1` the only partition is `k = 0`, the single leaf.
    pub fn partition(n: usize, k: usize, max_leaves: usize) -> Result<Trees> {
        check_guard(n, max_leaves)?;
        if n == 1 {
            let mut t = enumerate_trees_with_limit(1, max_leaves)?;
            t.done = k != 0;
            return Ok(t);
        }
        let mut bits = vec![false; 2 * n - 1];
        let valid = (1..n).contains(&k);
        if valid {
            bits[0] = true;
            let l = 2 * k - 1;
            write_first(&mut bits[1..1 + l]);
            write_first(&mut bits[1 + l..]);
        }
        Ok(Trees {
            n,
            bits,
            started: false,
            done: !valid,
            fixed_split: true,
        })
    }

    /// Left-subtree sizes that index the partitions of `𝒯ₙ`.
    pub fn partition_sizes(n: usize) -> std::ops::Range<usize> {
        if n <= 1 {
            0..1
        } else {
            1..n
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    /// Advances and exposes the current structure word without allocating.
    pub(crate) fn next_bits(&mut self) -> Option<&[bool]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.bits);
        }
        let advanced = if self.n == 1 {
            false
        } else if self.fixed_split {
            advance_children(&mut self.bits)
        } else {
            advance(&mut self.bits)
        };
        if advanced {
            Some(&self.bits)
        } else {
            self.done = true;
            None
        }
    }
}

impl Iterator for Trees {
    type Item = BinaryTree;

    fn next(&mut self) -> Option<BinaryTree> {
        self.next_bits()
            .map(|b| BinaryTree::from_bits_unchecked(b.to_vec()))
    }
}

/// Writes the first tree in enumeration order (the right comb) into `w`.
fn write_first(w: &mut [bool]) {
    let len = w.len();
    for (i, slot) in w.iter_mut().enumerate() {
        *slot = i + 1 < len && i % 2 == 0;
    }
}

/// Steps to the successor; returns false (leaving `w` unspecified) at the end.
fn advance(w: &mut [bool]) -> bool {
    if w.len() == 1 {
        return false;
    }
    if advance_children(w) {
        return true;
    }
    let n = (w.len() + 1) / 2;
    let k = subtree_end(w, 1) / 2;
    if k + 1 >= n {
        return false;
    }
    let l = 2 * (k + 1) - 1;
    write_first(&mut w[1..1 + l]);
    write_first(&mut w[1 + l..]);
    true
}

/// Successor with the root split held fixed.
fn advance_children(w: &mut [bool]) -> bool {
    let e = subtree_end(w, 1);
    if advance(&mut w[e..]) {
        return true;
    }
    write_first(&mut w[e..]);
    advance(&mut w[1..e])
}
