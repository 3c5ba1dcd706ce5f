//! Random walks from the root: step left with probability `p`, right with `1 − p`.
//! A tree is recovered exactly from its leaf probabilities.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tree::BinaryTree;

fn check_p(p: &BigRational) -> Result<()> {
    if p <= &BigRational::zero() || p >= &BigRational::one() {
        return Err(Error::ProbabilityOutOfRange);
    }
    Ok(())
}

/// `p^ld(i) · (1 − p)^rd(i)` for every leaf.
pub fn leaf_probabilities(tree: &BinaryTree, p: &BigRational) -> Result<Vec<BigRational>> {
    check_p(p)?;
    let q = BigRational::one() - p;
    let profile = tree.depth_profile();
    Ok(profile
        .left_depths
        .iter()
        .zip(&profile.right_depths)
        .map(|(&l, &r)| {
            num_traits::pow(p.clone(), l as usize) * num_traits::pow(q.clone(), r as usize)
        })
        .collect())
}

/// Inverse of [`leaf_probabilities`].
pub fn tree_from_leaf_probabilities(probs: &[BigRational], p: &BigRational) -> Result<BinaryTree> {
    check_p(p)?;
    if probs.is_empty() {
        return Err(Error::NotRealizable("no leaves".into()));
    }
    let one = BigRational::one();
    if probs.iter().any(|x| x <= &BigRational::zero() || x > &one) {
        return Err(Error::NotRealizable(
            "probabilities must lie in (0, 1]".into(),
        ));
    }
    let total: BigRational = probs.iter().cloned().sum();
    if total != one {
        return Err(Error::NotRealizable(format!(
            "probabilities sum to {total}"
        )));
    }
    let q = &one - p;
    rebuild(probs.to_vec(), p, &q)
}

fn rebuild(probs: Vec<BigRational>, p: &BigRational, q: &BigRational) -> Result<BinaryTree> {
    if probs.len() == 1 {
        return if probs[0].is_one() {
            Ok(BinaryTree::leaf())
        } else {
            Err(Error::NotRealizable(format!(
                "lone leaf with probability {}",
                probs[0]
            )))
        };
    }
    // prefix sums are strictly increasing, so at most one can equal p
    let mut acc = BigRational::zero();
    let mut split = None;
    for (j, x) in probs.iter().enumerate().take(probs.len() - 1) {
        acc += x;
        if &acc == p {
            split = Some(j + 1);
            break;
        }
        if &acc > p {
            break;
        }
    }
    let j = split.ok_or_else(|| Error::NotRealizable(format!("no prefix sums to {p}")))?;
    let mut left = probs;
    let right: Vec<BigRational> = left.split_off(j).into_iter().map(|x| x / q).collect();
    let left: Vec<BigRational> = left.into_iter().map(|x| x / p).collect();
    Ok(BinaryTree::wedge(
        &rebuild(left, p, q)?,
        &rebuild(right, p, q)?,
    ))
}
