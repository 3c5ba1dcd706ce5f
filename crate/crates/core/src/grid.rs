//! Subgroups of `Z × Z` in canonical form, with the lattice operations and
//! the tree constructions attached to them.
//!
//! Every subgroup has rank 0, 1 or 2. Rank-2 subgroups are stored as
//! `Z(u,v) + Z(w,0)` with `0 ≤ u < w` and `v > 0`; this form is unique.
//! A point `(r,s)` lies in such a grid iff `v | s` and `vw | vr − us`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{crt, ext_gcd, gcd, is_prime, lcm, modp, mult_order};
use crate::error::{Error, Result};
use crate::tree::{check_same_size, BinaryTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "dimension")]
pub enum Grid {
    #[serde(rename = "0")]
    Zero,
    /// `content · (g1, g2)` generates; `(g1, g2)` is primitive with `g2 > 0`,
    /// or `g2 = 0` and `g1 > 0`.
    #[serde(rename = "1")]
    Line { g1: i64, g2: i64, content: i64 },
    #[serde(rename = "2")]
    Plane { u: i64, v: i64, w: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Index {
    Finite(BigUint),
    Infinite,
}

/// A finite abelian group with two distinguished elements `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AbelianPairAction {
    /// `Z_{m1} × ... × Z_{mt}` under addition.
    Additive {
        moduli: Vec<u64>,
        a: Vec<u64>,
        b: Vec<u64>,
    },
    /// Units modulo `m` under multiplication.
    Multiplicative { m: u64, a: u64, b: u64 },
}

/// The two trees realising a rank-2 grid as their difference span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Treealisation {
    pub left: BinaryTree,
    pub right: BinaryTree,
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: u32,
    /// `span_difference(left, right)` equals the input grid.
    pub verified: bool,
}

impl Grid {
    pub fn full() -> Grid {
        Grid::Plane { u: 0, v: 1, w: 1 }
    }

    /// Checked constructor for the rank-2 form.
    pub fn plane(u: i64, v: i64, w: i64) -> Result<Grid> {
        if v <= 0 || w <= 0 || u < 0 || u >= w {
            return Err(Error::InvalidRelation(format!(
                "Z({u},{v})+Z({w},0) is not canonical: need 0 <= u < w and v > 0"
            )));
        }
        Ok(Grid::Plane { u, v, w })
    }

    pub fn from_generators(gens: &[(i64, i64)]) -> Grid {
        canonical_grid(gens)
    }

    /// Parses `"r1,s1;r2,s2;..."`; `"0"` or an empty string is the zero grid.
    pub fn parse_generators(text: &str) -> Result<Vec<(i64, i64)>> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (i, part) in text.split(';').enumerate() {
            let bad = || Error::Syntax {
                pos: i,
                msg: format!("bad generator {part:?}, want r,s"),
            };
            let (r, s) = part.split_once(',').ok_or_else(bad)?;
            let r = r.trim().parse().map_err(|_| bad())?;
            let s = s.trim().parse().map_err(|_| bad())?;
            out.push((r, s));
        }
        Ok(out)
    }

    pub fn dimension(&self) -> u8 {
        match self {
            Grid::Zero => 0,
            Grid::Line { .. } => 1,
            Grid::Plane { .. } => 2,
        }
    }

    pub fn index(&self) -> Index {
        match *self {
            Grid::Plane { v, w, .. } => {
                Index::Finite(BigUint::from(v as u64) * BigUint::from(w as u64))
            }
            _ => Index::Infinite,
        }
    }

    pub fn is_full(&self) -> bool {
        *self == Grid::full()
    }

    pub fn as_plane(&self) -> Option<(i64, i64, i64)> {
        match *self {
            Grid::Plane { u, v, w } => Some((u, v, w)),
            _ => None,
        }
    }

    /// A generating set in canonical form.
    pub fn generators(&self) -> Vec<(i64, i64)> {
        match *self {
            Grid::Zero => vec![],
            Grid::Line { g1, g2, content } => vec![(content * g1, content * g2)],
            Grid::Plane { u, v, w } => vec![(u, v), (w, 0)],
        }
    }

    pub fn contains(&self, point: (i64, i64)) -> bool {
        let (r, s) = (point.0 as i128, point.1 as i128);
        match *self {
            Grid::Zero => r == 0 && s == 0,
            Grid::Line { g1, g2, content } => {
                let (g1, g2, c) = (g1 as i128, g2 as i128, content as i128);
                if r * g2 != s * g1 {
                    return false;
                }
                let t = if g1 != 0 { r / g1 } else { s / g2 };
                t % c == 0
            }
            Grid::Plane { u, v, w } => {
                let (u, v, w) = (u as i128, v as i128, w as i128);
                s % v == 0 && (v * r - u * s) % (v * w) == 0
            }
        }
    }

    /// `self ⊆ other`.
    pub fn is_subgrid_of(&self, other: &Grid) -> bool {
        self.generators().into_iter().all(|g| other.contains(g))
    }

    pub fn meet(&self, other: &Grid) -> Grid {
        match (*self, *other) {
            (Grid::Zero, _) | (_, Grid::Zero) => Grid::Zero,
            (
                Grid::Plane {
                    u: u1,
                    v: v1,
                    w: w1,
                },
                Grid::Plane {
                    u: u2,
                    v: v2,
                    w: w2,
                },
            ) => meet_planes(
                (u1 as i128, v1 as i128, w1 as i128),
                (u2 as i128, v2 as i128, w2 as i128),
            ),
            (Grid::Line { g1, g2, content }, Grid::Plane { u, v, w })
            | (Grid::Plane { u, v, w }, Grid::Line { g1, g2, content }) => {
                let (x, y) = (content as i128 * g1 as i128, content as i128 * g2 as i128);
                let (u, v, w) = (u as i128, v as i128, w as i128);
                let t1 = v / gcd(v, y);
                let t2 = v * w / gcd(v * w, v * x - u * y);
                Grid::Line {
                    g1,
                    g2,
                    content: (content as i128 * lcm(t1, t2)) as i64,
                }
            }
            (
                Grid::Line {
                    g1,
                    g2,
                    content: c1,
                },
                Grid::Line {
                    g1: h1,
                    g2: h2,
                    content: c2,
                },
            ) => {
                if (g1, g2) == (h1, h2) {
                    Grid::Line {
                        g1,
                        g2,
                        content: lcm(c1 as i128, c2 as i128) as i64,
                    }
                } else {
                    Grid::Zero
                }
            }
        }
    }

    pub fn join(&self, other: &Grid) -> Grid {
        let mut gens = self.generators();
        gens.extend(other.generators());
        canonical_grid(&gens)
    }

    /// Canonical representative of the coset `point + Λ`, in `[0,w) × [0,v)`.
    pub fn coset_key(&self, point: (i64, i64)) -> Result<(i64, i64)> {
        let (u, v, w) = self.plane_or_err()?;
        Ok(coset_key_raw(u, v, w, point.0, point.1))
    }

    /// Invariant factors `(d1, d2)` with `(Z×Z)/Λ ≅ Z_d1 × Z_d2` and `d1 | d2`.
    pub fn quotient_invariants(&self) -> Result<(u64, u64)> {
        let (u, v, w) = self.plane_or_err()?;
        let d1 = gcd(gcd(u as i128, v as i128), w as i128);
        Ok((d1 as u64, (v as i128 * w as i128 / d1) as u64))
    }

    /// Rank 0 or 2; exactly the spans arising from a pair of trees.
    pub fn is_treealisable(&self) -> bool {
        self.dimension() != 1
    }

    pub fn treealise(&self) -> Result<Treealisation> {
        let (u, v, w) = self.plane_or_err()?;
        let (p, q, r, s) = (v as u32, (v * w) as u32, w as u32, (w - u) as u32);
        let mut left = vec![2; p as usize];
        left.extend(std::iter::repeat(r + 1).take(q as usize));
        left.push(r);
        left.extend((1..r).rev());
        left.extend((0..=s).rev());

        let mut right = vec![2; p as usize];
        right.push(1);
        right.extend(std::iter::repeat(s + 1).take(q as usize - 1));
        right.push(r + s);
        right.extend((s + 1..r + s).rev());
        right.extend((0..=s).rev());

        let left = BinaryTree::from_left_depths(&left)?;
        let right = BinaryTree::from_left_depths(&right)?;
        let verified = span_difference(&left, &right)? == *self;
        Ok(Treealisation {
            left,
            right,
            p,
            q,
            r,
            s,
            verified,
        })
    }

    fn plane_or_err(&self) -> Result<(i64, i64, i64)> {
        self.as_plane().ok_or(Error::WrongDimension {
            expected: 2,
            found: self.dimension(),
        })
    }
}

pub(crate) fn coset_key_raw(u: i64, v: i64, w: i64, r: i64, s: i64) -> (i64, i64) {
    let s0 = s.rem_euclid(v);
    let k = (s - s0) / v;
    let r0 = (r as i128 - k as i128 * u as i128).rem_euclid(w as i128) as i64;
    (r0, s0)
}

fn meet_planes(a: (i128, i128, i128), b: (i128, i128, i128)) -> Grid {
    let ((u1, v1, w1), (u2, v2, w2)) = (a, b);
    // s must be a multiple of L; then r ≡ ui·s/vi (mod wi) for both i
    let l = lcm(v1, v2);
    let g = gcd(w1, w2);
    let c = modp(u1 * (l / v1) - u2 * (l / v2), g);
    let v = l * (g / gcd(c, g));
    let (u, w) = crt(modp(u1 * (v / v1), w1), w1, modp(u2 * (v / v2), w2), w2)
        .expect("compatible by choice of v");
    Grid::Plane {
        u: u as i64,
        v: v as i64,
        w: w as i64,
    }
}

/// The canonical grid spanned by `generators`.
pub fn canonical_grid(generators: &[(i64, i64)]) -> Grid {
    // row reduction: one pivot with positive y, everything else folded onto the x-axis
    let mut pivot: Option<(i128, i128)> = None;
    let mut w: i128 = 0;
    for &(r, s) in generators {
        let (r, s) = (r as i128, s as i128);
        if s == 0 {
            w = gcd(w, r);
        } else if let Some((px, py)) = pivot {
            let (g, a, b) = ext_gcd(py, s);
            let new = (a * px + b * r, g);
            let axis = (py / g) * r - (s / g) * px;
            w = gcd(w, axis);
            pivot = Some(new);
        } else {
            pivot = Some(if s < 0 { (-r, -s) } else { (r, s) });
        }
        if w != 0 {
            if let Some((px, py)) = pivot {
                pivot = Some((modp(px, w), py));
            }
        }
    }
    match (pivot, w) {
        (None, 0) => Grid::Zero,
        (None, w) => Grid::Line {
            g1: 1,
            g2: 0,
            content: w as i64,
        },
        (Some((x, y)), 0) => {
            let c = gcd(x, y);
            Grid::Line {
                g1: (x / c) as i64,
                g2: (y / c) as i64,
                content: c as i64,
            }
        }
        (Some((x, y)), w) => Grid::Plane {
            u: modp(x, w) as i64,
            v: y as i64,
            w: w as i64,
        },
    }
}

/// `Λ_{T,T'}`: the span of the per-leaf depth differences.
pub fn span_difference(t: &BinaryTree, t2: &BinaryTree) -> Result<Grid> {
    check_same_size(t, t2)?;
    Ok(canonical_grid(&t.depth_differences(t2)?))
}

/// The `p + 1` grids of prime index `p`.
pub fn coatoms(p: u64) -> Result<Vec<Grid>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as i64;
    let mut out = vec![
        Grid::Plane { u: 0, v: 1, w: p },
        Grid::Plane { u: 0, v: p, w: 1 },
    ];
    out.extend((1..p).map(|u| Grid::Plane { u, v: 1, w: p }));
    Ok(out)
}

impl AbelianPairAction {
    pub fn validate(&self) -> Result<()> {
        match self {
            AbelianPairAction::Additive { moduli, a, b } => {
                if moduli.is_empty() || a.len() != moduli.len() || b.len() != moduli.len() {
                    return Err(Error::InvalidAction("component counts differ".into()));
                }
                for i in 0..moduli.len() {
                    if moduli[i] == 0 || a[i] >= moduli[i] || b[i] >= moduli[i] {
                        return Err(Error::InvalidAction(format!(
                            "component {i}: need 0 <= a, b < m and m >= 1"
                        )));
                    }
                }
                Ok(())
            }
            &AbelianPairAction::Multiplicative { m, a, b } => {
                if m < 2 {
                    return Err(Error::InvalidAction(format!("modulus {m} < 2")));
                }
                if gcd(a as i128, m as i128) != 1 || gcd(b as i128, m as i128) != 1 {
                    return Err(Error::InvalidAction(format!(
                        "{a} and {b} must be units mod {m}"
                    )));
                }
                Ok(())
            }
        }
    }

    fn orders(&self) -> (u64, u64) {
        match self {
            AbelianPairAction::Additive { moduli, a, b } => {
                let ord = |x: &[u64]| {
                    moduli.iter().zip(x).fold(1i128, |acc, (&m, &xi)| {
                        lcm(acc, m as i128 / gcd(xi as i128, m as i128))
                    }) as u64
                };
                (ord(a), ord(b))
            }
            &AbelianPairAction::Multiplicative { m, a, b } => (mult_order(a, m), mult_order(b, m)),
        }
    }

    /// Whether `r·a + s·b` is the identity, for `r, s ≥ 0`.
    fn is_identity(&self, r: u64, s: u64) -> bool {
        match self {
            AbelianPairAction::Additive { moduli, a, b } => (0..moduli.len()).all(|i| {
                (r as u128 * a[i] as u128 + s as u128 * b[i] as u128) % moduli[i] as u128 == 0
            }),
            &AbelianPairAction::Multiplicative { m, a, b } => {
                let pow = |x: u64, e: u64| (0..e).fold(1 % m, |acc, _| acc * x % m);
                pow(a, r) * pow(b, s) % m == 1 % m
            }
        }
    }
}

/// `{(r,s) : r·a + s·b = 0}` (or `a^r b^s = 1`), found by search over one period.
pub fn kernel_of_pair(action: &AbelianPairAction) -> Result<Grid> {
    action.validate()?;
    let (oa, ob) = action.orders();
    let mut gens = vec![(oa as i64, 0), (0, ob as i64)];
    for r in 0..=oa {
        for s in 0..=ob {
            if action.is_identity(r, s) {
                gens.push((r as i64, s as i64));
            }
        }
    }
    Ok(canonical_grid(&gens))
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Grid::Zero => f.write_str("0"),
            Grid::Line { g1, g2, content } => write!(f, "Z({},{})", content * g1, content * g2),
            Grid::Plane { u, v, w } => write!(f, "Z({u},{v})+Z({w},0)"),
        }
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grid> {
        Ok(canonical_grid(&Grid::parse_generators(s)?))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_trees, parse_bracketing};
    use proptest::prelude::*;

    fn plane(u: i64, v: i64, w: i64) -> Grid {
        Grid::plane(u, v, w).unwrap()
    }

    fn all_planes(max_v: i64, max_w: i64) -> Vec<Grid> {
        let mut out = Vec::new();
        for v in 1..=max_v {
            for w in 1..=max_w {
                for u in 0..w {
                    out.push(plane(u, v, w));
                }
            }
        }
        out
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_grid(&[(6, 3), (10, 0), (0, 15)]), plane(6, 3, 10));
        assert_eq!(canonical_grid(&[(0, 15), (2, 6)]), plane(6, 3, 10));
        assert_eq!(canonical_grid(&[]), Grid::Zero);
        assert_eq!(canonical_grid(&[(0, 0)]), Grid::Zero);
        assert_eq!(
            canonical_grid(&[(-4, -6)]),
            Grid::Line {
                g1: 2,
                g2: 3,
                content: 2
            }
        );
        assert_eq!(
            canonical_grid(&[(-5, 0)]),
            Grid::Line {
                g1: 1,
                g2: 0,
                content: 5
            }
        );
        assert_eq!(
            canonical_grid(&[(2, 3), (4, 6)]),
            Grid::Line {
                g1: 2,
                g2: 3,
                content: 1
            }
        );
    }

    #[test]
    fn membership() {
        let g = plane(6, 3, 10);
        assert!(g.contains((2, 6)));
        assert!(g.contains((10, 0)));
        assert!(!g.contains((1, 3)));
        let line = canonical_grid(&[(2, 3)]);
        assert!(line.contains((-4, -6)) && !line.contains((1, 1)) && !line.contains((3, 4)));
        let thick = canonical_grid(&[(4, 6)]);
        assert!(!thick.contains((2, 3)) && thick.contains((-4, -6)));
        assert!(Grid::Zero.contains((0, 0)) && !Grid::Zero.contains((0, 1)));
    }

    #[test]
    fn dimension_and_index() {
        assert_eq!(Grid::full().dimension(), 2);
        assert_eq!(Grid::full().index(), Index::Finite(BigUint::from(1u32)));
        assert_eq!(plane(6, 3, 10).index(), Index::Finite(BigUint::from(30u32)));
        assert_eq!(canonical_grid(&[(2, 3)]).dimension(), 1);
        assert_eq!(canonical_grid(&[(2, 3)]).index(), Index::Infinite);
    }

    #[test]
    fn lattice_examples() {
        let l3 = plane(0, 1, 3);
        let r3 = plane(0, 3, 1);
        assert_eq!(l3.meet(&r3), plane(0, 3, 3));
        assert_eq!(l3.join(&r3), Grid::full());
        let g = plane(6, 3, 10);
        assert_eq!(g.meet(&Grid::full()), g);
        assert_eq!(g.join(&Grid::Zero), g);
        assert_eq!(g.meet(&Grid::Zero), Grid::Zero);
    }

    #[test]
    fn span_difference_examples() {
        let t = |s: &str| parse_bracketing(s).unwrap().tree;
        let t1 = t("x1(x2(x3(x4x5)))");
        let t5 = t("x1(((x2x3)x4)x5)");
        let t8 = t("(((x1x2)x3)x4)x5");
        let t12 = t("(x1(x2(x3x4)))x5");
        assert_eq!(span_difference(&t5, &t8).unwrap(), plane(0, 1, 3));
        assert_eq!(span_difference(&t1, &t1).unwrap(), Grid::Zero);
        assert_eq!(span_difference(&t1, &t12).unwrap(), plane(0, 3, 1));
        assert!(span_difference(&t1, &BinaryTree::leaf()).is_err());
    }

    #[test]
    fn treealisable_checks() {
        assert!(Grid::Zero.is_treealisable());
        assert!(!canonical_grid(&[(2, 3)]).is_treealisable());
        assert!(plane(6, 3, 10).is_treealisable());
    }

    #[test]
    fn treealise_examples() {
        let t = plane(6, 3, 10).treealise().unwrap();
        assert_eq!((t.p, t.q, t.r, t.s), (3, 30, 10, 4));
        assert_eq!(t.left.leaf_count(), 48);
        assert!(t.verified);

        let t = plane(0, 1, 2).treealise().unwrap();
        assert_eq!((t.p, t.q, t.r, t.s), (1, 2, 2, 2));
        assert_eq!(t.left.leaf_count(), 8);
        assert!(t.verified);

        let t = Grid::full().treealise().unwrap();
        assert_eq!(t.right.leaf_count(), 5);
        assert!(t.verified);

        assert_eq!(
            canonical_grid(&[(1, 1)]).treealise(),
            Err(Error::WrongDimension {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn treealise_roundtrip_small() {
        for g in all_planes(6, 6) {
            let t = g.treealise().unwrap();
            assert!(t.verified, "{g}");
            assert_eq!(span_difference(&t.left, &t.right).unwrap(), g);
        }
    }

    #[test]
    fn coset_key_examples() {
        let g = plane(6, 3, 10);
        assert_eq!(g.coset_key((6, 3)).unwrap(), (0, 0));
        assert_eq!(g.coset_key((2, 6)).unwrap(), (0, 0));
        assert_eq!(g.coset_key((1, 3)).unwrap(), (5, 0));
        assert!(Grid::Zero.coset_key((0, 0)).is_err());
    }

    #[test]
    fn coset_key_separates_cosets() {
        for g in all_planes(5, 5) {
            let (_, v, w) = g.as_plane().unwrap();
            let pts: Vec<(i64, i64)> = (-10..=10)
                .flat_map(|r| (-10..=10).map(move |s| (r, s)))
                .collect();
            let keys: Vec<_> = pts.iter().map(|&p| g.coset_key(p).unwrap()).collect();
            for (i, &x) in pts.iter().enumerate() {
                let k = keys[i];
                assert!(k.0 >= 0 && k.0 < w && k.1 >= 0 && k.1 < v);
                for (j, &y) in pts.iter().enumerate().step_by(7) {
                    assert_eq!(
                        k == keys[j],
                        g.contains((x.0 - y.0, x.1 - y.1)),
                        "{g} {x:?} {y:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        for k in 1..7 {
            assert_eq!(plane(0, 1, k).quotient_invariants().unwrap(), (1, k as u64));
            for l in 1..7 {
                let g = gcd(k as i128, l as i128) as u64;
                let m = lcm(k as i128, l as i128) as u64;
                assert_eq!(plane(0, l, k).quotient_invariants().unwrap(), (g, m));
            }
        }
        assert_eq!(plane(6, 3, 10).quotient_invariants().unwrap(), (1, 30));
    }

    #[test]
    fn quotient_matches_brute_force() {
        for g in all_planes(6, 6) {
            let (_, v, w) = g.as_plane().unwrap();
            if v * w > 36 {
                continue;
            }
            let order_of = |p: (i64, i64)| (1..).find(|&e| g.contains((e * p.0, e * p.1))).unwrap();
            let exponent = lcm(order_of((1, 0)) as i128, order_of((0, 1)) as i128) as u64;
            let mut cosets = std::collections::HashSet::new();
            for r in -12..=12 {
                for s in -12..=12 {
                    cosets.insert(g.coset_key((r, s)).unwrap());
                }
            }
            let order = cosets.len() as u64;
            let (d1, d2) = g.quotient_invariants().unwrap();
            assert_eq!(order, (v * w) as u64);
            assert_eq!(d1 * d2, order);
            assert_eq!(d2 % d1, 0);
            assert_eq!(d2, exponent, "{g}");
        }
    }

    #[test]
    fn coatom_lists() {
        assert_eq!(
            coatoms(2).unwrap(),
            vec![plane(0, 1, 2), plane(0, 2, 1), plane(1, 1, 2)]
        );
        let c3 = coatoms(3).unwrap();
        assert_eq!(c3.len(), 4);
        assert!(c3.contains(&plane(1, 1, 3)) && c3.contains(&plane(2, 1, 3)));
        for p in [2u64, 3, 5, 7, 11] {
            for g in coatoms(p).unwrap() {
                assert_eq!(g.index(), Index::Finite(BigUint::from(p)));
            }
        }
        assert_eq!(coatoms(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn kernels() {
        for k in 1..6u64 {
            for l in 1..6u64 {
                let action = AbelianPairAction::Additive {
                    moduli: vec![k, l],
                    a: vec![1 % k, 0],
                    b: vec![0, 1 % l],
                };
                assert_eq!(
                    kernel_of_pair(&action).unwrap(),
                    plane(0, l as i64, k as i64)
                );
            }
        }
        let mult = AbelianPairAction::Multiplicative { m: 5, a: 2, b: 3 };
        assert_eq!(kernel_of_pair(&mult).unwrap(), plane(1, 1, 4));
        let trivial = AbelianPairAction::Multiplicative { m: 9, a: 1, b: 1 };
        assert_eq!(kernel_of_pair(&trivial).unwrap(), Grid::full());
        let bad = AbelianPairAction::Multiplicative { m: 6, a: 2, b: 1 };
        assert!(matches!(kernel_of_pair(&bad), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn text_forms() {
        assert_eq!(plane(6, 3, 10).to_string(), "Z(6,3)+Z(10,0)");
        assert_eq!(canonical_grid(&[(-4, -6)]).to_string(), "Z(4,6)");
        assert_eq!(Grid::Zero.to_string(), "0");
        assert_eq!("0,15;2,6".parse::<Grid>().unwrap(), plane(6, 3, 10));
        assert_eq!("0".parse::<Grid>().unwrap(), Grid::Zero);
        assert!("1;2".parse::<Grid>().is_err());
        assert!(Grid::plane(3, 1, 3).is_err());
    }

    #[test]
    fn distinct_trees_span_planes() {
        for n in 2..=6 {
            let trees: Vec<_> = enumerate_trees(n).unwrap().collect();
            for (i, a) in trees.iter().enumerate() {
                for b in &trees[i + 1..] {
                    assert_eq!(span_difference(a, b).unwrap().dimension(), 2);
                }
            }
        }
    }

    fn arb_plane() -> impl Strategy<Value = Grid> {
        (1i64..=6, 1i64..=6)
            .prop_flat_map(|(v, w)| (0..w).prop_map(move |u| Grid::Plane { u, v, w }))
    }

    fn arb_grid() -> impl Strategy<Value = Grid> {
        prop::collection::vec((-12i64..=12, -12i64..=12), 0..4).prop_map(|g| canonical_grid(&g))
    }

    fn box_points() -> impl Iterator<Item = (i64, i64)> {
        (-20..=20).flat_map(|r| (-20..=20).map(move |s| (r, s)))
    }

    proptest! {
        #[test]
        fn canonical_idempotent_and_order_free(
            gens in prop::collection::vec((-30i64..=30, -30i64..=30), 0..6),
            seed in any::<u64>(),
        ) {
            let g = canonical_grid(&gens);
            prop_assert_eq!(canonical_grid(&g.generators()), g);
            let mut shuffled = gens.clone();
            let len = shuffled.len().max(1);
            shuffled.rotate_left((seed as usize) % len);
            shuffled.reverse();
            prop_assert_eq!(canonical_grid(&shuffled), g);
        }

        #[test]
        fn canonical_contains_combinations(
            gens in prop::collection::vec((-9i64..=9, -9i64..=9), 1..4),
            coeffs in prop::collection::vec(-5i64..=5, 3),
        ) {
            let g = canonical_grid(&gens);
            let p = gens.iter().zip(&coeffs).fold((0, 0), |acc, (&(r, s), &c)| (acc.0 + c * r, acc.1 + c * s));
            prop_assert!(g.contains(p));
            for gen in g.generators() {
                // canonical generators lie in the span of the input
                prop_assert!(canonical_grid(&gens).contains(gen));
            }
            prop_assert!(g.is_subgrid_of(&canonical_grid(&gens)) && canonical_grid(&gens).is_subgrid_of(&g));
        }

        #[test]
        fn meet_join_membership(a in arb_plane(), b in arb_plane()) {
            let m = a.meet(&b);
            let j = a.join(&b);
            prop_assert_eq!(m.dimension(), 2);
            for p in box_points() {
                prop_assert_eq!(m.contains(p), a.contains(p) && b.contains(p));
            }
            prop_assert!(a.is_subgrid_of(&j) && b.is_subgrid_of(&j));
            prop_assert_eq!(j, b.join(&a));
            prop_assert_eq!(m, b.meet(&a));
            prop_assert_eq!(a.meet(&a.join(&b)), a);
            prop_assert_eq!(a.join(&a.meet(&b)), a);
        }

        #[test]
        fn meet_with_lines(a in arb_grid(), b in arb_grid()) {
            let m = a.meet(&b);
            for p in (-12..=12).flat_map(|r| (-12..=12).map(move |s| (r, s))) {
                prop_assert_eq!(m.contains(p), a.contains(p) && b.contains(p), "{} {} {:?}", a, b, p);
            }
        }

        #[test]
        fn lattice_associative(a in arb_plane(), b in arb_plane(), c in arb_plane()) {
            prop_assert_eq!(a.meet(&b).meet(&c), a.meet(&b.meet(&c)));
            prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
        }
    }
}
