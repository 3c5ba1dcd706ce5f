//! Depth-congruence relations on trees and exact class counting.
//!
//! Each relation compares trees leaf by leaf through a token computed from the
//! leaf's (left depth, right depth) pair, so two trees are related exactly when
//! their token sequences agree. Counting enumerates all trees, packs each token
//! sequence into an integer key and counts distinct keys.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, gcd, modp};
use crate::error::{Error, Result};
use crate::grid::{coset_key_raw, Grid};
use crate::tree::{
    check_guard, check_same_size, enumerate_trees_with_limit, fill_depths, BinaryTree, Trees,
    DEFAULT_MAX_LEAVES,
};

/// Guard for [`classes`], which materialises every tree.
pub const CLASSES_MAX_LEAVES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationSpec {
    /// Total depths agree mod `k`.
    D(u64),
    /// Left depths agree mod `k`.
    L(u64),
    /// Right depths agree mod `k`.
    R(u64),
    /// Left depths agree mod `k` and right depths mod `ℓ`.
    LR(u64, u64),
    /// `a·ld + b·rd` agree mod `m`.
    Abm(i64, i64, i64),
    /// Every per-leaf difference lies in the grid.
    Grid(Grid),
}

/// A relation in normal form. Grids are always two-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalized {
    Equality,
    Grid(Grid),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LeafToken {
    Residue(u64),
    Pair(u64, u64),
    Coset(i64, i64),
    Raw(u32, u32),
}

/// Per-leaf tokens; equal keys mean related trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LeafKey(pub Vec<LeafToken>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub max_leaves: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            max_leaves: DEFAULT_MAX_LEAVES,
            threads: None,
        }
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationSpec::D(k) => write!(f, "D({k})"),
            RelationSpec::L(k) => write!(f, "L({k})"),
            RelationSpec::R(k) => write!(f, "R({k})"),
            RelationSpec::LR(k, l) => write!(f, "LR({k},{l})"),
            RelationSpec::Abm(a, b, m) => write!(f, "ABM({a},{b},{m})"),
            RelationSpec::Grid(g) => write!(f, "GRID({g})"),
        }
    }
}

/// Reduces `(a, b, m)` to a canonical triple describing the same relation:
/// divides out `gcd(a, b, m)` and picks the least unit multiple.
pub fn reduce_abm(a: i64, b: i64, m: i64) -> (i64, i64, i64) {
    let m = m.abs();
    if m == 0 {
        let g = gcd(a as i128, b as i128) as i64;
        if g == 0 {
            return (0, 0, 0);
        }
        let (a, b) = (a / g, b / g);
        return if b < 0 || (b == 0 && a < 0) {
            (-a, -b, 0)
        } else {
            (a, b, 0)
        };
    }
    let g = gcd(gcd(a as i128, b as i128), m as i128) as i64;
    let (a, b, m) = (a.rem_euclid(m) / g, b.rem_euclid(m) / g, m / g);
    let best = (1..=m)
        .filter(|&l| gcd(l as i128, m as i128) == 1)
        .map(|l| ((l * a) % m, (l * b) % m))
        .min()
        .unwrap();
    (best.0, best.1, m)
}

/// Kernel of `(r, s) ↦ a·r + b·s mod m` for `m > 0`, in canonical form.
fn abm_grid(a: i64, b: i64, m: i64) -> Grid {
    let (a, b, m) = (
        modp(a as i128, m as i128),
        modp(b as i128, m as i128),
        m as i128,
    );
    let ga = gcd(a, m);
    let w = m / ga;
    let v = ga / gcd(ga, b);
    // a·r ≡ −b·v (mod m), divided through by ga
    let rhs = modp(-b * v / ga, w);
    let (_, inv, _) = ext_gcd(a / ga, w);
    let u = modp(rhs * inv, w);
    Grid::Plane {
        u: u as i64,
        v: v as i64,
        w: w as i64,
    }
}

pub fn normalize_relation(spec: &RelationSpec) -> Normalized {
    let grid = |u: u64, v: u64, w: u64| {
        Normalized::Grid(Grid::Plane {
            u: u as i64,
            v: v as i64,
            w: w as i64,
        })
    };
    match *spec {
        RelationSpec::D(0) | RelationSpec::L(0) | RelationSpec::R(0) => Normalized::Equality,
        RelationSpec::LR(k, l) if k == 0 || l == 0 => Normalized::Equality,
        RelationSpec::D(k) => grid(k - 1, 1, k),
        RelationSpec::L(k) => grid(0, 1, k),
        RelationSpec::R(k) => grid(0, k, 1),
        RelationSpec::LR(k, l) => grid(0, l, k),
        RelationSpec::Abm(a, b, m) => match reduce_abm(a, b, m) {
            (0, 0, 0) => Normalized::Grid(Grid::full()),
            (_, _, 0) => Normalized::Equality,
            (a, b, m) => Normalized::Grid(abm_grid(a, b, m)),
        },
        RelationSpec::Grid(g) if g.dimension() == 2 => Normalized::Grid(g),
        RelationSpec::Grid(_) => Normalized::Equality,
    }
}

/// Token rule for one relation.
#[derive(Debug, Clone, Copy)]
enum Keyer {
    Residue { a: u64, b: u64, m: u64 },
    Pair { k: u64, l: u64 },
    Coset { u: i64, v: i64, w: i64 },
    Raw { n: u64 },
}

impl Keyer {
    fn for_spec(spec: &RelationSpec, n: usize) -> Keyer {
        let raw = Keyer::Raw { n: n as u64 };
        match *spec {
            RelationSpec::D(0) | RelationSpec::L(0) | RelationSpec::R(0) => raw,
            RelationSpec::D(k) => Keyer::Residue {
                a: 1 % k,
                b: 1 % k,
                m: k,
            },
            RelationSpec::L(k) => Keyer::Residue {
                a: 1 % k,
                b: 0,
                m: k,
            },
            RelationSpec::R(k) => Keyer::Residue {
                a: 0,
                b: 1 % k,
                m: k,
            },
            RelationSpec::LR(k, l) if k == 0 || l == 0 => raw,
            RelationSpec::LR(k, l) => Keyer::Pair { k, l },
            RelationSpec::Abm(a, b, m) => match reduce_abm(a, b, m) {
                (0, 0, 0) => Keyer::Residue { a: 0, b: 0, m: 1 },
                (_, _, 0) => raw,
                (a, b, m) => Keyer::Residue {
                    a: a as u64,
                    b: b as u64,
                    m: m as u64,
                },
            },
            RelationSpec::Grid(Grid::Plane { u, v, w }) => Keyer::Coset { u, v, w },
            RelationSpec::Grid(_) => raw,
        }
    }

    fn token(&self, ld: u32, rd: u32) -> LeafToken {
        let (l, r) = (ld as u64, rd as u64);
        match *self {
            Keyer::Residue { a, b, m } => LeafToken::Residue((a * l + b * r) % m),
            Keyer::Pair { k, l: ell } => LeafToken::Pair(l % k, r % ell),
            Keyer::Coset { u, v, w } => {
                let (r0, s0) = coset_key_raw(u, v, w, ld as i64, rd as i64);
                LeafToken::Coset(r0, s0)
            }
            Keyer::Raw { .. } => LeafToken::Raw(ld, rd),
        }
    }

    /// Token as a digit in `[0, radix)`.
    #[inline]
    fn digit(&self, ld: u32, rd: u32) -> u64 {
        let (l, r) = (ld as u64, rd as u64);
        match *self {
            Keyer::Residue { a, b, m } => (a * l + b * r) % m,
            Keyer::Pair { k, l: ell } => (l % k) * ell + r % ell,
            Keyer::Coset { u, v, w } => {
                let (r0, s0) = coset_key_raw(u, v, w, ld as i64, rd as i64);
                (r0 * v + s0) as u64
            }
            Keyer::Raw { n } => l * n + r,
        }
    }

    fn radix(&self) -> u64 {
        match *self {
            Keyer::Residue { m, .. } => m,
            Keyer::Pair { k, l } => k * l,
            Keyer::Coset { v, w, .. } => (v * w) as u64,
            Keyer::Raw { n } => n * n,
        }
    }
}

pub fn leaf_key(tree: &BinaryTree, spec: &RelationSpec) -> LeafKey {
    let keyer = Keyer::for_spec(spec, tree.leaf_count());
    let (mut ld, mut rd) = (Vec::new(), Vec::new());
    fill_depths(tree.bits(), &mut ld, &mut rd);
    LeafKey(
        ld.iter()
            .zip(&rd)
            .map(|(&l, &r)| keyer.token(l, r))
            .collect(),
    )
}

pub fn equivalent(t: &BinaryTree, t2: &BinaryTree, spec: &RelationSpec) -> Result<bool> {
    check_same_size(t, t2)?;
    Ok(leaf_key(t, spec) == leaf_key(t2, spec))
}

/// Distinct packed keys for one relation.
enum KeyBuf {
    Narrow(Vec<u64>),
    Medium(Vec<u128>),
    Wide(Vec<Box<[u64]>>),
}

impl KeyBuf {
    fn for_keyer(keyer: &Keyer, n: usize) -> KeyBuf {
        let radix = keyer.radix().max(1) as u128;
        match radix.checked_pow(n as u32) {
            Some(x) if x <= u64::MAX as u128 + 1 => KeyBuf::Narrow(Vec::new()),
            Some(_) => KeyBuf::Medium(Vec::new()),
            None => KeyBuf::Wide(Vec::new()),
        }
    }

    #[inline]
    fn push(&mut self, keyer: &Keyer, ld: &[u32], rd: &[u32]) {
        let radix = keyer.radix();
        let digits = ld.iter().zip(rd).map(|(&l, &r)| keyer.digit(l, r));
        match self {
            KeyBuf::Narrow(v) => {
                v.push(digits.fold(0u64, |acc, d| acc.wrapping_mul(radix).wrapping_add(d)))
            }
            KeyBuf::Medium(v) => {
                v.push(digits.fold(0u128, |acc, d| acc * radix as u128 + d as u128))
            }
            KeyBuf::Wide(v) => v.push(digits.collect()),
        }
    }

    fn sort_dedup(&mut self) {
        fn go<T: Ord + Send>(v: &mut Vec<T>) {
            v.par_sort_unstable();
            v.dedup();
        }
        match self {
            KeyBuf::Narrow(v) => go(v),
            KeyBuf::Medium(v) => go(v),
            KeyBuf::Wide(v) => go(v),
        }
    }

    fn absorb(&mut self, other: KeyBuf) {
        match (self, other) {
            (KeyBuf::Narrow(a), KeyBuf::Narrow(b)) => a.extend(b),
            (KeyBuf::Medium(a), KeyBuf::Medium(b)) => a.extend(b),
            (KeyBuf::Wide(a), KeyBuf::Wide(b)) => a.extend(b),
            _ => unreachable!("buffers for one keyer share a width"),
        }
    }

    fn len(&self) -> usize {
        match self {
            KeyBuf::Narrow(v) => v.len(),
            KeyBuf::Medium(v) => v.len(),
            KeyBuf::Wide(v) => v.len(),
        }
    }
}

/// Number of relations keyed together in one pass over the trees.
const CHUNK: usize = 8;

pub fn count_classes(n: usize, spec: &RelationSpec) -> Result<u64> {
    count_classes_with(n, spec, &CountOptions::default())
}

pub fn count_classes_with(n: usize, spec: &RelationSpec, opts: &CountOptions) -> Result<u64> {
    Ok(count_classes_many(n, std::slice::from_ref(spec), opts)?[0])
}

/// Counts several relations while sharing the tree enumeration.
pub fn count_classes_many(
    n: usize,
    specs: &[RelationSpec],
    opts: &CountOptions,
) -> Result<Vec<u64>> {
    check_guard(n, opts.max_leaves)?;
    let keyers: Vec<Keyer> = specs.iter().map(|s| Keyer::for_spec(s, n)).collect();
    let run = || {
        keyers
            .chunks(CHUNK)
            .flat_map(|chunk| count_chunk(n, chunk))
            .collect()
    };
    match opts.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InternalMismatch(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

fn count_chunk(n: usize, keyers: &[Keyer]) -> Vec<u64> {
    let parts: Vec<Vec<KeyBuf>> = Trees::partition_sizes(n)
        .into_par_iter()
        .map(|k| {
            let mut bufs: Vec<KeyBuf> = keyers.iter().map(|kr| KeyBuf::for_keyer(kr, n)).collect();
            let mut trees = Trees::partition(n, k, usize::MAX).expect("guard checked by caller");
            let (mut ld, mut rd) = (Vec::with_capacity(n), Vec::with_capacity(n));
            while let Some(bits) = trees.next_bits() {
                fill_depths(bits, &mut ld, &mut rd);
                for (kr, buf) in keyers.iter().zip(bufs.iter_mut()) {
                    buf.push(kr, &ld, &rd);
                }
            }
            bufs.iter_mut().for_each(KeyBuf::sort_dedup);
            bufs
        })
        .collect();

    let mut merged: Vec<Option<KeyBuf>> = (0..keyers.len()).map(|_| None).collect();
    for part in parts {
        for (slot, buf) in merged.iter_mut().zip(part) {
            match slot {
                Some(acc) => acc.absorb(buf),
                None => *slot = Some(buf),
            }
        }
    }
    merged
        .into_iter()
        .map(|b| {
            let mut b = b.expect("at least one partition");
            b.sort_dedup();
            b.len() as u64
        })
        .collect()
}

/// The classes of `𝒯ₙ`, each in enumeration order, ordered by first member.
pub fn classes(n: usize, spec: &RelationSpec) -> Result<Vec<Vec<BinaryTree>>> {
    classes_with_limit(n, spec, CLASSES_MAX_LEAVES)
}

pub fn classes_with_limit(
    n: usize,
    spec: &RelationSpec,
    max_leaves: usize,
) -> Result<Vec<Vec<BinaryTree>>> {
    let mut index: HashMap<LeafKey, usize> = HashMap::new();
    let mut out: Vec<Vec<BinaryTree>> = Vec::new();
    for t in enumerate_trees_with_limit(n, max_leaves)? {
        let key = leaf_key(&t, spec);
        let next = out.len();
        let i = *index.entry(key).or_insert(next);
        if i == next {
            out.push(Vec::new());
        }
        out[i].push(t);
    }
    Ok(out)
}

/// `C_{k,n}`: the number of classes of `𝒯_{n+1}` under `L(k)`.
pub fn modular_catalan(k: u64, n: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidRelation(
            "modular Catalan numbers need k >= 1".into(),
        ));
    }
    if n <= 1 {
        return Ok(BigUint::from(1u32));
    }
    let binom = |top: u64, bottom: u64| -> BigInt {
        if bottom > top {
            BigInt::zero()
        } else {
            num_integer::binomial(BigInt::from(top), BigInt::from(bottom))
        }
    };
    let mut sum = BigInt::zero();
    for j in 0..=(n - 1) / k {
        let term = binom(n, j) * binom(2 * n - j * k, n + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::InternalMismatch(format!(
            "C_{{{k},{n}}}: sum {sum} not divisible by {n}"
        )));
    }
    Ok(q.to_biguint().expect("nonnegative"))
}

/// Convenience for small values.
pub fn modular_catalan_u64(k: u64, n: u64) -> Result<u64> {
    modular_catalan(k, n)?
        .to_u64()
        .ok_or_else(|| Error::InternalMismatch("modular Catalan number exceeds u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{canonical_grid, kernel_of_pair, AbelianPairAction};
    use crate::tree::{enumerate_trees, parse_bracketing};
    use proptest::prelude::*;

    fn t(s: &str) -> BinaryTree {
        parse_bracketing(s).unwrap().tree
    }

    /// Direct reading of each definition, leaf by leaf, with no keys or grids.
    fn related_naive(a: &BinaryTree, b: &BinaryTree, spec: &RelationSpec) -> bool {
        let (pa, pb) = (a.depth_profile(), b.depth_profile());
        let cong = |x: i64, y: i64, m: i64| if m == 0 { x == y } else { (x - y) % m == 0 };
        (0..a.leaf_count()).all(|i| {
            let (la, ra) = (pa.left_depths[i] as i64, pa.right_depths[i] as i64);
            let (lb, rb) = (pb.left_depths[i] as i64, pb.right_depths[i] as i64);
            match *spec {
                RelationSpec::D(k) => cong(la + ra, lb + rb, k as i64),
                RelationSpec::L(k) => cong(la, lb, k as i64),
                RelationSpec::R(k) => cong(ra, rb, k as i64),
                RelationSpec::LR(k, l) => cong(la, lb, k as i64) && cong(ra, rb, l as i64),
                RelationSpec::Abm(x, y, m) => cong(x * la + y * ra, x * lb + y * rb, m),
                RelationSpec::Grid(g) => g.contains((la - lb, ra - rb)),
            }
        })
    }

    fn naive_count(n: usize, spec: &RelationSpec) -> u64 {
        let mut reps: Vec<BinaryTree> = Vec::new();
        for tree in enumerate_trees(n).unwrap() {
            if !reps.iter().any(|r| related_naive(r, &tree, spec)) {
                reps.push(tree);
            }
        }
        reps.len() as u64
    }

    fn all_specs() -> Vec<RelationSpec> {
        let mut v = Vec::new();
        for k in 0..5 {
            v.extend([RelationSpec::D(k), RelationSpec::L(k), RelationSpec::R(k)]);
            for l in 0..4 {
                v.push(RelationSpec::LR(k, l));
            }
        }
        for a in -2..4 {
            for b in -2..4 {
                for m in [0, 1, 2, 3, 4, 6, -4] {
                    v.push(RelationSpec::Abm(a, b, m));
                }
            }
        }
        for gens in ["6,3;10,0", "1,2;2,0", "0", "2,3", "1,1;3,0"] {
            v.push(RelationSpec::Grid(gens.parse().unwrap()));
        }
        v
    }

    #[test]
    fn normalize_examples() {
        let plane = |u, v, w| Normalized::Grid(Grid::Plane { u, v, w });
        assert_eq!(normalize_relation(&RelationSpec::D(2)), plane(1, 1, 2));
        assert_eq!(normalize_relation(&RelationSpec::LR(3, 3)), plane(0, 3, 3));
        assert_eq!(
            normalize_relation(&RelationSpec::Abm(1, 2, 3)),
            plane(1, 1, 3)
        );
        assert_eq!(
            normalize_relation(&RelationSpec::D(0)),
            Normalized::Equality
        );
        assert_eq!(
            normalize_relation(&RelationSpec::Abm(2, 3, 0)),
            Normalized::Equality
        );
        assert_eq!(
            normalize_relation(&RelationSpec::Abm(0, 0, 0)),
            plane(0, 1, 1)
        );
        assert_eq!(
            normalize_relation(&RelationSpec::Grid(canonical_grid(&[(2, 3)]))),
            Normalized::Equality
        );
    }

    #[test]
    fn abm_grid_matches_kernel_search() {
        for m in 1..=12i64 {
            for a in -3..=m {
                for b in -3..=m {
                    let action = AbelianPairAction::Additive {
                        moduli: vec![m as u64],
                        a: vec![a.rem_euclid(m) as u64],
                        b: vec![b.rem_euclid(m) as u64],
                    };
                    let expect = kernel_of_pair(&action).unwrap();
                    assert_eq!(abm_grid(a, b, m), expect, "({a},{b},{m})");
                    assert_eq!(
                        normalize_relation(&RelationSpec::Abm(a, b, m)),
                        Normalized::Grid(expect)
                    );
                }
            }
        }
    }

    #[test]
    fn normalization_matches_definitions() {
        for n in 1..=6 {
            let trees: Vec<_> = enumerate_trees(n).unwrap().collect();
            for spec in all_specs() {
                let as_grid = match normalize_relation(&spec) {
                    Normalized::Equality => RelationSpec::Grid(Grid::Zero),
                    Normalized::Grid(g) => RelationSpec::Grid(g),
                };
                for a in &trees {
                    for b in &trees {
                        let expect = related_naive(a, b, &spec);
                        assert_eq!(equivalent(a, b, &spec).unwrap(), expect, "{spec} {a} {b}");
                        assert_eq!(
                            equivalent(a, b, &as_grid).unwrap(),
                            expect,
                            "{spec} as grid"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn key_examples() {
        let t3 = t("x1((x2x3)(x4x5))");
        let t5 = t("x1(((x2x3)x4)x5)");
        let res = |v: &[u64]| LeafKey(v.iter().map(|&x| LeafToken::Residue(x)).collect());
        assert_eq!(leaf_key(&t3, &RelationSpec::D(2)), res(&[1, 1, 1, 1, 1]));
        assert_eq!(leaf_key(&t5, &RelationSpec::D(1)), res(&[0, 0, 0, 0, 0]));
        assert_eq!(leaf_key(&t5, &RelationSpec::L(3)), res(&[1, 0, 2, 1, 0]));
    }

    #[test]
    fn equivalent_examples() {
        let t1 = t("x1(x2(x3(x4x5)))");
        let t5 = t("x1(((x2x3)x4)x5)");
        let t8 = t("(((x1x2)x3)x4)x5");
        let t12 = t("(x1(x2(x3x4)))x5");
        assert!(equivalent(&t5, &t8, &RelationSpec::L(3)).unwrap());
        assert!(equivalent(&t1, &t12, &RelationSpec::R(3)).unwrap());
        assert!(!equivalent(&t5, &t8, &RelationSpec::L(2)).unwrap());
        assert!(equivalent(&t1, &BinaryTree::leaf(), &RelationSpec::L(2)).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_classes(5, &RelationSpec::D(2)).unwrap(), 10);
        assert_eq!(count_classes(7, &RelationSpec::L(3)).unwrap(), 96);
        assert_eq!(count_classes(7, &RelationSpec::Abm(1, 2, 3)).unwrap(), 128);
        assert!(matches!(
            count_classes(17, &RelationSpec::D(2)),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn counts_match_naive_oracle() {
        for n in 1..=7 {
            for spec in all_specs() {
                assert_eq!(
                    count_classes(n, &spec).unwrap(),
                    naive_count(n, &spec),
                    "{spec} n={n}"
                );
            }
        }
    }

    #[test]
    fn counts_independent_of_threads() {
        let specs: Vec<_> = all_specs().into_iter().take(30).collect();
        let base = count_classes_many(9, &specs, &CountOptions::default()).unwrap();
        for threads in [1, 2, 5] {
            let opts = CountOptions {
                threads: Some(threads),
                ..Default::default()
            };
            assert_eq!(count_classes_many(9, &specs, &opts).unwrap(), base);
        }
    }

    #[test]
    fn class_lists() {
        let five: Vec<_> = enumerate_trees(5).unwrap().collect();
        let paper_index = |tree: &BinaryTree| {
            [
                "x1(x2(x3(x4x5)))",
                "x1(x2((x3x4)x5))",
                "x1((x2x3)(x4x5))",
                "x1((x2(x3x4))x5)",
                "x1(((x2x3)x4)x5)",
                "(x1x2)(x3(x4x5))",
                "(x1x2)((x3x4)x5)",
                "(((x1x2)x3)x4)x5",
                "((x1(x2x3))x4)x5",
                "((x1x2)(x3x4))x5",
                "(x1((x2x3)x4))x5",
                "(x1(x2(x3x4)))x5",
                "((x1x2)x3)(x4x5)",
                "(x1(x2x3))(x4x5)",
            ]
            .iter()
            .position(|s| t(s) == *tree)
            .unwrap()
                + 1
        };
        assert_eq!(five.len(), 14);
        let nontrivial = |spec: RelationSpec| -> Vec<Vec<usize>> {
            classes(5, &spec)
                .unwrap()
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| {
                    let mut v: Vec<usize> = c.iter().map(paper_index).collect();
                    v.sort();
                    v
                })
                .collect()
        };
        assert_eq!(
            nontrivial(RelationSpec::D(2)),
            vec![vec![2, 9], vec![3, 10], vec![4, 13], vec![6, 11]]
        );
        assert_eq!(nontrivial(RelationSpec::LR(2, 2)), vec![vec![2, 9]]);
        assert_eq!(nontrivial(RelationSpec::L(3)), vec![vec![5, 8]]);
        assert_eq!(nontrivial(RelationSpec::R(3)), vec![vec![1, 12]]);
        assert_eq!(classes(3, &RelationSpec::D(0)).unwrap().len(), 2);
        assert!(classes(9, &RelationSpec::D(2)).is_err());
    }

    #[test]
    fn modular_catalan_examples() {
        assert_eq!(modular_catalan_u64(3, 6).unwrap(), 96);
        assert_eq!(modular_catalan_u64(2, 6).unwrap(), 32);
        for n in 0..10u64 {
            for k in n.max(1)..n + 3 {
                assert_eq!(
                    modular_catalan(k, n).unwrap(),
                    crate::tree::catalan(n),
                    "k={k} n={n}"
                );
            }
        }
        assert!(modular_catalan(0, 3).is_err());
    }

    #[test]
    fn modular_catalan_matches_counts() {
        for k in 1..=6 {
            for n in 1..=9usize {
                let count = count_classes(n, &RelationSpec::L(k)).unwrap();
                assert_eq!(count, modular_catalan_u64(k, n as u64 - 1).unwrap());
                assert_eq!(count, count_classes(n, &RelationSpec::R(k)).unwrap());
            }
        }
    }

    #[test]
    fn reduce_abm_examples() {
        assert_eq!(reduce_abm(2, 4, 6), (1, 2, 3));
        assert_eq!(reduce_abm(2, 1, 3), (1, 2, 3));
        assert_eq!(reduce_abm(-1, 0, 5), (1, 0, 5));
        assert_eq!(reduce_abm(4, -6, 0), (-2, 3, 0));
        assert_eq!(reduce_abm(0, 0, 0), (0, 0, 0));
    }

    proptest! {
        #[test]
        fn reduction_preserves_relation(a in -6i64..=6, b in -6i64..=6, m in -6i64..=8, l in 1i64..=4) {
            let spec = RelationSpec::Abm(a, b, m);
            let (ra, rb, rm) = reduce_abm(a, b, m);
            let scaled = RelationSpec::Abm(l * a, l * b, l * m);
            prop_assert_eq!(normalize_relation(&spec), normalize_relation(&RelationSpec::Abm(ra, rb, rm)));
            prop_assert_eq!(normalize_relation(&spec), normalize_relation(&scaled));
            prop_assert_eq!(reduce_abm(ra, rb, rm), (ra, rb, rm));
        }

        #[test]
        fn key_equality_is_relation(i in 0usize..42, j in 0usize..42, k in 1u64..5, l in 1u64..5) {
            let trees: Vec<_> = enumerate_trees(6).unwrap().collect();
            let (a, b) = (&trees[i], &trees[j]);
            for spec in [RelationSpec::D(k), RelationSpec::L(k), RelationSpec::R(k), RelationSpec::LR(k, l)] {
                prop_assert_eq!(equivalent(a, b, &spec).unwrap(), related_naive(a, b, &spec));
            }
        }
    }
}
