//! Finite linear quasigroups `x∘y = a·x + b·y` over `Z_{m1} × ... × Z_{mt}`.
//!
//! A bracketing evaluates to `Σ a^ld(i) · b^rd(i) · x_i` in each component,
//! so an identity holds iff those coefficients agree leaf by leaf. That gives
//! three independent tests: exhaustive evaluation, coefficient comparison, and
//! containment of the depth differences in the fine-spectrum grid.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::grid::{kernel_of_pair, span_difference, AbelianPairAction, Grid};
use crate::relations::{count_classes_with, CountOptions, RelationSpec};
use crate::tree::{enumerate_trees, fill_depths, BinaryTree, Bracketing};

/// Upper bound on `(Π m)^n` for exhaustive checks.
pub const BRUTE_FORCE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub m: u64,
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearQuasigroup {
    components: Vec<Component>,
}

/// One value per component.
pub type Element = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatisfactionMethod {
    ClosedForm,
    BruteForce,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Associative,
    Nonassociative(Grid),
}

/// A bracketing identity `lhs ≈ rhs` of some size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySpec {
    pub lhs: Bracketing,
    pub rhs: Bracketing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consequence {
    pub holds: bool,
    pub from_grid: Grid,
    pub to_grid: Grid,
}

impl IdentitySpec {
    pub fn new(lhs: Bracketing, rhs: Bracketing) -> Result<Self> {
        if lhs.size() != rhs.size() {
            return Err(Error::LeafCountMismatch {
                left: lhs.size(),
                right: rhs.size(),
            });
        }
        Ok(IdentitySpec { lhs, rhs })
    }

    pub fn parse(lhs: &str, rhs: &str) -> Result<Self> {
        IdentitySpec::new(lhs.parse()?, rhs.parse()?)
    }

    pub fn from_trees(lhs: BinaryTree, rhs: BinaryTree) -> Result<Self> {
        IdentitySpec::new(Bracketing::from_tree(lhs), Bracketing::from_tree(rhs))
    }

    pub fn size(&self) -> usize {
        self.lhs.size()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs.tree == self.rhs.tree
    }

    /// `Λ_{lhs,rhs}`.
    pub fn span(&self) -> Grid {
        span_difference(&self.lhs.tree, &self.rhs.tree).expect("sizes checked on construction")
    }
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

/// Whether every linear quasigroup satisfying `from` also satisfies `to`.
pub fn consequence(from: &IdentitySpec, to: &IdentitySpec) -> Consequence {
    let from_grid = from.span();
    let to_grid = to.span();
    Consequence {
        holds: to_grid.is_subgrid_of(&from_grid),
        from_grid,
        to_grid,
    }
}

impl LinearQuasigroup {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidQuasigroup("no components".into()));
        }
        for c in &components {
            if c.m < 2 {
                return Err(Error::InvalidQuasigroup(format!("modulus {} < 2", c.m)));
            }
            for x in [c.a, c.b] {
                if gcd(x as i128, c.m as i128) != 1 {
                    return Err(Error::InvalidQuasigroup(format!(
                        "{x} is not a unit mod {}",
                        c.m
                    )));
                }
            }
        }
        let components = components
            .into_iter()
            .map(|c| Component {
                m: c.m,
                a: c.a % c.m,
                b: c.b % c.m,
            })
            .collect();
        Ok(LinearQuasigroup { components })
    }

    pub fn cyclic(m: u64, a: u64, b: u64) -> Result<Self> {
        LinearQuasigroup::new(vec![Component { m, a, b }])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        self.components.iter().map(|c| c.m as u128).product()
    }

    pub fn op(&self, x: &[u64], y: &[u64]) -> Element {
        self.components
            .iter()
            .zip(x.iter().zip(y))
            .map(|(c, (&xi, &yi))| (c.a * xi + c.b * yi) % c.m)
            .collect()
    }

    fn check_assignment(&self, n: usize, assignment: &[Element]) -> Result<()> {
        if assignment.len() != n {
            return Err(Error::AssignmentLength {
                expected: n,
                found: assignment.len(),
            });
        }
        for x in assignment {
            if x.len() != self.components.len()
                || x.iter().zip(&self.components).any(|(&v, c)| v >= c.m)
            {
                return Err(Error::InvalidQuasigroup(format!("{x:?} is not an element")));
            }
        }
        Ok(())
    }

    /// Evaluates `t` recursively and by the closed form; both must agree.
    pub fn evaluate(&self, t: &Bracketing, assignment: &[Element]) -> Result<Element> {
        self.check_assignment(t.size(), assignment)?;
        let mut pos = 0;
        let mut var = 0;
        let recursive = self.eval_rec(t.tree.bits(), &mut pos, &mut var, assignment);

        let (mut ld, mut rd) = (Vec::new(), Vec::new());
        fill_depths(t.tree.bits(), &mut ld, &mut rd);
        let closed: Element = self
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| {
                (0..ld.len()).fold(0, |acc, i| {
                    (acc + coefficient(c, ld[i], rd[i]) * assignment[i][j]) % c.m
                })
            })
            .collect();
        if closed != recursive {
            return Err(Error::InternalMismatch(format!(
                "evaluation of {t}: recursive {recursive:?}, closed form {closed:?}"
            )));
        }
        Ok(closed)
    }

    fn eval_rec(&self, bits: &[bool], pos: &mut usize, var: &mut usize, xs: &[Element]) -> Element {
        let internal = bits[*pos];
        *pos += 1;
        if !internal {
            *var += 1;
            return xs[*var - 1].clone();
        }
        let left = self.eval_rec(bits, pos, var, xs);
        let right = self.eval_rec(bits, pos, var, xs);
        self.op(&left, &right)
    }

    pub fn satisfies(&self, id: &IdentitySpec, method: SatisfactionMethod) -> Result<bool> {
        match method {
            SatisfactionMethod::ClosedForm => Ok(self.satisfies_closed_form(id)),
            SatisfactionMethod::Grid => Ok(id.span().is_subgrid_of(&self.fine_spectrum_grid())),
            SatisfactionMethod::BruteForce => {
                Ok(self.brute_force_witness(id, BRUTE_FORCE_BUDGET)?.is_none())
            }
        }
    }

    /// Runs every method that fits the budget and insists they agree.
    pub fn satisfies_cross_checked(&self, id: &IdentitySpec, budget: u128) -> Result<bool> {
        let closed = self.satisfies_closed_form(id);
        let grid = self.satisfies(id, SatisfactionMethod::Grid)?;
        if closed != grid {
            return Err(Error::InternalMismatch(format!(
                "{id}: closed form {closed}, grid {grid}"
            )));
        }
        match self.brute_force_witness(id, budget) {
            Ok(w) if w.is_none() != closed => Err(Error::InternalMismatch(format!(
                "{id}: closed form {closed}, brute force {}",
                w.is_none()
            ))),
            Ok(_) | Err(Error::BudgetExceeded { .. }) => Ok(closed),
            Err(e) => Err(e),
        }
    }

    fn satisfies_closed_form(&self, id: &IdentitySpec) -> bool {
        let (mut l1, mut r1, mut l2, mut r2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        fill_depths(id.lhs.tree.bits(), &mut l1, &mut r1);
        fill_depths(id.rhs.tree.bits(), &mut l2, &mut r2);
        self.components.iter().all(|c| {
            (0..l1.len()).all(|i| coefficient(c, l1[i], r1[i]) == coefficient(c, l2[i], r2[i]))
        })
    }

    /// First assignment on which the two sides differ, searching all `(Π m)^n`.
    pub fn brute_force_witness(
        &self,
        id: &IdentitySpec,
        budget: u128,
    ) -> Result<Option<Vec<Element>>> {
        let n = id.size();
        let order = self.order();
        let needed = order.checked_pow(n as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        if id.is_trivial() {
            return Ok(None);
        }
        let table = OpTable::new(self);
        let mut digits = vec![0u32; n];
        let (lhs, rhs) = (id.lhs.tree.bits(), id.rhs.tree.bits());
        loop {
            if table.eval(lhs, &digits) != table.eval(rhs, &digits) {
                return Ok(Some(digits.iter().map(|&d| self.decode(d)).collect()));
            }
            // odometer over assignments
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] as u128 == order {
                    digits[i] = 0;
                } else {
                    break;
                }
            }
        }
    }

    fn encode(&self, x: &[u64]) -> u32 {
        self.components
            .iter()
            .zip(x)
            .fold(0u64, |acc, (c, &xi)| acc * c.m + xi) as u32
    }

    fn decode(&self, mut code: u32) -> Element {
        let mut out = vec![0; self.components.len()];
        for (slot, c) in out.iter_mut().zip(&self.components).rev() {
            *slot = code as u64 % c.m;
            code /= c.m as u32;
        }
        out
    }

    /// Meet over components of `{(r,s) : a^r b^s ≡ 1 (mod m)}`.
    pub fn fine_spectrum_grid(&self) -> Grid {
        self.components.iter().fold(Grid::full(), |acc, c| {
            let k = kernel_of_pair(&AbelianPairAction::Multiplicative {
                m: c.m,
                a: c.a,
                b: c.b,
            })
            .expect("components are validated");
            acc.meet(&k)
        })
    }

    /// `s_n`: the number of distinct term operations of size-`n` bracketings.
    pub fn spectrum(&self, n: usize) -> Result<u64> {
        self.spectrum_with(n, &CountOptions::default())
    }

    pub fn spectrum_with(&self, n: usize, opts: &CountOptions) -> Result<u64> {
        count_classes_with(n, &RelationSpec::Grid(self.fine_spectrum_grid()), opts)
    }

    pub fn classify(&self) -> Classification {
        let g = self.fine_spectrum_grid();
        assert_eq!(
            g.dimension(),
            2,
            "finite linear quasigroups have rank-2 grids"
        );
        if g.is_full() {
            Classification::Associative
        } else {
            Classification::Nonassociative(g)
        }
    }

    /// Every row and column of the operation table is a permutation.
    pub fn is_latin_square(&self) -> bool {
        let order = self.order();
        if order > 4096 {
            // a product is Latin iff each factor is
            return self.components.iter().all(|c| {
                (0..c.m).all(|x| {
                    let mut row = vec![false; c.m as usize];
                    let mut col = vec![false; c.m as usize];
                    for y in 0..c.m {
                        row[((c.a * x + c.b * y) % c.m) as usize] = true;
                        col[((c.a * y + c.b * x) % c.m) as usize] = true;
                    }
                    row.iter().chain(&col).all(|&b| b)
                })
            });
        }
        let table = OpTable::new(self);
        let n = order as u32;
        (0..n).all(|x| {
            let mut row = vec![false; n as usize];
            let mut col = vec![false; n as usize];
            for y in 0..n {
                row[table.op(x, y) as usize] = true;
                col[table.op(y, x) as usize] = true;
            }
            row.iter().all(|&b| b) && col.iter().all(|&b| b)
        })
    }
}

/// `a^ld · b^rd mod m`.
fn coefficient(c: &Component, ld: u32, rd: u32) -> u64 {
    let pow = |x: u64, e: u32| (0..e).fold(1 % c.m, |acc, _| acc * x % c.m);
    pow(c.a, ld) * pow(c.b, rd) % c.m
}

/// Operation on encoded elements, tabulated when small.
struct OpTable<'a> {
    q: &'a LinearQuasigroup,
    order: u32,
    table: Option<Vec<u32>>,
}

impl<'a> OpTable<'a> {
    fn new(q: &'a LinearQuasigroup) -> Self {
        let order = q.order() as u32;
        let table = (order as u64 * order as u64 <= 1 << 22).then(|| {
            let mut t = vec![0u32; (order * order) as usize];
            for x in 0..order {
                let ex = q.decode(x);
                for y in 0..order {
                    t[(x * order + y) as usize] = q.encode(&q.op(&ex, &q.decode(y)));
                }
            }
            t
        });
        OpTable { q, order, table }
    }

    #[inline]
    fn op(&self, x: u32, y: u32) -> u32 {
        match &self.table {
            Some(t) => t[(x * self.order + y) as usize],
            None => self
                .q
                .encode(&self.q.op(&self.q.decode(x), &self.q.decode(y))),
        }
    }

    fn eval(&self, bits: &[bool], vals: &[u32]) -> u32 {
        let (mut pos, mut var) = (0, 0);
        self.eval_rec(bits, &mut pos, &mut var, vals)
    }

    fn eval_rec(&self, bits: &[bool], pos: &mut usize, var: &mut usize, vals: &[u32]) -> u32 {
        let internal = bits[*pos];
        *pos += 1;
        if !internal {
            *var += 1;
            return vals[*var - 1];
        }
        let l = self.eval_rec(bits, pos, var, vals);
        let r = self.eval_rec(bits, pos, var, vals);
        self.op(l, r)
    }
}

impl FromStr for LinearQuasigroup {
    type Err = Error;

    /// `"m:a,b;m:a,b;..."`.
    fn from_str(s: &str) -> Result<Self> {
        let mut comps = Vec::new();
        for (i, part) in s.split(';').enumerate() {
            let bad = || Error::Syntax {
                pos: i,
                msg: format!("bad component {part:?}, want m:a,b"),
            };
            let (m, ab) = part.split_once(':').ok_or_else(bad)?;
            let (a, b) = ab.split_once(',').ok_or_else(bad)?;
            comps.push(Component {
                m: m.trim().parse().map_err(|_| bad())?,
                a: a.trim().parse().map_err(|_| bad())?,
                b: b.trim().parse().map_err(|_| bad())?,
            });
        }
        LinearQuasigroup::new(comps)
    }
}

impl fmt::Display for LinearQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}:{},{}", c.m, c.a, c.b))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// Units modulo `m`.
pub fn units(m: u64) -> Vec<u64> {
    (1..m).filter(|&x| gcd(x as i128, m as i128) == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMismatch {
    pub quasigroup: LinearQuasigroup,
    pub identity: IdentitySpec,
    pub brute_force: bool,
    pub closed_form: bool,
    pub grid: bool,
    /// Assignment separating the two sides, when brute force found one.
    pub counterexample: Option<Vec<Element>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub unit_pairs: usize,
    pub bracketing_pairs: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the three satisfaction tests on every ordered pair of size-`n`
/// bracketings and every `m:a,b` with `2 ≤ m ≤ max_m` and units `a`, `b`.
pub fn run_oracle(n: usize, max_m: u64, budget: u128) -> Result<OracleReport> {
    let trees: Vec<BinaryTree> = enumerate_trees(n)?.collect();
    let ids: Vec<IdentitySpec> = trees
        .iter()
        .flat_map(|a| {
            trees
                .iter()
                .map(move |b| IdentitySpec::from_trees(a.clone(), b.clone()).unwrap())
        })
        .collect();
    let mut report = OracleReport {
        unit_pairs: 0,
        bracketing_pairs: ids.len(),
        mismatches: Vec::new(),
    };
    for m in 2..=max_m {
        let us = units(m);
        for &a in &us {
            for &b in &us {
                report.unit_pairs += 1;
                let q = LinearQuasigroup::cyclic(m, a, b)?;
                let grid = q.fine_spectrum_grid();
                for id in &ids {
                    let witness = q.brute_force_witness(id, budget)?;
                    let brute = witness.is_none();
                    let closed = q.satisfies_closed_form(id);
                    let by_grid = id.span().is_subgrid_of(&grid);
                    if brute != closed || closed != by_grid {
                        report.mismatches.push(OracleMismatch {
                            quasigroup: q.clone(),
                            identity: id.clone(),
                            brute_force: brute,
                            closed_form: closed,
                            grid: by_grid,
                            counterexample: witness,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
