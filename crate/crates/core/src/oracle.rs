//! Brute-force reference implementations over explicit truth tables.
//!
//! Everything here enumerates assignments one by one and is limited to 20
//! inputs (or lines). The symbolic code paths are tested against these.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::Rng;

use crate::bdd::{BddError, Func, Manager, VarId};
use crate::cube::{Cube, OutputSet, Polarity};
use crate::embed::{RcBdd, Role};
use crate::lines::{LineReport, Method};
use crate::pla::{Pla, PlaEntry};

/// Largest input (or line) count the oracle accepts.
pub const MAX_BRUTE_INPUTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} = {found} exceeds the brute-force limit of {max}")]
    TooLarge {
        what: &'static str,
        found: usize,
        max: usize,
    },
    #[error(transparent)]
    Bdd(#[from] BddError),
}

fn check(what: &'static str, found: usize, max: usize) -> Result<(), OracleError> {
    if found > max {
        Err(OracleError::TooLarge { what, found, max })
    } else {
        Ok(())
    }
}

/// Output masks of all `2^n` inputs; `rows[x]` bit `i` is `f_i(x)` and bit
/// `j` of `x` is input `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    pub n: usize,
    pub m: usize,
    pub rows: Vec<u64>,
}

impl TruthTable {
    pub fn new(n: usize, m: usize, rows: Vec<u64>) -> Result<Self, OracleError> {
        check("n", n, MAX_BRUTE_INPUTS)?;
        check("m", m, 64)?;
        assert_eq!(rows.len(), 1 << n, "need one row per input");
        Ok(TruthTable { n, m, rows })
    }

    pub fn from_pla(pla: &Pla) -> Result<Self, OracleError> {
        check("n", pla.inputs(), MAX_BRUTE_INPUTS)?;
        check("m", pla.outputs(), 64)?;
        let rows = (0..1u64 << pla.inputs())
            .map(|x| pla.output_at(x).to_mask().expect("m <= 64"))
            .collect();
        Ok(TruthTable {
            n: pla.inputs(),
            m: pla.outputs(),
            rows,
        })
    }

    /// Evaluates `fs` over the inputs `xs` (bit `j` of the row index is
    /// `xs[j]`); variables outside `xs` read as 0.
    pub fn from_functions(mgr: &Manager, fs: &[Func], xs: &[VarId]) -> Result<Self, OracleError> {
        let (n, m) = (xs.len(), fs.len());
        check("n", n, MAX_BRUTE_INPUTS)?;
        check("m", m, 64)?;
        let mut a = vec![false; mgr.var_count()];
        let mut rows = Vec::with_capacity(1 << n);
        for x in 0..1u64 << n {
            for (j, v) in xs.iter().enumerate() {
                a[v.index()] = x >> j & 1 == 1;
            }
            let mut row = 0;
            for (i, &f) in fs.iter().enumerate() {
                row |= (mgr.eval(f, &a)? as u64) << i;
            }
            rows.push(row);
        }
        Ok(TruthTable { n, m, rows })
    }

    pub fn get(&self, x: u64) -> u64 {
        self.rows[x as usize]
    }
}

/// Exact pattern counts by enumerating every input.
pub fn brute_mu(tt: &TruthTable) -> LineReport {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &row in &tt.rows {
        *counts.entry(row).or_default() += 1;
    }
    let per_pattern = counts
        .into_iter()
        .map(|(mask, c)| (OutputSet::from_mask(mask), BigUint::from(c)))
        .collect();
    LineReport::from_counts(tt.n, tt.m, per_pattern, true, Method::Brute)
}

/// Pointwise recomputation of the embedding checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteReport {
    pub functional: bool,
    pub injective: bool,
    pub total: bool,
    /// `None` when no reference table was supplied.
    pub projects: Option<bool>,
    /// Input assignments with at least one image.
    pub specified: u64,
}

impl BruteReport {
    /// Injective, functional and projecting; total as well if `need_total`.
    pub fn passes(&self, need_total: bool) -> bool {
        self.functional
            && self.injective
            && self.projects.unwrap_or(true)
            && (self.total || !need_total)
    }
}

/// Images of one input-role assignment (bit `k` is the `k`-th input-role
/// variable), found by walking `χ` from the root. Output bit `k` is the
/// `k`-th output-role variable.
pub fn images(rc: &RcBdd, input: u64) -> Vec<u64> {
    let mgr = rc.manager();
    let levels = 2 * rc.lines();
    let mut out = Vec::new();
    let mut stack = vec![(rc.chi(), 0u32, 0u64)];
    while let Some((f, level, acc)) = stack.pop() {
        if f == mgr.zero() {
            continue;
        }
        if level as usize == levels {
            out.push(acc);
            continue;
        }
        let v = mgr.var_at_level(level).expect("level inside the frame");
        let (lo, hi) = mgr.split(f, v).expect("walk follows the order");
        let vr = rc.role(v);
        let k = match vr.role {
            Role::Constant | Role::Output => vr.index,
            Role::Input => rc.constants() + vr.index,
            Role::Garbage => rc.outputs() + vr.index,
        };
        if vr.role.is_input_side() {
            let next = if input >> k & 1 == 1 { hi } else { lo };
            stack.push((next, level + 1, acc));
        } else {
            stack.push((hi, level + 1, acc | 1 << k));
            stack.push((lo, level + 1, acc));
        }
    }
    out
}

/// Enumerates the relation of `rc` pointwise. With a reference table the
/// projection check requires, for every `x` on the `κ = 0` plane, that each
/// image carries `y = f(x)` and that `x` has an image whenever `f(x) ≠ 0`.
pub fn brute_verify(rc: &RcBdd, reference: Option<&TruthTable>) -> Result<BruteReport, OracleError> {
    let r = rc.lines();
    check("r", r, MAX_BRUTE_INPUTS)?;
    let (p, m) = (rc.constants(), rc.outputs());
    let y_mask = (1u64 << m) - 1;
    let mut seen = vec![false; 1 << r];
    let mut rep = BruteReport {
        functional: true,
        injective: true,
        total: true,
        projects: reference.map(|_| true),
        specified: 0,
    };
    for a in 0..1u64 << r {
        let imgs = images(rc, a);
        match imgs.len() {
            0 => rep.total = false,
            1 => rep.specified += 1,
            _ => {
                rep.functional = false;
                rep.specified += 1;
            }
        }
        for &b in &imgs {
            if std::mem::replace(&mut seen[b as usize], true) {
                rep.injective = false;
            }
        }
        if let Some(tt) = reference {
            if a & ((1 << p) - 1) == 0 {
                let want = tt.get(a >> p);
                let ok = imgs.iter().all(|&b| b & y_mask == want) && (want == 0 || !imgs.is_empty());
                if !ok {
                    rep.projects = Some(false);
                }
            }
        }
    }
    Ok(rep)
}

/// Checks that no two cubes of `pla` overlap (by enumeration) and, with a
/// reference, that both describe the same function.
pub fn brute_dsop_check(pla: &Pla, reference: Option<&Pla>) -> Result<bool, OracleError> {
    let n = pla.inputs();
    check("n", n, MAX_BRUTE_INPUTS)?;
    for x in 0..1u64 << n {
        let covering = pla.entries().iter().filter(|e| e.cube.contains_index(x)).count();
        if covering > 1 {
            return Ok(false);
        }
        if let Some(r) = reference {
            if r.output_at(x) != pla.output_at(x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A random PLA with `cubes` rows, each position don't-care with
/// probability 1/3 and a random nonempty output set.
pub fn random_pla<R: Rng>(n: usize, m: usize, cubes: usize, rng: &mut R) -> Pla {
    assert!((1..=64).contains(&m), "1..=64 outputs");
    let mut entries = Vec::with_capacity(cubes);
    for _ in 0..cubes {
        let lits = (0..n)
            .map(|_| match rng.gen_range(0..3) {
                0 => Polarity::Zero,
                1 => Polarity::One,
                _ => Polarity::DontCare,
            })
            .collect();
        let full = if m == 64 { u64::MAX } else { (1 << m) - 1 };
        let mask = rng.gen_range(1..=full);
        entries.push(PlaEntry::new(Cube::new(lits), OutputSet::from_mask(mask)));
    }
    Pla::from_entries(n, m, entries).expect("widths match")
}

/// Number of restricted growth sequences of length `p`, by listing them.
pub fn count_restricted_growth(p: usize) -> u64 {
    fn go(left: usize, max: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        (0..=max + 1).map(|v| go(left - 1, max.max(v))).sum()
    }
    if p == 0 {
        return 1;
    }
    // a_1 = 0 is fixed; treat the running maximum as 0
    go(p - 1, 0)
}
