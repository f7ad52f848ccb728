//! Counting the lines a reversible embedding needs.
//!
//! For `f ∈ B_{n,m}` let `µ(f)` be the number of inputs mapped to the most
//! frequent output pattern. An optimal embedding adds `ℓ = ⌈log₂ µ⌉` garbage
//! outputs, for `m + ℓ` lines in total. Three routes are provided:
//!
//! * [`heuristic_mu`] sums cube sizes per output set of a PLA. Overlapping
//!   cubes make this an estimate that may be too small or too large.
//! * [`exact_mu_cube`] runs the same count on the disjoint form of the PLA,
//!   where it is exact.
//! * [`exact_mu_bdd`] builds the characteristic function with all outputs
//!   above all inputs and reads the preimage sizes off the nodes reached
//!   right below the output levels.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bdd::{self, BddError, Func, Manager, VarId};
use crate::cube::OutputSet;
use crate::dsop::dsop;
use crate::pla::{characteristic, off_set, Pla};

/// Default cap on output patterns enumerated by [`exact_mu_bdd`].
pub const DEFAULT_PATTERN_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "heuristic")]
    HeuristicCube,
    #[serde(rename = "exact-cube")]
    ExactCube,
    #[serde(rename = "exact-bdd")]
    ExactBdd,
    #[serde(rename = "brute")]
    Brute,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::HeuristicCube => "heuristic",
            Method::ExactCube => "exact-cube",
            Method::ExactBdd => "exact-bdd",
            Method::Brute => "brute",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineError {
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error("more than {0} output patterns")]
    PatternCap(usize),
    #[error("function depends on {0:?}, which is not one of the listed inputs")]
    ForeignSupport(VarId),
}

impl LineError {
    pub fn is_resource(&self) -> bool {
        match self {
            LineError::Bdd(e) => e.is_resource(),
            LineError::PatternCap(_) => true,
            LineError::ForeignSupport(_) => false,
        }
    }
}

/// Occurrence counts per output pattern and the line numbers derived from
/// them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReport {
    pub n: usize,
    pub m: usize,
    pub per_pattern: BTreeMap<OutputSet, BigUint>,
    pub mu: BigUint,
    pub ell: u64,
    pub total_lines: u64,
    pub exact: bool,
    pub method: Method,
}

/// `⌈log₂ x⌉`, with 0 for `x ≤ 1`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    if *x <= BigUint::one() {
        0
    } else {
        (x - 1u32).bits()
    }
}

impl LineReport {
    pub fn from_counts(
        n: usize,
        m: usize,
        per_pattern: BTreeMap<OutputSet, BigUint>,
        exact: bool,
        method: Method,
    ) -> Self {
        let mu = per_pattern.values().max().cloned().unwrap_or_default();
        let ell = ceil_log2(&mu);
        LineReport {
            n,
            m,
            per_pattern,
            mu,
            ell,
            total_lines: m as u64 + ell,
            exact,
            method,
        }
    }

    pub fn count(&self, o: &OutputSet) -> BigUint {
        self.per_pattern.get(o).cloned().unwrap_or_default()
    }

    /// Sum of all pattern counts (equals `2^n` for exact reports).
    pub fn total_count(&self) -> BigUint {
        self.per_pattern.values().sum()
    }

    /// Pattern counts keyed by output bit string, e.g. `"101" → 9`.
    pub fn by_bits(&self) -> BTreeMap<String, BigUint> {
        self.per_pattern
            .iter()
            .map(|(o, c)| (o.to_bits(self.m), c.clone()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Pattern {
            outputs: Vec<usize>,
            pattern: String,
            count: String,
        }
        #[derive(Serialize)]
        struct Report<'a> {
            method: Method,
            exact: bool,
            n: usize,
            m: usize,
            mu: String,
            ell: u64,
            total_lines: u64,
            patterns: Vec<Pattern>,
            #[serde(skip_serializing_if = "Option::is_none")]
            note: Option<&'a str>,
        }
        let patterns = self
            .per_pattern
            .iter()
            .map(|(o, c)| Pattern {
                outputs: o.iter().map(|i| i + 1).collect(),
                pattern: o.to_bits(self.m),
                count: c.to_string(),
            })
            .collect();
        serde_json::to_value(Report {
            method: self.method,
            exact: self.exact,
            n: self.n,
            m: self.m,
            mu: self.mu.to_string(),
            ell: self.ell,
            total_lines: self.total_lines,
            patterns,
            note: None,
        })
        .expect("report serializes")
    }
}

/// Lines of the embedding that copies every input: `n + m`.
pub fn upper_bound_total(n: usize, m: usize) -> usize {
    n + m
}

/// Cube-size sums per output set, with the all-zero pattern set to the exact
/// OFF-set size. Exact when the PLA is certified disjoint.
pub fn heuristic_mu(pla: &Pla) -> Result<LineReport, LineError> {
    let (n, m) = (pla.inputs(), pla.outputs());
    let mut mu: BTreeMap<OutputSet, BigUint> = BTreeMap::new();
    for e in pla.entries() {
        *mu.entry(e.outputs.clone()).or_default() += e.cube.on_count();
    }
    let mut mgr = Manager::new();
    let xs: Vec<VarId> = (0..n).map(|j| mgr.new_var(format!("x{}", j + 1))).collect();
    let fs = pla.to_functions(&mut mgr, &xs)?;
    let off = off_set(&mut mgr, &fs)?;
    let off_count = mgr.sat_count(off, n)?;
    if off_count.is_zero() {
        mu.remove(&OutputSet::new());
    } else {
        mu.insert(OutputSet::new(), off_count);
    }
    Ok(LineReport::from_counts(
        n,
        m,
        mu,
        pla.dsop_certified(),
        Method::HeuristicCube,
    ))
}

/// Exact counts via the disjoint form of `pla`.
pub fn exact_mu_cube(pla: &Pla) -> Result<LineReport, LineError> {
    let disjoint = if pla.dsop_certified() {
        pla.clone()
    } else {
        dsop(pla)
    };
    let mut r = heuristic_mu(&disjoint)?;
    r.exact = true;
    r.method = Method::ExactCube;
    Ok(r)
}

/// Exact counts from the characteristic function of `pla`.
pub fn exact_mu_bdd_pla(pla: &Pla) -> Result<LineReport, LineError> {
    let (n, m) = (pla.inputs(), pla.outputs());
    let mut mgr = Manager::new();
    let ys: Vec<VarId> = (0..m).map(|i| mgr.new_var(format!("y{}", i + 1))).collect();
    let xs: Vec<VarId> = (0..n).map(|j| mgr.new_var(format!("x{}", j + 1))).collect();
    let fs = pla.to_functions(&mut mgr, &xs)?;
    let chi = characteristic(&mut mgr, &fs, &ys)?;
    pattern_counts(&mgr, chi, n, m, DEFAULT_PATTERN_CAP)
}

/// Exact counts for functions `fs` over the inputs `xs` (in that order) of
/// `src`. The functions are copied into a private manager that places all
/// output variables above all inputs.
pub fn exact_mu_bdd(src: &Manager, fs: &[Func], xs: &[VarId]) -> Result<LineReport, LineError> {
    exact_mu_bdd_capped(src, fs, xs, DEFAULT_PATTERN_CAP)
}

pub fn exact_mu_bdd_capped(
    src: &Manager,
    fs: &[Func],
    xs: &[VarId],
    cap: usize,
) -> Result<LineReport, LineError> {
    let (n, m) = (xs.len(), fs.len());
    let position: HashMap<VarId, usize> = xs.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    for &f in fs {
        if let Some(v) = src.support(f)?.into_iter().find(|v| !position.contains_key(v)) {
            return Err(LineError::ForeignSupport(v));
        }
    }
    let mut mgr = Manager::new();
    let ys: Vec<VarId> = (0..m).map(|i| mgr.new_var(format!("y{}", i + 1))).collect();
    let nx: Vec<VarId> = (0..n).map(|j| mgr.new_var(format!("x{}", j + 1))).collect();
    let copied = fs
        .iter()
        .map(|&f| mgr.transfer(src, f, |v| nx[position[&v]]))
        .collect::<bdd::Result<Vec<_>>>()?;
    let chi = characteristic(&mut mgr, &copied, &ys)?;
    pattern_counts(&mgr, chi, n, m, cap)
}

/// Walks the `m` output levels at the top of `chi` depth-first and counts
/// the input assignments below each complete output pattern.
fn pattern_counts(
    mgr: &Manager,
    chi: Func,
    n: usize,
    m: usize,
    cap: usize,
) -> Result<LineReport, LineError> {
    let (lo, hi) = (m as u32, (m + n) as u32);
    let mut per_pattern = BTreeMap::new();
    let mut stack = vec![(chi, 0usize, OutputSet::new())];
    while let Some((f, i, pattern)) = stack.pop() {
        if f == mgr.zero() {
            continue;
        }
        if i == m {
            if per_pattern.len() == cap {
                return Err(LineError::PatternCap(cap));
            }
            let count = mgr.sat_count_levels(f, lo, hi)?;
            per_pattern.insert(pattern, count);
            continue;
        }
        let y = mgr.var_at_level(i as u32).expect("output level exists");
        let (f0, f1) = mgr.split(f, y)?;
        let mut with = pattern.clone();
        with.insert(i);
        stack.push((f1, i + 1, with));
        stack.push((f0, i + 1, pattern));
    }
    Ok(LineReport::from_counts(n, m, per_pattern, true, Method::ExactBdd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pla::parse_pla;

    fn fixture(name: &str) -> Pla {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_pla(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn counts(r: &LineReport) -> Vec<(String, u64)> {
        r.by_bits()
            .into_iter()
            .map(|(k, v)| (k, v.try_into().unwrap()))
            .collect()
    }

    fn pairs(v: &[(&str, u64)]) -> Vec<(String, u64)> {
        let mut v: Vec<(String, u64)> = v.iter().map(|(k, c)| (k.to_string(), *c)).collect();
        v.sort();
        v
    }

    #[test]
    fn ceil_log2_values() {
        let l = |x: u32| ceil_log2(&BigUint::from(x));
        assert_eq!([l(0), l(1), l(2), l(3), l(4), l(5), l(9), l(12), l(16), l(20)], [0, 0, 1, 2, 2, 3, 4, 4, 4, 5]);
    }

    #[test]
    fn heuristic_running_example() {
        let r = heuristic_mu(&fixture("running_example.pla")).unwrap();
        assert_eq!(
            counts(&r),
            pairs(&[("000", 4), ("100", 8), ("010", 8), ("001", 12), ("101", 6)])
        );
        assert_eq!(r.mu, 12u32.into());
        assert_eq!(r.total_lines, 7);
        assert!(!r.exact);
    }

    #[test]
    fn heuristic_underapprox() {
        let r = heuristic_mu(&fixture("underapprox.pla")).unwrap();
        assert_eq!(
            counts(&r),
            pairs(&[("000", 8), ("001", 7), ("010", 16), ("011", 16)])
        );
        assert_eq!(r.total_count(), 47u32.into());
        assert_eq!((r.mu.clone(), r.total_lines), (16u32.into(), 7));

        let r = heuristic_mu(&fixture("underapprox_dsop.pla")).unwrap();
        assert_eq!(counts(&r), pairs(&[("000", 8), ("010", 4), ("011", 20)]));
        assert!(r.exact);
        assert_eq!(r.mu, 20u32.into());
    }

    #[test]
    fn exact_routes_agree_on_fixtures() {
        let expected = pairs(&[("101", 9), ("010", 8), ("001", 6), ("100", 5), ("000", 4)]);
        let p = fixture("running_example.pla");
        for r in [exact_mu_cube(&p).unwrap(), exact_mu_bdd_pla(&p).unwrap()] {
            assert_eq!(counts(&r), expected, "{}", r.method);
            assert_eq!((r.ell, r.total_lines), (4, 7));
            assert!(r.exact);
        }
        let p = fixture("underapprox.pla");
        for r in [exact_mu_cube(&p).unwrap(), exact_mu_bdd_pla(&p).unwrap()] {
            assert_eq!(r.mu, 20u32.into());
            assert_eq!(r.total_lines, 8);
        }
    }

    #[test]
    fn single_full_cube_is_dominated_by_off_set() {
        let p = parse_pla(".i 4\n.o 1\n1111 1\n").unwrap();
        let r = exact_mu_cube(&p).unwrap();
        assert_eq!(r.mu, 15u32.into());
        assert_eq!(r.ell, 4);
    }

    #[test]
    fn identity_needs_no_garbage() {
        let r = exact_mu_bdd_pla(&fixture("identity2.pla")).unwrap();
        assert!(r.per_pattern.values().all(|c| *c == BigUint::one()));
        assert_eq!((r.mu.clone(), r.ell), (BigUint::one(), 0));
    }

    #[test]
    fn bdd_route_accepts_foreign_order() {
        // inputs registered in reverse order and interleaved with a spare var
        let mut src = Manager::new();
        let x3 = src.new_var("x3");
        let _spare = src.new_var("s");
        let x2 = src.new_var("x2");
        let x1 = src.new_var("x1");
        let a = src.var(x1).unwrap();
        let b = src.var(x2).unwrap();
        let c = src.var(x3).unwrap();
        let f = src.and(a, b).unwrap();
        let g = src.or(b, c).unwrap();
        let r = exact_mu_bdd(&src, &[f, g], &[x1, x2, x3]).unwrap();
        // brute: (f,g) over 8 inputs → 00:3? enumerate: g=0 iff b=0,c=0 (2 inputs, f=0)
        assert_eq!(r.total_count(), 8u32.into());
        assert_eq!(r.count(&OutputSet::new()), 2u32.into());
        assert_eq!(r.count(&OutputSet::from_indices([0, 1])), 2u32.into());
        assert_eq!(r.count(&OutputSet::from_indices([1])), 4u32.into());
        let err = exact_mu_bdd(&src, &[f, g], &[x1, x2]).unwrap_err();
        assert_eq!(err, LineError::ForeignSupport(x3));
    }

    #[test]
    fn pattern_cap_is_enforced() {
        let p = fixture("identity2.pla");
        let mut mgr = Manager::new();
        let xs: Vec<VarId> = (0..2).map(|j| mgr.new_var(format!("x{j}"))).collect();
        let fs = p.to_functions(&mut mgr, &xs).unwrap();
        let err = exact_mu_bdd_capped(&mgr, &fs, &xs, 3).unwrap_err();
        assert_eq!(err, LineError::PatternCap(3));
        assert!(err.is_resource());
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(upper_bound_total(9, 1), 10);
        assert_eq!(upper_bound_total(7, 4), 11);
        assert_eq!(upper_bound_total(1, 1), 2);
    }

    #[test]
    fn json_shape() {
        let r = exact_mu_cube(&fixture("underapprox.pla")).unwrap();
        let v = r.to_json();
        assert_eq!(v["method"], "exact-cube");
        assert_eq!(v["mu"], "20");
        assert_eq!(v["total_lines"], 8);
        let pats = v["patterns"].as_array().unwrap();
        assert!(pats.iter().any(|p| p["outputs"] == serde_json::json!([2, 3]) && p["count"] == "20"));
    }
}
