//! Disjoint sum-of-products conversion and BDD-based post compaction.
//!
//! [`dsop`] moves entries one at a time from a pending queue into a result
//! list of pairwise disjoint cubes. When the moved cube `c` overlaps a result
//! cube `c'`, the overlap is split three ways: the intersection takes the
//! union of both output sets and replaces `c'` in place, the pieces of
//! `c' ∖ c` are appended to the result, and the pieces of `c ∖ c'` go back to
//! the front of the queue.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;

use crate::bdd::{self, Manager, VarId};
use crate::cube::{Cube, OutputSet};
use crate::pla::{Pla, PlaEntry};

/// Intersection of two cubes, `None` if it is empty.
pub fn cube_and(a: &Cube, b: &Cube) -> Option<Cube> {
    a.intersect(b)
}

/// Pairwise disjoint cubes covering `a ∖ b`.
pub fn cube_sharp(a: &Cube, b: &Cube) -> Vec<Cube> {
    a.sharp(b)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DsopError {
    #[error("post compaction needs a disjoint PLA")]
    NotDisjoint,
    #[error(transparent)]
    Bdd(#[from] bdd::BddError),
}

/// What one step of [`DsopRun::step`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// The entry did not overlap anything and was moved.
    Moved,
    /// The entry overlapped the result entry at this index and was merged.
    Merged { with: usize },
}

/// Incremental driver for the disjoint sum-of-products conversion.
#[derive(Debug, Clone)]
pub struct DsopRun {
    n: usize,
    m: usize,
    pending: VecDeque<PlaEntry>,
    done: Vec<PlaEntry>,
}

impl DsopRun {
    pub fn new(pla: &Pla) -> Self {
        DsopRun {
            n: pla.inputs(),
            m: pla.outputs(),
            pending: pla.entries().iter().cloned().collect(),
            done: Vec::new(),
        }
    }

    pub fn pending(&self) -> impl Iterator<Item = &PlaEntry> {
        self.pending.iter()
    }

    pub fn done(&self) -> &[PlaEntry] {
        &self.done
    }

    /// Total ON-set size of the pending cubes, counted with multiplicity.
    pub fn pending_measure(&self) -> BigUint {
        self.pending.iter().map(|e| e.cube.on_count()).sum()
    }

    /// Processes the front pending entry; `None` once the queue is empty.
    pub fn step(&mut self) -> Option<Step> {
        let e = self.pending.pop_front()?;
        let Some(k) = self.done.iter().position(|d| d.cube.overlaps(&e.cube)) else {
            self.done.push(e);
            return Some(Step::Moved);
        };
        let other = self.done[k].clone();
        let meet = e
            .cube
            .intersect(&other.cube)
            .expect("overlapping cubes have a nonempty intersection");
        self.done[k] = PlaEntry::new(meet, e.outputs.union(&other.outputs));
        for piece in other.cube.sharp(&e.cube) {
            self.done.push(PlaEntry::new(piece, other.outputs.clone()));
        }
        for piece in e.cube.sharp(&other.cube).into_iter().rev() {
            self.pending.push_front(PlaEntry::new(piece, e.outputs.clone()));
        }
        Some(Step::Merged { with: k })
    }

    pub fn finish(mut self) -> Pla {
        while self.step().is_some() {}
        let mut pla = Pla::from_entries(self.n, self.m, self.done)
            .expect("pieces keep the widths of their parents");
        pla.assume_disjoint();
        pla
    }
}

/// Converts `pla` into an equivalent PLA whose cubes are pairwise disjoint.
pub fn dsop(pla: &Pla) -> Pla {
    let mut out = DsopRun::new(pla).finish();
    out.input_names = pla.input_names.clone();
    out.output_names = pla.output_names.clone();
    out
}

/// Regroups a disjoint PLA by output pattern and re-extracts each group's
/// cubes from its BDD, one cube per path.
///
/// Groups appear in [`OutputSet`] order; within a group cubes follow path
/// enumeration order (low edges first).
pub fn post_compact(pla: &Pla) -> Result<Pla, DsopError> {
    if !pla.dsop_certified() {
        return Err(DsopError::NotDisjoint);
    }
    let n = pla.inputs();
    let mut mgr = Manager::new();
    let xs: Vec<VarId> = (0..n).map(|j| mgr.new_var(format!("x{}", j + 1))).collect();
    let mut groups: BTreeMap<OutputSet, bdd::Func> = BTreeMap::new();
    for e in pla.entries() {
        let c = mgr.cube(&e.cube, &xs)?;
        let acc = groups.entry(e.outputs.clone()).or_insert(mgr.zero());
        *acc = mgr.or(*acc, c)?;
    }
    let mut entries = Vec::new();
    for (outputs, f) in groups {
        for cube in mgr.paths(f, n)? {
            entries.push(PlaEntry::new(cube, outputs.clone()));
        }
    }
    let mut out = Pla::from_entries(n, pla.outputs(), entries).expect("widths preserved");
    out.input_names = pla.input_names.clone();
    out.output_names = pla.output_names.clone();
    out.assume_disjoint();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pla::parse_pla;
    use proptest::prelude::*;

    fn c(s: &str) -> Cube {
        s.parse().unwrap()
    }

    fn rows(p: &Pla) -> Vec<String> {
        p.entries()
            .iter()
            .map(|e| format!("{} {}", e.cube, e.outputs.to_bits(p.outputs())))
            .collect()
    }

    fn sorted(mut v: Vec<String>) -> Vec<String> {
        v.sort();
        v
    }

    fn fixture(name: &str) -> Pla {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_pla(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn cube_ops() {
        assert_eq!(cube_and(&c("11--1"), &c("1--0-")), Some(c("11-01")));
        assert_eq!(cube_sharp(&c("1--0-"), &c("11--1")), vec![c("10-0-"), c("11-00")]);
        assert_eq!(cube_sharp(&c("11--1"), &c("1--0-")), vec![c("11-11")]);
    }

    #[test]
    fn running_example_trace() {
        let p = fixture("running_example.pla");
        let mut run = DsopRun::new(&p);
        assert_eq!(run.step(), Some(Step::Moved));
        assert_eq!(run.step(), Some(Step::Moved));
        assert_eq!(rows(&Pla::from_entries(5, 3, run.done().to_vec()).unwrap()), ["1--0- 100", "00--- 010"]);
        assert_eq!(run.step(), Some(Step::Merged { with: 0 }));
        let done: Vec<String> = run
            .done()
            .iter()
            .map(|e| format!("{} {}", e.cube, e.outputs.to_bits(3)))
            .collect();
        assert_eq!(done, ["11-01 101", "00--- 010", "10-0- 100", "11-00 100"]);
        let pending: Vec<String> = run
            .pending()
            .map(|e| format!("{} {}", e.cube, e.outputs.to_bits(3)))
            .collect();
        assert_eq!(pending, ["11-11 001", "-10-- 001", "10-1- 101", "11-10 101"]);

        let out = run.finish();
        assert!(out.dsop_certified());
        assert_eq!(sorted(rows(&out)), rows(&fixture("running_example_dsop.pla")));
    }

    #[test]
    fn running_example_compaction() {
        let d = dsop(&fixture("running_example.pla"));
        let compact = post_compact(&d).unwrap();
        assert_eq!(compact.len(), 10);
        assert_eq!(sorted(rows(&compact)), rows(&fixture("running_example_compact.pla")));
    }

    #[test]
    fn underapprox_compacts_to_three_cubes() {
        let d = dsop(&fixture("underapprox.pla"));
        let compact = post_compact(&d).unwrap();
        assert_eq!(sorted(rows(&compact)), sorted(rows(&fixture("underapprox_dsop.pla"))));
    }

    #[test]
    fn disjoint_input_is_unchanged() {
        let p = fixture("underapprox_dsop.pla");
        let d = dsop(&p);
        assert_eq!(d.entries(), p.entries());
        assert!(d.dsop_certified());
    }

    #[test]
    fn duplicate_rows_collapse() {
        let p = parse_pla(".i 2\n.o 1\n1- 1\n1- 1\n").unwrap();
        assert_eq!(rows(&dsop(&p)), ["1- 1"]);
    }

    #[test]
    fn compaction_requires_certificate() {
        let p = fixture("running_example.pla");
        assert_eq!(post_compact(&p).unwrap_err(), DsopError::NotDisjoint);
        let single = dsop(&parse_pla(".i 3\n.o 1\n1-0 1\n").unwrap());
        assert_eq!(rows(&post_compact(&single).unwrap()), ["1-0 1"]);
    }

    fn arb_pla() -> impl Strategy<Value = Pla> {
        (1usize..7, 1usize..4).prop_flat_map(|(n, m)| {
            let row = (proptest::collection::vec(0u8..3, n), 0u64..1 << m);
            proptest::collection::vec(row, 0..9).prop_map(move |rows| {
                let mut text = format!(".i {n}\n.o {m}\n");
                for (cube, mask) in rows {
                    let s: String = cube.iter().map(|&k| ['0', '1', '-'][k as usize]).collect();
                    text += &format!("{s} {}\n", OutputSet::from_mask(mask).to_bits(m));
                }
                parse_pla(&text).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dsop_is_disjoint_and_equivalent(p in arb_pla()) {
            let d = dsop(&p);
            prop_assert!(d.find_overlap().is_none());
            let compact = post_compact(&d).unwrap();
            prop_assert!(compact.find_overlap().is_none());
            for x in 0..1u64 << p.inputs() {
                prop_assert_eq!(d.output_at(x), p.output_at(x));
                prop_assert_eq!(compact.output_at(x), p.output_at(x));
            }
        }

        #[test]
        fn pending_measure_decreases(p in arb_pla()) {
            let mut run = DsopRun::new(&p);
            let mut before = run.pending_measure();
            while run.step().is_some() {
                let after = run.pending_measure();
                prop_assert!(after < before);
                before = after;
            }
        }
    }
}
