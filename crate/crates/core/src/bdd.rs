//! Reduced ordered binary decision diagrams.
//!
//! A [`Manager`] owns a canonicalizing node store, the operation caches and
//! the variable table. Functions are [`Func`] handles into one manager; two
//! handles from the same manager are equal iff they denote the same Boolean
//! function. There are no complemented edges and the variable order is fixed
//! when variables are created: variable `k` created on a manager sits at
//! level `k`, nearer the root than every later variable.
//!
//! All operations that may allocate nodes return `Result`, so a node limit or
//! a deadline (see [`Limits`]) surfaces as a recoverable [`BddError`].

use std::cell::Cell;
use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cube::{Cube, Polarity};

/// Identifies a variable of a manager. Its level equals its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Handle to a function stored in a [`Manager`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Func {
    mgr: u32,
    node: u32,
}

/// Binary Boolean connectives supported by [`Manager::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Xnor,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BddError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(VarId),
    #[error("function belongs to a different manager")]
    ForeignFunction,
    #[error("function depends on level {level} outside the counted range {lo}..{hi}")]
    SupportOutOfRange { level: u32, lo: u32, hi: u32 },
    #[error("assignment has no value for variable {0:?}")]
    MissingAssignment(VarId),
    #[error("node limit of {0} nodes exceeded")]
    NodeLimit(usize),
    #[error("deadline exceeded")]
    Timeout,
}

impl BddError {
    /// Whether the error is a resource exhaustion rather than a usage error.
    pub fn is_resource(&self) -> bool {
        matches!(self, BddError::NodeLimit(_) | BddError::Timeout)
    }
}

pub type Result<T> = std::result::Result<T, BddError>;

/// Resource bounds applied to a manager.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: Option<usize>,
    pub deadline: Option<Instant>,
}

thread_local! {
    static DEFAULT_LIMITS: Cell<Limits> = const { Cell::new(Limits { max_nodes: None, deadline: None }) };
}

impl Limits {
    /// Makes these limits the default for managers created later on the
    /// current thread via [`Manager::new`].
    pub fn install(self) {
        DEFAULT_LIMITS.with(|l| l.set(self));
    }

    pub fn current() -> Limits {
        DEFAULT_LIMITS.with(|l| l.get())
    }
}

const FALSE: u32 = 0;
const TRUE: u32 = 1;
const TERMINAL_LEVEL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    level: u32,
    low: u32,
    high: u32,
}

static NEXT_MANAGER_ID: AtomicU32 = AtomicU32::new(1);

pub struct Manager {
    id: u32,
    nodes: Vec<Node>,
    unique: HashMap<Node, u32>,
    apply_cache: HashMap<(BinOp, u32, u32), u32>,
    not_cache: HashMap<u32, u32>,
    ite_cache: HashMap<(u32, u32, u32), u32>,
    names: Vec<String>,
    limits: Limits,
    allocs: u64,
}

impl fmt::Debug for Manager {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Manager")
            .field("id", &self.id)
            .field("vars", &self.names.len())
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

impl Default for Manager {
    fn default() -> Self {
        Manager::new()
    }
}

impl Manager {
    /// An empty manager using the thread's default [`Limits`].
    pub fn new() -> Self {
        Manager::with_limits(Limits::current())
    }

    pub fn with_limits(limits: Limits) -> Self {
        let terminal = |v| Node {
            level: TERMINAL_LEVEL,
            low: v,
            high: v,
        };
        Manager {
            id: NEXT_MANAGER_ID.fetch_add(1, Ordering::Relaxed),
            nodes: vec![terminal(FALSE), terminal(TRUE)],
            unique: HashMap::new(),
            apply_cache: HashMap::new(),
            not_cache: HashMap::new(),
            ite_cache: HashMap::new(),
            names: Vec::new(),
            limits,
            allocs: 0,
        }
    }

    /// A manager with one variable per name, in order.
    pub fn with_vars<S: Into<String>>(names: impl IntoIterator<Item = S>) -> (Self, Vec<VarId>) {
        let mut m = Manager::new();
        let vars = names.into_iter().map(|n| m.new_var(n)).collect();
        (m, vars)
    }

    /// Appends a variable below all existing ones.
    pub fn new_var(&mut self, name: impl Into<String>) -> VarId {
        self.names.push(name.into());
        VarId(self.names.len() as u32 - 1)
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, v: VarId) -> Result<&str> {
        self.names
            .get(v.index())
            .map(String::as_str)
            .ok_or(BddError::UnknownVariable(v))
    }

    pub fn level(&self, v: VarId) -> Result<u32> {
        self.check_var(v).map(|_| v.0)
    }

    pub fn var_at_level(&self, level: u32) -> Option<VarId> {
        ((level as usize) < self.names.len()).then_some(VarId(level))
    }

    /// Total number of stored nodes, terminals included.
    pub fn store_size(&self) -> usize {
        self.nodes.len()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn check_var(&self, v: VarId) -> Result<()> {
        if v.index() < self.names.len() {
            Ok(())
        } else {
            Err(BddError::UnknownVariable(v))
        }
    }

    fn wrap(&self, node: u32) -> Func {
        Func { mgr: self.id, node }
    }

    fn raw(&self, f: Func) -> Result<u32> {
        if f.mgr == self.id {
            Ok(f.node)
        } else {
            Err(BddError::ForeignFunction)
        }
    }

    fn level_of(&self, node: u32) -> u32 {
        self.nodes[node as usize].level
    }

    fn mk(&mut self, level: u32, low: u32, high: u32) -> Result<u32> {
        if low == high {
            return Ok(low);
        }
        let key = Node { level, low, high };
        if let Some(&id) = self.unique.get(&key) {
            return Ok(id);
        }
        self.allocs += 1;
        if let Some(max) = self.limits.max_nodes {
            if self.nodes.len() >= max {
                return Err(BddError::NodeLimit(max));
            }
        }
        if self.allocs.is_multiple_of(1024) {
            if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    return Err(BddError::Timeout);
                }
            }
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(key);
        self.unique.insert(key, id);
        Ok(id)
    }

    /// Cofactors of `node` with respect to `level` (the node itself when it
    /// does not test that level).
    fn branches(&self, node: u32, level: u32) -> (u32, u32) {
        let n = self.nodes[node as usize];
        if n.level == level {
            (n.low, n.high)
        } else {
            (node, node)
        }
    }

    pub fn constant(&self, value: bool) -> Func {
        self.wrap(if value { TRUE } else { FALSE })
    }

    pub fn zero(&self) -> Func {
        self.constant(false)
    }

    pub fn one(&self) -> Func {
        self.constant(true)
    }

    /// `Some(b)` if `f` is the constant `b`.
    pub fn as_constant(&self, f: Func) -> Option<bool> {
        match f.node {
            FALSE => Some(false),
            TRUE => Some(true),
            _ => None,
        }
    }

    /// The projection function of variable `v`.
    pub fn var(&mut self, v: VarId) -> Result<Func> {
        self.literal(v, true)
    }

    /// `v` if `positive`, otherwise its negation.
    pub fn literal(&mut self, v: VarId, positive: bool) -> Result<Func> {
        self.check_var(v)?;
        let (lo, hi) = if positive { (FALSE, TRUE) } else { (TRUE, FALSE) };
        let n = self.mk(v.0, lo, hi)?;
        Ok(self.wrap(n))
    }

    pub fn apply(&mut self, op: BinOp, f: Func, g: Func) -> Result<Func> {
        let (a, b) = (self.raw(f)?, self.raw(g)?);
        let r = self.apply_rec(op, a, b)?;
        Ok(self.wrap(r))
    }

    pub fn and(&mut self, f: Func, g: Func) -> Result<Func> {
        self.apply(BinOp::And, f, g)
    }

    pub fn or(&mut self, f: Func, g: Func) -> Result<Func> {
        self.apply(BinOp::Or, f, g)
    }

    pub fn xor(&mut self, f: Func, g: Func) -> Result<Func> {
        self.apply(BinOp::Xor, f, g)
    }

    pub fn xnor(&mut self, f: Func, g: Func) -> Result<Func> {
        self.apply(BinOp::Xnor, f, g)
    }

    /// `f → g`
    pub fn implies(&mut self, f: Func, g: Func) -> Result<Func> {
        let nf = self.not(f)?;
        self.or(nf, g)
    }

    pub fn and_all(&mut self, fs: impl IntoIterator<Item = Func>) -> Result<Func> {
        let mut acc = self.one();
        for f in fs {
            acc = self.and(acc, f)?;
        }
        Ok(acc)
    }

    pub fn or_all(&mut self, fs: impl IntoIterator<Item = Func>) -> Result<Func> {
        let mut acc = self.zero();
        for f in fs {
            acc = self.or(acc, f)?;
        }
        Ok(acc)
    }

    fn apply_rec(&mut self, op: BinOp, f: u32, g: u32) -> Result<u32> {
        match op {
            BinOp::And => {
                if f == FALSE || g == FALSE {
                    return Ok(FALSE);
                }
                if f == TRUE || f == g {
                    return Ok(g);
                }
                if g == TRUE {
                    return Ok(f);
                }
            }
            BinOp::Or => {
                if f == TRUE || g == TRUE {
                    return Ok(TRUE);
                }
                if f == FALSE || f == g {
                    return Ok(g);
                }
                if g == FALSE {
                    return Ok(f);
                }
            }
            BinOp::Xor => {
                if f == g {
                    return Ok(FALSE);
                }
                if f == FALSE {
                    return Ok(g);
                }
                if g == FALSE {
                    return Ok(f);
                }
                if f == TRUE {
                    return self.not_rec(g);
                }
                if g == TRUE {
                    return self.not_rec(f);
                }
            }
            BinOp::Xnor => {
                if f == g {
                    return Ok(TRUE);
                }
                if f == TRUE {
                    return Ok(g);
                }
                if g == TRUE {
                    return Ok(f);
                }
                if f == FALSE {
                    return self.not_rec(g);
                }
                if g == FALSE {
                    return self.not_rec(f);
                }
            }
        }
        // all four connectives are commutative
        let (f, g) = if f <= g { (f, g) } else { (g, f) };
        if let Some(&r) = self.apply_cache.get(&(op, f, g)) {
            return Ok(r);
        }
        let level = self.level_of(f).min(self.level_of(g));
        let (f0, f1) = self.branches(f, level);
        let (g0, g1) = self.branches(g, level);
        let low = self.apply_rec(op, f0, g0)?;
        let high = self.apply_rec(op, f1, g1)?;
        let r = self.mk(level, low, high)?;
        self.apply_cache.insert((op, f, g), r);
        Ok(r)
    }

    pub fn not(&mut self, f: Func) -> Result<Func> {
        let a = self.raw(f)?;
        let r = self.not_rec(a)?;
        Ok(self.wrap(r))
    }

    fn not_rec(&mut self, f: u32) -> Result<u32> {
        match f {
            FALSE => return Ok(TRUE),
            TRUE => return Ok(FALSE),
            _ => {}
        }
        if let Some(&r) = self.not_cache.get(&f) {
            return Ok(r);
        }
        let n = self.nodes[f as usize];
        let low = self.not_rec(n.low)?;
        let high = self.not_rec(n.high)?;
        let r = self.mk(n.level, low, high)?;
        self.not_cache.insert(f, r);
        self.not_cache.insert(r, f);
        Ok(r)
    }

    /// If-then-else: `(f ∧ g) ∨ (¬f ∧ h)`.
    pub fn ite(&mut self, f: Func, g: Func, h: Func) -> Result<Func> {
        let (a, b, c) = (self.raw(f)?, self.raw(g)?, self.raw(h)?);
        let r = self.ite_rec(a, b, c)?;
        Ok(self.wrap(r))
    }

    fn ite_rec(&mut self, f: u32, g: u32, h: u32) -> Result<u32> {
        if f == TRUE || g == h {
            return Ok(g);
        }
        if f == FALSE {
            return Ok(h);
        }
        if g == TRUE && h == FALSE {
            return Ok(f);
        }
        if g == FALSE && h == TRUE {
            return self.not_rec(f);
        }
        if let Some(&r) = self.ite_cache.get(&(f, g, h)) {
            return Ok(r);
        }
        let level = self.level_of(f).min(self.level_of(g)).min(self.level_of(h));
        let (f0, f1) = self.branches(f, level);
        let (g0, g1) = self.branches(g, level);
        let (h0, h1) = self.branches(h, level);
        let low = self.ite_rec(f0, g0, h0)?;
        let high = self.ite_rec(f1, g1, h1)?;
        let r = self.mk(level, low, high)?;
        self.ite_cache.insert((f, g, h), r);
        Ok(r)
    }

    /// Variable tested at the root of `f`, `None` for constants.
    pub fn top_var(&self, f: Func) -> Result<Option<VarId>> {
        let x = self.raw(f)?;
        Ok((x > TRUE).then(|| VarId(self.level_of(x))))
    }

    /// `(f|v=0, f|v=1)` for a variable `v` at or above the root of `f`.
    ///
    /// Cheaper than two [`Manager::cofactor`] calls since no node is built;
    /// fails if `f` tests a variable above `v`.
    pub fn split(&self, f: Func, v: VarId) -> Result<(Func, Func)> {
        self.check_var(v)?;
        let x = self.raw(f)?;
        let level = self.level_of(x);
        if level < v.0 {
            return Err(BddError::SupportOutOfRange {
                level,
                lo: v.0,
                hi: TERMINAL_LEVEL,
            });
        }
        let (lo, hi) = self.branches(x, v.0);
        Ok((self.wrap(lo), self.wrap(hi)))
    }

    /// `f` with `v` fixed to `value`.
    pub fn cofactor(&mut self, f: Func, v: VarId, value: bool) -> Result<Func> {
        self.restrict(f, &[(v, value)])
    }

    /// `f` with every listed variable fixed to its value.
    pub fn restrict(&mut self, f: Func, assignment: &[(VarId, bool)]) -> Result<Func> {
        let root = self.raw(f)?;
        let mut fixed = vec![None; self.names.len()];
        for &(v, b) in assignment {
            self.check_var(v)?;
            fixed[v.index()] = Some(b);
        }
        let mut memo = HashMap::new();
        let r = self.restrict_rec(root, &fixed, &mut memo)?;
        Ok(self.wrap(r))
    }

    fn restrict_rec(
        &mut self,
        f: u32,
        fixed: &[Option<bool>],
        memo: &mut HashMap<u32, u32>,
    ) -> Result<u32> {
        if f <= TRUE {
            return Ok(f);
        }
        if let Some(&r) = memo.get(&f) {
            return Ok(r);
        }
        let n = self.nodes[f as usize];
        let r = match fixed[n.level as usize] {
            Some(false) => self.restrict_rec(n.low, fixed, memo)?,
            Some(true) => self.restrict_rec(n.high, fixed, memo)?,
            None => {
                let low = self.restrict_rec(n.low, fixed, memo)?;
                let high = self.restrict_rec(n.high, fixed, memo)?;
                self.mk(n.level, low, high)?
            }
        };
        memo.insert(f, r);
        Ok(r)
    }

    /// Existential quantification of `vars` out of `f`.
    pub fn exists(&mut self, f: Func, vars: &[VarId]) -> Result<Func> {
        let root = self.raw(f)?;
        let mut quantified = vec![false; self.names.len()];
        for &v in vars {
            self.check_var(v)?;
            quantified[v.index()] = true;
        }
        let mut memo = HashMap::new();
        let r = self.exists_rec(root, &quantified, &mut memo)?;
        Ok(self.wrap(r))
    }

    fn exists_rec(
        &mut self,
        f: u32,
        quantified: &[bool],
        memo: &mut HashMap<u32, u32>,
    ) -> Result<u32> {
        if f <= TRUE {
            return Ok(f);
        }
        if let Some(&r) = memo.get(&f) {
            return Ok(r);
        }
        let n = self.nodes[f as usize];
        let low = self.exists_rec(n.low, quantified, memo)?;
        let high = self.exists_rec(n.high, quantified, memo)?;
        let r = if quantified[n.level as usize] {
            self.apply_rec(BinOp::Or, low, high)?
        } else {
            self.mk(n.level, low, high)?
        };
        memo.insert(f, r);
        Ok(r)
    }

    /// Conjunction of the literals of `cube`, position `j` mapped to `vars[j]`.
    pub fn cube(&mut self, cube: &Cube, vars: &[VarId]) -> Result<Func> {
        assert_eq!(cube.len(), vars.len(), "cube width does not match variable list");
        let mut lits: Vec<(VarId, bool)> = cube
            .lits()
            .iter()
            .zip(vars)
            .filter_map(|(&p, &v)| match p {
                Polarity::Zero => Some((v, false)),
                Polarity::One => Some((v, true)),
                Polarity::DontCare => None,
            })
            .collect();
        // bottom-up construction needs no apply calls
        lits.sort_by_key(|&(v, _)| std::cmp::Reverse(v));
        let mut acc = TRUE;
        for (v, b) in lits {
            self.check_var(v)?;
            acc = if b {
                self.mk(v.0, FALSE, acc)?
            } else {
                self.mk(v.0, acc, FALSE)?
            };
        }
        Ok(self.wrap(acc))
    }

    /// Number of satisfying assignments over the first `support_size` levels.
    pub fn sat_count(&self, f: Func, support_size: usize) -> Result<BigUint> {
        self.sat_count_levels(f, 0, support_size as u32)
    }

    /// Number of satisfying assignments over the variables at levels
    /// `lo..hi`. Fails if `f` tests a level outside that range.
    pub fn sat_count_levels(&self, f: Func, lo: u32, hi: u32) -> Result<BigUint> {
        let root = self.raw(f)?;
        let mut memo: HashMap<u32, BigUint> = HashMap::new();
        let c = self.count_rec(root, lo, hi, &mut memo)?;
        let top = self.level_of(root).min(hi);
        Ok(c << (top - lo))
    }

    fn count_rec(
        &self,
        f: u32,
        lo: u32,
        hi: u32,
        memo: &mut HashMap<u32, BigUint>,
    ) -> Result<BigUint> {
        match f {
            FALSE => return Ok(BigUint::zero()),
            TRUE => return Ok(BigUint::one()),
            _ => {}
        }
        if let Some(c) = memo.get(&f) {
            return Ok(c.clone());
        }
        let n = self.nodes[f as usize];
        if n.level < lo || n.level >= hi {
            return Err(BddError::SupportOutOfRange {
                level: n.level,
                lo,
                hi,
            });
        }
        let gap = |child: u32| self.level_of(child).min(hi) - n.level - 1;
        let low = self.count_rec(n.low, lo, hi, memo)? << gap(n.low);
        let high = self.count_rec(n.high, lo, hi, memo)? << gap(n.high);
        let c = low + high;
        memo.insert(f, c.clone());
        Ok(c)
    }

    /// One cube per root-to-⊤ path; position `j` of each cube is level `j`.
    ///
    /// The cubes are pairwise disjoint and their union is the ON-set of `f`.
    /// Low edges are explored before high edges.
    pub fn paths(&self, f: Func, n: usize) -> Result<Paths<'_>> {
        let root = self.raw(f)?;
        for level in self.levels_in(root) {
            if level as usize >= n {
                return Err(BddError::SupportOutOfRange {
                    level,
                    lo: 0,
                    hi: n as u32,
                });
            }
        }
        let stack = if root == FALSE {
            Vec::new()
        } else {
            vec![(root, Cube::universe(n))]
        };
        Ok(Paths { mgr: self, stack })
    }

    fn reachable(&self, roots: &[u32]) -> Vec<u32> {
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<u32> = roots.iter().copied().filter(|&r| r > TRUE).collect();
        let mut order = Vec::new();
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            order.push(x);
            let n = self.nodes[x as usize];
            for c in [n.low, n.high] {
                if c > TRUE && !seen.contains(&c) {
                    stack.push(c);
                }
            }
        }
        order
    }

    fn levels_in(&self, root: u32) -> Vec<u32> {
        let mut levels: Vec<u32> = self
            .reachable(&[root])
            .into_iter()
            .map(|x| self.level_of(x))
            .collect();
        levels.sort_unstable();
        levels.dedup();
        levels
    }

    /// Variables `f` depends on, in level order.
    pub fn support(&self, f: Func) -> Result<Vec<VarId>> {
        let root = self.raw(f)?;
        Ok(self.levels_in(root).into_iter().map(VarId).collect())
    }

    /// Number of distinct non-terminal nodes reachable from `f`.
    pub fn node_count(&self, f: Func) -> Result<usize> {
        let root = self.raw(f)?;
        Ok(self.reachable(&[root]).len())
    }

    /// Number of distinct non-terminal nodes shared by all `fs`.
    pub fn shared_node_count(&self, fs: &[Func]) -> Result<usize> {
        let roots = fs.iter().map(|&f| self.raw(f)).collect::<Result<Vec<_>>>()?;
        Ok(self.reachable(&roots).len())
    }

    /// Evaluates `f`; `assignment[k]` is the value of variable `k`.
    pub fn eval(&self, f: Func, assignment: &[bool]) -> Result<bool> {
        let mut x = self.raw(f)?;
        while x > TRUE {
            let n = self.nodes[x as usize];
            let b = *assignment
                .get(n.level as usize)
                .ok_or(BddError::MissingAssignment(VarId(n.level)))?;
            x = if b { n.high } else { n.low };
        }
        Ok(x == TRUE)
    }

    /// Graphviz rendering: one vertex per node, dashed low edges, solid high
    /// edges.
    pub fn to_dot(&self, f: Func) -> Result<String> {
        let root = self.raw(f)?;
        let mut nodes = self.reachable(&[root]);
        nodes.sort_by_key(|&x| (self.level_of(x), x));
        let mut out = String::from("digraph bdd {\n");
        let _ = writeln!(out, "  node [shape=circle];");
        let _ = writeln!(out, "  t0 [shape=box,label=\"⊥\"];");
        let _ = writeln!(out, "  t1 [shape=box,label=\"⊤\"];");
        let name = |x: u32| match x {
            FALSE => "t0".to_string(),
            TRUE => "t1".to_string(),
            _ => format!("n{x}"),
        };
        for &x in &nodes {
            let n = self.nodes[x as usize];
            let _ = writeln!(out, "  n{x} [label=\"{}\"];", self.names[n.level as usize]);
        }
        for &x in &nodes {
            let n = self.nodes[x as usize];
            let _ = writeln!(out, "  n{x} -> {} [style=dashed];", name(n.low));
            let _ = writeln!(out, "  n{x} -> {};", name(n.high));
        }
        if root <= TRUE {
            let _ = writeln!(out, "  root [shape=plaintext,label=\"\"];\n  root -> {};", name(root));
        }
        out.push_str("}\n");
        Ok(out)
    }

    /// Portable dump of `f`, independent of this manager's node ids.
    pub fn export(&self, f: Func) -> Result<NodeTable> {
        let root = self.raw(f)?;
        let mut nodes = self.reachable(&[root]);
        // children sit at larger levels, so descending level is topological
        nodes.sort_by_key(|&x| (std::cmp::Reverse(self.level_of(x)), x));
        let index: HashMap<u32, u32> = nodes
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, k as u32 + 2))
            .collect();
        let r = |x: u32| if x <= TRUE { x } else { index[&x] };
        let entries = nodes
            .iter()
            .map(|&x| {
                let n = self.nodes[x as usize];
                NodeEntry {
                    var: VarId(n.level),
                    low: r(n.low),
                    high: r(n.high),
                }
            })
            .collect();
        Ok(NodeTable {
            entries,
            root: r(root),
        })
    }

    /// Rebuilds a dumped function here, renaming variables through `map`.
    /// The renaming need not preserve the source order.
    pub fn import(&mut self, table: &NodeTable, map: impl Fn(VarId) -> VarId) -> Result<Func> {
        let mut built: Vec<u32> = vec![FALSE, TRUE];
        for e in &table.entries {
            let v = map(e.var);
            self.check_var(v)?;
            let lit = self.mk(v.0, FALSE, TRUE)?;
            let r = self.ite_rec(lit, built[e.high as usize], built[e.low as usize])?;
            built.push(r);
        }
        Ok(self.wrap(built[table.root as usize]))
    }

    /// Copies `f` from `src` into this manager.
    pub fn transfer(&mut self, src: &Manager, f: Func, map: impl Fn(VarId) -> VarId) -> Result<Func> {
        let table = src.export(f)?;
        self.import(&table, map)
    }
}

/// Node of a [`NodeTable`]. Children `0`/`1` are the terminals, `k ≥ 2`
/// refers to `entries[k - 2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeEntry {
    pub var: VarId,
    pub low: u32,
    pub high: u32,
}

/// Manager-independent dump of one function, children before parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeTable {
    pub entries: Vec<NodeEntry>,
    pub root: u32,
}

/// Iterator returned by [`Manager::paths`].
pub struct Paths<'a> {
    mgr: &'a Manager,
    stack: Vec<(u32, Cube)>,
}

impl Iterator for Paths<'_> {
    type Item = Cube;

    fn next(&mut self) -> Option<Cube> {
        while let Some((x, cube)) = self.stack.pop() {
            if x == TRUE {
                return Some(cube);
            }
            let n = self.mgr.nodes[x as usize];
            let j = n.level as usize;
            if n.high != FALSE {
                let mut c = cube.clone();
                c.set(j, Polarity::One);
                self.stack.push((n.high, c));
            }
            if n.low != FALSE {
                let mut c = cube;
                c.set(j, Polarity::Zero);
                self.stack.push((n.low, c));
            }
        }
        None
    }
}
