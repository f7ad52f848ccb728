//! Reversible embeddings stored as characteristic functions.
//!
//! An embedding `g ∈ B_{r,r}` of `f ∈ B_{n,m}` maps
//! `(κ_1..κ_p, x_1..x_n)` to `(y_1..y_m, γ_1..γ_ℓ)` with `r = p + n = m + ℓ`.
//! The relation `χ_g` lives in a manager whose order alternates between the
//! input-role list and the output-role list: level `2k` holds the `k`-th
//! input-role variable and level `2k + 1` the `k`-th output-role variable.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bdd::{self, BddError, Func, Manager, VarId};
use crate::cube::{Cube, OutputSet, Polarity};
use crate::lines::{heuristic_mu, LineError};
use crate::pla::{characteristic, off_set, Pla, PlaEntry};

/// Maximum rows written by [`to_extended_pla`].
pub const EXPORT_ROW_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    /// Constant input κ, fixed to 0 where `g` realizes `f`.
    Constant,
    /// Primary input x.
    Input,
    /// Primary output y.
    Output,
    /// Garbage output γ.
    Garbage,
}

impl Role {
    pub fn is_input_side(self) -> bool {
        matches!(self, Role::Constant | Role::Input)
    }

    fn prefix(self) -> &'static str {
        match self {
            Role::Constant => "k",
            Role::Input => "x",
            Role::Output => "y",
            Role::Garbage => "g",
        }
    }
}

/// Role of one manager variable and its 0-based index within that role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarRole {
    pub role: Role,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error(transparent)]
    Lines(#[from] LineError),
    #[error("embedding needs a disjoint (dsop-certified) PLA")]
    NotDisjoint,
    #[error("cube {cube} has {dont_cares} don't-cares but only {ell} garbage lines exist")]
    TooManyDontCares { cube: String, dont_cares: usize, ell: u64 },
    #[error("output pattern {pattern} used {used} times, more than its {available} preimages")]
    GarbageOverflow {
        pattern: String,
        used: BigUint,
        available: BigUint,
    },
    #[error("expected {expected} {what}, got {found}")]
    Arity {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("function depends on {0:?}, which is not one of the listed inputs")]
    ForeignSupport(VarId),
    #[error("relation relates an input to several outputs, cannot write a PLA row")]
    NotFunctional,
    #[error("more than {0} rows")]
    RowCap(usize),
}

impl EmbedError {
    pub fn is_resource(&self) -> bool {
        match self {
            EmbedError::Bdd(e) => e.is_resource(),
            EmbedError::Lines(e) => e.is_resource(),
            EmbedError::RowCap(_) => true,
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, EmbedError>;

/// How Algorithm E relates the don't-care inputs of a cube to the garbage
/// outputs when an output pattern has already been used `q` times.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GarbageBinding {
    /// `γ = x_dc + q`: the don't-care inputs, read as an integer with the
    /// smallest index least significant, offset by `q`. Injective.
    #[default]
    Offset,
    /// `x_{d_i} ↔ s_i` and `s̄_i` for `i > t`, where `s = inc^q(γ)`. This
    /// reproduces the published worked example term by term, but equals
    /// `γ = x_dc − q`, which collides with earlier cubes of the same pattern.
    Literal,
}

/// One update of the per-pattern counter during [`embed_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterUpdate {
    pub outputs: OutputSet,
    pub before: BigUint,
    pub after: BigUint,
}

/// Characteristic function of a (partial) reversible function.
pub struct RcBdd {
    mgr: Manager,
    chi: Func,
    n: usize,
    m: usize,
    p: usize,
    ell: usize,
    roles: Vec<VarRole>,
    kappa: Vec<VarId>,
    x: Vec<VarId>,
    y: Vec<VarId>,
    gamma: Vec<VarId>,
    partial: bool,
    updates: Vec<CounterUpdate>,
}

struct Frame {
    mgr: Manager,
    roles: Vec<VarRole>,
    kappa: Vec<VarId>,
    x: Vec<VarId>,
    y: Vec<VarId>,
    gamma: Vec<VarId>,
}

impl Frame {
    fn new(n: usize, m: usize, p: usize, ell: usize) -> Frame {
        assert_eq!(p + n, m + ell, "both sides need r lines");
        let ins: Vec<VarRole> = (0..p)
            .map(|index| VarRole { role: Role::Constant, index })
            .chain((0..n).map(|index| VarRole { role: Role::Input, index }))
            .collect();
        let outs: Vec<VarRole> = (0..m)
            .map(|index| VarRole { role: Role::Output, index })
            .chain((0..ell).map(|index| VarRole { role: Role::Garbage, index }))
            .collect();
        let mut f = Frame {
            mgr: Manager::new(),
            roles: Vec::with_capacity(2 * (p + n)),
            kappa: Vec::new(),
            x: Vec::new(),
            y: Vec::new(),
            gamma: Vec::new(),
        };
        for (a, b) in ins.into_iter().zip(outs) {
            f.add(a);
            f.add(b);
        }
        f
    }

    fn add(&mut self, vr: VarRole) {
        let v = self
            .mgr
            .new_var(format!("{}{}", vr.role.prefix(), vr.index + 1));
        self.roles.push(vr);
        match vr.role {
            Role::Constant => self.kappa.push(v),
            Role::Input => self.x.push(v),
            Role::Output => self.y.push(v),
            Role::Garbage => self.gamma.push(v),
        }
    }

    fn finish(self, chi: Func, n: usize, m: usize, partial: bool, updates: Vec<CounterUpdate>) -> RcBdd {
        RcBdd {
            p: self.kappa.len(),
            ell: self.gamma.len(),
            mgr: self.mgr,
            chi,
            n,
            m,
            roles: self.roles,
            kappa: self.kappa,
            x: self.x,
            y: self.y,
            gamma: self.gamma,
            partial,
            updates,
        }
    }
}

impl std::fmt::Debug for RcBdd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RcBdd")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("p", &self.p)
            .field("ell", &self.ell)
            .field("partial", &self.partial)
            .field("nodes", &self.node_count())
            .finish()
    }
}

impl RcBdd {
    pub fn chi(&self) -> Func {
        self.chi
    }

    pub fn manager(&self) -> &Manager {
        &self.mgr
    }

    /// Mutable access for building further functions next to `χ_g`; the
    /// relation itself never changes.
    pub fn manager_mut(&mut self) -> &mut Manager {
        &mut self.mgr
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn constants(&self) -> usize {
        self.p
    }

    pub fn garbage(&self) -> usize {
        self.ell
    }

    pub fn lines(&self) -> usize {
        self.p + self.n
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn role(&self, v: VarId) -> VarRole {
        self.roles[v.index()]
    }

    pub fn kappa_vars(&self) -> &[VarId] {
        &self.kappa
    }

    pub fn x_vars(&self) -> &[VarId] {
        &self.x
    }

    pub fn y_vars(&self) -> &[VarId] {
        &self.y
    }

    pub fn gamma_vars(&self) -> &[VarId] {
        &self.gamma
    }

    /// Input-role variables `κ_1..κ_p, x_1..x_n`.
    pub fn input_side(&self) -> Vec<VarId> {
        self.kappa.iter().chain(&self.x).copied().collect()
    }

    /// Output-role variables `y_1..y_m, γ_1..γ_ℓ`.
    pub fn output_side(&self) -> Vec<VarId> {
        self.y.iter().chain(&self.gamma).copied().collect()
    }

    /// Counter updates made by [`embed_exact`], one per PLA entry.
    pub fn counter_updates(&self) -> &[CounterUpdate] {
        &self.updates
    }

    pub fn node_count(&self) -> usize {
        self.mgr.node_count(self.chi).expect("chi belongs to its manager")
    }

    pub fn to_dot(&self) -> String {
        self.mgr.to_dot(self.chi).expect("chi belongs to its manager")
    }

    /// Whether `(input, output)` is in the relation; both are indexed like
    /// [`RcBdd::input_side`] and [`RcBdd::output_side`].
    pub fn relates(&self, input: &[bool], output: &[bool]) -> bool {
        let mut a = vec![false; self.roles.len()];
        for (v, &b) in self.input_side().iter().zip(input) {
            a[v.index()] = b;
        }
        for (v, &b) in self.output_side().iter().zip(output) {
            a[v.index()] = b;
        }
        self.mgr.eval(self.chi, &a).expect("full assignment")
    }

    /// Replaces the relation; used to build negative controls in tests.
    #[doc(hidden)]
    pub fn with_chi(mut self, chi: Func) -> Self {
        self.chi = chi;
        self
    }
}

/// `⋀ y_i` for `i ∈ o` and `⋀ ȳ_i` otherwise.
pub fn cube_of(mgr: &mut Manager, o: &OutputSet, ys: &[VarId]) -> bdd::Result<Func> {
    let c = Cube::new((0..ys.len()).map(|i| Polarity::from_bool(o.contains(i))).collect());
    mgr.cube(&c, ys)
}

/// One increment of the integer `v_w … v_1` (`v_1` least significant):
/// `s_i = v_i ⊕ ⋀_{j<i} v_j`.
pub fn inc_once(mgr: &mut Manager, vars: &[Func]) -> bdd::Result<Vec<Func>> {
    let mut carry = mgr.one();
    let mut out = Vec::with_capacity(vars.len());
    for &v in vars {
        out.push(mgr.xor(v, carry)?);
        carry = mgr.and(v, carry)?;
    }
    Ok(out)
}

/// `inc` applied `times` times, computed as one ripple-carry addition of the
/// constant `times` modulo `2^w`.
pub fn inc(mgr: &mut Manager, vars: &[Func], times: &BigUint) -> bdd::Result<Vec<Func>> {
    let mut carry = mgr.zero();
    let mut out = Vec::with_capacity(vars.len());
    for (i, &v) in vars.iter().enumerate() {
        let s = mgr.xor(v, carry)?;
        if times.bit(i as u64) {
            out.push(mgr.not(s)?);
            carry = mgr.or(v, carry)?;
        } else {
            out.push(s);
            carry = mgr.and(v, carry)?;
        }
    }
    Ok(out)
}

/// Cube-based embedding of a disjoint PLA.
///
/// `ℓ` is computed from the exact pattern counts of `pla`. Every entry
/// `(c, o)` adds the term `c ∧ cube(o) ∧ κ̄ ∧ G` where `G` ties the
/// don't-care inputs of `c` to the garbage outputs according to `binding`.
pub fn embed_exact(pla: &Pla, binding: GarbageBinding) -> Result<RcBdd> {
    if !pla.dsop_certified() {
        return Err(EmbedError::NotDisjoint);
    }
    let (n, m) = (pla.inputs(), pla.outputs());
    let report = heuristic_mu(pla)?;
    let ell = report.ell as usize;
    let r = m + ell;
    // ℓ ≥ n − m holds for any exact count, so p is never negative
    let p = r.checked_sub(n).expect("exact garbage count is at least n - m");
    let mut fr = Frame::new(n, m, p, ell);
    let mgr = &mut fr.mgr;

    let kappa_off = {
        let lits = fr
            .kappa
            .iter()
            .map(|&k| mgr.literal(k, false))
            .collect::<bdd::Result<Vec<_>>>()?;
        mgr.and_all(lits)?
    };
    let gamma_f = fr
        .gamma
        .iter()
        .map(|&g| mgr.var(g))
        .collect::<bdd::Result<Vec<_>>>()?;

    let mut cnt: BTreeMap<OutputSet, BigUint> = BTreeMap::new();
    let mut updates = Vec::with_capacity(pla.len());
    let mut chi = mgr.zero();
    for e in pla.entries() {
        let q = cnt.get(&e.outputs).cloned().unwrap_or_default();
        let after = &q + e.cube.on_count();
        let available = report.count(&e.outputs);
        if after > available {
            return Err(EmbedError::GarbageOverflow {
                pattern: e.outputs.to_bits(m),
                used: after,
                available,
            });
        }
        let dc = e.cube.dont_cares();
        if dc.len() > ell {
            return Err(EmbedError::TooManyDontCares {
                cube: e.cube.to_string(),
                dont_cares: dc.len(),
                ell: ell as u64,
            });
        }
        let xc = mgr.cube(&e.cube, &fr.x)?;
        let yc = cube_of(mgr, &e.outputs, &fr.y)?;
        let g = match binding {
            GarbageBinding::Offset => {
                let mut a = dc
                    .iter()
                    .map(|&d| mgr.var(fr.x[d]))
                    .collect::<bdd::Result<Vec<_>>>()?;
                a.resize(ell, mgr.zero());
                let s = inc(mgr, &a, &q)?;
                let eqs = gamma_f
                    .iter()
                    .zip(s)
                    .map(|(&gv, si)| mgr.xnor(gv, si))
                    .collect::<bdd::Result<Vec<_>>>()?;
                mgr.and_all(eqs)?
            }
            GarbageBinding::Literal => {
                let s = inc(mgr, &gamma_f, &q)?;
                let mut terms = Vec::with_capacity(ell);
                for (i, &si) in s.iter().enumerate() {
                    terms.push(match dc.get(i) {
                        Some(&d) => {
                            let xv = mgr.var(fr.x[d])?;
                            mgr.xnor(xv, si)?
                        }
                        None => mgr.not(si)?,
                    });
                }
                mgr.and_all(terms)?
            }
        };
        let term = mgr.and_all([xc, yc, kappa_off, g])?;
        chi = mgr.or(chi, term)?;
        updates.push(CounterUpdate {
            outputs: e.outputs.clone(),
            before: q,
            after: after.clone(),
        });
        cnt.insert(e.outputs.clone(), after);
    }
    let outs: Vec<VarId> = fr.y.iter().chain(&fr.gamma).copied().collect();
    let image = fr.mgr.exists(chi, &outs)?;
    let partial = image != fr.mgr.one();
    Ok(fr.finish(chi, n, m, partial, updates))
}

/// Bennett embedding: `y_i ↔ κ_i ⊕ f_i` and `γ_j ↔ x_j` on `n + m` lines.
///
/// `fs` live in `src` over the inputs `xs` (in that order).
pub fn embed_bennett(src: &Manager, fs: &[Func], xs: &[VarId]) -> Result<RcBdd> {
    let (n, m) = (xs.len(), fs.len());
    let position = input_positions(src, fs, xs)?;
    let mut fr = Frame::new(n, m, m, n);
    let mgr = &mut fr.mgr;
    let copied = fs
        .iter()
        .map(|&f| mgr.transfer(src, f, |v| fr.x[position[&v]]))
        .collect::<bdd::Result<Vec<_>>>()?;
    // conjoin bottom-up so intermediate results stay small
    let mut chi = mgr.one();
    for j in (0..n).rev() {
        let (xv, gv) = (mgr.var(fr.x[j])?, mgr.var(fr.gamma[j])?);
        let eq = mgr.xnor(gv, xv)?;
        chi = mgr.and(eq, chi)?;
    }
    for i in (0..m).rev() {
        let (kv, yv) = (mgr.var(fr.kappa[i])?, mgr.var(fr.y[i])?);
        let target = mgr.xor(kv, copied[i])?;
        let eq = mgr.xnor(yv, target)?;
        chi = mgr.and(eq, chi)?;
    }
    Ok(fr.finish(chi, n, m, false, Vec::new()))
}

/// [`embed_bennett`] for the functions of a PLA.
pub fn embed_bennett_pla(pla: &Pla) -> Result<RcBdd> {
    let (mgr, xs, fs) = pla_functions(pla)?;
    embed_bennett(&mgr, &fs, &xs)
}

fn pla_functions(pla: &Pla) -> Result<(Manager, Vec<VarId>, Vec<Func>)> {
    let mut mgr = Manager::new();
    let xs: Vec<VarId> = (0..pla.inputs())
        .map(|j| mgr.new_var(format!("x{}", j + 1)))
        .collect();
    let fs = pla.to_functions(&mut mgr, &xs)?;
    Ok((mgr, xs, fs))
}

fn input_positions(src: &Manager, fs: &[Func], xs: &[VarId]) -> Result<HashMap<VarId, usize>> {
    let position: HashMap<VarId, usize> = xs.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    for &f in fs {
        if let Some(v) = src.support(f)?.into_iter().find(|v| !position.contains_key(v)) {
            return Err(EmbedError::ForeignSupport(v));
        }
    }
    Ok(position)
}

/// Outcome of the symbolic checks in [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// No input assignment relates to two output assignments.
    pub functional: bool,
    /// No output assignment relates to two input assignments.
    pub injective: bool,
    /// Every input assignment relates to some output assignment.
    pub total: bool,
    /// With `κ = 0` and `γ` removed, every specified pair satisfies
    /// `y = f(x)` and every input in the ON-set of `f` is specified.
    pub projects: bool,
    /// With `κ = 0` and `γ` removed the relation is exactly `⋀ (y_i ↔ f_i)`.
    pub projects_exactly: bool,
    /// Number of input assignments with an image.
    #[serde(serialize_with = "as_decimal")]
    pub specified: BigUint,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl VerifyReport {
    /// Injective, functional and projecting; total as well if `need_total`.
    pub fn passes(&self, need_total: bool) -> bool {
        self.functional && self.injective && self.projects && (self.total || !need_total)
    }
}

/// Symbolic checks of `rc` against the functions `fs` over `xs` in `src`.
pub fn verify(rc: &mut RcBdd, src: &Manager, fs: &[Func], xs: &[VarId]) -> Result<VerifyReport> {
    if xs.len() != rc.n {
        return Err(EmbedError::Arity { what: "inputs", expected: rc.n, found: xs.len() });
    }
    if fs.len() != rc.m {
        return Err(EmbedError::Arity { what: "outputs", expected: rc.m, found: fs.len() });
    }
    let position = input_positions(src, fs, xs)?;
    let rx = rc.x.clone();
    let copied = fs
        .iter()
        .map(|&f| rc.mgr.transfer(src, f, |v| rx[position[&v]]))
        .collect::<bdd::Result<Vec<_>>>()?;
    verify_local(rc, &copied)
}

/// [`verify`] against the functions of a PLA.
pub fn verify_pla(rc: &mut RcBdd, pla: &Pla) -> Result<VerifyReport> {
    let (mgr, xs, fs) = pla_functions(pla)?;
    verify(rc, &mgr, &fs, &xs)
}

fn verify_local(rc: &mut RcBdd, fs: &[Func]) -> Result<VerifyReport> {
    let ins = rc.input_side();
    let outs = rc.output_side();
    let all = ins.len() + outs.len();
    let r = ins.len();
    let chi = rc.chi;
    let mgr = &mut rc.mgr;

    let size = mgr.sat_count(chi, all)?;
    let domain = mgr.exists(chi, &outs)?;
    let range = mgr.exists(chi, &ins)?;
    let scaled = &size << r;
    let functional = scaled == mgr.sat_count(domain, all)?;
    let injective = scaled == mgr.sat_count(range, all)?;
    let total = domain == mgr.one();
    let specified = mgr.sat_count(domain, all)? >> r;

    let zero_kappa: Vec<(VarId, bool)> = rc.kappa.iter().map(|&k| (k, false)).collect();
    let plane = mgr.restrict(chi, &zero_kappa)?;
    let projected = mgr.exists(plane, &rc.gamma)?;
    let spec = characteristic(mgr, fs, &rc.y)?;
    let agrees = mgr.implies(projected, spec)?;
    let covered = mgr.exists(projected, &rc.y)?;
    let on = mgr.or_all(fs.iter().copied())?;
    let covers = mgr.implies(on, covered)?;
    let one = mgr.one();
    Ok(VerifyReport {
        functional,
        injective,
        total,
        projects: agrees == one && covers == one,
        projects_exactly: projected == spec,
        specified,
    })
}

/// Appends the OFF-set of `pla` as cubes with an empty output set.
///
/// The result is certified disjoint when `pla` was and no entry had an empty
/// output set.
pub fn complete_offset(pla: &Pla) -> Result<Pla> {
    let (mgr_fs, off, n) = {
        let (mut mgr, _xs, fs) = pla_functions(pla)?;
        let off = off_set(&mut mgr, &fs)?;
        (mgr, off, pla.inputs())
    };
    let mut out = pla.clone();
    for cube in mgr_fs.paths(off, n)? {
        out.push(PlaEntry::new(cube, OutputSet::new()))
            .expect("widths match");
    }
    if pla.dsop_certified() && pla.entries().iter().all(|e| !e.outputs.is_empty()) {
        out.assume_disjoint();
    }
    Ok(out)
}

/// The `κ = 0` plane of `χ_g` as a PLA with `p + n` inputs (constant columns
/// first) and `m + ℓ` outputs (garbage columns last).
pub fn to_extended_pla(rc: &mut RcBdd) -> Result<Pla> {
    let (p, n, r) = (rc.p, rc.n, rc.lines());
    let zero_kappa: Vec<(VarId, bool)> = rc.kappa.iter().map(|&k| (k, false)).collect();
    let plane = rc.mgr.restrict(rc.chi, &zero_kappa)?;
    let mut entries = Vec::new();
    for path in rc.mgr.paths(plane, 2 * r)? {
        if entries.len() == EXPORT_ROW_CAP {
            return Err(EmbedError::RowCap(EXPORT_ROW_CAP));
        }
        let mut lits = vec![Polarity::Zero; p];
        lits.extend((0..n).map(|j| path.get(2 * (p + j))));
        let mut outputs = OutputSet::new();
        for k in 0..r {
            match path.get(2 * k + 1) {
                Polarity::One => outputs.insert(k),
                Polarity::Zero => {}
                Polarity::DontCare => return Err(EmbedError::NotFunctional),
            }
        }
        entries.push(PlaEntry::new(Cube::new(lits), outputs));
    }
    let mut pla = Pla::from_entries(r, r, entries).expect("widths match");
    pla.input_names = Some(
        rc.input_side()
            .iter()
            .map(|&v| rc.mgr.var_name(v).map(str::to_owned))
            .collect::<bdd::Result<_>>()?,
    );
    pla.output_names = Some(
        rc.output_side()
            .iter()
            .map(|&v| rc.mgr.var_name(v).map(str::to_owned))
            .collect::<bdd::Result<_>>()?,
    );
    pla.assume_disjoint();
    Ok(pla)
}

/// JSON summary `{n, m, p, ell, r, partial, nodes, verify}`.
pub fn summary_json(rc: &RcBdd, report: Option<&VerifyReport>) -> serde_json::Value {
    serde_json::json!({
        "n": rc.n,
        "m": rc.m,
        "p": rc.p,
        "ell": rc.ell,
        "r": rc.lines(),
        "partial": rc.partial,
        "nodes": rc.node_count(),
        "verify": report,
    })
}

/// Node counts of one permutation's characteristic function under two orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderingSample {
    /// `x_1 < y_1 < x_2 < y_2 < …`
    pub interleaved: usize,
    /// `x_1 < … < x_k < y_1 < … < y_k`
    pub blocked: usize,
}

/// Builds `χ_π` for a permutation `π` of `B^k` (entry `a` is the image of
/// `a`, bit `j` is line `j`) under both orders.
pub fn ordering_sample(perm: &[u64], k: usize) -> bdd::Result<OrderingSample> {
    assert_eq!(perm.len(), 1 << k, "permutation must list 2^k images");
    let build = |interleaved: bool| -> bdd::Result<usize> {
        let mut mgr = Manager::new();
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        if interleaved {
            for j in 0..k {
                xs.push(mgr.new_var(format!("x{}", j + 1)));
                ys.push(mgr.new_var(format!("y{}", j + 1)));
            }
        } else {
            xs = (0..k).map(|j| mgr.new_var(format!("x{}", j + 1))).collect();
            ys = (0..k).map(|j| mgr.new_var(format!("y{}", j + 1))).collect();
        }
        let vars: Vec<VarId> = xs.iter().chain(&ys).copied().collect();
        let mut chi = mgr.zero();
        for (a, &b) in perm.iter().enumerate() {
            let bits: Vec<bool> = (0..k)
                .map(|j| a >> j & 1 == 1)
                .chain((0..k).map(|j| b >> j & 1 == 1))
                .collect();
            let c = mgr.cube(&Cube::minterm(&bits), &vars)?;
            chi = mgr.or(chi, c)?;
        }
        mgr.node_count(chi)
    };
    Ok(OrderingSample {
        interleaved: build(true)?,
        blocked: build(false)?,
    })
}

/// A uniformly random permutation of `0..2^k`.
pub fn random_permutation<R: Rng>(k: usize, rng: &mut R) -> Vec<u64> {
    let mut v: Vec<u64> = (0..1u64 << k).collect();
    v.shuffle(rng);
    v
}

/// [`ordering_sample`] for `samples` random permutations on `k` lines.
pub fn compare_orderings(k: usize, samples: usize, seed: u64) -> bdd::Result<Vec<OrderingSample>> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..samples)
        .map(|_| ordering_sample(&random_permutation(k, &mut rng), k))
        .collect()
}

#[cfg(test)]
fn bits_of(v: u64, w: usize) -> Vec<bool> {
    (0..w).map(|j| v >> j & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsop::dsop;
    use crate::pla::parse_pla;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn fixture(name: &str) -> Pla {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_pla(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn value(mgr: &Manager, fs: &[Func], vars: &[VarId], a: &[bool]) -> u64 {
        let mut full = vec![false; mgr.var_count()];
        for (v, &b) in vars.iter().zip(a) {
            full[v.index()] = b;
        }
        fs.iter()
            .enumerate()
            .map(|(i, &f)| (mgr.eval(f, &full).unwrap() as u64) << i)
            .sum()
    }

    #[test]
    fn cube_of_examples() {
        let (mut mgr, ys) = Manager::with_vars(["y1", "y2", "y3"]);
        let f = cube_of(&mut mgr, &OutputSet::from_indices([1]), &ys).unwrap();
        assert_eq!(mgr.sat_count(f, 3).unwrap(), BigUint::one());
        assert!(mgr.eval(f, &[false, true, false]).unwrap());
        let g = cube_of(&mut mgr, &OutputSet::from_indices([1, 2]), &ys).unwrap();
        assert!(mgr.eval(g, &[false, true, true]).unwrap());
        let e = cube_of(&mut mgr, &OutputSet::new(), &ys[..2]).unwrap();
        assert!(mgr.eval(e, &[false, false, true]).unwrap());
        assert!(!mgr.eval(e, &[true, false, false]).unwrap());
    }

    #[test]
    fn inc_once_is_plus_one() {
        for w in 1..=6usize {
            let (mut mgr, vs) = Manager::with_vars((0..w).map(|j| format!("v{j}")));
            let fs: Vec<Func> = vs.iter().map(|&v| mgr.var(v).unwrap()).collect();
            let s = inc_once(&mut mgr, &fs).unwrap();
            for a in 0..1u64 << w {
                assert_eq!(value(&mgr, &s, &vs, &bits_of(a, w)), (a + 1) % (1 << w));
            }
        }
    }

    #[test]
    fn inc_matches_repeated_increment() {
        let (mut mgr, vs) = Manager::with_vars((0..5).map(|j| format!("g{}", j + 1)));
        let fs: Vec<Func> = vs.iter().map(|&v| mgr.var(v).unwrap()).collect();
        let mut rep = fs.clone();
        for q in 0u32..40 {
            assert_eq!(inc(&mut mgr, &fs, &q.into()).unwrap(), rep, "q = {q}");
            rep = inc_once(&mut mgr, &rep).unwrap();
        }
        assert_eq!(inc(&mut mgr, &fs, &BigUint::zero()).unwrap(), fs);
    }

    #[test]
    fn inc_by_four_has_printed_form() {
        let (mut mgr, vs) = Manager::with_vars((0..5).map(|j| format!("g{}", j + 1)));
        let g: Vec<Func> = vs.iter().map(|&v| mgr.var(v).unwrap()).collect();
        let s = inc(&mut mgr, &g, &4u32.into()).unwrap();
        let g3n = mgr.not(g[2]).unwrap();
        let s4 = mgr.xor(g[3], g[2]).unwrap();
        let g34 = mgr.and(g[2], g[3]).unwrap();
        let s5 = mgr.xor(g[4], g34).unwrap();
        assert_eq!(s, vec![g[0], g[1], g3n, s4, s5]);
    }

    #[test]
    fn underapprox_embedding_shape_and_counters() {
        let rc = embed_exact(&fixture("underapprox_dsop.pla"), GarbageBinding::Offset).unwrap();
        assert_eq!((rc.lines(), rc.constants(), rc.garbage()), (8, 3, 5));
        let ups: Vec<(String, u32, u32)> = rc
            .counter_updates()
            .iter()
            .map(|u| (u.outputs.to_bits(3), u.before.clone().try_into().unwrap(), u.after.clone().try_into().unwrap()))
            .collect();
        assert_eq!(
            ups,
            [("010".into(), 0, 4), ("011".into(), 0, 4), ("011".into(), 4, 20)]
        );
        assert!(rc.is_partial());
        let names: Vec<&str> = (0..16)
            .map(|l| rc.manager().var_name(rc.manager().var_at_level(l).unwrap()).unwrap())
            .collect();
        assert_eq!(names[..8], ["k1", "y1", "k2", "y2", "k3", "y3", "x1", "g1"]);
        assert_eq!(names[14..], ["x5", "g5"]);
    }

    #[test]
    fn exact_embedding_verifies() {
        let p = fixture("underapprox_dsop.pla");
        let mut rc = embed_exact(&p, GarbageBinding::Offset).unwrap();
        let rep = verify_pla(&mut rc, &p).unwrap();
        assert!(rep.functional && rep.injective && rep.projects, "{rep:?}");
        assert!(!rep.total);
        assert_eq!(rep.specified, 24u32.into());
        assert!(!rep.projects_exactly);
    }

    #[test]
    fn literal_binding_is_not_injective() {
        let p = fixture("underapprox_dsop.pla");
        let mut rc = embed_exact(&p, GarbageBinding::Literal).unwrap();
        let rep = verify_pla(&mut rc, &p).unwrap();
        assert!(rep.functional && rep.projects);
        assert!(!rep.injective);
        // x = 00010 and x = 10010 land on the same output 011 00000
        let out: Vec<bool> = "01100000".chars().map(|c| c == '1').collect();
        let a: Vec<bool> = "00000010".chars().map(|c| c == '1').collect();
        let b: Vec<bool> = "00010010".chars().map(|c| c == '1').collect();
        assert!(rc.relates(&a, &out) && rc.relates(&b, &out));
    }

    #[test]
    fn bindings_agree_without_offset() {
        // with q = 0 both bindings produce the same terms
        let p = dsop(&parse_pla(".i 3\n.o 1\n1-- 1\n").unwrap());
        let a = embed_exact(&p, GarbageBinding::Offset).unwrap();
        let b = embed_exact(&p, GarbageBinding::Literal).unwrap();
        assert_eq!(a.manager().export(a.chi()).unwrap(), b.manager().export(b.chi()).unwrap());
    }

    #[test]
    fn identity_embedding_needs_no_garbage() {
        let p = fixture("identity2.pla");
        let mut d = p.clone();
        d.certify_disjoint().unwrap();
        let mut rc = embed_exact(&d, GarbageBinding::Offset).unwrap();
        assert_eq!((rc.garbage(), rc.constants(), rc.lines()), (0, 0, 2));
        let rep = verify_pla(&mut rc, &p).unwrap();
        assert!(rep.passes(true), "{rep:?}");
        assert_eq!(rep.specified, 4u32.into());
        assert!(!rc.is_partial());
    }

    #[test]
    fn bennett_and() {
        let p = fixture("and2.pla");
        let mut rc = embed_bennett_pla(&p).unwrap();
        assert_eq!((rc.constants(), rc.garbage(), rc.lines()), (1, 2, 3));
        let rep = verify_pla(&mut rc, &p).unwrap();
        assert!(rep.passes(true) && rep.projects_exactly, "{rep:?}");
        assert_eq!(rc.manager().sat_count(rc.chi(), 6).unwrap(), 8u32.into());
        // κ = 0 column: inputs (k, a, b) → (y, g1, g2) = (a∧b, a, b)
        for ab in 0..4u64 {
            let (a, b) = (ab & 1 == 1, ab >> 1 & 1 == 1);
            assert!(rc.relates(&[false, a, b], &[a && b, a, b]));
            assert!(!rc.relates(&[false, a, b], &[!(a && b), a, b]));
        }
    }

    #[test]
    fn bennett_is_self_inverse() {
        let p = fixture("running_example.pla");
        let rc = embed_bennett_pla(&p).unwrap();
        let r = rc.lines();
        let image = |inp: &[bool]| -> Vec<bool> {
            let hits: Vec<Vec<bool>> = (0..1u64 << r)
                .map(|o| bits_of(o, r))
                .filter(|o| rc.relates(inp, o))
                .collect();
            assert_eq!(hits.len(), 1);
            hits.into_iter().next().unwrap()
        };
        for a in (0..1u64 << r).step_by(7) {
            let inp = bits_of(a, r);
            assert_eq!(image(&image(&inp)), inp);
        }
    }

    #[test]
    fn duplicated_output_breaks_injectivity() {
        let p = fixture("and2.pla");
        let mut rc = embed_bennett_pla(&p).unwrap();
        // send input (k,a,b) = 100 to the image of 000 as well
        let ins = rc.input_side();
        let outs = rc.output_side();
        let mgr = rc.manager_mut();
        let mut lits = Vec::new();
        for (&v, b) in ins.iter().zip([true, false, false]) {
            lits.push(mgr.literal(v, b).unwrap());
        }
        let src = mgr.and_all(lits.clone()).unwrap();
        let mut olits = Vec::new();
        for &v in &outs {
            olits.push(mgr.literal(v, false).unwrap());
        }
        let dst = mgr.and_all(olits).unwrap();
        let extra = mgr.and(src, dst).unwrap();
        let chi = rc.chi();
        let bad = rc.manager_mut().or(chi, extra).unwrap();
        let mut rc = rc.with_chi(bad);
        let rep = verify_pla(&mut rc, &p).unwrap();
        assert!(!rep.injective);
        assert!(!rep.functional);
    }

    #[test]
    fn offset_completion() {
        let p = fixture("underapprox.pla");
        let c = complete_offset(&p).unwrap();
        let added: BigUint = c.entries()[p.len()..].iter().map(|e| e.cube.on_count()).sum();
        assert_eq!(added, 8u32.into());
        let d = dsop(&c);
        let mut rc = embed_exact(&d, GarbageBinding::Offset).unwrap();
        let rep = verify_pla(&mut rc, &p).unwrap();
        assert!(rep.passes(false) && rep.projects_exactly, "{rep:?}");
        assert_eq!(rep.specified, 32u32.into());

        let full = parse_pla(".i 1\n.o 1\n- 1\n").unwrap();
        assert_eq!(complete_offset(&full).unwrap().entries(), full.entries());
    }

    #[test]
    fn extended_pla_lists_every_specified_row() {
        let p = fixture("underapprox_dsop.pla");
        let mut rc = embed_exact(&p, GarbageBinding::Offset).unwrap();
        let ext = to_extended_pla(&mut rc).unwrap();
        assert_eq!((ext.inputs(), ext.outputs(), ext.len()), (8, 8, 24));
        let text = crate::pla::write_pla(&ext);
        assert!(text.contains(".ilb k1 k2 k3 x1 x2 x3 x4 x5"));
        for e in ext.entries() {
            assert!(e.cube.lits()[..3].iter().all(|&l| l == Polarity::Zero));
            // first three output columns reproduce f on this row
            let x: u64 = (0..5).map(|j| ((e.cube.get(3 + j) == Polarity::One) as u64) << j).sum();
            let want = p.output_at(x);
            for i in 0..3 {
                assert_eq!(e.outputs.contains(i), want.contains(i));
            }
        }
    }

    #[test]
    fn summary_fields() {
        let p = fixture("and2.pla");
        let mut rc = embed_bennett_pla(&p).unwrap();
        let rep = verify_pla(&mut rc, &p).unwrap();
        let v = summary_json(&rc, Some(&rep));
        assert_eq!(v["r"], 3);
        assert_eq!(v["partial"], false);
        assert_eq!(v["verify"]["injective"], true);
        assert_eq!(v["verify"]["specified"], "8");
    }

    #[test]
    fn ordering_sample_on_identity() {
        // identity on k lines: interleaved is linear, blocked is exponential
        let k = 4;
        let perm: Vec<u64> = (0..1 << k).collect();
        let s = ordering_sample(&perm, k).unwrap();
        assert_eq!(s.interleaved, 3 * k);
        // full x-tree, then one y-node per distinct suffix at each y level
        assert_eq!(s.blocked, ((1 << k) - 1) + ((1 << (k + 1)) - 2));
        let runs = compare_orderings(3, 4, 7).unwrap();
        assert_eq!(runs, compare_orderings(3, 4, 7).unwrap());
    }

    fn arb_functions() -> impl Strategy<Value = (usize, Vec<u64>)> {
        (1usize..5, 1usize..4).prop_flat_map(|(n, m)| {
            (Just(n), proptest::collection::vec(0u64..1 << m, 1 << n))
                .prop_map(move |(n, t)| (n, t.into_iter().map(|v| v | (m as u64) << 32).collect()))
        })
    }

    proptest! {
        #[test]
        fn exact_and_bennett_verify((n, table) in arb_functions()) {
            let m = (table[0] >> 32) as usize;
            let mut text = format!(".i {n}\n.o {m}\n");
            for (a, v) in table.iter().enumerate() {
                let cube: String = (0..n).map(|j| if a >> j & 1 == 1 { '1' } else { '0' }).collect();
                let out: String = (0..m).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect();
                text += &format!("{cube} {out}\n");
            }
            let p = parse_pla(&text).unwrap();
            let mut b = embed_bennett_pla(&p).unwrap();
            prop_assert!(verify_pla(&mut b, &p).unwrap().passes(true));
            let d = dsop(&complete_offset(&p).unwrap());
            let mut e = embed_exact(&d, GarbageBinding::Offset).unwrap();
            let rep = verify_pla(&mut e, &p).unwrap();
            prop_assert!(rep.passes(false) && rep.projects_exactly);
            prop_assert_eq!(rep.specified, BigUint::one() << n);
        }
    }
}
