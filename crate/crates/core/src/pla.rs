//! PLA representation of multi-output functions and its file format.
//!
//! A [`Pla`] maps each cube to the set of outputs constructed from it. It is
//! not a truth table: a `0` in the output plane only says the cube does not
//! contribute to that output. Accordingly `0`, `-` and `~` in the output plane
//! are all read as "not a member".
//!
//! Accepted file grammar:
//!
//! ```text
//! # comment
//! .i N
//! .o M
//! .ilb a b c        (optional, N names)
//! .ob f g           (optional, M names)
//! .p K              (optional)
//! .type fd          (optional, only fd)
//! 1-0 10            (N chars from 01-, whitespace, M chars from 01-~)
//! .e                (optional terminator)
//! ```

use std::fmt::Write as _;

use crate::bdd::{self, Func, Manager, VarId};
use crate::cube::{Cube, OutputSet, Polarity};

/// Comment line marking a file whose cubes are pairwise disjoint.
pub const DSOP_MARKER: &str = "# dsop";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaEntry {
    pub cube: Cube,
    pub outputs: OutputSet,
}

impl PlaEntry {
    pub fn new(cube: Cube, outputs: OutputSet) -> Self {
        PlaEntry { cube, outputs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pla {
    n: usize,
    m: usize,
    pub input_names: Option<Vec<String>>,
    pub output_names: Option<Vec<String>>,
    entries: Vec<PlaEntry>,
    dsop_certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaError {
    #[error("line {line}: {kind}")]
    Syntax { line: usize, kind: SyntaxError },
    #[error("missing .i or .o header")]
    MissingHeader,
    #[error("cube {index} has width {width}, expected {expected}")]
    Width {
        index: usize,
        width: usize,
        expected: usize,
    },
    #[error("output index {index} out of range for {m} outputs")]
    OutputRange { index: usize, m: usize },
    #[error("entries {0} and {1} overlap but the PLA is marked disjoint")]
    NotDisjoint(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("{0} must come after .i and .o")]
    BeforeHeader(String),
    #[error("bad argument for {0}")]
    BadArgument(String),
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("unsupported PLA type {0:?}, only fd is accepted")]
    UnsupportedType(String),
    #[error("unsupported directive {0}")]
    UnsupportedDirective(String),
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("illegal character {0:?}")]
    IllegalChar(char),
    #[error("input plane has {got} columns, expected {expected}")]
    InputWidth { expected: usize, got: usize },
    #[error("output plane has {got} columns, expected {expected}")]
    OutputWidth { expected: usize, got: usize },
    #[error("cube line needs an input and an output plane")]
    MissingPlane,
}

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// `-` or `~` in the output plane; treated as "not a member".
    OutputDontCare { line: usize },
    /// `.p` disagrees with the number of cube lines.
    ProductCount { declared: usize, found: usize },
}

#[derive(Debug, Clone)]
pub struct ParsedPla {
    pub pla: Pla,
    pub warnings: Vec<ParseWarning>,
}

impl Pla {
    pub fn new(n: usize, m: usize) -> Self {
        Pla {
            n,
            m,
            input_names: None,
            output_names: None,
            entries: Vec::new(),
            dsop_certified: false,
        }
    }

    /// Builds a PLA from entries, checking widths and output ranges.
    pub fn from_entries(n: usize, m: usize, entries: Vec<PlaEntry>) -> Result<Self, PlaError> {
        let mut p = Pla::new(n, m);
        for e in entries {
            p.push(e)?;
        }
        Ok(p)
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[PlaEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dsop_certified(&self) -> bool {
        self.dsop_certified
    }

    /// Appends an entry. Clears the disjointness certificate.
    pub fn push(&mut self, e: PlaEntry) -> Result<(), PlaError> {
        if e.cube.len() != self.n {
            return Err(PlaError::Width {
                index: self.entries.len(),
                width: e.cube.len(),
                expected: self.n,
            });
        }
        if e.outputs.width() > self.m {
            return Err(PlaError::OutputRange {
                index: e.outputs.width() - 1,
                m: self.m,
            });
        }
        self.entries.push(e);
        self.dsop_certified = false;
        Ok(())
    }

    /// First pair of overlapping entries, if any.
    pub fn find_overlap(&self) -> Option<(usize, usize)> {
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in self.entries.iter().enumerate().skip(i + 1) {
                if a.cube.overlaps(&b.cube) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Marks the PLA as disjoint after checking every pair of cubes.
    pub fn certify_disjoint(&mut self) -> Result<(), PlaError> {
        if let Some((i, j)) = self.find_overlap() {
            return Err(PlaError::NotDisjoint(i, j));
        }
        self.dsop_certified = true;
        Ok(())
    }

    /// Sets the certificate without checking; callers guarantee disjointness.
    pub(crate) fn assume_disjoint(&mut self) {
        self.dsop_certified = true;
    }

    /// Output pattern at input `x` (bit `j` is input `j`) under cube-list
    /// semantics: the union of the output sets of all covering cubes.
    pub fn output_at(&self, x: u64) -> OutputSet {
        self.entries
            .iter()
            .filter(|e| e.cube.contains_index(x))
            .fold(OutputSet::new(), |acc, e| acc.union(&e.outputs))
    }

    /// Builds one BDD per output; input `j` is mapped to `xs[j]`.
    pub fn to_functions(&self, mgr: &mut Manager, xs: &[VarId]) -> bdd::Result<Vec<Func>> {
        assert_eq!(xs.len(), self.n, "need one manager variable per input");
        let mut fs = vec![mgr.zero(); self.m];
        for e in &self.entries {
            if e.outputs.is_empty() {
                continue;
            }
            let c = mgr.cube(&e.cube, xs)?;
            for i in e.outputs.iter() {
                fs[i] = mgr.or(fs[i], c)?;
            }
        }
        Ok(fs)
    }
}

/// `¬(f_1 ∨ … ∨ f_m)`: the inputs mapped to the all-zero pattern.
pub fn off_set(mgr: &mut Manager, fs: &[Func]) -> bdd::Result<Func> {
    let on = mgr.or_all(fs.iter().copied())?;
    mgr.not(on)
}

/// Characteristic function `⋀ (y_i ↔ f_i)`.
pub fn characteristic(mgr: &mut Manager, fs: &[Func], ys: &[VarId]) -> bdd::Result<Func> {
    assert_eq!(fs.len(), ys.len(), "need one output variable per function");
    // conjoin from the bottom of the order up
    let mut pairs: Vec<(VarId, Func)> = ys.iter().copied().zip(fs.iter().copied()).collect();
    pairs.sort_by_key(|&(y, _)| std::cmp::Reverse(y));
    let mut chi = mgr.one();
    for (y, f) in pairs {
        let yv = mgr.var(y)?;
        let eq = mgr.xnor(yv, f)?;
        chi = mgr.and(eq, chi)?;
    }
    Ok(chi)
}

fn syntax(line: usize, kind: SyntaxError) -> PlaError {
    PlaError::Syntax { line, kind }
}

pub fn parse_pla(text: &str) -> Result<Pla, PlaError> {
    parse_pla_detailed(text).map(|p| p.pla)
}

pub fn parse_pla_detailed(text: &str) -> Result<ParsedPla, PlaError> {
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut ilb = None;
    let mut ob = None;
    let mut declared_p = None;
    let mut marked_disjoint = false;
    let mut rows: Vec<PlaEntry> = Vec::new();
    let mut warnings = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if line == DSOP_MARKER {
                marked_disjoint = true;
            }
            continue;
        }
        let header = n.zip(m);
        if let Some(rest) = line.strip_prefix('.') {
            let mut parts = rest.split_whitespace();
            let key = parts.next().unwrap_or("");
            let args: Vec<&str> = parts.collect();
            let count = |args: &[&str]| -> Result<usize, PlaError> {
                match args {
                    [a] => a
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v > 0 || key == "p")
                        .ok_or_else(|| syntax(lineno, SyntaxError::BadArgument(format!(".{key}")))),
                    _ => Err(syntax(lineno, SyntaxError::BadArgument(format!(".{key}")))),
                }
            };
            match key {
                "i" | "o" => {
                    let slot = if key == "i" { &mut n } else { &mut m };
                    if slot.is_some() {
                        return Err(syntax(lineno, SyntaxError::Duplicate(format!(".{key}"))));
                    }
                    *slot = Some(count(&args)?);
                }
                "e" | "end" => break,
                _ if header.is_none() => {
                    return Err(syntax(lineno, SyntaxError::BeforeHeader(format!(".{key}"))))
                }
                "ilb" | "ob" => {
                    let (n, m) = header.unwrap_or_default();
                    let expected = if key == "ilb" { n } else { m };
                    if args.len() != expected {
                        return Err(syntax(
                            lineno,
                            SyntaxError::NameCount {
                                expected,
                                got: args.len(),
                            },
                        ));
                    }
                    let names = Some(args.iter().map(|s| s.to_string()).collect::<Vec<_>>());
                    if key == "ilb" {
                        ilb = names;
                    } else {
                        ob = names;
                    }
                }
                "p" => declared_p = Some(count(&args)?),
                "type" => match args.as_slice() {
                    ["fd"] => {}
                    other => {
                        return Err(syntax(
                            lineno,
                            SyntaxError::UnsupportedType(other.join(" ")),
                        ))
                    }
                },
                other => {
                    return Err(syntax(
                        lineno,
                        SyntaxError::UnsupportedDirective(format!(".{other}")),
                    ))
                }
            }
            continue;
        }

        let Some((n, m)) = header else {
            return Err(syntax(lineno, SyntaxError::BeforeHeader("cube line".into())));
        };
        let mut planes = line.split_whitespace();
        let (Some(inp), Some(out), None) = (planes.next(), planes.next(), planes.next()) else {
            return Err(syntax(lineno, SyntaxError::MissingPlane));
        };
        if inp.chars().count() != n {
            return Err(syntax(
                lineno,
                SyntaxError::InputWidth {
                    expected: n,
                    got: inp.chars().count(),
                },
            ));
        }
        if out.chars().count() != m {
            return Err(syntax(
                lineno,
                SyntaxError::OutputWidth {
                    expected: m,
                    got: out.chars().count(),
                },
            ));
        }
        let lits = inp
            .chars()
            .map(|c| Polarity::from_char(c).ok_or(syntax(lineno, SyntaxError::IllegalChar(c))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut outputs = OutputSet::new();
        let mut dc = false;
        for (i, c) in out.chars().enumerate() {
            match c {
                '1' => outputs.insert(i),
                '0' => {}
                '-' | '~' => dc = true,
                other => return Err(syntax(lineno, SyntaxError::IllegalChar(other))),
            }
        }
        if dc {
            warnings.push(ParseWarning::OutputDontCare { line: lineno });
        }
        rows.push(PlaEntry::new(Cube::new(lits), outputs));
    }

    let (Some(n), Some(m)) = (n, m) else {
        return Err(PlaError::MissingHeader);
    };
    if let Some(declared) = declared_p {
        if declared != rows.len() {
            warnings.push(ParseWarning::ProductCount {
                declared,
                found: rows.len(),
            });
        }
    }
    let mut pla = Pla::from_entries(n, m, rows)?;
    pla.input_names = ilb;
    pla.output_names = ob;
    if marked_disjoint {
        pla.certify_disjoint()?;
    }
    Ok(ParsedPla { pla, warnings })
}

pub fn write_pla(pla: &Pla) -> String {
    let mut s = String::new();
    if pla.dsop_certified {
        s.push_str(DSOP_MARKER);
        s.push('\n');
    }
    let _ = writeln!(s, ".i {}", pla.n);
    let _ = writeln!(s, ".o {}", pla.m);
    if let Some(names) = &pla.input_names {
        let _ = writeln!(s, ".ilb {}", names.join(" "));
    }
    if let Some(names) = &pla.output_names {
        let _ = writeln!(s, ".ob {}", names.join(" "));
    }
    let _ = writeln!(s, ".p {}", pla.entries.len());
    for e in &pla.entries {
        let _ = writeln!(s, "{} {}", e.cube, e.outputs.to_bits(pla.m));
    }
    s.push_str(".e\n");
    s
}
