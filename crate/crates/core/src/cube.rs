//! Input cubes and output sets, the two halves of a PLA row.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

/// Polarity of one input variable inside a cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// Negative literal.
    Zero,
    /// Positive literal.
    One,
    /// Variable does not occur in the cube.
    DontCare,
}

impl Polarity {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Polarity::Zero),
            '1' => Some(Polarity::One),
            '-' => Some(Polarity::DontCare),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Polarity::Zero => '0',
            Polarity::One => '1',
            Polarity::DontCare => '-',
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Polarity::One
        } else {
            Polarity::Zero
        }
    }

    /// Whether a variable assigned `value` satisfies this position.
    pub fn admits(self, value: bool) -> bool {
        match self {
            Polarity::Zero => !value,
            Polarity::One => value,
            Polarity::DontCare => true,
        }
    }
}

/// A product term over `n` input variables.
///
/// Position `j` holds the polarity of the `j`-th input (0-based). Cubes are
/// never empty: a conflicting intersection is represented by `None` at the
/// call site instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    lits: Vec<Polarity>,
}

impl Cube {
    pub fn new(lits: Vec<Polarity>) -> Self {
        Cube { lits }
    }

    /// The cube with every position don't-care.
    pub fn universe(n: usize) -> Self {
        Cube {
            lits: vec![Polarity::DontCare; n],
        }
    }

    /// The minterm for `bits` (bit `j` of the slice is input `j`).
    pub fn minterm(bits: &[bool]) -> Self {
        Cube {
            lits: bits.iter().map(|&b| Polarity::from_bool(b)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn lits(&self) -> &[Polarity] {
        &self.lits
    }

    pub fn get(&self, j: usize) -> Polarity {
        self.lits[j]
    }

    pub fn set(&mut self, j: usize, p: Polarity) {
        self.lits[j] = p;
    }

    /// Number of literals (non-don't-care positions).
    pub fn weight(&self) -> usize {
        self.lits
            .iter()
            .filter(|&&p| p != Polarity::DontCare)
            .count()
    }

    /// Ascending indices of the don't-care positions.
    pub fn dont_cares(&self) -> Vec<usize> {
        self.lits
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == Polarity::DontCare)
            .map(|(j, _)| j)
            .collect()
    }

    /// Size of the ON-set, `2^(n - weight)`.
    pub fn on_count(&self) -> BigUint {
        BigUint::one() << (self.len() - self.weight())
    }

    /// Whether the assignment `bits` lies inside the cube.
    pub fn contains(&self, bits: &[bool]) -> bool {
        self.lits
            .iter()
            .zip(bits)
            .all(|(&p, &b)| p.admits(b))
    }

    /// Same as [`Cube::contains`] with the assignment packed into an integer
    /// (bit `j` is input `j`).
    pub fn contains_index(&self, x: u64) -> bool {
        self.lits
            .iter()
            .enumerate()
            .all(|(j, &p)| p.admits(x >> j & 1 == 1))
    }

    /// Intersection of two cubes, `None` when some position conflicts.
    pub fn intersect(&self, other: &Cube) -> Option<Cube> {
        assert_eq!(self.len(), other.len(), "cube width mismatch");
        let mut lits = Vec::with_capacity(self.len());
        for (&a, &b) in self.lits.iter().zip(&other.lits) {
            let p = match (a, b) {
                (Polarity::DontCare, q) | (q, Polarity::DontCare) => q,
                (a, b) if a == b => a,
                _ => return None,
            };
            lits.push(p);
        }
        Some(Cube { lits })
    }

    pub fn overlaps(&self, other: &Cube) -> bool {
        self.lits.iter().zip(&other.lits).all(|(&a, &b)| {
            a == Polarity::DontCare || b == Polarity::DontCare || a == b
        })
    }

    /// Disjoint sharp: pairwise-disjoint cubes covering `self ∖ other`.
    ///
    /// Positions where `other` has a literal and `self` is don't-care are
    /// peeled in ascending index order; the k-th emitted cube takes the
    /// complement literal at the k-th such position and agrees with `other`
    /// on all earlier ones.
    pub fn sharp(&self, other: &Cube) -> Vec<Cube> {
        assert_eq!(self.len(), other.len(), "cube width mismatch");
        if !self.overlaps(other) {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut rest = self.clone();
        for j in 0..self.len() {
            let (a, b) = (self.lits[j], other.lits[j]);
            if a == Polarity::DontCare && b != Polarity::DontCare {
                let mut piece = rest.clone();
                piece.lits[j] = if b == Polarity::One {
                    Polarity::Zero
                } else {
                    Polarity::One
                };
                out.push(piece);
                rest.lits[j] = b;
            }
        }
        out
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.lits {
            write!(f, "{}", p.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube({self})")
    }
}

/// Error for a malformed cube string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("illegal cube character {0:?}")]
pub struct CubeParseError(pub char);

impl FromStr for Cube {
    type Err = CubeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| Polarity::from_char(c).ok_or(CubeParseError(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Cube::new)
    }
}

/// A set of output indices (0-based), stored as a bitset.
///
/// Trailing zero words are trimmed so equal sets compare equal regardless
/// of how they were built. Ordering is lexicographic on the ascending index
/// list, so `{} < {0} < {0,2} < {1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct OutputSet {
    words: Vec<u64>,
}

impl OutputSet {
    pub fn new() -> Self {
        OutputSet::default()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = OutputSet::new();
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `m` bits of a mask.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = OutputSet { words: vec![mask] };
        s.trim();
        s
    }

    /// The set as a mask, `None` if it contains an index ≥ 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &OutputSet) -> OutputSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|k| self.words.get(k).unwrap_or(&0) | other.words.get(k).unwrap_or(&0))
            .collect();
        OutputSet { words }
    }

    /// Largest contained index plus one (0 for the empty set).
    pub fn width(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b)
        })
    }

    /// The output-plane bit string over `m` outputs, e.g. `"101"`.
    pub fn to_bits(&self, m: usize) -> String {
        (0..m)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

impl Ord for OutputSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for OutputSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for OutputSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cube {
        s.parse().unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(c("11--1").intersect(&c("1--0-")), Some(c("11-01")));
        assert_eq!(c("1----").intersect(&c("0----")), None);
        assert_eq!(c("1-0-1").intersect(&Cube::universe(5)), Some(c("1-0-1")));
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(c("1--0-").sharp(&c("11--1")), vec![c("10-0-"), c("11-00")]);
        assert_eq!(c("11--1").sharp(&c("1--0-")), vec![c("11-11")]);
        assert!(c("10-1-").sharp(&c("10-1-")).is_empty());
        // disjoint operands leave the left cube untouched
        assert_eq!(c("0----").sharp(&c("1----")), vec![c("0----")]);
    }

    #[test]
    fn weight_and_on_count() {
        let x = c("1--0-");
        assert_eq!(x.weight(), 2);
        assert_eq!(x.on_count(), BigUint::from(8u32));
        assert_eq!(x.dont_cares(), vec![1, 2, 4]);
    }

    #[test]
    fn output_set_order_is_lexicographic() {
        let e = OutputSet::new();
        let a = OutputSet::from_indices([0]);
        let ac = OutputSet::from_indices([0, 2]);
        let b = OutputSet::from_indices([1]);
        let mut v = vec![b.clone(), ac.clone(), e.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![e, a, ac, b]);
    }

    #[test]
    fn output_set_trims() {
        let mut s = OutputSet::from_indices([70]);
        assert_eq!(s.width(), 71);
        assert_eq!(s.to_mask(), None);
        s = s.union(&OutputSet::from_mask(0b101));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 70]);
        assert_eq!(OutputSet::from_mask(0), OutputSet::new());
        assert_eq!(OutputSet::from_mask(0b10).to_bits(3), "010");
    }
}
