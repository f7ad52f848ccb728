//! Scalable single-output benchmark functions built directly as BDDs.

use std::collections::HashMap;

use crate::bdd::{self, Func, Manager, VarId};

/// A generated function together with the manager that owns it.
#[derive(Debug)]
pub struct Generated {
    pub mgr: Manager,
    pub f: Func,
    /// Inputs in level order.
    pub inputs: Vec<VarId>,
}

impl Generated {
    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }
}

/// 2-level redundancy function `⋀_{j=1}^{q} ⋁_{i=1}^{p} x_i ∧ y_ij`: the rows
/// of the `p × q` matrix `Y` selected by `x` cover every column.
///
/// Variables are `x_1..x_p` followed by `Y` in column-major order
/// (`y_11, y_21, …, y_p1, y_12, …`), `p + pq` in total.
pub fn redundancy(p: usize, q: usize) -> bdd::Result<Generated> {
    assert!(p >= 1 && q >= 1, "matrix needs at least one row and column");
    let mut mgr = Manager::new();
    let xs: Vec<VarId> = (1..=p).map(|i| mgr.new_var(format!("x{i}"))).collect();
    let mut ys = Vec::with_capacity(p * q);
    for j in 1..=q {
        for i in 1..=p {
            ys.push(mgr.new_var(format!("y{i}_{j}")));
        }
    }
    let mut f = mgr.one();
    for j in (0..q).rev() {
        let mut col = mgr.zero();
        for i in (0..p).rev() {
            let x = mgr.var(xs[i])?;
            let y = mgr.var(ys[j * p + i])?;
            let t = mgr.and(x, y)?;
            col = mgr.or(t, col)?;
        }
        f = mgr.and(col, f)?;
    }
    let inputs = xs.into_iter().chain(ys).collect();
    Ok(Generated { mgr, f, inputs })
}

/// Indicator of restricted growth sequences `a_1..a_p` with `a_1 = 0` and
/// `a_{j+1} ≤ 1 + max(a_1..a_j)`.
///
/// Position `j` (1-based) is one-hot encoded with `j` variables `a{j}_0..`;
/// `p(p+1)/2` inputs in total, position-major order.
pub fn restricted_growth(p: usize) -> bdd::Result<Generated> {
    assert!(p >= 1, "sequence needs at least one position");
    let mut mgr = Manager::new();
    let mut bits: Vec<Vec<VarId>> = Vec::with_capacity(p);
    for j in 1..=p {
        bits.push((0..j).map(|v| mgr.new_var(format!("a{j}_{v}"))).collect());
    }
    // hot[j][v]: position j holds exactly value v
    let mut hot: Vec<Vec<Func>> = Vec::with_capacity(p);
    for pos in &bits {
        let mut row = Vec::with_capacity(pos.len());
        for v in 0..pos.len() {
            let mut c = mgr.one();
            for (u, &b) in pos.iter().enumerate().rev() {
                let lit = mgr.literal(b, u == v)?;
                c = mgr.and(lit, c)?;
            }
            row.push(c);
        }
        hot.push(row);
    }
    // rest(j, max): positions j.. are valid given the maximum so far;
    // filled from the last position up so each lookup is already present
    let mut rest: HashMap<(usize, usize), Func> = HashMap::new();
    for j in (1..p).rev() {
        for max in 0..j {
            let mut acc = mgr.zero();
            for v in 0..=max + 1 {
                let tail = if j + 1 < p { rest[&(j + 1, max.max(v))] } else { mgr.one() };
                let t = mgr.and(hot[j][v], tail)?;
                acc = mgr.or(acc, t)?;
            }
            rest.insert((j, max), acc);
        }
    }
    let tail = if p > 1 { rest[&(1, 0)] } else { mgr.one() };
    let f = mgr.and(hot[0][0], tail)?;
    let inputs = bits.into_iter().flatten().collect();
    Ok(Generated { mgr, f, inputs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn eval(g: &Generated, a: u64) -> bool {
        let bits: Vec<bool> = (0..g.inputs.len()).map(|j| a >> j & 1 == 1).collect();
        g.mgr.eval(g.f, &bits).unwrap()
    }

    #[test]
    fn redundancy_supports() {
        for (p, q, n) in [(5, 5, 30), (6, 6, 42), (7, 7, 56), (1, 1, 2)] {
            let g = redundancy(p, q).unwrap();
            assert_eq!(g.mgr.support(g.f).unwrap().len(), n);
        }
    }

    #[test]
    fn redundancy_one_by_one_is_and() {
        let g = redundancy(1, 1).unwrap();
        let truth: Vec<bool> = (0..4).map(|a| eval(&g, a)).collect();
        assert_eq!(truth, [false, false, false, true]);
    }

    #[test]
    fn redundancy_matches_matrix_cover() {
        for (p, q) in [(2, 2), (2, 3), (3, 2)] {
            let g = redundancy(p, q).unwrap();
            let n = p + p * q;
            for a in 0..1u64 << n {
                let x = |i: usize| a >> i & 1 == 1;
                let y = |i: usize, j: usize| a >> (p + j * p + i) & 1 == 1;
                let covered = (0..q).all(|j| (0..p).any(|i| x(i) && y(i, j)));
                assert_eq!(eval(&g, a), covered, "p={p} q={q} a={a:b}");
            }
        }
    }

    #[test]
    fn redundancy_is_monotone() {
        let g = redundancy(2, 3).unwrap();
        let n = g.inputs.len();
        for a in 0..1u64 << n {
            if eval(&g, a) {
                for j in 0..n {
                    assert!(eval(&g, a | 1 << j));
                }
            }
        }
    }

    #[test]
    fn restricted_growth_single_position() {
        let g = restricted_growth(1).unwrap();
        assert_eq!(g.inputs.len(), 1);
        let truth: Vec<bool> = (0..2).map(|a| eval(&g, a)).collect();
        assert_eq!(truth, [false, true]);
    }

    #[test]
    fn restricted_growth_supports_and_counts() {
        let bell = [1u32, 2, 5, 15, 52, 203, 877];
        for p in 1..=7 {
            let g = restricted_growth(p).unwrap();
            let n = p * (p + 1) / 2;
            assert_eq!(g.inputs.len(), n);
            assert_eq!(g.mgr.sat_count(g.f, n).unwrap(), BigUint::from(bell[p - 1]), "p={p}");
        }
        for (p, n) in [(10, 55), (15, 120)] {
            let g = restricted_growth(p).unwrap();
            assert_eq!(g.mgr.support(g.f).unwrap().len(), n);
        }
    }

    #[test]
    fn restricted_growth_accepts_exactly_valid_sequences() {
        let p = 4;
        let g = restricted_growth(p).unwrap();
        let n = g.inputs.len();
        for a in 0..1u64 << n {
            // decode one-hot positions
            let mut off = 0;
            let mut seq = Vec::new();
            for j in 1..=p {
                let field = (a >> off) & ((1 << j) - 1);
                off += j;
                seq.push((field.count_ones() == 1).then(|| field.trailing_zeros() as usize));
            }
            let valid = seq.iter().all(Option::is_some) && {
                let s: Vec<usize> = seq.iter().map(|v| v.unwrap()).collect();
                s[0] == 0 && (1..p).all(|j| s[j] <= 1 + s[..j].iter().max().unwrap())
            };
            assert_eq!(eval(&g, a), valid, "{a:b}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn redundancy_support_is_p_plus_pq(p in 1usize..5, q in 1usize..5) {
            let g = redundancy(p, q).unwrap();
            prop_assert_eq!(g.mgr.support(g.f).unwrap().len(), p + p * q);
        }
    }
}
