//! The Bennett-style embedding y ⊕ f(x) built straight from BDDs.

use revembed::bdd::Manager;
use revembed::embed::{embed_bennett, verify};

fn main() -> anyhow::Result<()> {
    // Majority of three inputs, plus their parity.
    let (mut mgr, xs) = Manager::with_vars(["a", "b", "c"]);
    let [a, b, c] = [mgr.var(xs[0])?, mgr.var(xs[1])?, mgr.var(xs[2])?];
    let ab = mgr.and(a, b)?;
    let ac = mgr.and(a, c)?;
    let bc = mgr.and(b, c)?;
    let maj = mgr.or_all([ab, ac, bc])?;
    let ab_x = mgr.xor(a, b)?;
    let par = mgr.xor(ab_x, c)?;

    let mut rc = embed_bennett(&mgr, &[maj, par], &xs)?;
    let report = verify(&mut rc, &mgr, &[maj, par], &xs)?;
    println!("{} lines, {} nodes", rc.lines(), rc.node_count());
    println!("{report:?}");
    assert!(report.passes(true));
    Ok(())
}
