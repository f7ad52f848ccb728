//! Parametric benchmark functions and their Bennett embeddings.

use revembed::benchgen::{redundancy, restricted_growth};
use revembed::embed::{embed_bennett, verify};

fn main() -> anyhow::Result<()> {
    for (p, q) in [(3, 3), (5, 5), (8, 4)] {
        let g = redundancy(p, q)?;
        println!("redundancy({p},{q}): {} inputs, {} nodes", g.input_count(), g.mgr.node_count(g.f)?);
    }
    for p in [4, 8, 12] {
        let g = restricted_growth(p)?;
        let count = g.mgr.sat_count(g.f, g.input_count())?;
        let mut rc = embed_bennett(&g.mgr, &[g.f], &g.inputs)?;
        let ok = verify(&mut rc, &g.mgr, &[g.f], &g.inputs)?.passes(true);
        println!("rgs({p}): {} inputs, {count} sequences, embedding {} nodes, verified {ok}", g.input_count(), rc.node_count());
    }
    Ok(())
}
