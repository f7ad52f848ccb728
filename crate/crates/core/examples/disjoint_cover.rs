//! Makes a cover disjoint, then regroups it by output pattern.

use revembed::dsop::{post_compact, DsopRun};
use revembed::pla::{parse_pla, write_pla};

fn main() -> anyhow::Result<()> {
    let pla = parse_pla(include_str!("../fixtures/running_example.pla"))?;

    // Step through the sharp-based extraction to watch the pending cubes shrink.
    let mut run = DsopRun::new(&pla);
    let mut steps = 0;
    while let Some(step) = run.step() {
        steps += 1;
        println!("step {steps}: {step:?} (pending minterm measure {})", run.pending_measure());
    }
    let disjoint = run.finish();
    println!("\n{} disjoint cubes:\n{}", disjoint.len(), write_pla(&disjoint));

    let compact = post_compact(&disjoint)?;
    println!("{} cubes after compaction:\n{}", compact.len(), write_pla(&compact));
    Ok(())
}
