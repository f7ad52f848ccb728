//! Builds an embedding with the minimum number of garbage lines and exports
//! its specified plane.

use revembed::dsop::dsop;
use revembed::embed::{embed_exact, summary_json, to_extended_pla, verify_pla, GarbageBinding};
use revembed::pla::{parse_pla, write_pla};

fn main() -> anyhow::Result<()> {
    let pla = parse_pla(include_str!("../fixtures/underapprox.pla"))?;
    let mut rc = embed_exact(&dsop(&pla), GarbageBinding::Offset)?;

    println!("n = {}, m = {}, constants = {}, garbage = {}, lines = {}", rc.inputs(), rc.outputs(), rc.constants(), rc.garbage(), rc.lines());
    for u in rc.counter_updates() {
        println!("pattern {:?}: counter {} -> {}", u.outputs, u.before, u.after);
    }

    let report = verify_pla(&mut rc, &pla)?;
    println!("{}", serde_json::to_string_pretty(&summary_json(&rc, Some(&report)))?);
    print!("{}", write_pla(&to_extended_pla(&mut rc)?));
    Ok(())
}
