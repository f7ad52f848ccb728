//! Symbolic and pointwise checks agree, including on a binding that is not injective.

use revembed::dsop::dsop;
use revembed::embed::{embed_exact, verify_pla, GarbageBinding};
use revembed::oracle::{brute_verify, TruthTable};
use revembed::pla::parse_pla;

fn main() -> anyhow::Result<()> {
    let pla = parse_pla(include_str!("../fixtures/underapprox.pla"))?;
    let table = TruthTable::from_pla(&pla)?;
    for binding in [GarbageBinding::Offset, GarbageBinding::Literal] {
        let mut rc = embed_exact(&dsop(&pla), binding)?;
        let symbolic = verify_pla(&mut rc, &pla)?;
        let brute = brute_verify(&rc, Some(&table))?;
        println!("{binding:?}");
        println!("  symbolic: {symbolic:?}");
        println!("  brute:    {brute:?}");
    }
    Ok(())
}
