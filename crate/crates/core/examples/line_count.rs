//! Additional lines needed for a PLA, by heuristic, exact cube and exact BDD counting.

use revembed::dsop::dsop;
use revembed::lines::{exact_mu_bdd_pla, exact_mu_cube, heuristic_mu};
use revembed::pla::parse_pla;

fn main() -> anyhow::Result<()> {
    let pla = parse_pla(include_str!("../fixtures/running_example.pla"))?;
    let disjoint = dsop(&pla);

    for rep in [heuristic_mu(&disjoint)?, exact_mu_cube(&disjoint)?, exact_mu_bdd_pla(&pla)?] {
        println!("{:<11} mu = {:>2}  ell = {}  lines = {}", rep.method.to_string(), rep.mu, rep.ell, rep.total_lines);
        for (bits, count) in rep.by_bits() {
            println!("    {bits}: {count}");
        }
    }
    Ok(())
}
