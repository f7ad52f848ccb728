//! Node counts of random permutations under interleaved and blocked variable orders.

use revembed::embed::compare_orderings;

fn main() -> anyhow::Result<()> {
    let k = std::env::args().nth(1).map_or(Ok(6), |s| s.parse())?;
    let samples = compare_orderings(k, 20, 1)?;
    let wins = samples.iter().filter(|s| s.interleaved <= s.blocked).count();
    for s in &samples {
        println!("{:>6} {:>6}", s.interleaved, s.blocked);
    }
    println!("interleaved no larger on {wins}/{}", samples.len());
    Ok(())
}
