//! Prints the mirror map `t^1(x)` and both genus-one potentials.
//!
//! `cargo run --release --example potential -- "1,1,1,1,2|6" 3`

use evsc_core::{Session, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let space = SpaceSpec::parse(&args.next().unwrap_or_else(|| "1,1,1,2|4".into()))?;
    let order: usize = args.next().map_or(Ok(2), |s| s.parse())?;
    let s = Session::new(space);
    let maps = s.mirror_maps(order)?;
    println!("t^1 = {:?}", maps.t[1]);
    println!("x^1 = {:?}", maps.x[1]);
    println!("F1B = {:?}", s.f1b_series(order)?);
    println!("F1A = {:?}", s.f1a_series(order)?);
    Ok(())
}
