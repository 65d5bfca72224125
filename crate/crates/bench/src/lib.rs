//! Benchmark fixtures: strategies and bounds shared by the criterion benches.

use obsgame::pcf::denote_source;
use obsgame::{Bounds, Strategy};

pub const ADD_LR: &str = "fun x: nat -> fun y: nat -> x + y";
pub const ADD_RL: &str = "#pragma plus_rl\nfun x: nat -> fun y: nat -> x + y";
pub const PROJ_L: &str = "fun x: nat -> fun y: nat -> x";
pub const ID_REC: &str = "fix (fun f: nat -> nat -> fun n: nat -> ifz n then 0 else succ (f (pred n)))";

/// Denotes a PCF source that is known to typecheck.
pub fn term(src: &str, bounds: &Bounds) -> Strategy {
    denote_source(src, bounds).expect("fixture terms typecheck").2
}

pub fn bounds(max_nat: u32, max_play_len: usize) -> Bounds {
    Bounds::new(max_nat, max_play_len, 6, 3).expect("positive bounds")
}
