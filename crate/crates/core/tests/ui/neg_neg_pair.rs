use inet_core::new_name;
use inet_core::systems::arith::{is_even_agent, IntTy};
use inet_core::systems::ActivePair;

fn main() {
    let (_p, r1) = new_name();
    let (_q, r2) = new_name();
    let _ = ActivePair::new::<IntTy>(is_even_agent(r1), is_even_agent(r2));
}
