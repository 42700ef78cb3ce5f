use inet_core::new_name;
use inet_core::systems::arith::is_even_agent;
use inet_core::systems::boolean::t;
use inet_core::systems::ActivePair;

fn main() {
    let (_p, r) = new_name();
    let _ = ActivePair::new(t(), is_even_agent(r));
}
