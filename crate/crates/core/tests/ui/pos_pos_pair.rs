use inet_core::systems::arith::int;
use inet_core::systems::ActivePair;

fn main() {
    let _ = ActivePair::new(int(0), int(1));
}
