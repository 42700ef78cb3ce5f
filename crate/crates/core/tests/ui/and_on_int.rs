use inet_core::new_name;
use inet_core::systems::arith::int;
use inet_core::systems::boolean::{and, BoolTy};

fn main() {
    let (_out, r) = new_name::<BoolTy>();
    let _ = and(r, int(0));
}
