use inet_core::new_name;
use inet_core::systems::boolean::{BoolNeg, BoolTy};
use inet_core::Agent;

fn main() {
    let (_p, r) = new_name::<BoolTy>();
    let _: Agent<BoolTy, _> = Agent::sym(BoolNeg::And(r));
}
