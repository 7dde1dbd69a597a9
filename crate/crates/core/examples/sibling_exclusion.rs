// A loud bell is a bell, and so is a soft bell. Ringing a loud bell explains
// hearing a bell but not hearing a soft one.

use causal_explain::fixtures::sibling_bells;
use causal_explain::generate::generate;

pub fn main() {
    for a in generate(&sibling_bells()) {
        println!(
            "{} explains {} if {} is possible",
            a.from, a.to, a.conditions
        );
    }
}
