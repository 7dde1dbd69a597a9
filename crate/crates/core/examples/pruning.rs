// Generation finds two reasons for `gamma`; optimization keeps the weaker one.

use causal_explain::closure::ClosureRelations;
use causal_explain::fixtures::pruning_example;
use causal_explain::generate::generate;
use causal_explain::optimize::optimize;
use causal_explain::sym;

pub fn main() {
    let t = pruning_example();
    let c = ClosureRelations::compute(&t);
    let generated = generate(&t);
    let optimal = optimize(&generated, &c.impco);
    for a in generated
        .iter()
        .filter(|a| a.from == sym("alpha") && a.to == sym("gamma"))
    {
        let kept = optimal.iter().any(|o| o.key() == a.key());
        println!("{} {}", a.conditions, if kept { "kept" } else { "dropped" });
    }
}
