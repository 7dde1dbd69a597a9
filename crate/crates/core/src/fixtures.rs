//! Reference theories used by the tests, examples and benchmarks.

use crate::theory::Theory;

/// The generic diagram: eight causal atoms and twelve IS-A links over
/// fifteen symbols, with four optimal explanations from `alpha` to `delta`.
pub fn generic_diagram() -> Theory {
    let mut t = Theory::default();
    diagram_into(&mut t, "");
    t
}

fn diagram_into(t: &mut Theory, suffix: &str) {
    let n = |s: &str| format!("{s}{suffix}");
    for (c, e) in [
        ("alpha", "beta"),
        ("alpha", "beta0"),
        ("beta2", "gamma"),
        ("beta1", "gamma"),
        ("beta3", "epsilon"),
        ("gamma1", "delta"),
        ("gamma3", "delta"),
        ("epsilon3", "gamma3"),
    ] {
        t.add_cause(&n(c), &n(e));
    }
    for (s, p) in [
        ("beta", "beta2"),
        ("beta1", "beta"),
        ("beta3", "beta0"),
        ("beta3", "beta1"),
        ("gamma1", "gamma"),
        ("gamma2", "gamma"),
        ("gamma2", "gamma3"),
        ("gamma2", "epsilon"),
        ("epsilon1", "epsilon"),
        ("epsilon2", "epsilon"),
        ("epsilon1", "epsilon3"),
        ("epsilon2", "epsilon3"),
    ] {
        t.add_ont(&n(s), &n(p));
    }
}

/// Four causal and three IS-A atoms where `{alpha,beta2}` is strictly
/// stronger than `{alpha,beta1}` as a reason for `gamma`.
pub fn pruning_example() -> Theory {
    let mut t = Theory::default();
    t.add_cause("alpha", "beta")
        .add_cause("alpha", "beta0")
        .add_cause("beta2", "gamma")
        .add_cause("beta1", "gamma")
        .add_ont("beta2", "beta0")
        .add_ont("beta1", "beta")
        .add_ont("beta2", "beta1");
    t
}

/// `x` causes a loud bell; loud and soft bells are both bells.
pub fn sibling_bells() -> Theory {
    let mut t = Theory::default();
    t.add_cause("x", "loud_bell")
        .add_ont("loud_bell", "bell")
        .add_ont("soft_bell", "bell");
    t
}

/// Two copies of the generic diagram (suffixes `_a` and `_b`) joined by a
/// bridge of `layers` by `width` relay symbols. `delta_a` feeds the first
/// layer and the last layer feeds `alpha_b`. Inside the bridge every relay
/// causes two relays of the next layer, and even relays are kinds of their
/// odd neighbour.
pub fn linked_diagrams(layers: usize, width: usize) -> Theory {
    let mut t = Theory::default();
    diagram_into(&mut t, "_a");
    diagram_into(&mut t, "_b");
    let relay = |l: usize, i: usize| format!("relay{l}_{i}");
    for l in 0..layers {
        for i in 0..width {
            if l + 1 < layers {
                t.add_cause(&relay(l, i), &relay(l + 1, i));
                t.add_cause(&relay(l, i), &relay(l + 1, (i + 1) % width));
            }
            if i % 2 == 0 && i + 1 < width {
                t.add_ont(&relay(l, i), &relay(l, i + 1));
            }
        }
    }
    for i in 0..width {
        if i % 2 == 1 {
            t.add_cause("delta_a", &relay(0, i));
        }
        if layers > 0 {
            t.add_cause(&relay(layers - 1, i), "alpha_b");
        }
    }
    t
}

/// The large reference theory: 102 symbols.
pub fn big_example() -> Theory {
    linked_diagrams(4, 18)
}
