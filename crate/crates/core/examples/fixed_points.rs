//! Fixed-point sets of finite groups acting on DR complexes.

use drtoolkit::builders::action_corpus;
use drtoolkit::diagram::FillBounds;
use drtoolkit::homotopy::contractibility_verdict;

fn main() {
    let bounds = FillBounds::default();
    for (name, a) in action_corpus() {
        let inversions = a.has_inversions();
        let a = if inversions.is_empty() { a } else { a.remove_inversions().unwrap().0 };
        let fixed = a.fixed_set().unwrap();
        let verdict = contractibility_verdict(&fixed, &bounds).verdict;
        let v = a.find_fixed_point(&bounds).unwrap();
        let model = a.verify_classifying_model(24, &bounds).unwrap();
        println!(
            "{name:<22} order {:<2} subdivided {:<5} fixed cells {:<3} {verdict:<16} fixed vertex {v:<6} model checks {}/{}",
            a.order(),
            !inversions.is_empty(),
            fixed.cells().len(),
            model.checks.iter().filter(|c| c.passes()).count(),
            model.checks.len(),
        );
    }
}
