use vardec_testkit::suites::{self, Suite};

const CASES: u32 = 100;

fn check(name: &str) {
    let Suite { run, .. } = suites::find(name).unwrap_or_else(|| panic!("no suite {name}"));
    if let Err(e) = run(CASES) {
        panic!("{name}: {e}");
    }
}

macro_rules! suite_tests {
    ($($test:ident => $name:literal),* $(,)?) => {
        $(#[test] fn $test() { check($name); })*

        #[test]
        fn every_suite_has_a_test() {
            let listed = [$($name),*];
            for s in suites::ALL {
                assert!(listed.contains(&s.name), "suite {} has no test", s.name);
            }
        }
    };
}

suite_tests! {
    rank_nullity => "rank-nullity",
    zassenhaus => "zassenhaus",
    double_complement => "double-complement",
    sat_vs_oracle => "sat-vs-oracle",
    small_model_bits => "small-model-bits",
    predicate_convexity => "predicate-convexity",
    three_way_convexity => "three-way-convexity",
    nelson_oppen => "nelson-oppen",
    fixed_vars_monotone => "fixed-vars-monotone",
    fixed_vars_equalities => "fixed-vars-equalities",
    pi_complex_stability => "pi-complex-stability",
    union_lemma => "union-lemma",
    binary_reduction => "binary-reduction",
    meet_laws => "meet-laws",
    disjunct_exclusivity => "disjunct-exclusivity",
    compute_d => "compute-d",
    cover_entailed => "cover-entailed",
    recursion_depth => "recursion-depth",
    dependency_equality => "dependency-equality",
    two_sided => "two-sided",
    reduction_coherence => "reduction-coherence",
    negation_closure => "negation-closure",
    heuristics_agree => "heuristics-agree",
    skip_agree => "skip-agree",
    certificates => "certificates",
    cube_containment => "cube-containment",
}
