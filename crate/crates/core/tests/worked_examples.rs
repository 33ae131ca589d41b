use std::time::Instant;

mod common;

use common::listings::{check_translation, fixture, translated, LISTINGS};

use fool::logic::{alpha_equal, Problem, Role};
use fool::tptp::{
    parse_problem, parse_problem_with, print_problem, Dialect, ParseOptions, PrintOptions,
};
use fool::translate::{check_first_order, translate_problem, BoolSemantics, TranslateOptions};

fn printed(p: &Problem) -> String {
    print_problem(p, PrintOptions { show_fool: false })
}

#[test]
fn every_listing_parses_translates_and_prints() {
    let start = Instant::now();
    for name in LISTINGS {
        let p = fixture(name);
        let text = printed(&p);
        let again = parse_problem(&text).unwrap_or_else(|e| panic!("{name} reprint: {e}"));
        assert_eq!(printed(&again), text, "{name}");
        for mode in [
            BoolSemantics::Axiomatized,
            BoolSemantics::ParamodulationReady,
        ] {
            let opts = TranslateOptions {
                mode,
                theory_axioms: true,
            };
            let (t, _) = translate_problem(&p, opts).unwrap();
            for u in t.formulas() {
                check_first_order(u.as_formula().unwrap())
                    .unwrap_or_else(|m| panic!("{name}/{}: {m}", u.name));
            }
            let out = printed(&t);
            assert!(!out.contains("$ite") && !out.contains("$let"), "{name}");
            let strict = ParseOptions {
                dialect: Dialect::StrictTff0,
                ..ParseOptions::default()
            };
            let shown = print_problem(&t, PrintOptions { show_fool: true });
            parse_problem_with(&shown, &strict)
                .unwrap_or_else(|e| panic!("{name} strict reparse: {e}\n{shown}"));
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn impl_definition() {
    let p = fixture("impl.p");
    assert!(p.signature.lookup("impl").is_some());
    check_translation("impl.p").unwrap();
}

#[test]
fn formula_arguments_are_named() {
    check_translation("partial_function.p").unwrap();
}

#[test]
fn max_ite_gets_two_guarded_definitions() {
    check_translation("max_definition.p").unwrap();
}

#[test]
fn boolean_ite_uses_equivalence() {
    check_translation("max_property.p").unwrap();
}

#[test]
fn let_function_is_named_after_its_body_ite() {
    // The binding body's own `$ite` is named first.
    check_translation("let_array_function.p").unwrap();
}

#[test]
fn simultaneous_let_becomes_f_of_two_fresh_constants() {
    check_translation("let_swap.p").unwrap();
}

#[test]
fn let_over_store_names_the_updated_array() {
    check_translation("let_array_store.p").unwrap();
    let t = translated(&fixture("let_array_store.p"));
    for suffix in ["read_write", "read_other", "extensionality"] {
        assert!(
            t.formulas().any(|u| u.name.ends_with(suffix)),
            "missing {suffix}"
        );
    }
}

#[test]
fn nested_let_variants_agree() {
    let legacy = fixture("nested_let_legacy.p");
    let unified = fixture("nested_let_unified.p");
    let f = |p: &Problem| p.unit("let_binders").unwrap().as_formula().unwrap().clone();
    assert!(alpha_equal(&f(&legacy), &f(&unified)));
    assert_eq!(
        printed(&translated(&legacy)),
        printed(&translated(&unified))
    );
}

#[test]
fn nested_let_translation() {
    check_translation("nested_let_unified.p").unwrap();
}

#[test]
fn knights_and_xor_shapes() {
    let k = fixture("knights.p");
    assert_eq!(k.formulas().count(), 5);
    assert!(k.formulas().all(|u| u.role != Role::Conjecture));
    let x = fixture("xor.p");
    assert_eq!(
        x.unit("known_plaintext_attack").unwrap().role,
        Role::Conjecture
    );
    let t = translated(&x);
    assert!(t.formulas().any(|u| u.name.ends_with("extensionality")));
}

#[test]
fn verification_problem_roles() {
    let max = fixture("max_vc.p");
    assert_eq!(
        max.unit("transition_relation").unwrap().role,
        Role::Hypothesis
    );
    assert_eq!(max.unit("safety_property").unwrap().role, Role::Conjecture);
    let partition = fixture("partition_vc.p");
    assert_eq!(
        partition.unit("invariant_property").unwrap().role,
        Role::Hypothesis
    );
    assert_eq!(
        partition.unit("safety_property").unwrap().role,
        Role::Conjecture
    );
}
