use std::path::PathBuf;

use fool::logic::Expr;
use fool::oracle::{equisatisfiable_check, evaluate, satisfiable_within, OracleConfig, Verdict};
use fool::tptp::{parse_file, parse_problem, ParseOptions};
use fool::translate::{translate_problem, BoolSemantics, TranslateOptions};

fn fixture(name: &str) -> fool::logic::Problem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    parse_file(&path, &ParseOptions::default()).unwrap()
}

fn axiomatized() -> TranslateOptions {
    TranslateOptions {
        mode: BoolSemantics::Axiomatized,
        theory_axioms: true,
    }
}

#[test]
fn knights_translation_has_the_intended_model() {
    let p = fixture("knights.p");
    let (t, _) = translate_problem(&p, axiomatized()).unwrap();
    let Verdict::Sat(m) = satisfiable_within(&t, 2, &OracleConfig::default()).unwrap() else {
        panic!("translated knights problem has no model");
    };
    let atom = |pred: &str, who: &str| {
        let s = |n: &str| t.signature.lookup(n).unwrap().clone();
        Expr::app(s(pred), vec![Expr::constant(s(who))])
    };
    assert_eq!(evaluate(&atom("knight", "zoey"), &m, &[]), Ok(1));
    assert_eq!(evaluate(&atom("knave", "mel"), &m, &[]), Ok(1));
    assert!(equisatisfiable_check(&p, &t, 2, &OracleConfig::default()).unwrap());
}

#[test]
fn max_program_translation_agrees() {
    let p = fixture("max_vc_ordered.p");
    let (t, _) = translate_problem(&p, axiomatized()).unwrap();
    let cfg = OracleConfig::default();
    assert!(!satisfiable_within(&p, 1, &cfg).unwrap().is_sat());
    assert!(!satisfiable_within(&t, 1, &cfg).unwrap().is_sat());
}

#[test]
fn max_definitions_agree() {
    let src = "tff(max, type, max: ($int * $int) > $int).
               tff(max_definition, axiom,
                   ![X:$int, Y:$int]: (max(X,Y) = $ite($greatereq(X,Y),X,Y))).
               tff(max_property, conjecture,
                   ![X:$int, Y:$int]: $ite(max(X,Y) = X, $greatereq(X,Y), $greatereq(Y,X))).";
    let p = parse_problem(src).unwrap();
    let (t, _) = translate_problem(&p, axiomatized()).unwrap();
    let cfg = OracleConfig {
        int_range: (-1, 1),
        ..OracleConfig::default()
    };
    assert!(!satisfiable_within(&p, 1, &cfg).unwrap().is_sat());
    assert!(equisatisfiable_check(&p, &t, 1, &cfg).unwrap());
}
