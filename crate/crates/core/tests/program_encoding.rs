use std::path::PathBuf;

mod common;

use common::programs::{final_tuple, generator};
use fool::logic::{alpha_equal, Expr, Sort, Symbol};
use fool::program::{
    check_restricted_form, emit_vc, encode_restricted, encode_tuples, evaluate_foolp,
    interpret_program, parse_program, program_size, tuple_variables, vc_from_text, BinOp, PExpr,
    Program, ProgramError, ProgramFile, ProgramState, UnOp, Value,
};
use fool::prover::{prove, ProveOptions, SzsStatus};
use fool::tptp::{parse_problem, print_problem, PrintOptions};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn printed(p: &fool::logic::Problem) -> String {
    print_problem(p, PrintOptions { show_fool: false })
}

#[test]
fn max_program_vc_matches_the_listing() {
    let vc = vc_from_text(&fixture("max_program.w"), &fixture("max_program_spec.p")).unwrap();
    let listing = parse_problem(&fixture("max_vc.p")).unwrap();
    assert_eq!(printed(&vc), printed(&listing));
    let names: Vec<_> = vc.units.iter().map(|u| u.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "x",
            "y",
            "max",
            "res",
            "res1",
            "transition_relation",
            "safety_property"
        ]
    );
}

#[test]
fn max_program_restricted_encoding_is_the_hypothesis_rhs() {
    let prog = parse_program(&fixture("max_program.w")).unwrap();
    let listing = parse_problem(&fixture("max_vc.p")).unwrap();
    let hyp = listing.unit("transition_relation").unwrap();
    let Some(Expr::Eq(_, rhs)) = hyp.as_formula() else {
        panic!("hypothesis is not an equation")
    };
    assert!(alpha_equal(&encode_restricted(&prog, "res").unwrap(), rhs));
}

#[test]
fn partition_vc_matches_the_listing() {
    let vc = vc_from_text(&fixture("partition.w"), &fixture("partition_spec.p")).unwrap();
    let listing = parse_problem(&fixture("partition_vc.p")).unwrap();
    assert_eq!(printed(&vc), printed(&listing));
}

#[test]
fn swap_is_rejected_by_the_restricted_encoding() {
    let prog = parse_program(&fixture("swap.w")).unwrap();
    assert!(!check_restricted_form(&prog.body));
    assert_eq!(
        encode_restricted(&prog, "x"),
        Err(ProgramError::NotRestrictedForm)
    );
    assert!(matches!(
        vc_from_text(&fixture("swap.w"), &fixture("swap_spec.p")),
        Err(ProgramError::NotRestrictedForm)
    ));
}

#[test]
fn swap_tuple_encoding_matches_the_expected_let() {
    let prog = parse_program(&fixture("swap.w")).unwrap();
    assert_eq!(tuple_variables(&prog), ["x", "y", "t"]);
    let c = |n: &str| Expr::constant(Symbol::constant(n, Sort::Int));
    let v: Vec<Symbol> = ["x", "y", "t"]
        .iter()
        .map(|n| Symbol::constant(n, Sort::Int))
        .collect();
    let tup = |xs: [&str; 3]| Expr::Tuple(xs.iter().map(|n| c(n)).collect());
    let tlet = |val: Expr, body: Expr| Expr::TupleLet(v.clone(), Box::new(val), Box::new(body));
    let (b, a, r) = fool::logic::Builtin::arithmetic("$greater").unwrap();
    let cond = Expr::app(Symbol::builtin(b, a, r), vec![c("x"), c("y")]);
    let then = tlet(
        tup(["x", "y", "x"]),
        tlet(
            tup(["y", "y", "t"]),
            tlet(tup(["x", "t", "t"]), tup(["x", "y", "t"])),
        ),
    );
    let want = tlet(
        Expr::ite(cond, then, tup(["x", "y", "t"])),
        tup(["x", "y", "t"]),
    );
    assert!(alpha_equal(&encode_tuples(&prog).unwrap(), &want));
}

#[test]
fn swap_semantics_on_a_sample_state() {
    let prog = parse_program(&fixture("swap.w")).unwrap();
    let env: ProgramState = [("x", 7), ("y", 2), ("t", 0)]
        .into_iter()
        .map(|(n, v)| (n.to_string(), Value::Int(v)))
        .collect();
    let out = interpret_program(&prog.body, &env).unwrap();
    assert_eq!(out["x"], Value::Int(2));
    assert_eq!(out["y"], Value::Int(7));
    assert_eq!(out["t"], Value::Int(7));
    let v = evaluate_foolp(&encode_tuples(&prog).unwrap(), &env).unwrap();
    assert_eq!(
        v,
        Value::Tuple(vec![Value::Int(2), Value::Int(7), Value::Int(7)])
    );
}

#[test]
fn single_assignment_tuple_is_the_restricted_form() {
    let prog = parse_program("var x : int; x := 1;").unwrap();
    assert!(alpha_equal(
        &encode_tuples(&prog).unwrap(),
        &encode_restricted(&prog, "x").unwrap()
    ));
}

#[test]
fn trivial_program_with_true_conjecture_is_provable() {
    let vc = vc_from_text("var x : int; x := 1;", "tff(c, conjecture, $true).").unwrap();
    let out = prove(&vc, &ProveOptions::default()).unwrap();
    assert_eq!(out.status, SzsStatus::Theorem);
}

#[test]
fn emit_vc_with_several_observed_variables() {
    let prog = parse_program(&fixture("max_program.w")).unwrap();
    let spec = parse_problem(
        "tff(x, type, x: $int). tff(res1, type, res1: $int). tff(max1, type, max1: $int).
         tff(p, conjecture, $greatereq(max1, x) & $greatereq(res1, x)).",
    )
    .unwrap();
    let spec = fool::logic::Problem {
        units: spec.units.into_iter().skip(3).collect(),
        signature: spec.signature,
    };
    let vc = emit_vc(&prog, &spec, &["res".into(), "max".into()]).unwrap();
    assert!(vc.unit("transition_relation_res").is_some());
    assert!(vc.unit("transition_relation_max").is_some());
}

#[test]
fn tuple_encoding_agrees_with_the_interpreter() {
    let mut g = generator(1);
    let mut checked = 0;
    for _ in 0..200 {
        let prog = g.file(false);
        assert!(prog.body.statement_count() <= 8);
        let enc = encode_tuples(&prog).unwrap();
        let v = tuple_variables(&prog).len();
        let n = program_size(&prog.body);
        assert!(
            enc.node_count() <= 4 * v * n,
            "size {} > 4*{v}*{n} for\n{prog}",
            enc.node_count()
        );
        for _ in 0..20 {
            let s = g.state(&prog);
            let Ok(out) = interpret_program(&prog.body, &s) else {
                continue;
            };
            let got = evaluate_foolp(&enc, &s).unwrap();
            assert_eq!(
                got,
                final_tuple(&prog, &out),
                "program\n{prog}\nstate {s:?}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 3900, "only {checked} runs completed");
}

#[test]
fn restricted_and_tuple_encodings_agree() {
    let mut g = generator(2);
    for _ in 0..200 {
        let prog = g.file(true);
        assert!(check_restricted_form(&prog.body), "{prog}");
        let tuple = encode_tuples(&prog).unwrap();
        let xs = tuple_variables(&prog);
        let restricted: Vec<Expr> = xs
            .iter()
            .map(|x| encode_restricted(&prog, x).unwrap())
            .collect();
        for _ in 0..20 {
            let s = g.state(&prog);
            let Ok(all) = evaluate_foolp(&tuple, &s) else {
                continue;
            };
            let parts = match all {
                Value::Tuple(vs) => vs,
                v => vec![v],
            };
            for (i, e) in restricted.iter().enumerate() {
                assert_eq!(evaluate_foolp(e, &s).unwrap(), parts[i], "{prog}");
            }
        }
    }
}

fn pexprs(p: &Program, out: &mut Vec<PExpr>) {
    match p {
        Program::Skip => {}
        Program::Assign(x, e) => {
            if *e != PExpr::Var(x.clone()) {
                out.push(e.clone())
            }
        }
        Program::If(c, a, b) => {
            out.push(c.clone());
            pexprs(a, out);
            pexprs(b, out);
        }
        Program::Seq(a, b) => {
            pexprs(a, out);
            pexprs(b, out);
        }
    }
}

fn subterm_count(hay: &PExpr, needle: &PExpr) -> usize {
    usize::from(hay == needle)
        + match hay {
            PExpr::Int(_) | PExpr::Bool(_) | PExpr::Var(_) => 0,
            PExpr::Unary(_, a) => subterm_count(a, needle),
            PExpr::Binary(_, a, b) | PExpr::Read(a, b) => {
                subterm_count(a, needle) + subterm_count(b, needle)
            }
            PExpr::Write(a, i, v) => {
                subterm_count(a, needle) + subterm_count(i, needle) + subterm_count(v, needle)
            }
        }
}

fn count_occurrences(hay: &Expr, needle: &Expr) -> usize {
    usize::from(hay == needle)
        + hay
            .children()
            .iter()
            .map(|c| count_occurrences(c, needle))
            .sum::<usize>()
}

#[test]
fn each_program_expression_occurs_once() {
    let mut g = generator(3);
    for _ in 0..200 {
        let prog = g.file(true);
        let Some(last) = prog.body.assigned().last().cloned() else {
            continue;
        };
        let enc = encode_restricted(&prog, &last).unwrap();
        // Translate each program expression alone and count its copies.
        let mut es = Vec::new();
        pexprs(&prog.body, &mut es);
        // Leaves are variable references, which the encoding repeats.
        for e in es.into_iter().filter(|e| e.node_count() > 1) {
            let mut single = ProgramFile {
                vars: prog.vars.clone(),
                body: Program::assign("__probe", e.clone()),
            };
            single.vars.push(("__probe".into(), probe_sort(&prog, &e)));
            let Expr::Let(bs, _) = encode_restricted(&single, "__probe").unwrap() else {
                panic!()
            };
            let translated = &bs[0].body;
            let total = {
                let mut all = Vec::new();
                pexprs(&prog.body, &mut all);
                all.iter().map(|x| subterm_count(x, &e)).sum::<usize>()
            };
            assert_eq!(count_occurrences(&enc, translated), total, "{e} in\n{prog}");
        }
    }
}

fn probe_sort(prog: &ProgramFile, e: &PExpr) -> Sort {
    match e {
        PExpr::Var(x) => prog.sort_of(x).unwrap().clone(),
        PExpr::Write(..) => Sort::array(Sort::Int, Sort::Int),
        PExpr::Binary(op, ..) if !matches!(op, BinOp::Add | BinOp::Sub) => Sort::Bool,
        PExpr::Unary(UnOp::Not, _) | PExpr::Bool(_) => Sort::Bool,
        _ => Sort::Int,
    }
}

#[test]
fn overflow_is_reported_not_wrapped() {
    let prog = parse_program("var x : int; x := x + 32767;").unwrap();
    let s: ProgramState = [("x".to_string(), Value::Int(1))].into_iter().collect();
    assert_eq!(
        interpret_program(&prog.body, &s),
        Err(ProgramError::Overflow)
    );
    assert_eq!(
        evaluate_foolp(&encode_tuples(&prog).unwrap(), &s),
        Err(ProgramError::Overflow)
    );
}
