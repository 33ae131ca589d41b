//! Bundled listings and the hand-derived translations of several of them.

use std::path::PathBuf;

use fool::logic::{AlphaEq, Problem};
use fool::tptp::{parse_file, parse_problem, ParseOptions};
use fool::translate::{translate_problem, BoolSemantics, TranslateOptions};

pub const LISTINGS: [&str; 14] = [
    "impl.p",
    "partial_function.p",
    "knights.p",
    "max_definition.p",
    "max_property.p",
    "let_array_function.p",
    "let_swap.p",
    "let_array_store.p",
    "nested_let_legacy.p",
    "nested_let_unified.p",
    "xor.p",
    "max_vc.p",
    "max_vc_ordered.p",
    "partition_vc.p",
];

/// Expected formula units of each translation, in order, without the
/// generated array and truth-value axioms.
pub const EXPECTED: [(&str, &str); 8] = [
    (
        "impl.p",
        "tff(impl, type, impl: ($o * $o) > $o).
         tff(d, axiom, ![X:$o, Y:$o]: (impl(X, Y) <=> (X != $true | Y = $true))).",
    ),
    (
        "partial_function.p",
        "tff(s, type, s: $tType). tff(t, type, t: $tType).
         tff(p, type, p: (s * t) > $o).
         tff(impl, type, impl: ($o * $o) > $o).
         tff(g1, type, bG7: (s * t * t) > $o).
         tff(g2, type, bG9: (t * t) > $o).
         tff(a, axiom, ![X:s, Y:t, Z:t]: impl(bG7(X, Y, Z), bG9(Y, Z))).
         tff(d1, axiom, ![X:s, Y:t, Z:t]: ((p(X, Y) & p(X, Z)) <=> bG7(X, Y, Z) = $true)).
         tff(d2, axiom, ![Y:t, Z:t]: (Y = Z <=> bG9(Y, Z) = $true)).",
    ),
    (
        "max_definition.p",
        "tff(max, type, max: ($int * $int) > $int).
         tff(g, type, iG5: ($int * $int) > $int).
         tff(a, axiom, ![X:$int, Y:$int]: (max(X, Y) = iG5(X, Y))).
         tff(d1, axiom, ![X:$int, Y:$int]: ($greatereq(X, Y) => iG5(X, Y) = X)).
         tff(d2, axiom, ![X:$int, Y:$int]: (~$greatereq(X, Y) => iG5(X, Y) = Y)).",
    ),
    (
        "max_property.p",
        "tff(max, type, max: ($int * $int) > $int).
         tff(g, type, iG5: ($int * $int) > $o).
         tff(a, conjecture, ![X:$int, Y:$int]: iG5(X, Y)).
         tff(d1, axiom, ![X:$int, Y:$int]: (max(X, Y) = X => (iG5(X, Y) <=> $greatereq(X, Y)))).
         tff(d2, axiom, ![X:$int, Y:$int]: (max(X, Y) != X => (iG5(X, Y) <=> $greatereq(Y, X)))).",
    ),
    (
        "let_array_function.p",
        "tff(array, type, array: $int > $int). tff(sum, type, sum: $int).
         tff(h, type, iG3: $int > $int). tff(g, type, lG4: $int > $int).
         tff(a, axiom, sum = $sum(lG4(2), lG4(3))).
         tff(d1, axiom, ![I:$int]: (I = 3 => iG3(I) = 5)).
         tff(d2, axiom, ![I:$int]: (I != 3 => iG3(I) = array(I))).
         tff(d3, axiom, ![I:$int]: (lG4(I) = iG3(I))).",
    ),
    (
        "let_swap.p",
        "tff(a, type, a: $i). tff(b, type, b: $i). tff(f, type, f: ($i * $i) > $o).
         tff(a2, type, lG8: $i). tff(b1, type, lG9: $i).
         tff(s, axiom, f(lG8, lG9)).
         tff(d1, axiom, lG8 = b).
         tff(d2, axiom, lG9 = a).",
    ),
    (
        "let_array_store.p",
        "tff(array, type, array: $array($int, $int)). tff(sum, type, sum: $int).
         tff(g, type, lG2: $array($int, $int)).
         tff(a, axiom, sum = $sum($select(lG2, 2), $select(lG2, 3))).
         tff(d, axiom, lG2 = $store(array, 3, 5)).",
    ),
    (
        "nested_let_unified.p",
        "tff(a, type, a: $i). tff(b, type, b: $i). tff(f, type, f: $i > $i).
         tff(g, type, g: ($i * $i) > $i). tff(p, type, p: $i > $o).
         tff(q, type, q: ($i * $i) > $o).
         tff(q1, type, lG10: ($i * $i * $i) > $o). tff(f1, type, lG11: $i > $i).
         tff(c, type, iG12: ($i * $i * $i) > $o). tff(q2, type, lG13: ($i * $i * $i) > $o).
         tff(t, type, iG14: $i > $i).
         tff(u, axiom, ![X:$i]: (lG10(lG11(a), X, X) & p(iG14(X)))).
         tff(d0, axiom, ![Y1:$i, Y2:$i, X:$i]: (lG10(Y1, Y2, X) <=> p(Y1))).
         tff(d1, axiom, ![Z1:$i]: (lG11(Z1) = g(Z1, b))).
         tff(d2, axiom, ![Y3:$i, Y4:$i, X:$i]: (Y3 = Y4 => (iG12(Y3, Y4, X) <=> lG10(a, a, X)))).
         tff(d3, axiom, ![Y3:$i, Y4:$i, X:$i]: (Y3 != Y4 => (iG12(Y3, Y4, X) <=> lG10(Y3, Y4, X)))).
         tff(d4, axiom, ![Y3:$i, Y4:$i, X:$i]: (lG13(Y3, Y4, X) <=> iG12(Y3, Y4, X))).
         tff(d5, axiom, ![X:$i]: (lG13(b, b, X) => iG14(X) = f(a))).
         tff(d6, axiom, ![X:$i]: (~lG13(b, b, X) => iG14(X) = f(X))).",
    ),
];

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Problem {
    parse_file(&path(name), &ParseOptions::default()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn translated(p: &Problem) -> Problem {
    let opts = TranslateOptions {
        mode: BoolSemantics::ParamodulationReady,
        theory_axioms: true,
    };
    translate_problem(p, opts).unwrap().0
}

/// Compares the translation of `name` with its expected units up to one
/// bijection between fresh symbols.
pub fn check_translation(name: &str) -> Result<(), String> {
    let expected = EXPECTED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| format!("no expected translation for {name}"))?;
    let t = translated(&fixture(name));
    let want = parse_problem(expected).map_err(|e| format!("expected text: {e}"))?;
    let got: Vec<_> = t
        .formulas()
        .filter(|u| !u.name.starts_with("fool_array_") && u.name != "fool_true_neq_false")
        .collect();
    let want: Vec<_> = want.formulas().collect();
    if got.len() != want.len() {
        return Err(format!(
            "{name}: {} units, expected {}",
            got.len(),
            want.len()
        ));
    }
    let mut ae = AlphaEq::default();
    for (g, w) in got.iter().zip(&want) {
        let (gf, wf) = (g.as_formula().unwrap(), w.as_formula().unwrap());
        if g.role != w.role || !ae.eq(gf, wf) {
            return Err(format!("{name}: unit {} is {gf}, expected {wf}", g.name));
        }
    }
    Ok(())
}
