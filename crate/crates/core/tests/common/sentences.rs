//! Random well-sorted FOOL sentences over one uninterpreted sort.

use fool::cnf::clausify;
use fool::logic::Expr;
use fool::oracle::{
    clause_formulas, satisfiable_formulas, satisfiable_within, OracleConfig, OracleError,
};
use fool::tptp::parse_problem;
use fool::translate::{translate_problem, BoolSemantics, TranslateOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq)]
enum S {
    U,
    B,
}

struct Sym {
    name: &'static str,
    decl: &'static str,
    args: &'static [S],
    result: S,
}

const POOL: [Sym; 8] = [
    Sym {
        name: "c",
        decl: "c: u",
        args: &[],
        result: S::U,
    },
    Sym {
        name: "d",
        decl: "d: u",
        args: &[],
        result: S::U,
    },
    Sym {
        name: "f",
        decl: "f: u > u",
        args: &[S::U],
        result: S::U,
    },
    Sym {
        name: "p",
        decl: "p: u > $o",
        args: &[S::U],
        result: S::B,
    },
    Sym {
        name: "r",
        decl: "r: (u * u) > $o",
        args: &[S::U, S::U],
        result: S::B,
    },
    Sym {
        name: "q",
        decl: "q: $o > $o",
        args: &[S::B],
        result: S::B,
    },
    Sym {
        name: "b",
        decl: "b: $o",
        args: &[],
        result: S::B,
    },
    Sym {
        name: "h",
        decl: "h: ($o * u) > u",
        args: &[S::B, S::U],
        result: S::U,
    },
];

/// Something that can be applied: a signature symbol, a variable or a
/// let-bound local.
#[derive(Clone)]
struct Head {
    name: String,
    args: Vec<S>,
    result: S,
}

pub struct Gen {
    rng: ChaCha8Rng,
    next: usize,
}

impl Gen {
    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }

    fn leaf(&mut self, want: S, scope: &[Head]) -> Option<String> {
        let cands: Vec<&Head> = scope
            .iter()
            .filter(|h| h.result == want && h.args.is_empty())
            .collect();
        if cands.is_empty() {
            return (want == S::B).then(|| ["$true", "$false"][self.rng.gen_range(0..2)].into());
        }
        let h = cands[self.rng.gen_range(0..cands.len())].clone();
        Some(self.apply(&h, 0, scope))
    }

    fn apply(&mut self, h: &Head, depth: u32, scope: &[Head]) -> String {
        if h.args.is_empty() {
            return h.name.clone();
        }
        let args: Vec<String> = h
            .args
            .iter()
            .map(|a| self.expr(*a, depth, scope).unwrap())
            .collect();
        format!("{}({})", h.name, args.join(", "))
    }

    fn expr(&mut self, want: S, depth: u32, scope: &[Head]) -> Option<String> {
        if want == S::U && !has(S::U, scope) {
            return None;
        }
        if depth == 0 || self.rng.gen_bool(0.12) {
            return self.leaf(want, scope);
        }
        let d = depth - 1;
        let choice = self.rng.gen_range(0..if want == S::B { 15 } else { 4 });
        Some(match (want, choice) {
            (_, 0) => {
                let c = self.expr(S::B, d, scope)?;
                let a = self.expr(want, d, scope)?;
                let b = self.expr(want, d, scope)?;
                format!("$ite({c}, {a}, {b})")
            }
            (_, 1) => self.let_in(want, d, scope)?,
            (_, 2) | (S::B, 12..=14) => {
                let cands: Vec<Head> = scope
                    .iter()
                    .filter(|h| h.result == want && !h.args.is_empty() && usable(h, scope))
                    .cloned()
                    .collect();
                match cands.choose(&mut self.rng) {
                    Some(h) => self.apply(h, d, scope),
                    None => self.leaf(want, scope)?,
                }
            }
            (S::U, _) => self.leaf(want, scope)?,
            (S::B, 3) => format!("(~{})", self.expr(S::B, d, scope)?),
            (S::B, 4..=8) => {
                let op = ["&", "|", "=>", "<=>", "<~>"][(choice - 4) as usize];
                let a = self.expr(S::B, d, scope)?;
                let b = self.expr(S::B, d, scope)?;
                format!("({a} {op} {b})")
            }
            (S::B, 9) => {
                let s = if has(S::U, scope) && self.rng.gen_bool(0.5) {
                    S::U
                } else {
                    S::B
                };
                let a = self.expr(s, d, scope)?;
                let b = self.expr(s, d, scope)?;
                if self.rng.gen_bool(0.3) {
                    format!("({a} != {b})")
                } else {
                    format!("({a} = {b})")
                }
            }
            (S::B, _) => {
                let s = if self.rng.gen_bool(0.6) { S::U } else { S::B };
                let v = self.fresh("X");
                let mut inner = scope.to_vec();
                inner.push(Head {
                    name: v.clone(),
                    args: vec![],
                    result: s,
                });
                let q = if self.rng.gen_bool(0.5) { "!" } else { "?" };
                let body = self.expr(S::B, d, &inner)?;
                format!("({q}[{v}:{}]: {body})", sort_name(s))
            }
        })
    }

    fn let_in(&mut self, want: S, d: u32, scope: &[Head]) -> Option<String> {
        let result = if has(S::U, scope) && self.rng.gen_bool(0.4) {
            S::U
        } else {
            S::B
        };
        let name = self.fresh("l");
        let param = self.rng.gen_bool(0.4);
        let mut def_scope = scope.to_vec();
        let mut head = name.clone();
        let mut args = Vec::new();
        if param {
            let ps = if has(S::U, scope) && self.rng.gen_bool(0.5) {
                S::U
            } else {
                S::B
            };
            let v = self.fresh("Y");
            head = format!("{name}({v}:{})", sort_name(ps));
            def_scope.push(Head {
                name: v,
                args: vec![],
                result: ps,
            });
            args.push(ps);
        }
        let def = self.expr(result, d, &def_scope)?;
        let mut body_scope = scope.to_vec();
        body_scope.push(Head { name, args, result });
        let body = self.expr(want, d, &body_scope)?;
        Some(format!("$let({head} := {def}, {body})"))
    }

    pub fn sentence(&mut self) -> Option<(String, bool)> {
        let mut pool: Vec<&Sym> = POOL.iter().collect();
        pool.shuffle(&mut self.rng);
        let chosen: Vec<&Sym> = pool.into_iter().take(self.rng.gen_range(1..=3)).collect();
        let scope: Vec<Head> = chosen
            .iter()
            .map(|s| Head {
                name: s.name.into(),
                args: s.args.to_vec(),
                result: s.result,
            })
            .collect();
        let f = self.expr(S::B, 5, &scope)?;
        let mut text = String::from("tff(u_type, type, u: $tType).\n");
        for s in &chosen {
            text.push_str(&format!("tff({}_type, type, {}).\n", s.name, s.decl));
        }
        let conjecture = self.rng.gen_bool(0.3);
        let role = if conjecture { "conjecture" } else { "axiom" };
        text.push_str(&format!("tff(s, {role}, {f}).\n"));
        Some((text, uses_u(&chosen) || f.contains(":u]")))
    }
}

fn uses_u(chosen: &[&Sym]) -> bool {
    chosen
        .iter()
        .any(|s| s.result == S::U || s.args.contains(&S::U))
}

fn usable(h: &Head, scope: &[Head]) -> bool {
    h.args.iter().all(|a| *a == S::B || has(S::U, scope))
}

fn has(s: S, scope: &[Head]) -> bool {
    scope.iter().any(|h| h.result == s && h.args.is_empty())
        || scope
            .iter()
            .any(|h| h.result == s && h.args.iter().all(|a| *a == S::B))
}

fn sort_name(s: S) -> &'static str {
    match s {
        S::U => "u",
        S::B => "$o",
    }
}

#[derive(Default)]
pub struct Campaign {
    pub agreed: usize,
    pub with_let: usize,
    pub with_ite: usize,
    pub with_bool_arg: usize,
    pub skipped: usize,
    pub sat: usize,
    /// Sentences on which the verdicts differ.
    pub mismatches: Vec<String>,
}

/// Runs `n` completed comparisons at bound `k`.
pub fn campaign(seed: u64, n: usize, k: usize) -> Campaign {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        next: 0,
    };
    let cfg = OracleConfig {
        max_nodes: 200_000,
        ..OracleConfig::default()
    };
    let mut out = Campaign::default();
    let mut attempts = 0;
    while out.agreed < n {
        attempts += 1;
        assert!(attempts < 4 * n, "too many skipped sentences");
        let Some((text, _)) = g.sentence() else {
            continue;
        };
        let p = parse_problem(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let mode = if attempts % 2 == 0 {
            BoolSemantics::Axiomatized
        } else {
            BoolSemantics::ParamodulationReady
        };
        let opts = TranslateOptions {
            mode,
            theory_axioms: true,
        };
        let (t, _) = translate_problem(&p, opts).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let cs = clausify(&t).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let verdicts = (|| -> Result<[bool; 3], OracleError> {
            Ok([
                satisfiable_within(&p, k, &cfg)?.is_sat(),
                satisfiable_within(&t, k, &cfg)?.is_sat(),
                satisfiable_formulas(&clause_formulas(&cs), k, &cfg)?.is_sat(),
            ])
        })();
        match verdicts {
            Ok([a, b, c]) => {
                if a != b || a != c {
                    out.mismatches.push(format!("k={k} {a} {b} {c}:\n{text}"));
                    continue;
                }
                out.agreed += 1;
                out.with_let += usize::from(text.contains("$let"));
                out.with_ite += usize::from(text.contains("$ite"));
                out.with_bool_arg += usize::from(bool_argument(&p));
                out.sat += usize::from(a);
            }
            Err(OracleError::SearchSpaceTooLarge(_)) => out.skipped += 1,
            Err(e) => panic!("{e}\n{text}"),
        }
    }
    out
}

/// Whether a formula occurs as an argument of a symbol or of an equality.
pub fn bool_argument(p: &fool::logic::Problem) -> bool {
    fn go(e: &Expr, arg: bool) -> bool {
        let formula = matches!(e, Expr::Conn(..) | Expr::Quant(..) | Expr::Eq(..));
        if arg && formula {
            return true;
        }
        match e {
            Expr::App(_, xs) => xs.iter().any(|x| go(x, true)),
            Expr::Eq(a, b) => go(a, true) || go(b, true),
            _ => e.children().iter().any(|c| go(c, false)),
        }
    }
    p.formulas().any(|u| go(u.as_formula().unwrap(), false))
}
