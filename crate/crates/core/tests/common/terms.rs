//! Random prover terms over `$i` and `$o`, and the ordering checks run on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fool::logic::{Sort, Symbol};
use fool::prover::{kbo, SymId, SymTable, Term, TermOrder, FALSE, TRUE};

/// Signature for random terms over `$i` and `$o`.
pub struct Sig {
    pub tab: SymTable,
    pub ind: u32,
    pub boolean: u32,
    /// (symbol, argument sorts, result sort)
    pub funs: Vec<(SymId, Vec<u32>, u32)>,
}

pub fn sig() -> Sig {
    let mut tab = SymTable::new();
    let i = Sort::Individual;
    let o = Sort::Bool;
    let decls = [
        Symbol::constant("a", i.clone()),
        Symbol::constant("b", i.clone()),
        Symbol::user("f", vec![i.clone()], i.clone()),
        Symbol::user("g", vec![i.clone(), i.clone()], i.clone()),
        Symbol::user("h", vec![o.clone(), i.clone()], i.clone()),
        Symbol::constant("c", o.clone()),
        Symbol::user("p", vec![i.clone()], o.clone()),
        Symbol::user("q", vec![o.clone(), i.clone()], o.clone()),
    ];
    let funs = decls
        .iter()
        .map(|s| {
            let id = tab.symbol(s);
            let info = &tab.syms[id as usize];
            (id, info.args.clone(), info.result)
        })
        .collect();
    let ind = tab.sort_id(&i);
    let boolean = tab.bool_sort();
    let mut funs: Vec<(SymId, Vec<u32>, u32)> = funs;
    funs.push((TRUE, vec![], boolean));
    funs.push((FALSE, vec![], boolean));
    Sig {
        tab,
        ind,
        boolean,
        funs,
    }
}

impl Sig {
    /// A random term of `sort`; with `vars`, variables 0..3 may occur.
    pub fn term(&self, rng: &mut ChaCha8Rng, sort: u32, depth: usize, vars: bool) -> Term {
        if vars && rng.gen_bool(0.2) {
            let v = rng.gen_range(0..3);
            // Variables 0, 1 are individuals and 2 is Boolean.
            let v = if sort == self.ind { v % 2 } else { 2 };
            return Term::Var(v, sort);
        }
        let cands: Vec<_> = self
            .funs
            .iter()
            .filter(|(_, args, r)| *r == sort && (depth > 0 || args.is_empty()))
            .collect();
        let (f, args, _) = cands[rng.gen_range(0..cands.len())];
        let xs = args
            .iter()
            .map(|s| self.term(rng, *s, depth.saturating_sub(1), vars))
            .collect();
        Term::App(*f, xs)
    }

    pub fn any_term(&self, rng: &mut ChaCha8Rng, vars: bool) -> Term {
        let sort = if rng.gen_bool(0.5) {
            self.ind
        } else {
            self.boolean
        };
        self.term(rng, sort, 3, vars)
    }
}

pub fn proper_subterms(t: &Term) -> Vec<&Term> {
    let mut out = Vec::new();
    t.subterms(&mut out);
    out.retain(|u| !std::ptr::eq(*u, t));
    out
}

pub fn substitute(t: &Term, s: &[Term]) -> Term {
    match t {
        Term::Var(v, _) => s[*v as usize].clone(),
        Term::App(f, xs) => Term::App(*f, xs.iter().map(|x| substitute(x, s)).collect()),
    }
}

/// Checks totality, antisymmetry, transitivity, the subterm property and the
/// minimality of `$false < $true` on `n` random ground triples.
pub fn ordering_violations(seed: u64, n: usize) -> Vec<String> {
    let s = sig();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let o = |x: &Term, y: &Term| kbo(x, y, &s.tab);
    let (tt, ff) = (Term::constant(TRUE), Term::constant(FALSE));
    if o(&ff, &tt) != TermOrder::Less {
        bad.push("$false is not below $true".to_string());
    }
    for _ in 0..n {
        let t: Vec<Term> = (0..3).map(|_| s.any_term(&mut rng, false)).collect();
        for x in &t {
            for y in &t {
                let xy = o(x, y);
                if xy == TermOrder::Incomparable || (xy == TermOrder::Equal) != (x == y) {
                    bad.push(format!("totality: {x:?} {y:?} {xy:?}"));
                }
                if o(y, x) != xy.reverse() {
                    bad.push(format!("antisymmetry: {x:?} {y:?}"));
                }
                for z in &t {
                    if xy == TermOrder::Greater
                        && o(y, z) == TermOrder::Greater
                        && o(x, z) != TermOrder::Greater
                    {
                        bad.push(format!("transitivity: {x:?} {y:?} {z:?}"));
                    }
                }
            }
            for u in proper_subterms(x) {
                if o(x, u) != TermOrder::Greater {
                    bad.push(format!("subterm: {x:?} {u:?}"));
                }
            }
            if s.tab.sort_of(x) == s.boolean
                && *x != tt
                && *x != ff
                && (o(x, &tt) != TermOrder::Greater || o(x, &ff) != TermOrder::Greater)
            {
                bad.push(format!("truth values not minimal below {x:?}"));
            }
        }
    }
    bad
}
