//! Declared sorts and symbols of a problem.

use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};

use super::{LogicError, Origin, Sort, Symbol, SymbolKind};

#[derive(Clone, Debug, Default)]
pub struct Signature {
    symbols: IndexMap<Arc<str>, Symbol>,
    sorts: IndexSet<Arc<str>>,
    next_fresh: usize,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Declares a symbol. Re-declaring with the identical type is accepted.
    pub fn declare_symbol(&mut self, sym: Symbol) -> Result<(), LogicError> {
        if let Some(old) = self.symbols.get(sym.name()) {
            if old.args() == sym.args() && old.result() == sym.result() {
                return Ok(());
            }
            return Err(LogicError::DuplicateDeclaration(sym.name().to_string()));
        }
        if let Some((_, n)) = Origin::parse_fresh_name(sym.name()) {
            self.next_fresh = self.next_fresh.max(n + 1);
        }
        self.symbols.insert(sym.name_arc(), sym);
        Ok(())
    }

    pub fn declare_sort(&mut self, name: &str) -> Result<(), LogicError> {
        if self.symbols.contains_key(name) {
            return Err(LogicError::DuplicateDeclaration(name.to_string()));
        }
        self.sorts.insert(Arc::from(name));
        Ok(())
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn lookup(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name) || self.sorts.contains(name)
    }

    /// Symbols in declaration order.
    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn sorts(&self) -> impl Iterator<Item = Sort> + '_ {
        self.sorts.iter().map(|s| Sort::Named(s.clone()))
    }

    /// Position of a symbol in declaration order.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.get_index_of(name)
    }

    /// A new symbol whose name `<tag><n>` is not yet used, registered in the signature.
    pub fn fresh_symbol(&mut self, args: Vec<Sort>, result: Sort, origin: Origin) -> Symbol {
        loop {
            let name = format!("{}{}", origin.tag(), self.next_fresh);
            self.next_fresh += 1;
            if !self.contains(&name) {
                let sym = Symbol::new(&name, args, result, SymbolKind::Fresh(origin));
                self.symbols.insert(sym.name_arc(), sym.clone());
                return sym;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_symbols_avoid_existing_names() {
        let mut sig = Signature::new();
        sig.declare_symbol(Symbol::constant("iG0", Sort::Individual))
            .unwrap();
        let g = sig.fresh_symbol(vec![], Sort::Bool, Origin::Ite);
        assert_ne!(g.name(), "iG0");
        assert!(g.is_fresh());
        assert_eq!(sig.lookup(g.name()), Some(&g));
        let h = sig.fresh_symbol(vec![], Sort::Bool, Origin::Ite);
        assert_ne!(g.name(), h.name());
    }

    #[test]
    fn redeclaration() {
        let mut sig = Signature::new();
        let p = Symbol::user("p", vec![Sort::Individual], Sort::Bool);
        sig.declare_symbol(p.clone()).unwrap();
        sig.declare_symbol(p).unwrap();
        let clash = Symbol::user("p", vec![Sort::Int], Sort::Bool);
        assert!(matches!(
            sig.declare_symbol(clash),
            Err(LogicError::DuplicateDeclaration(_))
        ));
    }

    #[test]
    fn declared_fresh_name_bumps_counter() {
        let mut sig = Signature::new();
        sig.declare_symbol(Symbol::new(
            "lG7",
            vec![],
            Sort::Int,
            SymbolKind::Fresh(Origin::Let),
        ))
        .unwrap();
        let g = sig.fresh_symbol(vec![], Sort::Int, Origin::Lift);
        assert_eq!(g.name(), "bG8");
    }
}
