//! Random programs over up to four variables: three integers and
//! optionally one integer array.

use fool::logic::Sort;
use fool::program::{
    tuple_variables, ArrayValue, BinOp, PExpr, Program, ProgramFile, ProgramState, UnOp, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
    ints: Vec<String>,
    array: Option<String>,
}

impl Gen {
    fn int_leaf(&mut self) -> PExpr {
        if self.rng.gen_bool(0.6) {
            let i = self.rng.gen_range(0..self.ints.len());
            PExpr::var(&self.ints[i])
        } else {
            PExpr::Int(self.rng.gen_range(-8..=8))
        }
    }

    fn int_expr(&mut self, depth: u32) -> PExpr {
        if depth == 0 {
            return self.int_leaf();
        }
        match self.rng.gen_range(0..5) {
            0 => PExpr::bin(
                BinOp::Add,
                self.int_expr(depth - 1),
                self.int_expr(depth - 1),
            ),
            1 => PExpr::bin(
                BinOp::Sub,
                self.int_expr(depth - 1),
                self.int_expr(depth - 1),
            ),
            2 => PExpr::Unary(UnOp::Neg, Box::new(self.int_leaf())),
            3 if self.array.is_some() => {
                let a = PExpr::var(self.array.as_ref().unwrap());
                PExpr::Read(Box::new(a), Box::new(self.int_leaf()))
            }
            _ => self.int_leaf(),
        }
    }

    fn cond(&mut self) -> PExpr {
        let op = [
            BinOp::Gt,
            BinOp::Ge,
            BinOp::Lt,
            BinOp::Le,
            BinOp::Eq,
            BinOp::Ne,
        ][self.rng.gen_range(0..6)];
        let c = PExpr::bin(op, self.int_expr(1), self.int_expr(1));
        match self.rng.gen_range(0..6) {
            0 => PExpr::Unary(UnOp::Not, Box::new(c)),
            1 => PExpr::bin(BinOp::And, c, self.cond_atom()),
            2 => PExpr::bin(BinOp::Or, c, self.cond_atom()),
            _ => c,
        }
    }

    fn cond_atom(&mut self) -> PExpr {
        PExpr::bin(BinOp::Gt, self.int_leaf(), self.int_leaf())
    }

    fn assignment(&mut self, target: Option<&str>) -> Program {
        let array_target = target.is_none() && self.array.is_some() && self.rng.gen_bool(0.2);
        if array_target || target.is_some_and(|t| Some(t) == self.array.as_deref()) {
            let a = self.array.clone().unwrap();
            let w = PExpr::Write(
                Box::new(PExpr::var(&a)),
                Box::new(self.int_leaf()),
                Box::new(self.int_expr(1)),
            );
            return Program::assign(&a, w);
        }
        let x = match target {
            Some(t) => t.to_string(),
            None => self.ints[self.rng.gen_range(0..self.ints.len())].clone(),
        };
        let e = self.int_expr(2);
        Program::assign(&x, e)
    }

    /// At most `budget` statements; `restricted` keeps every conditional
    /// on a single variable.
    fn program(
        &mut self,
        budget: usize,
        restricted: bool,
        target: Option<&str>,
    ) -> (Program, usize) {
        let mut stmts = Vec::new();
        let mut used = 0;
        while used < budget {
            let room = budget - used;
            if room >= 3 && self.rng.gen_bool(0.35) {
                let x = if restricted {
                    let mut names = self.ints.clone();
                    names.extend(self.array.clone());
                    Some(
                        target
                            .map(str::to_string)
                            .unwrap_or_else(|| names[self.rng.gen_range(0..names.len())].clone()),
                    )
                } else {
                    target.map(str::to_string)
                };
                let inner = (room - 1) / 2;
                let na = self.rng.gen_range(1..=inner);
                let (a, na) = self.program(na, restricted, x.as_deref());
                let (b, nb) = if self.rng.gen_bool(0.25) {
                    (Program::Skip, 1)
                } else {
                    let nb = self.rng.gen_range(1..=inner);
                    self.program(nb, restricted, x.as_deref())
                };
                let c = self.cond();
                stmts.push(Program::ite(c, a, b));
                used += 1 + na + nb;
            } else {
                stmts.push(self.assignment(target));
                used += 1;
            }
            if self.rng.gen_bool(0.3) {
                break;
            }
        }
        (Program::seq(stmts), used)
    }

    pub fn file(&mut self, restricted: bool) -> ProgramFile {
        let n_ints = self.rng.gen_range(1..=3);
        self.ints = ["x", "y", "z"][..n_ints]
            .iter()
            .map(|s| s.to_string())
            .collect();
        self.array = self.rng.gen_bool(0.3).then(|| "a".to_string());
        let mut vars: Vec<(String, Sort)> =
            self.ints.iter().map(|x| (x.clone(), Sort::Int)).collect();
        if let Some(a) = &self.array {
            vars.push((a.clone(), Sort::array(Sort::Int, Sort::Int)));
        }
        let (body, _) = self.program(8, restricted, None);
        ProgramFile { vars, body }
    }

    pub fn state(&mut self, prog: &ProgramFile) -> ProgramState {
        let mut s = ProgramState::new();
        for (x, sort) in &prog.vars {
            let v = if *sort == Sort::Int {
                Value::Int(self.rng.gen_range(-8..=8))
            } else {
                let mut a = ArrayValue::constant(Value::Int(self.rng.gen_range(-8..=8)));
                for _ in 0..self.rng.gen_range(0..4) {
                    a = a.write(
                        self.rng.gen_range(-8..=8),
                        Value::Int(self.rng.gen_range(-8..=8)),
                    );
                }
                Value::Array(a)
            };
            s.insert(x.clone(), v);
        }
        s
    }
}

pub fn generator(seed: u64) -> Gen {
    Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        ints: Vec::new(),
        array: None,
    }
}

pub fn final_tuple(prog: &ProgramFile, out: &ProgramState) -> Value {
    let xs = tuple_variables(prog);
    if xs.len() == 1 {
        out[&xs[0]].clone()
    } else {
        Value::Tuple(xs.iter().map(|x| out[x].clone()).collect())
    }
}
