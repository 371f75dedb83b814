//! NAE-CNF formulas: DIMACS input, good-evaluation checks, a brute-force
//! solver and the occurrence-bounding rewrite.
//!
//! A clause is *good* under an assignment when it holds at least one true
//! and at least one false literal. Clause order and literal order inside a
//! clause are preserved everywhere; the reduction keys gadget positions off
//! them.

use std::fmt;

use thiserror::Error;

/// Default variable cap for [`solve_nae_bruteforce`].
pub const DEFAULT_NAE_VAR_CAP: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("literal refers to variable {var} but the formula declares {num_vars}")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("assignment covers {got} variables, formula has {expected}")]
    PartialAssignment { expected: u32, got: usize },
    #[error("formula has {num_vars} variables, brute force cap is {cap} (raise it with --nae-var-cap)")]
    VarCapExceeded { num_vars: u32, cap: u32 },
}

/// A possibly negated variable. Variables are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    /// # Panics
    /// Panics if `var` is zero.
    pub fn new(var: u32, negated: bool) -> Self {
        assert!(var > 0, "variables are 1-based");
        Literal { var, negated }
    }

    pub fn pos(var: u32) -> Self {
        Literal::new(var, false)
    }

    pub fn neg(var: u32) -> Self {
        Literal::new(var, true)
    }

    /// Converts a nonzero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = u32::try_from(value.unsigned_abs()).ok()?;
        Some(Literal::new(var, value < 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -i64::from(self.var)
        } else {
            i64::from(self.var)
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Self {
        Literal { var: self.var, negated: !self.negated }
    }

    /// Dense index: `x_i` maps to `2(i-1)`, `¬x_i` to `2(i-1)+1`.
    pub fn code(self) -> usize {
        2 * (self.var as usize - 1) + usize::from(self.negated)
    }

    pub fn eval(self, assignment: &Assignment) -> bool {
        assignment.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn from_dimacs(values: &[i64]) -> Option<Self> {
        values.iter().map(|&v| Literal::from_dimacs(v)).collect::<Option<Vec<_>>>().map(Clause::new)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// True iff the clause has both a true and a false literal.
    pub fn is_nae(&self, assignment: &Assignment) -> bool {
        let mut seen_true = false;
        let mut seen_false = false;
        for lit in &self.literals {
            if lit.eval(assignment) {
                seen_true = true;
            } else {
                seen_false = true;
            }
            if seen_true && seen_false {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            write!(f, "{lit}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl Formula {
    /// Builds a formula, rejecting empty clauses and out-of-range literals.
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (index, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(FormulaError::EmptyClause { index });
            }
            if let Some(lit) = clause.literals().iter().find(|l| l.var() > num_vars) {
                return Err(FormulaError::VariableOutOfRange { var: lit.var(), num_vars });
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    /// Convenience constructor from DIMACS-style integer clauses.
    ///
    /// # Panics
    /// Panics on a zero literal.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i64]]) -> Result<Self, FormulaError> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c).expect("zero is not a literal"))
            .collect();
        Formula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Sum of clause sizes.
    pub fn total_literals(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    /// Occurrence count of every literal, indexed by [`Literal::code`].
    /// Repeated literals inside one clause count once per position.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut counts = vec![0; 2 * self.num_vars as usize];
        for lit in self.clauses.iter().flat_map(|c| c.literals()) {
            counts[lit.code()] += 1;
        }
        counts
    }

    pub fn occurrences_of(&self, lit: Literal) -> usize {
        self.clauses
            .iter()
            .flat_map(|c| c.literals())
            .filter(|&&l| l == lit)
            .count()
    }

    pub fn max_literal_occurrence(&self) -> usize {
        self.occurrences().into_iter().max().unwrap_or(0)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause.literals() {
                out.push_str(&lit.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("⊤");
        }
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "{clause}")?;
        }
        Ok(())
    }
}

/// Total truth assignment over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all(num_vars: u32, value: bool) -> Self {
        Assignment { values: vec![value; num_vars as usize] }
    }

    /// Bit `i` of `bits` is the value of `x_{i+1}`.
    pub fn from_bits(num_vars: u32, bits: u64) -> Self {
        Assignment { values: (0..num_vars).map(|i| bits >> i & 1 == 1).collect() }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    /// # Panics
    /// Panics if `var` is zero or beyond the assignment.
    pub fn value(&self, var: u32) -> bool {
        self.values[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.values[var as usize - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn negated(&self) -> Self {
        Assignment { values: self.values.iter().map(|v| !v).collect() }
    }

    /// Parses signed integers such as `1 -2 3 0`, optionally preceded by
    /// `v` tokens as in SAT competition output. Unmentioned variables are
    /// an error.
    pub fn parse(text: &str, num_vars: u32) -> Result<Self, FormulaError> {
        let mut values: Vec<Option<bool>> = vec![None; num_vars as usize];
        for (line_no, line) in text.lines().enumerate() {
            let line_no = line_no + 1;
            for token in line.split_whitespace() {
                if token == "v" || token == "s" || token.starts_with('c') {
                    continue;
                }
                let value: i64 = token.parse().map_err(|_| FormulaError::Parse {
                    line: line_no,
                    message: format!("expected integer literal, found `{token}`"),
                })?;
                let Some(lit) = Literal::from_dimacs(value) else { continue };
                if lit.var() > num_vars {
                    return Err(FormulaError::VariableOutOfRange { var: lit.var(), num_vars });
                }
                values[lit.var() as usize - 1] = Some(!lit.is_negated());
            }
        }
        let got = values.iter().filter(|v| v.is_some()).count();
        let values: Option<Vec<bool>> = values.into_iter().collect();
        values
            .map(Assignment::new)
            .ok_or(FormulaError::PartialAssignment { expected: num_vars, got })
    }

    pub fn to_dimacs_line(&self) -> String {
        let mut out = String::from("v");
        for (i, &value) in self.values.iter().enumerate() {
            let var = i as i64 + 1;
            out.push(' ');
            out.push_str(&(if value { var } else { -var }).to_string());
        }
        out.push_str(" 0");
        out
    }
}

/// Parses DIMACS CNF, keeping clause and literal order as read.
pub fn parse_dimacs(text: &str) -> Result<Formula, FormulaError> {
    let err = |line: usize, message: String| FormulaError::Parse { line, message };

    let mut header: Option<(u32, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            // SATLIB end marker
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate header".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(err(line_no, format!("malformed header `{line}`, expected `p cnf <vars> <clauses>`")));
            }
            let n = fields[2]
                .parse::<u32>()
                .map_err(|_| err(line_no, format!("bad variable count `{}`", fields[2])))?;
            let m = fields[3]
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("bad clause count `{}`", fields[3])))?;
            header = Some((n, m, line_no));
            continue;
        }
        let Some((num_vars, _, _)) = header else {
            return Err(err(line_no, "clause data before `p cnf` header".into()));
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| err(line_no, format!("expected integer literal, found `{token}`")))?;
            match Literal::from_dimacs(value) {
                None => {
                    if current.is_empty() {
                        return Err(err(line_no, "empty clause".into()));
                    }
                    clauses.push(Clause::new(std::mem::take(&mut current)));
                }
                Some(lit) => {
                    if lit.var() > num_vars {
                        return Err(err(
                            line_no,
                            format!("variable {} exceeds declared {}", lit.var(), num_vars),
                        ));
                    }
                    if current.is_empty() {
                        current_start = line_no;
                    }
                    current.push(lit);
                }
            }
        }
    }

    let Some((num_vars, declared, header_line)) = header else {
        return Err(err(last_line.max(1), "missing `p cnf` header".into()));
    };
    if !current.is_empty() {
        return Err(err(current_start, "clause is missing its terminating 0".into()));
    }
    if clauses.len() != declared {
        return Err(err(
            header_line,
            format!("header declares {declared} clauses, found {}", clauses.len()),
        ));
    }
    Formula::new(num_vars, clauses)
}

/// True iff every clause holds both a true and a false literal.
pub fn is_good(formula: &Formula, assignment: &Assignment) -> Result<bool, FormulaError> {
    if assignment.num_vars() != formula.num_vars() {
        return Err(FormulaError::PartialAssignment {
            expected: formula.num_vars(),
            got: assignment.values().len(),
        });
    }
    Ok(formula.clauses().iter().all(|c| c.is_nae(assignment)))
}

/// Enumerates assignments as a binary counter (`x1` least significant,
/// false before true) and returns the first good one.
pub fn solve_nae_bruteforce(formula: &Formula, var_cap: u32) -> Result<Option<Assignment>, FormulaError> {
    let n = formula.num_vars();
    if n > var_cap || n > 63 {
        return Err(FormulaError::VarCapExceeded { num_vars: n, cap: var_cap });
    }
    // Clauses as (positive mask, negative mask) over the counter bits.
    let masks: Vec<(u64, u64)> = formula
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0u64, 0u64), |(p, q), l| {
                let bit = 1u64 << (l.var() - 1);
                if l.is_negated() {
                    (p, q | bit)
                } else {
                    (p | bit, q)
                }
            })
        })
        .collect();
    for bits in 0..(1u64 << n) {
        // A clause is good iff some literal is true and some literal is false.
        let good = masks.iter().all(|&(pos, neg)| {
            let any_true = bits & pos != 0 || !bits & neg != 0;
            let any_false = !bits & pos != 0 || bits & neg != 0;
            any_true && any_false
        });
        if good {
            return Ok(Some(Assignment::from_bits(n, bits)));
        }
    }
    Ok(None)
}

/// Result of [`bound_occurrences`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFormula {
    pub formula: Formula,
    /// Variable count of the input; variables `1..=original_vars` keep
    /// their index, the rest are fresh.
    pub original_vars: u32,
    /// Fresh variable `z` and the literal `l` it stands for, in creation
    /// order. Every good assignment of the output has `z == l`.
    pub fresh: Vec<(u32, Literal)>,
}

impl BoundedFormula {
    /// Maps an input variable to its index in the output (always the same).
    pub fn original_variable(&self, var: u32) -> Option<u32> {
        (1..=self.original_vars).contains(&var).then_some(var)
    }

    /// Restricts an assignment of the output to the input's variables.
    pub fn project(&self, assignment: &Assignment) -> Assignment {
        Assignment::new(assignment.values()[..self.original_vars as usize].to_vec())
    }

    /// Lifts an assignment of the input by setting every fresh `z` to its `l`.
    pub fn lift(&self, assignment: &Assignment) -> Assignment {
        let mut values = assignment.values().to_vec();
        for &(_, lit) in &self.fresh {
            let value = lit.eval(&Assignment::new(values.clone()));
            values.push(value);
        }
        Assignment::new(values)
    }
}

/// Rewrites the formula until every literal occurs at most twice.
///
/// Each step picks the lowest literal (by variable, positive first) with
/// three or more occurrences, takes its first three occurrences in clause
/// order, replaces the second and third by a fresh `z` in place and appends
/// the clause `(l ∨ ¬z)`.
pub fn bound_occurrences(formula: &Formula) -> BoundedFormula {
    let mut num_vars = formula.num_vars();
    let mut clauses: Vec<Vec<Literal>> =
        formula.clauses().iter().map(|c| c.literals().to_vec()).collect();
    let mut fresh = Vec::new();

    loop {
        let mut counts = vec![0usize; 2 * num_vars as usize];
        for lit in clauses.iter().flatten() {
            counts[lit.code()] += 1;
        }
        let Some(code) = counts.iter().position(|&c| c >= 3) else { break };
        let lit = Literal::new(code as u32 / 2 + 1, code % 2 == 1);

        num_vars += 1;
        let z = Literal::pos(num_vars);
        let positions: Vec<(usize, usize)> = clauses
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| {
                c.iter().enumerate().filter(|(_, &l)| l == lit).map(move |(li, _)| (ci, li))
            })
            .take(3)
            .collect();
        for &(ci, li) in &positions[1..] {
            clauses[ci][li] = z;
        }
        clauses.push(vec![lit, z.negate()]);
        fresh.push((num_vars, lit));
    }

    let formula = Formula::new(num_vars, clauses.into_iter().map(Clause::new).collect())
        .expect("rewrite keeps literals in range");
    BoundedFormula { original_vars: formula.num_vars() - fresh.len() as u32, formula, fresh }
}
