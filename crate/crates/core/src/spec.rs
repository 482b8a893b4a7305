//! The declaration language for rings, ideals and modules.
//!
//! ```text
//! ring R = GF(3)[x,y] / (x*y);
//! ideal I = (x^2, y) in R;
//! module M = coker R [[x],[y]];     # R/(x, y): one generator, two relations
//! module F = free R 2;
//! ```
//!
//! In `coker`, each inner list is one relation column with one entry per
//! generator. Polynomials use integer coefficients, `+ - * ^` and parentheses.
//! `#` and `//` start comments.

use std::sync::Arc;

use indexmap::IndexMap;

use crate::error::{HkError, Result};
use crate::field::PrimeField;
use crate::module::ModulePresentation;
use crate::poly::Polynomial;
use crate::ring::{check_local_generators, RingPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn at(line: usize, col: usize, e: HkError) -> HkError {
    match e {
        HkError::At { .. } | HkError::Syntax { .. } => e,
        other => HkError::At {
            line,
            col,
            source: Box::new(other),
        },
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Int(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else if "=()[],;/*^+-".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line,
                    col,
                });
                i += 1;
            } else {
                return Err(HkError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

/// How a module was declared, kept for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleForm {
    Free(usize),
    Coker,
}

#[derive(Clone, Debug)]
pub struct IdealDecl {
    pub ring: String,
    pub generators: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct ModuleDecl {
    pub ring: String,
    pub form: ModuleForm,
    pub module: ModulePresentation,
}

/// Everything declared in one input, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Declarations {
    pub rings: IndexMap<String, Arc<RingPresentation>>,
    pub ideals: IndexMap<String, IdealDecl>,
    pub modules: IndexMap<String, ModuleDecl>,
}

impl Declarations {
    pub fn ring(&self, name: &str) -> Result<&Arc<RingPresentation>> {
        self.rings
            .get(name)
            .ok_or_else(|| HkError::Invalid(format!("no ring named `{name}`")))
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealDecl> {
        self.ideals
            .get(name)
            .ok_or_else(|| HkError::Invalid(format!("no ideal named `{name}`")))
    }

    pub fn module(&self, name: &str) -> Result<&ModuleDecl> {
        self.modules
            .get(name)
            .ok_or_else(|| HkError::Invalid(format!("no module named `{name}`")))
    }

    /// Renders all declarations back into the input language.
    pub fn to_spec_string(&self) -> String {
        let mut out = String::new();
        for (name, ring) in &self.rings {
            out.push_str(&ring_to_spec(name, ring));
            out.push('\n');
        }
        for (name, ideal) in &self.ideals {
            let ring = &self.rings[&ideal.ring];
            out.push_str(&format!(
                "ideal {name} = ({}) in {};\n",
                join_polys(ring, &ideal.generators),
                ideal.ring
            ));
        }
        for (name, m) in &self.modules {
            let ring = &self.rings[&m.ring];
            match m.form {
                ModuleForm::Free(n) => out.push_str(&format!("module {name} = free {} {n};\n", m.ring)),
                ModuleForm::Coker => {
                    let cols: Vec<String> = (0..m.module.relation_count())
                        .map(|s| format!("[{}]", join_polys(ring, &m.module.relation(s))))
                        .collect();
                    out.push_str(&format!("module {name} = coker {} [{}];\n", m.ring, cols.join(",")));
                }
            }
        }
        out
    }
}

fn join_polys(ring: &RingPresentation, polys: &[Polynomial]) -> String {
    polys.iter().map(|f| ring.fmt_poly(f)).collect::<Vec<_>>().join(", ")
}

/// `ring NAME = GF(p)[vars] / (gens);`
pub fn ring_to_spec(name: &str, ring: &RingPresentation) -> String {
    let mut s = format!("ring {name} = GF({})[{}]", ring.characteristic(), ring.names().join(","));
    if !ring.generators().is_empty() {
        s.push_str(&format!(" / ({})", join_polys(ring, ring.generators())));
    }
    s.push(';');
    s
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(HkError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected `{c}`, found {}", describe(&t)))
            }
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected a name, found {}", describe(&t)))
            }
            None => self.err("expected a name, found end of input"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{kw}`")),
        }
    }

    fn int(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<u64> {
        let (line, col) = self.here();
        let s = self.int()?;
        s.parse::<u64>().map_err(|_| HkError::Syntax {
            line,
            col,
            msg: format!("integer `{s}` is too large"),
        })
    }

    fn poly_list(&mut self, ring: &RingPresentation, close: char) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr(ring)?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.sym(',')?;
        }
    }

    fn expr(&mut self, ring: &RingPresentation) -> Result<Polynomial> {
        let negate = self.eat_sym('-');
        let mut acc = self.term(ring)?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let (line, col) = self.here();
            if self.eat_sym('+') {
                let t = self.term(ring)?;
                acc = acc.add(&t).map_err(|e| at(line, col, e))?;
            } else if self.eat_sym('-') {
                let t = self.term(ring)?;
                acc = acc.sub(&t).map_err(|e| at(line, col, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &RingPresentation) -> Result<Polynomial> {
        let mut acc = self.factor(ring)?;
        loop {
            let (line, col) = self.here();
            if self.eat_sym('*') {
                let f = self.factor(ring)?;
                acc = acc.mul(&f).map_err(|e| at(line, col, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ring: &RingPresentation) -> Result<Polynomial> {
        let base = self.atom(ring)?;
        let (line, col) = self.here();
        if self.eat_sym('^') {
            let k = self.small_int()?;
            return base.pow(k).map_err(|e| at(line, col, e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &RingPresentation) -> Result<Polynomial> {
        let (line, col) = self.here();
        match self.next() {
            Some(Tok::Int(digits)) => {
                let p = ring.characteristic() as u64;
                let r = digits
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(ring.constant(r as i64))
            }
            Some(Tok::Ident(name)) => match ring.var_index(&name) {
                Some(i) => Ok(ring.var(i)),
                None => Err(at(line, col, HkError::UnknownVariable(name))),
            },
            Some(Tok::Sym('(')) => {
                let e = self.expr(ring)?;
                self.sym(')')?;
                Ok(e)
            }
            Some(t) => Err(HkError::Syntax {
                line,
                col,
                msg: format!("expected a polynomial, found {}", describe(&t)),
            }),
            None => Err(HkError::Syntax {
                line,
                col,
                msg: "expected a polynomial, found end of input".into(),
            }),
        }
    }

    fn lookup_ring(&self, decls: &Declarations, name: &str, line: usize, col: usize) -> Result<Arc<RingPresentation>> {
        decls
            .rings
            .get(name)
            .cloned()
            .ok_or_else(|| HkError::Syntax {
                line,
                col,
                msg: format!("unknown ring `{name}`"),
            })
    }

    fn statement(&mut self, decls: &mut Declarations) -> Result<()> {
        let (line, col) = self.here();
        let kw = self.ident()?;
        let (nline, ncol) = self.here();
        let name = self.ident()?;
        let taken = decls.rings.contains_key(&name)
            || decls.ideals.contains_key(&name)
            || decls.modules.contains_key(&name);
        if taken {
            return Err(HkError::Syntax {
                line: nline,
                col: ncol,
                msg: format!("`{name}` is already declared"),
            });
        }
        self.sym('=')?;
        match kw.as_str() {
            "ring" => {
                let (pl, pc) = self.here();
                self.keyword("GF")?;
                self.sym('(')?;
                let p = self.small_int()?;
                self.sym(')')?;
                let field = PrimeField::new(p).map_err(|e| at(pl, pc, e))?;
                self.sym('[')?;
                let mut names = Vec::new();
                if !self.eat_sym(']') {
                    loop {
                        let (vl, vc) = self.here();
                        let v = self.ident()?;
                        if names.contains(&v) {
                            return Err(HkError::Syntax {
                                line: vl,
                                col: vc,
                                msg: format!("duplicate variable `{v}`"),
                            });
                        }
                        names.push(v);
                        if self.eat_sym(']') {
                            break;
                        }
                        self.sym(',')?;
                    }
                }
                let base = RingPresentation::new(field, names.clone(), Vec::new()).map_err(|e| at(line, col, e))?;
                let (gl, gc) = self.here();
                let gens = if self.eat_sym('/') {
                    self.sym('(')?;
                    self.poly_list(&base, ')')?
                } else {
                    Vec::new()
                };
                check_local_generators(&gens, &names).map_err(|e| at(gl, gc, e))?;
                self.sym(';')?;
                let ring = RingPresentation::new(field, names, gens).map_err(|e| at(line, col, e))?;
                decls.rings.insert(name, Arc::new(ring));
            }
            "ideal" => {
                self.sym('(')?;
                // the ring comes after the generators, so collect tokens first
                let start = self.pos;
                let mut depth = 1;
                while depth > 0 {
                    match self.next() {
                        Some(Tok::Sym('(')) => depth += 1,
                        Some(Tok::Sym(')')) => depth -= 1,
                        Some(_) => {}
                        None => return self.err("unterminated ideal"),
                    }
                }
                let stop = self.pos;
                self.keyword("in")?;
                let (rl, rc) = self.here();
                let rname = self.ident()?;
                let ring = self.lookup_ring(decls, &rname, rl, rc)?;
                self.sym(';')?;
                let resume = self.pos;
                self.pos = start;
                let gens = self.poly_list(&ring, ')')?;
                debug_assert_eq!(self.pos, stop);
                check_local_generators(&gens, ring.names()).map_err(|e| at(line, col, e))?;
                self.pos = resume;
                decls.ideals.insert(
                    name,
                    IdealDecl {
                        ring: rname,
                        generators: gens,
                    },
                );
            }
            "module" => {
                let (kl, kc) = self.here();
                let form = self.ident()?;
                let (rl, rc) = self.here();
                let rname = self.ident()?;
                let ring = self.lookup_ring(decls, &rname, rl, rc)?;
                let decl = match form.as_str() {
                    "free" => {
                        let n = self.small_int()? as usize;
                        ModuleDecl {
                            ring: rname,
                            form: ModuleForm::Free(n),
                            module: ModulePresentation::free(ring, n),
                        }
                    }
                    "coker" => {
                        self.sym('[')?;
                        let mut cols: Vec<Vec<Polynomial>> = Vec::new();
                        if !self.eat_sym(']') {
                            loop {
                                let (cl, cc) = self.here();
                                self.sym('[')?;
                                let col_entries = self.poly_list(&ring, ']')?;
                                if let Some(first) = cols.first() {
                                    if first.len() != col_entries.len() {
                                        return Err(HkError::Syntax {
                                            line: cl,
                                            col: cc,
                                            msg: "relation columns have different lengths".into(),
                                        });
                                    }
                                }
                                cols.push(col_entries);
                                if self.eat_sym(']') {
                                    break;
                                }
                                self.sym(',')?;
                            }
                        }
                        let n = cols.first().map_or(0, |c| c.len());
                        let rows: Vec<Vec<Polynomial>> =
                            (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
                        let module = ModulePresentation::new(ring, n, rows).map_err(|e| at(line, col, e))?;
                        ModuleDecl {
                            ring: rname,
                            form: ModuleForm::Coker,
                            module,
                        }
                    }
                    other => {
                        return Err(HkError::Syntax {
                            line: kl,
                            col: kc,
                            msg: format!("expected `coker` or `free`, found `{other}`"),
                        })
                    }
                };
                self.sym(';')?;
                decls.modules.insert(name, decl);
            }
            other => {
                return Err(HkError::Syntax {
                    line,
                    col,
                    msg: format!("expected `ring`, `ideal` or `module`, found `{other}`"),
                })
            }
        }
        Ok(())
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

/// Parses a declaration file.
pub fn parse_spec(text: &str) -> Result<Declarations> {
    let toks = lex(text)?;
    let last_line = text.lines().count().max(1);
    let last_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: (last_line, last_col),
    };
    let mut decls = Declarations::default();
    while parser.pos < toks.len() {
        parser.statement(&mut decls)?;
    }
    Ok(decls)
}

/// Parses a single polynomial in the variables of `ring`.
pub fn parse_polynomial(ring: &RingPresentation, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: (1, text.chars().count() + 1),
    };
    let f = parser.expr(ring)?;
    if parser.pos < toks.len() {
        return parser.err("trailing input after polynomial");
    }
    Ok(f)
}
