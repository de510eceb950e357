//! S-expression syntax for terms.
//!
//! ```text
//! even x z ; odd y
//! (+ (assoc x y z) (scale -1/2 (comm x (* y z))))
//! ```
//!
//! The optional header ends at the first newline or at `::`.

use super::{ops, TermPoly, Tree, VarTable};
use crate::error::{Error, Result};
use crate::exterior::Parity;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn lex(text: &str, offset: usize) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch == '(' {
            out.push((offset + i, Tok::Open));
            chars.next();
        } else if ch == ')' {
            out.push((offset + i, Tok::Close));
            chars.next();
        } else {
            let mut atom = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                atom.push(c);
                chars.next();
            }
            out.push((offset + i, Tok::Atom(atom)));
        }
    }
    Ok(out)
}

fn parse_header(header: &str) -> Result<VarTable> {
    let mut vars = VarTable::new();
    for clause in header.split(';') {
        let mut words = clause.split_whitespace();
        let Some(kind) = words.next() else { continue };
        let parity = match kind {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            other => return Err(Error::Syntax { pos: 0, msg: format!("expected `even` or `odd`, found `{other}`") }),
        };
        for name in words {
            if !is_ident(name) {
                return Err(Error::Syntax { pos: 0, msg: format!("bad variable name `{name}`") });
            }
            if vars.insert(name.to_string(), parity).is_some() {
                return Err(Error::Syntax { pos: 0, msg: format!("variable `{name}` declared twice") });
            }
        }
    }
    Ok(vars)
}

fn is_ident(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic()) && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_number(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// Parses a term with its optional variable header.
pub fn parse_term<C: Scalar>(text: &str) -> Result<TermPoly<C>> {
    parse_term_with(text, &VarTable::new())
}

/// Like [`parse_term`], with extra declarations in scope.
pub fn parse_term_with<C: Scalar>(text: &str, extra: &VarTable) -> Result<TermPoly<C>> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let (mut vars, body, offset) = if trimmed.starts_with("even") || trimmed.starts_with("odd") {
        let end = trimmed.find("::").map(|i| (i, i + 2)).or_else(|| trimmed.find('\n').map(|i| (i, i + 1)));
        let (h_end, b_start) = end.unwrap_or((trimmed.len(), trimmed.len()));
        (parse_header(&trimmed[..h_end])?, &trimmed[b_start..], lead + b_start)
    } else {
        (VarTable::new(), trimmed, lead)
    };
    for (k, p) in extra {
        vars.entry(k.clone()).or_insert(*p);
    }
    let toks = lex(body, offset)?;
    let mut pos = 0;
    let out = Parser { toks: &toks, vars: &vars, end: offset + body.len() }.expr(&mut pos)?;
    if pos != toks.len() {
        return Err(Error::Syntax { pos: toks[pos].0, msg: "trailing input".into() });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    vars: &'a VarTable,
    end: usize,
}

impl Parser<'_> {
    fn here(&self, pos: usize) -> usize {
        self.toks.get(pos).map_or(self.end, |t| t.0)
    }

    fn err(&self, pos: usize, msg: &str) -> Error {
        Error::Syntax { pos: self.here(pos), msg: msg.to_string() }
    }

    fn scalar<C: Scalar>(&self, pos: &mut usize) -> Result<C> {
        match self.toks.get(*pos) {
            Some((_, Tok::Atom(a))) if is_number(a) => {
                let c = C::parse_scalar(a).ok_or_else(|| self.err(*pos, "bad rational"))?;
                *pos += 1;
                Ok(c)
            }
            _ => Err(self.err(*pos, "expected a rational")),
        }
    }

    fn head(&self, pos: &mut usize) -> Result<String> {
        match self.toks.get(*pos) {
            Some((_, Tok::Atom(a))) => {
                *pos += 1;
                Ok(a.clone())
            }
            _ => Err(self.err(*pos, "expected an operator name")),
        }
    }

    fn args<C: Scalar>(&self, pos: &mut usize) -> Result<Vec<TermPoly<C>>> {
        let mut out = Vec::new();
        loop {
            match self.toks.get(*pos) {
                Some((_, Tok::Close)) => {
                    *pos += 1;
                    return Ok(out);
                }
                None => return Err(self.err(*pos, "unclosed `(`")),
                _ => out.push(self.expr(pos)?),
            }
        }
    }

    fn expr<C: Scalar>(&self, pos: &mut usize) -> Result<TermPoly<C>> {
        let start = *pos;
        match self.toks.get(*pos) {
            None => Err(self.err(*pos, "unexpected end of input")),
            Some((_, Tok::Close)) => Err(self.err(*pos, "unexpected `)`")),
            Some((_, Tok::Atom(a))) => {
                if is_number(a) {
                    let c = self.scalar(pos)?;
                    return Ok(TermPoly::constant(self.vars.clone(), c));
                }
                if !is_ident(a) {
                    return Err(self.err(*pos, "bad atom"));
                }
                *pos += 1;
                TermPoly::var(self.vars, a)
            }
            Some((_, Tok::Open)) => {
                *pos += 1;
                let head = self.head(pos)?;
                let arity = |args: &[TermPoly<C>], ok: &[usize]| -> Result<()> {
                    if ok.contains(&args.len()) {
                        Ok(())
                    } else {
                        Err(Error::Syntax { pos: self.here(start), msg: format!("`{head}` takes {ok:?} arguments, got {}", args.len()) })
                    }
                };
                match head.as_str() {
                    "scale" => {
                        let c: C = self.scalar(pos)?;
                        let a = self.args(pos)?;
                        arity(&a, &[1])?;
                        Ok(a[0].scale(&c))
                    }
                    "op" => {
                        let kind = self.head(pos)?;
                        let a = self.args(pos)?;
                        match kind.as_str() {
                            "R" => arity(&a, &[2]).and_then(|_| ops::r(&a[0], &a[1])),
                            "L" => arity(&a, &[2]).and_then(|_| ops::l(&a[0], &a[1])),
                            "Q" => arity(&a, &[2]).and_then(|_| ops::q(&a[0], &a[1])),
                            "Rab" => arity(&a, &[3]).and_then(|_| ops::rab(&a[0], &a[1], &a[2])),
                            "Dab" => arity(&a, &[3]).and_then(|_| ops::dab(&a[0], &a[1], &a[2])),
                            other => Err(Error::Syntax { pos: self.here(start), msg: format!("unknown operator `{other}`") }),
                        }
                    }
                    _ => {
                        let a = self.args(pos)?;
                        match head.as_str() {
                            "*" => {
                                arity(&a, &[2])?;
                                a[0].mul(&a[1])
                            }
                            "+" => {
                                let mut acc = TermPoly::zero(self.vars.clone());
                                for t in &a {
                                    acc = acc.add(t)?;
                                }
                                Ok(acc)
                            }
                            "-" => {
                                arity(&a, &[1, 2])?;
                                if a.len() == 1 {
                                    Ok(a[0].scale(&-C::one()))
                                } else {
                                    a[0].sub(&a[1])
                                }
                            }
                            "assoc" => arity(&a, &[3]).and_then(|_| ops::assoc(&a[0], &a[1], &a[2])),
                            "comm" => arity(&a, &[2]).and_then(|_| ops::comm(&a[0], &a[1])),
                            "scomm" => arity(&a, &[2]).and_then(|_| ops::scomm(&a[0], &a[1])),
                            "sym" => arity(&a, &[1]).and_then(|_| ops::symmetrize(&a[0])),
                            "k" => {
                                arity(&a, &[2, 3, 4])?;
                                match a.len() {
                                    2 => ops::k(&a[0], &a[0], &a[1], &a[1]),
                                    3 => ops::k(&a[0], &a[0], &a[1], &a[2]),
                                    _ => ops::k(&a[0], &a[1], &a[2], &a[3]),
                                }
                            }
                            "h" => arity(&a, &[3]).and_then(|_| ops::h(&a[0], &a[1], &a[2])),
                            other => Err(Error::Syntax { pos: self.here(start), msg: format!("unknown form `{other}`") }),
                        }
                    }
                }
            }
        }
    }
}

fn print_tree(t: &Tree) -> String {
    t.to_string()
}

/// Prints a term in core forms only, with its header; inverse to [`parse_term`].
pub fn print_term<C: Scalar>(f: &TermPoly<C>) -> String {
    let evens: Vec<&str> = f.vars().iter().filter(|(_, p)| **p == Parity::Even).map(|(k, _)| k.as_str()).collect();
    let odds: Vec<&str> = f.vars().iter().filter(|(_, p)| **p == Parity::Odd).map(|(k, _)| k.as_str()).collect();
    let mut clauses = Vec::new();
    if !evens.is_empty() {
        clauses.push(format!("even {}", evens.join(" ")));
    }
    if !odds.is_empty() {
        clauses.push(format!("odd {}", odds.join(" ")));
    }
    let body = print_body(f);
    if clauses.is_empty() {
        body
    } else {
        format!("{}\n{}", clauses.join(" ; "), body)
    }
}

/// The expression part of [`print_term`], without a header.
pub fn print_body<C: Scalar>(f: &TermPoly<C>) -> String {
    let items: Vec<String> = f
        .terms()
        .map(|(t, c)| match t {
            Tree::Unit => c.to_string(),
            _ if *c == C::one() => print_tree(t),
            _ => format!("(scale {c} {})", print_tree(t)),
        })
        .collect();
    match items.len() {
        0 => "0".into(),
        1 => items.into_iter().next().unwrap(),
        _ => format!("(+ {})", items.join(" ")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type T = TermPoly<Rational>;

    fn p(text: &str) -> T {
        parse_term(text).unwrap()
    }

    #[test]
    fn sugar_expands() {
        assert_eq!(p("even x y z\n(assoc x y z)"), p("even x y z\n(- (* (* x y) z) (* x (* y z)))"));
        assert_eq!(p("even x y\n(comm x y)"), p("even x y\n(- (* x y) (* y x))"));
        assert_eq!(p("odd x y\n(scomm x y)"), p("odd x y\n(+ (* x y) (* y x))"));
        assert_eq!(p("even x z :: (op Rab x x z)"), p("even x z :: (- (* (* z x) x) (* z (* x x)))"));
        assert_eq!(p("even a x :: (op Q a x)"), p("even a x :: (assoc a a x)"));
        assert_eq!(p("even a b x :: (op Dab a b x)"), p("even a b x :: (assoc a x b)"));
        assert_eq!(p("even x y :: (k x y)"), p("even x y :: (k x x y y)"));
    }

    #[test]
    fn constants_scale() {
        assert_eq!(p("even x :: (* 3/2 x)"), p("even x :: (scale 3/2 x)"));
        assert_eq!(p("even x :: (+ x x)"), p("even x :: (scale 2 x)"));
        assert!(p("even x :: (- x x)").is_zero());
    }

    #[test]
    fn round_trip() {
        for text in [
            "even x y z ; odd u\n(+ (assoc x y z) (scale -1/2 (comm u (* y z))) 7)",
            "odd x :: (sym (* x (* x x)))",
            "even a b x :: (h x a b)",
            "0",
        ] {
            let f = p(text);
            let printed = print_term(&f);
            let again = p(&printed);
            assert_eq!(again, f, "{printed}");
            assert_eq!(again.vars(), f.vars());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(parse_term::<Rational>("even x :: (* x q)"), Err(Error::UndeclaredVariable("q".into())));
        assert!(matches!(parse_term::<Rational>("even x :: (* x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term::<Rational>("even x :: (* x x x)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term::<Rational>("even x :: (frob x)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term::<Rational>("even x :: x x"), Err(Error::Syntax { .. })));
        let Err(Error::Syntax { pos, .. }) = parse_term::<Rational>("even x :: (* x )") else { panic!() };
        assert_eq!(pos, 10);
    }
}
