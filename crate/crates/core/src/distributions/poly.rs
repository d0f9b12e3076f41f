use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::DistError;
use crate::exactla::Rat;

/// A polynomial in `x1..xn` with rational coefficients, stored as a map
/// from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// The coordinate `x_{i+1}`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Poly::zero(n);
        p.add_term(e, Rat::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&vec![0; self.n]).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.n, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂x_{i+1}`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Rat::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Parses a polynomial in `x1..xn`. Grammar:
    ///
    /// ```text
    /// expr   := ['+'|'-'] term (('+'|'-') term)*
    /// term   := power (('*'|'/') power)*        division only by constants
    /// power  := atom ['^' integer]
    /// atom   := integer | 'x' index | '(' expr ')' | '-' atom
    /// ```
    ///
    /// Rational literals such as `1/2` fall out of constant division.
    pub fn parse(src: &str, n: usize) -> Result<Poly, DistError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0, n, src };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest total degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse(e.iter().sum::<u32>()));
        for (e, c) in terms {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, DistError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |at: usize, msg: &str| DistError::Parse { input: src.to_string(), at, msg: msg.to_string() };
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            '0'..='9' => {
                let j = digits(i);
                let v = src[i..j].parse().map_err(|_| bad(i, "integer literal too large"))?;
                out.push((i, Tok::Num(v)));
                i = j;
            }
            'x' => {
                let j = digits(i + 1);
                if j == i + 1 {
                    return Err(bad(i, "expected a variable index after 'x'"));
                }
                let k: usize = src[i + 1..j].parse().map_err(|_| bad(i, "bad variable index"))?;
                if k == 0 {
                    return Err(bad(i, "variables are numbered from x1"));
                }
                out.push((i, Tok::Var(k - 1)));
                i = j;
            }
            _ => return Err(bad(i, "unexpected character")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    n: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> DistError {
        let at = self.tokens.get(self.pos).map_or(self.src.len(), |t| t.0);
        DistError::Parse { input: self.src.to_string(), at, msg: msg.to_string() }
    }

    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Poly, DistError> {
        let mut acc = match self.peek_op() {
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            Some('-') => {
                self.pos += 1;
                self.term()?.scale(&-Rat::one())
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, DistError> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.power()?;
            if op == '*' {
                acc = acc.mul(&rhs);
            } else {
                match rhs.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(self.error("division by zero")),
                    None => return Err(self.error("division by a non-constant")),
                }
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, DistError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some((_, Tok::Num(k))) if *k <= 64 => {
                    let k = *k as u32;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.error("expected a small nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, DistError> {
        let Some((_, tok)) = self.tokens.get(self.pos).cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Poly::constant(self.n, Rat::from_integer(v.into()))),
            Tok::Var(i) if i < self.n => Ok(Poly::var(self.n, i)),
            Tok::Var(i) => {
                self.pos -= 1;
                Err(self.error(&format!("x{} is out of range for {} coordinates", i + 1, self.n)))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op('-') => Ok(self.atom()?.scale(&-Rat::one())),
            Tok::Op(_) => {
                self.pos -= 1;
                Err(self.error("expected a number, variable or '('"))
            }
        }
    }
}
