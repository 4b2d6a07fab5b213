//! Concrete elements of the representation space: polynomials (and, for GL,
//! polynomial-coefficient differential operators) with rational
//! coefficients, the coefficient-functional pairing, and a small expression
//! parser for the command line.
//!
//! Coordinates are `x1 … xm` with m the dimension of the defining
//! representation; the GL setting adds the dual coordinates `d1 … dm`. A
//! coefficient functional c_{α,β} pairs with an element by reading off the
//! coefficient of x^α·d^β, which is how invariants are evaluated at concrete
//! elements.

use num::Zero;

use crate::multiindex::MultiIndex;
use crate::poly::{Poly, VarId, VarMonomial};
use crate::scalar::Rat;
use crate::umbral::{CoeffVar, Invariant};
use crate::verify::VerifyError;
use crate::Group;

const D_BIT: VarId = 1 << 16;

fn x_id(i: usize) -> VarId {
    i as VarId - 1
}

fn d_id(i: usize) -> VarId {
    D_BIT | (i as VarId - 1)
}

/// An element of the representation space, tagged with its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiElement {
    group: Group,
    poly: Poly<VarMonomial, Rat>,
}

impl PsiElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn poly(&self) -> &Poly<VarMonomial, Rat> {
        &self.poly
    }

    pub fn from_poly(group: Group, poly: Poly<VarMonomial, Rat>) -> PsiElement {
        PsiElement { group, poly }
    }

    /// The coefficient of x^α (O, Sp) or x^α·d^β (GL).
    pub fn coefficient(&self, alpha: &MultiIndex, beta: Option<&MultiIndex>) -> Result<Rat, VerifyError> {
        let m = self.group.index_len();
        if alpha.len() != m || beta.is_some_and(|b| b.len() != m) {
            return Err(VerifyError::LengthMismatch {
                expected: m,
                got: alpha.len().max(beta.map_or(0, |b| b.len())),
            });
        }
        if beta.is_some() != self.group.is_gl() {
            return Err(VerifyError::Parse(
                "dual multi-index is required exactly in the GL setting".into(),
            ));
        }
        let mut pairs: Vec<(VarId, u32)> = Vec::new();
        for (i, &e) in alpha.entries().iter().enumerate() {
            pairs.push((x_id(i + 1), e));
        }
        if let Some(beta) = beta {
            for (i, &e) in beta.entries().iter().enumerate() {
                pairs.push((d_id(i + 1), e));
            }
        }
        let mono = VarMonomial::from_pairs(pairs);
        Ok(self.poly.coeff(&mono).cloned().unwrap_or_else(Rat::zero))
    }

    /// Scales the element by t.
    pub fn scale(&self, t: &Rat) -> PsiElement {
        PsiElement {
            group: self.group,
            poly: self.poly.scale(t),
        }
    }

    pub fn to_text(&self) -> String {
        self.poly.to_text_with(&|m| m.to_text(&var_name))
    }
}

fn var_name(id: VarId) -> String {
    if id & D_BIT != 0 {
        format!("d{}", (id & !D_BIT) + 1)
    } else {
        format!("x{}", id + 1)
    }
}

/// The conic A·x1² + B·x1·x2 + C·x2² + D·x1 + E·x2 + F as an O(2) element.
pub fn conic(coeffs: &[Rat; 6]) -> PsiElement {
    let [a, b, c, d, e, f] = coeffs;
    let term = |pairs: &[(VarId, u32)], coef: &Rat| {
        Poly::term(VarMonomial::from_pairs(pairs.iter().copied()), coef.clone())
    };
    let poly = term(&[(x_id(1), 2)], a)
        .add(&term(&[(x_id(1), 1), (x_id(2), 1)], b))
        .add(&term(&[(x_id(2), 2)], c))
        .add(&term(&[(x_id(1), 1)], d))
        .add(&term(&[(x_id(2), 1)], e))
        .add(&term(&[], f));
    PsiElement {
        group: Group::o(2),
        poly,
    }
}

/// The binary form Σᵢ coeffs[i]·x1^{m−i}·x2^i as an Sp(2) element
/// (coefficients listed from the x1^m end; length must be m + 1).
pub fn binary_form(m: u32, coeffs: &[Rat]) -> PsiElement {
    assert_eq!(coeffs.len(), m as usize + 1, "a degree-{m} form has {} coefficients", m + 1);
    let mut poly = Poly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        poly.add_term(
            VarMonomial::from_pairs([(x_id(1), m - i as u32), (x_id(2), i as u32)]),
            c.clone(),
        );
    }
    PsiElement {
        group: Group::sp(1),
        poly,
    }
}

/// Evaluates an invariant at a concrete element: every coefficient
/// functional is replaced by the corresponding coefficient of ψ and the
/// polynomial is summed exactly.
pub fn evaluate(inv: &Invariant, psi: &PsiElement) -> Result<Rat, VerifyError> {
    if !inv.group().same_as(&psi.group) {
        return Err(VerifyError::GroupMismatch {
            expected: *inv.group(),
            got: psi.group,
        });
    }
    let mut total = Rat::zero();
    for (mono, coeff) in inv.poly().terms() {
        let mut term = Rat::from(coeff.clone());
        for (f, e) in mono.factors() {
            let v = psi.coefficient(f.alpha(), f.beta())?;
            if v.is_zero() {
                term = Rat::zero();
                break;
            }
            for _ in 0..*e {
                term *= &v;
            }
        }
        total += term;
    }
    Ok(total)
}

/// Substitutes an arbitrary polynomial for every coefficient functional —
/// the symbolic counterpart of `evaluate`, used to check classical formulas
/// (discriminants and their relatives) as polynomial identities.
pub fn substitute_coefficients(
    inv: &Invariant,
    assign: &dyn Fn(&CoeffVar) -> Poly<VarMonomial, Rat>,
) -> Poly<VarMonomial, Rat> {
    let mut total: Poly<VarMonomial, Rat> = Poly::zero();
    for (mono, coeff) in inv.poly().terms() {
        let mut term: Poly<VarMonomial, Rat> = Poly::constant(Rat::from(coeff.clone()));
        for (f, e) in mono.factors() {
            term = term.mul(&assign(f).pow(*e));
        }
        total = total.add(&term);
    }
    total
}

/// Parses an element expression: rational constants, coordinates `x1 … xm`,
/// dual coordinates `d1 … dm` (GL only), `+ - * / ^ ( )`, implicit
/// multiplication by juxtaposition (`2x1d2`, `3(x1+x2)`), and `/` by a
/// constant. Exponents are nonnegative integers.
pub fn parse_psi(text: &str, group: &Group) -> Result<PsiElement, VerifyError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        group: *group,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(VerifyError::Parse(format!(
            "unexpected trailing input near token {}",
            parser.pos + 1
        )));
    }
    Ok(PsiElement { group: *group, poly })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Var(VarId),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, VerifyError> {
    if !text.is_ascii() {
        return Err(VerifyError::Parse(
            "expressions must be ASCII (use `-` for minus)".into(),
        ));
    }
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = text[start..i]
                    .parse()
                    .map_err(|_| VerifyError::Parse(format!("number {} too large", &text[start..i])))?;
                out.push(Tok::Num(n));
            }
            'x' | 'd' => {
                let is_d = ch == 'd';
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(VerifyError::Parse(format!(
                        "coordinate `{ch}` needs an index, like {ch}1"
                    )));
                }
                let idx: usize = text[start..i]
                    .parse()
                    .map_err(|_| VerifyError::Parse("coordinate index too large".into()))?;
                if idx == 0 {
                    return Err(VerifyError::Parse("coordinate indices start at 1".into()));
                }
                if idx > 1 << 10 {
                    return Err(VerifyError::Parse(format!("coordinate index {idx} too large")));
                }
                out.push(Tok::Var(if is_d { d_id(idx) } else { x_id(idx) }));
            }
            _ => {
                return Err(VerifyError::Parse(format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
    group: Group,
}

type PPoly = Poly<VarMonomial, Rat>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<PPoly, VerifyError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PPoly, VerifyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.factor()?;
                    let c = constant_of(&rhs).ok_or_else(|| {
                        VerifyError::Parse("division is only supported by nonzero constants".into())
                    })?;
                    if c.is_zero() {
                        return Err(VerifyError::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&c.recip());
                }
                // Juxtaposition: a factor directly follows.
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PPoly, VerifyError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Tok::Num(e)) => {
                    let e = u32::try_from(e)
                        .map_err(|_| VerifyError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(VerifyError::Parse("`^` must be followed by a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PPoly, VerifyError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Poly::constant(Rat::from_integer(n.into()))),
            Some(Tok::Var(id)) => {
                let m = self.group.index_len();
                let (is_d, idx) = (id & D_BIT != 0, ((id & !D_BIT) + 1) as usize);
                if idx > m {
                    return Err(VerifyError::Parse(format!(
                        "coordinate index {idx} exceeds the {m} coordinates of {}",
                        self.group
                    )));
                }
                if is_d && !self.group.is_gl() {
                    return Err(VerifyError::Parse(format!(
                        "dual coordinates are only defined for GL, not {}",
                        self.group
                    )));
                }
                Ok(Poly::var(id))
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(VerifyError::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(VerifyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_of(p: &PPoly) -> Option<Rat> {
    if p.is_zero() {
        return Some(Rat::zero());
    }
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.terms().next().unwrap();
    use crate::poly::Monomial;
    if m.is_one() {
        Some(c.clone())
    } else {
        None
    }
}
