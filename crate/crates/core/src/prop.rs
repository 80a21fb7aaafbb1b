//! Propositional vocabulary, formulas, concrete syntax and evaluation.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! formula := imp
//! imp     := disj ('->' imp)?
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | 'true' | 'false' | ident | '(' formula ')'
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::trace::State;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabularyError {
    #[error("vocabulary must declare at least one proposition")]
    Empty,
    #[error("invalid proposition name {0:?}")]
    InvalidName(String),
    #[error("proposition {0:?} declared twice")]
    Duplicate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown proposition {name:?} at offset {offset}")]
    UnknownAtom { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownAtom { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vocabulary mismatch: {required} propositions required, state has {width}")]
pub struct VocabularyMismatch {
    pub required: usize,
    pub width: usize,
}

/// An ordered, duplicate-free list of proposition names.
///
/// Cloning is cheap; the names are shared.
#[derive(Clone, PartialEq, Eq)]
pub struct Vocabulary {
    names: Arc<[String]>,
    index: Arc<HashMap<String, usize>>,
}

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self, VocabularyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(VocabularyError::Empty);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) || name == "true" || name == "false" {
                return Err(VocabularyError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(VocabularyError::Duplicate(name.clone()));
            }
        }
        Ok(Vocabulary {
            names: names.into(),
            index: Arc::new(index),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, atom: usize) -> &str {
        &self.names[atom]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl fmt::Debug for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Propositional formula. Atoms are indices into a [`Vocabulary`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropFormula {
    True,
    False,
    Atom(usize),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Imp(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(i: usize) -> Self {
        PropFormula::Atom(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PropFormula) -> Self {
        PropFormula::Not(Box::new(f))
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Self, ParseError> {
        parse_formula(text, vocab)
    }

    /// Largest atom index occurring in the formula, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            PropFormula::True | PropFormula::False => None,
            PropFormula::Atom(i) => Some(*i),
            PropFormula::Not(f) => f.max_atom(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                a.max_atom().max(b.max_atom())
            }
        }
    }

    /// Evaluate in `state`. Fails if an atom lies outside the state's width.
    pub fn eval(&self, state: &State) -> Result<bool, VocabularyMismatch> {
        if let Some(atom) = self.max_atom() {
            if atom >= state.width() {
                return Err(VocabularyMismatch {
                    required: atom + 1,
                    width: state.width(),
                });
            }
        }
        Ok(self.eval_unchecked(state.bits()))
    }

    pub(crate) fn eval_unchecked(&self, bits: &[bool]) -> bool {
        match self {
            PropFormula::True => true,
            PropFormula::False => false,
            PropFormula::Atom(i) => bits[*i],
            PropFormula::Not(f) => !f.eval_unchecked(bits),
            PropFormula::And(a, b) => a.eval_unchecked(bits) && b.eval_unchecked(bits),
            PropFormula::Or(a, b) => a.eval_unchecked(bits) || b.eval_unchecked(bits),
            PropFormula::Imp(a, b) => !a.eval_unchecked(bits) || b.eval_unchecked(bits),
        }
    }

    /// Renders the formula in concrete syntax using the names of `vocab`.
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> Display<'a> {
        Display {
            formula: self,
            vocab,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PropFormula::Imp(..) => 1,
            PropFormula::Or(..) => 2,
            PropFormula::And(..) => 3,
            _ => 4,
        }
    }
}

/// The state description of `state`: a conjunction over every proposition.
pub fn state_description(state: &State) -> PropFormula {
    state
        .bits()
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if b {
                PropFormula::atom(i)
            } else {
                PropFormula::not(PropFormula::atom(i))
            }
        })
        .reduce(PropFormula::and)
        .unwrap_or(PropFormula::True)
}

/// Disjunction of the state descriptions of `states`; `false` for no states.
///
/// True exactly on the members of `states` among all states over `vocab`.
pub fn formula_from_state_set<'a, I>(states: I, vocab: &Vocabulary) -> Result<PropFormula, VocabularyMismatch>
where
    I: IntoIterator<Item = &'a State>,
{
    let mut out: Option<PropFormula> = None;
    for state in states {
        if state.width() != vocab.len() {
            return Err(VocabularyMismatch {
                required: vocab.len(),
                width: state.width(),
            });
        }
        let desc = state_description(state);
        out = Some(match out {
            None => desc,
            Some(acc) => PropFormula::or(acc, desc),
        });
    }
    Ok(out.unwrap_or(PropFormula::False))
}

pub struct Display<'a> {
    formula: &'a PropFormula,
    vocab: &'a Vocabulary,
}

impl Display<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &PropFormula) -> fmt::Result {
        match node {
            PropFormula::True => f.write_str("true"),
            PropFormula::False => f.write_str("false"),
            PropFormula::Atom(i) => match self.vocab.names().get(*i) {
                Some(name) => f.write_str(name),
                None => write!(f, "#{i}"),
            },
            PropFormula::Not(inner) => {
                f.write_str("!")?;
                self.child(f, inner, inner.precedence() < 4)
            }
            PropFormula::And(a, b) => self.binary(f, node, a, b, " & "),
            PropFormula::Or(a, b) => self.binary(f, node, a, b, " | "),
            PropFormula::Imp(a, b) => {
                // right associative
                self.child(f, a, a.precedence() <= node.precedence())?;
                f.write_str(" -> ")?;
                self.child(f, b, b.precedence() < node.precedence())
            }
        }
    }

    // `&` and `|` chains are left associative. A conjunction under a
    // disjunction is parenthesized even though the grammar does not need it.
    fn binary(
        &self,
        f: &mut fmt::Formatter<'_>,
        node: &PropFormula,
        a: &PropFormula,
        b: &PropFormula,
        op: &str,
    ) -> fmt::Result {
        let same = |x: &PropFormula| std::mem::discriminant(x) == std::mem::discriminant(node);
        self.child(f, a, a.precedence() < 4 && !same(a))?;
        f.write_str(op)?;
        self.child(f, b, b.precedence() < 4)
    }

    fn child(&self, f: &mut fmt::Formatter<'_>, node: &PropFormula, parens: bool) -> fmt::Result {
        if parens {
            f.write_str("(")?;
            self.write(f, node)?;
            f.write_str(")")
        } else {
            self.write(f, node)
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    True,
    False,
    Ident(String),
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Not => "'!'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Arrow => "'->'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::True => "'true'".into(),
            Token::False => "'false'".into(),
            Token::Ident(name) => format!("identifier {name:?}"),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' => {
                if bytes.get(pos + 1) != Some(&b'>') {
                    return Err(ParseError::Syntax {
                        offset: pos,
                        message: "expected '->'".into(),
                    });
                }
                pos += 1;
                Token::Arrow
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while pos + 1 < bytes.len()
                    && (bytes[pos + 1].is_ascii_alphanumeric() || bytes[pos + 1] == b'_')
                {
                    pos += 1;
                }
                match &text[start..=pos] {
                    "true" => Token::True,
                    "false" => Token::False,
                    word => Token::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: pos,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        pos += 1;
        out.push((token, start));
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    vocab: &'a Vocabulary,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn imp(&mut self) -> Result<PropFormula, ParseError> {
        let lhs = self.disj()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(PropFormula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<PropFormula, ParseError> {
        let mut acc = self.conj()?;
        while *self.peek() == Token::Or {
            self.bump();
            acc = PropFormula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<PropFormula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            acc = PropFormula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PropFormula, ParseError> {
        match self.peek().clone() {
            Token::Not => {
                self.bump();
                Ok(PropFormula::not(self.unary()?))
            }
            Token::True => {
                self.bump();
                Ok(PropFormula::True)
            }
            Token::False => {
                self.bump();
                Ok(PropFormula::False)
            }
            Token::Ident(name) => {
                let (_, offset) = self.bump();
                self.vocab
                    .lookup(&name)
                    .map(PropFormula::Atom)
                    .ok_or(ParseError::UnknownAtom { name, offset })
            }
            Token::LParen => {
                self.bump();
                let inner = self.imp()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses `text` against `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<PropFormula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vocab,
    };
    let formula = parser.imp()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected("end of input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PropFormula as F;

    fn abc() -> Vocabulary {
        Vocabulary::new(["a", "b", "c"]).unwrap()
    }

    fn st(bits: &[bool]) -> State {
        State::new(bits.to_vec())
    }

    #[test]
    fn precedence() {
        let v = abc();
        let f = parse_formula("!a | b & c", &v).unwrap();
        assert_eq!(f, F::or(F::not(F::atom(0)), F::and(F::atom(1), F::atom(2))));
    }

    #[test]
    fn implication_is_right_associative() {
        let v = abc();
        let f = parse_formula("a -> b -> c", &v).unwrap();
        assert_eq!(f, F::imp(F::atom(0), F::imp(F::atom(1), F::atom(2))));
        let g = parse_formula("(a -> b) -> c", &v).unwrap();
        assert_eq!(g, F::imp(F::imp(F::atom(0), F::atom(1)), F::atom(2)));
    }

    #[test]
    fn incomplete_input() {
        let err = parse_formula("a &", &abc()).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 3, .. }), "{err}");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let v = abc();
        assert_eq!(parse_formula("a - b", &v).unwrap_err().offset(), 2);
        assert_eq!(parse_formula("(a | b", &v).unwrap_err().offset(), 6);
        assert_eq!(parse_formula("a b", &v).unwrap_err().offset(), 2);
        assert_eq!(parse_formula("a # b", &v).unwrap_err().offset(), 2);
        assert_eq!(parse_formula("", &v).unwrap_err().offset(), 0);
    }

    #[test]
    fn unknown_atom_is_named() {
        let err = parse_formula("a & zed", &abc()).unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownAtom {
                name: "zed".into(),
                offset: 4
            }
        );
    }

    #[test]
    fn evaluation() {
        let v = Vocabulary::new(["a", "b"]).unwrap();
        let eval = |text: &str, bits: &[bool]| parse_formula(text, &v).unwrap().eval(&st(bits)).unwrap();
        assert!(eval("a & !b", &[true, false]));
        assert!(eval("true", &[false, false]));
        assert!(!eval("false", &[true, true]));
        assert!(!eval("a -> b", &[true, false]));
        assert!(eval("a -> b", &[false, false]));
    }

    #[test]
    fn eval_rejects_narrow_state() {
        let f = parse_formula("c", &abc()).unwrap();
        assert_eq!(
            f.eval(&st(&[true, true])),
            Err(VocabularyMismatch { required: 3, width: 2 })
        );
    }

    #[test]
    fn vocabulary_validation() {
        assert_eq!(Vocabulary::new(Vec::<String>::new()), Err(VocabularyError::Empty));
        assert!(matches!(Vocabulary::new(["a", "a"]), Err(VocabularyError::Duplicate(_))));
        assert!(matches!(Vocabulary::new(["1a"]), Err(VocabularyError::InvalidName(_))));
        assert!(matches!(Vocabulary::new(["true"]), Err(VocabularyError::InvalidName(_))));
        assert!(Vocabulary::new(["_x9", "B"]).is_ok());
    }

    #[test]
    fn dnf_from_states() {
        let v = Vocabulary::new(["a", "b"]).unwrap();
        let empty = formula_from_state_set(std::iter::empty(), &v).unwrap();
        assert_eq!(empty, F::False);

        let single = [st(&[true, false])];
        let f = formula_from_state_set(&single, &v).unwrap();
        assert_eq!(f.display(&v).to_string(), "a & !b");

        let pair = [st(&[true, false]), st(&[false, true])];
        let f = formula_from_state_set(&pair, &v).unwrap();
        assert_eq!(f.display(&v).to_string(), "(a & !b) | (!a & b)");
        let all = [[false, false], [false, true], [true, false], [true, true]];
        let truth: Vec<bool> = all.iter().map(|b| f.eval(&st(b)).unwrap()).collect();
        assert_eq!(truth, [false, true, true, false]);
    }

    #[test]
    fn printer_parenthesizes_for_round_trip() {
        let v = abc();
        let cases = [
            (F::and(F::atom(0), F::and(F::atom(1), F::atom(2))), "a & (b & c)"),
            (F::and(F::and(F::atom(0), F::atom(1)), F::atom(2)), "a & b & c"),
            (F::imp(F::imp(F::atom(0), F::atom(1)), F::atom(2)), "(a -> b) -> c"),
            (F::not(F::or(F::atom(0), F::True)), "!(a | true)"),
            (F::not(F::not(F::atom(0))), "!!a"),
            (F::or(F::imp(F::atom(0), F::atom(1)), F::False), "(a -> b) | false"),
        ];
        for (f, text) in cases {
            assert_eq!(f.display(&v).to_string(), text);
            assert_eq!(parse_formula(text, &v).unwrap(), f);
        }
    }
}
