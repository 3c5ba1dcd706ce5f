//! Parser for bracketing text: `term := var | "(" term term ")"`, `var := "x" digits`.
//! The outermost pair of parentheses may be omitted.

use super::{BinaryTree, Bracketing};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    next_var: usize,
}

/// Parses a bracketing of `x1 ... xn`; variables must appear in order, each once.
pub fn parse_bracketing(text: &str) -> Result<Bracketing> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        next_var: 1,
    };
    let mut terms = Vec::with_capacity(2);
    p.skip_ws();
    while p.pos < p.src.len() {
        if terms.len() == 2 {
            return Err(p.err("juxtaposition of more than two terms needs parentheses"));
        }
        terms.push(p.term()?);
        p.skip_ws();
    }
    let tree = match terms.len() {
        0 => return Err(p.err("empty bracketing")),
        1 => terms.pop().unwrap(),
        _ => BinaryTree::wedge(&terms[0], &terms[1]),
    };
    Ok(Bracketing::from_tree(tree))
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<BinaryTree> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let left = self.term()?;
                let right = self.term()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(BinaryTree::wedge(&left, &right))
            }
            Some(b'x') => self.var(),
            Some(c) => Err(self.err(&format!("unexpected {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn var(&mut self) -> Result<BinaryTree> {
        let start = self.pos;
        self.pos += 1;
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::Syntax {
                pos: start,
                msg: "variable needs an index".into(),
            });
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
        let index: usize = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "variable index too large".into(),
        })?;
        if index != self.next_var {
            return Err(Error::VariableOrder {
                pos: start,
                expected: self.next_var,
                found: index,
            });
        }
        self.next_var += 1;
        Ok(BinaryTree::leaf())
    }
}
