use std::collections::BTreeSet;

use super::{is_agent_name, AgentId, ConstId, Formula, Mode, SyntaxError};

/// Parses `text` into a desugared [`Formula`].
///
/// Precedence, tightest first: `~`, `[c]` and `<c>`; then `&`; then `|`;
/// then `->`, which associates to the right. `&` and `|` associate to the
/// left.
pub fn parse_formula(text: &str, mode: Mode) -> Result<Formula, SyntaxError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        mode,
    };
    let f = parser.implication()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.eat("|") {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(b'[') => {
                self.pos += 1;
                let cs = self.prefix_consts("]")?;
                let body = self.unary()?;
                Ok(Formula::inspect_all(&cs, body))
            }
            Some(b'<') => {
                self.pos += 1;
                let cs = self.prefix_consts(">")?;
                let body = self.unary()?;
                Ok(Formula::not(Formula::inspect_all(&cs, Formula::not(body))))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.implication()?;
                self.expect(")")?;
                Ok(f)
            }
            Some(_) => {
                let start = self.pos;
                let word = self.word();
                match word {
                    "T" => Ok(Formula::Top),
                    "Kv" => self.kv(),
                    _ => {
                        self.pos = start;
                        Err(self.error("expected a formula"))
                    }
                }
            }
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Reads a maximal `[A-Za-z0-9]` run; `_` is left for agent subscripts.
    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn ident(&mut self) -> Result<ConstId, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        ConstId::new(name).map_err(|_| {
            self.pos = start;
            self.error("expected a constant name")
        })
    }

    /// Constants of a `[...]` or `<...>` prefix, sorted and deduplicated.
    fn prefix_consts(&mut self, close: &str) -> Result<BTreeSet<ConstId>, SyntaxError> {
        if self.eat(close) {
            return Err(self.error("empty constant list in inspection prefix"));
        }
        let cs = self.const_list()?;
        self.expect(close)?;
        Ok(cs)
    }

    fn const_list(&mut self) -> Result<BTreeSet<ConstId>, SyntaxError> {
        let mut cs = BTreeSet::new();
        cs.insert(self.ident()?);
        while self.eat(",") {
            cs.insert(self.ident()?);
        }
        Ok(cs)
    }

    /// Either `{c,d}` (possibly empty) or a bare non-empty list `c,d`.
    fn const_set(&mut self) -> Result<BTreeSet<ConstId>, SyntaxError> {
        if self.eat("{") {
            if self.eat("}") {
                return Ok(BTreeSet::new());
            }
            let cs = self.const_list()?;
            self.expect("}")?;
            Ok(cs)
        } else {
            self.const_list()
        }
    }

    fn kv(&mut self) -> Result<Formula, SyntaxError> {
        let agent = if self.src.get(self.pos) == Some(&b'_') {
            if self.mode == Mode::Single {
                return Err(self.error("agent subscript not allowed in single-agent mode"));
            }
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            if !is_agent_name(name) {
                self.pos = start;
                return Err(self.error("expected an agent name after `_`"));
            }
            AgentId::new(name).map_err(|_| self.error("invalid agent name"))?
        } else {
            if self.mode == Mode::Multi {
                return Err(self.error("agent subscript `Kv_i` required in multi-agent mode"));
            }
            AgentId::single()
        };
        self.expect("(")?;
        let first = self.const_set()?;
        let f = if self.eat(";") {
            let rhs = self.const_set()?;
            Formula::dependency(&agent, &first, &rhs)
        } else {
            Formula::kv_all(&agent, &first)
        };
        self.expect(")")?;
        Ok(f)
    }
}
