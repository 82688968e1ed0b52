//! The builtin graph-spec grammar:
//!
//! ```text
//! spec := petersen
//!       | complete:n | empty:n | cycle:n | star:n
//!       | mkn:m,n | oa:k,n
//!       | cone:spec | join:spec,spec | product:spec,spec
//! ```
//!
//! Errors carry the byte offset of the offending token.

use ctqw_core::graph::{
    cartesian_product, complete, cone, cycle, disjoint_copies, empty, join, oa_cyclic, oa_graph,
    petersen, star,
};
use ctqw_core::Graph;

#[derive(Debug)]
pub struct SpecError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "graph spec error at position {}: {}", self.position, self.message)
    }
}

pub fn parse_graph_spec(input: &str) -> Result<Graph, SpecError> {
    let mut p = Parser { input, pos: 0 };
    let g = p.spec()?;
    if p.pos != input.len() {
        return Err(p.error(format!("unexpected trailing input '{}'", &input[p.pos..])));
    }
    Ok(g)
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: String) -> SpecError {
        SpecError {
            position: self.pos,
            message,
        }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn ident(&mut self) -> &'a str {
        let rest = self.rest();
        let end = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        let rest = self.rest();
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error("expected an integer".into()));
        }
        let value = rest[..end]
            .parse()
            .map_err(|e| self.error(format!("bad integer: {e}")))?;
        self.pos += end;
        Ok(value)
    }

    fn lift(&self, r: ctqw_core::Result<Graph>, at: usize) -> Result<Graph, SpecError> {
        r.map_err(|e| SpecError {
            position: at,
            message: e.to_string(),
        })
    }

    fn spec(&mut self) -> Result<Graph, SpecError> {
        let start = self.pos;
        let head = self.ident();
        match head {
            "petersen" => Ok(petersen()),
            "complete" | "empty" | "cycle" | "star" => {
                self.expect(':')?;
                let n = self.int()?;
                let g = match head {
                    "complete" => complete(n),
                    "empty" => empty(n),
                    "cycle" => cycle(n),
                    _ => star(n),
                };
                self.lift(g, start)
            }
            "mkn" => {
                self.expect(':')?;
                let m = self.int()?;
                self.expect(',')?;
                let n = self.int()?;
                self.lift(disjoint_copies(m, n), start)
            }
            "oa" => {
                self.expect(':')?;
                let k = self.int()?;
                self.expect(',')?;
                let n = self.int()?;
                let oa = oa_cyclic(k, n).map_err(|e| SpecError {
                    position: start,
                    message: e.to_string(),
                })?;
                self.lift(oa_graph(&oa), start)
            }
            "cone" => {
                self.expect(':')?;
                let y = self.spec()?;
                self.lift(cone(&y), start)
            }
            "join" => {
                self.expect(':')?;
                let x = self.spec()?;
                self.expect(',')?;
                let y = self.spec()?;
                Ok(join(&x, &y))
            }
            "product" => {
                self.expect(':')?;
                let x = self.spec()?;
                self.expect(',')?;
                let y = self.spec()?;
                Ok(cartesian_product(&x, &y))
            }
            "" => Err(self.error("expected a graph spec".into())),
            other => {
                self.pos = start;
                Err(self.error(format!("unknown construction '{other}'")))
            }
        }
    }
}
