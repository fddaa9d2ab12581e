//! Textual process-tree grammar:
//!
//! ```text
//! Tree     := Activity | "tau" | Op "(" Tree ("," Tree)* ")"
//! Op       := "->" | "X" | "+" | "*"        (sequence, choice, concurrency, loop)
//! Activity := [A-Za-z0-9_]+ | single-quoted string, '' escapes a quote
//! ```
//!
//! Whitespace is insignificant outside quotes. `parse ∘ print` is the
//! identity; `print ∘ parse` is the identity modulo whitespace.

use thiserror::Error;

use crate::petri::{Label, SILENT_TOKEN};
use crate::tree::{Operator, ProcessTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeTextError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("loop operator takes exactly two children, got {arity} (at byte {position})")]
    LoopArity { position: usize, arity: usize },
}

fn is_bare_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_bare_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(is_bare_char) && name != SILENT_TOKEN && name != "X"
}

/// Serializes a tree; the output is canonical for a given tree, so it doubles
/// as the sort key of the canonical form.
pub fn write_tree_text(tree: &ProcessTree) -> String {
    let mut out = String::new();
    write_into(tree, &mut out);
    out
}

fn write_into(tree: &ProcessTree, out: &mut String) {
    match tree {
        ProcessTree::Leaf(Label::Silent) => out.push_str(SILENT_TOKEN),
        ProcessTree::Leaf(Label::Activity(name)) => {
            if is_bare_name(name) {
                out.push_str(name);
            } else {
                out.push('\'');
                for c in name.chars() {
                    if c == '\'' {
                        out.push('\'');
                    }
                    out.push(c);
                }
                out.push('\'');
            }
        }
        ProcessTree::Operator(kind, children) => {
            out.push_str(kind.symbol());
            out.push('(');
            for (i, child) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_into(child, out);
            }
            out.push(')');
        }
    }
}

pub fn read_tree_text(input: &str) -> Result<ProcessTree, TreeTextError> {
    let mut parser = Parser { input, bytes: input.as_bytes(), pos: 0 };
    parser.skip_ws();
    let tree = parser.parse_tree()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input after tree"));
    }
    Ok(tree)
}

#[derive(Clone, Copy)]
struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> TreeTextError {
        TreeTextError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, expected: u8) -> Result<(), TreeTextError> {
        if self.peek() == Some(expected) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {:?}", expected as char)))
        }
    }

    fn parse_tree(&mut self) -> Result<ProcessTree, TreeTextError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("expected a tree")),
            Some(b'\'') => self.parse_quoted(),
            Some(b'-') => {
                self.eat(b'-')?;
                self.eat(b'>').map_err(|_| TreeTextError::Parse {
                    position: self.pos,
                    message: "expected '>' after '-'".into(),
                })?;
                self.parse_children(Operator::Seq)
            }
            Some(b'+') => {
                self.pos += 1;
                self.parse_children(Operator::And)
            }
            Some(b'*') => {
                self.pos += 1;
                self.parse_children(Operator::Loop)
            }
            Some(c) if is_bare_char(c as char) => {
                let start = self.pos;
                while self.peek().is_some_and(|c| is_bare_char(c as char)) {
                    self.pos += 1;
                }
                let word = &self.input[start..self.pos];
                let mut lookahead = *self;
                lookahead.skip_ws();
                if word == "X" && lookahead.peek() == Some(b'(') {
                    return self.parse_children(Operator::Xor);
                }
                if word == SILENT_TOKEN {
                    return Ok(ProcessTree::silent());
                }
                Label::activity(word).map(ProcessTree::Leaf).map_err(|e| TreeTextError::Parse {
                    position: start,
                    message: e.to_string(),
                })
            }
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
        }
    }

    fn parse_quoted(&mut self) -> Result<ProcessTree, TreeTextError> {
        let start = self.pos;
        self.eat(b'\'')?;
        let mut name = String::new();
        loop {
            match self.peek() {
                None => {
                    return Err(TreeTextError::Parse {
                        position: start,
                        message: "unterminated quoted activity".into(),
                    })
                }
                Some(b'\'') => {
                    self.pos += 1;
                    if self.peek() == Some(b'\'') {
                        name.push('\'');
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Some(_) => {
                    let c = self.input[self.pos..].chars().next().unwrap();
                    name.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
        Label::activity(name)
            .map(ProcessTree::Leaf)
            .map_err(|e| TreeTextError::Parse { position: start, message: e.to_string() })
    }

    fn parse_children(&mut self, kind: Operator) -> Result<ProcessTree, TreeTextError> {
        let op_pos = self.pos;
        self.skip_ws();
        self.eat(b'(')?;
        let mut children = vec![self.parse_tree()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    children.push(self.parse_tree()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        if kind == Operator::Loop && children.len() != 2 {
            return Err(TreeTextError::LoopArity { position: op_pos, arity: children.len() });
        }
        ProcessTree::operator(kind, children)
            .map_err(|e| TreeTextError::Parse { position: op_pos, message: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(s: &str) -> ProcessTree {
        ProcessTree::activity(s).unwrap()
    }

    #[test]
    fn parses_running_example_tree() {
        let tree = read_tree_text("->(a,*(->(+(X(b,c),d),e),f),X(g,h))").unwrap();
        let expected = ProcessTree::Operator(
            Operator::Seq,
            vec![
                act("a"),
                ProcessTree::binary(
                    Operator::Loop,
                    ProcessTree::binary(
                        Operator::Seq,
                        ProcessTree::binary(
                            Operator::And,
                            ProcessTree::binary(Operator::Xor, act("b"), act("c")),
                            act("d"),
                        ),
                        act("e"),
                    ),
                    act("f"),
                ),
                ProcessTree::binary(Operator::Xor, act("g"), act("h")),
            ],
        );
        assert_eq!(tree, expected);
        assert_eq!(write_tree_text(&tree), "->(a,*(->(+(X(b,c),d),e),f),X(g,h))");
    }

    #[test]
    fn parses_tau() {
        assert_eq!(read_tree_text("tau").unwrap(), ProcessTree::silent());
        assert_eq!(read_tree_text(" tau ").unwrap(), ProcessTree::silent());
    }

    #[test]
    fn loop_arity_checked() {
        let err = read_tree_text("*(a,b,c)").unwrap_err();
        assert_eq!(err, TreeTextError::LoopArity { position: 1, arity: 3 });
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = read_tree_text("->( a , X( b , c ) )").unwrap();
        let b = read_tree_text("->(a,X(b,c))").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quoted_activities_roundtrip() {
        let tree = act("hello world");
        let text = write_tree_text(&tree);
        assert_eq!(text, "'hello world'");
        assert_eq!(read_tree_text(&text).unwrap(), tree);

        let quote = act("it's");
        let text = write_tree_text(&quote);
        assert_eq!(text, "'it''s'");
        assert_eq!(read_tree_text(&text).unwrap(), quote);
    }

    #[test]
    fn bare_x_is_an_activity_when_not_called() {
        let tree = read_tree_text("->(X,a)");
        // "X" without "(" parses as an activity named X, which the writer
        // must quote to stay unambiguous.
        let tree = tree.unwrap();
        let text = write_tree_text(&tree);
        assert_eq!(text, "->('X',a)");
        assert_eq!(read_tree_text(&text).unwrap(), tree);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match read_tree_text("->(a,") {
            Err(TreeTextError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        match read_tree_text("->(a))") {
            Err(TreeTextError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reserved_activity_name_rejected_when_quoted() {
        assert!(matches!(read_tree_text("'tau'"), Err(TreeTextError::Parse { .. })));
    }
}
