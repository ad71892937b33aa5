//! A small text grammar for elements of the scroll's Chow ring.
//!
//! Expressions are integer combinations of monomials in the two divisor
//! symbols `M` (the tautological class) and `F` (the fiber class):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [int] ['*'] factor*
//! factor := ('M'|'F') ['^' uint]
//! ```
//!
//! Parsing collects like terms into a canonical form — terms sorted by
//! descending `M`-power, then descending `F`-power, zero terms dropped —
//! and the [`Display`] impl prints that form back, so parsing and printing
//! are mutually inverse on canonical expressions. Linear expressions such
//! as `2M-F` convert to [`chow::DivisorClass`] for use in the
//! complete-intersection routines.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::chow::DivisorClass;

/// Parse failure, with the byte offset of the offending input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    /// Input that does not match the grammar.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    /// A `^` that does not follow one of the symbols `M`, `F`.
    #[error("exponent on unknown symbol at byte {offset}")]
    ExponentOnUnknownSymbol { offset: usize },
    /// Like-term collection overflowed a signed 64-bit coefficient.
    #[error("coefficient overflow while collecting like terms")]
    CoefficientOverflow,
}

fn syntax(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        offset,
        message: message.into(),
    }
}

/// One collected term `coeff · M^m · F^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub m: u32,
    pub f: u32,
}

/// A canonical sum of terms in the symbols `M` and `F`.
///
/// The term list is sorted by descending `m`, then descending `f`, and
/// contains no zero coefficients; the zero expression has no terms at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowExpr {
    terms: Vec<Term>,
}

impl ChowExpr {
    /// The zero expression.
    pub fn zero() -> Self {
        ChowExpr { terms: Vec::new() }
    }

    /// Collect an arbitrary term list into canonical form.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Result<Self, ExprError> {
        // Descending monomial order: BTreeMap on the reversed key.
        let mut collected: BTreeMap<(std::cmp::Reverse<u32>, std::cmp::Reverse<u32>), i64> =
            BTreeMap::new();
        for t in terms {
            let slot = collected
                .entry((std::cmp::Reverse(t.m), std::cmp::Reverse(t.f)))
                .or_insert(0);
            *slot = slot
                .checked_add(t.coeff)
                .ok_or(ExprError::CoefficientOverflow)?;
        }
        let terms = collected
            .into_iter()
            .filter(|&(_, coeff)| coeff != 0)
            .map(|((std::cmp::Reverse(m), std::cmp::Reverse(f)), coeff)| Term { coeff, m, f })
            .collect();
        Ok(ChowExpr { terms })
    }

    /// The canonical term list.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Whether this is the zero expression.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Interpret a linear expression `m·M + f·F` as a divisor class.
    ///
    /// Returns `None` when any term is nonlinear (total degree ≠ 1), e.g.
    /// for `M^2` or a nonzero constant.
    pub fn to_divisor_class(&self) -> Option<DivisorClass> {
        let mut class = DivisorClass { m: 0, f: 0 };
        for t in &self.terms {
            match (t.m, t.f) {
                (1, 0) => class.m = t.coeff,
                (0, 1) => class.f = t.coeff,
                _ => return None,
            }
        }
        Some(class)
    }
}

impl fmt::Display for ChowExpr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let magnitude = t.coeff.unsigned_abs();
            if i == 0 {
                if t.coeff < 0 {
                    write!(out, "-")?;
                }
            } else if t.coeff < 0 {
                write!(out, "-")?;
            } else {
                write!(out, "+")?;
            }
            let constant = t.m == 0 && t.f == 0;
            if magnitude != 1 || constant {
                write!(out, "{magnitude}")?;
            }
            for (symbol, power) in [('M', t.m), ('F', t.f)] {
                match power {
                    0 => {}
                    1 => write!(out, "{symbol}")?,
                    _ => write!(out, "{symbol}^{power}")?,
                }
            }
        }
        Ok(())
    }
}

/// Parse an expression in the `M`/`F` grammar into canonical form.
pub fn parse_chow_expr(text: &str) -> Result<ChowExpr, ExprError> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
    }
    .expression()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn expression(mut self) -> Result<ChowExpr, ExprError> {
        let mut terms = Vec::new();
        self.skip_spaces();
        let mut sign: i64 = 1;
        if let Some(b) = self.peek() {
            if b == b'-' || b == b'+' {
                sign = if b == b'-' { -1 } else { 1 };
                self.pos += 1;
            }
        }
        loop {
            terms.push(self.term(sign)?);
            self.skip_spaces();
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(b) => {
                    return Err(syntax(
                        self.pos,
                        format!("expected '+' or '-', found {:?}", b as char),
                    ))
                }
            }
            self.pos += 1;
        }
        ChowExpr::from_terms(terms)
    }

    /// `term := [int] ['*'] factor*`, with the enclosing sign applied.
    fn term(&mut self, sign: i64) -> Result<Term, ExprError> {
        self.skip_spaces();
        let start = self.pos;
        let literal = self.integer()?;
        self.skip_spaces();
        let star = literal.is_some() && self.peek() == Some(b'*');
        if star {
            self.pos += 1;
        }
        let mut m: u32 = 0;
        let mut f: u32 = 0;
        let mut factors = 0usize;
        loop {
            self.skip_spaces();
            match self.peek() {
                Some(b'M') => self.factor(&mut m)?,
                Some(b'F') => self.factor(&mut f)?,
                Some(b'^') => return Err(ExprError::ExponentOnUnknownSymbol { offset: self.pos }),
                _ => break,
            }
            factors += 1;
        }
        if star && factors == 0 {
            return Err(syntax(self.pos, "expected a factor after '*'"));
        }
        let coeff = match literal {
            Some(value) => value,
            None if factors == 0 => {
                return Err(syntax(start, "expected a term"));
            }
            None => 1,
        };
        Ok(Term {
            coeff: sign * coeff,
            m,
            f,
        })
    }

    /// `factor := ('M'|'F') ['^' uint]`; accumulates into the symbol's power.
    fn factor(&mut self, power: &mut u32) -> Result<(), ExprError> {
        self.pos += 1;
        self.skip_spaces();
        let exponent = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_spaces();
            let at = self.pos;
            match self.integer()? {
                Some(value) => u32::try_from(value)
                    .map_err(|_| syntax(at, "exponent too large"))?,
                None => return Err(syntax(self.pos, "expected an exponent")),
            }
        } else {
            1
        };
        *power = power
            .checked_add(exponent)
            .ok_or_else(|| syntax(self.pos, "exponent too large"))?;
        Ok(())
    }

    /// An unsigned decimal literal, if one starts here.
    fn integer(&mut self) -> Result<Option<i64>, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ASCII digits");
        text.parse::<i64>()
            .map(Some)
            .map_err(|_| syntax(start, "integer literal too large"))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_spaces(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn term(coeff: i64, m: u32, f: u32) -> Term {
        Term { coeff, m, f }
    }

    #[test]
    fn divisor_classes_parse() {
        let e = parse_chow_expr("2M-F").unwrap();
        assert_eq!(e.terms(), &[term(2, 1, 0), term(-1, 0, 1)]);
        assert_eq!(e.to_divisor_class(), Some(DivisorClass { m: 2, f: -1 }));

        let e = parse_chow_expr("3M-2F").unwrap();
        assert_eq!(e.terms(), &[term(3, 1, 0), term(-2, 0, 1)]);
        assert_eq!(e.to_divisor_class(), Some(DivisorClass { m: 3, f: -2 }));
    }

    #[test]
    fn monomial_powers_parse() {
        let e = parse_chow_expr("M^5").unwrap();
        assert_eq!(e.terms(), &[term(1, 5, 0)]);
        assert_eq!(e.to_divisor_class(), None);

        let e = parse_chow_expr("2*M^3F^2").unwrap();
        assert_eq!(e.terms(), &[term(2, 3, 2)]);

        // Repeated symbols multiply, so their powers add.
        let e = parse_chow_expr("MFM").unwrap();
        assert_eq!(e.terms(), &[term(1, 2, 1)]);
    }

    #[test]
    fn like_terms_collect_and_cancel() {
        let e = parse_chow_expr("M+M-2M").unwrap();
        assert!(e.is_zero());
        assert_eq!(e.to_string(), "0");

        let e = parse_chow_expr("2M - F + 3F + 4").unwrap();
        assert_eq!(e.terms(), &[term(2, 1, 0), term(2, 0, 1), term(4, 0, 0)]);
        assert_eq!(e.to_string(), "2M+2F+4");
    }

    #[test]
    fn leading_signs_and_spaces_are_accepted() {
        assert_eq!(
            parse_chow_expr("-M+2F").unwrap().terms(),
            &[term(-1, 1, 0), term(2, 0, 1)]
        );
        assert_eq!(
            parse_chow_expr(" + 3 * M ^ 2 ").unwrap().terms(),
            &[term(3, 2, 0)]
        );
    }

    #[test]
    fn syntax_errors_carry_byte_offsets() {
        assert_eq!(
            parse_chow_expr("2X"),
            Err(ExprError::Syntax {
                offset: 1,
                message: "expected '+' or '-', found 'X'".to_string()
            })
        );
        assert_eq!(
            parse_chow_expr("3M-2F+!"),
            Err(ExprError::Syntax {
                offset: 6,
                message: "expected a term".to_string()
            })
        );
        assert!(matches!(
            parse_chow_expr(""),
            Err(ExprError::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse_chow_expr("2*"),
            Err(ExprError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_chow_expr("M^"),
            Err(ExprError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_chow_expr("M^-2"),
            Err(ExprError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_chow_expr("99999999999999999999M"),
            Err(ExprError::Syntax { offset: 0, .. })
        ));
    }

    #[test]
    fn exponent_on_unknown_symbol_is_its_own_error() {
        assert_eq!(
            parse_chow_expr("2^3"),
            Err(ExprError::ExponentOnUnknownSymbol { offset: 1 })
        );
        assert_eq!(
            parse_chow_expr("M+4^2"),
            Err(ExprError::ExponentOnUnknownSymbol { offset: 3 })
        );
    }

    #[test]
    fn printing_is_canonical() {
        for (input, printed) in [
            ("2M-F", "2M-F"),
            ("3M-2F", "3M-2F"),
            ("M^5", "M^5"),
            ("F+M", "M+F"),
            ("-M", "-M"),
            ("0", "0"),
            ("7", "7"),
            ("1*M", "M"),
            ("F^2+M^2-3MF", "M^2-3MF+F^2"),
        ] {
            assert_eq!(parse_chow_expr(input).unwrap().to_string(), printed);
        }
    }

    proptest! {
        #[test]
        fn parse_print_round_trips(
            raw in prop::collection::vec((-9i64..=9, 0u32..=5, 0u32..=5), 0..6)
        ) {
            let expr = ChowExpr::from_terms(
                raw.into_iter().map(|(coeff, m, f)| Term { coeff, m, f }),
            ).unwrap();
            let printed = expr.to_string();
            prop_assert_eq!(parse_chow_expr(&printed).unwrap(), expr);
        }
    }
}
