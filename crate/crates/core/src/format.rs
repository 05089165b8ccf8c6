//! Line-oriented text format for laws.
//!
//! ```text
//! file   := header line*
//! header := "dim" INT ["param" IDENT]
//! line   := "[" INT "," INT "]" "=" term ("+" term)* | comment | blank
//! term   := [coef "*"] INT            (the trailing INT is the target k)
//! coef   := RAT | IDENT | RAT "*" IDENT | "(" IDENT ("+"|"-") RAT ")"
//!         | "sqrt" "(" RAT ")" | "-" coef
//! RAT    := ["-"] INT ["/" INT]
//! ```
//!
//! Text from `#` to end of line is ignored. `sqrt` coefficients are only
//! accepted by [`parse_numeric`]; named parameters only by [`parse`].
//! Serialization is canonical: `parse(serialize(law))` returns `law` and
//! `serialize(parse(text))` returns `text` for canonical `text`.

use crate::algebra::{LieLaw, ParamCoeff};
use crate::error::{Error, Result};
use crate::numeric::{NumCoeff, NumericLaw};
use crate::rational::{fmt_rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Parses an exact (possibly parameterized) law.
pub fn parse(text: &str) -> Result<LieLaw> {
    match parse_any(text, false)? {
        AnyLaw::Exact(law) => Ok(law),
        AnyLaw::Numeric(_) => unreachable!("sqrt rejected in exact mode"),
    }
}

/// Parses a law whose coefficients may be `sqrt` expressions; parameters
/// are rejected.
pub fn parse_numeric(text: &str) -> Result<NumericLaw> {
    match parse_any(text, true)? {
        AnyLaw::Numeric(law) => Ok(law),
        AnyLaw::Exact(law) => NumericLaw::from_exact(&law),
    }
}

enum AnyLaw {
    Exact(LieLaw),
    Numeric(NumericLaw),
}

#[derive(Clone, Debug)]
enum Coeff {
    One,
    Rat(Rat),
    /// `slope * L + offset`
    Affine(Rat, Rat),
    Sqrt(bool, Rat),
}

impl Coeff {
    fn negate(self) -> Coeff {
        match self {
            Coeff::One => Coeff::Rat(-Rat::one()),
            Coeff::Rat(r) => Coeff::Rat(-r),
            Coeff::Affine(a, b) => Coeff::Affine(-a, -b),
            Coeff::Sqrt(neg, r) => Coeff::Sqrt(!neg, r),
        }
    }
}

fn parse_any(text: &str, numeric: bool) -> Result<AnyLaw> {
    let mut header: Option<(usize, Option<String>)> = None;
    let mut exact: Option<LieLaw> = None;
    let mut num: Option<NumericLaw> = None;

    for (idx, raw) in text.lines().enumerate() {
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body, idx + 1);
        if header.is_none() {
            let (dim, param) = parse_header(&mut cur, numeric)?;
            if numeric {
                num = Some(NumericLaw::new(dim)?);
            } else {
                exact = Some(match &param {
                    Some(name) => LieLaw::with_param(dim, name)?,
                    None => LieLaw::new(dim)?,
                });
            }
            header = Some((dim, param));
            continue;
        }
        let (_, param) = header.as_ref().expect("header parsed");
        let (i, j, terms) = parse_bracket_line(&mut cur, param.as_deref(), numeric)?;
        for (k, coeff) in terms {
            match (&mut exact, &mut num) {
                (Some(law), None) => {
                    if law.slots().any(|(slot, _)| slot == (i, j, k)) {
                        return Err(Error::DuplicateSlot(i, j, k));
                    }
                    let pc = match coeff {
                        Coeff::One => ParamCoeff::constant(Rat::one()),
                        Coeff::Rat(r) => ParamCoeff::constant(r),
                        Coeff::Affine(a, b) => ParamCoeff::linear(a, b),
                        Coeff::Sqrt(..) => unreachable!("rejected by the term parser"),
                    };
                    law.set(i, j, k, pc)?;
                }
                (None, Some(law)) => {
                    if law.slots().any(|(slot, _)| slot == (i, j, k)) {
                        return Err(Error::DuplicateSlot(i, j, k));
                    }
                    let nc = match coeff {
                        Coeff::One => NumCoeff::Rational(Rat::one()),
                        Coeff::Rat(r) => NumCoeff::Rational(r),
                        Coeff::Sqrt(neg, r) => NumCoeff::sqrt(neg, r)?,
                        Coeff::Affine(..) => unreachable!("rejected by the term parser"),
                    };
                    law.set(i, j, k, nc)?;
                }
                _ => unreachable!("exactly one law is live"),
            }
        }
    }

    match (exact, num) {
        (Some(law), None) => Ok(AnyLaw::Exact(law)),
        (None, Some(law)) => Ok(AnyLaw::Numeric(law)),
        _ => Err(Error::Parse {
            line: text.lines().count() + 1,
            col: 1,
            msg: "missing `dim` header".into(),
        }),
    }
}

fn parse_header(cur: &mut Cursor, numeric: bool) -> Result<(usize, Option<String>)> {
    cur.expect_word("dim")?;
    cur.skip_ws();
    let dim = {
        let start = cur.pos;
        let digits = cur.parse_digits()?;
        match digits.parse::<usize>() {
            Ok(n) if n <= 1_000_000 => n,
            _ => {
                return Err(Error::Parse {
                    line: cur.line,
                    col: start + 1,
                    msg: "dimension out of range".into(),
                })
            }
        }
    };
    cur.skip_ws();
    let mut param = None;
    if !cur.at_end() {
        cur.expect_word("param")?;
        let name = cur.parse_ident()?;
        if numeric {
            return Err(cur.err("metric law files cannot declare a parameter"));
        }
        if name == "sqrt" {
            return Err(cur.err("`sqrt` cannot be used as a parameter name"));
        }
        param = Some(name);
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.err("unexpected text after header"));
        }
    }
    Ok((dim, param))
}

type Terms = Vec<(usize, Coeff)>;

fn parse_bracket_line(
    cur: &mut Cursor,
    param: Option<&str>,
    numeric: bool,
) -> Result<(usize, usize, Terms)> {
    cur.expect_char('[')?;
    let i = cur.parse_index()?;
    cur.expect_char(',')?;
    let j = cur.parse_index()?;
    cur.expect_char(']')?;
    cur.expect_char('=')?;
    let mut terms = vec![parse_term(cur, param, numeric)?];
    loop {
        cur.skip_ws();
        if cur.at_end() {
            return Ok((i, j, terms));
        }
        cur.expect_char('+')?;
        terms.push(parse_term(cur, param, numeric)?);
    }
}

fn parse_term(cur: &mut Cursor, param: Option<&str>, numeric: bool) -> Result<(usize, Coeff)> {
    cur.skip_ws();
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        // Either a bare target index or a rational coefficient.
        let start = cur.pos;
        let r = cur.parse_rat()?;
        cur.skip_ws();
        if cur.peek() != Some('*') {
            // Bare target: must be a plain integer.
            if !r.is_integer() {
                return Err(cur.err("expected `*` after rational coefficient"));
            }
            let k = index_from_rat(cur, &r, start)?;
            return Ok((k, Coeff::One));
        }
        cur.expect_char('*')?;
        cur.skip_ws();
        if cur.peek().is_some_and(is_ident_start) {
            // RAT * IDENT * INT
            let coeff = finish_param_coeff(cur, param, r)?;
            cur.expect_char('*')?;
            let k = cur.parse_index()?;
            return Ok((k, coeff));
        }
        let k = cur.parse_index()?;
        return Ok((k, Coeff::Rat(r)));
    }
    let coeff = parse_coef(cur, param, numeric)?;
    cur.expect_char('*')?;
    let k = cur.parse_index()?;
    Ok((k, coeff))
}

/// Parses the non-leading-digit coefficient forms; the caller consumes the
/// following `* INT`.
fn parse_coef(cur: &mut Cursor, param: Option<&str>, numeric: bool) -> Result<Coeff> {
    cur.skip_ws();
    match cur.peek() {
        Some('-') => {
            cur.expect_char('-')?;
            cur.skip_ws();
            if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                let r = cur.parse_rat()?;
                cur.skip_ws();
                if cur.peek() == Some('*') {
                    let save = cur.pos;
                    cur.expect_char('*')?;
                    cur.skip_ws();
                    if cur.peek().is_some_and(is_ident_start) {
                        return Ok(finish_param_coeff(cur, param, r)?.negate());
                    }
                    // The `*` introduced the target; rewind for the caller.
                    cur.pos = save;
                }
                return Ok(Coeff::Rat(-r));
            }
            Ok(parse_coef(cur, param, numeric)?.negate())
        }
        Some('(') => {
            cur.expect_char('(')?;
            let name = cur.parse_ident()?;
            check_param(cur, param, &name)?;
            cur.skip_ws();
            let sign = match cur.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Err(cur.err("expected `+` or `-` inside parenthesized coefficient")),
            };
            cur.bump();
            let r = cur.parse_rat()?;
            cur.expect_char(')')?;
            let offset = if sign < 0 { -r } else { r };
            Ok(Coeff::Affine(Rat::one(), offset))
        }
        Some(c) if is_ident_start(c) => {
            let name = cur.parse_ident()?;
            if name == "sqrt" && cur.peek_after_ws() == Some('(') {
                if !numeric {
                    return Err(cur.err("sqrt coefficients are only valid in metric law files"));
                }
                cur.expect_char('(')?;
                let r = cur.parse_rat()?;
                cur.expect_char(')')?;
                if !r.is_positive() {
                    return Err(cur.err("sqrt radicand must be positive"));
                }
                return Ok(Coeff::Sqrt(false, r));
            }
            check_param(cur, param, &name)?;
            Ok(Coeff::Affine(Rat::one(), Rat::zero()))
        }
        _ => Err(cur.err("expected a term")),
    }
}

/// After `RAT *` when an identifier follows: parses `IDENT`, yielding
/// `RAT * L`.
fn finish_param_coeff(cur: &mut Cursor, param: Option<&str>, slope: Rat) -> Result<Coeff> {
    let name = cur.parse_ident()?;
    check_param(cur, param, &name)?;
    Ok(Coeff::Affine(slope, Rat::zero()))
}

fn check_param(cur: &Cursor, param: Option<&str>, name: &str) -> Result<()> {
    match param {
        Some(p) if p == name => Ok(()),
        _ => Err(cur.err(&format!("unknown parameter `{name}` (declare it in the header)"))),
    }
}

fn index_from_rat(cur: &Cursor, r: &Rat, at: usize) -> Result<usize> {
    let n = r.to_integer();
    if n.is_positive() && n <= BigInt::from(1_000_000) {
        let digits = n.to_string();
        return Ok(digits.parse().expect("bounded above"));
    }
    Err(Error::Parse {
        line: cur.line,
        col: at + 1,
        msg: "basis index out of range".into(),
    })
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(body: &str, line: usize) -> Self {
        Cursor {
            chars: body.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_after_ws(&self) -> Option<char> {
        self.chars[self.pos..]
            .iter()
            .copied()
            .find(|&c| c != ' ' && c != '\t')
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect_char(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{want}`")))
        }
    }

    fn expect_word(&mut self, want: &str) -> Result<()> {
        self.skip_ws();
        let got = self.parse_ident()?;
        if got == want {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{want}`")))
        }
    }

    fn parse_ident(&mut self) -> Result<String> {
        self.skip_ws();
        if !self.peek().is_some_and(is_ident_start) {
            return Err(self.err("expected identifier"));
        }
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if is_ident_char(c) {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(s)
    }

    fn parse_digits(&mut self) -> Result<String> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.err("expected a number"));
        }
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(s)
    }

    /// Small positive integer used as a dimension or basis index.
    fn parse_index(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.parse_digits()?;
        match digits.parse::<usize>() {
            Ok(n) if n >= 1 && n <= 1_000_000 => Ok(n),
            _ => Err(Error::Parse {
                line: self.line,
                col: start + 1,
                msg: "basis index out of range".into(),
            }),
        }
    }

    fn parse_rat(&mut self) -> Result<Rat> {
        self.skip_ws();
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
            self.skip_ws();
        }
        let numer: BigInt = self.parse_digits()?.parse().expect("digits");
        let mut denom = BigInt::one();
        if self.peek() == Some('/') {
            self.pos += 1;
            let start = self.pos;
            denom = self.parse_digits()?.parse().expect("digits");
            if denom.is_zero() {
                return Err(Error::Parse {
                    line: self.line,
                    col: start + 1,
                    msg: "zero denominator".into(),
                });
            }
        }
        let r = Rat::new(numer, denom);
        Ok(if negative { -r } else { r })
    }
}

/// Canonical text form; inverse of [`parse`]. Fails with
/// [`Error::Unrepresentable`] when a coefficient `a*L + b` has `b != 0` and
/// `a` outside `{1, -1}`, which the grammar cannot express.
pub fn serialize(law: &LieLaw) -> Result<String> {
    let mut out = format!("dim {}", law.dim());
    if let Some(name) = law.param() {
        if !is_valid_param_name(name) {
            return Err(Error::Unrepresentable(format!(
                "parameter name `{name}` is not an identifier"
            )));
        }
        out.push_str(&format!(" param {name}"));
    }
    out.push('\n');
    let mut last_pair = None;
    for ((i, j, k), coeff) in law.slots() {
        if last_pair == Some((i, j)) {
            out.push_str(" + ");
        } else {
            if last_pair.is_some() {
                out.push('\n');
            }
            out.push_str(&format!("[{i},{j}] = "));
            last_pair = Some((i, j));
        }
        out.push_str(&render_term(coeff, k, law.param().unwrap_or("L"), (i, j, k))?);
    }
    if last_pair.is_some() {
        out.push('\n');
    }
    Ok(out)
}

fn render_term(coeff: &ParamCoeff, k: usize, param: &str, slot: (usize, usize, usize)) -> Result<String> {
    if let Some(c) = coeff.constant_value() {
        if c.is_one() {
            return Ok(format!("{k}"));
        }
        return Ok(format!("{}*{k}", fmt_rat(c)));
    }
    let (a, b) = (coeff.slope(), coeff.offset());
    if b.is_zero() {
        if a.is_one() {
            return Ok(format!("{param}*{k}"));
        }
        if (-a).is_one() {
            return Ok(format!("-{param}*{k}"));
        }
        return Ok(format!("{}*{param}*{k}", fmt_rat(a)));
    }
    if a.is_one() {
        let sign = if b.is_negative() { '-' } else { '+' };
        return Ok(format!("({param} {sign} {})*{k}", fmt_rat(&b.abs())));
    }
    if (-a.clone()).is_one() {
        // -(L + c) with c = -b
        let c = -b.clone();
        let sign = if c.is_negative() { '-' } else { '+' };
        return Ok(format!("-({param} {sign} {})*{k}", fmt_rat(&c.abs())));
    }
    Err(Error::Unrepresentable(format!(
        "coefficient {coeff} on slot ({}, {}, {})",
        slot.0, slot.1, slot.2
    )))
}

/// Canonical text form for numeric laws; inverse of [`parse_numeric`].
pub fn serialize_numeric(law: &NumericLaw) -> String {
    let mut out = format!("dim {}\n", law.dim());
    let mut last_pair = None;
    for ((i, j, k), coeff) in law.slots() {
        if last_pair == Some((i, j)) {
            out.push_str(" + ");
        } else {
            if last_pair.is_some() {
                out.push('\n');
            }
            out.push_str(&format!("[{i},{j}] = "));
            last_pair = Some((i, j));
        }
        match coeff {
            NumCoeff::Rational(r) if r.is_one() => out.push_str(&format!("{k}")),
            NumCoeff::Rational(r) => out.push_str(&format!("{}*{k}", fmt_rat(r))),
            NumCoeff::Sqrt { negative, radicand } => {
                let sign = if *negative { "-" } else { "" };
                out.push_str(&format!("{sign}sqrt({})*{k}", fmt_rat(radicand)));
            }
        }
    }
    if last_pair.is_some() {
        out.push('\n');
    }
    out
}

fn is_valid_param_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char) && name != "sqrt"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn parses_minimal_law() {
        let law = parse("dim 3\n[1,2] = 3\n").unwrap();
        assert_eq!(law.dim(), 3);
        assert_eq!(law.c(1, 2, 3), rat_i(1));
    }

    #[test]
    fn parses_coefficient_forms() {
        let text = "dim 7 param L\n\
                    # a comment line\n\
                    [1,2] = 3 + -1*4   # trailing comment\n\
                    [1,3] = 2*5 + 1/2*6\n\
                    [3,4] = (L - 1) * 7\n\
                    [2,5] = L*7 + -3/2*L*6\n";
        let law = parse(text).unwrap();
        let slot34 = law
            .slots()
            .find(|(s, _)| *s == (3, 4, 7))
            .map(|(_, c)| c.clone())
            .unwrap();
        assert_eq!(slot34, ParamCoeff::linear(rat_i(1), rat_i(-1)));
        let at2 = law.instantiate(&rat_i(2));
        assert_eq!(at2.c(2, 1, 4), rat_i(1));
        assert_eq!(at2.c(1, 3, 6), rat(1, 2));
        assert_eq!(at2.c(3, 4, 7), rat_i(1));
        assert_eq!(at2.c(2, 5, 7), rat_i(2));
        assert_eq!(at2.c(2, 5, 6), rat_i(-3));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse("dim 3\n[2,1] = 3\n"),
            Err(Error::BadSlotPair { i: 2, j: 1, .. })
        ));
        assert!(matches!(parse("dim 0\n"), Err(Error::ZeroDimension)));
        assert!(matches!(
            parse("dim 3\n[1,2] = 3 + 3\n"),
            Err(Error::DuplicateSlot(1, 2, 3))
        ));
        let err = parse("dim 3\n[1,2] = 1/2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse("dim 3\n[1,2] = K*3\n").unwrap_err();
        assert!(err.to_string().contains("unknown parameter"));
        let err = parse("dim 3\n[1,2] = sqrt(2)*3\n").unwrap_err();
        assert!(err.to_string().contains("metric law"));
        assert!(parse("").is_err());
        assert!(parse("# only a comment\n").is_err());
    }

    #[test]
    fn numeric_laws_round_trip() {
        let text = "dim 3\n[1,2] = sqrt(1/2)*3\n";
        let law = parse_numeric(text).unwrap();
        assert_eq!(law.norm_sq_exact(), rat_i(1));
        assert_eq!(serialize_numeric(&law), text);
        let neg = parse_numeric("dim 3\n[1,2] = -sqrt(2)*3 + 1/4*2\n").unwrap();
        assert!(neg.c_f64(1, 2, 3) < -1.4);
        assert_eq!(
            serialize_numeric(&neg),
            "dim 3\n[1,2] = 1/4*2 + -sqrt(2)*3\n"
        );
        assert!(parse_numeric("dim 3 param L\n").is_err());
        assert!(parse_numeric("dim 3\n[1,2] = sqrt(0)*3\n").is_err());
        // Exact grammar is a subset of the numeric grammar.
        let rational = parse_numeric("dim 3\n[1,2] = -2/3*3\n").unwrap();
        assert!(rational.all_rational());
    }

    #[test]
    fn serialize_round_trips() {
        let texts = [
            "dim 3\n",
            "dim 3\n[1,2] = 3\n",
            "dim 7 param L\n[1,2] = 3 + -1*4\n[1,3] = 2*5 + 1/2*6 + L*7\n[3,4] = (L - 1)*7\n[4,5] = -L*6 + -(L - 2)*7\n",
        ];
        for text in texts {
            let law = parse(text).unwrap();
            assert_eq!(serialize(&law).unwrap(), text, "canonical: {text:?}");
            assert_eq!(parse(&serialize(&law).unwrap()).unwrap(), law);
        }
        // -(L - 2) parses to -L + 2.
        let law = parse(texts[2]).unwrap();
        let at0 = law.instantiate(&rat_i(0));
        assert_eq!(at0.c(4, 5, 7), rat_i(2));
    }

    #[test]
    fn unrepresentable_coefficients_error() {
        let mut law = LieLaw::with_param(3, "L").unwrap();
        law.set(1, 2, 3, ParamCoeff::linear(rat_i(2), rat_i(1)))
            .unwrap();
        assert!(matches!(serialize(&law), Err(Error::Unrepresentable(_))));
    }
}
