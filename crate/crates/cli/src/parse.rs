//! Reading equations in the `y` notation back into polynomials.

use num_bigint::BigInt;
use unitri::ideal::{determinant, MultiPoly};
use unitri::{Root, RootTables};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> Parsed<T> {
    Err(ParseError(msg.into()))
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Parsed<()> {
        if self.eat(s) {
            Ok(())
        } else {
            err(format!("expected `{}` at `{}` in `{}`", s, self.rest(), self.text))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        (len > 0).then(|| {
            let d = &self.rest()[..len];
            self.pos += len;
            d
        })
    }

    fn digit(&mut self) -> Parsed<usize> {
        match self.rest().bytes().next() {
            Some(b) if b.is_ascii_digit() => {
                self.pos += 1;
                Ok(usize::from(b - b'0'))
            }
            _ => err(format!("expected a digit at `{}` in `{}`", self.rest(), self.text)),
        }
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }
}

/// `yRC` is the value on `E_CR`; a coordinate of `g*`.
pub fn y_var(t: &RootTables, row: usize, col: usize) -> Parsed<usize> {
    t.index_of(col, row).ok_or_else(|| ParseError(format!("y{}{} is not a coordinate for n = {}", row, col, t.n)))
}

/// `xij` names the root `(i,j)`.
pub fn x_root(t: &RootTables, name: &str) -> Parsed<Root> {
    let b = name.as_bytes();
    if b.len() != 3 || b[0] != b'x' || !b[1].is_ascii_digit() || !b[2].is_ascii_digit() {
        return err(format!("expected `xij`, got `{}`", name));
    }
    let (i, j) = (usize::from(b[1] - b'0'), usize::from(b[2] - b'0'));
    t.root(i, j).map_err(|e| ParseError(e.to_string()))
}

/// Parses `y42y21 + y43y31`, `-2y31^2`, `det[[y31,y32],[y41,y42]]` and sums
/// of these.
pub fn parse_y_poly(t: &RootTables, text: &str) -> Parsed<MultiPoly> {
    let nv = t.dim();
    let mut cur = Cursor::new(text);
    let factor = |cur: &mut Cursor<'_>| -> Parsed<Option<MultiPoly>> {
        cur.skip_ws();
        if cur.eat("det[") {
            let mut rows: Vec<Vec<MultiPoly>> = Vec::new();
            loop {
                cur.expect("[")?;
                let mut row = Vec::new();
                loop {
                    if cur.eat("0") {
                        row.push(MultiPoly::zero(nv));
                    } else {
                        cur.expect("y")?;
                        let r = cur.digit()?;
                        let c = cur.digit()?;
                        row.push(MultiPoly::var(nv, y_var(t, r, c)?));
                    }
                    if !cur.eat(",") {
                        break;
                    }
                }
                cur.expect("]")?;
                rows.push(row);
                if !cur.eat(",") {
                    break;
                }
            }
            cur.expect("]")?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return err(format!("non-square determinant in `{}`", cur.text));
            }
            return Ok(Some(determinant(&rows, nv)));
        }
        if cur.rest().starts_with('y') {
            cur.pos += 1;
            let r = cur.digit()?;
            let c = cur.digit()?;
            let v = MultiPoly::var(nv, y_var(t, r, c)?);
            return Ok(Some(power(cur, v)?));
        }
        Ok(None)
    };
    sum_of_terms(&mut cur, nv, factor)
}

fn power(cur: &mut Cursor<'_>, base: MultiPoly) -> Parsed<MultiPoly> {
    if !cur.rest().starts_with('^') {
        return Ok(base);
    }
    cur.pos += 1;
    let e: u32 = cur
        .digits()
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| ParseError(format!("bad exponent in `{}`", cur.text)))?;
    let mut out = MultiPoly::one(base.nvars());
    for _ in 0..e {
        out = out.mul(&base);
    }
    Ok(out)
}

fn sum_of_terms(
    cur: &mut Cursor<'_>,
    nv: usize,
    mut factor: impl FnMut(&mut Cursor<'_>) -> Parsed<Option<MultiPoly>>,
) -> Parsed<MultiPoly> {
    let mut total = MultiPoly::zero(nv);
    let mut first = true;
    loop {
        let negative = if cur.eat("-") {
            true
        } else if first || cur.eat("+") {
            false
        } else {
            break;
        };
        cur.skip_ws();
        let coeff = cur.digits().map(|d| d.parse::<BigInt>().expect("digits"));
        let mut term = MultiPoly::constant(nv, coeff.clone().unwrap_or_else(|| BigInt::from(1)));
        let mut factors = 0;
        while let Some(f) = factor(cur)? {
            term = term.mul(&f);
            factors += 1;
        }
        if factors == 0 && coeff.is_none() {
            return err(format!("empty term at `{}` in `{}`", cur.rest(), cur.text));
        }
        total = if negative { total.sub(&term) } else { total.add(&term) };
        first = false;
    }
    if !cur.done() {
        return err(format!("unexpected `{}` in `{}`", cur.rest(), cur.text));
    }
    Ok(total)
}

/// A polynomial in the given parameter names, e.g. `-a1a2`, `a2c1`, `0`.
/// Names are matched longest first.
pub fn parse_param_poly(names: &[String], text: &str) -> Parsed<MultiPoly> {
    let nv = names.len();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| names[b].len().cmp(&names[a].len()).then(a.cmp(&b)));
    let mut cur = Cursor::new(text);
    let factor = |cur: &mut Cursor<'_>| -> Parsed<Option<MultiPoly>> {
        let rest = cur.rest();
        match order.iter().find(|&&v| !names[v].is_empty() && rest.starts_with(names[v].as_str())) {
            Some(&v) => {
                cur.pos += names[v].len();
                Ok(Some(power(cur, MultiPoly::var(nv, v))?))
            }
            None => Ok(None),
        }
    };
    sum_of_terms(&mut cur, nv, factor)
}

/// `lhs = rhs` split at the single `=`.
pub fn split_equation(text: &str) -> Parsed<(&str, &str)> {
    let mut parts = text.split('=');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(l), Some(r), None) => Ok((l.trim(), r.trim())),
        _ => err(format!("expected one `=` in `{}`", text)),
    }
}
