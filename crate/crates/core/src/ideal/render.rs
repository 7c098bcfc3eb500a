//! Equations in the lower-triangular notation: `lambda(E_ij)` is written
//! `y_ji`, so `x_13` prints as `y31`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::generators::{Generator, GeneratorKind};
use super::poly::MultiPoly;
use crate::rootcomb::RootTables;

pub fn y_name(t: &RootTables, var: usize) -> String {
    let r = t.roots[var];
    format!("y{}{}", r.j, r.i)
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (idx, (neg, body)) in terms.into_iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn coefficient_prefix(c: &BigInt, has_factors: bool) -> String {
    let a = c.abs();
    if has_factors && a.is_one() {
        String::new()
    } else {
        a.to_string()
    }
}

/// A polynomial on `g*`. Factors run by descending `y` row, terms by their
/// factor lists.
pub fn render_y_poly(t: &RootTables, poly: &MultiPoly) -> String {
    let mut terms: Vec<(Vec<(usize, usize)>, bool, String)> = poly
        .terms()
        .map(|(e, c)| {
            let mut factors: Vec<(usize, usize, u8)> =
                e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(v, &x)| (t.roots[v].j, t.roots[v].i, x)).collect();
            factors.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let key = factors.iter().map(|f| (f.0, f.1)).collect();
            let mut body = coefficient_prefix(c, !factors.is_empty());
            for (row, col, x) in factors {
                body.push_str(&format!("y{}{}", row, col));
                if x > 1 {
                    body.push_str(&format!("^{}", x));
                }
            }
            (key, c.is_negative(), body)
        })
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    join_terms(terms.into_iter().map(|(_, n, b)| (n, b)).collect())
}

/// The minor of `X` on the given rows and columns, transposed into `y`s.
pub fn render_minor(rows: &[usize], cols: &[usize]) -> String {
    if rows.len() == 1 {
        return format!("y{}{}", cols[0], rows[0]);
    }
    let lines: Vec<String> = cols
        .iter()
        .map(|&c| {
            let cells: Vec<String> =
                rows.iter().map(|&r| if r < c { format!("y{}{}", c, r) } else { String::from("0") }).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("det[{}]", lines.join(","))
}

/// Left-hand side of a generator equation, with the sign `sign` applied.
/// A negated minor has no determinant form and prints expanded.
pub fn render_generator(t: &RootTables, g: &Generator, sign: i8) -> String {
    match (&g.kind, sign) {
        (GeneratorKind::Minor { rows, cols }, 1) => render_minor(rows, cols),
        _ if sign < 0 => render_y_poly(t, &g.poly.neg()),
        _ => render_y_poly(t, &g.poly),
    }
}

/// A polynomial in named parameters, factors in parameter order.
pub fn render_param_poly(names: &[String], poly: &MultiPoly) -> String {
    let terms: Vec<(bool, String)> = poly
        .terms()
        .rev()
        .map(|(e, c)| {
            let has = e.iter().any(|&x| x > 0);
            let mut body = coefficient_prefix(c, has);
            for (v, &x) in e.iter().enumerate() {
                if x > 0 {
                    body.push_str(&names[v]);
                    if x > 1 {
                        body.push_str(&format!("^{}", x));
                    }
                }
            }
            (c.is_negative(), body)
        })
        .collect();
    join_terms(terms)
}

/// `lhs = value` for a concrete generator.
pub fn render_equation(t: &RootTables, g: &Generator) -> String {
    format!("{} = {}", render_generator(t, g, 1), g.value)
}
