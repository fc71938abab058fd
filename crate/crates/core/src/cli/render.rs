//! Text, JSON and LaTeX rendering of expansions and polynomials.

use crate::combo::{BasisLabel, Combination, ExpansionJson, TermJson};
use crate::lattice::Weight;
use crate::poly::LaurentPoly;

fn text_basis(basis: BasisLabel, mu: Weight) -> String {
    format!("{}{mu}", basis.text_symbol())
}

fn latex_basis(basis: BasisLabel, mu: Weight) -> String {
    format!("{}_{{{mu}}}", basis.latex_symbol())
}

fn single_term(p: &LaurentPoly) -> Option<(i64, i64)> {
    if p.num_terms() == 1 {
        p.terms().next()
    } else {
        None
    }
}

/// Joins `(coefficient, basis element)` pairs into `a + b - c` form.
/// A coefficient that is a single negative monomial is pulled out as a minus
/// sign; anything else with more than one term is parenthesized.
fn join_terms(
    pieces: impl Iterator<Item = (LaurentPoly, String)>,
    poly: fn(&LaurentPoly) -> String,
    times: &str,
) -> String {
    let mut out = String::new();
    for (coeff, elem) in pieces {
        let (negative, shown) = match single_term(&coeff) {
            Some((_, c)) if c < 0 => (true, -coeff),
            _ => (false, coeff),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if shown.is_one() {
            out.push_str(&elem);
        } else if shown.num_terms() == 1 {
            out.push_str(&format!("{}{times}{elem}", poly(&shown)));
        } else {
            out.push_str(&format!("({}){times}{elem}", poly(&shown)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn ordered(c: &Combination, lhs_weight: Weight) -> impl Iterator<Item = (Weight, LaurentPoly)> + '_ {
    c.sorted_support(Some(lhs_weight)).into_iter().map(move |mu| (mu, c.coeff(mu)))
}

/// `Hbar(2,4) = N(2,4) + q*N(3,3) + ...`
pub fn expansion_text(lhs: BasisLabel, lhs_weight: Weight, c: &Combination) -> String {
    let rhs =
        join_terms(ordered(c, lhs_weight).map(|(mu, p)| (p, text_basis(c.basis(), mu))), LaurentPoly::to_text, "*");
    format!("{} = {rhs}", text_basis(lhs, lhs_weight))
}

pub fn expansion_latex(lhs: BasisLabel, lhs_weight: Weight, c: &Combination) -> String {
    let rhs =
        join_terms(ordered(c, lhs_weight).map(|(mu, p)| (p, latex_basis(c.basis(), mu))), LaurentPoly::to_latex, r"\,");
    format!("{} = {rhs}", latex_basis(lhs, lhs_weight))
}

pub fn expansion_json(lhs_weight: Weight, c: &Combination) -> String {
    serde_json::to_string(&c.to_json_doc(lhs_weight)).expect("expansion serializes")
}

pub fn kostka_latex(lam: Weight, mu: Weight, k: &LaurentPoly) -> String {
    format!("K_{{{lam},{mu}}} = {}", k.to_latex())
}

/// A single Kostka–Foulkes value in the expansion schema: the standard-basis
/// coefficient of `H_μ` in `H̄_λ`, with no terms when it vanishes.
pub fn kostka_json(lam: Weight, mu: Weight, k: &LaurentPoly) -> String {
    let terms = if k.is_zero() { vec![] } else { vec![TermJson { weight: mu, poly: k.clone() }] };
    let doc = ExpansionJson { basis: BasisLabel::Standard.to_string(), weight: lam, terms };
    serde_json::to_string(&doc).expect("expansion serializes")
}
