use ksquant_core::opalg::word_string;
use ksquant_core::{Alphabet, Letter, OpPoly, PhasePoly, Scalar};

/// Largest number of orderings spelled out per monomial.
const MAX_ORDERINGS: usize = 20;

fn arrangements(j: u32, k: u32, prefix: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    if j == 0 && k == 0 {
        out.push(prefix.clone());
        return;
    }
    if j > 0 {
        prefix.push(Letter::X);
        arrangements(j - 1, k, prefix, out);
        prefix.pop();
    }
    if k > 0 {
        prefix.push(Letter::P);
        arrangements(j, k - 1, prefix, out);
        prefix.pop();
    }
}

/// Scalar in operator notation, e.g. `i hbar/2`.
fn coefficient(c: &Scalar) -> String {
    OpPoly::scalar(Alphabet::XP, c.clone()).to_string()
}

/// `x^j p^k ↦` average of all orderings, e.g. `1/2 (X P + P X)`.
///
/// `None` when some monomial has too many orderings to spell out.
pub fn symmetrized(a: &PhasePoly) -> Option<String> {
    if a.is_zero() {
        return Some("0".into());
    }
    let mut terms: Vec<_> = a.terms().collect();
    terms.sort_by_key(|(e, _)| std::cmp::Reverse((e.0 + e.1, e.0)));
    let mut out = String::new();
    for (i, (&(j, k), c)) in terms.into_iter().enumerate() {
        let mut words = Vec::new();
        arrangements(j, k, &mut Vec::new(), &mut words);
        if words.len() > MAX_ORDERINGS {
            return None;
        }
        let n = words.len() as i64;
        let coef = c * &Scalar::ratio(1, n);
        let body = if n == 1 {
            OpPoly::standard_monomial(j, k, coef).to_string()
        } else {
            let group = words.iter().map(|w| word_string(w)).collect::<Vec<_>>().join(" + ");
            let mut s = coefficient(&coef);
            if coef.len() > 1 {
                s = format!("({s})");
            }
            match s.as_str() {
                "1" => format!("({group})"),
                "-1" => format!("-({group})"),
                _ => format!("{s} ({group})"),
            }
        };
        match (i, body.strip_prefix('-')) {
            (0, _) => out.push_str(&body),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    Some(out)
}
