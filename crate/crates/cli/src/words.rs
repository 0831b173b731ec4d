//! Orbit words on the command line.
//!
//! A word is a comma-separated list of letters, optionally in parentheses:
//! `1,2`, `(1,2,2)`. A letter is an ear index, `L` or `R` for the cusp ears
//! `E₁` and `E_{k−1}`, or an excursion `L<n>` / `R<n>`: out to that side
//! branch line and `n` times through its long ear.

use heckeflow::hecke::GroupWord;
use heckeflow::template::{Side, TemplateError, TemplateModel};

use crate::Failure;

fn letter(token: &str, k: u32, t: &TemplateModel) -> Result<u32, Failure> {
    let side = match token.chars().next() {
        Some('L') => Some(Side::Left),
        Some('R') => Some(Side::Right),
        _ => None,
    };
    match side {
        Some(side) if token.len() == 1 => Ok(if side == Side::Left { 1 } else { k - 1 }),
        Some(side) => {
            let passes: u32 = token[1..]
                .parse()
                .map_err(|_| Failure::validation(format!("bad excursion `{token}`")))?;
            t.ear_for_excursion(side, passes).map_err(template_failure)
        }
        None => token
            .parse()
            .map_err(|_| Failure::validation(format!("bad letter `{token}`"))),
    }
}

pub fn parse_word(text: &str, t: &TemplateModel) -> Result<GroupWord, Failure> {
    let k = t.k();
    let inner = text.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(inner);
    if inner.trim().is_empty() {
        return Err(Failure::validation(format!("empty word `{text}`")));
    }
    let letters = inner
        .split(',')
        .map(|tok| letter(tok.trim(), k, t))
        .collect::<Result<Vec<u32>, _>>()?;
    GroupWord::new(k, &letters).map_err(|e| Failure::validation(format!("word `{text}`: {e}")))
}

/// Template rejections are reported as input errors.
pub fn template_failure(e: TemplateError) -> Failure {
    Failure::validation(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use heckeflow::template::{hecke_template, lorenz_template};

    #[test]
    fn letters_and_sides() {
        let t = lorenz_template();
        assert_eq!(parse_word("(L,R)", &t).unwrap().letters(), &[1, 2]);
        assert_eq!(parse_word("2,1,1", &t).unwrap().letters(), &[1, 1, 2]);
        assert!(parse_word("()", &t).is_err());
        assert!(parse_word("1,x", &t).is_err());
        assert!(parse_word("3", &t).is_err());
        assert!(parse_word("L1", &t).is_err());
    }

    #[test]
    fn excursions() {
        let t = hecke_template(5, None).unwrap();
        assert_eq!(parse_word("L0,L1,R1,R0", &t).unwrap().letters(), &[1, 2, 3, 4]);
        let e = parse_word("L3", &t).unwrap_err();
        assert!(e.message.contains("exceed"), "{}", e.message);
        assert_eq!(e.code, 2);
    }
}
