//! Built-in gendered word lists and their identifier functions.

use equity_metrics::IdentifierFunction;

pub const FEMALE_GENDERED: [&str; 9] = [
    "she", "woman", "her", "hers", "gal", "girl", "women", "gals", "girls",
];

pub const MALE_GENDERED: [&str; 9] = [
    "he", "man", "him", "his", "guy", "boy", "men", "guys", "boys",
];

/// Identifier for a built-in attribute name: `F` (female-gendered words) or
/// `M` (male-gendered words).
pub fn builtin_identifier(attribute: &str) -> Option<IdentifierFunction> {
    match attribute {
        "F" => Some(IdentifierFunction::from_words("v_F", FEMALE_GENDERED)),
        "M" => Some(IdentifierFunction::from_words("v_M", MALE_GENDERED)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_detect_their_words() {
        let f = builtin_identifier("F").unwrap();
        let m = builtin_identifier("M").unwrap();
        assert_eq!(f.eval("is she wearing a hat").unwrap(), 1);
        assert_eq!(m.eval("is she wearing a hat").unwrap(), 0);
        assert_eq!(m.eval("the guy with the ball").unwrap(), 1);
        assert!(builtin_identifier("R").is_none());
    }
}
