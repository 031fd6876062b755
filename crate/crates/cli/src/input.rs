use std::fs;
use std::path::Path;

use csm_core::{CartanData, Error, WeylElem, WeylGroup, Word};

/// `--type` as a label or a JSON matrix file, or `--n` for type A.
pub fn cartan(label: Option<&str>, n: Option<usize>) -> Result<CartanData, Error> {
    match (label, n) {
        (Some(_), Some(_)) => Err(Error::Parse("give either --type or --n, not both".into())),
        (None, None) => Err(Error::Parse("one of --type or --n is required".into())),
        (None, Some(n)) if n < 2 => Err(Error::Parse("--n must be at least 2".into())),
        (None, Some(n)) => Ok(CartanData::type_a(n - 1)),
        (Some(t), None) if Path::new(t).is_file() => {
            let text = fs::read_to_string(t).map_err(|e| Error::Parse(format!("cannot read {t}: {e}")))?;
            CartanData::from_json(&text)
        }
        (Some(t), None) => CartanData::from_label(t),
    }
}

/// `1,2,1`, `121`, an empty word, or a one-line permutation `[3,2,1]`.
pub fn element(group: &WeylGroup, text: &str) -> Result<WeylElem, Error> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let perm = inner
            .split(',')
            .map(|p| p.trim().parse::<u8>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPermutation(t.to_string()))?;
        return group.from_perm(&perm);
    }
    group.from_word(&Word::parse(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_words_and_permutations() {
        let g = WeylGroup::symmetric(3).unwrap();
        assert_eq!(element(&g, "1,2,1").unwrap(), g.longest());
        assert_eq!(element(&g, "[3,2,1]").unwrap(), g.longest());
        assert_eq!(element(&g, "").unwrap(), g.identity());
        assert!(element(&g, "[3,3,1]").is_err());
        assert!(element(&g, "1,4").is_err());
    }

    #[test]
    fn type_selection() {
        assert_eq!(cartan(None, Some(4)).unwrap().rank(), 3);
        assert_eq!(cartan(Some("G2"), None).unwrap().entry(2, 1), -3);
        assert!(cartan(None, None).is_err());
        assert!(cartan(Some("A2"), Some(3)).is_err());
        assert!(cartan(Some("Q7"), None).is_err());
    }
}
