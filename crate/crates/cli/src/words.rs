//! Word parsing and rendering. Generator indices are 1-based on the
//! surface: input accepts `s1s2s1`, `1-2-1` or `e`/empty; output is the
//! hyphen-joined form of the canonical word.

use dlhecke_core::{ElemId, Error, WeylGroup};

pub fn parse_word(group: &WeylGroup, text: &str) -> Result<ElemId, Error> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(ElemId::IDENTITY);
    }
    if t == "s" || t == "S" {
        // bare generator shorthand, unambiguous in rank one and meaning s1
        return group.from_word(&[parse_index(group, "1")?]);
    }
    let mut letters: Vec<usize> = Vec::new();
    if t.starts_with('s') || t.starts_with('S') {
        for part in t.split(['s', 'S']).filter(|p| !p.is_empty()) {
            letters.push(parse_index(group, part)?);
        }
    } else {
        for part in t.split('-') {
            letters.push(parse_index(group, part)?);
        }
    }
    if letters.is_empty() {
        return Err(Error::InvalidDatum(format!("cannot parse word '{text}'")));
    }
    group.from_word(&letters)
}

fn parse_index(group: &WeylGroup, part: &str) -> Result<usize, Error> {
    let k: usize = part
        .trim()
        .parse()
        .map_err(|_| Error::InvalidDatum(format!("bad generator index '{part}'")))?;
    if k == 0 || k > group.num_simple() {
        return Err(Error::InvalidDatum(format!(
            "generator index {k} out of range 1..={}",
            group.num_simple()
        )));
    }
    Ok(k - 1)
}

pub fn render_word(group: &WeylGroup, w: ElemId) -> String {
    group
        .word(w)
        .iter()
        .map(|s| (s + 1).to_string())
        .collect::<Vec<_>>()
        .join("-")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let g = WeylGroup::build_preset("A2").unwrap();
        assert_eq!(parse_word(&g, "e").unwrap(), ElemId::IDENTITY);
        assert_eq!(parse_word(&g, "").unwrap(), ElemId::IDENTITY);
        let w = parse_word(&g, "s1s2s1").unwrap();
        assert_eq!(w, g.longest());
        assert_eq!(parse_word(&g, "1-2-1").unwrap(), w);
        assert_eq!(render_word(&g, w), "1-2-1");
        assert_eq!(render_word(&g, ElemId::IDENTITY), "");
        assert!(parse_word(&g, "s3").is_err());
        assert!(parse_word(&g, "0").is_err());
        assert!(parse_word(&g, "x1").is_err());
        assert!(parse_word(&g, "ss").is_err());
        // bare "s" is the first simple reflection
        assert_eq!(parse_word(&g, "s").unwrap(), g.simple(0));
    }
}
