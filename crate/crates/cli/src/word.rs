//! Parser for bracket words: `K21`, `K_{3,1,2}`, `[K312, [K132, K21]]`.

use anyhow::{bail, Result};

use jacobi_core::freegroup::{commutator, Automorphism, IAWord};

pub fn parse(n: usize, s: &str) -> Result<IAWord> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let w = parse_word(n, &chars, &mut pos)?;
    skip_space(&chars, &mut pos);
    if pos != chars.len() {
        bail!("trailing input in bracket word {s:?} at position {pos}");
    }
    Ok(w)
}

fn skip_space(c: &[char], pos: &mut usize) {
    while *pos < c.len() && c[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn expect(c: &[char], pos: &mut usize, want: char) -> Result<()> {
    skip_space(c, pos);
    if c.get(*pos) != Some(&want) {
        bail!("expected {want:?} at position {pos}");
    }
    *pos += 1;
    Ok(())
}

fn parse_word(n: usize, c: &[char], pos: &mut usize) -> Result<IAWord> {
    skip_space(c, pos);
    if c.get(*pos) == Some(&'[') {
        *pos += 1;
        let a = parse_word(n, c, pos)?;
        expect(c, pos, ',')?;
        let b = parse_word(n, c, pos)?;
        expect(c, pos, ']')?;
        return Ok(commutator(&a, &b));
    }
    // a generator name runs to the next top-level ',' or ']'; commas inside
    // braces belong to the name
    let start = *pos;
    let mut depth = 0usize;
    while let Some(&ch) = c.get(*pos) {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' | ']' | '[' if depth == 0 => break,
            _ => {}
        }
        *pos += 1;
    }
    let name: String = c[start..*pos].iter().collect::<String>().trim().to_string();
    if name.is_empty() {
        bail!("missing generator name at position {start}");
    }
    Ok(IAWord::gen(Automorphism::by_name(n, &name)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_words() {
        let w = parse(3, "[K312, [K_{1,3,2}, K21]]").unwrap();
        assert_eq!(w.depth(), 3);
        assert_eq!(parse(3, " K21 ").unwrap().depth(), 1);
        assert!(parse(3, "[K312, K132").is_err());
        assert!(parse(3, "[K312, U12]").is_err());
        assert!(parse(3, "K312 x").is_err());
    }
}
