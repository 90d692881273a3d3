//! Parsers for the list-valued flags.

use pwilab::{Complex64, Permutation};

use crate::CliError;

/// Parses a permutation in one-line notation (`4,2,1,3` or `4 2 1 3`) or in
/// cycle notation (`(2)(143)`, `(1 4 3)(2)`). Cycles may omit fixed points
/// below the largest symbol mentioned.
pub fn parse_permutation(text: &str) -> Result<Permutation, CliError> {
    let text = text.trim();
    if text.starts_with('(') {
        return Permutation::new(parse_cycles(text)?).map_err(CliError::Domain);
    }
    let images = parse_list::<usize>(text)?;
    Permutation::new(images).map_err(CliError::Domain)
}

fn parse_cycles(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("malformed cycle notation: {text}"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let inner = body[..close].trim();
        rest = body[close + 1..].trim_start();

        let symbols: Vec<usize> = if inner.contains([',', ' ']) {
            parse_list(inner)?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|v| v as usize))
                .collect::<Option<_>>()
                .ok_or_else(bad)?
        };
        if symbols.is_empty() || symbols.contains(&0) {
            return Err(bad());
        }
        cycles.push(symbols);
    }

    let d = cycles.iter().flatten().copied().max().ok_or_else(bad)?;
    let mut images: Vec<usize> = (1..=d).collect();
    let mut seen = vec![false; d + 1];
    for cycle in &cycles {
        for (k, &s) in cycle.iter().enumerate() {
            if std::mem::replace(&mut seen[s], true) {
                return Err(CliError::Usage(format!(
                    "symbol {s} appears twice in {text}"
                )));
            }
            images[s - 1] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(images)
}

/// Comma- or whitespace-separated values.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("cannot parse `{s}` in `{text}`")))
        })
        .collect()
}

pub fn seed(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_line(text: &str) -> Vec<usize> {
        parse_permutation(text).unwrap().one_line().to_vec()
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(one_line("(2)(143)"), [4, 2, 1, 3]);
        assert_eq!(one_line("(2)(13)"), [3, 2, 1]);
        assert_eq!(one_line("(123)"), [2, 3, 1]);
        assert_eq!(one_line("(12)"), [2, 1]);
        assert_eq!(one_line("(1 4 3)(2)"), [4, 2, 1, 3]);
    }

    #[test]
    fn one_line_forms() {
        assert_eq!(one_line("4,2,1,3"), [4, 2, 1, 3]);
        assert_eq!(one_line(" 2 1 "), [2, 1]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_permutation("(1 2"), Err(CliError::Usage(_))));
        assert!(matches!(parse_permutation("(11)"), Err(CliError::Usage(_))));
        assert!(matches!(parse_permutation("a,b"), Err(CliError::Usage(_))));
        assert!(matches!(parse_permutation("2,2"), Err(CliError::Domain(_))));
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<f64>("0.4, 0.6").unwrap(), [0.4, 0.6]);
        assert!(parse_list::<f64>("0.4,x").is_err());
    }
}
