// SPDX-License-Identifier: Apache-2.0

use std::str::FromStr;

use anyhow::{bail, Context, Result};

/// Parses a comma-separated list; `flag` names the option in errors.
pub fn parse_list<T>(text: &str, flag: &str) -> Result<Vec<T>>
where
    T: FromStr,
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().with_context(|| format!("--{flag}: cannot parse `{s}`")))
        .collect()
}

/// `a:b` gives `points` log-spaced values from `a` to `b` (rounded to five
/// significant digits so they print and match cleanly); otherwise a comma
/// list.
pub fn parse_p_grid(text: &str, points: usize, flag: &str) -> Result<Vec<f64>> {
    let grid = if let Some((a, b)) = text.split_once(':') {
        let a: f64 = a.trim().parse().with_context(|| format!("--{flag}: bad start `{a}`"))?;
        let b: f64 = b.trim().parse().with_context(|| format!("--{flag}: bad end `{b}`"))?;
        if !(a > 0.0 && b > a) {
            bail!("--{flag}: range must satisfy 0 < start < end, got {a}:{b}");
        }
        if points < 2 {
            bail!("--points: a range needs at least 2 points");
        }
        (0..points)
            .map(|i| {
                let v = a * (b / a).powf(i as f64 / (points - 1) as f64);
                format!("{v:.4e}").parse().expect("formatted float")
            })
            .collect()
    } else {
        parse_list::<f64>(text, flag)?
    };
    if grid.is_empty() {
        bail!("--{flag}: no values given");
    }
    if let Some(bad) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        bail!("--{flag}: {bad} is not a probability");
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list::<usize>("1, 2,3", "levels").unwrap(), vec![1, 2, 3]);
        assert!(parse_list::<usize>("1,x", "levels").unwrap_err().to_string().contains("--levels"));
        let g = parse_p_grid("0.01:0.04", 3, "p").unwrap();
        assert_eq!(g, vec![0.01, 0.02, 0.04]);
        assert_eq!(parse_p_grid("0.01,0.03", 8, "p").unwrap(), vec![0.01, 0.03]);
        assert!(parse_p_grid("0.04:0.01", 3, "p").is_err());
        assert!(parse_p_grid("1.5", 3, "p").is_err());
        assert!(parse_p_grid("", 3, "p").is_err());
    }
}
