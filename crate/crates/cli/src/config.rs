//! Optional `key=value` config file. Each key names a long flag
//! (`degree=5`, `format=csv`, `validate=true`); flags given on the command
//! line win over the file. Blank lines and `#` comments are ignored.

use std::ffi::OsString;
use std::fs;

use anyhow::{bail, Context};

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

fn has_flag(argv: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let with_eq = format!("--{key}=");
    argv.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag || s.starts_with(&with_eq)
    })
}

/// Pairs from the config file text, in file order.
pub fn parse_config(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key=value", lineno + 1);
        };
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            bail!("config line {}: invalid key {:?}", lineno + 1, k.trim());
        }
        pairs.push((key, v.trim().to_string()));
    }
    Ok(pairs)
}

/// Appends config-file settings not already present on the command line.
pub fn merge_config(mut argv: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading config {}", path.to_string_lossy()))?;
    let mut extra = Vec::new();
    for (key, value) in parse_config(&text)? {
        if has_flag(&argv, &key) {
            continue;
        }
        // the negated form of a boolean on the command line also wins
        if key == "validate" && has_flag(&argv, "no-validate") || key == "no-validate" && has_flag(&argv, "validate") {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => extra.push(OsString::from(format!("--{key}={value}"))),
        }
    }
    argv.extend(extra);
    Ok(argv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_pairs_and_comments() {
        let p = parse_config("# sweep\ndegree = 5\n\nmax_degree=14\nvalidate=true\n").unwrap();
        assert_eq!(
            p,
            vec![
                ("degree".into(), "5".into()),
                ("max-degree".into(), "14".into()),
                ("validate".into(), "true".into())
            ]
        );
        assert!(parse_config("nonsense").is_err());
    }

    #[test]
    fn flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "degree=7\nformat=csv\nvalidate=true\n").unwrap();
        let argv = args(&["arithcorr", "conjecture", "--degree", "3", "--no-validate", "--config", path.to_str().unwrap()]);
        let merged = merge_config(argv).unwrap();
        let merged: Vec<String> = merged.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert!(merged.contains(&"--format=csv".to_string()));
        assert!(!merged.iter().any(|a| a == "--degree=7" || a == "--validate"));
    }
}
