//! Flat `key = value` configuration files for the `bench` binary.
//!
//! Every key is the long name of a command-line flag without the leading
//! dashes. Boolean flags take `true` or `false`. Blank lines and lines
//! starting with `#` are ignored.
//!
//! ```text
//! # quadratic grid
//! suite = quadratic
//! alpha = 1e-5,1e-3,1e-1
//! memory = 0,3,5,10,inf
//! exact-seed = true
//! ```

use std::path::Path;

use crate::error::{Error, Result};

/// Converts the contents of a config file into command-line arguments.
pub fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut args = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(Error::InvalidInput(format!(
                "line {}: invalid key",
                lineno + 1
            )));
        }
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

/// Replaces `--config <path>` in `raw` by the file's arguments, placed
/// directly after the subcommand so that flags given on the command line
/// take precedence.
pub fn expand_args(raw: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(raw.len());
    let mut it = raw.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(
                it.next()
                    .ok_or_else(|| Error::InvalidInput("--config needs a path".into()))?,
            );
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text =
        std::fs::read_to_string(Path::new(&path)).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let from_file = parse_config(&text)?;
    // program name and subcommand come first
    let split = rest.len().min(2);
    let mut out: Vec<String> = rest[..split].to_vec();
    out.extend(from_file);
    out.extend_from_slice(&rest[split..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_values_become_flags() {
        let args =
            parse_config("# c\nsuite = quadratic\n\nes = true\nminres = false\nalpha=1e-5,1e-3\n")
                .unwrap();
        assert_eq!(
            args,
            vec!["--suite", "quadratic", "--es", "--alpha", "1e-5,1e-3"]
        );
    }

    #[test]
    fn malformed_line_rejected() {
        assert!(parse_config("suite quadratic").is_err());
        assert!(parse_config("= 3").is_err());
        assert!(parse_config("config = other.cfg").is_err());
    }

    #[test]
    fn file_args_precede_command_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, "suite = quadratic\nmemory = 5\n").unwrap();
        let raw = [
            "bench",
            "run",
            "--config",
            p.to_str().unwrap(),
            "--memory",
            "3",
        ]
        .map(String::from)
        .to_vec();
        let out = expand_args(raw).unwrap();
        assert_eq!(
            out,
            vec![
                "bench",
                "run",
                "--suite",
                "quadratic",
                "--memory",
                "5",
                "--memory",
                "3"
            ]
        );
    }

    #[test]
    fn without_config_unchanged() {
        let raw = vec!["bench".to_string(), "run".to_string()];
        assert_eq!(expand_args(raw.clone()).unwrap(), raw);
    }
}
