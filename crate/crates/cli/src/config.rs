//! `key = value` defaults merged into the argument vector before parsing.
//!
//! Each key is a long option name. A key is applied only when the option was
//! not given on the command line and the selected subcommand accepts it, so one
//! file can serve several subcommands.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Arg, Command};

use crate::error::{read, CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

pub fn parse(text: &str, path: &Path) -> CliResult<Vec<Entry>> {
    let mut out = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::ConfigSyntax {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("expected key = value, found '{line}'"),
        })?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::ConfigSyntax {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("invalid key '{}'", k.trim()),
            });
        }
        out.push(Entry {
            key,
            value: v.trim().to_string(),
            line: i + 1,
        });
    }
    Ok(out)
}

/// Value of `--config` if present.
fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

fn find_arg<'a>(cmds: &[&'a Command], token: &str) -> Option<&'a Arg> {
    for c in cmds.iter().rev() {
        for a in c.get_arguments() {
            let hit = if let Some(long) = token.strip_prefix("--") {
                a.get_long() == Some(long.split('=').next().unwrap_or(long))
            } else if let Some(short) = token.strip_prefix('-') {
                short.chars().next().is_some_and(|ch| a.get_short() == Some(ch))
            } else {
                false
            };
            if hit {
                return Some(a);
            }
        }
    }
    None
}

/// Subcommand chain selected by `argv` and the index just past its last name.
fn locate<'a>(root: &'a Command, argv: &[OsString]) -> (Vec<&'a Command>, usize) {
    let mut chain = vec![root];
    let mut insert_at = argv.len().min(1);
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        if tok == "--" {
            break;
        }
        if tok.starts_with('-') && tok.len() > 1 {
            let takes_value = find_arg(&chain, &tok).is_some_and(|a| a.get_action().takes_values());
            let inline = tok.contains('=') || (!tok.starts_with("--") && tok.len() > 2);
            if takes_value && !inline {
                i += 1;
            }
        } else if let Some(sub) = chain.last().unwrap().find_subcommand(tok.as_ref()) {
            chain.push(sub);
            insert_at = i + 1;
        }
        i += 1;
    }
    (chain, insert_at)
}

fn given(argv: &[OsString], arg: &Arg) -> bool {
    argv.iter().skip(1).any(|a| {
        let s = a.to_string_lossy();
        arg.get_long().is_some_and(|l| s == format!("--{l}") || s.starts_with(&format!("--{l}=")))
            || arg
                .get_short()
                .is_some_and(|c| !s.starts_with("--") && s.starts_with(&format!("-{c}")))
    })
}

fn known_anywhere(cmd: &Command, key: &str) -> bool {
    cmd.get_arguments().any(|a| a.get_long() == Some(key)) || cmd.get_subcommands().any(|s| known_anywhere(s, key))
}

/// Returns `argv` with config-file defaults spliced in after the subcommand.
pub fn merge(root: &Command, argv: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let entries = parse(&read(&path)?, &path)?;
    let (chain, insert_at) = locate(root, &argv);
    let mut extra: Vec<OsString> = vec![];
    for e in entries {
        let Some(arg) = chain
            .iter()
            .rev()
            .flat_map(|c| c.get_arguments())
            .find(|a| a.get_long() == Some(e.key.as_str()))
        else {
            if known_anywhere(root, &e.key) {
                continue;
            }
            return Err(CliError::Invalid(format!(
                "{}, line {}: unknown option '{}'",
                path.display(),
                e.line,
                e.key
            )));
        };
        if given(&argv, arg) {
            continue;
        }
        if arg.get_action().takes_values() {
            extra.push(format!("--{}", e.key).into());
            extra.push(e.value.into());
        } else {
            match e.value.as_str() {
                "true" | "yes" | "1" => extra.push(format!("--{}", e.key).into()),
                "false" | "no" | "0" => {}
                v => {
                    return Err(CliError::ConfigSyntax {
                        path,
                        line: e.line,
                        message: format!("'{}' is a switch; expected true or false, found '{v}'", e.key),
                    })
                }
            }
        }
    }
    let mut out = argv;
    let tail = out.split_off(insert_at);
    out.extend(extra);
    out.extend(tail);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::Cli;
    use clap::CommandFactory;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse("# defaults\nlog_base = log2\n\nrestarts=3 # few\n", Path::new("c")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].key.as_str(), e[0].value.as_str()), ("log-base", "log2"));
        assert_eq!(e[1].line, 4);
        assert!(parse("oops\n", Path::new("c")).is_err());
    }

    #[test]
    fn locates_nested_subcommand() {
        let cmd = Cli::command();
        let argv = os(&["tailormap", "--seed", "4", "tree", "jw", "-n", "3"]);
        let (chain, at) = locate(&cmd, &argv);
        assert_eq!(chain.last().unwrap().get_name(), "jw");
        assert_eq!(at, 5);
    }

    #[test]
    fn command_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.conf");
        std::fs::write(&cfg, "seed = 9\nrestarts = 2\nmodes = 4\n").unwrap();
        let cmd = Cli::command();
        let argv = os(&["tailormap", "--config", cfg.to_str().unwrap(), "--seed", "5", "tree", "jw"]);
        let merged: Vec<String> = merge(&cmd, argv)
            .unwrap()
            .into_iter()
            .map(|s| s.into_string().unwrap())
            .collect();
        assert!(merged.ends_with(&["tree".into(), "jw".into(), "--modes".into(), "4".into()]));
        assert!(!merged.contains(&"9".to_string()));
        assert!(!merged.contains(&"--restarts".to_string()));
    }

    #[test]
    fn unknown_key_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("bad.conf");
        std::fs::write(&cfg, "colour = red\n").unwrap();
        let argv = os(&["tailormap", "--config", cfg.to_str().unwrap(), "tree", "jw", "-n", "2"]);
        assert!(matches!(merge(&Cli::command(), argv), Err(CliError::Invalid(_))));
    }
}
