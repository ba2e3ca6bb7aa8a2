use std::fs;
use std::path::PathBuf;
use std::process::Command;

struct Session {
    line: usize,
    command: String,
    expected: Vec<String>,
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// `$ slender ...` lines inside console fences, each with the lines that
/// follow it.
fn sessions(text: &str) -> Vec<Session> {
    let mut out: Vec<Session> = Vec::new();
    let mut in_console = false;
    for (i, line) in text.lines().enumerate() {
        if line.starts_with("```") {
            in_console = line == "```console";
            continue;
        }
        if !in_console {
            continue;
        }
        match line.strip_prefix("$ slender ") {
            Some(cmd) => out.push(Session { line: i + 1, command: cmd.to_string(), expected: Vec::new() }),
            None => out.last_mut().expect("output before any command").expected.push(line.to_string()),
        }
    }
    out
}

fn words(command: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let (mut quoted, mut pending) = (false, false);
    for c in command.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                pending = true;
            }
            ' ' if !quoted => {
                if pending || !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                pending = false;
            }
            _ => cur.push(c),
        }
    }
    if pending || !cur.is_empty() {
        out.push(cur);
    }
    out
}

#[test]
fn cli_chapter_sessions_replay() {
    let path = workspace().join("book/src/cli.md");
    let text = fs::read_to_string(&path).unwrap();
    let all = sessions(&text);
    assert!(all.len() > 50, "found only {} sessions", all.len());
    for s in all {
        let out = Command::new(env!("CARGO_BIN_EXE_slender"))
            .args(words(&s.command))
            .current_dir(workspace())
            .output()
            .unwrap();
        let mut got: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
        got.extend(String::from_utf8(out.stderr).unwrap().lines().map(String::from));
        let code = out.status.code().unwrap();
        if code != 0 {
            got.push(format!("[exit {code}]"));
        }
        assert_eq!(got, s.expected, "cli.md:{}: slender {}", s.line, s.command);
    }
}

#[test]
fn quoting() {
    assert_eq!(words(r#"gp mul "u v" w"#), ["gp", "mul", "u v", "w"]);
    assert_eq!(words(r#"a "" b"#), ["a", "", "b"]);
}
