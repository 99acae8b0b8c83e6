#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

pub fn twovass(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twovass")).current_dir(dir).args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

pub struct Golden {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
    pub expected: String,
}

impl Golden {
    pub fn run(&self) -> Output {
        let (sub, rest) = self.args.split_first().expect("a subcommand");
        let mut args = vec![sub.as_str(), self.name.as_str()];
        args.extend(rest.iter().map(String::as_str));
        twovass(&golden_dir(), &args)
    }

    /// Whether stdout of this golden is a certificate file.
    pub fn certifies(&self) -> bool {
        matches!(self.args[0].as_str(), "decide" | "slps-decide" | "shorten")
    }
}

pub fn goldens() -> Vec<Golden> {
    let dir = golden_dir();
    let mut names: Vec<String> = fs::read_dir(&dir)
        .expect("golden directory")
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_file())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let text = fs::read_to_string(dir.join(&name)).unwrap();
            let header = |key: &str| {
                text.lines()
                    .find_map(|l| l.strip_prefix(key))
                    .unwrap_or_else(|| panic!("{name} lacks `{key}`"))
                    .trim()
                    .to_string()
            };
            let args = header("# run:").split_whitespace().map(str::to_string).collect();
            let exit = header("# exit:").parse().unwrap();
            let expected = fs::read_to_string(dir.join("expected").join(format!("{name}.out"))).unwrap();
            Golden { name, args, exit, expected }
        })
        .collect()
}
