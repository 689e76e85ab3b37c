#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn lexcov<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_lexcov"))
        .args(args)
        .output()
        .expect("run lexcov")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Runs lexcov and panics with its stderr unless it exits 0.
pub fn ok<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = lexcov(args);
    assert!(out.status.success(), "lexcov failed: {}", stderr(&out));
    out
}

pub fn compile(dic: &Path, out: &Path) {
    use std::ffi::OsStr;
    ok([
        OsStr::new("compile"),
        dic.as_os_str(),
        OsStr::new("-o"),
        out.as_os_str(),
    ]);
}

/// Relative path to file contents for every file under `dir`.
pub fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().display().to_string();
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    out
}

/// A corpus that reproduces the classifier fixture's casing profiles:
/// sentence-initial occurrences open a sentence, the others sit mid-sentence.
/// Every other word is in `fixtures/classifier/lexicon.dic`.
pub fn classifier_corpus() -> String {
    let text = fs::read_to_string(fixtures().join("classifier/unknown_forms.tsv")).unwrap();
    let mut out = String::new();
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let occ = line.split('\t').nth(1).unwrap();
        for o in occ.split(' ') {
            match o.strip_prefix('^') {
                Some(w) => out.push_str(&format!("{w} chegou. ")),
                None => out.push_str(&format!("Ontem vimos {o}. ")),
            }
        }
        out.push('\n');
    }
    out
}
