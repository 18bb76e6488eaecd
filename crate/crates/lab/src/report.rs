//! Theorem reports and the tree format they serialize to.

use std::collections::BTreeMap;
use std::fmt::Write;

/// A small ordered tree: strings at the leaves, lists and keyed maps inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf(String),
    List(Vec<Tree>),
    Map(Vec<(String, Tree)>),
}

impl Tree {
    pub fn leaf(s: impl ToString) -> Tree {
        Tree::Leaf(s.to_string())
    }

    pub fn map() -> Tree {
        Tree::Map(Vec::new())
    }

    /// Appends a key to a map node.
    pub fn with(mut self, key: &str, value: Tree) -> Tree {
        if let Tree::Map(ref mut entries) = self {
            entries.push((key.to_string(), value));
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Tree> {
        match self {
            Tree::Map(entries) => entries.iter().find(|(k, _)| k == key).map(|(_, v)| v),
            _ => None,
        }
    }

    /// Indented `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.text_into(&mut out, 0);
        out
    }

    fn text_into(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            Tree::Leaf(s) => {
                let _ = writeln!(out, "{pad}{s}");
            }
            Tree::List(items) => {
                for item in items {
                    match item {
                        Tree::Leaf(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        _ => {
                            let _ = writeln!(out, "{pad}-");
                            item.text_into(out, indent + 1);
                        }
                    }
                }
            }
            Tree::Map(entries) => {
                for (k, v) in entries {
                    match v {
                        Tree::Leaf(s) => {
                            let _ = writeln!(out, "{pad}{k}: {s}");
                        }
                        Tree::List(items) if items.is_empty() => {
                            let _ = writeln!(out, "{pad}{k}: (none)");
                        }
                        Tree::Map(items) if items.is_empty() => {
                            let _ = writeln!(out, "{pad}{k}: (none)");
                        }
                        _ => {
                            let _ = writeln!(out, "{pad}{k}:");
                            v.text_into(out, indent + 1);
                        }
                    }
                }
            }
        }
    }

    /// JSON-shaped rendering: every leaf is a string, two-space indentation.
    pub fn to_json_like(&self) -> String {
        let mut out = String::new();
        self.json_into(&mut out, 0);
        out.push('\n');
        out
    }

    fn json_into(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent + 1);
        let end = "  ".repeat(indent);
        match self {
            Tree::Leaf(s) => out.push_str(&quote(s)),
            Tree::List(items) if items.is_empty() => out.push_str("[]"),
            Tree::Map(entries) if entries.is_empty() => out.push_str("{}"),
            Tree::List(items) => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&pad);
                    item.json_into(out, indent + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&end);
                out.push(']');
            }
            Tree::Map(entries) => {
                out.push_str("{\n");
                for (i, (k, v)) in entries.iter().enumerate() {
                    let _ = write!(out, "{pad}{}: ", quote(k));
                    v.json_into(out, indent + 1);
                    out.push_str(if i + 1 < entries.len() { ",\n" } else { "\n" });
                }
                out.push_str(&end);
                out.push('}');
            }
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub instance: String,
    pub implication: String,
}

/// What one instance contributed to a report.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub instance: String,
    /// False when the hypotheses of the statement did not apply.
    pub applicable: bool,
    pub failures: Vec<String>,
    pub work: u64,
    pub counters: BTreeMap<String, u64>,
}

impl Outcome {
    pub fn new(instance: &str) -> Outcome {
        Outcome { instance: instance.to_string(), applicable: true, ..Outcome::default() }
    }

    /// Records one checked claim.
    pub fn expect(&mut self, ok: bool, claim: impl Into<String>) {
        self.work += 1;
        if !ok {
            self.failures.push(claim.into());
        }
    }

    /// `p ⇒ q`, counted as one unit of work.
    pub fn implies(&mut self, p: bool, q: bool, claim: impl Into<String>) {
        self.expect(!p || q, claim);
    }

    pub fn iff(&mut self, p: bool, q: bool, claim: impl Into<String>) {
        self.expect(p == q, claim);
    }

    pub fn count(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_insert(0) += 1;
    }

    pub fn error(instance: &str, e: impl std::fmt::Display) -> Outcome {
        let mut o = Outcome::new(instance);
        o.failures.push(format!("error: {e}"));
        o.work = 1;
        o
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: String,
    /// Instances on which the statement applied.
    pub instances: usize,
    /// Instances that were looked at but fell outside the hypotheses.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Number of individual claims checked; independent of threads and clocks.
    pub work_units: u64,
    pub counters: BTreeMap<String, u64>,
}

impl TheoremReport {
    /// Merges outcomes in instance order, whatever order they arrived in.
    pub fn merge(theorem: &str, mut outcomes: Vec<Outcome>) -> TheoremReport {
        outcomes.sort_by(|a, b| a.instance.cmp(&b.instance));
        let mut r = TheoremReport {
            theorem: theorem.to_string(),
            instances: 0,
            skipped: 0,
            failures: Vec::new(),
            work_units: 0,
            counters: BTreeMap::new(),
        };
        for o in outcomes {
            if o.applicable {
                r.instances += 1;
            } else {
                r.skipped += 1;
            }
            r.work_units += o.work;
            for (k, v) in o.counters {
                *r.counters.entry(k).or_insert(0) += v;
            }
            for f in o.failures {
                r.failures.push(Failure { instance: o.instance.clone(), implication: f });
            }
        }
        r
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn counter(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "no counterexample found in corpus"
        } else {
            "counterexample reported"
        }
    }

    pub fn to_tree(&self) -> Tree {
        let counters = Tree::Map(self.counters.iter().map(|(k, v)| (k.clone(), Tree::leaf(v))).collect());
        let failures = Tree::List(
            self.failures
                .iter()
                .map(|f| Tree::map().with("instance", Tree::leaf(&f.instance)).with("implication", Tree::leaf(&f.implication)))
                .collect(),
        );
        Tree::map()
            .with("theorem", Tree::leaf(&self.theorem))
            .with("verdict", Tree::leaf(self.verdict()))
            .with("instances", Tree::leaf(self.instances))
            .with("skipped", Tree::leaf(self.skipped))
            .with("work_units", Tree::leaf(self.work_units))
            .with("counters", counters)
            .with("failures", failures)
    }
}
