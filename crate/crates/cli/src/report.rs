use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub anchor: String,
    pub pass: bool,
    pub witness: Value,
}

/// JSON report of one subcommand run. `runtime` stays `null` unless timing is
/// requested, so repeated runs produce identical bytes.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub runtime: Option<Runtime>,
}

#[derive(Debug, Serialize)]
pub struct Runtime {
    pub millis: u128,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: BTreeMap::new(), verdicts: Vec::new(), runtime: None }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(value));
        self
    }

    pub fn verdict(&mut self, claim: &str, anchor: &str, pass: bool, witness: impl Serialize) -> &mut Self {
        self.verdicts.push(Verdict { claim: claim.into(), anchor: anchor.into(), pass, witness: to_value(witness) });
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("value serializes")
}
