// The document interface used by the `adjunct` binary: parse, normalize,
// run a task and render its report.

use adjunct::cli::{run_task, Document, Format, Structure};
use adjunct::Budget;

const TASK: &str = r#"{
  "schema": "adjunct/v1",
  "kind": "task",
  "definitions": {
    "two": {"kind": "set", "body": {"atoms": ["l", "r"]}}
  },
  "body": {"task": "finset.bijection", "args": {"y": "two", "x": 2, "t": ["s", "t"]}}
}"#;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let doc = Document::parse(TASK)?;
    print!("{}", doc.render());
    let Structure::Task(spec) = doc.structure() else { unreachable!() };
    print!("{}", run_task(spec, Budget::default())?.render(Format::Text));

    let bad = r#"{"schema": "adjunct/v1", "kind": "graph", "body": {"vertices": ["0"], "edges": [["f", "0", "1"]]}}"#;
    println!("rejected: {}", Document::parse(bad).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("document example");
}
