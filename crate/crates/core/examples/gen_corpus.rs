//! Writes the fixture corpus as `action` scenario files.
//!
//! Usage: `cargo run -p ghostloop --example gen_corpus -- <dir>`

use std::path::PathBuf;

use serde_json::json;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir)?;
    for (name, action) in ghostloop::fixtures::corpus() {
        let scenario = json!({
            "kind": "action",
            "description": name,
            "action": action.to_json(),
        });
        let text = serde_json::to_string_pretty(&scenario).expect("scenario serializes") + "\n";
        std::fs::write(dir.join(format!("{name}.json")), text)?;
    }
    Ok(())
}
