#![no_main]

//! Documents separated by `---` lines, loaded together and resolved.

use duality_core::document::{Document, Workspace};
use libfuzzer_sys::fuzz_target;

const BUDGET: usize = 256;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut ws = Workspace::new();
    for part in text.split("\n---\n") {
        let _ = ws.add_text(part);
    }
    if ws.check_references().is_err() {
        return;
    }
    let docs: Vec<(String, &'static str)> = ws.documents().map(|d| (d.name().to_string(), d.kind())).collect();
    for (name, kind) in docs {
        match kind {
            "lattice" => drop(ws.lattice(&name)),
            "frame" => drop(ws.frame(&name)),
            "algebra" => drop(ws.algebra(&name, BUDGET)),
            _ => {
                let _ = ws.bitop_space(&name);
                let _ = ws.ordered_space(&name);
                let _ = ws.space_truth(&name);
            }
        }
    }
    let _ = ws.documents().map(Document::references).count();
});
