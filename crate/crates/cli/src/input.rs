use std::io::Read;
use std::path::Path;
use std::sync::OnceLock;

use anyhow::{anyhow, Context, Result};
use ctrl_iso::{parse_graph6, Graph};

/// Contents of a file, or of stdin for `-`. Stdin is read once and shared
/// by every `-` argument.
fn read_source(path: &Path) -> Result<String> {
    static STDIN: OnceLock<Result<String, String>> = OnceLock::new();
    if path.as_os_str() == "-" {
        STDIN
            .get_or_init(|| {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map(|_| s)
                    .map_err(|e| format!("reading stdin: {e}"))
            })
            .clone()
            .map_err(|e| anyhow!(e))
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Nonblank lines of `text`, parsed as graph6, paired with their trimmed text.
pub fn parse_lines(text: &str, name: &str) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|e| anyhow!("{name}:{}: {e}", i + 1))?;
        out.push((line.to_string(), g));
    }
    Ok(out)
}

/// All graphs of a file; `-` reads stdin.
pub fn read_graphs(path: &Path) -> Result<Vec<(String, Graph)>> {
    let graphs = parse_lines(&read_source(path)?, &path.display().to_string())?;
    if graphs.is_empty() {
        return Err(anyhow!("{}: no graphs", path.display()));
    }
    Ok(graphs)
}

/// First graph of a file; later lines are ignored.
pub fn read_first(path: &Path) -> Result<(String, Graph)> {
    let text = read_source(path)?;
    let name = path.display().to_string();
    let Some((i, line)) = text.lines().enumerate().find(|(_, l)| !l.trim().is_empty()) else {
        return Err(anyhow!("{name}: no graphs"));
    };
    let line = line.trim();
    let g = parse_graph6(line).map_err(|e| anyhow!("{name}:{}: {e}", i + 1))?;
    Ok((line.to_string(), g))
}
