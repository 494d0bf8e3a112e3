//! CLI invocations whose outputs are checked in under `tests/golden/`.

use std::path::{Path, PathBuf};

pub const FLOWER_POINTS: &str = "0,1,2,3.5,5,inf";

/// Case name, arguments, and whether the command also writes an SVG.
pub fn cases() -> Vec<(&'static str, Vec<&'static str>, bool)> {
    vec![
        ("flower", vec!["flower", "--points", FLOWER_POINTS, "--r1", "0.7"], true),
        ("symmetric_flower", vec!["symmetric-flower", "--points", FLOWER_POINTS], true),
        ("family", vec!["family", "--points", FLOWER_POINTS, "--r1", "0.5,2"], false),
        ("field", vec!["field", "--alpha", "0.9", "--beta", "1.0", "--gamma", "1.1", "--window", "2"], false),
        ("layout", vec!["layout", "--alpha", "1.0", "--beta", "1.05", "--gamma", "1.1", "--window", "2"], true),
        ("doyle", vec!["doyle", "-A", "1.2", "-B", "0.9", "--window", "2"], true),
        ("airy", vec!["airy", "--grid-spacing", "0.5", "--extent", "1.0"], true),
    ]
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Run every case into `dir` and return the written file names.
pub fn render_all(dir: &Path) -> Vec<String> {
    let mut names = Vec::new();
    for (name, args, svg) in cases() {
        let json = dir.join(format!("{name}.json"));
        let mut argv: Vec<String> = std::iter::once("hexpack").chain(args).map(String::from).collect();
        argv.push("--out".into());
        argv.push(json.display().to_string());
        names.push(format!("{name}.json"));
        if svg {
            argv.push("--svg".into());
            argv.push(dir.join(format!("{name}.svg")).display().to_string());
            names.push(format!("{name}.svg"));
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = hexpack::cli::run(argv, &mut out, &mut err);
        assert_eq!(code, 0, "{name}: {}", String::from_utf8_lossy(&err));
    }
    names
}
