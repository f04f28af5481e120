//! Marker comments above detected entry points.
//!
//! A marker is a single `//` line carrying [`TAG`]. Injection only ever
//! inserts whole lines, matching the indentation and line ending of the line
//! it precedes. A marker is skipped when the run of marker lines directly
//! above its target already names the same algorithm, so re-running a scan
//! leaves the file unchanged.

pub const TAG: &str = "[algorec]";
pub const DEFAULT_TEMPLATE: &str =
    "// [algorec] {algorithm} — detected by pattern {pattern} v{version}";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marker {
    /// 1-based line the marker goes above.
    pub line: u32,
    pub algorithm: String,
    pub text: String,
}

/// Checks that a template renders to a single tagged line comment.
pub fn check_template(template: &str) -> Result<(), String> {
    if !template.starts_with("//") {
        return Err("comment template must start with `//`".into());
    }
    if !template.contains(TAG) || !template.contains("{algorithm}") {
        return Err(format!(
            "comment template must contain `{TAG}` and `{{algorithm}}`"
        ));
    }
    if template.contains(['\n', '\r']) {
        return Err("comment template must be a single line".into());
    }
    Ok(())
}

pub fn render(template: &str, algorithm: &str, pattern: &str, version: u32) -> String {
    template
        .replace("{algorithm}", algorithm)
        .replace("{pattern}", pattern)
        .replace("{version}", &version.to_string())
}

fn is_marker(line: &str) -> bool {
    let t = line.trim_start_matches('\u{feff}').trim();
    t.starts_with("//") && t.contains(TAG)
}

fn names(line: &str, algorithm: &str) -> bool {
    line.split(TAG)
        .nth(1)
        .is_some_and(|rest| rest.contains(algorithm))
}

fn eol_of(line: &str, fallback: &'static str) -> &'static str {
    if line.ends_with("\r\n") {
        "\r\n"
    } else if line.ends_with('\n') {
        "\n"
    } else {
        fallback
    }
}

/// `src` with the markers inserted. Markers aimed past the last line are
/// dropped.
pub fn inject(src: &str, markers: &[Marker]) -> String {
    let lines: Vec<&str> = src.split_inclusive('\n').collect();
    let fallback = lines.first().map_or("\n", |l| eol_of(l, "\n"));
    let mut out = String::with_capacity(src.len() + markers.len() * 80);
    for (i, line) in lines.iter().enumerate() {
        let mut wanted: Vec<&Marker> = markers
            .iter()
            .filter(|m| m.line as usize == i + 1)
            .collect();
        wanted.sort_by(|a, b| a.algorithm.cmp(&b.algorithm));
        wanted.dedup_by(|a, b| a.algorithm == b.algorithm);
        let above: Vec<&str> = lines[..i]
            .iter()
            .rev()
            .take_while(|l| is_marker(l))
            .copied()
            .collect();
        wanted.retain(|m| !above.iter().any(|l| names(l, &m.algorithm)));

        let mut body = *line;
        if i == 0 && !wanted.is_empty() {
            if let Some(rest) = body.strip_prefix('\u{feff}') {
                out.push('\u{feff}');
                body = rest;
            }
        }
        let indent = &body[..body.len() - body.trim_start_matches([' ', '\t']).len()];
        let eol = eol_of(line, fallback);
        for m in wanted {
            out.push_str(indent);
            out.push_str(&m.text);
            out.push_str(eol);
        }
        out.push_str(body);
    }
    out
}
