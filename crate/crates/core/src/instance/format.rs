//! Canonical line-oriented text format.
//!
//! ```text
//! @lqmatch v1
//! agent a1: b1 b2
//! agent a2: b1
//! resource b1 [0,1]: a1 a2
//! resource b2 [1,1]: a1
//! ```
//!
//! `#` starts a comment. Agent and resource lines may interleave; each side
//! is indexed in the order its lines appear.

use std::fmt::Write;

use super::{valid_id, Instance, InstanceBuilder, InstanceError, Quota};

pub const HEADER: &str = "@lqmatch v1";

fn syntax(line: usize, column: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Byte offset of `sub` inside `whole`, as a 1-based column.
fn column_of(whole: &str, sub: &str) -> usize {
    (sub.as_ptr() as usize).saturating_sub(whole.as_ptr() as usize) + 1
}

fn parse_id<'a>(raw: &'a str, line_no: usize, whole: &str) -> Result<&'a str, InstanceError> {
    let id = raw.trim();
    if id.is_empty() {
        return Err(syntax(line_no, column_of(whole, raw), "missing id"));
    }
    if !valid_id(id) {
        return Err(syntax(
            line_no,
            column_of(whole, id),
            format!("invalid id `{id}`"),
        ));
    }
    Ok(id)
}

fn parse_list<'a>(rest: &'a str, line_no: usize, whole: &str) -> Result<Vec<&'a str>, InstanceError> {
    rest.split_whitespace()
        .map(|tok| {
            if valid_id(tok) {
                Ok(tok)
            } else {
                Err(syntax(
                    line_no,
                    column_of(whole, tok),
                    format!("invalid id `{tok}`"),
                ))
            }
        })
        .collect()
}

fn parse_quota(raw: &str, line_no: usize, whole: &str) -> Result<Quota, InstanceError> {
    let col = column_of(whole, raw);
    let inner = raw
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| syntax(line_no, col, "expected quota `[lower,upper]`"))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| syntax(line_no, col, "expected quota `[lower,upper]`"))?;
    let lower = lo
        .trim()
        .parse::<u32>()
        .map_err(|_| syntax(line_no, col, format!("invalid lower quota `{}`", lo.trim())))?;
    let upper = hi
        .trim()
        .parse::<u32>()
        .map_err(|_| syntax(line_no, col, format!("invalid upper quota `{}`", hi.trim())))?;
    Ok(Quota { lower, upper })
}

/// Parses the canonical text format into a validated [`Instance`].
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut builder = InstanceBuilder::new();
    let mut seen_header = false;

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if !seen_header {
            if trimmed != HEADER {
                return Err(syntax(
                    line_no,
                    column_of(raw_line, trimmed),
                    format!("expected header `{HEADER}`"),
                ));
            }
            seen_header = true;
            continue;
        }

        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let (head, list) = rest.split_once(':').ok_or_else(|| {
            syntax(
                line_no,
                column_of(raw_line, trimmed) + trimmed.len(),
                "expected `:`",
            )
        })?;
        match keyword {
            "agent" => {
                let id = parse_id(head, line_no, raw_line)?;
                let prefs = parse_list(list, line_no, raw_line)?;
                builder.agent(id, prefs);
                builder.set_last_agent_line(line_no);
            }
            "resource" => {
                let head_trim = head.trim();
                let (id_raw, quota_raw) = head_trim.split_once(char::is_whitespace).ok_or_else(
                    || {
                        syntax(
                            line_no,
                            column_of(raw_line, head_trim) + head_trim.len(),
                            "expected quota `[lower,upper]`",
                        )
                    },
                )?;
                let id = parse_id(id_raw, line_no, raw_line)?;
                let quota = parse_quota(quota_raw.trim(), line_no, raw_line)?;
                let prefs = parse_list(list, line_no, raw_line)?;
                builder.resource(id, quota, prefs);
                builder.set_last_resource_line(line_no);
            }
            other => {
                return Err(syntax(
                    line_no,
                    column_of(raw_line, keyword),
                    format!("unknown keyword `{other}`"),
                ))
            }
        }
    }
    if !seen_header {
        return Err(syntax(1, 1, format!("missing header `{HEADER}`")));
    }
    builder.build()
}

/// Renders an instance in canonical form: header, agents, then resources,
/// each in index order, single-space separated.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for a in inst.agents() {
        write!(out, "agent {}:", inst.agent_id(a)).unwrap();
        for &b in inst.agent_prefs(a) {
            out.push(' ');
            out.push_str(inst.resource_id(b));
        }
        out.push('\n');
    }
    for b in inst.resources() {
        write!(out, "resource {} {}:", inst.resource_id(b), inst.quota(b)).unwrap();
        for &a in inst.resource_prefs(b) {
            out.push(' ');
            out.push_str(inst.agent_id(a));
        }
        out.push('\n');
    }
    out
}
