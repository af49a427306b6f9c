//! Burmeister `.cxt` reader and writer.
//!
//! Layout: `B`, blank, object count, attribute count, blank, object names,
//! attribute names, then one `X`/`.` row per object.

use std::collections::HashSet;
use std::fmt::Write;

use super::{normalize_name, Dimension, FormalContext};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

const HEADER_LINES: usize = 5;

/// Parses a CXT document as a `combined` context.
pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    parse_cxt_with(text, Dimension::Combined)
}

/// Parses a CXT document, tagging the result with `dimension`.
pub fn parse_cxt_with(text: &str, dimension: Dimension) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().collect();
    // 1-based line accessor; lines past the end read as absent
    let at = |n: usize| lines.get(n - 1).copied();

    match at(1) {
        Some(l) if l.trim() == "B" => {}
        _ => {
            return Err(Error::MalformedHeader {
                line: 1,
                message: "expected 'B'".into(),
            })
        }
    }
    expect_blank(at(2), 2)?;
    let n_objects = parse_count(at(3), 3, "object")?;
    let n_attributes = parse_count(at(4), 4, "attribute")?;

    let first_object = HEADER_LINES + 1;
    let first_attribute = first_object + n_objects;
    let first_row = first_attribute + n_attributes;
    let expected = first_row + n_objects - 1;

    // Trailing blank lines may be trimmed; everything else must be present.
    let present = |n: usize, blank_ok: bool| -> Result<&str> {
        match at(n) {
            Some(l) => Ok(l),
            None if blank_ok => Ok(""),
            None => Err(Error::CountMismatch {
                line: n,
                message: format!(
                    "document ends at line {} but the header counts require {expected} lines",
                    lines.len()
                ),
            }),
        }
    };
    if at(5).is_some() || expected > HEADER_LINES {
        expect_blank(Some(present(5, true)?), 5)?;
    }

    let mut objects = Vec::with_capacity(n_objects);
    let mut seen = HashSet::new();
    for n in first_object..first_attribute {
        let name = normalize_name(present(n, false)?);
        if name.is_empty() {
            return Err(Error::EmptyName { line: Some(n) });
        }
        if !seen.insert(name.clone()) {
            return Err(Error::DuplicateObject {
                name,
                line: Some(n),
            });
        }
        objects.push(name);
    }

    let mut attributes = Vec::with_capacity(n_attributes);
    let mut seen = HashSet::new();
    for n in first_attribute..first_row {
        let name = normalize_name(present(n, false)?);
        if name.is_empty() {
            return Err(Error::EmptyName { line: Some(n) });
        }
        if !seen.insert(name.clone()) {
            return Err(Error::DuplicateAttribute {
                name,
                line: Some(n),
            });
        }
        attributes.push(name);
    }

    let mut rows = Vec::with_capacity(n_objects);
    for n in first_row..first_row + n_objects {
        let line = present(n, n_attributes == 0)?.trim_end();
        let mut row = BitSet::new(n_attributes);
        let mut cells = 0;
        for (col, ch) in line.chars().enumerate() {
            match ch {
                'X' if col < n_attributes => row.insert(col),
                'X' => {}
                '.' => {}
                found => {
                    return Err(Error::InvalidRowChar {
                        line: n,
                        column: col + 1,
                        found,
                    })
                }
            }
            cells += 1;
        }
        if cells != n_attributes {
            return Err(Error::CountMismatch {
                line: n,
                message: format!("row has {cells} cells, expected {n_attributes}"),
            });
        }
        rows.push(row);
    }

    if let Some(extra) = lines
        .iter()
        .enumerate()
        .skip(expected.max(HEADER_LINES))
        .find(|(_, l)| !l.trim().is_empty())
    {
        return Err(Error::CountMismatch {
            line: extra.0 + 1,
            message: format!("unexpected content after the last of {expected} lines"),
        });
    }

    Ok(FormalContext::from_bit_rows(
        dimension, objects, attributes, rows,
    ))
}

fn expect_blank(line: Option<&str>, n: usize) -> Result<()> {
    match line {
        Some(l) if l.trim().is_empty() => Ok(()),
        _ => Err(Error::MalformedHeader {
            line: n,
            message: "expected a blank line".into(),
        }),
    }
}

fn parse_count(line: Option<&str>, n: usize, what: &str) -> Result<usize> {
    let text = line.map(str::trim).unwrap_or_default();
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedHeader {
            line: n,
            message: format!("expected a decimal {what} count, found {text:?}"),
        });
    }
    text.parse().map_err(|_| Error::MalformedHeader {
        line: n,
        message: format!("{what} count {text:?} out of range"),
    })
}

/// Writes a context as a CXT document. The dimension is not carried.
pub fn serialize_cxt(ctx: &FormalContext) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "B\n\n{}\n{}\n\n",
        ctx.object_count(),
        ctx.attribute_count()
    );
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..ctx.object_count() {
        out.extend((0..ctx.attribute_count()).map(|m| if ctx.incidence(g, m) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}
