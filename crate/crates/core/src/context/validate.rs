use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{normalize_name, FormalContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
}

impl Issue {
    pub fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        Issue {
            code: code.into(),
            message: message.into(),
            location: None,
        }
    }

    pub fn at(mut self, location: impl Into<String>) -> Self {
        self.location = Some(location.into());
        self
    }
}

impl From<&Error> for Issue {
    fn from(err: &Error) -> Self {
        let issue = Issue::new(err.code(), err.to_string());
        match err.line() {
            Some(line) => issue.at(format!("line {line}")),
            None => issue,
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let Some(loc) = &self.location {
            write!(f, " ({loc})")?;
        }
        Ok(())
    }
}

/// Errors block every other operation; warnings are informational.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn has_warning(&self, code: &str, message: &str) -> bool {
        self.warnings
            .iter()
            .any(|w| w.code == code && w.message == message)
    }
}

/// Checks raw context parts and reports every structural violation found.
pub fn validate_parts(
    objects: &[String],
    attributes: &[String],
    incidence: &[Vec<bool>],
) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (kind, names, dup_code) in [
        ("object", objects, "duplicate-object"),
        ("attribute", attributes, "duplicate-attribute"),
    ] {
        let mut seen = HashSet::new();
        for (i, raw) in names.iter().enumerate() {
            let name = normalize_name(raw);
            let loc = format!("{kind} {i}");
            if name.is_empty() {
                report
                    .errors
                    .push(Issue::new("empty-name", format!("{kind} name is empty")).at(loc));
            } else if !seen.insert(name.clone()) {
                report.errors.push(
                    Issue::new(dup_code, format!("duplicate {kind} name {name:?}")).at(loc),
                );
            } else if &name != raw {
                report.warnings.push(
                    Issue::new("unnormalized-name", format!("{raw:?} normalizes to {name:?}"))
                        .at(loc),
                );
            }
        }
    }
    if incidence.len() != objects.len() {
        report.errors.push(Issue::new(
            "incidence-shape",
            format!(
                "{} incidence rows for {} objects",
                incidence.len(),
                objects.len()
            ),
        ));
    }
    for (g, row) in incidence.iter().enumerate() {
        if row.len() != attributes.len() {
            report.errors.push(
                Issue::new(
                    "incidence-shape",
                    format!("row has {} cells for {} attributes", row.len(), attributes.len()),
                )
                .at(format!("row {g}")),
            );
        }
    }
    report
}

/// First structural error in the parts, as a typed error.
pub(crate) fn check_parts(
    objects: &[String],
    attributes: &[String],
    incidence: &[Vec<bool>],
) -> Result<()> {
    let mut seen = HashSet::new();
    for name in objects {
        if name.is_empty() {
            return Err(Error::EmptyName { line: None });
        }
        if !seen.insert(name) {
            return Err(Error::DuplicateObject {
                name: name.clone(),
                line: None,
            });
        }
    }
    let mut seen = HashSet::new();
    for name in attributes {
        if name.is_empty() {
            return Err(Error::EmptyName { line: None });
        }
        if !seen.insert(name) {
            return Err(Error::DuplicateAttribute {
                name: name.clone(),
                line: None,
            });
        }
    }
    if incidence.len() != objects.len() {
        return Err(Error::IncidenceShape(format!(
            "{} incidence rows for {} objects",
            incidence.len(),
            objects.len()
        )));
    }
    if let Some((g, row)) = incidence
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != attributes.len())
    {
        return Err(Error::IncidenceShape(format!(
            "row {g} has {} cells for {} attributes",
            row.len(),
            attributes.len()
        )));
    }
    Ok(())
}

/// Full report for a context: structural errors plus column warnings.
///
/// An attribute no object exhibits is reported as `vacuous-attribute`; one
/// every object exhibits (in a non-empty context) as `universal-attribute`.
pub fn validate_context(ctx: &FormalContext) -> ValidationReport {
    let mut report = validate_parts(ctx.objects(), ctx.attributes(), &ctx.incidence_matrix());
    for (m, name) in ctx.attributes().iter().enumerate() {
        let holders = ctx.column(m).len();
        if holders == 0 {
            report
                .warnings
                .push(Issue::new("vacuous-attribute", name.clone()));
        } else if holders == ctx.object_count() {
            report
                .warnings
                .push(Issue::new("universal-attribute", name.clone()));
        }
    }
    report
}
