//! Instance files.
//!
//! A file is a TOML document holding one instance and its budget:
//!
//! ```toml
//! robots = 4
//!
//! [budget]
//! kind = "total"
//! value = 100
//!
//! [costs]
//! kind = "symmetric"
//! values = [100, 1, 1]
//!
//! [[tasks]]
//! requirement = 1
//! ```
//!
//! Costs come in three kinds: `symmetric` (one value per task), `matrix`
//! (`rows`, one row per robot) and `location` (`scale`, with `robots` given as
//! a list of `[x, y]` points and a `point` on every task).

use std::fmt::{self, Write};

use mrta_core::{Budget, BudgetKind, Cost, Instance, Point};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based position, when the error points into the text.
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl FormatError {
    fn plain(message: impl Into<String>) -> Self {
        Self { line: None, column: None, message: message.into() }
    }

    fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
        Self { line: Some(line), column: Some(column), message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Deserialize)]
#[serde(untagged)]
enum RobotsDoc {
    Count(usize),
    Points(Vec<[i64; 2]>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskDoc {
    requirement: usize,
    point: Option<[i64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetDoc {
    kind: String,
    value: Cost,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CostsDoc {
    Symmetric { values: Vec<Cost> },
    Matrix { rows: Vec<Vec<Cost>> },
    Location { scale: i64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    robots: toml::Spanned<RobotsDoc>,
    budget: toml::Spanned<BudgetDoc>,
    costs: toml::Spanned<CostsDoc>,
    #[serde(default)]
    tasks: Vec<TaskDoc>,
}

pub fn parse_instance(text: &str) -> Result<(Instance, Budget), FormatError> {
    let doc: Doc = toml::from_str(text).map_err(|e| match e.span() {
        Some(span) => FormatError::at(text, span.start, e.message()),
        None => FormatError::plain(e.message()),
    })?;
    let at = |span: std::ops::Range<usize>, msg: String| FormatError::at(text, span.start, msg);

    let budget_span = doc.budget.span();
    let b = doc.budget.into_inner();
    let kind: BudgetKind = b.kind.parse().map_err(|e: mrta_core::Error| at(budget_span.clone(), e.to_string()))?;
    if b.value < 0 {
        return Err(at(budget_span, format!("negative budget {}", b.value)));
    }
    let budget = Budget::new(kind, b.value);

    let q: Vec<usize> = doc.tasks.iter().map(|t| t.requirement).collect();
    let costs_span = doc.costs.span();
    let robots_span = doc.robots.span();
    let robots = doc.robots.into_inner();
    let inst = match (doc.costs.into_inner(), robots) {
        (CostsDoc::Location { scale }, RobotsDoc::Points(points)) => {
            let tasks = doc
                .tasks
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    t.point.map(|[x, y]| Point::new(x, y)).ok_or_else(|| {
                        at(costs_span.clone(), format!("task {} has no point but costs are location-based", j + 1))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let robots = points.into_iter().map(|[x, y]| Point::new(x, y)).collect();
            Instance::located(q, robots, tasks, scale)
        }
        (CostsDoc::Location { .. }, RobotsDoc::Count(_)) => {
            return Err(at(robots_span, "location costs need robots as a list of points".into()));
        }
        (_, RobotsDoc::Points(_)) => {
            return Err(at(robots_span, "robot points are only allowed with location costs".into()));
        }
        (other, RobotsDoc::Count(n)) => {
            if let Some(j) = doc.tasks.iter().position(|t| t.point.is_some()) {
                return Err(at(costs_span, format!("task {} has a point but costs are not location-based", j + 1)));
            }
            match other {
                CostsDoc::Symmetric { values } => Instance::symmetric(n, q, values),
                CostsDoc::Matrix { rows } => Instance::new(n, q, rows),
                CostsDoc::Location { .. } => unreachable!(),
            }
        }
    };
    let inst = inst.map_err(|e| at(costs_span, e.to_string()))?;
    Ok((inst, budget))
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical text for an instance: symmetric costs are written as one value
/// per task, location costs as points, everything else as a full matrix.
pub fn serialize_instance(inst: &Instance, budget: Budget) -> String {
    let mut out = String::new();
    let loc = inst.structure.locations.as_ref();
    match loc {
        Some(l) => {
            let pts: Vec<String> = l.robots.iter().map(|p| format!("[{}, {}]", p.x, p.y)).collect();
            let _ = writeln!(out, "robots = [{}]", pts.join(", "));
        }
        None => {
            let _ = writeln!(out, "robots = {}", inst.robot_count());
        }
    }
    let _ = write!(out, "\n[budget]\nkind = \"{}\"\nvalue = {}\n\n[costs]\n", budget.kind.as_str(), budget.value);
    match (loc, inst.symmetric_costs()) {
        (Some(l), _) => {
            let _ = writeln!(out, "kind = \"location\"\nscale = {}", l.scale);
        }
        (None, Some(c)) => {
            let _ = writeln!(out, "kind = \"symmetric\"\nvalues = {}", list(c));
        }
        (None, None) => {
            out.push_str("kind = \"matrix\"\nrows = [\n");
            for row in &inst.costs {
                let _ = writeln!(out, "  {},", list(row));
            }
            out.push_str("]\n");
        }
    }
    for j in 0..inst.task_count() {
        let _ = write!(out, "\n[[tasks]]\nrequirement = {}\n", inst.requirement(j));
        if let Some(l) = loc {
            let _ = writeln!(out, "point = [{}, {}]", l.tasks[j].x, l.tasks[j].y);
        }
    }
    out
}
