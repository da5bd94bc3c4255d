//! Turning a model reply into grid content.

use pcgbench_core::{ProblemContract, SpaceDescriptor, Value};

use crate::error::ParseError;
use crate::template::{Legend, PromptTemplate, FENCE};

/// Extracts the first fenced block and decodes it with the template legend.
///
/// The opening fence may carry a language tag. Text around the block is
/// ignored, trailing whitespace on rows is dropped, and a block whose closing
/// fence is missing runs to the end of the reply.
pub fn parse_response(
    problem: &dyn ProblemContract,
    template: &PromptTemplate,
    text: &str,
) -> Result<Value, ParseError> {
    let (width, height) = match problem.content_space() {
        SpaceDescriptor::Grid2D { width, height, .. } => (*width, *height),
        _ => return Err(ParseError::NoGrid),
    };
    let rows = fenced_rows(text).ok_or(ParseError::NoGrid)?;
    grid_from_rows(&rows, &template.legend, width, height)
}

fn fenced_rows(text: &str) -> Option<Vec<&str>> {
    let mut lines = text.lines();
    lines.find(|l| l.trim_start().starts_with(FENCE))?;
    let rows: Vec<&str> = lines
        .take_while(|l| !l.trim_start().starts_with(FENCE))
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .collect();
    (!rows.is_empty()).then_some(rows)
}

pub(crate) fn grid_from_rows(rows: &[&str], legend: &Legend, width: usize, height: usize) -> Result<Value, ParseError> {
    let widths: Vec<usize> = rows.iter().map(|r| r.chars().count()).collect();
    if rows.len() != height || widths.iter().any(|&w| w != width) {
        return Err(ParseError::Shape { expected_width: width, expected_rows: height, found: widths });
    }
    let mut grid = Vec::with_capacity(height);
    for (row, line) in rows.iter().enumerate() {
        let cells = line
            .chars()
            .enumerate()
            .map(|(column, symbol)| legend.code(symbol).ok_or(ParseError::UnknownSymbol { symbol, row, column }))
            .collect::<Result<Vec<i64>, _>>()?;
        grid.push(cells);
    }
    Ok(Value::grid(&grid))
}
