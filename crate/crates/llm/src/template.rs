//! Few-shot prompts: rules, goal, legend and five example levels.

use pcgbench_core::{ProblemContract, SpaceDescriptor, Value};

use crate::error::LlmError;
use crate::parse::grid_from_rows;

/// Number of example levels in every prompt.
pub const EXAMPLE_COUNT: usize = 5;

/// Opening and closing line of a level block.
pub const FENCE: &str = "```";

/// Tile code to character mapping, with a short name per tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Legend {
    entries: Vec<(char, i64, &'static str)>,
}

impl Legend {
    pub fn new(entries: Vec<(char, i64, &'static str)>) -> Self {
        Self { entries }
    }

    pub fn code(&self, symbol: char) -> Option<i64> {
        self.entries.iter().find(|e| e.0 == symbol).map(|e| e.1)
    }

    pub fn symbol(&self, code: i64) -> Option<char> {
        self.entries.iter().find(|e| e.1 == code).map(|e| e.0)
    }

    pub fn entries(&self) -> &[(char, i64, &'static str)] {
        &self.entries
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PromptTemplate {
    pub problem: String,
    pub rules: String,
    pub goal: String,
    pub legend: Legend,
    pub examples: Vec<Value>,
}

const BINARY_EXAMPLES: &str = include_str!("../data/binary.txt");
const SOKOBAN_EXAMPLES: &str = include_str!("../data/sokoban.txt");
const ZELDA_EXAMPLES: &str = include_str!("../data/zelda.txt");

pub const SUPPORTED: [&str; 3] = ["binary-v0", "sokoban-v0", "zelda-v0"];

fn grid_dims(problem: &dyn ProblemContract) -> Result<(usize, usize), LlmError> {
    match problem.content_space() {
        SpaceDescriptor::Grid2D { width, height, .. } => Ok((*width, *height)),
        _ => Err(LlmError::UnsupportedProblem(problem.name().to_string())),
    }
}

impl PromptTemplate {
    /// The bundled template for a supported problem, worded from its parameters.
    pub fn bundled(problem: &dyn ProblemContract) -> Result<Self, LlmError> {
        let name = problem.name();
        let params = problem.params();
        let (legend, raw, rules, goal) = match name {
            "binary-v0" => (
                Legend::new(vec![('.', 0, "empty"), ('#', 1, "solid")]),
                BINARY_EXAMPLES,
                "The level is a top-down maze of empty and solid tiles. A walker moves up, down, left or right \
                 through empty tiles only."
                    .to_string(),
                format!(
                    "Create a new maze in which every empty tile is connected to every other empty tile, and the \
                     longest shortest path between two empty tiles is at least {} steps.",
                    params.int("path_target")
                ),
            ),
            "sokoban-v0" => (
                Legend::new(vec![
                    ('-', 0, "floor"),
                    ('#', 1, "wall"),
                    ('@', 2, "player"),
                    ('$', 3, "crate"),
                    ('.', 4, "target"),
                ]),
                SOKOBAN_EXAMPLES,
                "Sokoban: the player walks up, down, left or right and pushes crates by walking into them. A crate \
                 moves only when the cell behind it is free; crates cannot be pulled. The level is solved when \
                 every crate rests on a target. The area outside the grid is wall."
                    .to_string(),
                format!(
                    "Create a new level with exactly one player, between {} and {} crates, as many targets as \
                     crates, and a shortest solution of at least {} moves.",
                    params.int("min_crates"),
                    params.int("max_crates"),
                    params.int("min_solution")
                ),
            ),
            "zelda-v0" => (
                Legend::new(vec![
                    ('.', 0, "empty"),
                    ('#', 1, "solid"),
                    ('@', 2, "player"),
                    ('k', 3, "key"),
                    ('D', 4, "door"),
                    ('e', 5, "enemy"),
                ]),
                ZELDA_EXAMPLES,
                "A top-down dungeon. The player walks up, down, left or right through non-solid tiles, must pick \
                 up the key, and then leave through the door."
                    .to_string(),
                format!(
                    "Create a new level with exactly one player, one key and one door, between {} and {} enemies, \
                     all non-solid tiles connected, and a walk from player to key plus key to door of at least {} \
                     steps.",
                    params.int("min_enemies"),
                    params.int("max_enemies"),
                    params.int("solution_target")
                ),
            ),
            other => return Err(LlmError::UnsupportedProblem(other.to_string())),
        };
        let (width, height) = grid_dims(problem)?;
        let examples = parse_examples(raw, &legend, width, height)
            .map_err(|reason| LlmError::Examples { problem: name.to_string(), reason })?;
        if examples.len() != EXAMPLE_COUNT {
            return Err(LlmError::Examples {
                problem: name.to_string(),
                reason: format!("expected {EXAMPLE_COUNT} levels, found {}", examples.len()),
            });
        }
        Ok(Self { problem: name.to_string(), rules, goal, legend, examples })
    }

    /// Renders content as legend characters, one line per row.
    pub fn render(&self, content: &Value) -> String {
        let mut out = String::new();
        for row in content.as_list().unwrap_or_default() {
            for cell in row.as_list().unwrap_or_default() {
                out.push(cell.as_int().and_then(|c| self.legend.symbol(c)).unwrap_or('?'));
            }
            out.push('\n');
        }
        out
    }

    /// Index of the prompt example equal to `content`, if any.
    pub fn duplicate_of(&self, content: &Value) -> Option<usize> {
        self.examples.iter().position(|e| e == content)
    }
}

/// Blank-line separated grids.
fn parse_examples(raw: &str, legend: &Legend, width: usize, height: usize) -> Result<Vec<Value>, String> {
    let mut levels = Vec::new();
    let mut rows: Vec<&str> = Vec::new();
    for line in raw.lines().map(str::trim).chain(std::iter::once("")) {
        if line.is_empty() {
            if !rows.is_empty() {
                let level = grid_from_rows(&rows, legend, width, height).map_err(|e| e.to_string())?;
                levels.push(level);
                rows.clear();
            }
        } else {
            rows.push(line);
        }
    }
    Ok(levels)
}

/// The full prompt text for `problem`. Identical inputs give identical bytes.
pub fn build_prompt(problem: &dyn ProblemContract, template: &PromptTemplate) -> Result<String, LlmError> {
    if template.problem != problem.name() {
        return Err(LlmError::TemplateMismatch { template: template.problem.clone(), problem: problem.name().into() });
    }
    let (width, height) = grid_dims(problem)?;
    let mut prompt = String::new();
    prompt.push_str(&template.rules);
    prompt.push_str("\n\n");
    prompt.push_str(&template.goal);
    prompt.push_str("\n\nLegend:\n");
    for (symbol, _, name) in template.legend.entries() {
        prompt.push_str(&format!("{symbol} {name}\n"));
    }
    prompt.push_str(&format!(
        "\nHere are {} example levels, each {height} rows of {width} characters.\n",
        template.examples.len()
    ));
    for (i, example) in template.examples.iter().enumerate() {
        prompt.push_str(&format!("\nExample {}:\n{FENCE}\n{}{FENCE}\n", i + 1, template.render(example)));
    }
    prompt.push_str(&format!(
        "\nWrite one new level that differs from every example. Reply with exactly {height} rows of {width} \
         characters from the legend, on their own lines between an opening {FENCE} line and a closing {FENCE} line.\n"
    ));
    Ok(prompt)
}
