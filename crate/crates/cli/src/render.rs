use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use pcgbench_core::{ProblemContract, Rendering, RgbImage, Value};

use crate::error::CliError;

pub fn write_png(path: &Path, image: &RgbImage) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut encoder = png::Encoder::new(BufWriter::new(file), image.width, image.height);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let to_io = |e: png::EncodingError| CliError::io(path, std::io::Error::other(e));
    let mut writer = encoder.write_header().map_err(to_io)?;
    writer.write_image_data(&image.to_rgb_bytes()).map_err(to_io)?;
    writer.finish().map_err(to_io)
}

/// Writes `artifact_NNN.png` and/or `artifact_NNN.txt` per content into `dir`.
pub fn render_all(problem: &dyn ProblemContract, contents: &[Value], dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    for (index, content) in contents.iter().enumerate() {
        problem
            .content_space()
            .check(content)
            .map_err(|e| CliError::Invalid(format!("content {index} is not in the content space: {e}")))?;
    }
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for (index, content) in contents.iter().enumerate() {
        let stem = dir.join(format!("artifact_{index:03}"));
        let (image, text) = match problem.render(content) {
            Rendering::Image(image) => (Some(image), None),
            Rendering::Text(text) => (None, Some(text)),
            Rendering::Composite { image, text } => (Some(image), Some(text)),
        };
        if let Some(image) = image {
            let path = stem.with_extension("png");
            write_png(&path, &image)?;
            written.push(path);
        }
        if let Some(text) = text {
            let path = stem.with_extension("txt");
            fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// A JSON array of values, as read by `eval` and `render`.
pub fn load_values(path: &Path) -> Result<Vec<Value>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: expected a JSON array of values: {e}", path.display())))
}
