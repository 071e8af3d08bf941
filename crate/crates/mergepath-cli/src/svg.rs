//! Deterministic SVG rendering of merging paths.

use mergepath_core::{merging_path, ArrivalSequence, Step};

const CELL: usize = 24;
const MARGIN: usize = 12;

/// Draws the lattice path of `b`: x counts the left lane, y the right
/// lane, with a diagonal guide line and bounce steps in a dashed red
/// stroke. Output is byte-for-byte stable for a fixed input.
pub fn render(b: &ArrivalSequence) -> String {
    let len = b.len().max(1);
    let size = MARGIN * 2 + len * CELL;
    let px = |x: usize| MARGIN + x * CELL;
    let py = |y: usize| size - MARGIN - y * CELL;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));
    for i in 0..=len {
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
            px(i), py(0), px(i), py(len)
        ));
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
            px(0), py(i), px(len), py(i)
        ));
    }
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\" stroke-width=\"1\" \
         stroke-dasharray=\"2,3\"/>\n",
        px(0), py(0), px(len), py(len)
    ));

    let (mut x, mut y) = (0usize, 0usize);
    for step in &merging_path(b).steps {
        let (nx, ny) = match step {
            Step::Right => (x + 1, y),
            Step::Up | Step::UpBounce => (x, y + 1),
        };
        let style = match step {
            Step::UpBounce => "stroke=\"#d33\" stroke-width=\"3\" stroke-dasharray=\"5,3\"",
            _ => "stroke=\"#000\" stroke-width=\"3\"",
        };
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {} class=\"{}\"/>\n",
            px(x),
            py(y),
            px(nx),
            py(ny),
            style,
            match step {
                Step::Right => "left-lane",
                Step::Up => "right-lane",
                Step::UpBounce => "bounce",
            }
        ));
        (x, y) = (nx, ny);
    }
    out.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#000\"/>\n",
        px(x),
        py(y)
    ));
    out.push_str("</svg>\n");
    out
}
