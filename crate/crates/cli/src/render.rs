//! Plain-text value grids.

use pairkit::{Int, LatticePoint2, PiecewiseMapping};

/// Marker for points a mapping explicitly excludes.
pub const EXCLUDED: &str = "×";

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub x: (Int, Int),
    pub y: (Int, Int),
    /// Show the raw value of this region's form at out-of-domain points, in brackets.
    pub brackets: Option<usize>,
    /// Minimum cell width.
    pub width: Option<usize>,
}

impl GridSpec {
    pub fn cells(&self) -> u128 {
        let span = |(a, b): (Int, Int)| (b - a + 1).max(0) as u128;
        span(self.x) * span(self.y)
    }
}

enum Cell {
    Value(String),
    Raw(String),
    Excluded,
    Blank,
}

fn cell(m: &PiecewiseMapping, q: LatticePoint2, brackets: Option<usize>) -> Cell {
    if m.excluded.contains(&q) {
        return Cell::Excluded;
    }
    if let Ok(v) = m.eval(q) {
        return Cell::Value(v.to_string());
    }
    match brackets.and_then(|r| m.eval_unchecked(q, r).ok()) {
        Some(raw) => Cell::Raw(match raw.to_int() {
            Some(v) => format!("({v})"),
            None => format!("({raw})"),
        }),
        None => Cell::Blank,
    }
}

/// Rows from the top (largest y) down, each prefixed by its y coordinate,
/// with the x coordinates underneath.
pub fn render(m: &PiecewiseMapping, spec: &GridSpec) -> String {
    let (x0, x1) = spec.x;
    let (y0, y1) = spec.y;
    let rows: Vec<(Int, Vec<Cell>)> =
        (y0..=y1).rev().map(|y| (y, (x0..=x1).map(|x| cell(m, LatticePoint2::new(x, y), spec.brackets)).collect())).collect();

    let text_width = |c: &Cell| match c {
        Cell::Value(s) | Cell::Raw(s) => s.chars().count(),
        Cell::Excluded => 1,
        Cell::Blank => 0,
    };
    let widest_value = rows.iter().flat_map(|(_, r)| r.iter().map(text_width)).max().unwrap_or(0);
    let widest_x = (x0..=x1).map(|x| x.to_string().len()).max().unwrap_or(0);
    let w = widest_value.max(widest_x).max(spec.width.unwrap_or(0));
    let label_w = (y0..=y1).map(|y| y.to_string().len()).max().unwrap_or(1);

    let mut out = String::new();
    for (y, row) in &rows {
        let mut line = format!("{y:>label_w$} |");
        for c in row {
            let s = match c {
                Cell::Value(s) | Cell::Raw(s) => s.as_str(),
                Cell::Excluded => EXCLUDED,
                Cell::Blank => "",
            };
            let pad = w - s.chars().count();
            line.push(' ');
            line.extend(std::iter::repeat_n(' ', pad));
            line.push_str(s);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let cols = (x1 - x0 + 1).max(0) as usize;
    out.push_str(&format!("{:>label_w$} +{}\n", "", "-".repeat(cols * (w + 1))));
    let mut axis = format!("{:>label_w$}  ", "");
    for x in x0..=x1 {
        axis.push_str(&format!(" {x:>w$}"));
    }
    out.push_str(axis.trim_end());
    out.push('\n');
    out
}
