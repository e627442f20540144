use std::collections::BTreeMap;
use std::fmt::Write;

/// Bidegree box `(p_min, p_max, q_min, q_max)`.
pub type Frame = (i64, i64, i64, i64);

pub fn frame(cells: &BTreeMap<(i64, i64), usize>) -> Option<Frame> {
    let mut it = cells.keys();
    let &(p, q) = it.next()?;
    Some(it.fold((p, p, q, q), |(a, b, c, d), &(p, q)| (a.min(p), b.max(p), c.min(q), d.max(q))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Tsv,
}

/// Dimensions drawn with `p` left to right and `q` bottom to top. Labels are
/// shifted by `(sp, sq)`; zero cells print as `.`.
pub fn grid(title: &str, cells: &BTreeMap<(i64, i64), usize>, frame: Option<Frame>, shift: (i64, i64), format: Format) -> String {
    let mut out = String::new();
    let Some((p0, p1, q0, q1)) = frame else {
        writeln!(out, "{title}\n  (zero)").unwrap();
        return out;
    };
    let (sp, sq) = shift;
    let cell = |p: i64, q: i64| match cells.get(&(p, q)) {
        Some(d) if *d > 0 => d.to_string(),
        _ => ".".to_string(),
    };
    match format {
        Format::Tsv => {
            writeln!(out, "# {title}").unwrap();
            let header: Vec<String> = (p0..=p1).map(|p| (p + sp).to_string()).collect();
            writeln!(out, "q\\p\t{}", header.join("\t")).unwrap();
            for q in (q0..=q1).rev() {
                let row: Vec<String> = (p0..=p1).map(|p| cell(p, q)).collect();
                writeln!(out, "{}\t{}", q + sq, row.join("\t")).unwrap();
            }
        }
        Format::Table => {
            let mut width = 1;
            for p in p0..=p1 {
                width = width.max((p + sp).to_string().len());
                for q in q0..=q1 {
                    width = width.max(cell(p, q).len());
                }
            }
            let qw = (q0..=q1).map(|q| (q + sq).to_string().len()).max().unwrap_or(1);
            writeln!(out, "{title}").unwrap();
            for q in (q0..=q1).rev() {
                let row: Vec<String> = (p0..=p1).map(|p| format!("{:>width$}", cell(p, q))).collect();
                writeln!(out, "{:>qw$} | {}", q + sq, row.join(" ")).unwrap();
            }
            let span = (p1 - p0 + 1) as usize * (width + 1) - 1;
            writeln!(out, "{:>qw$} +-{}", "", "-".repeat(span)).unwrap();
            let labels: Vec<String> = (p0..=p1).map(|p| format!("{:>width$}", p + sp)).collect();
            writeln!(out, "{:>qw$}   {}", "", labels.join(" ")).unwrap();
        }
    }
    out
}

/// `r p q dim` per nonzero cell.
pub fn raw(r: usize, cells: &BTreeMap<(i64, i64), usize>, shift: (i64, i64)) -> String {
    let mut out = String::new();
    for ((p, q), d) in cells {
        if *d > 0 {
            writeln!(out, "{r}\t{}\t{}\t{d}", p + shift.0, q + shift.1).unwrap();
        }
    }
    out
}
