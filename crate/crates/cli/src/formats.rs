//! Text formats for the objects the tool moves around: matrices, based
//! complexes, closed-orbit sets, and circle Morse models.
//!
//! All four formats share the same conventions.  `#` starts a comment that
//! runs to the end of the line, blank lines are ignored, and the first
//! significant line must be a `group` header naming the coefficient group:
//!
//! ```text
//! group free_abelian 2
//! group monomial_extension [[2,1],[1,1]]
//! group degenerate 1
//! ```
//!
//! `free_abelian` and `monomial_extension` accept an optional trailing
//! `scale L`.  Matrix entries are expressions in the lattice variables and
//! `t`, e.g. `1 - 2*x*y^-1*t`; rows are comma-separated lines.  Sections
//! whose matrix is zero (or has an empty side) may simply be omitted.
//!
//! Parse errors carry 1-based line and column positions in the file.

use tornov_core::algebra::MonomialAutomorphism;
use tornov_core::group::{GroupDescriptor, GroupElement, GroupRingElement};
use tornov_core::linalg::SkewMatrix;
use tornov_core::morse::CircleMorseModel;
use tornov_core::zeta::{ClosedOrbit, OrbitSet};
use tornov_core::{KernelError, Result};

/// Keywords that terminate a block of data rows.
const KEYWORDS: &[&str] = &[
    "group", "matrix", "dims", "labels", "boundary", "orbits", "complete",
    "critical", "level", "N", "M", "W", "phi", "dSigma",
];

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> KernelError {
    KernelError::Parse { line, col, msg: msg.into() }
}

/// A significant line: 1-based number and the text with any comment removed.
#[derive(Debug, Clone)]
struct Line {
    no: usize,
    text: String,
}

impl Line {
    /// 1-based column of the first character of `part` inside this line.
    fn col_of(&self, offset: usize) -> usize {
        self.text[..offset].chars().count() + 1
    }
}

fn significant_lines(src: &str) -> Vec<Line> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let text = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if text.trim().is_empty() {
            continue;
        }
        out.push(Line { no: idx + 1, text: text.trim_end().to_string() });
    }
    out
}

fn first_word(line: &Line) -> &str {
    line.text.split_whitespace().next().unwrap_or("")
}

fn is_section_header(line: &Line) -> bool {
    KEYWORDS.contains(&first_word(line))
}

/// Cursor over the significant lines of one file.
struct Reader {
    lines: Vec<Line>,
    pos: usize,
    /// Line count of the raw source, for errors at end of input.
    last_line: usize,
}

impl Reader {
    fn new(src: &str) -> Self {
        let last_line = src.lines().count().max(1);
        Reader { lines: significant_lines(src), pos: 0, last_line }
    }

    fn peek(&self) -> Option<&Line> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<Line> {
        let l = self.lines.get(self.pos).cloned();
        if l.is_some() {
            self.pos += 1;
        }
        l
    }

    fn eof_err(&self, msg: impl Into<String>) -> KernelError {
        err_at(self.last_line, 1, msg)
    }
}

/// Splits `text` at top-level commas, returning each piece with its byte
/// offset.  Commas never occur inside entry expressions, so no nesting
/// rules are needed.
fn split_entries(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        if ch == ',' {
            out.push((start, &text[start..i]));
            start = i + ch.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Re-anchors an error from an embedded expression to file coordinates.
/// Expression errors always report line 1, since entries are single-line.
fn relocate(e: KernelError, line: &Line, offset: usize) -> KernelError {
    let base = line.col_of(offset);
    match e {
        KernelError::Parse { line: _, col, msg } => {
            err_at(line.no, base + col.saturating_sub(1), msg)
        }
        other => other,
    }
}

fn parse_entry(desc: &GroupDescriptor, line: &Line, offset: usize, text: &str) -> Result<GroupRingElement> {
    let trimmed_start = text.len() - text.trim_start().len();
    GroupRingElement::parse(desc, text.trim())
        .map_err(|e| relocate(e, line, offset + trimmed_start))
}

/// Parses one comma-separated row of group-ring entries.
fn parse_row(desc: &GroupDescriptor, line: &Line) -> Result<Vec<GroupRingElement>> {
    split_entries(&line.text)
        .into_iter()
        .map(|(offset, text)| parse_entry(desc, line, offset, text))
        .collect()
}

/// Reads whitespace-separated unsigned integers after the keyword.
fn parse_counts(line: &Line, keyword: &str) -> Result<Vec<usize>> {
    let rest = line.text.trim_start().strip_prefix(keyword).unwrap_or("");
    let mut out = Vec::new();
    for tok in rest.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| {
            let offset = line.text.find(tok).unwrap_or(0);
            err_at(line.no, line.col_of(offset), format!("expected a count, got '{tok}'"))
        })?;
        out.push(v);
    }
    Ok(out)
}

fn parse_index(line: &Line, keyword: &str) -> Result<usize> {
    let rest = line.text.trim_start().strip_prefix(keyword).unwrap_or("").trim();
    rest.parse().map_err(|_| {
        err_at(
            line.no,
            line.col_of(line.text.len()),
            format!("'{keyword}' needs a single index, got '{rest}'"),
        )
    })
}

// ---------------------------------------------------------------------------
// Group headers
// ---------------------------------------------------------------------------

fn parse_group_header(r: &mut Reader) -> Result<GroupDescriptor> {
    let line = r
        .next()
        .ok_or_else(|| r.eof_err("expected a 'group' header"))?;
    if first_word(&line) != "group" {
        return Err(err_at(line.no, 1, "the first significant line must be a 'group' header"));
    }
    let toks: Vec<&str> = line.text.split_whitespace().collect();
    let kind = toks.get(1).copied().unwrap_or("");
    let mut scale: Option<i64> = None;
    let mut rest = &toks[2..];
    if rest.len() >= 2 && rest[rest.len() - 2] == "scale" {
        let s = rest[rest.len() - 1];
        scale = Some(s.parse().map_err(|_| {
            err_at(line.no, line.col_of(line.text.len()), format!("bad scale '{s}'"))
        })?);
        rest = &rest[..rest.len() - 2];
    }
    let desc = match kind {
        "free_abelian" | "degenerate" => {
            let [arg] = rest else {
                return Err(err_at(
                    line.no,
                    1,
                    format!("'group {kind}' needs one argument, the lattice rank"),
                ));
            };
            let m: usize = arg.parse().map_err(|_| {
                err_at(line.no, 1, format!("bad lattice rank '{arg}'"))
            })?;
            if kind == "degenerate" {
                if scale.is_some() {
                    return Err(err_at(line.no, 1, "a degenerate group has no scale"));
                }
                GroupDescriptor::degenerate(m)
            } else {
                GroupDescriptor::free_abelian(m)
            }
        }
        "monomial_extension" => {
            let joined = rest.join("");
            let matrix: Vec<Vec<i64>> = serde_json::from_str(&joined).map_err(|_| {
                err_at(
                    line.no,
                    1,
                    format!("bad twist matrix '{joined}'; expected e.g. [[2,1],[1,1]]"),
                )
            })?;
            let autom = MonomialAutomorphism::new(matrix)?;
            GroupDescriptor::monomial_extension(autom)
        }
        other => {
            return Err(err_at(
                line.no,
                1,
                format!("unknown group kind '{other}'; expected free_abelian, monomial_extension, or degenerate"),
            ));
        }
    };
    match scale {
        Some(l) => desc.with_scale(l),
        None => Ok(desc),
    }
}

/// Canonical header line for a descriptor.
pub fn render_group_header(desc: &GroupDescriptor) -> String {
    let scale = if desc.alpha_scale() > 1 {
        format!(" scale {}", desc.alpha_scale())
    } else {
        String::new()
    };
    if desc.is_degenerate() {
        format!("group degenerate {}", desc.nvars())
    } else if desc.autom().is_identity() {
        format!("group free_abelian {}{scale}", desc.nvars())
    } else {
        let matrix = serde_json::to_string(desc.autom().matrix()).expect("plain integers");
        format!("group monomial_extension {matrix}{scale}")
    }
}

// ---------------------------------------------------------------------------
// Matrix files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub desc: GroupDescriptor,
    pub matrix: SkewMatrix<GroupRingElement>,
}

/// Reads data rows until the next section header (or end of file) and
/// checks their shape against the expectation, when one is given.
fn read_rows(
    r: &mut Reader,
    desc: &GroupDescriptor,
    expect: Option<(usize, usize)>,
    what: &str,
) -> Result<Vec<Vec<GroupRingElement>>> {
    let mut rows: Vec<Vec<GroupRingElement>> = Vec::new();
    while let Some(line) = r.peek() {
        if is_section_header(line) {
            break;
        }
        let line = r.next().expect("peeked");
        let row = parse_row(desc, &line)?;
        if let Some((nrows, ncols)) = expect {
            if rows.len() == nrows {
                return Err(err_at(
                    line.no,
                    1,
                    format!("{what} has more than {nrows} rows"),
                ));
            }
            if row.len() != ncols {
                return Err(err_at(
                    line.no,
                    1,
                    format!("{what} rows need {ncols} entries, this one has {}", row.len()),
                ));
            }
        } else if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(err_at(
                    line.no,
                    1,
                    format!("ragged matrix: row has {} entries, previous rows {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if let Some((nrows, _)) = expect {
        if rows.len() != nrows {
            return Err(r.eof_err(format!("{what} ended after {} of {nrows} rows", rows.len())));
        }
    }
    Ok(rows)
}

fn matrix_from_rows(
    desc: &GroupDescriptor,
    rows: Vec<Vec<GroupRingElement>>,
    shape: (usize, usize),
) -> SkewMatrix<GroupRingElement> {
    let zero = GroupRingElement::zero(desc);
    let mut m = SkewMatrix::filled(shape.0, shape.1, zero);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, e) in row.into_iter().enumerate() {
            m.set(r, c, e);
        }
    }
    m
}

pub fn parse_matrix_file(src: &str) -> Result<MatrixFile> {
    let mut r = Reader::new(src);
    let desc = parse_group_header(&mut r)?;
    let line = r.next().ok_or_else(|| r.eof_err("expected a 'matrix' section"))?;
    if first_word(&line) != "matrix" {
        return Err(err_at(line.no, 1, "expected a 'matrix' section"));
    }
    let rows = read_rows(&mut r, &desc, None, "matrix")?;
    if let Some(extra) = r.peek() {
        return Err(err_at(extra.no, 1, format!("unexpected '{}' after the matrix", first_word(extra))));
    }
    let shape = (rows.len(), rows.first().map_or(0, Vec::len));
    Ok(MatrixFile { desc: desc.clone(), matrix: matrix_from_rows(&desc, rows, shape) })
}

fn render_ring_matrix(m: &SkewMatrix<GroupRingElement>) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| m.at(r, c).render()).collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

pub fn render_matrix_file(file: &MatrixFile) -> String {
    format!(
        "{}\nmatrix\n{}",
        render_group_header(&file.desc),
        render_ring_matrix(&file.matrix)
    )
}

// ---------------------------------------------------------------------------
// Complex files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ComplexFile {
    pub desc: GroupDescriptor,
    pub dims: Vec<usize>,
    /// Basis labels per degree; `None` keeps the generated ones.
    pub labels: Vec<Option<Vec<String>>>,
    /// `boundaries[k]` is the map out of degree `k + 1`.
    pub boundaries: Vec<SkewMatrix<GroupRingElement>>,
}

pub fn parse_complex_file(src: &str) -> Result<ComplexFile> {
    let mut r = Reader::new(src);
    let desc = parse_group_header(&mut r)?;
    let line = r.next().ok_or_else(|| r.eof_err("expected a 'dims' line"))?;
    if first_word(&line) != "dims" {
        return Err(err_at(line.no, 1, "expected a 'dims' line after the group header"));
    }
    let dims = parse_counts(&line, "dims")?;
    if dims.is_empty() {
        return Err(err_at(line.no, 1, "'dims' needs at least one degree"));
    }
    let n = dims.len() - 1;
    let zero = GroupRingElement::zero(&desc);
    let mut boundaries: Vec<SkewMatrix<GroupRingElement>> = (0..n)
        .map(|k| SkewMatrix::filled(dims[k], dims[k + 1], zero.clone()))
        .collect();
    let mut seen = vec![false; n];
    let mut labels: Vec<Option<Vec<String>>> = vec![None; dims.len()];
    while let Some(line) = r.next() {
        match first_word(&line) {
            "boundary" => {
                let i = parse_index(&line, "boundary")?;
                if i < 1 || i > n {
                    return Err(err_at(
                        line.no,
                        1,
                        format!("boundary index {i} out of range 1 ..= {n}"),
                    ));
                }
                if seen[i - 1] {
                    return Err(err_at(line.no, 1, format!("duplicate section 'boundary {i}'")));
                }
                seen[i - 1] = true;
                let shape = (dims[i - 1], dims[i]);
                if shape.0 == 0 || shape.1 == 0 {
                    read_rows(&mut r, &desc, Some((0, 0)), &format!("boundary {i}"))?;
                } else {
                    let rows = read_rows(&mut r, &desc, Some(shape), &format!("boundary {i}"))?;
                    boundaries[i - 1] = matrix_from_rows(&desc, rows, shape);
                }
            }
            "labels" => {
                let toks: Vec<&str> = line.text.split_whitespace().collect();
                let i: usize = toks
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err_at(line.no, 1, "'labels' needs a degree index"))?;
                if i >= dims.len() {
                    return Err(err_at(line.no, 1, format!("labels degree {i} out of range")));
                }
                let given: Vec<String> = toks[2..].iter().map(|s| s.to_string()).collect();
                if given.len() != dims[i] {
                    return Err(err_at(
                        line.no,
                        1,
                        format!("degree {i} has rank {}, got {} labels", dims[i], given.len()),
                    ));
                }
                labels[i] = Some(given);
            }
            other => {
                return Err(err_at(line.no, 1, format!("unexpected '{other}' in a complex file")));
            }
        }
    }
    Ok(ComplexFile { desc, dims, labels, boundaries })
}

fn matrix_is_zero(m: &SkewMatrix<GroupRingElement>) -> bool {
    (0..m.nrows()).all(|r| (0..m.ncols()).all(|c| m.at(r, c).is_zero()))
}

pub fn render_complex_file(file: &ComplexFile) -> String {
    let mut out = render_group_header(&file.desc);
    out.push('\n');
    out.push_str("dims");
    for d in &file.dims {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    for (i, l) in file.labels.iter().enumerate() {
        if let Some(l) = l {
            out.push_str(&format!("labels {i} {}\n", l.join(" ")));
        }
    }
    for (k, b) in file.boundaries.iter().enumerate() {
        if b.nrows() == 0 || b.ncols() == 0 || matrix_is_zero(b) {
            continue;
        }
        out.push_str(&format!("boundary {}\n", k + 1));
        out.push_str(&render_ring_matrix(b));
    }
    out
}

// ---------------------------------------------------------------------------
// Orbit files
// ---------------------------------------------------------------------------

/// Reads a holonomy expression: a single group monomial with coefficient 1.
fn parse_holonomy(desc: &GroupDescriptor, line: &Line, offset: usize, text: &str) -> Result<GroupElement> {
    let g = parse_entry(desc, line, offset, text)?;
    let mut terms: Vec<(i64, Vec<i64>, num_rational::BigRational)> = Vec::new();
    for (shift, poly) in g.slices() {
        for (e, c) in poly.terms() {
            terms.push((*shift, e.clone(), c.clone()));
        }
    }
    let col = line.col_of(offset + (text.len() - text.trim_start().len()));
    match terms.as_slice() {
        [(shift, e, c)] if c == &num_rational::BigRational::from_integer(1.into()) => {
            GroupElement::new(desc, e.clone(), *shift)
        }
        [] => Err(err_at(line.no, col, "holonomy must be a group monomial, got 0")),
        _ => Err(err_at(
            line.no,
            col,
            "holonomy must be a single group monomial with coefficient 1",
        )),
    }
}

pub fn parse_orbit_file(src: &str) -> Result<OrbitSet> {
    let mut r = Reader::new(src);
    let desc = parse_group_header(&mut r)?;
    let mut complete: Option<i64> = None;
    let mut entries: Vec<(ClosedOrbit, u64)> = Vec::new();
    while let Some(line) = r.next() {
        match first_word(&line) {
            "complete" => {
                let rest = line.text.trim_start().strip_prefix("complete").unwrap_or("").trim();
                let v: i64 = rest.parse().map_err(|_| {
                    err_at(line.no, 1, format!("bad completeness degree '{rest}'"))
                })?;
                complete = Some(v);
            }
            "orbits" => {
                while let Some(data) = r.peek() {
                    if is_section_header(data) {
                        break;
                    }
                    let data = r.next().expect("peeked");
                    let parts = split_entries(&data.text);
                    if parts.len() != 4 && parts.len() != 5 {
                        return Err(err_at(
                            data.no,
                            1,
                            "an orbit line is 'period, holonomy, i_plus, i_minus' with an optional multiplicity",
                        ));
                    }
                    let int_at = |idx: usize| -> Result<u64> {
                        let (offset, text) = parts[idx];
                        text.trim().parse().map_err(|_| {
                            err_at(
                                data.no,
                                data.col_of(offset + (text.len() - text.trim_start().len())),
                                format!("expected a nonnegative integer, got '{}'", text.trim()),
                            )
                        })
                    };
                    let period = int_at(0)?;
                    let holonomy = parse_holonomy(&desc, &data, parts[1].0, parts[1].1)?;
                    let i_plus = int_at(2)? as u32;
                    let i_minus = int_at(3)? as u32;
                    let mult = if parts.len() == 5 { int_at(4)? } else { 1 };
                    entries.push((ClosedOrbit::new(&desc, period, holonomy, i_plus, i_minus)?, mult));
                }
            }
            other => {
                return Err(err_at(line.no, 1, format!("unexpected '{other}' in an orbit file")));
            }
        }
    }
    OrbitSet::with_multiplicities(&desc, entries, complete.unwrap_or(i64::MAX))
}

fn render_group_element(desc: &GroupDescriptor, g: &GroupElement) -> String {
    GroupRingElement::from_group_element(desc, g, num_rational::BigRational::from_integer(1.into()))
        .render()
}

pub fn render_orbit_file(orbits: &OrbitSet) -> String {
    let desc = orbits.desc();
    let mut out = render_group_header(desc);
    out.push('\n');
    if orbits.complete_through() != i64::MAX {
        out.push_str(&format!("complete {}\n", orbits.complete_through()));
    }
    out.push_str("orbits\n");
    for (orbit, mult) in orbits.entries() {
        out.push_str(&format!(
            "{}, {}, {}, {}",
            orbit.period(),
            render_group_element(desc, orbit.holonomy()),
            orbit.i_plus(),
            orbit.i_minus()
        ));
        if *mult != 1 {
            out.push_str(&format!(", {mult}"));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

pub fn parse_model_file(src: &str) -> Result<CircleMorseModel> {
    let mut r = Reader::new(src);
    let desc = parse_group_header(&mut r)?;

    let line = r.next().ok_or_else(|| r.eof_err("expected a 'critical' line"))?;
    if first_word(&line) != "critical" {
        return Err(err_at(line.no, 1, "expected a 'critical' count line after the group header"));
    }
    let d = parse_counts(&line, "critical")?;
    let line = r.next().ok_or_else(|| r.eof_err("expected a 'level' line"))?;
    if first_word(&line) != "level" {
        return Err(err_at(line.no, 1, "expected a 'level' count line after 'critical'"));
    }
    let e = parse_counts(&line, "level")?;
    if d.is_empty() || d.len() != e.len() {
        return Err(err_at(
            line.no,
            1,
            format!("'critical' lists {} degrees, 'level' lists {}", d.len(), e.len()),
        ));
    }
    let big_l = d.len();

    let zero = GroupRingElement::zero(&desc);
    let blank = |rows: usize, cols: usize| SkewMatrix::filled(rows, cols, zero.clone());
    let mut n: Vec<_> = (0..big_l - 1).map(|j| blank(d[j], d[j + 1])).collect();
    let mut m: Vec<_> = (0..big_l - 1).map(|j| blank(e[j], d[j + 1])).collect();
    let mut w: Vec<_> = (0..big_l).map(|j| blank(d[j], e[j])).collect();
    let mut phi: Vec<_> = (0..big_l).map(|j| blank(e[j], e[j])).collect();
    let mut del_sigma: Vec<_> = (0..big_l - 1).map(|j| blank(e[j], e[j + 1])).collect();
    let mut seen: std::collections::BTreeSet<(char, usize)> = std::collections::BTreeSet::new();

    while let Some(line) = r.next() {
        let key = first_word(&line).to_string();
        let (tag, slot, shape, store): (char, usize, (usize, usize), &mut Vec<SkewMatrix<GroupRingElement>>) =
            match key.as_str() {
                "N" => {
                    let i = parse_index(&line, "N")?;
                    if i < 1 || i >= big_l {
                        return Err(err_at(line.no, 1, format!("N index {i} out of range 1 ..= {}", big_l - 1)));
                    }
                    ('N', i, (d[i - 1], d[i]), &mut n)
                }
                "M" => {
                    let i = parse_index(&line, "M")?;
                    if i < 1 || i >= big_l {
                        return Err(err_at(line.no, 1, format!("M index {i} out of range 1 ..= {}", big_l - 1)));
                    }
                    ('M', i, (e[i - 1], d[i]), &mut m)
                }
                "W" => {
                    let i = parse_index(&line, "W")?;
                    if i < 1 || i > big_l {
                        return Err(err_at(line.no, 1, format!("W index {i} out of range 1 ..= {big_l}")));
                    }
                    ('W', i, (d[i - 1], e[i - 1]), &mut w)
                }
                "phi" => {
                    let j = parse_index(&line, "phi")?;
                    if j >= big_l {
                        return Err(err_at(line.no, 1, format!("phi index {j} out of range 0 ..= {}", big_l - 1)));
                    }
                    ('p', j + 1, (e[j], e[j]), &mut phi)
                }
                "dSigma" => {
                    let i = parse_index(&line, "dSigma")?;
                    if i < 1 || i >= big_l {
                        return Err(err_at(line.no, 1, format!("dSigma index {i} out of range 1 ..= {}", big_l - 1)));
                    }
                    ('S', i, (e[i - 1], e[i]), &mut del_sigma)
                }
                other => {
                    return Err(err_at(line.no, 1, format!("unexpected '{other}' in a model file")));
                }
            };
        if !seen.insert((tag, slot)) {
            return Err(err_at(line.no, 1, format!("duplicate section '{}'", line.text.trim())));
        }
        let what = line.text.trim().to_string();
        if shape.0 == 0 || shape.1 == 0 {
            read_rows(&mut r, &desc, Some((0, 0)), &what)?;
        } else {
            let rows = read_rows(&mut r, &desc, Some(shape), &what)?;
            store[slot - 1] = matrix_from_rows(&desc, rows, shape);
        }
    }
    CircleMorseModel::new(desc, d, e, n, m, w, phi, del_sigma)
}

pub fn render_model_file(model: &CircleMorseModel) -> String {
    let mut out = render_group_header(model.desc());
    out.push('\n');
    out.push_str("critical");
    for v in model.critical_counts() {
        out.push_str(&format!(" {v}"));
    }
    out.push_str("\nlevel");
    for v in model.fiber_counts() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    let mut section = |name: String, mat: &SkewMatrix<GroupRingElement>| {
        if mat.nrows() == 0 || mat.ncols() == 0 || matrix_is_zero(mat) {
            return;
        }
        out.push_str(&name);
        out.push('\n');
        out.push_str(&render_ring_matrix(mat));
    };
    for (j, mat) in model.incidence_n().iter().enumerate() {
        section(format!("N {}", j + 1), mat);
    }
    for (j, mat) in model.incidence_m().iter().enumerate() {
        section(format!("M {}", j + 1), mat);
    }
    for (j, mat) in model.incidence_w().iter().enumerate() {
        section(format!("W {}", j + 1), mat);
    }
    for (j, mat) in model.phis().iter().enumerate() {
        section(format!("phi {j}"), mat);
    }
    for (j, mat) in model.level_boundary().iter().enumerate() {
        section(format!("dSigma {}", j + 1), mat);
    }
    out
}
