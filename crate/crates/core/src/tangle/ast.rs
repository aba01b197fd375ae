use crate::error::Error;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One boundary point: a label, the direction of the strand through it and
/// its color. A downward strand labeled V stands for the object V*.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub label: String,
    pub orientation: Orientation,
    pub color: Color,
}

impl Strand {
    pub fn up(label: &str) -> Self {
        Strand { label: label.into(), orientation: Orientation::Up, color: Color::Blue }
    }

    pub fn down(label: &str) -> Self {
        Strand { label: label.into(), orientation: Orientation::Down, color: Color::Blue }
    }

    pub fn red(mut self) -> Self {
        self.color = Color::Red;
        self
    }

    pub fn is_red(&self) -> bool {
        self.color == Color::Red
    }

    /// Name of the object at this point, in the naming scheme of the module
    /// registry.
    pub fn object_name(&self) -> String {
        match self.orientation {
            Orientation::Up => self.label.clone(),
            Orientation::Down => format!("{}*", self.label),
        }
    }

    pub fn sign(&self) -> i64 {
        match self.orientation {
            Orientation::Up => 1,
            Orientation::Down => -1,
        }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_red() {
            write!(f, "red:")?;
        }
        let o = match self.orientation {
            Orientation::Up => '^',
            Orientation::Down => 'v',
        };
        write!(f, "{}{}", self.label, o)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Id,
    Cross(Sign),
    /// `ev` on (Vv, V^) when `prime` is false, `ev'` on (V^, Vv) otherwise.
    Ev { prime: bool },
    /// `coev(V)` creates (V^, Vv), `coev'(V)` creates (Vv, V^).
    Coev { prime: bool, label: String, color: Color },
    Twist(Sign),
    Coupon(String),
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Id => write!(f, "id"),
            Piece::Cross(Sign::Plus) => write!(f, "x+"),
            Piece::Cross(Sign::Minus) => write!(f, "x-"),
            Piece::Ev { prime } => write!(f, "ev{}", if *prime { "'" } else { "" }),
            Piece::Coev { prime, label, color } => {
                let red = if *color == Color::Red { "red:" } else { "" };
                write!(f, "coev{}({red}{label})", if *prime { "'" } else { "" })
            }
            Piece::Twist(Sign::Plus) => write!(f, "tw+"),
            Piece::Twist(Sign::Minus) => write!(f, "tw-"),
            Piece::Coupon(name) => write!(f, "coupon({name})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub pieces: Vec<Piece>,
    /// Source line and the column of each piece, for diagnostics.
    pub line: usize,
    pub cols: Vec<usize>,
}

impl Slice {
    pub fn new(pieces: Vec<Piece>) -> Self {
        let cols = vec![0; pieces.len()];
        Slice { pieces, line: 0, cols }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleAst {
    pub bottom: Vec<Strand>,
    pub slices: Vec<Slice>,
    pub top: Option<Vec<Strand>>,
    /// Number of leading (down, up) red pairs at the bottom.
    pub red_pairs: usize,
}

impl TangleAst {
    pub fn new(bottom: Vec<Strand>, slices: Vec<Vec<Piece>>, top: Option<Vec<Strand>>) -> Self {
        let red_pairs = leading_red(&bottom) / 2;
        TangleAst { bottom, slices: slices.into_iter().map(Slice::new).collect(), top, red_pairs }
    }

    /// Every red strand relabeled by the regular representation `H`.
    pub fn relabel_red(&self) -> TangleAst {
        let fix = |s: &Strand| if s.is_red() { Strand { label: "H".into(), ..s.clone() } } else { s.clone() };
        let mut out = self.clone();
        out.bottom = self.bottom.iter().map(fix).collect();
        out.top = self.top.as_ref().map(|t| t.iter().map(fix).collect());
        for s in &mut out.slices {
            for p in &mut s.pieces {
                if let Piece::Coev { label, color: Color::Red, .. } = p {
                    *label = "H".into();
                }
            }
        }
        out
    }

    pub fn has_red(&self) -> bool {
        self.bottom.iter().any(Strand::is_red)
            || self.slices.iter().flat_map(|s| &s.pieces).any(|p| matches!(p, Piece::Coev { color: Color::Red, .. }))
    }
}

fn leading_red(bottom: &[Strand]) -> usize {
    bottom.iter().take_while(|s| s.is_red()).count()
}

impl fmt::Display for TangleAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bottom")?;
        for s in &self.bottom {
            write!(f, " {s}")?;
        }
        writeln!(f)?;
        for s in &self.slices {
            let parts: Vec<String> = s.pieces.iter().map(|p| p.to_string()).collect();
            writeln!(f, "slice {}", parts.join(", "))?;
        }
        if let Some(top) = &self.top {
            write!(f, "top")?;
            for s in top {
                write!(f, " {s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Lines of a surgery file that are not part of the tangle grammar.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SurgeryLines {
    pub framings: Vec<(usize, i64, usize)>,
    pub linking: Option<(Vec<Vec<i64>>, usize)>,
    pub cut: Option<(usize, usize, usize)>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '*'
}

fn parse_label(tok: &str, line: usize, col: usize) -> Result<(String, Color), Error> {
    let (color, rest) = match tok.strip_prefix("red:") {
        Some(r) => (Color::Red, r),
        None => (Color::Blue, tok),
    };
    if rest.is_empty() || !rest.chars().all(is_label_char) {
        return Err(err(line, col, format!("bad label `{tok}`")));
    }
    Ok((rest.to_string(), color))
}

fn parse_strand(tok: &str, line: usize, col: usize) -> Result<Strand, Error> {
    let (body, orientation) = if let Some(b) = tok.strip_suffix('^') {
        (b, Orientation::Up)
    } else if let Some(b) = tok.strip_suffix('v').filter(|b| !b.is_empty() && !b.ends_with(':')) {
        (b, Orientation::Down)
    } else {
        (tok, Orientation::Up)
    };
    let (label, color) = parse_label(body, line, col)?;
    Ok(Strand { label, orientation, color })
}

fn parse_piece(tok: &str, line: usize, col: usize) -> Result<Piece, Error> {
    let p = match tok {
        "id" => Piece::Id,
        "x+" => Piece::Cross(Sign::Plus),
        "x-" | "x−" => Piece::Cross(Sign::Minus),
        "ev" => Piece::Ev { prime: false },
        "ev'" => Piece::Ev { prime: true },
        "tw+" => Piece::Twist(Sign::Plus),
        "tw-" | "tw−" => Piece::Twist(Sign::Minus),
        _ => {
            let (head, arg) = match (tok.find('('), tok.strip_suffix(')')) {
                (Some(i), Some(inner)) => (&tok[..i], &inner[i + 1..]),
                _ => return Err(err(line, col, format!("unknown piece `{tok}`"))),
            };
            let arg = arg.trim();
            match head {
                "coev" | "coev'" => {
                    let (label, color) = parse_label(arg, line, col + head.len() + 1)?;
                    Piece::Coev { prime: head == "coev'", label, color }
                }
                "coupon" => {
                    if arg.is_empty() || !arg.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(err(line, col + 7, format!("bad coupon name `{arg}`")));
                    }
                    Piece::Coupon(arg.to_string())
                }
                _ => return Err(err(line, col, format!("unknown piece `{tok}`"))),
            }
        }
    };
    Ok(p)
}

/// Splits on whitespace, keeping 1-based columns.
fn words(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter().map(|(s, w)| (text[..s].chars().count() + 1, w)).collect()
}

pub(crate) fn parse_program(text: &str, surgery: bool) -> Result<(TangleAst, SurgeryLines), Error> {
    let mut bottom: Option<Vec<Strand>> = None;
    let mut slices = Vec::new();
    let mut top: Option<Vec<Strand>> = None;
    let mut extra = SurgeryLines::default();
    let mut linking_rows: Option<(Vec<Vec<i64>>, usize)> = None;
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let ws = words(content);
        let Some(&(col, kw)) = ws.first() else { continue };
        if let Some((rows, _)) = linking_rows.as_mut() {
            if kw == "end" {
                extra.linking = linking_rows.take();
                continue;
            }
            let row = ws
                .iter()
                .map(|&(c, w)| w.parse::<i64>().map_err(|_| err(line, c, format!("expected an integer, found `{w}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
            continue;
        }
        let need_bottom = |what: &str| -> Result<(), Error> {
            if bottom.is_none() {
                return Err(err(line, col, format!("`{what}` before `bottom`")));
            }
            Ok(())
        };
        match kw {
            "bottom" => {
                if bottom.is_some() {
                    return Err(err(line, col, "duplicate `bottom`"));
                }
                bottom = Some(ws[1..].iter().map(|&(c, w)| parse_strand(w, line, c)).collect::<Result<_, _>>()?);
            }
            "slice" => {
                need_bottom("slice")?;
                if top.is_some() {
                    return Err(err(line, col, "`slice` after `top`"));
                }
                let body_start = col + 5;
                let body: String = content.chars().skip(body_start - 1).collect();
                let mut pieces = Vec::new();
                let mut cols = Vec::new();
                let mut offset = body_start;
                for part in body.split(',') {
                    let lead = part.chars().take_while(|c| c.is_whitespace()).count();
                    let tok = part.trim();
                    if tok.is_empty() {
                        return Err(err(line, offset + lead, "empty piece"));
                    }
                    pieces.push(parse_piece(tok, line, offset + lead)?);
                    cols.push(offset + lead);
                    offset += part.chars().count() + 1;
                }
                slices.push(Slice { pieces, line, cols });
            }
            "top" => {
                need_bottom("top")?;
                if top.is_some() {
                    return Err(err(line, col, "duplicate `top`"));
                }
                top = Some(ws[1..].iter().map(|&(c, w)| parse_strand(w, line, c)).collect::<Result<_, _>>()?);
            }
            "framing" if surgery => {
                if ws.len() != 3 {
                    return Err(err(line, col, "expected `framing <component> <integer>`"));
                }
                let c = ws[1].1.parse::<usize>().ok().filter(|&c| c >= 1).ok_or_else(|| err(line, ws[1].0, "component index must be a positive integer"))?;
                let f = ws[2].1.parse::<i64>().map_err(|_| err(line, ws[2].0, "framing must be an integer"))?;
                extra.framings.push((c, f, line));
            }
            "linking" if surgery => {
                if ws.len() != 1 {
                    return Err(err(line, ws[1].0, "`linking` takes no arguments"));
                }
                if extra.linking.is_some() {
                    return Err(err(line, col, "duplicate `linking` block"));
                }
                linking_rows = Some((Vec::new(), line));
            }
            "cut" if surgery => {
                if ws.len() != 3 {
                    return Err(err(line, col, "expected `cut <level> <position>`"));
                }
                let level = ws[1].1.parse::<usize>().map_err(|_| err(line, ws[1].0, "level must be a non-negative integer"))?;
                let pos = ws[2].1.parse::<usize>().map_err(|_| err(line, ws[2].0, "position must be a non-negative integer"))?;
                if extra.cut.is_some() {
                    return Err(err(line, col, "duplicate `cut`"));
                }
                extra.cut = Some((level, pos, line));
            }
            _ => return Err(err(line, col, format!("unexpected `{kw}`"))),
        }
    }
    if linking_rows.is_some() {
        return Err(err(last_line + 1, 1, "unterminated `linking` block"));
    }
    let bottom = bottom.ok_or_else(|| err(last_line.max(1), 1, "missing `bottom` line"))?;
    let red_pairs = leading_red(&bottom) / 2;
    Ok((TangleAst { bottom, slices, top, red_pairs }, extra))
}

/// Parses the slice language:
///
/// ```text
/// bottom red:Hv red:H^ P1^
/// slice id, tw-, id
/// slice ev, coupon(h)
/// top P1^
/// ```
///
/// Text after `#` is a comment. Parsing does not type-check; see
/// [`super::check`].
pub fn parse_tangle(text: &str) -> Result<TangleAst, Error> {
    parse_program(text, false).map(|(ast, _)| ast)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strands_and_pieces() {
        let ast = parse_tangle("bottom red:Hv red:H^ P1\nslice ev, coupon(h)\ntop P1^\n").unwrap();
        assert_eq!(ast.bottom[0], Strand::down("H").red());
        assert_eq!(ast.bottom[2], Strand::up("P1"));
        assert_eq!(ast.red_pairs, 1);
        assert_eq!(ast.slices[0].pieces, vec![Piece::Ev { prime: false }, Piece::Coupon("h".into())]);
        assert_eq!(ast.slices[0].cols, vec![7, 11]);
    }

    #[test]
    fn display_round_trip() {
        let text = "bottom P1^ P1v\nslice x-, tw+\nslice coev'(red:X), id, id\ntop Xv X^ P1v P1^\n";
        let ast = parse_tangle(text).unwrap();
        assert_eq!(ast.to_string(), text.replace("Xv X^", "red:Xv red:X^").replace("top red:Xv red:X^", "top Xv X^"));
        assert_eq!(parse_tangle(&ast.to_string()).unwrap().slices, ast.slices);
    }

    #[test]
    fn error_positions() {
        match parse_tangle("bottom P1^\nslice id, x*\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 11)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_tangle("slice id\n"), Err(Error::Parse { line: 1, col: 1, .. })));
        assert!(matches!(parse_tangle("bottom\nframing 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_tangle("bottom\nslice id,,id\n"), Err(Error::Parse { line: 2, col: 10, .. })));
    }
}
