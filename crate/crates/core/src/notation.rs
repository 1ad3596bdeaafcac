//! Text forms of decorated diagrams.
//!
//! A spec is `<type>(x<type>)*:<decoration>`, e.g. `B4:oxoo` or
//! `A2xA1:xox`, with one `x`/`o` per node in Bourbaki order, component by
//! component. Low-rank aliases (`B1`, `C1`, `D3`) are accepted and
//! normalized, so rendering a parsed spec may change its spelling.
//!
//! The diagram rendering lists a main chain of nodes followed by the nodes
//! hanging off it:
//!
//! ```text
//! node    := mark number          mark is x (crossed) or o
//! bond    := "-" | "=>" | "<=" | ">>>" | "<<<"
//! chain   := node (bond node)*
//! branch  := " [" node "@" number "]"   single bond to the given chain node
//! diagram := chain branch* (" | " chain branch*)*
//! ```
//!
//! Multiple bonds point from the long root to the short root.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grading::Decoration;
use crate::rootsys::{Component, DiagramType, Family};

/// Which node numbering a spec's decoration uses for exceptional types.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Numbering {
    #[default]
    Bourbaki,
    /// Carter's tables; differs from Bourbaki only for `E6`, `E7`, `E8`.
    Carter,
}

impl Numbering {
    /// Bourbaki node (0-based) of each Carter node, or `None` when the two
    /// numberings agree.
    pub fn carter_to_bourbaki(c: Component) -> Option<&'static [usize]> {
        match (c.family, c.rank) {
            (Family::E, 6) => Some(&[0, 2, 3, 1, 4, 5]),
            (Family::E, 7) => Some(&[6, 5, 4, 3, 1, 2, 0]),
            (Family::E, 8) => Some(&[7, 6, 5, 4, 3, 1, 2, 0]),
            _ => None,
        }
    }
}

impl FromStr for Numbering {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Numbering, String> {
        match s {
            "bourbaki" => Ok(Numbering::Bourbaki),
            "carter" => Ok(Numbering::Carter),
            _ => Err(format!("unknown numbering {s:?}, expected bourbaki or carter")),
        }
    }
}

/// A parsed spec in Bourbaki numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub dtype: DiagramType,
    pub dec: Decoration,
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dtype, self.dec)
    }
}

impl FromStr for DiagramSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<DiagramSpec> {
        parse_spec(s)
    }
}

pub fn parse_spec(s: &str) -> Result<DiagramSpec> {
    parse_spec_with(s, Numbering::Bourbaki)
}

pub fn render_spec(dtype: &DiagramType, dec: &Decoration) -> String {
    format!("{dtype}:{dec}")
}

/// Parses a spec whose decoration follows `numbering`; the result is always
/// in Bourbaki numbering.
pub fn parse_spec_with(s: &str, numbering: Numbering) -> Result<DiagramSpec> {
    let chars: Vec<char> = s.chars().collect();
    // columns are 1-based
    let fail = |pos: usize, message: String| Error::Parse {
        input: s.to_string(),
        column: pos + 1,
        message,
    };
    let mut parts: Vec<(Family, usize)> = Vec::new();
    let mut pos = 0;
    loop {
        let family = chars
            .get(pos)
            .and_then(|&c| Family::from_letter(c))
            .ok_or_else(|| fail(pos, "expected a family letter A-G".into()))?;
        pos += 1;
        let start = pos;
        while chars.get(pos).is_some_and(char::is_ascii_digit) {
            pos += 1;
        }
        let rank: usize = chars[start..pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| fail(start, "expected a rank".into()))?;
        Component::normalize(family, rank).map_err(|e| fail(start, e.to_string()))?;
        parts.push((family, rank));
        match chars.get(pos) {
            Some('x') => pos += 1,
            Some(':') => {
                pos += 1;
                break;
            }
            _ => return Err(fail(pos, "expected 'x' and another type, or ':'".into())),
        }
    }

    let total: usize = parts.iter().map(|p| p.1).sum();
    let dec_start = pos;
    let raw: Decoration = chars[dec_start..]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|(i, c): (usize, char)| {
            fail(
                dec_start + i,
                format!("invalid decoration character {c:?}, expected x or o"),
            )
        })?;
    if raw.len() != total {
        return Err(fail(
            dec_start + raw.len().min(total),
            format!("decoration has length {}, expected {total}", raw.len()),
        ));
    }

    let norm = DiagramType::normalize(&parts)?;
    let mut marks = raw.as_slice().to_vec();
    if numbering == Numbering::Carter {
        let mut off = 0;
        for c in norm.dtype.components() {
            if let Some(map) = Numbering::carter_to_bourbaki(*c) {
                let seg: Vec<bool> = marks[off..off + c.rank].to_vec();
                for (carter, &b) in map.iter().enumerate() {
                    marks[off + b] = seg[carter];
                }
            }
            off += c.rank;
        }
    }
    Ok(DiagramSpec {
        dec: Decoration::new(marks).relabel(&norm.node_map),
        dtype: norm.dtype,
    })
}

/// 1-based main chain and `(node, attached-to)` branches of a component.
fn layout(c: Component) -> (Vec<usize>, Vec<(usize, usize)>) {
    let r = c.rank;
    match c.family {
        Family::D => ((1..r).collect(), vec![(r, r - 2)]),
        Family::E => (std::iter::once(1).chain(3..=r).collect(), vec![(2, 4)]),
        _ => ((1..=r).collect(), Vec::new()),
    }
}

fn bond(cartan: &[Vec<i32>], i: usize, j: usize) -> &'static str {
    match (cartan[i - 1][j - 1], cartan[j - 1][i - 1]) {
        (-2, -1) => "=>",
        (-1, -2) => "<=",
        (-3, -1) => ">>>",
        (-1, -3) => "<<<",
        _ => "-",
    }
}

/// Linear ASCII rendering; see the module docs for the grammar.
pub fn render_diagram(dtype: &DiagramType, dec: &Decoration) -> String {
    let mut out = Vec::new();
    for (c, off) in dtype.components().iter().zip(dtype.offsets()) {
        let cartan = c.cartan();
        let mark = |n: usize| if dec.is_crossed(off + n - 1) { 'x' } else { 'o' };
        let (chain, branches) = layout(*c);
        let mut s = format!("{}{}", mark(chain[0]), chain[0]);
        for w in chain.windows(2) {
            s.push_str(bond(&cartan, w[0], w[1]));
            s.push_str(&format!("{}{}", mark(w[1]), w[1]));
        }
        for (n, at) in branches {
            s.push_str(&format!(" [{}{}@{}]", mark(n), n, at));
        }
        out.push(s);
    }
    out.join(" | ")
}
