//! Two-colorings of `[1,N]` and the `rado-coloring v1` text format.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_HEADER: &str = "# rado-coloring v1";

/// Red is the first color (solutions of `e0` must avoid it), Blue the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red = 0,
    Blue = 1,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "Red",
            Color::Blue => "Blue",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringFormatError {
    #[error("missing or malformed header line (expected {FORMAT_HEADER:?})")]
    BadHeader,
    #[error("malformed size line: {0:?}")]
    BadSize(String),
    #[error("declared N = {declared} but the color line has {actual} characters")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("invalid color character {ch:?} at position {position}")]
    BadColor { position: usize, ch: char },
    #[error("unexpected trailing content or missing final newline")]
    Trailing,
}

/// A total coloring of `[1, len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn from_colors(colors: Vec<Color>) -> Self {
        Coloring { colors }
    }

    pub fn uniform(n: u32, color: Color) -> Self {
        Coloring {
            colors: vec![color; n as usize],
        }
    }

    /// Colors `[1,n]` with `Red` exactly where `is_red` holds.
    pub fn from_red_predicate(n: u32, is_red: impl Fn(u32) -> bool) -> Self {
        let colors = (1..=n)
            .map(|i| if is_red(i) { Color::Red } else { Color::Blue })
            .collect();
        Coloring { colors }
    }

    pub fn len(&self) -> u32 {
        self.colors.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color of position `i`, 1-based.
    pub fn get(&self, i: u32) -> Color {
        self.colors[(i - 1) as usize]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn flipped(&self) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|c| c.flip()).collect(),
        }
    }

    /// Restriction to `[1, m]`.
    pub fn restrict(&self, m: u32) -> Coloring {
        Coloring {
            colors: self.colors[..m as usize].to_vec(),
        }
    }

    pub fn positions_of(&self, color: Color) -> impl Iterator<Item = u32> + '_ {
        (1..=self.len()).filter(move |&i| self.get(i) == color)
    }

    pub fn to_color_string(&self) -> String {
        self.colors.iter().map(|c| c.as_char()).collect()
    }

    pub fn write(&self) -> Vec<u8> {
        format!(
            "{FORMAT_HEADER}\nN {}\n{}\n",
            self.len(),
            self.to_color_string()
        )
        .into_bytes()
    }

    pub fn read(bytes: &[u8]) -> Result<Coloring, ColoringFormatError> {
        let text = std::str::from_utf8(bytes).map_err(|_| ColoringFormatError::BadHeader)?;
        let mut lines = text.split('\n');
        if lines.next() != Some(FORMAT_HEADER) {
            return Err(ColoringFormatError::BadHeader);
        }
        let size_line = lines
            .next()
            .ok_or(ColoringFormatError::BadSize(String::new()))?;
        let declared = size_line
            .strip_prefix("N ")
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| ColoringFormatError::BadSize(size_line.to_string()))?;
        let body = lines.next().ok_or(ColoringFormatError::LengthMismatch {
            declared,
            actual: 0,
        })?;
        // A well-formed file ends with exactly one linefeed after the color line.
        let trailer: Vec<&str> = lines.collect();
        if trailer != [""] {
            return Err(ColoringFormatError::Trailing);
        }
        let colors = body
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'R' => Ok(Color::Red),
                'B' => Ok(Color::Blue),
                _ => Err(ColoringFormatError::BadColor {
                    position: i + 1,
                    ch,
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if colors.len() != declared {
            return Err(ColoringFormatError::LengthMismatch {
                declared,
                actual: colors.len(),
            });
        }
        Ok(Coloring { colors })
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_color_string())
    }
}

/// A coloring of `[1, len]` where positions may still be unset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    slots: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn new(n: u32) -> Self {
        PartialColoring {
            slots: vec![None; n as usize],
        }
    }

    pub fn len(&self) -> u32 {
        self.slots.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, i: u32) -> Option<Color> {
        self.slots[(i - 1) as usize]
    }

    pub fn set(&mut self, i: u32, color: Color) {
        self.slots[(i - 1) as usize] = Some(color);
    }

    pub fn unset(&mut self, i: u32) {
        self.slots[(i - 1) as usize] = None;
    }

    /// Grows the domain to `[1, n]`, new positions unset.
    pub fn extend_to(&mut self, n: u32) {
        if n > self.len() {
            self.slots.resize(n as usize, None);
        }
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn to_coloring(&self) -> Option<Coloring> {
        let colors = self.slots.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(Coloring { colors })
    }

    pub fn positions_of(&self, color: Color) -> Vec<u32> {
        (1..=self.len())
            .filter(|&i| self.get(i) == Some(color))
            .collect()
    }
}

impl From<&Coloring> for PartialColoring {
    fn from(c: &Coloring) -> Self {
        PartialColoring {
            slots: c.colors.iter().map(|&c| Some(c)).collect(),
        }
    }
}
