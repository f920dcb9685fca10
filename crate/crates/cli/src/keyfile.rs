//! Text key files:
//!
//! ```text
//! r=1.99
//! x0=0.41
//! cells=+-+-+-+-
//! ```
//!
//! Blank lines are ignored; any other line is an error.

use cnnc_core::{Cells, SecretKey};

use crate::error::FormatError;

pub fn render(key: &SecretKey) -> String {
    format!("r={}\nx0={}\ncells={}\n", key.r(), key.x0(), key.cells())
}

pub fn parse(text: &str) -> Result<SecretKey, FormatError> {
    let mut r = None;
    let mut x0 = None;
    let mut cells = None;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| FormatError::KeyFile {
            line: line_no,
            message,
        };
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected name=value, got {line:?}")))?;
        let (name, value) = (name.trim(), value.trim());
        match name {
            "r" => set_once(&mut r, parse_real(value).map_err(err)?, "r").map_err(err)?,
            "x0" => set_once(&mut x0, parse_real(value).map_err(err)?, "x0").map_err(err)?,
            "cells" => {
                let c: Cells = value
                    .parse()
                    .map_err(|e: cnnc_core::Error| err(e.to_string()))?;
                set_once(&mut cells, c, "cells").map_err(err)?
            }
            other => return Err(err(format!("unknown field {other:?}"))),
        }
    }

    let missing = |field: &str| FormatError::KeyFile {
        line: 0,
        message: format!("missing field {field:?}"),
    };
    let key = SecretKey::new(
        r.ok_or_else(|| missing("r"))?,
        x0.ok_or_else(|| missing("x0"))?,
        cells.ok_or_else(|| missing("cells"))?,
    )?;
    Ok(key)
}

fn parse_real(value: &str) -> Result<f64, String> {
    value.parse::<f64>().map_err(|e| format!("{value:?}: {e}"))
}

fn set_once<T>(slot: &mut Option<T>, value: T, name: &str) -> Result<(), String> {
    if slot.replace(value).is_some() {
        return Err(format!("field {name:?} given twice"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_the_three_lines() {
        let key = SecretKey::new(1.99, 0.41, "+-+-+-+-".parse().unwrap()).unwrap();
        assert_eq!(render(&key), "r=1.99\nx0=0.41\ncells=+-+-+-+-\n");
    }

    #[test]
    fn parses_rendered_keys_exactly() {
        let key = SecretKey::new(1.9123456789012345, 1e-7, Cells::from_byte(0x3c)).unwrap();
        assert_eq!(parse(&render(&key)).unwrap(), key);
    }

    #[test]
    fn tolerates_blank_lines_and_spaces() {
        let key = parse("\n r = 1.95 \n\nx0=0.5\ncells=--------\n").unwrap();
        assert_eq!(key.r(), 1.95);
        assert_eq!(key.cells(), Cells::from_byte(0));
    }

    #[test]
    fn rejects_bad_files() {
        for text in [
            "r=1.99\nx0=0.41\n",
            "r=1.99\nx0=0.41\ncells=+-+-+-+-\nmode=fast\n",
            "r=1.99\nr=1.98\nx0=0.41\ncells=+-+-+-+-\n",
            "r=2.5\nx0=0.41\ncells=+-+-+-+-\n",
            "r=1.99\nx0=1.0\ncells=+-+-+-+-\n",
            "r=abc\nx0=0.41\ncells=+-+-+-+-\n",
            "r=1.99\nx0=0.41\ncells=+-+-\n",
            "garbage\n",
        ] {
            assert!(parse(text).is_err(), "{text:?}");
        }
    }
}
