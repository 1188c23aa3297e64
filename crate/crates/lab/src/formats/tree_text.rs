//! Line-based text format for discrete trees.
//!
//! ```text
//! crt-tree 1
//! # vertex parent edge_length mass source_time
//! 0 - 0 0.25 0
//! 1 0 0.5 0.75 0.5
//! ```
//!
//! The first line names the format and version. Lines starting with `#`
//! are comments. Each vertex gets one line, in vertex order; the root's
//! parent is `-`. Numbers are written in shortest round-trip form, so a
//! tree survives a write/read cycle bit for bit.

use std::io::{BufRead, Write};

use crt_core::discretetree::DiscreteTree;

use crate::error::{LabError, Result};

pub const MAGIC: &str = "crt-tree";
pub const VERSION: u32 = 1;

pub fn write_tree<W: Write>(tree: &DiscreteTree, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{MAGIC} {VERSION}")?;
    writeln!(w, "# vertex parent edge_length mass source_time")?;
    for v in 0..tree.len() {
        let parent = tree.parent(v).map_or("-".to_string(), |p| p.to_string());
        writeln!(
            w,
            "{v} {parent} {} {} {}",
            tree.edge_length(v),
            tree.mass(v),
            tree.source_times()[v]
        )?;
    }
    Ok(())
}

/// Reads a tree; `origin` names the source in error messages.
pub fn read_tree<R: BufRead>(r: R, origin: &str) -> Result<DiscreteTree> {
    let bad = |line: usize, message: String| LabError::Format {
        path: origin.into(),
        line,
        message,
    };
    let mut lines = r.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => l.map_err(|e| LabError::io(origin, e))?,
        None => return Err(bad(1, "empty input".into())),
    };
    let mut parts = header.split_whitespace();
    if parts.next() != Some(MAGIC) {
        return Err(bad(1, format!("expected `{MAGIC} {VERSION}`")));
    }
    match parts.next().and_then(|v| v.parse::<u32>().ok()) {
        Some(VERSION) => {}
        other => return Err(bad(1, format!("unsupported version {other:?}"))),
    }
    let (mut parent, mut length, mut mass, mut time) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, line) in lines {
        let line = line.map_err(|e| LabError::io(origin, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 {
            return Err(bad(i + 1, format!("expected 5 fields, found {}", f.len())));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| bad(i + 1, format!("bad number `{s}`")))
        };
        if f[0].parse::<usize>().ok() != Some(parent.len()) {
            return Err(bad(i + 1, format!("expected vertex {}", parent.len())));
        }
        parent.push(match f[1] {
            "-" => None,
            p => Some(
                p.parse::<usize>()
                    .map_err(|_| bad(i + 1, format!("bad parent `{p}`")))?,
            ),
        });
        length.push(num(f[2])?);
        mass.push(num(f[3])?);
        time.push(num(f[4])?);
    }
    Ok(DiscreteTree::new(parent, length, mass, time)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crt_core::discretetree::extract_tree;
    use crt_core::excursion::sample_excursion;
    use crt_core::realtree::RealTreeIndex;
    use crt_core::RngStream;

    #[test]
    fn round_trip_is_exact() {
        let mut rng = RngStream::new(4, 0);
        let idx = RealTreeIndex::build(sample_excursion(512, &mut rng).unwrap());
        let marks = crt_core::discretetree::uniform_marks(20, &mut rng);
        let tree = extract_tree(&idx, &marks).unwrap().tree;
        let mut buf = Vec::new();
        write_tree(&tree, &mut buf).unwrap();
        let back = read_tree(buf.as_slice(), "mem").unwrap();
        assert_eq!(back.parents(), tree.parents());
        assert_eq!(back.edge_lengths(), tree.edge_lengths());
        assert_eq!(back.masses(), tree.masses());
        assert_eq!(back.source_times(), tree.source_times());
    }

    #[test]
    fn small_example() {
        let text = "crt-tree 1\n# comment\n0 - 0 0.25 0\n1 0 0.5 0.75 0.5\n";
        let t = read_tree(text.as_bytes(), "mem").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.distance(0, 1), 0.5);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            "",
            "crt-tree 2\n0 - 0 1 0\n",
            "tree 1\n0 - 0 1 0\n",
            "crt-tree 1\n0 - 0 1\n",
            "crt-tree 1\n1 - 0 1 0\n",
            "crt-tree 1\n0 - 0 x 0\n",
            "crt-tree 1\n0 - 0 0.5 0\n",
        ];
        for c in cases {
            assert!(read_tree(c.as_bytes(), "mem").is_err(), "{c:?}");
        }
        let err = read_tree("crt-tree 1\n0 - 0 x 0\n".as_bytes(), "t.txt").unwrap_err();
        assert!(err.to_string().contains("t.txt: line 2"), "{err}");
    }
}
