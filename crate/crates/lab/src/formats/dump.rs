//! Binary dump of an excursion path for resuming experiments.
//!
//! Layout, all little-endian:
//!
//! | bytes | content                          |
//! |-------|----------------------------------|
//! | 8     | magic `CRTPATH\0`                |
//! | 4     | format version (`u32`, now 1)    |
//! | 4     | flags (`u32`, bit 0: cell minima)|
//! | 4     | sparse-table levels (`u32`)      |
//! | 8     | grid intervals `n` (`u64`)       |
//! | 8     | duration (`f64`)                 |
//! | 8(n+1)| grid values (`f64`)              |
//!
//! The range-minimum index is a pure function of the values, so it is
//! rebuilt on load; the stored level count is checked against the rebuilt
//! index.

use std::io::{Read, Write};

use crt_core::excursion::ExcursionPath;
use crt_core::realtree::RealTreeIndex;

use crate::error::{LabError, Result};

pub const MAGIC: [u8; 8] = *b"CRTPATH\0";
pub const VERSION: u32 = 1;

fn levels(n: usize) -> u32 {
    usize::BITS - (n + 1).leading_zeros()
}

pub fn write_dump<W: Write>(idx: &RealTreeIndex, mut w: W) -> std::io::Result<()> {
    let path = idx.path();
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&u32::from(path.has_cell_minima()).to_le_bytes())?;
    w.write_all(&levels(path.intervals()).to_le_bytes())?;
    w.write_all(&(path.intervals() as u64).to_le_bytes())?;
    w.write_all(&path.duration().to_le_bytes())?;
    for v in path.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_dump<R: Read>(mut r: R, origin: &str) -> Result<RealTreeIndex> {
    let bad = |message: &str| LabError::Format {
        path: origin.into(),
        line: 0,
        message: message.to_string(),
    };
    let io = |e| LabError::io(origin, e);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(io)?;
    if magic != MAGIC {
        return Err(bad("not a path dump"));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4).map_err(io)?;
    if u32::from_le_bytes(b4) != VERSION {
        return Err(bad("unsupported dump version"));
    }
    r.read_exact(&mut b4).map_err(io)?;
    let cell_minima = match u32::from_le_bytes(b4) {
        0 => false,
        1 => true,
        _ => return Err(bad("unknown flags")),
    };
    r.read_exact(&mut b4).map_err(io)?;
    let stored_levels = u32::from_le_bytes(b4);
    r.read_exact(&mut b8).map_err(io)?;
    let n = usize::try_from(u64::from_le_bytes(b8)).map_err(|_| bad("grid too large"))?;
    r.read_exact(&mut b8).map_err(io)?;
    let duration = f64::from_le_bytes(b8);
    if stored_levels != levels(n) {
        return Err(bad("index header does not match the grid"));
    }
    let mut values = Vec::with_capacity(n.saturating_add(1).min(1 << 26));
    for _ in 0..=n {
        r.read_exact(&mut b8).map_err(io)?;
        values.push(f64::from_le_bytes(b8));
    }
    let path = if cell_minima {
        ExcursionPath::with_cell_minima(values, duration)?
    } else {
        ExcursionPath::new(values, duration)?
    };
    Ok(RealTreeIndex::build(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crt_core::excursion::sample_excursion;
    use crt_core::RngStream;

    #[test]
    fn round_trip() {
        let mut rng = RngStream::new(1, 2);
        let idx = RealTreeIndex::build(sample_excursion(256, &mut rng).unwrap());
        let mut buf = Vec::new();
        write_dump(&idx, &mut buf).unwrap();
        assert_eq!(buf.len(), 36 + 8 * 257);
        let back = read_dump(buf.as_slice(), "mem").unwrap();
        assert_eq!(back.path(), idx.path());
        assert_eq!(back.diameter(), idx.diameter());
    }

    #[test]
    fn rejects_corruption() {
        let idx = RealTreeIndex::build(ExcursionPath::new(vec![0.0, 1.0, 0.0], 1.0).unwrap());
        let mut buf = Vec::new();
        write_dump(&idx, &mut buf).unwrap();
        let mut wrong_magic = buf.clone();
        wrong_magic[0] = b'X';
        assert!(read_dump(wrong_magic.as_slice(), "m").is_err());
        let mut wrong_version = buf.clone();
        wrong_version[8] = 9;
        assert!(read_dump(wrong_version.as_slice(), "m").is_err());
        assert!(read_dump(&buf[..buf.len() - 1], "m").is_err());
        let mut negative = buf.clone();
        let at = buf.len() - 16;
        negative[at..at + 8].copy_from_slice(&(-1.0f64).to_le_bytes());
        assert!(read_dump(negative.as_slice(), "m").is_err());
    }
}
