//! Binary field checkpoints.
//!
//! Layout (little-endian): magic `NW2D`, `u32` version, `u32` n, `f64` L,
//! `u32` name length, UTF-8 name bytes, then `n²` pairs `(re, im)` of `f64`.
//! Values are written row-major over the centered frequency lattice: the row
//! index runs over `k1 = −n/2 … n/2−1` and the column index over `k2`.

use super::field::SpectralField;
use super::grid::Grid;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::io::{Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 4] = b"NW2D";
pub const VERSION: u32 = 1;

pub fn write_field<W: Write>(mut w: W, name: &str, field: &SpectralField) -> Result<()> {
    let grid = field.grid();
    let n = grid.n();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(n as u32).to_le_bytes())?;
    w.write_all(&grid.length().to_le_bytes())?;
    w.write_all(&(name.len() as u32).to_le_bytes())?;
    w.write_all(name.as_bytes())?;
    let h = (n / 2) as i64;
    let mut buf = Vec::with_capacity(16 * n * n);
    for k1 in -h..h {
        for k2 in -h..h {
            let c = field.get(k1, k2);
            buf.extend_from_slice(&c.re.to_le_bytes());
            buf.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

fn read_array<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b)
        .map_err(|e| Error::Format(format!("truncated header: {e}")))?;
    Ok(b)
}

pub fn read_field<R: Read>(mut r: R) -> Result<(String, SpectralField)> {
    let magic: [u8; 4] = read_array(&mut r)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let n = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let length = f64::from_le_bytes(read_array(&mut r)?);
    let grid = Grid::new(n, length)?;
    let name_len = u32::from_le_bytes(read_array(&mut r)?) as usize;
    if name_len > 1 << 16 {
        return Err(Error::Format("field name too long".into()));
    }
    let mut name = vec![0u8; name_len];
    r.read_exact(&mut name)
        .map_err(|e| Error::Format(format!("truncated name: {e}")))?;
    let name = String::from_utf8(name).map_err(|_| Error::Format("name not UTF-8".into()))?;
    let mut body = vec![0u8; 16 * n * n];
    r.read_exact(&mut body)
        .map_err(|e| Error::Format(format!("truncated body: {e}")))?;
    let mut field = SpectralField::zeros(grid);
    let h = (n / 2) as i64;
    let mut chunks = body.chunks_exact(16);
    for k1 in -h..h {
        for k2 in -h..h {
            let b = chunks.next().expect("body length checked");
            let re = f64::from_le_bytes(b[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(b[8..].try_into().expect("8 bytes"));
            let idx = grid.flat_of(k1, k2);
            field.coeffs_mut()[idx] = Complex64::new(re, im);
        }
    }
    let field = SpectralField::from_coeffs(grid, field.into_coeffs())?;
    Ok((name, field))
}

pub fn save(path: &Path, name: &str, field: &SpectralField) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_field(&mut w, name, field)?;
    w.flush()?;
    Ok(())
}

pub fn load(path: &Path) -> Result<(String, SpectralField)> {
    let file = std::fs::File::open(path)?;
    read_field(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_in_memory() {
        let g = Grid::new(8, 3.5).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set(1, -2, Complex64::new(0.25, -1.5));
        f.set(-3, 3, Complex64::new(-7.0, 1e-300));
        let mut buf = Vec::new();
        write_field(&mut buf, "phi", &f).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 4 + 8 + 4 + 3 + 16 * 64);
        let (name, back) = read_field(buf.as_slice()).unwrap();
        assert_eq!(name, "phi");
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_field(&b"NOPE"[..]).is_err());
        let g = Grid::new(8, 1.0).unwrap();
        let mut buf = Vec::new();
        write_field(&mut buf, "x", &SpectralField::zeros(g)).unwrap();
        buf.truncate(buf.len() - 1);
        assert!(read_field(buf.as_slice()).is_err());
    }
}
