//! Binary eigenvector dumps: "DSQ1", dim (u64 LE), version byte, three
//! reserved zero bytes, then `dim` little-endian f64 values.

use std::io::{Read, Write};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"DSQ1";
pub const VERSION: u8 = 1;

pub fn write_vector<W: Write>(mut w: W, v: &[f64]) -> Result<()> {
    let mut header = [0u8; 16];
    header[..4].copy_from_slice(MAGIC);
    header[4..12].copy_from_slice(&(v.len() as u64).to_le_bytes());
    header[12] = VERSION;
    w.write_all(&header)?;
    for x in v {
        w.write_all(&x.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_vector<R: Read>(mut r: R) -> Result<Vec<f64>> {
    let mut header = [0u8; 16];
    r.read_exact(&mut header)?;
    if &header[..4] != MAGIC {
        return Err(Error::Config("not a DSQ1 dump".into()));
    }
    if header[12] != VERSION {
        return Err(Error::Config(format!("unsupported dump version {}", header[12])));
    }
    let dim = u64::from_le_bytes(header[4..12].try_into().expect("8 bytes")) as usize;
    let mut out = Vec::with_capacity(dim);
    let mut buf = [0u8; 8];
    for _ in 0..dim {
        r.read_exact(&mut buf)?;
        out.push(f64::from_le_bytes(buf));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_layout() {
        let v = vec![0.5, -1.25, f64::MIN_POSITIVE];
        let mut bytes = Vec::new();
        write_vector(&mut bytes, &v).unwrap();
        assert_eq!(bytes.len(), 16 + 24);
        assert_eq!(&bytes[..4], b"DSQ1");
        assert_eq!(bytes[4], 3);
        assert_eq!(&bytes[13..16], &[0, 0, 0]);
        assert_eq!(read_vector(bytes.as_slice()).unwrap(), v);
    }

    #[test]
    fn bad_magic_rejected() {
        let bytes = [0u8; 16];
        assert!(read_vector(&bytes[..]).is_err());
    }
}
