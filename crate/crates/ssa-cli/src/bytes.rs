//! Byte <-> DNA packing: big-endian 2-bit groups of each byte map to the
//! digit values A=0, T=1, C=2, G=3, four symbols per byte.

use ssa_core::{Base, DnaSeq};

use crate::errors::CliError;

pub fn pack_bytes(bytes: &[u8]) -> DnaSeq {
    let mut out = DnaSeq::with_capacity(bytes.len() * 4);
    for &b in bytes {
        for shift in [6u8, 4, 2, 0] {
            out.push(Base::from_digit((b >> shift) & 3).expect("digit < 4"));
        }
    }
    out
}

pub fn unpack_bytes(dna: &[Base]) -> Result<Vec<u8>, CliError> {
    if !dna.len().is_multiple_of(4) {
        return Err(CliError::Usage(format!(
            "cannot unpack {} symbols: length must be a multiple of 4",
            dna.len()
        )));
    }
    Ok(dna
        .chunks(4)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 2) | b.digit()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_examples() {
        assert_eq!(pack_bytes(&[0x1b]).to_string(), "ATCG");
        assert_eq!(pack_bytes(&[0x00]).to_string(), "AAAA");
        assert_eq!(pack_bytes(&[]).to_string(), "");
    }

    #[test]
    fn round_trip_all_bytes() {
        let all: Vec<u8> = (0..=255u8).collect();
        assert_eq!(unpack_bytes(&pack_bytes(&all)).unwrap(), all);
    }

    #[test]
    fn unpack_rejects_ragged_length() {
        let dna: DnaSeq = "ACG".parse().unwrap();
        assert!(unpack_bytes(&dna).is_err());
    }
}
