use super::EngineError;

/// Packs bits into bytes, bit i at position i mod 8 of byte i/8, and
/// writes the bytes in order as lowercase hex.
pub fn bits_to_hex(bits: &[bool]) -> String {
    let mut out = String::with_capacity(bits.len().div_ceil(8) * 2);
    for chunk in bits.chunks(8) {
        let byte = chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << i));
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Inverse of `bits_to_hex` for exactly `nbits` bits. Unused high bits in
/// the last byte must be zero.
pub fn hex_to_bits(hex: &str, nbits: usize) -> Result<Vec<bool>, EngineError> {
    let hex: String = hex.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
    let hex = hex.strip_prefix("0x").unwrap_or(&hex);
    let bytes = nbits.div_ceil(8);
    if hex.len() != 2 * bytes {
        return Err(EngineError::Hex(format!("expected {} hex digits for {nbits} bits, got {}", 2 * bytes, hex.len())));
    }
    let mut bits = Vec::with_capacity(bytes * 8);
    for j in 0..bytes {
        let byte = u8::from_str_radix(&hex[2 * j..2 * j + 2], 16).map_err(|e| EngineError::Hex(format!("{e} at byte {j}")))?;
        bits.extend((0..8).map(|i| byte >> i & 1 == 1));
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(EngineError::Hex("nonzero bits beyond length".into()));
    }
    bits.truncate(nbits);
    Ok(bits)
}

pub fn bits_to_bin(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn bin_to_bits(s: &str) -> Result<Vec<bool>, EngineError> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(EngineError::Hex(format!("bad binary digit {c:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packing_is_lsb_first() {
        let mut bits = vec![false; 16];
        bits[0] = true;
        bits[9] = true;
        assert_eq!(bits_to_hex(&bits), "0102");
        assert_eq!(hex_to_bits("0102", 16).unwrap(), bits);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hex_to_bits("01", 16).is_err());
        assert!(hex_to_bits("zz", 8).is_err());
        assert!(hex_to_bits("ff", 4).is_err());
        assert_eq!(hex_to_bits("0f", 4).unwrap(), vec![true; 4]);
    }

    proptest! {
        #[test]
        fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..300)) {
            let mut padded = bits.clone();
            padded.resize(bits.len().div_ceil(8) * 8, false);
            prop_assert_eq!(hex_to_bits(&bits_to_hex(&bits), bits.len()).unwrap(), bits.clone());
            prop_assert_eq!(bin_to_bits(&bits_to_bin(&bits)).unwrap(), bits);
        }
    }
}
