//! Text forms of shapes and coefficient vectors.

use embedcount::{ModuleShape, PrimePower};

/// Parses `"1^2,2,4"`. The single token `"0"` is the empty shape, matching how
/// shapes are rendered.
pub fn parse_shape(text: &str, pp: &PrimePower) -> Result<ModuleShape, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty shape text".into());
    }
    if compact == "0" {
        return Ok(ModuleShape::new());
    }
    let mut shape = ModuleShape::new();
    for token in compact.split(',') {
        let (len_text, mult_text) = match token.split_once('^') {
            Some((l, m)) => (l, Some(m)),
            None => (token, None),
        };
        let len: u32 = len_text
            .parse()
            .map_err(|_| format!("malformed token '{token}'"))?;
        let mult: u32 = match mult_text {
            Some(m) => m
                .parse()
                .map_err(|_| format!("malformed token '{token}'"))?,
            None => 1,
        };
        if mult == 0 {
            return Err(format!("malformed token '{token}': zero multiplicity"));
        }
        if len == 0 {
            return Err(format!("length 0 in token '{token}'"));
        }
        if len > pp.order() {
            return Err(format!(
                "length {len} in token '{token}' exceeds p^n = {}",
                pp.order()
            ));
        }
        shape.add(len, mult);
    }
    Ok(shape)
}

/// Parses a comma-separated coefficient vector over F_p.
pub fn parse_vector(text: &str, p: u32) -> Result<Vec<u16>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    compact
        .split(',')
        .map(|t| {
            let x: u32 = t
                .parse()
                .map_err(|_| format!("malformed coefficient '{t}'"))?;
            if x >= p {
                return Err(format!("coefficient '{t}' is not reduced mod {p}"));
            }
            Ok(x as u16)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use embedcount::shape::shapes_up_to_dim;

    fn pp(p: u32, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_shape("1", &pp(2, 2)).unwrap(),
            ModuleShape::from_lengths([1])
        );
        assert_eq!(
            parse_shape(" 1^2, 2 ,4", &pp(2, 2)).unwrap(),
            ModuleShape::from_pairs([(1, 2), (2, 1), (4, 1)])
        );
        assert_eq!(parse_shape("0", &pp(3, 1)).unwrap(), ModuleShape::new());
    }

    #[test]
    fn errors_name_the_token() {
        let e = parse_shape("5", &pp(2, 2)).unwrap_err();
        assert!(e.contains("'5'") && e.contains("exceeds"), "{e}");
        let e = parse_shape("1,0", &pp(2, 2)).unwrap_err();
        assert!(e.contains("length 0") && e.contains("'0'"), "{e}");
        let e = parse_shape("1,x^2", &pp(2, 2)).unwrap_err();
        assert!(e.contains("malformed") && e.contains("'x^2'"), "{e}");
        assert!(parse_shape("  ", &pp(2, 2)).is_err());
    }

    #[test]
    fn round_trip_on_desk_shapes() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let c = pp(p, n);
            for s in shapes_up_to_dim(&c, 6) {
                assert_eq!(parse_shape(&s.to_string(), &c).unwrap(), s);
            }
        }
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("1, 0,2", 3).unwrap(), vec![1, 0, 2]);
        assert!(parse_vector("3", 3).is_err());
        assert!(parse_vector("", 3).unwrap().is_empty());
    }
}
