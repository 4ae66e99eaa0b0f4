//! Angles on the command line: plain numbers or multiples of π such as
//! `pi/6`, `-pi/6`, `2pi/3`, `3*pi/4`, `π/2`.

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().replace('π', "pi").replace('−', "-");
    let Some(at) = t.find("pi") else {
        return t.parse().map_err(|_| format!("not a number: {s:?}"));
    };
    let (head, tail) = (&t[..at], &t[at + 2..]);
    let head = head.trim_end_matches('*');
    let coefficient = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse().map_err(|_| format!("bad coefficient in {s:?}"))?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(|| format!("bad divisor in {s:?}"))?,
    };
    Ok(coefficient * PI / divisor)
}

pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s.split(',').map(parse_angle).collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("expected three comma-separated angles, got {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("-pi/6").unwrap(), -PI / 6.0);
        assert_eq!(parse_angle("−π/6").unwrap(), -PI / 6.0);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("x").is_err());
        assert_eq!(
            parse_triple("pi/2,pi/6,-pi/6").unwrap(),
            [PI / 2.0, PI / 6.0, -PI / 6.0]
        );
        assert!(parse_triple("1,2").is_err());
    }
}
