//! Parsing of the command-line values that clap cannot type directly.

use quadzeta::complexzeros::Rectangle;
use quadzeta::{AlphaParam, ComplexValue};

/// `a` as given on the command line: a decimal, or `r/q` for the exact
/// rational paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaArg(pub AlphaParam);

impl std::str::FromStr for AlphaArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let text = text.trim();
        let param = if let Some((r, q)) = text.split_once('/') {
            let r: u32 = r.trim().parse().map_err(|_| format!("bad numerator in {text:?}"))?;
            let q: u32 = q.trim().parse().map_err(|_| format!("bad denominator in {text:?}"))?;
            AlphaParam::from_fraction(r, q)
        } else {
            let v: f64 = text.parse().map_err(|_| format!("bad parameter {text:?}"))?;
            AlphaParam::new(v)
        };
        param.map(AlphaArg).map_err(|e| e.to_string())
    }
}

impl AlphaArg {
    /// Decimal form, plus `r/q` when exact.
    pub fn describe(&self) -> (String, Option<String>) {
        (
            format!("{}", self.0.value()),
            self.0.fraction().map(|(r, q)| format!("{r}/{q}")),
        )
    }
}

/// A complex number written as `x`, `x+yi`, `x-yi`, `yi` or `x,y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub ComplexValue);

impl std::str::FromStr for ComplexArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let bad = || format!("bad complex number {text:?}");
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((re, im)) = t.split_once(',') {
            let re = re.parse().map_err(|_| bad())?;
            let im = im.parse().map_err(|_| bad())?;
            return Ok(ComplexArg(ComplexValue::new(re, im)));
        }
        let Some(body) = t.strip_suffix('i') else {
            return t.parse().map(|re| ComplexArg(ComplexValue::new(re, 0.0))).map_err(|_| bad());
        };
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse().map_err(|_| bad())?,
        };
        let re = re.parse().map_err(|_| bad())?;
        Ok(ComplexArg(ComplexValue::new(re, im)))
    }
}

/// `sigma_lo,sigma_hi,t_lo,t_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectArg(pub Rectangle);

impl std::str::FromStr for RectArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<f64> = text
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| format!("bad rectangle {text:?}, expected sigma_lo,sigma_hi,t_lo,t_hi"))?;
        if parts.len() != 4 {
            return Err(format!("rectangle needs 4 numbers, got {}", parts.len()));
        }
        Rectangle::new(parts[0], parts[1], parts[2], parts[3])
            .map(RectArg)
            .map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> ComplexValue {
        text.parse::<ComplexArg>().unwrap().0
    }

    #[test]
    fn complex_forms() {
        assert_eq!(c("0"), ComplexValue::new(0.0, 0.0));
        assert_eq!(c("0.5+14.1i"), ComplexValue::new(0.5, 14.1));
        assert_eq!(c("2-3i"), ComplexValue::new(2.0, -3.0));
        assert_eq!(c("-1e-3+2e+1i"), ComplexValue::new(-1e-3, 20.0));
        assert_eq!(c("i"), ComplexValue::new(0.0, 1.0));
        assert_eq!(c("-i"), ComplexValue::new(0.0, -1.0));
        assert_eq!(c("3.5i"), ComplexValue::new(0.0, 3.5));
        assert_eq!(c("1, 2"), ComplexValue::new(1.0, 2.0));
        assert!("1+2j".parse::<ComplexArg>().is_err());
        assert!("".parse::<ComplexArg>().is_err());
    }

    #[test]
    fn alpha_forms() {
        let a: AlphaArg = "2/6".parse().unwrap();
        assert_eq!(a.0.fraction(), Some((1, 3)));
        assert_eq!(a.describe().1.as_deref(), Some("1/3"));
        let a: AlphaArg = "0.3".parse().unwrap();
        assert_eq!(a.0.fraction(), None);
        assert!("0".parse::<AlphaArg>().is_err());
        assert!("3/2".parse::<AlphaArg>().is_err());
        assert!("x/2".parse::<AlphaArg>().is_err());
    }

    #[test]
    fn rectangles() {
        let r: RectArg = "-0.5,1.5,0.5,3".parse().unwrap();
        assert_eq!(r.0.t_hi, 3.0);
        assert!("1,0,0,1".parse::<RectArg>().is_err());
        assert!("1,2,3".parse::<RectArg>().is_err());
    }
}
