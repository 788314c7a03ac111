//! Parsers for the CLI literal formats: rationals "p/q", complex
//! "a/b+c/d i", and angles "pi/3" / "0.75" / "3/7".

use crate::angle::Angle;
use crate::gaussian::GaussianRational;
use crate::{ExactError, Int, Rat};
use num_traits::{One, Zero};
use std::str::FromStr;

pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let s = s.trim();
    let bad = |m: &str| ExactError::Parse(format!("{m}: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let num = Int::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
        let den = Int::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rat::new(num, den));
    }
    // scientific notation like 1e-3
    if let Some(pos) = s.find(['e', 'E']) {
        let (m, e) = s.split_at(pos);
        let mant = parse_rat(m)?;
        let exp: i32 = e[1..].parse().map_err(|_| bad("bad exponent"))?;
        let ten = Rat::from_integer(Int::from(10));
        let mut val = mant;
        for _ in 0..exp.abs() {
            if exp >= 0 {
                val *= ten.clone();
            } else {
                val /= ten.clone();
            }
        }
        return Ok(val);
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        // decimal literal
        let neg = int_part.trim_start().starts_with('-');
        let ip = if int_part.is_empty() || int_part == "-" {
            Int::zero()
        } else {
            Int::from_str(int_part).map_err(|_| bad("bad decimal"))?
        };
        let digits = frac_part.trim();
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad decimal fraction"));
        }
        let scale = Int::from(10u32).pow(digits.len() as u32);
        let frac = if digits.is_empty() {
            Int::zero()
        } else {
            Int::from_str(digits).map_err(|_| bad("bad decimal fraction"))?
        };
        let mag = Rat::new(ip.magnitude().clone().into(), Int::one())
            + Rat::new(frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n = Int::from_str(s).map_err(|_| bad("bad integer"))?;
    Ok(Rat::from_integer(n))
}

/// Complex literals: "i", "-i", "1", "1/2+1/3i", "3/5-4/5 i", "0+1i".
pub fn parse_gaussian(s: &str) -> Result<GaussianRational, ExactError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| ExactError::Parse(format!("{m}: {s:?}"));
    if compact.is_empty() {
        return Err(bad("empty complex literal"));
    }
    if compact == "i" {
        return Ok(GaussianRational::i());
    }
    if compact == "-i" {
        return Ok(GaussianRational::new(Rat::zero(), -Rat::one()));
    }
    if let Some(im_str) = compact.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/- that
        // is not a leading sign and not immediately after '/' or 'e'
        let chars: Vec<char> = im_str.chars().collect();
        let mut split = None;
        for idx in (1..chars.len()).rev() {
            if chars[idx] == '+' || chars[idx] == '-' {
                let prev = chars[idx - 1];
                if prev != '/' && prev != 'e' && prev != 'E' {
                    split = Some(idx);
                    break;
                }
            }
        }
        match split {
            None => {
                // pure imaginary like "2/3i"
                let im = parse_rat(im_str)?;
                Ok(GaussianRational::new(Rat::zero(), im))
            }
            Some(idx) => {
                let re = parse_rat(&im_str[..idx])?;
                let sign = if chars[idx] == '-' { -Rat::one() } else { Rat::one() };
                let rest = &im_str[idx + 1..];
                let im_mag = if rest.is_empty() { Rat::one() } else { parse_rat(rest)? };
                Ok(GaussianRational::new(re, sign * im_mag))
            }
        }
    } else {
        Ok(GaussianRational::from_re(parse_rat(&compact)?))
    }
}

/// Angle literals: "pi", "pi/3", "2pi/5", "-pi/2", or plain rational radians.
pub fn parse_angle(s: &str) -> Result<Angle, ExactError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(pos) = compact.find("pi") {
        let before = &compact[..pos];
        let after = &compact[pos + 2..];
        let mut mult = if before.is_empty() || before == "+" {
            Rat::one()
        } else if before == "-" {
            -Rat::one()
        } else {
            parse_rat(before)?
        };
        if let Some(den) = after.strip_prefix('/') {
            mult /= parse_rat(den)?;
        } else if !after.is_empty() {
            return Err(ExactError::Parse(format!("bad angle literal: {s:?}")));
        }
        return Ok(Angle::from_pi_multiple(mult));
    }
    Ok(Angle::from_radians(parse_rat(&compact)?))
}


/// Serde adapter: rationals as "p/q" strings. Use with `#[serde(with = "...")]`.
pub mod serde_rat {
    use super::parse_rat;
    use crate::Rat;
    use num_traits::One;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        if q.denom().is_one() {
            s.serialize_str(&q.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", q.numer(), q.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]

mod tests {
    use super::*;
    use crate::angle::ExactAngle;
    use crate::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rat("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rat("2.5e2").unwrap(), rat(250, 1));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn gaussians() {
        assert_eq!(parse_gaussian("i").unwrap(), GaussianRational::i());
        assert_eq!(
            parse_gaussian("1/2+1/3 i").unwrap(),
            GaussianRational::new(rat(1, 2), rat(1, 3))
        );
        assert_eq!(
            parse_gaussian("3/5-4/5i").unwrap(),
            GaussianRational::new(rat(3, 5), rat(-4, 5))
        );
        assert_eq!(parse_gaussian("-1").unwrap(), GaussianRational::from_int(-1));
        assert_eq!(parse_gaussian("-2i").unwrap(), GaussianRational::new(rat(0, 1), rat(-2, 1)));
    }

    #[test]
    fn angles() {
        let a = parse_angle("pi/3").unwrap();
        assert_eq!(a.exact, Some(ExactAngle::PiMultiple(rat(1, 3))));
        let b = parse_angle("2pi/5").unwrap();
        assert_eq!(b.exact, Some(ExactAngle::PiMultiple(rat(2, 5))));
        let c = parse_angle("-pi").unwrap();
        assert_eq!(c.exact, Some(ExactAngle::PiMultiple(rat(-1, 1))));
        let d = parse_angle("3/7").unwrap();
        assert_eq!(d.exact, Some(ExactAngle::Radians(rat(3, 7))));
    }
}
