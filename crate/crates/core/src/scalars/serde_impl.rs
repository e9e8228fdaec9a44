use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{CycScalar, Q};

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "N")]
    n: u32,
    coeffs: Vec<(String, String)>,
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect();
        Wire { n: self.conductor(), coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(w.coeffs.len());
        for (a, b) in w.coeffs {
            let a: BigInt = a.parse().map_err(D::Error::custom)?;
            let b: BigInt = b.parse().map_err(D::Error::custom)?;
            if b == BigInt::from(0) {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(Q::new(a, b));
        }
        CycScalar::from_coeffs(w.n, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let x = &CycScalar::zeta(6, 1) + &CycScalar::from_q(crate::scalars::q_frac(-3, 7));
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"N":6,"coeffs":[["-3","7"],["1","1"]]}"#);
        let back: CycScalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn wrong_length_rejected() {
        let bad = r#"{"N":3,"coeffs":[["1","1"]]}"#;
        assert!(serde_json::from_str::<CycScalar>(bad).is_err());
    }
}

/// Serialises rationals as strings such as `"-3/2"`.
pub mod qstr {
    use super::*;

    pub fn vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn vec_vec<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
    }

    pub fn one<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn parse(text: &str) -> Option<Q> {
        let t = text.trim();
        match t.split_once('/') {
            Some((a, b)) => {
                let d: BigInt = b.trim().parse().ok()?;
                let n: BigInt = a.trim().parse().ok()?;
                (d != BigInt::from(0)).then(|| Q::new(n, d))
            }
            None => Some(Q::from_integer(t.parse().ok()?)),
        }
    }
}
