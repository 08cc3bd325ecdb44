//! Standard deviation over exact values.
//!
//! The variance is kept as an exact fraction; only the square root is
//! irrational, and rounding it to a fixed number of places is done exactly
//! by comparing squares.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Divide by n.
    #[default]
    Population,
    /// Divide by n − 1.
    Sample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdDev {
    variance: BigRational,
    convention: Convention,
    count: usize,
}

impl StdDev {
    pub fn variance(&self) -> &BigRational {
        &self.variance
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn to_f64(&self) -> f64 {
        self.variance.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// σ scaled by 10^digits and rounded half away from zero, exactly.
    pub fn round_scaled(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(2 * digits);
        let target = &self.variance * BigRational::from_integer(scale);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // m rounds sqrt(target) iff (m - 1/2)^2 <= target < (m + 1/2)^2
        let fits = |m: &BigInt| {
            let lo = BigRational::from_integer(m.clone()) - &half;
            lo.is_negative() || &lo * &lo <= target
        };
        let guess = target.to_f64().unwrap_or(0.0).sqrt().round();
        let mut m = BigInt::from(guess.max(0.0) as u128);
        while fits(&(&m + 1)) {
            m += 1;
        }
        while !fits(&m) {
            m -= 1;
        }
        m
    }

    pub fn render(&self, digits: u32) -> String {
        let scaled = self.round_scaled(digits);
        let s = scaled.to_string();
        if digits == 0 {
            return s;
        }
        let width = digits as usize + 1;
        let padded = format!("{s:0>width$}");
        let (int, frac) = padded.split_at(padded.len() - digits as usize);
        format!("{int}.{frac}")
    }
}

impl Serialize for StdDev {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("StdDev", 4)?;
        st.serialize_field(
            "variance",
            &format!("{}/{}", self.variance.numer(), self.variance.denom()),
        )?;
        st.serialize_field("value", &self.to_f64())?;
        st.serialize_field("convention", &self.convention)?;
        st.serialize_field("count", &self.count)?;
        st.end()
    }
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn stddev(values: &[Rational], convention: Convention) -> Result<StdDev> {
    let n = values.len();
    if n == 0 {
        return Err(Error::EmptyList);
    }
    let divisor = match convention {
        Convention::Population => n,
        Convention::Sample if n < 2 => return Err(Error::EmptyList),
        Convention::Sample => n - 1,
    };
    let xs: Vec<BigRational> = values.iter().map(big).collect();
    let count = BigRational::from_integer(BigInt::from(n));
    let mean = xs.iter().fold(BigRational::zero(), |acc, x| acc + x) / &count;
    let squares = xs.iter().fold(BigRational::zero(), |acc, x| {
        let dev = x - &mean;
        acc + &dev * &dev
    });
    Ok(StdDev {
        variance: squares / BigRational::from_integer(BigInt::from(divisor)),
        convention,
        count: n,
    })
}
