//! JSON encodings shared by the reports.
//!
//! A Laurent polynomial is an object mapping decimal degree strings to
//! integer coefficients, e.g. `{"-1": 1, "2": -3}`; a rational function is
//! `{"num": <poly>, "den": <poly>}`. Coefficients of any size are written as
//! plain JSON integers.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::laurent::LaurentPolynomial;
use crate::rational::RationalFunction;
use crate::scalar::Coefficient;

impl<T: Coefficient> Serialize for LaurentPolynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.num_terms()))?;
        for (d, c) in self.terms() {
            let n = Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&d.to_string(), &n)?;
        }
        map.end()
    }
}

impl<'de, T: Coefficient> Deserialize<'de> for LaurentPolynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, Number>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let d: i64 = k
                .parse()
                .map_err(|_| de::Error::custom(format!("bad degree {k:?}")))?;
            let c = T::from_str_radix(&v.to_string(), 10)
                .map_err(|_| de::Error::custom(format!("bad coefficient {v}")))?;
            terms.push((d, c));
        }
        Ok(LaurentPolynomial::from_terms(terms))
    }
}

impl<T: Coefficient> Serialize for RationalFunction<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RationalFunction", 2)?;
        s.serialize_field("num", self.numerator())?;
        s.serialize_field("den", self.denominator())?;
        s.end()
    }
}

impl<'de, T: Coefficient> Deserialize<'de> for RationalFunction<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "")]
        struct Raw<T: Coefficient> {
            num: LaurentPolynomial<T>,
            den: LaurentPolynomial<T>,
        }
        let raw = Raw::<T>::deserialize(deserializer)?;
        RationalFunction::try_new(raw.num, raw.den)
            .ok_or_else(|| de::Error::custom("zero denominator"))
    }
}
