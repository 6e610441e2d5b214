//! Serde helpers writing unbounded integers as decimal strings.
//!
//! Reading accepts either strings or plain JSON integers, so small values can
//! be typed by hand.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::marker::PhantomData;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serializer};

/// One value read from a decimal string or integer literal.
pub(crate) struct Dec<T>(pub T);

impl<'de, T> Deserialize<'de> for Dec<T>
where
    T: FromStr,
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);

        impl<T> Visitor<'_> for V<T>
        where
            T: FromStr,
            T::Err: Display,
        {
            type Value = Dec<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a decimal string or integer")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Dec<T>, E> {
                s.trim().parse().map(Dec).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Dec<T>, E> {
                self.visit_str(&v.to_string())
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Dec<T>, E> {
                self.visit_str(&v.to_string())
            }
        }

        d.deserialize_any(V(PhantomData))
    }
}

pub(crate) mod one {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D, T>(d: D) -> Result<T, D::Error>
    where
        D: Deserializer<'de>,
        T: FromStr,
        T::Err: Display,
    {
        Dec::deserialize(d).map(|x| x.0)
    }
}

pub(crate) mod vec {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D, T>(d: D) -> Result<Vec<T>, D::Error>
    where
        D: Deserializer<'de>,
        T: FromStr,
        T::Err: Display,
    {
        Vec::<Dec<T>>::deserialize(d).map(|v| v.into_iter().map(|x| x.0).collect())
    }
}

pub(crate) mod opt_vec {
    use super::*;

    pub fn deserialize<'de, D, T>(d: D) -> Result<Option<Vec<T>>, D::Error>
    where
        D: Deserializer<'de>,
        T: FromStr,
        T::Err: Display,
    {
        super::vec::deserialize(d).map(Some)
    }
}

pub(crate) mod map {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(
        m: &BTreeMap<usize, T>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k, v.to_string())))
    }

    pub fn deserialize<'de, D, T>(d: D) -> Result<BTreeMap<usize, T>, D::Error>
    where
        D: Deserializer<'de>,
        T: FromStr,
        T::Err: Display,
    {
        struct V<T>(PhantomData<T>);

        impl<'de, T> Visitor<'de> for V<T>
        where
            T: FromStr,
            T::Err: Display,
        {
            type Value = BTreeMap<usize, T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from indices to decimal values")
            }

            // Keys arrive as strings once serde buffers the input (flatten, untagged).
            fn visit_map<A: de::MapAccess<'de>>(self, mut a: A) -> Result<Self::Value, A::Error> {
                let mut m = BTreeMap::new();
                while let Some((k, v)) = a.next_entry::<Dec<usize>, Dec<T>>()? {
                    if m.insert(k.0, v.0).is_some() {
                        return Err(de::Error::custom(format!("duplicate index {}", k.0)));
                    }
                }
                Ok(m)
            }
        }

        d.deserialize_map(V(PhantomData))
    }
}
