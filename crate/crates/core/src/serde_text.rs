//! Serialize helpers that render values through `Display`, so exact numbers
//! and polynomials appear in JSON as the same text the printer emits.

use std::fmt::Display;

use serde::ser::{SerializeSeq, Serializer};

pub fn one<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn seq<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut q = s.serialize_seq(Some(v.len()))?;
    for x in v {
        q.serialize_element(&x.to_string())?;
    }
    q.end()
}

pub fn seq2<T: Display, S: Serializer>(v: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
    let mut q = s.serialize_seq(Some(v.len()))?;
    for row in v {
        q.serialize_element(&row.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    }
    q.end()
}
