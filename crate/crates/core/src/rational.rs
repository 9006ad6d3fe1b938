//! Exact rationals written as `"p/q"` strings (or `"p"` when integral) in
//! JSON output.

use num_rational::Ratio;
use serde::Serializer;

pub(crate) fn one<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn opt<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}
