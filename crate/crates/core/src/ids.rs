//! Helpers for short factor tokens such as `P4`, `M12` or `DM3`.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::{Error, Result};

/// Orders ids by alphabetic prefix, then by numeric suffix, so `P2 < P10`.
/// Ids without a numeric suffix fall back to plain string order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    match (na, nb) {
        (Some(x), Some(y)) => pa.cmp(pb).then(x.cmp(&y)).then(a.cmp(b)),
        _ => a.cmp(b),
    }
}

fn split(id: &str) -> (&str, Option<u64>) {
    let cut = id
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i);
    match cut {
        Some(i) if i > 0 => (&id[..i], id[i..].parse().ok()),
        _ => (id, None),
    }
}

/// Maps each id to its position, rejecting empty and duplicate ids.
pub fn index_ids(ids: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if id.is_empty() {
            return Err(Error::syntax(format!("{what} position {}", i + 1), "empty factor id"));
        }
        if index.insert(id.clone(), i).is_some() {
            return Err(Error::syntax(
                format!("{what} position {}", i + 1),
                format!("duplicate factor id `{id}`"),
            ));
        }
    }
    Ok(index)
}
