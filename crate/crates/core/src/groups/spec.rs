//! Text names for catalog actions.
//!
//! ```text
//! trivial:M  cyclic:M  dihedral:M  dihedralM:M  boolean:n  dyadic-wreath:L
//! wreath:K1c,K2s,...   hybrid:W,K   product:(spec,spec)   perms:<path>
//! ```
//!
//! `dihedral:M` acts on 2M points, `dihedralM:M` on M points. In `wreath:`
//! the first factor is the level just above the leaves; suffix `c` is cyclic,
//! `s` symmetric. A `perms:` file holds one permutation per line (image list
//! or cycle notation); `#` starts a comment.

use std::path::Path;

use super::action::*;
use super::perm::Permutation;
use crate::error::{Error, Result};

pub const SPEC_FORMS: &str = "trivial:M, cyclic:M, dihedral:M, dihedralM:M, boolean:n, \
dyadic-wreath:L, wreath:K1c,K2s,..., hybrid:W,K, product:(spec,spec), perms:<path>";

fn num(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a valid {what}")))
}

fn two_nums(s: &str, what: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("{what} needs two comma-separated numbers")))?;
    Ok((num(a, what)?, num(b, what)?))
}

/// Splits `a,b` at the comma not nested inside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Parses a group name such as `cyclic:16` or `product:(cyclic:4,boolean:2)`.
pub fn parse_group_spec(spec: &str) -> Result<GroupAction> {
    let spec = spec.trim();
    let (head, arg) = spec.split_once(':').ok_or_else(|| {
        Error::Parse(format!("unknown group `{spec}`; expected one of {SPEC_FORMS}"))
    })?;
    let g = match head {
        "trivial" => make_trivial(num(arg, "degree")?),
        "cyclic" => make_cyclic(num(arg, "degree")?)?,
        "dihedral" => make_dihedral(num(arg, "half-degree")?)?,
        "dihedralM" => make_dihedral_on_m(num(arg, "degree")?)?,
        "boolean" => make_boolean(num(arg, "bit count")?)?,
        "dyadic-wreath" => make_dyadic_wreath(num(arg, "depth")?)?,
        "hybrid" => {
            let (w, k) = two_nums(arg, "hybrid")?;
            make_hybrid(w, k)?
        }
        "wreath" => {
            let branching = arg
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    let (k, kind) = match tok.chars().last() {
                        Some('c') => (&tok[..tok.len() - 1], NodeKind::Cyclic),
                        Some('s') => (&tok[..tok.len() - 1], NodeKind::Symmetric),
                        _ => {
                            return Err(Error::Parse(format!(
                                "wreath factor `{tok}` needs a c or s suffix"
                            )))
                        }
                    };
                    Ok((num(k, "branching factor")?, kind))
                })
                .collect::<Result<Vec<_>>>()?;
            make_wreath(&branching)?
        }
        "product" => {
            let inner = arg
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse("product needs the form product:(a,b)".into()))?;
            let (a, b) = split_top_level(inner)
                .ok_or_else(|| Error::Parse("product needs two factors".into()))?;
            make_product(&parse_group_spec(a)?, &parse_group_spec(b)?)?
        }
        "perms" => {
            let text = std::fs::read_to_string(Path::new(arg.trim()))
                .map_err(|e| Error::Io(format!("{}: {e}", arg.trim())))?;
            parse_permutation_list(&text)?.renamed(spec)
        }
        _ => {
            return Err(Error::Parse(format!(
                "unknown group `{head}`; expected one of {SPEC_FORMS}"
            )))
        }
    };
    Ok(g)
}

/// Reads permutations one per line. Cycle-notation lines take their degree from
/// the first image-list line, or from the largest point seen.
pub fn parse_permutation_list(text: &str) -> Result<GroupAction> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let degree = lines
        .iter()
        .find(|l| !l.starts_with('('))
        .map(|l| l.split_whitespace().count())
        .or_else(|| {
            lines
                .iter()
                .flat_map(|l| {
                    l.split(|c: char| !c.is_ascii_digit())
                        .filter_map(|t| t.parse::<usize>().ok())
                })
                .max()
                .map(|x| x + 1)
        });
    let perms = lines
        .iter()
        .map(|l| Permutation::parse(l, degree))
        .collect::<Result<Vec<_>>>()?;
    GroupAction::from_generators(perms, "perms")
}
