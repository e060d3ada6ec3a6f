//! Input ingestion for the command-line interface: group specs (shorthand,
//! JSON, or file), generator lists, partition specs, quotient maps, and
//! decomposition claims — plus the report type every subcommand emits.

use crate::decomposition::{DecompositionClaim, Piece, PieceGroup, SetDescription};
use crate::error::{Error, Result};
use crate::group::{free, Element, Group, GroupDefinition, RepresentativePair};
use crate::partition::{FiniteQuotient, Partition};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeSet;
use std::fs;

/// Accepted shorthand: `Z<k>`, `V4`, `S<n>`, `D<k>`, `Q8`, `F<r>`,
/// `x`-separated products such as `Z2xZ3`, and the matrix-group views
/// `paper-K`, `paper-G`, `paper-H`. Anything starting with `{` is parsed as
/// a JSON group definition; a path ending in `.json` is read from disk.
pub fn parse_group_spec(spec: &str) -> Result<GroupDefinition> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return serde_json::from_str(spec)
            .map_err(|e| Error::InvalidGroupSpec(format!("bad group JSON: {e}")));
    }
    if spec.ends_with(".json") {
        let text = fs::read_to_string(spec)
            .map_err(|e| Error::InvalidGroupSpec(format!("cannot read {spec}: {e}")))?;
        return serde_json::from_str(&text)
            .map_err(|e| Error::InvalidGroupSpec(format!("bad group JSON in {spec}: {e}")));
    }
    match spec {
        "paper-K" => return Ok(GroupDefinition::LaurentFull),
        "paper-G" => return Ok(GroupDefinition::LaurentModN0),
        "paper-H" => return Ok(GroupDefinition::LaurentMod2ZN1),
        _ => {}
    }
    let factors: Vec<&str> = spec.split('x').collect();
    if factors.len() > 1 {
        let defs = factors
            .iter()
            .map(|f| shorthand_factor(f))
            .collect::<Result<Vec<_>>>()?;
        return Ok(GroupDefinition::Product { factors: defs });
    }
    shorthand_factor(spec)
}

fn shorthand_factor(token: &str) -> Result<GroupDefinition> {
    let token = token.trim();
    let err = || {
        Error::InvalidGroupSpec(format!(
            "unrecognized group '{token}'; expected Z<k>, V4, S<n>, D<k>, Q8, F<r>, \
             an x-product of those, paper-K/G/H, JSON, or a .json file"
        ))
    };
    if token == "V4" {
        return Ok(GroupDefinition::Product {
            factors: vec![
                GroupDefinition::Cyclic { order: 2 },
                GroupDefinition::Cyclic { order: 2 },
            ],
        });
    }
    if token == "Q8" {
        return Ok(GroupDefinition::Quaternion);
    }
    let (head, tail) = token.split_at(1);
    let num = |t: &str| t.parse::<u32>().map_err(|_| err());
    match head {
        "Z" => Ok(GroupDefinition::Cyclic { order: num(tail)? }),
        "S" => Ok(GroupDefinition::Symmetric { n: num(tail)? as u8 }),
        "D" => Ok(GroupDefinition::Dihedral { k: num(tail)? }),
        "F" => Ok(GroupDefinition::Free { rank: num(tail)? as u8 }),
        _ => Err(err()),
    }
}

/// Splits a comma list while respecting parentheses, so product element
/// names like `(0,1)` survive.
fn split_names(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn element_by_name_or_index(group: &Group, token: &str) -> Result<Element> {
    match group.element_by_name(token) {
        Ok(e) => Ok(e),
        Err(first) => {
            if let (Ok(i), Ok(els)) = (token.parse::<usize>(), group.elements()) {
                if i < els.len() {
                    return Ok(els[i].clone());
                }
            }
            Err(first)
        }
    }
}

/// Resolves a `--gens` comma list of names or element indices; without a
/// list, falls back to the view's default generators (free and matrix
/// views have them).
pub fn resolve_generators(group: &Group, spec: Option<&str>) -> Result<Vec<Element>> {
    match spec {
        Some(s) => split_names(s)
            .iter()
            .map(|tok| element_by_name_or_index(group, tok))
            .collect(),
        None => group.default_generators().ok_or_else(|| {
            Error::InvalidGroupSpec(
                "this view has no default generators; pass --gens with a comma list".into(),
            )
        }),
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum PartitionSpec {
    Explicit { blocks: Vec<Vec<String>> },
    FirstLetter,
    Cofinite { blocks: Vec<Vec<String>> },
}

fn resolve_blocks(group: &Group, blocks: &[Vec<String>]) -> Result<Vec<Vec<Element>>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|n| element_by_name_or_index(group, n)).collect())
        .collect()
}

/// Builtins: `singletons`, `one-block`, `first-letter`; JSON forms:
/// `{"kind":"explicit","blocks":[[names…],…]}`,
/// `{"kind":"cofinite","blocks":[[names…],…]}` (complement becomes the last
/// block), `{"kind":"first-letter"}`.
pub fn parse_partition_spec(group: &Group, spec: &str) -> Result<Partition> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let parsed: PartitionSpec = serde_json::from_str(spec)
            .map_err(|e| Error::InvalidGroupSpec(format!("bad partition JSON: {e}")))?;
        return match parsed {
            PartitionSpec::Explicit { blocks } => {
                Partition::explicit(&group.elements()?, resolve_blocks(group, &blocks)?)
            }
            PartitionSpec::FirstLetter => first_letter_of(group),
            PartitionSpec::Cofinite { blocks } => {
                Partition::cofinite(resolve_blocks(group, &blocks)?)
            }
        };
    }
    match spec {
        "singletons" => Partition::singletons(&group.elements()?),
        "one-block" => Partition::one_block(&group.elements()?),
        "first-letter" => first_letter_of(group),
        other => Err(Error::InvalidGroupSpec(format!(
            "unrecognized partition '{other}'; expected singletons, one-block, \
             first-letter, or JSON"
        ))),
    }
}

fn first_letter_of(group: &Group) -> Result<Partition> {
    let rank = group.free_rank().ok_or_else(|| {
        Error::UnsupportedDescription("first-letter partitions need a free-group view".into())
    })?;
    Ok(Partition::first_letter(rank))
}

/// A JSON list of element-name sets, e.g. `[["0","1"],["1","2"]]`.
pub fn parse_sets_spec(group: &Group, spec: &str) -> Result<Vec<Vec<Element>>> {
    let names: Vec<Vec<String>> = serde_json::from_str(spec)
        .map_err(|e| Error::InvalidGroupSpec(format!("bad set-list JSON: {e}")))?;
    resolve_blocks(group, &names)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientSpec {
    source: Value,
    target: Value,
    /// Image names in source element order.
    images: Vec<String>,
}

fn group_from_value(v: &Value) -> Result<Group> {
    let def = match v {
        Value::String(s) => parse_group_spec(s)?,
        other => serde_json::from_value(other.clone())
            .map_err(|e| Error::InvalidGroupSpec(format!("bad group JSON: {e}")))?,
    };
    Group::build(&def)
}

/// Builtin quotient maps `Z4/Z2`, `V4/Z2`, `S3/Z2`, `D4/V4`, or JSON
/// `{"source":…,"target":…,"images":[target names in source element order]}`.
pub fn parse_quotient_spec(spec: &str) -> Result<FiniteQuotient> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let parsed: QuotientSpec = serde_json::from_str(spec)
            .map_err(|e| Error::InvalidGroupSpec(format!("bad quotient JSON: {e}")))?;
        let source = group_from_value(&parsed.source)?;
        let target = group_from_value(&parsed.target)?;
        let images = parsed
            .images
            .iter()
            .map(|n| element_by_name_or_index(&target, n))
            .collect::<Result<Vec<_>>>()?;
        return FiniteQuotient::new(source, target, images);
    }
    let (source, target, images): (&str, &str, Vec<&str>) = match spec {
        // reduction mod 2
        "Z4/Z2" => ("Z4", "Z2", vec!["0", "1", "0", "1"]),
        // projection onto the first coordinate
        "V4/Z2" => ("V4", "Z2", vec!["0", "0", "1", "1"]),
        // the sign of a permutation
        "S3/Z2" => ("S3", "Z2", vec!["0", "1", "1", "0", "0", "1"]),
        // rotation parity and flip count
        "D4/V4" => (
            "D4",
            "V4",
            vec![
                "(0,0)", "(1,0)", "(0,0)", "(1,0)", "(0,1)", "(1,1)", "(0,1)", "(1,1)",
            ],
        ),
        other => {
            return Err(Error::InvalidGroupSpec(format!(
                "unrecognized quotient '{other}'; expected Z4/Z2, V4/Z2, S3/Z2, D4/V4, or JSON"
            )))
        }
    };
    let source = Group::build(&parse_group_spec(source)?)?;
    let target = Group::build(&parse_group_spec(target)?)?;
    let images = images
        .iter()
        .map(|n| target.element_by_name(n))
        .collect::<Result<Vec<_>>>()?;
    FiniteQuotient::new(source, target, images)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClaimSpec {
    groups: Vec<PieceGroupSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceGroupSpec {
    pieces: Vec<PieceSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceSpec {
    /// A word over letters a,b,c,… which stand for the 1st, 2nd, 3rd,…
    /// generator; uppercase inverts; "e" or "" is the identity.
    translator: String,
    set: SetSpecJson,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum SetSpecJson {
    Prefix { prefixes: Vec<String> },
    Explicit { elements: Vec<String> },
}

fn translator_from_word(word: &str, gens_len: usize) -> Result<RepresentativePair> {
    let trimmed = word.trim();
    if trimmed.is_empty() {
        return Ok(RepresentativePair::identity());
    }
    let letters = free::parse(trimmed, gens_len.min(26))?;
    RepresentativePair::from_letters(
        letters
            .into_iter()
            .map(|l| (l.unsigned_abs() as usize, if l > 0 { 1 } else { -1 })),
    )
}

/// The builtin `classical-free` claim, or JSON
/// `{"groups":[{"pieces":[{"translator":"a","set":{"kind":"prefix","prefixes":["a"]}},…]}]}`.
pub fn parse_claim_spec(group: &Group, gens_len: usize, spec: &str) -> Result<DecompositionClaim> {
    let spec = spec.trim();
    if spec == "classical-free" {
        return Ok(crate::decomposition::classical_free_claim());
    }
    let text = if spec.starts_with('{') {
        spec.to_string()
    } else if spec.ends_with(".json") {
        fs::read_to_string(spec)
            .map_err(|e| Error::InvalidGroupSpec(format!("cannot read {spec}: {e}")))?
    } else {
        return Err(Error::InvalidGroupSpec(format!(
            "unrecognized claim '{spec}'; expected classical-free, JSON, or a .json file"
        )));
    };
    let parsed: ClaimSpec = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidGroupSpec(format!("bad claim JSON: {e}")))?;
    let rank = group.free_rank();
    let mut groups = Vec::new();
    for pg in &parsed.groups {
        let mut pieces = Vec::new();
        for piece in &pg.pieces {
            let translator = translator_from_word(&piece.translator, gens_len)?;
            let set = match &piece.set {
                SetSpecJson::Prefix { prefixes } => {
                    let rank = rank.ok_or_else(|| {
                        Error::UnsupportedDescription(
                            "prefix sets are only defined on free-group views".into(),
                        )
                    })?;
                    let words = prefixes
                        .iter()
                        .map(|p| free::parse(p, rank))
                        .collect::<Result<Vec<_>>>()?;
                    SetDescription::Prefix(words)
                }
                SetSpecJson::Explicit { elements } => {
                    let els = elements
                        .iter()
                        .map(|n| element_by_name_or_index(group, n))
                        .collect::<Result<BTreeSet<_>>>()?;
                    SetDescription::Explicit(els)
                }
            };
            pieces.push(Piece { translator, set });
        }
        groups.push(PieceGroup { pieces });
    }
    Ok(DecompositionClaim { groups })
}

/// The JSON document every subcommand prints on standard output. Reports
/// are self-contained: the echoed inputs reproduce the results.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
}

/// Renders with the requested indent width; 0 means compact.
pub fn render_report(report: &RunReport, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(report).expect("report serialization is infallible");
    }
    let spaces = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&spaces);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    report.serialize(&mut ser).expect("report serialization is infallible");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn element_names(group: &Group, els: &[Element]) -> Vec<String> {
    els.iter().map(|e| group.name_of(e)).collect()
}

/// A JSON view of a partition: explicit blocks when they are materialized,
/// a descriptor otherwise.
pub fn partition_value(group: &Group, p: &Partition) -> Value {
    if let Some(blocks) = p.blocks() {
        let names: Vec<Vec<String>> =
            blocks.iter().map(|b| element_names(group, b)).collect();
        return serde_json::json!({ "m": p.m(), "blocks": names });
    }
    if let Some(listed) = p.cofinite_blocks() {
        let names: Vec<Vec<String>> =
            listed.iter().map(|b| element_names(group, b)).collect();
        return serde_json::json!({ "m": p.m(), "kind": "cofinite", "listed": names });
    }
    serde_json::json!({ "m": p.m(), "kind": "implicit" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::QuotientMap;

    #[test]
    fn shorthand_round_trips() {
        for (spec, order) in [
            ("Z6", 6),
            ("V4", 4),
            ("S3", 6),
            ("D4", 8),
            ("Q8", 8),
            ("Z2xZ3", 6),
            ("Z2xZ2xZ2", 8),
        ] {
            let g = Group::build(&parse_group_spec(spec).unwrap()).unwrap();
            assert_eq!(g.order(), Some(order), "{spec}");
        }
        let free = Group::build(&parse_group_spec("F2").unwrap()).unwrap();
        assert_eq!(free.free_rank(), Some(2));
        assert!(Group::build(&parse_group_spec("paper-G").unwrap()).unwrap().order().is_none());
        assert!(parse_group_spec("X9").is_err());
        let json = parse_group_spec("{\"kind\":\"cyclic\",\"order\":2}").unwrap();
        assert_eq!(Group::build(&json).unwrap().order(), Some(2));
    }

    #[test]
    fn generator_lists_accept_names_and_indices() {
        let g = Group::build(&parse_group_spec("Z4").unwrap()).unwrap();
        let by_name = resolve_generators(&g, Some("a")).unwrap();
        let by_index = resolve_generators(&g, Some("1")).unwrap();
        assert_eq!(by_name, by_index);
        let v4 = Group::build(&parse_group_spec("V4").unwrap()).unwrap();
        let pair = resolve_generators(&v4, Some("(0,1),(1,0)")).unwrap();
        assert_eq!(pair.len(), 2);
        assert!(resolve_generators(&g, None).is_err());
        let f2 = Group::build(&parse_group_spec("F2").unwrap()).unwrap();
        assert_eq!(resolve_generators(&f2, None).unwrap().len(), 2);
    }

    #[test]
    fn partition_specs() {
        let g = Group::build(&parse_group_spec("Z4").unwrap()).unwrap();
        assert_eq!(parse_partition_spec(&g, "singletons").unwrap().m(), 4);
        assert_eq!(parse_partition_spec(&g, "one-block").unwrap().m(), 1);
        let p =
            parse_partition_spec(&g, "{\"kind\":\"explicit\",\"blocks\":[[\"0\",\"2\"],[\"1\",\"3\"]]}")
                .unwrap();
        assert_eq!(p.m(), 2);
        assert!(parse_partition_spec(&g, "first-letter").is_err());
        let f2 = Group::build(&parse_group_spec("F2").unwrap()).unwrap();
        assert_eq!(parse_partition_spec(&f2, "first-letter").unwrap().m(), 5);
        assert!(parse_partition_spec(&g, "junk").is_err());
    }

    #[test]
    fn builtin_quotients_are_well_formed() {
        for spec in ["Z4/Z2", "V4/Z2", "S3/Z2", "D4/V4"] {
            let q = parse_quotient_spec(spec).unwrap();
            assert!(q.source().order().unwrap() > q.target().order().unwrap(), "{spec}");
        }
        let json = r#"{"source":"Z6","target":"Z3","images":["0","1","2","0","1","2"]}"#;
        let q = parse_quotient_spec(json).unwrap();
        assert_eq!(q.target().order(), Some(3));
        // a non-homomorphism is rejected during construction
        let bad = r#"{"source":"Z4","target":"Z2","images":["0","1","1","0"]}"#;
        assert!(parse_quotient_spec(bad).is_err());
    }

    #[test]
    fn quotient_pullback_through_the_map_type() {
        let q = parse_quotient_spec("S3/Z2").unwrap();
        let target_els = q.target().elements().unwrap();
        let p = Partition::singletons(&target_els).unwrap();
        let source = q.source().clone();
        let pulled =
            crate::partition::pullback_partition(&QuotientMap::Finite(q), &p).unwrap();
        assert_eq!(pulled.m(), 2);
        let blocks = pulled.blocks().unwrap();
        assert_eq!(blocks[0].len(), 3);
        let names = element_names(&source, &blocks[0]);
        assert_eq!(names, vec!["012", "120", "201"]);
    }

    #[test]
    fn claim_specs() {
        let f2 = Group::build(&parse_group_spec("F2").unwrap()).unwrap();
        let claim = parse_claim_spec(&f2, 2, "classical-free").unwrap();
        assert_eq!(crate::decomposition::pieces_bound(&claim), 4);
        let json = r#"{"groups":[{"pieces":[
            {"translator":"a","set":{"kind":"prefix","prefixes":["a","bA"]}},
            {"translator":"e","set":{"kind":"prefix","prefixes":["B"]}}
        ]}]}"#;
        let claim = parse_claim_spec(&f2, 2, json).unwrap();
        assert_eq!(claim.groups[0].pieces.len(), 2);
        let z4 = Group::build(&parse_group_spec("Z4").unwrap()).unwrap();
        let explicit = r#"{"groups":[{"pieces":[
            {"translator":"a","set":{"kind":"explicit","elements":["0","1"]}}
        ]}]}"#;
        assert!(parse_claim_spec(&z4, 1, explicit).is_ok());
        assert!(parse_claim_spec(&z4, 1, "nonsense").is_err());
    }

    #[test]
    fn report_rendering_honors_indent() {
        let report = RunReport {
            command: "con".into(),
            inputs: serde_json::json!({"group": "Z2"}),
            results: serde_json::json!({"tuples": [[1, 2], [2, 1]]}),
        };
        let compact = render_report(&report, 0);
        assert!(!compact.contains('\n'));
        let pretty = render_report(&report, 2);
        assert!(pretty.contains("\n  \"command\""));
        let wide = render_report(&report, 4);
        assert!(wide.contains("\n    \"command\""));
        let parsed: Value = serde_json::from_str(&pretty).unwrap();
        assert_eq!(parsed["results"]["tuples"][0][0], 1);
    }
}
