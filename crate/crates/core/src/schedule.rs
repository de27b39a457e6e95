//! Pruned decoding trees and the time-step latency model.
//!
//! A generic internal node costs two time-steps (one `f`, one `g` evaluation);
//! partial-sum combination is free. Special nodes cost 1 (Rate-0), 2 (Rep) and
//! `N_v` (Rate-1, SSCL) or `min(L-1, N_v)` (Rate-1, Fast-SSCL). SCL pays one
//! extra step per information leaf for metric sorting, giving `2N+K-2`.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::code::PolarCode;
use crate::error::{Error, Result};

/// The decoding algorithms the crate knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Sc,
    Scl,
    Sscl,
    FastSscl,
    /// Fast-SSCL with at most `t` splitting steps per Rate-1 node.
    Capped(usize),
}

impl DecoderKind {
    pub fn is_list(&self) -> bool {
        !matches!(self, Self::Sc)
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "sc" => Ok(Self::Sc),
            "scl" => Ok(Self::Scl),
            "sscl" => Ok(Self::Sscl),
            "fast-sscl" | "fastsscl" | "fast_sscl" => Ok(Self::FastSscl),
            other => match other.strip_prefix("capped:") {
                Some(t) => t
                    .parse()
                    .map(Self::Capped)
                    .map_err(|_| Error::Parameter(format!("bad cap in {s:?}"))),
                None => Err(Error::Parameter(format!("unknown decoder {s:?}"))),
            },
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sc => f.write_str("sc"),
            Self::Scl => f.write_str("scl"),
            Self::Sscl => f.write_str("sscl"),
            Self::FastSscl => f.write_str("fast-sscl"),
            Self::Capped(t) => write!(f, "capped:{t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeType {
    Rate0,
    Rate1,
    Rep,
    Generic,
    Leaf,
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rate0 => "Rate0",
            Self::Rate1 => "Rate1",
            Self::Rep => "Rep",
            Self::Generic => "Generic",
            Self::Leaf => "Leaf",
        })
    }
}

/// Classifies the subtree whose leaves carry `frozen_slice` (`true` = frozen).
pub fn classify_node(frozen_slice: &[bool]) -> Result<NodeType> {
    let len = frozen_slice.len();
    if !len.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "node length {len} is not a power of two"
        )));
    }
    if len == 1 {
        return Ok(NodeType::Leaf);
    }
    Ok(special_kind(frozen_slice).unwrap_or(NodeType::Generic))
}

/// Special-node pattern of a slice; single leaves count as Rate-0 or Rate-1.
fn special_kind(frozen: &[bool]) -> Option<NodeType> {
    let (last, head) = frozen.split_last()?;
    if frozen.iter().all(|&f| f) {
        Some(NodeType::Rate0)
    } else if frozen.iter().all(|&f| !f) {
        Some(NodeType::Rate1)
    } else if !last && head.iter().all(|&f| f) {
        Some(NodeType::Rep)
    } else {
        None
    }
}

/// A maximal special node of the pruned tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleNode {
    pub kind: NodeType,
    pub start: usize,
    pub len: usize,
    pub depth: u32,
}

/// The pruned decoding tree: special nodes in depth-first, left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    nodes: Vec<ScheduleNode>,
    block_len: usize,
    info_len: usize,
}

/// Descends from the root and stops at the highest node matching a special pattern.
pub fn build_schedule(code: &PolarCode) -> Schedule {
    fn visit(frozen: &[bool], start: usize, len: usize, depth: u32, out: &mut Vec<ScheduleNode>) {
        let slice = &frozen[start..start + len];
        if let Some(kind) = special_kind(slice) {
            out.push(ScheduleNode {
                kind,
                start,
                len,
                depth,
            });
            return;
        }
        let half = len / 2;
        visit(frozen, start, half, depth + 1, out);
        visit(frozen, start + half, half, depth + 1, out);
    }

    let mut nodes = Vec::new();
    visit(code.frozen_mask(), 0, code.len(), 0, &mut nodes);
    Schedule {
        nodes,
        block_len: code.len(),
        info_len: code.k(),
    }
}

impl Schedule {
    pub fn nodes(&self) -> &[ScheduleNode] {
        &self.nodes
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn info_len(&self) -> usize {
        self.info_len
    }

    /// Generic internal nodes visited above the special nodes.
    pub fn internal_nodes(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn max_rate1_len(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeType::Rate1)
            .map(|n| n.len)
            .max()
            .unwrap_or(0)
    }

    /// Rebuilds the frozen mask from the special-node spans.
    pub fn frozen_mask(&self) -> Vec<bool> {
        let mut mask = Vec::with_capacity(self.block_len);
        for node in &self.nodes {
            match node.kind {
                NodeType::Rate0 => mask.extend(std::iter::repeat_n(true, node.len)),
                NodeType::Rate1 => mask.extend(std::iter::repeat_n(false, node.len)),
                NodeType::Rep => {
                    mask.extend(std::iter::repeat_n(true, node.len - 1));
                    mask.push(false);
                }
                NodeType::Generic | NodeType::Leaf => {
                    unreachable!("schedule holds special nodes only")
                }
            }
        }
        mask
    }

    /// Indented text rendering of the pruned tree.
    pub fn dump_tree(&self) -> String {
        fn render(
            nodes: &[ScheduleNode],
            next: &mut usize,
            start: usize,
            len: usize,
            depth: u32,
            out: &mut String,
        ) {
            let indent = "  ".repeat(depth as usize);
            let node = nodes[*next];
            if node.len == len {
                let _ = writeln!(out, "{indent}{}[{start}..{})", node.kind, start + len);
                *next += 1;
                return;
            }
            let _ = writeln!(out, "{indent}Node[{start}..{})", start + len);
            render(nodes, next, start, len / 2, depth + 1, out);
            render(nodes, next, start + len / 2, len / 2, depth + 1, out);
        }

        let mut out = String::new();
        render(&self.nodes, &mut 0, 0, self.block_len, 0, &mut out);
        out
    }
}

fn check_list_size(decoder: DecoderKind, list_size: usize) -> Result<()> {
    match decoder {
        DecoderKind::Sc if list_size != 1 => Err(Error::Parameter(format!(
            "SC decoding has no list; got L = {list_size}"
        ))),
        _ if list_size == 0 => Err(Error::Parameter("list size must be at least 1".into())),
        _ => Ok(()),
    }
}

/// Number of path-splitting steps a Rate-1 node of length `len` gets.
pub fn rate1_splits(decoder: DecoderKind, list_size: usize, len: usize) -> usize {
    match decoder {
        DecoderKind::FastSscl => len.min(list_size - 1),
        DecoderKind::Capped(t) => len.min(t),
        _ => len,
    }
}

/// Time-steps needed by `decoder` with list size `list_size` on `schedule`.
pub fn count_time_steps(
    schedule: &Schedule,
    decoder: DecoderKind,
    list_size: usize,
) -> Result<u64> {
    check_list_size(decoder, list_size)?;
    let n = schedule.block_len as u64;
    let k = schedule.info_len as u64;
    Ok(match decoder {
        DecoderKind::Sc => 2 * n - 2,
        DecoderKind::Scl => 2 * n + k - 2,
        DecoderKind::Sscl | DecoderKind::FastSscl | DecoderKind::Capped(_) => {
            let internal = 2 * schedule.internal_nodes() as u64;
            let leaves: u64 = schedule
                .nodes
                .iter()
                .map(|node| match node.kind {
                    NodeType::Rate0 => 1,
                    NodeType::Rep => 2,
                    NodeType::Rate1 => rate1_splits(decoder, list_size, node.len) as u64,
                    NodeType::Generic | NodeType::Leaf => unreachable!(),
                })
                .sum();
            internal + leaves
        }
    })
}

/// Time-step counts of all decoders at one list size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionRow {
    pub list_size: usize,
    pub sc: u64,
    pub scl: u64,
    pub sscl: u64,
    pub fast_sscl: u64,
    /// Percentage fewer time-steps for Fast-SSCL than SSCL.
    pub vs_sscl_pct: f64,
    /// Percentage fewer time-steps for Fast-SSCL than SCL.
    pub vs_scl_pct: f64,
}

pub fn reduction_report(code: &PolarCode, list_sizes: &[usize]) -> Result<Vec<ReductionRow>> {
    let schedule = build_schedule(code);
    list_sizes
        .iter()
        .map(|&list_size| {
            let scl = count_time_steps(&schedule, DecoderKind::Scl, list_size)?;
            let sscl = count_time_steps(&schedule, DecoderKind::Sscl, list_size)?;
            let fast_sscl = count_time_steps(&schedule, DecoderKind::FastSscl, list_size)?;
            Ok(ReductionRow {
                list_size,
                sc: count_time_steps(&schedule, DecoderKind::Sc, 1)?,
                scl,
                sscl,
                fast_sscl,
                vs_sscl_pct: 100.0 * (1.0 - fast_sscl as f64 / sscl as f64),
                vs_scl_pct: 100.0 * (1.0 - fast_sscl as f64 / scl as f64),
            })
        })
        .collect()
}
