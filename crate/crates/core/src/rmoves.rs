//! Reidemeister moves and the forbidden overpass on Gauss diagrams.
//!
//! Every oriented variant of R1, R2 and R3 is supported directly. Insertion
//! moves are parameterised by gap positions: gap `k` sits just before
//! endpoint `k` of the source diagram.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde_json::json;
use thiserror::Error;

use crate::gauss::{ChordId, Endpoint, GaussDiagram, Role, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSet {
    Virtual,
    /// Reidemeister moves plus the forbidden overpass.
    Welded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
    ForbiddenTailSwap,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Insert => "R1_insert",
            MoveKind::R1Delete => "R1_delete",
            MoveKind::R2Insert => "R2_insert",
            MoveKind::R2Delete => "R2_delete",
            MoveKind::R3 => "R3",
            MoveKind::ForbiddenTailSwap => "ForbiddenTailSwap",
        }
    }

    pub fn is_reidemeister(self) -> bool {
        !matches!(self, MoveKind::ForbiddenTailSwap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveInstance {
    /// New chord with adjacent endpoints at `gap`.
    R1Insert { gap: usize, sign: Sign, tail_first: bool },
    R1Delete { chord: ChordId },
    /// Two new chords A (sign `sign`) and B (opposite sign). The tails
    /// `T_A T_B` go in at `tail_gap`; the heads go in at `head_gap`, as
    /// `H_A H_B` when `parallel` and `H_B H_A` otherwise. When both gaps
    /// coincide, `heads_first` puts the head pair before the tail pair.
    R2Insert { tail_gap: usize, head_gap: usize, sign: Sign, parallel: bool, heads_first: bool },
    R2Delete { first: ChordId, second: ChordId },
    /// Reverses the endpoint order inside three adjacent position pairs
    /// starting at `segments`; `variant` indexes the admissible pattern table.
    R3 { chords: [ChordId; 3], segments: [usize; 3], variant: usize },
    /// Swaps the adjacent tails at `position` and `position + 1` (cyclically).
    ForbiddenTailSwap { position: usize },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Insert { .. } => MoveKind::R1Insert,
            MoveInstance::R1Delete { .. } => MoveKind::R1Delete,
            MoveInstance::R2Insert { .. } => MoveKind::R2Insert,
            MoveInstance::R2Delete { .. } => MoveKind::R2Delete,
            MoveInstance::R3 { .. } => MoveKind::R3,
            MoveInstance::ForbiddenTailSwap { .. } => MoveKind::ForbiddenTailSwap,
        }
    }

    pub fn variant(&self) -> String {
        let s = |sign: &Sign| if *sign == Sign::Pos { "+" } else { "-" };
        match self {
            MoveInstance::R1Insert { sign, tail_first, .. } => {
                format!("{}{}", s(sign), if *tail_first { "TH" } else { "HT" })
            }
            MoveInstance::R2Insert { sign, parallel, heads_first, .. } => format!(
                "{}{}{}",
                s(sign),
                if *parallel { "parallel" } else { "antiparallel" },
                if *heads_first { ",heads-first" } else { "" }
            ),
            MoveInstance::R3 { variant, .. } => format!("pattern-{variant}"),
            _ => String::new(),
        }
    }

    pub fn site(&self) -> Vec<usize> {
        match self {
            MoveInstance::R1Insert { gap, .. } => vec![*gap],
            MoveInstance::R1Delete { chord } => vec![*chord as usize],
            MoveInstance::R2Insert { tail_gap, head_gap, .. } => vec![*tail_gap, *head_gap],
            MoveInstance::R2Delete { first, second } => vec![*first as usize, *second as usize],
            MoveInstance::R3 { segments, .. } => segments.to_vec(),
            MoveInstance::ForbiddenTailSwap { position } => vec![*position],
        }
    }

    /// Trace rendering: `{"kind", "variant", "site"}` plus the fields needed
    /// to replay the move.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "kind": self.kind().name(),
            "variant": self.variant(),
            "site": self.site(),
        });
        if let MoveInstance::R3 { chords, .. } = self {
            v["chords"] = json!(chords);
        }
        v
    }

    /// Inverse of [`MoveInstance::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Option<MoveInstance> {
        let kind = v.get("kind")?.as_str()?;
        let variant = v.get("variant")?.as_str()?;
        let site: Vec<usize> = v
            .get("site")?
            .as_array()?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize))
            .collect::<Option<_>>()?;
        let sign = |c: Option<char>| match c? {
            '+' => Some(Sign::Pos),
            '-' => Some(Sign::Neg),
            _ => None,
        };
        Some(match kind {
            "R1_insert" => MoveInstance::R1Insert {
                gap: *site.first()?,
                sign: sign(variant.chars().next())?,
                tail_first: variant.ends_with("TH"),
            },
            "R1_delete" => MoveInstance::R1Delete { chord: *site.first()? as ChordId },
            "R2_insert" => MoveInstance::R2Insert {
                tail_gap: *site.first()?,
                head_gap: *site.get(1)?,
                sign: sign(variant.chars().next())?,
                parallel: variant[1..].starts_with("parallel"),
                heads_first: variant.ends_with("heads-first"),
            },
            "R2_delete" => MoveInstance::R2Delete {
                first: *site.first()? as ChordId,
                second: *site.get(1)? as ChordId,
            },
            "R3" => {
                let chords: Vec<ChordId> = v
                    .get("chords")?
                    .as_array()?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as ChordId))
                    .collect::<Option<_>>()?;
                MoveInstance::R3 {
                    chords: chords.try_into().ok()?,
                    segments: site.try_into().ok()?,
                    variant: variant.strip_prefix("pattern-")?.parse().ok()?,
                }
            }
            "ForbiddenTailSwap" => MoveInstance::ForbiddenTailSwap { position: *site.first()? },
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move {0:?} does not apply to this diagram")]
    InapplicableMove(MoveInstance),
}

/// Limits on the moves produced by [`enumerate_moves`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveBounds {
    pub max_chords: usize,
}

/// Every applicable move instance on `d`.
pub fn enumerate_moves(d: &GaussDiagram, move_set: MoveSet, bounds: MoveBounds) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    let len = d.len();
    let ep = d.endpoints();
    let partner = d.partners();

    // R1 deletions
    let mut kinks = BTreeSet::new();
    for i in 0..len {
        if partner[i] == (i + 1) % len && kinks.insert(ep[i].chord) {
            out.push(MoveInstance::R1Delete { chord: ep[i].chord });
        }
    }
    // R2 deletions: adjacent tails of two chords whose heads are adjacent too
    if len >= 4 {
        for i in 0..len {
            let j = (i + 1) % len;
            let (a, b) = (ep[i], ep[j]);
            if a.role != Role::Tail || b.role != Role::Tail || a.sign == b.sign {
                continue;
            }
            let (ha, hb) = (partner[i], partner[j]);
            if (ha + 1) % len == hb || (hb + 1) % len == ha {
                out.push(MoveInstance::R2Delete { first: a.chord, second: b.chord });
            }
        }
    }
    // R3
    for (chords, segments, variant) in r3_sites(d, &partner) {
        out.push(MoveInstance::R3 { chords, segments, variant });
    }
    // forbidden overpass
    if move_set == MoveSet::Welded && len >= 2 {
        for i in 0..len {
            let j = (i + 1) % len;
            if ep[i].role == Role::Tail && ep[j].role == Role::Tail && ep[i].chord != ep[j].chord {
                out.push(MoveInstance::ForbiddenTailSwap { position: i });
            }
        }
    }
    let gaps = len.max(1);
    if d.n() < bounds.max_chords {
        for gap in 0..gaps {
            for sign in Sign::both() {
                for tail_first in [true, false] {
                    out.push(MoveInstance::R1Insert { gap, sign, tail_first });
                }
            }
        }
    }
    if d.n() + 2 <= bounds.max_chords {
        for tail_gap in 0..gaps {
            for head_gap in 0..gaps {
                for sign in Sign::both() {
                    for parallel in [true, false] {
                        out.push(MoveInstance::R2Insert {
                            tail_gap,
                            head_gap,
                            sign,
                            parallel,
                            heads_first: false,
                        });
                        if tail_gap == head_gap {
                            out.push(MoveInstance::R2Insert {
                                tail_gap,
                                head_gap,
                                sign,
                                parallel,
                                heads_first: true,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Applies a move, checking that it is valid on `d`.
pub fn apply_move(d: &GaussDiagram, m: &MoveInstance) -> Result<GaussDiagram, MoveError> {
    let bad = || MoveError::InapplicableMove(m.clone());
    let len = d.len();
    let ep = d.endpoints();
    match m {
        MoveInstance::R1Insert { gap, sign, tail_first } => {
            if *gap > len {
                return Err(bad());
            }
            let c = d.max_label() + 1;
            let (first, second) = if *tail_first { (Role::Tail, Role::Head) } else { (Role::Head, Role::Tail) };
            let block = vec![Endpoint::new(c, first, *sign), Endpoint::new(c, second, *sign)];
            Ok(insert_blocks(ep, vec![(*gap, block)]))
        }
        MoveInstance::R1Delete { chord } => {
            let (t, h) = d.positions(*chord).ok_or_else(bad)?;
            if (t + 1) % len != h && (h + 1) % len != t {
                return Err(bad());
            }
            Ok(remove_chords(ep, &[*chord]))
        }
        MoveInstance::R2Insert { tail_gap, head_gap, sign, parallel, heads_first } => {
            if *tail_gap > len || *head_gap > len || (*heads_first && tail_gap != head_gap) {
                return Err(bad());
            }
            let a = d.max_label() + 1;
            let b = a + 1;
            let tails = vec![Endpoint::new(a, Role::Tail, *sign), Endpoint::new(b, Role::Tail, -*sign)];
            let mut heads = vec![Endpoint::new(a, Role::Head, *sign), Endpoint::new(b, Role::Head, -*sign)];
            if !parallel {
                heads.reverse();
            }
            let blocks = if tail_gap == head_gap {
                let block = if *heads_first { [heads, tails].concat() } else { [tails, heads].concat() };
                vec![(*tail_gap, block)]
            } else {
                vec![(*tail_gap, tails), (*head_gap, heads)]
            };
            Ok(insert_blocks(ep, blocks))
        }
        MoveInstance::R2Delete { first, second } => {
            if first == second {
                return Err(bad());
            }
            let (ta, ha) = d.positions(*first).ok_or_else(bad)?;
            let (tb, hb) = d.positions(*second).ok_or_else(bad)?;
            let adjacent = |x: usize, y: usize| (x + 1) % len == y || (y + 1) % len == x;
            if ep[ta].sign == ep[tb].sign || !adjacent(ta, tb) || !adjacent(ha, hb) {
                return Err(bad());
            }
            Ok(remove_chords(ep, &[*first, *second]))
        }
        MoveInstance::R3 { chords, segments, variant } => {
            let site = r3_site_at(d, segments).ok_or_else(bad)?;
            if site.0 != *chords || site.1 != *variant {
                return Err(bad());
            }
            let mut out = ep.to_vec();
            for &s in segments {
                out.swap(s, (s + 1) % len);
            }
            Ok(GaussDiagram::from_endpoints_unchecked(out))
        }
        MoveInstance::ForbiddenTailSwap { position } => {
            if *position >= len || len < 2 {
                return Err(bad());
            }
            let j = (position + 1) % len;
            let (a, b) = (ep[*position], ep[j]);
            if a.role != Role::Tail || b.role != Role::Tail || a.chord == b.chord {
                return Err(bad());
            }
            let mut out = ep.to_vec();
            out.swap(*position, j);
            Ok(GaussDiagram::from_endpoints_unchecked(out))
        }
    }
}

fn insert_blocks(ep: &[Endpoint], mut blocks: Vec<(usize, Vec<Endpoint>)>) -> GaussDiagram {
    blocks.sort_by_key(|(g, _)| *g);
    let mut out = Vec::with_capacity(ep.len() + blocks.iter().map(|b| b.1.len()).sum::<usize>());
    let mut it = blocks.into_iter().peekable();
    for i in 0..=ep.len() {
        while let Some((_, block)) = it.next_if(|(g, _)| *g == i) {
            out.extend(block);
        }
        if i < ep.len() {
            out.push(ep[i]);
        }
    }
    GaussDiagram::from_endpoints_unchecked(out)
}

fn remove_chords(ep: &[Endpoint], chords: &[ChordId]) -> GaussDiagram {
    GaussDiagram::from_endpoints_unchecked(ep.iter().filter(|e| !chords.contains(&e.chord)).copied().collect())
}

// ---------------------------------------------------------------------------
// R3 patterns

type SegmentEntry = (u8, Role);

/// Canonical shape of three strands: the endpoint pairs of the three
/// segments (local chord index, role) in strand order, and the local
/// chord signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct R3Pattern {
    pub segments: [[SegmentEntry; 2]; 3],
    pub signs: [Sign; 3],
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Canonicalises a three-strand configuration given with arbitrary chord
/// labels: least form over segment orderings, chords relabelled by first
/// appearance.
fn canonical_pattern<L: Copy + PartialEq>(segments: [[(L, Role); 2]; 3], sign_of: impl Fn(L) -> Sign) -> R3Pattern {
    let mut best: Option<R3Pattern> = None;
    for perm in PERMS3 {
        let mut labels: Vec<L> = Vec::with_capacity(3);
        let mut signs = [Sign::Pos; 3];
        let mut segs = [[(0u8, Role::Head); 2]; 3];
        for (k, &s) in perm.iter().enumerate() {
            for (slot, &(label, role)) in segments[s].iter().enumerate() {
                let idx = match labels.iter().position(|&l| l == label) {
                    Some(i) => i,
                    None => {
                        labels.push(label);
                        signs[labels.len() - 1] = sign_of(label);
                        labels.len() - 1
                    }
                };
                segs[k][slot] = (idx as u8, role);
            }
        }
        let cand = R3Pattern { segments: segs, signs };
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
        }
    }
    best.expect("six permutations")
}

/// All admissible oriented R3 configurations, derived from three lines in
/// the plane bounding a small triangle, over every choice of line
/// orientations, height order, and side of the triangle.
pub fn r3_patterns() -> &'static [R3Pattern] {
    static TABLE: OnceLock<Vec<R3Pattern>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut set = BTreeSet::new();
        // lines: y = 0, x = 0, x + y = side
        for side in [1i64, -1] {
            let crossing_point = |i: usize, j: usize| -> (i64, i64) {
                match (i.min(j), i.max(j)) {
                    (0, 1) => (0, 0),
                    (0, 2) => (side, 0),
                    _ => (0, side),
                }
            };
            for orient in 0..8u32 {
                let s = |k: u32| if orient >> k & 1 == 1 { -1i64 } else { 1 };
                let dirs = [(s(0), 0i64), (0, s(1)), (-s(2), s(2))];
                for heights in PERMS3 {
                    // chord index for each pair of lines
                    let chord_of = |i: usize, j: usize| -> u8 {
                        match (i.min(j), i.max(j)) {
                            (0, 1) => 0,
                            (0, 2) => 1,
                            _ => 2,
                        }
                    };
                    let mut signs = [Sign::Pos; 3];
                    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                        let (over, under) = if heights[i] > heights[j] { (i, j) } else { (j, i) };
                        let (a, b) = (dirs[over], dirs[under]);
                        let cross = a.0 * b.1 - a.1 * b.0;
                        signs[chord_of(i, j) as usize] = if cross > 0 { Sign::Pos } else { Sign::Neg };
                    }
                    let mut segments = [[(0u8, Role::Head); 2]; 3];
                    for k in 0..3 {
                        let mut others: Vec<usize> = (0..3).filter(|&o| o != k).collect();
                        others.sort_by_key(|&o| {
                            let p = crossing_point(k, o);
                            p.0 * dirs[k].0 + p.1 * dirs[k].1
                        });
                        for (slot, &o) in others.iter().enumerate() {
                            let role = if heights[k] > heights[o] { Role::Tail } else { Role::Head };
                            segments[k][slot] = (chord_of(k, o), role);
                        }
                    }
                    set.insert(canonical_pattern(segments, |c: u8| signs[c as usize]));
                }
            }
        }
        set.into_iter().collect()
    })
}

/// Looks up an R3 configuration on the three adjacent pairs starting at
/// `segments`. Returns the sorted chord labels and the pattern index.
fn r3_site_at(d: &GaussDiagram, segments: &[usize; 3]) -> Option<([ChordId; 3], usize)> {
    let len = d.len();
    if len < 6 {
        return None;
    }
    let ep = d.endpoints();
    let mut positions: Vec<usize> = Vec::with_capacity(6);
    for &s in segments {
        if s >= len {
            return None;
        }
        positions.push(s);
        positions.push((s + 1) % len);
    }
    let distinct: BTreeSet<usize> = positions.iter().copied().collect();
    if distinct.len() != 6 {
        return None;
    }
    let chords: BTreeSet<ChordId> = positions.iter().map(|&p| ep[p].chord).collect();
    if chords.len() != 3 {
        return None;
    }
    let mut entries = [[(0, Role::Head); 2]; 3];
    for (k, &s) in segments.iter().enumerate() {
        let (a, b) = (ep[s], ep[(s + 1) % len]);
        if a.chord == b.chord {
            return None;
        }
        entries[k] = [(a.chord, a.role), (b.chord, b.role)];
    }
    let pattern = canonical_pattern(entries, |c| d.sign_of(c).expect("chord present"));
    let variant = r3_patterns().binary_search(&pattern).ok()?;
    let chords: Vec<ChordId> = chords.into_iter().collect();
    Some(([chords[0], chords[1], chords[2]], variant))
}

fn r3_sites(d: &GaussDiagram, partner: &[usize]) -> Vec<([ChordId; 3], [usize; 3], usize)> {
    let len = d.len();
    let mut out = Vec::new();
    if len < 6 {
        return out;
    }
    let ep = d.endpoints();
    // candidate segments: adjacent positions on distinct chords
    let segs: Vec<usize> = (0..len).filter(|&i| ep[i].chord != ep[(i + 1) % len].chord).collect();
    let covers = |s: usize, p: usize| s == p || (s + 1) % len == p;
    for (x, &s1) in segs.iter().enumerate() {
        // the partners of the endpoints of s1 must sit in the other two segments
        let (p, q) = (partner[s1], partner[(s1 + 1) % len]);
        for (y, &s2) in segs.iter().enumerate().skip(x + 1) {
            if covers(s2, s1) || covers(s1, s2) || covers(s2, (s1 + 1) % len) {
                continue;
            }
            if !(covers(s2, p) || covers(s2, q)) {
                continue;
            }
            for &s3 in segs.iter().skip(y + 1) {
                let all = [s1, (s1 + 1) % len, s2, (s2 + 1) % len, s3, (s3 + 1) % len];
                let distinct: BTreeSet<usize> = all.iter().copied().collect();
                if distinct.len() != 6 {
                    continue;
                }
                if let Some((chords, variant)) = r3_site_at(d, &[s1, s2, s3]) {
                    out.push((chords, [s1, s2, s3], variant));
                }
            }
        }
    }
    out
}
